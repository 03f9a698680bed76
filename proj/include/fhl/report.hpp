#pragma once

#include "fhl/exact.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace fhl::laws {
struct ScanReport;
}

namespace fhl::report {

using Json = nlohmann::ordered_json;

// Result of one verification run over a set of pairs/words; serializes to
// {identity, parameters, pairs_checked, failures[]} plus optional metrics.
struct CheckReport {
  std::string identity;
  std::vector<std::pair<std::string, std::string>> parameters;
  long long pairs_checked = 0;
  std::vector<std::string> failures;
  std::vector<std::pair<std::string, std::string>> metrics;

  bool passed() const { return failures.empty(); }
};

// Result of one transport-pipeline check; serializes to
// {check, n, word, lhs, rhs, residual, pass}.
struct TransportReport {
  std::string check;
  int n = 0;
  std::string word;
  std::string lhs;  // exact rational "p/q"
  double rhs_re = 0;
  double rhs_im = 0;
  double residual = 0;
  bool pass = false;
};

Json check_json(const CheckReport& r);
Json transport_json(const TransportReport& r);
Json scan_json(const fhl::laws::ScanReport& r);
std::string scan_csv(const fhl::laws::ScanReport& r);

std::string matrix_csv(const IntMatrix& m);
std::string matrix_csv(const RatMatrix& m);
Json matrix_json(const IntMatrix& m);
Json matrix_json(const RatMatrix& m);

// Integer exponent table (e.g. cocycle exponents) as CSV.
std::string exponent_table_csv(const std::vector<std::vector<int>>& table);

}  // namespace fhl::report
