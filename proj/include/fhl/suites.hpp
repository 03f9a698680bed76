#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fhl/exact.hpp"
#include "fhl/report.hpp"
#include "fhl/twist.hpp"
#include "fhl/weingarten.hpp"

namespace fhl::suites {

// Aggregates the per-word law-equality checks into one report.
inline report::CheckReport equal_laws_suite(long long n,
                                            const std::vector<std::vector<std::pair<int, int>>>& words) {
  report::CheckReport rep;
  rep.identity = "equal laws";
  rep.parameters = {{"n", std::to_string(n)}, {"words", std::to_string(words.size())}};
  for (const auto& word : words) {
    const auto one = weingarten::verify_equal_laws(n, word);
    ++rep.pairs_checked;
    for (const auto& f : one.failures) rep.failures.push_back(f);
  }
  return rep;
}

// Aggregates the per-word transport checks into one report.
inline report::CheckReport haar_transport_suite(int n,
                                                const std::vector<std::vector<twist::UWordLetter>>& words,
                                                double tolerance) {
  report::CheckReport rep;
  rep.identity = "haar transport";
  rep.parameters = {{"n", std::to_string(n)},
                    {"tolerance", double_to_string(tolerance)},
                    {"words", std::to_string(words.size())}};
  double worst = 0;
  for (const auto& word : words) {
    const auto tr = twist::verify_haar_transport(n, word, tolerance);
    ++rep.pairs_checked;
    if (tr.residual > worst) worst = tr.residual;
    if (!tr.pass) {
      rep.failures.push_back("word " + tr.word + ": lhs " + tr.lhs + " vs rhs " +
                             double_to_string(tr.rhs_re) + " (residual " +
                             double_to_string(tr.residual) + ")");
    }
  }
  rep.metrics = {{"worst_residual", double_to_string(worst)}};
  return rep;
}

}  // namespace fhl::suites
