#include "fhl/report.hpp"

#include <sstream>

#include "fhl/laws.hpp"

namespace fhl::report {

namespace {

Json pairs_to_object(const std::vector<std::pair<std::string, std::string>>& pairs) {
  Json obj = Json::object();
  for (const auto& kv : pairs) obj[kv.first] = kv.second;
  return obj;
}

}  // namespace

Json check_json(const CheckReport& r) {
  Json j;
  j["identity"] = r.identity;
  j["parameters"] = pairs_to_object(r.parameters);
  j["pairs_checked"] = r.pairs_checked;
  j["failures"] = r.failures;
  j["metrics"] = pairs_to_object(r.metrics);
  j["pass"] = r.passed();
  return j;
}

Json transport_json(const TransportReport& r) {
  Json j;
  j["check"] = r.check;
  j["n"] = r.n;
  j["word"] = r.word;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs_re;
  j["residual"] = r.residual;
  j["pass"] = r.pass;
  return j;
}

Json scan_json(const fhl::laws::ScanReport& r) {
  const bool regime2 = r.regime == laws::Regime::Semicircle;
  Json j;
  j["regime"] = laws::regime_name(r.regime);
  j[regime2 ? "nu" : "lambda"] = rat_to_string(r.param);
  j["p_max"] = r.p_max;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json jr;
    jr["n"] = row.size.n;
    jr["m"] = row.size.m;
    jr["N"] = row.size.N;
    Json xm = Json::array();
    for (const auto& v : row.x_moments) xm.push_back(rat_to_string(v));
    jr["x_moments"] = xm;
    Json xc = Json::array();
    for (const auto& v : row.x_cumulants) xc.push_back(rat_to_string(v));
    jr["x_cumulants"] = xc;
    if (regime2) {
      jr["r"] = rat_to_string(row.r);
      Json sm = Json::array();
      for (const auto& v : row.s_moments) sm.push_back(laws::quad_to_double(v, row.r));
      jr["s_moments"] = sm;
      Json sc = Json::array();
      for (const auto& v : row.s_cumulants) sc.push_back(laws::quad_to_double(v, row.r));
      jr["s_cumulants"] = sc;
    }
    jr["distance"] = row.distance;
    jr["distance_sq"] = rat_to_string(row.distance_sq);
    rows.push_back(jr);
  }
  j["rows"] = rows;
  j["monotone"] = r.monotone;
  return j;
}

std::string scan_csv(const fhl::laws::ScanReport& r) {
  const bool regime2 = r.regime == laws::Regime::Semicircle;
  std::ostringstream os;
  os << "n,m,N,distance";
  const char* mom = regime2 ? ",s_m" : ",m";
  const char* cum = regime2 ? ",s_k" : ",k";
  for (int p = 1; p <= r.p_max; ++p) os << mom << p;
  for (int p = 1; p <= r.p_max; ++p) os << cum << p;
  os << "\n";
  for (const auto& row : r.rows) {
    os << row.size.n << "," << row.size.m << "," << row.size.N << ","
       << double_to_string(row.distance);
    if (regime2) {
      for (const auto& v : row.s_moments) os << "," << double_to_string(laws::quad_to_double(v, row.r));
      for (const auto& v : row.s_cumulants) os << "," << double_to_string(laws::quad_to_double(v, row.r));
    } else {
      for (const auto& v : row.x_moments) os << "," << rat_to_string(v);
      for (const auto& v : row.x_cumulants) os << "," << rat_to_string(v);
    }
    os << "\n";
  }
  return os.str();
}

std::string matrix_csv(const IntMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ",";
      os << m(i, j).str();
    }
    os << "\n";
  }
  return os.str();
}

std::string matrix_csv(const RatMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ",";
      os << rat_to_string(m(i, j));
    }
    os << "\n";
  }
  return os.str();
}

Json matrix_json(const IntMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index jj = 0; jj < m.cols(); ++jj) row.push_back(m(i, jj).str());
    entries.push_back(row);
  }
  j["entries"] = entries;
  return j;
}

Json matrix_json(const RatMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index jj = 0; jj < m.cols(); ++jj) row.push_back(rat_to_string(m(i, jj)));
    entries.push_back(row);
  }
  j["entries"] = entries;
  return j;
}

std::string exponent_table_csv(const std::vector<std::vector<int>>& table) {
  std::ostringstream os;
  for (const auto& row : table) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) os << ",";
      os << row[j];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace fhl::report
