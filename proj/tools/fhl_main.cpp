#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fhl/errors.hpp"
#include "fhl/exact.hpp"
#include "fhl/laws.hpp"
#include "fhl/partitions.hpp"
#include "fhl/report.hpp"
#include "fhl/sampling.hpp"
#include "fhl/suites.hpp"
#include "fhl/twist.hpp"
#include "fhl/weingarten.hpp"

namespace {

using fhl::Int;
using fhl::Rat;
using fhl::report::Json;

struct Options {
  std::string out;
  std::string format = "json";
  std::string config;
  unsigned precision = 30;
  unsigned long long seed = 1;

  std::string model;
  long long n = 0;
  long long m = 0;
  long long N = 0;
  int pmax = 0;

  std::string suite;
  int kmax = 0;
  double tol = 0;
  bool small = false;

  std::string regime;
  std::string lambda;
  std::string nu;
  std::string sizes;
};

Rat parse_rat(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

std::vector<fhl::laws::ScanSize> parse_sizes(const std::string& s) {
  std::vector<fhl::laws::ScanSize> sizes;
  std::stringstream ss(s);
  std::string triple;
  while (std::getline(ss, triple, ';')) {
    if (triple.empty()) continue;
    fhl::laws::ScanSize size;
    if (std::sscanf(triple.c_str(), "%lld,%lld,%lld", &size.n, &size.m, &size.N) != 3) {
      throw std::invalid_argument("size triple must look like n,m,N: '" + triple + "'");
    }
    sizes.push_back(size);
  }
  return sizes;
}

void apply_config(Options& opt, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + " is not key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    try {
      if (key == "out") {
        opt.out = val;
      } else if (key == "format") {
        opt.format = val;
      } else if (key == "precision") {
        opt.precision = static_cast<unsigned>(std::stoul(val));
      } else if (key == "seed") {
        opt.seed = std::stoull(val);
      } else if (key == "model") {
        opt.model = val;
      } else if (key == "n") {
        opt.n = std::stoll(val);
      } else if (key == "m") {
        opt.m = std::stoll(val);
      } else if (key == "N") {
        opt.N = std::stoll(val);
      } else if (key == "pmax") {
        opt.pmax = std::stoi(val);
      } else if (key == "kmax") {
        opt.kmax = std::stoi(val);
      } else if (key == "tol") {
        opt.tol = std::stod(val);
      } else if (key == "small") {
        opt.small = val == "1" || val == "true";
      } else if (key == "regime") {
        opt.regime = val;
      } else if (key == "lambda") {
        opt.lambda = val;
      } else if (key == "nu") {
        opt.nu = val;
      } else if (key == "sizes") {
        opt.sizes = val;
      } else {
        throw std::invalid_argument("unknown config key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad value for config key " + key + ": '" + val + "'");
    }
  }
  if (opt.format != "json" && opt.format != "csv") {
    throw std::invalid_argument("format must be json or csv");
  }
}

void emit(const Options& opt, const std::string& payload) {
  if (opt.out.empty()) {
    std::cout << payload;
    return;
  }
  std::filesystem::path path(opt.out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("FHL_OUTPUT_DIR")) {
      path = std::filesystem::path(dir) / path;
    }
  }
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path.string());
  out << payload;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int run_moments(Options& opt) {
  if (opt.pmax < 1) throw std::invalid_argument("moments: --pmax must be at least 1");
  Json j;
  j["command"] = "moments";
  j["model"] = opt.model;
  std::vector<Rat> values;
  if (opt.model == "fhg") {
    for (int p = 1; p <= opt.pmax; ++p) {
      values.push_back(fhl::weingarten::fhg_moment(opt.n, opt.m, opt.N, p));
    }
    j["n"] = opt.n;
    j["m"] = opt.m;
    j["N"] = opt.N;
    j["p_max"] = opt.pmax;
  } else if (opt.model == "ao") {
    for (int k = 1; k <= opt.pmax; ++k) {
      values.push_back(fhl::weingarten::hyperspherical_moment(opt.n, k));
    }
    j["n"] = opt.n;
    j["k_max"] = opt.pmax;
  } else {
    throw std::invalid_argument("moments: --model must be fhg or ao");
  }

  if (opt.format == "csv") {
    std::ostringstream os;
    os << (opt.model == "fhg" ? "p,moment\n" : "k,moment\n");
    for (size_t i = 0; i < values.size(); ++i) {
      os << (i + 1) << "," << fhl::rat_to_string(values[i]) << "\n";
    }
    emit(opt, os.str());
  } else {
    Json arr = Json::array();
    for (const auto& v : values) arr.push_back(fhl::rat_to_string(v));
    j["moments"] = arr;
    emit(opt, dump(j));
  }
  return 0;
}

std::vector<long long> pick_ns(const Options& opt, std::vector<long long> defaults) {
  if (opt.n > 0) return {opt.n};
  return defaults;
}

void run_suite(const Options& opt, const std::string& suite,
               std::vector<fhl::report::CheckReport>& checks) {
  using namespace fhl;
  if (suite == "cabling") {
    const int kmax = opt.kmax > 0 ? opt.kmax : 5;
    for (long long n : pick_ns(opt, {2, 3})) {
      for (int k = 1; k <= kmax; ++k) checks.push_back(weingarten::verify_cabling_weingarten(k, n));
    }
  } else if (suite == "ks-join") {
    const int kmax = opt.kmax > 0 ? opt.kmax : 6;
    for (int k = 1; k <= kmax; ++k) checks.push_back(weingarten::verify_ks_join(k));
  } else if (suite == "equal-laws") {
    for (long long n : pick_ns(opt, {2, 3})) {
      auto words = sampling::all_index_words(1, static_cast<int>(n));
      for (auto& w : sampling::all_index_words(2, static_cast<int>(n))) words.push_back(w);
      if (n == 2) {
        for (auto& w : sampling::sample_index_words(20, 3, 2, opt.seed)) words.push_back(w);
      }
      checks.push_back(suites::equal_laws_suite(n, words));
    }
  } else if (suite == "thm34") {
    const long long kmax = opt.kmax > 0 ? opt.kmax : 6;
    const double tol = opt.tol > 0 ? opt.tol : 1e-9;
    std::vector<long long> ns = opt.n > 0 ? std::vector<long long>{opt.n}
                                          : std::vector<long long>{3, 4, 5};
    checks.push_back(laws::verify_closed_form(ns, kmax, tol, opt.precision));
  } else if (suite == "asymptotics") {
    checks.push_back(laws::verify_free_poisson_limit(Rat(1), {{2, 2, 4}, {4, 4, 16}, {8, 8, 64}}, 4));
    checks.push_back(
        laws::verify_semicircle_limit(Rat(1, 2), {{4, 2, 8}, {8, 2, 16}, {16, 2, 32}}, 4));
  } else if (suite == "psi-iso") {
    const double tol = opt.tol > 0 ? opt.tol : 1e-12;
    for (long long n : pick_ns(opt, {2, 3, 4, 5, 6, 7, 8})) {
      checks.push_back(twist::verify_psi_iso(static_cast<int>(n), tol));
    }
  } else if (suite == "haar-transport") {
    const double tol = opt.tol > 0 ? opt.tol : 1e-9;
    for (long long n : pick_ns(opt, {2, 3})) {
      std::vector<std::vector<twist::UWordLetter>> words;
      if (n == 2) {
        words = sampling::all_transport_words(1, 2);
        for (auto& w : sampling::all_transport_words(2, 2)) words.push_back(w);
      } else {
        words = sampling::sample_transport_words(20, 2, static_cast<int>(n), opt.seed);
      }
      checks.push_back(suites::haar_transport_suite(static_cast<int>(n), words, tol));
    }
  } else {
    throw std::invalid_argument("unknown verify suite: " + suite);
  }
}

int run_verify(Options& opt) {
  static const std::vector<std::string> kAll = {"cabling",     "ks-join", "equal-laws",
                                                "thm34",       "asymptotics", "psi-iso",
                                                "haar-transport"};
  if (opt.small) {
    // The desk-scale preset: every parameter at its acceptance default.
    opt.n = 0;
    opt.kmax = 0;
    opt.tol = 0;
    opt.precision = 30;
    opt.seed = 1;
  }
  std::vector<fhl::report::CheckReport> checks;
  if (opt.suite == "all") {
    for (const auto& s : kAll) run_suite(opt, s, checks);
  } else {
    run_suite(opt, opt.suite, checks);
  }

  bool pass = true;
  for (const auto& c : checks) pass = pass && c.passed();

  if (opt.format == "csv") {
    std::ostringstream os;
    os << "identity,pass,pairs_checked,failures\n";
    for (const auto& c : checks) {
      os << c.identity << "," << (c.passed() ? "true" : "false") << "," << c.pairs_checked << ","
         << c.failures.size() << "\n";
    }
    emit(opt, os.str());
  } else {
    Json j;
    j["command"] = "verify";
    j["suite"] = opt.suite;
    j["seed"] = opt.seed;
    Json arr = Json::array();
    for (const auto& c : checks) arr.push_back(fhl::report::check_json(c));
    j["suites"] = arr;
    j["pass"] = pass;
    emit(opt, dump(j));
  }
  return pass ? 0 : 1;
}

int run_scan(Options& opt) {
  using fhl::laws::Regime;
  Regime regime;
  if (opt.regime == "free-poisson") {
    regime = Regime::FreePoisson;
  } else if (opt.regime == "semicircle") {
    regime = Regime::Semicircle;
  } else {
    throw std::invalid_argument("scan: --regime must be free-poisson or semicircle");
  }
  const auto sizes = parse_sizes(opt.sizes);
  if (sizes.empty()) throw std::invalid_argument("scan: empty size ladder");
  Rat param;
  if (regime == Regime::FreePoisson) {
    param = opt.lambda.empty() ? Rat(Int(sizes[0].n) * Int(sizes[0].m), Int(sizes[0].N))
                               : parse_rat(opt.lambda);
  } else {
    param = opt.nu.empty() ? Rat(Int(sizes[0].n), Int(sizes[0].N)) : parse_rat(opt.nu);
  }
  const int pmax = opt.pmax > 0 ? opt.pmax : 4;
  const auto rep = fhl::laws::asymptotic_scan(regime, param, sizes, pmax);

  if (opt.format == "csv") {
    emit(opt, fhl::report::scan_csv(rep));
  } else {
    Json j;
    j["command"] = "scan";
    const Json body = fhl::report::scan_json(rep);
    for (const auto& [key, value] : body.items()) j[key] = value;
    emit(opt, dump(j));
  }
  return 0;
}

int run(int argc, char** argv) {
  Options opt;
  CLI::App app{"Exact Weingarten moment computations and verification suites"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "Write the report to this file instead of stdout");
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--config", opt.config, "key=value file overriding flags");
    sub->add_option("--precision", opt.precision, "Decimal digits for closed-form evaluation");
    sub->add_option("--seed", opt.seed, "Seed for sampled checks");
  };

  auto* mom = app.add_subcommand("moments", "Exact moment tables");
  mom->add_option("--model", opt.model, "fhg (row-sum variable) or ao (squared generator)")
      ->required();
  mom->add_option("-n", opt.n, "Row range (fhg) or matrix size (ao)");
  mom->add_option("-m", opt.m, "Column range (fhg)");
  mom->add_option("-N", opt.N, "Ambient dimension (fhg)");
  mom->add_option("--pmax", opt.pmax, "Highest moment order");
  add_common(mom);

  auto* ver = app.add_subcommand("verify", "Verification suites");
  ver->add_option("suite", opt.suite, "One of cabling, ks-join, equal-laws, thm34, asymptotics, "
                                      "psi-iso, haar-transport, all")
      ->required()
      ->check(CLI::IsMember({"cabling", "ks-join", "equal-laws", "thm34", "asymptotics", "psi-iso",
                             "haar-transport", "all"}));
  ver->add_option("--kmax", opt.kmax, "Highest ground-set half-size");
  ver->add_option("-n", opt.n, "Restrict to a single dimension");
  ver->add_option("--tol", opt.tol, "Override the suite tolerance");
  ver->add_flag("--small", opt.small, "Pin the desk-scale acceptance parameters");
  add_common(ver);

  auto* scan = app.add_subcommand("scan", "Moment/cumulant ladders toward a limit law");
  scan->add_option("--regime", opt.regime, "free-poisson or semicircle")->required();
  scan->add_option("--lambda", opt.lambda, "Limit parameter n*m/N (derived from the first size "
                                           "when omitted)");
  scan->add_option("--nu", opt.nu, "Limit parameter n/N (derived from the first size when omitted)");
  scan->add_option("--sizes", opt.sizes, "Semicolon-separated n,m,N triples");
  scan->add_option("--pmax", opt.pmax, "Highest moment order");
  add_common(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "invalid-argument: " << e.what() << "\n";
    return 2;
  }

  if (!opt.config.empty()) apply_config(opt, opt.config);

  if (mom->parsed()) return run_moments(opt);
  if (ver->parsed()) return run_verify(opt);
  return run_scan(opt);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fhl::UnsupportedParameterError& e) {
    std::cerr << "unsupported-parameter: " << e.what() << "\n";
    return 2;
  } catch (const fhl::SizeLimitError& e) {
    std::cerr << "size-limit: " << e.what() << "\n";
    return 2;
  } catch (const fhl::SingularGramError& e) {
    std::cerr << "singular-gram: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid-argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
