#pragma once

// Verification suites shared by the command-line tool and the acceptance run.
// Each suite is a list of named checks; a check returns a pass flag, a summary
// object and per-case rows. Reports carry no timings so that equal configs give
// byte-identical output.

#include <string>
#include <vector>

#include "charsumlab/residue.hpp"
#include "json.hpp"

namespace charsumlab {

using Json = nlohmann::ordered_json;

struct RunConfig {
  u64 qmax = 60;  // identity sweep, sampled triples and closed forms
  u64 pmax = 300;  // Deligne measurement
  u64 conj_pmax = 200;
  u64 seed = 1;
  u64 samples = 200;  // sampled triples for the factorization and vanishing checks
  u64 Q1 = 10;
  u64 Q2 = 40;
  std::vector<u64> ells{1, 2, 3};
  double X = 1.0;
  std::size_t ladder = 3;
  std::vector<u64> afe_moduli{5, 13, 17, 29};
  std::vector<double> afe_X{0.1, 1.0, 10.0};
  std::vector<u64> newton_primes{7, 11, 13, 19, 23};
  u64 newton_tuples = 20;
};

Json config_json(const RunConfig& cfg);

struct CheckResult {
  std::string name;
  bool pass = false;
  Json summary = Json::object();
  Json cases = Json::array();
  double seconds = 0.0;  // reported on the console only
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const;
  Json to_json() const;
};

/// characters, expsums, charsums, newton, archimedean, lfun, moment.
const std::vector<std::string>& suite_names();
/// Checks run by default (charsums also offers "oracle" on request).
std::vector<std::string> check_names(const std::string& suite);
bool has_check(const std::string& suite, const std::string& check);

/// Runs one check; library errors become a failed check with an "error" entry.
CheckResult run_check(const std::string& suite, const std::string& check, const RunConfig& cfg);
SuiteReport run_suite(const std::string& suite, const RunConfig& cfg);
/// Only the listed checks of a suite.
SuiteReport run_suite(const std::string& suite, const std::vector<std::string>& checks, const RunConfig& cfg);

/// x rounded to 12 significant digits.
double round12(double x);
/// Serialized report with the top-level "schema": 1.
std::string dump_report(Json body);

}  // namespace charsumlab
