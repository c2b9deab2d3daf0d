// Command-line front end: per-module commands and the verification runner.
//
// Exit status: 0 when every check passes, 1 on a failed check, 2 on a usage or
// configuration error. A flat key=value file given with --config fills any
// option of the selected command that was not set on the command line.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "charsumlab/archimedean.hpp"
#include "charsumlab/error.hpp"
#include "charsumlab/expsums.hpp"
#include "charsumlab/lfunctions.hpp"
#include "charsumlab/moment.hpp"
#include "charsumlab/newton.hpp"
#include "charsumlab/verify.hpp"

using namespace charsumlab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(no) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

// Fills options of `sub` that were not given on the command line.
void apply_config(CLI::App* sub, const std::map<std::string, std::string>& cfg) {
  std::map<std::string, CLI::Option*> by_name;
  for (CLI::Option* opt : sub->get_options())
    for (const auto& name : opt->get_lnames()) by_name[name] = opt;
  for (const auto& [key, value] : cfg) {
    const auto it = by_name.find(key);
    if (it == by_name.end() || key == "help" || key == "config")
      throw UsageError("config key '" + key + "' is not an option of '" + sub->get_name() + "'");
    CLI::Option* opt = it->second;
    if (opt->count() > 0) continue;
    std::stringstream items(value);
    std::string item;
    if (opt->get_expected_max() > 1) {
      while (std::getline(items, item, ',')) opt->add_result(trim(item));
    } else {
      opt->add_result(value);
    }
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

Json pair_json(cplx z) { return Json::array({z.real(), z.imag()}); }

void log_check(const std::string& suite, const CheckResult& c) {
  std::fprintf(stderr, "%-12s %-18s %s  (%.2f s)\n", suite.c_str(), c.name.c_str(), c.pass ? "PASS" : "FAIL", c.seconds);
  if (c.summary.contains("error")) std::fprintf(stderr, "  error: %s\n", c.summary["error"].get<std::string>().c_str());
}

int report_suite(const SuiteReport& rep, const RunConfig& cfg, const std::string& out) {
  for (const auto& c : rep.checks) log_check(rep.suite, c);
  Json body = rep.to_json();
  body["config"] = config_json(cfg);
  write_text(out, dump_report(body));
  return rep.pass() ? 0 : kExitFail;
}

// Options shared by the runners.
void add_run_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--qmax", cfg.qmax, "largest modulus in sweeps")->capture_default_str();
  app->add_option("--pmax", cfg.pmax, "largest prime for the Deligne measurement")->capture_default_str();
  app->add_option("--conj-pmax", cfg.conj_pmax, "largest prime for the conjugation law")->capture_default_str();
  app->add_option("--seed", cfg.seed, "seed for sampled cases")->capture_default_str();
  app->add_option("--samples", cfg.samples, "sampled triples per check")->capture_default_str();
  app->add_option("--Q1", cfg.Q1, "first box for the moment checks")->capture_default_str();
  app->add_option("--Q2", cfg.Q2, "second box for the moment checks")->capture_default_str();
  app->add_option("--ells", cfg.ells, "twist indices for the moment checks")->delimiter(',');
  app->add_option("--X", cfg.X, "balance parameter for the moment checks")->capture_default_str();
  app->add_option("--ladder", cfg.ladder, "rungs in the moment trend")->capture_default_str();
  app->add_option("--newton-tuples", cfg.newton_tuples, "parameter tuples for the Newton checks")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"charsumlab: character sums, exponential sums and a twisted first moment"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file; command-line flags take precedence");

  // expsums
  auto* expsums = app.add_subcommand("expsums", "Gauss, Kloosterman and hyper-Kloosterman sums");
  expsums->require_subcommand(1);
  RunConfig exp_cfg;
  std::string identity = "identity2", exp_out;
  auto* exp_verify = expsums->add_subcommand("verify", "identity sweeps");
  exp_verify->add_option("--identity", identity, "identity2 | splitting | ramanujan")
      ->check(CLI::IsMember({"identity2", "splitting", "ramanujan"}))
      ->capture_default_str();
  exp_verify->add_option("--qmax", exp_cfg.qmax)->capture_default_str();
  exp_verify->add_option("--out", exp_out, "report path (stdout when omitted)");
  std::string deligne_format = "json", deligne_out;
  auto* exp_deligne = expsums->add_subcommand("deligne", "max |K_p(u)| / p and the conjugation law");
  exp_deligne->add_option("--pmax", exp_cfg.pmax)->capture_default_str();
  exp_deligne->add_option("--conj-pmax", exp_cfg.conj_pmax)->capture_default_str();
  exp_deligne->add_option("--report", deligne_format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  exp_deligne->add_option("--out", deligne_out);

  // charsums
  auto* charsums = app.add_subcommand("charsums", "composite hyper-Kloosterman sums");
  charsums->require_subcommand(1);
  RunConfig cs_cfg;
  std::vector<std::string> cs_suites;
  bool cs_oracle = false;
  std::string cs_out;
  auto* cs_verify = charsums->add_subcommand("verify", "factorization, vanishing, closed forms and bounds");
  cs_verify->add_option("--suite", cs_suites, "factorization | vanishing | closedforms | bounds (default: all)")
      ->check(CLI::IsMember({"factorization", "vanishing", "closedforms", "bounds"}));
  cs_verify->add_option("--qmax", cs_cfg.qmax)->capture_default_str();
  cs_verify->add_option("--seed", cs_cfg.seed)->capture_default_str();
  cs_verify->add_option("--samples", cs_cfg.samples)->capture_default_str();
  cs_verify->add_flag("--oracle", cs_oracle, "also compare against the five-fold definition (q1 <= 30)");
  cs_verify->add_option("--out", cs_out);

  // newton
  auto* newton = app.add_subcommand("newton", "Newton polyhedra and non-degeneracy");
  newton->require_subcommand(1);
  bool use_triple = false;
  i64 nt_ell = 1, nt_n = 1;
  u64 nt_q2 = 5, nt_q2p = 17;
  std::vector<u64> nt_primes{7, 11, 13};
  std::string poly_path, nt_out;
  auto* nt_check = newton->add_subcommand("check", "non-degeneracy and the normalized exponential sum");
  auto* pf = nt_check->add_flag("--paper-f", use_triple, "use the three-variable polynomial attached to (ell, n, q2, q2p)");
  nt_check->add_option("--ell", nt_ell)->capture_default_str();
  nt_check->add_option("--n", nt_n)->capture_default_str();
  nt_check->add_option("--q2", nt_q2)->capture_default_str();
  nt_check->add_option("--q2p", nt_q2p)->capture_default_str();
  nt_check->add_option("--primes", nt_primes)->delimiter(',');
  nt_check->add_option("--poly", poly_path, "polynomial JSON file")->excludes(pf)->check(CLI::ExistingFile);
  nt_check->add_option("--out", nt_out);
  std::string hull_path, hull_out;
  auto* nt_hull = newton->add_subcommand("hull", "Newton polyhedron at infinity");
  nt_hull->add_option("--poly", hull_path, "polynomial JSON file")->required()->check(CLI::ExistingFile);
  nt_hull->add_option("--out", hull_out);

  // archimedean
  auto* arch = app.add_subcommand("archimedean", "gamma factors and the cutoff V");
  arch->require_subcommand(1);
  double v_y = 1.0;
  std::string v_alpha = "0,0,0", v_out;
  std::optional<double> v_sigma;
  bool v_sum_zero = false;
  auto* arch_v = arch->add_subcommand("v", "V(y) by contour quadrature");
  arch_v->add_option("--y", v_y)->required();
  arch_v->add_option("--alpha", v_alpha, "Langlands parameters, e.g. 0,0.1+2i,-0.1-2i")->capture_default_str();
  arch_v->add_option("--sigma", v_sigma, "contour abscissa");
  arch_v->add_flag("--sum-zero", v_sum_zero, "require the parameters to sum to zero");
  arch_v->add_option("--out", v_out);

  // lfun
  auto* lfun = app.add_subcommand("lfun", "Dirichlet L-values and the approximate functional equation");
  lfun->require_subcommand(1);
  u64 lf_q = 13;
  double lf_X = 1.0;
  std::string lf_format = "json", lf_out;
  auto* lf_afe = lfun->add_subcommand("afe", "both sides for every primitive even character");
  lf_afe->add_option("--q", lf_q)->required();
  lf_afe->add_option("--X", lf_X)->capture_default_str();
  lf_afe->add_option("--report", lf_format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  lf_afe->add_option("--out", lf_out);
  u64 lc_q = 5;
  std::string lc_out;
  auto* lf_central = lfun->add_subcommand("central", "L(1/2, chi) and L(1/2, chi)^3 for primitive even chi");
  lf_central->add_option("--q", lc_q)->required();
  lf_central->add_option("--out", lc_out);

  // moment
  auto* moment = app.add_subcommand("moment", "the twisted first moment");
  moment->require_subcommand(1);
  u64 m_Q1 = 10, m_Q2 = 40, m_ell = 1;
  double m_X = 1.0;
  bool m_any = false;
  std::string m_out;
  auto* m_run = moment->add_subcommand("run", "direct and decomposed moment for one family");
  m_run->add_option("--Q1", m_Q1)->capture_default_str();
  m_run->add_option("--Q2", m_Q2)->capture_default_str();
  m_run->add_option("--ell", m_ell)->capture_default_str();
  m_run->add_option("--X", m_X)->capture_default_str();
  m_run->add_flag("--any-ell", m_any, "allow any ell coprime to the family");
  m_run->add_option("--out", m_out);
  std::size_t t_ladder = 3;
  u64 t_ell = 1;
  bool t_any = false;
  std::string t_out;
  auto* m_trend = moment->add_subcommand("trend", "|T - main| / Y over growing families");
  m_trend->add_option("--ladder", t_ladder)->capture_default_str();
  m_trend->add_option("--ell", t_ell)->capture_default_str();
  m_trend->add_flag("--any-ell", t_any);
  m_trend->add_option("--out", t_out);

  // verify
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  RunConfig v_cfg;
  bool v_all = false;
  std::vector<std::string> v_suites;
  std::string v_outdir;
  auto* all_flag = verify->add_flag("--all", v_all, "every suite");
  std::vector<std::string> choices = suite_names();
  choices.push_back("none");
  verify->add_option("--suite", v_suites, "suite name (repeatable) or none")->check(CLI::IsMember(choices))->excludes(all_flag);
  add_run_options(verify, v_cfg);
  verify->add_option("--out", v_outdir, "directory for the per-suite reports and summary.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      const auto cfg = read_config(config_path);
      CLI::App* leaf = &app;
      while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
      apply_config(leaf, cfg);
    }

    if (exp_verify->parsed()) {
      const std::string check = identity == "splitting" ? "gauss_splitting" : identity;
      return report_suite(run_suite("expsums", {check}, exp_cfg), exp_cfg, exp_out);
    }
    if (exp_deligne->parsed()) {
      const auto rep = deligne_measure(exp_cfg.pmax, exp_cfg.conj_pmax);
      const bool pass = rep.max_ratio <= 3.0 && rep.max_ratio >= 1.0 && rep.conj_law_ok;
      if (deligne_format == "csv") {
        std::ostringstream csv;
        csv << "p,max_ratio,argmax_u,conj_law_err,table_err,weil_ratio\n";
        for (const auto& r : rep.rows)
          csv << r.p << ',' << fmt(r.max_ratio) << ',' << r.argmax_u << ',' << fmt(r.conj_law_err) << ',' << fmt(r.table_err) << ','
              << fmt(r.weil_ratio) << '\n';
        write_text(deligne_out, csv.str());
      } else {
        return report_suite(run_suite("expsums", {"deligne"}, exp_cfg), exp_cfg, deligne_out);
      }
      return pass ? 0 : kExitFail;
    }
    if (cs_verify->parsed()) {
      std::vector<std::string> checks = cs_suites.empty() ? check_names("charsums") : cs_suites;
      if (cs_oracle) checks.push_back("oracle");
      return report_suite(run_suite("charsums", checks, cs_cfg), cs_cfg, cs_out);
    }
    if (nt_check->parsed()) {
      if (!use_triple && poly_path.empty()) throw UsageError("newton check needs --paper-f or --poly");
      Json body;
      body["primes"] = Json::array();
      bool all_nondegenerate = true;
      std::optional<LaurentPolynomial> fixed;
      if (!poly_path.empty()) {
        std::ifstream in(poly_path);
        fixed = LaurentPolynomial::from_json(std::string(std::istreambuf_iterator<char>(in), {}));
      }
      for (u64 p : nt_primes) {
        const LaurentPolynomial f = fixed ? fixed->reduced(p) : triple_polynomial(nt_ell, nt_n, nt_q2, nt_q2p, p);
        const auto rep = is_nondegenerate(f, p);
        all_nondegenerate = all_nondegenerate && rep.nondegenerate;
        Json faces = Json::array();
        for (const auto& fr : rep.faces)
          if (fr.singular)
            faces.push_back({{"normal", Json::array({fr.face.normal[0], fr.face.normal[1], fr.face.normal[2]})},
                             {"dimension", fr.face.dimension},
                             {"terms", fr.terms},
                             {"witness", fr.witness}});
        const auto s = complete_exp_sum(f, p);
        body["primes"].push_back({{"p", p},
                                  {"nondegenerate", rep.nondegenerate},
                                  {"faces_checked", rep.faces.size()},
                                  {"singular_faces", faces},
                                  {"exp_sum", pair_json(s.value())},
                                  {"normalized", sqrt_cancellation_measure(f, p)}});
      }
      body["nondegenerate"] = all_nondegenerate;
      write_text(nt_out, dump_report(body));
      return all_nondegenerate ? 0 : kExitFail;
    }
    if (nt_hull->parsed()) {
      std::ifstream in(hull_path);
      const auto f = LaurentPolynomial::from_json(std::string(std::istreambuf_iterator<char>(in), {}));
      const auto poly = newton_polyhedron(f);
      Json body;
      body["dimension"] = poly.dimension;
      body["vertices"] = Json::array();
      for (const auto& v : poly.vertices) body["vertices"].push_back(Json::array({v[0], v[1], v[2]}));
      body["faces"] = Json::array();
      for (const auto& face : poly.faces) {
        Json verts = Json::array();
        for (auto i : face.vertices) verts.push_back(Json::array({poly.vertices[i][0], poly.vertices[i][1], poly.vertices[i][2]}));
        body["faces"].push_back({{"dimension", face.dimension},
                                 {"normal", Json::array({face.normal[0], face.normal[1], face.normal[2]})},
                                 {"vertices", verts},
                                 {"contains_origin_in_span", span_contains_origin(poly, face)}});
      }
      write_text(hull_out, dump_report(body));
      return 0;
    }
    if (arch_v->parsed()) {
      const auto params = LanglandsParams::parse(v_alpha, v_sum_zero);
      AFEConfig c;
      c.sigma = v_sigma;
      const auto r = cutoff_v(v_y, params, c);
      Json body{{"y", v_y}, {"alpha", params.key()}, {"value", pair_json(r.value)}, {"err", r.err},
                {"sigma", r.sigma}, {"h", r.h}, {"T", r.T}, {"nodes", r.nodes}};
      write_text(v_out, dump_report(body));
      return 0;
    }
    if (lf_afe->parsed()) {
      const ToyGL3Form form;
      const auto reports = afe_check_all(form, lf_q, lf_X);
      bool pass = true;
      for (const auto& r : reports) pass = pass && r.pass;
      if (lf_format == "csv") {
        std::ostringstream csv;
        csv << "q,chi_index,X,lhs,rhs,abs_err,pass\n";
        for (const auto& r : reports)
          csv << r.q << ',' << r.chi_index << ',' << fmt(r.X) << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.abs_err) << ','
              << (r.pass ? "true" : "false") << '\n';
        write_text(lf_out, csv.str());
      } else {
        Json body;
        body["q"] = lf_q;
        body["X"] = lf_X;
        body["cases"] = Json::array();
        for (const auto& r : reports)
          body["cases"].push_back({{"chi_index", r.chi_index}, {"lhs", pair_json(r.lhs)}, {"rhs", pair_json(r.rhs)},
                                   {"first_sum", pair_json(r.first_sum)}, {"second_sum", pair_json(r.second_sum)},
                                   {"first_terms", r.first_terms}, {"second_terms", r.second_terms},
                                   {"abs_err", r.abs_err}, {"rel_err", r.rel_err}, {"pass", r.pass}});
        body["pass"] = pass;
        write_text(lf_out, dump_report(body));
      }
      return pass ? 0 : kExitFail;
    }
    if (lf_central->parsed()) {
      const ToyGL3Form form;
      Json body;
      body["q"] = lc_q;
      body["characters"] = Json::array();
      for (const auto& chi : enumerate_characters(Modulus(lc_q), CharacterFilter::PrimitiveEven)) {
        body["characters"].push_back({{"chi_index", chi.index()},
                                      {"L", pair_json(dirichlet_L(0.5, chi))},
                                      {"L_cubed", pair_json(twisted_central_value(form, chi))},
                                      {"root_number", pair_json(epsilon_factor(chi))}});
      }
      write_text(lc_out, dump_report(body));
      return 0;
    }
    if (m_run->parsed()) {
      const ToyGL3Form form;
      const auto fam = build_family(m_Q1, m_Q2);
      const auto rep = moment_pipeline(fam, form, m_ell, m_X, {m_any});
      Json body{{"Q1", m_Q1}, {"Q2", m_Q2}, {"ell", rep.ell}, {"X", rep.X}, {"Y", rep.Y},
                {"T_direct", pair_json(rep.T_direct)}, {"T_decomposed", pair_json(rep.T_decomposed)},
                {"main_term", pair_json(rep.main_term)}, {"F_term", pair_json(rep.F_term)},
                {"F_definition", pair_json(rep.F_definition)}, {"F_offdiagonal", pair_json(rep.F_offdiagonal)},
                {"S_term", pair_json(rep.S_term)}, {"S_definition", pair_json(rep.S_definition)},
                {"R_plus", pair_json(rep.R_plus)}, {"R_minus", pair_json(rep.R_minus)},
                {"S_remainder", pair_json(rep.S_remainder)}, {"E_diagnostic", rep.E_diagnostic},
                {"residual", pair_json(rep.residual)}, {"identity_rel_err", rep.identity_rel_err},
                {"F_route_rel_err", rep.F_route_rel_err}, {"S_route_rel_err", rep.S_route_rel_err},
                {"identity_pass", rep.identity_pass}};
      body["leading"] = Json::array();
      for (cplx v : rep.leading) body["leading"].push_back(pair_json(v));
      body["members"] = Json::array();
      for (const auto& m : rep.members) {
        Json fp = Json::array();
        for (const auto& side : m.F_parts) {
          Json row = Json::array();
          for (cplx v : side) row.push_back(pair_json(v));
          fp.push_back(row);
        }
        Json diag = Json::array();
        for (cplx v : m.diagonal) diag.push_back(pair_json(v));
        body["members"].push_back({{"q1", m.member.q1}, {"q2", m.member.q2}, {"q", m.member.q},
                                   {"primitive_count", m.primitive_count}, {"T_direct", pair_json(m.T_direct)},
                                   {"F_definition", pair_json(m.F_definition)}, {"F_decomposed", pair_json(m.F_decomposed)},
                                   {"F_parts", fp}, {"diagonal", diag}, {"S_definition", pair_json(m.S_definition)},
                                   {"S_kproduct", pair_json(m.S_kproduct)}, {"R_plus", pair_json(m.R_plus)},
                                   {"R_minus", pair_json(m.R_minus)}, {"F_terms", m.F_terms}, {"S_terms", m.S_terms}});
      }
      write_text(m_out, dump_report(body));
      std::fprintf(stderr, "T = %s, F + S = %s, relative error %.3g, |residual| / Y = %.6g: %s\n", fmt(rep.T_direct).c_str(),
                   fmt(rep.T_decomposed).c_str(), rep.identity_rel_err, std::abs(rep.residual) / static_cast<double>(rep.Y),
                   rep.identity_pass ? "PASS" : "FAIL");
      return rep.identity_pass ? 0 : kExitFail;
    }
    if (m_trend->parsed()) {
      const ToyGL3Form form;
      const auto trend = moment_trend(t_ladder, form, t_ell, {t_any});
      Json body{{"ell", trend.ell}, {"residual_decreasing", trend.residual_decreasing}, {"S_ratio_decreasing", trend.S_ratio_decreasing}};
      body["rungs"] = Json::array();
      for (const auto& r : trend.rungs)
        body["rungs"].push_back({{"Q1", r.Q1}, {"Q2", r.Q2}, {"members", r.members}, {"Y", r.Y},
                                 {"T_direct", pair_json(r.T_direct)}, {"main_term", pair_json(r.main_term)},
                                 {"residual_over_Y", r.residual_ratio}, {"X", r.X}, {"S_ratio", r.S_ratio}});
      write_text(t_out, dump_report(body));
      return trend.residual_decreasing ? 0 : kExitFail;
    }
    if (verify->parsed()) {
      std::vector<std::string> suites;
      if (v_all) {
        suites = suite_names();
      } else {
        for (const auto& s : v_suites)
          if (s != "none") suites.push_back(s);
      }
      if (!v_outdir.empty()) std::filesystem::create_directories(v_outdir);
      Json summary;
      summary["config"] = config_json(v_cfg);
      summary["suites"] = Json::array();
      bool pass = true;
      for (const auto& s : suites) {
        const auto rep = run_suite(s, v_cfg);
        for (const auto& c : rep.checks) log_check(s, c);
        pass = pass && rep.pass();
        Json checks = Json::object();
        for (const auto& c : rep.checks) checks[c.name] = c.pass;
        summary["suites"].push_back({{"suite", s}, {"pass", rep.pass()}, {"checks", checks}});
        if (!v_outdir.empty()) {
          Json body = rep.to_json();
          body["config"] = config_json(v_cfg);
          write_text((std::filesystem::path(v_outdir) / (s + ".json")).string(), dump_report(body));
        }
      }
      summary["pass"] = pass;
      write_text(v_outdir.empty() ? "" : (std::filesystem::path(v_outdir) / "summary.json").string(), dump_report(summary));
      return pass ? 0 : kExitFail;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::NotCoprime ||
                   e.code() == ErrorCode::OverlappingBoxes || e.code() == ErrorCode::EmptyFamily
               ? kExitUsage
               : kExitFail;
  }
  return kExitUsage;
}
