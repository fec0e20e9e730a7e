// Command-line front end: emit Thom families and Chern representatives,
// run the verification suite, and run the Riemann-Roch comparison.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "equiforms/chern.hpp"
#include "equiforms/jsonio.hpp"
#include "equiforms/verify.hpp"

namespace {

using namespace equiforms;

std::string fnum(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.6e", v);
  return b;
}

// accepts "3", "-2", "3/2", "0.25"
Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos)
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(BigInt(s));
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  BigInt den = 1;
  for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return Rational(BigInt(digits), den);
}

int run_thom(int dim, const std::string& flavor, const std::string& format) {
  ThomFlavor fl = flavor == "rel"  ? ThomFlavor::Rel
                  : flavor == "c"  ? ThomFlavor::Compact
                                   : ThomFlavor::MQ;
  XMatrix X = XMatrix::indeterminates(dim);
  ThomFamily fam = build_thom(dim, fl, X);
  std::string name = "thom_" + flavor + "_d" + std::to_string(dim);
  if (fl == ThomFlavor::Rel) {
    if (format == "json")
      std::cout << pair_to_json(fam.rel, name);
    else
      std::cout << "alpha: " << fam.rel.alpha.render() << "\n"
                << "beta:  " << fam.rel.beta.render() << "\n";
  } else {
    if (format == "json")
      std::cout << form_to_json(fam.form, name);
    else
      std::cout << fam.form.render() << "\n";
  }
  return 0;
}

int run_chern(const std::string& symbol, const std::string& t_str, const std::string& rep,
              const std::string& format) {
  SymbolMorphism s = symbol_by_name(symbol);
  std::string name = "chern_" + rep + "_" + symbol;
  for (auto& c : name)
    if (c == ':') c = '_';
  if (rep == "rel") {
    ChernTriple tri = ch_triple(s);
    if (format == "json")
      std::cout << pair_to_json(tri.rel(), name);
    else
      std::cout << "alpha: " << tri.ch.render() << "\n"
                << "beta:  " << tri.beta.render() << "\n";
    return 0;
  }
  Form out(s.d);
  if (rep == "sup")
    out = ch_triple(s).ch_sup;
  else
    out = ch_quillen(s, parse_rational(t_str));
  if (format == "json")
    std::cout << form_to_json(out, name);
  else
    std::cout << out.render() << "\n";
  return 0;
}

int run_verify(const std::string& suite, uint64_t seed, double tol) {
  VerifyOptions opt;
  opt.suite = suite;
  opt.seed = seed;
  opt.tol = tol;
  std::vector<CheckResult> results = run_verification(opt);
  std::cout << format_report(results);
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  std::cerr << results.size() << " checks, " << failed << " failed\n";
  return all_passed(results) ? 0 : 1;
}

int run_rr(const std::string& which, int n, int samples, uint64_t seed, double tol) {
  DeviationReport rep = riemann_roch_check(which, n, samples, seed, tol);
  std::cout << "{\n"
            << "  \"case\": \"" << which << "\",\n"
            << "  \"n\": " << n << ",\n"
            << "  \"samples\": " << rep.samples << ",\n"
            << "  \"seed\": " << seed << ",\n"
            << "  \"max_dev\": \"" << fnum(rep.max_dev) << "\",\n"
            << "  \"tolerance\": \"" << fnum(rep.tolerance) << "\",\n"
            << "  \"pass\": " << (rep.pass ? "true" : "false") << "\n"
            << "}\n";
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equivariant Thom forms and relative Chern characters"};
  app.require_subcommand(1);

  double env_tol = 0.0;
  if (const char* env = std::getenv("EQUIFORMS_TOL")) env_tol = std::atof(env);

  int dim = 2;
  std::string flavor = "rel", format = "text";
  CLI::App* thom = app.add_subcommand("thom", "emit a Thom family");
  thom->add_option("--dim", dim, "ambient dimension")->check(CLI::Range(1, 6));
  thom->add_option("--flavor", flavor, "rel | c | mq")
      ->check(CLI::IsMember({"rel", "c", "mq"}));
  thom->add_option("--format", format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string symbol = "bott", t_str = "1", rep = "q", cformat = "text";
  CLI::App* chern = app.add_subcommand("chern", "emit a Chern representative");
  chern->add_option("--symbol", symbol, "bott | spin:n | spinc:n | complex:1");
  chern->add_option("--t", t_str, "rescaling parameter (rational), rep q only");
  chern->add_option("--rep", rep, "rel | sup | q")
      ->check(CLI::IsMember({"rel", "sup", "q"}));
  chern->add_option("--format", cformat, "json | text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string suite = "all";
  uint64_t seed = 20260815ull;
  double tol = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--suite", suite, "symbolic | numeric | all")
      ->check(CLI::IsMember({"symbolic", "numeric", "all"}));
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--tol", tol, "override numeric tolerances");

  std::string rr_case = "spin";
  int rr_n = 1, rr_samples = 20;
  uint64_t rr_seed = 20260815ull;
  double rr_tol = 0.0;
  CLI::App* rr = app.add_subcommand("rr", "Riemann-Roch comparison");
  rr->add_option("--case", rr_case, "spin | spinc | complex")
      ->check(CLI::IsMember({"spin", "spinc", "complex"}));
  rr->add_option("--n", rr_n, "number of planes")->check(CLI::Range(1, 2));
  rr->add_option("--samples", rr_samples, "sample count")->check(CLI::Range(1, 10000));
  rr->add_option("--seed", rr_seed, "random seed");
  rr->add_option("--tol", rr_tol, "tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (thom->parsed()) return run_thom(dim, flavor, format);
    if (chern->parsed()) return run_chern(symbol, t_str, rep, cformat);
    if (verify->parsed()) return run_verify(suite, seed, tol > 0 ? tol : env_tol);
    if (rr->parsed())
      return run_rr(rr_case, rr_n, rr_samples, rr_seed,
                    rr_tol > 0 ? rr_tol : (env_tol > 0 ? env_tol : 1e-9));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
