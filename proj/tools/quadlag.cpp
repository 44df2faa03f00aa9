// quadlag: command-line front end.
//
//   quadlag analyze FILE [--oracle] [--require-embedded] [--seed S] [--samples K]
//   quadlag quadrics FILE [--inverse]
//   quadlag family SPEC
//   quadlag obstruct [FILE] [--family SPEC] [--L-dim D] [--nmax N]
//   quadlag oracle (FILE | --family SPEC) [--seed S] [--samples K]
//   quadlag verify [--only SUITE] [--seed S] [--samples K]
//
// JSON goes to stdout, diagnostics to stderr. Exit codes: 0 ok, 1 I/O, parse
// or usage error (and failed verification), 2 structural rejection.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "quadlag/analysis.hpp"

using namespace quadlag;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  if (s.str().find_first_not_of(" \t\r\n") == std::string::npos) throw IoError(path + " is empty");
  return s.str();
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian intersections of quadrics: polytopes, invariants and obstructions"};
  app.require_subcommand(1);

  std::string file, spec, only;
  std::uint64_t seed = 0;
  int samples = 0, nmax = 0, L_dim = 0;
  bool oracle = false, require_embedded = false, inverse = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "full analysis of a polytope file");
  analyze_cmd->add_option("file", file, "polytope JSON {A, b}")->required();
  analyze_cmd->add_flag("--oracle", oracle, "run the numerical oracle checks");
  analyze_cmd->add_flag("--require-embedded", require_embedded, "exit 2 unless the polytope is Delzant");
  analyze_cmd->add_option("--seed", seed, "sampling seed");
  analyze_cmd->add_option("--samples", samples, "quadrature samples per loop (0: automatic)")->check(CLI::NonNegativeNumber);

  auto* quadrics_cmd = app.add_subcommand("quadrics", "polytope to quadrics, or back with --inverse");
  quadrics_cmd->add_option("file", file, "polytope JSON, or quadrics JSON {Gamma, delta} with --inverse")->required();
  quadrics_cmd->add_flag("--inverse", inverse, "quadrics to polytope");

  auto* family_cmd = app.add_subcommand("family", "generate a family instance");
  family_cmd->add_option("spec", spec, "e.g. product-simplices:p=4,n=10,k=2")->required();

  auto* obstruct_cmd = app.add_subcommand("obstruct", "admissible minimal Maslov numbers for a homology profile");
  obstruct_cmd->add_option("file", file, "profile JSON {dims, L_dim, orientable}");
  obstruct_cmd->add_option("--family", spec, "e.g. sphere-product:p=4,q=6");
  obstruct_cmd->add_option("--L-dim", L_dim, "dimension of L (profile families)")->check(CLI::PositiveNumber);
  obstruct_cmd->add_option("--nmax", nmax, "largest N to test (default: dim L)")->check(CLI::Range(2, 1 << 20));

  auto* oracle_cmd = app.add_subcommand("oracle", "numerical checks of the loop invariants");
  oracle_cmd->add_option("file", file, "polytope JSON");
  oracle_cmd->add_option("--family", spec, "family spec instead of a file");
  oracle_cmd->add_option("--seed", seed, "sampling seed");
  oracle_cmd->add_option("--samples", samples, "quadrature samples per loop (0: automatic)")->check(CLI::NonNegativeNumber);

  auto* verify_cmd = app.add_subcommand("verify", "run the reproduction suite");
  verify_cmd->add_option("--only", only, "suite name or criterion number");
  verify_cmd->add_option("--seed", seed, "seed for randomized suites");
  verify_cmd->add_option("--samples", samples, "quadrature samples per loop (0: automatic)")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*analyze_cmd) {
      const auto P = parse_polytope(slurp(file));
      AnalysisOptions opts;
      opts.oracle = oracle;
      opts.seed = seed;
      opts.samples = samples;
      const auto r = analyze(P, opts);
      emit(to_json(r));
      if (require_embedded && !r.structure.delzant) {
        std::cerr << "quadlag: polytope is not Delzant\n";
        return 2;
      }
      return 0;
    }
    if (*quadrics_cmd) {
      if (inverse) emit(to_json(quadrics_to_polytope(parse_quadrics(slurp(file)))));
      else emit(to_json(polytope_to_quadrics(parse_polytope(slurp(file)))));
      return 0;
    }
    if (*family_cmd) {
      const auto f = parse_family_spec(spec);
      const auto g = generate(f);
      for (const auto& w : g.warnings) std::cerr << "quadlag: warning: " << w << '\n';
      emit(Json{{"family", f.to_string()},
                {"polytope", to_json(g.polytope)},
                {"quadrics", to_json(polytope_to_quadrics(g.polytope))},
                {"displayed_quadrics", to_json(displayed_quadrics(f))},
                {"warnings", g.warnings}});
      return 0;
    }
    if (*obstruct_cmd) {
      if (file.empty() == spec.empty()) {
        std::cerr << "quadlag: obstruct needs exactly one of FILE and --family\n";
        return 1;
      }
      const auto prof = spec.empty() ? parse_profile(slurp(file))
                                     : parse_profile_spec(spec, L_dim ? std::optional(L_dim) : std::nullopt);
      const auto adm = admissible_maslov(prof, nmax ? nmax : prof.L_dim);
      emit(Json{{"profile", to_json(prof)}, {"result", to_json(adm)}});
      return 0;
    }
    if (*oracle_cmd) {
      if (file.empty() == spec.empty()) {
        std::cerr << "quadlag: oracle needs exactly one of FILE and --family\n";
        return 1;
      }
      const auto P = spec.empty() ? parse_polytope(slurp(file)) : generate(parse_family_spec(spec)).polytope;
      AnalysisOptions opts;
      opts.oracle = true;
      opts.seed = seed;
      opts.samples = samples;
      const auto r = analyze(P, opts);
      if (!r.invariants) {
        std::cerr << "quadlag: no invariants for this polytope\n";
        return 2;
      }
      Json checks = Json::array();
      bool all = true;
      for (const auto& c : r.oracle_checks) {
        checks.push_back(to_json(c));
        all = all && c.pass;
      }
      emit(checks);
      return all ? 0 : 1;
    }
    if (*verify_cmd) {
      SuiteOptions opts{seed, samples};
      Json rows = Json::array();
      int failed = 0, flagged = 0, passed = 0;
      for (const auto& s : resolve_suites(only))
        for (const auto& r : run_suite(s, opts)) {
          rows.push_back(to_json(r));
          failed += r.status == "fail";
          flagged += r.status == "flagged";
          passed += r.status == "pass";
          std::cerr << r.status << "  [" << r.suite << "] " << r.claim << ": " << r.detail << '\n';
        }
      emit(Json{{"rows", rows}, {"summary", Json{{"pass", passed}, {"fail", failed}, {"flagged", flagged}}}});
      return failed ? 1 : 0;
    }
  } catch (const IoError& e) {
    std::cerr << "quadlag: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "quadlag: parse error: " << e.what() << '\n';
    return 1;
  } catch (const DimensionMismatch& e) {
    std::cerr << "quadlag: dimension mismatch: " << e.what() << '\n';
    return 1;
  } catch (const InvalidParameter& e) {
    std::cerr << "quadlag: invalid parameter: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    // rank deficiency, inconsistency and out-of-model inputs are structural
    std::cerr << "quadlag: rejected: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
