#pragma once

// The full pipeline on one polytope, and the reproduction suite that runs
// it over the two families and the obstruction profiles.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadlag/families.hpp"
#include "quadlag/invariants.hpp"
#include "quadlag/json_io.hpp"
#include "quadlag/oracle.hpp"

namespace quadlag {

// The family instance whose displayed quadrics have the same canonical form
// as P's, if any. Inequality order matters.
std::optional<FamilySpec> identify_family(const HPolytope& P);

struct Discrepancy {
  std::string claim;
  std::string stated_value;
  std::string computed_value;
  std::string note;
  std::optional<double> oracle_value;  // numerical measurement, when run
};

struct AnalysisOptions {
  bool oracle = false;
  std::uint64_t seed = 0;
  int samples = 0;
  EnumerationOptions enumeration;
  OracleConfig oracle_config;
};

struct AnalysisReport {
  StructureReport structure;
  QuadricSystem quadrics;
  std::optional<FamilySpec> family;
  std::optional<InvariantReport> invariants;
  std::optional<TopologyTag> topology;
  Agreement fano_check = Agreement::NotApplicable;
  std::vector<CheckRecord> oracle_checks;
  std::vector<Discrepancy> discrepancies;
  std::vector<std::string> notes;
};

AnalysisReport analyze(const HPolytope& P, const AnalysisOptions& opts = {});

// The area of the loop e2 = 2 (0, 1) in the displayed basis of the
// redundant family, exact and as stated; with `oracle` also measured.
Discrepancy e2_area_discrepancy(int n, int k, std::optional<std::uint64_t> oracle_seed,
                                const OracleConfig& cfg = {});

// Oracle checks on every loop basis vector, doubled: the identity at the
// sampled point, the area and the Maslov winding.
std::vector<CheckRecord> oracle_checks(const QuadricSystem& q, const InvariantReport& r,
                                       const std::optional<FamilySpec>& hint, std::uint64_t seed,
                                       int samples, const OracleConfig& cfg = {});

Json to_json(const Discrepancy& d);
Json to_json(const AnalysisReport& r);

struct VerifyRow {
  int criterion = 0;       // acceptance criterion this row belongs to, 0 for none
  std::string suite;
  std::string claim;
  std::string status;      // "pass", "fail", "flagged" or "note"
  std::string detail;
  Json data;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int samples = 0;
};

// Suite names in run order.
const std::vector<std::string>& suite_names();
// Criterion number (1..10) or suite name; throws InvalidParameter otherwise.
std::vector<std::string> resolve_suites(const std::string& only);
std::vector<VerifyRow> run_suite(const std::string& name, const SuiteOptions& opts = {});

Json to_json(const VerifyRow& r);

}  // namespace quadlag
