#pragma once

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "framecert/frame_ops.hpp"

namespace framecert {

struct ScenarioParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingFixtureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat "[scenario]" section of "key = value" lines; '#' starts a comment.
struct Scenario {
  std::string id;
  std::string kind;
  std::map<std::string, std::string> params;
  double rtol = kDefaultRtol;
  std::optional<unsigned long long> seed;
};

Scenario parse_scenario(std::istream& is);
Scenario parse_scenario_file(const std::string& path);

// One JSON object per check: {check, kind, alpha, beta, residuals{}, rtol,
// verdict, instance_id}. Key order and float formatting are deterministic.
std::string report_line(const std::string& check, const FrameCertificate& cert,
                        const std::string& instance_id);

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 verdict failure, 2 parse error, 3 missing fixture
  std::vector<std::string> records;
  std::string error;  // set when exit_code is 2 or 3
};

// Fixture paths in the scenario resolve relative to base_dir.
RunResult run_scenario(const Scenario& sc, const std::string& base_dir = ".");

struct SweepRow {
  std::string value;
  double alpha = 0.0;
  double beta = 0.0;
  double residual_max = 0.0;
};

struct SweepResult {
  int exit_code = 0;
  std::vector<SweepRow> rows;
  std::string csv() const;  // header: value,alpha,beta,residual_max
};

SweepResult sweep_scenario(Scenario sc, const std::string& param,
                           const std::vector<std::string>& values,
                           const std::string& base_dir = ".");

// Seeded random instance for the equivalence harnesses. Instances are built
// decidable: either K = C* M exactly (inclusion holds) or K carries a
// component outside R(C*) of relative size >= 0.3, so the tolerance-based
// predicates cannot straddle the threshold.
struct HarnessInstance {
  VectorFamily psi;
  Matrix k;  // square when requested (graph-metric variant)
  bool expected = false;
};

HarnessInstance random_harness_instance(std::mt19937_64& rng, int dim_max,
                                        int m_max, bool square);

}  // namespace framecert
