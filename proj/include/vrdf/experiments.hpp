#pragma once

#include <cstdint>
#include <vector>

#include "vrdf/io.hpp"
#include "vrdf/pipeline.hpp"

namespace vrdf {

/// Shared knobs for the experiment suites.  Every suite is deterministic
/// given the config: trial t draws from the stream (seed, t), so rows do not
/// depend on which other suites ran.  With timing off, wall_ms is written as
/// zero and repeated runs are byte-identical.
struct ExperimentConfig {
  MultiRadix radix{{RadixSequence({2, 2, 2})}};
  int trials = 10;
  std::uint64_t seed = 1;
  std::vector<double> p_grid{1.1, 1.5, 2.0};
  int max_rects = 16;
  CoeffLaw law = CoeffLaw::gaussian;
  bool timing = true;
};

/// Rejects empty or oversized configs (desk-scale limits: at most 3
/// dimensions, 2^20 cells, 1000 trials) and non-positive exponents.
void validate_config(const ExperimentConfig& cfg);

/// Random families through the full inequality check, one row per (trial, p).
std::vector<ExperimentRecord> run_rdf_suite(const ExperimentConfig& cfg);

/// Same families against the corner-demodulated aggregate bound; only the
/// exponents in (0, 1] of the grid are used.
std::vector<ExperimentRecord> run_weak_suite(const ExperimentConfig& cfg);

/// One-dimensional base families and their tensor powers.  Per (trial, p),
/// three rows: the base ratio, the power ratio, and a gap row in defect
/// convention (lhs = |ratio_D - ratio_1^D|, rhs = its tolerance).
std::vector<ExperimentRecord> run_tensor_suite(const ExperimentConfig& cfg, int dims);

/// Random simple atoms; per trial a delta-support row and a quasi-locality
/// row, both in defect convention.
std::vector<ExperimentRecord> run_gundy_suite(const ExperimentConfig& cfg);

/// Interval decomposition checks: the pinned decimal table, exhaustive small
/// radices, and random spans on the configured grid.  Defect convention.
std::vector<ExperimentRecord> run_partition_fuzz(const ExperimentConfig& cfg);

/// p = 2 exactness of the inequality ratio, one row per trial.
std::vector<ExperimentRecord> run_plancherel(const ExperimentConfig& cfg);

/// Largest ratio field over the rows, 0 for an empty list.
double max_ratio(const std::vector<ExperimentRecord>& records);

}  // namespace vrdf
