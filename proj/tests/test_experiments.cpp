#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vrdf/experiments.hpp"

using namespace vrdf;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.radix = MultiRadix{{RadixSequence({2, 3}), RadixSequence({3, 2})}};
  cfg.trials = 3;
  cfg.seed = 99;
  cfg.p_grid = {1.5, 2.0};
  cfg.max_rects = 6;
  cfg.timing = false;
  return cfg;
}

}  // namespace

TEST_CASE("rdf suite rows are deterministic and exact at p two") {
  ExperimentConfig cfg = small_config();
  std::vector<ExperimentRecord> rows = run_rdf_suite(cfg);
  REQUIRE(rows.size() == 6);
  for (const ExperimentRecord& r : rows) {
    CHECK(r.experiment == "rdf-random");
    CHECK(r.D == 2);
    CHECK(r.radix == "2.3;3.2");
    CHECK(r.depth == 2);
    CHECK(r.n_rects >= 1);
    CHECK(r.wall_ms == 0.0);
    if (r.p == 2.0) CHECK(std::abs(r.ratio - 1.0) < 1e-10);
  }
  CHECK(rows[0].seed != rows[2].seed);  // distinct trial streams
  CHECK(csv_string(rows) == csv_string(run_rdf_suite(cfg)));
}

TEST_CASE("weak suite filters the exponent grid") {
  ExperimentConfig cfg = small_config();
  cfg.trials = 2;
  cfg.p_grid = {0.5, 1.0, 2.0};
  std::vector<ExperimentRecord> rows = run_weak_suite(cfg);
  REQUIRE(rows.size() == 4);
  for (const ExperimentRecord& r : rows) {
    CHECK(r.experiment == "weak-random");
    CHECK(r.p <= 1.0);
    CHECK(r.rhs > 0.0);
    CHECK(r.ratio > 0.0);
  }
  cfg.p_grid = {1.5, 2.0};
  CHECK_THROWS_AS(run_weak_suite(cfg), std::invalid_argument);
}

TEST_CASE("tensor suite emits base, power, and gap rows") {
  ExperimentConfig cfg;
  cfg.radix = MultiRadix{{RadixSequence({2, 2, 2})}};
  cfg.trials = 2;
  cfg.seed = 5;
  cfg.p_grid = {1.1, 2.0};
  cfg.max_rects = 4;
  cfg.timing = false;

  std::vector<ExperimentRecord> rows = run_tensor_suite(cfg, 2);
  REQUIRE(rows.size() == 12);
  for (size_t i = 0; i < rows.size(); i += 3) {
    CHECK(rows[i].experiment == "tensor-base");
    CHECK(rows[i].D == 1);
    CHECK(rows[i + 1].experiment == "tensor-power");
    CHECK(rows[i + 1].D == 2);
    CHECK(rows[i + 1].radix == "2.2.2;2.2.2");
    CHECK(rows[i + 2].experiment == "tensor-gap");
    // the tensor identity holds well inside the gap tolerance
    CHECK(rows[i + 2].lhs <= rows[i + 2].rhs);
    CHECK(std::abs(rows[i + 1].ratio - std::pow(rows[i].ratio, 2)) < 1e-9);
  }

  // a first power is literally the same computation, so the gap is zero
  std::vector<ExperimentRecord> same = run_tensor_suite(cfg, 1);
  for (size_t i = 2; i < same.size(); i += 3) CHECK(same[i].lhs == 0.0);

  ExperimentConfig flat = small_config();
  CHECK_THROWS_AS(run_tensor_suite(flat, 2), std::invalid_argument);
  CHECK_THROWS_AS(run_tensor_suite(cfg, 0), std::invalid_argument);
}

TEST_CASE("gundy suite reports leak defects under tolerance") {
  ExperimentConfig cfg;
  cfg.radix = MultiRadix{{RadixSequence({2, 2, 2, 2}), RadixSequence({2, 2, 2, 2})}};
  cfg.trials = 4;
  cfg.seed = 31;
  cfg.timing = false;

  std::vector<ExperimentRecord> rows = run_gundy_suite(cfg);
  REQUIRE(rows.size() == 8);
  for (size_t i = 0; i < rows.size(); i += 2) {
    CHECK(rows[i].experiment == "gundy-delta");
    CHECK(rows[i + 1].experiment == "gundy-locality");
    CHECK(rows[i].seed == rows[i + 1].seed);
  }
  CHECK(max_ratio(rows) <= 1.0);  // every defect under its tolerance
}

TEST_CASE("partition fuzz is clean on exhaustive and random spans") {
  ExperimentConfig cfg;
  cfg.radix = parse_multi_radix("uniform:10:4", 1);
  cfg.trials = 40;
  cfg.seed = 12;
  cfg.timing = false;

  std::vector<ExperimentRecord> rows = run_partition_fuzz(cfg);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].experiment == "partition-figure");
  CHECK(rows[0].n_rects == 7);
  CHECK(rows[1].experiment == "partition-exhaustive");
  CHECK(rows[1].radix == "2.3.4");
  CHECK(rows[1].n_rects == 300);  // all pairs 0 <= a < b <= 24
  CHECK(rows[2].radix == "2.2.2");
  CHECK(rows[2].n_rects == 36);
  CHECK(rows[3].experiment == "partition-random");
  CHECK(rows[3].n_rects == 40);
  for (const ExperimentRecord& r : rows) CHECK(r.lhs == 0.0);
}

TEST_CASE("plancherel rows sit at ratio one") {
  ExperimentConfig cfg = small_config();
  cfg.trials = 5;
  std::vector<ExperimentRecord> rows = run_plancherel(cfg);
  REQUIRE(rows.size() == 5);
  for (const ExperimentRecord& r : rows) {
    CHECK(r.p == 2.0);
    CHECK(std::abs(r.ratio - 1.0) < 1e-10);
  }
}

TEST_CASE("config validation") {
  ExperimentConfig cfg = small_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.trials = 1001;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.p_grid = {1.5, 0.0};
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.p_grid.clear();
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.max_rects = 0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.radix = parse_multi_radix("uniform:2:21", 1);  // 2^21 cells
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.radix = parse_multi_radix("uniform:2:2", 4);
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  CHECK(max_ratio({}) == 0.0);
}
