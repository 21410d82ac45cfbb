#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vrdf/experiments.hpp"
#include "vrdf/interleave.hpp"
#include "vrdf/partition.hpp"
#include "vrdf/transform.hpp"

using namespace vrdf;

namespace {

int exit_code = 0;

struct SuiteOpts {
  std::string radix = "uniform:2:3";
  int dims = 0;  // 0 infers the count from the radix spec
  int depth = 0;
  std::uint64_t seed = 1;
  int trials = 10;
  std::vector<double> ps{1.1, 1.5, 2.0};
  int max_rects = 16;
  std::string out;
  bool json = false;
  bool no_timing = false;
  bool rademacher = false;
};

void add_suite_flags(CLI::App* sub, SuiteOpts& o) {
  sub->add_option("--radix", o.radix,
                  "radix spec: [2,3,2] or uniform:<p>:<N>, one per dimension joined by ';'");
  sub->add_option("--dims", o.dims, "number of dimensions (0 infers from the radix spec)");
  sub->add_option("--depth", o.depth, "override the depth of uniform radix specs");
  sub->add_option("--seed", o.seed, "master seed; trial t uses stream (seed, t)");
  sub->add_option("--trials,--atoms", o.trials, "number of trials");
  sub->add_option("--p", o.ps, "exponent grid");
  sub->add_option("--max-rects", o.max_rects, "rectangle budget per family");
  sub->add_option("--out", o.out, "write rows as CSV to this path");
  sub->add_flag("--json", o.json, "machine-readable summary on stdout");
  sub->add_flag("--no-timing", o.no_timing, "write wall_ms as 0 for byte-identical output");
  sub->add_flag("--rademacher", o.rademacher, "draw +-1 coefficients instead of gaussians");
}

ExperimentConfig to_config(const SuiteOpts& o) {
  ExperimentConfig cfg;
  std::string spec = o.radix;
  if (o.depth > 0) {
    if (spec.rfind("uniform:", 0) != 0)
      throw std::invalid_argument("--depth only applies to uniform radix specs");
    size_t colon = spec.find(':', 8);
    spec = spec.substr(0, colon == std::string::npos ? spec.size() : colon) + ":" +
           std::to_string(o.depth);
  }
  cfg.radix = parse_multi_radix(spec, o.dims);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.p_grid = o.ps;
  cfg.max_rects = o.max_rects;
  cfg.law = o.rademacher ? CoeffLaw::rademacher : CoeffLaw::gaussian;
  cfg.timing = !o.no_timing;
  return cfg;
}

void maybe_write_csv(const SuiteOpts& o, const std::vector<ExperimentRecord>& rows) {
  if (o.out.empty()) return;
  std::ofstream file(o.out);
  if (!file) {
    std::cerr << "cannot open " << o.out << " for writing\n";
    exit_code = 1;
    return;
  }
  write_csv(file, rows);
}

void print_summary(const SuiteOpts& o, const char* suite,
                   const std::vector<ExperimentRecord>& rows, std::int64_t failures,
                   const std::string& detail) {
  if (o.json) {
    nlohmann::json j{{"suite", suite},
                     {"rows", rows.size()},
                     {"max_ratio", max_ratio(rows)},
                     {"failures", failures}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << suite << ": " << rows.size() << " rows, max ratio "
              << max_ratio(rows) << ", failures " << failures << "\n";
    if (!detail.empty()) std::cout << detail;
  }
  if (failures > 0) exit_code = 1;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

std::string set_string(const std::vector<std::int64_t>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

std::string lambda_string(const std::vector<int>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed-radix Vilenkin analysis: transforms, corner partitions, "
               "inequality experiments"};
  app.require_subcommand(1);

  // transform: grid data in, spectrum out (or back)
  auto* t_sub = app.add_subcommand("transform", "apply the fast transform to a JSON grid file");
  static std::string t_in, t_output;
  static bool t_inverse = false, t_roundtrip = false;
  t_sub->add_option("--in", t_in, "input JSON file")->required();
  t_sub->add_option("--output", t_output, "output JSON path (default stdout)");
  t_sub->add_flag("--inverse", t_inverse, "treat input as a spectrum and invert");
  t_sub->add_flag("--roundtrip", t_roundtrip, "report the forward+inverse error instead");
  t_sub->callback([] {
    std::string text = read_file(t_in);
    if (t_roundtrip) {
      GridFunction f = function_from_json(text);
      GridFunction back = inverse_transform(forward_transform(f));
      double err = 0.0;
      for (size_t i = 0; i < f.values.size(); ++i)
        err = std::max(err, std::abs(f.values[i] - back.values[i]));
      std::cout << "roundtrip max error: " << err << "\n";
      if (!(err <= 1e-12)) exit_code = 1;
      return;
    }
    std::string result = t_inverse
                             ? function_to_json(inverse_transform(spectrum_from_json(text)))
                             : spectrum_to_json(forward_transform(function_from_json(text)));
    if (t_output.empty()) {
      std::cout << result << "\n";
    } else {
      std::ofstream file(t_output);
      if (!file) throw std::runtime_error("cannot open " + t_output);
      file << result << "\n";
    }
  });

  // partition: print the corner decomposition table for one interval
  auto* p_sub = app.add_subcommand("partition", "decompose [a,b) into shifted spectral blocks");
  static SuiteOpts p_opts;
  static std::int64_t p_a = 0, p_b = 0;
  static bool p_verify = false;
  p_sub->add_option("--a", p_a, "lower endpoint")->required();
  p_sub->add_option("--b", p_b, "upper endpoint")->required();
  p_sub->add_option("--radix", p_opts.radix, "radix spec for the single axis");
  p_sub->add_option("--depth", p_opts.depth, "override the depth of a uniform spec");
  p_sub->add_flag("--verify", p_verify, "run the brute-force shift check on every piece");
  p_sub->callback([] {
    p_opts.dims = 1;
    RadixSequence rs = to_config(p_opts).radix.dim(0);
    IntervalPartition part = partition_interval(rs, p_a, p_b);
    std::printf("partition of [%lld,%lld) in radix %s (t=%d, digits=%d)\n",
                static_cast<long long>(p_a), static_cast<long long>(p_b),
                radix_descriptor(MultiRadix{{rs}}).c_str(), part.t, part.digits_b);
    for (const IntervalPiece& piece : part.pieces) {
      char range[40];
      std::snprintf(range, sizeof range, "[%lld,%lld)", static_cast<long long>(piece.lo),
                    static_cast<long long>(piece.hi));
      std::printf("%-6s %-16s level %d  lambda %s\n", piece_label(piece).c_str(), range,
                  piece.level, lambda_string(piece.lambda).c_str());
    }
    std::printf("pieces: %zu\n", part.pieces.size());
    if (p_verify) {
      int ok = 0;
      for (const IntervalPiece& piece : part.pieces)
        if (verify_shift_property(rs, piece)) ++ok;
      std::printf("shift property: %d/%zu ok\n", ok, part.pieces.size());
      if (ok != static_cast<int>(part.pieces.size())) exit_code = 1;
    }
  });

  // rdf-verify: random families or a family file against the square bound
  auto* r_sub = app.add_subcommand("rdf-verify", "check the aggregate square-function bound");
  static SuiteOpts r_opts;
  static std::string r_in, r_emit;
  add_suite_flags(r_sub, r_opts);
  r_sub->add_option("--in", r_in, "verify the family in this JSON file instead");
  r_sub->add_option("--emit-family", r_emit, "write the first generated family as JSON");
  r_sub->callback([] {
    std::vector<ExperimentRecord> rows;
    if (!r_in.empty()) {
      ExperimentConfig cfg = to_config(r_opts);
      SpectralFamily fam = family_from_json(read_file(r_in), cfg.radix);
      for (double p : r_opts.ps) {
        InequalityResult res = verify_main_inequality(fam, p);
        ExperimentRecord rec;
        rec.experiment = "rdf-file";
        rec.seed = 0;
        rec.D = cfg.radix.D();
        rec.radix = radix_descriptor(cfg.radix);
        for (int d = 0; d < cfg.radix.D(); ++d)
          rec.depth = std::max(rec.depth, cfg.radix.dim(d).depth());
        rec.p = p;
        rec.n_rects = static_cast<std::int64_t>(fam.entries.size());
        rec.lhs = res.lhs;
        rec.rhs = res.rhs;
        rec.ratio = res.ratio;
        rows.push_back(rec);
      }
    } else {
      ExperimentConfig cfg = to_config(r_opts);
      rows = run_rdf_suite(cfg);
      if (!r_emit.empty()) {
        SpectralFamily fam = random_family(rows.front().seed, cfg.radix, cfg.max_rects, cfg.law);
        std::ofstream file(r_emit);
        if (!file) throw std::runtime_error("cannot open " + r_emit);
        file << family_to_json(fam) << "\n";
      }
    }
    std::int64_t failures = 0;
    for (const ExperimentRecord& rec : rows)
      if (rec.p == 2.0 && std::abs(rec.ratio - 1.0) > 1e-10) ++failures;
    maybe_write_csv(r_opts, rows);
    print_summary(r_opts, "rdf-verify", rows, failures, "");
  });

  // weak-verify: Hardy-norm corner bound for small exponents
  auto* w_sub = app.add_subcommand("weak-verify", "check the corner-demodulated Hardy bound");
  static SuiteOpts w_opts;
  w_opts.ps = {0.5, 1.0};
  add_suite_flags(w_sub, w_opts);
  w_sub->callback([] {
    std::vector<ExperimentRecord> rows = run_weak_suite(to_config(w_opts));
    maybe_write_csv(w_opts, rows);
    print_summary(w_opts, "weak-verify", rows, 0, "");
  });

  // tensor-amplify: product families and the power identity
  auto* x_sub = app.add_subcommand("tensor-amplify", "tensor powers of one-dimensional families");
  static SuiteOpts x_opts;
  x_opts.dims = 2;
  add_suite_flags(x_sub, x_opts);
  x_sub->callback([] {
    SuiteOpts base = x_opts;
    int dims = base.dims;
    base.dims = 1;
    std::vector<ExperimentRecord> rows = run_tensor_suite(to_config(base), dims);
    std::int64_t failures = 0;
    double max_gap = 0.0;
    for (const ExperimentRecord& rec : rows)
      if (rec.experiment == "tensor-gap") {
        max_gap = std::max(max_gap, rec.lhs);
        if (rec.lhs > rec.rhs) ++failures;
      }
    maybe_write_csv(x_opts, rows);
    char detail[64];
    std::snprintf(detail, sizeof detail, "max power gap: %.3g\n", max_gap);
    print_summary(x_opts, "tensor-amplify", rows, failures, detail);
  });

  // gundy-check: random atoms against support and locality claims
  auto* g_sub = app.add_subcommand("gundy-check", "random simple atoms: support and locality");
  static SuiteOpts g_opts;
  g_opts.dims = 2;
  g_opts.radix = "uniform:2:6";
  add_suite_flags(g_sub, g_opts);
  g_sub->callback([] {
    std::vector<ExperimentRecord> rows = run_gundy_suite(to_config(g_opts));
    std::int64_t delta_pass = 0, delta_all = 0, local_pass = 0, local_all = 0;
    double max_leak = 0.0, max_integral = 0.0;
    for (const ExperimentRecord& rec : rows) {
      if (rec.experiment == "gundy-delta") {
        ++delta_all;
        if (rec.lhs <= rec.rhs) ++delta_pass;
        max_leak = std::max(max_leak, rec.lhs);
      } else {
        ++local_all;
        if (rec.lhs <= rec.rhs) ++local_pass;
        max_integral = std::max(max_integral, rec.lhs);
      }
    }
    std::int64_t failures = (delta_all - delta_pass) + (local_all - local_pass);
    maybe_write_csv(g_opts, rows);
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "delta support: %lld/%lld pass, max leaked mass %.3g\n"
                  "quasi-locality: %lld/%lld pass, max integral %.3g\n",
                  static_cast<long long>(delta_pass), static_cast<long long>(delta_all),
                  max_leak, static_cast<long long>(local_pass),
                  static_cast<long long>(local_all), max_integral);
    print_summary(g_opts, "gundy-check", rows, failures, detail);
  });

  // plancherel: p = 2 exactness
  auto* l_sub = app.add_subcommand("plancherel", "ratio at p=2 must be one");
  static SuiteOpts l_opts;
  add_suite_flags(l_sub, l_opts);
  l_sub->callback([] {
    std::vector<ExperimentRecord> rows = run_plancherel(to_config(l_opts));
    std::int64_t failures = 0;
    double max_dev = 0.0;
    for (const ExperimentRecord& rec : rows) {
      max_dev = std::max(max_dev, std::abs(rec.ratio - 1.0));
      if (std::abs(rec.ratio - 1.0) > 1e-10) ++failures;
    }
    maybe_write_csv(l_opts, rows);
    char detail[64];
    std::snprintf(detail, sizeof detail, "max |ratio-1|: %.3g\n", max_dev);
    print_summary(l_opts, "plancherel", rows, failures, detail);
  });

  // exotic: image of a spectral box under the digit interleaving
  auto* e_sub = app.add_subcommand("exotic", "image of a spectral rectangle on the long line");
  static SuiteOpts e_opts;
  static std::string e_rect;
  e_opts.dims = 0;
  e_sub->add_option("--rect", e_rect, "inclusive corners lo:hi per dimension, e.g. 3:6,0:0")
      ->required();
  e_sub->add_option("--radix", e_opts.radix, "radix spec per dimension");
  e_sub->add_option("--dims", e_opts.dims, "number of dimensions");
  e_sub->add_option("--depth", e_opts.depth, "override the depth of a uniform spec");
  e_sub->callback([] {
    Rectangle rect;
    std::stringstream ss(e_rect);
    std::string part;
    while (std::getline(ss, part, ',')) {
      size_t colon = part.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("--rect expects lo:hi pairs separated by ','");
      rect.lo.push_back(std::stoll(part.substr(0, colon)));
      rect.hi.push_back(std::stoll(part.substr(colon + 1)) + 1);
    }
    if (e_opts.dims == 0) e_opts.dims = static_cast<int>(rect.lo.size());
    MultiRadix radix = to_config(e_opts).radix;
    if (static_cast<int>(rect.lo.size()) != radix.D())
      throw std::invalid_argument("--rect dimension count does not match the radix");
    InterleavingMap map = make_interleaving(radix);
    std::cout << set_string(exotic_interval(map, rect)) << "\n";
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
