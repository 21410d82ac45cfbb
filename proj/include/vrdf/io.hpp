#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vrdf/grid.hpp"
#include "vrdf/pipeline.hpp"

namespace vrdf {

/// Grid data interchange: a JSON object with the shape header (dims, radices,
/// depths) and the cell or coefficient values as [re, im] pairs in row-major
/// order.  The kind tag tells functions and spectra apart.
std::string function_to_json(const GridFunction& f);
std::string spectrum_to_json(const SpectrumCoeffs& c);
GridFunction function_from_json(const std::string& text);
SpectrumCoeffs spectrum_from_json(const std::string& text);

/// Radix sequences in CLI flags: either a JSON array like [2,3,2] or the
/// shorthand uniform:<p>:<N>.
RadixSequence parse_radix_spec(const std::string& spec);

/// Per-dimension specs separated by ';'.  A single spec with dims > 1 is
/// replicated; dims == 0 takes the dimension count from the spec itself.
MultiRadix parse_multi_radix(const std::string& spec, int dims);

/// Compact comma-free descriptor for CSV fields, e.g. "2.3.2;3.2".
std::string radix_descriptor(const MultiRadix& r);

/// Rectangle families: a JSON list of {rect, coeffs} with rect the per-dim
/// [lo, hi) pairs and coeffs a sparse list of [multi-index, re, im].  The
/// grid itself is not part of the format and must be supplied on read.
std::string family_to_json(const SpectralFamily& fam, double tol = 1e-12);
SpectralFamily family_from_json(const std::string& text, const MultiRadix& radix,
                                bool validate = true);

/// One row of experiment output.
struct ExperimentRecord {
  std::string experiment;
  std::uint64_t seed = 0;
  int D = 1;
  std::string radix;
  int depth = 0;
  double p = 0.0;
  std::int64_t n_rects = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double wall_ms = 0.0;
};

/// CSV with a fixed header, 17 significant digits for floats, and a leading
/// comment line naming the random generator.
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
std::string csv_string(const std::vector<ExperimentRecord>& records);

}  // namespace vrdf
