#include "vrdf/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "vrdf/rng.hpp"
#include "vrdf/transform.hpp"

namespace vrdf {

namespace {

using nlohmann::json;

json shape_header(const MultiRadix& r, const char* kind) {
  json j;
  j["kind"] = kind;
  j["dims"] = r.D();
  json radices = json::array(), depths = json::array();
  for (int d = 0; d < r.D(); ++d) {
    json seq = json::array();
    for (int k = 1; k <= r.dim(d).depth(); ++k) seq.push_back(r.dim(d).p(k));
    radices.push_back(seq);
    depths.push_back(r.dim(d).depth());
  }
  j["radices"] = radices;
  j["depths"] = depths;
  return j;
}

json values_array(const std::vector<cplx>& values) {
  json arr = json::array();
  for (const cplx& v : values) arr.push_back(json::array({v.real(), v.imag()}));
  return arr;
}

MultiRadix shape_from_header(const json& j, const char* kind) {
  if (!j.is_object() || j.value("kind", std::string{}) != kind)
    throw std::invalid_argument(std::string("expected a ") + kind + " object");
  const json& radices = j.at("radices");
  const json& depths = j.at("depths");
  if (!radices.is_array() || !depths.is_array() ||
      radices.size() != depths.size() ||
      j.at("dims").get<int>() != static_cast<int>(radices.size()))
    throw std::invalid_argument("inconsistent shape header");
  std::vector<RadixSequence> dims;
  for (size_t d = 0; d < radices.size(); ++d) {
    std::vector<int> ps = radices[d].get<std::vector<int>>();
    if (static_cast<int>(ps.size()) != depths[d].get<int>())
      throw std::invalid_argument("depth does not match the radix sequence");
    dims.emplace_back(ps);
  }
  return MultiRadix{dims};
}

std::vector<cplx> values_from_array(const json& arr, std::int64_t expect) {
  if (!arr.is_array() || static_cast<std::int64_t>(arr.size()) != expect)
    throw std::invalid_argument("value list does not fill the grid");
  std::vector<cplx> out;
  out.reserve(arr.size());
  for (const json& pair : arr) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("values must be [re, im] pairs");
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string function_to_json(const GridFunction& f) {
  validate_shape(f.radix, f.values.size());
  json j = shape_header(f.radix, "function");
  j["values"] = values_array(f.values);
  return j.dump();
}

std::string spectrum_to_json(const SpectrumCoeffs& c) {
  validate_shape(c.radix, c.values.size());
  json j = shape_header(c.radix, "spectrum");
  j["values"] = values_array(c.values);
  return j.dump();
}

GridFunction function_from_json(const std::string& text) {
  json j = json::parse(text);
  GridFunction f;
  f.radix = shape_from_header(j, "function");
  f.values = values_from_array(j.at("values"), f.radix.cells());
  return f;
}

SpectrumCoeffs spectrum_from_json(const std::string& text) {
  json j = json::parse(text);
  SpectrumCoeffs c;
  c.radix = shape_from_header(j, "spectrum");
  c.values = values_from_array(j.at("values"), c.radix.cells());
  return c;
}

RadixSequence parse_radix_spec(const std::string& raw) {
  std::string spec = trim(raw);
  if (spec.empty()) throw std::invalid_argument("empty radix spec");
  if (spec.rfind("uniform:", 0) == 0) {
    size_t colon = spec.find(':', 8);
    if (colon == std::string::npos) throw std::invalid_argument("expected uniform:<p>:<N>");
    int p = 0, N = 0;
    try {
      size_t used = 0;
      p = std::stoi(spec.substr(8, colon - 8), &used);
      if (used != colon - 8) throw std::invalid_argument("");
      N = std::stoi(spec.substr(colon + 1), &used);
      if (used != spec.size() - colon - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("expected uniform:<p>:<N> with integer fields");
    }
    if (N < 1) throw std::invalid_argument("depth must be at least 1");
    return RadixSequence(std::vector<int>(static_cast<size_t>(N), p));
  }
  if (spec.front() == '[') {
    json j;
    try {
      j = json::parse(spec);
    } catch (const std::exception&) {
      throw std::invalid_argument("radix spec is not a JSON array");
    }
    if (!j.is_array() || j.empty()) throw std::invalid_argument("radix spec is not a JSON array");
    return RadixSequence(j.get<std::vector<int>>());
  }
  throw std::invalid_argument("radix spec must be [..] or uniform:<p>:<N>");
}

MultiRadix parse_multi_radix(const std::string& spec, int dims) {
  std::vector<RadixSequence> parts;
  size_t start = 0;
  while (start <= spec.size()) {
    size_t semi = spec.find(';', start);
    std::string piece = semi == std::string::npos ? spec.substr(start)
                                                  : spec.substr(start, semi - start);
    parts.push_back(parse_radix_spec(piece));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (dims <= 0) dims = static_cast<int>(parts.size());
  if (parts.size() == 1 && dims > 1)
    parts.assign(static_cast<size_t>(dims), parts.front());
  if (static_cast<int>(parts.size()) != dims)
    throw std::invalid_argument("radix spec count does not match the dimension count");
  return MultiRadix{parts};
}

std::string radix_descriptor(const MultiRadix& r) {
  std::string out;
  for (int d = 0; d < r.D(); ++d) {
    if (d) out += ';';
    for (int k = 1; k <= r.dim(d).depth(); ++k) {
      if (k > 1) out += '.';
      out += std::to_string(r.dim(d).p(k));
    }
  }
  return out;
}

std::string family_to_json(const SpectralFamily& fam, double tol) {
  json list = json::array();
  for (const FamilyEntry& e : fam.entries) {
    json rect = json::array();
    for (size_t d = 0; d < e.rect.lo.size(); ++d)
      rect.push_back(json::array({e.rect.lo[d], e.rect.hi[d]}));
    SpectrumCoeffs c = forward_transform(e.f);
    json coeffs = json::array();
    for (std::int64_t flat = 0; flat < fam.radix.cells(); ++flat) {
      const cplx& v = c.values[static_cast<size_t>(flat)];
      if (std::abs(v) <= tol) continue;
      json idx = json::array();
      for (std::int64_t n : unflatten(fam.radix, flat)) idx.push_back(n);
      coeffs.push_back(json::array({idx, v.real(), v.imag()}));
    }
    list.push_back(json{{"rect", rect}, {"coeffs", coeffs}});
  }
  return list.dump();
}

SpectralFamily family_from_json(const std::string& text, const MultiRadix& radix,
                                bool validate) {
  json list = json::parse(text);
  if (!list.is_array()) throw std::invalid_argument("family file must be a JSON list");
  SpectralFamily fam{radix, {}};
  for (const json& item : list) {
    const json& rect = item.at("rect");
    if (static_cast<int>(rect.size()) != radix.D())
      throw std::invalid_argument("rectangle dimension mismatch");
    FamilyEntry e;
    for (const json& pair : rect) {
      e.rect.lo.push_back(pair.at(0).get<std::int64_t>());
      e.rect.hi.push_back(pair.at(1).get<std::int64_t>());
    }
    validate_rectangle(radix, e.rect);
    SpectrumCoeffs c = make_zero_spectrum(radix);
    for (const json& triple : item.at("coeffs")) {
      MultiIndex n = triple.at(0).get<MultiIndex>();
      if (static_cast<int>(n.size()) != radix.D())
        throw std::invalid_argument("coefficient index dimension mismatch");
      c.values[static_cast<size_t>(flat_index(radix, n))] =
          cplx(triple.at(1).get<double>(), triple.at(2).get<double>());
    }
    e.f = inverse_transform(c);
    fam.entries.push_back(std::move(e));
  }
  if (validate) validate_family(fam);
  return fam;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "# rng=" << Rng::name() << "\n";
  out << "experiment,seed,D,radix,depth,p,n_rects,lhs,rhs,ratio,wall_ms\n";
  for (const ExperimentRecord& r : records) {
    out << r.experiment << ',' << r.seed << ',' << r.D << ',' << r.radix << ','
        << r.depth << ',' << fmt17(r.p) << ',' << r.n_rects << ',' << fmt17(r.lhs)
        << ',' << fmt17(r.rhs) << ',' << fmt17(r.ratio) << ',' << fmt17(r.wall_ms)
        << '\n';
  }
}

std::string csv_string(const std::vector<ExperimentRecord>& records) {
  std::ostringstream ss;
  write_csv(ss, records);
  return ss.str();
}

}  // namespace vrdf
