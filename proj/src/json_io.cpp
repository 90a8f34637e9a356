#include "moebius_kit/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace moebius_kit::json {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void write(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write(value, out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write(e, out, depth + 1);
      }
      out += flat ? "]" : "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

double decode_real(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

Json encode_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<Complex> decode_coefficients(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) fail(std::string(what) + " must be a nonempty array");
  std::vector<Complex> out;
  for (const Json& e : j) out.push_back(decode_complex(e));
  return out;
}

Json encode_coefficients(const std::vector<Complex>& c) {
  Json a = Json::array();
  for (const Complex& z : c) a.push_back(encode(z));
  return a;
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json encode(Complex z) { return Json::array({z.real(), z.imag()}); }

Json encode(const SpherePoint& p) {
  if (p.is_infinite()) return "inf";
  return encode(p.value());
}

Json encode(const Tetrad& t) {
  Json a = Json::array();
  for (const SpherePoint& p : t.points()) a.push_back(encode(p));
  return a;
}

Json encode(const MoebiusMap& m) {
  Json j;
  j["matrix"] = Json::array({encode(m.a()), encode(m.b()), encode(m.c()), encode(m.d())});
  j["conjugating"] = m.conjugating();
  return j;
}

Json encode(const GeneralizedCircle& c) {
  Json j;
  j["A"] = c.A();
  j["B"] = encode(c.B());
  j["C"] = c.C();
  return j;
}

Json encode(const PhiWitness& w) {
  Json j;
  j["index"] = w.index;
  j["tetrad"] = encode(w.tetrad);
  j["image"] = encode(w.image);
  j["alpha"] = encode(w.alpha);
  j["achieved"] = encode(w.achieved);
  j["gap"] = w.gap;
  return j;
}

Json encode(const PhiTestResult& r) {
  Json j;
  j["pass"] = r.pass;
  j["alpha"] = encode(r.alpha);
  j["requested"] = r.requested;
  j["generated"] = r.generated;
  j["admissible"] = r.admissible;
  j["skipped"] = r.skipped;
  j["violations"] = r.violations;
  j["max_gap"] = r.max_gap;
  j["witness"] = r.witness ? encode(*r.witness) : Json(nullptr);
  return j;
}

Json encode(const MidpointResult& r) {
  Json j;
  j["pass"] = r.pass;
  j["beta"] = encode(r.beta);
  j["probes"] = r.probes;
  j["conservation_checked"] = r.conservation_checked;
  j["max_midpoint_gap"] = encode_real(r.max_midpoint_gap);
  j["max_conservation_gap"] = encode_real(r.max_conservation_gap);
  return j;
}

Json encode(const CircleTestResult& r) {
  Json j;
  j["pass"] = r.pass;
  j["degenerate"] = r.degenerate;
  j["circles"] = r.circles;
  j["max_residual"] = encode_real(r.max_residual);
  j["full_image_residual"] = encode_real(r.full_image_residual);
  return j;
}

Json encode(const InjectivityResult& r) {
  Json j;
  j["result"] = std::string(to_string(r.verdict));
  j["samples"] = r.samples;
  j["spread"] = r.spread;
  j["collision"] = r.collision
                       ? Json::array({encode(r.collision->first), encode(r.collision->second)})
                       : Json(nullptr);
  return j;
}

Json encode(const ClassificationReport& r) {
  Json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["seed"] = r.seed;
  j["alpha"] = encode(r.alpha);
  j["tol"] = r.tol;
  j["n_tetrads"] = r.n_tetrads;
  j["fitted_map"] = r.fitted_map ? encode(*r.fitted_map) : Json(nullptr);
  j["max_residual"] = encode_real(r.max_residual);
  j["witness"] = r.witness ? encode(*r.witness) : Json(nullptr);

  Json checks;
  checks["injectivity_probe"] = encode(r.injectivity);
  Json phi;
  phi["status"] = std::string(to_string(r.phi_status));
  phi["primary"] = r.phi ? encode(*r.phi) : Json(nullptr);
  phi["corroboration"] = r.phi_corroboration ? encode(*r.phi_corroboration) : Json(nullptr);
  checks["phi_test"] = phi;
  Json mid = r.midpoint ? encode(*r.midpoint) : Json::object();
  mid["status"] = std::string(to_string(r.midpoint_status));
  checks["midpoint_test"] = mid;
  Json circ = r.circle ? encode(*r.circle) : Json::object();
  circ["status"] = std::string(to_string(r.circle_status));
  checks["circle_test"] = circ;
  Json fit;
  fit["status"] = std::string(to_string(r.fit_status));
  checks["moebius_fit"] = fit;
  j["checks"] = checks;

  j["diagnostics"] = Json::array();
  for (const std::string& d : r.diagnostics) j["diagnostics"].push_back(d);
  return j;
}

Json encode(const SampledMap& f) {
  Json j;
  if (f.is_explicit()) {
    Json pairs = Json::array();
    for (const SamplePair& p : f.pairs()) pairs.push_back(Json::array({encode(p.input), encode(p.output)}));
    j["pairs"] = pairs;
    return j;
  }
  const RationalMap* r = f.rational_descriptor();
  if (!r) throw Error(ErrorKind::InvalidSampledMap, "callable maps have no JSON encoding");
  Json rat;
  rat["num"] = encode_coefficients(r->numerator);
  rat["den"] = encode_coefficients(r->denominator);
  rat["conjugate"] = r->conjugate;
  if (r->perturbation.kind == Perturbation::Kind::sin_re) {
    Json p;
    p["kind"] = "sin_re";
    p["amplitude"] = r->perturbation.amplitude;
    rat["perturb"] = p;
  }
  j["rational"] = rat;
  Json region;
  region["center"] = encode(f.region().center);
  region["radius"] = f.region().radius;
  j["region"] = region;
  return j;
}

Complex decode_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2) fail("complex number must be [re, im]");
  const double re = decode_real(j[0], "real part");
  const double im = decode_real(j[1], "imaginary part");
  return {re, im};
}

SpherePoint decode_point(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return SpherePoint::infinity();
    fail("point must be [re, im] or \"inf\"");
  }
  return SpherePoint(decode_complex(j));
}

Tetrad decode_tetrad(const Json& j) {
  if (!j.is_array() || j.size() != 4) fail("tetrad must be an array of four points");
  return Tetrad(decode_point(j[0]), decode_point(j[1]), decode_point(j[2]), decode_point(j[3]));
}

MoebiusMap decode_moebius(const Json& j) {
  const Json& m = member(j, "matrix");
  if (!m.is_array() || m.size() != 4) fail("matrix must hold four complex entries");
  bool conj = false;
  if (j.contains("conjugating")) {
    if (!j["conjugating"].is_boolean()) fail("conjugating must be a boolean");
    conj = j["conjugating"].get<bool>();
  }
  return {decode_complex(m[0]), decode_complex(m[1]), decode_complex(m[2]), decode_complex(m[3]), conj};
}

GeneralizedCircle decode_circle(const Json& j) {
  return {decode_real(member(j, "A"), "A"), decode_complex(member(j, "B")),
          decode_real(member(j, "C"), "C")};
}

SampledMap decode_sampled_map(const Json& j) {
  if (!j.is_object()) fail("sampled map must be an object");
  if (j.contains("pairs")) {
    const Json& pairs = j["pairs"];
    if (!pairs.is_array()) fail("pairs must be an array");
    std::vector<SamplePair> out;
    for (const Json& p : pairs) {
      if (!p.is_array() || p.size() != 2) fail("each pair must be [input, output]");
      out.push_back({decode_point(p[0]), decode_point(p[1])});
    }
    return SampledMap::from_pairs(std::move(out));
  }
  const Json& rat = member(j, "rational");
  RationalMap r;
  r.numerator = decode_coefficients(member(rat, "num"), "num");
  if (rat.contains("den")) r.denominator = decode_coefficients(rat["den"], "den");
  if (rat.contains("conjugate")) {
    if (!rat["conjugate"].is_boolean()) fail("conjugate must be a boolean");
    r.conjugate = rat["conjugate"].get<bool>();
  }
  if (rat.contains("perturb") && !rat["perturb"].is_null()) {
    const Json& p = rat["perturb"];
    const Json& kind = member(p, "kind");
    if (!kind.is_string() || kind.get<std::string>() != "sin_re") fail("unknown perturbation kind");
    r.perturbation = {Perturbation::Kind::sin_re, decode_real(member(p, "amplitude"), "amplitude")};
  }
  Disk region{Complex(0.0, 0.0), 1.0};
  if (j.contains("region")) {
    const Json& reg = j["region"];
    region.center = decode_complex(member(reg, "center"));
    region.radius = decode_real(member(reg, "radius"), "radius");
  }
  return SampledMap::rational(std::move(r), region);
}

}  // namespace moebius_kit::json
