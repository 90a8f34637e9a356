#include "moebius_kit/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "moebius_kit/json_io.hpp"

namespace moebius_kit::cli {

namespace {

using json::Json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string in_path;
  std::string inline_json;
  std::string out_path;
  std::string alpha = "2,0";
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_tetrads;
};

SpherePoint parse_alpha(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const std::string re_text = text.substr(0, comma);
    const double re = std::stod(re_text, &used);
    if (used != re_text.size()) throw std::invalid_argument(text);
    double im = 0.0;
    if (comma != std::string::npos) {
      const std::string im_text = text.substr(comma + 1);
      im = std::stod(im_text, &used);
      if (used != im_text.size()) throw std::invalid_argument(text);
    }
    return SpherePoint(Complex(re, im));
  } catch (const std::logic_error&) {
    throw UsageError("--alpha expects re,im but got \"" + text + "\"");
  }
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("MOEBIUS_KIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw UsageError("MOEBIUS_KIT_SEED must be an unsigned integer");
    }
  }
  return kDefaultSeed;
}

Json read_input(const Options& o) {
  std::string text;
  if (!o.in_path.empty()) {
    std::ifstream file(o.in_path);
    if (!file) throw IoError("cannot open input file " + o.in_path);
    std::stringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  } else if (!o.inline_json.empty()) {
    text = o.inline_json;
  } else {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  }
  return json::parse(text);
}

Json point_list(const std::vector<SpherePoint>& pts) {
  Json a = Json::array();
  for (const SpherePoint& p : pts) a.push_back(json::encode(p));
  return a;
}

std::array<SpherePoint, 3> decode_triple(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw json::ParseError("expected an array of three points");
  return {json::decode_point(j[0]), json::decode_point(j[1]), json::decode_point(j[2])};
}

Json error_object(std::string_view kind, const std::string& message) {
  Json e;
  e["kind"] = std::string(kind);
  e["message"] = message;
  Json j;
  j["error"] = e;
  return j;
}

Json cmd_crossratio(const Options& o) {
  const Tetrad t = json::decode_tetrad(read_input(o));
  Json j;
  j["value"] = json::encode(cross_ratio(t));
  return j;
}

Json cmd_orbit(const Options& o) {
  const SpherePoint alpha = parse_alpha(o.alpha);
  Json j;
  j["alpha"] = json::encode(alpha);
  j["orbit"] = point_list(orbit(alpha));
  return j;
}

Json cmd_solve4(const Options& o) {
  const auto z = decode_triple(read_input(o));
  const SpherePoint alpha = parse_alpha(o.alpha);
  Json j;
  j["alpha"] = json::encode(alpha);
  j["point"] = json::encode(solve_fourth_point(z[0], z[1], z[2], alpha));
  return j;
}

Json cmd_apollonian(const Options& o) {
  const Tetrad t = json::decode_tetrad(read_input(o));
  const double tol = o.tol.value_or(1e-9);
  Json j;
  j["apollonian"] = is_apollonian(t, tol);
  j["cross_ratio"] = json::encode(cross_ratio(t));
  j["by_cross_ratio"] = apollonian_by_cross_ratio(t, tol);
  j["by_products"] = t.contains_infinity() ? Json(nullptr) : Json(apollonian_by_products(t, tol));
  return j;
}

Json cmd_fit(const Options& o) {
  const Json in = read_input(o);
  Json from, to;
  if (in.is_object()) {
    if (!in.contains("from") || !in.contains("to")) throw json::ParseError("fit expects \"from\" and \"to\"");
    from = in["from"];
    to = in["to"];
  } else if (in.is_array() && in.size() == 2) {
    from = in[0];
    to = in[1];
  } else {
    throw json::ParseError("fit expects {\"from\": [p1,p2,p3], \"to\": [q1,q2,q3]}");
  }
  return json::encode(from_three_points(decode_triple(from), decode_triple(to)));
}

Json cmd_apply(const Options& o) {
  const Json in = read_input(o);
  if (!in.is_object() || !in.contains("map") || !in.contains("points") || !in["points"].is_array()) {
    throw json::ParseError("apply expects {\"map\": {...}, \"points\": [...]}");
  }
  const MoebiusMap m = json::decode_moebius(in["map"]);
  std::vector<SpherePoint> out;
  for (const Json& p : in["points"]) out.push_back(m(json::decode_point(p)));
  Json j;
  j["points"] = point_list(out);
  return j;
}

PhiTestConfig make_config(const Options& o, const SampledMap& f, std::size_t default_tetrads,
                          std::optional<double> default_tol = std::nullopt) {
  PhiTestConfig cfg;
  cfg.alpha = parse_alpha(o.alpha);
  cfg.n_tetrads = o.n_tetrads.value_or(default_tetrads);
  cfg.tol = o.tol.value_or(default_tol.value_or(default_tolerance(f)));
  cfg.seed = resolve_seed(o);
  return cfg;
}

Json cmd_classify(const Options& o) {
  const SampledMap f = json::decode_sampled_map(read_input(o));
  return json::encode(classify(f, make_config(o, f, 500)));
}

Json cmd_fuzz(const Options& o, std::ostream& err, bool& all_violating) {
  Json cases = Json::array();
  std::size_t violating = 0;
  const auto zoo = non_moebius_zoo();
  err << std::left << std::setw(28) << "map" << std::setw(16) << "verdict" << "gap\n";
  PhiTestConfig cfg;
  for (const ZooEntry& entry : zoo) {
    cfg = make_config(o, entry.map, 2000, 1e-6);
    const ClassificationReport r = classify(entry.map, cfg);
    const bool ok = r.verdict == Verdict::phi_violating;
    if (ok) ++violating;
    Json c;
    c["name"] = entry.name;
    c["verdict"] = std::string(to_string(r.verdict));
    c["gap"] = r.witness ? Json(r.witness->gap) : Json(nullptr);
    c["witness_index"] = r.witness ? Json(r.witness->index) : Json(nullptr);
    cases.push_back(c);
    err << std::setw(28) << entry.name << std::setw(16) << to_string(r.verdict);
    if (r.witness) {
      err << std::setprecision(6) << r.witness->gap;
    } else {
      err << "-";
    }
    err << "\n";
  }
  all_violating = violating == zoo.size();
  Json j;
  j["seed"] = cfg.seed;
  j["alpha"] = json::encode(cfg.alpha);
  j["n_tetrads"] = cfg.n_tetrads;
  j["tol"] = cfg.tol;
  j["cases"] = cases;
  j["phi_violating"] = violating;
  j["total"] = zoo.size();
  j["all_phi_violating"] = all_violating;
  return j;
}

void emit(const Options& o, const Json& j, std::ostream& out) {
  const std::string text = json::dump(j);
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path);
  if (!file) throw IoError("cannot open output file " + o.out_path);
  file << text;
  if (!file) throw IoError("failed writing " + o.out_path);
}

}  // namespace

std::vector<ZooEntry> non_moebius_zoo() {
  const Disk unit{Complex(0.0, 0.0), 1.0};
  auto rational = [](std::vector<Complex> num, std::vector<Complex> den, bool conj = false,
                     Perturbation p = {}) {
    RationalMap r;
    r.numerator = std::move(num);
    r.denominator = std::move(den);
    r.conjugate = conj;
    r.perturbation = p;
    return r;
  };
  const Perturbation sin_tenth{Perturbation::Kind::sin_re, 0.1};
  std::vector<ZooEntry> zoo;
  zoo.push_back({"z^2", SampledMap::rational(rational({0.0, 0.0, 1.0}, {1.0}), {Complex(3.0, 0.0), 1.0})});
  zoo.push_back({"z^2 (symmetric disk)", SampledMap::rational(rational({0.0, 0.0, 1.0}, {1.0}), unit)});
  zoo.push_back({"z + 0.1 z^2", SampledMap::rational(rational({0.0, 1.0, 0.1}, {1.0}), unit)});
  zoo.push_back({"z + 0.01 z^2", SampledMap::rational(rational({0.0, 1.0, 0.01}, {1.0}), unit)});
  zoo.push_back({"z + 0.001 z^2", SampledMap::rational(rational({0.0, 1.0, 0.001}, {1.0}), unit)});
  zoo.push_back({"z + 0.1 sin(Re z)", SampledMap::rational(rational({0.0, 1.0}, {1.0}, false, sin_tenth), unit)});
  zoo.push_back({"z^3", SampledMap::rational(rational({0.0, 0.0, 0.0, 1.0}, {1.0}), {Complex(1.0, 0.0), 0.5})});
  zoo.push_back({"conj(z)^2", SampledMap::rational(rational({0.0, 0.0, 1.0}, {1.0}, true), {Complex(0.0, 2.0), 1.0})});
  zoo.push_back({"(z^2 + 1) / (z - 3)", SampledMap::rational(rational({1.0, 0.0, 1.0}, {-3.0, 1.0}), unit)});
  zoo.push_back({"1/z + 0.01 z", SampledMap::rational(rational({1.0, 0.0, 0.01}, {0.0, 1.0}), {Complex(2.0, 0.0), 1.0})});
  zoo.push_back({"0.5 conj(z) + 0.1 sin(Re z)", SampledMap::rational(rational({0.0, 0.5}, {1.0}, true, sin_tenth), unit)});
  return zoo;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riemann-sphere cross-ratio and Möbius toolkit", "moebius_kit"};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&o](CLI::App* sub) {
    sub->add_option("json", o.inline_json, "Inline JSON input");
    sub->add_option("--in", o.in_path, "Read JSON input from file");
    sub->add_option("--out", o.out_path, "Write JSON output to file");
  };
  auto add_alpha = [&o](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha, "Anharmonic ratio as re,im")->capture_default_str();
  };
  auto add_tol = [&o](CLI::App* sub) {
    sub->add_option_function<double>("--tol", [&o](double v) { o.tol = v; }, "Tolerance");
  };
  auto add_sampling = [&o](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>("--seed", [&o](std::uint64_t v) { o.seed = v; },
                                            "Random seed (fallback: MOEBIUS_KIT_SEED)");
    sub->add_option_function<std::size_t>("--n-tetrads", [&o](std::size_t v) { o.n_tetrads = v; },
                                          "Number of sampled tetrads");
  };

  auto* crossratio = app.add_subcommand("crossratio", "Anharmonic ratio of a tetrad");
  add_io(crossratio);
  auto* orbit_cmd = app.add_subcommand("orbit", "Ratios reachable by permuting a tetrad");
  add_alpha(orbit_cmd);
  orbit_cmd->add_option("--out", o.out_path, "Write JSON output to file");
  auto* solve4 = app.add_subcommand("solve4", "Fourth point completing a ratio");
  add_io(solve4);
  add_alpha(solve4);
  auto* apollonian = app.add_subcommand("apollonian", "Apollonian tetrad test");
  add_io(apollonian);
  add_tol(apollonian);
  auto* fit = app.add_subcommand("fit", "Möbius map through two point triples");
  add_io(fit);
  auto* apply_cmd = app.add_subcommand("apply", "Apply a Möbius map to points");
  add_io(apply_cmd);
  auto* classify_cmd = app.add_subcommand("classify", "Classify a sampled map");
  add_io(classify_cmd);
  add_alpha(classify_cmd);
  add_tol(classify_cmd);
  add_sampling(classify_cmd);
  auto* fuzz = app.add_subcommand("fuzz", "Classify the built-in non-Möbius zoo");
  add_alpha(fuzz);
  add_tol(fuzz);
  add_sampling(fuzz);
  fuzz->add_option("--out", o.out_path, "Write JSON output to file");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    out << json::dump(error_object("UsageError", e.what()));
    return kExitUsage;
  }

  try {
    Json result;
    int code = kExitOk;
    if (crossratio->parsed()) {
      result = cmd_crossratio(o);
    } else if (orbit_cmd->parsed()) {
      result = cmd_orbit(o);
    } else if (solve4->parsed()) {
      result = cmd_solve4(o);
    } else if (apollonian->parsed()) {
      result = cmd_apollonian(o);
    } else if (fit->parsed()) {
      result = cmd_fit(o);
    } else if (apply_cmd->parsed()) {
      result = cmd_apply(o);
    } else if (classify_cmd->parsed()) {
      result = cmd_classify(o);
    } else if (fuzz->parsed()) {
      bool all = false;
      result = cmd_fuzz(o, err, all);
      if (!all) code = kExitDomain;
    }
    emit(o, result, out);
    return code;
  } catch (const Error& e) {
    out << json::dump(error_object(to_string(e.kind()), e.what()));
    return kExitDomain;
  } catch (const json::ParseError& e) {
    out << json::dump(error_object("ParseError", e.what()));
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    out << json::dump(error_object("ParseError", e.what()));
    return kExitUsage;
  } catch (const IoError& e) {
    out << json::dump(error_object("IoError", e.what()));
    return kExitUsage;
  } catch (const UsageError& e) {
    out << json::dump(error_object("UsageError", e.what()));
    return kExitUsage;
  }
}

}  // namespace moebius_kit::cli
