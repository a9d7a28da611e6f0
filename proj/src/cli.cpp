#include "ccslab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "ccslab/errors.hpp"
#include "ccslab/families.hpp"
#include "ccslab/limits.hpp"
#include "ccslab/render.hpp"
#include "ccslab/stability.hpp"
#include "ccslab/tameness.hpp"
#include "ccslab/transitions.hpp"

#ifndef CCSLAB_VERSION
#define CCSLAB_VERSION "0.0.0"
#endif

namespace ccslab::cli {

using nlohmann::json;

std::string version() { return CCSLAB_VERSION; }

namespace {

// Flag values that pass CLI11 but fail our own grammar.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// JSON encodings

json to_json(const ExtComplex& z) {
  if (z.is_infinity()) return "inf";
  const auto v = z.value();
  if (v.imag() == 0.0) return v.real();
  return json::array({v.real(), v.imag()});
}

json to_json(const State& s) {
  if (const auto* x = std::get_if<CantorPoint>(&s)) return x->to_string();
  return to_json(std::get<ExtComplex>(s));
}

json to_json(const LimitReport& r, bool with_trace) {
  json j;
  j["status"] = to_string(r.status);
  j["value"] = r.value ? to_json(*r.value) : json(nullptr);
  j["stabilization_index"] = r.value ? json(r.stabilization_index) : json(nullptr);
  j["period"] = r.period ? json(*r.period) : json(nullptr);
  j["trace_length"] = r.trace_length;
  if (with_trace) {
    json trace = json::array();
    for (const auto& s : r.trace) trace.push_back(to_json(s));
    j["trace"] = trace;
  }
  return j;
}

json to_json(const DkEstimate& e) {
  return {{"k", e.k},
          {"estimate", e.estimate},
          {"std_error", e.std_error},
          {"exact", e.exact ? json(*e.exact) : json(nullptr)},
          {"threshold", e.threshold},
          {"samples", e.samples},
          {"seed", e.seed}};
}

json to_json(const StructureReport& r) {
  return {{"family", to_string(r.family)},
          {"depth", r.depth},
          {"members", r.members},
          {"sample_size", r.sample_size},
          {"along_branch", r.along_branch},
          {"along_branch_failures", r.along_branch_failures},
          {"discreteness", r.discreteness},
          {"min_antichain_distance", r.min_antichain_distance},
          {"gap", r.gap},
          {"cut_identities", r.cut_identities ? json(*r.cut_identities) : json(nullptr)},
          {"passed", r.passed()}};
}

// ---------------------------------------------------------------------------
// Flag grammars

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(flag + ": '" + text + "' is not a number");
  }
}

std::vector<double> doubles(const std::string& text, std::size_t count, const std::string& flag) {
  const auto parts = split(text, ',');
  if (parts.size() != count) {
    throw UsageError(flag + ": expected " + std::to_string(count) + " comma-separated numbers, got '" + text + "'");
  }
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(to_double(p, flag));
  return out;
}

State parse_state(const std::string& text) {
  if (text.find('(') != std::string::npos) return CantorPoint::parse(text);
  return ExtComplex::parse(text);
}

DyadicSubtree parse_subtree(const std::string& text, std::size_t depth) {
  if (text == "identity") return identity_subtree(depth);
  if (text == "alternating") return alternating_subtree(depth);
  if (text.rfind("spaced:", 0) == 0) {
    const double k = to_double(text.substr(7), "--subtree");
    if (k < 1 || k != static_cast<double>(static_cast<std::size_t>(k))) {
      throw UsageError("--subtree: spacing must be a positive integer");
    }
    return spaced_subtree(depth, static_cast<std::size_t>(k));
  }
  throw UsageError("--subtree: expected identity, alternating or spaced:K, got '" + text + "'");
}

// Family × sample matrix for the tameness commands.
struct Evaluated {
  EvalMatrix matrix;
  std::string sample;
};

Evaluated evaluate_named_family(const std::string& family, std::size_t depth, std::string sample,
                                const std::string& subtree_name) {
  const bool feature_family = family == "threshold" || family == "prefix" || family == "delta";
  if (sample.empty()) sample = (family == "threshold" || family == "prefix") ? "spread" : "canonical";
  if (sample != "spread" && sample != "canonical") {
    throw UsageError("--sample: expected spread or canonical, got '" + sample + "'");
  }
  if (feature_family) {
    std::vector<CantorFunction> fs;
    if (family == "threshold") fs = threshold_features(depth);
    if (family == "prefix") fs = prefix_features(depth);
    if (family == "delta") fs = delta_functions(depth);
    const auto points = sample == "spread" ? spread_sample() : cylinder_representatives(depth);
    return {evaluate_functions(fs, points), sample};
  }
  FamilyKind kind;
  try {
    kind = parse_family_kind(family);
  } catch (const std::invalid_argument&) {
    throw UsageError("--family: expected threshold, prefix, delta, D1..D7 or Ht, got '" + family + "'");
  }
  const auto subtree = parse_subtree(subtree_name, depth);
  if (sample == "spread") return {evaluate_functions(family_functions(kind, subtree, depth), spread_sample()), sample};
  return {evaluate_family(generate_family(kind, subtree, depth), canonical_sample(kind, subtree, depth),
                          to_string(kind)),
          sample};
}

json witness_json(const EvalMatrix& m, const IndependenceResult& r) {
  if (!r.witness) return nullptr;
  json points = json::array();
  for (auto p : r.witness->points) points.push_back(m.sample()[p]);
  json realizers = json::array();
  for (auto f : r.witness->realizers) realizers.push_back(m.functions()[f]);
  return {{"points", points}, {"realizers", realizers}};
}

std::vector<CantorFunction> talagrand_family(const std::string& text) {
  if (text == "empty") return {};
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--family: expected cyl:W[,W...], cut:N, prefix:N or empty");
  const std::string kind = text.substr(0, colon);
  if (kind == "cyl") {
    // Explicit cylinder words: cyl:1 is {v_[1]}, cyl:0,11 is {v_[0], v_[11]}.
    std::vector<BinaryWord> words;
    std::string rest = text.substr(colon + 1);
    std::size_t start = 0;
    while (true) {
      const auto comma = rest.find(',', start);
      words.push_back(BinaryWord::parse(rest.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cylinder_functions(words);
  }
  const double n = to_double(text.substr(colon + 1), "--family");
  if (n < 0 || n > 20 || n != static_cast<double>(static_cast<std::size_t>(n))) {
    throw UsageError("--family: depth must be an integer in [0, 20]");
  }
  const auto depth = static_cast<std::size_t>(n);
  if (kind == "cut") return threshold_features(depth);
  if (kind == "prefix") return prefix_features(depth);
  throw UsageError("--family: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------

struct Command {
  std::string name;
  json parameters = json::object();
  std::function<json()> body;
};

void emit(const Command& cmd, const json& result, const std::string& out_path, std::ostream& out) {
  const json report = {{"command", cmd.name}, {"parameters", cmd.parameters}, {"result", result}, {"version", version()}};
  if (out_path.empty()) {
    out << report.dump(2) << "\n";
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw IoError("cannot open " + out_path + " for writing");
  file << report.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ccslab: computation structures, deep limits and tameness diagnostics", "ccslab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  Command cmd;
  std::string out_path;

  // orbit ------------------------------------------------------------------
  auto* orbit = app.add_subcommand("orbit", "Newton orbit of a starting point");
  std::string orbit_poly;
  std::string orbit_start = "0";
  std::size_t orbit_steps = 10;
  double orbit_tol = 1e-12;
  orbit->add_option("--poly", orbit_poly, "Polynomial in z, e.g. \"z^3-2z+2\"")->required();
  orbit->add_option("--start", orbit_start, "Starting point: real, a+bi or inf")->capture_default_str();
  orbit->add_option("--steps", orbit_steps, "Number of Newton steps")->capture_default_str();
  orbit->add_option("--tol", orbit_tol, "Chordal tolerance for cycle detection")->capture_default_str();
  orbit->add_option("--out", out_path, "Write the JSON report to this file");
  orbit->callback([&] {
    cmd.name = "orbit";
    cmd.parameters = {{"poly", orbit_poly}, {"start", orbit_start}, {"steps", orbit_steps}, {"tol", orbit_tol}};
    cmd.body = [&]() -> json {
      const auto p = Polynomial::parse(orbit_poly);
      const auto z0 = ExtComplex::parse(orbit_start);
      const auto points = newton_orbit(p, z0, orbit_steps);
      json arr = json::array();
      for (const auto& z : points) arr.push_back(to_json(z));
      const auto q = detect_cycle(points, orbit_tol);
      return {{"orbit", arr}, {"period", q ? json(*q) : json(nullptr)}};
    };
  });

  // apply ------------------------------------------------------------------
  auto* apply = app.add_subcommand("apply", "Apply a transition to a state");
  std::string apply_transition;
  std::string apply_state;
  apply->add_option("--transition", apply_transition, "e.g. threshold:01, newton:z^2-2, compose(f;g)")->required();
  apply->add_option("--state", apply_state, "Cantor point prefix(period) or complex number")->required();
  apply->add_option("--out", out_path, "Write the JSON report to this file");
  apply->callback([&] {
    cmd.name = "apply";
    cmd.parameters = {{"transition", apply_transition}, {"state", apply_state}};
    cmd.body = [&]() -> json {
      const auto f = parse_transition(apply_transition);
      const auto x = parse_state(apply_state);
      return {{"transition", f.to_string()}, {"output", to_json(f.apply(x))}};
    };
  });

  // limit ------------------------------------------------------------------
  auto* limit = app.add_subcommand("limit", "Pointwise limit of an approximating sequence");
  std::string limit_seq;
  std::string limit_target;
  std::string limit_x;
  std::string limit_poly;
  std::size_t limit_budget = 64;
  double limit_tol = 1e-12;
  bool limit_trace = false;
  limit->add_option("--seq", limit_seq, "threshold-upper | threshold-lower | delta | zero | newton")
      ->required()
      ->check(CLI::IsMember({"threshold-upper", "threshold-lower", "delta", "zero", "newton"}));
  limit->add_option("--target", limit_target, "Target Cantor point a, e.g. 01(1)");
  limit->add_option("--poly", limit_poly, "Polynomial for --seq newton");
  limit->add_option("--x", limit_x, "Evaluation state")->required();
  limit->add_option("--budget", limit_budget, "Number of sequence terms")->capture_default_str();
  limit->add_option("--tol", limit_tol, "Chordal tolerance for sphere states")->capture_default_str();
  limit->add_flag("--trace", limit_trace, "Include the full trace");
  limit->add_option("--out", out_path, "Write the JSON report to this file");
  limit->callback([&] {
    cmd.name = "limit";
    cmd.parameters = {{"seq", limit_seq},       {"target", limit_target}, {"poly", limit_poly}, {"x", limit_x},
                      {"budget", limit_budget}, {"tol", limit_tol},       {"trace", limit_trace}};
    cmd.body = [&]() -> json {
      TransitionSequence seq;
      auto target = [&] {
        if (limit_target.empty()) throw UsageError("--target is required for --seq " + limit_seq);
        return CantorPoint::parse(limit_target);
      };
      if (limit_seq == "threshold-upper") seq = upper_threshold_sequence(target());
      if (limit_seq == "threshold-lower") seq = lower_threshold_sequence(target());
      if (limit_seq == "delta") seq = delta_sequence(target());
      if (limit_seq == "zero") seq = zero_sequence();
      const State x = parse_state(limit_x);
      const double tol = std::holds_alternative<CantorPoint>(x) ? 0.0 : limit_tol;
      if (limit_seq == "newton") {
        if (limit_poly.empty()) throw UsageError("--poly is required for --seq newton");
        return to_json(iterate_limit(Transition::newton(Polynomial::parse(limit_poly)), x, limit_budget, tol),
                       limit_trace);
      }
      return to_json(pointwise_limit(seq, x, limit_budget, tol), limit_trace);
    };
  });

  // vc / nip-scan / sauer --------------------------------------------------
  struct TamenessFlags {
    std::string family;
    std::size_t depth = 4;
    std::string cut = "0.25,0.75";
    std::size_t cap = 8;
    std::string sample;
    std::string subtree = "identity";
    std::uint64_t seed = 0;
  };
  TamenessFlags tf;
  auto add_tameness_flags = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--family", tf.family, "threshold | prefix | delta | D1..D7 | Ht")->required();
    sub->add_option("--depth", tf.depth, "Truncation depth")->capture_default_str();
    sub->add_option("--cut", tf.cut, "Cut a,b with a < b")->capture_default_str();
    sub->add_option("--cap", tf.cap, "Largest shattered-set size searched")->capture_default_str();
    sub->add_option("--sample", tf.sample, "spread | canonical");
    sub->add_option("--subtree", tf.subtree, "identity | spaced:K | alternating")->capture_default_str();
    if (seeded) sub->add_option("--seed", tf.seed, "Seed for random subsamples")->capture_default_str();
    sub->add_option("--out", out_path, "Write the JSON report to this file");
  };
  auto tameness_parameters = [&](bool seeded) {
    json j = {{"family", tf.family}, {"depth", tf.depth}, {"cut", tf.cut},
              {"cap", tf.cap},       {"sample", tf.sample}, {"subtree", tf.subtree}};
    if (seeded) j["seed"] = tf.seed;
    return j;
  };

  auto* vc = app.add_subcommand("vc", "Independence dimension with a shattering witness");
  add_tameness_flags(vc, false);
  vc->callback([&] {
    cmd.name = "vc";
    cmd.parameters = tameness_parameters(false);
    cmd.body = [&]() -> json {
      const auto cut = doubles(tf.cut, 2, "--cut");
      const auto ev = evaluate_named_family(tf.family, tf.depth, tf.sample, tf.subtree);
      const auto r = independence_dimension(ev.matrix, cut[0], cut[1], tf.cap);
      return {{"dim", r.dim},
              {"capped", r.capped},
              {"functions", ev.matrix.num_functions()},
              {"points", ev.matrix.num_points()},
              {"sample", ev.sample},
              {"witness", witness_json(ev.matrix, r)},
              {"certificate_ok", r.witness ? ip_certificate_check(ev.matrix, *r.witness, cut[0], cut[1]) : true}};
    };
  });

  auto* scan = app.add_subcommand("nip-scan", "Independence dimension and separation profile by depth");
  add_tameness_flags(scan, false);
  scan->callback([&] {
    cmd.name = "nip-scan";
    cmd.parameters = tameness_parameters(false);
    cmd.body = [&]() -> json {
      const auto cut = doubles(tf.cut, 2, "--cut");
      json rows = json::array();
      const std::size_t first = tf.family == "threshold" || tf.family == "prefix" || tf.family == "delta" ? 1 : 0;
      for (std::size_t d = first; d <= tf.depth; ++d) {
        const auto ev = evaluate_named_family(tf.family, d, tf.sample, tf.subtree);
        const auto r = independence_dimension(ev.matrix, cut[0], cut[1], tf.cap);
        rows.push_back({{"depth", d},
                        {"dim", r.dim},
                        {"capped", r.capped},
                        {"functions", ev.matrix.num_functions()},
                        {"points", ev.matrix.num_points()},
                        {"separation_profile", separation_profile(ev.matrix, cut[1] - cut[0])}});
      }
      return {{"scan", rows}, {"separation_gap", cut[1] - cut[0]}};
    };
  });

  auto* sauer = app.add_subcommand("sauer", "Trace counts against the Sauer-Shelah bound");
  add_tameness_flags(sauer, true);
  std::size_t sauer_max = 12;
  std::size_t sauer_per_size = 200;
  sauer->add_option("--max-subsample", sauer_max, "Largest subsample size checked")->capture_default_str();
  sauer->add_option("--per-size", sauer_per_size, "Random subsamples per size")->capture_default_str();
  sauer->callback([&] {
    cmd.name = "sauer";
    cmd.parameters = tameness_parameters(true);
    cmd.parameters["max_subsample"] = sauer_max;
    cmd.parameters["per_size"] = sauer_per_size;
    cmd.body = [&]() -> json {
      const auto cut = doubles(tf.cut, 2, "--cut");
      const auto ev = evaluate_named_family(tf.family, tf.depth, tf.sample, tf.subtree);
      const auto r = sauer_bound_check(ev.matrix, cut[0], cut[1], tf.cap, {sauer_max, sauer_per_size, tf.seed});
      return {{"dim", r.dim},
              {"dim_capped", r.dim_capped},
              {"bound_ok", r.bound_ok},
              {"worst_ratio", r.worst_ratio},
              {"worst_size", r.worst_size},
              {"worst_traces", r.worst_traces},
              {"worst_bound", r.worst_bound},
              {"exhaustive", r.exhaustive},
              {"subsamples_checked", r.subsamples_checked},
              {"points", ev.matrix.num_points()},
              {"sample", ev.sample}};
    };
  });

  // families ---------------------------------------------------------------
  auto* families = app.add_subcommand("families", "Minimal families at finite depth");
  std::string fam_name;
  std::size_t fam_depth = 4;
  bool fam_check = false;
  std::string fam_subtree = "identity";
  double fam_tol = 1e-9;
  families->add_option("--family", fam_name, "D1..D7 | Ht")->required();
  families->add_option("--depth", fam_depth, "Truncation depth")->capture_default_str();
  families->add_flag("--check", fam_check, "Run the structure checks");
  families->add_option("--subtree", fam_subtree, "identity | spaced:K | alternating")->capture_default_str();
  families->add_option("--tol", fam_tol, "Tolerance for the checks")->capture_default_str();
  families->add_option("--out", out_path, "Write the JSON report to this file");
  families->callback([&] {
    cmd.name = "families";
    cmd.parameters = {
        {"family", fam_name}, {"depth", fam_depth}, {"check", fam_check}, {"subtree", fam_subtree}, {"tol", fam_tol}};
    cmd.body = [&]() -> json {
      FamilyKind kind;
      try {
        kind = parse_family_kind(fam_name);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--family: ") + e.what());
      }
      const auto subtree = parse_subtree(fam_subtree, fam_depth);
      if (fam_check) return to_json(limit_structure_check(kind, subtree, fam_depth, fam_tol));
      json members = json::array();
      for (const auto& m : generate_family(kind, subtree, fam_depth)) {
        members.push_back({{"label", m.label.to_string()}, {"node", m.node.to_string()}});
      }
      return {{"family", to_string(kind)}, {"members", members}, {"distinct_tails", subtree.has_distinct_tails()}};
    };
  });

  // talagrand --------------------------------------------------------------
  auto* tal = app.add_subcommand("talagrand", "Talagrand D_k measures and stability verdicts");
  std::string tal_family;
  std::string tal_e = "full";
  std::string tal_cut = "0.25,0.75";
  std::size_t tal_k = 1;
  std::size_t tal_samples = 100000;
  std::uint64_t tal_seed = 0;
  bool tal_exact = false;
  std::size_t tal_kmax = 0;
  tal->add_option("--family", tal_family, "cyl:W[,W...] | cut:N | prefix:N | empty")->required();
  tal->add_option("--E", tal_e, "full | empty | comma-separated cylinder words")->capture_default_str();
  tal->add_option("--cut", tal_cut, "Cut a,b with a < b")->capture_default_str();
  tal->add_option("--k", tal_k, "Pattern length k")->capture_default_str();
  tal->add_option("--samples", tal_samples, "Monte Carlo tuples")->capture_default_str();
  tal->add_option("--seed", tal_seed, "Random seed")->capture_default_str();
  tal->add_flag("--exact", tal_exact, "Report only the exact value (no sampling)");
  tal->add_option("--k-max", tal_kmax, "Also compute a stability verdict up to this k");
  tal->add_option("--out", out_path, "Write the JSON report to this file");
  tal->callback([&] {
    cmd.name = "talagrand";
    cmd.parameters = {{"family", tal_family}, {"E", tal_e},       {"cut", tal_cut},     {"k", tal_k},
                      {"samples", tal_samples}, {"seed", tal_seed}, {"exact", tal_exact}, {"k_max", tal_kmax}};
    cmd.body = [&]() -> json {
      const auto cut = doubles(tal_cut, 2, "--cut");
      const auto family = talagrand_family(tal_family);
      const auto e = CylinderSet::parse(tal_e);
      json result;
      if (tal_exact) {
        const auto mu = cyl_measure(e);
        if (mu.numerator == 0) throw EmptySetError("the conditioning set E has measure zero");
        const auto ex = exact_dk(family, e, cut[0], cut[1], tal_k);
        result = {{"k", tal_k},
                  {"exact", ex ? json(*ex) : json(nullptr)},
                  {"threshold", std::pow(mu.value(), static_cast<double>(2 * tal_k))},
                  {"measure_E", mu.to_string()}};
      } else {
        result = to_json(estimate_dk(family, e, cut[0], cut[1], tal_k, tal_samples, tal_seed));
        result["measure_E"] = cyl_measure(e).to_string();
      }
      if (tal_kmax > 0) {
        const auto v = stability_verdict(family, e, cut[0], cut[1], tal_kmax, tal_samples, tal_seed);
        result["verdict"] = v.to_string();
      }
      return result;
    };
  });

  // render -----------------------------------------------------------------
  auto* render = app.add_subcommand("render", "Newton basin image");
  std::string r_poly;
  std::string r_window = "-2,2,-2,2";
  std::string r_size = "300x300";
  std::size_t r_iters = 100;
  std::string r_out;
  double r_tol = 1e-6;
  render->add_option("--poly", r_poly, "Polynomial in z")->required();
  render->add_option("--window", r_window, "re_min,re_max,im_min,im_max")->capture_default_str();
  render->add_option("--size", r_size, "WIDTHxHEIGHT")->capture_default_str();
  render->add_option("--iters", r_iters, "Newton steps per pixel")->capture_default_str();
  render->add_option("--out", r_out, "Output image (.ppm or .png)")->required();
  render->add_option("--root-tol", r_tol, "Chordal root tolerance")->capture_default_str();
  render->callback([&] {
    cmd.name = "render";
    cmd.parameters = {{"poly", r_poly},   {"window", r_window}, {"size", r_size},
                      {"iters", r_iters}, {"out", r_out},       {"root_tol", r_tol}};
    cmd.body = [&]() -> json {
      const auto w = doubles(r_window, 4, "--window");
      const auto dims = split(r_size, 'x');
      if (dims.size() != 2) throw UsageError("--size: expected WIDTHxHEIGHT, got '" + r_size + "'");
      const double width = to_double(dims[0], "--size");
      const double height = to_double(dims[1], "--size");
      if (width < 1 || height < 1 || width != static_cast<std::size_t>(width) ||
          height != static_cast<std::size_t>(height)) {
        throw UsageError("--size: dimensions must be positive integers");
      }
      const auto p = Polynomial::parse(r_poly);
      RenderConfig cfg;
      cfg.re_min = w[0];
      cfg.re_max = w[1];
      cfg.im_min = w[2];
      cfg.im_max = w[3];
      cfg.width = static_cast<std::size_t>(width);
      cfg.height = static_cast<std::size_t>(height);
      cfg.iterations = r_iters;
      cfg.root_tol = r_tol;
      cfg.roots = default_root_colors(p);
      try {
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto img = render_basins(p, cfg);
      const bool png = r_out.size() >= 4 && r_out.substr(r_out.size() - 4) == ".png";
      if (png) {
        write_png(img, r_out);
      } else {
        write_ppm(img, r_out);
      }
      const Pixel teal = to_pixel(cfg.diverge_color);
      const auto diverged = std::count(img.pixels.begin(), img.pixels.end(), teal);
      json roots = json::array();
      for (const auto& r : cfg.roots) {
        const Pixel px = to_pixel(r.color);
        roots.push_back({{"root", to_json(r.root)}, {"rgb", {px.r, px.g, px.b}}});
      }
      return {{"out", r_out},
              {"format", png ? "png" : "ppm"},
              {"width", img.width},
              {"height", img.height},
              {"roots", roots},
              {"diverge_fraction", static_cast<double>(diverged) / static_cast<double>(img.pixels.size())}};
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const json result = cmd.body();
    // render's --out names the image; its report always goes to stdout.
    emit(cmd, result, cmd.name == "render" ? "" : out_path, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error:\n" << e.caret_message() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace ccslab::cli
