#include "ccslab/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

#include "ccslab/errors.hpp"

namespace ccslab {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::D1: return "D1";
    case FamilyKind::D2: return "D2";
    case FamilyKind::D3: return "D3";
    case FamilyKind::D4: return "D4";
    case FamilyKind::D5: return "D5";
    case FamilyKind::D6: return "D6";
    case FamilyKind::D7: return "D7";
    case FamilyKind::Ht: return "Ht";
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  static const std::pair<const char*, FamilyKind> kTable[] = {
      {"d1", FamilyKind::D1}, {"d2", FamilyKind::D2}, {"d3", FamilyKind::D3}, {"d4", FamilyKind::D4},
      {"d5", FamilyKind::D5}, {"d6", FamilyKind::D6}, {"d7", FamilyKind::D7}, {"ht", FamilyKind::Ht}};
  for (const auto& [key, kind] : kTable) {
    if (lower == key) return kind;
  }
  throw std::invalid_argument("unknown family '" + std::string(name) + "' (expected D1..D7 or Ht)");
}

// ---------------------------------------------------------------------------
// Dyadic subtrees

DyadicSubtree::DyadicSubtree(std::size_t depth, std::map<BinaryWord, BinaryWord> nodes)
    : depth_(depth), nodes_(std::move(nodes)) {
  if (depth_ > 24) throw std::invalid_argument("subtree depth too large");
  for (const auto& t : words_up_to(depth_)) {
    if (!nodes_.count(t)) throw std::invalid_argument("subtree is missing node " + t.to_string());
  }
  if (nodes_.size() != (std::size_t{2} << depth_) - 1) {
    throw std::invalid_argument("subtree has nodes beyond its depth");
  }
  if (!is_order_preserving()) throw std::invalid_argument("subtree does not branch below its nodes");
  if (!is_regular()) throw std::invalid_argument("subtree levels are not aligned");
}

const BinaryWord& DyadicSubtree::node(const BinaryWord& t) const {
  if (t.size() > depth_) {
    throw DepthError("index word of length " + std::to_string(t.size()) + " exceeds subtree depth " +
                     std::to_string(depth_));
  }
  return nodes_.at(t);
}

std::size_t DyadicSubtree::level_length(std::size_t level) const {
  return node(BinaryWord::repeat(0, level)).size();
}

bool DyadicSubtree::is_order_preserving() const {
  for (const auto& [t, s] : nodes_) {
    if (t.size() == depth_) continue;
    for (int i = 0; i < 2; ++i) {
      if (!s.append(i).is_prefix_of(nodes_.at(t.append(i)))) return false;
    }
  }
  return true;
}

bool DyadicSubtree::is_meet_preserving() const {
  for (auto it = nodes_.begin(); it != nodes_.end(); ++it) {
    for (auto jt = std::next(it); jt != nodes_.end(); ++jt) {
      if (nodes_.at(meet(it->first, jt->first)) != meet(it->second, jt->second)) return false;
    }
  }
  return true;
}

bool DyadicSubtree::is_regular() const {
  std::vector<std::size_t> lengths(depth_ + 1, kUndecided);
  for (const auto& [t, s] : nodes_) {
    auto& len = lengths[t.size()];
    if (len == kUndecided) {
      len = s.size();
    } else if (len != s.size()) {
      return false;
    }
  }
  return true;
}

bool DyadicSubtree::has_distinct_tails() const {
  std::set<std::string> zeros;
  std::set<std::string> ones;
  for (const auto& [t, s] : nodes_) {
    if (!zeros.insert(CantorPoint::with_tail(s, 0).to_string()).second) return false;
    if (!ones.insert(CantorPoint::with_tail(s, 1).to_string()).second) return false;
  }
  return true;
}

namespace {

DyadicSubtree subtree_from(std::size_t depth, const std::function<BinaryWord(const BinaryWord&)>& rule) {
  std::map<BinaryWord, BinaryWord> nodes;
  for (const auto& t : words_up_to(depth)) nodes.emplace(t, rule(t));
  return DyadicSubtree(depth, std::move(nodes));
}

}  // namespace

DyadicSubtree identity_subtree(std::size_t depth) {
  return subtree_from(depth, [](const BinaryWord& t) { return t; });
}

DyadicSubtree spaced_subtree(std::size_t depth, std::size_t spacing) {
  if (spacing < 1) throw std::invalid_argument("subtree spacing must be at least 1");
  return subtree_from(depth, [spacing](const BinaryWord& t) {
    BinaryWord s;
    for (std::size_t i = 0; i < t.size(); ++i) {
      s.push_back(t[i]);
      for (std::size_t j = 1; j < spacing; ++j) s.push_back(0);
    }
    return s;
  });
}

DyadicSubtree alternating_subtree(std::size_t depth) {
  return subtree_from(depth, [](const BinaryWord& t) {
    BinaryWord s;
    for (std::size_t i = 0; i < t.size(); ++i) {
      s.push_back(t[i]);
      s.push_back(1 - t[i]);
    }
    return s;
  });
}

DyadicSubtree compose_subtrees(const DyadicSubtree& outer, const DyadicSubtree& inner) {
  if (inner.level_length(inner.depth()) > outer.depth()) {
    throw DepthError("outer subtree of depth " + std::to_string(outer.depth()) + " cannot host nodes of length " +
                     std::to_string(inner.level_length(inner.depth())));
  }
  return subtree_from(inner.depth(), [&](const BinaryWord& t) { return outer.node(inner.node(t)); });
}

// ---------------------------------------------------------------------------
// Members

std::string SampleState::to_string() const {
  std::string body;
  if (const auto* x = std::get_if<CantorPoint>(&at)) {
    body = x->to_string();
  } else {
    body = "#" + std::to_string(std::get<std::size_t>(at));
  }
  return component == 0 ? body : std::to_string(component) + ":" + body;
}

double prefix_indicator(const BinaryWord& s, const CantorPoint& x) { return x.extends(s) ? 1.0 : 0.0; }

double cut_plus(const CantorPoint& a, const CantorPoint& x) { return x <= a ? 1.0 : 0.0; }

double cut_minus(const CantorPoint& a, const CantorPoint& x) { return x < a ? 1.0 : 0.0; }

double split_step(const BinaryWord& s, const CantorPoint& x) {
  if (x < CantorPoint::with_tail(s, 0)) return 0.0;
  if (x > CantorPoint::with_tail(s, 1)) return 1.0;
  return 0.5;
}

namespace {

const CantorPoint& point_of(const SampleState& x, int component) {
  const auto* p = std::get_if<CantorPoint>(&x.at);
  if (x.component != component || p == nullptr) {
    throw std::invalid_argument("sample state " + x.to_string() + " is outside the family's domain");
  }
  return *p;
}

std::size_t index_of(const SampleState& x, int component) {
  const auto* n = std::get_if<std::size_t>(&x.at);
  if (x.component != component || n == nullptr) {
    throw std::invalid_argument("sample state " + x.to_string() + " is outside the family's domain");
  }
  return *n;
}

std::function<double(const SampleState&)> evaluator(FamilyKind kind, const BinaryWord& t, const BinaryWord& s) {
  const CantorPoint low = CantorPoint::with_tail(s, 0);
  const CantorPoint high = CantorPoint::with_tail(s, 1);
  switch (kind) {
    case FamilyKind::D1: {
      const double w = 1.0 / static_cast<double>(t.size() + 1);
      return [s, w](const SampleState& x) { return w * prefix_indicator(s, point_of(x, 0)); };
    }
    case FamilyKind::D2:
      return [low](const SampleState& x) { return static_cast<double>(low.bit_at(index_of(x, 0))); };
    case FamilyKind::D3:
      return [low](const SampleState& x) { return cut_plus(low, point_of(x, 0)); };
    case FamilyKind::D4:
      return [high](const SampleState& x) { return cut_minus(high, point_of(x, 0)); };
    case FamilyKind::D5:
      return [s](const SampleState& x) { return prefix_indicator(s, point_of(x, 0)); };
    case FamilyKind::D6:
      return [s, low](const SampleState& x) {
        if (x.component == 0) return prefix_indicator(s, point_of(x, 0));
        return static_cast<double>(low.bit_at(index_of(x, 1)));
      };
    case FamilyKind::D7:
      return [s, low](const SampleState& x) {
        if (x.component == 0) return prefix_indicator(s, point_of(x, 0));
        return cut_plus(low, point_of(x, 1));
      };
    case FamilyKind::Ht:
      return [s](const SampleState& x) { return split_step(s, point_of(x, 0)); };
  }
  throw std::logic_error("unhandled family kind");
}

}  // namespace

std::vector<FamilyMember> generate_family(FamilyKind kind, const DyadicSubtree& subtree, std::size_t depth) {
  if (depth > subtree.depth()) {
    throw DepthError("family depth " + std::to_string(depth) + " exceeds subtree depth " +
                     std::to_string(subtree.depth()));
  }
  std::vector<FamilyMember> members;
  for (const auto& t : words_up_to(depth)) {
    const BinaryWord& s = subtree.node(t);
    members.push_back(FamilyMember{t, s, evaluator(kind, t, s)});
  }
  return members;
}

std::vector<CantorPoint> cylinder_representatives(std::size_t word_length) {
  std::vector<CantorPoint> points;
  for (const auto& w : words_of_length(word_length)) points.push_back(CantorPoint::with_tail(w, 0));
  points.push_back(CantorPoint::ones());
  return points;
}

std::vector<SampleState> canonical_sample(FamilyKind kind, const DyadicSubtree& subtree, std::size_t depth) {
  const std::size_t length = subtree.level_length(depth) + 2;
  const auto points = cylinder_representatives(length);
  std::vector<SampleState> sample;
  auto add_points = [&](int component) {
    for (const auto& p : points) sample.push_back(SampleState::point(p, component));
  };
  auto add_indices = [&](int component) {
    for (std::size_t j = 0; j < length; ++j) sample.push_back(SampleState::coordinate(j, component));
  };
  switch (kind) {
    case FamilyKind::D2:
      add_indices(0);
      break;
    case FamilyKind::D6:
      add_points(0);
      add_indices(1);
      break;
    case FamilyKind::D7:
      add_points(0);
      add_points(1);
      break;
    default:
      add_points(0);
      break;
  }
  return sample;
}

EvalMatrix evaluate_family(const std::vector<FamilyMember>& members, const std::vector<SampleState>& sample,
                           const std::string& family_name) {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<double> values;
  values.reserve(members.size() * sample.size());
  for (const auto& x : sample) cols.push_back(x.to_string());
  for (const auto& m : members) {
    rows.push_back(family_name.empty() ? m.label.to_string() : family_name + "[" + m.label.to_string() + "]");
    for (const auto& x : sample) values.push_back(m.evaluate(x));
  }
  return EvalMatrix(std::move(rows), std::move(cols), std::move(values));
}

// ---------------------------------------------------------------------------
// Structure checks

namespace {

bool comparable(const BinaryWord& a, const BinaryWord& b) { return a.is_prefix_of(b) || b.is_prefix_of(a); }

// Index past which the branch point no longer decides the state, or nullopt
// when the state is the branch point itself.
std::optional<std::size_t> separation(const SampleState& x, const CantorPoint& branch_point) {
  if (const auto* p = std::get_if<CantorPoint>(&x.at)) return p->first_difference(branch_point);
  return std::get<std::size_t>(x.at);
}

// Whether the state sits in a component whose values are prefix indicators.
bool indicator_component(FamilyKind kind, const SampleState& x) {
  switch (kind) {
    case FamilyKind::D1:
    case FamilyKind::D5:
      return true;
    case FamilyKind::D6:
    case FamilyKind::D7:
      return x.component == 0;
    default:
      return false;
  }
}

double gap_for(FamilyKind kind, std::size_t depth) {
  if (kind == FamilyKind::D1) return 1.0 / static_cast<double>(depth + 1);
  if (kind == FamilyKind::Ht) return 0.5;
  return 1.0;
}

}  // namespace

StructureReport limit_structure_check(FamilyKind kind, const DyadicSubtree& subtree, std::size_t depth, double tol) {
  if (depth < 2) throw DepthError("structure checks need depth >= 2");
  const auto members = generate_family(kind, subtree, depth);
  const auto sample = canonical_sample(kind, subtree, depth);
  const auto matrix = evaluate_family(members, sample);

  std::map<BinaryWord, std::size_t> row_of;
  for (std::size_t i = 0; i < members.size(); ++i) row_of.emplace(members[i].label, i);

  StructureReport report;
  report.family = kind;
  report.depth = depth;
  report.members = members.size();
  report.sample_size = sample.size();
  report.gap = gap_for(kind, depth);

  // (a) Along-branch stabilization.
  const int tail = kind == FamilyKind::D4 ? 1 : 0;
  for (const auto& branch : words_of_length(depth)) {
    const CantorPoint branch_point = CantorPoint::with_tail(subtree.node(branch), tail);
    const std::size_t last = row_of.at(branch);
    for (std::size_t j = 0; j < sample.size(); ++j) {
      const auto m = separation(sample[j], branch_point);
      if (!m) {
        // The branch point itself: prefix indicators along the branch are 1.
        if (indicator_component(kind, sample[j]) && kind != FamilyKind::D1) {
          for (std::size_t n = 0; n <= depth; ++n) {
            if (std::abs(matrix(row_of.at(branch.take(n)), j) - 1.0) > tol) ++report.along_branch_failures;
          }
        }
        continue;
      }
      const double frozen = matrix(last, j);
      bool witnessed = false;
      for (std::size_t n = 0; n <= depth; ++n) {
        const BinaryWord t = branch.take(n);
        if (subtree.node(t).size() <= *m) continue;
        witnessed = true;
        if (std::abs(matrix(row_of.at(t), j) - frozen) > tol) ++report.along_branch_failures;
      }
      if (witnessed && indicator_component(kind, sample[j]) && std::abs(frozen) > tol) {
        ++report.along_branch_failures;
      }
    }
  }
  report.along_branch = report.along_branch_failures == 0;

  // (b) Anti-chain discreteness.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t k = i + 1; k < members.size(); ++k) {
      if (comparable(members[i].label, members[k].label)) continue;
      double sup = 0.0;
      const auto ri = matrix.row(i);
      const auto rk = matrix.row(k);
      for (std::size_t j = 0; j < sample.size(); ++j) sup = std::max(sup, std::abs(ri[j] - rk[j]));
      report.min_antichain_distance = std::min(report.min_antichain_distance, sup);
    }
  }
  report.discreteness = report.min_antichain_distance >= report.gap - tol;

  // (c) One-sided cut identities.
  if (kind == FamilyKind::D3 || kind == FamilyKind::D4 || kind == FamilyKind::D7 || kind == FamilyKind::Ht) {
    bool ok = true;
    for (const auto& m : members) {
      const CantorPoint low = CantorPoint::with_tail(m.node, 0);
      const CantorPoint high = CantorPoint::with_tail(m.node, 1);
      switch (kind) {
        case FamilyKind::D3:
          ok = ok && m.evaluate(SampleState::point(low)) == 1.0 && cut_minus(low, low) == 0.0;
          break;
        case FamilyKind::D4:
          ok = ok && m.evaluate(SampleState::point(high)) == 0.0 && cut_plus(high, high) == 1.0;
          break;
        case FamilyKind::D7:
          ok = ok && m.evaluate(SampleState::point(low, 1)) == 1.0 && cut_minus(low, low) == 0.0;
          break;
        default:
          ok = ok && m.evaluate(SampleState::point(low)) == 0.5 && m.evaluate(SampleState::point(high)) == 0.5;
          break;
      }
    }
    report.cut_identities = ok;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Cantor-space feature families

std::vector<CantorFunction> threshold_features(std::size_t depth) {
  std::vector<CantorFunction> out;
  for (const auto& w : words_up_to(depth)) {
    out.push_back(CantorFunction{
        "phi[" + w.to_string() + "]",
        [w](const CantorPoint& x) { return x.prefix_of(w.size()) <= w ? 1.0 : 0.0; },
        w.size()});
  }
  return out;
}

std::vector<CantorFunction> prefix_features(std::size_t depth) { return cylinder_functions(words_up_to(depth)); }

std::vector<CantorFunction> cylinder_functions(const std::vector<BinaryWord>& words) {
  std::vector<CantorFunction> out;
  for (const auto& w : words) {
    out.push_back(
        CantorFunction{"v[" + w.to_string() + "]", [w](const CantorPoint& x) { return prefix_indicator(w, x); },
                       w.size()});
  }
  return out;
}

std::vector<CantorFunction> delta_functions(std::size_t depth) {
  std::vector<CantorFunction> out;
  for (const auto& w : words_of_length(depth)) {
    const CantorPoint a = CantorPoint::with_tail(w, 0);
    out.push_back(CantorFunction{"delta[" + a.to_string() + "]",
                                 [a](const CantorPoint& x) { return x == a ? 1.0 : 0.0; }, kUndecided});
  }
  return out;
}

std::vector<CantorFunction> family_functions(FamilyKind kind, const DyadicSubtree& subtree, std::size_t depth) {
  if (kind == FamilyKind::D2 || kind == FamilyKind::D6 || kind == FamilyKind::D7) {
    throw std::invalid_argument(to_string(kind) + " is not a family of functions on Cantor space");
  }
  std::vector<CantorFunction> out;
  for (auto& m : generate_family(kind, subtree, depth)) {
    const bool cylinder = kind == FamilyKind::D1 || kind == FamilyKind::D5;
    auto eval = m.evaluate;
    out.push_back(CantorFunction{to_string(kind) + "[" + m.label.to_string() + "]",
                                 [eval](const CantorPoint& x) { return eval(SampleState::point(x)); },
                                 cylinder ? m.node.size() : kUndecided});
  }
  return out;
}

std::vector<CantorPoint> spread_sample() {
  std::vector<CantorPoint> out;
  for (unsigned i = 0; i < 12; ++i) {
    const unsigned v = 5 * i + 3;
    BinaryWord w;
    for (int b = 5; b >= 0; --b) w.push_back(static_cast<int>((v >> b) & 1U));
    out.push_back(CantorPoint::with_tail(w, 0));
  }
  return out;
}

EvalMatrix evaluate_functions(const std::vector<CantorFunction>& functions, const std::vector<CantorPoint>& sample) {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<double> values;
  values.reserve(functions.size() * sample.size());
  for (const auto& x : sample) cols.push_back(x.to_string());
  for (const auto& f : functions) {
    rows.push_back(f.label);
    for (const auto& x : sample) values.push_back(f.f(x));
  }
  return EvalMatrix(std::move(rows), std::move(cols), std::move(values));
}

}  // namespace ccslab
