#include "ccslab/stability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ccslab/errors.hpp"

namespace ccslab {

double DyadicRational::value() const { return std::ldexp(static_cast<double>(numerator), -static_cast<int>(exponent)); }

std::string DyadicRational::to_string() const {
  if (exponent == 0) return std::to_string(numerator);
  return std::to_string(numerator) + "/" + std::to_string(std::uint64_t{1} << exponent);
}

// ---------------------------------------------------------------------------

CylinderSet::CylinderSet(std::vector<BinaryWord> generators) {
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  // Sorted order puts a prefix immediately before its extensions.
  for (auto& w : generators) {
    if (!generators_.empty() && generators_.back().is_prefix_of(w)) continue;
    generators_.push_back(std::move(w));
  }
  // Merge sibling pairs until none remain.
  bool merged = true;
  while (merged) {
    merged = false;
    std::vector<BinaryWord> next;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const auto& w = generators_[i];
      if (i + 1 < generators_.size() && !w.empty() && w.back() == 0 && generators_[i + 1].size() == w.size() &&
          generators_[i + 1].back() == 1 && w.take(w.size() - 1).is_prefix_of(generators_[i + 1])) {
        next.push_back(w.take(w.size() - 1));
        ++i;
        merged = true;
      } else {
        next.push_back(w);
      }
    }
    generators_ = std::move(next);
  }
}

CylinderSet CylinderSet::full() { return CylinderSet({BinaryWord{}}); }

CylinderSet CylinderSet::parse(std::string_view text) {
  if (text == "full") return full();
  if (text == "empty" || text.empty()) return {};
  std::vector<BinaryWord> words;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const auto piece = text.substr(start, comma - start);
    try {
      words.push_back(BinaryWord::parse(piece));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), std::string(text), start + e.position());
    }
    start = comma + 1;
  }
  return CylinderSet(std::move(words));
}

bool CylinderSet::contains(const CantorPoint& x) const {
  return std::any_of(generators_.begin(), generators_.end(), [&](const BinaryWord& w) { return x.extends(w); });
}

bool CylinderSet::contains_cell(const BinaryWord& cell) const {
  return std::any_of(generators_.begin(), generators_.end(),
                     [&](const BinaryWord& w) { return w.is_prefix_of(cell); });
}

std::size_t CylinderSet::max_length() const {
  std::size_t m = 0;
  for (const auto& w : generators_) m = std::max(m, w.size());
  return m;
}

std::string CylinderSet::to_string() const {
  if (generators_.empty()) return "empty";
  if (generators_.size() == 1 && generators_[0].empty()) return "full";
  std::string out;
  for (const auto& w : generators_) {
    if (!out.empty()) out += ",";
    out += w.to_string();
  }
  return out;
}

DyadicRational cyl_measure(const CylinderSet& e) {
  const unsigned exp = static_cast<unsigned>(e.max_length());
  if (exp > 62) throw std::invalid_argument("cylinder too long for an exact measure");
  std::uint64_t num = 0;
  for (const auto& w : e.generators()) num += std::uint64_t{1} << (exp - w.size());
  DyadicRational r{num, exp};
  while (r.exponent > 0 && r.numerator % 2 == 0) {
    r.numerator /= 2;
    --r.exponent;
  }
  if (r.numerator == 0) r.exponent = 0;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void require_cut(double a, double b) {
  if (!(a < b)) throw CutError("cut requires a < b");
}

}  // namespace

bool dk_member(const std::vector<CantorFunction>& family, const std::vector<CantorPoint>& tuple, double a, double b) {
  require_cut(a, b);
  if (tuple.size() % 2 != 0) throw std::invalid_argument("D_k tuples have even length");
  for (const auto& f : family) {
    bool pattern = true;
    for (std::size_t i = 0; i < tuple.size() && pattern; ++i) {
      const double v = f.f(tuple[i]);
      pattern = i % 2 == 0 ? v <= a : v >= b;
    }
    if (pattern) return true;
  }
  return false;
}

std::optional<double> exact_dk(const std::vector<CantorFunction>& family, const CylinderSet& e, double a, double b,
                               std::size_t k) {
  require_cut(a, b);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (family.size() > kExactMaxFunctions) return std::nullopt;
  std::size_t depth = e.max_length();
  for (const auto& f : family) {
    if (f.decision_depth == kUndecided) return std::nullopt;
    depth = std::max(depth, f.decision_depth);
  }
  if (depth > kExactMaxDepth) return std::nullopt;
  if (family.empty()) return 0.0;

  // Distribution of the AND of low (resp. high) masks over one point in E.
  const double cell_mass = std::ldexp(1.0, -static_cast<int>(depth));
  std::map<std::uint64_t, double> low_one;
  std::map<std::uint64_t, double> high_one;
  for (const auto& cell : words_of_length(depth)) {
    if (!e.contains_cell(cell)) continue;
    const CantorPoint x = CantorPoint::with_tail(cell, 0);
    std::uint64_t low = 0;
    std::uint64_t high = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      const double v = family[i].f(x);
      if (v <= a) low |= std::uint64_t{1} << i;
      if (v >= b) high |= std::uint64_t{1} << i;
    }
    low_one[low] += cell_mass;
    high_one[high] += cell_mass;
  }

  auto power = [k](const std::map<std::uint64_t, double>& one, std::uint64_t all) {
    std::map<std::uint64_t, double> acc{{all, 1.0}};
    for (std::size_t step = 0; step < k; ++step) {
      std::map<std::uint64_t, double> next;
      for (const auto& [m1, p1] : acc) {
        for (const auto& [m2, p2] : one) next[m1 & m2] += p1 * p2;
      }
      acc = std::move(next);
    }
    return acc;
  };
  const std::uint64_t all = family.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << family.size()) - 1;
  const auto lows = power(low_one, all);
  const auto highs = power(high_one, all);
  double total = 0.0;
  for (const auto& [ml, pl] : lows) {
    for (const auto& [mh, ph] : highs) {
      if ((ml & mh) != 0) total += pl * ph;
    }
  }
  return total;
}

DkEstimate estimate_dk(const std::vector<CantorFunction>& family, const CylinderSet& e, double a, double b,
                       std::size_t k, std::size_t n_samples, std::uint64_t seed) {
  require_cut(a, b);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (n_samples < 1) throw std::invalid_argument("at least one sample is required");
  const double mu = cyl_measure(e).value();
  if (mu == 0.0) throw EmptySetError("the conditioning set E has measure zero");

  std::size_t depth = e.max_length();
  for (const auto& f : family) {
    depth = std::max(depth, f.decision_depth == kUndecided ? kFallbackSampleDepth : f.decision_depth);
  }

  std::vector<double> weights;
  for (const auto& w : e.generators()) weights.push_back(std::ldexp(1.0, -static_cast<int>(w.size())));

  std::size_t hits = 0;
  for (std::size_t stream = 0; stream < kSamplingStreams; ++stream) {
    const std::size_t quota = n_samples / kSamplingStreams + (stream < n_samples % kSamplingStreams ? 1 : 0);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::mt19937_64 rng(seq);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::bernoulli_distribution coin(0.5);
    std::vector<CantorPoint> tuple(2 * k);
    for (std::size_t s = 0; s < quota; ++s) {
      for (auto& x : tuple) {
        BinaryWord w = e.generators()[pick(rng)];
        while (w.size() < depth) w.push_back(coin(rng) ? 1 : 0);
        x = CantorPoint::with_tail(w, 0);
      }
      if (dk_member(family, tuple, a, b)) ++hits;
    }
  }

  DkEstimate out;
  out.k = k;
  out.samples = n_samples;
  out.seed = seed;
  out.threshold = std::pow(mu, static_cast<double>(2 * k));
  const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
  out.estimate = p * out.threshold;
  out.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples)) * out.threshold;
  out.exact = exact_dk(family, e, a, b, k);
  return out;
}

std::string StabilityVerdict::to_string() const {
  return (stable ? "StableWitness(" : "NoWitnessUpTo(") + std::to_string(k) + ")";
}

StabilityVerdict stability_verdict(const std::vector<CantorFunction>& family, const CylinderSet& e, double a,
                                   double b, std::size_t k_max, std::size_t n_samples, std::uint64_t seed) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  StabilityVerdict verdict;
  for (std::size_t k = 1; k <= k_max; ++k) {
    auto est = estimate_dk(family, e, a, b, k, n_samples, seed);
    const bool below = est.exact ? *est.exact < est.threshold : est.estimate + 3.0 * est.std_error < est.threshold;
    verdict.estimates.push_back(std::move(est));
    if (below) {
      verdict.stable = true;
      verdict.k = k;
      return verdict;
    }
  }
  verdict.k = k_max;
  return verdict;
}

}  // namespace ccslab
