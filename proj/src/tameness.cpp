#include "ccslab/tameness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "ccslab/errors.hpp"

namespace ccslab {

EvalMatrix::EvalMatrix(std::vector<std::string> functions, std::vector<std::string> sample,
                       std::vector<double> values)
    : functions_(std::move(functions)), sample_(std::move(sample)), values_(std::move(values)) {
  if (values_.size() != functions_.size() * sample_.size()) {
    throw std::invalid_argument("evaluation matrix shape mismatch");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("evaluation matrix entries must be finite");
  }
}

EvalMatrix EvalMatrix::from_rows(std::vector<std::string> functions, std::vector<std::string> sample,
                                 const std::vector<std::vector<double>>& rows) {
  std::vector<double> values;
  values.reserve(rows.size() * sample.size());
  for (const auto& r : rows) {
    if (r.size() != sample.size()) throw std::invalid_argument("evaluation matrix rows must match the sample");
    values.insert(values.end(), r.begin(), r.end());
  }
  return EvalMatrix(std::move(functions), std::move(sample), std::move(values));
}

EvalMatrix EvalMatrix::select_functions(const std::vector<std::size_t>& rows) const {
  std::vector<std::string> labels;
  std::vector<double> values;
  for (auto r : rows) {
    labels.push_back(functions_.at(r));
    auto row_values = row(r);
    values.insert(values.end(), row_values.begin(), row_values.end());
  }
  return EvalMatrix(std::move(labels), sample_, std::move(values));
}

EvalMatrix EvalMatrix::select_points(const std::vector<std::size_t>& cols) const {
  std::vector<std::string> labels;
  for (auto c : cols) labels.push_back(sample_.at(c));
  std::vector<double> values;
  for (std::size_t f = 0; f < num_functions(); ++f) {
    for (auto c : cols) values.push_back((*this)(f, c));
  }
  return EvalMatrix(functions_, std::move(labels), std::move(values));
}

namespace {

enum class Side : std::uint8_t { Low, High, Neither };

Side side_of(double v, double a, double b) {
  if (v <= a) return Side::Low;
  if (v >= b) return Side::High;
  return Side::Neither;
}

void require_cut(double a, double b) {
  if (!(a < b)) throw CutError("cut requires a < b");
}

// Side table, row-major like the matrix.
std::vector<Side> classify(const EvalMatrix& m, double a, double b) {
  std::vector<Side> sides(m.num_functions() * m.num_points());
  for (std::size_t f = 0; f < m.num_functions(); ++f) {
    for (std::size_t x = 0; x < m.num_points(); ++x) sides[f * m.num_points() + x] = side_of(m(f, x), a, b);
  }
  return sides;
}

// Tries to shatter `points`; fills realizers (first row per pattern) on success.
bool shatters(const std::vector<Side>& sides, std::size_t num_points, std::size_t num_functions,
              const std::vector<std::size_t>& points, std::vector<std::size_t>& realizers) {
  const std::size_t patterns = std::size_t{1} << points.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  realizers.assign(patterns, kUnset);
  std::size_t found = 0;
  for (std::size_t f = 0; f < num_functions && found < patterns; ++f) {
    std::size_t mask = 0;
    bool decided = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Side s = sides[f * num_points + points[i]];
      if (s == Side::Neither) {
        decided = false;
        break;
      }
      if (s == Side::Low) mask |= std::size_t{1} << i;
    }
    if (decided && realizers[mask] == kUnset) {
      realizers[mask] = f;
      ++found;
    }
  }
  return found == patterns;
}

// Advances `idx` (strictly increasing indices into a pool of size n) to the
// next combination in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

IndependenceResult independence_dimension(const EvalMatrix& m, double a, double b, std::size_t cap) {
  require_cut(a, b);
  if (cap == 0) throw std::invalid_argument("independence search cap must be at least 1");
  if (cap >= 8 * sizeof(std::size_t) - 1) throw std::invalid_argument("independence search cap too large");
  const auto sides = classify(m, a, b);
  const std::size_t np = m.num_points();
  const std::size_t nf = m.num_functions();

  // Shattering is hereditary, so only individually shattered points can
  // belong to a shattered set.
  std::vector<std::size_t> pool;
  for (std::size_t x = 0; x < np; ++x) {
    bool low = false;
    bool high = false;
    for (std::size_t f = 0; f < nf; ++f) {
      low = low || sides[f * np + x] == Side::Low;
      high = high || sides[f * np + x] == Side::High;
    }
    if (low && high) pool.push_back(x);
  }

  IndependenceResult result;
  std::vector<std::size_t> realizers;
  for (std::size_t n = 1; n <= cap && n <= pool.size(); ++n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    bool found = false;
    do {
      std::vector<std::size_t> points(n);
      for (std::size_t i = 0; i < n; ++i) points[i] = pool[idx[i]];
      if (shatters(sides, np, nf, points, realizers)) {
        result.dim = n;
        result.witness = IndependenceWitness{std::move(points), realizers};
        found = true;
        break;
      }
    } while (next_combination(idx, pool.size()));
    if (!found) return result;
  }
  result.capped = result.dim == cap;
  return result;
}

bool ip_certificate_check(const EvalMatrix& m, const IndependenceWitness& w, double a, double b) {
  require_cut(a, b);
  const std::size_t n = w.points.size();
  if (n >= 8 * sizeof(std::size_t) - 1) return false;
  if (w.realizers.size() != (std::size_t{1} << n)) return false;
  for (auto p : w.points) {
    if (p >= m.num_points()) return false;
  }
  for (std::size_t mask = 0; mask < w.realizers.size(); ++mask) {
    const std::size_t f = w.realizers[mask];
    if (f >= m.num_functions()) return false;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = m(f, w.points[i]);
      const bool want_low = (mask >> i) & 1U;
      if (want_low ? !(v <= a) : !(v >= b)) return false;
    }
  }
  return true;
}

std::size_t growth_trace_count(const EvalMatrix& m, double a, double b,
                               const std::vector<std::size_t>& subsample) {
  require_cut(a, b);
  std::set<std::vector<bool>> traces;
  for (std::size_t f = 0; f < m.num_functions(); ++f) {
    std::vector<bool> trace(subsample.size());
    for (std::size_t i = 0; i < subsample.size(); ++i) {
      const double v = m(f, subsample[i]);
      const Side s = side_of(v, a, b);
      if (s == Side::Neither) {
        throw AmbiguousValue("value " + std::to_string(v) + " of " + m.functions()[f] + " at " +
                             m.sample()[subsample[i]] + " lies strictly inside the cut");
      }
      trace[i] = s == Side::Low;
    }
    traces.insert(std::move(trace));
  }
  return traces.size();
}

double sauer_bound(std::size_t m, std::size_t d) {
  double total = 0.0;
  double binom = 1.0;
  for (std::size_t i = 0; i <= d && i <= m; ++i) {
    total += binom;
    binom = binom * static_cast<double>(m - i) / static_cast<double>(i + 1);
  }
  return total;
}

SauerReport sauer_bound_check(const EvalMatrix& m, double a, double b, std::size_t cap,
                              const SauerOptions& options) {
  const auto ind = independence_dimension(m, a, b, cap);
  SauerReport report;
  report.dim = ind.dim;
  report.dim_capped = ind.capped;

  auto check = [&](const std::vector<std::size_t>& sub) {
    const std::size_t traces = growth_trace_count(m, a, b, sub);
    const double bound = sauer_bound(sub.size(), ind.dim);
    const double ratio = static_cast<double>(traces) / bound;
    ++report.subsamples_checked;
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst_size = sub.size();
      report.worst_traces = traces;
      report.worst_bound = bound;
    }
    if (static_cast<double>(traces) > bound) report.bound_ok = false;
  };

  const std::size_t np = m.num_points();
  if (np <= options.max_subsample) {
    report.exhaustive = true;
    for (std::size_t mask = 1; mask < (std::size_t{1} << np); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t i = 0; i < np; ++i) {
        if ((mask >> i) & 1U) sub.push_back(i);
      }
      check(sub);
    }
    return report;
  }

  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> all(np);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t size = 1; size <= options.max_subsample; ++size) {
    for (std::size_t r = 0; r < options.random_per_size; ++r) {
      std::vector<std::size_t> sub;
      std::sample(all.begin(), all.end(), std::back_inserter(sub), size, rng);
      check(sub);
    }
  }
  return report;
}

std::size_t separation_profile(const EvalMatrix& m, double gap) {
  if (!(gap > 0.0)) throw std::invalid_argument("separation gap must be positive");
  std::vector<std::size_t> chosen;
  for (std::size_t f = 0; f < m.num_functions(); ++f) {
    const auto rf = m.row(f);
    bool separated = true;
    for (auto g : chosen) {
      const auto rg = m.row(g);
      double sup = 0.0;
      for (std::size_t x = 0; x < m.num_points(); ++x) sup = std::max(sup, std::abs(rf[x] - rg[x]));
      if (sup < gap) {
        separated = false;
        break;
      }
    }
    if (separated) chosen.push_back(f);
  }
  return chosen.size();
}

}  // namespace ccslab
