#include "ccslab/limits.hpp"

#include <cmath>
#include <stdexcept>

#include "ccslab/errors.hpp"

namespace ccslab {

std::string to_string(LimitStatus status) {
  switch (status) {
    case LimitStatus::Stabilized:
      return "Stabilized";
    case LimitStatus::Oscillating:
      return "Oscillating";
    case LimitStatus::BudgetExhausted:
      return "Budget-Exhausted";
  }
  return "unknown";
}

namespace {

bool close(const State& a, const State& b, double tol) {
  if (a.index() != b.index()) throw SpaceMismatch("trace mixes state spaces");
  if (const auto* x = std::get_if<CantorPoint>(&a)) return *x == std::get<CantorPoint>(b);
  return chordal_distance(std::get<ExtComplex>(a), std::get<ExtComplex>(b)) <= tol;
}

}  // namespace

LimitReport classify_trace(std::vector<State> trace, double tol) {
  LimitReport report;
  report.trace_length = trace.size();
  const std::size_t n = trace.size();
  if (n == 0) {
    report.trace = std::move(trace);
    return report;
  }

  // Longest tail whose members are pairwise within tol.
  std::size_t m = n - 1;
  while (m > 0) {
    bool fits = true;
    for (std::size_t j = m; j < n && fits; ++j) fits = close(trace[m - 1], trace[j], tol);
    if (!fits) break;
    --m;
  }
  if (n - m >= 2) {
    report.status = LimitStatus::Stabilized;
    report.stabilization_index = m;
    report.value = trace.back();
    report.trace = std::move(trace);
    return report;
  }

  for (std::size_t q = 2; q <= kOscillationWindow && 2 * q <= n; ++q) {
    bool repeats = true;
    for (std::size_t i = 0; i < q && repeats; ++i) {
      repeats = close(trace[n - 1 - i], trace[n - 1 - i - q], tol);
    }
    if (repeats) {
      report.status = LimitStatus::Oscillating;
      report.period = q;
      break;
    }
  }
  report.trace = std::move(trace);
  return report;
}

LimitReport pointwise_limit(const TransitionSequence& seq, const State& x, std::size_t budget,
                            double tol) {
  if (budget < 1) throw std::invalid_argument("limit budget must be at least 1");
  if (tol < 0) throw std::invalid_argument("limit tolerance must be non-negative");
  std::vector<State> trace;
  trace.reserve(budget);
  for (std::size_t i = 0; i < budget; ++i) trace.push_back(seq(i).apply(x));
  return classify_trace(std::move(trace), tol);
}

LimitReport iterate_limit(const Transition& f, const State& x, std::size_t budget, double tol) {
  if (budget < 1) throw std::invalid_argument("limit budget must be at least 1");
  if (tol < 0) throw std::invalid_argument("limit tolerance must be non-negative");
  std::vector<State> trace;
  trace.reserve(budget);
  trace.push_back(Transition::identity(f.space()).apply(x));
  while (trace.size() < budget) trace.push_back(f.apply(trace.back()));
  return classify_trace(std::move(trace), tol);
}

BinaryWord threshold_upper_approximant(const CantorPoint& a, std::size_t n) {
  if (a.is_ones()) throw TargetIsOnes();
  return a.prefix_of(n).append(1);
}

BinaryWord threshold_lower_approximant(const CantorPoint& a, std::size_t n) {
  if (a.is_zeros()) throw TargetIsZeros();
  if (a.is_dyadic()) {
    // Canonical form of u⌢1⌢0^∞ has prefix u⌢1.
    BinaryWord w = a.prefix().take(a.prefix().size() - 1);
    w.push_back(0);
    return w.concat(BinaryWord::repeat(1, n));
  }
  const std::size_t k = n == 0 ? 1 : n;
  std::size_t seen = 0;
  for (std::size_t i = 0;; ++i) {
    if (a.bit_at(i) == 1 && ++seen == k) return a.prefix_of(i).append(0);
  }
}

BinaryWord delta_approximant(const CantorPoint& a, std::size_t n) { return a.prefix_of(n); }

BinaryWord zero_approximant(std::size_t n) { return BinaryWord::repeat(1, n).append(0); }

ExtComplex sqrt_deep_value(double a, const ExtComplex& x) {
  if (!(a > 0.0)) throw std::invalid_argument("square-root target must be positive");
  if (x.is_infinity()) return ExtComplex::infinity();
  const auto v = x.value();
  if (v.imag() != 0.0) throw std::invalid_argument("square-root limit is defined on the extended real line");
  if (v.real() == 0.0) return ExtComplex::infinity();
  return ExtComplex(v.real() > 0 ? std::sqrt(a) : -std::sqrt(a));
}

TransitionSequence upper_threshold_sequence(const CantorPoint& a) {
  if (a.is_ones()) throw TargetIsOnes();
  return [a](std::size_t n) { return Transition::threshold(threshold_upper_approximant(a, n)); };
}

TransitionSequence lower_threshold_sequence(const CantorPoint& a) {
  if (a.is_zeros()) throw TargetIsZeros();
  return [a](std::size_t n) { return Transition::threshold(threshold_lower_approximant(a, n)); };
}

TransitionSequence delta_sequence(const CantorPoint& a) {
  return [a](std::size_t n) { return Transition::prefix_test(delta_approximant(a, n)); };
}

TransitionSequence zero_sequence() {
  return [](std::size_t n) { return Transition::prefix_test(zero_approximant(n)); };
}

TransitionSequence newton_iterates(const Polynomial& p) {
  const Transition step = Transition::newton(p);
  return [step](std::size_t n) { return power(step, n); };
}

}  // namespace ccslab
