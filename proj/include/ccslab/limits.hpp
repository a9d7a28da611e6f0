#pragma once

// Deep computations as pointwise limits of transition sequences, with the
// explicit approximating sequences for the threshold and prefix-test
// structures.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ccslab/bitseq.hpp"
#include "ccslab/states.hpp"
#include "ccslab/transitions.hpp"

namespace ccslab {

enum class LimitStatus { Stabilized, Oscillating, BudgetExhausted };

std::string to_string(LimitStatus status);

struct LimitReport {
  LimitStatus status = LimitStatus::BudgetExhausted;
  /// Limit value; present only when Stabilized.
  std::optional<State> value;
  /// First index from which all outputs agree (within tolerance).
  std::size_t stabilization_index = 0;
  /// Smallest repetition distance when Oscillating.
  std::optional<std::size_t> period;
  std::size_t trace_length = 0;
  std::vector<State> trace;
};

using TransitionSequence = std::function<Transition(std::size_t)>;

/// Window searched for repetitions when no stabilization is found.
inline constexpr std::size_t kOscillationWindow = 16;

/// Evaluates seq(0)(x) ... seq(budget-1)(x) and classifies the trace.
///
/// Cantor outputs are compared exactly; sphere outputs by chordal distance
/// `tol`. Stabilized requires the final value to be repeated at least once,
/// i.e. a constant tail of length >= 2.
LimitReport pointwise_limit(const TransitionSequence& seq, const State& x, std::size_t budget,
                            double tol = 0.0);

/// Limit of the iterates f^0, f^1, ..., f^(budget-1) at x. Builds the orbit
/// with one application per term; the report matches pointwise_limit over
/// the sequence n ↦ power(f, n).
LimitReport iterate_limit(const Transition& f, const State& x, std::size_t budget, double tol = 0.0);

/// Classifies an already computed trace with the same rules.
LimitReport classify_trace(std::vector<State> trace, double tol = 0.0);

/// a|_n ⌢ 1. The thresholds on these words converge to the non-strict cut
/// at a. Throws TargetIsOnes for a = 1^∞.
BinaryWord threshold_upper_approximant(const CantorPoint& a, std::size_t n);

/// Words whose thresholds converge to the strict cut at a. For dyadic
/// a = u⌢1⌢0^∞ this is u⌢0⌢1^n; otherwise a|_{n_k}⌢0 where n_k is the index
/// of the k-th 1 of a, counting from k = 1 (n = 0 is treated as k = 1).
/// Throws TargetIsZeros for a = 0^∞.
BinaryWord threshold_lower_approximant(const CantorPoint& a, std::size_t n);

/// a|_n. Prefix tests on these words converge to the indicator of {a}.
BinaryWord delta_approximant(const CantorPoint& a, std::size_t n);

/// 1^n ⌢ 0. Prefix tests on these words converge to the constant 0^∞.
BinaryWord zero_approximant(std::size_t n);

/// The exact limit of Newton iteration for x^2 - a on the extended real
/// line: sqrt(a) for x > 0, -sqrt(a) for x < 0, ∞ at 0 and ∞.
/// Throws std::invalid_argument for a <= 0 or non-real x.
ExtComplex sqrt_deep_value(double a, const ExtComplex& x);

/// Convenience sequences.
TransitionSequence upper_threshold_sequence(const CantorPoint& a);
TransitionSequence lower_threshold_sequence(const CantorPoint& a);
TransitionSequence delta_sequence(const CantorPoint& a);
TransitionSequence zero_sequence();
/// n ↦ N_p^(n).
TransitionSequence newton_iterates(const Polynomial& p);

}  // namespace ccslab
