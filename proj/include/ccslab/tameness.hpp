#pragma once

// Finitary independence diagnostics on a family evaluated over a finite
// sample: shattering at a cut (a, b), independence dimension, Sauer–Shelah
// trace bounds and greedy separation profiles.
//
// Cut semantics are closed: a value v is on the low side when v <= a and on
// the high side when v >= b. Values strictly inside (a, b) are on neither.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ccslab {

/// Family × sample table of finite reals; rows are functions.
class EvalMatrix {
 public:
  EvalMatrix() = default;
  /// `values` is row-major with functions.size() rows of sample.size()
  /// entries. Throws std::invalid_argument on shape mismatch or non-finite
  /// entries.
  EvalMatrix(std::vector<std::string> functions, std::vector<std::string> sample,
             std::vector<double> values);

  static EvalMatrix from_rows(std::vector<std::string> functions, std::vector<std::string> sample,
                              const std::vector<std::vector<double>>& rows);

  std::size_t num_functions() const noexcept { return functions_.size(); }
  std::size_t num_points() const noexcept { return sample_.size(); }
  const std::vector<std::string>& functions() const noexcept { return functions_; }
  const std::vector<std::string>& sample() const noexcept { return sample_; }

  double operator()(std::size_t f, std::size_t x) const { return values_[f * sample_.size() + x]; }
  std::span<const double> row(std::size_t f) const {
    return {values_.data() + f * sample_.size(), sample_.size()};
  }

  /// Restriction to a subset of rows.
  EvalMatrix select_functions(const std::vector<std::size_t>& rows) const;
  /// Restriction to a subset of columns.
  EvalMatrix select_points(const std::vector<std::size_t>& cols) const;

 private:
  std::vector<std::string> functions_;
  std::vector<std::string> sample_;
  std::vector<double> values_;
};

/// An (a, b)-shattered set of sample points with one realizing function per
/// pattern. Patterns are bitmasks over `points`: bit i set means points[i]
/// must be on the low side (f <= a), clear means the high side (f >= b).
struct IndependenceWitness {
  std::vector<std::size_t> points;
  /// realizers[mask] is a row index of the matrix; size 2^points.size().
  std::vector<std::size_t> realizers;
};

struct IndependenceResult {
  std::size_t dim = 0;
  /// Witness for `dim`; absent when dim == 0.
  std::optional<IndependenceWitness> witness;
  /// True when the search stopped at the cap (the true dimension may be larger).
  bool capped = false;
};

/// Largest n <= cap such that some n-subset of the sample is (a, b)-shattered.
/// Subsets are searched by size, then lexicographically; the first maximal
/// subset found is the witness and each pattern is realized by the lowest
/// row index that realizes it. Throws CutError if a >= b,
/// std::invalid_argument if cap == 0.
IndependenceResult independence_dimension(const EvalMatrix& m, double a, double b, std::size_t cap);

/// Replays every pattern of the witness against the matrix.
bool ip_certificate_check(const EvalMatrix& m, const IndependenceWitness& w, double a, double b);

/// Number of distinct low/high patterns the rows trace on the subsample.
/// Throws AmbiguousValue if a value strictly inside (a, b) occurs there.
std::size_t growth_trace_count(const EvalMatrix& m, double a, double b,
                               const std::vector<std::size_t>& subsample);

/// Σ_{i=0}^{d} C(m, i).
double sauer_bound(std::size_t m, std::size_t d);

struct SauerOptions {
  std::size_t max_subsample = 12;
  /// Random subsamples drawn per size when the sample is larger than
  /// max_subsample.
  std::size_t random_per_size = 200;
  std::uint64_t seed = 0;
};

struct SauerReport {
  std::size_t dim = 0;
  bool dim_capped = false;
  bool bound_ok = true;
  double worst_ratio = 0.0;
  bool exhaustive = false;
  std::size_t subsamples_checked = 0;
  /// Subsample size, trace count and bound at the worst ratio.
  std::size_t worst_size = 0;
  std::size_t worst_traces = 0;
  double worst_bound = 0.0;
};

/// Computes the independence dimension d and checks the trace count of every
/// subsample of size <= max_subsample against Σ_{i<=d} C(m, i).
/// Exhaustive when the sample has at most max_subsample points, seeded random
/// subsamples otherwise.
SauerReport sauer_bound_check(const EvalMatrix& m, double a, double b, std::size_t cap,
                              const SauerOptions& options = {});

/// Size of a greedily chosen set of rows that are pairwise at sup-distance
/// >= gap over the sample. A lower bound on the maximum such set.
std::size_t separation_profile(const EvalMatrix& m, double gap);

}  // namespace ccslab
