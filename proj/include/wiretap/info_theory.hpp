#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "wiretap/errors.hpp"

namespace wiretap {

// All entropies, mutual informations and capacities are in bits (log base 2),
// with the convention 0*log 0 = 0. Probabilities below 1e-300 are treated as
// exact zeros.

/// Probability mass function over {0, ..., size-1}.
///
/// Construction renormalizes when |sum - 1| < 1e-9 and rejects otherwise;
/// after construction the entries are nonnegative and sum to 1 within 1e-12.
class Pmf {
public:
  explicit Pmf(std::vector<double> probs);

  static Pmf uniform(std::size_t n);
  static Pmf point_mass(std::size_t i, std::size_t n);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

private:
  std::vector<double> probs_;
};

/// Joint probability mass function over a k-dimensional finite grid,
/// stored row-major (last axis fastest).
class JointPmf {
public:
  JointPmf(std::vector<double> flat, std::vector<std::size_t> dims);

  /// Product of independent marginals.
  static JointPmf product(const std::vector<Pmf>& marginals);

  std::size_t rank() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<double>& flat() const { return flat_; }

  double at(const std::vector<std::size_t>& idx) const;

  /// Marginal law of one axis.
  Pmf marginal(std::size_t axis) const;
  /// 2-D marginal of (axis_a, axis_b), in that order.
  JointPmf marginal_pair(std::size_t axis_a, std::size_t axis_b) const;

private:
  std::vector<double> flat_;
  std::vector<std::size_t> dims_;
};

/// Row-stochastic channel law P(output | input); each row is a valid Pmf.
class TransitionMatrix {
public:
  TransitionMatrix(std::size_t rows, std::size_t cols, std::vector<double> p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return p_[r * cols_ + c]; }
  const std::vector<double>& flat() const { return p_; }

private:
  std::size_t rows_, cols_;
  std::vector<double> p_;
};

/// H(p) = -p log2 p - (1-p) log2(1-p). Throws std::domain_error outside [0,1].
double binary_entropy(double p);

/// Shannon entropy of a pmf, bits.
double entropy(const Pmf& p);

/// Entropy of a joint law viewed as one flat distribution, bits.
double entropy(const JointPmf& j);

/// I(A;B) of a 2-axis joint law, bits. Clamped to >= 0.
double mutual_information(const JointPmf& j);

/// H(other | given_axis) of a 2-axis joint law, bits.
double conditional_entropy(const JointPmf& j, std::size_t given_axis);

struct CapacityResult {
  double capacity_bits;
  Pmf argmax_input;
};

/// Discrete channel capacity by Blahut-Arimoto alternating maximization.
///
/// Stops when the duality gap max_x D(W(.|x) || q) - I(p) drops below tol,
/// so the returned capacity is within tol of sup_P I(X;Y). Throws
/// ConvergenceError if the gap is still above tol after max_iter iterations.
/// If trace is non-null it receives the per-iteration lower-bound sequence.
CapacityResult channel_capacity_ba(const TransitionMatrix& w, double tol = 1e-10,
                                   std::size_t max_iter = 100000,
                                   std::vector<double>* trace = nullptr);

struct MiEstimate {
  double plug_in_bits;
  double corrected_bits;  // Miller-Madow: plug-in minus (q1-1)(q2-1)/(2N ln 2)
};

/// Plug-in mutual information of an empirical joint over symbol pairs.
///
/// Alphabet sizes default to (max observed symbol)+1 when left at 0.
MiEstimate plug_in_mi_estimate(const std::vector<std::pair<int, int>>& samples,
                               std::size_t q1 = 0, std::size_t q2 = 0);

}  // namespace wiretap
