#include "wiretap/info_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wiretap {

namespace {

constexpr double kZeroFloor = 1e-300;
constexpr double kSumTol = 1e-9;
const double kLn2 = std::log(2.0);

double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

std::vector<double> sanitize(std::vector<double> p, const char* what) {
  double sum = 0.0;
  for (double& v : p) {
    if (!std::isfinite(v) || v < 0.0) throw InputError(std::string(what) + ": entries must be finite and nonnegative");
    if (v < kZeroFloor) v = 0.0;
    sum += v;
  }
  if (p.empty()) throw InputError(std::string(what) + ": empty distribution");
  if (std::abs(sum - 1.0) >= kSumTol)
    throw InputError(std::string(what) + ": mass sums to " + std::to_string(sum) + ", not 1");
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace

Pmf::Pmf(std::vector<double> probs) : probs_(sanitize(std::move(probs), "Pmf")) {}

Pmf Pmf::uniform(std::size_t n) {
  if (n == 0) throw InputError("Pmf::uniform: empty alphabet");
  return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::point_mass(std::size_t i, std::size_t n) {
  if (i >= n) throw InputError("Pmf::point_mass: index out of range");
  std::vector<double> p(n, 0.0);
  p[i] = 1.0;
  return Pmf(std::move(p));
}

JointPmf::JointPmf(std::vector<double> flat, std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InputError("JointPmf: no axes");
  std::size_t total = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw InputError("JointPmf: zero-size axis");
    total *= d;
  }
  if (flat.size() != total) throw InputError("JointPmf: flat size does not match dims");
  flat_ = sanitize(std::move(flat), "JointPmf");
}

JointPmf JointPmf::product(const std::vector<Pmf>& marginals) {
  if (marginals.empty()) throw InputError("JointPmf::product: no factors");
  std::vector<std::size_t> dims;
  dims.reserve(marginals.size());
  std::size_t total = 1;
  for (const Pmf& m : marginals) {
    dims.push_back(m.size());
    total *= m.size();
  }
  std::vector<double> flat(total, 1.0);
  std::size_t repeat = total;
  for (std::size_t axis = 0; axis < marginals.size(); ++axis) {
    const Pmf& m = marginals[axis];
    repeat /= m.size();
    for (std::size_t i = 0; i < total; ++i) flat[i] *= m[(i / repeat) % m.size()];
  }
  return JointPmf(std::move(flat), std::move(dims));
}

double JointPmf::at(const std::vector<std::size_t>& idx) const {
  if (idx.size() != dims_.size()) throw InputError("JointPmf::at: wrong index rank");
  std::size_t off = 0;
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    if (idx[a] >= dims_[a]) throw InputError("JointPmf::at: index out of range");
    off = off * dims_[a] + idx[a];
  }
  return flat_[off];
}

Pmf JointPmf::marginal(std::size_t axis) const {
  if (axis >= dims_.size()) throw InputError("JointPmf::marginal: bad axis");
  std::size_t inner = 1;
  for (std::size_t a = axis + 1; a < dims_.size(); ++a) inner *= dims_[a];
  std::vector<double> out(dims_[axis], 0.0);
  for (std::size_t i = 0; i < flat_.size(); ++i) out[(i / inner) % dims_[axis]] += flat_[i];
  return Pmf(std::move(out));
}

JointPmf JointPmf::marginal_pair(std::size_t axis_a, std::size_t axis_b) const {
  if (axis_a >= dims_.size() || axis_b >= dims_.size() || axis_a == axis_b)
    throw InputError("JointPmf::marginal_pair: bad axes");
  std::size_t inner_a = 1, inner_b = 1;
  for (std::size_t a = axis_a + 1; a < dims_.size(); ++a) inner_a *= dims_[a];
  for (std::size_t a = axis_b + 1; a < dims_.size(); ++a) inner_b *= dims_[a];
  std::vector<double> out(dims_[axis_a] * dims_[axis_b], 0.0);
  for (std::size_t i = 0; i < flat_.size(); ++i) {
    std::size_t ia = (i / inner_a) % dims_[axis_a];
    std::size_t ib = (i / inner_b) % dims_[axis_b];
    out[ia * dims_[axis_b] + ib] += flat_[i];
  }
  return JointPmf(std::move(out), {dims_[axis_a], dims_[axis_b]});
}

TransitionMatrix::TransitionMatrix(std::size_t rows, std::size_t cols, std::vector<double> p)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw InputError("TransitionMatrix: empty shape");
  if (p.size() != rows * cols) throw InputError("TransitionMatrix: size mismatch");
  p_.reserve(p.size());
  for (std::size_t r = 0; r < rows; ++r) {
    Pmf row(std::vector<double>(p.begin() + static_cast<std::ptrdiff_t>(r * cols),
                                p.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols)));
    p_.insert(p_.end(), row.probs().begin(), row.probs().end());
  }
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: argument outside [0,1]");
  return -xlog2x(p) - xlog2x(1.0 - p);
}

double entropy(const Pmf& p) {
  double h = 0.0;
  for (double v : p.probs()) h -= xlog2x(v);
  return h;
}

double entropy(const JointPmf& j) {
  double h = 0.0;
  for (double v : j.flat()) h -= xlog2x(v);
  return h;
}

double mutual_information(const JointPmf& j) {
  if (j.rank() != 2) throw InputError("mutual_information: expects a 2-axis joint law");
  Pmf pa = j.marginal(0), pb = j.marginal(1);
  double mi = entropy(pa) + entropy(pb) - entropy(j);
  return mi > 0.0 ? mi : 0.0;
}

double conditional_entropy(const JointPmf& j, std::size_t given_axis) {
  if (j.rank() != 2) throw InputError("conditional_entropy: expects a 2-axis joint law");
  if (given_axis > 1) throw InputError("conditional_entropy: bad axis");
  return entropy(j) - entropy(j.marginal(given_axis));
}

CapacityResult channel_capacity_ba(const TransitionMatrix& w, double tol, std::size_t max_iter,
                                   std::vector<double>* trace) {
  if (tol <= 0.0) throw InputError("channel_capacity_ba: tol must be positive");
  const std::size_t nx = w.rows(), ny = w.cols();
  if (trace) trace->clear();

  std::vector<double> p(nx, 1.0 / static_cast<double>(nx));
  std::vector<double> q(ny), d(nx);

  for (std::size_t it = 0; it < max_iter; ++it) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) q[y] += p[x] * w(x, y);

    // D_x = D(W(.|x) || q) in bits; rows with p_x = 0 still contribute to the
    // upper bound, so compute every row.
    double lower = 0.0, upper = -1.0;
    for (std::size_t x = 0; x < nx; ++x) {
      double dx = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        double wxy = w(x, y);
        if (wxy > 0.0) dx += wxy * std::log2(wxy / q[y]);
      }
      d[x] = dx;
      lower += p[x] * dx;
      upper = std::max(upper, dx);
    }
    if (trace) trace->push_back(lower);
    if (upper - lower <= tol) return {lower, Pmf(std::move(p))};

    double z = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      p[x] *= std::exp2(d[x]);
      z += p[x];
    }
    for (double& v : p) v /= z;
  }
  throw ConvergenceError("channel_capacity_ba: duality gap above tolerance after " +
                         std::to_string(max_iter) + " iterations");
}

MiEstimate plug_in_mi_estimate(const std::vector<std::pair<int, int>>& samples, std::size_t q1,
                               std::size_t q2) {
  if (samples.empty()) throw InputError("plug_in_mi_estimate: no samples");
  int max1 = -1, max2 = -1;
  for (const auto& [a, b] : samples) {
    if (a < 0 || b < 0) throw InputError("plug_in_mi_estimate: negative symbol");
    max1 = std::max(max1, a);
    max2 = std::max(max2, b);
  }
  if (q1 == 0) q1 = static_cast<std::size_t>(max1) + 1;
  if (q2 == 0) q2 = static_cast<std::size_t>(max2) + 1;
  if (static_cast<std::size_t>(max1) >= q1 || static_cast<std::size_t>(max2) >= q2)
    throw InputError("plug_in_mi_estimate: symbol outside declared alphabet");

  std::vector<double> joint(q1 * q2, 0.0);
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (const auto& [a, b] : samples)
    joint[static_cast<std::size_t>(a) * q2 + static_cast<std::size_t>(b)] += inv_n;

  double plug_in = mutual_information(JointPmf(std::move(joint), {q1, q2}));
  double bias = static_cast<double>((q1 - 1) * (q2 - 1)) /
                (2.0 * static_cast<double>(samples.size()) * kLn2);
  return {plug_in, plug_in - bias};
}

}  // namespace wiretap
