#include "wiretap/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wiretap/errors.hpp"

namespace wiretap {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOmegaTol = 1e-9;

void matvec(const std::vector<double>& a, std::size_t m, const double* x, double* out) {
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += a[i * m + j] * x[j];
    out[i] = s;
  }
}

bool in_omega(const std::vector<double>& g_inv, std::size_t m, const double* x, double tol) {
  double u[2];
  matvec(g_inv, m, x, u);
  for (std::size_t i = 0; i < m; ++i)
    if (!(u[i] >= -0.5 - tol && u[i] < 0.5 + tol)) return false;
  return true;
}

}  // namespace

LatticeSpec::LatticeSpec(std::size_t m, std::vector<double> g, double sigma0_sq, double sigma1_sq,
                         double sigma2_sq)
    : m(m), g(std::move(g)), sigma0_sq(sigma0_sq), sigma1_sq(sigma1_sq), sigma2_sq(sigma2_sq) {
  if (m != 1 && m != 2) throw InputError("LatticeSpec: supported dimensions are 1 and 2");
  if (this->g.size() != m * m) throw InputError("LatticeSpec: generator must be m x m");
  for (double v : this->g)
    if (!std::isfinite(v)) throw InputError("LatticeSpec: non-finite generator entry");
  if (!(sigma0_sq > 0.0 && sigma1_sq > 0.0 && sigma2_sq > 0.0))
    throw InputError("LatticeSpec: noise variances must be positive");

  double det = m == 1 ? this->g[0] : this->g[0] * this->g[3] - this->g[1] * this->g[2];
  if (det == 0.0 || !std::isfinite(det)) throw InputError("LatticeSpec: generator is singular");
  volume = std::abs(det);

  if (m == 1) {
    g_inv_ = {1.0 / this->g[0]};
    circumradius_ = 0.5 * std::abs(this->g[0]);
    min_singular_ = std::abs(this->g[0]);
  } else {
    g_inv_ = {this->g[3] / det, -this->g[1] / det, -this->g[2] / det, this->g[0] / det};
    circumradius_ = 0.0;
    for (int sx : {-1, 1})
      for (int sy : {-1, 1}) {
        double cx = 0.5 * (sx * this->g[0] + sy * this->g[1]);
        double cy = 0.5 * (sx * this->g[2] + sy * this->g[3]);
        circumradius_ = std::max(circumradius_, std::hypot(cx, cy));
      }
    // Singular values from the eigenvalues of G^T G.
    double a = this->g[0] * this->g[0] + this->g[2] * this->g[2];
    double b = this->g[0] * this->g[1] + this->g[2] * this->g[3];
    double c = this->g[1] * this->g[1] + this->g[3] * this->g[3];
    double tr = a + c, disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4.0 * b * b));
    min_singular_ = std::sqrt(std::max(0.0, 0.5 * (tr - disc)));
  }
  if (min_singular_ <= 0.0) throw InputError("LatticeSpec: generator is numerically singular");
}

std::vector<double> mod_lambda_reduce(const std::vector<double>& x, const LatticeSpec& spec) {
  if (x.size() != spec.m) throw InputError("mod_lambda_reduce: dimension mismatch");
  for (double v : x)
    if (!std::isfinite(v)) throw InputError("mod_lambda_reduce: non-finite input");
  double u[2], k[2];
  matvec(spec.g_inverse(), spec.m, x.data(), u);
  for (std::size_t i = 0; i < spec.m; ++i) k[i] = std::floor(u[i] + 0.5);
  double gk[2];
  matvec(spec.g, spec.m, k, gk);
  std::vector<double> out(spec.m);
  for (std::size_t i = 0; i < spec.m; ++i) out[i] = x[i] - gk[i];
  return out;
}

WrappedGaussian::WrappedGaussian(const LatticeSpec& spec, double sigma_sq)
    : m_(spec.m), g_inv_(spec.g_inverse()), check_tol_(kOmegaTol) {
  if (!(sigma_sq > 0.0)) throw InputError("WrappedGaussian: sigma_sq must be positive");
  inv_two_sigma_sq_ = 1.0 / (2.0 * sigma_sq);
  coef_ = std::pow(2.0 * kPi * sigma_sq, -0.5 * static_cast<double>(m_));

  // Keep every translate b with |b| <= 10 sigma sqrt(m) + 2 circumradius;
  // then |n' + b| <= 10 sigma sqrt(m) + circumradius is covered for every
  // n' in Omega, and the discarded Gaussian tail is below 1e-14 relative.
  double radius = 10.0 * std::sqrt(sigma_sq * static_cast<double>(m_)) + 2.0 * spec.circumradius();
  auto k_max = static_cast<long>(std::ceil(radius / spec.min_singular_value())) + 1;
  if (m_ == 1) {
    for (long k = -k_max; k <= k_max; ++k) offsets_.push_back(spec.g[0] * static_cast<double>(k));
  } else {
    for (long k1 = -k_max; k1 <= k_max; ++k1)
      for (long k2 = -k_max; k2 <= k_max; ++k2) {
        double kv[2] = {static_cast<double>(k1), static_cast<double>(k2)};
        double b[2];
        matvec(spec.g, 2, kv, b);
        if (std::hypot(b[0], b[1]) <= radius + 1e-12) {
          offsets_.push_back(b[0]);
          offsets_.push_back(b[1]);
        }
      }
  }
}

double WrappedGaussian::pdf(const std::vector<double>& n_prime) const {
  if (n_prime.size() != m_) throw InputError("WrappedGaussian::pdf: dimension mismatch");
  if (!in_omega(g_inv_, m_, n_prime.data(), check_tol_))
    throw InputError("WrappedGaussian::pdf: point outside the fundamental region");
  double sum = 0.0;
  if (m_ == 1) {
    double x = n_prime[0];
    for (double b : offsets_) {
      double d = x + b;
      sum += std::exp(-d * d * inv_two_sigma_sq_);
    }
  } else {
    double x0 = n_prime[0], x1 = n_prime[1];
    for (std::size_t i = 0; i < offsets_.size(); i += 2) {
      double d0 = x0 + offsets_[i], d1 = x1 + offsets_[i + 1];
      sum += std::exp(-(d0 * d0 + d1 * d1) * inv_two_sigma_sq_);
    }
  }
  return coef_ * sum;
}

double wrapped_gaussian_pdf(const std::vector<double>& n_prime, const LatticeSpec& spec,
                            double sigma_sq) {
  return WrappedGaussian(spec, sigma_sq).pdf(n_prime);
}

namespace {

// Midpoint quadrature over Omega of a pointwise functional of the density,
// doubling the per-axis grid until two successive estimates agree. The density
// integrates to 1 over Omega, so a grid whose sampled mass is far from 1 has
// not resolved it yet (e.g. a spike between grid points), no matter how well
// successive estimates agree.
double omega_quadrature(const LatticeSpec& spec, const WrappedGaussian& wg,
                        double (*integrand)(double), double tol) {
  const std::size_t n_start = 16;
  const std::size_t n_cap = spec.m == 1 ? (1u << 22) : 4096;
  const double mass_gate = 1e-6;
  double prev = 0.0;
  bool have_prev = false;
  std::vector<double> pt(spec.m);
  for (std::size_t n = n_start; n <= n_cap; n *= 2) {
    double cell = spec.volume;
    for (std::size_t i = 0; i < spec.m; ++i) cell /= static_cast<double>(n);
    double acc = 0.0, acc_mass = 0.0;
    if (spec.m == 1) {
      for (std::size_t i = 0; i < n; ++i) {
        double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n) - 0.5;
        pt[0] = spec.g[0] * u;
        double f = wg.pdf(pt);
        acc += integrand(f);
        acc_mass += f;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        double u0 = (static_cast<double>(i) + 0.5) / static_cast<double>(n) - 0.5;
        for (std::size_t j = 0; j < n; ++j) {
          double u1 = (static_cast<double>(j) + 0.5) / static_cast<double>(n) - 0.5;
          pt[0] = spec.g[0] * u0 + spec.g[1] * u1;
          pt[1] = spec.g[2] * u0 + spec.g[3] * u1;
          double f = wg.pdf(pt);
          acc += integrand(f);
          acc_mass += f;
        }
      }
    }
    double est = acc * cell;
    if (have_prev && std::abs(est - prev) < tol && std::abs(acc_mass * cell - 1.0) < mass_gate)
      return est;
    prev = est;
    have_prev = true;
  }
  throw ConvergenceError("lattice quadrature did not settle within the refinement cap");
}

double neg_f_log2_f(double f) { return f > 0.0 ? -f * std::log2(f) : 0.0; }
double identity_f(double f) { return f; }

}  // namespace

double wrapped_gaussian_entropy(const LatticeSpec& spec, double sigma_sq) {
  WrappedGaussian wg(spec, sigma_sq);
  return omega_quadrature(spec, wg, neg_f_log2_f, 1e-8);
}

double wrapped_gaussian_mass(const LatticeSpec& spec, double sigma_sq) {
  WrappedGaussian wg(spec, sigma_sq);
  return omega_quadrature(spec, wg, identity_f, 1e-9);
}

double mod_lambda_capacity(const LatticeSpec& spec) {
  double c = std::log2(spec.volume) - wrapped_gaussian_entropy(spec, spec.sigma1_sq);
  if (c < 0.0 && c > -1e-8) c = 0.0;
  return c;
}

LatticePairs sample_mod_lambda(const LatticeSpec& spec, const std::vector<double>& x,
                               const std::vector<double>& x1, Substream& stream) {
  if (x.size() != x1.size()) throw InputError("sample_mod_lambda: x and x1 lengths differ");
  if (x.size() % spec.m != 0) throw InputError("sample_mod_lambda: length not a multiple of m");
  const std::size_t count = x.size() / spec.m;
  const auto idx = [&](std::size_t i, std::size_t d) { return i * spec.m + d; };
  const double s1 = std::sqrt(spec.sigma1_sq), s2 = std::sqrt(spec.sigma2_sq);
  LatticePairs out;
  out.y.resize(x.size());
  out.z.resize(x.size());
  std::vector<double> base(spec.m), noisy(spec.m);
  for (std::size_t i = 0; i < count; ++i) {
    if (!in_omega(spec.g_inverse(), spec.m, x.data() + i * spec.m, kOmegaTol) ||
        !in_omega(spec.g_inverse(), spec.m, x1.data() + i * spec.m, kOmegaTol))
      throw InputError("sample_mod_lambda: inputs must lie in the fundamental region");
    for (std::size_t d = 0; d < spec.m; ++d) base[d] = x[idx(i, d)] + x1[idx(i, d)];
    for (std::size_t d = 0; d < spec.m; ++d) noisy[d] = base[d] + s1 * stream.next_gauss();
    auto yr = mod_lambda_reduce(noisy, spec);
    for (std::size_t d = 0; d < spec.m; ++d) noisy[d] = base[d] + s2 * stream.next_gauss();
    auto zr = mod_lambda_reduce(noisy, spec);
    for (std::size_t d = 0; d < spec.m; ++d) {
      out.y[i * spec.m + d] = yr[d];
      out.z[i * spec.m + d] = zr[d];
    }
  }
  return out;
}

std::vector<double> sample_uniform_omega(const LatticeSpec& spec, std::size_t count,
                                         Substream& stream) {
  std::vector<double> out(count * spec.m);
  double u[2], p[2];
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t d = 0; d < spec.m; ++d) u[d] = stream.next_unit() - 0.5;
    matvec(spec.g, spec.m, u, p);
    for (std::size_t d = 0; d < spec.m; ++d) out[i * spec.m + d] = p[d];
  }
  return out;
}

}  // namespace wiretap
