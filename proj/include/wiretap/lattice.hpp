#pragma once

#include <cstddef>
#include <vector>

#include "wiretap/rng.hpp"

namespace wiretap {

/// Lattice {G u : u integer vector} with the centered fundamental
/// parallelepiped Omega = {G u : u in [-1/2, 1/2)^m} and per-dimension
/// Gaussian noise variances for the feedback link (0), destination (1) and
/// wiretapper (2).
struct LatticeSpec {
  std::size_t m;          // supported dimensions: 1 or 2
  std::vector<double> g;  // row-major m x m generator, full rank
  double volume;          // |det G|
  double sigma0_sq, sigma1_sq, sigma2_sq;

  LatticeSpec(std::size_t m, std::vector<double> g, double sigma0_sq, double sigma1_sq,
              double sigma2_sq);

  const std::vector<double>& g_inverse() const { return g_inv_; }
  /// Largest norm over Omega (attained at a corner); bounds how far any
  /// residue can sit from the origin.
  double circumradius() const { return circumradius_; }
  /// Smallest singular value of G; lower-bounds |G k| / |k|.
  double min_singular_value() const { return min_singular_; }

private:
  std::vector<double> g_inv_;
  double circumradius_, min_singular_;
};

/// Unique representative of x modulo the lattice inside Omega:
/// x - G * floor(G^{-1} x + 1/2) componentwise.
std::vector<double> mod_lambda_reduce(const std::vector<double>& x, const LatticeSpec& spec);

/// Gaussian density wrapped around the lattice, evaluated via a truncated
/// sum over lattice translates; precomputes the translate list so repeated
/// evaluation (quadrature, histograms) is cheap.
class WrappedGaussian {
public:
  WrappedGaussian(const LatticeSpec& spec, double sigma_sq);
  /// Density at a point of Omega; relative truncation error below 1e-14.
  double pdf(const std::vector<double>& n_prime) const;
  std::size_t term_count() const { return offsets_.size() / m_; }

private:
  std::size_t m_;
  double inv_two_sigma_sq_, coef_;
  std::vector<double> offsets_;  // row-major lattice translates
  std::vector<double> g_inv_;
  double check_tol_;
};

/// Density of Gaussian noise with variance sigma_sq per dimension reduced
/// into Omega, at a single point.
double wrapped_gaussian_pdf(const std::vector<double>& n_prime, const LatticeSpec& spec,
                            double sigma_sq);

/// Differential entropy (bits) of the wrapped noise: -integral over Omega of
/// f log2 f, by midpoint quadrature with grid doubling until successive
/// estimates agree within 1e-8 bits.
double wrapped_gaussian_entropy(const LatticeSpec& spec, double sigma_sq);

/// Numerical integral of the wrapped density over Omega; equals 1 up to
/// quadrature error (exposed for validation).
double wrapped_gaussian_mass(const LatticeSpec& spec, double sigma_sq);

/// Feedback secrecy capacity of the modulo-lattice channel:
/// log2 V - h(noise with sigma1_sq); depends on the main-channel noise only.
double mod_lambda_capacity(const LatticeSpec& spec);

struct LatticePairs {
  std::vector<double> y, z;  // row-major, m coordinates per sample
};

/// Pushes samples through y = (x + x1 + N1) mod Lambda and
/// z = (x + x1 + N2) mod Lambda with independent per-dimension Gaussians.
LatticePairs sample_mod_lambda(const LatticeSpec& spec, const std::vector<double>& x,
                               const std::vector<double>& x1, Substream& stream);

/// count points drawn uniformly from Omega, row-major.
std::vector<double> sample_uniform_omega(const LatticeSpec& spec, std::size_t count,
                                         Substream& stream);

}  // namespace wiretap
