#include "doctest.h"

#include <cmath>
#include <vector>

#include "wiretap/errors.hpp"
#include "wiretap/lattice.hpp"

using namespace wiretap;

namespace {

// mpmath reference values.
constexpr double kPdfQuarterSigmaHalf = 0.999999994649424017852;  // wrapped pdf(0.25), sigma=0.5
constexpr double kEntropySigma03 = -0.0418948823919805950;        // h(integers, sigma=0.3), bits
constexpr double kGaussEntropy1em4 = -4.596760604594083593;       // (1/2) log2(2 pi e 1e-4)
constexpr double kEntropyM2 = 0.777837402335942;                  // G=[[2,.5],[0,1]], sigma^2=0.16
constexpr double kMinSingularG = 0.9616736381996076;

LatticeSpec unit_z(double s1 = 0.09) { return {1, {1.0}, 0.25, s1, 0.25}; }

LatticeSpec skew_g(double s1 = 0.16) { return {2, {2.0, 0.5, 0.0, 1.0}, 0.25, s1, 0.25}; }

}  // namespace

TEST_CASE("LatticeSpec geometry") {
  SUBCASE("one-dimensional integer lattice") {
    LatticeSpec spec = unit_z();
    CHECK(spec.volume == 1.0);
    CHECK(spec.circumradius() == 0.5);
    CHECK(spec.min_singular_value() == 1.0);
    CHECK(spec.g_inverse()[0] == 1.0);
  }
  SUBCASE("skew generator") {
    LatticeSpec spec = skew_g();
    CHECK(spec.volume == doctest::Approx(2.0).epsilon(1e-15));
    // farthest cell corner is G (1/2, 1/2) = (1.25, 0.5), norm sqrt(29)/4
    CHECK(spec.circumradius() == doctest::Approx(1.346291201783626).epsilon(1e-12));
    CHECK(spec.min_singular_value() == doctest::Approx(kMinSingularG).epsilon(1e-12));
    // G^{-1} G = I
    const auto& gi = spec.g_inverse();
    double prod[4] = {0, 0, 0, 0};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) prod[i * 2 + j] += gi[i * 2 + k] * spec.g[k * 2 + j];
    CHECK(prod[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(prod[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(prod[3] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("smallest singular value lower-bounds the image norm") {
    LatticeSpec spec = skew_g();
    for (int k = 0; k < 32; ++k) {
      double a = std::cos(0.196349540849362 * k), b = std::sin(0.196349540849362 * k);
      double gx = spec.g[0] * a + spec.g[1] * b, gy = spec.g[2] * a + spec.g[3] * b;
      CHECK(std::hypot(gx, gy) >= spec.min_singular_value() - 1e-12);
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(LatticeSpec(3, {1, 0, 0, 0, 1, 0, 0, 0, 1}, 1, 1, 1), InputError);
    CHECK_THROWS_AS(LatticeSpec(2, {1, 1, 1, 1}, 1, 1, 1), InputError);
    CHECK_THROWS_AS(LatticeSpec(1, {1.0, 2.0}, 1, 1, 1), InputError);
    CHECK_THROWS_AS(LatticeSpec(1, {1.0}, 0.0, 1, 1), InputError);
  }
}

TEST_CASE("mod_lambda_reduce") {
  SUBCASE("integer lattice residues live in [-1/2, 1/2)") {
    LatticeSpec spec = unit_z();
    CHECK(mod_lambda_reduce({0.7}, spec)[0] == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(mod_lambda_reduce({-1.3}, spec)[0] == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(mod_lambda_reduce({0.5}, spec)[0] == -0.5);  // half rounds down into the region
    CHECK(mod_lambda_reduce({-0.5}, spec)[0] == -0.5);
    CHECK(mod_lambda_reduce({1.0}, spec)[0] == 0.0);
    CHECK(mod_lambda_reduce({0.2}, spec)[0] == 0.2);
  }
  SUBCASE("scaled two-dimensional lattice") {
    LatticeSpec spec{2, {2.0, 0.0, 0.0, 2.0}, 0.25, 0.25, 0.25};
    auto r = mod_lambda_reduce({3.1, -2.9}, spec);
    CHECK(r[0] == doctest::Approx(-0.9).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(-0.9).epsilon(1e-12));
  }
  SUBCASE("skew lattice maps onto the known residue") {
    LatticeSpec spec = skew_g();
    // x = G (0.7, 0.6): coefficients reduce to (-0.3, -0.4)
    auto r = mod_lambda_reduce({2.0 * 0.7 + 0.5 * 0.6, 0.6}, spec);
    CHECK(r[0] == doctest::Approx(2.0 * -0.3 + 0.5 * -0.4).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(-0.4).epsilon(1e-12));
  }
  SUBCASE("idempotent over random points") {
    LatticeSpec spec = skew_g();
    Substream s(77, 0);
    for (int i = 0; i < 1000; ++i) {
      std::vector<double> x = {20.0 * (s.next_unit() - 0.5), 20.0 * (s.next_unit() - 0.5)};
      auto r1 = mod_lambda_reduce(x, spec);
      auto r2 = mod_lambda_reduce(r1, spec);
      CHECK(r2[0] == doctest::Approx(r1[0]).epsilon(1e-9));
      CHECK(r2[1] == doctest::Approx(r1[1]).epsilon(1e-9));
    }
  }
  SUBCASE("validation") {
    LatticeSpec spec = unit_z();
    CHECK_THROWS_AS(mod_lambda_reduce({0.1, 0.2}, spec), InputError);
    CHECK_THROWS_AS(mod_lambda_reduce({std::nan("")}, spec), InputError);
  }
}

TEST_CASE("wrapped Gaussian density") {
  SUBCASE("reference value at sigma = 0.5") {
    LatticeSpec spec = unit_z(0.25);
    CHECK(wrapped_gaussian_pdf({0.25}, spec, 0.25) ==
          doctest::Approx(kPdfQuarterSigmaHalf).epsilon(1e-12));
  }
  SUBCASE("symmetry and domain") {
    LatticeSpec spec = unit_z();
    WrappedGaussian wg(spec, 0.09);
    CHECK(wg.pdf({0.3}) == doctest::Approx(wg.pdf({-0.3})).epsilon(1e-12));
    CHECK(wg.term_count() >= 3);
    CHECK_THROWS_AS(wg.pdf({0.51}), InputError);
    CHECK_THROWS_AS(wg.pdf({0.1, 0.2}), InputError);
    CHECK_THROWS_AS(WrappedGaussian(spec, 0.0), InputError);
  }
  SUBCASE("huge noise flattens to the uniform density") {
    LatticeSpec spec = unit_z();
    WrappedGaussian wg(spec, 1e4);
    CHECK(wg.pdf({0.0}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(wg.pdf({0.49}) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("wrapped Gaussian mass and entropy") {
  LatticeSpec spec = unit_z();
  for (double s2 : {0.01, 0.09, 1.0})
    CHECK(wrapped_gaussian_mass(spec, s2) == doctest::Approx(1.0).epsilon(1e-8));

  CHECK(wrapped_gaussian_entropy(spec, 0.09) == doctest::Approx(kEntropySigma03).epsilon(1e-7));
  // narrow noise never wraps, so the differential entropy is the Gaussian one
  CHECK(wrapped_gaussian_entropy(spec, 1e-4) == doctest::Approx(kGaussEntropy1em4).epsilon(1e-6));

  SUBCASE("two-dimensional skew lattice") {
    LatticeSpec g2 = skew_g();
    CHECK(wrapped_gaussian_mass(g2, 0.16) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(wrapped_gaussian_entropy(g2, 0.16) == doctest::Approx(kEntropyM2).epsilon(1e-7));
  }
  SUBCASE("refinement cap triggers on unresolvable peaks") {
    CHECK_THROWS_AS(wrapped_gaussian_entropy(unit_z(), 1e-14), ConvergenceError);
  }
}

TEST_CASE("mod_lambda_capacity") {
  SUBCASE("narrow noise approaches the unwrapped closed form") {
    LatticeSpec spec = unit_z(1e-4);
    CHECK(mod_lambda_capacity(spec) == doctest::Approx(-kGaussEntropy1em4).epsilon(1e-6));
  }
  SUBCASE("wide noise drives the capacity to zero") {
    LatticeSpec spec = unit_z(1e4);
    double c = mod_lambda_capacity(spec);
    CHECK(c >= 0.0);
    CHECK(c <= 1e-6);
  }
  SUBCASE("monotone in the noise variance") {
    double c1 = mod_lambda_capacity(unit_z(0.01));
    double c2 = mod_lambda_capacity(unit_z(0.04));
    double c3 = mod_lambda_capacity(unit_z(0.09));
    CHECK(c1 > c2);
    CHECK(c2 > c3);
  }
  SUBCASE("volume term for the skew generator") {
    LatticeSpec spec = skew_g();
    double lhs = mod_lambda_capacity(spec);
    double rhs = std::log2(spec.volume) - wrapped_gaussian_entropy(spec, spec.sigma1_sq);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    CHECK(lhs == doctest::Approx(1.0 - kEntropyM2).epsilon(1e-7));
  }
}

TEST_CASE("lattice sampling") {
  SUBCASE("outputs stay in the fundamental region") {
    LatticeSpec spec = skew_g();
    Substream s(123, 0);
    std::vector<double> x = sample_uniform_omega(spec, 200, s);
    std::vector<double> x1 = sample_uniform_omega(spec, 200, s);
    LatticePairs out = sample_mod_lambda(spec, x, x1, s);
    const auto& gi = spec.g_inverse();
    for (std::size_t i = 0; i < 200; ++i)
      for (int d = 0; d < 2; ++d) {
        double u = gi[d * 2] * out.y[i * 2] + gi[d * 2 + 1] * out.y[i * 2 + 1];
        CHECK(u >= -0.5 - 1e-9);
        CHECK(u < 0.5 + 1e-9);
      }
  }
  SUBCASE("near-zero noise reduces to clean modulo addition") {
    LatticeSpec spec{1, {1.0}, 0.25, 1e-12, 1e-12};
    Substream s(5, 0);
    LatticePairs out = sample_mod_lambda(spec, {0.2}, {0.1}, s);
    CHECK(out.y[0] == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(out.z[0] == doctest::Approx(0.3).epsilon(1e-5));
  }
  SUBCASE("deterministic given the substream") {
    LatticeSpec spec = unit_z();
    Substream s1(9, 2), s2(9, 2);
    std::vector<double> x = {0.1, -0.2, 0.3}, x1 = {0.0, 0.25, -0.4};
    LatticePairs a = sample_mod_lambda(spec, x, x1, s1);
    LatticePairs b = sample_mod_lambda(spec, x, x1, s2);
    CHECK(a.y == b.y);
    CHECK(a.z == b.z);
  }
  SUBCASE("uniform sampling covers the region evenly") {
    LatticeSpec spec = unit_z();
    Substream s(31, 0);
    std::vector<double> pts = sample_uniform_omega(spec, 10000, s);
    double mean = 0.0, lo = 1.0, hi = -1.0;
    for (double v : pts) {
      mean += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(mean / 10000.0 == doctest::Approx(0.0).epsilon(0.01));
    CHECK(lo >= -0.5);
    CHECK(hi < 0.5);
  }
  SUBCASE("inputs must already be reduced") {
    LatticeSpec spec = unit_z();
    Substream s(1, 0);
    CHECK_THROWS_AS(sample_mod_lambda(spec, {0.7}, {0.0}, s), InputError);
    CHECK_THROWS_AS(sample_mod_lambda(spec, {0.1, 0.2}, {0.0}, s), InputError);
  }
}
