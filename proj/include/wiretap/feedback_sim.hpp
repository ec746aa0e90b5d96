#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wiretap/channels.hpp"
#include "wiretap/info_theory.hpp"
#include "wiretap/lattice.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

struct Codebook {
  std::size_t m_size, n;
  std::vector<std::size_t> words;  // row-major m_size x n
  Pmf source_pmf;
  std::uint64_t seed;

  const std::size_t* word(std::size_t w) const { return words.data() + w * n; }
};

/// i.i.d. codebook, bit-exactly regenerable from (seed, source_pmf, M, n).
Codebook generate_codebook(std::size_t m_size, std::size_t n, const Pmf& source_pmf,
                           std::uint64_t seed);

enum class SimScheme { full_duplex, half_duplex, mod_lambda };

const char* sim_scheme_name(SimScheme s);

struct SimConfig {
  SimScheme scheme;
  std::size_t n;       // blocklength (symbols per trial)
  std::size_t m_size;  // number of messages
  std::size_t trials;
  std::uint64_t seed;
  std::optional<double> t;  // half-duplex feedback fraction
  std::optional<ModAddChannelSpec> channel;
  std::optional<LatticeSpec> lattice;
  unsigned threads = 1;  // reporting is independent of this value

  void validate() const;
};

struct SimReport {
  double p_e_hat, ci_lo, ci_hi;  // headline error/flip rate with Wilson 95% CI
  double chi2_stat, chi2_pvalue;  // uniformity of collected wiretapper symbols
  double mi_bits, mi_corrected;   // plug-in MI and Miller-Madow corrected
  std::size_t trials;
  std::uint64_t seed;
};

/// Destination-key scheme end to end: uniform feedback word as a one-time
/// pad, modulo cancellation, ML decoding against the codebook. Reports the
/// decoding error rate, uniformity of the wiretapper's symbols, and the MI
/// between the message and a bounded wiretapper digest (first <= 8 symbols).
SimReport run_full_duplex(const SimConfig& config);

struct HalfDuplexSimResult {
  SimReport report;              // p_e_hat = wiretap flip rate vs x
  TransitionMatrix empirical_main;  // 2 x {0, erasure, 1}
  double linf_vs_analytic;       // against halfduplex_equivalent_main
  double empirical_flip, expected_flip;  // vs delta + t - 2 delta t
};

/// Listen/transmit simulation: destination transmits with probability t
/// (erasing its own reception); collects the empirical destination channel
/// matrix and the wiretapper flip rate. Binary alphabets only.
HalfDuplexSimResult run_half_duplex(const SimConfig& config);

/// Modulo-lattice variant of the destination-key scheme: messages mapped to
/// a fixed constellation in the fundamental region, per-symbol uniform key,
/// wrapped-Gaussian ML decoding; wiretapper symbols binned for the
/// uniformity and digest-MI checks.
SimReport run_mod_lambda(const SimConfig& config);

struct ExactSmallSystem {
  double exact_p_e;
  double exact_mi_w_z_bits;
};

/// Exact enumeration of the full joint law of (message, wiretapper vector)
/// and of the ML error probability; feasible only for tiny instances
/// (budget: M * (|X1| |Z|)^n + M * |Y|^n <= 2^20 terms).
ExactSmallSystem exact_small_system(const Codebook& codebook, const ModAddChannelSpec& spec,
                                    const Pmf& feedback_pmf);

/// Pearson chi-squared test of samples against the uniform law on {0..q-1}.
std::pair<double, double> chi_squared_uniformity(const std::vector<std::size_t>& samples,
                                                 std::size_t q);

/// Same test from a precomputed count vector.
std::pair<double, double> chi_squared_from_counts(const std::vector<std::uint64_t>& counts);

/// Upper tail of the chi-squared distribution with dof degrees of freedom.
double chi_squared_sf(double stat, double dof);

/// Regularized upper incomplete gamma Q(a, x), series/continued-fraction.
double regularized_gamma_q(double a, double x);

/// Wilson 95% score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

}  // namespace wiretap
