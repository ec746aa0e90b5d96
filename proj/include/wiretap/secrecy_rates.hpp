#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "wiretap/channels.hpp"
#include "wiretap/info_theory.hpp"

namespace wiretap {

enum class Scheme {
  no_feedback,
  public_lower,
  public_upper,
  public_closed_form,
  full_duplex,
  half_duplex,
  half_duplex_general,
};

const char* scheme_name(Scheme s);

struct AchievingParams {
  std::optional<Pmf> input;     // P_X
  std::optional<double> mu, t;  // half-duplex operating point
  std::optional<Pmf> x1_input;  // P_X1
};

struct RateReport {
  Scheme scheme;
  double rate_bits;  // clamped >= 0
  std::optional<AchievingParams> achieving;
  std::string notes;
};

/// Maximizes f over the probability simplex on d atoms: composition grid with
/// grid_steps per dimension, then pairwise mass-transfer descent with step
/// halving down to refine_tol. Heuristic global search; exact on the cases
/// with known optima exercised by the tests.
std::pair<double, Pmf> maximize_over_simplex(std::size_t d,
                                             const std::function<double(const Pmf&)>& f,
                                             std::size_t grid_steps, double refine_tol = 1e-9);

/// max over P_X of [I(X;Y) - I(X;Z)]+ with the feedback input silent; a lower
/// bound on the no-feedback secrecy capacity (no channel prefixing).
RateReport no_feedback_secrecy_lower(const ModAddChannelSpec& spec, std::size_t grid_steps);

/// Secret-key capacity bounds for public discussion over an authenticated
/// noiseless channel: lower = max{max_P [I(X;Y)-I(X;Z)], max_P [I(X;Y)-I(Y;Z)]},
/// upper = min{max_P I(X;Y), max_P I(X;Y|Z)}.
std::pair<RateReport, RateReport> public_discussion_bounds(const ModAddChannelSpec& spec,
                                                           std::size_t grid_steps);

/// With full-duplex feedback the secrecy capacity equals the main-channel
/// capacity; computed by Blahut-Arimoto on P(y|x) with the feedback silent.
RateReport full_duplex_secrecy_capacity(const ModAddChannelSpec& spec);

/// Achievable half-duplex rate at a fixed operating point:
/// [(1-t)(H(eps*mu mix) - H(eps)) - (H(delta_hat*mu mix) - H(delta_hat))]+
/// where delta_hat = delta + t - 2*delta*t.
double halfduplex_rate(double eps, double delta, double mu, double t);

/// Same expression without the outer clamp; used by the optimizer so the
/// clamp applies after the max.
double halfduplex_rate_raw(double eps, double delta, double mu, double t);

/// Grid search over (mu, t) with coordinate-wise golden-section refinement.
RateReport halfduplex_optimize(double eps, double delta, std::size_t grid = 64,
                               double refine_tol = 1e-9);

/// Listen/transmit rate for general modulo-additive alphabets: destination
/// output erased whenever X1 != 0, wiretapper sees x + x1 + n2; returns
/// [I(X;Yhat) - I(X;Z)]+ for the given input and feedback laws.
double halfduplex_general_rate(const ModAddChannelSpec& spec, const Pmf& p_x, const Pmf& p_x1);

}  // namespace wiretap
