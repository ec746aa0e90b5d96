#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wiretap/info_theory.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

/// Modulo-additive broadcast channel with a feedback link.
///
/// Per symbol: y0 = (x + x1 + n0) mod |Y0| at the source, y = (x + x1 + n1)
/// mod |Y| at the destination, z = (x + x1 + n2) mod |Z| at the wiretapper,
/// with (n0, n1, n2) drawn i.i.d. from noise_law. x1 is chosen by the
/// destination (the feedback signal).
struct ModAddChannelSpec {
  std::size_t x_size, x1_size, y0_size, y_size, z_size;
  JointPmf noise_law;  // dims (y0_size, y_size, z_size) over (N0, N1, N2)

  ModAddChannelSpec(std::size_t x_size, std::size_t x1_size, std::size_t y0_size,
                    std::size_t y_size, std::size_t z_size, JointPmf noise_law);

  /// Noise marginal over (N1, N2) only; N0 never enters the receiver laws.
  JointPmf n1n2_law() const { return noise_law.marginal_pair(1, 2); }
};

enum class BscCorrelation { independent, degraded_main, degraded_wiretap, noiseless, custom };

/// Binary wiretap setting: main channel BSC(eps), wiretap channel BSC(delta),
/// with one of the named correlation structures between the two noise bits.
struct BscWiretapSpec {
  double eps;    // Pr{N1 = 1}
  double delta;  // Pr{N2 = 1}
  BscCorrelation correlation;
  std::optional<JointPmf> custom_n1n2;  // dims (2,2), set iff correlation == custom

  BscWiretapSpec(double eps, double delta, BscCorrelation correlation);

  /// eps and delta are taken from the marginals of the supplied joint.
  static BscWiretapSpec custom(JointPmf n1n2);
};

/// Half-duplex operating point: input bias mu = Pr{X=1}, feedback fraction t,
/// and the induced wiretapper flip probability delta_hat = delta + t - 2*delta*t.
struct HalfDuplexParams {
  double mu, t, delta, delta_hat;

  HalfDuplexParams(double mu, double t, double delta);
};

/// Conditional law P(y, z | x) of a modulo-additive spec under a fixed
/// feedback distribution; slice x is a valid Pmf over (Y, Z) pairs.
class ForwardLaw {
public:
  ForwardLaw(std::size_t x_size, std::size_t y_size, std::size_t z_size,
             std::vector<double> p);

  std::size_t x_size() const { return x_size_; }
  std::size_t y_size() const { return y_size_; }
  std::size_t z_size() const { return z_size_; }
  double at(std::size_t x, std::size_t y, std::size_t z) const {
    return p_[(x * y_size_ + y) * z_size_ + z];
  }

  /// P(y,z|x) as a 2-axis joint law for one x.
  JointPmf slice(std::size_t x) const;
  /// Full 3-axis joint P(x,y,z) under the given input law.
  JointPmf joint(const Pmf& p_x) const;
  TransitionMatrix y_given_x() const;
  TransitionMatrix z_given_x() const;

private:
  std::size_t x_size_, y_size_, z_size_;
  std::vector<double> p_;
};

/// Expands a binary wiretap setting into the modulo-additive data model
/// (all alphabets binary, N0 independent uniform).
ModAddChannelSpec bsc_to_modadd(const BscWiretapSpec& spec);

/// P(y, z | x) = sum_{x1,n1,n2} x1_pmf(x1) P(n1,n2) over the two modulo
/// addition equations.
ForwardLaw forward_law(const ModAddChannelSpec& spec, const Pmf& x1_pmf);

/// (y - x1) mod y_size; inverts the feedback addition at the destination.
std::size_t cancel_feedback(std::size_t y, std::size_t x1, std::size_t y_size);

/// 2-input, 3-output law of the half-duplex destination channel; outputs
/// ordered {0, erasure, 1} with the erasure at index 1.
TransitionMatrix halfduplex_equivalent_main(double eps, double t);

/// Effective wiretapper flip probability delta + t - 2*delta*t.
double halfduplex_equivalent_wiretap(double delta, double t);

struct SymbolTriples {
  std::vector<std::size_t> y0, y, z;
};

/// Pushes (x, x1) symbol vectors through the channel with i.i.d. noise drawn
/// from the channel's noise law; deterministic given the stream state.
SymbolTriples sample_symbols(const ModAddChannelSpec& spec, const std::vector<std::size_t>& x,
                             const std::vector<std::size_t>& x1, Substream& stream);

/// Cumulative-table sampler for repeated draws from one finite law.
class DiscreteSampler {
public:
  explicit DiscreteSampler(const std::vector<double>& probs);
  std::size_t draw(Substream& stream) const;

private:
  std::vector<double> cdf_;
};

}  // namespace wiretap
