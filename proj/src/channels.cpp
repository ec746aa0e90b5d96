#include "wiretap/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wiretap/errors.hpp"

namespace wiretap {

namespace {

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 0.5))
    throw InputError(std::string(name) + " must lie in [0, 1/2], got " + std::to_string(p));
}

JointPmf bernoulli_pair_product(double p1, double p2) {
  std::vector<double> flat = {(1 - p1) * (1 - p2), (1 - p1) * p2, p1 * (1 - p2), p1 * p2};
  return JointPmf(std::move(flat), {2, 2});
}

// Joint of (base, base ^ flip) with flip ~ Bernoulli(f); axis order selects
// which coordinate is the base noise bit.
JointPmf bernoulli_pair_flip(double p_base, double f, bool base_first) {
  std::vector<double> flat(4, 0.0);
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t n = 0; n < 2; ++n) {
      double p = (b ? p_base : 1 - p_base) * (n ? f : 1 - f);
      std::size_t other = b ^ n;
      std::size_t i = base_first ? b * 2 + other : other * 2 + b;
      flat[i] += p;
    }
  return JointPmf(std::move(flat), {2, 2});
}

}  // namespace

ModAddChannelSpec::ModAddChannelSpec(std::size_t x_size, std::size_t x1_size, std::size_t y0_size,
                                     std::size_t y_size, std::size_t z_size, JointPmf noise)
    : x_size(x_size), x1_size(x1_size), y0_size(y0_size), y_size(y_size), z_size(z_size),
      noise_law(std::move(noise)) {
  if (x_size == 0 || x1_size == 0 || y0_size == 0 || y_size == 0 || z_size == 0)
    throw InputError("ModAddChannelSpec: alphabet sizes must be positive");
  if (x_size > y_size || x_size > z_size)
    throw InputError("ModAddChannelSpec: input alphabet must fit in both receiver alphabets");
  if (noise_law.rank() != 3 || noise_law.dims()[0] != y0_size || noise_law.dims()[1] != y_size ||
      noise_law.dims()[2] != z_size)
    throw InputError("ModAddChannelSpec: noise law dims must be (|Y0|, |Y|, |Z|)");
}

BscWiretapSpec::BscWiretapSpec(double eps, double delta, BscCorrelation correlation)
    : eps(eps), delta(delta), correlation(correlation) {
  check_prob(eps, "eps");
  check_prob(delta, "delta");
  switch (correlation) {
    case BscCorrelation::independent:
      break;
    case BscCorrelation::degraded_main:
      if (!(delta < eps))
        throw InputError("degraded_main requires delta < eps");
      break;
    case BscCorrelation::degraded_wiretap:
      if (!(eps < delta))
        throw InputError("degraded_wiretap requires eps < delta");
      break;
    case BscCorrelation::noiseless:
      if (eps != 0.0 || delta != 0.0)
        throw InputError("noiseless correlation requires eps = delta = 0");
      break;
    case BscCorrelation::custom:
      throw InputError("use BscWiretapSpec::custom for a user-supplied joint law");
  }
}

BscWiretapSpec BscWiretapSpec::custom(JointPmf n1n2) {
  if (n1n2.rank() != 2 || n1n2.dims()[0] != 2 || n1n2.dims()[1] != 2)
    throw InputError("custom correlation expects a 2x2 joint law over (N1, N2)");
  BscWiretapSpec spec(0.0, 0.0, BscCorrelation::independent);
  spec.correlation = BscCorrelation::custom;
  spec.eps = n1n2.marginal(0)[1];
  spec.delta = n1n2.marginal(1)[1];
  spec.custom_n1n2 = std::move(n1n2);
  return spec;
}

HalfDuplexParams::HalfDuplexParams(double mu, double t, double delta)
    : mu(mu), t(t), delta(delta), delta_hat(halfduplex_equivalent_wiretap(delta, t)) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw InputError("mu must lie in [0, 1]");
}

ForwardLaw::ForwardLaw(std::size_t x_size, std::size_t y_size, std::size_t z_size,
                       std::vector<double> p)
    : x_size_(x_size), y_size_(y_size), z_size_(z_size), p_(std::move(p)) {
  if (p_.size() != x_size_ * y_size_ * z_size_) throw InputError("ForwardLaw: size mismatch");
  for (std::size_t x = 0; x < x_size_; ++x) {
    std::vector<double> s(p_.begin() + static_cast<std::ptrdiff_t>(x * y_size_ * z_size_),
                          p_.begin() + static_cast<std::ptrdiff_t>((x + 1) * y_size_ * z_size_));
    JointPmf slice(std::move(s), {y_size_, z_size_});
    std::copy(slice.flat().begin(), slice.flat().end(),
              p_.begin() + static_cast<std::ptrdiff_t>(x * y_size_ * z_size_));
  }
}

JointPmf ForwardLaw::slice(std::size_t x) const {
  if (x >= x_size_) throw InputError("ForwardLaw::slice: x out of range");
  std::vector<double> s(p_.begin() + static_cast<std::ptrdiff_t>(x * y_size_ * z_size_),
                        p_.begin() + static_cast<std::ptrdiff_t>((x + 1) * y_size_ * z_size_));
  return JointPmf(std::move(s), {y_size_, z_size_});
}

JointPmf ForwardLaw::joint(const Pmf& p_x) const {
  if (p_x.size() != x_size_) throw InputError("ForwardLaw::joint: input pmf size mismatch");
  std::vector<double> flat(p_.size());
  for (std::size_t x = 0; x < x_size_; ++x)
    for (std::size_t i = 0; i < y_size_ * z_size_; ++i)
      flat[x * y_size_ * z_size_ + i] = p_x[x] * p_[x * y_size_ * z_size_ + i];
  return JointPmf(std::move(flat), {x_size_, y_size_, z_size_});
}

TransitionMatrix ForwardLaw::y_given_x() const {
  std::vector<double> w(x_size_ * y_size_, 0.0);
  for (std::size_t x = 0; x < x_size_; ++x)
    for (std::size_t y = 0; y < y_size_; ++y)
      for (std::size_t z = 0; z < z_size_; ++z) w[x * y_size_ + y] += at(x, y, z);
  return TransitionMatrix(x_size_, y_size_, std::move(w));
}

TransitionMatrix ForwardLaw::z_given_x() const {
  std::vector<double> w(x_size_ * z_size_, 0.0);
  for (std::size_t x = 0; x < x_size_; ++x)
    for (std::size_t y = 0; y < y_size_; ++y)
      for (std::size_t z = 0; z < z_size_; ++z) w[x * z_size_ + z] += at(x, y, z);
  return TransitionMatrix(x_size_, z_size_, std::move(w));
}

ModAddChannelSpec bsc_to_modadd(const BscWiretapSpec& spec) {
  JointPmf n1n2 = [&] {
    switch (spec.correlation) {
      case BscCorrelation::independent:
        return bernoulli_pair_product(spec.eps, spec.delta);
      case BscCorrelation::degraded_main:
        // N1 = N2 ^ N', Pr{N'=1} = (eps - delta) / (1 - 2*delta)
        return bernoulli_pair_flip(spec.delta, (spec.eps - spec.delta) / (1 - 2 * spec.delta),
                                   false);
      case BscCorrelation::degraded_wiretap:
        // N2 = N1 ^ N', Pr{N'=1} = (delta - eps) / (1 - 2*eps)
        return bernoulli_pair_flip(spec.eps, (spec.delta - spec.eps) / (1 - 2 * spec.eps), true);
      case BscCorrelation::noiseless:
        return JointPmf({1.0, 0.0, 0.0, 0.0}, {2, 2});
      case BscCorrelation::custom:
        return *spec.custom_n1n2;
    }
    throw InputError("unknown correlation");
  }();

  // N0 independent uniform; it never reaches either receiver.
  std::vector<double> flat(8);
  for (std::size_t n0 = 0; n0 < 2; ++n0)
    for (std::size_t n1 = 0; n1 < 2; ++n1)
      for (std::size_t n2 = 0; n2 < 2; ++n2)
        flat[(n0 * 2 + n1) * 2 + n2] = 0.5 * n1n2.at({n1, n2});
  return ModAddChannelSpec(2, 2, 2, 2, 2, JointPmf(std::move(flat), {2, 2, 2}));
}

ForwardLaw forward_law(const ModAddChannelSpec& spec, const Pmf& x1_pmf) {
  if (x1_pmf.size() != spec.x1_size) throw InputError("forward_law: x1 pmf size mismatch");
  JointPmf n1n2 = spec.n1n2_law();
  std::vector<double> p(spec.x_size * spec.y_size * spec.z_size, 0.0);
  for (std::size_t x = 0; x < spec.x_size; ++x)
    for (std::size_t x1 = 0; x1 < spec.x1_size; ++x1) {
      if (x1_pmf[x1] == 0.0) continue;
      for (std::size_t n1 = 0; n1 < spec.y_size; ++n1)
        for (std::size_t n2 = 0; n2 < spec.z_size; ++n2) {
          double w = x1_pmf[x1] * n1n2.at({n1, n2});
          if (w == 0.0) continue;
          std::size_t y = (x + x1 + n1) % spec.y_size;
          std::size_t z = (x + x1 + n2) % spec.z_size;
          p[(x * spec.y_size + y) * spec.z_size + z] += w;
        }
    }
  return ForwardLaw(spec.x_size, spec.y_size, spec.z_size, std::move(p));
}

std::size_t cancel_feedback(std::size_t y, std::size_t x1, std::size_t y_size) {
  if (y_size == 0) throw InputError("cancel_feedback: empty alphabet");
  if (y >= y_size) throw InputError("cancel_feedback: y out of range");
  return (y + y_size - x1 % y_size) % y_size;
}

TransitionMatrix halfduplex_equivalent_main(double eps, double t) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("eps must lie in [0, 1]");
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("t must lie in [0, 1]");
  double a = 1.0 - t;
  return TransitionMatrix(2, 3, {a * (1 - eps), t, a * eps, a * eps, t, a * (1 - eps)});
}

double halfduplex_equivalent_wiretap(double delta, double t) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::domain_error("delta must lie in [0, 1]");
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("t must lie in [0, 1]");
  return delta + t - 2.0 * delta * t;
}

DiscreteSampler::DiscreteSampler(const std::vector<double>& probs) {
  if (probs.empty()) throw InputError("DiscreteSampler: empty law");
  cdf_.reserve(probs.size());
  double acc = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw InputError("DiscreteSampler: negative mass");
    acc += p;
    cdf_.push_back(acc);
  }
  if (std::abs(acc - 1.0) > 1e-9) throw InputError("DiscreteSampler: law does not sum to 1");
  cdf_.back() = 1.0;
}

std::size_t DiscreteSampler::draw(Substream& stream) const {
  double u = stream.next_unit();
  return static_cast<std::size_t>(
      std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
}

SymbolTriples sample_symbols(const ModAddChannelSpec& spec, const std::vector<std::size_t>& x,
                             const std::vector<std::size_t>& x1, Substream& stream) {
  if (x.size() != x1.size()) throw InputError("sample_symbols: x and x1 lengths differ");
  for (std::size_t v : x)
    if (v >= spec.x_size) throw InputError("sample_symbols: x symbol out of range");
  for (std::size_t v : x1)
    if (v >= spec.x1_size) throw InputError("sample_symbols: x1 symbol out of range");

  DiscreteSampler noise(spec.noise_law.flat());
  std::size_t stride1 = spec.y_size * spec.z_size;
  SymbolTriples out;
  out.y0.resize(x.size());
  out.y.resize(x.size());
  out.z.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t k = noise.draw(stream);
    std::size_t n0 = k / stride1;
    std::size_t n1 = (k / spec.z_size) % spec.y_size;
    std::size_t n2 = k % spec.z_size;
    out.y0[i] = (x[i] + x1[i] + n0) % spec.y0_size;
    out.y[i] = (x[i] + x1[i] + n1) % spec.y_size;
    out.z[i] = (x[i] + x1[i] + n2) % spec.z_size;
  }
  return out;
}

}  // namespace wiretap
