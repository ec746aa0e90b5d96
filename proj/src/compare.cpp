#include "wiretap/compare.hpp"

#include <cmath>

namespace wiretap {

namespace {

// Flip probability of `other` relative to `base` must not depend on the base
// bit; conditions with (almost) no mass are vacuous.
bool conditional_flip_constant(const JointPmf& j, std::size_t base_axis, double tol) {
  Pmf base = j.marginal(base_axis);
  double flip[2] = {0.0, 0.0};
  bool seen[2] = {false, false};
  for (std::size_t b = 0; b < 2; ++b) {
    if (base[b] <= tol) continue;
    std::size_t other = 1 - b;  // flipped value of the other coordinate
    double p = base_axis == 0 ? j.at({b, other}) : j.at({other, b});
    flip[b] = p / base[b];
    seen[b] = true;
  }
  if (seen[0] && seen[1]) return std::abs(flip[0] - flip[1]) <= tol;
  return true;  // at most one base value occurs; a flip variable always exists
}

}  // namespace

BinaryStructure detect_binary_structure(const ModAddChannelSpec& spec, double tol) {
  BinaryStructure s;
  if (spec.x_size != 2 || spec.x1_size != 2 || spec.y0_size != 2 || spec.y_size != 2 ||
      spec.z_size != 2)
    return s;
  s.binary = true;
  JointPmf j = spec.n1n2_law();
  s.eps = j.marginal(0)[1];
  s.delta = j.marginal(1)[1];

  s.noiseless = std::abs(j.at({0, 0}) - 1.0) <= tol;
  s.independent = true;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      double pa = a ? s.eps : 1 - s.eps, pb = b ? s.delta : 1 - s.delta;
      if (std::abs(j.at({a, b}) - pa * pb) > tol) s.independent = false;
    }
  s.degraded_main = conditional_flip_constant(j, 1, tol);
  s.degraded_wiretap = conditional_flip_constant(j, 0, tol);
  return s;
}

CompareRow build_compare_row(const BscWiretapSpec& bsc, std::size_t grid_steps) {
  ModAddChannelSpec spec = bsc_to_modadd(bsc);
  CompareRow row;
  row.eps = spec.n1n2_law().marginal(0)[1];
  row.delta = spec.n1n2_law().marginal(1)[1];
  row.c_s = no_feedback_secrecy_lower(spec, grid_steps).rate_bits;
  auto [lo, hi] = public_discussion_bounds(spec, grid_steps);
  row.c_sp_lower = lo.rate_bits;
  row.c_sp_upper = hi.rate_bits;
  row.c_sp_tight = std::abs(hi.rate_bits - lo.rate_bits) <= 1e-9;
  row.c_sf = full_duplex_secrecy_capacity(spec).rate_bits;
  RateReport hd = halfduplex_optimize(row.eps, row.delta);
  row.hd_rate = hd.rate_bits;
  row.hd_mu = *hd.achieving->mu;
  row.hd_t = *hd.achieving->t;
  row.structure = detect_binary_structure(spec);
  return row;
}

}  // namespace wiretap
