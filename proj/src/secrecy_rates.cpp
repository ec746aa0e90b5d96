#include "wiretap/secrecy_rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "wiretap/errors.hpp"

namespace wiretap {

namespace {

constexpr std::size_t kMaxInputAlphabet = 4;

void check_alphabet(const ModAddChannelSpec& spec) {
  if (spec.x_size > kMaxInputAlphabet)
    throw InputError("input alphabet larger than " + std::to_string(kMaxInputAlphabet) +
                     ": simplex search is exponential in |X|");
}

std::string format_sig12(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Enumerates all compositions of `steps` into d parts and calls visit on the
// normalized pmf vector.
void for_each_grid_point(std::size_t d, std::size_t steps,
                         const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<std::size_t> parts(d, 0);
  std::vector<double> probs(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t axis, std::size_t left) {
    if (axis == d - 1) {
      parts[axis] = left;
      for (std::size_t i = 0; i < d; ++i)
        probs[i] = static_cast<double>(parts[i]) / static_cast<double>(steps);
      visit(probs);
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      parts[axis] = k;
      rec(axis + 1, left - k);
    }
  };
  rec(0, steps);
}

double mix(double a, double b) { return a + b - 2.0 * a * b; }

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::domain_error(std::string(name) + " must lie in [0, 1]");
}

// Golden-section maximization of f on [lo, hi] to x-tolerance xtol.
double golden_max(double lo, double hi, const std::function<double(double)>& f, double xtol) {
  const double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

struct MiParts {
  double ixy, ixz, iyz, ixy_given_z;
};

MiParts mi_parts(const ForwardLaw& fl, const Pmf& px) {
  JointPmf j = fl.joint(px);
  double h_xyz = entropy(j);
  double h_z = entropy(j.marginal(2));
  JointPmf xy = j.marginal_pair(0, 1), xz = j.marginal_pair(0, 2), yz = j.marginal_pair(1, 2);
  MiParts out;
  out.ixy = mutual_information(xy);
  out.ixz = mutual_information(xz);
  out.iyz = mutual_information(yz);
  out.ixy_given_z = entropy(xz) + entropy(yz) - h_z - h_xyz;
  if (out.ixy_given_z < 0.0) out.ixy_given_z = 0.0;
  return out;
}

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::no_feedback: return "no_feedback";
    case Scheme::public_lower: return "public_lower";
    case Scheme::public_upper: return "public_upper";
    case Scheme::public_closed_form: return "public_closed_form";
    case Scheme::full_duplex: return "full_duplex";
    case Scheme::half_duplex: return "half_duplex";
    case Scheme::half_duplex_general: return "half_duplex_general";
  }
  return "unknown";
}

std::pair<double, Pmf> maximize_over_simplex(std::size_t d,
                                             const std::function<double(const Pmf&)>& f,
                                             std::size_t grid_steps, double refine_tol) {
  if (d == 0) throw InputError("maximize_over_simplex: empty simplex");
  if (grid_steps < 2) throw InputError("maximize_over_simplex: grid_steps must be >= 2");
  if (!(refine_tol > 0.0)) throw InputError("maximize_over_simplex: refine_tol must be positive");

  std::vector<double> best_p(d, 0.0);
  double best = -1e300;
  for_each_grid_point(d, grid_steps, [&](const std::vector<double>& probs) {
    double v = f(Pmf(probs));
    if (v > best) {
      best = v;
      best_p = probs;
    }
  });

  // Pairwise mass-transfer polish with step halving.
  double step = 1.0 / static_cast<double>(grid_steps);
  while (step > refine_tol) {
    bool improved = false;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (i == j || best_p[i] == 0.0) continue;
        double delta = std::min(step, best_p[i]);
        std::vector<double> cand = best_p;
        cand[i] -= delta;
        cand[j] += delta;
        double v = f(Pmf(cand));
        if (v > best) {
          best = v;
          best_p = std::move(cand);
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return {best, Pmf(best_p)};
}

RateReport no_feedback_secrecy_lower(const ModAddChannelSpec& spec, std::size_t grid_steps) {
  check_alphabet(spec);
  ForwardLaw fl = forward_law(spec, Pmf::point_mass(0, spec.x1_size));
  auto [val, px] = maximize_over_simplex(
      spec.x_size,
      [&](const Pmf& p) {
        MiParts m = mi_parts(fl, p);
        return m.ixy - m.ixz;
      },
      grid_steps);
  RateReport r;
  r.scheme = Scheme::no_feedback;
  r.rate_bits = std::max(0.0, val);
  r.achieving = AchievingParams{px, std::nullopt, std::nullopt, std::nullopt};
  r.notes = "lower bound: auxiliary input restricted to the channel input (no channel prefixing)";
  return r;
}

std::pair<RateReport, RateReport> public_discussion_bounds(const ModAddChannelSpec& spec,
                                                           std::size_t grid_steps) {
  check_alphabet(spec);
  ForwardLaw fl = forward_law(spec, Pmf::point_mass(0, spec.x1_size));

  auto run = [&](auto objective) {
    return maximize_over_simplex(
        spec.x_size, [&](const Pmf& p) { return objective(mi_parts(fl, p)); }, grid_steps);
  };
  auto [a, a_p] = run([](const MiParts& m) { return m.ixy - m.ixz; });
  auto [b, b_p] = run([](const MiParts& m) { return m.ixy - m.iyz; });
  auto [c, c_p] = run([](const MiParts& m) { return m.ixy; });
  auto [e, e_p] = run([](const MiParts& m) { return m.ixy_given_z; });

  RateReport lower;
  lower.scheme = Scheme::public_lower;
  lower.rate_bits = std::max(0.0, std::max(a, b));
  lower.achieving = AchievingParams{a >= b ? a_p : b_p, std::nullopt, std::nullopt, std::nullopt};
  lower.notes = "max of branches: I(X;Y)-I(X;Z) = " + format_sig12(a) +
                ", I(X;Y)-I(Y;Z) = " + format_sig12(b);

  RateReport upper;
  upper.scheme = Scheme::public_upper;
  upper.rate_bits = std::max(0.0, std::min(c, e));
  upper.achieving = AchievingParams{c <= e ? c_p : e_p, std::nullopt, std::nullopt, std::nullopt};
  upper.notes = "min of branches: I(X;Y) = " + format_sig12(c) +
                ", I(X;Y|Z) = " + format_sig12(e);
  return {lower, upper};
}

RateReport full_duplex_secrecy_capacity(const ModAddChannelSpec& spec) {
  ForwardLaw fl = forward_law(spec, Pmf::point_mass(0, spec.x1_size));
  CapacityResult cap = channel_capacity_ba(fl.y_given_x());
  RateReport r;
  r.scheme = Scheme::full_duplex;
  r.rate_bits = std::max(0.0, cap.capacity_bits);
  r.achieving = AchievingParams{cap.argmax_input, std::nullopt, std::nullopt, std::nullopt};
  r.notes = "main-channel capacity; uniform feedback acts as a one-time pad so the "
            "wiretapper learns nothing";
  return r;
}

double halfduplex_rate_raw(double eps, double delta, double mu, double t) {
  check_unit(eps, "eps");
  check_unit(delta, "delta");
  check_unit(mu, "mu");
  check_unit(t, "t");
  double dh = halfduplex_equivalent_wiretap(delta, t);
  double main_gain = binary_entropy(mix(eps, mu)) - binary_entropy(eps);
  double tap_gain = binary_entropy(mix(dh, mu)) - binary_entropy(dh);
  return (1.0 - t) * main_gain - tap_gain;
}

double halfduplex_rate(double eps, double delta, double mu, double t) {
  return std::max(0.0, halfduplex_rate_raw(eps, delta, mu, t));
}

RateReport halfduplex_optimize(double eps, double delta, std::size_t grid, double refine_tol) {
  if (grid < 16) throw InputError("halfduplex_optimize: grid must be >= 16");
  if (!(refine_tol > 0.0)) throw InputError("halfduplex_optimize: refine_tol must be positive");
  check_unit(eps, "eps");
  check_unit(delta, "delta");

  auto f = [&](double mu, double t) { return halfduplex_rate_raw(eps, delta, mu, t); };

  double best_mu = 0.5, best_t = 0.5, best = f(0.5, 0.5);
  for (std::size_t i = 0; i <= grid; ++i)
    for (std::size_t j = 0; j <= grid; ++j) {
      double mu = static_cast<double>(i) / static_cast<double>(grid);
      double t = static_cast<double>(j) / static_cast<double>(grid);
      double v = f(mu, t);
      if (v > best) {
        best = v;
        best_mu = mu;
        best_t = t;
      }
    }

  double window = 1.5 / static_cast<double>(grid);
  double xtol = std::min(1e-10, refine_tol);
  for (int pass = 0; pass < 200; ++pass) {
    double before = best;
    best_mu = golden_max(std::max(0.0, best_mu - window), std::min(1.0, best_mu + window),
                         [&](double m) { return f(m, best_t); }, xtol);
    best_t = golden_max(std::max(0.0, best_t - window), std::min(1.0, best_t + window),
                        [&](double t) { return f(best_mu, t); }, xtol);
    best = f(best_mu, best_t);
    if (best - before < refine_tol) break;
  }

  RateReport r;
  r.scheme = Scheme::half_duplex;
  r.rate_bits = std::max(0.0, best);
  r.achieving = AchievingParams{std::nullopt, best_mu, best_t, std::nullopt};
  r.notes = "grid " + std::to_string(grid) + " with golden-section refinement; unclamped rate " +
            format_sig12(best);
  return r;
}

double halfduplex_general_rate(const ModAddChannelSpec& spec, const Pmf& p_x, const Pmf& p_x1) {
  if (p_x.size() != spec.x_size) throw InputError("halfduplex_general_rate: p_x size mismatch");
  if (p_x1.size() != spec.x1_size) throw InputError("halfduplex_general_rate: p_x1 size mismatch");

  Pmf n1 = spec.noise_law.marginal(1);
  Pmf n2 = spec.noise_law.marginal(2);
  double listen = p_x1[0];

  // Destination: while listening, y = x + n1; any transmission erases. The
  // erasure symbol sits at index y_size.
  std::vector<double> jy(spec.x_size * (spec.y_size + 1), 0.0);
  for (std::size_t x = 0; x < spec.x_size; ++x) {
    for (std::size_t n = 0; n < spec.y_size; ++n)
      jy[x * (spec.y_size + 1) + (x + n) % spec.y_size] += p_x[x] * listen * n1[n];
    jy[x * (spec.y_size + 1) + spec.y_size] += p_x[x] * (1.0 - listen);
  }
  double ixy = mutual_information(JointPmf(std::move(jy), {spec.x_size, spec.y_size + 1}));

  // Wiretapper: z = x + x1 + n2 with the same x1 law, never erased.
  std::vector<double> jz(spec.x_size * spec.z_size, 0.0);
  for (std::size_t x = 0; x < spec.x_size; ++x)
    for (std::size_t x1 = 0; x1 < spec.x1_size; ++x1)
      for (std::size_t n = 0; n < spec.z_size; ++n)
        jz[x * spec.z_size + (x + x1 + n) % spec.z_size] += p_x[x] * p_x1[x1] * n2[n];
  double ixz = mutual_information(JointPmf(std::move(jz), {spec.x_size, spec.z_size}));

  return std::max(0.0, ixy - ixz);
}

}  // namespace wiretap
