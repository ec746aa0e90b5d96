#include "wiretap/feedback_sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "wiretap/errors.hpp"
#include "wiretap/secrecy_rates.hpp"

namespace wiretap {

namespace {

constexpr std::uint64_t kCodebookBudget = 1ull << 24;  // symbols
constexpr double kEnumBudget = 1048576.0;              // exact enumeration terms
constexpr double kLn2 = 0.6931471805599453;
constexpr double kImpossible = -1e18;  // log-likelihood of a zero-probability symbol

void run_chunked(std::size_t trials, unsigned threads,
                 const std::function<void(unsigned, std::size_t, std::size_t)>& body) {
  unsigned t = std::max(1u, threads);
  if (t == 1) {
    body(0, 0, trials);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < t; ++i) {
    std::size_t begin = trials * i / t, end = trials * (i + 1) / t;
    pool.emplace_back(body, i, begin, end);
  }
  for (auto& th : pool) th.join();
}

std::vector<double> log_likelihood_table(const Pmf& p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    out[i] = p[i] > 0.0 ? std::log(p[i]) : kImpossible;
  return out;
}

// ML over codewords of sum_i loglik[(obs_i - word_i) mod q]; ties go to the
// lowest message index. Shared by the simulator and the exact enumerator so
// both implement the same decoder.
std::size_t ml_decode(const Codebook& book, const std::vector<std::size_t>& obs,
                      const std::vector<double>& loglik, std::size_t q) {
  std::size_t best = 0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < book.m_size; ++w) {
    const std::size_t* word = book.word(w);
    double ll = 0.0;
    for (std::size_t i = 0; i < book.n; ++i) ll += loglik[(obs[i] + q - word[i] % q) % q];
    if (ll > best_ll) {
      best_ll = ll;
      best = w;
    }
  }
  return best;
}

struct MiFromCounts {
  double plug_in, corrected;
};

MiFromCounts mi_from_counts(const std::vector<std::uint64_t>& joint, std::size_t q1,
                            std::size_t q2) {
  std::uint64_t total = 0;
  for (std::uint64_t c : joint) total += c;
  if (total == 0) throw InputError("mi_from_counts: no samples");
  std::vector<double> p(joint.size());
  for (std::size_t i = 0; i < joint.size(); ++i)
    p[i] = static_cast<double>(joint[i]) / static_cast<double>(total);
  double plug_in = mutual_information(JointPmf(std::move(p), {q1, q2}));
  double bias = static_cast<double>((q1 - 1) * (q2 - 1)) /
                (2.0 * static_cast<double>(total) * kLn2);
  return {plug_in, plug_in - bias};
}

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap) {
  double v = std::pow(static_cast<double>(base), static_cast<double>(exp));
  if (v > static_cast<double>(cap)) return cap + 1;
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

const char* sim_scheme_name(SimScheme s) {
  switch (s) {
    case SimScheme::full_duplex: return "full_duplex";
    case SimScheme::half_duplex: return "half_duplex";
    case SimScheme::mod_lambda: return "mod_lambda";
  }
  return "unknown";
}

void SimConfig::validate() const {
  if (trials < 1) throw InputError("SimConfig: trials must be >= 1");
  if (m_size < 2) throw InputError("SimConfig: need at least 2 messages");
  if (n < 1) throw InputError("SimConfig: blocklength must be >= 1");
  switch (scheme) {
    case SimScheme::full_duplex:
      if (!channel) throw InputError("SimConfig: full_duplex needs a channel spec");
      break;
    case SimScheme::half_duplex:
      if (!channel) throw InputError("SimConfig: half_duplex needs a channel spec");
      if (!t) throw InputError("SimConfig: half_duplex needs the feedback fraction t");
      if (!(*t >= 0.0 && *t <= 1.0)) throw InputError("SimConfig: t must lie in [0, 1]");
      break;
    case SimScheme::mod_lambda:
      if (!lattice) throw InputError("SimConfig: mod_lambda needs a lattice spec");
      break;
  }
}

Codebook generate_codebook(std::size_t m_size, std::size_t n, const Pmf& source_pmf,
                           std::uint64_t seed) {
  if (m_size < 1 || n < 1) throw InputError("generate_codebook: m_size and n must be >= 1");
  if (static_cast<std::uint64_t>(m_size) * n > kCodebookBudget)
    throw BudgetError("generate_codebook: codebook exceeds the symbol budget");
  Codebook book{m_size, n, {}, source_pmf, seed};
  book.words.resize(m_size * n);
  DiscreteSampler sampler(source_pmf.probs());
  Substream stream(seed, 0);
  for (auto& s : book.words) s = sampler.draw(stream);
  return book;
}

SimReport run_full_duplex(const SimConfig& config) {
  config.validate();
  if (config.scheme != SimScheme::full_duplex)
    throw InputError("run_full_duplex: config is for a different scheme");
  const ModAddChannelSpec& spec = *config.channel;

  Codebook book = generate_codebook(config.m_size, config.n, Pmf::uniform(spec.x_size),
                                    config.seed);
  std::vector<double> loglik = log_likelihood_table(spec.noise_law.marginal(1));

  // Digest = the first few z-symbols, kept short enough that the joint
  // (message, digest) table is well populated; the plug-in MI estimate and
  // its bias correction are only trustworthy with several samples per cell.
  std::size_t digest_len = std::min<std::size_t>(config.n, 8);
  while (digest_len > 1 && checked_pow(spec.z_size, digest_len, 1u << 20) > (1u << 20))
    --digest_len;
  while (digest_len > 1 &&
         config.m_size * checked_pow(spec.z_size, digest_len, 1u << 20) > config.trials / 10)
    --digest_len;
  const std::size_t digest_space = checked_pow(spec.z_size, digest_len, 1u << 20);

  unsigned threads = std::max(1u, config.threads);
  std::vector<std::uint64_t> errors_per_thread(threads, 0);
  std::vector<std::vector<std::uint64_t>> z_counts_per_thread(
      threads, std::vector<std::uint64_t>(spec.z_size, 0));
  std::vector<std::pair<int, int>> pairs(config.trials);

  run_chunked(config.trials, threads, [&](unsigned ti, std::size_t begin, std::size_t end) {
    std::vector<std::size_t> x(config.n), x1(config.n), yhat(config.n);
    for (std::size_t k = begin; k < end; ++k) {
      Substream sub(config.seed, 1 + k);
      std::size_t w = sub.next_below(config.m_size);
      const std::size_t* word = book.word(w);
      std::copy(word, word + config.n, x.begin());
      for (auto& v : x1) v = sub.next_below(spec.x1_size);
      SymbolTriples out = sample_symbols(spec, x, x1, sub);
      for (std::size_t i = 0; i < config.n; ++i)
        yhat[i] = cancel_feedback(out.y[i], x1[i], spec.y_size);
      std::size_t decoded = ml_decode(book, yhat, loglik, spec.y_size);
      errors_per_thread[ti] += decoded != w;
      for (std::size_t z : out.z) ++z_counts_per_thread[ti][z];
      std::size_t digest = 0;
      for (std::size_t i = 0; i < digest_len; ++i) digest = digest * spec.z_size + out.z[i];
      pairs[k] = {static_cast<int>(w), static_cast<int>(digest)};
    }
  });

  std::uint64_t errors = 0;
  std::vector<std::uint64_t> z_counts(spec.z_size, 0);
  for (unsigned ti = 0; ti < threads; ++ti) {
    errors += errors_per_thread[ti];
    for (std::size_t i = 0; i < spec.z_size; ++i) z_counts[i] += z_counts_per_thread[ti][i];
  }

  SimReport r;
  r.trials = config.trials;
  r.seed = config.seed;
  r.p_e_hat = static_cast<double>(errors) / static_cast<double>(config.trials);
  std::tie(r.ci_lo, r.ci_hi) = wilson_interval(errors, config.trials);
  std::tie(r.chi2_stat, r.chi2_pvalue) = chi_squared_from_counts(z_counts);
  MiEstimate mi = plug_in_mi_estimate(pairs, config.m_size, digest_space);
  r.mi_bits = mi.plug_in_bits;
  r.mi_corrected = mi.corrected_bits;
  return r;
}

HalfDuplexSimResult run_half_duplex(const SimConfig& config) {
  config.validate();
  if (config.scheme != SimScheme::half_duplex)
    throw InputError("run_half_duplex: config is for a different scheme");
  const ModAddChannelSpec& spec = *config.channel;
  if (spec.x_size != 2 || spec.x1_size != 2 || spec.y_size != 2 || spec.z_size != 2)
    throw InputError("run_half_duplex: binary alphabets required");
  const double t = *config.t;
  const double eps = spec.noise_law.marginal(1)[1];
  const double delta = spec.noise_law.marginal(2)[1];

  unsigned threads = std::max(1u, config.threads);
  struct Local {
    std::uint64_t main_counts[2][3] = {{0, 0, 0}, {0, 0, 0}};
    std::uint64_t xz_counts[2][2] = {{0, 0}, {0, 0}};
    std::uint64_t z_counts[2] = {0, 0};
    std::uint64_t flips = 0;
  };
  std::vector<Local> locals(threads);

  run_chunked(config.trials, threads, [&](unsigned ti, std::size_t begin, std::size_t end) {
    Local& loc = locals[ti];
    std::vector<std::size_t> x(config.n), x1(config.n);
    for (std::size_t k = begin; k < end; ++k) {
      Substream sub(config.seed, 1 + k);
      for (std::size_t i = 0; i < config.n; ++i) {
        x[i] = sub.next_below(2);
        x1[i] = sub.next_unit() < t ? 1 : 0;
      }
      SymbolTriples out = sample_symbols(spec, x, x1, sub);
      for (std::size_t i = 0; i < config.n; ++i) {
        std::size_t col = x1[i] == 1 ? 1 : (out.y[i] == 0 ? 0 : 2);
        ++loc.main_counts[x[i]][col];
        ++loc.xz_counts[x[i]][out.z[i]];
        ++loc.z_counts[out.z[i]];
        loc.flips += out.z[i] != x[i];
      }
    }
  });

  Local total;
  for (const Local& loc : locals) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 3; ++b) total.main_counts[a][b] += loc.main_counts[a][b];
      for (int b = 0; b < 2; ++b) total.xz_counts[a][b] += loc.xz_counts[a][b];
    }
    total.z_counts[0] += loc.z_counts[0];
    total.z_counts[1] += loc.z_counts[1];
    total.flips += loc.flips;
  }

  const std::uint64_t symbols = static_cast<std::uint64_t>(config.trials) * config.n;
  std::vector<double> rows(6);
  for (int a = 0; a < 2; ++a) {
    std::uint64_t row_total =
        total.main_counts[a][0] + total.main_counts[a][1] + total.main_counts[a][2];
    if (row_total == 0) throw InputError("run_half_duplex: too few symbols to estimate a row");
    for (int b = 0; b < 3; ++b)
      rows[a * 3 + b] =
          static_cast<double>(total.main_counts[a][b]) / static_cast<double>(row_total);
  }

  HalfDuplexSimResult res{
      {},
      TransitionMatrix(2, 3, rows),
      0.0,
      static_cast<double>(total.flips) / static_cast<double>(symbols),
      halfduplex_equivalent_wiretap(delta, t),
  };
  TransitionMatrix analytic = halfduplex_equivalent_main(eps, t);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      res.linf_vs_analytic = std::max(
          res.linf_vs_analytic, std::abs(res.empirical_main(a, b) - analytic(a, b)));

  SimReport& r = res.report;
  r.trials = config.trials;
  r.seed = config.seed;
  r.p_e_hat = res.empirical_flip;
  std::tie(r.ci_lo, r.ci_hi) = wilson_interval(total.flips, symbols);
  std::tie(r.chi2_stat, r.chi2_pvalue) =
      chi_squared_from_counts({total.z_counts[0], total.z_counts[1]});
  std::vector<std::uint64_t> xz_flat = {total.xz_counts[0][0], total.xz_counts[0][1],
                                        total.xz_counts[1][0], total.xz_counts[1][1]};
  MiFromCounts mi = mi_from_counts(xz_flat, 2, 2);
  r.mi_bits = mi.plug_in;
  r.mi_corrected = mi.corrected;
  return res;
}

SimReport run_mod_lambda(const SimConfig& config) {
  config.validate();
  if (config.scheme != SimScheme::mod_lambda)
    throw InputError("run_mod_lambda: config is for a different scheme");
  const LatticeSpec& spec = *config.lattice;

  // Messages sit on a fixed constellation along the first generator column.
  std::vector<std::vector<double>> constellation(config.m_size, std::vector<double>(spec.m));
  for (std::size_t w = 0; w < config.m_size; ++w) {
    double u0 = (static_cast<double>(w) + 0.5) / static_cast<double>(config.m_size) - 0.5;
    for (std::size_t d = 0; d < spec.m; ++d) constellation[w][d] = spec.g[d * spec.m] * u0;
  }
  WrappedGaussian noise(spec, spec.sigma1_sq);

  const std::size_t bins_per_dim = spec.m == 1 ? 64 : 8;
  const std::size_t bin_count = spec.m == 1 ? 64 : 64;
  auto bin_of = [&](const double* pt) {
    double u[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < spec.m; ++i)
      for (std::size_t j = 0; j < spec.m; ++j)
        u[i] += spec.g_inverse()[i * spec.m + j] * pt[j];
    std::size_t idx = 0;
    for (std::size_t i = 0; i < spec.m; ++i) {
      double f = std::clamp(u[i] + 0.5, 0.0, std::nextafter(1.0, 0.0));
      idx = idx * bins_per_dim + static_cast<std::size_t>(f * static_cast<double>(bins_per_dim));
    }
    return idx;
  };

  unsigned threads = std::max(1u, config.threads);
  std::vector<std::uint64_t> errors_per_thread(threads, 0);
  std::vector<std::vector<std::uint64_t>> z_counts_per_thread(
      threads, std::vector<std::uint64_t>(bin_count, 0));
  std::vector<std::pair<int, int>> pairs(config.trials);

  run_chunked(config.trials, threads, [&](unsigned ti, std::size_t begin, std::size_t end) {
    std::vector<double> x(config.n * spec.m), diff(spec.m);
    for (std::size_t k = begin; k < end; ++k) {
      Substream sub(config.seed, 1 + k);
      std::size_t w = sub.next_below(config.m_size);
      for (std::size_t i = 0; i < config.n; ++i)
        for (std::size_t d = 0; d < spec.m; ++d) x[i * spec.m + d] = constellation[w][d];
      std::vector<double> x1 = sample_uniform_omega(spec, config.n, sub);
      LatticePairs out = sample_mod_lambda(spec, x, x1, sub);

      std::size_t best = 0;
      double best_ll = -std::numeric_limits<double>::infinity();
      for (std::size_t cand = 0; cand < config.m_size; ++cand) {
        double ll = 0.0;
        for (std::size_t i = 0; i < config.n; ++i) {
          for (std::size_t d = 0; d < spec.m; ++d)
            diff[d] = out.y[i * spec.m + d] - x1[i * spec.m + d] - constellation[cand][d];
          ll += std::log(noise.pdf(mod_lambda_reduce(diff, spec)));
        }
        if (ll > best_ll) {
          best_ll = ll;
          best = cand;
        }
      }
      errors_per_thread[ti] += best != w;
      for (std::size_t i = 0; i < config.n; ++i)
        ++z_counts_per_thread[ti][bin_of(out.z.data() + i * spec.m)];
      pairs[k] = {static_cast<int>(w), static_cast<int>(bin_of(out.z.data()))};
    }
  });

  std::uint64_t errors = 0;
  std::vector<std::uint64_t> z_counts(bin_count, 0);
  for (unsigned ti = 0; ti < threads; ++ti) {
    errors += errors_per_thread[ti];
    for (std::size_t i = 0; i < bin_count; ++i) z_counts[i] += z_counts_per_thread[ti][i];
  }

  SimReport r;
  r.trials = config.trials;
  r.seed = config.seed;
  r.p_e_hat = static_cast<double>(errors) / static_cast<double>(config.trials);
  std::tie(r.ci_lo, r.ci_hi) = wilson_interval(errors, config.trials);
  std::tie(r.chi2_stat, r.chi2_pvalue) = chi_squared_from_counts(z_counts);
  MiFromCounts mi = [&] {
    std::vector<std::uint64_t> joint(config.m_size * bin_count, 0);
    for (const auto& [w, digest] : pairs)
      ++joint[static_cast<std::size_t>(w) * bin_count + static_cast<std::size_t>(digest)];
    return mi_from_counts(joint, config.m_size, bin_count);
  }();
  r.mi_bits = mi.plug_in;
  r.mi_corrected = mi.corrected;
  return r;
}

ExactSmallSystem exact_small_system(const Codebook& book, const ModAddChannelSpec& spec,
                                    const Pmf& feedback_pmf) {
  if (feedback_pmf.size() != spec.x1_size)
    throw InputError("exact_small_system: feedback pmf size mismatch");
  for (std::size_t s : book.words)
    if (s >= spec.x_size) throw InputError("exact_small_system: codeword symbol out of range");

  const std::size_t n = book.n, m = book.m_size;
  double mi_terms = static_cast<double>(m) *
                    std::pow(static_cast<double>(spec.x1_size * spec.z_size), static_cast<double>(n));
  double pe_terms = static_cast<double>(m) *
                    std::pow(static_cast<double>(spec.y_size), static_cast<double>(n));
  if (mi_terms + pe_terms > kEnumBudget)
    throw BudgetError("exact_small_system: enumeration exceeds the term budget");

  Pmf p_n1 = spec.noise_law.marginal(1);
  Pmf p_n2 = spec.noise_law.marginal(2);
  std::vector<double> loglik = log_likelihood_table(p_n1);

  // Exact ML error probability: after cancellation the observation is
  // word + n1, so only the destination noise vector matters.
  double p_e = 0.0;
  std::vector<std::size_t> n1_vec(n, 0), obs(n);
  const std::size_t n1_total = checked_pow(spec.y_size, n, 1u << 20);
  for (std::size_t code = 0; code < n1_total; ++code) {
    std::size_t c = code;
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      n1_vec[i] = c % spec.y_size;
      c /= spec.y_size;
      prob *= p_n1[n1_vec[i]];
    }
    if (prob == 0.0) continue;
    for (std::size_t w = 0; w < m; ++w) {
      for (std::size_t i = 0; i < n; ++i) obs[i] = (book.word(w)[i] + n1_vec[i]) % spec.y_size;
      if (ml_decode(book, obs, loglik, spec.y_size) != w)
        p_e += prob / static_cast<double>(m);
    }
  }

  // Exact joint of (message, wiretapper vector); only the wiretap noise
  // marginal enters, whatever the (N1, N2) correlation.
  const std::size_t z_space = checked_pow(spec.z_size, n, 1u << 20);
  std::vector<double> joint(m * z_space, 0.0);
  std::vector<std::size_t> x1_vec(n, 0), n2_vec(n, 0);
  const std::size_t x1_total = checked_pow(spec.x1_size, n, 1u << 20);
  const std::size_t n2_total = checked_pow(spec.z_size, n, 1u << 20);
  for (std::size_t a = 0; a < x1_total; ++a) {
    std::size_t c = a;
    double p_a = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      x1_vec[i] = c % spec.x1_size;
      c /= spec.x1_size;
      p_a *= feedback_pmf[x1_vec[i]];
    }
    if (p_a == 0.0) continue;
    for (std::size_t b = 0; b < n2_total; ++b) {
      std::size_t cb = b;
      double p_b = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        n2_vec[i] = cb % spec.z_size;
        cb /= spec.z_size;
        p_b *= p_n2[n2_vec[i]];
      }
      if (p_b == 0.0) continue;
      for (std::size_t w = 0; w < m; ++w) {
        std::size_t zidx = 0;
        for (std::size_t i = 0; i < n; ++i)
          zidx = zidx * spec.z_size + (book.word(w)[i] + x1_vec[i] + n2_vec[i]) % spec.z_size;
        joint[w * z_space + zidx] += p_a * p_b / static_cast<double>(m);
      }
    }
  }
  double mi = mutual_information(JointPmf(std::move(joint), {m, z_space}));
  return {p_e, mi};
}

std::pair<double, double> chi_squared_from_counts(const std::vector<std::uint64_t>& counts) {
  const std::size_t q = counts.size();
  if (q < 2) throw InputError("chi_squared_from_counts: need at least 2 cells");
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total < 5 * q) throw InputError("chi_squared_from_counts: need at least 5 samples per cell");
  const double expected = static_cast<double>(total) / static_cast<double>(q);
  double stat = 0.0;
  for (std::uint64_t c : counts) {
    double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return {stat, chi_squared_sf(stat, static_cast<double>(q - 1))};
}

std::pair<double, double> chi_squared_uniformity(const std::vector<std::size_t>& samples,
                                                 std::size_t q) {
  if (q < 2) throw InputError("chi_squared_uniformity: alphabet must have at least 2 symbols");
  std::vector<std::uint64_t> counts(q, 0);
  for (std::size_t s : samples) {
    if (s >= q) throw InputError("chi_squared_uniformity: symbol out of range");
    ++counts[s];
  }
  return chi_squared_from_counts(counts);
}

namespace {

double gamma_q_series(double a, double x) {
  double sum = 1.0 / a, term = sum;
  for (int i = 1; i < 10000; ++i) {
    term *= x / (a + i);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16)
      return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw ConvergenceError("incomplete gamma series did not converge");
}

double gamma_q_contfrac(double a, double x) {
  const double fpmin = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / fpmin, d = 1.0 / b, h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16)
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw InputError("regularized_gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? gamma_q_series(a, x) : gamma_q_contfrac(a, x);
}

double chi_squared_sf(double stat, double dof) {
  if (!(stat >= 0.0)) throw InputError("chi_squared_sf: statistic must be >= 0");
  if (!(dof > 0.0)) throw InputError("chi_squared_sf: dof must be positive");
  return regularized_gamma_q(0.5 * dof, 0.5 * stat);
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw InputError("wilson_interval: no trials");
  if (successes > trials) throw InputError("wilson_interval: successes exceed trials");
  const double z = 1.959963984540054;  // two-sided 95%
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (p + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
  // at the boundary counts the interval endpoint is exactly 0 or 1
  double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

}  // namespace wiretap
