#include <cerrno>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "wiretap/compare.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/feedback_sim.hpp"
#include "wiretap/io.hpp"
#include "wiretap/lattice.hpp"
#include "wiretap/secrecy_rates.hpp"

namespace {

using nlohmann::json;
using namespace wiretap;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoConverge = 3;
constexpr int kExitBudget = 4;

std::optional<std::uint64_t> env_seed_override() {
  const char* env = std::getenv("WIRETAP_SEED");
  if (!env) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0')
    throw InputError("WIRETAP_SEED must be a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

std::string num_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

RunManifest make_manifest(std::string command, std::map<std::string, std::string> params,
                          std::uint64_t seed) {
  RunManifest m;
  m.command = std::move(command);
  m.params = std::move(params);
  m.seed = seed;
  m.timestamp = iso8601_utc_now();
  return m;
}

void emit(const json& doc, const std::string& out_path) {
  std::string text = doc.dump(2) + "\n";
  if (!out_path.empty()) atomic_write_file(out_path, text);
  std::cout << text;
}

json structure_json(const BinaryStructure& s) {
  return {{"binary", s.binary},
          {"noiseless", s.noiseless},
          {"independent", s.independent},
          {"degraded_main", s.degraded_main},
          {"degraded_wiretap", s.degraded_wiretap},
          {"eps", sig12(s.eps)},
          {"delta", sig12(s.delta)}};
}

json pmf_json(const Pmf& p) {
  json arr = json::array();
  for (double v : p.probs()) arr.push_back(sig12(v));
  return arr;
}

struct CapacityArgs {
  std::string channel_file, out;
  double ba_tol = 1e-10;
  std::size_t ba_max_iter = 100000;
};

int run_capacity(const CapacityArgs& a) {
  ModAddChannelSpec spec = parse_channel_spec(load_json_file(a.channel_file));
  ForwardLaw fl = forward_law(spec, Pmf::point_mass(0, spec.x1_size));
  CapacityResult cap = channel_capacity_ba(fl.y_given_x(), a.ba_tol, a.ba_max_iter);
  json doc{{"capacity_bits", sig12(cap.capacity_bits)},
           {"achieving_input", pmf_json(cap.argmax_input)},
           {"manifest", make_manifest("capacity",
                                      {{"channel", a.channel_file},
                                       {"ba_tol", num_str(a.ba_tol)},
                                       {"ba_max_iter", std::to_string(a.ba_max_iter)}},
                                      0)
                            .to_json()}};
  emit(doc, a.out);
  return kExitOk;
}

struct SecrecyArgs {
  std::string channel_file, mode = "no-feedback", out;
  std::size_t grid = 64;
};

int run_secrecy(const SecrecyArgs& a) {
  ModAddChannelSpec spec = parse_channel_spec(load_json_file(a.channel_file));
  json reports = json::array();
  json doc;
  if (a.mode == "no-feedback") {
    reports.push_back(rate_report_to_json(no_feedback_secrecy_lower(spec, a.grid)));
  } else if (a.mode == "public") {
    auto [lo, hi] = public_discussion_bounds(spec, a.grid);
    reports.push_back(rate_report_to_json(lo));
    reports.push_back(rate_report_to_json(hi));
    doc["tight"] = std::abs(hi.rate_bits - lo.rate_bits) <= 1e-9;
    doc["structure"] = structure_json(detect_binary_structure(spec));
  } else if (a.mode == "full-duplex") {
    reports.push_back(rate_report_to_json(full_duplex_secrecy_capacity(spec)));
  } else {
    throw InputError("mode must be no-feedback, public or full-duplex");
  }
  doc["mode"] = a.mode;
  doc["reports"] = reports;
  doc["manifest"] = make_manifest("secrecy",
                                  {{"channel", a.channel_file},
                                   {"mode", a.mode},
                                   {"grid", std::to_string(a.grid)}},
                                  0)
                        .to_json();
  emit(doc, a.out);
  return kExitOk;
}

struct HalfDuplexArgs {
  double eps = 0.0, delta = 0.0;
  std::optional<double> mu, t;
  bool optimize = false;
  std::size_t grid = 256;
  double refine_tol = 1e-9;
  std::string out;
};

int run_halfduplex(const HalfDuplexArgs& a) {
  json doc;
  std::map<std::string, std::string> params{{"eps", num_str(a.eps)},
                                            {"delta", num_str(a.delta)}};
  if (a.optimize) {
    if (a.mu || a.t) throw InputError("--optimize excludes --mu/--t");
    RateReport r = halfduplex_optimize(a.eps, a.delta, a.grid, a.refine_tol);
    doc = rate_report_to_json(r);
    params["grid"] = std::to_string(a.grid);
    params["refine_tol"] = num_str(a.refine_tol);
  } else {
    if (!a.mu || !a.t) throw InputError("need --mu and --t, or --optimize");
    double rate = halfduplex_rate(a.eps, a.delta, *a.mu, *a.t);
    doc = {{"rate_bits", sig12(rate)},
           {"mu", sig12(*a.mu)},
           {"t", sig12(*a.t)},
           {"delta_hat", sig12(halfduplex_equivalent_wiretap(a.delta, *a.t))}};
    params["mu"] = num_str(*a.mu);
    params["t"] = num_str(*a.t);
  }
  doc["manifest"] = make_manifest("halfduplex", params, 0).to_json();
  emit(doc, a.out);
  return kExitOk;
}

struct SimulateArgs {
  std::string config_file, out_prefix = "simreport";
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
};

json matrix_json(const TransitionMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(sig12(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

int run_simulate(const SimulateArgs& a) {
  SimConfig config = parse_sim_config(load_json_file(a.config_file));
  if (a.seed) config.seed = *a.seed;
  if (auto env = env_seed_override()) config.seed = *env;
  config.threads = a.threads;

  json doc;
  SimReport report;
  if (config.scheme == SimScheme::full_duplex) {
    report = run_full_duplex(config);
  } else if (config.scheme == SimScheme::half_duplex) {
    HalfDuplexSimResult res = run_half_duplex(config);
    report = res.report;
    doc["empirical_main"] = matrix_json(res.empirical_main);
    doc["linf_vs_analytic"] = sig12(res.linf_vs_analytic);
    doc["empirical_flip"] = sig12(res.empirical_flip);
    doc["expected_flip"] = sig12(res.expected_flip);
  } else {
    report = run_mod_lambda(config);
  }

  doc["scheme"] = sim_scheme_name(config.scheme);
  doc["config"] = {{"n", config.n},
                   {"m_size", config.m_size},
                   {"trials", config.trials}};
  doc["report"] = sim_report_to_json(report);
  doc["manifest"] =
      make_manifest("simulate", {{"config", a.config_file}}, config.seed).to_json();

  std::string text = doc.dump(2) + "\n";
  atomic_write_file(a.out_prefix + ".json", text);
  atomic_write_file(a.out_prefix + ".csv", sim_reports_to_csv({{config, report}}));
  std::cout << text;
  return kExitOk;
}

struct LatticeArgs {
  std::string lattice_file, out;
};

int run_lattice(const LatticeArgs& a) {
  LatticeSpec spec = parse_lattice_spec(load_json_file(a.lattice_file));
  double h = wrapped_gaussian_entropy(spec, spec.sigma1_sq);
  json doc{{"h_bits", sig12(h)},
           {"log2_volume", sig12(std::log2(spec.volume))},
           {"capacity_bits", sig12(mod_lambda_capacity(spec))},
           {"manifest",
            make_manifest("lattice", {{"lattice", a.lattice_file}}, 0).to_json()}};
  emit(doc, a.out);
  return kExitOk;
}

struct CompareArgs {
  double eps = 0.0, delta = 0.0;
  std::string case_name, out;
  std::size_t grid = 64;
};

int run_compare(const CompareArgs& a) {
  std::string name = a.case_name;
  for (char& c : name)
    if (c == '-') c = '_';
  BscCorrelation corr;
  if (name == "noiseless") corr = BscCorrelation::noiseless;
  else if (name == "independent") corr = BscCorrelation::independent;
  else if (name == "degraded_main") corr = BscCorrelation::degraded_main;
  else if (name == "degraded_wiretap") corr = BscCorrelation::degraded_wiretap;
  else throw InputError("case must be noiseless, independent, degraded-main or degraded-wiretap");

  CompareRow row = build_compare_row(BscWiretapSpec(a.eps, a.delta, corr), a.grid);
  json doc{{"case", a.case_name},
           {"eps", sig12(row.eps)},
           {"delta", sig12(row.delta)},
           {"c_s", sig12(row.c_s)},
           {"c_sp_lower", sig12(row.c_sp_lower)},
           {"c_sp_upper", sig12(row.c_sp_upper)},
           {"c_sp_tight", row.c_sp_tight},
           {"c_sf", sig12(row.c_sf)},
           {"half_duplex",
            {{"rate_bits", sig12(row.hd_rate)}, {"mu", sig12(row.hd_mu)}, {"t", sig12(row.hd_t)}}},
           {"structure", structure_json(row.structure)},
           {"manifest", make_manifest("compare",
                                      {{"case", a.case_name},
                                       {"eps", num_str(a.eps)},
                                       {"delta", num_str(a.delta)},
                                       {"grid", std::to_string(a.grid)}},
                                      0)
                            .to_json()}};
  emit(doc, a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy rates and encryption-over-the-channel simulations for "
               "modulo-additive wiretap channels with feedback"};
  app.require_subcommand(1);

  CapacityArgs cap_args;
  auto* cap = app.add_subcommand("capacity", "Main-channel capacity by Blahut-Arimoto");
  cap->add_option("channel", cap_args.channel_file, "channel spec JSON file")->required();
  cap->add_option("--ba-tol", cap_args.ba_tol, "duality-gap stopping tolerance");
  cap->add_option("--ba-max-iter", cap_args.ba_max_iter, "iteration cap");
  cap->add_option("--out", cap_args.out, "also write the JSON report here");

  SecrecyArgs sec_args;
  auto* sec = app.add_subcommand("secrecy", "Secrecy rates and bounds");
  sec->add_option("channel", sec_args.channel_file, "channel spec JSON file")->required();
  sec->add_option("--mode", sec_args.mode, "no-feedback | public | full-duplex")->required();
  sec->add_option("--grid", sec_args.grid, "input-simplex grid steps");
  sec->add_option("--out", sec_args.out, "also write the JSON report here");

  HalfDuplexArgs hd_args;
  auto* hd = app.add_subcommand("halfduplex", "Half-duplex feedback rate");
  hd->add_option("--eps", hd_args.eps, "main-channel flip probability")->required();
  hd->add_option("--delta", hd_args.delta, "wiretap flip probability");
  double hd_mu = 0, hd_t = 0;
  auto* mu_opt = hd->add_option("--mu", hd_mu, "input bias Pr{X=1}");
  auto* t_opt = hd->add_option("--t", hd_t, "feedback fraction");
  hd->add_flag("--optimize", hd_args.optimize, "search over (mu, t)");
  hd->add_option("--grid", hd_args.grid, "coarse grid resolution");
  hd->add_option("--refine-tol", hd_args.refine_tol, "refinement stopping tolerance");
  hd->add_option("--out", hd_args.out, "also write the JSON report here");

  SimulateArgs sim_args;
  std::uint64_t sim_seed_flag = 0;
  auto* sim = app.add_subcommand("simulate", "Run a simulation config");
  sim->add_option("config", sim_args.config_file, "simulation config JSON file")->required();
  sim->add_option("--out", sim_args.out_prefix, "output file prefix (.json/.csv)");
  sim->add_option("--threads", sim_args.threads, "worker threads (does not affect results)");
  auto* seed_opt = sim->add_option("--seed", sim_seed_flag, "override the config seed");

  LatticeArgs lat_args;
  auto* lat = app.add_subcommand("lattice", "Modulo-lattice channel numerics");
  lat->add_option("lattice", lat_args.lattice_file, "lattice spec JSON file")->required();
  lat->add_option("--out", lat_args.out, "also write the JSON report here");

  CompareArgs cmp_args;
  auto* cmp = app.add_subcommand("compare", "Side-by-side rates for a binary wiretap setting");
  cmp->add_option("--eps", cmp_args.eps, "main-channel flip probability");
  cmp->add_option("--delta", cmp_args.delta, "wiretap flip probability");
  cmp->add_option("--case", cmp_args.case_name,
                  "noiseless | independent | degraded-main | degraded-wiretap")
      ->required();
  cmp->add_option("--grid", cmp_args.grid, "input-simplex grid steps");
  cmp->add_option("--out", cmp_args.out, "also write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (mu_opt->count()) hd_args.mu = hd_mu;
    if (t_opt->count()) hd_args.t = hd_t;
    if (seed_opt->count()) sim_args.seed = sim_seed_flag;

    if (cap->parsed()) return run_capacity(cap_args);
    if (sec->parsed()) return run_secrecy(sec_args);
    if (hd->parsed()) return run_halfduplex(hd_args);
    if (sim->parsed()) return run_simulate(sim_args);
    if (lat->parsed()) return run_lattice(lat_args);
    if (cmp->parsed()) return run_compare(cmp_args);
    return kExitInput;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConverge;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
