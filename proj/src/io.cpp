#include "wiretap/io.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "wiretap/errors.hpp"

namespace wiretap {

namespace {

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Pmf parse_pmf(const nlohmann::json& j, std::size_t expected, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<double> p = j.get<std::vector<double>>();
  if (expected != 0 && p.size() != expected)
    throw InputError(std::string(what) + " must have " + std::to_string(expected) + " entries");
  return Pmf(std::move(p));
}

BscCorrelation parse_correlation(std::string name) {
  for (char& c : name)
    if (c == '-') c = '_';
  if (name == "independent") return BscCorrelation::independent;
  if (name == "degraded_main") return BscCorrelation::degraded_main;
  if (name == "degraded_wiretap") return BscCorrelation::degraded_wiretap;
  if (name == "noiseless") return BscCorrelation::noiseless;
  if (name == "custom") return BscCorrelation::custom;
  throw InputError("unknown correlation: " + name);
}

ModAddChannelSpec parse_bsc_shorthand(const nlohmann::json& b) {
  BscCorrelation corr = parse_correlation(b.at("correlation").get<std::string>());
  if (corr == BscCorrelation::custom) {
    if (!b.contains("joint"))
      throw InputError("custom correlation needs a 4-entry \"joint\" array over (N1, N2)");
    std::vector<double> flat = b.at("joint").get<std::vector<double>>();
    if (flat.size() != 4) throw InputError("custom joint must have 4 entries");
    return bsc_to_modadd(BscWiretapSpec::custom(JointPmf(std::move(flat), {2, 2})));
  }
  double eps = b.value("eps", 0.0);
  double delta = b.value("delta", 0.0);
  return bsc_to_modadd(BscWiretapSpec(eps, delta, corr));
}

}  // namespace

nlohmann::json RunManifest::to_json() const {
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [k, v] : params) p[k] = v;
  return {{"command", command},
          {"params", p},
          {"seed", seed},
          {"tool_version", tool_version},
          {"timestamp", timestamp}};
}

std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double sig12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

ModAddChannelSpec parse_channel_spec(const nlohmann::json& j) {
  try {
    if (j.contains("bsc")) return parse_bsc_shorthand(j.at("bsc"));
    const auto& a = j.at("alphabets");
    std::size_t x = a.at("x").get<std::size_t>();
    std::size_t x1 = a.at("x1").get<std::size_t>();
    std::size_t y0 = a.at("y0").get<std::size_t>();
    std::size_t y = a.at("y").get<std::size_t>();
    std::size_t z = a.at("z").get<std::size_t>();

    const auto& noise = j.at("noise");
    std::string type = noise.at("type").get<std::string>();
    if (type == "independent") {
      Pmf n1 = parse_pmf(noise.at("n1"), y, "noise.n1");
      Pmf n2 = parse_pmf(noise.at("n2"), z, "noise.n2");
      Pmf n0 = noise.contains("n0") ? parse_pmf(noise.at("n0"), y0, "noise.n0")
                                    : Pmf::uniform(y0);
      return {x, x1, y0, y, z, JointPmf::product({n0, n1, n2})};
    }
    if (type == "joint") {
      std::vector<double> flat = noise.at("tensor").get<std::vector<double>>();
      return {x, x1, y0, y, z, JointPmf(std::move(flat), {y0, y, z})};
    }
    throw InputError("noise.type must be \"independent\" or \"joint\"");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("channel spec: ") + e.what());
  }
}

LatticeSpec parse_lattice_spec(const nlohmann::json& j) {
  try {
    std::size_t m = j.at("m").get<std::size_t>();
    const auto& rows = j.at("g");
    if (!rows.is_array() || rows.size() != m)
      throw InputError("lattice g must be an m x m array of rows");
    std::vector<double> g;
    for (const auto& row : rows) {
      std::vector<double> r = row.get<std::vector<double>>();
      if (r.size() != m) throw InputError("lattice g must be an m x m array of rows");
      g.insert(g.end(), r.begin(), r.end());
    }
    return {m, std::move(g), j.at("sigma0_sq").get<double>(), j.at("sigma1_sq").get<double>(),
            j.at("sigma2_sq").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("lattice spec: ") + e.what());
  }
}

SimConfig parse_sim_config(const nlohmann::json& j) {
  try {
    SimConfig c{SimScheme::full_duplex, 0, 0, 0, 0, std::nullopt, std::nullopt, std::nullopt, 1};
    std::string scheme = j.at("scheme").get<std::string>();
    if (scheme == "full_duplex") c.scheme = SimScheme::full_duplex;
    else if (scheme == "half_duplex") c.scheme = SimScheme::half_duplex;
    else if (scheme == "mod_lambda") c.scheme = SimScheme::mod_lambda;
    else throw InputError("unknown scheme: " + scheme);
    c.n = j.at("n").get<std::size_t>();
    c.m_size = j.value("m_size", std::size_t{2});
    c.trials = j.at("trials").get<std::size_t>();
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("t")) c.t = j.at("t").get<double>();
    if (j.contains("channel")) c.channel = parse_channel_spec(j.at("channel"));
    if (j.contains("lattice")) c.lattice = parse_lattice_spec(j.at("lattice"));
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("sim config: ") + e.what());
  }
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void atomic_write_file(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed for " + path);
}

nlohmann::json rate_report_to_json(const RateReport& report) {
  nlohmann::json out{{"scheme", scheme_name(report.scheme)},
                     {"rate_bits", sig12(report.rate_bits)},
                     {"notes", report.notes}};
  if (report.achieving) {
    nlohmann::json a = nlohmann::json::object();
    if (report.achieving->input) {
      nlohmann::json arr = nlohmann::json::array();
      for (double v : report.achieving->input->probs()) arr.push_back(sig12(v));
      a["input"] = arr;
    }
    if (report.achieving->mu) a["mu"] = sig12(*report.achieving->mu);
    if (report.achieving->t) a["t"] = sig12(*report.achieving->t);
    if (report.achieving->x1_input) {
      nlohmann::json arr = nlohmann::json::array();
      for (double v : report.achieving->x1_input->probs()) arr.push_back(sig12(v));
      a["x1_input"] = arr;
    }
    out["achieving"] = a;
  }
  return out;
}

nlohmann::json sim_report_to_json(const SimReport& report) {
  return {{"p_e_hat", sig12(report.p_e_hat)},
          {"ci_lo", sig12(report.ci_lo)},
          {"ci_hi", sig12(report.ci_hi)},
          {"chi2_stat", sig12(report.chi2_stat)},
          {"chi2_pvalue", sig12(report.chi2_pvalue)},
          {"mi_bits", sig12(report.mi_bits)},
          {"mi_corrected", sig12(report.mi_corrected)},
          {"trials", report.trials},
          {"seed", report.seed}};
}

std::string sim_reports_to_csv(const std::vector<std::pair<SimConfig, SimReport>>& rows) {
  std::ostringstream os;
  os << "scheme,n,M,trials,seed,p_e_hat,ci_lo,ci_hi,chi2,pvalue,mi_bits,mi_corrected\n";
  for (const auto& [config, r] : rows) {
    os << sim_scheme_name(config.scheme) << ',' << config.n << ',' << config.m_size << ','
       << r.trials << ',' << r.seed << ',' << csv_num(sig12(r.p_e_hat)) << ','
       << csv_num(sig12(r.ci_lo)) << ',' << csv_num(sig12(r.ci_hi)) << ','
       << csv_num(sig12(r.chi2_stat)) << ',' << csv_num(sig12(r.chi2_pvalue)) << ','
       << csv_num(sig12(r.mi_bits)) << ',' << csv_num(sig12(r.mi_corrected)) << '\n';
  }
  return os.str();
}

}  // namespace wiretap
