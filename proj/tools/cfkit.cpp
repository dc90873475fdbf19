// cfkit command-line driver. Talks to the library exclusively through the
// C API in cfkit/cfkit.h; every command writes a run manifest next to its
// outputs so results can be reproduced byte-for-byte.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfkit/cfkit.h"
#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitFailure = 1;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct ChannelHandle {
  cfk_channel* ptr = nullptr;
  ~ChannelHandle() { cfk_channel_free(ptr); }
};

struct RunOutputs {
  std::vector<std::pair<std::string, std::string>> files;  // path, body
  json config;
  uint64_t seed = 0;
};

void write_with_manifest(const std::string& command,
                         const std::vector<std::string>& argv,
                         const RunOutputs& run, const std::string& manifest_path) {
  json manifest;
  manifest["command"] = command;
  manifest["argv"] = argv;
  manifest["config"] = run.config;
  manifest["library_version"] = cfk_version();
  manifest["master_seed"] = run.seed;
  manifest["created_utc"] = iso_timestamp();
  json outs = json::array();
  for (const auto& [path, body] : run.files) {
    write_file(path, body);
    outs.push_back({{"path", path}, {"fnv1a64", hex64(fnv1a64(body))}});
  }
  manifest["outputs"] = outs;
  write_file(manifest_path, manifest.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// spec parsing helpers
// ---------------------------------------------------------------------------

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

std::vector<int64_t> parse_int_list(const std::string& s) {
  std::vector<int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoll(tok));
  }
  return out;
}

std::vector<double> parse_pmf_spec(const std::string& spec, int q) {
  auto bad = [&](const std::string& why) {
    throw std::invalid_argument("pmf spec \"" + spec + "\": " + why);
  };
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "bern") {
    if (arg.empty()) bad("missing parameter");
    double p = std::stod(arg);
    if (p < 0 || p > 1) bad("parameter outside [0, 1]");
    return {1 - p, p};
  }
  if (kind == "uniform") {
    int n = arg.empty() ? q : std::stoi(arg);
    if (n < 2) bad("alphabet too small");
    return std::vector<double>(n, 1.0 / n);
  }
  if (kind == "ternary") {
    if (arg.empty()) bad("missing parameter");
    double p = std::stod(arg);
    if (p < 0 || p >= 1) bad("parameter outside [0, 1)");
    return {(1 - p) / 2, p, (1 - p) / 2};
  }
  if (kind == "values") {
    auto v = parse_double_list(arg);
    if (v.empty()) bad("no probabilities given");
    return v;
  }
  bad("unknown kind (use bern:, uniform:, ternary:, values:)");
  return {};
}

// Real symbol map for Gaussian channels: named shapes scale with the user's
// power budget.
std::vector<double> parse_map_spec(const std::string& spec, double power,
                                   const std::vector<int64_t>& labels) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "antipodal") {
    double s = std::sqrt(power);
    return {-s, s};
  }
  if (kind == "pam4") {
    double s = std::sqrt(power / 5.0);
    return {-3 * s, -s, s, 3 * s};
  }
  if (kind == "scale") {
    double beta = arg.empty() ? 1.0 : std::stod(arg);
    std::vector<double> out;
    for (int64_t l : labels) out.push_back(beta * static_cast<double>(l));
    return out;
  }
  if (kind == "values") return parse_double_list(arg);
  throw std::invalid_argument("map spec \"" + spec +
                              "\": unknown kind (antipodal, pam4, scale:, values:)");
}

ChannelHandle open_channel(const std::string& file, const std::string& builtin,
                           double snr_db, double power_flag,
                           const std::vector<double>& params) {
  ChannelHandle chan;
  int rc;
  if (!file.empty()) {
    rc = cfk_channel_parse(read_file(file).c_str(), &chan.ptr);
  } else if (!builtin.empty()) {
    std::vector<double> p = params;
    if (builtin == "sym_gaussian" && p.empty()) {
      double P = std::isnan(snr_db) ? power_flag : std::pow(10.0, snr_db / 10.0);
      p.push_back(P);
    }
    rc = cfk_channel_builtin(builtin.c_str(), p.empty() ? nullptr : p.data(),
                             static_cast<int>(p.size()), &chan.ptr);
  } else {
    throw std::invalid_argument("provide --channel FILE or --builtin NAME");
  }
  if (rc != CFK_OK) throw std::invalid_argument(cfk_last_error());
  return chan;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

struct RegionArgs {
  std::string channel_file, builtin, thm = "thm1";
  double snr_db = NAN, power = 1.0;
  std::vector<double> params;
  int q = 2;
  int quantizer_j = 0;
  int prime_q = 0;
  std::vector<std::string> pmf_specs, map_specs;
  std::string a = "1,1", a2, beta = "1,1", labels;
  std::string out_prefix = "region";
};

int run_region(const RegionArgs& args, const std::vector<std::string>& argv) {
  ChannelHandle chan = open_channel(args.channel_file, args.builtin, args.snr_db,
                                    args.power, args.params);
  char* chan_json_c = nullptr;
  if (cfk_channel_to_json(chan.ptr, &chan_json_c) != CFK_OK)
    throw std::runtime_error(cfk_last_error());
  json chan_json = json::parse(chan_json_c);
  cfk_free(chan_json_c);
  bool gaussian = chan_json.at("type") == "gaussian_mac";

  json req;
  req["theorem"] = args.thm;
  req["q"] = args.q;
  req["a"] = parse_int_list(args.a);
  if (!args.a2.empty()) req["a2"] = parse_int_list(args.a2);
  if (args.thm == "cor1") req["beta"] = parse_double_list(args.beta);
  if (args.quantizer_j > 0) req["quantizer_j"] = args.quantizer_j;
  if (args.prime_q > 0) req["prime_q"] = args.prime_q;

  std::vector<std::vector<int64_t>> labels;
  if (!args.labels.empty()) {
    std::stringstream ss(args.labels);
    std::string group;
    while (std::getline(ss, group, ';')) labels.push_back(parse_int_list(group));
    req["labels"] = labels;
  }
  if (args.thm != "cor1") {
    if (args.pmf_specs.empty())
      throw std::invalid_argument("--pmf required (one spec per user)");
    json pmfs = json::array();
    for (const auto& s : args.pmf_specs) pmfs.push_back(parse_pmf_spec(s, args.q));
    req["pmfs"] = pmfs;
    if (!args.map_specs.empty()) {
      json maps = json::array();
      for (size_t k = 0; k < args.map_specs.size(); ++k) {
        double power = gaussian ? chan_json.at("power").at(k).get<double>() : 0.0;
        std::vector<int64_t> user_labels =
            k < labels.size() ? labels[k] : std::vector<int64_t>{};
        maps.push_back(parse_map_spec(args.map_specs[k], power, user_labels));
      }
      req["maps"] = maps;
    } else if (gaussian) {
      throw std::invalid_argument("gaussian channels need --map per user");
    }
  }

  char* result_c = nullptr;
  int rc = cfk_region(chan.ptr, req.dump().c_str(), &result_c);
  if (rc != CFK_OK) {
    std::string msg = cfk_last_error();
    throw rc == CFK_EBUDGET ? std::runtime_error("budget: " + msg)
                            : std::runtime_error(msg);
  }
  json result = json::parse(result_c);
  cfk_free(result_c);

  std::ostringstream csv;
  csv << "R1,R2";
  if (!result.at("vertices").empty() && result.at("vertices")[0].size() > 2)
    csv << ",R3";
  csv << "\n";
  for (const auto& v : result.at("vertices")) {
    for (size_t i = 0; i < v.size(); ++i)
      csv << (i ? "," : "") << fmt12(v[i].get<double>());
    csv << "\n";
  }

  RunOutputs run;
  run.config = {{"channel", chan_json}, {"request", req}};
  run.files.push_back({args.out_prefix + "_region.json",
                       result.at("region").dump() + "\n"});
  run.files.push_back({args.out_prefix + "_vertices.csv", csv.str()});
  write_with_manifest("region", argv, run, args.out_prefix + "_manifest.json");

  if (result.at("max_sum_rate").is_string())
    std::cout << "max_sum_rate unbounded\n";
  else
    std::cout << "max_sum_rate " << fmt12(result.at("max_sum_rate").get<double>())
              << "\n";
  std::cout << "max_symmetric_rate "
            << fmt12(result.at("max_symmetric_rate").get<double>()) << "\n";
  if (result.contains("icf"))
    std::cout << "icf " << fmt12(result.at("icf")[0].get<double>()) << " "
              << fmt12(result.at("icf")[1].get<double>()) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> raw_argv(argv, argv + argc);
  CLI::App app{"compute-forward rate regions, optimization, and simulation"};
  app.require_subcommand(1);

  // region ------------------------------------------------------------------
  RegionArgs region_args;
  auto* region = app.add_subcommand("region", "compute an achievable rate region");
  region->add_option("--channel", region_args.channel_file, "channel spec JSON file");
  region->add_option("--builtin", region_args.builtin,
                     "builtin channel (bmm, sym_gaussian, example4_rx1, example4_rx2)");
  region->add_option("--snr", region_args.snr_db, "SNR in dB for sym_gaussian");
  region->add_option("--power", region_args.power, "power for sym_gaussian");
  region->add_option("--params", region_args.params, "builtin parameters");
  region->add_option("--thm", region_args.thm, "thm1 | thm2 | thm4 | cor1 | lmac");
  region->add_option("--q", region_args.q, "field order");
  region->add_option("--pmf", region_args.pmf_specs,
                     "per-user pmf spec (bern:p, uniform[:n], ternary:p, values:...)");
  region->add_option("--map", region_args.map_specs,
                     "per-user symbol map (antipodal, pam4, scale:b, values:...)");
  region->add_option("--labels", region_args.labels,
                     "per-user algebraic labels, ';'-separated lists");
  region->add_option("--a", region_args.a, "coefficient vector");
  region->add_option("--a2", region_args.a2, "second coefficient vector (thm4)");
  region->add_option("--beta", region_args.beta, "cor1 beta scalars");
  region->add_option("--j", region_args.quantizer_j, "output quantizer resolution");
  region->add_option("--prime-q", region_args.prime_q, "override the thm2 prime");
  region->add_option("--out-prefix", region_args.out_prefix, "output path prefix");

  // figure ------------------------------------------------------------------
  std::string fig_name, fig_out_dir = ".";
  auto* figure = app.add_subcommand("figure", "emit figure data series as CSV");
  figure->add_option("name", fig_name, "fig4 | fig5 | fig7")->required();
  figure->add_option("--out-dir", fig_out_dir, "output directory");

  // simulate ----------------------------------------------------------------
  std::string sim_builtin = "bmm", sim_channel_file, sim_pmfs_joined, sim_a = "1,1";
  std::string sim_a2, sim_aux = "auto", sim_out = "simulate_report.json";
  std::vector<std::string> sim_pmf_specs;
  int sim_n = 12, sim_q = 2;
  size_t sim_trials = 1000;
  uint64_t sim_seed = 1;
  double sim_eps = 0.2, sim_eps_prime = 0.1, sim_budget = 22.0;
  std::string sim_rates = "0.45,0.45";
  auto* simulate = app.add_subcommand("simulate",
                                      "Monte-Carlo nested-linear-code simulation");
  simulate->add_option("--builtin", sim_builtin, "builtin channel (bmm)");
  simulate->add_option("--channel", sim_channel_file, "dm_mac spec JSON file");
  simulate->add_option("--n", sim_n, "blocklength");
  simulate->add_option("--q", sim_q, "field order");
  simulate->add_option("--rates", sim_rates, "per-user message rates, bits");
  simulate->add_option("--aux", sim_aux, "auto or per-user auxiliary rates");
  simulate->add_option("--pmf", sim_pmf_specs, "per-user pmf spec");
  simulate->add_option("--a", sim_a, "coefficient vector");
  simulate->add_option("--a2", sim_a2, "second coefficient vector (pair decoding)");
  simulate->add_option("--eps", sim_eps, "decoder typicality eps");
  simulate->add_option("--eps-prime", sim_eps_prime, "encoder typicality eps'");
  simulate->add_option("--trials", sim_trials, "Monte-Carlo trials");
  simulate->add_option("--seed", sim_seed, "master seed");
  simulate->add_option("--budget-log2", sim_budget, "decoder hypothesis budget");
  simulate->add_option("--out", sim_out, "report path");

  // check -------------------------------------------------------------------
  std::string check_what = "lemmas", check_out = "lemma_report.json";
  uint64_t check_seed = 7;
  size_t check_samples = 100000;
  auto* check = app.add_subcommand("check", "statistical structure checks");
  check->add_option("what", check_what, "lemmas")->required();
  check->add_option("--seed", check_seed, "master seed");
  check->add_option("--samples", check_samples, "samples per chi-square test");
  check->add_option("--out", check_out, "report path");

  // replay ------------------------------------------------------------------
  std::string replay_manifest;
  auto* replay = app.add_subcommand("replay", "re-run a manifest and verify digests");
  replay->add_option("manifest", replay_manifest, "manifest JSON path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (region->parsed()) return run_region(region_args, raw_argv);

    if (figure->parsed()) {
      char* result_c = nullptr;
      int rc = cfk_figure(fig_name.c_str(), "{}", &result_c);
      if (rc != CFK_OK) {
        std::cerr << "error: " << cfk_last_error() << "\n";
        return rc == CFK_EINVAL ? kExitUsage : kExitFailure;
      }
      json result = json::parse(result_c);
      cfk_free(result_c);
      RunOutputs run;
      run.config = {{"figure", fig_name}};
      for (const auto& [name, body] : result.at("files").items())
        run.files.push_back({fig_out_dir + "/" + name, body.get<std::string>()});
      write_with_manifest("figure", raw_argv, run,
                          fig_out_dir + "/" + fig_name + "_manifest.json");
      for (const auto& [path, body] : run.files)
        std::cout << "wrote " << path << "\n";
      return 0;
    }

    if (simulate->parsed()) {
      json cfg;
      if (!sim_channel_file.empty())
        cfg["channel"] = json::parse(read_file(sim_channel_file));
      else
        cfg["channel"] = sim_builtin;
      json pmfs = json::array();
      if (sim_pmf_specs.empty())
        throw std::invalid_argument("--pmf required (one spec per user)");
      for (const auto& s : sim_pmf_specs) pmfs.push_back(parse_pmf_spec(s, sim_q));
      cfg["pmfs"] = pmfs;
      cfg["q"] = sim_q;
      cfg["n"] = sim_n;
      cfg["rates"] = parse_double_list(sim_rates);
      if (sim_aux != "auto") cfg["aux_rates"] = parse_double_list(sim_aux);
      cfg["a"] = parse_int_list(sim_a);
      if (!sim_a2.empty()) cfg["a2"] = parse_int_list(sim_a2);
      cfg["eps"] = sim_eps;
      cfg["eps_prime"] = sim_eps_prime;
      cfg["trials"] = sim_trials;
      cfg["seed"] = sim_seed;
      cfg["budget_log2"] = sim_budget;

      char* result_c = nullptr;
      int rc = cfk_simulate(cfg.dump().c_str(), &result_c);
      if (rc != CFK_OK) {
        std::cerr << "error: " << cfk_last_error() << "\n";
        return rc == CFK_EBUDGET ? kExitBudget
                                 : (rc == CFK_EINVAL ? kExitUsage : kExitFailure);
      }
      json report = json::parse(result_c);
      cfk_free(result_c);
      RunOutputs run;
      run.config = cfg;
      run.seed = sim_seed;
      run.files.push_back({sim_out, report.dump(2) + "\n"});
      write_with_manifest("simulate", raw_argv, run, sim_out + ".manifest.json");
      std::cout << "error_rate " << fmt12(report.at("error_rate").get<double>())
                << " wilson [" << fmt12(report.at("wilson_lo").get<double>())
                << ", " << fmt12(report.at("wilson_hi").get<double>()) << "]\n";
      return 0;
    }

    if (check->parsed()) {
      if (check_what != "lemmas")
        throw std::invalid_argument("unknown check \"" + check_what + "\"");
      json cfg{{"seed", check_seed}, {"samples", check_samples}};
      char* result_c = nullptr;
      int rc = cfk_lemma_checks(cfg.dump().c_str(), &result_c);
      if (rc != CFK_OK) {
        std::cerr << "error: " << cfk_last_error() << "\n";
        return kExitFailure;
      }
      json report = json::parse(result_c);
      cfk_free(result_c);
      RunOutputs run;
      run.config = cfg;
      run.seed = check_seed;
      run.files.push_back({check_out, report.dump(2) + "\n"});
      write_with_manifest("check", raw_argv, run, check_out + ".manifest.json");
      for (const auto& c : report.at("checks"))
        std::cout << (c.at("pass").get<bool>() ? "pass " : "FAIL ")
                  << c.at("name").get<std::string>() << "\n";
      return report.at("all_pass").get<bool>() ? 0 : kExitFailure;
    }

    if (replay->parsed()) {
      json manifest = json::parse(read_file(replay_manifest));
      auto stored_argv = manifest.at("argv").get<std::vector<std::string>>();
      std::vector<std::string> digests;
      for (const auto& o : manifest.at("outputs"))
        digests.push_back(o.at("fnv1a64").get<std::string>());
      // re-exec ourselves with the stored argv
      std::string cmd;
      for (const auto& a : stored_argv) cmd += "'" + a + "' ";
      int rc = std::system(cmd.c_str());
      if (rc != 0) {
        std::cerr << "replayed command failed\n";
        return kExitFailure;
      }
      bool all_match = true;
      size_t i = 0;
      for (const auto& o : manifest.at("outputs")) {
        std::string path = o.at("path").get<std::string>();
        std::string digest = hex64(fnv1a64(read_file(path)));
        bool match = digest == digests[i++];
        std::cout << (match ? "identical " : "DIFFERS ") << path << "\n";
        all_match = all_match && match;
      }
      return all_match ? 0 : kExitFailure;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.rfind("budget", 0) == 0 ? kExitBudget : kExitFailure;
  }
  return 0;
}
