#include "cfkit/cfkit.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <variant>

#include "channel.hpp"
#include "figures.hpp"
#include "json.hpp"
#include "optimize.hpp"
#include "region.hpp"
#include "simulate.hpp"
#include "translate.hpp"
#include "util.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(CFK_EINVAL, e.what());
  } catch (const std::runtime_error& e) {
    std::string what = e.what();
    if (what.find("budget") != std::string::npos) return fail(CFK_EBUDGET, what);
    return fail(CFK_ERROR, what);
  } catch (const std::exception& e) {
    return fail(CFK_ERROR, e.what());
  }
}

}  // namespace

struct cfk_channel {
  std::variant<cfkit::DiscreteMac, cfkit::GaussianMac> model;
  explicit cfk_channel(std::variant<cfkit::DiscreteMac, cfkit::GaussianMac> m)
      : model(std::move(m)) {}
};

extern "C" {

const char* cfk_version(void) { return "0.1.0"; }

const char* cfk_last_error(void) { return g_last_error.c_str(); }

void cfk_free(char* str) { std::free(str); }

int cfk_channel_parse(const char* json_text, cfk_channel** out) {
  return guarded([&] {
    if (!json_text || !out) throw std::invalid_argument("null argument");
    json j = json::parse(json_text);
    std::string type = j.at("type").get<std::string>();
    std::unique_ptr<cfk_channel> chan;
    if (type == "dm_mac") {
      auto inputs = j.at("inputs").get<std::vector<size_t>>();
      size_t output = j.at("output").get<size_t>();
      auto cond = j.at("cond").get<std::vector<double>>();
      if (j.contains("K") && j.at("K").get<size_t>() != inputs.size())
        throw std::invalid_argument("K does not match the input list");
      chan = std::make_unique<cfk_channel>(cfkit::DiscreteMac(inputs, output, cond));
    } else if (type == "gaussian_mac") {
      chan = std::make_unique<cfk_channel>(
          cfkit::GaussianMac(j.at("h").get<std::vector<double>>(),
                             j.at("power").get<std::vector<double>>()));
    } else {
      throw std::invalid_argument("unknown channel type \"" + type + "\"");
    }
    *out = chan.release();
    return CFK_OK;
  });
}

int cfk_channel_builtin(const char* name, const double* params, int n_params,
                        cfk_channel** out) {
  return guarded([&] {
    if (!name || !out) throw std::invalid_argument("null argument");
    std::string n = name;
    std::unique_ptr<cfk_channel> chan;
    auto param = [&](int i, double fallback) {
      return (params && i < n_params) ? params[i] : fallback;
    };
    if (n == "bmm") {
      chan = std::make_unique<cfk_channel>(cfkit::builtin_bmm());
    } else if (n == "sym_gaussian") {
      chan = std::make_unique<cfk_channel>(cfkit::builtin_sym_gaussian(param(0, 1.0)));
    } else if (n == "example4_rx1" || n == "example4_rx2") {
      cfkit::Example4 net = cfkit::builtin_example4(
          param(0, 25.0), param(1, 18.0), param(2, 1.4142135623730951));
      chan = std::make_unique<cfk_channel>(n == "example4_rx1" ? net.rx1 : net.rx2);
    } else {
      throw std::invalid_argument("unknown builtin channel \"" + n + "\"");
    }
    *out = chan.release();
    return CFK_OK;
  });
}

int cfk_channel_to_json(const cfk_channel* chan, char** json_out) {
  return guarded([&] {
    if (!chan || !json_out) throw std::invalid_argument("null argument");
    std::string text = std::visit(
        [](const auto& m) -> std::string {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, cfkit::DiscreteMac>)
            return cfkit::dm_mac_to_json(m);
          else
            return cfkit::gaussian_mac_to_json(m);
        },
        chan->model);
    *json_out = dup_string(text);
    return CFK_OK;
  });
}

void cfk_channel_free(cfk_channel* chan) { delete chan; }

namespace {

using namespace cfkit;

std::vector<Pmf> parse_pmfs(const json& j) {
  std::vector<Pmf> out;
  for (const auto& row : j) out.emplace_back(row.get<std::vector<double>>());
  if (out.empty()) throw std::invalid_argument("at least one pmf required");
  return out;
}

// Build the induced problem for a region request.
struct BuiltProblem {
  CfProblem prob;
  int quantizer_j = 0;
};

BuiltProblem build_problem(const cfk_channel& chan, const json& req,
                           const std::vector<Pmf>& pmfs, bool field_mode,
                           int q, const std::vector<std::vector<int64_t>>& labels) {
  std::shared_ptr<const FiniteField> field;
  std::vector<std::vector<int64_t>> use_labels = labels;
  if (field_mode) {
    field = std::make_shared<const FiniteField>(q);
    for (auto& user : use_labels)
      for (int64_t lab : user)
        if (lab < 0 || lab >= q)
          throw std::invalid_argument("field label outside [0, q)");
  }

  if (std::holds_alternative<DiscreteMac>(chan.model)) {
    const auto& mac = std::get<DiscreteMac>(chan.model);
    std::vector<SymbolMapping> maps;
    if (req.contains("maps")) {
      for (const auto& m : req.at("maps")) {
        SymbolMapping sm;
        sm.index = m.get<std::vector<size_t>>();
        maps.push_back(std::move(sm));
      }
    } else {
      for (size_t k = 0; k < pmfs.size(); ++k)
        maps.push_back(SymbolMapping::identity(pmfs[k].size()));
    }
    DiscreteMac induced = induced_channel(mac, maps);
    return {CfProblem::make(std::move(induced), pmfs, use_labels, field), 0};
  }

  const auto& mac = std::get<GaussianMac>(chan.model);
  std::vector<SymbolMapping> maps;
  if (!req.contains("maps"))
    throw std::invalid_argument("gaussian channels need per-user real maps");
  for (const auto& m : req.at("maps"))
    maps.push_back(SymbolMapping::reals(m.get<std::vector<double>>()));
  check_power(mac, maps, pmfs);
  OutputQuantizer quant =
      req.value("quantizer_j", 0) > 0
          ? OutputQuantizer(req.at("quantizer_j").get<int>())
          : OutputQuantizer::auto_for(mac, maps, pmfs);
  DiscreteMac induced = induced_channel(mac, maps, quant);
  return {CfProblem::make(std::move(induced), pmfs, use_labels, field), quant.j};
}

json region_summary(const RateRegion& region) {
  json out;
  out["region"] = json::parse(region_to_json(region));
  json verts = json::array();
  if (region.dim <= 3)
    for (const auto& v : region_vertices(region)) verts.push_back(v);
  out["vertices"] = verts;
  double sum = max_sum_rate(region);
  out["max_sum_rate"] = std::isfinite(sum) ? json(sum) : json("unbounded");
  out["max_symmetric_rate"] = max_symmetric_rate(region);
  return out;
}

std::vector<std::vector<int64_t>> default_labels(const std::vector<Pmf>& pmfs) {
  std::vector<std::vector<int64_t>> labels;
  for (const auto& p : pmfs) {
    std::vector<int64_t> row(p.size());
    std::iota(row.begin(), row.end(), 0);
    labels.push_back(std::move(row));
  }
  return labels;
}

}  // namespace

int cfk_region(const cfk_channel* chan, const char* request_json,
               char** result_json) {
  return guarded([&] {
    if (!chan || !request_json || !result_json)
      throw std::invalid_argument("null argument");
    json req = json::parse(request_json);
    std::string theorem = req.at("theorem").get<std::string>();
    json out;

    if (theorem == "cor1") {
      if (!std::holds_alternative<GaussianMac>(chan->model))
        throw std::invalid_argument("cor1 needs a gaussian channel");
      const auto& mac = std::get<GaussianMac>(chan->model);
      auto a = req.at("a").get<std::vector<int64_t>>();
      auto beta = req.value("beta", std::vector<double>{1.0, 1.0});
      RateRegion region = region_cor1(mac.h, mac.power, beta, a);
      out = region_summary(region);
      IcfPair icf = gaussian_icf(mac.h, mac.power, beta, a);
      out["icf"] = {icf.icf1, icf.icf2};
    } else if (theorem == "thm1" || theorem == "lmac") {
      auto pmfs = parse_pmfs(req.at("pmfs"));
      int q = req.value("q", 2);
      auto labels = req.contains("labels")
                        ? req.at("labels").get<std::vector<std::vector<int64_t>>>()
                        : default_labels(pmfs);
      BuiltProblem built = build_problem(*chan, req, pmfs, true, q, labels);
      if (theorem == "lmac") {
        out = region_summary(region_lmac(built.prob));
      } else {
        auto a = req.at("a").get<std::vector<int64_t>>();
        RateRegion region = region_thm1(built.prob, a);
        out = region_summary(region);
        IcfPair icf = icf_finite(built.prob, a);
        out["icf"] = {icf.icf1, icf.icf2};
      }
      if (built.quantizer_j) out["quantizer_j"] = built.quantizer_j;
    } else if (theorem == "thm2") {
      auto pmfs = parse_pmfs(req.at("pmfs"));
      if (!req.contains("labels"))
        throw std::invalid_argument("thm2 needs integer labels per user");
      auto labels = req.at("labels").get<std::vector<std::vector<int64_t>>>();
      auto a = req.at("a").get<std::vector<int64_t>>();
      TranslationPlan plan = min_prime_q({a}, labels);
      int q = req.value("prime_q", plan.q);
      // evaluate over the translated field
      std::shared_ptr<const FiniteField> field =
          std::make_shared<const FiniteField>(q);
      std::vector<std::vector<int64_t>> field_labels(labels.size());
      for (size_t k = 0; k < labels.size(); ++k)
        for (int64_t v : labels[k])
          field_labels[k].push_back(field->from_signed(v));
      BuiltProblem built = build_problem(*chan, req, pmfs, true, q, field_labels);
      RateRegion region = region_thm1(built.prob, a);
      out = region_summary(region);
      IcfPair icf = icf_finite(built.prob, a);
      out["icf"] = {icf.icf1, icf.icf2};
      out["prime_q"] = q;
      out["translation_min_q"] = plan.q;
      if (built.quantizer_j) out["quantizer_j"] = built.quantizer_j;
    } else if (theorem == "thm4") {
      auto pmfs = parse_pmfs(req.at("pmfs"));
      int q = req.value("q", 2);
      auto labels = req.contains("labels")
                        ? req.at("labels").get<std::vector<std::vector<int64_t>>>()
                        : default_labels(pmfs);
      BuiltProblem built = build_problem(*chan, req, pmfs, true, q, labels);
      auto a1 = req.at("a").get<std::vector<int64_t>>();
      auto a2 = req.at("a2").get<std::vector<int64_t>>();
      RateRegion region = region_thm4(built.prob, a1, a2);
      json summary;
      summary["region"] = json::parse(region_to_json(region));
      if (region.dim <= 3) {
        json verts = json::array();
        for (const auto& v : region_vertices(region)) verts.push_back(v);
        summary["vertices"] = verts;
      }
      summary["max_sum_rate"] = max_sum_rate(region);
      summary["max_symmetric_rate"] = max_symmetric_rate(region);
      out = summary;
    } else {
      throw std::invalid_argument("unknown theorem selector \"" + theorem + "\"");
    }
    *result_json = dup_string(out.dump());
    return CFK_OK;
  });
}

int cfk_optimize(const cfk_channel* chan, const char* request_json,
                 char** result_json) {
  return guarded([&] {
    if (!chan || !request_json || !result_json)
      throw std::invalid_argument("null argument");
    if (!std::holds_alternative<DiscreteMac>(chan->model))
      throw std::invalid_argument("optimizer runs on discrete channels");
    json req = json::parse(request_json);
    SearchSpec spec;
    std::string family = req.value("family", "bern");
    if (family == "bern") spec.family = PmfFamily::Bern;
    else if (family == "ternary") spec.family = PmfFamily::Ternary;
    else if (family == "uniform") spec.family = PmfFamily::Uniform;
    else throw std::invalid_argument("unknown family \"" + family + "\"");
    std::string objective = req.value("objective", "cf_symmetric");
    if (objective == "cf_symmetric") spec.objective = Objective::CfSymmetric;
    else if (objective == "classical_mac_symmetric")
      spec.objective = Objective::ClassicalMacSymmetric;
    else if (objective == "cf_sum") spec.objective = Objective::CfSumRate;
    else throw std::invalid_argument("unknown objective \"" + objective + "\"");
    spec.q = req.value("q", 2);
    if (req.contains("a")) spec.a = req.at("a").get<std::vector<int64_t>>();
    spec.grid_step = req.value("grid_step", 1e-3);

    OptResult res =
        optimize_symmetric_rate(std::get<DiscreteMac>(chan->model), spec);
    json out;
    out["param"] = res.param;
    out["value"] = res.value;
    *result_json = dup_string(out.dump());
    return CFK_OK;
  });
}

int cfk_figure(const char* name, const char* request_json, char** result_json) {
  return guarded([&] {
    if (!name || !result_json) throw std::invalid_argument("null argument");
    (void)request_json;
    std::string n = name;
    std::map<std::string, std::string> files;
    if (n == "fig4") files = figure_fig4();
    else if (n == "fig5") files = figure_fig5();
    else if (n == "fig7") files = figure_fig7();
    else throw std::invalid_argument("unknown figure \"" + n + "\"");
    json out;
    out["files"] = files;
    *result_json = dup_string(out.dump());
    return CFK_OK;
  });
}

int cfk_simulate(const char* config_json, char** report_json) {
  return guarded([&] {
    if (!config_json || !report_json) throw std::invalid_argument("null argument");
    json cfg = json::parse(config_json);

    DiscreteMac channel = [&]() -> DiscreteMac {
      const json& jc = cfg.at("channel");
      if (jc.is_string() || jc.contains("builtin")) {
        std::string name = jc.is_string() ? jc.get<std::string>()
                                          : jc.at("builtin").get<std::string>();
        if (name == "bmm") return builtin_bmm();
        throw std::invalid_argument("unknown builtin simulation channel");
      }
      if (jc.at("type").get<std::string>() != "dm_mac")
        throw std::invalid_argument(
            "simulation channels must be discrete; quantize gaussian models first");
      return DiscreteMac(jc.at("inputs").get<std::vector<size_t>>(),
                         jc.at("output").get<size_t>(),
                         jc.at("cond").get<std::vector<double>>());
    }();

    SimConfig sim{std::move(channel),
                  parse_pmfs(cfg.at("pmfs")),
                  cfg.value("q", 2),
                  cfg.value("n", 12),
                  cfg.at("rates").get<std::vector<double>>(),
                  {},
                  cfg.value("a", std::vector<int64_t>{1, 1}),
                  std::nullopt,
                  cfg.value("eps", 0.2),
                  cfg.value("eps_prime", 0.1),
                  cfg.value("trials", static_cast<size_t>(1000)),
                  cfg.value("seed", static_cast<uint64_t>(1)),
                  cfg.value("budget_log2", 22.0)};
    if (cfg.contains("aux_rates") && !cfg.at("aux_rates").is_string())
      sim.aux_rates = cfg.at("aux_rates").get<std::vector<double>>();
    if (cfg.contains("a2")) sim.a2 = cfg.at("a2").get<std::vector<int64_t>>();

    SimReport rep = simulate_point(sim);
    json out;
    out["config"] = cfg;
    out["snapped_rates"] = rep.snapped_rates;
    out["snapped_aux_rates"] = rep.snapped_aux_rates;
    out["trials"] = rep.trials;
    out["errors"] = rep.errors;
    out["error_rate"] = rep.error_rate;
    out["wilson_lo"] = rep.wilson_lo;
    out["wilson_hi"] = rep.wilson_hi;
    out["encode_fallbacks"] = rep.encode_fallbacks;
    out["decode_none"] = rep.none;
    out["decode_ambiguous"] = rep.ambiguous;
    *report_json = dup_string(out.dump());
    return CFK_OK;
  });
}

int cfk_lemma_checks(const char* config_json, char** report_json) {
  return guarded([&] {
    if (!report_json) throw std::invalid_argument("null argument");
    json cfg = config_json ? json::parse(config_json) : json::object();
    uint64_t seed = cfg.value("seed", static_cast<uint64_t>(7));
    size_t samples = cfg.value("samples", static_cast<size_t>(100000));

    json checks = json::array();
    auto add_chi = [&](const ChiSquareReport& r) {
      checks.push_back({{"name", r.name},
                        {"statistic", r.statistic},
                        {"dof", r.dof},
                        {"p_value", r.p_value},
                        {"pass", r.pass}});
    };
    add_chi(check_uniformity(2, 6, 2, samples, split_seed(seed, {11})));
    add_chi(check_uniformity(3, 4, 2, samples, split_seed(seed, {12})));
    add_chi(check_pairwise_independence(2, 4, 2, samples, split_seed(seed, {13})));
    add_chi(check_pairwise_independence(3, 3, 2, samples, split_seed(seed, {14})));
    add_chi(check_fullrank_independence(2, 4, 2, samples, split_seed(seed, {15})));
    add_chi(check_fullrank_independence(3, 3, 2, samples, split_seed(seed, {16})));
    add_chi(check_index_uniformity(2, 6, 2, 2, Pmf::bernoulli(0.7331), 0.1,
                                   samples, split_seed(seed, {17})));

    for (int q : {2, 3}) {
      IndexSetReport r = check_index_set_counts(q, 2, 2);
      checks.push_back({{"name", "index_set_counts_q" + std::to_string(q)},
                        {"counts", r.counts},
                        {"bounds", r.bounds},
                        {"pass", r.pass}});
    }
    {
      ExponentReport r = check_mismatched_exponent(
          0.8, 1.0 / 3.0, 0.4, 24, cfg.value("exponent_samples", static_cast<size_t>(1000000)),
          0.15, split_seed(seed, {18}));
      checks.push_back({{"name", "mismatched_exponent"},
                        {"target", r.target},
                        {"empirical", r.empirical},
                        {"hits", r.hits},
                        {"samples", r.samples},
                        {"pass", r.pass}});
    }
    bool all = true;
    for (const auto& c : checks) all = all && c.at("pass").get<bool>();
    json out;
    out["seed"] = seed;
    out["samples"] = samples;
    out["checks"] = checks;
    out["all_pass"] = all;
    *report_json = dup_string(out.dump());
    return CFK_OK;
  });
}

}  // extern "C"
