#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "cfkit/cfkit.h"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  cfk_free(s);
  return out;
}

struct Chan {
  cfk_channel* ptr = nullptr;
  ~Chan() { cfk_channel_free(ptr); }
};

}  // namespace

TEST_CASE("version and error plumbing") {
  CHECK(std::string(cfk_version()) == "0.1.0");
  cfk_channel* chan = nullptr;
  CHECK(cfk_channel_builtin("no_such_channel", nullptr, 0, &chan) == CFK_EINVAL);
  CHECK(std::string(cfk_last_error()).find("no_such_channel") != std::string::npos);
}

TEST_CASE("channel parse and bit-exact round trip") {
  Chan chan;
  REQUIRE(cfk_channel_builtin("example4_rx1", nullptr, 0, &chan.ptr) == CFK_OK);
  char* text = nullptr;
  REQUIRE(cfk_channel_to_json(chan.ptr, &text) == CFK_OK);
  std::string first = take(text);

  Chan again;
  REQUIRE(cfk_channel_parse(first.c_str(), &again.ptr) == CFK_OK);
  char* text2 = nullptr;
  REQUIRE(cfk_channel_to_json(again.ptr, &text2) == CFK_OK);
  CHECK(take(text2) == first);  // byte-identical round trip

  json j = json::parse(first);
  CHECK(j.at("type") == "gaussian_mac");
  CHECK(j.at("h")[1].get<double>() == 1.4142135623730951);

  Chan bad;
  CHECK(cfk_channel_parse("{\"type\":\"dm_mac\",\"inputs\":[2,2],\"output\":2,"
                          "\"cond\":[1,0,1,0]}",
                          &bad.ptr) == CFK_EINVAL);
}

TEST_CASE("region computation through the C surface") {
  Chan chan;
  REQUIRE(cfk_channel_builtin("bmm", nullptr, 0, &chan.ptr) == CFK_OK);
  json req{{"theorem", "thm1"},
           {"q", 2},
           {"pmfs", {{0.2669, 0.7331}, {0.2669, 0.7331}}},
           {"a", {1, 1}}};
  char* result = nullptr;
  REQUIRE(cfk_region(chan.ptr, req.dump().c_str(), &result) == CFK_OK);
  json out = json::parse(take(result));
  CHECK(out.at("icf")[0].get<double>() ==
        doctest::Approx(0.5503002608932438).epsilon(1e-10));
  CHECK(out.at("region").at("dim") == 2);
  CHECK(out.at("max_symmetric_rate").get<double>() ==
        doctest::Approx(0.5503002608932438).epsilon(1e-10));

  // unsupported field order surfaces the named order
  json bad = req;
  bad["q"] = 6;
  CHECK(cfk_region(chan.ptr, bad.dump().c_str(), &result) == CFK_EINVAL);
  CHECK(std::string(cfk_last_error()).find("6") != std::string::npos);
}

TEST_CASE("cor1 region over the gaussian channel") {
  Chan chan;
  double P = 1.0;
  REQUIRE(cfk_channel_builtin("sym_gaussian", &P, 1, &chan.ptr) == CFK_OK);
  json req{{"theorem", "cor1"}, {"a", {1, 1}}, {"beta", {1.0, 1.0}}};
  char* result = nullptr;
  REQUIRE(cfk_region(chan.ptr, req.dump().c_str(), &result) == CFK_OK);
  json out = json::parse(take(result));
  CHECK(out.at("max_sum_rate").get<double>() ==
        doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-10));
}

TEST_CASE("optimizer through the C surface") {
  Chan chan;
  REQUIRE(cfk_channel_builtin("bmm", nullptr, 0, &chan.ptr) == CFK_OK);
  json req{{"objective", "classical_mac_symmetric"},
           {"family", "bern"},
           {"grid_step", 0.005}};
  char* result = nullptr;
  REQUIRE(cfk_optimize(chan.ptr, req.dump().c_str(), &result) == CFK_OK);
  json out = json::parse(take(result));
  CHECK(out.at("value").get<double>() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("simulation: determinism and the budget error code") {
  json cfg{{"channel", "bmm"},
           {"pmfs", {{0.2669, 0.7331}, {0.2669, 0.7331}}},
           {"q", 2},
           {"n", 12},
           {"rates", {0.38, 0.38}},
           {"a", {1, 1}},
           {"eps", 0.35},
           {"eps_prime", 0.2},
           {"trials", 200},
           {"seed", 7},
           {"budget_log2", 24.0}};
  char* r1 = nullptr;
  char* r2 = nullptr;
  REQUIRE(cfk_simulate(cfg.dump().c_str(), &r1) == CFK_OK);
  REQUIRE(cfk_simulate(cfg.dump().c_str(), &r2) == CFK_OK);
  CHECK(take(r1) == take(r2));  // byte-identical reports

  cfg["n"] = 20;
  cfg["rates"] = {0.9, 0.9};
  cfg["budget_log2"] = 22.0;
  char* r3 = nullptr;
  CHECK(cfk_simulate(cfg.dump().c_str(), &r3) == CFK_EBUDGET);
}

TEST_CASE("figure names validate") {
  char* result = nullptr;
  CHECK(cfk_figure("fig9", "{}", &result) == CFK_EINVAL);
}
