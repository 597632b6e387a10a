#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsl/run.hpp"

using namespace hsl;

namespace {

std::string config_error_path(const Json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

const Json* find_check(const Json& report, const std::string& name) {
  for (const auto& c : report["checks"]) {
    if (c["name"] == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("config errors carry the field path") {
  CHECK(config_error_path(Json::array()) == "$");
  CHECK(config_error_path(Json{{"t", 1}}) == "command");
  CHECK(config_error_path(Json{{"command", "bogus"}}) == "command");
  CHECK(config_error_path(Json{{"command", "pick"}, {"measure", {{"dim", 1}, {"density", {{"name", "x"}}}}}}) ==
        "measure.density.name");
  CHECK(config_error_path(Json{{"command", "pick"}, {"measure", {{"density", {{"name", "lebesgue2"}}}}}}) ==
        "measure.dim");
  CHECK(config_error_path(Json{{"command", "pick"},
                               {"measure", {{"dim", 1}, {"atoms", {{{"lambda", 1.0}, {"weight_re", {{-1.0}}}}}}}}}) ==
        "measure");
  CHECK(config_error_path(Json{{"command", "pick"},
                               {"measure", {{"dim", 2}, {"atoms", {{{"lambda", 1.0}, {"weight_re", {{1.0}}}}}}}}}) ==
        "measure.atoms[0].weight_re");
  CHECK(config_error_path(Json{{"command", "integrals"}, {"tolerances", {{"nope", 1.0}}}}) == "tolerances.nope");
  CHECK(config_error_path(Json{{"command", "integrals"}, {"tolerances", {{"beta", -1.0}}}}) == "tolerances.beta");
  CHECK(config_error_path(Json{{"command", "integrals"}, {"grids", {{"x_grid", {{"lo", 2.0}, {"hi", 1.0}}}}}}) ==
        "grids.x_grid");
  CHECK(config_error_path(Json{{"command", "integrals"}, {"seed", -3}}) == "seed");
  CHECK(config_error_path(Json{{"command", "classify"}, {"symbol", {{"name", "i_sgn"}, {"sign", 2}}}}) == "symbol.sign");
}

TEST_CASE("missing command inputs are config errors") {
  CHECK_THROWS_AS(run(parse_config(Json{{"command", "pick"}})), ConfigError);
  CHECK_THROWS_AS(run(parse_config(Json{{"command", "example-t"}})), ConfigError);
  CHECK_THROWS_AS(run(parse_config(Json{{"command", "classify"}, {"symbol", {{"name", "unknown"}, {"dim", 2}}}})),
                  ConfigError);
}

TEST_CASE("tolerance overrides") {
  RunConfig c = parse_config(Json{{"command", "integrals"}});
  CHECK(c.tolerances.at("integrals") == 1e-8);
  apply_tolerance_override(c, "integrals=1e-6");
  CHECK(c.tolerances.at("integrals") == 1e-6);
  CHECK_THROWS_AS(apply_tolerance_override(c, "integrals"), ConfigError);
  CHECK_THROWS_AS(apply_tolerance_override(c, "integrals=abc"), ConfigError);
  CHECK_THROWS_AS(apply_tolerance_override(c, "integrals=0"), ConfigError);
  CHECK_THROWS_AS(apply_tolerance_override(c, "foo=1"), ConfigError);
}

TEST_CASE("measure JSON round trip") {
  Matrix w(2, 2);
  w << 2.0, I, -I, 1.0;
  const CarlesonMeasure mu(2, make_density("rank_one_fail", {}, 2), {{0.5, w}});
  const Json j = measure_to_json(mu);
  CHECK(j["dim"] == 2);
  CHECK(j["density"]["name"] == "rank_one_fail");
  const CarlesonMeasure back = measure_from_json(j);
  REQUIRE(back.atoms().size() == 1);
  CHECK(back.atoms()[0].location == 0.5);
  CHECK(max_abs(back.atoms()[0].weight - w) == 0.0);
  CHECK(back.density()->name == "rank_one_fail");
  CHECK(measure_to_json(back).dump() == j.dump());
}

TEST_CASE("integrals suite") {
  const RunOutput out = run(parse_config(Json{{"command", "integrals"}}));
  CHECK(out.ok);
  CHECK(out.report["schema"] == report_schema);
  CHECK(out.report["checks"].size() == 40);
  CHECK_FALSE(out.report.contains("wall_time"));
  CHECK(run(parse_config(Json{{"command", "integrals"}}), {true}).report.contains("wall_time"));
}

TEST_CASE("pick command writes CSV and checks the closed form") {
  const Json cfg{{"command", "pick"},
                 {"measure", {{"dim", 1}, {"density", {{"name", "lebesgue2"}}}}},
                 {"alpha", 1.0},
                 {"grids", {{"x_grid", {{"lo", 0.01}, {"hi", 100.0}, {"n", 5}}}}}};
  const RunOutput out = run(parse_config(cfg));
  CHECK(out.ok);
  CHECK(find_check(out.report, "closed_form_error") != nullptr);
  CHECK(find_check(out.report, "kappa_i_ratio") != nullptr);
  REQUIRE(out.csv.count("pick.csv"));
  const std::string& csv = out.csv.at("pick.csv");
  CHECK(csv.rfind("x,r_11_re,r_11_im,i_11_re,i_11_im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}

TEST_CASE("symbol, verify-symbol and gram commands") {
  const Json measure{{"dim", 4}, {"density", {{"name", "example_t"}, {"params", {0.5}}}}};
  const Json p{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};

  const RunOutput s = run(parse_config(Json{{"command", "symbol"},
                                            {"symbol", {{"name", "example_beta_closed"}, {"params", {0.5}}}},
                                            {"projection", p}}));
  CHECK(s.ok);
  CHECK(s.csv.count("symbol.csv"));
  CHECK(s.report["data"]["flags"]["unitary"] == true);

  const RunOutput atom = run(parse_config(Json{{"command", "symbol"},
                                               {"measure", {{"dim", 1}, {"atoms", {{{"lambda", 1.0}, {"weight_re", {{1.0}}}}}}}},
                                               {"symbol", {{"name", "i_imag"}}}}));
  CHECK_FALSE(atom.ok);
  CHECK(atom.report["data"]["flags"]["unitary"] == false);

  const RunOutput v = run(parse_config(Json{{"command", "verify-symbol"},
                                            {"measure", measure},
                                            {"symbol", {{"name", "example_beta_closed"}, {"params", {0.5}}}}}));
  CHECK(v.ok);

  const RunOutput g = run(parse_config(Json{{"command", "gram"}, {"measure", measure}}));
  CHECK(g.ok);
  CHECK(g.report["data"]["min_eig"].get<double>() > 0.0);
  CHECK(g.report["data"]["norm_lower_bound"].get<double>() <= 1.0);
}

TEST_CASE("positivity and classify commands honour expectations") {
  const Json atom{{"dim", 1}, {"atoms", {{{"lambda", 1.0}, {"weight_re", {{1.0}}}}}}};
  CHECK(run(parse_config(Json{{"command", "positivity"}, {"measure", atom}, {"expect", "certified_not_strict"}})).ok);
  CHECK_FALSE(run(parse_config(Json{{"command", "positivity"}, {"measure", atom}, {"expect", "inconclusive"}})).ok);

  const RunOutput c = run(parse_config(Json{{"command", "classify"},
                                            {"symbol", {{"name", "i_sgn"}, {"dim", 2}}},
                                            {"projection", {{1, 0}, {0, 0}}},
                                            {"expect", "borchers"}}));
  CHECK(c.ok);
  CHECK(c.report["verdicts"]["classify"] == "borchers");
  const RunOutput flipped = run(parse_config(Json{{"command", "classify"},
                                                  {"symbol", {{"name", "i_sgn"}, {"dim", 2}, {"sign", -1}}},
                                                  {"expect", "invalid_symbol"}}));
  CHECK(flipped.ok);
}

TEST_CASE("simulate command") {
  const Json grids{{"simulator", {{"n", 4096}, {"x_max", 64.0}, {"trials", 20}}}};
  const RunOutput pos = run(parse_config(Json{{"command", "simulate"}, {"symbol", {{"name", "i_sgn"}, {"dim", 2}}}, {"grids", grids}}));
  CHECK(pos.ok);
  REQUIRE(pos.csv.count("decay.csv"));
  CHECK(pos.csv.at("decay.csv").rfind("t,norm\n", 0) == 0);
  const RunOutput neg = run(parse_config(Json{{"command", "simulate"},
                                              {"symbol", {{"name", "i_sgn"}, {"dim", 2}, {"sign", -1}}},
                                              {"expect", "not_reflection_positive"},
                                              {"grids", grids}}));
  CHECK(neg.ok);
  const RunOutput wrong = run(parse_config(Json{{"command", "simulate"},
                                                {"symbol", {{"name", "i_sgn"}, {"dim", 2}, {"sign", -1}}},
                                                {"grids", grids}}));
  CHECK_FALSE(wrong.ok);
  CHECK_THROWS_AS(run(parse_config(Json{{"command", "simulate"},
                                        {"symbol", {{"name", "i_sgn"}, {"dim", 2}}},
                                        {"grids", {{"simulator", {{"n", 1000}}}}}})),
                  ConfigError);
}

TEST_CASE("example-t pipeline") {
  const RunOutput half = run(parse_config(Json{{"command", "example-t"}, {"t", 0.5}, {"seed", 0}}));
  CHECK(half.ok);
  CHECK(half.report["verdicts"]["classify"] == "standard");
  CHECK(half.report["verdicts"]["borchers"] == false);
  const RunOutput again = run(parse_config(Json{{"command", "example-t"}, {"t", 0.5}, {"seed", 0}}));
  CHECK(half.report.dump() == again.report.dump());

  const RunOutput one = run(parse_config(Json{{"command", "example-t"}, {"t", 1.0}}));
  CHECK(one.ok);
  CHECK(one.report["verdicts"]["classify"] == "borchers");

  const RunOutput low = run(parse_config(Json{{"command", "example-t"}, {"t", 0.2}}));
  CHECK_FALSE(low.ok);
}
