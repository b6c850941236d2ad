#include "lieharm/runner.hpp"

#include <doctest.h>

#include <string>

namespace rn = lieharm::runner;

namespace {

std::string body_without_wall_time(const rn::Report& r) {
  rn::Json j = r.to_json();
  j.erase("wall_time");
  return j.dump(2);
}

bool has_check(const rn::Report& r, const std::string& name, bool pass) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.pass == pass;
  return false;
}

}  // namespace

TEST_SUITE("cli-runner") {

TEST_CASE("numbers are formatted with 17 significant digits") {
  CHECK(rn::format_number(0.1) == "1.0000000000000001e-01");
  CHECK(rn::format_number(-2.0) == "-2.0000000000000000e+00");
  CHECK(rn::format_number(-0.0) == "0.0000000000000000e+00");
  CHECK(std::stod(rn::format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("verify-family on N_4") {
  const rn::Report r = rn::run(rn::parse_config(R"({"kind": "verify-family", "builtin": "N", "n": 4, "count": 100, "seed": 7})"));
  CHECK(r.pass);
  for (const auto& c : r.checks) CHECK_MESSAGE(c.max_residual < 1e-9, c.name);
  CHECK(has_check(r, "kappa_closed_form", true));
}

TEST_CASE("curvature on G3") {
  const rn::Report r = rn::run(rn::parse_config(
      R"({"kind": "curvature", "algebra": {"builtin": "G3", "alpha": 1, "beta": 0.5}, "sampling": {"count": 200, "seed": 1}})"));
  CHECK(r.pass);
  CHECK(std::stod(r.details["survey"]["mean"].get<std::string>()) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("jacobi violation fails the jacobi record") {
  const rn::Report r = rn::run(rn::parse_config(R"({
    "kind": "check-algebra",
    "inline": {"dim": 3, "brackets": [[0, 1, [0, 0, 1]], [1, 2, [1, 0, 0]], [0, 2, [1, 0, 0]]]},
    "seed": 1})"));
  CHECK_FALSE(r.pass);
  CHECK(has_check(r, "jacobi", false));
}

TEST_CASE("inline structure constants and matrices") {
  // c[i][j][k]: [e1, e2] = e3
  const rn::Report a = rn::run(rn::parse_config(R"({
    "kind": "check-algebra", "seed": 1,
    "inline": {"dim": 3, "structure_constants": [[[0,0,0],[0,0,1],[0,0,0]], [[0,0,-1],[0,0,0],[0,0,0]], [[0,0,0],[0,0,0],[0,0,0]]]}})"));
  CHECK(a.pass);
  CHECK(a.details["center_dim"] == 1);
  const rn::Report b = rn::run(rn::parse_config(R"({
    "kind": "curvature", "seed": 1, "count": 20,
    "inline": {"matrices": [[[0,1,0],[0,0,0],[0,0,0]], [[0,0,0],[0,0,1],[0,0,0]], [[0,0,1],[0,0,0],[0,0,0]]]}})"));
  CHECK(b.pass);
  CHECK(has_check(b, "gl_connection", true));
}

TEST_CASE("config diagnostics") {
  CHECK_THROWS_WITH_AS(rn::parse_config("{\n  \"kind\": \"curvature\",\n  \"seed\": 1,,\n}"), doctest::Contains("line 3"),
                       rn::ConfigError);
  CHECK_THROWS_WITH_AS(rn::parse_config(R"({"kind": "curvature", "builtin": "G3", "alpha": 1})"),
                       doctest::Contains("seed"), rn::ConfigError);
  CHECK_THROWS_WITH_AS(rn::parse_config(R"({"kind": "curvature", "builtin": "G3", "alpha": 1, "seed": 1, "colour": 2})"),
                       doctest::Contains("'colour'"), rn::ConfigError);
  CHECK_THROWS_WITH_AS(
      rn::parse_config(R"({"kind": "curvature", "builtin": "G3", "alpha": 1, "seed": 1, "algebra": {"builtin": "so3"}})"),
      doctest::Contains("exactly one algebra source"), rn::ConfigError);
  CHECK_THROWS_WITH_AS(rn::parse_config(R"({"kind": "curvature", "builtin": "G3", "seed": 1})"),
                       doctest::Contains("'alpha'"), rn::ConfigError);
  CHECK_THROWS_WITH_AS(rn::parse_config(R"({"kind": "curvature", "builtin": "N", "n": 1, "seed": 1})"),
                       doctest::Contains("algebra"), rn::ConfigError);
  CHECK_THROWS_WITH_AS(rn::parse_config(R"({"kind": "curvature", "builtin": "so3", "seed": 1, "tolerances": {"curvature": -1}})"),
                       doctest::Contains("tolerances.curvature"), rn::ConfigError);
  CHECK_THROWS_AS(rn::parse_config(R"({"kind": "construct", "builtin": "so3", "seed": 1})"), rn::ConfigError);
  CHECK_THROWS_AS(rn::parse_config(R"({"kind": "sing", "builtin": "so3", "seed": 1})"), rn::ConfigError);

  rn::JobConfig cfg = rn::parse_config(R"({"kind": "curvature", "builtin": "so3", "seed": 1})");
  CHECK_THROWS_AS(rn::apply_tolerance_override(cfg, "curvature"), rn::ConfigError);
  rn::apply_tolerance_override(cfg, "curvature=1e-6");
  CHECK(cfg.tol("curvature") == 1e-6);
}

TEST_CASE("seed override") {
  const rn::JobConfig cfg = rn::parse_config(R"({"kind": "curvature", "builtin": "so3"})", 42);
  CHECK(cfg.sampling.seed == 42);
}

TEST_CASE("identical config and seed give identical reports") {
  const char* text = R"({"kind": "verify-family", "builtin": "H", "n": 2, "count": 30, "seed": 5,
                         "post": {"terms": [{"coeff": [1, 2], "powers": [2, 1]}]}})";
  const std::string a = body_without_wall_time(rn::run(rn::parse_config(text)));
  const std::string b = body_without_wall_time(rn::run(rn::parse_config(text)));
  CHECK(a == b);
  const std::string c = body_without_wall_time(rn::run(rn::parse_config(text, 6)));
  CHECK(a != c);
}

TEST_CASE("second-construction rejects the z root") {
  const rn::Report r = rn::run(rn::parse_config(
      R"({"kind": "second-construction", "algebra": {"builtin": "damek_ricci", "dim_v": 2, "dim_z": 1}, "beta_root": "z", "seed": 3})"));
  CHECK_FALSE(r.pass);
  CHECK(has_check(r, "beta_perp_derived_n", false));
}

TEST_CASE("catalog") {
  const rn::Json c = rn::list_builtins();
  std::vector<std::string> sigs;
  for (const auto& b : c) sigs.push_back(b["signature"].get<std::string>());
  auto has = [&](const std::string& s) { return std::find(sigs.begin(), sigs.end(), s) != sigs.end(); };
  CHECK(has("N(n≥2)"));
  CHECK(has("damek_ricci(dim_v, dim_z)"));
  CHECK(has("G_alpha(α)"));
}

}  // TEST_SUITE
