#include "lieharm/runner.hpp"

#include "lieharm/calculus.hpp"
#include "lieharm/constructions.hpp"
#include "lieharm/error.hpp"
#include "lieharm/foliations.hpp"
#include "lieharm/geometry.hpp"
#include "lieharm/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace lieharm::runner {

namespace {

// ---- catalog -------------------------------------------------------------

enum class ParamType { Int, Real };

struct ParamSpec {
  const char* name;
  ParamType type;
  const char* schema;
  std::optional<double> fallback;
};

struct BuiltinSpec {
  const char* name;
  const char* signature;
  std::vector<ParamSpec> params;
  const char* realizes;
  bool matrix_model;
};

const std::vector<BuiltinSpec>& catalog() {
  static const std::vector<BuiltinSpec> specs = {
      {"N", "N(n≥2)", {{"n", ParamType::Int, "integer >= 2", {}}},
       "unipotent upper triangular n x n matrices; coordinate entries and the epimorphism to R^(n-1)", true},
      {"H", "H(n≥1)", {{"n", ParamType::Int, "integer >= 1", {}}},
       "(2n+1)-dimensional Heisenberg group; the map x + iy", true},
      {"K", "K(n≥2)", {{"n", ParamType::Int, "integer >= 2", {}}},
       "(n+1)-dimensional nilpotent group with abelian ideal; the map x sqrt(n-1) + i y_n", true},
      {"S", "S(n≥2)", {{"n", ParamType::Int, "integer >= 2", {}}},
       "upper triangular matrices with positive diagonal; first construction with nonzero xi-vector", true},
      {"G3", "G3(α, β)",
       {{"alpha", ParamType::Real, "real", {}}, {"beta", ParamType::Real, "real, default 0", 0.0}},
       "3-dimensional solvable G_{alpha,beta}: hyperbolic space, conformal foliation by geodesics along e1", true},
      {"G_alpha", "G_alpha(α)", {{"alpha", ParamType::Real, "real", {}}},
       "3-dimensional solvable g_alpha with no conformal foliation by geodesics", true},
      {"damek_ricci", "damek_ricci(dim_v, dim_z)",
       {{"dim_v", ParamType::Int, "integer >= 1", {}}, {"dim_z", ParamType::Int, "integer >= 1", {}}},
       "Damek-Ricci algebra v + z + a; second construction with roots 1/2 and 1", false},
      {"iwasawa_sl", "iwasawa_sl(n≥2)", {{"n", ParamType::Int, "integer >= 2", {}}},
       "upper triangular part of sl(n) graded by the roots e_r - e_s; second construction", true},
      {"so3", "so3", {}, "compact simple so(3); not solvable", false},
  };
  return specs;
}

const BuiltinSpec* find_builtin(const std::string& name) {
  for (const auto& s : catalog())
    if (name == s.name) return &s;
  return nullptr;
}

// ---- small helpers ---------------------------------------------------------

[[noreturn]] void field_error(const std::string& field, const std::string& msg) {
  throw ConfigError("config field '" + field + "': " + msg);
}

double as_real(const Json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (!s.empty() && end == s.c_str() + s.size()) return v;
  }
  field_error(field, "expected a number");
}

long long as_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  return j.get<long long>();
}

std::complex<double> as_complex(const Json& j, const std::string& field) {
  if (j.is_array()) {
    if (j.size() != 2) field_error(field, "complex numbers are [re, im]");
    return {as_real(j[0], field + "[0]"), as_real(j[1], field + "[1]")};
  }
  return {as_real(j, field), 0.0};
}

Eigen::MatrixXd as_matrix(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) field_error(field, "expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Eigen::MatrixXd M(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) field_error(field, "ragged matrix");
    for (int c = 0; c < cols; ++c)
      M(r, c) = as_real(j[r][c], field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return M;
}

Eigen::VectorXd as_vector(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) field_error(field, "expected a non-empty array of numbers");
  Eigen::VectorXd v(static_cast<int>(j.size()));
  for (int k = 0; k < v.size(); ++k) v(k) = as_real(j[k], field + "[" + std::to_string(k) + "]");
  return v;
}

Json num(double x) { return format_number(x); }

Json vec_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int k = 0; k < v.size(); ++k) a.push_back(num(v(k)));
  return a;
}

Json cvec_json(const Eigen::VectorXcd& v) {
  Json a = Json::array();
  for (int k = 0; k < v.size(); ++k) a.push_back(Json::array({num(v(k).real()), num(v(k).imag())}));
  return a;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

std::optional<FirstKind> first_kind(const std::string& name) {
  if (name == "N") return FirstKind::N;
  if (name == "H") return FirstKind::H;
  if (name == "K") return FirstKind::K;
  if (name == "S") return FirstKind::S;
  return std::nullopt;
}

// ---- config ----------------------------------------------------------------

const std::set<std::string> kParamKeys = {"n", "alpha", "beta", "dim_v", "dim_z"};
const std::set<std::string> kOptionKeys = {"family", "post", "beta_root", "grid", "expect", "vertical"};
const std::set<std::string> kSamplingKeys = {"count", "seed", "scale"};

Json normalize_builtin(const Json& src, const std::string& path) {
  if (!src.contains("builtin") || !src["builtin"].is_string()) field_error(path + "builtin", "expected a name");
  const std::string name = src["builtin"].get<std::string>();
  const BuiltinSpec* spec = find_builtin(name);
  if (!spec) field_error(path + "builtin", "unknown builtin '" + name + "' (see --list)");
  Json out = Json::object();
  out["builtin"] = name;
  std::set<std::string> allowed;
  for (const auto& p : spec->params) {
    allowed.insert(p.name);
    const std::string f = path + p.name;
    if (!src.contains(p.name)) {
      if (!p.fallback) field_error(f, std::string("required by builtin ") + name + " (" + p.schema + ")");
      out[p.name] = *p.fallback;
      continue;
    }
    if (p.type == ParamType::Int) {
      out[p.name] = as_int(src[p.name], f);
    } else {
      out[p.name] = as_real(src[p.name], f);
    }
  }
  for (const auto& [k, v] : src.items()) {
    if (k == "builtin" || allowed.count(k)) continue;
    if (kParamKeys.count(k)) field_error(path + k, "not a parameter of builtin " + name);
  }
  return out;
}

Json normalize_inline(const Json& src, const std::string& path) {
  if (!src.is_object()) field_error(path, "expected an object");
  static const std::set<std::string> keys = {"dim", "brackets", "structure_constants", "gram", "matrices"};
  for (const auto& [k, v] : src.items())
    if (!keys.count(k)) field_error(path + "." + k, "unknown key");
  const int sources = static_cast<int>(src.contains("brackets")) + static_cast<int>(src.contains("structure_constants")) +
                      static_cast<int>(src.contains("matrices"));
  if (sources != 1) field_error(path, "give exactly one of brackets, structure_constants, matrices");
  if (!src.contains("matrices") && !src.contains("dim")) field_error(path + ".dim", "required");
  return Json{{"inline", src}};
}

BuiltGroup resolve_inline(const Json& in) {
  const std::string path = "algebra.inline";
  std::optional<Eigen::MatrixXd> gram;
  if (in.contains("gram")) gram = as_matrix(in["gram"], path + ".gram");
  BuiltGroup g{"inline", LieAlgebra::abelian(1), std::nullopt, {}};
  try {
    if (in.contains("matrices")) {
      const Json& mj = in["matrices"];
      if (!mj.is_array() || mj.empty()) field_error(path + ".matrices", "expected a non-empty array of matrices");
      std::vector<Eigen::MatrixXd> mats;
      for (std::size_t k = 0; k < mj.size(); ++k)
        mats.push_back(as_matrix(mj[k], path + ".matrices[" + std::to_string(k) + "]"));
      g.realization = realization_from_matrices(std::move(mats), gram);
      g.algebra = g.realization->algebra();
    } else {
      const long long dim = as_int(in["dim"], path + ".dim");
      if (dim < 1 || dim > 64) field_error(path + ".dim", "must be between 1 and 64");
      const int n = static_cast<int>(dim);
      const Eigen::MatrixXd G = gram ? *gram : Eigen::MatrixXd::Identity(n, n);
      if (in.contains("brackets")) {
        const Json& bj = in["brackets"];
        if (!bj.is_array()) field_error(path + ".brackets", "expected an array of [i, j, [coefficients]]");
        std::vector<LieAlgebra::BracketEntry> entries;
        for (std::size_t e = 0; e < bj.size(); ++e) {
          const std::string f = path + ".brackets[" + std::to_string(e) + "]";
          if (!bj[e].is_array() || bj[e].size() != 3) field_error(f, "expected [i, j, [coefficients]]");
          const long long i = as_int(bj[e][0], f + "[0]"), j = as_int(bj[e][1], f + "[1]");
          if (i < 0 || i >= n || j < 0 || j >= n) field_error(f, "index out of range (0-based)");
          const Eigen::VectorXd c = as_vector(bj[e][2], f + "[2]");
          if (c.size() != n) field_error(f + "[2]", "needs dim coefficients");
          entries.push_back({static_cast<int>(i), static_cast<int>(j), c});
        }
        g.algebra = LieAlgebra::from_brackets(n, entries, G);
      } else {
        const Json& cj = in["structure_constants"];
        const std::string f = path + ".structure_constants";
        if (!cj.is_array() || static_cast<int>(cj.size()) != n) field_error(f, "expected dim x dim x dim array c[i][j][k]");
        std::vector<Eigen::MatrixXd> ad(n, Eigen::MatrixXd::Zero(n, n));
        for (int i = 0; i < n; ++i) {
          const Eigen::MatrixXd ci = as_matrix(cj[i], f + "[" + std::to_string(i) + "]");
          if (ci.rows() != n || ci.cols() != n) field_error(f + "[" + std::to_string(i) + "]", "expected dim x dim");
          ad[i] = ci.transpose();  // ad(X_i)(k, j) = c[i][j][k]
        }
        g.algebra = LieAlgebra(std::move(ad), G);
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    field_error(path, e.what());
  }
  for (int k = 0; k < g.algebra.dim(); ++k) g.labels.push_back("e" + std::to_string(k + 1));
  return g;
}

JobConfig parse_object(const Json& j, std::optional<std::uint64_t> seed_override) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  static const std::set<std::string> top = {"kind", "algebra", "builtin", "inline", "sampling", "tolerances", "output"};
  for (const auto& [k, v] : j.items())
    if (!top.count(k) && !kParamKeys.count(k) && !kOptionKeys.count(k) && !kSamplingKeys.count(k))
      field_error(k, "unknown key");

  JobConfig cfg;
  if (!j.contains("kind") || !j["kind"].is_string()) field_error("kind", "required; one of check-algebra, construct, verify-family, second-construction, foliation-scan, curvature");
  const auto kind = parse_kind(j["kind"].get<std::string>());
  if (!kind) field_error("kind", "unknown job kind '" + j["kind"].get<std::string>() + "'");
  cfg.kind = *kind;

  // algebra source
  const int sources = static_cast<int>(j.contains("algebra")) + static_cast<int>(j.contains("builtin")) +
                      static_cast<int>(j.contains("inline"));
  if (sources != 1) field_error("algebra", "exactly one algebra source required (algebra, builtin or inline)");
  if (j.contains("algebra")) {
    for (const auto& k : kParamKeys)
      if (j.contains(k)) field_error(k, "builtin parameters belong inside 'algebra'");
    const Json& a = j["algebra"];
    if (!a.is_object()) field_error("algebra", "expected an object");
    if (a.contains("builtin") == a.contains("inline")) field_error("algebra", "give exactly one of builtin, inline");
    if (a.contains("inline")) {
      for (const auto& [k, v] : a.items())
        if (k != "inline") field_error("algebra." + k, "unknown key next to inline");
      cfg.algebra = normalize_inline(a["inline"], "algebra.inline");
    } else {
      for (const auto& [k, v] : a.items())
        if (k != "builtin" && !kParamKeys.count(k)) field_error("algebra." + k, "unknown key");
      cfg.algebra = normalize_builtin(a, "algebra.");
    }
  } else if (j.contains("inline")) {
    for (const auto& k : kParamKeys)
      if (j.contains(k)) field_error(k, "builtin parameter given with an inline algebra");
    cfg.algebra = normalize_inline(j["inline"], "inline");
  } else {
    cfg.algebra = normalize_builtin(j, "");
  }

  // sampling
  Json s = Json::object();
  if (j.contains("sampling")) {
    if (!j["sampling"].is_object()) field_error("sampling", "expected an object");
    for (const auto& k : kSamplingKeys)
      if (j.contains(k)) field_error(k, "given both flat and inside 'sampling'");
    s = j["sampling"];
    for (const auto& [k, v] : s.items())
      if (!kSamplingKeys.count(k)) field_error("sampling." + k, "unknown key");
  } else {
    for (const auto& k : kSamplingKeys)
      if (j.contains(k)) s[k] = j[k];
  }
  const std::string sp = j.contains("sampling") ? "sampling." : "";
  if (s.contains("count")) {
    const long long c = as_int(s["count"], sp + "count");
    if (c < 1 || c > 1000000) field_error(sp + "count", "must be between 1 and 1000000");
    cfg.sampling.count = static_cast<int>(c);
  }
  if (s.contains("scale")) {
    cfg.sampling.scale = as_real(s["scale"], sp + "scale");
    if (!(cfg.sampling.scale > 0.0) || !std::isfinite(cfg.sampling.scale)) field_error(sp + "scale", "must be positive");
  }
  if (seed_override) {
    cfg.sampling.seed = *seed_override;
  } else if (s.contains("seed")) {
    if (!s["seed"].is_number_unsigned() && !(s["seed"].is_number_integer() && s["seed"].get<long long>() >= 0))
      field_error(sp + "seed", "expected a non-negative integer");
    cfg.sampling.seed = s["seed"].get<std::uint64_t>();
  } else {
    field_error(sp + "seed", "required (runs are seeded for determinism)");
  }

  // tolerances
  cfg.tolerances = default_tolerances();
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) field_error("tolerances", "expected an object");
    for (const auto& [k, v] : j["tolerances"].items()) {
      if (!cfg.tolerances.count(k)) field_error("tolerances." + k, "unknown tolerance");
      const double t = as_real(v, "tolerances." + k);
      if (!(t > 0.0) || !std::isfinite(t)) field_error("tolerances." + k, "must be positive");
      cfg.tolerances[k] = t;
    }
  }

  if (j.contains("output")) {
    if (!j["output"].is_string()) field_error("output", "expected a path");
    cfg.output = j["output"].get<std::string>();
  }
  for (const auto& k : kOptionKeys)
    if (j.contains(k)) cfg.options[k] = j[k];

  // job-specific validation, resolving the algebra once
  const BuiltGroup g = resolve_algebra(cfg.algebra);
  const std::string builtin = cfg.algebra.contains("builtin") ? cfg.algebra["builtin"].get<std::string>() : "";
  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      if (cfg.options.contains(k)) field_error(k, std::string("not used by job kind ") + to_string(cfg.kind));
  };
  switch (cfg.kind) {
    case JobKind::CheckAlgebra:
    case JobKind::Curvature:
      forbid({"family", "post", "beta_root", "grid", "vertical"});
      if (cfg.kind == JobKind::CheckAlgebra) forbid({"expect"});
      if (cfg.options.contains("expect")) as_real(cfg.options["expect"], "expect");
      break;
    case JobKind::Construct:
      forbid({"family", "post", "beta_root", "grid", "expect", "vertical"});
      if (!first_kind(builtin)) field_error("algebra.builtin", "construct needs builtin N, H, K or S");
      break;
    case JobKind::VerifyFamily: {
      forbid({"beta_root", "grid", "expect", "vertical"});
      if (!first_kind(builtin)) field_error("algebra.builtin", "verify-family needs builtin N, H, K or S");
      if (cfg.options.contains("family")) {
        const Json& f = cfg.options["family"];
        if (!f.is_array() || f.empty()) field_error("family", "expected a non-empty array of coefficient vectors");
        for (std::size_t k = 0; k < f.size(); ++k) {
          if (!f[k].is_array() || f[k].empty()) field_error("family[" + std::to_string(k) + "]", "expected an array");
          for (std::size_t l = 0; l < f[k].size(); ++l)
            as_complex(f[k][l], "family[" + std::to_string(k) + "][" + std::to_string(l) + "]");
        }
      }
      if (cfg.options.contains("post")) {
        const Json& p = cfg.options["post"];
        if (!p.is_object() || !p.contains("terms") || !p["terms"].is_array())
          field_error("post", "expected {\"terms\": [{\"coeff\": c, \"powers\": [...]}]}");
        for (std::size_t t = 0; t < p["terms"].size(); ++t) {
          const Json& term = p["terms"][t];
          const std::string f = "post.terms[" + std::to_string(t) + "]";
          if (!term.is_object() || !term.contains("coeff") || !term.contains("powers") || !term["powers"].is_array())
            field_error(f, "expected {coeff, powers}");
          as_complex(term["coeff"], f + ".coeff");
          for (std::size_t q = 0; q < term["powers"].size(); ++q)
            if (as_int(term["powers"][q], f + ".powers") < 0) field_error(f + ".powers", "must be non-negative");
        }
      }
      break;
    }
    case JobKind::SecondConstruction:
      forbid({"family", "post", "grid", "expect", "vertical"});
      if (builtin != "damek_ricci" && builtin != "iwasawa_sl")
        field_error("algebra.builtin", "second-construction needs builtin damek_ricci or iwasawa_sl");
      if (cfg.options.contains("beta_root") && !cfg.options["beta_root"].is_string())
        field_error("beta_root", "expected a root label");
      break;
    case JobKind::FoliationScan:
      forbid({"family", "post", "beta_root"});
      if (cfg.options.contains("vertical")) {
        const Json& v = cfg.options["vertical"];
        if (!(v.is_string() && v.get<std::string>() == "center")) {
          if (as_vector(v, "vertical").size() != g.algebra.dim()) field_error("vertical", "needs one entry per basis vector");
        }
        if (cfg.options.contains("grid")) field_error("grid", "not used when a vertical direction is given");
      } else {
        if (g.algebra.dim() != 3) field_error("algebra", "foliation-scan without 'vertical' needs a 3-dimensional algebra");
        if (cfg.options.contains("grid")) {
          const long long grid = as_int(cfg.options["grid"], "grid");
          if (grid < 2 || grid > 2000) field_error("grid", "must be between 2 and 2000");
        }
      }
      if (cfg.options.contains("expect")) {
        const Json& e = cfg.options["expect"];
        static const std::set<std::string> scan = {"hit", "none", "any"};
        static const std::set<std::string> flags = {"totally_geodesic", "conformal", "riemannian"};
        if (cfg.options.contains("vertical")) {
          const Json arr = e.is_array() ? e : Json::array({e});
          for (const auto& x : arr)
            if (!x.is_string() || !flags.count(x.get<std::string>()))
              field_error("expect", "expected totally_geodesic, conformal and/or riemannian");
        } else if (!e.is_string() || !scan.count(e.get<std::string>())) {
          field_error("expect", "expected hit, none or any");
        }
      }
      break;
  }
  return cfg;
}

// ---- report plumbing -------------------------------------------------------

struct Recorder {
  Report& r;
  void add(const std::string& name, double residual, double tol, std::string detail = {}) {
    r.checks.push_back({name, residual, tol, std::isfinite(residual) && residual < tol, std::move(detail)});
  }
  void add_explicit(const std::string& name, double residual, double tol, bool pass, std::string detail = {}) {
    r.checks.push_back({name, residual, tol, pass, std::move(detail)});
  }
};

std::vector<ComplexField> family_from_config(const JobConfig& cfg, const FirstConstruction& fc) {
  std::vector<ComplexField> fam;
  if (cfg.options.contains("family")) {
    const Json& f = cfg.options["family"];
    for (std::size_t k = 0; k < f.size(); ++k) {
      const std::string path = "family[" + std::to_string(k) + "]";
      if (f[k].size() != fc.phi.size())
        field_error(path, "needs " + std::to_string(fc.phi.size()) + " coefficients, one per component of the epimorphism");
      Eigen::VectorXcd v(static_cast<int>(fc.phi.size()));
      for (int l = 0; l < v.size(); ++l) v(l) = as_complex(f[k][l], path);
      fam.push_back(ComplexField::pair(v, fc.phi));
    }
  } else {
    fam = fc.family;
  }
  if (cfg.options.contains("post")) {
    ComplexPolynomial P;
    P.variables = static_cast<int>(fam.size());
    for (const auto& term : cfg.options["post"]["terms"]) {
      if (static_cast<int>(term["powers"].size()) != P.variables)
        field_error("post.terms", "each term needs one power per family member (" + std::to_string(P.variables) + ")");
      ComplexPolynomial::Term t;
      t.coeff = as_complex(term["coeff"], "post.coeff");
      for (const auto& q : term["powers"]) t.powers.push_back(static_cast<int>(q.get<long long>()));
      P.terms.push_back(std::move(t));
    }
    fam.push_back(holomorphic_post(P, fam));
  }
  return fam;
}

void job_check_algebra(const JobConfig& cfg, const BuiltGroup& g, Report& r) {
  Recorder rec{r};
  const LieAlgebra& A = g.algebra;
  const double tol = cfg.tol("structure");
  rec.add("jacobi", jacobi_residual(A), tol * std::max(1.0, A.max_constant() * A.max_constant()));
  if (g.realization) rec.add("homomorphism", g.realization->homomorphism_residual(), tol);
  const ConnectionTable T = koszul(A);
  rec.add("torsion_free", torsion_residual(T), tol);
  rec.add("metric_compatible", metric_residual(T), tol);

  Json& d = r.details;
  d["dim"] = A.dim();
  d["labels"] = g.labels;
  Json derived = Json::array(), lower = Json::array();
  for (const auto& s : derived_series(A)) derived.push_back(s.dim());
  for (const auto& s : lower_central_series(A)) lower.push_back(s.dim());
  d["derived_series_dims"] = derived;
  d["lower_central_series_dims"] = lower;
  d["solvable"] = is_solvable(A);
  d["nilpotent"] = is_nilpotent(A);
  d["abelian"] = is_abelian(A);
  d["center_dim"] = center(A).dim();
  Json traces = Json::array();
  for (int k = 0; k < A.dim(); ++k) traces.push_back(num(ad_trace(A, Eigen::VectorXd::Unit(A.dim(), k))));
  d["ad_traces"] = traces;
}

void first_details(const FirstConstruction& fc, Json& d) {
  d["xi"] = vec_json(fc.xi);
  d["dim_W"] = fc.W.dim();
  d["dim_V"] = fc.V.dim();
  Json comps = Json::array();
  for (const auto& f : fc.phi) comps.push_back(f.describe());
  d["components"] = comps;
  Json vs = Json::array();
  for (const auto& v : fc.V.vectors) vs.push_back(cvec_json(v));
  d["V"] = vs;
}

void job_construct(const JobConfig& cfg, const BuiltGroup& g, Report& r) {
  Recorder rec{r};
  const FirstKind kind = *first_kind(cfg.algebra["builtin"].get<std::string>());
  const int n = static_cast<int>(cfg.algebra["n"].get<long long>());
  std::optional<FirstConstruction> fc;
  try {
    fc = first_construction(kind, n);
  } catch (const ConstructionError& e) {
    rec.add_explicit("family_nonempty", 1.0, 0.5, false, e.what());
    return;
  }
  rec.add_explicit("family_nonempty", fc->V.dim() > 0 ? 0.0 : 1.0, 0.5, fc->V.dim() > 0);
  rec.add("differential", fc->differential_residual, cfg.tol("structure"));
  rec.add("isotropy", fc->V.isotropy_residual(), cfg.tol("structure"));
  double xi_perp = 0.0;
  for (const auto& v : fc->V.vectors) xi_perp = std::max(xi_perp, std::abs(symmetric_pairing(v, fc->xi.cast<std::complex<double>>())));
  rec.add("xi_orthogonality", xi_perp, cfg.tol("structure") * std::max(1.0, fc->xi.norm()));

  const LeftInvariantFrame F(*g.realization);
  const auto points = sample_points(*g.realization, cfg.sampling.count, cfg.sampling.seed, cfg.sampling.scale);
  const FamilyReport fr = verify_family(fc->family, F, points, cfg.tol("family"));
  rec.add("tau", fr.worst_tau, cfg.tol("family"));
  rec.add("kappa", fr.worst_kappa, cfg.tol("family"));
  first_details(*fc, r.details);
  Json fam = Json::array();
  for (const auto& f : fc->family) fam.push_back(f.describe());
  r.details["family"] = fam;
}

void job_verify_family(const JobConfig& cfg, const BuiltGroup& g, Report& r) {
  Recorder rec{r};
  const std::string builtin = cfg.algebra["builtin"].get<std::string>();
  const FirstKind kind = *first_kind(builtin);
  const int n = static_cast<int>(cfg.algebra["n"].get<long long>());
  const MatrixRealization& R = *g.realization;
  const LeftInvariantFrame F(R);
  const auto points = sample_points(R, cfg.sampling.count, cfg.sampling.seed, cfg.sampling.scale);

  // components of the epimorphism are needed even when V is empty
  std::optional<FirstConstruction> fc;
  try {
    fc = first_construction(kind, n);
  } catch (const ConstructionError& e) {
    if (!cfg.options.contains("family")) {
      rec.add_explicit("family_nonempty", 1.0, 0.5, false, e.what());
      return;
    }
    throw ConfigError(std::string("config field 'family': ") + e.what());
  }
  const std::vector<ComplexField> fam = family_from_config(cfg, *fc);

  const FamilyReport fr = verify_family(fam, F, points, cfg.tol("family"));
  rec.add("tau", fr.worst_tau, cfg.tol("family"));
  rec.add("kappa", fr.worst_kappa, cfg.tol("family"));

  // components of Phi: horizontally conformal with unit dilation; harmonic unless xi != 0
  const int m = static_cast<int>(fc->phi.size());
  double kap = 0.0, tau = 0.0;
  for (const auto& p : points)
    for (int k = 0; k < m; ++k) {
      tau = std::max(tau, std::abs(laplacian(fc->phi[k], F, p) + (fc->xi.size() ? fc->xi(k) : 0.0)));
      for (int l = k; l < m; ++l) kap = std::max(kap, std::abs(kappa(fc->phi[k], fc->phi[l], F, p) - (k == l ? 1.0 : 0.0)));
    }
  rec.add("phi_kappa", kap, cfg.tol("harmonic"));
  rec.add("phi_tau", tau, cfg.tol("harmonic"), "tau(phi_k) compared with -xi_k");

  if (kind == FirstKind::N) {
    // kappa(x_ij, x_kl) = delta_jl sum_{max(i,k) <= r < l} x_ir x_kr, 1-based, x_rr = 1
    double closed = 0.0, coord_tau = 0.0;
    const int N = n;
    for (const auto& p : points) {
      std::vector<ScalarField> xs;
      std::vector<std::pair<int, int>> idx;
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          xs.push_back(ScalarField::entry(i, j));
          idx.emplace_back(i, j);
        }
      for (std::size_t a = 0; a < xs.size(); ++a) {
        coord_tau = std::max(coord_tau, std::abs(laplacian(xs[a], F, p)));
        for (std::size_t b = a; b < xs.size(); ++b) {
          const auto [i, j] = idx[a];
          const auto [k, l] = idx[b];
          double expect = 0.0;
          if (j == l)
            for (int s = std::max(i, k); s < l; ++s) expect += p.matrix(i, s) * p.matrix(k, s);
          closed = std::max(closed, std::abs(kappa(xs[a], xs[b], F, p) - expect));
        }
      }
    }
    rec.add("kappa_closed_form", closed, cfg.tol("harmonic"));
    rec.add("tau_coordinates", coord_tau, cfg.tol("harmonic"));
  }

  // exact jets against central differences on seeded (field, point, direction) triples
  {
    Rng rng(cfg.sampling.seed ^ 0x9e3779b97f4a7c15ULL);
    double worst = 0.0;
    const int triples = std::min<int>(cfg.sampling.count, 200);
    for (int t = 0; t < triples && !points.empty(); ++t) {
      const auto& fld = fam[static_cast<std::size_t>(rng.uniform() * fam.size()) % fam.size()];
      const auto& p = points[static_cast<std::size_t>(rng.uniform() * points.size()) % points.size()];
      const Eigen::VectorXd X = rng.normal_vector(R.algebra().dim()).normalized();
      for (const ScalarField* part : {&fld.re, &fld.im}) {
        const auto exact = derivs(*part, R, p, X);
        const auto fd = fd_check(*part, R, p, X);
        worst = std::max({worst, rel_err(exact.first, fd.first), rel_err(exact.second, fd.second)});
      }
    }
    rec.add("fd_cross_check", worst, cfg.tol("fd"));
  }

  first_details(*fc, r.details);
  Json fj = Json::array();
  for (std::size_t k = 0; k < fam.size(); ++k)
    fj.push_back(Json{{"field", fam[k].describe()}, {"max_tau", num(fr.max_tau[k])}});
  r.details["family"] = fj;
  r.details["points"] = fr.points;
  if (!fr.warnings.empty()) r.details["warnings"] = fr.warnings;
}

void job_second_construction(const JobConfig& cfg, const BuiltGroup& g, Report& r) {
  Recorder rec{r};
  const std::string builtin = cfg.algebra["builtin"].get<std::string>();
  std::optional<RootGradedAlgebra> G;
  try {
    if (builtin == "damek_ricci") {
      const std::string beta = cfg.options.value("beta_root", std::string("v"));
      G = damek_ricci_root_graded(g, static_cast<int>(cfg.algebra["dim_v"].get<long long>()),
                                  static_cast<int>(cfg.algebra["dim_z"].get<long long>()), beta);
    } else {
      const std::string beta = cfg.options.value("beta_root", std::string("e1-e2"));
      G = iwasawa_root_graded(g, static_cast<int>(cfg.algebra["n"].get<long long>()), beta);
    }
  } catch (const InputError& e) {
    field_error("beta_root", e.what());
  }
  Rng rng(cfg.sampling.seed);
  std::vector<Eigen::VectorXd> samples;
  for (int k = 0; k < cfg.sampling.count; ++k)
    samples.push_back(rng.uniform_vector(G->a.dim(), -cfg.sampling.scale, cfg.sampling.scale));
  const SecondConstructionReport sr =
      second_construction_check(*G, samples, cfg.tol("conformal"), cfg.tol("minimality"));
  for (const auto& h : sr.hypotheses) rec.add_explicit(h.name, h.residual, h.tol, h.pass, h.detail);
  if (sr.hypotheses_ok) {
    for (const auto& c : sr.checks) rec.add_explicit(c.name, c.residual, c.tol, c.pass, c.detail);
  } else {
    const double inf = std::numeric_limits<double>::infinity();
    rec.add_explicit("dilation", inf, cfg.tol("conformal"), false, "skipped: hypotheses failed");
    rec.add_explicit("minimality_bracket", inf, cfg.tol("minimality"), false, "skipped: hypotheses failed");
    rec.add_explicit("minimality_connection", inf, cfg.tol("minimality"), false, "skipped: hypotheses failed");
  }
  r.details["beta_root"] = G->roots[G->beta].label;
  r.details["beta_dim"] = sr.beta_dim;
  Json roots = Json::array();
  for (const auto& rs : G->roots)
    roots.push_back(Json{{"label", rs.label}, {"functional", vec_json(rs.functional)}, {"dim", rs.space.dim()}});
  r.details["roots"] = roots;
  r.details["samples"] = static_cast<int>(samples.size());
}

Json flags_json(const FoliationFlags& f) {
  Json j{{"totally_geodesic", f.totally_geodesic}, {"conformal", f.conformal}, {"riemannian", f.riemannian},
         {"geodesic_residual", num(f.geodesic_residual)}, {"conformal_residual", num(f.conformal_residual)}};
  if (f.conformal_vector) j["conformal_vector"] = vec_json(*f.conformal_vector);
  return j;
}

Json survey_json(const CurvatureSurvey& s) {
  return Json{{"min", num(s.min)}, {"max", num(s.max)}, {"mean", num(s.mean)}, {"planes", s.planes}, {"constant", s.constant}};
}

void job_foliation(const JobConfig& cfg, const BuiltGroup& g, Report& r) {
  Recorder rec{r};
  const LieAlgebra& A = g.algebra;
  const ConnectionTable T = koszul(A);
  const std::string builtin = cfg.algebra.contains("builtin") ? cfg.algebra["builtin"].get<std::string>() : "";

  if (cfg.options.contains("vertical")) {
    const Json& vj = cfg.options["vertical"];
    Subspace V = vj.is_string() ? center(A) : Subspace{A.dim(), as_vector(vj, "vertical")};
    if (V.dim() == 0) {
      rec.add_explicit("vertical_nonzero", 1.0, 0.5, false, "vertical distribution is zero");
      return;
    }
    const DistributionSpec D(A, V);
    const FoliationFlags f = classify(D, T, cfg.tol("classify"));
    Json expect = cfg.options.value("expect", Json(Json::array({"conformal", "totally_geodesic"})));
    if (!expect.is_array()) expect = Json::array({expect});
    rec.add("involutive", D.involutivity_residual(), cfg.tol("classify"));
    for (const auto& e : expect) {
      const std::string name = e.get<std::string>();
      if (name == "totally_geodesic") rec.add("totally_geodesic", f.geodesic_residual, cfg.tol("classify"));
      if (name == "conformal") rec.add("conformal", f.conformal_residual, cfg.tol("classify"));
      if (name == "riemannian") {
        const double vnorm = f.conformal_vector ? std::sqrt(A.inner(*f.conformal_vector, *f.conformal_vector))
                                                : std::numeric_limits<double>::infinity();
        rec.add("riemannian", std::max(vnorm, f.conformal_residual), cfg.tol("classify"));
      }
    }
    r.details["vertical"] = Json::array();
    for (int k = 0; k < D.vertical().dim(); ++k) r.details["vertical"].push_back(vec_json(D.vertical().basis.col(k)));
    r.details["flags"] = flags_json(f);
    return;
  }

  const int grid = static_cast<int>(cfg.options.value("grid", 200LL));
  std::string expect = builtin == "G3" ? "hit" : builtin == "G_alpha" ? "none" : "any";
  if (cfg.options.contains("expect")) expect = cfg.options["expect"].get<std::string>();
  const ScanResult s = scan_3d(A, grid, cfg.tol("classify"), cfg.sampling.seed);

  if (expect == "hit") {
    double best_res = s.min_residual;
    const ScanHit* chosen = nullptr;
    for (const auto& h : s.hits) {
      best_res = std::min(best_res, h.residual);
      if (!chosen || std::abs(h.direction(0)) > std::abs(chosen->direction(0))) chosen = &h;
    }
    rec.add("hit_found", chosen ? chosen->residual : best_res, cfg.tol("classify"));
    if (chosen) {
      if (builtin == "G3") {
        rec.add("alpha_recovered", std::abs(chosen->alpha - cfg.algebra["alpha"].get<double>()), cfg.tol("recovery"));
        rec.add("beta_recovered", std::abs(chosen->beta - cfg.algebra["beta"].get<double>()), cfg.tol("recovery"));
      }
      rec.add("adjoint_form", chosen->adjoint_residual, cfg.tol("recovery"));
      try {
        const Certificate c = constant_curvature_certificate(A, chosen->direction, cfg.sampling.seed);
        rec.add_explicit("certificate", c.curvature_value_residual, cfg.tol("curvature"),
                         c.pass && c.curvature_value_residual < cfg.tol("curvature"));
        r.details["certificate"] = Json{{"alpha", num(c.alpha)},
                                        {"beta", num(c.beta)},
                                        {"adjoint_residual", num(c.adjoint_residual)},
                                        {"horizontal_bracket", num(c.horizontal_bracket)},
                                        {"derived_span_residual", num(c.derived_span_residual)},
                                        {"curvature", survey_json(c.curvature)}};
      } catch (const PreconditionError& e) {
        rec.add_explicit("certificate", std::numeric_limits<double>::infinity(), cfg.tol("curvature"), false, e.what());
      }
    }
  } else if (expect == "none") {
    rec.add_explicit("nonexistence", s.min_residual, cfg.tol("nonexistence"), s.min_residual > cfg.tol("nonexistence"),
                     "passes when the minimum residual stays above the tolerance; numerical evidence only");
  } else {
    rec.add_explicit("scan_completed", s.min_residual, cfg.tol("classify"), true, "no expectation configured");
  }

  Json& d = r.details;
  d["grid_points"] = s.grid_points;
  d["min_residual"] = num(s.min_residual);
  d["note"] = s.note;
  Json hits = Json::array();
  for (const auto& h : s.hits)
    hits.push_back(Json{{"direction", vec_json(h.direction)},
                        {"residual", num(h.residual)},
                        {"alpha", num(h.alpha)},
                        {"beta", num(h.beta)},
                        {"adjoint_residual", num(h.adjoint_residual)},
                        {"flags", flags_json(h.flags)},
                        {"curvature", survey_json(h.curvature)}});
  d["hits"] = hits;
}

void job_curvature(const JobConfig& cfg, const BuiltGroup& g, Report& r) {
  Recorder rec{r};
  const LieAlgebra& A = g.algebra;
  const ConnectionTable T = koszul(A);
  const CurvatureTensor Rt(T);
  const double st = cfg.tol("structure") * std::max(1.0, A.max_constant() * A.max_constant());
  rec.add("torsion_free", torsion_residual(T), cfg.tol("structure") * std::max(1.0, A.max_constant()));
  rec.add("metric_compatible", metric_residual(T), cfg.tol("structure") * std::max(1.0, A.max_constant()));
  rec.add("curvature_symmetries", Rt.symmetry_residual(), st);
  rec.add("bianchi", Rt.bianchi_residual(), st);

  if (g.realization && g.realization->trace_metric_residual() < 1e-10) {
    double worst = 0.0;
    Rng rng(cfg.sampling.seed);
    for (int k = 0; k < A.dim() + 8; ++k) {
      const Eigen::VectorXd x = k < A.dim() ? Eigen::VectorXd::Unit(A.dim(), k) : rng.normal_vector(A.dim());
      const Eigen::VectorXd xf = T.to_frame(A, x);
      worst = std::max(worst, (gl_connection_term(*g.realization, x) - T.to_declared(T.covariant(xf, xf))).cwiseAbs().maxCoeff());
    }
    rec.add("gl_connection", worst, cfg.tol("structure") * std::max(1.0, A.max_constant()));
  }

  const CurvatureSurvey s = survey_sectional(Rt, cfg.sampling.count, cfg.sampling.seed, cfg.tol("curvature"));
  std::optional<double> expect;
  const std::string builtin = cfg.algebra.contains("builtin") ? cfg.algebra["builtin"].get<std::string>() : "";
  if (builtin == "G3") {
    const double a = cfg.algebra["alpha"].get<double>();
    expect = -a * a;
  }
  if (cfg.options.contains("expect")) expect = as_real(cfg.options["expect"], "expect");
  if (expect) {
    rec.add("constant_curvature", s.max - s.min, cfg.tol("curvature"));
    rec.add("curvature_value", std::max(std::abs(s.max - *expect), std::abs(s.min - *expect)), cfg.tol("curvature"));
    r.details["expected"] = num(*expect);
  }
  r.details["survey"] = survey_json(s);
  r.details["verdict"] = s.constant ? "constant sectional curvature" : "non-constant sectional curvature";
}

}  // namespace

const char* to_string(JobKind k) {
  switch (k) {
    case JobKind::CheckAlgebra: return "check-algebra";
    case JobKind::Construct: return "construct";
    case JobKind::VerifyFamily: return "verify-family";
    case JobKind::SecondConstruction: return "second-construction";
    case JobKind::FoliationScan: return "foliation-scan";
    case JobKind::Curvature: return "curvature";
  }
  return "?";
}

std::optional<JobKind> parse_kind(const std::string& s) {
  for (JobKind k : {JobKind::CheckAlgebra, JobKind::Construct, JobKind::VerifyFamily, JobKind::SecondConstruction,
                    JobKind::FoliationScan, JobKind::Curvature})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t = {
      {"classify", 1e-9},  {"conformal", 1e-9}, {"curvature", 1e-8},    {"family", 1e-8},
      {"fd", 1e-6},        {"harmonic", 1e-9},  {"minimality", 1e-10},  {"nonexistence", 1e-3},
      {"recovery", 1e-8},  {"structure", 1e-10},
  };
  return t;
}

Json JobConfig::echo() const {
  Json j = Json::object();
  j["kind"] = to_string(kind);
  Json a = algebra;
  for (auto& [k, v] : a.items())
    if (v.is_number_float()) v = num(v.get<double>());
  j["algebra"] = a;
  j["sampling"] = Json{{"count", sampling.count}, {"seed", sampling.seed}, {"scale", num(sampling.scale)}};
  Json t = Json::object();
  for (const auto& [k, v] : tolerances) t[k] = num(v);
  j["tolerances"] = t;
  if (!output.empty()) j["output"] = output;
  for (const auto& [k, v] : options.items()) j[k] = v;
  return j;
}

JobConfig parse_config(const std::string& text, std::optional<std::uint64_t> seed_override) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    const auto nl = text.rfind('\n', upto == 0 ? 0 : upto - 1);
    const std::size_t col = nl == std::string::npos ? upto + 1 : upto - nl;
    std::string what = e.what();
    if (const auto p = what.find("parse error"); p != std::string::npos) what = what.substr(p);
    throw ConfigError("config: line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
  return parse_object(j, seed_override);
}

JobConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), seed_override);
}

void apply_tolerance_override(JobConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--tol: expected name=value, got '" + assignment + "'");
  const std::string name = assignment.substr(0, eq);
  if (!cfg.tolerances.count(name)) field_error("tolerances." + name, "unknown tolerance");
  const double v = as_real(Json(assignment.substr(eq + 1)), "tolerances." + name);
  if (!(v > 0.0) || !std::isfinite(v)) field_error("tolerances." + name, "must be positive");
  cfg.tolerances[name] = v;
}

BuiltGroup resolve_algebra(const Json& algebra) {
  if (algebra.contains("inline")) return resolve_inline(algebra["inline"]);
  const std::string name = algebra["builtin"].get<std::string>();
  auto I = [&](const char* k) { return static_cast<int>(algebra[k].get<long long>()); };
  auto D = [&](const char* k) { return algebra[k].get<double>(); };
  try {
    if (name == "N") return build_N(I("n"));
    if (name == "H") return build_H(I("n"));
    if (name == "K") return build_K(I("n"));
    if (name == "S") return build_S(I("n"));
    if (name == "G3") return build_G3(D("alpha"), D("beta"));
    if (name == "G_alpha") return build_Galpha(D("alpha"));
    if (name == "damek_ricci") return build_damek_ricci(default_damek_ricci_data(I("dim_v"), I("dim_z")));
    if (name == "iwasawa_sl") return build_iwasawa_sl(I("n"));
    if (name == "so3") return build_so3();
  } catch (const std::exception& e) {
    field_error("algebra", e.what());
  }
  field_error("algebra.builtin", "unknown builtin '" + name + "'");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

Report run(const JobConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.job = cfg.echo();
  r.seed = cfg.sampling.seed;
  const BuiltGroup g = resolve_algebra(cfg.algebra);
  switch (cfg.kind) {
    case JobKind::CheckAlgebra: job_check_algebra(cfg, g, r); break;
    case JobKind::Construct: job_construct(cfg, g, r); break;
    case JobKind::VerifyFamily: job_verify_family(cfg, g, r); break;
    case JobKind::SecondConstruction: job_second_construction(cfg, g, r); break;
    case JobKind::FoliationScan: job_foliation(cfg, g, r); break;
    case JobKind::Curvature: job_curvature(cfg, g, r); break;
  }
  r.pass = !r.checks.empty() &&
           std::all_of(r.checks.begin(), r.checks.end(), [](const CheckRecord& c) { return c.pass; });
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Json Report::to_json() const {
  Json j = Json::object();
  j["job"] = job;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json cj{{"name", c.name}, {"max_residual", num(c.max_residual)}, {"tolerance", num(c.tolerance)}, {"pass", c.pass}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    cs.push_back(cj);
  }
  j["checks"] = cs;
  j["environment"] = Json{{"version", kVersion}, {"seed", seed}};
  j["details"] = details;
  j["pass"] = pass;
  j["wall_time"] = num(wall_time);
  return j;
}

std::string Report::summary() const {
  std::ostringstream out;
  out << job.value("kind", std::string("job")) << " (seed " << seed << ")\n";
  for (const auto& c : checks) {
    out << (c.pass ? "  [PASS] " : "  [FAIL] ") << c.name << "  residual " << format_number(c.max_residual)
        << "  tolerance " << format_number(c.tolerance);
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
  }
  out << (pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

Json list_builtins() {
  Json out = Json::array();
  for (const auto& s : catalog()) {
    Json params = Json::object();
    for (const auto& p : s.params) params[p.name] = p.schema;
    out.push_back(Json{{"name", s.name},
                       {"signature", s.signature},
                       {"parameters", params},
                       {"realizes", s.realizes},
                       {"matrix_model", s.matrix_model}});
  }
  return out;
}

}  // namespace lieharm::runner
