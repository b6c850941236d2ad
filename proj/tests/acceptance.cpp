// Acceptance checks: one [PASS]/[FAIL] line per criterion, exit status 0 iff all pass.

#include "lieharm/builders.hpp"
#include "lieharm/calculus.hpp"
#include "lieharm/constructions.hpp"
#include "lieharm/error.hpp"
#include "lieharm/foliations.hpp"
#include "lieharm/geometry.hpp"
#include "lieharm/runner.hpp"
#include "oracles.hpp"

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace lieharm;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " FAILED: " << what << ";";
    }
  }
};

std::string sci(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", x);
  return b;
}

Outcome coordinate_closed_form() {
  Outcome o;
  double kap = 0.0, tau = 0.0;
  for (int n = 3; n <= 6; ++n) {
    const BuiltGroup g = build_N(n);
    const LeftInvariantFrame F(*g.realization);
    for (const auto& p : sample_points(*g.realization, 50, 100 + n, 1.0))
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const ScalarField xij = ScalarField::entry(i, j);
          tau = std::max(tau, std::abs(laplacian(xij, F, p)));
          for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l)
              kap = std::max(kap, std::abs(kappa(xij, ScalarField::entry(k, l), F, p) -
                                           oracle::unipotent_kappa(p.matrix, i, j, k, l)));
        }
  }
  o.require(kap < 1e-9, "kappa closed form");
  o.require(tau < 1e-9, "tau(x_ij)");
  o.note << " max kappa residual " << sci(kap) << ", max |tau| " << sci(tau);
  return o;
}

Outcome unipotent_epimorphism() {
  Outcome o;
  double worst = 0.0;
  for (int n = 3; n <= 6; ++n) {
    const BuiltGroup g = build_N(n);
    const LeftInvariantFrame F(*g.realization);
    std::vector<ScalarField> phi;
    for (int k = 0; k + 1 < n; ++k) phi.push_back(ScalarField::entry(k, k + 1));
    for (const auto& p : sample_points(*g.realization, 100, 200 + n, 1.0))
      for (std::size_t k = 0; k < phi.size(); ++k) {
        worst = std::max(worst, std::abs(laplacian(phi[k], F, p)));
        for (std::size_t l = 0; l < phi.size(); ++l)
          worst = std::max(worst, std::abs(kappa(phi[k], phi[l], F, p) - (k == l ? 1.0 : 0.0)));
      }
  }
  o.require(worst < 1e-9, "kappa(phi_k, phi_l) = delta_kl, tau(phi_k) = 0");
  o.note << " max residual " << sci(worst);
  return o;
}

Outcome upper_triangular_family() {
  Outcome o;
  for (int n = 2; n <= 6; ++n) {
    const BuiltGroup s = build_S(n);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(s.algebra.dim(), n);
    for (int t = 0; t < n; ++t) H(t, t) = 1.0;
    const Eigen::VectorXd xi = xi_vector(s.algebra, H);
    bool exact = true;
    for (int t = 0; t < n; ++t) exact = exact && xi(t) == static_cast<double>((n + 1) - 2 * (t + 1));
    o.require(exact, "xi on S_" + std::to_string(n));
  }
  o.note << " xi exact for n=2..6; dim V:";
  for (int n = 3; n <= 5; ++n) {
    try {
      const FirstConstruction fc = first_construction(FirstKind::S, n);
      o.note << " n=" << n << "->" << fc.V.dim();
      o.require(fc.V.dim() >= 2, "dim V >= 2 for n=" + std::to_string(n) + " (got " + std::to_string(fc.V.dim()) +
                                     "; at most floor((n-1)/2) inside xi-perp)");
      const LeftInvariantFrame F(*fc.group.realization);
      const FamilyReport r = verify_family(fc.family, F, sample_points(*fc.group.realization, 100, 300 + n, 1.0), 1e-8);
      o.require(r.pass, "verify_family on S_" + std::to_string(n));
      o.note << " (family max tau " << sci(r.worst_tau) << ", kappa " << sci(r.worst_kappa) << ")";
    } catch (const ConstructionError& e) {
      o.require(false, e.what());
    }
  }
  return o;
}

Outcome nilpotent_maps() {
  Outcome o;
  bool traces = true;
  std::vector<BuiltGroup> groups;
  for (int n = 2; n <= 6; ++n) {
    groups.push_back(build_N(n));
    groups.push_back(build_H(n - 1));
    groups.push_back(build_K(n));
  }
  for (const auto& g : groups)
    for (int k = 0; k < g.algebra.dim(); ++k) traces = traces && ad_trace(g.algebra, Eigen::VectorXd::Unit(g.algebra.dim(), k)) == 0.0;
  o.require(traces, "ad_trace identically zero");

  const BuiltGroup h = build_H(1);
  const ComplexField xy{ScalarField::entry(0, 1), ScalarField::entry(1, 2)};
  const FamilyReport rh = verify_family({xy}, LeftInvariantFrame(*h.realization), sample_points(*h.realization, 100, 41, 1.0), 1e-8);
  o.require(rh.pass, "H_1: x + iy");
  double worst = std::max(rh.worst_tau, rh.worst_kappa);
  for (int n = 2; n <= 6; ++n) {
    const BuiltGroup k = build_K(n);
    const ComplexField f{std::sqrt(n - 1.0) * ScalarField::entry(0, 1), ScalarField::entry(n - 1, n)};
    const FamilyReport rk = verify_family({f}, LeftInvariantFrame(*k.realization), sample_points(*k.realization, 100, 50 + n, 1.0), 1e-8);
    o.require(rk.pass, "K_" + std::to_string(n) + ": x sqrt(n-1) + i y_n");
    worst = std::max({worst, rk.worst_tau, rk.worst_kappa});
  }
  o.note << " traces exact; max family residual " << sci(worst);
  return o;
}

Outcome post_composition() {
  Outcome o;
  Rng rng(2024);
  const FirstConstruction fc = first_construction(FirstKind::H, 2);
  const LeftInvariantFrame F(*fc.group.realization);
  const auto points = sample_points(*fc.group.realization, 50, 61, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    ComplexPolynomial P;
    P.variables = static_cast<int>(fc.family.size());
    const int terms = 1 + trial % 4;
    for (int t = 0; t < terms; ++t) {
      ComplexPolynomial::Term term{{rng.uniform(-2, 2), rng.uniform(-2, 2)}, std::vector<int>(P.variables, 0)};
      const int deg = static_cast<int>(rng.uniform() * 4);  // 0..3
      for (int d = 0; d < deg; ++d) term.powers[static_cast<int>(rng.uniform() * P.variables) % P.variables]++;
      P.terms.push_back(term);
    }
    const FamilyReport r = verify_family({holomorphic_post(P, fc.family)}, F, points, 1e-7);
    o.require(r.pass && P.degree() <= 3, "post-composition " + std::to_string(trial));
    worst = std::max({worst, r.worst_tau, r.worst_kappa});
  }
  o.note << " 20 polynomials, max residual " << sci(worst);
  return o;
}

Outcome second_construction() {
  Outcome o;
  const BuiltGroup dr = build_damek_ricci(default_damek_ricci_data(2, 1));
  const RootGradedAlgebra G = damek_ricci_root_graded(dr, 2, 1, "v");
  o.require(G.roots[G.beta].functional(0) == 0.5, "beta(A) = 1/2");
  Rng rng(7);
  std::vector<Eigen::VectorXd> samples;
  for (int k = 0; k < 20; ++k) samples.push_back(rng.uniform_vector(1, -2, 2));
  const SecondConstructionReport r = second_construction_check(G, samples, 1e-9, 1e-10);
  o.require(r.hypotheses_ok, "hypotheses");
  o.require(r.max_dilation_residual < 1e-9, "dilation e^{2 beta(V)}");
  o.require(r.max_minimality_residual < 1e-10, "minimal fibre");
  const SecondConstructionReport z = second_construction_check(damek_ricci_root_graded(dr, 2, 1, "z"), samples);
  bool rejected = false;
  for (const auto& h : z.hypotheses)
    if (h.name == "beta_perp_derived_n") rejected = !h.pass;
  o.require(rejected && !z.pass, "z root rejected");
  o.note << " dilation " << sci(r.max_dilation_residual) << ", minimality " << sci(r.max_minimality_residual)
         << ", z root rejected";
  return o;
}

Outcome hyperbolic_curvature() {
  Outcome o;
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0})
    for (double b : {0.0, 1.0}) {
      const CurvatureSurvey s = survey_sectional(CurvatureTensor(koszul(build_G3(a, b).algebra)), 200, 13);
      worst = std::max({worst, std::abs(s.min + a * a), std::abs(s.max + a * a)});
    }
  o.require(worst < 1e-8, "K = -alpha^2");
  o.note << " max |K + alpha^2| " << sci(worst);
  return o;
}

Outcome foliation_pipeline() {
  Outcome o;
  double rec = 0.0;
  for (double a : {0.5, 1.0, 2.0})
    for (double b : {0.0, 1.0}) {
      const LieAlgebra A = build_G3(a, b).algebra;
      const ScanResult s = scan_3d(A);
      const ScanHit* e1 = nullptr;
      for (const auto& h : s.hits)
        if (std::abs(h.direction(0)) > 1 - 1e-8) e1 = &h;
      o.require(e1 != nullptr, "e1 hit on G3(" + std::to_string(a) + "," + std::to_string(b) + ")");
      if (!e1) continue;
      rec = std::max({rec, std::abs(e1->alpha - a), std::abs(e1->beta - b)});
      try {
        o.require(constant_curvature_certificate(A, e1->direction).pass, "certificate");
      } catch (const PreconditionError& e) {
        o.require(false, e.what());
      }
    }
  o.require(rec < 1e-8, "(alpha, beta) recovered");
  double lowest = 1e300;
  for (double a : {0.5, 1.0, 2.0}) lowest = std::min(lowest, scan_3d(build_Galpha(a).algebra).min_residual);
  o.require(lowest > 1e-3, "g_alpha nonexistence proxy");
  const LieAlgebra s2 = build_S(2).algebra;
  const FoliationFlags f = classify(DistributionSpec(s2, center(s2)));
  o.require(f.riemannian && f.totally_geodesic, "s_2 center");
  o.note << " recovery error " << sci(rec) << ", g_alpha min residual " << sci(lowest) << ", s_2 center riemannian";
  return o;
}

Outcome numerics() {
  Outcome o;
  Rng rng(99);
  const std::vector<BuiltGroup> groups = {build_N(4), build_H(2), build_K(3), build_S(3), build_G3(1.0, 0.5),
                                          build_Galpha(1.5), build_iwasawa_sl(3)};
  double fd = 0.0;
  for (int t = 0; t < 200; ++t) {
    const BuiltGroup& g = groups[static_cast<std::size_t>(rng.uniform() * groups.size()) % groups.size()];
    const MatrixRealization& R = *g.realization;
    const int N = R.ambient();
    const int i = static_cast<int>(rng.uniform() * N) % N, j = static_cast<int>(rng.uniform() * N) % N;
    ScalarField phi = ScalarField::entry(i, j) * ScalarField::entry(0, N - 1) + 0.5 * ScalarField::entry(j, i);
    if (g.name.rfind("S", 0) == 0) phi = phi + ScalarField::log_diag(i);
    const auto p = sample_points(R, 1, static_cast<std::uint64_t>(rng.uniform() * 1e6), 1.0).front();
    const Eigen::VectorXd X = rng.normal_vector(g.algebra.dim());
    const auto exact = derivs(phi, R, p, X);
    const auto approx = fd_check(phi, R, p, X);
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); };
    fd = std::max({fd, rel(exact.first, approx.first), rel(exact.second, approx.second)});
  }
  o.require(fd < 1e-6, "derivs vs fd_check");

  double conn = 0.0, gl = 0.0;
  std::vector<BuiltGroup> all = groups;
  all.push_back(build_so3());
  all.push_back(build_damek_ricci(default_damek_ricci_data(2, 1)));
  all.push_back(build_damek_ricci(default_damek_ricci_data(4, 3)));
  for (const auto& g : all) {
    const ConnectionTable T = koszul(g.algebra);
    conn = std::max({conn, torsion_residual(T), metric_residual(T)});
    if (g.realization && g.realization->trace_metric_residual() < 1e-10)
      for (int k = 0; k < g.algebra.dim() + 5; ++k) {
        const Eigen::VectorXd x =
            k < g.algebra.dim() ? Eigen::VectorXd::Unit(g.algebra.dim(), k) : rng.normal_vector(g.algebra.dim());
        const Eigen::VectorXd xf = T.to_frame(g.algebra, x);
        gl = std::max(gl, (gl_connection_term(*g.realization, x) - T.to_declared(T.covariant(xf, xf))).cwiseAbs().maxCoeff());
      }
  }
  o.require(conn < 1e-10, "torsion / metric residuals");
  o.require(gl < 1e-10, "gl projection vs Koszul");
  o.note << " fd rel error " << sci(fd) << ", connection " << sci(conn) << ", gl " << sci(gl);
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::string> configs = {
      R"({"kind": "check-algebra", "builtin": "S", "n": 3, "seed": 11})",
      R"({"kind": "construct", "builtin": "S", "n": 5, "count": 20, "seed": 11})",
      R"({"kind": "verify-family", "builtin": "H", "n": 2, "count": 20, "seed": 11,
          "post": {"terms": [{"coeff": [0.5, -1], "powers": [1, 2]}]}})",
      R"({"kind": "second-construction", "algebra": {"builtin": "damek_ricci", "dim_v": 4, "dim_z": 3}, "count": 20, "seed": 11})",
      R"({"kind": "foliation-scan", "builtin": "G3", "alpha": 0.5, "beta": 1, "grid": 60, "seed": 11})",
      R"({"kind": "curvature", "builtin": "iwasawa_sl", "n": 3, "count": 100, "seed": 11})",
  };
  std::size_t bytes = 0;
  for (const auto& text : configs) {
    std::string bodies[2];
    for (auto& body : bodies) {
      runner::Json j = runner::run(runner::parse_config(text)).to_json();
      j.erase("wall_time");
      body = j.dump(2);
    }
    o.require(bodies[0] == bodies[1], "reports differ for " + text.substr(0, 40));
    bytes += bodies[0].size();
  }
  o.note << " " << configs.size() << " jobs, " << bytes << " report bytes compared";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"coordinate functions on N_n: kappa closed form and tau = 0", coordinate_closed_form},
      {"N_n epimorphism components: kappa = delta, tau = 0", unipotent_epimorphism},
      {"S_n: xi vector, dim V >= 2, families harmonic", upper_triangular_family},
      {"nilpotent examples: ad traces and the x+iy / x sqrt(n-1)+iy_n maps", nilpotent_maps},
      {"holomorphic post-composition on H_2", post_composition},
      {"second construction on Damek-Ricci (2,1)", second_construction},
      {"G_{alpha,beta} sectional curvature -alpha^2", hyperbolic_curvature},
      {"foliation scan, certificate, nonexistence, s_2 center", foliation_pipeline},
      {"numerics cross-validation", numerics},
      {"determinism of reports", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " exception: " << e.what();
    }
    std::printf("[%s] %zu %s:%s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.note.str().c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
