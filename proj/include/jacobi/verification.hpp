#pragma once

/**
 * @file verification.hpp
 * @brief Property suites behind `jacobi-verify` and the acceptance runner.
 *
 * Each suite returns a list of checks {check, max_residual, tolerance, relation, pass}.
 * Suites draw from their own seeded sampler, so reports depend only on the config.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "jacobi/actions.hpp"
#include "jacobi/algebra.hpp"
#include "jacobi/charts.hpp"
#include "jacobi/geodesic_vectors.hpp"
#include "jacobi/geometry.hpp"
#include "jacobi/group.hpp"
#include "jacobi/metrics.hpp"
#include "jacobi/numerics/random.hpp"

namespace jacobi::verification {

enum class Relation {
  at_most,  ///< pass when max_residual <= tolerance
  above,    ///< pass when max_residual > tolerance (negative controls)
  info      ///< reported only
};

inline const char* relation_name(Relation r) {
  switch (r) {
    case Relation::at_most: return "at_most";
    case Relation::above: return "above";
    case Relation::info: return "info";
  }
  return "?";
}

struct Check {
  std::string check;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::at_most;
  bool pass = true;
};

struct CriterionReport {
  int id = 0;
  std::string name;
  std::vector<Check> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

struct Config {
  std::uint64_t seed = 1;
  std::size_t samples = 1000;   // size of the largest random suites; smaller ones scale with it
  std::optional<double> tol;    // replaces every upper-bound tolerance
  MetricParams params;          // c1, c2, alpha, beta, gamma, delta

  FrameParams frame() const { return {params.alpha, params.beta, params.gamma, params.delta}; }
  double r() const { return std::sqrt(params.alpha / params.beta); }

  /// Fails with DomainViolation on a non-positive or non-finite parameter.
  void validate() const {
    const std::pair<const char*, double> all[] = {{"c1", params.c1},       {"c2", params.c2},
                                                  {"alpha", params.alpha}, {"beta", params.beta},
                                                  {"gamma", params.gamma}, {"delta", params.delta}};
    for (const auto& [n, v] : all)
      if (!(v > 0.0) || !std::isfinite(v))
        throw DomainViolation(std::string("parameter ") + n + " must be positive and finite");
    if (samples == 0) throw DomainViolation("samples must be positive");
  }

  std::size_t scaled(std::size_t base) const { return std::max<std::size_t>(1, samples * base / 1000); }
};

/// Collects checks for one criterion, applying the tolerance override.
class Recorder {
public:
  Recorder(const Config& cfg, int id, std::string name) : cfg_(cfg) {
    rep_.id = id;
    rep_.name = std::move(name);
  }

  void at_most(const std::string& name, double residual, double tol) {
    const double t = cfg_.tol ? *cfg_.tol : tol;
    rep_.checks.push_back({name, residual, t, Relation::at_most, residual <= t});
  }
  void above(const std::string& name, double residual, double bound) {
    rep_.checks.push_back({name, residual, bound, Relation::above, residual > bound});
  }
  void info(const std::string& name, double value) { rep_.checks.push_back({name, value, 0.0, Relation::info, true}); }

  CriterionReport done() { return std::move(rep_); }

private:
  const Config& cfg_;
  CriterionReport rep_;
};

namespace detail {

inline numerics::Sampler sampler(const Config& cfg, int stream) {
  return numerics::Sampler(cfg.seed * 1000003ULL + static_cast<std::uint64_t>(stream));
}

inline Sl2Element random_sl2(numerics::Sampler& s) {
  const double a = s.uniform(0.3, 2.0) * s.sign();
  const double b = s.uniform(-2.0, 2.0), c = s.uniform(-2.0, 2.0);
  return Sl2Element(a, b, c, (1.0 + b * c) / a);
}

inline GroupElement random_element(numerics::Sampler& s) {
  GroupElement g;
  g.M = random_sl2(s);
  g.lambda = s.uniform(-2.0, 2.0);
  g.mu = s.uniform(-2.0, 2.0);
  g.kappa = s.uniform(-2.0, 2.0);
  return g;
}

/// Point of a half-plane type chart: y in [0.3, 2.5], angle in [-2.5, 2.5], the rest in [-1.5, 1.5].
inline Coords<double> random_point(numerics::Sampler& s, Chart c) {
  Coords<double> x{};
  for (std::size_t i = 0; i < chart_dim(c); ++i) x[i] = s.uniform(-1.5, 1.5);
  x[1] = s.uniform(0.3, 2.5);
  if (c == Chart::xythetapqk) x[2] = s.uniform(-2.5, 2.5);
  return x;
}

inline std::array<double, 4> random_disk(numerics::Sampler& s) {
  const double r = s.uniform(0.0, 0.85), t = s.uniform(-3.0, 3.0);
  return {r * std::cos(t), r * std::sin(t), s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0)};
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

inline double rel(double err, double scale) { return err / std::max(1.0, scale); }

inline MetricParams grid_params(double a, double b, double g, double d) {
  MetricParams p;
  p.alpha = a, p.beta = b, p.gamma = g, p.delta = d;
  return p;
}

} // namespace detail

// ---------------------------------------------------------------------------
// 1. Commutation relations

inline CriterionReport bracket_tables(const Config& cfg) {
  Recorder rec(cfg, 1, "bracket_tables");
  using G = Generator;
  // Nonzero relations among (F,G,H,P,Q,R); every other pair commutes.
  struct Rel {
    G x, y;
    std::array<double, 6> value;
  };
  const Rel rels[] = {
      {G::P, G::Q, {0, 0, 0, 0, 0, 2}}, {G::F, G::G, {0, 0, 1, 0, 0, 0}}, {G::G, G::H, {0, 2, 0, 0, 0, 0}},
      {G::H, G::F, {2, 0, 0, 0, 0, 0}}, {G::P, G::F, {0, 0, 0, 0, 1, 0}}, {G::Q, G::G, {0, 0, 0, 1, 0, 0}},
      {G::P, G::H, {0, 0, 0, 1, 0, 0}}, {G::H, G::Q, {0, 0, 0, 0, 1, 0}}};
  const auto expected = [&](int i, int j) {
    std::array<double, 6> v{};
    for (const auto& r : rels) {
      if (int(r.x) == i && int(r.y) == j) v = r.value;
      if (int(r.x) == j && int(r.y) == i)
        for (int k = 0; k < 6; ++k) v[k] = -r.value[k];
    }
    return v;
  };
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const auto got = bracket(AlgebraElement::basis(G(i)), AlgebraElement::basis(G(j)));
      const auto want = expected(i, j);
      for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(got.coeff[k] - want[k]));
    }
  rec.at_most("generator_commutators_match_matrices", worst, 1e-14);

  double jac = 0.0;
  for (const auto& v : jacobi_identity_audit(generator_table(), 0.0)) jac = std::max(jac, v.residual);
  rec.at_most("generator_jacobi_identity", jac, 1e-14);

  const auto fb = frame_brackets(cfg.frame());
  rec.info("frame_printed_vs_derived_discrepant_pairs", static_cast<double>(fb.discrepancies.size()));
  return rec.done();
}

// ---------------------------------------------------------------------------
// 2. Group law

inline CriterionReport group_law(const Config& cfg) {
  Recorder rec(cfg, 2, "group_law");
  auto s = detail::sampler(cfg, 2);
  double comp = 0.0, inv = 0.0, iwa = 0.0, sc = 0.0, sym = 0.0;
  const Mat4 J = symplectic_form();
  for (std::size_t n = 0; n < cfg.samples; ++n) {
    const auto g = detail::random_element(s), h = detail::random_element(s);
    const Mat4 prod = embed(g) * embed(h);
    comp = std::max(comp, detail::rel(detail::max_abs(embed(compose(g, h)) - prod), detail::max_abs(prod)));
    const Mat4 gi = embed(g).inverse();
    inv = std::max(inv, detail::rel(detail::max_abs(embed(inverse(g)) - gi), detail::max_abs(gi)));
    const Mat4 e = embed(g);
    sym = std::max(sym, detail::rel(detail::max_abs(e.transpose() * J * e - J), detail::max_abs(e) * detail::max_abs(e)));

    const auto M = from_iwasawa(iwasawa(g.M));
    iwa = std::max(iwa, std::max({std::abs(M.a - g.M.a), std::abs(M.b - g.M.b), std::abs(M.c - g.M.c),
                                  std::abs(M.d - g.M.d)}));
    const auto back = s_to_ez(ez_to_s(g));
    sc = std::max(sc, detail::rel(detail::max_abs(embed(back) - e), detail::max_abs(e)));
  }
  rec.at_most("compose_matches_matrix_product", comp, 1e-12);
  rec.at_most("inverse_matches_matrix_inverse", inv, 1e-12);
  rec.at_most("embedding_is_symplectic", sym, 1e-12);
  rec.at_most("iwasawa_roundtrip", iwa, 1e-12);
  rec.at_most("s_coordinates_roundtrip", sc, 1e-12);
  return rec.done();
}

// ---------------------------------------------------------------------------
// 3. Chart atlas

inline CriterionReport chart_atlas(const Config& cfg) {
  Recorder rec(cfg, 3, "chart_atlas");
  auto s = detail::sampler(cfg, 3);
  double cay = 0.0, fcr = 0.0, fc1r = 0.0, sch = 0.0, eta = 0.0;
  for (std::size_t n = 0; n < cfg.samples; ++n) {
    const auto d = detail::random_disk(s);
    const Complex w(d[0], d[1]), z(d[2], d[3]);
    const auto back = cayley_inv(cayley(DiskPoint(w, z)));
    cay = std::max({cay, std::abs(back.w - w), std::abs(back.z - z)});
    fcr = std::max({fcr, std::abs(fc(w, fc_inv(w, z)) - z), std::abs(fc_inv(w, fc(w, z)) - z)});

    const auto x = detail::random_point(s, Chart::xypq);
    const Complex v(x[0], x[1]), u(x[2], x[3]);
    fc1r = std::max({fc1r, std::abs(fc1(v, fc1_inv(v, u)) - u), std::abs(fc1_inv(v, fc1(v, u)) - u)});
    const auto sb = complex_to_s(s_to_complex(x[0], x[1], x[2], x[3]));
    for (int i = 0; i < 4; ++i) sch = std::max(sch, std::abs(sb[i] - x[i]));

    // (x, y, p, q) -> (w, eta): eta = q + i p
    const auto we = transforms::change(Chart::xypq, Chart::disk_weta, x);
    eta = std::max(eta, std::abs(Complex(we[2], we[3]) - Complex(x[3], x[2])));
  }
  rec.at_most("cayley_roundtrip", cay, 1e-12);
  rec.at_most("fc_roundtrip", fcr, 1e-12);
  rec.at_most("fc1_roundtrip", fc1r, 1e-12);
  rec.at_most("s_chart_roundtrip", sch, 1e-12);
  rec.at_most("eta_equals_q_plus_i_p", eta, 1e-12);

  double bform = 0.0;
  for (std::size_t n = 0; n < cfg.scaled(200); ++n) {
    for (Chart c : {Chart::xypq, Chart::xyxirho, Chart::xychipsi}) {
      const ChartPoint p(c, transforms::change(Chart::xypq, c, detail::random_point(s, Chart::xypq)));
      const auto B = eval_form_B(chart_change(p, Chart::uhp_vu));
      bform = std::max(bform, form_distance(pullback(B, chart_jacobian(c, Chart::uhp_vu, p.coords), c), eval_form_B(p)));
    }
  }
  rec.at_most("b_form_expressions_agree", bform, 1e-12);
  return rec.done();
}

// ---------------------------------------------------------------------------
// 4. Kaehler condition

inline CriterionReport kahler(const Config& cfg) {
  Recorder rec(cfg, 4, "kahler");
  auto s = detail::sampler(cfg, 4);
  std::vector<std::array<double, 4>> pts;
  for (std::size_t n = 0; n < cfg.scaled(200); ++n) pts.push_back(detail::random_disk(s));
  const auto kn = c_to_k_nu(cfg.params.c1, cfg.params.c2);
  const auto good = disk_kahler_condition(kn.k, kn.nu, pts);
  rec.at_most("disk_metric_is_kahler", good.max_residual, 1e-8);
  const auto bad = disk_weta_kahler_condition(kn.k, kn.nu, pts);
  rec.above("fc_pulled_form_is_not_kahler", bad.max_residual, 1e-3);
  return rec.done();
}

// ---------------------------------------------------------------------------
// 5. Metric invariance

inline CriterionReport metric_invariance(const Config& cfg) {
  Recorder rec(cfg, 5, "metric_invariance");
  auto s = detail::sampler(cfg, 5);
  for (MetricName m : {MetricName::xj1_tz, MetricName::xj1_xypq, MetricName::xj1_xyxr, MetricName::xj1_xycp,
                       MetricName::xj1ext, MetricName::gj1}) {
    const MetricSpec spec{m, cfg.params};
    double worst = 0.0;
    for (std::size_t n = 0; n < cfg.scaled(100); ++n) {
      const auto g = detail::random_element(s);
      const ChartPoint p(spec.chart(), detail::random_point(s, spec.chart()));
      const Eigen::MatrixXd here = metric_at(spec, p).matrix;
      const Eigen::MatrixXd back = pullback_under_action(spec, g, p).matrix;
      worst = std::max(worst, detail::max_abs(back - here) / detail::max_abs(here));
    }
    rec.at_most(std::string("invariant_") + metric_name(m), worst, 1e-8);
  }
  return rec.done();
}

// ---------------------------------------------------------------------------
// 6. Killing fields

inline double killing_suite(const MetricSpec& spec, Space space, Chart chart, const std::vector<Coords<double>>& pts,
                            GStarReading reading = GStarReading::completed) {
  double worst = 0.0;
  for (int i = 0; i < 6; ++i) {
    const auto X = fvf_closed_form(space, chart, Generator(i), reading);
    for (const auto& x : pts) worst = std::max(worst, killing_residual(spec, X, x));
  }
  return worst;
}

inline CriterionReport killing(const Config& cfg) {
  Recorder rec(cfg, 6, "killing");
  auto s = detail::sampler(cfg, 6);
  const double grid[] = {0.5, 1.0, 2.0};
  const std::size_t npts = cfg.scaled(200);
  std::vector<Coords<double>> g6, g5;
  for (std::size_t n = 0; n < npts; ++n) g6.push_back(detail::random_point(s, Chart::xythetapqk));
  for (std::size_t n = 0; n < npts; ++n) g5.push_back(detail::random_point(s, Chart::xypqk));

  // The full parameter grid for every point would be 81 x 200 x 6 fields; each point gets one grid cell,
  // cycling so every cell is visited.
  double group = 0.0, ext = 0.0, literal = 0.0;
  std::size_t cell = 0;
  for (const auto& x : g6) {
    const auto& p = grid;
    const MetricSpec spec{MetricName::gj1,
                          detail::grid_params(p[cell % 3], p[cell / 3 % 3], p[cell / 9 % 3], p[cell / 27 % 3])};
    group = std::max(group, killing_suite(spec, Space::group, Chart::xythetapqk, {x}));
    literal = std::max(literal, killing_residual(spec,
                                                 fvf_closed_form(Space::group, Chart::xythetapqk, Generator::G,
                                                                 GStarReading::literal),
                                                 x));
    cell = (cell + 1) % 81;
  }
  cell = 0;
  for (const auto& x : g5) {
    const auto& p = grid;
    const MetricSpec spec{MetricName::xj1ext, detail::grid_params(p[cell % 3], 1.0, p[cell / 3 % 3], p[cell / 9 % 3])};
    ext = std::max(ext, killing_suite(spec, Space::xj1ext, Chart::xypqk, {x}));
    cell = (cell + 1) % 27;
  }
  rec.at_most("group_fields_killing_for_left_invariant_metric", group, 1e-9);
  rec.at_most("extended_fields_killing_for_extended_metric", ext, 1e-9);

  std::vector<Coords<double>> g4;
  for (std::size_t n = 0; n < cfg.scaled(50); ++n) g4.push_back(detail::random_point(s, Chart::xypq));
  for (const auto& [m, c] : {std::pair{MetricName::xj1_tz, Chart::uhp_vu}, std::pair{MetricName::xj1_xyxr, Chart::xyxirho},
                             std::pair{MetricName::xj1_xypq, Chart::xypq}}) {
    std::vector<Coords<double>> pts;
    for (const auto& x : g4) pts.push_back(transforms::change(Chart::xypq, c, x));
    rec.at_most(std::string("half_plane_fields_killing_") + metric_name(m),
                killing_suite(MetricSpec{m, cfg.params}, Space::xj1, c, pts), 1e-9);
  }
  rec.above("literal_g_field_is_not_killing", literal, 1e-3);
  return rec.done();
}

// ---------------------------------------------------------------------------
// 7. Geodesic-vector tables

inline CriterionReport tables(const Config& cfg) {
  Recorder rec(cfg, 7, "geodesic_vector_tables");
  auto s = detail::sampler(cfg, 7);
  double t1 = 0.0, t2 = 0.0, neg = std::numeric_limits<double>::infinity();
  std::size_t n1 = 0, n2 = 0;
  for (double r : {0.75, 1.0, 2.0}) {
    for (std::size_t n = 0; n < cfg.scaled(50); ++n) {
      FamilyParams fp{s.uniform(-2, 2), s.uniform(-2, 2), s.uniform(-2, 2), s.uniform(-2, 2), s.uniform(-2, 2)};
      for (const auto& m : table_members(1, r, fp)) t1 = std::max(t1, table_residual(1, m.X, r)), ++n1;
      for (const auto& m : table_members(2, r, fp)) t2 = std::max(t2, table_residual(2, m.X, r)), ++n2;
    }
    const FamilyParams fp{0.9, -1.2, 0.7, 1.1, 0.3};
    for (int table : {1, 2})
      for (int row = 1; row <= table_rows(table); ++row) {
        auto X = table_row(table, row, r, fp);
        X.c[constrained_component(table, row)] += 1e-3;
        neg = std::min(neg, table_residual(table, X, r));
      }
  }
  rec.at_most("table1_members_satisfy_half_plane_system", t1, 1e-12);
  rec.at_most("table2_members_satisfy_extended_system", t2, 1e-12);
  rec.info("table1_members_checked", static_cast<double>(n1));
  rec.info("table2_members_checked", static_cast<double>(n2));
  rec.above("perturbed_members_fail", neg, 1e-12);

  double poly = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    const FrameParams p{r * r, 1.0, cfg.params.gamma, cfg.params.delta};
    const auto alg = frame_algebra(p, BracketMode::printed);
    for (Space name : {Space::xj1, Space::xj1ext}) {
      const auto sp = space_spec(name, p);
      const auto scale = condition_scale(sp, p);
      for (std::size_t n = 0; n < cfg.samples; ++n) {
        FrameVector X;
        for (double& v : X.c) v = s.uniform(-2, 2);
        const Eigen::VectorXd d = scale.cwiseProduct(geodesic_condition(sp, alg, X)) - condition_polynomials(sp, X);
        poly = std::max(poly, d.cwiseAbs().maxCoeff() / std::max(1.0, X.norm2()));
      }
    }
  }
  rec.at_most("condition_matches_polynomial_systems", poly, 1e-12);
  return rec.done();
}

// ---------------------------------------------------------------------------
// 8. The constant R3

inline double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int k = 0; k < 200 && hi - lo > 0.0; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) lo = mid, flo = fm;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline CriterionReport r3_constant(const Config& cfg) {
  Recorder rec(cfg, 8, "r3_constant");
  const double c = r3(), b = bisect_root(poly_f3, 0.0, 1.0);
  rec.at_most("cardano_vs_bisection", std::abs(c - b), 1e-12);
  rec.at_most("cardano_vs_radical_form", std::abs(c - r3_radical()), 1e-12);
  rec.at_most("f3_at_root", std::abs(poly_f3(c)), 1e-14);
  rec.at_most("distance_to_0.6823", std::abs(c - 0.6823), 5e-4);
  rec.info("r3", c);
  return rec.done();
}

// ---------------------------------------------------------------------------
// 9. Natural reductivity, symmetry and the g.o. property

inline CriterionReport natural_reductivity(const Config& cfg) {
  Recorder rec(cfg, 9, "natural_reductivity");
  auto s = detail::sampler(cfg, 9);
  double det = 0.0, cross = 0.0;
  for (const auto& [alpha, beta] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
    const FrameParams p{alpha, beta, 1.0, 1.0};
    const auto alg = frame_algebra(p, BracketMode::printed);
    const auto scale = natural_reductivity_scale(alpha);
    for (std::size_t n = 0; n < cfg.scaled(100); ++n) {
      FrameVector X1, X2;
      for (int i = 0; i < 5; ++i) X1.c[i] = s.uniform(-2, 2), X2.c[i] = s.uniform(-2, 2);
      const auto nr = natural_reductivity_matrix(X2, alpha, beta);
      det = std::max(det, std::abs(nr.det) / std::max(1.0, std::pow(nr.A.norm(), 5)));
      const Eigen::Matrix<double, 5, 1> lhs = nr.A * X1.vector().head<5>();
      const Eigen::Matrix<double, 5, 1> rhs = scale.cwiseProduct(natural_reductivity_terms(alg, X1, X2));
      cross = std::max(cross, (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, X1.norm2() + X2.norm2()));
    }
  }
  rec.at_most("det_a_vanishes", det, 1e-10);
  rec.at_most("matrix_a_matches_structure_constants", cross, 1e-12);

  // g = <F,G,H,P,Q> + <R> is reductive but not symmetric: [P,F] = Q leaves h.
  const auto d = Decomposition::from_indices({0, 1, 2, 3, 4}, {5}, 6);
  const auto t = generator_table();
  const auto sym = check_symmetric(d, t);
  double off = 0.0, pf = std::numeric_limits<double>::infinity();
  for (const auto& v : sym.violations) {
    off = std::max(off, v.off);
    if (v.inclusion == "[m,m]<h" && v.a == 0 && v.b == 3) {
      Eigen::VectorXd want = Eigen::VectorXd::Zero(6);
      want(4) = 1.0;
      pf = (-v.value - want).cwiseAbs().maxCoeff();  // value is [F,P] = -[P,F]
    }
  }
  rec.at_most("decomposition_is_reductive", check_reductive(d, t).holds ? 0.0 : 1.0, 0.0);
  rec.above("decomposition_is_not_symmetric", off, 1e-12);
  rec.at_most("symmetry_witness_pf_equals_q", pf, 1e-14);

  const auto fp = cfg.frame();
  const auto alg = frame_algebra(fp, BracketMode::printed);
  for (Space name : {Space::xj1, Space::xj1ext}) {
    const auto sp = space_spec(name, fp);
    const auto w = g_o_witness(sp, alg);
    rec.above(std::string("not_geodesic_orbit_witness_") + space_name(name), w ? w->residual : 0.0, 1e-3);
  }
  return rec.done();
}

// ---------------------------------------------------------------------------
// 10. Orbits of Table 2 members against the geodesic equation

inline CriterionReport orbit_cross_check(const Config& cfg) {
  Recorder rec(cfg, 10, "orbit_cross_check");
  const FrameParams fp{};
  const MetricSpec spec{MetricName::xj1ext, MetricParams{}};
  const ChartPoint base(Chart::xypqk, std::vector<double>{0, 1, 0, 0, 0});
  const std::vector<double> grid{0.0, 0.25, 0.5};
  const auto derived = frame_algebra(fp, BracketMode::derived);
  const auto sp = space_spec(Space::xj1ext, fp);
  const double r = sp.r;

  std::vector<double> residuals;
  for (const auto& m : table_members(2, r, FamilyParams{})) {
    const std::string tag = "table2_row" + std::to_string(m.row) + "_eps" + std::to_string(m.eps1) + "_" +
                            std::to_string(m.eps2);
    const double orbit = orbit_geodesic_residual(Space::xj1ext, spec, m.X.to_algebra(fp), base, grid);
    residuals.push_back(orbit);
    rec.info(tag + "_orbit_residual", orbit);
    rec.info(tag + "_printed_condition", table_residual(2, m.X, r));
    rec.info(tag + "_derived_condition", geodesic_condition(sp, derived, m.X).cwiseAbs().maxCoeff());
  }
  std::sort(residuals.begin(), residuals.end());
  // Third smallest orbit residual: at least three members trace geodesics when it is small.
  rec.at_most("three_members_trace_geodesics", residuals.size() >= 3 ? residuals[2] : 1.0, 1e-5);

  AlgebraElement generic;
  generic.coeff = {0.7, 0.2, 0.5, 1.0, -0.3, 0.4};
  rec.above("generic_direction_is_not_geodesic", orbit_geodesic_residual(Space::xj1ext, spec, generic, base, grid),
            1e-2);
  return rec.done();
}

// ---------------------------------------------------------------------------
// Reports

using Suite = CriterionReport (*)(const Config&);

inline const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {bracket_tables, group_law,           chart_atlas,    kahler,
                                         metric_invariance, killing,          tables,         r3_constant,
                                         natural_reductivity, orbit_cross_check};
  return all;
}

inline std::vector<CriterionReport> run_all(const Config& cfg) {
  cfg.validate();
  std::vector<CriterionReport> out;
  for (Suite s : suites()) out.push_back(s(cfg));
  return out;
}

inline bool all_pass(const std::vector<CriterionReport>& reps) {
  return std::all_of(reps.begin(), reps.end(), [](const CriterionReport& r) { return r.pass(); });
}

inline nlohmann::json check_json(const Check& c) {
  return {{"check", c.check},
          {"max_residual", c.max_residual},
          {"tolerance", c.tolerance},
          {"relation", relation_name(c.relation)},
          {"pass", c.pass}};
}

inline nlohmann::json header_json(const std::string& command, const Config& cfg) {
  const auto& p = cfg.params;
  return {{"command", command},
          {"seed", cfg.seed},
          {"samples", cfg.samples},
          {"params",
           {{"c1", p.c1}, {"c2", p.c2}, {"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}}},
          {"r", cfg.r()}};
}

inline nlohmann::json report_json(const std::string& command, const Config& cfg,
                                  const std::vector<CriterionReport>& reps) {
  nlohmann::json j = header_json(command, cfg);
  j["criteria"] = nlohmann::json::array();
  for (const auto& r : reps) {
    nlohmann::json c{{"id", r.id}, {"name", r.name}, {"pass", r.pass()}, {"checks", nlohmann::json::array()}};
    for (const auto& k : r.checks) c["checks"].push_back(check_json(k));
    j["criteria"].push_back(c);
  }
  j["pass"] = all_pass(reps);
  return j;
}

inline std::string report_csv(const std::vector<CriterionReport>& reps) {
  std::ostringstream os;
  os.precision(17);
  os << "criterion,name,check,max_residual,tolerance,relation,pass\n";
  for (const auto& r : reps)
    for (const auto& c : r.checks)
      os << r.id << "," << r.name << "," << c.check << "," << c.max_residual << "," << c.tolerance << ","
         << relation_name(c.relation) << "," << (c.pass ? "true" : "false") << "\n";
  return os.str();
}

inline std::string report_text(const std::string& command, const Config& cfg,
                               const std::vector<CriterionReport>& reps) {
  std::ostringstream os;
  os.precision(6);
  os << command << "  seed=" << cfg.seed << "  samples=" << cfg.samples << "  r=" << cfg.r() << "\n";
  for (const auto& r : reps) {
    os << (r.pass() ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "\n";
    for (const auto& c : r.checks) {
      os << "    " << (c.relation == Relation::info ? "    " : c.pass ? "ok  " : "FAIL") << "  " << c.check << "  "
         << c.max_residual;
      if (c.relation == Relation::at_most) os << " <= " << c.tolerance;
      if (c.relation == Relation::above) os << " > " << c.tolerance;
      os << "\n";
    }
  }
  return os.str();
}

} // namespace jacobi::verification
