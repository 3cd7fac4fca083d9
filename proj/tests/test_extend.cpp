#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wjet/bump.hpp"
#include "wjet/error.hpp"
#include "wjet/extend.hpp"
#include "wjet/glue.hpp"

using namespace wjet;
using testing_support::random_point;
using testing_support::uniform;

namespace {

const bump_spec B{3, 0.5};

stratum point_stratum(const point& x, const std::vector<double>& values) {
  stratum S;
  S.x = x;
  S.values = values;
  return S;
}

stratum flat_point(const point& x) {
  stratum S;
  S.x = x;
  return S;
}

stratum cell_stratum(cell_ptr c, const expr& gen, int samples = 16) {
  stratum S;
  S.is_point = false;
  S.cell = std::move(c);
  S.generator = gen;
  S.samples = samples;
  return S;
}

polynomial upoly(std::initializer_list<std::pair<int, double>> terms) {
  polynomial p(1);
  for (auto [d, c] : terms) p.add_term({d}, c);
  return p;
}

// u(1 - u) as a polynomial in (u, w)
expr bump_profile_2d() {
  polynomial p(2);
  p.add_term({1, 0}, 1.0);
  p.add_term({2, 0}, -1.0);
  return poly(p);
}

// u^2 (1 - u)^2, flat to first order at u = 0 and u = 1
polynomial flat_ends(int n) {
  polynomial p(n);
  multi_index a(n, 0);
  a[0] = 2;
  p.add_term(a, 1.0);
  a[0] = 3;
  p.add_term(a, -2.0);
  a[0] = 4;
  p.add_term(a, 1.0);
  return p;
}

verify_options quick(int probes = 1500) {
  verify_options o;
  o.probes = probes;
  return o;
}

double max_jet(const expr& f, const point& y, int m) {
  double v = 0.0;
  for (const auto& a : graded_lex(static_cast<int>(y.size()), m)) v = std::max(v, std::abs(deriv(f, a, y)));
  return v;
}

}  // namespace

TEST_CASE("extend_point") {
  jet F(1, 1);
  F.add_point({0.0}, {1.0, 0.0});
  const auto r = extend_point(F, {{0.0}}, B);
  const expr chi = bump_chi(1, B);
  for (double x : {-1.2, -0.8, -0.3, 0.0, 0.6, 0.95}) CHECK(eval(r.f, {x}) == doctest::Approx(eval(chi, {x})));
  CHECK(deriv(r.f, {1}, {0.0}) == 0.0);

  CHECK(point_radius({0.0}, {{0.0}, {3.0}}) == 1.0);
  CHECK(point_radius({0.0}, {{0.0}, {0.4}}) == doctest::Approx(0.4));
  const auto r3 = extend_point(F, {{0.0}, {3.0}}, B);
  CHECK(eval(r3.f, {0.5}) == 1.0);
  CHECK(eval(r3.f, {3.0}) == 0.0);

  jet Z(2, 2);
  Z.add_point({0.0, 0.0}, std::vector<double>(6, 0.0));
  const auto rz = extend_point(Z, {{1.0, 1.0}}, B);
  CHECK(rz.f.is_zero());

  CHECK_THROWS_AS(point_radius({1.0}, {{1.0 + 1e-15}}), input_error);
}

TEST_CASE("extend_point reproduces its jet exactly") {
  std::mt19937_64 g(5);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 1 + rep % 3, m = rep % 3;
    jet F(n, m);
    std::vector<double> v(graded_lex(n, m).size());
    for (auto& x : v) x = uniform(g, -2, 2);
    const point x0 = random_point(g, n);
    F.add_point(x0, v);
    std::vector<point> E{x0};
    for (int i = 0; i < 3; ++i) E.push_back(random_point(g, n, -2, 2));
    const auto r = extend_point(F, E, B);
    const auto rep_ = verify_extension(r.f, F, modulus::linear(), quick(500));
    CHECK(rep_.restriction_max_error == 0.0);
    // other points sit on or outside the support edge; rounding of |x - c|^2 / d^2 leaves ~1e-12
    for (std::size_t i = 1; i < E.size(); ++i) CHECK(max_jet(r.f, E[i], m) <= 1e-9);
  }
}

TEST_CASE("extend_flat_cell instance") {
  flat_cell_input in;
  in.n = 2;
  in.m = 0;
  in.T = lambda_cell::interval(0, 1);
  in.generator = bump_profile_2d();
  in.g = constant(0.0);
  in.bump = B;
  const auto r = extend_flat_cell(in);
  CHECK(eval(r.f, {0.5, 0.0}) == doctest::Approx(0.25));
  CHECK(eval(r.f, {0.5, 10.0}) == 0.0);
  for (double w : {-0.25, -0.1, 0.05, 0.2, 0.25}) CHECK(eval(r.f, {0.5, w}) == doctest::Approx(0.25));
  CHECK(eval(r.f, {0.5, 0.45}) < 0.25);
  CHECK(eval(r.f, {0.5, 0.5}) == 0.0);
  CHECK(eval(r.f, {-0.5, 0.0}) == 0.0);
}

TEST_CASE("Step 1 is flat outside its region and exact on T x 0") {
  flat_cell_input in;
  in.n = 3;
  in.m = 2;
  in.T = lambda_cell::interval(0, 2);
  polynomial gen(3);
  gen.add_term({2, 0, 0}, 1.0);
  gen.add_term({1, 1, 0}, 0.5);
  gen.add_term({0, 0, 1}, -1.0);
  gen.add_term({1, 0, 2}, 0.25);
  in.generator = poly(flat_ends(3)) * poly(gen);
  in.g = constant(0.0);
  in.bump = B;
  in.pieces = {lambda_cell::interval(0, 0.7), lambda_cell::interval(0.7, 2)};
  const auto r = extend_flat_cell(in);
  const point lo{-1, -1.5, -1.5}, hi{3, 1.5, 1.5};
  int outside = 0;
  double worst = 0.0;
  for (const auto& y : halton_cloud(lo, hi, 4000, 3)) {
    bool active = false;
    for (const auto& D : in.pieces) active = active || in_step1_region(D, y, 1);
    if (active) continue;
    ++outside;
    worst = std::max(worst, max_jet(r.f, y, 2));
  }
  CHECK(outside > 1000);
  CHECK(worst <= 1e-10);
  for (double u : {0.1, 0.5, 0.69, 1.3, 1.99}) {
    const point y{u, 0, 0};
    for (const auto& a : graded_lex(3, 2))
      CHECK(deriv(r.f, a, y) == doctest::Approx(deriv(in.generator, a, y)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("Step 1 rejects bad decompositions") {
  flat_cell_input in;
  in.n = 2;
  in.m = 0;
  in.T = lambda_cell::interval(0, 1);
  in.generator = bump_profile_2d();
  in.g = constant(0.0);
  in.pieces = {lambda_cell::interval(0, 0.6), lambda_cell::interval(0.4, 1)};
  CHECK_THROWS_AS(extend_flat_cell(in), input_error);
  in.pieces = {lambda_cell::interval(0, 2)};
  CHECK_THROWS_AS(extend_flat_cell(in), input_error);
}

TEST_CASE("extend_with_obstacle") {
  obstacle_input oi;
  oi.base.n = 2;
  oi.base.m = 1;
  oi.base.T = lambda_cell::interval(0, 1);
  oi.base.generator = poly(flat_ends(2));
  oi.base.g = constant(0.0);
  oi.base.bump = B;
  const auto plain = extend_flat_cell(oi.base);

  SUBCASE("no obstacle") {
    const auto r = extend_with_obstacle(oi);
    for (const auto& y : halton_cloud({-0.5, -1}, {1.5, 1}, 300, 1)) CHECK(eval(r.f, y) == eval(plain.f, y));
  }
  SUBCASE("graph obstacle w = 1") {
    oi.graphs = {{constant(1.0)}};
    const auto r = extend_with_obstacle(oi);
    bool case_i = false;
    for (const auto& s : r.log) case_i = case_i || s.find("case i ") != std::string::npos;
    CHECK(case_i);
    for (const auto& y : halton_cloud({-0.5, -3}, {1.5, 3}, 600, 2)) {
      if (std::abs(y[1]) >= 1.0) CHECK(max_jet(r.f, y, 1) == 0.0);
      if (std::abs(y[1]) <= 0.5) CHECK(eval(r.f, y) == doctest::Approx(eval(plain.f, y)));
    }
  }
  SUBCASE("point obstacle") {
    oi.points = {{0.5, 0.1}};
    const auto r = extend_with_obstacle(oi);
    // the obstacle sits over the split seam, so check both sides as well
    for (double du : {-1e-9, 0.0, 1e-9}) CHECK(max_jet(r.f, {0.5 + du, 0.1}, 1) <= 1e-9);
    // u = 0.5 is the split seam
    for (double u : {0.1, 0.3, 0.45, 0.55, 0.7, 0.9}) {
      const point y{u, 0.0};
      for (const auto& a : graded_lex(2, 1))
        CHECK(deriv(r.f, a, y) == doctest::Approx(deriv(oi.base.generator, a, y)).epsilon(1e-12).scale(1.0));
    }
  }
  SUBCASE("point obstacle over a 2-dimensional base") {
    obstacle_input o2;
    o2.base.n = 3;
    o2.base.m = 0;
    o2.base.T = lambda_cell::band(polynomial::constant(1, 0), polynomial::constant(1, 1), lambda_cell::interval(0, 1));
    o2.base.generator = constant(1.0);
    o2.base.g = constant(0.0);
    o2.points = {{0.5, 0.5, 0.01}};
    CHECK_THROWS_AS(extend_with_obstacle(o2), precondition_error);
  }
  SUBCASE("obstacle touching S") {
    polynomial psi(2);
    // w = u - 1/64 meets T x 0 at the first gradient sample
    psi.add_term({1, 0}, 1.0);
    psi.add_term({0, 0}, -1.0 / 64);
    oi.graphs = {{poly(psi)}};
    CHECK_THROWS_AS(extend_with_obstacle(oi), domain_error);
  }
}

TEST_CASE("extend_graph") {
  const int n = 2, m = 1;
  SUBCASE("phi = 0 gives the flattened construction") {
    const stratum S = cell_stratum(lambda_cell::interval(0, 1), poly(flat_ends(2)));
    const auto g = extend_graph(S, *S.generator, {}, n, m, B);
    obstacle_input oi;
    oi.base.n = n;
    oi.base.m = m;
    oi.base.T = S.cell;
    oi.base.generator = *S.generator;
    oi.base.g = constant(0.0);
    oi.base.bump = B;
    const auto w = extend_with_obstacle(oi);
    for (const auto& y : halton_cloud({-0.5, -1}, {1.5, 1}, 400, 4)) CHECK(eval(g.f, y) == eval(w.f, y));
  }
  SUBCASE("parabola with flat ends") {
    const cell_ptr G = lambda_cell::graph({upoly({{2, 1.0}})}, lambda_cell::interval(0, 1), 2.0);
    const expr generator = poly(flat_ends(2)) * coordinate(1);
    problem P;
    P.n = n;
    P.m = m;
    P.p = 2;
    P.omega = modulus::holder(0.5);
    P.strata = {cell_stratum(G, generator, 24)};
    P.extras = {flat_point({0.5, 0.8})};
    const auto r = extend_jet(P, quick());
    CHECK(r.report.restriction_max_error <= 1e-8);
    CHECK(r.report.finite());
    CHECK(max_jet(r.f, {0.5, 0.8}, m) == 0.0);
  }
  SUBCASE("obstacle lying on the stratum") {
    const stratum S = cell_stratum(lambda_cell::interval(0, 1), poly(flat_ends(2)));
    CHECK_THROWS_AS(extend_graph(S, *S.generator, {point_stratum({0.5, 0.0}, {0, 0, 0})}, n, m, B), input_error);
  }
}

TEST_CASE("extend_jet examples") {
  SUBCASE("two points with jets of t^2") {
    problem P;
    P.n = 1;
    P.m = 1;
    P.p = 2;
    P.strata = {point_stratum({0.0}, {0, 0}), point_stratum({1.0}, {1, 2})};
    const auto r = extend_jet(P, quick());
    CHECK(r.report.restriction_max_error <= 1e-8);
    CHECK(r.report.finite());
    CHECK(r.report.norm > 0.0);
  }
  SUBCASE("segment and a flat point") {
    problem P;
    P.n = 2;
    P.m = 1;
    P.p = 2;
    P.omega = modulus::holder(0.5);
    polynomial gen = flat_ends(2);
    P.strata = {cell_stratum(lambda_cell::interval(0, 1), poly(gen) * (constant(1.0) + coordinate(0)))};
    P.extras = {flat_point({0.0, 2.0})};
    const auto r = extend_jet(P, quick());
    CHECK(r.report.restriction_max_error <= 1e-8);
    CHECK(max_jet(r.f, {0.0, 2.0}, 1) == 0.0);
    bool step_logged = false;
    for (const auto& s : r.log) step_logged = step_logged || s.find("step 1/2") != std::string::npos;
    CHECK(step_logged);
  }
  SUBCASE("open box, zero extension") {
    problem P;
    P.n = 2;
    P.m = 1;
    P.p = 2;
    const cell_ptr box = lambda_cell::band(polynomial::constant(1, 0), polynomial::constant(1, 1),
                                           lambda_cell::interval(0, 1));
    // (16 x(1-x) y(1-y))^2 is flat to first order on the boundary of the box
    polynomial b(2);
    b.add_term({1, 1}, 16.0);
    b.add_term({2, 1}, -16.0);
    b.add_term({1, 2}, -16.0);
    b.add_term({2, 2}, 16.0);
    P.strata = {cell_stratum(box, poly(b) * poly(b), 10)};
    const auto r = extend_jet(P, quick());
    CHECK(r.report.restriction_max_error <= 1e-12);
    bool zero_ext = false;
    for (const auto& s : r.log) zero_ext = zero_ext || s.find("zero extension") != std::string::npos;
    CHECK(zero_ext);
    // union with flat samples outside the box: Whitney constant grows by at most 4
    const jet inside = jet_from_function(*P.strata[0].generator, P.strata[0].sample(2), 1);
    std::vector<point> outside;
    for (const auto& y : halton_cloud({-1, -1}, {2, 2}, 200, 9))
      if (!box->contains(y)) outside.push_back(y);
    const modulus w = modulus::linear();
    const double C = whitney_constant(inside, w).holder_constant;
    const auto [uni, rep] = zero_extend_flat(inside, outside, w);
    CHECK(std::isfinite(rep.holder_constant));
    CHECK(rep.holder_constant <= 4.0 * C);
    CHECK(eval(r.f, {1.5, 0.5}) == 0.0);
  }
  SUBCASE("missing stratification") {
    problem P;
    P.n = 2;
    P.m = 1;
    P.p = 2;
    P.unstratified = 1;
    CHECK_THROWS_WITH_AS(extend_jet(P), doctest::Contains("stratification required"), input_error);
  }
  SUBCASE("p below m + 1") {
    problem P;
    P.n = 1;
    P.m = 2;
    P.p = 2;
    CHECK_THROWS_AS(extend_jet(P), input_error);
  }
}

TEST_CASE("driver subtraction leaves a flat residual on lower strata") {
  problem P;
  P.n = 2;
  P.m = 2;
  P.p = 3;
  polynomial g(2);
  g.add_term({0, 0}, 1.0);
  g.add_term({1, 0}, 0.5);
  g.add_term({2, 0}, -1.0);
  g.add_term({0, 1}, 0.3);
  g.add_term({1, 1}, 0.2);
  const expr gen = poly(g);
  stratum a = flat_point({0.0, 0.0}), b = flat_point({1.0, 0.0});
  a.generator = gen;
  b.generator = gen;
  P.strata = {a, b};
  const auto pts = extend_jet(P, quick(300));
  const expr residual = gen - pts.f;
  for (const point& x : {point{0.0, 0.0}, point{1.0, 0.0}}) CHECK(max_jet(residual, x, 2) <= 1e-8);

  P.strata.push_back(cell_stratum(lambda_cell::interval(0, 1), gen));
  const auto full = extend_jet(P, quick());
  CHECK(full.report.restriction_max_error <= 1e-6);
}

TEST_CASE("shrinking the plateau keeps restriction values") {
  problem P;
  P.n = 2;
  P.m = 1;
  P.p = 2;
  P.strata = {point_stratum({0.0, 0.0}, {1, 0.5, -0.5}), point_stratum({0.5, 0.3}, {2, 0, 1}),
              cell_stratum(lambda_cell::interval(2, 3), poly(flat_ends(2)))};
  std::vector<std::vector<double>> first;
  for (double w : {0.5, 0.3, 0.1}) {
    P.bump.plateau = w;
    const auto r = extend_jet(P, quick(200));
    CHECK(r.report.restriction_max_error <= 1e-8);
    std::vector<double> vals;
    for (std::size_t i = 0; i < r.F.size(); ++i)
      for (const auto& a : r.F.indices()) vals.push_back(deriv(r.f, a, r.F.points()[i]));
    if (first.empty()) {
      first.push_back(vals);
    } else {
      REQUIRE(vals.size() == first[0].size());
      for (std::size_t i = 0; i < vals.size(); ++i) CHECK(vals[i] == doctest::Approx(first[0][i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("verify_extension") {
  jet F(2, 1);
  F.add_point({0.0, 0.0}, {1.0, 0.5, -0.25});
  const auto r = extend_point(F, {{0.0, 0.0}}, B);
  const auto rep = verify_extension(r.f, F, modulus::linear(), quick(800));
  CHECK(rep.restriction_max_error == 0.0);
  CHECK(rep.probes == 800);
  CHECK(rep.finite());

  jet Z(2, 1);
  Z.add_point({0.0, 0.0}, {0, 0, 0});
  Z.add_point({1.0, 0.0}, {0, 0, 0});
  const auto z = verify_extension(constant(0.0), Z, modulus::linear(), quick(500));
  CHECK(z.restriction_max_error == 0.0);
  CHECK(z.norm == 0.0);
  CHECK(z.sup_derivatives == 0.0);
  CHECK(z.holder_quotient == 0.0);

  const auto p = verify_extension(r.f + 1e-3 * coordinate(0), F, modulus::linear(), quick(500));
  CHECK(p.restriction_max_error == doctest::Approx(1e-3));
  CHECK(p.restriction_worst_index == multi_index{1, 0});

  verify_options fz = quick(500);
  fz.flat_zone = [](const point& x) { return x[0] > 0.5; };
  const auto f1 = verify_extension(coordinate(0), Z, modulus::linear(), fz);
  CHECK(f1.flat_probes > 0);
  CHECK(f1.flatness_violation == doctest::Approx(1.0).epsilon(0.6));

  const auto again = verify_extension(r.f, F, modulus::linear(), quick(800));
  CHECK(again.norm == rep.norm);
  CHECK(again.holder_quotient == rep.holder_quotient);
}

TEST_CASE("glue_local") {
  const bump_spec b{3, 0.5};
  SUBCASE("partition residual is exactly zero") {
    const auto psi = glue_partition(2, 5, b);
    for (const auto& x : halton_cloud({-3.5, -3.5}, {3.5, 3.5}, 2000, 1)) {
      if (norm(x) >= 4.0) continue;
      CHECK(partition_residual(psi, x) == 0.0);
      CHECK(partition_deviation(psi, x) <= 1e-14);
    }
  }
  SUBCASE("single piece is reproduced in the first ball") {
    const expr f = constant(2.0) + coordinate(0) * coordinate(1);
    const auto g = glue_local({{1, f}}, 2, b);
    for (const auto& x : halton_cloud({-0.17, -0.17}, {0.17, 0.17}, 200, 2))
      CHECK(eval(g.f, x) == doctest::Approx(eval(f, x)).epsilon(1e-14));
  }
  SUBCASE("identical pieces glue to themselves") {
    const expr f = constant(1.0) - coordinate(0);
    const auto g = glue_local({{1, f}, {2, f}}, 2, b);
    for (const auto& x : halton_cloud({-1.2, -1.2}, {1.2, 1.2}, 400, 3)) {
      if (norm(x) > 1.2) continue;
      CHECK(eval(g.f, x) == doctest::Approx(eval(f, x)).epsilon(1e-14));
    }
    CHECK(g.K == 2);
  }
  SUBCASE("gaps are rejected") { CHECK_THROWS_AS(glue_local({{1, constant(1)}, {3, constant(1)}}, 2, b), input_error); }
}

TEST_CASE("annulus gluing on points of a line keeps the jet") {
  problem P;
  P.n = 2;
  P.m = 1;
  P.p = 2;
  P.omega = modulus::holder(0.5);
  for (int i = 0; i < 7; ++i) {
    const double t = -2.7 + 0.9 * i;
    P.strata.push_back(point_stratum({t, 0.5 * t}, {std::sin(t), std::cos(t), 0.5}));
  }
  const auto r = glue_annuli(P, quick());
  CHECK(r.ext.report.restriction_max_error <= 1e-8);
  int total = 0;
  for (int c : r.points_per_piece) total += c;
  CHECK(total >= 7);  // annuli overlap, so a point can belong to two pieces
}

TEST_CASE("cm_extend") {
  SUBCASE("two points, jets of t^2") {
    problem P;
    P.n = 1;
    P.m = 1;
    P.p = 2;
    P.strata = {point_stratum({0.0}, {0, 0}), point_stratum({1.0}, {1, 2})};
    const auto r = cm_extend(P, quick());
    CHECK(r.omega_at_1 >= 1.0);
    CHECK(r.ext.report.restriction_max_error <= 1e-6);
    CHECK(r.ext.report.finite());
    CHECK(r.sigma_max == doctest::Approx(2.0));
  }
  SUBCASE("flat jet") {
    problem P;
    P.n = 1;
    P.m = 1;
    P.p = 2;
    P.strata = {point_stratum({0.0}, {0, 0}), point_stratum({1.0}, {0, 0})};
    const auto r = cm_extend(P, quick());
    CHECK(r.omega(1.0) == doctest::Approx(1.0));
    CHECK(r.omega(5.0) == doctest::Approx(1.0));
    CHECK(r.ext.report.norm == 0.0);
  }
  SUBCASE("family of two-point sets") {
    for (double a = 0.5; a <= 2.0; a += 0.25) {
      problem P;
      P.n = 1;
      P.m = 0;
      P.p = 1;
      P.strata = {point_stratum({0.0}, {0.0}), point_stratum({a}, {a * a})};
      const auto r = cm_extend(P, quick(300));
      CHECK(r.omega_at_1 >= 1.0);
      CHECK(r.omega_at_1 <= std::max(1.0, r.sigma_max) * (1 + 1e-12));
    }
  }
}

TEST_CASE("extend_family") {
  auto segment = [](double a, double amp) {
    problem P;
    P.name = "a=" + std::to_string(a);
    P.n = 2;
    P.m = 1;
    P.p = 2;
    P.omega = modulus::holder(0.5);
    polynomial g(2);
    g.add_term({0, 0}, 0.5 * amp);
    g.add_term({1, 0}, 0.2 * amp);
    P.strata = {point_stratum({0.0, 0.0}, {0.5 * amp, 0.2 * amp, 0.0}),
                point_stratum({a, 0.0}, {(0.5 + 0.2 * a) * amp, 0.2 * amp, 0.0}),
                cell_stratum(lambda_cell::interval(0, a), poly(g), 16)};
    return P;
  };
  std::vector<problem> fam;
  for (double a : {0.1, 0.5, 1.0, 3.0}) fam.push_back(segment(a, 1.0));
  const auto rep = extend_family(fam, family_mode::fixed_omega, quick(600));
  CHECK(rep.failures.empty());
  CHECK(std::isfinite(rep.sup_norm));
  CHECK(rep.ratio >= 1.0);

  std::vector<problem> flat;
  for (double a : {0.5, 1.0}) flat.push_back(segment(a, 0.0));
  const auto fr = extend_family(flat, family_mode::fixed_omega, quick(300));
  for (const auto& s : fr.members) CHECK(s.norm == 0.0);

  fam.push_back(segment(1.0, 1e3));
  const auto bad = extend_family(fam, family_mode::fixed_omega, quick(600));
  CHECK(bad.worst == 4);

  const auto per = extend_family(fam, family_mode::per_member_omega, quick(300));
  CHECK(per.failures.empty());
  CHECK(per.uniform_omega_C >= 1.0);

  problem broken = segment(1.0, 1.0);
  broken.unstratified = 1;
  fam.push_back(broken);
  const auto partial = extend_family(fam, family_mode::fixed_omega, quick(300));
  CHECK(partial.failures.size() == 1);
  CHECK(partial.members.size() == fam.size());
}

TEST_CASE("sampled Hölder quotient matches brute force; refinement only raises it") {
  problem P;
  P.n = 2;
  P.m = 1;
  P.p = 2;
  P.strata = {point_stratum({0.0, 0.0}, {1.0, 0.5, -0.25}), point_stratum({0.4, 0.1}, {0.0, 1.0, 0.0})};
  const auto ext = extend_jet(P, quick(100));
  const expr& f = ext.f;
  const jet& F = ext.F;
  for (const modulus& w : {modulus::linear(), modulus::holder(0.5)}) {
    verify_options o = quick(700);
    o.refine_rounds = 0;
    const auto plain = verify_extension(f, F, w, o);
    const auto cloud = halton_cloud(plain.box_lo, plain.box_hi, 700, o.seed);
    std::vector<std::vector<double>> d;
    for (const auto& x : cloud) d.push_back({deriv(f, {1, 0}, x), deriv(f, {0, 1}, x)});
    double want = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i)
      for (std::size_t j = i + 1; j < cloud.size(); ++j) {
        const double dist = distance(cloud[i], cloud[j]);
        if (dist == 0.0 || dist > o.pair_radius) continue;
        want = std::max(want, std::max(std::abs(d[i][0] - d[j][0]), std::abs(d[i][1] - d[j][1])) / w(dist));
      }
    CHECK(plain.holder_quotient == doctest::Approx(want).epsilon(1e-12));
    CHECK(plain.refine_probes == 0);

    const auto refined = verify_extension(f, F, w, quick(700));
    CHECK(refined.refine_probes > 0);
    CHECK(refined.holder_quotient >= plain.holder_quotient);
    CHECK(refined.sup_derivatives >= plain.sup_derivatives);
  }
}
