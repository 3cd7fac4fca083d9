#include <cstring>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "wjet/error.hpp"
#include "wjet/expr.hpp"
#include "wjet/jet.hpp"
#include "wjet/modulus.hpp"

using namespace wjet;
using testing_support::pair_oracle;
using testing_support::random_point;
using testing_support::random_poly;
using testing_support::uniform;

namespace {

jet jet_1d(int m, const std::vector<double>& xs, const std::vector<std::vector<double>>& vals) {
  jet F(1, m);
  for (std::size_t i = 0; i < xs.size(); ++i) F.add_point({xs[i]}, vals[i]);
  return F;
}

jet t_squared(const std::vector<double>& xs) {
  jet F(1, 1);
  for (double x : xs) F.add_point({x}, {x * x, 2 * x});
  return F;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void check_jets_close(const jet& A, const jet& B, double tol) {
  REQUIRE(A.size() == B.size());
  REQUIRE(A.indices().size() == B.indices().size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    CHECK(A.points()[i] == B.points()[i]);
    for (std::size_t k = 0; k < A.indices().size(); ++k)
      CHECK(std::abs(A.value(k, i) - B.value(k, i)) <= tol * std::max(1.0, std::abs(B.value(k, i))));
  }
}

}  // namespace

TEST_CASE("jet construction") {
  jet F(2, 1);
  F.add_point({0, 0}, {1, 2, 3});
  CHECK_THROWS_AS(F.add_point({0, 0}, {1, 2, 3}), input_error);
  CHECK_THROWS_AS(F.add_point({1, 0}, {1, 2}), input_error);
  CHECK_THROWS_AS(F.add_point({1}, {1, 2, 3}), input_error);
  CHECK(F.field({1, 0}, 0) == 2);
  CHECK(F.field({0, 1}, 0) == 3);
}

TEST_CASE("taylor") {
  const polynomial P = taylor(jet_1d(1, {0}, {{1, 2}}), 0);
  CHECK(P.eval({0.5}) == doctest::Approx(2.0));
  CHECK(P.eval({-1}) == doctest::Approx(-1.0));
  CHECK(taylor(jet_1d(2, {0}, {{0, 0, 0}}), 0).is_zero());
  const polynomial Q = taylor(jet_1d(2, {0}, {{0, 0, 2}}), 0);
  for (double x : {-2.0, 0.3, 1.0, 4.0}) CHECK(Q.eval({x}) == doctest::Approx(x * x));
  CHECK_THROWS_AS(taylor(jet_1d(1, {0}, {{1, 2}}), point{1.0}), input_error);
}

TEST_CASE("taylor of a polynomial jet reproduces the polynomial") {
  std::mt19937_64 g(3);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 1 + rep % 3, m = rep % 4;
    const polynomial p = random_poly(g, n, m);
    std::vector<point> E;
    for (int i = 0; i < 4; ++i) E.push_back(random_point(g, n));
    const jet F = jet_from_function(poly(p), E, m);
    for (std::size_t i = 0; i < E.size(); ++i) {
      const polynomial T = taylor(F, i);
      for (int q = 0; q < 5; ++q) {
        const point z = random_point(g, n, -3, 3);
        CHECK(T.eval(z) == doctest::Approx(p.eval(z)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("remainder") {
  const jet F = t_squared({0, 1});
  const auto R = remainder(F, point{0.0}, point{1.0});
  CHECK(R[0] == doctest::Approx(1.0));
  CHECK(R[1] == doctest::Approx(2.0));
  for (double v : remainder(F, 1, 1)) CHECK(v == 0.0);
  for (double v : remainder(jet_1d(2, {0, 1}, {{0, 0, 0}, {0, 0, 0}}), 0, 1)) CHECK(v == 0.0);
  CHECK_THROWS_AS(remainder(F, point{0.0}, point{2.0}), input_error);
}

TEST_CASE("whitney_constant examples") {
  const auto r = whitney_constant(t_squared({0, 1}), modulus::linear());
  CHECK(r.holder_constant == doctest::Approx(2.0));
  CHECK(r.worst_index == 1);
  const auto z = whitney_constant(jet_1d(1, {0, 1}, {{0, 0}, {0, 0}}), modulus::linear());
  CHECK(z.sup_norm == 0.0);
  CHECK(z.holder_constant == 0.0);
  const auto s = whitney_constant(jet_1d(0, {0}, {{5}}), modulus::linear());
  CHECK(s.sup_norm == 5.0);
  CHECK(s.holder_constant == 0.0);
}

TEST_CASE("whitney_constant equals the pair oracle bit for bit") {
  std::mt19937_64 g(2024);
  const modulus ws[] = {modulus::linear(), modulus::holder(0.5)};
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + rep % 3, m = rep % 3;
    const int N = 2 + static_cast<int>(uniform(g, 0, 19));
    const polynomial p = random_poly(g, n, m);
    std::vector<point> E;
    while (static_cast<int>(E.size()) < N) E.push_back(random_point(g, n, -2, 2));
    jet F = jet_from_function(poly(p), E, m);
    // perturb so that remainders are not identically zero
    for (std::size_t i = 0; i < F.size(); ++i) F.value(0, i) += uniform(g, -0.1, 0.1);
    const modulus& w = ws[rep % 2];
    const double want = pair_oracle(F, w);
    whitney_options serial, threaded;
    threaded.threads = 4;
    CHECK(same_bits(whitney_constant(F, w, serial).holder_constant, want));
    CHECK(same_bits(whitney_constant(F, w, threaded).holder_constant, want));
  }
}

TEST_CASE("remainder matches a hand expansion") {
  std::mt19937_64 g(8);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 1 + rep % 2, m = 1 + rep % 3;
    jet F(n, m);
    for (int i = 0; i < 3; ++i) {
      std::vector<double> v(F.indices().size());
      for (auto& x : v) x = uniform(g, -1, 1);
      F.add_point(random_point(g, n), v);
    }
    const auto& idx = F.indices();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const auto R = remainder(F, i, j);
        for (std::size_t a = 0; a < idx.size(); ++a) {
          double want = F.value(a, j);
          for (std::size_t b = 0; b < idx.size(); ++b) {
            if (!leq(idx[a], idx[b])) continue;
            multi_index d(n);
            double coef = 1.0;
            for (int c = 0; c < n; ++c) {
              d[c] = idx[b][c] - idx[a][c];
              coef *= std::pow(F.points()[j][c] - F.points()[i][c], d[c]) / std::tgamma(d[c] + 1);
            }
            want -= F.value(b, i) * coef;
          }
          CHECK(R[a] == doctest::Approx(want).epsilon(1e-12).scale(1.0));
        }
      }
  }
}

TEST_CASE("Taylor polynomials of a Whitney jet differ by the remainder bound") {
  // |T_x F(z) - T_y F(z)| <= 2^(m+1) C w(|x-y|) (|z-x|^m + |z-y|^m)
  std::mt19937_64 g(17);
  double best = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 1 + rep % 2;
    jet F(1, m);
    for (int i = 0; i < 4; ++i) {
      const double x = 0.5 * i + uniform(g, 0, 0.2);
      std::vector<double> v(m + 1);
      // jet of x^(m+1)/2 plus a small perturbation
      for (int k = 0; k <= m; ++k)
        v[k] = 0.5 * std::tgamma(m + 2) / std::tgamma(m + 2 - k) * std::pow(x, m + 1 - k) + uniform(g, -0.05, 0.05);
      F.add_point({x}, v);
    }
    const modulus w = modulus::holder(0.5);
    const double C = whitney_constant(F, w).holder_constant;
    for (std::size_t i = 0; i < F.size(); ++i)
      for (std::size_t j = 0; j < F.size(); ++j) {
        if (i == j) continue;
        const polynomial Ti = taylor(F, i), Tj = taylor(F, j);
        const double x = F.points()[i][0], y = F.points()[j][0];
        for (int q = 0; q < 20; ++q) {
          const double z = uniform(g, -1, 3);
          const double lhs = std::abs(Ti.eval({z}) - Tj.eval({z}));
          const double scale = w(std::abs(x - y)) * (std::pow(std::abs(z - x), m) + std::pow(std::abs(z - y), m));
          CHECK(lhs <= std::pow(2.0, m + 1) * C * scale * (1 + 1e-12) + 1e-14);
          if (C > 0) best = std::max(best, lhs / (C * scale));
        }
      }
  }
  MESSAGE("empirical constant for the Taylor difference bound: " << best);
}

TEST_CASE("adding a point from the generating polynomial keeps the constant at zero") {
  std::mt19937_64 g(4);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 1 + rep % 3, m = rep % 3;
    const polynomial p = random_poly(g, n, m);
    std::vector<point> E{random_point(g, n), random_point(g, n)};
    const jet F = jet_from_function(poly(p), E, m);
    E.push_back(random_point(g, n));
    const jet G = jet_from_function(poly(p), E, m);
    const double a = whitney_constant(F, modulus::linear()).holder_constant;
    const double b = whitney_constant(G, modulus::linear()).holder_constant;
    CHECK(a <= 1e-12);
    CHECK(b <= 1e-12);
  }
}

TEST_CASE("jet_mul") {
  const jet P = jet_mul(jet_1d(1, {0}, {{1, 2}}), jet_1d(1, {0}, {{3, 4}}));
  CHECK(P.value(0, 0) == doctest::Approx(3));
  CHECK(P.value(1, 0) == doctest::Approx(10));
  const jet F = jet_1d(2, {0, 1}, {{1, 2, 3}, {4, 5, 6}});
  const jet one = jet_1d(2, {0, 1}, {{1, 0, 0}, {1, 0, 0}});
  check_jets_close(jet_mul(F, one), F, 0);
  CHECK(jet_mul(jet_1d(2, {0, 1}, {{0, 0, 0}, {0, 0, 0}}), F).is_flat());
  CHECK_THROWS_AS(jet_mul(F, jet_1d(2, {0, 2}, {{1, 0, 0}, {1, 0, 0}})), input_error);
}

TEST_CASE("jet_compose") {
  const jet C = jet_compose(jet_1d(1, {2}, {{5, 3}}), {jet_1d(1, {0}, {{2, 4}})});
  CHECK(C.value(0, 0) == doctest::Approx(5));
  CHECK(C.value(1, 0) == doctest::Approx(12));

  const jet F = jet_1d(2, {0.5, 1.5}, {{1, 2, 3}, {4, 5, 6}});
  const jet id = jet_1d(2, {0.5, 1.5}, {{0.5, 1, 0}, {1.5, 1, 0}});
  check_jets_close(jet_compose(F, {id}), F, 1e-15);
  CHECK(jet_compose(jet_1d(2, {0.5, 1.5}, {{0, 0, 0}, {0, 0, 0}}), {id}).is_flat());
  CHECK_THROWS_AS(jet_compose(F, {jet_1d(2, {0}, {{7, 1, 0}})}), domain_error);
}

TEST_CASE("jet_from_function") {
  const expr sq = coordinate(0) * coordinate(0);
  const jet F = jet_from_function(sq, {{0}, {1}}, 1);
  CHECK(F.value(0, 0) == 0);
  CHECK(F.value(0, 1) == 1);
  CHECK(F.value(1, 0) == 0);
  CHECK(F.value(1, 1) == 2);
  const jet c = jet_from_function(constant(4), {{0}, {1}}, 2);
  CHECK(c.value(0, 1) == 4);
  CHECK(c.value(1, 1) == 0);
  CHECK(c.value(2, 1) == 0);
}

TEST_CASE("jet algebra agrees with jets of products and composites") {
  std::mt19937_64 g(99);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + rep % 3, m = 1 + rep % 3;
    std::vector<point> E;
    for (int i = 0; i < 5; ++i) E.push_back(random_point(g, n));
    const polynomial p = random_poly(g, n, 3), q = random_poly(g, n, 3);
    const jet FP = jet_mul(jet_from_function(poly(p), E, m), jet_from_function(poly(q), E, m));
    check_jets_close(FP, jet_from_function(poly(p) * poly(q), E, m), 1e-9);

    // outer f in n variables, inner g: R^k -> R^n
    const int k = 1 + (rep / 3) % 3;
    std::vector<point> A;
    for (int i = 0; i < 4; ++i) A.push_back(random_point(g, k));
    std::vector<expr> inner;
    std::vector<jet> G;
    for (int j = 0; j < n; ++j) {
      inner.push_back(poly(random_poly(g, k, 2)));
      G.push_back(jet_from_function(inner.back(), A, m));
    }
    std::vector<point> image;
    for (const auto& a : A) {
      point y(n);
      for (int j = 0; j < n; ++j) y[j] = eval(inner[j], a);
      image.push_back(y);
    }
    const expr f = poly(p);
    const jet comp = jet_compose(jet_from_function(f, image, m), G);
    check_jets_close(comp, jet_from_function(compose(f, inner), A, m), 1e-9);

    // pullback along (u, w) -> (u, w + phi(u)) with k = 1
    if (n >= 2) {
      const int kb = 1;
      std::vector<polynomial> phi;
      for (int j = 0; j < n - kb; ++j) phi.push_back(random_poly(g, kb, 2));
      std::vector<expr> plus;
      for (int c = 0; c < n; ++c) plus.push_back(c < kb ? coordinate(c) : coordinate(c) + poly(phi[c - kb]));
      std::vector<point> N, M;
      for (int i = 0; i < 4; ++i) {
        const point x = random_point(g, n);
        N.push_back(x);
        point y(n);
        for (int c = 0; c < n; ++c) y[c] = eval(plus[c], x);
        M.push_back(y);
      }
      const jet pb = pullback(jet_from_function(f, M, m), phi, kb);
      const jet want = jet_from_function(compose(f, plus), N, m);
      REQUIRE(pb.size() == want.size());
      for (std::size_t i = 0; i < pb.size(); ++i) {
        for (int c = 0; c < n; ++c) CHECK(pb.points()[i][c] == doctest::Approx(N[i][c]).epsilon(1e-12));
        for (std::size_t a = 0; a < pb.indices().size(); ++a)
          CHECK(std::abs(pb.value(a, i) - want.value(a, i)) <= 1e-9 * std::max(1.0, std::abs(want.value(a, i))));
      }
    }
  }
}

TEST_CASE("pullback examples") {
  // phi(u) = u^2, f(u, w) = w on the graph
  polynomial phi(1);
  phi.add_term({2}, 1.0);
  std::vector<point> M;
  for (double u : {0.25, 0.5, 0.75}) M.push_back({u, u * u});
  const jet F = jet_from_function(coordinate(1), M, 1);
  const jet pb = pullback(F, {phi}, 1);
  for (std::size_t i = 0; i < pb.size(); ++i) {
    const double u = pb.points()[i][0];
    CHECK(pb.points()[i][1] == doctest::Approx(0.0));
    CHECK(pb.field({0, 0}, i) == doctest::Approx(u * u));
    CHECK(pb.field({1, 0}, i) == doctest::Approx(2 * u));
    CHECK(pb.field({0, 1}, i) == doctest::Approx(1.0));
  }
  const jet same = pullback(F, {polynomial(1)}, 1);
  check_jets_close(same, F, 0);
  jet flat(2, 1);
  for (const auto& x : M) flat.add_point(x, {0, 0, 0});
  CHECK(pullback(flat, {phi}, 1).is_flat());
}

TEST_CASE("zero_extend_flat") {
  const jet flat = jet_1d(1, {0}, {{0, 0}});
  const auto [u, r] = zero_extend_flat(flat, {{1}, {2}}, modulus::linear());
  CHECK(u.size() == 3);
  CHECK(r.sup_norm == 0);
  CHECK(r.holder_constant == 0);

  const auto [u2, r2] = zero_extend_flat(jet_1d(0, {0}, {{1}}), {{2}}, modulus::linear());
  CHECK(r2.holder_constant == doctest::Approx(0.5));

  const jet F = jet_1d(1, {0}, {{1, 2}});
  const auto [u3, r3] = zero_extend_flat(F, {}, modulus::linear());
  CHECK(u3.size() == 1);
  CHECK(u3.value(1, 0) == 2);
  CHECK_THROWS_AS(zero_extend_flat(F, {{0}}, modulus::linear()), input_error);
}
