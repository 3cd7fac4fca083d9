#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wjet/error.hpp"
#include "wjet/shvartsman.hpp"

using namespace wjet;

namespace {

poly_point affine(double x, double v, double slope) {
  polynomial P(1);
  P.add_term({0}, v);
  P.add_term({1}, slope);
  return {P, {x}};
}

poly_point random_pp(std::mt19937_64& g, int n, int m) {
  return {testing_support::random_poly(g, n, m, 2.0), testing_support::random_point(g, n)};
}

}  // namespace

TEST_CASE("psi and phi") {
  const psi_phi lin(1, 0, modulus::linear());
  CHECK(lin.psi(4.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(lin.phi(4.0) == doctest::Approx(2.0).epsilon(1e-10));
  for (double t : {0.01, 0.3, 2.0, 50.0, 1e4}) CHECK(lin.psi(t) == doctest::Approx(std::sqrt(t)).epsilon(1e-10));
  CHECK(psi_phi(2, 2, modulus::holder(0.5)).phi(7.0) == 7.0);
  CHECK(lin.psi(0.0) == 0.0);
  CHECK_THROWS_AS(lin.psi(-1.0), input_error);
  CHECK_THROWS_AS(psi_phi(1, 2, modulus::linear()), input_error);

  // holder(1/2), m = 2, |a| = 0: s^2.5 inverted
  const psi_phi h(2, 0, modulus::holder(0.5));
  for (double t : {0.001, 0.7, 9.0}) CHECK(h.psi(t) == doctest::Approx(std::pow(t, 0.4)).epsilon(1e-10));
}

TEST_CASE("delta_omega examples") {
  const modulus lin = modulus::linear();
  const poly_point Z0 = affine(0, 0, 0);
  CHECK(delta_omega(Z0, Z0, lin, 1) == 0.0);

  polynomial p0(1), p1(1);
  p1.add_term({0}, 1.0);
  CHECK(delta_omega({p0, {0.0}}, {p1, {1.0}}, lin, 0) == doctest::Approx(1.0));
  CHECK(delta_omega(affine(0, 0, 0), affine(0, 0, 1), lin, 1) == doctest::Approx(1.0));
}

TEST_CASE("delta_omega is symmetric and vanishes on the diagonal") {
  std::mt19937_64 g(17);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + rep % 2, m = rep % 3;
    const modulus w = rep % 2 ? modulus::holder(0.5) : modulus::linear();
    const poly_point A = random_pp(g, n, m), B = random_pp(g, n, m);
    CHECK(delta_omega(A, B, w, m) == delta_omega(B, A, w, m));
    CHECK(delta_omega(A, A, w, m) == 0.0);
  }
}

TEST_CASE("chain distances") {
  const modulus w = modulus::holder(0.5);
  const poly_point A = affine(0, 0, 0), B = affine(1, 1, 0), M = affine(0.5, 0.5, 0);
  CHECK(d_omega_chain(A, B, {}, w, 0) == delta_omega(A, B, w, 0));
  CHECK(d_omega_chain(A, A, {B, M}, w, 0) == 0.0);

  // three collinear m = 0 points against a hand Floyd-Warshall on three nodes
  const double ab = delta_omega(A, B, w, 0), am = delta_omega(A, M, w, 0), mb = delta_omega(M, B, w, 0);
  const double oracle = std::min(ab, am + mb);
  const double chain = d_omega_chain(A, B, {M}, w, 0);
  CHECK(chain == oracle);
  CHECK(chain <= ab);
  MESSAGE("collinear holder(0.5): direct " << ab << ", two-hop " << am + mb << ", chain " << chain);

  std::mt19937_64 g(3);
  for (int rep = 0; rep < 30; ++rep) {
    const int m = rep % 3;
    std::vector<poly_point> nodes;
    for (int i = 0; i < 6; ++i) nodes.push_back(random_pp(g, 2, m));
    const auto d = chain_distances(nodes, w, m);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CHECK(d[i][i] == 0.0);
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        CHECK(d[i][j] <= delta_omega(nodes[i], nodes[j], w, m));
        for (std::size_t k = 0; k < nodes.size(); ++k) CHECK(d[i][j] <= d[i][k] + d[k][j] + 1e-12 * d[i][j]);
      }
    }
  }
}

TEST_CASE("lip_norm") {
  const modulus lin = modulus::linear();
  std::vector<poly_point> zero{affine(0, 0, 0), affine(1, 0, 0), affine(2.5, 0, 0)};
  CHECK(lip_norm(zero, lin, 1).total == 0.0);

  const auto one = lip_norm({affine(0, 3, 1)}, lin, 1);
  CHECK(one.sup_term == 3.0);
  CHECK(one.lambda_term == 0.0);
  CHECK(one.total == 3.0);
  CHECK(one.pairs == 0);

  CHECK_THROWS_AS(lip_norm({}, lin, 1), input_error);

  // lambda is the least scale making every pair admissible
  const auto two = lip_norm({affine(0, 0, 0), affine(1, 0, 1)}, lin, 1);
  CHECK(two.lambda_term > 0.0);
  std::vector<poly_point> s;
  for (const auto& T : {affine(0, 0, 0), affine(1, 0, 1)}) s.push_back(scaled(T, 1.0 / two.lambda_term));
  CHECK(chain_distances(s, lin, 1)[0][1] <= lin(1.0) * (1 + 1e-9));
  for (const auto& T : {affine(0, 0, 0), affine(1, 0, 1)}) s.push_back(scaled(T, 1.0 / (0.99 * two.lambda_term)));
  CHECK(chain_distances({s[2], s[3]}, lin, 1)[0][1] > lin(1.0));
}

TEST_CASE("jet fields have finite Lipschitz norm; comparison with the Whitney constant is reported") {
  std::mt19937_64 g(23);
  for (int rep = 0; rep < 10; ++rep) {
    const int m = 1 + rep % 2;
    const modulus w = rep % 2 ? modulus::holder(0.5) : modulus::linear();
    const polynomial f = testing_support::random_poly(g, 2, m + 1, 1.0);
    jet F(2, m);
    for (int i = 0; i < 6; ++i) {
      const point x = testing_support::random_point(g, 2);
      std::vector<double> v;
      for (const auto& a : graded_lex(2, m)) v.push_back(f.deriv(a, x));
      F.add_point(x, v);
    }
    const double C = whitney_constant(F, w).holder_constant;
    const auto L = lip_norm(field_from_jet(F), w, m);
    CHECK(std::isfinite(C));
    CHECK(std::isfinite(L.total));
    MESSAGE("m=" << m << " lip_norm " << L.total << " whitney " << C << " ratio " << L.total / std::max(C, 1e-300));
  }
}
