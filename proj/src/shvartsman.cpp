#include "wjet/shvartsman.hpp"

#include <algorithm>
#include <cmath>

#include "wjet/error.hpp"

namespace wjet {

psi_phi::psi_phi(int m, int order, modulus w) : m_(m), order_(order), w_(std::move(w)) {
  if (order < 0 || order > m) throw input_error("psi_phi needs 0 <= |a| <= m");
}

double psi_phi::psi(double t) const {
  if (t < 0.0) throw input_error("psi is defined for t >= 0");
  if (t == 0.0) return 0.0;
  auto g = [&](double s) { return std::pow(s, m_ - order_) * w_(s); };
  double lo = 0.0, hi = 1.0;
  while (g(hi) < t) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < t ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double psi_phi::phi(double t) const {
  if (t < 0.0) throw input_error("phi is defined for t >= 0");
  if (order_ == m_) return t;
  return w_(psi(t));
}

double delta_omega(const poly_point& T1, const poly_point& T2, const modulus& w, int m) {
  const int n = static_cast<int>(T1.x.size());
  if (static_cast<int>(T2.x.size()) != n) throw input_error("poly points live in different dimensions");
  double v = w(distance(T1.x, T2.x));
  for (const auto& a : graded_lex(n, m)) {
    const psi_phi pp(m, order_of(a), w);
    for (const point* x : {&T1.x, &T2.x}) v = std::max(v, pp.phi(std::abs(T1.P.deriv(a, *x) - T2.P.deriv(a, *x))));
  }
  return v;
}

std::vector<std::vector<double>> chain_distances(const std::vector<poly_point>& nodes, const modulus& w, int m) {
  const std::size_t N = nodes.size();
  std::vector<std::vector<double>> d(N, std::vector<double>(N, 0.0));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) d[i][j] = d[j][i] = delta_omega(nodes[i], nodes[j], w, m);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

double d_omega_chain(const poly_point& T, const poly_point& T2, const std::vector<poly_point>& candidates,
                     const modulus& w, int m) {
  std::vector<poly_point> nodes{T, T2};
  nodes.insert(nodes.end(), candidates.begin(), candidates.end());
  return chain_distances(nodes, w, m)[0][1];
}

poly_point scaled(const poly_point& T, double s) {
  polynomial P(T.P.nvars(), T.P.center());
  for (const auto& [a, c] : T.P.terms()) P.add_term(a, c * s);
  return {P, T.x};
}

lip_norm_result lip_norm(const std::vector<poly_point>& field, const modulus& w, int m) {
  if (field.empty()) throw input_error("lip_norm needs at least one point");
  lip_norm_result r;
  const int n = static_cast<int>(field[0].x.size());
  for (const auto& T : field)
    for (const auto& a : graded_lex(n, m)) r.sup_term = std::max(r.sup_term, std::abs(T.P.deriv(a, T.x)));
  const std::size_t N = field.size();
  r.pairs = static_cast<int>(N * (N - 1) / 2);
  auto ok = [&](double lambda) {
    std::vector<poly_point> s;
    for (const auto& T : field) s.push_back(scaled(T, 1.0 / lambda));
    const auto d = chain_distances(s, w, m);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j)
        if (d[i][j] > w(distance(field[i].x, field[j].x)) * (1.0 + 1e-12)) return false;
    return true;
  };
  if (N >= 2 && !ok(1e-300)) {
    double lo = 0.0, hi = 1.0;
    while (!ok(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) throw domain_error("lambda search diverged");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-10 * hi; ++it) {
      const double mid = lo == 0.0 && it < 60 ? hi / 2.0 : 0.5 * (lo + hi);
      (ok(mid) ? hi : lo) = mid;
    }
    r.lambda_term = hi;
  }
  r.total = r.sup_term + r.lambda_term;
  return r;
}

std::vector<poly_point> field_from_jet(const jet& F) {
  std::vector<poly_point> out;
  for (std::size_t i = 0; i < F.size(); ++i) out.push_back({taylor(F, i), F.points()[i]});
  return out;
}

}  // namespace wjet
