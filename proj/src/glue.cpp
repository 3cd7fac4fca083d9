#include "wjet/glue.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wjet/error.hpp"

namespace wjet {

namespace {

polynomial squared_norm(int n) {
  polynomial p(n);
  for (int i = 0; i < n; ++i) {
    multi_index a(n, 0);
    a[i] = 2;
    p.add_term(a, 1.0);
  }
  return p;
}

}  // namespace

expr glue_h(const bump_spec& b, const expr& s) { return bump_xi(b, (4.0 / 3.0) * s); }

std::vector<expr> glue_partition(int n, int count, const bump_spec& b) {
  const expr r2 = poly(squared_norm(n));
  std::vector<expr> psi{glue_h(b, r2)};
  const auto away = std::make_shared<ball_region>(point(n, 0.0), 0.125, true);
  for (int k = 2; k <= count; ++k) psi.push_back(gate(away, glue_h(b, sqrt_of(r2) - constant(k - 1.0))));
  return psi;
}

glue_result glue_local(const std::vector<glue_piece>& pieces, int n, const bump_spec& b) {
  if (pieces.empty()) throw input_error("glue needs at least one piece");
  std::vector<glue_piece> sorted = pieces;
  std::sort(sorted.begin(), sorted.end(), [](const glue_piece& a, const glue_piece& c) { return a.k < c.k; });
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i].k != static_cast<int>(i) + 1)
      throw input_error("annulus indices must run 1..K without gaps (index " + std::to_string(i + 1) + " missing)");
  const int K = static_cast<int>(sorted.size());
  const auto psi = glue_partition(n, K + 1, b);
  std::vector<expr> num;
  for (int k = 0; k < K; ++k) num.push_back(psi[k] * sorted[k].f);
  glue_result out;
  out.K = K;
  out.outer_radius = K + 0.5;
  const auto ball = std::make_shared<ball_region>(point(n, 0.0), out.outer_radius, false);
  out.f = gate(ball, quotient(sum(num), sum(psi)));
  out.log.push_back("glued " + std::to_string(K) + " piece(s) with " + std::to_string(K + 1) +
                    " partition functions, support radius " + std::to_string(out.outer_radius));
  return out;
}

double partition_residual(const std::vector<expr>& psi, const point& x) {
  std::vector<double> v;
  for (const auto& p : psi) v.push_back(eval(p, x));
  double den = 0.0;
  for (double a : v) den += a;
  if (!(den > 0.0)) throw domain_error("partition of unity is not defined here");
  double num = 0.0;
  for (double a : v) num += a;
  return std::abs(num / den - 1.0);
}

double partition_deviation(const std::vector<expr>& psi, const point& x) {
  std::vector<double> v;
  for (const auto& p : psi) v.push_back(eval(p, x));
  double den = 0.0;
  for (double a : v) den += a;
  if (!(den > 0.0)) throw domain_error("partition of unity is not defined here");
  double s = 0.0;
  for (double a : v) s += a / den;
  return std::abs(s - 1.0);
}

glue_pipeline_result glue_annuli(const problem& P, const verify_options& vopt, int piece_probes) {
  for (const auto* list : {&P.strata, &P.extras})
    for (const auto& S : *list)
      if (!S.is_point) throw input_error("the annulus pipeline takes point strata only");
  double rmax = 0.0;
  for (const auto& S : P.strata) rmax = std::max(rmax, norm(S.x));
  for (const auto& S : P.extras) rmax = std::max(rmax, norm(S.x));
  // psi_{K+1} must vanish on E: it is positive only for |x| > K - 3/4
  const int K = std::max(1, static_cast<int>(std::ceil(rmax + 0.75)));
  glue_pipeline_result out;
  std::vector<glue_piece> pieces;
  verify_options pv = vopt;
  pv.probes = piece_probes;
  for (int k = 1; k <= K; ++k) {
    problem Q = P;
    Q.name = P.name + "/U" + std::to_string(k);
    Q.strata.clear();
    Q.extras.clear();
    auto inside = [&](const point& x) {
      const double r = norm(x);
      return r > k - 2.0 && r < k;
    };
    for (const auto& S : P.strata)
      if (inside(S.x)) Q.strata.push_back(S);
    for (const auto& S : P.extras)
      if (inside(S.x)) Q.extras.push_back(S);
    out.points_per_piece.push_back(static_cast<int>(Q.strata.size() + Q.extras.size()));
    glue_piece gp;
    gp.k = k;
    gp.f = Q.strata.empty() ? constant(0.0) : extend_jet(Q, pv).f;
    pieces.push_back(gp);
  }
  bump_spec b = P.bump;
  if (b.p < P.p) b.p = P.p;
  out.glued = glue_local(pieces, P.n, b);
  out.ext.f = out.glued.f;
  out.ext.log = out.glued.log;
  out.ext.F = problem_jet(P);
  verify_options o = vopt;
  const auto seams = problem_seams(P);
  o.seam_points.insert(o.seam_points.end(), seams.begin(), seams.end());
  out.ext.report = verify_extension(out.glued.f, out.ext.F, P.omega, o);
  return out;
}

}  // namespace wjet
