#include "wjet/extend.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wjet/error.hpp"
#include "wjet/geometry.hpp"

namespace wjet {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string fmt(const point& x) {
  std::ostringstream os;
  os.precision(10);
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

expr linear_form(int n, const std::vector<double>& c) {
  polynomial p(n);
  for (int j = 0; j < n; ++j)
    if (c[j] != 0.0) p.add_term(unit_index(n, j), c[j]);
  return poly(p);
}

point pad(point y, int n) {
  y.resize(n, 0.0);
  return y;
}

// Cell stated in a frame: membership of global points.
class framed_region : public region {
 public:
  framed_region(cell_ptr c, frame Q) : c_(std::move(c)), Q_(std::move(Q)) {}
  bool contains(const point& x) const override { return c_->contains(to_local(Q_, x)); }
  std::string describe() const override { return c_->describe() + (Q_.empty() ? "" : " in frame"); }

 private:
  cell_ptr c_;
  frame Q_;
};

std::vector<double> series_derivs(const tps& s, const std::vector<multi_index>& idx) {
  std::vector<double> v(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) v[k] = s.derivative(idx[k]);
  return v;
}

bool all_zero(const std::vector<double>& v) {
  for (double x : v)
    if (x != 0.0) return false;
  return true;
}

// Product over w_i and finite rho_j of xi(C sqrt(l) w_i / rho_j(u)).
expr step1_cutoff(const cell_ptr& D, int k, int l, double C, const bump_spec& b) {
  const associated_family fam = associated_functions(*D);
  std::vector<expr> fac;
  const double s = C * std::sqrt(static_cast<double>(l));
  for (int i = 0; i < l; ++i)
    for (const auto& rho : fam.rho)
      if (rho) fac.push_back(bump_xi(b, quotient(s * coordinate(k + i), *rho)));
  return product(fac);
}

std::vector<cell_ptr> default_pieces(const flat_cell_input& in) {
  return in.pieces.empty() ? std::vector<cell_ptr>{in.T} : in.pieces;
}

void check_decomposition(const flat_cell_input& in, const std::vector<cell_ptr>& pieces) {
  if (!in.T || !in.T->is_open()) throw input_error("Step 1 needs an open base cell");
  const int k = in.T->ambient();
  if (k >= in.n) throw input_error("Step 1 needs a base of dimension below n");
  for (const auto& D : pieces) {
    if (!D || !D->is_open()) throw input_error("decomposition cells must be open");
    if (D->ambient() != k) throw input_error("decomposition cell has the wrong dimension");
  }
  for (std::size_t a = 0; a < pieces.size(); ++a)
    for (const auto& x : sample_cell(*pieces[a], 8)) {
      if (!in.T->contains(x)) throw input_error("decomposition cell " + pieces[a]->describe() + " leaves T");
      for (std::size_t b = 0; b < pieces.size(); ++b)
        if (b != a && pieces[b]->contains(x))
          throw input_error("decomposition cells " + pieces[a]->describe() + " and " + pieces[b]->describe() +
                            " overlap");
    }
}

// Step-1 sum with optional extra factors per piece.
expr step1_expr(const flat_cell_input& in, const std::vector<cell_ptr>& pieces, const expr& generator,
                const std::vector<expr>& extra) {
  const int k = in.T->ambient(), l = in.n - k;
  const expr h = fiber_taylor(generator, k, in.m) - in.g;
  std::vector<expr> terms{in.g};
  for (const auto& D : pieces) {
    std::vector<expr> fac{step1_cutoff(D, k, l, in.C, in.bump)};
    fac.insert(fac.end(), extra.begin(), extra.end());
    fac.push_back(h);
    terms.push_back(gate(std::make_shared<cell_region>(D), product(fac)));
  }
  return sum(terms);
}

}  // namespace

point to_local(const frame& Q, const point& x) {
  if (Q.empty()) return x;
  point y(Q.size(), 0.0);
  for (std::size_t i = 0; i < Q.size(); ++i)
    for (std::size_t j = 0; j < Q[i].size(); ++j) y[i] += Q[i][j] * x[j];
  return y;
}

point to_global(const frame& Q, const point& y) {
  if (Q.empty()) return y;
  point x(Q.size(), 0.0);
  for (std::size_t i = 0; i < Q.size(); ++i)
    for (std::size_t j = 0; j < Q.size(); ++j) x[i] += Q[j][i] * y[j];
  return x;
}

expr pull_to_local(const expr& e, const frame& Q, int n) {
  if (Q.empty()) return e;
  std::vector<expr> maps;
  for (int i = 0; i < n; ++i) {
    std::vector<double> c(n);
    for (int j = 0; j < n; ++j) c[j] = Q[j][i];
    maps.push_back(linear_form(n, c));
  }
  return compose(e, maps);
}

expr push_to_global(const expr& e_local, const frame& Q, int n) {
  if (Q.empty()) return e_local;
  std::vector<expr> maps;
  for (int i = 0; i < n; ++i) maps.push_back(linear_form(n, Q[i]));
  return compose(e_local, maps);
}

std::string stratum::describe() const {
  if (is_point) return "point " + fmt(x);
  return cell->describe() + " (dim " + std::to_string(cell->dim()) + (Q.empty() ? ")" : ", framed)");
}

std::vector<point> stratum::sample(int n) const {
  if (is_point) return {x};
  if (cell->ambient() > n) throw input_error("cell " + cell->describe() + " does not fit in R^" + std::to_string(n));
  std::vector<point> out;
  for (const auto& y : sample_cell(*cell, samples)) out.push_back(to_global(Q, pad(y, n)));
  return out;
}

std::vector<point> stratum::sample_frontier(int n) const {
  if (is_point) return {};
  std::vector<point> out;
  for (const auto& y : wjet::sample_frontier(*cell, samples)) out.push_back(to_global(Q, pad(y, n)));
  return out;
}

jet problem_jet(const problem& P) {
  jet F(P.n, P.m);
  const auto idx = graded_lex(P.n, P.m);
  auto add = [&](const stratum& S, bool flat) {
    for (const auto& x : S.sample(P.n)) {
      if (F.find(x) >= 0) continue;
      std::vector<double> v(idx.size(), 0.0);
      if (!flat) {
        if (S.generator)
          v = series_derivs(eval_series(*S.generator, x, P.m), idx);
        else if (S.values)
          v = *S.values;
      }
      F.add_point(x, v);
    }
  };
  for (const auto& S : P.strata) add(S, false);
  for (const auto& S : P.extras) add(S, true);
  return F;
}

std::vector<point> problem_seams(const problem& P) {
  std::vector<point> out;
  for (const auto* list : {&P.strata, &P.extras})
    for (const auto& S : *list) {
      if (S.is_point) {
        out.push_back(S.x);
        continue;
      }
      for (const auto& y : S.sample_frontier(P.n)) out.push_back(y);
    }
  return out;
}

double point_radius(const point& x0, const std::vector<point>& E) {
  double d = 1.0;
  for (const auto& y : E) {
    const double r = distance(x0, y);
    if (r == 0.0) continue;
    if (r <= 1e-14 * (1.0 + norm(x0))) throw input_error("point " + fmt(x0) + " is not isolated in E");
    d = std::min(d, r);
  }
  return d;
}

extension_result extend_point(const jet& F, const std::vector<point>& E, const bump_spec& bump) {
  if (F.size() != 1) throw input_error("extend_point takes a one-point jet");
  const point& x0 = F.points()[0];
  const double d = point_radius(x0, E);
  extension_result res;
  res.F = F;
  if (F.is_flat()) {
    res.f = constant(0.0);
    res.log.push_back("point " + fmt(x0) + ": flat jet, zero extension");
    return res;
  }
  res.f = bump_chi_at(x0, d, bump) * poly(taylor(F, std::size_t{0}));
  res.log.push_back("point " + fmt(x0) + ": radius d = " + fmt(d));
  return res;
}

bool in_step1_region(const cell_ptr& D, const point& y, int k, double C) {
  if (!D->contains(y)) return false;
  const int l = static_cast<int>(y.size()) - k;
  double wmax = 0.0;
  for (int i = 0; i < l; ++i) wmax = std::max(wmax, std::abs(y[k + i]));
  return C * std::sqrt(static_cast<double>(l)) * wmax < associated_functions(*D).min_at(y, 0);
}

extension_result extend_flat_cell(const flat_cell_input& in) {
  const auto pieces = default_pieces(in);
  check_decomposition(in, pieces);
  extension_result res;
  res.f = step1_expr(in, pieces, in.generator, {});
  std::ostringstream os;
  os << "step 1: T = " << in.T->describe() << ", " << pieces.size() << " piece(s), cutoff constant " << in.C
     << ", plateau " << in.bump.plateau;
  res.log.push_back(os.str());
  return res;
}

extension_result extend_with_obstacle(const obstacle_input& in) {
  const flat_cell_input& base = in.base;
  std::vector<cell_ptr> pieces = default_pieces(base);
  check_decomposition(base, pieces);
  const int n = base.n, m = base.m, k = base.T->ambient(), l = n - k;
  const auto idx = graded_lex(n, m);
  extension_result res;

  auto active = [&](const point& y) {
    for (const auto& D : pieces)
      if (in_step1_region(D, y, k, base.C)) return true;
    return false;
  };

  // isolated obstacles inside the Step-1 region: split T at their base points
  std::vector<double> cuts;
  for (const auto& y : in.points)
    if (active(y)) {
      if (k >= 2)
        throw precondition_error("obstacle point " + fmt(y) +
                                 " lies in the Step-1 region over a base of dimension >= 2; refine the decomposition");
      cuts.push_back(y[0]);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  expr generator = base.generator;
  std::vector<expr> point_parts;
  if (!cuts.empty()) {
    // obstacle set for the split points
    std::vector<point> E = in.points;
    for (const auto& g : in.graphs) {
      double lo, hi;
      clipped_range(*base.T, 4.0, lo, hi);
      const int res_g = 2048;
      for (int i = 0; i <= res_g; ++i) {
        point y(n, 0.0);
        y[0] = lo + (hi - lo) * i / res_g;
        for (int c = 0; c < l; ++c) y[k + c] = eval(g[c], y);
        E.push_back(y);
      }
    }
    for (const auto& s : in.sampled) E.insert(E.end(), s.begin(), s.end());
    for (double a : {base.T->a1(), base.T->a2()})
      if (std::isfinite(a)) {
        point y(n, 0.0);
        y[0] = a;
        E.push_back(y);
      }
    for (double u : cuts) {
      point p(n, 0.0);
      p[0] = u;
      jet J(n, m);
      J.add_point(p, series_derivs(eval_series(generator, p, m), idx));
      extension_result pe = extend_point(J, E, base.bump);
      for (auto& s : pe.log) res.log.push_back("split " + s);
      point_parts.push_back(pe.f);
      generator = generator - pe.f;
      E.push_back(p);
    }
    // cut the pieces at the split points
    std::vector<double> ends;
    for (const auto& D : pieces) {
      ends.push_back(D->a1());
      ends.push_back(D->a2());
    }
    ends.insert(ends.end(), cuts.begin(), cuts.end());
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    std::vector<cell_ptr> split;
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
      double mid = 0.5 * (ends[i] + ends[i + 1]);
      if (std::isinf(ends[i])) mid = ends[i + 1] - 1.0;
      if (std::isinf(ends[i + 1])) mid = ends[i] + 1.0;
      bool covered = false;
      for (const auto& D : pieces)
        if (D->contains({mid})) covered = true;
      if (covered) split.push_back(lambda_cell::interval(ends[i], ends[i + 1], base.T->constant()));
    }
    pieces = split;
    res.log.push_back("split T at " + std::to_string(cuts.size()) + " obstacle base point(s) into " +
                      std::to_string(pieces.size()) + " piece(s)");
  }

  // graph obstacles: r(u) = |psi(u)|, case split on sampled gradients
  std::vector<expr> factors;
  const std::vector<point> useeds = sample_cell(*base.T, in.gradient_samples);
  for (std::size_t gi = 0; gi < in.graphs.size(); ++gi) {
    const auto& g = in.graphs[gi];
    if (static_cast<int>(g.size()) != l) throw input_error("graph obstacle needs l components");
    std::vector<expr> sq;
    for (const auto& c : g) sq.push_back(c * c);
    const expr r = sqrt_of(sum(sq));
    int small = 0, large = 0;
    bool case2_ok = true;
    double worst_gap = 0.0;
    for (const auto& u : useeds) {
      const point y = pad(u, n);
      bool inside = false;
      for (const auto& D : pieces)
        if (D->contains(y)) inside = true;
      if (!inside) continue;
      const tps s = eval_series(r, y, 1);
      if (!(s.value() > 0.0)) throw domain_error("r vanishes at interior sample " + fmt(u) + ": obstacle touches S");
      double gmax = 0.0;
      for (int j = 0; j < k; ++j) gmax = std::max(gmax, std::abs(s.derivative(unit_index(n, j))));
      (gmax <= 1.0 ? small : large)++;
      double dist = inf;
      for (const auto& D : pieces)
        if (D->contains(y)) dist = std::min(dist, associated_functions(*D).min_at(y, 1));
      if (s.value() < dist) {
        case2_ok = false;
        worst_gap = std::max(worst_gap, dist - s.value());
      }
    }
    const std::string tag = "graph obstacle " + std::to_string(gi) + ": ";
    bool use_cutoff = true;
    if (large == 0 || small > 0) {
      res.log.push_back(tag + "case i (" + std::to_string(small) + " samples with |grad r| <= 1, " +
                        std::to_string(large) + " above)");
    } else if (case2_ok) {
      res.log.push_back(tag + "case ii, r >= d(u, boundary) at all samples, Step-1 output kept");
      use_cutoff = false;
    } else {
      res.log.push_back(tag + "case ii but r < d(u, boundary) by up to " + fmt(worst_gap) +
                        "; falling back to the r cutoff");
    }
    if (use_cutoff)
      for (int i = 0; i < l; ++i)
        factors.push_back(bump_xi(base.bump, quotient(std::sqrt(static_cast<double>(l)) * coordinate(k + i), r)));
  }

  flat_cell_input b2 = base;
  b2.pieces = pieces;
  const expr step = step1_expr(b2, pieces, generator, factors);
  std::vector<expr> parts = point_parts;
  parts.push_back(step);
  res.f = sum(parts);
  {
    std::ostringstream os;
    os << "step 1/2: T = " << base.T->describe() << ", " << pieces.size() << " piece(s), " << in.points.size()
       << " obstacle point(s), " << in.graphs.size() << " graph obstacle(s), " << in.sampled.size()
       << " sampled obstacle set(s)";
    res.log.push_back(os.str());
  }

  // every obstacle sample must see a zero jet
  auto check_zero = [&](const point& y, const std::string& what) {
    const std::vector<double> v = series_derivs(eval_series(step, y, m), idx);
    if (!all_zero(v))
      throw precondition_error(what + " " + fmt(y) +
                               " lies where the Step-1 cutoff is nonzero; supply it as a graph over the stratum base");
  };
  for (const auto& s : in.sampled)
    for (const auto& y : s) check_zero(y, "obstacle sample");
  for (const auto& y : in.points) check_zero(y, "obstacle point");
  return res;
}

extension_result extend_graph(const stratum& S, const expr& residual, const std::vector<stratum>& obstacles, int n,
                              int m, const bump_spec& bump) {
  if (S.is_point) throw input_error("extend_graph needs a cell stratum");
  const cell_ptr& cell = S.cell;
  const bool is_graph = cell->type() == lambda_cell::kind::graph;
  const cell_ptr T = is_graph ? cell->base() : cell;
  const int k = T->ambient(), l = n - k;
  if (l <= 0) throw input_error("extend_graph needs a stratum of dimension below n");
  if (cell->ambient() > n) throw input_error("stratum does not fit in R^" + std::to_string(n));

  std::vector<expr> phi(l, constant(0.0));
  bool flat_phi = true;
  if (is_graph)
    for (std::size_t c = 0; c < cell->map().size(); ++c) {
      phi[c] = poly(cell->map()[c]);
      if (!cell->map()[c].is_zero()) flat_phi = false;
    }

  extension_result res;
  res.log.push_back("stratum " + S.describe() + ": k = " + std::to_string(k) + ", l = " + std::to_string(l));

  // separation of S from the wall over the frontier of T, relative to the frontier of S
  {
    const auto X = S.sample(n);
    const auto Z = S.sample_frontier(n);
    if (!Z.empty()) {
      double C = inf;
      for (const auto& x : X) {
        const point y = to_local(S.Q, x);
        const double dy = boundary_distance(*T, y);
        double dz = inf;
        for (const auto& z : Z) dz = std::min(dz, distance(x, z));
        C = std::min(C, dz > 0.0 ? dy / dz : inf);
      }
      res.log.push_back("separation constant " + fmt(C));
      if (!(C > 0.0)) throw precondition_error("stratum " + S.describe() + " is not separated from its frontier");
    }
  }
  if (is_graph) {
    cell_function cf{cell->map(), cell->constant(), m + 1};
    const auto cert = check_lambda_regular(cf, *T, m + 1, sample_cell(*T, S.samples));
    res.log.push_back(std::string("graph map regularity ") + (cert.pass ? "certified" : "NOT certified") +
                      ", worst margin " + fmt(cert.worst_margin));
  }

  // pull back: R~(u, w) = R_local(u, w + phi(u))
  const expr R_local = pull_to_local(residual, S.Q, n);
  std::vector<expr> plus, minus;
  for (int i = 0; i < k; ++i) {
    plus.push_back(coordinate(i));
    minus.push_back(coordinate(i));
  }
  for (int c = 0; c < l; ++c) {
    plus.push_back(coordinate(k + c) + phi[c]);
    minus.push_back(coordinate(k + c) - phi[c]);
  }
  const expr R_flat = flat_phi ? R_local : compose(R_local, plus);

  auto flatten = [&](const point& x) {
    point y = to_local(S.Q, x);
    if (!flat_phi)
      for (int c = 0; c < l; ++c) y[k + c] -= eval(phi[c], y);
    return y;
  };
  auto on_frontier = [&](const point& y, bool& inside) {
    double w = 0.0;
    for (int c = 0; c < l; ++c) w = std::max(w, std::abs(y[k + c]));
    inside = false;
    if (w > 1e-12 * (1.0 + norm(y))) return false;
    if (T->contains(y)) {
      inside = true;
      return false;
    }
    return true;
  };

  obstacle_input oi;
  oi.base.n = n;
  oi.base.m = m;
  oi.base.T = T;
  oi.base.generator = R_flat;
  oi.base.g = constant(0.0);
  oi.base.bump = bump;
  int skipped = 0;
  for (const auto& O : obstacles) {
    if (O.is_point) {
      const point y = flatten(O.x);
      bool inside;
      if (on_frontier(y, inside)) {
        ++skipped;
        continue;
      }
      if (inside) throw input_error("point " + fmt(O.x) + " lies on stratum " + S.describe());
      oi.points.push_back(y);
      continue;
    }
    const bool same_frame = O.Q == S.Q;
    if (same_frame && O.cell->type() == lambda_cell::kind::graph && O.cell->base()->describe() == T->describe()) {
      std::vector<expr> psi(l, constant(0.0));
      for (std::size_t c = 0; c < O.cell->map().size() && static_cast<int>(c) < l; ++c) psi[c] = poly(O.cell->map()[c]);
      for (int c = 0; c < l; ++c) psi[c] = psi[c] - phi[c];
      oi.graphs.push_back(psi);
      continue;
    }
    std::vector<point> pts;
    auto smp = O.sample(n);
    auto fr = O.sample_frontier(n);
    smp.insert(smp.end(), fr.begin(), fr.end());
    for (const auto& x : smp) {
      const point y = flatten(x);
      bool inside;
      if (on_frontier(y, inside)) continue;
      if (inside) throw input_error("stratum " + O.describe() + " meets stratum " + S.describe());
      pts.push_back(y);
    }
    if (!pts.empty()) oi.sampled.push_back(pts);
  }
  if (skipped) res.log.push_back(std::to_string(skipped) + " frontier point(s) of S skipped as obstacles");

  extension_result inner = extend_with_obstacle(oi);
  res.log.insert(res.log.end(), inner.log.begin(), inner.log.end());
  const expr f_local = flat_phi ? inner.f : compose(inner.f, minus);
  res.f = push_to_global(f_local, S.Q, n);
  return res;
}

extension_result extend_jet(const problem& P, const verify_options& vopt) {
  if (P.n < 1 || P.m < 0) throw input_error("problem needs n >= 1 and m >= 0");
  if (P.p < P.m + 1) throw input_error("smoothness target p must be at least m + 1");
  if (P.unstratified > 0)
    throw input_error("stratification required: the set has pieces of positive dimension without strata");
  const auto idx = graded_lex(P.n, P.m);
  for (const auto* list : {&P.strata, &P.extras})
    for (const auto& S : *list) {
      if (S.is_point && static_cast<int>(S.x.size()) != P.n) throw input_error("point " + fmt(S.x) + " is not in R^n");
      if (S.values && S.values->size() != idx.size()) throw input_error("point jet has the wrong number of fields");
      if (!S.is_point && S.cell->ambient() > P.n) throw input_error("cell does not fit in R^n");
      if (!S.Q.empty()) {
        if (static_cast<int>(S.Q.size()) != P.n) throw input_error("frame must be n x n");
        for (std::size_t i = 0; i < S.Q.size(); ++i)
          for (std::size_t j = 0; j < S.Q.size(); ++j) {
            double d = 0.0;
            for (int t = 0; t < P.n; ++t) d += S.Q[i][t] * S.Q[j][t];
            if (std::abs(d - (i == j ? 1.0 : 0.0)) > 1e-12) throw input_error("frame is not orthogonal");
          }
      }
    }

  bump_spec bump = P.bump;
  if (bump.p < P.p) bump.p = P.p;

  std::vector<std::size_t> order(P.strata.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return P.strata[a].dim() < P.strata[b].dim(); });

  extension_result res;
  res.log.push_back("problem " + P.name + ": n = " + std::to_string(P.n) + ", m = " + std::to_string(P.m) +
                    ", p = " + std::to_string(P.p) + ", plateau " + fmt(bump.plateau) + ", modulus " +
                    P.omega.describe());
  expr total = constant(0.0);
  std::vector<stratum> done = P.extras;
  std::vector<point> flat_pts;
  for (const auto& S : P.extras) {
    auto a = S.sample(P.n), b = S.sample_frontier(P.n);
    flat_pts.insert(flat_pts.end(), a.begin(), a.end());
    flat_pts.insert(flat_pts.end(), b.begin(), b.end());
  }

  for (std::size_t oi : order) {
    const stratum& S = P.strata[oi];
    const int k = S.dim();
    expr f;
    if (k == 0) {
      std::vector<double> v(idx.size(), 0.0);
      if (S.generator)
        v = series_derivs(eval_series(*S.generator, S.x, P.m), idx);
      else if (S.values)
        v = *S.values;
      const std::vector<double> have = series_derivs(eval_series(total, S.x, P.m), idx);
      for (std::size_t t = 0; t < v.size(); ++t) v[t] -= have[t];
      jet J(P.n, P.m);
      J.add_point(S.x, v);
      std::vector<point> E = flat_pts;
      for (const auto& D : done)
        if (D.is_point) E.push_back(D.x);
      extension_result pe = extend_point(J, E, bump);
      res.log.insert(res.log.end(), pe.log.begin(), pe.log.end());
      f = pe.f;
    } else {
      const expr gen = S.generator ? *S.generator : constant(0.0);
      const expr R = gen - total;
      if (k == P.n) {
        f = gate(std::make_shared<framed_region>(S.cell, S.Q), R);
        res.log.push_back("stratum " + S.describe() + ": open in R^n, zero extension of the residual");
      } else {
        extension_result ge = extend_graph(S, R, done, P.n, P.m, bump);
        res.log.insert(res.log.end(), ge.log.begin(), ge.log.end());
        f = ge.f;
      }
    }
    total = total + f;
    done.push_back(S);
  }

  res.f = total;
  res.F = problem_jet(P);
  verify_options o = vopt;
  const auto seams = problem_seams(P);
  o.seam_points.insert(o.seam_points.end(), seams.begin(), seams.end());
  res.report = verify_extension(total, res.F, P.omega, o);
  return res;
}

cm_result cm_extend(const problem& P, const verify_options& vopt) {
  cm_result out;
  const jet F = problem_jet(P);
  out.omega = modulus_for_cm(F);
  const sigma_profile sg = sigma_from_jet(F);
  for (const auto& [t, v] : sg.breakpoints) out.sigma_max = std::max(out.sigma_max, v);
  out.omega_at_1 = out.omega(1.0);
  problem Q = P;
  Q.omega = out.omega;
  out.ext = extend_jet(Q, vopt);
  out.ext.log.push_back("constructed modulus " + out.omega.describe() + ", omega(1) = " + fmt(out.omega_at_1) +
                        ", max sigma = " + fmt(out.sigma_max));
  return out;
}

std::string family_report::summary() const {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& s = members[i];
    os << "member " << i << " " << s.name << ": ";
    if (!s.ok)
      os << "FAILED " << s.error << "\n";
    else
      os << "norm " << s.norm << " restriction " << s.restriction_error << " omega(1) " << s.omega_at_1 << "\n";
  }
  os << "sup_norm " << sup_norm << "\nmin_norm " << min_norm << "\nratio " << ratio << "\nworst_member " << worst
     << "\nuniform_omega_C " << uniform_omega_C << "\nfailures " << failures.size() << "\n";
  return os.str();
}

family_report extend_family(const std::vector<problem>& members, family_mode mode, const verify_options& vopt) {
  family_report rep;
  rep.min_norm = inf;
  for (std::size_t i = 0; i < members.size(); ++i) {
    family_member_stat st;
    st.name = members[i].name;
    try {
      if (mode == family_mode::per_member_omega) {
        const cm_result r = cm_extend(members[i], vopt);
        st.norm = r.ext.report.norm;
        st.restriction_error = r.ext.report.restriction_max_error;
        st.omega_at_1 = r.omega_at_1;
        rep.uniform_omega_C = std::max({rep.uniform_omega_C, r.omega_at_1, 1.0 / r.omega_at_1});
      } else {
        const extension_result r = extend_jet(members[i], vopt);
        st.norm = r.report.norm;
        st.restriction_error = r.report.restriction_max_error;
        st.omega_at_1 = members[i].omega(1.0);
      }
      st.ok = std::isfinite(st.norm);
      if (!st.ok) st.error = "non-finite norm estimate";
    } catch (const std::exception& e) {
      st.ok = false;
      st.error = e.what();
    }
    if (!st.ok) {
      rep.failures.push_back(st.name + ": " + st.error);
    } else {
      if (rep.worst < 0 || st.norm > rep.sup_norm) {
        rep.sup_norm = st.norm;
        rep.worst = static_cast<int>(i);
      }
      if (st.norm > 0.0) rep.min_norm = std::min(rep.min_norm, st.norm);
    }
    rep.members.push_back(st);
  }
  if (!std::isfinite(rep.min_norm)) rep.min_norm = 0.0;
  rep.ratio = rep.min_norm > 0.0 ? rep.sup_norm / rep.min_norm : 0.0;
  return rep;
}

}  // namespace wjet
