#include "wjet/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "wjet/cells.hpp"
#include "wjet/error.hpp"

namespace wjet {

namespace {

double dot(const point& a, const point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

point sub(const point& a, const point& b) {
  point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

point lerp(const point& a, const point& b, double t) {
  point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * (b[i] - a[i]);
  return r;
}

// Band bounds at x', clipped to a window around the finite one.
void clipped_bounds(const lambda_cell& c, const point& x, double window, double& lo, double& hi) {
  lo = c.lower(x);
  hi = c.upper(x);
  if (std::isinf(lo) && std::isinf(hi)) {
    lo = -window;
    hi = window;
  } else if (std::isinf(lo)) {
    lo = hi - window;
  } else if (std::isinf(hi)) {
    hi = lo + window;
  }
}

}  // namespace

void clipped_range(const lambda_cell& c, double window, double& lo, double& hi) {
  lo = c.a1();
  hi = c.a2();
  if (std::isinf(lo) && std::isinf(hi)) {
    lo = -window;
    hi = window;
  } else if (std::isinf(lo)) {
    lo = hi - window;
  } else if (std::isinf(hi)) {
    hi = lo + window;
  }
}

double point_segment_distance(const point& x, const point& a, const point& b) {
  const point ab = sub(b, a);
  const double L = dot(ab, ab);
  double t = L > 0.0 ? dot(sub(x, a), ab) / L : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(x, lerp(a, b, t));
}

double point_triangle_distance(const point& p, const point& a, const point& b, const point& c) {
  // closest point on triangle by Voronoi regions; valid in any dimension
  const point ab = sub(b, a), ac = sub(c, a), ap = sub(p, a);
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return distance(p, a);
  const point bp = sub(p, b);
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return distance(p, b);
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return distance(p, lerp(a, b, d1 / (d1 - d3)));
  const point cp = sub(p, c);
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return distance(p, c);
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return distance(p, lerp(a, c, d2 / (d2 - d6)));
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return distance(p, lerp(b, c, (d4 - d3) / ((d4 - d3) + (d5 - d6))));
  const double den = 1.0 / (va + vb + vc);
  const double v = vb * den, w = vc * den;
  point q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = a[i] + ab[i] * v + ac[i] * w;
  return distance(p, q);
}

double simplex_mesh::distance(const point& x) const {
  double best = inf;
  for (const auto& s : simplices) {
    double d = inf;
    if (s.size() == 1)
      d = wjet::distance(x, verts[s[0]]);
    else if (s.size() == 2)
      d = point_segment_distance(x, verts[s[0]], verts[s[1]]);
    else
      d = point_triangle_distance(x, verts[s[0]], verts[s[1]], verts[s[2]]);
    best = std::min(best, d);
  }
  return best;
}

simplex_mesh closure_grid(const lambda_cell& c, int res, double window) {
  simplex_mesh m;
  if (c.type() == lambda_cell::kind::interval) {
    double lo, hi;
    clipped_range(c, window, lo, hi);
    for (int i = 0; i <= res; ++i) m.verts.push_back({lo + (hi - lo) * i / res});
    for (int i = 0; i < res; ++i) m.simplices.push_back({i, i + 1});
    return m;
  }
  if (c.type() != lambda_cell::kind::band || c.dim() != 2)
    throw input_error("closure grid is implemented for open cells of dimension 1 and 2");
  const simplex_mesh base = closure_grid(*c.base(), res, window);
  for (const auto& b : base.verts) {
    double lo, hi;
    clipped_bounds(c, b, window, lo, hi);
    for (int j = 0; j <= res; ++j) m.verts.push_back({b[0], lo + (hi - lo) * j / res});
  }
  auto id = [&](int i, int j) { return i * (res + 1) + j; };
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      m.simplices.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.simplices.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

simplex_mesh boundary_mesh(const lambda_cell& c, int res, double window) {
  simplex_mesh m;
  if (c.type() == lambda_cell::kind::interval) {
    if (std::isfinite(c.a1())) {
      m.verts.push_back({c.a1()});
      m.simplices.push_back({static_cast<int>(m.verts.size()) - 1});
    }
    if (std::isfinite(c.a2())) {
      m.verts.push_back({c.a2()});
      m.simplices.push_back({static_cast<int>(m.verts.size()) - 1});
    }
    return m;
  }
  if (c.type() != lambda_cell::kind::band) throw input_error("boundary mesh needs an open cell");
  if (c.ambient() > 3) throw input_error("boundary mesh is implemented up to dimension 3");
  const lambda_cell& B = *c.base();
  // graphs of the finite band boundaries over the closed base
  const simplex_mesh G = closure_grid(B, res, window);
  for (const auto* f : {&c.lo(), &c.hi()}) {
    if (!*f) continue;
    const int off = static_cast<int>(m.verts.size());
    for (const auto& b : G.verts) {
      point x = b;
      x.push_back((*f)->eval(b));
      m.verts.push_back(x);
    }
    for (auto s : G.simplices) {
      for (int& v : s) v += off;
      m.simplices.push_back(s);
    }
  }
  // walls over the frontier of the base
  const simplex_mesh W = boundary_mesh(B, res, window);
  auto column = [&](const point& b) {
    double lo, hi;
    clipped_bounds(c, b, window, lo, hi);
    std::vector<int> ids;
    for (int j = 0; j <= res; ++j) {
      point x = b;
      x.push_back(lo + (hi - lo) * j / res);
      m.verts.push_back(x);
      ids.push_back(static_cast<int>(m.verts.size()) - 1);
    }
    return ids;
  };
  for (const auto& s : W.simplices) {
    if (s.size() == 1) {
      const auto ids = column(W.verts[s[0]]);
      for (int j = 0; j < res; ++j) m.simplices.push_back({ids[j], ids[j + 1]});
    } else if (s.size() == 2) {
      const auto a = column(W.verts[s[0]]);
      const auto b = column(W.verts[s[1]]);
      for (int j = 0; j < res; ++j) {
        m.simplices.push_back({a[j], b[j], b[j + 1]});
        m.simplices.push_back({a[j], b[j + 1], a[j + 1]});
      }
    }
  }
  return m;
}

}  // namespace wjet
