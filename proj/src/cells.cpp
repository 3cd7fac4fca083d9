#include "wjet/cells.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "wjet/error.hpp"
#include "wjet/geometry.hpp"

namespace wjet {

std::shared_ptr<const lambda_cell> lambda_cell::interval(double a1, double a2, double C) {
  if (!(a1 < a2)) throw input_error("interval cell needs a1 < a2");
  auto c = std::make_shared<lambda_cell>();
  c->kind_ = kind::interval;
  c->a1_ = a1;
  c->a2_ = a2;
  c->C_ = C;
  return c;
}

std::shared_ptr<const lambda_cell> lambda_cell::band(std::optional<polynomial> lo, std::optional<polynomial> hi,
                                                     std::shared_ptr<const lambda_cell> base, double C) {
  if (!base || !base->is_open()) throw input_error("band base must be an open cell");
  for (const auto* f : {&lo, &hi})
    if (*f && (*f)->nvars() > base->ambient()) throw input_error("band boundary uses too many variables");
  auto c = std::make_shared<lambda_cell>();
  c->kind_ = kind::band;
  c->lo_ = std::move(lo);
  c->hi_ = std::move(hi);
  c->base_ = std::move(base);
  c->C_ = C;
  for (const auto& x : sample_cell(*c->base_, 8))
    if (!(c->lower(x) < c->upper(x))) throw input_error("band boundaries must satisfy lo < hi on the base");
  return c;
}

std::shared_ptr<const lambda_cell> lambda_cell::graph(std::vector<polynomial> map,
                                                      std::shared_ptr<const lambda_cell> base, double C) {
  if (!base || !base->is_open()) throw input_error("graph base must be an open cell");
  if (map.empty()) throw input_error("graph map needs at least one component");
  for (const auto& f : map)
    if (f.nvars() > base->ambient()) throw input_error("graph map uses too many variables");
  auto c = std::make_shared<lambda_cell>();
  c->kind_ = kind::graph;
  c->map_ = std::move(map);
  c->base_ = std::move(base);
  c->C_ = C;
  return c;
}

int lambda_cell::dim() const {
  switch (kind_) {
    case kind::interval:
      return 1;
    case kind::band:
      return base_->dim() + 1;
    case kind::graph:
      return base_->dim();
  }
  return 0;
}

int lambda_cell::ambient() const {
  switch (kind_) {
    case kind::interval:
      return 1;
    case kind::band:
      return base_->ambient() + 1;
    case kind::graph:
      return base_->ambient() + static_cast<int>(map_.size());
  }
  return 0;
}

double lambda_cell::lower(const point& x) const { return lo_ ? lo_->eval(x) : -inf; }
double lambda_cell::upper(const point& x) const { return hi_ ? hi_->eval(x) : inf; }

bool lambda_cell::contains(const point& x, double graph_tol) const {
  if (static_cast<int>(x.size()) < ambient()) return false;
  switch (kind_) {
    case kind::interval:
      return x[0] > a1_ && x[0] < a2_;
    case kind::band: {
      if (!base_->contains(x)) return false;
      const double t = x[base_->ambient()];
      return t > lower(x) && t < upper(x);
    }
    case kind::graph: {
      if (!base_->contains(x)) return false;
      const int k = base_->ambient();
      for (std::size_t j = 0; j < map_.size(); ++j) {
        const double v = map_[j].eval(x);
        if (std::abs(x[k + j] - v) > graph_tol * (1.0 + std::abs(v))) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

std::string poly_text(const polynomial& p) {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& [a, c] : p.terms()) {
    os << (first ? "" : " + ") << c << "*" << index_key(a);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

std::string lambda_cell::describe() const {
  std::ostringstream os;
  os.precision(12);
  switch (kind_) {
    case kind::interval:
      os << "Interval(" << a1_ << ", " << a2_ << ")";
      break;
    case kind::band:
      os << "Band(" << (lo_ ? poly_text(*lo_) : "-inf") << ", " << (hi_ ? poly_text(*hi_) : "+inf") << ", "
         << base_->describe() << ")";
      break;
    case kind::graph:
      os << "Graph([";
      for (std::size_t j = 0; j < map_.size(); ++j) os << (j ? "; " : "") << poly_text(map_[j]);
      os << "], " << base_->describe() << ")";
      break;
  }
  return os.str();
}

std::vector<point> sample_cell(const lambda_cell& c, int res, double window) {
  if (res < 1) throw input_error("sample resolution must be positive");
  std::vector<point> out;
  switch (c.type()) {
    case lambda_cell::kind::interval: {
      double lo, hi;
      clipped_range(c, window, lo, hi);
      for (int i = 0; i < res; ++i) out.push_back({lo + (hi - lo) * (i + 0.5) / res});
      break;
    }
    case lambda_cell::kind::band: {
      for (const auto& b : sample_cell(*c.base(), res, window)) {
        double lo = c.lower(b), hi = c.upper(b);
        if (std::isinf(lo) && std::isinf(hi)) {
          lo = -window;
          hi = window;
        } else if (std::isinf(lo)) {
          lo = hi - window;
        } else if (std::isinf(hi)) {
          hi = lo + window;
        }
        for (int j = 0; j < res; ++j) {
          point x = b;
          x.push_back(lo + (hi - lo) * (j + 0.5) / res);
          out.push_back(x);
        }
      }
      break;
    }
    case lambda_cell::kind::graph: {
      for (const auto& b : sample_cell(*c.base(), res, window)) {
        point x = b;
        for (const auto& f : c.map()) x.push_back(f.eval(b));
        out.push_back(x);
      }
      break;
    }
  }
  return out;
}

std::vector<point> sample_frontier(const lambda_cell& c, int res, double window) {
  const lambda_cell& open = c.type() == lambda_cell::kind::graph ? *c.base() : c;
  const simplex_mesh bm = boundary_mesh(open, res, window);
  std::vector<point> out;
  for (const auto& v : bm.verts) {
    point x = v;
    if (c.type() == lambda_cell::kind::graph)
      for (const auto& f : c.map()) x.push_back(f.eval(v));
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

associated_family associated_functions(const lambda_cell& cell) {
  associated_family fam;
  fam.rho.push_back(constant(1.0));
  switch (cell.type()) {
    case lambda_cell::kind::graph:
      throw input_error("associated functions are defined for open cells only");
    case lambda_cell::kind::interval:
      if (std::isfinite(cell.a1()))
        fam.rho.push_back(coordinate(0) - constant(cell.a1()));
      else
        fam.rho.push_back(std::nullopt);
      if (std::isfinite(cell.a2()))
        fam.rho.push_back(constant(cell.a2()) - coordinate(0));
      else
        fam.rho.push_back(std::nullopt);
      return fam;
    case lambda_cell::kind::band: {
      const associated_family b = associated_functions(*cell.base());
      for (std::size_t j = 1; j < b.rho.size(); ++j) fam.rho.push_back(b.rho[j]);
      const int last = cell.ambient() - 1;
      if (cell.lo())
        fam.rho.push_back(coordinate(last) - poly(*cell.lo()));
      else
        fam.rho.push_back(std::nullopt);
      if (cell.hi())
        fam.rho.push_back(poly(*cell.hi()) - coordinate(last));
      else
        fam.rho.push_back(std::nullopt);
      return fam;
    }
  }
  return fam;
}

double associated_family::min_at(const point& x, int from) const {
  double best = inf;
  for (std::size_t j = from; j < rho.size(); ++j)
    if (rho[j]) best = std::min(best, eval(*rho[j], x));
  return best;
}

regularity_certificate check_lambda_regular(const cell_function& f, const lambda_cell& cell, int p,
                                            const std::vector<point>& samples) {
  if (!cell.is_open()) throw input_error("regularity is checked on open cells");
  const associated_family fam = associated_functions(cell);
  regularity_certificate c;
  const int k = cell.ambient();
  for (const auto& u : samples) {
    if (!cell.contains(u)) throw input_error("regularity sample lies outside the cell");
    const double dist = fam.min_at(u, 1);
    for (const auto& comp : f.comps)
      for (const auto& g : graded_lex(k, p)) {
        const int o = order_of(g);
        if (o == 0) continue;
        const double v = std::abs(comp.deriv(g, u));
        const double rhs = f.C * std::pow(dist, 1.0 - o);
        double ratio = 0.0;
        if (rhs > 0.0)
          ratio = v / rhs;
        else if (v > 0.0)
          ratio = inf;
        if (ratio > c.worst_margin) {
          c.worst_margin = ratio;
          c.worst_sample = u;
          c.worst_index = g;
        }
      }
  }
  c.pass = c.worst_margin <= 1.0 + 1e-12;
  return c;
}

double boundary_distance(const lambda_cell& cell, const point& x, int res, double window) {
  const simplex_mesh bm = boundary_mesh(cell, res, window);
  return bm.distance(point(x.begin(), x.begin() + cell.ambient()));
}

rho_distance_certificate check_rho_distance(const lambda_cell& cell, const std::vector<point>& samples, int res) {
  if (!cell.is_open()) throw input_error("distance certificate needs an open cell");
  std::vector<point> inside;
  for (const auto& x : samples)
    if (cell.contains(x)) inside.push_back(x);
  if (inside.empty()) throw input_error("degenerate cell: no sample in the interior");
  double window = 4.0;
  for (const auto& x : inside)
    for (double v : x) window = std::max(window, 3.0 * (std::abs(v) + 1.0));
  if (cell.ambient() == 3) res = std::min(res, 64);
  const simplex_mesh bm = boundary_mesh(cell, res, window);
  const associated_family fam = associated_functions(cell);
  rho_distance_certificate c;
  c.resolution = res;
  c.max_violation = -inf;
  // straight frontier pieces are exact; curved ones carry chord error
  c.tolerance = 1e-12;
  for (const auto& x : inside) {
    const double d = bm.distance(x);
    const double r1 = fam.min_at(x, 1), r0 = fam.min_at(x, 0);
    c.max_violation = std::max(c.max_violation, d - r1);
    if (d > 0.0) {
      c.C_K = std::max(c.C_K, r1 / d);
      c.C_K0 = std::max(c.C_K0, r0 / std::min(1.0, d));
    }
  }
  c.pass = c.max_violation <= c.tolerance;
  return c;
}

double inv_rho_derivative(const expr& rho, const multi_index& g, const point& x) {
  return deriv(quotient(constant(1.0), rho), g, x);
}

inv_rho_certificate inv_rho_bounds(const lambda_cell& cell, int j, const std::vector<point>& samples, int p) {
  const associated_family fam = associated_functions(cell);
  if (j < 0 || j >= static_cast<int>(fam.rho.size())) throw input_error("rho index out of range");
  if (!fam.rho[j]) throw input_error("rho_j is +inf");
  const expr inv = quotient(constant(1.0), *fam.rho[j]);
  inv_rho_certificate c;
  const int k = cell.ambient();
  for (const auto& x : samples) {
    if (!(eval(*fam.rho[j], x) > 0.0)) throw domain_error("rho_j is not positive at a sample");
    const double d = std::min(1.0, fam.min_at(x, 0));
    const tps s = eval_series(inv, x, p);
    for (const auto& g : graded_lex(k, p)) {
      const int o = order_of(g);
      if (o == 0) continue;
      const double v = s.derivative(g);
      c.values.push_back(v);
      c.C = std::max(c.C, std::abs(v) * std::pow(d, o + 1));
    }
  }
  c.pass = std::isfinite(c.C);
  return c;
}

quasiconvexity_estimate quasiconvexity_constant(const std::vector<point>& samples, double radius) {
  const std::size_t N = samples.size();
  if (N < 2) throw input_error("quasiconvexity needs at least two samples");
  if (!(radius > 0.0)) throw input_error("adjacency radius must be positive");
  std::vector<std::vector<std::pair<int, double>>> adj(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      const double d = distance(samples[i], samples[j]);
      if (d <= radius) {
        adj[i].emplace_back(static_cast<int>(j), d);
        adj[j].emplace_back(static_cast<int>(i), d);
      }
    }
  quasiconvexity_estimate est;
  est.radius = radius;
  est.samples = static_cast<int>(N);
  std::vector<double> dist(N);
  for (std::size_t s = 0; s < N; ++s) {
    std::fill(dist.begin(), dist.end(), inf);
    dist[s] = 0.0;
    using item = std::pair<double, int>;
    std::priority_queue<item, std::vector<item>, std::greater<item>> pq;
    pq.push({0.0, static_cast<int>(s)});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (auto [v, w] : adj[u])
        if (d + w < dist[v]) {
          dist[v] = d + w;
          pq.push({dist[v], v});
        }
    }
    for (std::size_t t = 0; t < N; ++t) {
      if (t == s) continue;
      if (std::isinf(dist[t])) {
        // name the components
        std::vector<int> comp(N, -1);
        int nc = 0;
        for (std::size_t a = 0; a < N; ++a) {
          if (comp[a] >= 0) continue;
          std::vector<int> stack{static_cast<int>(a)};
          comp[a] = nc;
          while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, w] : adj[u])
              if (comp[v] < 0) {
                comp[v] = nc;
                stack.push_back(v);
              }
          }
          ++nc;
        }
        std::ostringstream os;
        os << "proximity graph is disconnected at radius " << radius << ": " << nc << " components;";
        for (int c = 0; c < nc; ++c) {
          int first = -1, size = 0;
          for (std::size_t a = 0; a < N; ++a)
            if (comp[a] == c) {
              if (first < 0) first = static_cast<int>(a);
              ++size;
            }
          os << " component " << c << " (" << size << " samples, first sample " << first << ")";
        }
        throw precondition_error(os.str());
      }
      est.constant = std::max(est.constant, dist[t] / distance(samples[s], samples[t]));
    }
  }
  return est;
}

namespace {

double set_distance(const point& x, const std::vector<point>& S) {
  double d = inf;
  for (const auto& y : S) d = std::min(d, distance(x, y));
  return d;
}

}  // namespace

separation_certificate check_separation(const std::vector<point>& X, const std::vector<point>& Y,
                                        const std::vector<point>& Z) {
  separation_certificate c;
  if (Z.empty()) {
    c.vacuous = true;
    return c;
  }
  for (const auto& x : X) {
    const double dy = set_distance(x, Y), dz = set_distance(x, Z);
    double r;
    if (dy == 0.0)
      r = 0.0;
    else if (dz == 0.0)
      r = inf;
    else
      r = dy / dz;
    c.C = std::min(c.C, r);
  }
  c.pass = c.C > 0.0;
  return c;
}

}  // namespace wjet
