#include "wjet/jet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "wjet/error.hpp"

namespace wjet {

jet::jet(int n, int m) : n_(n), m_(m), idx_(graded_lex(n, m)), vals_(idx_.size()) {
  if (n < 1 || m < 0) throw input_error("jet needs n >= 1 and m >= 0");
}

void jet::add_point(const point& x, const std::vector<double>& values) {
  if (static_cast<int>(x.size()) != n_) throw input_error("jet point has wrong dimension");
  if (values.size() != idx_.size()) throw input_error("jet point has an incomplete set of fields");
  if (find(x) >= 0) throw input_error("duplicate jet point");
  pts_.push_back(x);
  for (std::size_t k = 0; k < idx_.size(); ++k) vals_[k].push_back(values[k]);
}

double jet::field(const multi_index& a, std::size_t i) const { return vals_[graded_lex_rank(a)][i]; }

std::vector<double> jet::at(std::size_t i) const {
  std::vector<double> v(idx_.size());
  for (std::size_t k = 0; k < idx_.size(); ++k) v[k] = vals_[k][i];
  return v;
}

int jet::find(const point& x, double tol) const {
  for (std::size_t i = 0; i < pts_.size(); ++i) {
    bool same = true;
    for (int d = 0; d < n_ && same; ++d)
      same = std::abs(pts_[i][d] - x[d]) <= tol * (1.0 + std::abs(x[d]));
    if (same) return static_cast<int>(i);
  }
  return -1;
}

bool jet::is_flat(double tol) const {
  for (const auto& f : vals_)
    for (double v : f)
      if (std::abs(v) > tol) return false;
  return true;
}

tps jet::series(std::size_t i) const {
  tps t(get_shape(n_, m_));
  for (std::size_t k = 0; k < idx_.size(); ++k) t.coef(k) = vals_[k][i] / factorial(idx_[k]);
  return t;
}

polynomial taylor(const jet& F, std::size_t i) {
  if (i >= F.size()) throw input_error("taylor: point not in the jet");
  polynomial p(F.dim(), F.points()[i]);
  for (std::size_t k = 0; k < F.indices().size(); ++k) {
    const double v = F.value(k, i);
    if (v != 0.0) p.add_term(F.indices()[k], v / factorial(F.indices()[k]));
  }
  return p;
}

polynomial taylor(const jet& F, const point& a) {
  const int i = F.find(a);
  if (i < 0) throw input_error("taylor: point not in the jet");
  return taylor(F, static_cast<std::size_t>(i));
}

std::vector<double> remainder(const jet& F, std::size_t i, std::size_t j) {
  const auto& idx = F.indices();
  const point& x = F.points()[i];
  const point& y = F.points()[j];
  const int m = F.order();
  std::vector<double> R(idx.size(), 0.0);
  if (i == j) return R;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const multi_index& a = idx[k];
    double t = 0.0;
    for (const auto& b : graded_lex(F.dim(), m - order_of(a)))
      t += F.field(add(a, b), i) * monomial(x, y, b) / factorial(b);
    R[k] = F.value(k, j) - t;
  }
  return R;
}

std::vector<double> remainder(const jet& F, const point& x, const point& y) {
  const int i = F.find(x), j = F.find(y);
  if (i < 0 || j < 0) throw input_error("remainder: point not in the jet");
  return remainder(F, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

std::string whitney_report::summary() const {
  std::ostringstream os;
  os.precision(17);
  os << "sup_norm " << sup_norm << "\nholder_constant " << holder_constant << "\n";
  if (worst_x >= 0) os << "worst_pair " << worst_x << " " << worst_y << " index " << worst_index << "\n";
  return os.str();
}

whitney_report whitney_constant(const jet& F, const modulus& w, const whitney_options& opt) {
  whitney_report rep;
  const std::size_t N = F.size(), K = F.indices().size();
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < N; ++i) rep.sup_norm = std::max(rep.sup_norm, std::abs(F.value(k, i)));
  const int m = F.order();
  struct best {
    double v = 0.0;
    int i = -1, j = -1, k = -1;
  };
  auto work = [&](std::size_t lo, std::size_t hi, best& b) {
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        if (i == j) continue;
        const double d = distance(F.points()[i], F.points()[j]);
        if (opt.radius > 0.0 && d > opt.radius) continue;
        const auto R = remainder(F, i, j);
        for (std::size_t k = 0; k < K; ++k) {
          const double q = std::abs(R[k]) / (w(d) * std::pow(d, m - order_of(F.indices()[k])));
          if (q > b.v) b = {q, static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)};
        }
      }
  };
  const int T = std::max(1, std::min<int>(opt.threads, static_cast<int>(N)));
  std::vector<best> parts(T);
  if (T == 1) {
    work(0, N, parts[0]);
  } else {
    std::vector<std::thread> th;
    for (int t = 0; t < T; ++t) th.emplace_back(work, N * t / T, N * (t + 1) / T, std::ref(parts[t]));
    for (auto& x : th) x.join();
  }
  // partitions are in increasing i, so strict '>' keeps the first maximiser
  best b;
  for (const auto& p : parts)
    if (p.v > b.v) b = p;
  rep.holder_constant = b.v;
  rep.worst_x = b.i;
  rep.worst_y = b.j;
  rep.worst_index = b.k;
  return rep;
}

jet jet_mul(const jet& F, const jet& G) {
  if (F.dim() != G.dim() || F.order() != G.order() || F.size() != G.size())
    throw input_error("jet_mul: mismatched jets");
  jet out(F.dim(), F.order());
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (F.points()[i] != G.points()[i]) throw input_error("jet_mul: mismatched supports");
    const tps p = F.series(i) * G.series(i);
    std::vector<double> v(F.indices().size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = p.coef(k) * factorial(F.indices()[k]);
    out.add_point(F.points()[i], v);
  }
  return out;
}

jet jet_compose(const jet& F, const std::vector<jet>& G, double tol) {
  const int n = F.dim();
  if (static_cast<int>(G.size()) != n) throw input_error("jet_compose: need one inner jet per outer variable");
  const int k = G[0].dim(), m = F.order();
  for (const auto& g : G)
    if (g.dim() != k || g.order() != m || g.size() != G[0].size())
      throw input_error("jet_compose: inner jets must share dimension, order and points");
  jet out(k, m);
  std::ostringstream missing;
  missing.precision(17);
  bool bad = false;
  for (std::size_t i = 0; i < G[0].size(); ++i) {
    point y(n);
    std::vector<tps> h;
    for (int j = 0; j < n; ++j) {
      y[j] = G[j].value(0, i);
      tps s = G[j].series(i);
      s.coef(0) = 0.0;
      h.push_back(s);
    }
    const int at = F.find(y, tol);
    if (at < 0) {
      bad = true;
      missing << " (";
      for (int j = 0; j < n; ++j) missing << (j ? "," : "") << y[j];
      missing << ")";
      continue;
    }
    const tps c = compose(F.series(static_cast<std::size_t>(at)), h);
    std::vector<double> v(out.indices().size());
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = c.coef(t) * factorial(out.indices()[t]);
    out.add_point(G[0].points()[i], v);
  }
  if (bad) throw domain_error("jet_compose: image points not sampled in the outer jet:" + missing.str());
  return out;
}

jet jet_from_function(const expr& f, const std::vector<point>& E, int m) {
  if (E.empty()) throw input_error("jet_from_function: empty point list");
  const int n = static_cast<int>(E[0].size());
  jet out(n, m);
  eval_options strict;
  strict.strict_seams = true;
  for (const auto& x : E) {
    const tps s = eval_series(f, x, m, strict);
    std::vector<double> v(out.indices().size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = s.coef(k) * factorial(out.indices()[k]);
    out.add_point(x, v);
  }
  return out;
}

jet pullback(const jet& F, const std::vector<polynomial>& phi, int k) {
  const int n = F.dim(), m = F.order();
  const int l = n - k;
  if (static_cast<int>(phi.size()) != l) throw input_error("pullback: map has the wrong number of components");
  std::vector<point> N;
  for (const auto& x : F.points()) {
    point y = x;
    for (int j = 0; j < l; ++j) y[k + j] = x[k + j] - phi[j].eval(x);
    N.push_back(y);
  }
  // jets of phi_+(u, w) = (u, w + phi(u)) on N
  std::vector<jet> G;
  for (int c = 0; c < n; ++c) {
    expr g = coordinate(c);
    if (c >= k) g = g + poly(phi[c - k]);
    G.push_back(jet_from_function(g, N, m));
  }
  return jet_compose(F, G, 1e-12);
}

std::pair<jet, whitney_report> zero_extend_flat(const jet& F, const std::vector<point>& extra, const modulus& w) {
  jet out = F;
  const std::vector<double> zero(F.indices().size(), 0.0);
  for (const auto& x : extra) {
    const int at = out.find(x);
    if (at >= 0) {
      for (std::size_t k = 0; k < zero.size(); ++k)
        if (out.value(k, at) != 0.0) throw input_error("zero_extend_flat: extra point carries a nonzero jet");
      continue;
    }
    out.add_point(x, zero);
  }
  whitney_report rep = whitney_constant(out, w);
  return {out, rep};
}

jet concat(const jet& a, const jet& b) {
  if (a.dim() != b.dim() || a.order() != b.order()) throw input_error("concat: mismatched jets");
  jet out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out.add_point(b.points()[i], b.at(i));
  return out;
}

}  // namespace wjet
