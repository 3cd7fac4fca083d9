#include "wjet/tps.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "wjet/error.hpp"

namespace wjet {

const tps_shape& get_shape(int n, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<tps_shape>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, q}];
  if (!slot) {
    auto s = std::make_unique<tps_shape>();
    s->n = n;
    s->q = q;
    s->idx = graded_lex(n, q);
    for (const auto& a : s->idx) s->deg.push_back(order_of(a));
    const int m = s->size();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (s->deg[i] + s->deg[j] > q) continue;
        s->mul_i.push_back(i);
        s->mul_j.push_back(j);
        s->mul_k.push_back(graded_lex_rank(add(s->idx[i], s->idx[j])));
      }
    slot = std::move(s);
  }
  return *slot;
}

tps tps::constant(int n, int q, double v) {
  tps t(get_shape(n, q));
  t.c_[0] = v;
  return t;
}

tps tps::variable(int n, int q, int i, double v) {
  tps t(get_shape(n, q));
  t.c_[0] = v;
  if (q >= 1) t.c_[1 + i] = 1.0;
  return t;
}

bool tps::is_zero() const {
  for (double v : c_)
    if (v != 0.0) return false;
  return true;
}

double tps::derivative(const multi_index& a) const {
  if (order_of(a) > s_->q) throw domain_error("derivative order exceeds series order");
  return factorial(a) * c_[graded_lex_rank(a)];
}

tps& tps::operator+=(const tps& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

tps& tps::operator-=(const tps& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

tps& tps::operator*=(double v) {
  for (double& x : c_) x *= v;
  return *this;
}

tps operator+(tps a, const tps& b) { return a += b; }
tps operator-(tps a, const tps& b) { return a -= b; }
tps operator-(tps a) { return a *= -1.0; }
tps operator*(tps a, double v) { return a *= v; }

tps operator*(const tps& a, const tps& b) {
  const tps_shape& s = a.shape();
  tps r(s);
  const std::size_t m = s.mul_i.size();
  for (std::size_t t = 0; t < m; ++t) {
    const double x = a.coef(s.mul_i[t]);
    if (x == 0.0) continue;
    r.coef(s.mul_k[t]) += x * b.coef(s.mul_j[t]);
  }
  return r;
}

tps reciprocal(const tps& a) {
  const double a0 = a.value();
  if (a0 == 0.0) throw domain_error("reciprocal of a series with zero constant term");
  std::vector<double> d(a.order() + 1);
  // (1/t)^(k) = (-1)^k k! / t^(k+1)
  double p = 1.0 / a0;
  for (int k = 0; k <= a.order(); ++k) {
    d[k] = ((k % 2) ? -1.0 : 1.0) * factorial(k) * p;
    p /= a0;
  }
  return compose_univariate(a, d);
}

tps compose_univariate(const tps& a, const std::vector<double>& derivs) {
  const int q = a.order();
  tps r = tps::constant(a.nvars(), q, derivs[0]);
  bool any = false;
  for (int k = 1; k <= q; ++k)
    if (derivs[k] != 0.0) any = true;
  if (!any) return r;
  tps h = a;
  h.coef(0) = 0.0;
  tps hp = h;
  for (int k = 1; k <= q; ++k) {
    if (derivs[k] != 0.0) r += hp * (derivs[k] / factorial(k));
    if (k < q) hp = hp * h;
  }
  return r;
}

tps compose(const tps& P, const std::vector<tps>& h) {
  const tps_shape& ps = P.shape();
  if (static_cast<int>(h.size()) != ps.n) throw domain_error("compose: arity mismatch");
  const tps_shape& hs = h.empty() ? get_shape(0, 0) : h[0].shape();
  const int q = hs.q;
  const int lim = std::min(ps.q, q);
  tps r(hs);
  r.coef(0) = P.value();
  // powers h^b for |b| <= lim, built in graded-lex order
  std::vector<tps> pw;
  pw.reserve(ps.size());
  for (int k = 0; k < ps.size(); ++k) {
    if (ps.deg[k] > lim) break;
    const multi_index& b = ps.idx[k];
    if (k == 0) {
      pw.push_back(tps::constant(hs.n, q, 1.0));
      continue;
    }
    int i = 0;
    while (b[i] == 0) ++i;
    multi_index prev = b;
    prev[i] -= 1;
    pw.push_back(pw[graded_lex_rank(prev)] * h[i]);
    if (P.coef(k) != 0.0) r += pw.back() * P.coef(k);
  }
  return r;
}

tps differentiate(const tps& a, const multi_index& b) {
  const int db = order_of(b);
  const int q = a.order() - db;
  if (q < 0) throw domain_error("differentiate: order exceeds series order");
  tps r(get_shape(a.nvars(), q));
  const tps_shape& rs = r.shape();
  for (int k = 0; k < rs.size(); ++k) {
    const multi_index ab = add(rs.idx[k], b);
    r.coef(k) = a.coef(graded_lex_rank(ab)) * factorial(ab) / factorial(rs.idx[k]);
  }
  return r;
}

tps with_order(const tps& a, int q) {
  tps r(get_shape(a.nvars(), q));
  const int m = std::min(r.shape().size(), a.shape().size());
  for (int k = 0; k < m; ++k) r.coef(k) = a.coef(k);
  return r;
}

}  // namespace wjet
