#include "wjet/polynomial.hpp"

#include <algorithm>

#include "wjet/error.hpp"

namespace wjet {

polynomial polynomial::constant(int n, double c) {
  polynomial p(n);
  p.add_term(multi_index(n, 0), c);
  return p;
}

polynomial polynomial::coordinate(int n, int i) {
  polynomial p(n);
  p.add_term(unit_index(n, i), 1.0);
  return p;
}

void polynomial::add_term(const multi_index& a, double c) {
  if (static_cast<int>(a.size()) != n_) throw input_error("polynomial term has wrong arity");
  for (auto& t : terms_)
    if (t.first == a) {
      t.second += c;
      return;
    }
  terms_.emplace_back(a, c);
}

int polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_)
    if (t.second != 0.0) d = std::max(d, order_of(t.first));
  return d;
}

bool polynomial::is_zero() const {
  for (const auto& t : terms_)
    if (t.second != 0.0) return false;
  return true;
}

double polynomial::eval(const point& x) const { return deriv(multi_index(n_, 0), x); }

double polynomial::deriv(const multi_index& a, const point& x) const {
  if (static_cast<int>(x.size()) < n_) throw domain_error("polynomial evaluated at a point of lower dimension");
  double s = 0.0;
  for (const auto& [b, c] : terms_) {
    if (!leq(a, b)) continue;
    double v = c;
    for (int i = 0; i < n_; ++i) {
      for (int k = 0; k < a[i]; ++k) v *= (b[i] - k);
      const double h = x[i] - center_[i];
      for (int k = 0; k < b[i] - a[i]; ++k) v *= h;
    }
    s += v;
  }
  return s;
}

tps polynomial::eval_tps(const std::vector<tps>& inputs) const {
  if (static_cast<int>(inputs.size()) < n_) throw domain_error("polynomial evaluated with too few inputs");
  const tps_shape& s = inputs[0].shape();
  tps r(s);
  if (terms_.empty()) return r;
  int maxdeg = 0;
  for (const auto& t : terms_)
    for (int v : t.first) maxdeg = std::max(maxdeg, v);
  // powers[i][k] = (x_i - c_i)^k
  std::vector<std::vector<tps>> powers(n_);
  for (int i = 0; i < n_; ++i) {
    tps h = inputs[i];
    h.coef(0) -= center_[i];
    powers[i].push_back(tps::constant(s.n, s.q, 1.0));
    for (int k = 1; k <= maxdeg; ++k) powers[i].push_back(powers[i].back() * h);
  }
  for (const auto& [b, c] : terms_) {
    if (c == 0.0) continue;
    tps m = tps::constant(s.n, s.q, c);
    for (int i = 0; i < n_; ++i)
      if (b[i] > 0) m = m * powers[i][b[i]];
    r += m;
  }
  return r;
}

}  // namespace wjet
