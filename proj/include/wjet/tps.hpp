#pragma once

// Truncated multivariate power series. Coefficient at multi-index a holds
// the Taylor coefficient d^a f(x0) / a!, stored in graded-lex order.

#include <vector>

#include "wjet/multi_index.hpp"

namespace wjet {

struct tps_shape {
  int n = 0;
  int q = 0;
  std::vector<multi_index> idx;
  std::vector<int> deg;
  // (i, j, k): monomial i times monomial j is monomial k, deg_i + deg_j <= q
  std::vector<int> mul_i, mul_j, mul_k;
  int size() const { return static_cast<int>(idx.size()); }
};

// Shapes are cached for the life of the process; the reference stays valid.
const tps_shape& get_shape(int n, int q);

class tps {
 public:
  tps() = default;
  explicit tps(const tps_shape& s) : s_(&s), c_(s.size(), 0.0) {}

  static tps constant(int n, int q, double v);
  static tps variable(int n, int q, int i, double v);

  const tps_shape& shape() const { return *s_; }
  int nvars() const { return s_->n; }
  int order() const { return s_->q; }
  double value() const { return c_[0]; }
  double coef(int k) const { return c_[k]; }
  double& coef(int k) { return c_[k]; }
  const std::vector<double>& coefs() const { return c_; }
  bool is_zero() const;

  // d^a f(x0)
  double derivative(const multi_index& a) const;

  tps& operator+=(const tps& o);
  tps& operator-=(const tps& o);
  tps& operator*=(double v);

 private:
  const tps_shape* s_ = nullptr;
  std::vector<double> c_;
};

tps operator+(tps a, const tps& b);
tps operator-(tps a, const tps& b);
tps operator-(tps a);
tps operator*(tps a, double v);
tps operator*(const tps& a, const tps& b);

tps reciprocal(const tps& a);
// g(a(x)) given g^(k)(a0), k = 0..order.
tps compose_univariate(const tps& a, const std::vector<double>& derivs);
// P(h_1, ..., h_d) where P is a d-variable series and the h_i have zero
// constant term; the result has the shape of the h_i.
tps compose(const tps& P, const std::vector<tps>& h);
tps differentiate(const tps& a, const multi_index& b);
tps with_order(const tps& a, int q);

}  // namespace wjet
