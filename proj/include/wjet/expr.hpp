#pragma once

// Expression trees with exact derivatives. Every node evaluates to a
// truncated power series at a point, so all partial derivatives up to the
// requested order come out of one pass through the tree.

#include <climits>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "wjet/multi_index.hpp"
#include "wjet/polynomial.hpp"
#include "wjet/tps.hpp"

namespace wjet {

// A region of R^d used by gated pieces. Points are given in the input
// coordinates of the gate node.
class region {
 public:
  virtual ~region() = default;
  virtual bool contains(const point& x) const = 0;
  virtual std::string describe() const = 0;
  // True when arbitrarily small coordinate perturbations change membership.
  bool on_seam(const point& x) const;
};

class ball_region : public region {
 public:
  ball_region(point center, double radius, bool exterior) : c_(std::move(center)), r_(radius), ext_(exterior) {}
  bool contains(const point& x) const override;
  std::string describe() const override;

 private:
  point c_;
  double r_;
  bool ext_;
};

// Univariate C^p function applied to a sub-expression.
class univariate {
 public:
  virtual ~univariate() = default;
  // g^(k)(t) for k = 0..q
  virtual std::vector<double> derivs(double t, int q) const = 0;
  virtual int smoothness() const = 0;
  virtual std::string describe() const = 0;
};

struct eval_options {
  bool strict_seams = false;  // domain error at region seams when order >= 1
};

struct eval_ctx {
  eval_options opt;
  bool identity_inputs = true;
};

class node {
 public:
  virtual ~node() = default;
  virtual tps eval(const std::vector<tps>& in, const eval_ctx& ctx) const = 0;
  virtual int smoothness() const { return INT_MAX; }
  virtual int arity() const = 0;
  virtual bool is_zero() const { return false; }
  virtual void print(std::ostream& os, int indent) const = 0;
};

class expr {
 public:
  expr();  // zero
  explicit expr(std::shared_ptr<const node> p) : p_(std::move(p)) {}

  const node& get() const { return *p_; }
  bool is_zero() const { return p_->is_zero(); }
  int smoothness() const { return p_->smoothness(); }
  int arity() const { return p_->arity(); }
  std::string dump() const;

 private:
  std::shared_ptr<const node> p_;
};

expr constant(double c);
expr coordinate(int i);
expr poly(const polynomial& p);
expr sum(const std::vector<expr>& terms);
expr product(const std::vector<expr>& factors);
expr quotient(const expr& num, const expr& den);
expr apply(std::shared_ptr<const univariate> g, const expr& arg);
expr sqrt_of(const expr& arg);
// outer(maps_0(x), ..., maps_{d-1}(x))
expr compose(const expr& outer, const std::vector<expr>& maps);
expr gate(std::shared_ptr<const region> r, const expr& e);
// Degree-m Taylor polynomial in the fibre variables x_k.. at x_k.. = 0,
// coefficients taken along the base x_0..x_{k-1}.
expr fiber_taylor(const expr& e, int k, int m);
expr min_of(const std::vector<expr>& terms);

expr operator+(const expr& a, const expr& b);
expr operator-(const expr& a, const expr& b);
expr operator-(const expr& a);
expr operator*(const expr& a, const expr& b);
expr operator*(double c, const expr& a);
expr operator/(const expr& a, const expr& b);

// Series of e at x to the given order.
tps eval_series(const expr& e, const point& x, int order, const eval_options& opt = {});
double eval(const expr& e, const point& x, const eval_options& opt = {});
double deriv(const expr& e, const multi_index& a, const point& x, const eval_options& opt = {});

}  // namespace wjet
