#pragma once

#include <utility>
#include <vector>

#include "wjet/multi_index.hpp"
#include "wjet/tps.hpp"

namespace wjet {

// p(x) = sum_a c_a (x - center)^a in n variables.
class polynomial {
 public:
  polynomial() = default;
  explicit polynomial(int n) : n_(n), center_(n, 0.0) {}
  polynomial(int n, point center) : n_(n), center_(std::move(center)) {}

  static polynomial constant(int n, double c);
  static polynomial coordinate(int n, int i);

  void add_term(const multi_index& a, double c);

  int nvars() const { return n_; }
  const point& center() const { return center_; }
  const std::vector<std::pair<multi_index, double>>& terms() const { return terms_; }
  int degree() const;
  bool is_zero() const;

  double eval(const point& x) const;
  double deriv(const multi_index& a, const point& x) const;
  // Series of p evaluated at the given input series (one per variable).
  tps eval_tps(const std::vector<tps>& inputs) const;

 private:
  int n_ = 0;
  point center_;
  std::vector<std::pair<multi_index, double>> terms_;
};

}  // namespace wjet
