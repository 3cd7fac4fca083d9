#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wjet/expr.hpp"
#include "wjet/modulus.hpp"
#include "wjet/multi_index.hpp"
#include "wjet/polynomial.hpp"
#include "wjet/tps.hpp"

namespace wjet {

// m-jet on a finite point set. values(k)[i] is F^a(x_i) for a = indices()[k].
class jet {
 public:
  jet() = default;
  jet(int n, int m);

  int dim() const { return n_; }
  int order() const { return m_; }
  const std::vector<point>& points() const { return pts_; }
  const std::vector<multi_index>& indices() const { return idx_; }
  std::size_t size() const { return pts_.size(); }

  // Append a point with its field values in graded-lex order.
  void add_point(const point& x, const std::vector<double>& values);
  double value(std::size_t k, std::size_t i) const { return vals_[k][i]; }
  double& value(std::size_t k, std::size_t i) { return vals_[k][i]; }
  double field(const multi_index& a, std::size_t i) const;
  std::vector<double> at(std::size_t i) const;
  // Index of x in the point list, or -1 (exact match).
  int find(const point& x, double tol = 0.0) const;
  bool is_flat(double tol = 0.0) const;

  // Series at point i: coefficient F^a(x_i) / a!.
  tps series(std::size_t i) const;

 private:
  int n_ = 0, m_ = 0;
  std::vector<point> pts_;
  std::vector<multi_index> idx_;
  std::vector<std::vector<double>> vals_;
};

// Taylor polynomial sum_a F^a(a)/a! (x - a)^a.
polynomial taylor(const jet& F, std::size_t i);
polynomial taylor(const jet& F, const point& a);

// (R^m_x F)^a(y) for all a, x = points[i], y = points[j].
std::vector<double> remainder(const jet& F, std::size_t i, std::size_t j);
std::vector<double> remainder(const jet& F, const point& x, const point& y);

struct whitney_report {
  double sup_norm = 0.0;
  double holder_constant = 0.0;
  int worst_x = -1, worst_y = -1, worst_index = -1;
  std::string summary() const;
};

struct whitney_options {
  double radius = 0.0;  // > 0: only pairs closer than this
  int threads = 1;
};

whitney_report whitney_constant(const jet& F, const modulus& w, const whitney_options& opt = {});

jet jet_mul(const jet& F, const jet& G);
// F on E in R^n, G = n jets on a common set A in R^k.
jet jet_compose(const jet& F, const std::vector<jet>& G, double tol = 1e-12);
jet jet_from_function(const expr& f, const std::vector<point>& E, int m);

// F on M in R^k x R^l, phi: l polynomials in the first k coordinates.
// Returns the jet on N = { (u, w - phi(u)) : (u, w) in M }.
jet pullback(const jet& F, const std::vector<polynomial>& phi, int k);

std::pair<jet, whitney_report> zero_extend_flat(const jet& F, const std::vector<point>& extra, const modulus& w);

// Union of jets on disjoint point sets (same n, m).
jet concat(const jet& a, const jet& b);

}  // namespace wjet
