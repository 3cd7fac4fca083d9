#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wjet/expr.hpp"
#include "wjet/polynomial.hpp"

namespace wjet {

// Recursive cell: Interval(a1, a2) | Band(lo, hi, base) | Graph(map, base).
// Band boundaries and graph maps are polynomials in the base coordinates;
// an absent band boundary stands for -inf (lo) or +inf (hi).
class lambda_cell {
 public:
  enum class kind { interval, band, graph };

  static std::shared_ptr<const lambda_cell> interval(double a1, double a2, double C = 1.0);
  static std::shared_ptr<const lambda_cell> band(std::optional<polynomial> lo, std::optional<polynomial> hi,
                                                 std::shared_ptr<const lambda_cell> base, double C = 1.0);
  static std::shared_ptr<const lambda_cell> graph(std::vector<polynomial> map,
                                                  std::shared_ptr<const lambda_cell> base, double C = 1.0);

  kind type() const { return kind_; }
  bool is_open() const { return kind_ != kind::graph; }
  int dim() const;      // intrinsic dimension
  int ambient() const;  // number of coordinates used
  double constant() const { return C_; }

  double a1() const { return a1_; }
  double a2() const { return a2_; }
  const std::optional<polynomial>& lo() const { return lo_; }
  const std::optional<polynomial>& hi() const { return hi_; }
  const std::vector<polynomial>& map() const { return map_; }
  const std::shared_ptr<const lambda_cell>& base() const { return base_; }

  // Membership on the first ambient() coordinates of x. Graph membership
  // allows a relative tolerance on the fibre coordinates.
  bool contains(const point& x, double graph_tol = 1e-12) const;
  // Lower/upper band bounds at the base point (±inf when absent).
  double lower(const point& x) const;
  double upper(const point& x) const;

  std::string describe() const;

 private:
  kind kind_ = kind::interval;
  double a1_ = 0.0, a2_ = 0.0;
  std::optional<polynomial> lo_, hi_;
  std::vector<polynomial> map_;
  std::shared_ptr<const lambda_cell> base_;
  double C_ = 1.0;
};

using cell_ptr = std::shared_ptr<const lambda_cell>;

class cell_region : public region {
 public:
  explicit cell_region(cell_ptr c) : c_(std::move(c)) {}
  bool contains(const point& x) const override { return c_->contains(x); }
  std::string describe() const override { return c_->describe(); }

 private:
  cell_ptr c_;
};

// Interior samples: `res` per coordinate direction; infinite ends are clipped
// to a window of length `window` beyond the finite end.
std::vector<point> sample_cell(const lambda_cell& c, int res, double window = 4.0);
// Samples of the closure's frontier (graph or open cell), same conventions.
std::vector<point> sample_frontier(const lambda_cell& c, int res, double window = 4.0);

struct cell_function {
  std::vector<polynomial> comps;
  double C = 1.0;
  int p = 1;
};

struct regularity_certificate {
  bool pass = true;
  double worst_margin = 0.0;  // max |d^g f| / (C dist^(1-|g|))
  point worst_sample;
  multi_index worst_index;
};

regularity_certificate check_lambda_regular(const cell_function& f, const lambda_cell& cell, int p,
                                            const std::vector<point>& samples);

struct associated_family {
  std::vector<std::optional<expr>> rho;  // nullopt = +inf; rho[0] == 1
  // min over finite rho_j, j >= from, at x (+inf if none)
  double min_at(const point& x, int from = 1) const;
};

associated_family associated_functions(const lambda_cell& cell);

struct rho_distance_certificate {
  bool pass = true;
  double C_K = 1.0;    // max of min_{j>=1} rho / d
  double C_K0 = 1.0;   // max of min_{j>=0} rho / min{1,d}
  double max_violation = 0.0;  // max of d - min rho (positive = violation)
  int resolution = 0;
  double tolerance = 0.0;
};

// Geometric distance uses a boundary mesh with `res` subdivisions.
rho_distance_certificate check_rho_distance(const lambda_cell& cell, const std::vector<point>& samples,
                                            int res = 256);

struct inv_rho_certificate {
  double C = 0.0;  // max |d^g(1/rho)| * min{1,d}^(|g|+1)
  bool pass = true;
  std::vector<double> values;  // derivative values per (sample, index) in order
};

// Derivatives of 1/rho_j for 1 <= |g| <= p; min{1,d} via min_{j>=0} rho_j.
inv_rho_certificate inv_rho_bounds(const lambda_cell& cell, int j, const std::vector<point>& samples, int p);
double inv_rho_derivative(const expr& rho, const multi_index& g, const point& x);

struct quasiconvexity_estimate {
  double constant = 1.0;
  double radius = 0.0;
  int samples = 0;
};

quasiconvexity_estimate quasiconvexity_constant(const std::vector<point>& samples, double radius);

struct separation_certificate {
  double C = inf;
  bool pass = true;  // C > 0
  bool vacuous = false;
};

separation_certificate check_separation(const std::vector<point>& X, const std::vector<point>& Y,
                                        const std::vector<point>& Z);

// Distance from x to the frontier of an open cell, through a boundary mesh.
double boundary_distance(const lambda_cell& cell, const point& x, int res = 256, double window = 4.0);

}  // namespace wjet
