#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wjet {

class jet;

// Modulus of continuity: positive, increasing, concave on (0, inf),
// extended by omega(0) = 0.
class modulus {
 public:
  enum class kind { holder, linear, piecewise_linear };

  static modulus holder(double alpha);
  static modulus linear();
  // (t_i, v_i), t_i strictly increasing and >= 0, v_i > 0.
  static modulus piecewise_linear(std::vector<std::pair<double, double>> pts);

  kind type() const { return kind_; }
  double alpha() const { return alpha_; }
  const std::vector<std::pair<double, double>>& points() const { return pts_; }

  double operator()(double t) const;
  std::string describe() const;

 private:
  kind kind_ = kind::linear;
  double alpha_ = 1.0;
  std::vector<std::pair<double, double>> pts_;
};

struct modulus_certificate {
  bool pass = true;
  std::string violation;  // empty on pass
  double smallest_value = 0.0;  // omega at the smallest grid point
  bool vanishing_ok = true;     // heuristic: omega(t_min) <= 1e-2 * omega(t_max)
};

// Geometric grid with the given density per decade.
std::vector<double> geometric_grid(double lo, double hi, int per_decade = 64);

modulus_certificate check_modulus(const modulus& w, const std::vector<double>& grid);

// Nondecreasing step function: value(t) = v_i for the last t_i <= t, 0 before.
struct sigma_profile {
  std::vector<std::pair<double, double>> breakpoints;
  double operator()(double t) const;
};

// Exact breakpoints when grid is empty, else the profile sampled at the grid.
sigma_profile sigma_from_jet(const jet& F, const std::vector<double>& grid = {});

modulus least_concave_majorant(std::vector<std::pair<double, double>> samples);
modulus least_concave_majorant(const sigma_profile& p);

// Concave majorant of tau(t) = sigma(t) for t < 1, max{1, sigma(t)} for t >= 1.
modulus modulus_for_cm(const jet& F);

}  // namespace wjet
