#include "wjet/gromov.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "wjet/error.hpp"

namespace wjet {

double gromov_bound(int m, double r, double sup_f) {
  if (m < 1) throw input_error("gromov_bound requires m >= 1");
  if (!(r > 0.0)) throw input_error("gromov_bound requires r > 0");
  return std::ldexp(1.0, static_cast<int>(binomial(m + 2, 2)) - 2) * sup_f / std::pow(r, m);
}

double gromov_bound_omega(int m, double r, const modulus& w) {
  if (m < 1) throw input_error("gromov_bound_omega requires m >= 1");
  if (!(r > 0.0)) throw input_error("gromov_bound_omega requires r > 0");
  return std::ldexp(1.0, static_cast<int>(binomial(m + 1, 2)) + m - 2) * w(r) / std::pow(r, m);
}

std::string gromov_certificate::summary() const {
  std::ostringstream os;
  os.precision(10);
  if (!hypothesis_holds) {
    os << "hypothesis fails (sign change of derivative " << failing_order << ")";
    return os.str();
  }
  os << "bound " << bound << ", observed " << observed << ", " << (pass ? "pass" : "FAIL");
  return os.str();
}

gromov_certificate verify_gromov(const expr& f, double t0, double r, int m, const std::optional<modulus>& w,
                                 int intervals) {
  if (m < 1) throw input_error("verify_gromov requires m >= 1");
  if (!(r > 0.0)) throw input_error("verify_gromov requires r > 0");
  if (intervals < 2 || intervals % 2) throw input_error("verify_gromov needs an even number of grid intervals");
  gromov_certificate c;
  c.grid_points = intervals + 1;
  std::vector<double> ts(intervals + 1), vals(intervals + 1);
  std::vector<std::vector<double>> ders(intervals + 1);
  for (int i = 0; i <= intervals; ++i) {
    ts[i] = i == intervals / 2 ? t0 : t0 - r + 2.0 * r * i / intervals;
    const tps s = eval_series(f, {ts[i]}, m + 1);
    ders[i].resize(m + 2);
    for (int j = 0; j <= m + 1; ++j) ders[i][j] = s.derivative({j});
    vals[i] = ders[i][0];
    c.sup_f = std::max(c.sup_f, std::abs(vals[i]));
  }
  for (int j = 2; j <= m + 1 && c.hypothesis_holds; ++j) {
    double scale = 0.0;
    for (int i = 0; i <= intervals; ++i) scale = std::max(scale, std::abs(ders[i][j]));
    const double tol = 1e-12 * scale;
    bool pos = false, neg = false;
    for (int i = 0; i <= intervals; ++i) {
      if (ders[i][j] > tol) pos = true;
      if (ders[i][j] < -tol) neg = true;
    }
    if (pos && neg) {
      c.hypothesis_holds = false;
      c.failing_order = j;
    }
  }
  if (!c.hypothesis_holds) return c;
  c.observed = std::abs(ders[intervals / 2][m]);
  if (w) {
    for (int i = 0; i <= intervals; ++i)
      for (int k = i + 1; k <= intervals; ++k)
        c.holder_constant = std::max(c.holder_constant, std::abs(vals[i] - vals[k]) / (*w)(ts[k] - ts[i]));
    c.bound = c.holder_constant * gromov_bound_omega(m, r, *w);
  } else {
    c.bound = gromov_bound(m, r, c.sup_f);
  }
  c.margin = c.bound - c.observed;
  c.pass = c.observed <= c.bound * (1.0 + 1e-12) + 1e-300;
  return c;
}

}  // namespace wjet
