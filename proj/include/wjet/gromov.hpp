#pragma once

#include <optional>
#include <string>

#include "wjet/expr.hpp"
#include "wjet/modulus.hpp"

namespace wjet {

// 2^(C(m+2,2)-2) sup|f| / r^m
double gromov_bound(int m, double r, double sup_f);
// 2^(C(m+1,2)+m-2) omega(r) / r^m
double gromov_bound_omega(int m, double r, const modulus& w);

struct gromov_certificate {
  bool hypothesis_holds = true;
  int failing_order = 0;         // first j in 2..m+1 with a sign change
  int grid_points = 0;
  double sup_f = 0.0;
  double holder_constant = 0.0;  // only with a modulus
  double observed = 0.0;         // |f^(m)(t0)|
  double bound = 0.0;
  double margin = 0.0;           // bound - observed
  bool pass = false;
  std::string summary() const;
};

// Grid of `intervals`+1 equispaced points on [t0-r, t0+r] (t0 included).
gromov_certificate verify_gromov(const expr& f, double t0, double r, int m,
                                 const std::optional<modulus>& w = std::nullopt, int intervals = 512);

}  // namespace wjet
