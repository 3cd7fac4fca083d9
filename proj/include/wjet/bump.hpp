#pragma once

#include <memory>
#include <vector>

#include "wjet/expr.hpp"

namespace wjet {

struct bump_spec {
  int p = 3;               // C^p joins
  double plateau = 0.5;    // xi == 1 on [-plateau, plateau]
  // support half-width is fixed at 1
};

// q(s) on [0,1]: q(0)=1, q(1)=0, q^(j)=0 at both ends for j=1..p.
// Monomial coefficients in s, degree 2p+1.
std::vector<double> join_coefficients(int p);

class bump_fn : public univariate {
 public:
  explicit bump_fn(bump_spec s);
  std::vector<double> derivs(double t, int q) const override;
  int smoothness() const override { return spec_.p; }
  std::string describe() const override;

  enum class piece { plateau, join, outside };
  // Derivatives of a single polynomial piece at t, ignoring which piece t
  // belongs to. Used to compare one-sided limits at the joins.
  std::vector<double> piece_derivs(piece pc, double t, int q) const;

 private:
  bump_spec spec_;
  std::vector<double> q_;
};

expr bump_xi(const bump_spec& s, const expr& arg);
// xi applied to x_0.
expr bump_xi(const bump_spec& s);
// chi(x) = xi(|x|^2) in n variables: 1 for |x|^2 <= plateau, 0 for |x| >= 1.
expr bump_chi(int n, const bump_spec& s);
// chi((x - c) / r)
expr bump_chi_at(const point& c, double r, const bump_spec& s);

}  // namespace wjet
