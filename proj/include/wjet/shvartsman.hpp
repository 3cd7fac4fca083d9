#pragma once

#include <vector>

#include "wjet/jet.hpp"
#include "wjet/modulus.hpp"
#include "wjet/polynomial.hpp"

namespace wjet {

struct poly_point {
  polynomial P;
  point x;
};

// psi_a inverts s -> s^(m-|a|) omega(s); phi_a = omega o psi_a (identity when |a| = m).
class psi_phi {
 public:
  psi_phi(int m, int order, modulus w);
  double psi(double t) const;
  double phi(double t) const;

 private:
  int m_, order_;
  modulus w_;
};

double delta_omega(const poly_point& T1, const poly_point& T2, const modulus& w, int m);

// All-pairs shortest paths in the delta_omega-weighted complete graph.
std::vector<std::vector<double>> chain_distances(const std::vector<poly_point>& nodes, const modulus& w, int m);

// Upper bound on d_omega(T, T2) through chains in {T, T2} + candidates.
double d_omega_chain(const poly_point& T, const poly_point& T2, const std::vector<poly_point>& candidates,
                     const modulus& w, int m);

struct lip_norm_result {
  double sup_term = 0.0;     // max_{|a|<=m} sup_x |d^a P_x(x)|
  double lambda_term = 0.0;  // inf lambda (upper estimate through chains on the field)
  double total = 0.0;
  int pairs = 0;
};

lip_norm_result lip_norm(const std::vector<poly_point>& field, const modulus& w, int m);

poly_point scaled(const poly_point& T, double s);
std::vector<poly_point> field_from_jet(const jet& F);

}  // namespace wjet
