#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wjet/bump.hpp"
#include "wjet/cells.hpp"
#include "wjet/expr.hpp"
#include "wjet/jet.hpp"
#include "wjet/modulus.hpp"
#include "wjet/verify.hpp"

namespace wjet {

// Orthogonal change of coordinates y = Q x (rows of Q). Empty = identity.
using frame = std::vector<std::vector<double>>;

point to_local(const frame& Q, const point& x);
point to_global(const frame& Q, const point& y);
// e(Q^T y) as an expression in y, and e(Q x) as an expression in x.
expr pull_to_local(const expr& e, const frame& Q, int n);
expr push_to_global(const expr& e_local, const frame& Q, int n);

// A stratum (or a flat piece of E \ E') in a fixed orthogonal frame.
// Point strata carry explicit jet values or a generator; cell strata carry
// a generator whose jet on the cell is the prescribed jet. A cell of ambient
// dimension a < n sits in the first a local coordinates, the rest being 0.
struct stratum {
  bool is_point = true;
  point x;
  std::optional<std::vector<double>> values;  // graded-lex, |a| <= m
  cell_ptr cell;
  frame Q;
  std::optional<expr> generator;  // global coordinates; absent = flat
  int samples = 16;               // sampling resolution per direction

  int dim() const { return is_point ? 0 : cell->dim(); }
  std::string describe() const;
  // Sample points in global coordinates (interior only for cells).
  std::vector<point> sample(int n) const;
  std::vector<point> sample_frontier(int n) const;
};

struct problem {
  std::string name;
  int n = 1, m = 0, p = 1;
  modulus omega = modulus::linear();
  bump_spec bump;
  std::vector<stratum> strata;  // the support E'
  std::vector<stratum> extras;  // E \ E', jet is flat there
  // Pieces of positive dimension supplied without a stratification.
  int unstratified = 0;
};

// Jet of the problem on all strata and extras samples.
jet problem_jet(const problem& P);

struct extension_result {
  expr f;
  std::vector<std::string> log;
  extension_report report;
  jet F;
};

// One-point base case: chi((x - x0)/d) T^m_{x0} F with d = min{1, d(x0, E \ {x0})}.
extension_result extend_point(const jet& F, const std::vector<point>& E, const bump_spec& bump);
double point_radius(const point& x0, const std::vector<point>& E);

// Step 1 in flattened local coordinates (u, w) in R^k x R^l.
struct flat_cell_input {
  int n = 2;
  int m = 0;
  cell_ptr T;                   // open cell in R^k
  std::vector<cell_ptr> pieces;  // open decomposition of T; empty = {T}
  expr generator;                // jet on T x 0 is F
  expr g;                        // lower-dimensional partial extension
  bump_spec bump;
  double C = 1.0;
};

extension_result extend_flat_cell(const flat_cell_input& in);

// True when the Step-1 cutoff of piece D is nonzero at y.
bool in_step1_region(const cell_ptr& D, const point& y, int k, double C = 1.0);

struct obstacle_input {
  flat_cell_input base;
  std::vector<point> points;                       // isolated obstacle points
  std::vector<std::vector<expr>> graphs;           // w = psi(u) over all of T (l components)
  std::vector<std::vector<point>> sampled;         // anything else, as samples
  int gradient_samples = 32;
};

extension_result extend_with_obstacle(const obstacle_input& in);

// Step 3 for one stratum in its frame: pull back along phi_+, solve the
// flattened problem against the transported obstacles, push forward by phi_-.
extension_result extend_graph(const stratum& S, const expr& residual, const std::vector<stratum>& obstacles,
                              int n, int m, const bump_spec& bump);

// Induction driver.
extension_result extend_jet(const problem& P, const verify_options& vopt = {});

struct cm_result {
  extension_result ext;
  modulus omega;
  double sigma_max = 0.0;
  double omega_at_1 = 0.0;
};

cm_result cm_extend(const problem& P, const verify_options& vopt = {});

enum class family_mode { fixed_omega, per_member_omega };

struct family_member_stat {
  std::string name;
  bool ok = false;
  std::string error;
  double norm = 0.0;
  double restriction_error = 0.0;
  double omega_at_1 = 0.0;
};

struct family_report {
  std::vector<family_member_stat> members;
  double sup_norm = 0.0;
  double min_norm = 0.0;
  double ratio = 0.0;  // max/min over members with positive norms
  int worst = -1;
  double uniform_omega_C = 0.0;  // max over members of max{w(1), 1/w(1)} (per-member mode)
  std::vector<std::string> failures;
  std::string summary() const;
};

family_report extend_family(const std::vector<problem>& members, family_mode mode, const verify_options& vopt = {});

// Seam samples of a problem (point strata and cell frontiers).
std::vector<point> problem_seams(const problem& P);

}  // namespace wjet
