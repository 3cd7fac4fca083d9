#pragma once

#include <vector>

#include "wjet/extend.hpp"

namespace wjet {

// h(s) = xi(4s/3): C^p bump supported in (-3/4, 3/4).
expr glue_h(const bump_spec& b, const expr& s);

// psi_1 = h(|x|^2), psi_k = h(|x| - (k-1)) for k = 2..count.
std::vector<expr> glue_partition(int n, int count, const bump_spec& b);

struct glue_piece {
  int k = 1;  // annulus index, U_k = {k-2 < |x| < k}
  expr f;
};

struct glue_result {
  expr f;
  std::vector<std::string> log;
  int K = 0;
  double outer_radius = 0.0;  // f is supported in |x| < outer_radius
};

// f = sum_k psi_k f_k / sum_{k <= K+1} psi_k on |x| < K + 1/2, 0 outside.
glue_result glue_local(const std::vector<glue_piece>& pieces, int n, const bump_spec& b);

// |sum_k phi_k(x) - 1| with phi_k = psi_k / psi over a common denominator.
double partition_residual(const std::vector<expr>& psi, const point& x);
// |sum_k phi_k(x) - 1| with each phi_k evaluated as its own quotient.
double partition_deviation(const std::vector<expr>& psi, const point& x);

// Annulus pipeline: split the point strata of P by U_k, extend each part,
// glue, and verify on the full jet.
struct glue_pipeline_result {
  glue_result glued;
  extension_result ext;
  std::vector<int> points_per_piece;
};

glue_pipeline_result glue_annuli(const problem& P, const verify_options& vopt = {}, int piece_probes = 500);

}  // namespace wjet
