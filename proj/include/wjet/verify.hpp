#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wjet/expr.hpp"
#include "wjet/jet.hpp"
#include "wjet/modulus.hpp"

namespace wjet {

// Scrambled Halton points in [lo, hi] (Cranley-Patterson shift from the seed).
std::vector<point> halton_cloud(const point& lo, const point& hi, int count, std::uint64_t seed);

struct verify_options {
  int probes = 10000;
  std::uint64_t seed = 1;
  double pair_radius = 0.5;  // Hölder quotients over probe pairs closer than this
  double margin = 1.0;       // probe box = jet sample box grown by this
  bool has_box = false;      // explicit probe box instead of the sample box
  point box_lo, box_hi;
  // Points where f must be m-flat (e.g. outside the Step-1 region).
  std::function<bool(const point&)> flat_zone;
  // Seam samples; derivatives are compared at x +- seam_eps along every axis.
  std::vector<point> seam_points;
  double seam_eps = 1e-7;
  int threads = 0;  // 0: hardware concurrency
  // Local search around the best sup probe and the best Hölder pairs.
  int refine_rounds = 8;
  int refine_points = 32;
  int refine_starts = 8;
};

struct extension_report {
  double restriction_max_error = 0.0;
  int restriction_worst_point = -1;
  multi_index restriction_worst_index;
  double sup_derivatives = 0.0;  // max over |a| <= m of sup |d^a f| on probes
  double holder_quotient = 0.0;  // max over |a| = m of |d^a f(x) - d^a f(y)| / omega(|x-y|)
  double norm = 0.0;             // sup_derivatives + holder_quotient
  double flatness_violation = 0.0;
  int flat_probes = 0;
  double seam_residual = 0.0;
  int seam_points = 0;
  int probes = 0;
  int refine_probes = 0;
  int skipped = 0;
  std::uint64_t seed = 0;
  double pair_radius = 0.0;
  point box_lo, box_hi;
  std::string modulus;

  bool finite() const;
  std::string summary() const;
};

extension_report verify_extension(const expr& f, const jet& F, const modulus& w, const verify_options& opt = {});

}  // namespace wjet
