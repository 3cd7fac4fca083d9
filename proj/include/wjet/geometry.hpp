#pragma once

#include <vector>

#include "wjet/multi_index.hpp"

namespace wjet {

class lambda_cell;

// Points, segments and triangles in R^d; used for distances to cell frontiers.
struct simplex_mesh {
  std::vector<point> verts;
  std::vector<std::vector<int>> simplices;  // 1, 2 or 3 vertex indices
  double distance(const point& x) const;
};

double point_segment_distance(const point& x, const point& a, const point& b);
double point_triangle_distance(const point& x, const point& a, const point& b, const point& c);

// Closed grid of an open cell of dimension 1 or 2 (segments / triangles).
simplex_mesh closure_grid(const lambda_cell& c, int res, double window);
// Frontier of an open cell of ambient dimension <= 3.
simplex_mesh boundary_mesh(const lambda_cell& c, int res, double window);

// Clipped finite range of an interval cell.
void clipped_range(const lambda_cell& interval, double window, double& lo, double& hi);

}  // namespace wjet
