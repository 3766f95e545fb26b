#pragma once

#include <vector>

#include "flowlab/geometry.hpp"
#include "flowlab/linalg.hpp"

namespace flowlab::detail {

// Band matrix sized for the grid's interior coupling plus eliminated
// boundary rows.
BandMatrix make_system(const BackgroundMetric& bg);

// Adds scale * (Laplacian row) to row `row` of `A`.
void add_laplace_row(const BackgroundMetric& bg, BandMatrix& A, int row, double scale);

// Replaces a 2-D disk origin row (0,j), j > 0, by u(0,j) - u(0,0) = 0.
void set_origin_tie(const BackgroundMetric& bg, BandMatrix& A, std::vector<double>& rhs, int j);

void set_identity_row(BandMatrix& A, std::vector<double>& rhs, int row, double value);

// Writes the one-sided outward-derivative relation
//   3u_b - 4u_{b+s} + u_{b+2s} = g
// into row (b,j), then subtracts m times row (b+s,j) so the row only reaches
// the first interior ring. Returns m; the caller sets rhs(b,j) = g - m * rhs(b+s,j).
double set_one_sided_row(const BackgroundMetric& bg, BandMatrix& A, const BoundaryComponent& c, int j);

// Forces every 2-D disk origin sample to the (0,0) value.
void tie_origin(const BackgroundMetric& bg, Field& u);

}  // namespace flowlab::detail
