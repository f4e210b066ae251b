#pragma once

#include "tilinglab/core/rational.hpp"
#include "tilinglab/fourier/box_tile.hpp"

#include <complex>
#include <vector>

namespace tilinglab {

using ComplexValue = std::complex<double>;

/// sin(pi t) / (pi t), with a Taylor branch near 0.
double sinc_pi(double t);
/// sin(pi q) and cos(pi q) after exact reduction of q modulo 2.
double sin_pi(const Rational& q);
double cos_pi(const Rational& q);

/// Closed form of the integral of exp(-2 pi i <xi, x>) over the tile.
ComplexValue ft_box_union(const BoxUnionTile& tile, const Vec& xi);
ComplexValue ft_box_union(const BoxUnionTile& tile, const std::vector<double>& xi);

/// chi_Q - sgn(prod delta) psi: the cube Q = [-1/2,1/2)^d with the box of sides |delta_j|
/// centred at (1 - delta)/2 removed or attached. Any nonzero delta is accepted.
ComplexValue ft_cube_pair(const Vec& delta, const Vec& xi);
ComplexValue ft_cube_pair(const Vec& delta, const std::vector<double>& xi);

/// Notched cube; requires 0 < delta_j <= 1 and prod delta < 1.
ComplexValue ft_notched(const Vec& delta, const Vec& xi);

/// One-dimensional tile as an exponential polynomial in xi.
ComplexValue ft_step1d(const BoxUnionTile& tile, double xi);

} // namespace tilinglab
