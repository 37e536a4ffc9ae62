#pragma once

#include <limits>

#include "steklov/spectrum.hpp"

namespace steklov::analytic {

// Closed-form Steklov (Dirichlet-to-Neumann) spectrum of the disk of the
// given radius: 0, 1/R, 1/R, 2/R, 2/R, ...
Spectrum steklov_disk(double radius, int count);

// Closed-form Laplacian spectrum of a circle of length L:
// 0, then (2*pi*i/L)^2 each with multiplicity 2.
Spectrum laplacian_circle(double length, int count);

// Laplacian spectrum of a disjoint union of circles (ascending merge of the
// individual spectra; one zero per circle).
Spectrum laplacian_circles(const std::vector<double>& lengths, int count);

// Closed-form Steklov spectrum of the annulus r_inner < |x| < r_outer.  Each
// angular mode contributes explicitly: mode 0 gives {0, (1/R + 1/rho) /
// log(R/rho)}, every mode k >= 1 gives two eigenvalues of multiplicity two,
// the roots of a quadratic in the mode's two-dimensional radial system.
Spectrum steklov_annulus(double r_inner, double r_outer, int count);

// Eigenvalues contributed by one angular mode of the annulus (ascending;
// multiplicities not expanded).  Exposed for convergence diagnostics.
std::vector<double> steklov_annulus_mode(double r_inner, double r_outer, int mode);

constexpr int kInfiniteTerms = std::numeric_limits<int>::max();

// Partial zeta sum: sum_{i=1..n} i^(-exponent).  n = kInfiniteTerms is
// supported for exponent 2 only and returns pi^2/6.
double partial_zeta(int n, double exponent);

}  // namespace steklov::analytic
