#pragma once

// Trigonometric orthonormal basis of L^2([-pi, pi]):
//   e_1 = 1/sqrt(2 pi),  e_{2m} = cos(m t)/sqrt(pi),  e_{2m+1} = sin(m t)/sqrt(pi).
// Functions enter the library through their first N coefficients, after which
// every ball/cone operation is the generic coefficient-vector one.

#include <cstddef>
#include <functional>

#include "hilproj/hilbert_point.hpp"

namespace hilproj::trig {

/// e_n(t) for n >= 1.
double basis(std::size_t n, double t);

/// First n_terms coefficients <f, e_n>, by the periodic trapezoid rule on
/// `samples` equispaced nodes (exact for trigonometric polynomials of degree
/// below samples/2). samples == 0 picks 4 * n_terms + 16.
HilbertPoint coefficients(const std::function<double(double)>& f, std::size_t n_terms,
                          std::size_t samples = 0);

/// sum_n c_n e_n(t).
double synthesize(const HilbertPoint& c, double t);

/// L^2 norm of f by the same quadrature; for a band-limited f this agrees
/// with the coefficient norm (Parseval).
double l2_norm(const std::function<double(double)>& f, std::size_t samples);

/// Coefficient patterns of odd functions (only sine terms) and even
/// functions (constant and cosine terms).
bool has_odd_pattern(const HilbertPoint& c, double tol = 1e-12);
bool has_even_pattern(const HilbertPoint& c, double tol = 1e-12);

}  // namespace hilproj::trig
