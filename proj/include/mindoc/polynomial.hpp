// Polynomial root extraction: companion-matrix eigensolve for general real
// polynomials plus a closed form for the sparse quartic that the pure-electric
// cruise optimality condition reduces to.
#pragma once

#include <vector>

namespace mindoc {

/// Evaluate a polynomial with coefficients in descending-degree order
/// (coeffs[0] multiplies the highest power) via Horner's scheme.
double polyval(const std::vector<double>& coeffs_desc, double x);

/// Derivative value of the same polynomial at x.
double polyval_derivative(const std::vector<double>& coeffs_desc, double x);

/// @brief All real roots of the polynomial, ascending, deduplicated.
///
/// Near-zero leading/trailing coefficients (|c| <= 1e-13 * max|c|) are
/// trimmed first; trailing trims discard exact zero roots. Degrees 1 and 2
/// use closed forms; higher degrees go through an Eigen companion-matrix
/// eigensolve. Eigenvalues with |Im| <= 1e-9 * max(1, |root|) count as real
/// and are Newton-polished against the trimmed polynomial.
///
/// @throws RootError if every coefficient is (numerically) zero
std::vector<double> real_roots(const std::vector<double>& coeffs_desc);

/// Strictly positive members of real_roots(), ascending.
std::vector<double> positive_real_roots(const std::vector<double>& coeffs_desc);

/// @brief The unique positive root of a x^4 - b x - c = 0 for a, c > 0, b >= 0.
///
/// Solved in closed form through the resolvent cubic of the depressed quartic
/// (the x^2 term is absent), then polished with two Newton steps. With b = 0
/// the root is exactly (c / a)^(1/4).
///
/// @throws DomainError on a <= 0, c <= 0, or b < 0
double positive_root_sparse_quartic(double a, double b, double c);

} // namespace mindoc
