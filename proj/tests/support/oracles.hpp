#pragma once

#include <complex>
#include <functional>
#include <vector>

// Reference computations that share no code with the library: adaptive
// Simpson integration, explicit Hermite sums, permutation expansions.
namespace oracle {

using Complex = std::complex<double>;

double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

/// Integral over the real line through x = tan(t).
double simpson_line(const std::function<double(double)>& f, double tol = 1e-12);

/// sqrt(2/L) sin(n pi x / L).
double box_orbital(int n, double length, double x);

/// (2 pi)^(-1/2) integral_0^L psi_n(x) exp(-i p x) dx by quadrature.
Complex box_momentum_ft(int n, double length, double p);

/// H_n from the explicit finite sum.
double hermite(int n, double x);

/// Normalised oscillator orbital from the textbook formula.
double ho_orbital(int n, double omega, double x);

/// (2 pi)^(-1/2) integral psi_n(x) exp(-i p x) dx for the oscillator.
Complex ho_momentum_ft(int n, double omega, double p);

/// Sum over permutations of prod_k m[k][perm[k]], signed for a determinant.
Complex leibniz(const std::vector<std::vector<Complex>>& m, bool signed_terms);

/// -integral of d ln d on [a, b].
double entropy_1d(const std::function<double(double)>& density, double a, double b);

} // namespace oracle
