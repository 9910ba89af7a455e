#pragma once

#include <span>
#include <vector>

/// Scalar special functions used by the excursion approximations.
///
/// Everything here is pure and reentrant. Arguments on [-1, 1] accept a
/// 1e-12 band outside the interval (round-off from unit-vector dot products)
/// and are clamped; anything further out is a std::domain_error.
namespace sphex::specialfn {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kClampBand = 1e-12;

/// Clamp t into [-1, 1] if it lies within kClampBand of it.
double clamp_unit(double t);

/// Ultraspherical (Gegenbauer) polynomial P_n^lambda(t).
///
/// Uses the ascending three-term recurrence
///   n P_n = 2 (n + lambda - 1) t P_{n-1} - (n + 2 lambda - 2) P_{n-2}.
/// lambda == 0 follows Schoenberg's convention P_n^0 = T_n (Chebyshev).
double gegenbauer_eval(int n, double lambda, double t);

/// All of P_0^lambda(t) .. P_max^lambda(t) in one recurrence pass.
std::vector<double> gegenbauer_all(int max_degree, double lambda, double t);

/// Chebyshev polynomial of the first kind, cos(n arccos t).
double chebyshev_eval(int n, double t);

/// P_n^lambda(1) = binom(n + 2 lambda - 1, n) for lambda > 0, and 1 for lambda == 0.
double gegenbauer_at_one(int n, double lambda);

/// d/dt P_n^lambda(t): 2 lambda P_{n-1}^{lambda+1}(t), or n P_{n-1}^1(t) when lambda == 0.
double gegenbauer_derivative(int n, double lambda, double t);

/// Probabilists' Hermite polynomial H_j(u), H_{j+1} = u H_j - j H_{j-1}.
double hermite(int j, double u);

/// Psi(u) = exp(-u^2/2) / (sqrt(2 pi) u), u > 0.
double gauss_tail_psi(double u);

/// Standard normal upper tail 1 - Phi(u).
double normal_upper_tail(double u);

/// EC density rho_j(u). rho_0 is the Gaussian upper tail (via erfc); for j >= 1
/// rho_j(u) = (2 pi)^{-(j+1)/2} H_{j-1}(u) exp(-u^2/2).
double ec_density(int j, double u);

/// Area of the unit j-sphere, omega_j = 2 pi^{(j+1)/2} / Gamma((j+1)/2).
double sphere_area(int j);

/// P(|xi| >= u) for xi standard Gaussian in R^k, i.e. Q(k/2, u^2/2).
double chi_tail(int k, double u);

/// Real-argument binomial coefficient binom(x, n) for integer n >= 0.
double binomial(double x, int n);

}  // namespace sphex::specialfn
