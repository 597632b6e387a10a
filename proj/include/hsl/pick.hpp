#pragma once

#include <vector>

#include "hsl/measure.hpp"

namespace hsl {

/// 𝒩_μ(z) together with its Hermitian real and imaginary parts.
struct PickEvaluation {
  Complex z;
  Matrix n_value;
  Matrix r_value;
  Matrix i_value;
};

/// True when z lies on the excluded ray i(−∞, 0].
bool on_excluded_ray(Complex z);

/// 𝒩_μ(z) = (1/π)∫ [1/(λ − iz) − λ/(1+λ²)] dμ(λ).
Matrix pick_n(const CarlesonMeasure& mu, Complex z, const QuadratureSpec& spec = {});

/// 𝓡_μ(z), 𝓘_μ(z) at z = x + iy computed directly from their real kernels
/// (λ+y)/((λ+y)²+x²) − λ/(1+λ²) and x/((λ+y)²+x²).
PickEvaluation pick_parts(const CarlesonMeasure& mu, Complex z, const QuadratureSpec& spec = {});

/// Boundary values (𝓡_μ(x), 𝓘_μ(x)) for real x ≠ 0.
PickEvaluation pick_boundary(const CarlesonMeasure& mu, double x, const QuadratureSpec& spec = {});

struct KappaBoundReport {
  double alpha = 0.0;
  double max_i_ratio = 0.0;  // max ‖𝓘(z)‖ / 2α
  double max_r_ratio = 0.0;  // max ‖𝓡(z)‖ / ((8/π)α|log|z|| + α)
  bool pass = false;
  std::vector<Complex> z_grid;
};

/// Growth bounds ‖𝓘_μ(z)‖ ≤ 2α and ‖𝓡_μ(z)‖ ≤ (8/π)α|log|z|| + α over a grid.
/// `alpha` must be a caller-supplied upper bound for ‖H_μ‖.
KappaBoundReport kappa_bound_check(const CarlesonMeasure& mu, double alpha, const std::vector<Complex>& z_grid,
                                   const QuadratureSpec& spec = {});

/// Grid for kappa_bound_check: log-spaced moduli in [lo, hi] at the given
/// arguments in [0, π] plus the negative real axis; arguments within 1e-3 of
/// −π/2 are never produced.
std::vector<Complex> kappa_grid(double lo, double hi, int n_modulus, const std::vector<double>& arguments);

}  // namespace hsl
