#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsl/numerics.hpp"

namespace hsl {

/// PSD tolerance on density values and atom weights.
inline constexpr double psd_tol = 1e-12;

/// A named matrix density λ ↦ ρ(λ) on ℝ₊ drawn from a closed registry.
struct Density {
  std::string name;
  std::vector<double> params;
  int dim = 0;
  std::function<Matrix(double)> evaluator;

  Matrix operator()(double lambda) const { return evaluator(lambda); }
};

/// Registry lookup. Known names: lebesgue2, example_t, rank_one_fail, block_chi.
Density make_density(std::string_view name, std::vector<double> params, int dim);

struct Atom {
  double location;
  Matrix weight;
};

/// A positive-matrix-valued measure on ℝ₊: an optional absolutely
/// continuous density plus finitely many point masses. Immutable.
class CarlesonMeasure {
 public:
  /// Validates dimensions, Hermitian PSD weights, and strictly positive,
  /// pairwise distinct atom locations. The density is probed for PSD on a
  /// 64-point log grid in [1e-3, 1e3].
  CarlesonMeasure(int dim, std::optional<Density> density, std::vector<Atom> atoms = {});

  int dim() const noexcept { return dim_; }
  const std::optional<Density>& density() const noexcept { return density_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  bool has_density() const noexcept { return density_.has_value(); }
  bool is_pure_point() const noexcept { return !density_.has_value(); }
  bool is_zero() const noexcept { return !density_.has_value() && atoms_.empty(); }

 private:
  int dim_;
  std::optional<Density> density_;
  std::vector<Atom> atoms_;
};

/// Built-in measures: lebesgue2, example_t (params [t], dim 4), rank_one_fail
/// (dim 2), block_chi (dim 2), atoms (params = locations, unit weights).
CarlesonMeasure builtin_measure(std::string_view name, const std::vector<double>& params, int dim);

/// The 4×4 density ρ_t of the non-Borchers example family, t ∈ [0, 1].
Matrix example_density(double t, double lambda);

/// ∫ g(λ) ρ(λ) dλ + Σⱼ g(λⱼ) Aⱼ.
Matrix moment(const CarlesonMeasure& mu, const std::function<Complex(double)>& g,
              const QuadratureSpec& spec = {});

/// Same as `moment` but with a matrix-valued integrand sandwich:
/// ∫ L(λ)* ρ(λ) R(λ) dλ + Σⱼ L(λⱼ)* Aⱼ R(λⱼ). Used by the Hankel forms.
Matrix sandwich_moment(const CarlesonMeasure& mu, const std::function<Matrix(double)>& left,
                       const std::function<Matrix(double)>& right, const QuadratureSpec& spec = {});

struct CarlesonRatioReport {
  double max_ratio_low = 0.0;   // sup_x (1/x)‖∫_0^x dμ/(1+λ²)‖
  double max_ratio_high = 0.0;  // sup_x (1/x)‖∫_{1/x}^∞ dμ/(1+λ²)‖
  std::vector<double> x_grid;
  std::vector<double> ratio_low;
  std::vector<double> ratio_high;
};

/// Grid evidence (not a proof) for the Carleson property.
CarlesonRatioReport carleson_ratio_check(const CarlesonMeasure& mu, const std::vector<double>& x_grid,
                                         const QuadratureSpec& spec = {});

}  // namespace hsl
