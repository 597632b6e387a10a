#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hsl/measure.hpp"
#include "hsl/symbol.hpp"

namespace hsl {

/// Szegő kernel Q_ξ(z) = (1/2π)·i/(z − ξ̄).
Complex szego_eval(Complex xi, Complex z);

/// The Hardy function z ↦ Q_ξ(z)·v.
struct KernelVector {
  Complex xi;
  Vector v;

  KernelVector(Complex xi, Vector v);
  int dim() const noexcept { return static_cast<int>(v.size()); }
};

/// An H² function through its values on the imaginary axis (f(iλ)) and,
/// optionally, on the real line.
struct HardySample {
  int dim = 0;
  std::function<Vector(double)> axis_eval;
  std::function<Vector(double)> boundary_eval;  // may be empty

  static HardySample from_kernel(const KernelVector& k);
};

/// ⟨f, H_μ g⟩ = ∫ ⟨f(iλ), dμ(λ) g(iλ)⟩.
Complex hankel_form_measure(const CarlesonMeasure& mu, const HardySample& f, const HardySample& g,
                            const QuadratureSpec& spec = {});

/// ⟨Q_z v, M_h R Q_ξ w⟩ = ∫ conj(Q_z(x)) ⟨v, h(x) w⟩ Q_ξ(−x) dx, split at x = 0.
Complex hankel_form_symbol(const Symbol& h, const KernelVector& f, const KernelVector& g,
                           const QuadratureSpec& spec = {});

using KernelPair = std::pair<KernelVector, KernelVector>;

/// max over pairs of |symbol-side form − measure-side form|.
double verify_symbol(const CarlesonMeasure& mu, const Symbol& h, const std::vector<KernelPair>& samples,
                     const QuadratureSpec& spec = {});

/// Deterministic sample pairs mixing points iλ and generic points of ℂ₊
/// with unit-norm complex vectors.
std::vector<KernelPair> default_sample_pairs(int dim, int count = 12, unsigned long long seed = 0);

/// Default Gram points: iλ for λ log-spaced in [0.1, 10] (n_axis points)
/// plus 1+i and −2+0.5i, each paired with every standard basis vector.
std::vector<KernelVector> default_gram_points(int dim, int n_axis = 6);

struct GramReport {
  Matrix matrix;
  double min_eig = 0.0;
  double max_eig = 0.0;
  std::vector<KernelVector> points;
};

using FormSource = std::variant<CarlesonMeasure, Symbol>;

/// Gram matrix G_jk = form(points[j], points[k]), Hermitized, with its spectrum.
GramReport gram_matrix(const FormSource& source, const std::vector<KernelVector>& points,
                       const QuadratureSpec& spec = {});

/// Reproducing-kernel Gram K_jk = ⟨Q_{ξ_j} v_j, Q_{ξ_k} v_k⟩ = Q_{ξ_k}(ξ_j)·⟨v_j, v_k⟩.
Matrix kernel_gram(const std::vector<KernelVector>& points);

/// Largest θ with G c = θ K c: a lower bound for ‖H_μ‖ from the span of the points.
double norm_lower_bound(const CarlesonMeasure& mu, const std::vector<KernelVector>& points,
                        const QuadratureSpec& spec = {});

/// Smallest θ with G c = θ K c, i.e. the minimum Rayleigh quotient of the
/// form over the span of the points.
double min_rayleigh(const Matrix& gram, const std::vector<KernelVector>& points);

enum class PositivityVerdict { certified_positive_at_resolution, certified_not_strict, inconclusive };

std::string to_string(PositivityVerdict v);

struct Evidence {
  std::string name;
  double value;
  double threshold;
};

struct PositivityReport {
  PositivityVerdict verdict = PositivityVerdict::inconclusive;
  std::string criterion;
  std::vector<Evidence> evidence;
  std::optional<double> witness_form;  // hardcoded witness for rank_one_fail
};

/// Strict positivity at grid resolution: a strictly positive density on a
/// grid sub-interval certifies H_μ > 0; a finitely supported pure-point
/// measure certifies H_μ ≯ 0; anything else is inconclusive.
PositivityReport strict_positivity_report(const CarlesonMeasure& mu, const std::vector<double>& grid,
                                          const QuadratureSpec& spec = {});

/// B(z) = Π_{λ≤1} (z − iλ)/(z + iλ) · Π_{λ>1} −(z − iλ)/(z + iλ).
Complex blaschke_witness(const std::vector<double>& zeros, Complex z);

/// f(z) = ((i/(i+z))², i/(i+z)), annihilated by the rank_one_fail measure.
HardySample rank_one_fail_witness();

}  // namespace hsl
