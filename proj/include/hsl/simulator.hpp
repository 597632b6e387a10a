#pragma once

#include <cstdint>
#include <vector>

#include "hsl/symbol.hpp"

namespace hsl {

/// Symmetric momentum grid x_k = (k + 1/2 − n/2)·Δ, Δ = 2·x_max/n. There is
/// no node at 0 and x_{n−1−k} = −x_k exactly.
class Grid {
 public:
  Grid(int n, double x_max);

  int size() const noexcept { return n_; }
  double x_max() const noexcept { return x_max_; }
  double spacing() const noexcept { return spacing_; }
  double node(int k) const noexcept { return nodes_[static_cast<std::size_t>(k)]; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  int mirror(int k) const noexcept { return n_ - 1 - k; }

 private:
  int n_;
  double x_max_;
  double spacing_;
  std::vector<double> nodes_;
};

/// Samples of a ℂᵈ-valued function on a Grid (n × d, row k holds f(x_k)).
struct GridField {
  Grid grid;
  Matrix values;
  bool sharp = false;

  int dim() const noexcept { return static_cast<int>(values.cols()); }

  /// L² norm with the grid spacing as quadrature weight.
  double norm() const;
};

/// ⟨f, g⟩ = Σ_k ⟨f(x_k), g(x_k)⟩ Δ.
Complex inner(const GridField& f, const GridField& g);

/// max_k ‖f(x_{n−1−k}) − conj(f(x_k))‖.
double sharp_defect(const GridField& f);

/// Recomputes the sharp flag against `tol`.
GridField with_sharp_flag(GridField f, double tol = 1e-12);

/// (f + f^♯)/2 where f^♯(x) = conj(f(−x)).
GridField sharp_symmetrize(const GridField& f);

/// (S_t f)(x) = e^{itx} f(x).
GridField apply_S(double t, const GridField& f);

/// (θ_h f)(x) = h(x) f(−x) on the exact mirror node.
GridField apply_theta(const Symbol& h, const GridField& f);

/// Orthogonal projection onto the discrete Hardy space: transform to the
/// (half-offset) position grid, keep the positive half, transform back.
/// Requires n to be a power of two.
GridField apply_Pplus(const GridField& f);

/// Samples x ↦ g(x)·v on the grid.
GridField sample(const Grid& grid, const std::function<Complex(double)>& g, const Vector& v);

struct DecayPoint {
  double t;
  double norm;  // max over trials of ‖P₊ S_{−t} f‖/‖f‖
};

struct QuadrupleReport {
  double commutation_residual = 0.0;  // max ‖θ S_t f − S_{−t} θ f‖/‖f‖
  double involution_residual = 0.0;   // max ‖θ² f − f‖/‖f‖
  double rp_min = 0.0;                // min Re⟨f, θ f⟩/‖f‖² over P₊-projected trials
  double monotonicity_residual = 0.0; // max ‖(1 − P₊) S_t f‖/‖f‖, t ≥ 0, f ∈ ran P₊
  double sharp_stability = 0.0;       // max sharp defect of θf and P₊f relative to max|f|
  std::vector<DecayPoint> decay;      // outgoing trend over the t list
  bool decay_monotone = false;
  int trials = 0;
  std::uint64_t seed = 0;
};

/// Seeded random ♯-symmetric Hardy-projected trial field.
GridField random_hardy_field(const Grid& grid, int dim, std::uint64_t seed);

/// Residual checks of the quadruple relations on random trial fields.
QuadrupleReport quadruple_checks(const Symbol& h, const std::vector<double>& t_list, const Grid& grid, int trials,
                                 std::uint64_t seed = 0);

/// ‖P₊f − f‖/‖f‖ for f = Q_i^power·e₁ and ‖P₊g‖/‖g‖ for g = conj(f): the
/// truncation budget ε(n, x_max) of the grid. For power 1 it decays like
/// x_max^{-1/2}; power 2 decays at least first order.
struct DiscretizationBudget {
  double hardy_residual;
  double antihardy_residual;
};

DiscretizationBudget discretization_budget(const Grid& grid, int power = 1);

}  // namespace hsl
