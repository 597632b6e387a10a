#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hsl/measure.hpp"

namespace hsl {

enum class FlagState { unknown, pass, fail };

/// Outcome of one grid check, with the grid size and tolerance that produced it.
struct CheckResult {
  FlagState state = FlagState::unknown;
  double max_defect = 0.0;
  double tol = 0.0;
  std::size_t grid_points = 0;

  bool passed() const noexcept { return state == FlagState::pass; }
};

struct SymbolFlags {
  CheckResult unitary_checked;
  CheckResult sharp_fixed;
  CheckResult flat_fixed;
};

/// A matrix-valued function on ℝ∖{0}. Evaluation is a pure closure; the
/// flags are metadata written only by the check functions below.
class Symbol {
 public:
  using Evaluator = std::function<Matrix(double)>;

  Symbol(int dim, Evaluator eval, std::string name = "custom");

  int dim() const noexcept { return dim_; }
  const std::string& name() const noexcept { return name_; }
  const SymbolFlags& flags() const noexcept { return flags_; }

  /// Throws DomainError at x = 0.
  Matrix operator()(double x) const;

 private:
  friend CheckResult check_unitary(Symbol&, const std::vector<double>&, double);
  friend CheckResult check_sharp(Symbol&, const std::vector<double>&, double);
  friend CheckResult check_flat(Symbol&, const std::vector<double>&, double);

  int dim_;
  Evaluator eval_;
  std::string name_;
  SymbolFlags flags_;
};

/// An orthogonal projection p together with C : (1−p)ℂᵈ → pℂᵈ stored as
/// a d×d matrix with C = p·C·(1−p).
class ProjectionSpec {
 public:
  ProjectionSpec(Matrix p, Matrix c);
  explicit ProjectionSpec(Matrix p);

  const Matrix& p() const noexcept { return p_; }
  const Matrix& c() const noexcept { return c_; }
  int dim() const noexcept { return static_cast<int>(p_.rows()); }

 private:
  Matrix p_;
  Matrix c_;
};

/// Throws NotProjection unless p = p* = p² within 1e-12.
void require_projection(const Matrix& p, double tol = 1e-12);

/// 2×2 block C_t of the example family as it enters the top-right block
/// p·C·(1−p) of β.
Matrix example_c_block(double t);

/// p = diag(1, 1, 0, 0) with the example's C in its top-right block.
ProjectionSpec example_projection(double t);

/// β(μ, p, C)(x) = i p𝓘p + i(1−p)𝓘(1−p) + C + p𝓡(1−p) + C* + (1−p)𝓡p.
/// Boundedness of p𝓡(1−p) is the caller's responsibility.
Symbol beta_symbol(const CarlesonMeasure& mu, const ProjectionSpec& ps, const QuadratureSpec& spec = {});

/// sup over the grid of ‖p𝓡(x)(1−p)‖: empirical evidence for boundedness.
double off_diagonal_r_sup(const CarlesonMeasure& mu, const Matrix& p, const std::vector<double>& x_grid,
                          const QuadratureSpec& spec = {});

struct InvolutionValues {
  Matrix sharp_val;  // conj(h(−x)) entrywise
  Matrix flat_val;   // h(−x)*
};

InvolutionValues involutions(const Symbol& h, double x);

CheckResult check_unitary(Symbol& h, const std::vector<double>& x_grid, double tol);
CheckResult check_sharp(Symbol& h, const std::vector<double>& x_grid, double tol);
CheckResult check_flat(Symbol& h, const std::vector<double>& x_grid, double tol);

/// h(−x) = h(x)* = −(2p−1)h(x)(2p−1) on the grid.
CheckResult projection_symmetry_check(const Symbol& h, const Matrix& p, const std::vector<double>& x_grid,
                                      double tol);

/// Built-ins: i_sgn (params empty, any dim) and example_beta_closed
/// (params [t], dim 4).
Symbol builtin_symbol(std::string_view name, const std::vector<double>& params, int dim);

/// Closed form of β(μ_t, p, C_t)(x).
Matrix example_beta_closed(double t, double x);

/// i·sgn(x)·1_d.
Symbol i_sgn_symbol(int dim);

}  // namespace hsl
