#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsl/hankel.hpp"
#include "hsl/symbol.hpp"

namespace hsl {

enum class Verdict { invalid_symbol, rp_only, standard, borchers };

std::string to_string(Verdict v);

struct ClassifyOptions {
  double tol = 1e-8;                 // algebraic checks and the Gram positivity threshold
  std::vector<KernelVector> points;  // Gram points; default_gram_points(dim) when empty
  QuadratureSpec quadrature;
};

struct ComplexStructureReport {
  std::optional<Symbol> structure;  // I(x) = h(x)(2p − 1)
  double square_defect = 0.0;       // max ‖I(x)² + 1‖
  std::optional<double> borchers_defect;  // max ‖I(x) − i·sgn(x)(2p − 1)‖
};

struct Classification {
  Verdict verdict = Verdict::invalid_symbol;
  std::vector<Evidence> evidence;
  std::optional<Symbol> complex_structure;
  double gram_min_eig = 0.0;  // smallest Rayleigh quotient of the Hankel form over the Gram span

  bool is_standard() const noexcept { return verdict == Verdict::standard || verdict == Verdict::borchers; }
};

/// Places (L²(ℝ,ℂᵈ)^♯, H²^♯, S, θ_h) in the hierarchy at grid resolution:
/// (1) unitary, ♯ and ♭ fixed, otherwise invalid_symbol; (2) projection
/// symmetry with p and strictly positive Gram evidence make it standard,
/// a merely nonnegative Gram gives rp_only; (3) a standard h equal to
/// i·sgn·1 on the grid is Borchers-type. Positivity evidence comes from the
/// measure form when μ is supplied, otherwise from the symbol form.
Classification classify(const Symbol& h, const Matrix& p, const std::optional<CarlesonMeasure>& mu,
                        const std::vector<double>& x_grid, const ClassifyOptions& options = {});

ComplexStructureReport induced_complex_structure(const Symbol& h, const Matrix& p, const std::vector<double>& x_grid,
                                                 bool check_borchers = false);

}  // namespace hsl
