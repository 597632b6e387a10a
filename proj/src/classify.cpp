#include "hsl/classify.hpp"

#include <algorithm>
#include <cmath>

namespace hsl {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::invalid_symbol:
      return "invalid_symbol";
    case Verdict::rp_only:
      return "rp_only";
    case Verdict::standard:
      return "standard";
    case Verdict::borchers:
      return "borchers";
  }
  return "invalid_symbol";
}

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : -1.0; }

void push(std::vector<Evidence>& out, const std::string& name, const CheckResult& r) {
  out.push_back({name, r.max_defect, r.tol});
}

}  // namespace

ComplexStructureReport induced_complex_structure(const Symbol& h, const Matrix& p, const std::vector<double>& x_grid,
                                                 bool check_borchers) {
  require_projection(p);
  if (p.rows() != h.dim()) throw DimensionMismatch("projection and symbol dimensions differ");
  const Matrix id = Matrix::Identity(p.rows(), p.cols());
  const Matrix s = 2.0 * p - id;

  ComplexStructureReport report;
  report.structure = Symbol(h.dim(), [h, s](double x) -> Matrix { return h(x) * s; }, "complex_structure");
  for (double x : x_grid) {
    const Matrix ix = (*report.structure)(x);
    report.square_defect = std::max(report.square_defect, spectral_norm(ix * ix + id));
  }
  if (check_borchers) {
    double defect = 0.0;
    for (double x : x_grid) defect = std::max(defect, spectral_norm((*report.structure)(x) - I * sgn(x) * s));
    report.borchers_defect = defect;
  }
  return report;
}

Classification classify(const Symbol& h_in, const Matrix& p, const std::optional<CarlesonMeasure>& mu,
                        const std::vector<double>& x_grid, const ClassifyOptions& options) {
  require_projection(p);
  if (p.rows() != h_in.dim()) throw DimensionMismatch("projection and symbol dimensions differ");
  if (mu && mu->dim() != h_in.dim()) throw DimensionMismatch("measure and symbol dimensions differ");
  const double tol = options.tol;

  Symbol h = h_in;
  Classification out;

  // (1) Reflection-positivity prerequisites on the symbol itself.
  const CheckResult unitary = check_unitary(h, x_grid, tol);
  const CheckResult sharp = check_sharp(h, x_grid, tol);
  const CheckResult flat = check_flat(h, x_grid, tol);
  push(out.evidence, "unitary_defect", unitary);
  push(out.evidence, "sharp_defect", sharp);
  push(out.evidence, "flat_defect", flat);
  if (!unitary.passed() || !sharp.passed() || !flat.passed()) {
    out.verdict = Verdict::invalid_symbol;
    return out;
  }

  // H_h ≥ 0 evidence: smallest Rayleigh quotient over the Gram span.
  const std::vector<KernelVector> points = options.points.empty() ? default_gram_points(h.dim()) : options.points;
  const GramReport gram = mu ? gram_matrix(*mu, points, options.quadrature) : gram_matrix(h, points, options.quadrature);
  out.gram_min_eig = min_rayleigh(gram.matrix, points);
  out.evidence.push_back({"gram_min_rayleigh", out.gram_min_eig, tol});
  out.evidence.push_back({"gram_min_eig", gram.min_eig, 0.0});
  if (out.gram_min_eig < -tol) {
    // θ_h is not reflection positive on H²: not even an rp quadruple.
    out.verdict = Verdict::invalid_symbol;
    return out;
  }

  // (2) Standard: projection symmetry and strict positivity at resolution.
  const CheckResult symmetry = projection_symmetry_check(h, p, x_grid, tol);
  push(out.evidence, "projection_symmetry_defect", symmetry);
  if (!symmetry.passed() || !(out.gram_min_eig > tol)) {
    out.verdict = Verdict::rp_only;
    return out;
  }
  out.verdict = Verdict::standard;
  const ComplexStructureReport cs = induced_complex_structure(h, p, x_grid);
  out.complex_structure = cs.structure;
  out.evidence.push_back({"complex_structure_square_defect", cs.square_defect, tol});

  // (3) Borchers-type: h = i·sgn·1.
  double defect = 0.0;
  const Matrix id = Matrix::Identity(h.dim(), h.dim());
  for (double x : x_grid) defect = std::max(defect, spectral_norm(h(x) - I * sgn(x) * id));
  out.evidence.push_back({"borchers_defect", defect, tol});
  if (defect <= tol) out.verdict = Verdict::borchers;
  return out;
}

}  // namespace hsl
