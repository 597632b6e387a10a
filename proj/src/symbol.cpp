#include "hsl/symbol.hpp"

#include <algorithm>
#include <cmath>

#include "hsl/pick.hpp"

namespace hsl {

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : -1.0; }

CheckResult finish(double defect, double tol, std::size_t n) {
  return {defect <= tol ? FlagState::pass : FlagState::fail, defect, tol, n};
}

void require_grid(const std::vector<double>& grid) {
  for (double x : grid) {
    if (x == 0.0) throw DomainError("symbol grids must avoid x = 0");
  }
}

}  // namespace

Symbol::Symbol(int dim, Evaluator eval, std::string name)
    : dim_(dim), eval_(std::move(eval)), name_(std::move(name)) {
  if (dim_ < 1) throw BadParams("symbol dimension must be positive");
}

Matrix Symbol::operator()(double x) const {
  if (x == 0.0) throw DomainError("symbols are not evaluated at x = 0");
  return eval_(x);
}

void require_projection(const Matrix& p, double tol) {
  if (p.rows() != p.cols() || !is_projection(p, tol)) throw NotProjection("matrix is not an orthogonal projection");
}

ProjectionSpec::ProjectionSpec(Matrix p, Matrix c) : p_(std::move(p)), c_(std::move(c)) {
  require_projection(p_);
  if (c_.rows() != p_.rows() || c_.cols() != p_.cols()) throw DimensionMismatch("C must have the shape of p");
  const Matrix q = Matrix::Identity(p_.rows(), p_.cols()) - p_;
  const Matrix supported = p_ * c_ * q;
  if (max_abs(c_ - supported) > 1e-12) throw BadParams("C must satisfy C = p C (1-p)");
  c_ = supported;
}

ProjectionSpec::ProjectionSpec(Matrix p) : ProjectionSpec(p, Matrix::Zero(p.rows(), p.cols())) {}

Matrix example_c_block(double t) {
  const double a = std::sqrt((1.0 - t) / 2.0);
  const double b = std::sqrt(1.0 - t * t) / 2.0;
  Matrix c(2, 2);
  c << a, b, -b, a;
  return c;
}

ProjectionSpec example_projection(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw BadParams("example projection: t must lie in [0, 1]");
  Matrix p = Matrix::Zero(4, 4);
  p(0, 0) = p(1, 1) = 1.0;
  Matrix c = Matrix::Zero(4, 4);
  c.topRightCorner(2, 2) = example_c_block(t);
  return ProjectionSpec(std::move(p), std::move(c));
}

Symbol beta_symbol(const CarlesonMeasure& mu, const ProjectionSpec& ps, const QuadratureSpec& spec) {
  if (ps.dim() != mu.dim()) throw DimensionMismatch("beta_symbol: projection and measure dimensions differ");
  const int d = mu.dim();
  const Matrix p = ps.p();
  const Matrix q = Matrix::Identity(d, d) - p;
  const Matrix c = ps.c();
  return Symbol(
      d,
      [mu, p, q, c, spec](double x) -> Matrix {
        const PickEvaluation pe = pick_boundary(mu, x, spec);
        return I * (p * pe.i_value * p + q * pe.i_value * q) + c + p * pe.r_value * q + c.adjoint() +
               q * pe.r_value * p;
      },
      "beta");
}

double off_diagonal_r_sup(const CarlesonMeasure& mu, const Matrix& p, const std::vector<double>& x_grid,
                          const QuadratureSpec& spec) {
  require_projection(p);
  const Matrix q = Matrix::Identity(p.rows(), p.cols()) - p;
  double sup = 0.0;
  for (double x : x_grid) sup = std::max(sup, spectral_norm(p * pick_boundary(mu, x, spec).r_value * q));
  return sup;
}

InvolutionValues involutions(const Symbol& h, double x) {
  const Matrix mirrored = h(-x);
  return {conjugation(mirrored), mirrored.adjoint()};
}

CheckResult check_unitary(Symbol& h, const std::vector<double>& x_grid, double tol) {
  require_grid(x_grid);
  double defect = 0.0;
  const Matrix id = Matrix::Identity(h.dim(), h.dim());
  for (double x : x_grid) {
    const Matrix v = h(x);
    defect = std::max(defect, spectral_norm(v * v.adjoint() - id));
  }
  h.flags_.unitary_checked = finish(defect, tol, x_grid.size());
  return h.flags_.unitary_checked;
}

CheckResult check_sharp(Symbol& h, const std::vector<double>& x_grid, double tol) {
  require_grid(x_grid);
  double defect = 0.0;
  for (double x : x_grid) defect = std::max(defect, spectral_norm(involutions(h, x).sharp_val - h(x)));
  h.flags_.sharp_fixed = finish(defect, tol, x_grid.size());
  return h.flags_.sharp_fixed;
}

CheckResult check_flat(Symbol& h, const std::vector<double>& x_grid, double tol) {
  require_grid(x_grid);
  double defect = 0.0;
  for (double x : x_grid) defect = std::max(defect, spectral_norm(involutions(h, x).flat_val - h(x)));
  h.flags_.flat_fixed = finish(defect, tol, x_grid.size());
  return h.flags_.flat_fixed;
}

CheckResult projection_symmetry_check(const Symbol& h, const Matrix& p, const std::vector<double>& x_grid,
                                      double tol) {
  require_projection(p);
  require_grid(x_grid);
  if (p.rows() != h.dim()) throw DimensionMismatch("projection and symbol dimensions differ");
  const Matrix s = 2.0 * p - Matrix::Identity(p.rows(), p.cols());
  double defect = 0.0;
  for (double x : x_grid) {
    const Matrix hx = h(x);
    const Matrix adj = hx.adjoint();
    defect = std::max(defect, spectral_norm(h(-x) - adj));
    defect = std::max(defect, spectral_norm(adj + s * hx * s));
  }
  return finish(defect, tol, x_grid.size());
}

Matrix example_beta_closed(double t, double x) {
  if (x == 0.0) throw DomainError("example_beta_closed: x must be nonzero");
  const double ax = std::abs(x);
  const Complex diag = I * sgn(x) * (t + ax);
  const double a = std::sqrt(2.0 * (1.0 - t) * ax);
  const double b = std::sqrt(1.0 - t * t);
  Matrix m(4, 4);
  m << diag, 0.0, a, b,
       0.0, diag, -b, a,
       a, -b, diag, 0.0,
       b, a, 0.0, diag;
  return m / (1.0 + ax);
}

Symbol i_sgn_symbol(int dim) {
  return Symbol(dim, [dim](double x) -> Matrix { return (I * sgn(x)) * Matrix::Identity(dim, dim); }, "i_sgn");
}

Symbol builtin_symbol(std::string_view name, const std::vector<double>& params, int dim) {
  if (name == "i_sgn") {
    if (!params.empty()) throw BadParams("i_sgn takes no parameters");
    return i_sgn_symbol(dim);
  }
  if (name == "example_beta_closed") {
    if (params.size() != 1) throw BadParams("example_beta_closed expects [t]");
    if (dim != 4) throw BadParams("example_beta_closed requires dim 4");
    const double t = params[0];
    if (!(t >= 0.0 && t <= 1.0)) throw BadParams("example_beta_closed: t must lie in [0, 1]");
    return Symbol(4, [t](double x) { return example_beta_closed(t, x); }, "example_beta_closed");
  }
  throw UnknownSymbol("unknown symbol '" + std::string(name) + "'");
}

}  // namespace hsl
