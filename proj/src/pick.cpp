#include "hsl/pick.hpp"

#include <algorithm>
#include <cmath>

namespace hsl {

namespace {

void require_domain(Complex z) {
  if (on_excluded_ray(z)) throw DomainError("point lies on the excluded ray i(-inf, 0]");
}

// 1/(λ − iz) − λ/(1+λ²) over a common denominator.
Complex n_kernel(double lambda, Complex z) {
  return (1.0 + I * lambda * z) / ((lambda - I * z) * (1.0 + lambda * lambda));
}

// (λ+y)/((λ+y)²+x²) − λ/(1+λ²) over a common denominator.
double r_kernel(double lambda, double x, double y) {
  const double s = lambda + y;
  const double q = s * s + x * x;
  const double num = lambda + y - y * lambda * lambda - y * y * lambda - lambda * x * x;
  return num / (q * (1.0 + lambda * lambda));
}

double i_kernel(double lambda, double x, double y) {
  const double s = lambda + y;
  return x / (s * s + x * x);
}

}  // namespace

bool on_excluded_ray(Complex z) { return z.real() == 0.0 && z.imag() <= 0.0; }

Matrix pick_n(const CarlesonMeasure& mu, Complex z, const QuadratureSpec& spec) {
  require_domain(z);
  const Matrix m = moment(mu, [z](double l) { return n_kernel(l, z); }, spec);
  return m / pi;
}

PickEvaluation pick_parts(const CarlesonMeasure& mu, Complex z, const QuadratureSpec& spec) {
  require_domain(z);
  const double x = z.real();
  const double y = z.imag();
  const int d = mu.dim();

  // Both parts in one adaptive pass: [𝓡 | 𝓘] stacked side by side.
  Matrix stacked = Matrix::Zero(d, 2 * d);
  if (mu.density()) {
    const Density& rho = *mu.density();
    stacked += integrate_halfline<Matrix>(
        [&](double l) -> Matrix {
          const Matrix r = rho(l);
          Matrix out(d, 2 * d);
          out.leftCols(d) = r_kernel(l, x, y) * r;
          out.rightCols(d) = i_kernel(l, x, y) * r;
          return out;
        },
        spec);
  }
  for (const Atom& a : mu.atoms()) {
    stacked.leftCols(d) += r_kernel(a.location, x, y) * a.weight;
    stacked.rightCols(d) += i_kernel(a.location, x, y) * a.weight;
  }
  stacked /= pi;

  PickEvaluation out;
  out.z = z;
  out.r_value = 0.5 * (stacked.leftCols(d) + stacked.leftCols(d).adjoint());
  out.i_value = 0.5 * (stacked.rightCols(d) + stacked.rightCols(d).adjoint());
  out.n_value = out.r_value + I * out.i_value;
  return out;
}

PickEvaluation pick_boundary(const CarlesonMeasure& mu, double x, const QuadratureSpec& spec) {
  if (x == 0.0) throw DomainError("pick_boundary: x must be nonzero");
  return pick_parts(mu, Complex(x, 0.0), spec);
}

KappaBoundReport kappa_bound_check(const CarlesonMeasure& mu, double alpha, const std::vector<Complex>& z_grid,
                                   const QuadratureSpec& spec) {
  if (!(alpha >= 0.0)) throw BadParams("kappa_bound_check: alpha must be nonnegative");
  KappaBoundReport report;
  report.alpha = alpha;
  report.z_grid = z_grid;
  for (Complex z : z_grid) {
    if (z.imag() < 0.0 || z == Complex(0.0)) throw DomainError("kappa_bound_check: z must lie in C+ or R\\{0}");
    const PickEvaluation pe = pick_parts(mu, z, spec);
    const double ni = spectral_norm(pe.i_value);
    const double nr = spectral_norm(pe.r_value);
    const double i_bound = 2.0 * alpha;
    const double r_bound = (8.0 / pi) * alpha * std::abs(std::log(std::abs(z))) + alpha;
    auto ratio = [](double v, double bound) { return bound > 0.0 ? v / bound : (v > 0.0 ? INFINITY : 0.0); };
    report.max_i_ratio = std::max(report.max_i_ratio, ratio(ni, i_bound));
    report.max_r_ratio = std::max(report.max_r_ratio, ratio(nr, r_bound));
  }
  report.pass = report.max_i_ratio <= 1.0 + 1e-8 && report.max_r_ratio <= 1.0 + 1e-8;
  return report;
}

std::vector<Complex> kappa_grid(double lo, double hi, int n_modulus, const std::vector<double>& arguments) {
  std::vector<Complex> out;
  for (double arg : arguments) {
    if (std::abs(arg + pi / 2) < 1e-3) continue;
    for (double r : log_grid(lo, hi, n_modulus)) out.push_back(std::polar(r, arg));
  }
  return out;
}

}  // namespace hsl
