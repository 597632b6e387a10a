#include "hsl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hsl {

namespace {

void require_params(std::string_view name, const std::vector<double>& params, std::size_t n) {
  if (params.size() != n) {
    std::ostringstream msg;
    msg << name << ": expected " << n << " parameter(s), got " << params.size();
    throw BadParams(msg.str());
  }
}

void require_dim(std::string_view name, int dim, int expected) {
  if (dim != expected) {
    std::ostringstream msg;
    msg << name << ": requires dim " << expected << ", got " << dim;
    throw BadParams(msg.str());
  }
}

double min_eigenvalue(const Matrix& m) { return hermitian_spectrum(m, 1e-10)(0); }

}  // namespace

Matrix example_density(double t, double lambda) {
  const double scale = 2.0 / (1.0 + lambda * lambda);
  const double a = scale * (t + lambda * lambda);
  const double diag = scale * std::sqrt((1.0 - t) * lambda) * (lambda - 1.0);
  const double off = scale * std::sqrt(1.0 - t * t) * lambda;

  Eigen::Matrix2cd b;
  b << diag, -off, off, diag;
  Matrix rho = Matrix::Zero(4, 4);
  rho.topLeftCorner(2, 2) = a * Eigen::Matrix2cd::Identity();
  rho.bottomRightCorner(2, 2) = a * Eigen::Matrix2cd::Identity();
  rho.topRightCorner(2, 2) = b.adjoint();
  rho.bottomLeftCorner(2, 2) = b;
  return rho;
}

Density make_density(std::string_view name, std::vector<double> params, int dim) {
  if (dim < 1) throw BadParams("density dimension must be positive");
  Density d{std::string(name), params, dim, {}};

  if (name == "lebesgue2") {
    require_params(name, params, 0);
    d.evaluator = [dim](double) -> Matrix { return 2.0 * Matrix::Identity(dim, dim); };
  } else if (name == "example_t") {
    require_params(name, params, 1);
    require_dim(name, dim, 4);
    const double t = params[0];
    if (!(t >= 0.0 && t <= 1.0)) throw BadParams("example_t: t must lie in [0, 1]");
    d.evaluator = [t](double lambda) { return example_density(t, lambda); };
  } else if (name == "rank_one_fail") {
    require_params(name, params, 0);
    require_dim(name, dim, 2);
    d.evaluator = [](double lambda) -> Matrix {
      Vector v(2);
      v << 1.0, -1.0 / (1.0 + lambda);
      return v * v.adjoint();
    };
  } else if (name == "block_chi") {
    require_params(name, params, 0);
    require_dim(name, dim, 2);
    d.evaluator = [](double lambda) -> Matrix {
      Matrix m = Matrix::Zero(2, 2);
      if (lambda < 1.0) {
        m(0, 0) = 1.0;
      } else {
        m(1, 1) = 1.0;
      }
      return m;
    };
  } else {
    throw UnknownDensity("unknown density '" + std::string(name) + "'");
  }
  return d;
}

CarlesonMeasure::CarlesonMeasure(int dim, std::optional<Density> density, std::vector<Atom> atoms)
    : dim_(dim), density_(std::move(density)), atoms_(std::move(atoms)) {
  if (dim_ < 1) throw BadParams("measure dimension must be positive");

  if (density_) {
    if (density_->dim != dim_) throw DimensionMismatch("density dimension differs from measure dimension");
    for (double lambda : log_grid(1e-3, 1e3, 64)) {
      const Matrix rho = (*density_)(lambda);
      if (!is_hermitian(rho, 1e-10) || min_eigenvalue(rho) < -psd_tol) {
        std::ostringstream msg;
        msg << "density '" << density_->name << "' is not positive semidefinite at lambda=" << lambda;
        throw BadParams(msg.str());
      }
    }
  }

  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& l, const Atom& r) { return l.location < r.location; });
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const Atom& a = atoms_[k];
    if (!(a.location > 0.0) || !std::isfinite(a.location)) throw BadParams("atom locations must be positive");
    if (k > 0 && atoms_[k - 1].location == a.location) throw BadParams("atom locations must be distinct");
    if (a.weight.rows() != dim_ || a.weight.cols() != dim_) {
      throw DimensionMismatch("atom weight dimension differs from measure dimension");
    }
    if (!is_hermitian(a.weight, 1e-10) || min_eigenvalue(a.weight) < -psd_tol) {
      throw BadParams("atom weights must be Hermitian positive semidefinite");
    }
  }
}

CarlesonMeasure builtin_measure(std::string_view name, const std::vector<double>& params, int dim) {
  if (name == "atoms") {
    if (dim < 1) throw BadParams("atoms: dimension must be positive");
    if (params.empty()) throw BadParams("atoms: at least one location required");
    std::vector<Atom> atoms;
    for (double loc : params) atoms.push_back({loc, Matrix::Identity(dim, dim)});
    return CarlesonMeasure(dim, std::nullopt, std::move(atoms));
  }
  return CarlesonMeasure(dim, make_density(name, params, dim));
}

Matrix moment(const CarlesonMeasure& mu, const std::function<Complex(double)>& g, const QuadratureSpec& spec) {
  Matrix out = Matrix::Zero(mu.dim(), mu.dim());
  if (mu.density()) {
    const Density& rho = *mu.density();
    out += integrate_halfline<Matrix>([&](double l) -> Matrix { return g(l) * rho(l); }, spec);
  }
  for (const Atom& a : mu.atoms()) out += g(a.location) * a.weight;
  return out;
}

Matrix sandwich_moment(const CarlesonMeasure& mu, const std::function<Matrix(double)>& left,
                       const std::function<Matrix(double)>& right, const QuadratureSpec& spec) {
  Matrix out;
  if (mu.density()) {
    const Density& rho = *mu.density();
    out = integrate_halfline<Matrix>(
        [&](double l) -> Matrix { return left(l).adjoint() * rho(l) * right(l); }, spec);
  }
  for (const Atom& a : mu.atoms()) {
    Matrix term = left(a.location).adjoint() * a.weight * right(a.location);
    if (out.size() == 0) {
      out = std::move(term);
    } else {
      out += term;
    }
  }
  if (out.size() == 0) {
    // Zero measure: shape follows the sandwich factors.
    const Matrix l = left(1.0), r = right(1.0);
    out = Matrix::Zero(l.cols(), r.cols());
  }
  return out;
}

CarlesonRatioReport carleson_ratio_check(const CarlesonMeasure& mu, const std::vector<double>& x_grid,
                                         const QuadratureSpec& spec) {
  CarlesonRatioReport report;
  report.x_grid = x_grid;
  for (double x : x_grid) {
    if (!(x > 0.0)) throw DomainError("carleson_ratio_check: grid points must be positive");
    Matrix low = Matrix::Zero(mu.dim(), mu.dim());
    Matrix high = Matrix::Zero(mu.dim(), mu.dim());
    if (mu.density()) {
      const Density& rho = *mu.density();
      auto weighted = [&](double l) -> Matrix { return rho(l) / (1.0 + l * l); };
      low += integrate_interval<Matrix>(weighted, 0.0, x, spec);
      const double start = 1.0 / x;
      high += integrate_halfline<Matrix>([&](double l) { return weighted(start + l); }, spec);
    }
    for (const Atom& a : mu.atoms()) {
      const double w = 1.0 / (1.0 + a.location * a.location);
      if (a.location <= x) low += w * a.weight;
      if (a.location >= 1.0 / x) high += w * a.weight;
    }
    const double rl = spectral_norm(low) / x;
    const double rh = spectral_norm(high) / x;
    report.ratio_low.push_back(rl);
    report.ratio_high.push_back(rh);
    report.max_ratio_low = std::max(report.max_ratio_low, rl);
    report.max_ratio_high = std::max(report.max_ratio_high, rh);
  }
  return report;
}

}  // namespace hsl
