#include "hsl/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include <unsupported/Eigen/FFT>

#include "hsl/hankel.hpp"

namespace hsl {

Grid::Grid(int n, double x_max) : n_(n), x_max_(x_max) {
  if (n_ < 2 || n_ % 2 != 0) throw BadGridSize("grid size must be even and >= 2");
  if (!(x_max_ > 0.0)) throw BadParams("grid x_max must be positive");
  spacing_ = 2.0 * x_max_ / n_;
  nodes_.resize(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_ / 2; ++k) {
    const double x = (k + 0.5 - n_ / 2.0) * spacing_;
    nodes_[static_cast<std::size_t>(k)] = x;
    nodes_[static_cast<std::size_t>(n_ - 1 - k)] = -x;
  }
}

double GridField::norm() const { return std::sqrt(values.squaredNorm() * grid.spacing()); }

Complex inner(const GridField& f, const GridField& g) {
  if (f.values.rows() != g.values.rows() || f.values.cols() != g.values.cols()) {
    throw DimensionMismatch("inner: field shapes differ");
  }
  return (f.values.conjugate().cwiseProduct(g.values)).sum() * f.grid.spacing();
}

double sharp_defect(const GridField& f) {
  const int n = f.grid.size();
  double defect = 0.0;
  for (int k = 0; k < n; ++k) {
    defect = std::max(defect, (f.values.row(f.grid.mirror(k)) - f.values.row(k).conjugate()).norm());
  }
  return defect;
}

GridField with_sharp_flag(GridField f, double tol) {
  f.sharp = sharp_defect(f) <= tol * std::max(1.0, max_abs(f.values));
  return f;
}

GridField sharp_symmetrize(const GridField& f) {
  GridField out = f;
  const int n = f.grid.size();
  for (int k = 0; k < n; ++k) {
    out.values.row(k) = 0.5 * (f.values.row(k) + f.values.row(f.grid.mirror(k)).conjugate());
  }
  out.sharp = true;
  return out;
}

GridField apply_S(double t, const GridField& f) {
  GridField out = f;
  for (int k = 0; k < f.grid.size(); ++k) out.values.row(k) *= std::exp(I * (t * f.grid.node(k)));
  return with_sharp_flag(std::move(out));
}

GridField apply_theta(const Symbol& h, const GridField& f) {
  if (h.dim() != f.dim()) throw DimensionMismatch("apply_theta: symbol and field dimensions differ");
  GridField out = f;
  for (int k = 0; k < f.grid.size(); ++k) {
    out.values.row(k) = (h(f.grid.node(k)) * f.values.row(f.grid.mirror(k)).transpose()).transpose();
  }
  return with_sharp_flag(std::move(out), 1e-10);
}

GridField apply_Pplus(const GridField& f) {
  const int n = f.grid.size();
  if ((n & (n - 1)) != 0) throw BadGridSize("apply_Pplus: grid size must be a power of two");
  // Position nodes s_m = (m + c)·2π/(nΔ) with c = 1/2 − n/2; the kernel
  // e^{−i x_k s_m} factors into a DFT between two diagonal phases, and the
  // outer phase commutes with the half-grid mask.
  const double c = 0.5 - n / 2.0;
  Eigen::FFT<double> fft;
  std::vector<Complex> in(static_cast<std::size_t>(n)), spectrum, back;
  GridField out = f;
  for (Eigen::Index col = 0; col < f.values.cols(); ++col) {
    for (int k = 0; k < n; ++k) in[k] = f.values(k, col) * std::exp(-2.0 * pi * I * (c * k / n));
    fft.fwd(spectrum, in);
    for (int m = 0; m < n / 2; ++m) spectrum[m] = 0.0;
    fft.inv(back, spectrum);
    for (int k = 0; k < n; ++k) out.values(k, col) = back[k] * std::exp(2.0 * pi * I * (c * k / n));
  }
  return with_sharp_flag(std::move(out), 1e-10);
}

GridField sample(const Grid& grid, const std::function<Complex(double)>& g, const Vector& v) {
  GridField out{grid, Matrix(grid.size(), v.size()), false};
  for (int k = 0; k < grid.size(); ++k) out.values.row(k) = g(grid.node(k)) * v.transpose();
  return with_sharp_flag(std::move(out));
}

GridField random_hardy_field(const Grid& grid, int dim, std::uint64_t seed) {
  // Σ_j Q_{ξ_j}(x)^4·c_j with complex Gaussian c_j ∈ ℂᵈ and random ξ_j ∈ ℂ₊.
  // In position space each term is s³e^{iξs} on s > 0: smooth across the
  // Hardy cutoff, with a truncation tail of order x_max^{-7/2}.
  constexpr int terms = 4;
  constexpr int power = 4;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  GridField f{grid, Matrix::Zero(grid.size(), dim), false};
  for (int j = 0; j < terms; ++j) {
    const Complex xi(-2.0 + 4.0 * unit(rng), 0.5 + 1.5 * unit(rng));
    Vector c(dim);
    for (int i = 0; i < dim; ++i) c(i) = Complex(normal(rng), normal(rng));
    for (int k = 0; k < grid.size(); ++k) {
      const Complex q = std::pow(szego_eval(xi, Complex(grid.node(k), 0.0)), power);
      f.values.row(k) += q * c.transpose();
    }
  }
  return apply_Pplus(sharp_symmetrize(f));
}

namespace {

double relative(const GridField& residual, double scale) { return scale > 0.0 ? residual.norm() / scale : 0.0; }

GridField minus(const GridField& a, const GridField& b) {
  GridField out = a;
  out.values -= b.values;
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  // splitmix64 step keeps per-trial streams independent of the trial count.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// h sampled once on the grid nodes; off-grid arguments fall through to h.
Symbol tabulate(const Symbol& h, const Grid& grid) {
  auto table = std::make_shared<std::vector<Matrix>>();
  for (int k = 0; k < grid.size(); ++k) table->push_back(h(grid.node(k)));
  return Symbol(
      h.dim(),
      [h, table, grid](double x) -> Matrix {
        const long k = std::lround(x / grid.spacing() + grid.size() / 2.0 - 0.5);
        if (k >= 0 && k < grid.size() && grid.node(static_cast<int>(k)) == x) return (*table)[static_cast<std::size_t>(k)];
        return h(x);
      },
      h.name());
}

}  // namespace

QuadrupleReport quadruple_checks(const Symbol& symbol, const std::vector<double>& t_list, const Grid& grid, int trials,
                                 std::uint64_t seed) {
  if (trials < 1) throw BadParams("quadruple_checks: trials must be >= 1");
  const Symbol h = tabulate(symbol, grid);
  QuadrupleReport report;
  report.trials = trials;
  report.seed = seed;
  report.rp_min = INFINITY;

  std::vector<double> decay_ts;
  for (double t : t_list) {
    if (t >= 0.0) decay_ts.push_back(t);
  }
  std::sort(decay_ts.begin(), decay_ts.end());
  decay_ts.erase(std::unique(decay_ts.begin(), decay_ts.end()), decay_ts.end());
  for (double t : decay_ts) report.decay.push_back({t, 0.0});

  for (int trial = 0; trial < trials; ++trial) {
    const GridField f = random_hardy_field(grid, h.dim(), trial_seed(seed, trial));
    const double nf = f.norm();
    const GridField tf = apply_theta(h, f);

    report.involution_residual = std::max(report.involution_residual, relative(minus(apply_theta(h, tf), f), nf));
    report.rp_min = std::min(report.rp_min, inner(f, tf).real() / (nf * nf));
    const double scale = max_abs(f.values);
    report.sharp_stability =
        std::max({report.sharp_stability, sharp_defect(tf) / scale, sharp_defect(apply_Pplus(f)) / scale});

    for (double t : t_list) {
      const GridField lhs = apply_theta(h, apply_S(t, f));
      const GridField rhs = apply_S(-t, tf);
      report.commutation_residual = std::max(report.commutation_residual, relative(minus(lhs, rhs), nf));
      if (t >= 0.0) {
        const GridField moved = apply_S(t, f);
        report.monotonicity_residual =
            std::max(report.monotonicity_residual, relative(minus(moved, apply_Pplus(moved)), nf));
      }
    }
    for (DecayPoint& p : report.decay) {
      p.norm = std::max(p.norm, relative(apply_Pplus(apply_S(-p.t, f)), nf));
    }
  }

  report.decay_monotone = report.decay.size() >= 2 && report.decay.back().norm < report.decay.front().norm;
  for (std::size_t k = 1; k < report.decay.size(); ++k) {
    if (report.decay[k].norm > report.decay[k - 1].norm + 1e-9) report.decay_monotone = false;
  }
  return report;
}

DiscretizationBudget discretization_budget(const Grid& grid, int power) {
  if (power < 1) throw BadParams("discretization_budget: power must be >= 1");
  const Vector e1 = Vector::Unit(1, 0);
  auto q = [power](double x) { return std::pow(szego_eval(I, Complex(x, 0.0)), power); };
  const GridField f = sample(grid, q, e1);
  const GridField g = sample(grid, [&](double x) { return std::conj(q(x)); }, e1);
  return {relative(minus(apply_Pplus(f), f), f.norm()), relative(apply_Pplus(g), g.norm())};
}

}  // namespace hsl
