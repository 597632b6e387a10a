#include "hsl/numerics.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace hsl {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw BadParams("quadrature tolerances must be positive");
  if (max_refinements < 1) throw BadParams("max_refinements must be >= 1");
  if (panel_points < 2) throw BadParams("panel_points must be >= 2");
}

namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

HermitianEigen hermitian_eigen(const Matrix& m, double hermitian_tol) {
  if (m.rows() != m.cols()) throw NotHermitian("hermitian_eigen: matrix is not square");
  const Eigen::Index n = m.rows();
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(m - m.adjoint()) > hermitian_tol * scale) {
    throw NotHermitian("hermitian_eigen: matrix fails the Hermitian symmetry check");
  }

  Matrix a = 0.5 * (m + m.adjoint());
  Matrix v = Matrix::Identity(n, n);
  const double frob = a.norm();
  constexpr int max_sweeps = 100;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off == 0.0 || std::sqrt(2.0 * off) <= 1e-16 * frob) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        const Complex phase = a(p, q) / apq;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // U = diag(1, conj(phase)) · [[c, s], [−s, c]]
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) { return a(l, l).real() < a(r, r).real(); });
  HermitianEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

RealVector hermitian_spectrum(const Matrix& m, double hermitian_tol) {
  return hermitian_eigen(m, hermitian_tol).values;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const RealVector ev = hermitian_spectrum(m.adjoint() * m, 1e-8);
  return std::sqrt(std::max(0.0, ev(ev.size() - 1)));
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw BadParams("log_grid: need 0 < lo <= hi and n >= 1");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = std::log(hi / lo) / (n - 1);
  for (int k = 0; k < n; ++k) out[k] = lo * std::exp(step * k);
  out.back() = hi;
  return out;
}

std::vector<double> symmetric_log_grid(double lo, double hi, int n) {
  const auto half = log_grid(lo, hi, n);
  std::vector<double> out;
  out.reserve(2 * half.size());
  for (auto it = half.rbegin(); it != half.rend(); ++it) out.push_back(-*it);
  for (double x : half) out.push_back(x);
  return out;
}

}  // namespace hsl
