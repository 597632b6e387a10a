#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hsl/errors.hpp"

namespace hsl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

// ---------------------------------------------------------------------------
// Matrix predicates and norms

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol) {
  using Plain = typename Derived::PlainObject;
  return m.rows() == m.cols() &&
         max_abs(m * m.adjoint() - Plain::Identity(m.rows(), m.cols())) <= tol;
}

template <typename Derived>
bool is_projection(const Eigen::MatrixBase<Derived>& m, double tol) {
  return is_hermitian(m, tol) && max_abs(m * m - m) <= tol;
}

/// Entrywise complex conjugation in the standard basis.
template <typename Derived>
auto conjugation(const Eigen::MatrixBase<Derived>& m) {
  return m.conjugate().eval();
}

// ---------------------------------------------------------------------------
// Hermitian eigenproblem (cyclic complex Jacobi)

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

/// Full eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.
/// Throws NotHermitian when ‖M − M*‖ exceeds `hermitian_tol`·max(1, ‖M‖).
HermitianEigen hermitian_eigen(const Matrix& m, double hermitian_tol = 1e-10);

/// Ascending real spectrum of a Hermitian matrix.
RealVector hermitian_spectrum(const Matrix& m, double hermitian_tol = 1e-10);

/// Spectral (operator) norm, via the spectrum of M*M.
double spectral_norm(const Matrix& m);

// ---------------------------------------------------------------------------
// Quadrature

enum class HalflineMap {
  rational,       // λ = (1+u)/(1−u), u ∈ [−1, 1), split at u = 0
  split_inverse,  // λ = u² on [0,1], λ = 1/u² on [1,∞)
};

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_refinements = 4000;
  HalflineMap halfline_map = HalflineMap::split_inverse;
  int panel_points = 32;

  void validate() const;
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [−1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule; rules are computed once and cached.
const GaussLegendreRule& gauss_legendre(int n);

template <typename T>
struct QuadratureResult {
  T value;
  double error = 0.0;
  int refinements = 0;
};

namespace detail {

inline double value_norm(double v) { return std::abs(v); }
inline double value_norm(const Complex& v) { return std::abs(v); }
template <typename Derived>
double value_norm(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m);
}

inline Matrix to_matrix(double v) { return Matrix::Constant(1, 1, Complex(v)); }
inline Matrix to_matrix(const Complex& v) { return Matrix::Constant(1, 1, v); }
template <typename Derived>
Matrix to_matrix(const Eigen::MatrixBase<Derived>& m) {
  return m.template cast<Complex>();
}

template <typename T>
T pairwise_sum(std::span<const T> values) {
  if (values.size() == 1) return values[0];
  const std::size_t mid = values.size() / 2;
  T left = pairwise_sum(values.subspan(0, mid));
  left += pairwise_sum(values.subspan(mid));
  return left;
}

template <typename T, typename F>
T gauss_panel(const F& f, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  T acc = f(mid + half * rule.nodes[0]) * (half * rule.weights[0]);
  for (std::size_t k = 1; k < rule.nodes.size(); ++k) {
    acc += f(mid + half * rule.nodes[k]) * (half * rule.weights[k]);
  }
  return acc;
}

}  // namespace detail

/// A finite interval carrying its own (already mapped) integrand.
template <typename T>
struct Segment {
  std::function<T(double)> f;
  double a;
  double b;
};

/// Globally adaptive composite Gauss–Legendre over a set of segments.
/// Each panel is estimated by the sum of its two halves; the gap to the
/// whole-panel rule is the error estimate. The worst panel is bisected
/// until the summed gap is ≤ max(abs_tol, rel_tol·‖value‖).
template <typename T>
QuadratureResult<T> integrate_segments(const std::vector<Segment<T>>& segments,
                                       const QuadratureSpec& spec) {
  spec.validate();
  if (segments.empty()) throw DomainError("integrate_segments: no segments");
  const GaussLegendreRule& rule = gauss_legendre(spec.panel_points);

  struct Panel {
    std::size_t segment;
    double a, b;
    T value;
    double error;
  };
  auto make_panel = [&](std::size_t s, double a, double b) {
    const auto& f = segments[s].f;
    const double m = 0.5 * (a + b);
    T whole = detail::gauss_panel<T>(f, a, b, rule);
    T halves = detail::gauss_panel<T>(f, a, m, rule);
    halves += detail::gauss_panel<T>(f, m, b, rule);
    const double err = detail::value_norm(halves - whole);
    return Panel{s, a, b, std::move(halves), err};
  };

  std::vector<Panel> panels;
  constexpr int initial_split = 4;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const double a = segments[s].a;
    const double h = (segments[s].b - a) / initial_split;
    for (int k = 0; k < initial_split; ++k) {
      panels.push_back(make_panel(s, a + k * h, k + 1 == initial_split ? segments[s].b : a + (k + 1) * h));
    }
  }

  auto worse = [&](std::size_t l, std::size_t r) { return panels[l].error < panels[r].error; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
  for (std::size_t k = 0; k < panels.size(); ++k) queue.push(k);

  auto total = [&]() {
    std::vector<std::size_t> order(panels.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      return panels[l].segment != panels[r].segment ? panels[l].segment < panels[r].segment
                                                     : panels[l].a < panels[r].a;
    });
    std::vector<T> values;
    values.reserve(order.size());
    double err = 0.0;
    for (std::size_t k : order) {
      values.push_back(panels[k].value);
      err += panels[k].error;
    }
    return std::pair<T, double>{detail::pairwise_sum<T>(values), err};
  };

  int refinements = 0;
  double err_sum = 0.0;
  T running = panels[0].value;
  for (std::size_t k = 1; k < panels.size(); ++k) running += panels[k].value;
  for (const auto& p : panels) err_sum += p.error;

  while (true) {
    const double target = std::max(spec.abs_tol, spec.rel_tol * detail::value_norm(running));
    if (err_sum <= target) break;
    if (refinements >= spec.max_refinements) {
      auto [value, err] = total();
      throw NonConvergence("quadrature refinement budget exhausted", detail::to_matrix(value), err);
    }
    const std::size_t worst = queue.top();
    queue.pop();
    Panel old = std::move(panels[worst]);
    const double m = 0.5 * (old.a + old.b);
    panels[worst] = make_panel(old.segment, old.a, m);
    panels.push_back(make_panel(old.segment, m, old.b));
    queue.push(worst);
    queue.push(panels.size() - 1);
    running -= old.value;
    running += panels[worst].value;
    running += panels.back().value;
    err_sum += panels[worst].error + panels.back().error - old.error;
    ++refinements;
  }

  auto [value, err] = total();
  return {std::move(value), err, refinements};
}

/// ∫_a^b f with the smoothstep substitution x = a + (b−a)(3u² − 2u³),
/// which removes inverse-square-root endpoint behaviour.
template <typename T>
Segment<T> interval_segment(std::function<T(double)> f, double a, double b) {
  const double w = b - a;
  return {[f = std::move(f), a, w](double u) -> T {
            return f(a + w * u * u * (3.0 - 2.0 * u)) * (6.0 * w * u * (1.0 - u));
          },
          0.0, 1.0};
}

/// Segments for ∫_0^∞ f(λ) dλ under the chosen half-line map.
template <typename T>
std::vector<Segment<T>> halfline_segments(std::function<T(double)> f, HalflineMap map) {
  std::vector<Segment<T>> out;
  if (map == HalflineMap::split_inverse) {
    out.push_back({[f](double u) -> T { return f(u * u) * (2.0 * u); }, 0.0, 1.0});
    out.push_back({[f](double u) -> T {
                     const double u2 = u * u;
                     return f(1.0 / u2) * (2.0 / (u2 * u));
                   },
                   0.0, 1.0});
  } else {
    auto g = [f](double u) -> T {
      const double q = 1.0 - u;
      return f((1.0 + u) / q) * (2.0 / (q * q));
    };
    out.push_back({g, -1.0, 0.0});
    out.push_back({g, 0.0, 1.0});
  }
  return out;
}

template <typename T>
QuadratureResult<T> integrate_halfline_detailed(std::function<T(double)> f, const QuadratureSpec& spec) {
  return integrate_segments<T>(halfline_segments<T>(std::move(f), spec.halfline_map), spec);
}

/// ∫_{ℝ₊} f(λ) dλ.
template <typename T>
T integrate_halfline(std::function<T(double)> f, const QuadratureSpec& spec = {}) {
  return integrate_halfline_detailed<T>(std::move(f), spec).value;
}

/// ∫_a^b f(x) dx for finite a < b.
template <typename T>
T integrate_interval(std::function<T(double)> f, double a, double b, const QuadratureSpec& spec = {}) {
  if (!(a < b)) throw DomainError("integrate_interval: need a < b");
  return integrate_segments<T>({interval_segment<T>(std::move(f), a, b)}, spec).value;
}

/// ∫_ℝ f(x) dx, split at the declared singular points (x = 0 when none are
/// given). The two unbounded ends are integrated as half-lines, interior
/// gaps as finite intervals; no node ever lands on a declared point.
template <typename T>
QuadratureResult<T> integrate_realline_detailed(std::function<T(double)> f, const QuadratureSpec& spec,
                                                std::vector<double> singular_points = {}) {
  if (singular_points.empty()) singular_points.push_back(0.0);
  std::sort(singular_points.begin(), singular_points.end());
  singular_points.erase(std::unique(singular_points.begin(), singular_points.end()), singular_points.end());

  const double lo = singular_points.front();
  const double hi = singular_points.back();
  auto left = halfline_segments<T>([f, lo](double l) { return f(lo - l); }, spec.halfline_map);
  auto right = halfline_segments<T>([f, hi](double l) { return f(hi + l); }, spec.halfline_map);
  std::vector<Segment<T>> segments = std::move(left);
  for (std::size_t k = 0; k + 1 < singular_points.size(); ++k) {
    segments.push_back(interval_segment<T>(f, singular_points[k], singular_points[k + 1]));
  }
  for (auto& s : right) segments.push_back(std::move(s));
  return integrate_segments<T>(segments, spec);
}

template <typename T>
T integrate_realline(std::function<T(double)> f, const QuadratureSpec& spec = {},
                     std::vector<double> singular_points = {}) {
  return integrate_realline_detailed<T>(std::move(f), spec, std::move(singular_points)).value;
}

// ---------------------------------------------------------------------------
// Grids

/// n log-spaced points in [lo, hi], both ends included.
std::vector<double> log_grid(double lo, double hi, int n);

/// Log-spaced |x| grid mirrored to both signs: {−x_k} ∪ {x_k}, ascending.
std::vector<double> symmetric_log_grid(double lo, double hi, int n);

}  // namespace hsl
