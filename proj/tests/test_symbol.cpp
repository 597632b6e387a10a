#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hsl/pick.hpp"
#include "hsl/symbol.hpp"

using namespace hsl;

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : -1.0; }

Matrix diag2(double a, double b) {
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = a;
  p(1, 1) = b;
  return p;
}

Matrix upper_right(double c) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = c;
  return m;
}

std::vector<double> random_xs(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u;
  std::vector<double> xs;
  for (int k = 0; k < n; ++k) xs.push_back((u(rng) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, -2.0 + 4.0 * u(rng)));
  return xs;
}

struct BetaCase {
  CarlesonMeasure mu;
  ProjectionSpec ps;
};

std::vector<BetaCase> beta_cases() {
  std::vector<BetaCase> out{
      {builtin_measure("lebesgue2", {}, 2), ProjectionSpec(diag2(1, 0), upper_right(0.3))},
      {builtin_measure("rank_one_fail", {}, 2), ProjectionSpec(diag2(1, 0), upper_right(-0.2))},
      {builtin_measure("block_chi", {}, 2), ProjectionSpec(diag2(0, 1))},
      {builtin_measure("atoms", {0.5, 2.0}, 2), ProjectionSpec(diag2(1, 0), upper_right(1.0))},
  };
  for (double t : {0.4, 0.5, 0.75, 1.0}) out.push_back({builtin_measure("example_t", {t}, 4), example_projection(t)});
  return out;
}

}  // namespace

TEST_CASE("projection spec invariants") {
  CHECK_NOTHROW(ProjectionSpec(diag2(1, 0), upper_right(2.0)));
  CHECK_THROWS_AS(ProjectionSpec(diag2(2, 0)), NotProjection);
  Matrix wrong = Matrix::Zero(2, 2);
  wrong(1, 0) = 1.0;
  CHECK_THROWS_AS(ProjectionSpec(diag2(1, 0), wrong), BadParams);
  CHECK_THROWS_AS(require_projection(Matrix::Identity(2, 2) * 0.5), NotProjection);
}

TEST_CASE("beta of the Lebesgue measure is i sgn plus the constant block") {
  const CarlesonMeasure mu = builtin_measure("lebesgue2", {}, 2);
  const Matrix c = upper_right(0.7);
  const Symbol h = beta_symbol(mu, ProjectionSpec(diag2(1, 0), c));
  for (double x : {-3.0, -0.2, 0.5, 4.0}) {
    const Matrix expected = I * sgn(x) * Matrix::Identity(2, 2) + c + c.adjoint();
    CHECK(max_abs(h(x) - expected) <= 1e-10);
  }
}

TEST_CASE("beta with p = 1 is i times the boundary imaginary part") {
  const CarlesonMeasure mu = builtin_measure("example_t", {0.5}, 4);
  const Symbol h = beta_symbol(mu, ProjectionSpec(Matrix::Identity(4, 4)));
  for (double x : {-2.0, 0.3}) CHECK(max_abs(h(x) - I * pick_boundary(mu, x).i_value) <= 1e-12);
  const Symbol h0 = beta_symbol(mu, ProjectionSpec(Matrix::Zero(4, 4)));
  CHECK(max_abs(h0(0.3) - h(0.3)) <= 1e-12);
}

TEST_CASE("closed-form example symbol") {
  const Matrix m = example_beta_closed(0.5, 1.0);
  CHECK(std::abs(m(0, 0) - 0.75 * I) <= 1e-15);
  CHECK(std::abs(m(0, 2) - 0.5) <= 1e-15);
  CHECK(std::abs(m(0, 3) - std::sqrt(3.0) / 4.0) <= 1e-15);
  for (double x : {-5.0, -0.1, 0.1, 5.0}) {
    CHECK(max_abs(example_beta_closed(1.0, x) - I * sgn(x) * Matrix::Identity(4, 4)) <= 1e-15);
  }
  const Symbol s = builtin_symbol("i_sgn", {}, 2);
  CHECK(max_abs(s(-3.0) + I * Matrix::Identity(2, 2)) == 0.0);
  CHECK_THROWS_AS(builtin_symbol("nope", {}, 2), UnknownSymbol);
  CHECK_THROWS_AS(builtin_symbol("example_beta_closed", {0.5}, 2), BadParams);
  CHECK_THROWS_AS(builtin_symbol("example_beta_closed", {2.0}, 4), BadParams);
  CHECK_THROWS_AS(s(0.0), DomainError);
}

TEST_CASE("beta by quadrature reproduces the closed form") {
  for (double t : {0.4, 0.5, 0.75, 1.0}) {
    const Symbol h = beta_symbol(builtin_measure("example_t", {t}, 4), example_projection(t));
    for (double x : {-10.0, -1.0, -0.1, 0.1, 1.0, 10.0}) {
      INFO("t=" << t << " x=" << x);
      CHECK(max_abs(h(x) - example_beta_closed(t, x)) <= 1e-7);
    }
  }
}

TEST_CASE("closed-form example is unitary, sharp and flat") {
  const auto grid = symmetric_log_grid(1e-3, 1e3, 40);
  for (double t : {0.0, 0.4, 0.5, 0.75, 1.0}) {
    Symbol h = builtin_symbol("example_beta_closed", {t}, 4);
    CHECK(check_unitary(h, grid, 1e-10).passed());
    CHECK(check_sharp(h, grid, 1e-12).passed());
    CHECK(check_flat(h, grid, 1e-12).passed());
    CHECK(h.flags().unitary_checked.state == FlagState::pass);
    CHECK(h.flags().unitary_checked.grid_points == grid.size());
    for (double x : grid) {
      const double ax = std::abs(x);
      CHECK(std::abs((t + ax) * (t + ax) + 2.0 * (1.0 - t) * ax + (1.0 - t * t) - (ax + 1.0) * (ax + 1.0)) <=
            1e-9 * (ax + 1.0) * (ax + 1.0));
    }
  }
}

TEST_CASE("flags start unknown and record failures") {
  Symbol h = beta_symbol(builtin_measure("atoms", {1.0}, 1), ProjectionSpec(Matrix::Identity(1, 1)));
  CHECK(h.flags().unitary_checked.state == FlagState::unknown);
  const CheckResult r = check_unitary(h, {-2.0, -1.0, 0.5, 1.0, 3.0}, 1e-8);
  CHECK_FALSE(r.passed());
  CHECK(h.flags().unitary_checked.state == FlagState::fail);
  CHECK(std::abs(h(1.0)(0, 0) - I / (2.0 * pi)) <= 1e-15);
}

TEST_CASE("involutions") {
  Symbol s = i_sgn_symbol(3);
  for (double x : {-2.0, 0.5}) {
    const InvolutionValues v = involutions(s, x);
    CHECK(max_abs(v.sharp_val - s(x)) == 0.0);
    CHECK(max_abs(v.flat_val - s(x)) == 0.0);
  }
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  Matrix a(2, 2), b(2, 2);
  for (int k = 0; k < 4; ++k) {
    a(k / 2, k % 2) = Complex(n(rng), n(rng));
    b(k / 2, k % 2) = Complex(n(rng), n(rng));
  }
  const Symbol h(2, [a, b](double x) -> Matrix { return a * x + b * x * x * x; });
  const Symbol sharp(2, [h](double x) -> Matrix { return involutions(h, x).sharp_val; });
  const Symbol flat(2, [h](double x) -> Matrix { return involutions(h, x).flat_val; });
  for (double x : {-1.5, 0.3, 2.0}) {
    CHECK(max_abs(involutions(sharp, x).sharp_val - h(x)) <= 1e-15);
    CHECK(max_abs(involutions(flat, x).flat_val - h(x)) <= 1e-15);
  }
}

TEST_CASE("projection symmetry check") {
  const auto grid = symmetric_log_grid(1e-2, 1e2, 10);
  const Symbol s = i_sgn_symbol(2);
  CHECK(projection_symmetry_check(s, Matrix::Identity(2, 2), grid, 1e-12).passed());
  const Symbol bumped(2, [s](double x) -> Matrix {
    Matrix m = s(x);
    m(0, 0) += 0.1;
    return m;
  });
  CHECK_FALSE(projection_symmetry_check(bumped, Matrix::Identity(2, 2), grid, 1e-12).passed());
  const Symbol closed = builtin_symbol("example_beta_closed", {0.5}, 4);
  CHECK(projection_symmetry_check(closed, example_projection(0.5).p(), grid, 1e-12).passed());
  CHECK_THROWS_AS(projection_symmetry_check(s, 0.5 * Matrix::Identity(2, 2), grid, 1e-12), NotProjection);
}

TEST_CASE("beta symbols satisfy the projection symmetry and the involutions") {
  const auto xs = random_xs(20, 9);
  for (const BetaCase& c : beta_cases()) {
    const Symbol h = beta_symbol(c.mu, c.ps);
    const Matrix s = 2.0 * c.ps.p() - Matrix::Identity(c.ps.dim(), c.ps.dim());
    for (double x : xs) {
      const Matrix hx = h(x);
      const Matrix hm = h(-x);
      CHECK(max_abs(hm - hx.adjoint()) <= 1e-9);
      CHECK(max_abs(hx.adjoint() + s * hx * s) <= 1e-9);
      // Real densities, p and C: h is ♯- and ♭-fixed.
      const InvolutionValues v = involutions(h, x);
      CHECK(max_abs(v.sharp_val - hx) <= 1e-9);
      CHECK(max_abs(v.flat_val - hx) <= 1e-9);
    }
  }
}

TEST_CASE("off-diagonal R block supremum") {
  const auto grid = symmetric_log_grid(1e-2, 1e2, 8);
  CHECK(off_diagonal_r_sup(builtin_measure("lebesgue2", {}, 2), diag2(1, 0), grid) <= 1e-12);
  const double sup = off_diagonal_r_sup(builtin_measure("example_t", {0.5}, 4), example_projection(0.5).p(), grid);
  CHECK(std::isfinite(sup));
  CHECK(sup > 0.0);
}
