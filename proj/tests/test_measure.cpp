#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hsl/measure.hpp"

using namespace hsl;

TEST_CASE("builtin measures") {
  const CarlesonMeasure leb = builtin_measure("lebesgue2", {}, 4);
  REQUIRE(leb.has_density());
  CHECK(leb.atoms().empty());
  CHECK(max_abs((*leb.density())(0.3) - 2.0 * Matrix::Identity(4, 4)) == 0.0);

  const CarlesonMeasure one = builtin_measure("example_t", {1.0}, 4);
  for (double l : {0.01, 1.0, 50.0}) CHECK(max_abs((*one.density())(l) - 2.0 * Matrix::Identity(4, 4)) <= 1e-14);

  const CarlesonMeasure atom = builtin_measure("atoms", {1.0}, 1);
  CHECK(atom.is_pure_point());
  REQUIRE(atom.atoms().size() == 1);
  CHECK(atom.atoms()[0].location == 1.0);
  CHECK(atom.atoms()[0].weight(0, 0) == Complex(1.0));

  CHECK_THROWS_AS(builtin_measure("nope", {}, 1), UnknownDensity);
  CHECK_THROWS_AS(builtin_measure("example_t", {0.5}, 2), BadParams);
  CHECK_THROWS_AS(builtin_measure("example_t", {1.5}, 4), BadParams);
}

TEST_CASE("measure invariants are enforced") {
  Matrix neg = -Matrix::Identity(1, 1);
  CHECK_THROWS_AS(CarlesonMeasure(1, std::nullopt, {{1.0, neg}}), BadParams);
  CHECK_THROWS_AS(CarlesonMeasure(1, std::nullopt, {{-1.0, Matrix::Identity(1, 1)}}), BadParams);
  CHECK_THROWS_AS(CarlesonMeasure(1, std::nullopt, {{1.0, Matrix::Identity(1, 1)}, {1.0, Matrix::Identity(1, 1)}}),
                  BadParams);
  Matrix skew = Matrix::Identity(2, 2);
  skew(0, 1) = 0.5;
  CHECK_THROWS(CarlesonMeasure(2, std::nullopt, {{1.0, skew}}));
  CHECK(CarlesonMeasure(1, std::nullopt).is_zero());
}

TEST_CASE("every builtin density is PSD on the probe grid") {
  const auto grid = log_grid(1e-3, 1e3, 64);
  for (const auto& [name, dim] : std::vector<std::pair<std::string, int>>{
           {"lebesgue2", 1}, {"lebesgue2", 4}, {"rank_one_fail", 2}, {"block_chi", 2}}) {
    const Density rho = make_density(name, {}, dim);
    for (double l : grid) CHECK(hermitian_spectrum(rho(l))(0) >= -psd_tol);
  }
  for (double t : {0.34, 0.4, 0.5, 0.75, 1.0}) {
    for (double l : grid) CHECK(hermitian_spectrum(example_density(t, l))(0) > 0.0);
  }
}

TEST_CASE("example density block structure") {
  const Matrix rho = example_density(0.5, 1.0);
  CHECK(is_hermitian(rho, 1e-14));
  // A = (t + λ²)·2/(1+λ²) = 1.5 on the diagonal at λ = 1.
  CHECK(std::abs(rho(0, 0) - 1.5) <= 1e-14);
  const Matrix b = rho.block(2, 0, 2, 2);
  const RealVector sv = hermitian_spectrum(b.adjoint() * b);
  CHECK(std::abs(std::sqrt(sv(0)) - std::sqrt(3.0) / 2.0) <= 1e-12);
  CHECK(std::abs(std::sqrt(sv(1)) - std::sqrt(3.0) / 2.0) <= 1e-12);
}

TEST_CASE("moment examples") {
  const CarlesonMeasure leb = builtin_measure("lebesgue2", {}, 1);
  const Matrix m = moment(leb, [](double l) { return Complex(1.0 / ((1.0 + l) * (1.0 + l))); });
  CHECK(std::abs(m(0, 0) - 2.0) <= 1e-12);

  Matrix a(2, 2);
  a << 2.0, I, -I, 1.0;
  const CarlesonMeasure atom(2, std::nullopt, {{1.0, a}});
  const Matrix ma = moment(atom, [](double l) { return Complex(l * l + 3.0, l); });
  CHECK(max_abs(ma - Complex(4.0, 1.0) * a) <= 1e-15);

  const CarlesonMeasure ex = builtin_measure("example_t", {0.5}, 4);
  const Matrix me = moment(ex, [](double l) { return Complex(1.0 / (1.0 + l * l)); });
  CHECK(is_hermitian(me, 1e-10));
  CHECK(hermitian_spectrum(0.5 * (me + me.adjoint()))(0) > 0.0);
}

TEST_CASE("moment is additive over the split and linear in g") {
  const Matrix w = Matrix::Identity(2, 2);
  const Density rho = make_density("rank_one_fail", {}, 2);
  const CarlesonMeasure ac(2, rho);
  const CarlesonMeasure pp(2, std::nullopt, {{0.7, w}, {3.0, 2.0 * w}});
  const CarlesonMeasure both(2, rho, {{0.7, w}, {3.0, 2.0 * w}});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double a1 = u(rng), a2 = u(rng), c1 = u(rng), c2 = u(rng);
    auto g1 = [=](double l) { return Complex(1.0, c1) / ((a1 + l) * (a1 + l)); };
    auto g2 = [=](double l) { return Complex(c2, 0.0) / (a2 + l * l); };
    const Matrix sum = moment(both, g1);
    CHECK(max_abs(sum - moment(ac, g1) - moment(pp, g1)) <= 1e-10);
    const Matrix lin = moment(both, [&](double l) { return 2.0 * g1(l) - I * g2(l); });
    CHECK(max_abs(lin - (2.0 * moment(both, g1) - I * moment(both, g2))) <= 1e-10);
  }
}

TEST_CASE("sandwich moment of the zero measure has the factor shape") {
  const CarlesonMeasure zero(2, std::nullopt);
  const Matrix m = sandwich_moment(
      zero, [](double) -> Matrix { return Matrix::Ones(2, 3); }, [](double) -> Matrix { return Matrix::Ones(2, 5); });
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 5);
  CHECK(max_abs(m) == 0.0);
}

TEST_CASE("carleson ratio check") {
  const CarlesonMeasure leb = builtin_measure("lebesgue2", {}, 3);
  const CarlesonRatioReport r = carleson_ratio_check(leb, log_grid(1e-3, 1e3, 25));
  CHECK(r.max_ratio_low <= 2.0);
  CHECK(r.max_ratio_high <= 2.0);
  CHECK(r.max_ratio_low > 1.9);

  const CarlesonMeasure atom = builtin_measure("atoms", {1.0}, 1);
  const CarlesonRatioReport a = carleson_ratio_check(atom, {2.0});
  CHECK(std::abs(a.max_ratio_low - 0.25) <= 1e-15);

  const CarlesonMeasure ex = builtin_measure("example_t", {0.5}, 4);
  const CarlesonRatioReport e = carleson_ratio_check(ex, log_grid(1e-2, 1e2, 9));
  CHECK(std::isfinite(e.max_ratio_low));
  CHECK(std::isfinite(e.max_ratio_high));
}
