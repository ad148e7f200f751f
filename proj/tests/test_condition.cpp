#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "oracles.hpp"
#include "smoothcond/condition.hpp"
#include "smoothcond/errors.hpp"
#include "smoothcond/linalg.hpp"
#include "smoothcond/random_stream.hpp"

using namespace smoothcond;
using cd = ComplexScalar;

namespace {

PolySystem binary(int d, std::initializer_list<std::pair<Exponent, cd>> terms) {
  PolySystem f;
  f.n = 1;
  f.degrees = {d};
  f.equations.emplace_back();
  for (const auto& [a, c] : terms) f.equations[0][a] = c;
  return f;
}

ProjectivePoint pt(cd a, cd b) {
  ComplexVector v(2);
  v << a, b;
  return ProjectivePoint(v);
}

}  // namespace

TEST_CASE("kappa_f") {
  for (int n : {1, 2, 5}) CHECK(kappa_f(ComplexMatrix::Identity(n, n)).value == doctest::Approx(std::sqrt(n)));
  ComplexMatrix d(2, 2);
  d << 1.0, 0.0, 0.0, 0.5;
  CHECK(kappa_f(d).value == doctest::Approx(std::sqrt(1.25) / 0.5));
  CHECK(kappa_f(3.0 * d).value == doctest::Approx(kappa_f(d).value));
  CHECK(kappa_f(d).log_value == doctest::Approx(std::log(kappa_f(d).value)));
  ComplexMatrix s = ComplexMatrix::Ones(2, 2);
  auto c = kappa_f(s);
  CHECK(c.ill_posed);
  CHECK(std::isinf(c.value));
  CHECK_THROWS_AS(kappa_f(ComplexMatrix::Ones(2, 3)), DimensionMismatch);
}

TEST_CASE("kappa_dagger_f") {
  RandomStream rng(1);
  const ComplexMatrix sq = rng.complex_normal_matrix(4, 4);
  CHECK(kappa_dagger_f(sq).value == doctest::Approx(kappa_f(sq).value).epsilon(1e-12));
  ComplexMatrix stacked = ComplexMatrix::Zero(5, 3);
  stacked.topRows(3) = ComplexMatrix::Identity(3, 3);
  CHECK(kappa_dagger_f(stacked).value == doctest::Approx(std::sqrt(3.0)));
  ComplexMatrix col(2, 1);
  col << 3.0, 4.0;
  CHECK(kappa_dagger_f(col).value == doctest::Approx(1.0));
  CHECK_THROWS_AS(kappa_dagger_f(ComplexMatrix::Ones(2, 3)), DimensionMismatch);
}

TEST_CASE("eigenvalue projection and kappa_eigen") {
  ComplexVector e1 = ComplexVector::Zero(2);
  e1(0) = 1.0;
  CHECK((projection_matrix(e1, e1) - e1 * e1.adjoint()).norm() < 1e-15);
  ComplexVector x(2), y(2);
  x << 1.0, 0.0;
  y << 1.0, -1.0;
  ComplexMatrix expected(2, 2);
  expected << 1.0, -1.0, 0.0, 0.0;
  CHECK((projection_matrix(x, y) - expected).norm() < 1e-15);

  RandomStream rng(2);
  for (int k = 0; k < 20; ++k) {
    const ComplexVector a = rng.complex_normal_vector(4), b = rng.complex_normal_vector(4);
    CHECK(std::abs(projection_matrix(a, b).trace() - cd(1.0)) < 1e-8);
  }
  ComplexVector orth(2);
  orth << 0.0, 1.0;
  CHECK_THROWS_AS(projection_matrix(e1, orth), IllPosedError);

  const ComplexMatrix g = rng.complex_normal_matrix(4, 4);
  const ComplexMatrix herm = g + g.adjoint();
  CHECK(kappa_eigen(herm).value == doctest::Approx(1.0).epsilon(1e-10));

  ComplexMatrix t(2, 2);
  t << 1.0, 1.0, 0.0, 2.0;
  CHECK(kappa_eigen(t).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  ComplexMatrix nil(2, 2);
  nil << 0.0, 1.0, 0.0, 0.0;
  CHECK(kappa_eigen(nil).ill_posed);
}

TEST_CASE("discriminant") {
  ComplexMatrix d(2, 2);
  d << 1.0, 0.0, 0.0, 2.0;
  CHECK(std::abs(char_poly_discriminant(d) - cd(1.0)) < 1e-12);
  ComplexMatrix nil(2, 2);
  nil << 0.0, 1.0, 0.0, 0.0;
  CHECK(std::abs(char_poly_discriminant(nil)) < 1e-12);

  RandomStream rng(3);
  for (int n = 2; n <= 6; ++n) {
    const ComplexMatrix a = rng.complex_normal_matrix(n, n);
    const cd d1 = char_poly_discriminant(a);
    const cd d2 = char_poly_discriminant(2.0 * a);
    CHECK(std::abs(d2 - std::pow(2.0, n * n - n) * d1) <= 1e-8 * std::abs(d2));
    // the resultant route agrees with the eigenvalue route
    CHECK(std::abs(char_poly_discriminant_resultant(a) - d1) <= 1e-8 * std::abs(d1));
    // characteristic polynomial against Newton's identities
    const auto c = characteristic_polynomial(a), o = oracle::char_poly_newton(a);
    for (int k = 0; k <= n; ++k) CHECK(std::abs(c[k] - o[k]) <= 1e-9 * (1.0 + std::abs(o[k])));
  }
}

TEST_CASE("polynomial systems") {
  auto m = monomials(1, 2);
  REQUIRE(m.size() == 3);
  CHECK(m.front() == Exponent{2, 0});
  CHECK(monomials(2, 3).size() == 10);
  CHECK(multinomial({1, 1}) == 2.0);
  CHECK(multinomial({2, 1, 1}) == 12.0);
  CHECK(binomial(10, 3) == 120);
  CHECK_THROWS(binomial(200, 100));

  PolySystem f;
  f.n = 2;
  f.degrees = {2, 2};
  f.equations.resize(2);
  f.equations[0][{1, 1, 0}] = 1.0;
  f.equations[1][{0, 0, 2}] = 1.0;
  f.validate();
  CHECK(f.projective_dimension() == 11);
  CHECK(f.bezout_number() == 4);
  ComplexVector x(3);
  x << 1.0, 2.0, 3.0;
  CHECK(std::abs(f.evaluate(x)(0) - cd(2.0)) < 1e-15);
  CHECK(std::abs(f.jacobian(x)(1, 2) - cd(6.0)) < 1e-15);

  PolySystem bad = f;
  bad.equations[0][{1, 0, 0}] = 1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("weyl inner product") {
  auto f = binary(2, {{{1, 1}, 1.0}});
  CHECK(std::abs(weyl_inner_product(f, f) - cd(0.5)) < 1e-15);
  for (int d : {1, 3, 6}) {
    auto g = binary(d, {{{d, 0}, 1.0}});
    CHECK(weyl_norm(g) == doctest::Approx(1.0));
  }
  auto g = binary(2, {{{2, 0}, 1.0}});
  CHECK(std::abs(weyl_inner_product(f, g)) < 1e-15);
}

TEST_CASE("mu_norm at a zero") {
  auto f = binary(2, {{{1, 1}, 1.0}});
  CHECK(mu_norm_at_zero(f, pt(0.0, 1.0)).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mu_norm_at_zero(f.scaled(2.0), pt(0.0, 1.0)).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(mu_norm_at_zero(f, pt(1.0, 1.0)), NotAZeroError);

  // x0^2 - x1^2 at (1:1): independent value from a finite-difference Jacobian
  auto g = binary(2, {{{2, 0}, 1.0}, {{0, 2}, -1.0}});
  const ProjectivePoint z = pt(1.0, 1.0);
  const auto fd = oracle::finite_difference_jacobian(
      [](const Eigen::VectorXcd& v) {
        Eigen::VectorXcd r(1);
        r(0) = v(0) * v(0) - v(1) * v(1);
        return r;
      },
      z.coords());
  ComplexVector tangent(2);
  tangent << 1.0, -1.0;
  tangent /= std::sqrt(2.0);
  const cd restricted = (fd * tangent)(0);
  const double expected = std::sqrt(2.0) * std::sqrt(2.0) / std::abs(restricted);
  CHECK(mu_norm_at_zero(g, z).value == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("mu_norm over all zeros") {
  auto f = binary(2, {{{1, 1}, 1.0}});
  CHECK(mu_norm_system(f).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mu_norm_system(binary(2, {{{2, 0}, 1.0}})).ill_posed);
  CHECK(mu_norm_system(binary(2, {{{0, 2}, 1.0}})).ill_posed);

  auto g = binary(2, {{{2, 0}, 1.0}, {{0, 2}, -1.0}});
  const double a = mu_norm_at_zero(g, pt(1.0, 1.0)).value;
  const double b = mu_norm_at_zero(g, pt(-1.0, 1.0)).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
  CHECK(mu_norm_system(g).value == doctest::Approx(a).epsilon(1e-10));

  // a root at (1:0)
  auto h = binary(2, {{{1, 1}, 1.0}, {{0, 2}, 1.0}});
  auto roots = binary_form_roots(h);
  CHECK(roots.roots.size() == 2);
  CHECK_FALSE(roots.multiple);
  CHECK(std::isfinite(mu_norm_system(h).value));

  PolySystem two;
  two.n = 2;
  two.degrees = {1, 1};
  two.equations.resize(2);
  two.equations[0][{1, 0, 0}] = 1.0;
  two.equations[1][{0, 1, 0}] = 1.0;
  CHECK_THROWS_AS(mu_norm_system(two), UnsupportedError);
}

TEST_CASE("discriminant degree") {
  auto dd = discriminant_degree_bound({2, 2});
  CHECK(dd.exact == 16);
  CHECK(dd.crude == 64);
  for (int d = 1; d <= 10; ++d) CHECK(discriminant_degree_bound({d}).exact == 2 * d);

  std::function<void(std::vector<int>&, int)> sweep = [&](std::vector<int>& ds, int n) {
    if (static_cast<int>(ds.size()) == n) {
      const auto b = discriminant_degree_bound(ds);
      CHECK(b.exact <= b.crude);
      return;
    }
    for (int d = 1; d <= 6; ++d) {
      ds.push_back(d);
      sweep(ds, n);
      ds.pop_back();
    }
  };
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> ds;
    sweep(ds, n);
  }
}
