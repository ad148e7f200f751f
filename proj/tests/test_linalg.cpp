#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "smoothcond/errors.hpp"
#include "smoothcond/linalg.hpp"
#include "smoothcond/random_stream.hpp"

using namespace smoothcond;
using cd = ComplexScalar;

namespace {

bool has_root(const std::vector<cd>& roots, cd r, double tol = 1e-8) {
  return std::any_of(roots.begin(), roots.end(), [&](cd x) { return std::abs(x - r) < tol; });
}

}  // namespace

TEST_CASE("svd small cases") {
  auto s = svd(ComplexMatrix::Identity(2, 2));
  CHECK(s.singular_values(0) == doctest::Approx(1.0));
  CHECK(s.singular_values(1) == doctest::Approx(1.0));

  ComplexMatrix d(2, 2);
  d << 3.0, 0.0, 0.0, cd(0, 4);
  s = svd(d);
  CHECK(s.singular_values(0) == doctest::Approx(4.0));
  CHECK(s.singular_values(1) == doctest::Approx(3.0));
}

TEST_CASE("svd against a characteristic polynomial oracle") {
  RandomStream rng(1);
  const ComplexMatrix a = rng.complex_normal_matrix(8, 5);
  const auto s = svd(a);
  CHECK((s.u * s.u.adjoint() - ComplexMatrix::Identity(8, 8)).norm() < 1e-12);
  const ComplexMatrix sigma = [&] {
    ComplexMatrix m = ComplexMatrix::Zero(8, 5);
    for (int i = 0; i < 5; ++i) m(i, i) = s.singular_values(i);
    return m;
  }();
  CHECK((s.u * sigma * s.v.adjoint() - a).norm() < 1e-10 * a.norm());

  auto ev = oracle::durand_kerner(oracle::char_poly_newton(a.adjoint() * a));
  std::vector<double> expected;
  for (auto x : ev) expected.push_back(std::sqrt(std::max(0.0, x.real())));
  std::sort(expected.rbegin(), expected.rend());
  for (int i = 0; i < 5; ++i) CHECK(std::abs(s.singular_values(i) - expected[i]) < 1e-8);
}

TEST_CASE("smallest singular value and Eckart-Young witness") {
  ComplexMatrix a(2, 2);
  a << 1.0, 0.0, 0.0, 0.0;
  CHECK(smallest_singular_value(a) == doctest::Approx(0.0));
  a << 1.0, 0.0, 0.0, 0.5;
  CHECK(smallest_singular_value(a) == doctest::Approx(0.5));

  RandomStream rng(2);
  const ComplexMatrix m = rng.complex_normal_matrix(6, 6);
  const auto s = svd(m);
  const double smin = s.singular_values(5);
  const ComplexMatrix b = m - smin * s.u.col(5) * s.v.col(5).adjoint();
  CHECK(std::abs((m - b).norm() - smin) < 1e-10);
  CHECK(smallest_singular_value(b) <= 1e-10 * m.norm());
  CHECK(smallest_singular_value(m) == doctest::Approx(smin).epsilon(1e-12));
  CHECK_THROWS_AS(smallest_singular_value(ComplexMatrix::Ones(2, 3)), DimensionMismatch);
}

TEST_CASE("pseudo-inverse") {
  CHECK((pseudo_inverse(ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3)).norm() < 1e-14);
  ComplexMatrix x(2, 1);
  x << 3.0, 4.0;
  const ComplexMatrix xp = pseudo_inverse(x);
  CHECK(xp.rows() == 1);
  CHECK(std::abs(xp(0, 0) - 3.0 / 25) < 1e-15);
  CHECK(std::abs(xp(0, 1) - 4.0 / 25) < 1e-15);

  RandomStream rng(3);
  const ComplexMatrix a = rng.complex_normal_matrix(7, 3);
  const ComplexMatrix ap = pseudo_inverse(a);
  const double scale = a.norm();
  CHECK((a * ap * a - a).norm() <= 1e-10 * scale);
  CHECK((ap * a * ap - ap).norm() <= 1e-10 * ap.norm());
  CHECK(((a * ap).adjoint() - a * ap).norm() <= 1e-10);
  CHECK(((ap * a).adjoint() - ap * a).norm() <= 1e-10);

  ComplexMatrix rank_deficient = ComplexMatrix::Zero(3, 2);
  rank_deficient(0, 0) = 1.0;
  CHECK_THROWS_AS(pseudo_inverse(rank_deficient), IllPosedError);
}

TEST_CASE("eigen decomposition") {
  ComplexMatrix d(2, 2);
  d << 1.0, 0.0, 0.0, 2.0;
  auto e = eigen(d);
  CHECK(e.min_gap == doctest::Approx(1.0));
  for (int i = 0; i < 2; ++i) {
    const int k = std::abs(e.eigenvalues(i) - 1.0) < 1e-12 ? 0 : 1;
    CHECK(std::abs(e.right_vectors(k, i)) == doctest::Approx(1.0));
    CHECK(std::abs(e.left_vectors(k, i)) == doctest::Approx(1.0));
  }

  ComplexMatrix nil(2, 2);
  nil << 0.0, 1.0, 0.0, 0.0;
  e = eigen(nil);
  CHECK(e.min_gap == doctest::Approx(0.0));
  CHECK(std::abs(e.eigenvalues(0)) < 1e-12);

  ComplexMatrix t(2, 2);
  t << 1.0, 1.0, 0.0, 2.0;
  e = eigen(t);
  const int i1 = std::abs(e.eigenvalues(0) - 1.0) < 1e-12 ? 0 : 1;
  const ComplexVector x = e.right_vectors.col(i1), y = e.left_vectors.col(i1);
  CHECK(std::abs(std::abs(x(0)) - 1.0) < 1e-12);
  CHECK(std::abs(x(1)) < 1e-12);
  CHECK(std::abs(std::abs(y(0)) - 1 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(y(0) + y(1)) < 1e-12);

  RandomStream rng(4);
  for (int n : {1, 3, 8, 16}) {
    const ComplexMatrix a = rng.complex_normal_matrix(n, n);
    e = eigen(a);
    for (int i = 0; i < n; ++i) {
      const cd l = e.eigenvalues(i);
      CHECK((a * e.right_vectors.col(i) - l * e.right_vectors.col(i)).norm() <= 1e-8 * a.norm());
      CHECK((e.left_vectors.col(i).adjoint() * a - l * e.left_vectors.col(i).adjoint()).norm() <=
            1e-8 * a.norm());
    }
  }
  CHECK(std::isinf(eigen(ComplexMatrix::Ones(1, 1)).min_gap));
  CHECK_THROWS_AS(eigen(ComplexMatrix::Ones(2, 3)), DimensionMismatch);
}

TEST_CASE("companion roots") {
  auto r = companion_roots({-1.0, 0.0, 1.0});
  CHECK(has_root(r, 1.0));
  CHECK(has_root(r, -1.0));
  r = companion_roots({1.0, 0.0, 1.0});
  CHECK(has_root(r, cd(0, 1)));
  CHECK(has_root(r, cd(0, -1)));
  r = companion_roots({-6.0, 11.0, -6.0, 1.0});
  for (double x : {1.0, 2.0, 3.0}) CHECK(has_root(r, x));
  CHECK_THROWS_AS(companion_roots({1.0}), DomainError);
  CHECK_THROWS_AS(companion_roots({1.0, 0.0}), DomainError);
  CHECK(evaluate_polynomial({1.0, 2.0, 3.0}, 2.0) == cd(17.0));
}

TEST_CASE("resultant") {
  CHECK(std::abs(sylvester_resultant({-1.0, 1.0}, {-1.0, 1.0})) < 1e-14);
  // lc(p)^deg q * prod q(root of p) = q(1) = -1
  CHECK(std::abs(sylvester_resultant({-1.0, 1.0}, {-2.0, 1.0}) - cd(-1.0)) < 1e-14);

  RandomStream rng(6);
  auto monic_cubic = [&] {
    std::vector<cd> c{rng.complex_normal(), rng.complex_normal(), rng.complex_normal(), 1.0};
    return c;
  };
  auto multiply = [](const std::vector<cd>& a, const std::vector<cd>& b) {
    std::vector<cd> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  for (int k = 0; k < 20; ++k) {
    const auto p = monic_cubic(), q = monic_cubic(), r = monic_cubic();
    const cd lhs = sylvester_resultant(p, multiply(q, r));
    const cd rhs = sylvester_resultant(p, q) * sylvester_resultant(p, r);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
  }
}
