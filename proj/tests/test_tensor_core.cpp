#include "doctest.h"

#include <random>

#include "birelab/error.hpp"
#include "birelab/metaclass.hpp"
#include "birelab/sampling.hpp"
#include "birelab/tensor_core.hpp"
#include "oracles.hpp"

using namespace birelab;

namespace {

RawComponents to_raw(const oracle::Tensor4& t) {
  RawComponents r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m) r(i, j, l, m) = t[oracle::at(i, j, l, m)];
  return r;
}

oracle::Tensor4 to_tensor(const RawComponents& r) {
  oracle::Tensor4 t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m) t[oracle::at(i, j, l, m)] = r(i, j, l, m);
  return t;
}

Mat6 minkowski_hodge() {
  Mat6 m = Mat6::Zero();
  m.block<3, 3>(0, 3) = Mat3::Identity();
  m.block<3, 3>(3, 0) = -Mat3::Identity();
  return m;
}

double rel(const Mat6& a, const Mat6& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

}  // namespace

TEST_CASE("basis O and the permutation symbol") {
  CHECK(pair_slot(0, 1).index == 0);
  CHECK(pair_slot(3, 1).index == 4);
  CHECK(pair_slot(1, 3).sign == -1);
  CHECK(pair_slot(2, 2).sign == 0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) CHECK(levi_civita(a, b, c, d) == oracle::epsilon(a, b, c, d));
  int positive = 0;
  for (const auto& p : permutations4()) positive += p.sign > 0;
  CHECK(permutations4().size() == 24);
  CHECK(positive == 12);
  const Mat6& j6 = wedge_pairing();
  CHECK(j6 == j6.transpose());
  CHECK(j6 * j6 == Mat6::Identity());
}

TEST_CASE("from_components") {
  SUBCASE("zero") { CHECK(from_components(RawComponents{}).matrix() == Mat6::Zero()); }

  SUBCASE("single antisymmetric slot") {
    RawComponents r;
    r(0, 1, 0, 1) = 1;
    r(1, 0, 0, 1) = -1;
    r(0, 1, 1, 0) = -1;
    r(1, 0, 1, 0) = 1;
    Mat6 expected = Mat6::Zero();
    expected(0, 0) = 1;
    CHECK(from_components(r).matrix() == expected);
  }

  SUBCASE("storage convention mat(b(I), b(J)) = raw[J1][J2][I1][I2]") {
    RawComponents r;
    // kappa^{23}_{01}: image of dx^23 has a dx^01 component
    r(2, 3, 0, 1) = 5;
    r(3, 2, 0, 1) = -5;
    r(2, 3, 1, 0) = -5;
    r(3, 2, 1, 0) = 5;
    const Mat6 m = from_components(r).matrix();
    CHECK(m(0, 3) == 5);
    CHECK(m.cwiseAbs().sum() == 5);
  }

  SUBCASE("Minkowski Hodge components give [[0, I], [-I, 0]]") {
    const auto raw = to_raw(oracle::hodge_components(Vec4(-1, 1, 1, 1).asDiagonal()));
    CHECK(rel(from_components(raw).matrix(), minkowski_hodge()) < 1e-15);
  }

  SUBCASE("round trip through components") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 20; ++k) {
      Mat6 m;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m(i, j) = uniform(rng, -1, 1);
      const MediumTensor kappa(m);
      CHECK(from_components(kappa.components()).matrix() == m);
    }
  }

  SUBCASE("symmetry violations") {
    RawComponents r;
    r(0, 1, 0, 1) = 1;  // no antisymmetric partners
    CHECK_THROWS_AS(from_components(r), Error);
    try {
      from_components(r);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AntisymmetryViolation);
    }
    // tiny violations are projected away and reported
    RawComponents s = MediumTensor(minkowski_hodge()).components();
    s(0, 1, 2, 3) += 1e-14;
    const IngestedMedium in = ingest_components(s);
    CHECK(in.correction_norm > 0);
    CHECK(in.correction_norm < 1e-13);
    CHECK(rel(in.medium.matrix(), minkowski_hodge()) < 1e-13);
  }
}

TEST_CASE("is_skewon_free") {
  CHECK(is_skewon_free(MediumTensor(minkowski_hodge())));
  CHECK(is_skewon_free(construct_metaclass({Metaclass::I, {1, 2, 3}, {1, 1, 1}})));
  Mat6 m = Mat6::Zero();
  m(1, 2) = 1;
  CHECK_FALSE(is_skewon_free(MediumTensor(m)));
}

TEST_CASE("decompose") {
  SUBCASE("identity is pure axion") {
    const Decomposition d = decompose(MediumTensor::identity());
    CHECK(d.axion == doctest::Approx(1.0));
    CHECK(d.principal.matrix().norm() < 1e-15);
    CHECK(d.skewon.matrix().norm() < 1e-15);
  }
  SUBCASE("Hodge is principal") {
    const Decomposition d = decompose(MediumTensor(minkowski_hodge()));
    CHECK(d.axion == 0.0);
    CHECK(rel(d.principal.matrix(), minkowski_hodge()) < 1e-15);
    CHECK(d.skewon.matrix().norm() == 0.0);
  }
  SUBCASE("Hodge plus 2 Id") {
    const Decomposition d = decompose(MediumTensor(minkowski_hodge() + 2 * Mat6::Identity()));
    CHECK(d.axion == doctest::Approx(2.0));
    CHECK(rel(d.principal.matrix(), minkowski_hodge()) < 1e-15);
  }
  SUBCASE("parts of random media") {
    std::mt19937_64 rng(5);
    const Mat6& j6 = wedge_pairing();
    for (int k = 0; k < 100; ++k) {
      Mat6 m;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m(i, j) = uniform(rng, -2, 2);
      const Decomposition d = decompose(MediumTensor(m));
      const Mat6 sum = d.principal.matrix() + d.skewon.matrix() + d.axion * Mat6::Identity();
      CHECK((sum - m).norm() <= 1e-14 * m.norm());
      const Mat6 p = j6 * d.principal.matrix();
      const Mat6 s = j6 * d.skewon.matrix();
      CHECK((p - p.transpose()).norm() < 1e-14);
      CHECK((s + s.transpose()).norm() < 1e-14);
      CHECK(std::abs(d.principal.matrix().trace()) < 1e-13);
      CHECK(d.axion == doctest::Approx(m.trace() / 6.0));
    }
  }
}

TEST_CASE("hodge_star") {
  const Mat4 eta = Vec4(-1, 1, 1, 1).asDiagonal();
  SUBCASE("Minkowski") {
    const Mat6 m = hodge_star(eta).matrix();
    CHECK(rel(m, minkowski_hodge()) < 1e-15);
    CHECK(rel(m * m, -Mat6::Identity()) < 1e-15);
  }
  SUBCASE("Riemannian Hodge is an involution") {
    const Mat6 m = hodge_star(Mat4::Identity()).matrix();
    CHECK(rel(m * m, Mat6::Identity()) < 1e-15);
  }
  SUBCASE("conformal invariance") {
    CHECK(rel(hodge_star(4 * eta).matrix(), hodge_star(eta).matrix()) < 1e-15);
  }
  SUBCASE("agrees with the component oracle, skewon-free and traceless") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 1000; ++k) {
      const Mat4 g = k % 2 ? random_lorentz_metric(rng) : random_symmetric_of_rank(rng, 4);
      const MediumTensor h = hodge_star(g);
      CHECK(is_skewon_free(h));
      CHECK(std::abs(h.matrix().trace()) < 1e-12 * h.matrix().norm());
      if (k < 50) {
        const Mat6 expected = from_components(to_raw(oracle::hodge_components(g))).matrix();
        CHECK(rel(h.matrix(), expected) < 1e-12);
      }
    }
  }
  SUBCASE("degenerate metric") { CHECK_THROWS_AS(hodge_star(Vec4(-1, 1, 1, 0).asDiagonal()), Error); }
}

TEST_CASE("pullback") {
  std::mt19937_64 rng(3);
  const Mat6 hodge = minkowski_hodge();
  SUBCASE("identity and uniform scaling leave kappa unchanged") {
    const MediumTensor k = random_skewon_free(rng);
    CHECK(rel(pullback(k, Mat4::Identity()).matrix(), k.matrix()) < 1e-15);
    CHECK(rel(pullback(k, 3.7 * Mat4::Identity()).matrix(), k.matrix()) < 1e-14);
  }
  SUBCASE("agrees with the raw component rule") {
    for (int n = 0; n < 20; ++n) {
      Mat6 m;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m(i, j) = uniform(rng, -1, 1);
      const MediumTensor k(m);
      const Mat4 t = random_well_conditioned(rng, 50);
      const Mat6 expected = from_components(to_raw(oracle::pullback_components(to_tensor(k.components()), t))).matrix();
      CHECK(rel(pullback(k, t).matrix(), expected) < 1e-11);
    }
  }
  SUBCASE("Lorentz transformations preserve the Minkowski Hodge star") {
    const double rapidity = 0.8, c = std::cosh(rapidity), s = std::sinh(rapidity);
    Mat4 boost = Mat4::Identity();
    boost(0, 0) = boost(1, 1) = c;
    boost(0, 1) = boost(1, 0) = s;
    const double th = 0.3;
    Mat4 rot = Mat4::Identity();
    rot(2, 2) = rot(3, 3) = std::cos(th);
    rot(2, 3) = -std::sin(th);
    rot(3, 2) = std::sin(th);
    CHECK(rel(pullback(MediumTensor(hodge), boost * rot).matrix(), hodge) < 1e-14);
  }
  SUBCASE("the Hodge star of a pulled-back metric is the pulled-back Hodge star") {
    const Mat4 g = random_lorentz_metric(rng);
    const Mat4 t = random_well_conditioned(rng, 20);
    // x' = T x: g'_{ij} = g_ab (T^-1)^a_i (T^-1)^b_j
    const Mat4 ti = t.inverse();
    const Mat4 g2 = ti.transpose() * g * ti;
    // the volume form changes sign with orientation
    const double orientation = t.determinant() > 0 ? 1.0 : -1.0;
    CHECK(rel(pullback(hodge_star(g), t).matrix(), orientation * hodge_star(g2).matrix()) < 1e-11);
  }
  SUBCASE("right action: composition law") {
    for (int n = 0; n < 100; ++n) {
      const MediumTensor k = random_skewon_free(rng);
      const Mat4 s = random_well_conditioned(rng, 100), t = random_well_conditioned(rng, 100);
      const Mat6 twice = pullback(pullback(k, s), t).matrix();
      const Mat6 once = pullback(k, t * s).matrix();
      CHECK((twice - once).norm() <= 1e-10 * once.norm());
    }
  }
  SUBCASE("singular Jacobian") { CHECK_THROWS_AS(pullback(MediumTensor(hodge), Mat4::Zero()), Error); }
}
