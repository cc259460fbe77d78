#include "doctest.h"

#include <random>

#include "birelab/error.hpp"
#include "birelab/metaclass.hpp"
#include "birelab/sampling.hpp"
#include "oracles.hpp"

using namespace birelab;

namespace {

constexpr Metaclass kNormalForms[] = {Metaclass::I,  Metaclass::II, Metaclass::III, Metaclass::IV,
                                      Metaclass::V,  Metaclass::VI, Metaclass::VII};

double rel(const QuarticForm& a, const QuarticForm& b) {
  return (a - b).norm() / std::max({a.norm(), b.norm(), 1e-300});
}

QuarticForm oracle_quartic(const MediumTensor& k) {
  oracle::Tensor4 t{};
  const RawComponents r = k.components();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m) t[oracle::at(i, j, l, m)] = r(i, j, l, m);
  const oracle::Tensor4 g = oracle::tamm_rubilar_components(t);
  FullTensor4 full;
  std::copy(g.begin(), g.end(), full.begin());
  return symmetrize(full);
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(construct_metaclass({Metaclass::I, {0, 0, 0}, {1, 1, -1}}), Error);
  CHECK_THROWS_AS(construct_metaclass({Metaclass::I, {0, 0}, {1, 1, 1}}), Error);
  CHECK_THROWS_AS(construct_metaclass({Metaclass::IV, {0, 0, 0, NAN}, {1, 1}}), Error);
  CHECK_THROWS_AS(construct_metaclass({Metaclass::VIII_to_XXIII, {}, {}}), Error);
  CHECK_NOTHROW(construct_metaclass({Metaclass::VII, {0, 0, 0, 1, 1, 1}, {}}));
}

TEST_CASE("normal-form matrices") {
  SUBCASE("class I at alpha = 0, beta = 1 is minus the Hodge star") {
    Mat6 expected = Mat6::Zero();
    expected.block<3, 3>(0, 3) = -Mat3::Identity();
    expected.block<3, 3>(3, 0) = Mat3::Identity();
    CHECK(construct_metaclass({Metaclass::I, {0, 0, 0}, {1, 1, 1}}).matrix() == expected);
    Mat4 eta = Vec4(-1, 1, 1, 1).asDiagonal();
    CHECK((construct_metaclass({Metaclass::I, {0, 0, 0}, {1, 1, 1}}).matrix() + hodge_star(eta).matrix()).norm() <
          1e-15);
  }
  SUBCASE("class II unit blocks") {
    Mat6 expected;
    expected << 0, -1, 0, 0, 0, 0,
                1, 0, 0, 0, 0, 0,
                0, 0, 0, 0, 0, -1,
                0, 1, 0, 0, 1, 0,
                1, 0, 0, -1, 0, 0,
                0, 0, 1, 0, 0, 0;
    CHECK(construct_metaclass({Metaclass::II, {0, 0}, {1, 1}}).matrix() == expected);
  }
  SUBCASE("class VII symmetric blocks") {
    Mat6 expected = Mat6::Zero();
    expected.block<3, 3>(0, 3) = Mat3::Identity();
    expected.block<3, 3>(3, 0) = Mat3::Identity();
    CHECK(construct_metaclass({Metaclass::VII, {0, 0, 0, 1, 1, 1}, {}}).matrix() == expected);
  }
  SUBCASE("every constructor is skewon-free") {
    std::mt19937_64 rng(41);
    for (Metaclass id : kNormalForms)
      for (int n = 0; n < 20; ++n) CHECK(is_skewon_free(construct_metaclass(random_generic_params(rng, id)), 1e-14));
  }
}

TEST_CASE("class IV invertibility") {
  CHECK(std::abs(construct_metaclass({Metaclass::IV, {0.1, 0.2, 0.7, 0.7}, {1, 1}}).matrix().determinant()) < 1e-14);
  CHECK(std::abs(construct_metaclass({Metaclass::IV, {0.1, 0.2, -0.7, 0.7}, {1, 1}}).matrix().determinant()) < 1e-14);
  CHECK(std::abs(construct_metaclass({Metaclass::IV, {0.1, 0.2, 0.3, 0.7}, {1, 1}}).matrix().determinant()) > 1e-3);
}

TEST_CASE("D-invariants") {
  SUBCASE("class I unit beta") {
    const DInvariants d = d_invariants({Metaclass::I, {0, 0, 0}, {1, 1, 1}});
    CHECK(*d.D1 == doctest::Approx(2));
    CHECK(*d.D2 == doctest::Approx(2));
    CHECK(*d.D3 == doctest::Approx(2));
    CHECK(std::abs(*d.D0) < 1e-12);
    CHECK(d.C == doctest::Approx(1));
  }
  SUBCASE("class I beta (1,1,2)") {
    const DInvariants d = d_invariants({Metaclass::I, {0, 0, 0}, {1, 1, 2}});
    CHECK(*d.D1 == doctest::Approx(2.5));
    CHECK(*d.D2 == doctest::Approx(2.5));
    CHECK(*d.D3 == doctest::Approx(2));
    CHECK(d.C == doctest::Approx(2));
  }
  SUBCASE("class IV") {
    const DInvariants d = d_invariants({Metaclass::IV, {0, 0, 0, 2}, {1, 1}});
    CHECK(*d.D1 == doctest::Approx(-1.5));
    CHECK(d.C == doctest::Approx(2));
  }
  SUBCASE("zero alpha rejected where it divides") {
    CHECK_THROWS_AS(d_invariants({Metaclass::VII, {1, 2, 3, 0, 1, 1}, {}}), Error);
    CHECK_THROWS_AS(d_invariants({Metaclass::VI, {1, 2, 3, 1, 0}, {1}}), Error);
    CHECK_THROWS_AS(d_invariants({Metaclass::II, {1, 2}, {1, 1}}), Error);
  }
  SUBCASE("random class I and VII draws") {
    std::mt19937_64 rng(42);
    for (int n = 0; n < 200; ++n) {
      const DInvariants d1 = d_invariants(random_generic_params(rng, Metaclass::I));
      CHECK(*d1.D1 >= 2 - 1e-12);
      CHECK(*d1.D2 >= 2 - 1e-12);
      CHECK(*d1.D3 >= 2 - 1e-12);
      CHECK(*d1.d0_relation_residual <= 1e-8 * std::max(1.0, *d1.D0 * *d1.D0));
      const DInvariants d7 = d_invariants(random_generic_params(rng, Metaclass::VII));
      CHECK(*d7.d0_relation_residual <= 1e-8 * std::max(1.0, *d7.D0 * *d7.D0));
    }
  }
}

TEST_CASE("class quartics match the normal-form polynomials") {
  std::mt19937_64 rng(43);
  for (Metaclass id : {Metaclass::I, Metaclass::IV, Metaclass::VI, Metaclass::VII}) {
    CAPTURE(to_string(id));
    for (int n = 0; n < 200; ++n) {
      const MetaclassParams p = random_generic_params(rng, id);
      CHECK(rel(tamm_rubilar(construct_metaclass(p)), display_quartic(p, d_invariants(p))) <= 1e-10);
    }
  }
  for (Metaclass id : {Metaclass::II, Metaclass::III, Metaclass::V}) {
    CAPTURE(to_string(id));
    for (int n = 0; n < 20; ++n) {
      const MediumTensor k = construct_metaclass(random_generic_params(rng, id));
      CHECK(rel(tamm_rubilar(k), oracle_quartic(k)) <= 1e-10);
    }
  }
}

TEST_CASE("birefringence condition for class I") {
  CHECK(birefringence_condition_I({Metaclass::I, {0, 0, 0}, {1, 1, 2}}) == 3);
  CHECK_FALSE(birefringence_condition_I({Metaclass::I, {0, 0, 0}, {1, 1, 1}}).has_value());
  CHECK_FALSE(birefringence_condition_I({Metaclass::I, {5, 0, 0}, {1, 2, 3}}).has_value());
  CHECK(birefringence_condition_I({Metaclass::I, {0.3, 1, 1}, {2, 0.5, 0.5}}) == 1);
  CHECK_THROWS_AS(birefringence_condition_I({Metaclass::IV, {0, 0, 0, 1}, {1, 1}}), Error);
}

TEST_CASE("closed-form cones") {
  SUBCASE("class I beta (1,1,2)") {
    const MetaclassParams p{Metaclass::I, {0, 0, 0}, {1, 1, 2}};
    const ClosedFormCones c = cones_closed_form(p);
    CHECK(c.C == doctest::Approx(2));
    const Mat4 a = Vec4(1, -2, -2, -1).asDiagonal(), b = Vec4(1, -0.5, -0.5, -1).asDiagonal();
    CHECK(pair_distance(canonical_pair(c.gplus.matrix(), c.gminus.matrix(), c.C), canonical_pair(a, b, 1.0)) < 1e-12);
    CHECK(c.gplus.signature().is_lorentz());
    CHECK(c.gminus.signature().is_lorentz());
    CHECK(factor_residual(tamm_rubilar(construct_metaclass(p)), c.gplus.matrix(), c.gminus.matrix(), c.C) <= 1e-8);
    CHECK(std::abs(*d_invariants(p).D0) <= 1e-12);
  }
  SUBCASE("class II") {
    const ClosedFormCones c = cones_closed_form({Metaclass::II, {0.4, 0.4}, {1, 1}});
    Mat4 plus;
    plus << 1, 0, 0, 1, 0, -1, 0, 0, 0, 0, -1, 0, 1, 0, 0, 0;
    CHECK(c.gplus.matrix() == plus);
    CHECK(c.gminus.matrix()(0, 0) == -1);
    CHECK(c.C == 1);
    for (int n = 1; n <= 100; ++n) {
      const double beta = 0.1 * n;
      const ClosedFormCones cn = cones_closed_form({Metaclass::II, {0, 0}, {beta, beta}});
      CHECK(cn.gplus.matrix().determinant() < 0);
      CHECK(cn.gminus.matrix().determinant() < 0);
      CHECK(factor_residual(tamm_rubilar(construct_metaclass({Metaclass::II, {0, 0}, {beta, beta}})),
                            cn.gplus.matrix(), cn.gminus.matrix(), cn.C) <= 1e-8);
    }
  }
  SUBCASE("class IV") {
    const MetaclassParams p{Metaclass::IV, {0, 0, 0, 2}, {1, 1}};
    const ClosedFormCones c = cones_closed_form(p);
    CHECK(c.gplus.matrix().diagonal().isApprox(Vec4(1, 2, 2, -1)));
    CHECK(c.gminus.matrix().diagonal().isApprox(Vec4(1, -0.5, -0.5, -1)));
    CHECK(c.gplus.signature() == Signature{3, 1, 0});
    CHECK(c.gminus.signature() == Signature{1, 3, 0});
    CHECK(factor_residual(tamm_rubilar(construct_metaclass(p)), c.gplus.matrix(), c.gminus.matrix(), c.C) <= 1e-8);
  }
  SUBCASE("preconditions name the failed constraint") {
    auto message = [](const MetaclassParams& p) {
      try {
        cones_closed_form(p);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PreconditionViolated);
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message({Metaclass::II, {0, 1}, {1, 1}}).find("alpha1 = alpha2") != std::string::npos);
    CHECK(message({Metaclass::II, {0, 0}, {1, 2}}).find("beta1 = beta2") != std::string::npos);
    CHECK(message({Metaclass::IV, {0, 0, 0, 0}, {1, 1}}).find("alpha4 != 0") != std::string::npos);
    CHECK(message({Metaclass::IV, {0, 0, 1, 1}, {1, 1}}).find("alpha3^2") != std::string::npos);
    CHECK(message({Metaclass::I, {0, 0, 0}, {1, 1, 1}}).find("exactly one") != std::string::npos);
    CHECK(message({Metaclass::VII, {0, 0, 0, 1, 1, 1}, {}}).find("VII") != std::string::npos);
  }
}

TEST_CASE("closed form agrees with the numerical factorization") {
  std::mt19937_64 rng(44);
  for (Metaclass id : {Metaclass::I, Metaclass::II, Metaclass::IV}) {
    CAPTURE(to_string(id));
    for (int n = 0; n < 10; ++n) {
      const MetaclassParams p = random_birefringent_params(rng, id);
      const ClosedFormCones c = cones_closed_form(p);
      const BirefringenceResult r = factor_quartic(tamm_rubilar(construct_metaclass(p)));
      REQUIRE(r.tag == BirefringenceTag::DoubleLightCone);
      const CanonicalPair expected = canonical_pair(c.gplus.matrix(), c.gminus.matrix(), c.C);
      const CanonicalPair got = canonical_pair(r.gplus->matrix(), r.gminus->matrix(), r.C);
      CHECK(pair_distance(expected, got) <= 1e-7);
    }
  }
}

TEST_CASE("exclusion evidence") {
  CHECK(exclusion_evidence({Metaclass::III, {1}, {1}}).excluded);
  const ExclusionEvidence vi = exclusion_evidence({Metaclass::VI, {0.4, -0.2, 1.2, 0.7, -0.5}, {1.1}});
  CHECK(vi.excluded);
  REQUIRE(vi.candidates.size() == 2);
  for (const auto& c : vi.candidates) {
    CHECK_FALSE(c.gplus_signature.is_lorentz());
    CHECK(c.sigma * c.sigma == 1);
  }
  CHECK(exclusion_evidence({Metaclass::VII, {-0.3, 0.5, 1.4, 0.6, -0.8, 0.35}, {}}).excluded);
  CHECK(exclusion_evidence({Metaclass::V, {0.1, 0.9, -0.6}, {1.2}}).excluded);
  CHECK_THROWS_AS(exclusion_evidence({Metaclass::V, {0.1, 0.9, 0}, {1.2}}), Error);
  CHECK_THROWS_AS(exclusion_evidence({Metaclass::I, {0, 0, 0}, {1, 1, 2}}), Error);
}

TEST_CASE("class II coordinate change") {
  SUBCASE("beta 0.5") {
    const TransformII t = transform_II(0.0, 0.5);
    CHECK(t.w == doctest::Approx(std::sqrt(2.0)));
    CHECK(t.kappa_display.matrix()(3, 0) == doctest::Approx(-std::sqrt(2.0)));
    CHECK((t.kappa_tilde.matrix() - t.kappa_display.matrix()).norm() <= 1e-9 * t.kappa_display.matrix().norm());
  }
  SUBCASE("beta 1") {
    const TransformII t = transform_II(0.7, 1.0);
    CHECK(t.w == doctest::Approx(std::sqrt(5.0)));
    CHECK((t.kappa_tilde.matrix() - t.kappa_display.matrix()).norm() <= 1e-9 * t.kappa_display.matrix().norm());
  }
  SUBCASE("similarity keeps the spectrum") {
    const TransformII t = transform_II(0.2, 2.5);
    const MediumTensor normal = construct_metaclass({Metaclass::II, {0.2, 0.2}, {2.5, 2.5}});
    auto sorted_spectrum = [](const Mat6& m) {
      Eigen::VectorXcd ev = m.eigenvalues();
      std::vector<std::pair<double, double>> v;
      for (int i = 0; i < 6; ++i) v.emplace_back(std::round(ev[i].real() * 1e4), std::round(ev[i].imag() * 1e4));
      std::sort(v.begin(), v.end());
      return v;
    };
    CHECK(sorted_spectrum(t.kappa_tilde.matrix()) == sorted_spectrum(normal.matrix()));
  }
  CHECK_THROWS_AS(transform_II(0.0, 0.0), Error);
}

TEST_CASE("3+1 split") {
  SUBCASE("class IV display") {
    const double b = 1.3, a4 = 0.8;
    const ConstitutiveSplit s = three_plus_one_split(construct_metaclass({Metaclass::IV, {0, 0, 0, a4}, {b, b}}));
    CHECK(s.permittivity.isApprox(-Eigen::Vector3d(b, b, a4).asDiagonal().toDenseMatrix()));
    // B = -diag(b, b, -a4)^-1 H, i.e. H = -diag(b, b, -a4) B
    CHECK(s.inverse_permeability.isApprox(-Eigen::Vector3d(b, b, -a4).asDiagonal().toDenseMatrix()));
    CHECK(s.magnetoelectric_DB.isZero());
    CHECK(s.magnetoelectric_HE.isZero());
  }
  SUBCASE("vacuum") {
    const ConstitutiveSplit s = three_plus_one_split(hodge_star(Vec4(-1, 1, 1, 1).asDiagonal()));
    CHECK(s.permittivity.isApprox(Mat3::Identity()));
    CHECK(s.inverse_permeability.isApprox(Mat3::Identity()));
    CHECK(s.magnetoelectric_DB.isZero());
    CHECK(s.magnetoelectric_HE.isZero());
  }
  SUBCASE("pure axion") {
    const ConstitutiveSplit s = three_plus_one_split(MediumTensor::identity());
    CHECK(s.permittivity.isZero());
    CHECK(s.inverse_permeability.isZero());
    CHECK(s.magnetoelectric_DB.isApprox(Mat3::Identity()));
    CHECK(s.magnetoelectric_HE.isApprox(-Mat3::Identity()));
  }
}

TEST_CASE("class IV from D1") {
  for (double d1 : {-3.0, -1.5, 0.0, 0.5, 4.0}) {
    const MetaclassParams p = class_iv_params_for_d1(d1);
    CHECK(p.alpha[3] > 0);
    CHECK(*d_invariants(p).D1 == doctest::Approx(d1).epsilon(1e-12).scale(1));
  }
  CHECK_THROWS_AS(class_iv_params_for_d1(INFINITY), Error);
}
