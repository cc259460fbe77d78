#pragma once

#include <array>
#include <optional>
#include <vector>

#include "birelab/fresnel.hpp"
#include "birelab/quartic_factor.hpp"
#include "birelab/segre.hpp"
#include "birelab/tensor_core.hpp"

namespace birelab {

/// Normal-form parameters. Expected counts (alpha, beta):
/// I (3,3), II (2,2), III (1,1), IV (4,2), V (3,1), VI (5,1), VII (6,0); all beta > 0.
struct MetaclassParams {
  Metaclass id = Metaclass::I;
  std::vector<double> alpha;
  std::vector<double> beta;

  /// Throws InvalidParams on wrong counts, non-finite values, or beta <= 0.
  void validate() const;
};

MediumTensor construct_metaclass(const MetaclassParams& params);

struct DInvariants {
  std::optional<double> D0, D1, D2, D3;
  /// Normalizing constant of the class polynomial.
  double C = 0.0;
  /// |D0^2 - rhs| for the implicit D0 relation (classes I and VII).
  std::optional<double> d0_relation_residual;
};

/// Classes I, IV, VI, VII. D0 (and for VI all D's) are read off the computed
/// quartic; the rest follow the closed formulas.
DInvariants d_invariants(const MetaclassParams& params);

/// Class polynomial C * (normal-form quartic in the D's) for I, IV, VI, VII.
QuarticForm display_quartic(const MetaclassParams& params, const DInvariants& d);

/// The 1-based i with alpha_i' = alpha_i'', beta_i' = beta_i'' for exactly one i.
std::optional<int> birefringence_condition_I(const MetaclassParams& params, double tol = 1e-9);

struct ClosedFormCones {
  QuadricForm gplus;   // quadric factor, the inverse of the metric g+
  QuadricForm gminus;
  double C;
};

/// Classes I, II, IV. Throws PreconditionViolated naming the failed constraint.
ClosedFormCones cones_closed_form(const MetaclassParams& params, double tol = 1e-9);

struct CandidateFactors {
  int sigma;
  Mat4 gplus;
  Mat4 gminus;
  Signature gplus_signature;
  Signature gminus_signature;
};

struct ExclusionEvidence {
  Metaclass id;
  BirefringenceResult factorization;
  bool excluded;  // factorization is not a double light cone
  std::vector<CandidateFactors> candidates;  // class VI only, sigma = +1 and -1
};

/// Classes III, V, VI, VII.
ExclusionEvidence exclusion_evidence(const MetaclassParams& params, const FactorOptions& options = {});

struct TransformII {
  double w;
  Mat4 L;                      // x~ = L x
  MediumTensor kappa_tilde;    // pullback of the normal form
  MediumTensor kappa_display;  // closed form of the transformed matrix
};

/// Coordinates diagonalizing g+ for class II with alpha1 = alpha2, beta1 = beta2.
TransformII transform_II(double alpha1, double beta1);

/// D = eps E + gamma_DB B, H = nu B + gamma_HE E, with E = -F_0a, B = F_bc, H = G_0a, D = G_bc.
struct ConstitutiveSplit {
  Mat3 permittivity;
  Mat3 inverse_permeability;
  Mat3 magnetoelectric_DB;
  Mat3 magnetoelectric_HE;
};

ConstitutiveSplit three_plus_one_split(const MediumTensor& kappa);

/// Class IV parameters alpha = (0,0,0,a4), beta = (1,1) with D1 equal to d1, a4 > 0.
MetaclassParams class_iv_params_for_d1(double d1);

}  // namespace birelab
