#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "birelab/fresnel.hpp"

namespace birelab {

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  bool is_lorentz() const { return zero == 0 && ((positive == 1 && negative == 3) || (positive == 3 && negative == 1)); }
  bool operator==(const Signature&) const = default;
};

/// Symmetric 4x4 form xi^T Q xi with its signature. Used for the inverse
/// metrics g^{ij} whose null cones make up a Fresnel surface.
class QuadricForm {
 public:
  explicit QuadricForm(const Mat4& q, double rel_tol = 1e-9);

  const Mat4& matrix() const { return q_; }
  const Signature& signature() const { return signature_; }
  double evaluate(const Vec4& xi) const { return xi.dot(q_ * xi); }

 private:
  Mat4 q_;
  Signature signature_;
};

/// Eigenvalues below rel_tol * max|eigenvalue| count as zero.
Signature signature_of(const Mat4& q, double rel_tol = 1e-9);

enum class BirefringenceTag { DoubleLightCone, SingleCone, ReducibleNonLorentz, NoQuadricFactorization };
std::string_view to_string(BirefringenceTag tag);

struct BirefringenceResult {
  BirefringenceTag tag = BirefringenceTag::NoQuadricFactorization;
  /// DoubleLightCone: the two canonical factors. SingleCone: gplus is the
  /// squared factor. ReducibleNonLorentz: the factors that were found.
  std::optional<QuadricForm> gplus;
  std::optional<QuadricForm> gminus;
  /// f(xi) = C (xi^T gplus xi)(xi^T gminus xi), or C (xi^T gplus xi)^2 for SingleCone.
  double C = 0.0;
  /// max over the 35-point grid of |f - model| / |f|.
  double residual = 0.0;
};

Mat4 adjugate(const Mat4& q);

/// xi^T Q xi irreducible over C iff adj Q != 0 (relative to |Q|^3). Throws ZeroForm for Q = 0.
bool quadric_irreducible(const Mat4& q, double tol = 1e-9);

/// G_f(xi, eta, zeta) = -1/2 det [[2f(xi), Df_xi(eta), Df_xi(zeta)], ...] for f = xi^T Q xi.
double gaeta_covariant(const Mat4& q, const Vec4& xi, const Vec4& eta, const Vec4& zeta);

/// Symmetric tensor of the quartic (xi^T A xi)(xi^T B xi).
QuarticForm product_quartic(const Mat4& a, const Mat4& b);

/// The 35 points alpha/4, |alpha| = 4, used to compare quartics; unisolvent for quartic forms.
const std::array<Vec4, QuarticForm::kSize>& residual_grid();

/// max over residual_grid of |f(xi) - C (xi^T A xi)(xi^T B xi)| / |f|.
double factor_residual(const QuarticForm& f, const Mat4& a, const Mat4& b, double c);

struct FactorOptions {
  std::uint64_t seed = 0x5eedf00dULL;
  int line_samples = 10;
  int max_starts = 24;
  double residual_tol = 1e-8;
  double proportional_tol = 1e-7;
  double signature_tol = 1e-9;
};

BirefringenceResult factor_quartic(const QuarticForm& f, const FactorOptions& options = {});

struct CanonicalPair {
  Mat4 first;
  Mat4 second;
  double C = 0.0;
};

/// Scales q so that its largest-magnitude upper-triangular entry (first in
/// row-major order on ties) is +1; returns the factor q was divided by.
double canonical_scale(const Mat4& q, Mat4& scaled);

/// Fixes the scale and swap gauge of a factor pair: each factor canonically
/// scaled, pair ordered lexicographically, C adjusted to keep C*A*B fixed.
CanonicalPair canonical_pair(const Mat4& gplus, const Mat4& gminus, double c);

/// Frobenius distance between canonical pairs (C excluded).
double pair_distance(const CanonicalPair& a, const CanonicalPair& b);

}  // namespace birelab
