#pragma once

#include <array>

#include "birelab/pair_basis.hpp"

namespace birelab {

/// Dense storage for kappa^{ij}_{lm}, indexed (i, j, l, m).
class RawComponents {
 public:
  double& operator()(int i, int j, int l, int m) { return v_[idx(i, j, l, m)]; }
  double operator()(int i, int j, int l, int m) const { return v_[idx(i, j, l, m)]; }
  double frobenius_norm() const;

 private:
  static constexpr int idx(int i, int j, int l, int m) { return ((i * 4 + j) * 4 + l) * 4 + m; }
  std::array<double, 256> v_{};
};

/// A medium tensor at a point, stored as the 6x6 matrix in basis O.
/// Column J holds the image of dx^J, so mat(b(I), b(J)) = kappa^{J1 J2}_{I1 I2}.
class MediumTensor {
 public:
  MediumTensor() = default;
  explicit MediumTensor(const Mat6& mat) : mat_(mat) {}

  static MediumTensor identity() { return MediumTensor(Mat6::Identity()); }

  const Mat6& matrix() const { return mat_; }

  /// kappa^{ij}_{lm} from the antisymmetric extension of the 6x6 storage.
  double component(int i, int j, int l, int m) const;
  RawComponents components() const;

  MediumTensor operator+(const MediumTensor& o) const { return MediumTensor(mat_ + o.mat_); }
  MediumTensor operator-(const MediumTensor& o) const { return MediumTensor(mat_ - o.mat_); }
  MediumTensor operator*(double s) const { return MediumTensor(mat_ * s); }

 private:
  Mat6 mat_ = Mat6::Zero();
};

struct IngestedMedium {
  MediumTensor medium;
  /// Frobenius norm of the part removed when projecting onto the antisymmetric components.
  double correction_norm = 0.0;
};

/// Projects raw components onto their antisymmetric part. Throws
/// AntisymmetryViolation when the removed part exceeds rel_tol * |raw|.
IngestedMedium ingest_components(const RawComponents& raw, double rel_tol = 1e-12);
MediumTensor from_components(const RawComponents& raw, double rel_tol = 1e-12);

/// kappa(u) ^ v == u ^ kappa(v), i.e. J6 * mat symmetric, relative to |mat|.
bool is_skewon_free(const MediumTensor& kappa, double tol = 1e-9);
double skewon_defect(const MediumTensor& kappa);

struct Decomposition {
  MediumTensor principal;
  MediumTensor skewon;
  double axion = 0.0;
};

/// kappa = principal + skewon + axion * Id with J6*principal symmetric and
/// traceless, J6*skewon antisymmetric and axion = trace/6.
Decomposition decompose(const MediumTensor& kappa);

/// kappa^{ij}_{rs} = sqrt|det g| g^{ia} g^{jb} eps_{abrs}.
MediumTensor hodge_star(const Mat4& g, double tol = 1e-12);

/// Second compound of U acting on 2-form coefficient vectors in basis O:
/// if coefficients transform as F'_{ij} = F_{ab} U^a_i U^b_j then f' = pair_compound(U) f.
Mat6 pair_compound(const Mat4& u);

/// Components of kappa in coordinates x' = T x, T = dx'/dx.
MediumTensor pullback(const MediumTensor& kappa, const Mat4& t, double tol = 1e-12);

}  // namespace birelab
