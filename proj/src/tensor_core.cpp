#include "birelab/tensor_core.hpp"

#include <cmath>

#include "birelab/error.hpp"

namespace birelab {

double RawComponents::frobenius_norm() const {
  double s = 0.0;
  for (double x : v_) s += x * x;
  return std::sqrt(s);
}

double MediumTensor::component(int i, int j, int l, int m) const {
  const PairSlot upper = pair_slot(i, j);
  const PairSlot lower = pair_slot(l, m);
  if (upper.sign == 0 || lower.sign == 0) return 0.0;
  return upper.sign * lower.sign * mat_(lower.index, upper.index);
}

RawComponents MediumTensor::components() const {
  RawComponents raw;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m) raw(i, j, l, m) = component(i, j, l, m);
  return raw;
}

IngestedMedium ingest_components(const RawComponents& raw, double rel_tol) {
  Mat6 mat;
  for (int row = 0; row < 6; ++row) {
    const auto [l, m] = kPairBasis[row];
    for (int col = 0; col < 6; ++col) {
      const auto [i, j] = kPairBasis[col];
      mat(row, col) = 0.25 * (raw(i, j, l, m) - raw(j, i, l, m) - raw(i, j, m, l) + raw(j, i, m, l));
    }
  }
  IngestedMedium out{MediumTensor(mat), 0.0};

  const RawComponents projected = out.medium.components();
  double diff = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m) {
          const double d = raw(i, j, l, m) - projected(i, j, l, m);
          diff += d * d;
        }
  out.correction_norm = std::sqrt(diff);
  const double scale = raw.frobenius_norm();
  if (out.correction_norm > rel_tol * scale) {
    throw Error(ErrorCode::AntisymmetryViolation,
                "raw components deviate from antisymmetry by " + std::to_string(out.correction_norm) +
                    " (norm " + std::to_string(scale) + ")");
  }
  return out;
}

MediumTensor from_components(const RawComponents& raw, double rel_tol) {
  return ingest_components(raw, rel_tol).medium;
}

double skewon_defect(const MediumTensor& kappa) {
  const Mat6 s = wedge_pairing() * kappa.matrix();
  return (s - s.transpose()).norm();
}

bool is_skewon_free(const MediumTensor& kappa, double tol) {
  return skewon_defect(kappa) <= tol * kappa.matrix().norm();
}

Decomposition decompose(const MediumTensor& kappa) {
  const Mat6& j6 = wedge_pairing();
  const Mat6 s = j6 * kappa.matrix();
  const double axion = kappa.matrix().trace() / 6.0;
  // J6 is its own inverse.
  const Mat6 symmetric_part = j6 * (0.5 * (s + s.transpose()));
  const Mat6 antisymmetric_part = j6 * (0.5 * (s - s.transpose()));
  return Decomposition{MediumTensor(symmetric_part - axion * Mat6::Identity()), MediumTensor(antisymmetric_part),
                       axion};
}

MediumTensor hodge_star(const Mat4& g, double tol) {
  const double det = g.determinant();
  if (std::abs(det) <= tol * std::pow(g.norm(), 4)) {
    throw Error(ErrorCode::DegenerateMetric, "metric determinant " + std::to_string(det));
  }
  const Mat4 ginv = g.inverse();
  const double vol = std::sqrt(std::abs(det));

  RawComponents raw;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          double acc = 0.0;
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
              const int e = levi_civita(a, b, r, s);
              if (e != 0) acc += ginv(i, a) * ginv(j, b) * e;
            }
          raw(i, j, r, s) = vol * acc;
        }
  return from_components(raw, 1e-10);
}

Mat6 pair_compound(const Mat4& u) {
  Mat6 p;
  for (int row = 0; row < 6; ++row) {
    const auto [i1, i2] = kPairBasis[row];
    for (int col = 0; col < 6; ++col) {
      const auto [k1, k2] = kPairBasis[col];
      p(row, col) = u(k1, i1) * u(k2, i2) - u(k2, i1) * u(k1, i2);
    }
  }
  return p;
}

MediumTensor pullback(const MediumTensor& kappa, const Mat4& t, double tol) {
  const double det = t.determinant();
  if (std::abs(det) <= tol * std::pow(t.norm(), 4)) {
    throw Error(ErrorCode::SingularJacobian, "Jacobian determinant " + std::to_string(det));
  }
  // 2-form coefficients pick up dx/dx' = T^{-1}; kappa is conjugated accordingly.
  const Mat6 p = pair_compound(t.inverse());
  const Mat6 pinv = pair_compound(t);
  return MediumTensor(p * kappa.matrix() * pinv);
}

}  // namespace birelab
