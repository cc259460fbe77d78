#include "birelab/metaclass.hpp"

#include <cmath>
#include <string>

#include "birelab/error.hpp"

namespace birelab {

namespace {

struct ParamCounts {
  std::size_t alpha;
  std::size_t beta;
};

ParamCounts expected_counts(Metaclass id) {
  switch (id) {
    case Metaclass::I: return {3, 3};
    case Metaclass::II: return {2, 2};
    case Metaclass::III: return {1, 1};
    case Metaclass::IV: return {4, 2};
    case Metaclass::V: return {3, 1};
    case Metaclass::VI: return {5, 1};
    case Metaclass::VII: return {6, 0};
    case Metaclass::VIII_to_XXIII: break;
  }
  throw Error(ErrorCode::InvalidParams, "metaclasses VIII-XXIII have no normal-form constructor");
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// D_i of class I type for the pair (j, k), 0-based.
double d_pair(const std::vector<double>& a, const std::vector<double>& b, int j, int k) {
  const double da = a[j] - a[k];
  return (da * da + b[j] * b[j] + b[k] * b[k]) / (b[j] * b[k]);
}

double monomial(const QuarticForm& f, int i, int j, int k, int l) { return f.monomial(QuarticForm::slot(i, j, k, l)); }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::PreconditionViolated, what);
}

void require_nonzero(const MetaclassParams& p, std::initializer_list<int> alpha_indices) {
  for (int i : alpha_indices) {
    if (p.alpha[i - 1] == 0.0)
      throw Error(ErrorCode::InvalidParams, "alpha" + std::to_string(i) + " must be non-zero for class " +
                                                std::string(to_string(p.id)));
  }
}

}  // namespace

void MetaclassParams::validate() const {
  const ParamCounts n = expected_counts(id);
  const std::string name(to_string(id));
  if (alpha.size() != n.alpha || beta.size() != n.beta) {
    throw Error(ErrorCode::InvalidParams, "class " + name + " takes " + std::to_string(n.alpha) + " alpha and " +
                                              std::to_string(n.beta) + " beta values");
  }
  for (double a : alpha)
    if (!std::isfinite(a)) throw Error(ErrorCode::InvalidParams, "alpha values must be finite");
  for (double b : beta)
    if (!std::isfinite(b) || b <= 0.0) throw Error(ErrorCode::InvalidParams, "beta values must be positive");
}

MediumTensor construct_metaclass(const MetaclassParams& p) {
  p.validate();
  const auto& a = p.alpha;
  const auto& b = p.beta;
  Mat6 m = Mat6::Zero();
  // block i couples rows/cols i and i + 3
  auto rotation_block = [&](int i, double alpha, double beta) {
    m(i, i) = m(i + 3, i + 3) = alpha;
    m(i, i + 3) = -beta;
    m(i + 3, i) = beta;
  };
  auto symmetric_block = [&](int i, double alpha, double coupling) {
    m(i, i) = m(i + 3, i + 3) = alpha;
    m(i, i + 3) = m(i + 3, i) = coupling;
  };
  switch (p.id) {
    case Metaclass::I:
      for (int i = 0; i < 3; ++i) rotation_block(i, a[i], b[i]);
      break;
    case Metaclass::II:
    case Metaclass::V:
      m(0, 0) = m(1, 1) = m(3, 3) = m(4, 4) = a[0];
      m(0, 1) = m(4, 3) = -b[0];
      m(1, 0) = m(3, 4) = b[0];
      m(3, 1) = m(4, 0) = 1.0;
      if (p.id == Metaclass::II) {
        rotation_block(2, a[1], b[1]);
      } else {
        symmetric_block(2, a[1], a[2]);
      }
      break;
    case Metaclass::III:
      for (int i = 0; i < 6; ++i) m(i, i) = a[0];
      m(0, 1) = -b[0];
      m(1, 0) = b[0];
      m(2, 5) = -b[0];
      m(5, 2) = b[0];
      m(3, 4) = b[0];
      m(4, 3) = -b[0];
      m(2, 0) = m(3, 5) = m(4, 2) = m(5, 1) = 1.0;
      break;
    case Metaclass::IV:
      rotation_block(0, a[0], b[0]);
      rotation_block(1, a[1], b[1]);
      symmetric_block(2, a[2], a[3]);
      break;
    case Metaclass::VI:
      rotation_block(0, a[0], b[0]);
      symmetric_block(1, a[1], a[3]);
      symmetric_block(2, a[2], a[4]);
      break;
    case Metaclass::VII:
      for (int i = 0; i < 3; ++i) symmetric_block(i, a[i], a[i + 3]);
      break;
    case Metaclass::VIII_to_XXIII:
      break;
  }
  return MediumTensor(m);
}

DInvariants d_invariants(const MetaclassParams& p) {
  p.validate();
  const auto& a = p.alpha;
  const auto& b = p.beta;
  DInvariants d;
  const QuarticForm f = tamm_rubilar(construct_metaclass(p));
  switch (p.id) {
    case Metaclass::I: {
      d.C = b[0] * b[1] * b[2];
      d.D1 = d_pair(a, b, 1, 2);
      d.D2 = d_pair(a, b, 0, 2);
      d.D3 = d_pair(a, b, 0, 1);
      d.D0 = -monomial(f, 0, 1, 2, 3) / d.C;
      const double rhs = 4.0 * (4.0 + *d.D1 * *d.D2 * *d.D3 - *d.D1 * *d.D1 - *d.D2 * *d.D2 - *d.D3 * *d.D3);
      d.d0_relation_residual = std::abs(*d.D0 * *d.D0 - rhs);
      break;
    }
    case Metaclass::IV: {
      require_nonzero(p, {4});
      d.C = b[0] * b[1] * a[3];
      const double d23 = a[1] - a[2], d13 = a[0] - a[2];
      d.D1 = (d23 * d23 + b[1] * b[1] - a[3] * a[3]) / (b[1] * a[3]);
      d.D2 = (d13 * d13 + b[0] * b[0] - a[3] * a[3]) / (b[0] * a[3]);
      d.D3 = d_pair(a, b, 0, 1);
      d.D0 = monomial(f, 0, 1, 2, 3) / d.C;
      break;
    }
    case Metaclass::VI: {
      require_nonzero(p, {4, 5});
      d.C = b[0] * a[3] * a[4];
      d.D0 = monomial(f, 0, 1, 2, 3) / d.C;
      d.D1 = monomial(f, 2, 2, 3, 3) / d.C;
      d.D2 = -monomial(f, 1, 1, 3, 3) / d.C;
      d.D3 = -monomial(f, 1, 1, 2, 2) / d.C;
      break;
    }
    case Metaclass::VII: {
      require_nonzero(p, {4, 5, 6});
      d.C = a[3] * a[4] * a[5];
      auto dvii = [&](int j, int k) {
        const double da = a[j] - a[k];
        return (da * da - a[j + 3] * a[j + 3] - a[k + 3] * a[k + 3]) / (a[j + 3] * a[k + 3]);
      };
      d.D1 = dvii(1, 2);
      d.D2 = dvii(0, 2);
      d.D3 = dvii(0, 1);
      d.D0 = monomial(f, 0, 1, 2, 3) / d.C;
      const double rhs = 4.0 * (-4.0 + *d.D1 * *d.D2 * *d.D3 + *d.D1 * *d.D1 + *d.D2 * *d.D2 + *d.D3 * *d.D3);
      d.d0_relation_residual = std::abs(*d.D0 * *d.D0 - rhs);
      break;
    }
    default:
      throw Error(ErrorCode::InvalidParams,
                  "no D-invariants are defined for class " + std::string(to_string(p.id)));
  }
  return d;
}

QuarticForm display_quartic(const MetaclassParams& p, const DInvariants& d) {
  if (!d.D0 || !d.D1 || !d.D2 || !d.D3)
    throw Error(ErrorCode::InvalidParams, "display polynomial needs D0..D3");
  const double D[4] = {*d.D0, *d.D1, *d.D2, *d.D3};
  // monomial coefficients of x0^4..x3^4, x0 x1 x2 x3, x_a^2 x_b^2
  std::array<double, 4> quartic{};
  double mixed = 0.0;
  Mat4 squares = Mat4::Zero();
  auto pair = [&](int x, int y, double c) { squares(x, y) += c; };
  switch (p.id) {
    case Metaclass::I:
      quartic = {1, 1, 1, 1};
      mixed = -D[0];
      pair(2, 3, D[1]), pair(0, 1, -D[1]);
      pair(1, 3, D[2]), pair(0, 2, -D[2]);
      pair(1, 2, D[3]), pair(0, 3, -D[3]);
      break;
    case Metaclass::IV:
      quartic = {1, -1, -1, 1};
      mixed = D[0];
      pair(2, 3, D[1]), pair(0, 1, -D[1]);
      pair(1, 3, D[2]), pair(0, 2, -D[2]);
      pair(1, 2, -D[3]), pair(0, 3, -D[3]);
      break;
    case Metaclass::VI:
      quartic = {1, 1, -1, -1};
      mixed = D[0];
      pair(2, 3, D[1]), pair(0, 1, -D[1]);
      pair(1, 3, -D[2]), pair(0, 2, -D[2]);
      pair(1, 2, -D[3]), pair(0, 3, -D[3]);
      break;
    case Metaclass::VII:
      quartic = {1, 1, 1, 1};
      mixed = D[0];
      pair(2, 3, -D[1]), pair(0, 1, -D[1]);
      pair(1, 3, -D[2]), pair(0, 2, -D[2]);
      pair(1, 2, -D[3]), pair(0, 3, -D[3]);
      break;
    default:
      throw Error(ErrorCode::InvalidParams,
                  "no normal-form polynomial is displayed for class " + std::string(to_string(p.id)));
  }
  QuarticForm f;
  for (int i = 0; i < 4; ++i) f[QuarticForm::slot(i, i, i, i)] = d.C * quartic[i];
  f[QuarticForm::slot(0, 1, 2, 3)] = d.C * mixed / 24.0;
  for (int x = 0; x < 4; ++x)
    for (int y = x + 1; y < 4; ++y) f[QuarticForm::slot(x, x, y, y)] = d.C * squares(x, y) / 6.0;
  return f;
}

std::optional<int> birefringence_condition_I(const MetaclassParams& p, double tol) {
  if (p.id != Metaclass::I) throw Error(ErrorCode::InvalidParams, "birefringence condition applies to class I");
  p.validate();
  std::optional<int> found;
  int count = 0;
  const int others[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  for (int i = 0; i < 3; ++i) {
    const auto [j, k] = others[i];
    if (close(p.alpha[j], p.alpha[k], tol) && close(p.beta[j], p.beta[k], tol)) {
      found = i + 1;
      ++count;
    }
  }
  if (count != 1) return std::nullopt;
  return found;
}

ClosedFormCones cones_closed_form(const MetaclassParams& p, double tol) {
  p.validate();
  const auto& a = p.alpha;
  const auto& b = p.beta;
  switch (p.id) {
    case Metaclass::I: {
      require(birefringence_condition_I(p, tol).has_value(),
              "class I needs alpha_i' = alpha_i'' and beta_i' = beta_i'' for exactly one i");
      const double D[3] = {d_pair(a, b, 1, 2), d_pair(a, b, 0, 2), d_pair(a, b, 0, 1)};
      Vec4 plus(1, 0, 0, 0), minus(1, 0, 0, 0);
      for (int i = 0; i < 3; ++i) {
        const double root = std::sqrt(std::max(0.0, D[i] * D[i] - 4.0));
        plus[i + 1] = 0.5 * (-D[i] + root);
        minus[i + 1] = 0.5 * (-D[i] - root);
      }
      return {QuadricForm(plus.asDiagonal().toDenseMatrix()), QuadricForm(minus.asDiagonal().toDenseMatrix()),
              b[0] * b[1] * b[2]};
    }
    case Metaclass::II: {
      require(close(a[0], a[1], tol), "class II needs alpha1 = alpha2");
      require(close(b[0], b[1], tol), "class II needs beta1 = beta2");
      Mat4 plus;
      plus << 1, 0, 0, b[0], 0, -b[0], 0, 0, 0, 0, -b[0], 0, b[0], 0, 0, 0;
      Mat4 minus = plus;
      minus(0, 0) = -1;
      return {QuadricForm(plus), QuadricForm(minus), b[0]};
    }
    case Metaclass::IV: {
      require(close(a[0], a[1], tol), "class IV needs alpha1 = alpha2");
      require(close(b[0], b[1], tol), "class IV needs beta1 = beta2");
      require(std::abs(a[3]) > tol, "class IV needs alpha4 != 0");
      require(!close(a[2] * a[2], a[3] * a[3], tol), "class IV needs alpha3^2 != alpha4^2");
      const double d23 = a[1] - a[2];
      const double d1 = (d23 * d23 + b[1] * b[1] - a[3] * a[3]) / (b[1] * a[3]);
      const double root = std::sqrt(d1 * d1 + 4.0);
      const double p_ = 0.5 * (-d1 + root), m_ = 0.5 * (-d1 - root);
      return {QuadricForm(Vec4(1, p_, p_, -1).asDiagonal().toDenseMatrix()),
              QuadricForm(Vec4(1, m_, m_, -1).asDiagonal().toDenseMatrix()), b[0] * b[1] * a[3]};
    }
    default:
      throw Error(ErrorCode::PreconditionViolated,
                  "closed-form light cones exist only for classes I, II and IV, not " + std::string(to_string(p.id)));
  }
}

ExclusionEvidence exclusion_evidence(const MetaclassParams& p, const FactorOptions& options) {
  p.validate();
  switch (p.id) {
    case Metaclass::III: break;
    case Metaclass::V: require_nonzero(p, {3}); break;
    case Metaclass::VI: require_nonzero(p, {4, 5}); break;
    case Metaclass::VII: require_nonzero(p, {4, 5, 6}); break;
    default:
      throw Error(ErrorCode::InvalidParams,
                  "exclusion applies to classes III, V, VI and VII, not " + std::string(to_string(p.id)));
  }
  ExclusionEvidence out{p.id, factor_quartic(tamm_rubilar(construct_metaclass(p)), options), false, {}};
  out.excluded = out.factorization.tag != BirefringenceTag::DoubleLightCone;
  if (p.id == Metaclass::VI) {
    const double d3 = *d_invariants(p).D3;
    const double root = std::sqrt(d3 * d3 + 4.0);
    for (int sigma : {1, -1}) {
      const Mat4 plus = Vec4(1, -sigma, 0.5 * (sigma * d3 + root), 0.5 * (-d3 - sigma * root)).asDiagonal();
      const Mat4 minus = Vec4(1, -sigma, 0.5 * (sigma * d3 - root), 0.5 * (-d3 + sigma * root)).asDiagonal();
      out.candidates.push_back({sigma, plus, minus, signature_of(plus), signature_of(minus)});
    }
  }
  return out;
}

TransformII transform_II(double alpha1, double beta1) {
  if (!(beta1 > 0.0) || !std::isfinite(beta1) || !std::isfinite(alpha1))
    throw Error(ErrorCode::InvalidParams, "transform_II needs beta1 > 0");
  const double b = beta1;
  const double w = std::sqrt(1.0 + 4.0 * b * b);
  Mat4 jac_inverse;
  jac_inverse << 0, 0, (1 - w) / (2 * b), (1 + w) / (2 * b),
                 0, 1, 0, 0,
                 1, 0, 0, 0,
                 0, 0, 1, 1;
  const Mat4 l = jac_inverse.inverse();
  const MediumTensor normal = construct_metaclass({Metaclass::II, {alpha1, alpha1}, {b, b}});

  Mat6 shape;
  shape << 0, 0, 0, b * b, 0, 0,
           0, b, -b, 0, b * (w - 1), -b,
           0, b, -b, 0, -b, -b * (1 + w),
           -w * w, 0, 0, 0, 0, 0,
           0, -b * (1 + w), b, 0, b, b,
           0, b, b * (w - 1), 0, -b, -b;
  const Mat6 display = alpha1 * Mat6::Identity() + shape / w;
  return {w, l, pullback(normal, l), MediumTensor(display)};
}

ConstitutiveSplit three_plus_one_split(const MediumTensor& kappa) {
  const Mat6& m = kappa.matrix();
  return {-m.block<3, 3>(3, 0), m.block<3, 3>(0, 3), m.block<3, 3>(3, 3), -m.block<3, 3>(0, 0)};
}

MetaclassParams class_iv_params_for_d1(double d1) {
  if (!std::isfinite(d1)) throw Error(ErrorCode::InvalidParams, "D1 must be finite");
  const double a4 = 0.5 * (-d1 + std::sqrt(d1 * d1 + 4.0));
  return {Metaclass::IV, {0.0, 0.0, 0.0, a4}, {1.0, 1.0}};
}

}  // namespace birelab
