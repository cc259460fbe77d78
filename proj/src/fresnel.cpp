#include "birelab/fresnel.hpp"

#include <algorithm>
#include <cmath>

#include "birelab/error.hpp"

namespace birelab {

namespace {

struct SlotTables {
  std::array<MultiIndex, QuarticForm::kSize> indices{};
  std::array<int, 256> slot_of{};
  std::array<int, QuarticForm::kSize> multiplicity{};
};

const SlotTables& tables() {
  static const SlotTables t = [] {
    SlotTables out;
    int n = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j)
        for (int k = j; k < 4; ++k)
          for (int l = k; l < 4; ++l) out.indices[n++] = {i, j, k, l};
    out.multiplicity.fill(0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            MultiIndex m{i, j, k, l};
            std::sort(m.begin(), m.end());
            const auto it = std::find(out.indices.begin(), out.indices.end(), m);
            const int s = static_cast<int>(it - out.indices.begin());
            out.slot_of[tensor_index(i, j, k, l)] = s;
            ++out.multiplicity[s];
          }
    return out;
  }();
  return t;
}

}  // namespace

const std::array<MultiIndex, QuarticForm::kSize>& QuarticForm::multi_indices() { return tables().indices; }

int QuarticForm::slot(int i, int j, int k, int l) { return tables().slot_of[tensor_index(i, j, k, l)]; }

int QuarticForm::multiplicity(int slot) { return tables().multiplicity[slot]; }

std::string QuarticForm::key(int slot) {
  std::string s;
  for (int x : tables().indices[slot]) s.push_back(static_cast<char>('0' + x));
  return s;
}

std::array<int, 4> QuarticForm::exponents(int slot) {
  std::array<int, 4> e{};
  for (int x : tables().indices[slot]) ++e[x];
  return e;
}

double QuarticForm::norm() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

double QuarticForm::evaluate(const Vec4& xi) const {
  const auto& idx = tables().indices;
  double acc = 0.0;
  for (int s = 0; s < kSize; ++s) {
    const auto& m = idx[s];
    acc += multiplicity(s) * c_[s] * xi[m[0]] * xi[m[1]] * xi[m[2]] * xi[m[3]];
  }
  return acc;
}

QuarticForm QuarticForm::operator+(const QuarticForm& o) const {
  QuarticForm r;
  for (int s = 0; s < kSize; ++s) r.c_[s] = c_[s] + o.c_[s];
  return r;
}

QuarticForm QuarticForm::operator-(const QuarticForm& o) const {
  QuarticForm r;
  for (int s = 0; s < kSize; ++s) r.c_[s] = c_[s] - o.c_[s];
  return r;
}

QuarticForm QuarticForm::operator*(double k) const {
  QuarticForm r;
  for (int s = 0; s < kSize; ++s) r.c_[s] = k * c_[s];
  return r;
}

QuarticForm symmetrize(const FullTensor4& g) {
  QuarticForm f;
  for (int n = 0; n < 256; ++n) f[tables().slot_of[n]] += g[n];
  for (int s = 0; s < QuarticForm::kSize; ++s) f[s] /= QuarticForm::multiplicity(s);
  return f;
}

FullTensor4 expand(const QuarticForm& f) {
  FullTensor4 g{};
  for (int n = 0; n < 256; ++n) g[n] = f[tables().slot_of[n]];
  return g;
}

FullTensor4 tamm_rubilar_raw(const MediumTensor& kappa) {
  const RawComponents k = kappa.components();
  FullTensor4 g{};
  const auto& perms = permutations4();
  for (const auto& pa : perms) {
    const auto [a1, a2, a3, a4] = pa.index;
    for (const auto& pb : perms) {
      const auto [b1, b2, b5, kk] = pb.index;
      const double first = pa.sign * pb.sign * k(a1, a2, b1, b2);
      if (first == 0.0) continue;
      for (const auto& pc : perms) {
        const auto [b3, b4, b6, l] = pc.index;
        const double s = first * pc.sign;
        for (int i = 0; i < 4; ++i) {
          const double second = s * k(a3, i, b3, b4);
          if (second == 0.0) continue;
          for (int j = 0; j < 4; ++j) g[tensor_index(i, j, kk, l)] += second * k(a4, j, b5, b6);
        }
      }
    }
  }
  for (double& x : g) x /= 48.0;
  return g;
}

QuarticForm tamm_rubilar(const MediumTensor& kappa) { return symmetrize(tamm_rubilar_raw(kappa)); }

double evaluate(const QuarticForm& f, const Vec4& xi) { return f.evaluate(xi); }

QuarticForm transform_density(const QuarticForm& f, const Mat4& t, double tol) {
  const double det = t.determinant();
  if (std::abs(det) <= tol * std::pow(t.norm(), 4)) {
    throw Error(ErrorCode::SingularJacobian, "Jacobian determinant " + std::to_string(det));
  }
  const FullTensor4 g = expand(f);
  // Contract one index at a time: 4 passes of 4^5 operations.
  FullTensor4 cur = g;
  for (int pass = 0; pass < 4; ++pass) {
    FullTensor4 next{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double acc = 0.0;
            // the transformed slot is always the first; indices rotate each pass
            for (int a = 0; a < 4; ++a) acc += t(i, a) * cur[tensor_index(a, j, k, l)];
            next[tensor_index(j, k, l, i)] = acc;
          }
    cur = next;
  }
  QuarticForm out = symmetrize(cur);
  return out * (1.0 / det);
}

std::array<double, 5> restrict_to_plane(const QuarticForm& f, const Vec4& u, const Vec4& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw Error(ErrorCode::DependentVectors, "zero spanning vector");
  const double cosang = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
  if (std::sqrt(1.0 - cosang * cosang) < 1e-10) {
    throw Error(ErrorCode::DependentVectors, "spanning vectors are parallel");
  }
  static constexpr int kBinomial[5] = {1, 4, 6, 4, 1};
  const FullTensor4 g = expand(f);
  std::array<double, 5> c{};
  for (int k = 0; k <= 4; ++k) {
    // slots 0..(3-k) take u, the remaining k slots take v
    double acc = 0.0;
    for (int n = 0; n < 256; ++n) {
      const int idx[4] = {n / 64, (n / 16) % 4, (n / 4) % 4, n % 4};
      double w = g[n];
      for (int p = 0; p < 4; ++p) w *= (p < 4 - k) ? u[idx[p]] : v[idx[p]];
      acc += w;
    }
    c[k] = kBinomial[k] * acc;
  }
  return c;
}

bool plane_in_surface(const QuarticForm& f, const Vec4& u, const Vec4& v, double tol) {
  const auto c = restrict_to_plane(f, u, v);
  const double scale = f.norm() * std::pow(u.lpNorm<1>() + v.lpNorm<1>(), 4);
  for (double x : c)
    if (std::abs(x) > tol * scale) return false;
  return true;
}

}  // namespace birelab
