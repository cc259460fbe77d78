#pragma once

#include <array>
#include <string>

#include "birelab/pair_basis.hpp"
#include "birelab/tensor_core.hpp"

namespace birelab {

using MultiIndex = std::array<int, 4>;

/// Fully symmetric degree-4 tensor G^{ijkl} on R^4, stored by sorted multi-index
/// (i <= j <= k <= l). Coefficients are tensor entries, not polynomial
/// coefficients: f(xi) = sum over all 256 index tuples of G^{ijkl} xi_i xi_j xi_k xi_l.
class QuarticForm {
 public:
  static constexpr int kSize = 35;

  /// Sorted multi-indices in lexicographic order: 0000, 0001, ..., 3333.
  static const std::array<MultiIndex, kSize>& multi_indices();
  /// Slot of (i, j, k, l) in any order.
  static int slot(int i, int j, int k, int l);
  /// Number of index tuples that sort to this slot (4! / prod of repeat factorials).
  static int multiplicity(int slot);
  /// "0123" style key of a slot.
  static std::string key(int slot);
  /// Exponent vector of a slot: how often each coordinate appears.
  static std::array<int, 4> exponents(int slot);

  double operator[](int slot) const { return c_[slot]; }
  double& operator[](int slot) { return c_[slot]; }
  double coeff(int i, int j, int k, int l) const { return c_[slot(i, j, k, l)]; }

  /// max |coefficient|
  double norm() const;
  bool is_zero() const { return norm() == 0.0; }

  double evaluate(const Vec4& xi) const;
  /// Coefficient of the monomial with the given exponents in the expanded polynomial.
  double monomial(int slot) const { return multiplicity(slot) * c_[slot]; }

  QuarticForm operator+(const QuarticForm& o) const;
  QuarticForm operator-(const QuarticForm& o) const;
  QuarticForm operator*(double s) const;

 private:
  std::array<double, kSize> c_{};
};

using FullTensor4 = std::array<double, 256>;
constexpr int tensor_index(int i, int j, int k, int l) { return ((i * 4 + j) * 4 + k) * 4 + l; }

/// Symmetrization with the 1/4! scaling.
QuarticForm symmetrize(const FullTensor4& g);
FullTensor4 expand(const QuarticForm& f);

/// The unsymmetrized contraction G0^{ijkl}
/// = 1/48 k^{a1a2}_{b1b2} k^{a3i}_{b3b4} k^{a4j}_{b5b6} e^{b1b2b5k} e^{b3b4b6l} e_{a1a2a3a4}.
FullTensor4 tamm_rubilar_raw(const MediumTensor& kappa);
/// Symmetric part of tamm_rubilar_raw: the Tamm-Rubilar density.
QuarticForm tamm_rubilar(const MediumTensor& kappa);

double evaluate(const QuarticForm& f, const Vec4& xi);

/// Density transformation with T = dx'/dx:
/// G'^{ijkl} = det(T)^{-1} G^{abcd} T^i_a T^j_b T^k_c T^l_d.
QuarticForm transform_density(const QuarticForm& f, const Mat4& t, double tol = 1e-12);

/// Coefficients c[k] of s^(4-k) t^k in f(s u + t v).
std::array<double, 5> restrict_to_plane(const QuarticForm& f, const Vec4& u, const Vec4& v);

/// True when f vanishes identically on span{u, v}, relative to |f| |u|^4-ish scale.
bool plane_in_surface(const QuarticForm& f, const Vec4& u, const Vec4& v, double tol = 1e-9);

}  // namespace birelab
