#pragma once

// Frozen index conventions shared by every module: the ordered basis O of
// 2-forms, the bijection b : O -> {0..5}, the permutation symbol and the
// wedge pairing on 2-forms.

#include <array>

#include <Eigen/Dense>

namespace birelab {

using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

struct IndexPair {
  int first;
  int second;
};

/// O = {01, 02, 03, 23, 31, 12}. Position in this array is b(I).
inline constexpr std::array<IndexPair, 6> kPairBasis{{{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}}};

/// Location of dx^i ^ dx^j in basis O: dx^i ^ dx^j = sign * dx^{O[index]}.
/// sign is 0 (and index -1) when i == j.
struct PairSlot {
  int index;
  int sign;
};

constexpr PairSlot pair_slot(int i, int j) {
  if (i == j) return {-1, 0};
  for (int k = 0; k < 6; ++k) {
    if (kPairBasis[k].first == i && kPairBasis[k].second == j) return {k, 1};
    if (kPairBasis[k].first == j && kPairBasis[k].second == i) return {k, -1};
  }
  return {-1, 0};
}

/// Sign of the permutation (a, b, c, d) of (0, 1, 2, 3); 0 if an index repeats.
constexpr int levi_civita(int a, int b, int c, int d) {
  const int p[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  }
  return sign;
}

/// The 24 permutations of (0,1,2,3) with their signs.
struct SignedPermutation {
  std::array<int, 4> index;
  int sign;
};
const std::array<SignedPermutation, 24>& permutations4();

/// Matrix of the pairing (u, v) -> u ^ v on 2-forms in basis O: [[0, I3], [I3, 0]].
const Mat6& wedge_pairing();

}  // namespace birelab
