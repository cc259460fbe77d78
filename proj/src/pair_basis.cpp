#include "birelab/pair_basis.hpp"

#include <algorithm>

#include "birelab/error.hpp"

namespace birelab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AntisymmetryViolation: return "AntisymmetryViolation";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::DependentVectors: return "DependentVectors";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::NotSkewonFree: return "NotSkewonFree";
    case ErrorCode::SingularMedium: return "SingularMedium";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::UnknownBasis: return "UnknownBasis";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::NotRotationallySymmetric: return "NotRotationallySymmetric";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

const std::array<SignedPermutation, 24>& permutations4() {
  static const std::array<SignedPermutation, 24> table = [] {
    std::array<SignedPermutation, 24> out{};
    std::array<int, 4> p{0, 1, 2, 3};
    int n = 0;
    do {
      out[n++] = {p, levi_civita(p[0], p[1], p[2], p[3])};
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return table;
}

const Mat6& wedge_pairing() {
  static const Mat6 j6 = [] {
    Mat6 m = Mat6::Zero();
    m.topRightCorner<3, 3>().setIdentity();
    m.bottomLeftCorner<3, 3>().setIdentity();
    return m;
  }();
  return j6;
}

}  // namespace birelab
