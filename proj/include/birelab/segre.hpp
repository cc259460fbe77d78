#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "birelab/tensor_core.hpp"

namespace birelab {

enum class Metaclass { I, II, III, IV, V, VI, VII, VIII_to_XXIII };

std::string_view to_string(Metaclass id);
std::optional<Metaclass> metaclass_from_string(std::string_view name);

struct RealEigenBlocks {
  double value = 0.0;
  std::vector<int> sizes;  // descending
};

struct ComplexEigenBlocks {
  std::complex<double> value;  // imaginary part > 0; the conjugate carries the same sizes
  std::vector<int> sizes;      // descending
};

/// Jordan block structure of a real 6x6 matrix.
struct SegreType {
  std::vector<RealEigenBlocks> real_blocks;
  std::vector<ComplexEigenBlocks> complex_blocks;

  /// "[2 2bar 1 1bar]": real sizes descending, then complex sizes descending.
  std::string label() const;
  bool has_real_block_of_size_at_least(int n) const;
  /// Sum of real sizes plus twice the complex sizes.
  int dimension() const;
};

struct SegreOptions {
  /// Finest eigenvalue clustering distance, relative to the Frobenius norm.
  double cluster_tol = 1e-7;
  /// Singular values of (A - lambda)^k below rank_tol times the largest one count as zero.
  double rank_tol = 1e-8;
};

/// Eigenvalues are grouped by single-linkage clustering, starting coarse and
/// refining a cluster until the kernel dimensions of (A - lambda)^k are
/// consistent with a Jordan structure of the cluster's size. A cluster that is
/// still inconsistent at cluster_tol, or two clusters closer than
/// 10 * cluster_tol, raise IllConditioned.
SegreType segre_type(const Mat6& mat, const SegreOptions& options = {});

/// Label of each metaclass I-VII; III, V, VI and VII come from the normal-form
/// constructors on first use.
const std::string& reference_label(Metaclass id);

/// Requires a skewon-free, invertible medium.
Metaclass metaclass_of(const MediumTensor& kappa, const SegreOptions& options = {});
Metaclass metaclass_of_type(const SegreType& type);

}  // namespace birelab
