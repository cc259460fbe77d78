#pragma once

#include <cstdint>
#include <random>

#include "birelab/metaclass.hpp"

namespace birelab {

/// Independent stream for draw `draw` of a run seeded with `seed`; the same
/// (seed, draw) always gives the same stream regardless of scheduling.
std::mt19937_64 draw_rng(std::uint64_t seed, std::uint64_t draw);

double uniform(std::mt19937_64& rng, double lo, double hi);
Mat4 random_orthogonal(std::mt19937_64& rng);
/// Q1 diag(s) Q2 with singular values spread over [1, max_cond].
Mat4 random_well_conditioned(std::mt19937_64& rng, double max_cond);
/// P^T diag(-1,1,1,1) P scaled, with P well conditioned.
Mat4 random_lorentz_metric(std::mt19937_64& rng);
/// Symmetric with the given rank and random eigenvalue signs.
Mat4 random_symmetric_of_rank(std::mt19937_64& rng, int rank);
/// J6 S with S symmetric.
MediumTensor random_skewon_free(std::mt19937_64& rng);

/// Class I/II/IV parameters meeting the double-light-cone conditions.
MetaclassParams random_birefringent_params(std::mt19937_64& rng, Metaclass id);
/// Parameters with well-separated eigenvalues and non-zero couplings.
MetaclassParams random_generic_params(std::mt19937_64& rng, Metaclass id);

}  // namespace birelab
