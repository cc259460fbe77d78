#include "birelab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/QR>

#include "birelab/error.hpp"
#include "birelab/pair_basis.hpp"

namespace birelab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double nonzero(std::mt19937_64& rng, double lo, double hi, double min_abs) {
  for (;;) {
    const double x = uniform(rng, lo, hi);
    if (std::abs(x) >= min_abs) return x;
  }
}

using Cplx = std::complex<double>;

// Distinct eigenvalues the normal form is built from, one per Jordan block group.
std::vector<Cplx> designed_eigenvalues(const MetaclassParams& p) {
  const auto& a = p.alpha;
  const auto& b = p.beta;
  switch (p.id) {
    case Metaclass::I: return {{a[0], b[0]}, {a[1], b[1]}, {a[2], b[2]}};
    case Metaclass::II: return {{a[0], b[0]}, {a[1], b[1]}};
    case Metaclass::III: return {{a[0], b[0]}};
    case Metaclass::IV: return {{a[0], b[0]}, {a[1], b[1]}, a[2] + a[3], a[2] - a[3]};
    case Metaclass::V: return {{a[0], b[0]}, a[1] + a[2], a[1] - a[2]};
    case Metaclass::VI: return {{a[0], b[0]}, a[1] + a[3], a[1] - a[3], a[2] + a[4], a[2] - a[4]};
    case Metaclass::VII: return {a[0] + a[3], a[0] - a[3], a[1] + a[4], a[1] - a[4], a[2] + a[5], a[2] - a[5]};
    case Metaclass::VIII_to_XXIII: break;
  }
  return {};
}

bool well_separated(const MetaclassParams& p, double gap) {
  const auto ev = designed_eigenvalues(p);
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) < gap) return false;  // keeps the medium invertible
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      if (std::abs(ev[i] - ev[j]) < gap) return false;
  }
  return true;
}

}  // namespace

std::mt19937_64 draw_rng(std::uint64_t seed, std::uint64_t draw) {
  std::seed_seq seq{splitmix64(seed), splitmix64(seed ^ splitmix64(draw + 1))};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Mat4 random_orthogonal(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Mat4> qr(g);
  Mat4 q = qr.householderQ();
  // sign fix makes the distribution Haar
  for (int k = 0; k < 4; ++k)
    if (qr.matrixQR()(k, k) < 0) q.col(k) = -q.col(k);
  return q;
}

Mat4 random_well_conditioned(std::mt19937_64& rng, double max_cond) {
  const double log_max = std::log(max_cond);
  Vec4 s;
  s[0] = 1.0;
  for (int k = 1; k < 4; ++k) s[k] = std::exp(uniform(rng, 0.0, log_max));
  s *= std::exp(uniform(rng, -0.5, 0.5));
  return random_orthogonal(rng) * s.asDiagonal() * random_orthogonal(rng);
}

Mat4 random_lorentz_metric(std::mt19937_64& rng) {
  const Mat4 p = random_well_conditioned(rng, 5.0);
  const Mat4 eta = Vec4(-1, 1, 1, 1).asDiagonal();
  const Mat4 g = p.transpose() * eta * p;
  return 0.5 * (g + g.transpose());
}

Mat4 random_symmetric_of_rank(std::mt19937_64& rng, int rank) {
  const Mat4 q = random_orthogonal(rng);
  Vec4 d = Vec4::Zero();
  for (int k = 0; k < rank; ++k) d[k] = (uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0) * uniform(rng, 0.3, 2.0);
  const Mat4 m = q * d.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

MediumTensor random_skewon_free(std::mt19937_64& rng) {
  Mat6 s;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) s(i, j) = s(j, i) = uniform(rng, -1, 1);
  return MediumTensor(wedge_pairing() * s);
}

MetaclassParams random_birefringent_params(std::mt19937_64& rng, Metaclass id) {
  switch (id) {
    case Metaclass::I: {
      for (;;) {
        const int i = static_cast<int>(uniform(rng, 0, 3)) % 3;
        std::vector<double> a(3), b(3);
        const double shared_a = uniform(rng, -2, 2), shared_b = uniform(rng, 0.2, 3);
        for (int k = 0; k < 3; ++k) {
          a[k] = shared_a;
          b[k] = shared_b;
        }
        a[i] = uniform(rng, -2, 2);
        b[i] = uniform(rng, 0.2, 3);
        if (std::hypot(a[i] - shared_a, b[i] - shared_b) < 0.1) continue;
        return {id, a, b};
      }
    }
    case Metaclass::II: {
      const double a = uniform(rng, -2, 2), b = uniform(rng, 0.2, 3);
      return {id, {a, a}, {b, b}};
    }
    case Metaclass::IV: {
      for (;;) {
        const double a = uniform(rng, -2, 2), b = uniform(rng, 0.2, 3);
        const double a3 = uniform(rng, -2, 2), a4 = nonzero(rng, -2, 2, 0.2);
        if (std::abs(a3 * a3 - a4 * a4) < 0.1) continue;
        return {id, {a, a, a3, a4}, {b, b}};
      }
    }
    default:
      throw Error(ErrorCode::InvalidParams, "no birefringent normal form for class " + std::string(to_string(id)));
  }
}

MetaclassParams random_generic_params(std::mt19937_64& rng, Metaclass id) {
  for (;;) {
    MetaclassParams p{id, {}, {}};
    switch (id) {
      case Metaclass::I: p.alpha.resize(3), p.beta.resize(3); break;
      case Metaclass::II: p.alpha.resize(2), p.beta.resize(2); break;
      case Metaclass::III: p.alpha.resize(1), p.beta.resize(1); break;
      case Metaclass::IV: p.alpha.resize(4), p.beta.resize(2); break;
      case Metaclass::V: p.alpha.resize(3), p.beta.resize(1); break;
      case Metaclass::VI: p.alpha.resize(5), p.beta.resize(1); break;
      case Metaclass::VII: p.alpha.resize(6); break;
      case Metaclass::VIII_to_XXIII:
        throw Error(ErrorCode::InvalidParams, "metaclasses VIII-XXIII have no normal-form constructor");
    }
    for (double& a : p.alpha) a = uniform(rng, -2, 2);
    for (double& b : p.beta) b = uniform(rng, 0.2, 3);
    // couplings that the exclusion and D-invariant formulas divide by
    const int first_coupling = id == Metaclass::V ? 2 : id == Metaclass::VI ? 3 : id == Metaclass::VII ? 3 : -1;
    if (id == Metaclass::IV) p.alpha[3] = nonzero(rng, -2, 2, 0.2);
    if (first_coupling >= 0)
      for (std::size_t k = first_coupling; k < p.alpha.size(); ++k) p.alpha[k] = nonzero(rng, -2, 2, 0.2);
    if (well_separated(p, 0.1)) return p;
  }
}

}  // namespace birelab
