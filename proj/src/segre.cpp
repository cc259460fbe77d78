#include "birelab/segre.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "birelab/error.hpp"
#include "birelab/metaclass.hpp"

namespace birelab {

namespace {

using Cplx = std::complex<double>;
using CMat6 = Eigen::Matrix<Cplx, 6, 6>;

constexpr double kCoarsestCluster = 1e-2;

// Rounding level of a power of the normalized matrix.
constexpr double kNoiseFloor = 1e-12;

int nullity(const CMat6& m, double rank_tol) {
  const auto s = Eigen::JacobiSVD<CMat6>(m).singularValues();
  const double threshold = std::max(rank_tol * s[0], kNoiseFloor);
  int n = 0;
  for (int k = 0; k < 6; ++k) n += s[k] <= threshold;
  return n;
}

std::vector<std::vector<int>> single_linkage(const std::vector<int>& members, const std::array<Cplx, 6>& ev,
                                             double tau) {
  std::vector<int> group(members.size());
  std::iota(group.begin(), group.end(), 0);
  auto find = [&](int x) {
    while (group[x] != x) x = group[x] = group[group[x]];
    return x;
  };
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (std::abs(ev[members[a]] - ev[members[b]]) <= tau) group[find(a)] = find(b);
  std::vector<std::vector<int>> out;
  std::vector<int> slot(members.size(), -1);
  for (std::size_t a = 0; a < members.size(); ++a) {
    const int root = find(a);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[root]].push_back(members[a]);
  }
  return out;
}

struct AcceptedCluster {
  Cplx value;
  std::vector<int> sizes;
};

class Clusterer {
 public:
  Clusterer(const Mat6& normalized, const SegreOptions& options)
      : a_(normalized.cast<Cplx>()), options_(options) {
    const auto values = Eigen::EigenSolver<Mat6>(normalized, false).eigenvalues();
    for (int k = 0; k < 6; ++k) ev_[k] = values[k];
  }

  std::vector<AcceptedCluster> run() {
    const std::vector<int> all{0, 1, 2, 3, 4, 5};
    for (const auto& c : single_linkage(all, ev_, kCoarsestCluster)) resolve(c, kCoarsestCluster);
    for (std::size_t i = 0; i < accepted_.size(); ++i)
      for (std::size_t j = i + 1; j < accepted_.size(); ++j)
        if (std::abs(accepted_[i].value - accepted_[j].value) < 10.0 * options_.cluster_tol)
          throw Error(ErrorCode::IllConditioned, "eigenvalue clusters are too close to separate");
    return accepted_;
  }

 private:
  // Block sizes if (A - lambda)^k has kernel dimensions of a Jordan structure
  // with m = |cluster| and the spread fits the largest block size.
  bool jordan_sizes(Cplx lambda, int m, double spread, std::vector<int>& sizes) const {
    std::vector<int> d(m + 1, 0);
    CMat6 power = CMat6::Identity();
    const CMat6 shifted = a_ - lambda * CMat6::Identity();
    for (int j = 1; j <= m; ++j) {
      power = power * shifted;
      d[j] = nullity(power, options_.rank_tol);
    }
    if (d[m] != m || d[1] < 1) return false;
    std::vector<int> inc(m + 2, 0);
    for (int j = 1; j <= m; ++j) {
      inc[j] = d[j] - d[j - 1];
      if (inc[j] < 0 || (j > 1 && inc[j] > inc[j - 1])) return false;
    }
    int kmax = 0;
    for (int j = 1; j <= m; ++j)
      if (inc[j] > 0) kmax = j;
    if (spread > std::pow(options_.cluster_tol, 1.0 / kmax)) return false;
    sizes.clear();
    for (int j = kmax; j >= 1; --j)
      for (int c = 0; c < inc[j] - inc[j + 1]; ++c) sizes.push_back(j);
    return true;
  }

  void resolve(const std::vector<int>& members, double tau) {
    Cplx mean = 0.0;
    for (int k : members) mean += ev_[k];
    mean /= static_cast<double>(members.size());
    double spread = 0.0;
    for (int k : members) spread = std::max(spread, std::abs(ev_[k] - mean));
    std::vector<int> sizes;
    if (members.size() == 1) {
      accepted_.push_back({ev_[members[0]], {1}});
      return;
    }
    if (jordan_sizes(mean, static_cast<int>(members.size()), spread, sizes)) {
      accepted_.push_back({mean, sizes});
      return;
    }
    const double finer = tau / 10.0;
    if (finer < options_.cluster_tol * (1.0 - 1e-9))
      throw Error(ErrorCode::IllConditioned, "eigenvalue cluster has no consistent Jordan structure");
    for (const auto& c : single_linkage(members, ev_, finer)) resolve(c, finer);
  }

  CMat6 a_;
  SegreOptions options_;
  std::array<Cplx, 6> ev_;
  std::vector<AcceptedCluster> accepted_;
};

}  // namespace

std::string_view to_string(Metaclass id) {
  switch (id) {
    case Metaclass::I: return "I";
    case Metaclass::II: return "II";
    case Metaclass::III: return "III";
    case Metaclass::IV: return "IV";
    case Metaclass::V: return "V";
    case Metaclass::VI: return "VI";
    case Metaclass::VII: return "VII";
    case Metaclass::VIII_to_XXIII: return "VIII_to_XXIII";
  }
  return "unknown";
}

std::optional<Metaclass> metaclass_from_string(std::string_view name) {
  for (Metaclass id : {Metaclass::I, Metaclass::II, Metaclass::III, Metaclass::IV, Metaclass::V, Metaclass::VI,
                       Metaclass::VII, Metaclass::VIII_to_XXIII}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::string SegreType::label() const {
  std::vector<int> real, complex;
  for (const auto& b : real_blocks) real.insert(real.end(), b.sizes.begin(), b.sizes.end());
  for (const auto& b : complex_blocks) complex.insert(complex.end(), b.sizes.begin(), b.sizes.end());
  std::sort(real.rbegin(), real.rend());
  std::sort(complex.rbegin(), complex.rend());
  std::ostringstream out;
  out << '[';
  bool first = true;
  for (int s : real) {
    out << (first ? "" : " ") << s;
    first = false;
  }
  for (int s : complex) {
    out << (first ? "" : " ") << s << ' ' << s << "bar";
    first = false;
  }
  out << ']';
  return out.str();
}

bool SegreType::has_real_block_of_size_at_least(int n) const {
  for (const auto& b : real_blocks)
    for (int s : b.sizes)
      if (s >= n) return true;
  return false;
}

int SegreType::dimension() const {
  int n = 0;
  for (const auto& b : real_blocks) n += std::accumulate(b.sizes.begin(), b.sizes.end(), 0);
  for (const auto& b : complex_blocks) n += 2 * std::accumulate(b.sizes.begin(), b.sizes.end(), 0);
  return n;
}

SegreType segre_type(const Mat6& mat, const SegreOptions& options) {
  SegreType out;
  const double scale = mat.norm();
  if (scale == 0.0) {
    out.real_blocks.push_back({0.0, {1, 1, 1, 1, 1, 1}});
    return out;
  }
  for (const auto& c : Clusterer(mat / scale, options).run()) {
    if (std::abs(c.value.imag()) <= 0.5 * options.cluster_tol) {
      out.real_blocks.push_back({c.value.real() * scale, c.sizes});
    } else if (c.value.imag() > 0) {
      out.complex_blocks.push_back({c.value * scale, c.sizes});
    }
  }
  std::sort(out.real_blocks.begin(), out.real_blocks.end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
  std::sort(out.complex_blocks.begin(), out.complex_blocks.end(), [](const auto& a, const auto& b) {
    return a.value.real() != b.value.real() ? a.value.real() < b.value.real() : a.value.imag() < b.value.imag();
  });
  if (out.dimension() != 6) throw Error(ErrorCode::IllConditioned, "conjugate eigenvalue clusters do not pair up");
  return out;
}

const std::string& reference_label(Metaclass id) {
  static const std::array<std::string, 8> labels = [] {
    auto label_of = [](Metaclass k, std::vector<double> alpha, std::vector<double> beta) {
      return segre_type(construct_metaclass(MetaclassParams{k, std::move(alpha), std::move(beta)}).matrix()).label();
    };
    std::array<std::string, 8> l;
    l[0] = "[1 1bar 1 1bar 1 1bar]";
    l[1] = "[2 2bar 1 1bar]";
    l[2] = label_of(Metaclass::III, {0.3}, {0.7});
    l[3] = "[1 1 1 1bar 1 1bar]";
    l[4] = label_of(Metaclass::V, {0.3, -0.4, 0.9}, {0.7});
    l[5] = label_of(Metaclass::VI, {0.3, -0.4, 0.9, 1.3, -0.6}, {0.7});
    l[6] = label_of(Metaclass::VII, {0.3, -0.4, 0.9, 1.3, -0.75, 0.45}, {});
    l[7] = "real block of size >= 2";
    return l;
  }();
  return labels[static_cast<int>(id)];
}

Metaclass metaclass_of_type(const SegreType& type) {
  if (type.has_real_block_of_size_at_least(2)) return Metaclass::VIII_to_XXIII;
  const std::string label = type.label();
  for (Metaclass id : {Metaclass::I, Metaclass::II, Metaclass::III, Metaclass::IV, Metaclass::V, Metaclass::VI,
                       Metaclass::VII}) {
    if (reference_label(id) == label) return id;
  }
  throw Error(ErrorCode::IllConditioned, "Segre type " + label + " matches no metaclass");
}

Metaclass metaclass_of(const MediumTensor& kappa, const SegreOptions& options) {
  if (!is_skewon_free(kappa)) throw Error(ErrorCode::NotSkewonFree, "medium has a skewon part");
  const auto s = Eigen::JacobiSVD<Mat6>(kappa.matrix()).singularValues();
  if (s[0] == 0.0 || s[5] <= 1e-12 * s[0]) throw Error(ErrorCode::SingularMedium, "medium is not invertible");
  return metaclass_of_type(segre_type(kappa.matrix(), options));
}

}  // namespace birelab
