#include "birelab/quartic_factor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "birelab/error.hpp"

namespace birelab {

namespace {

using Cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec10 = Eigen::Matrix<double, 10, 1>;
using Vec20 = Eigen::Matrix<double, 20, 1>;

constexpr std::array<std::array<int, 2>, 10> kUpper{
    {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};

Mat4 unit_symmetric(int e) {
  Mat4 m = Mat4::Zero();
  const auto [i, j] = kUpper[e];
  m(i, j) = 1.0;
  m(j, i) = 1.0;
  return m;
}

Mat4 from_upper(const double* p) {
  Mat4 m;
  for (int e = 0; e < 10; ++e) {
    const auto [i, j] = kUpper[e];
    m(i, j) = p[e];
    m(j, i) = p[e];
  }
  return m;
}

Vec10 to_upper(const Mat4& m) {
  Vec10 p;
  for (int e = 0; e < 10; ++e) p[e] = m(kUpper[e][0], kUpper[e][1]);
  return p;
}

// Quartic coefficients as a vector weighted so that its Euclidean norm is the
// Frobenius norm of the full symmetric tensor.
Eigen::Matrix<double, 35, 1> weighted(const QuarticForm& f) {
  Eigen::Matrix<double, 35, 1> v;
  for (int s = 0; s < QuarticForm::kSize; ++s) v[s] = std::sqrt(double(QuarticForm::multiplicity(s))) * f[s];
  return v;
}

Mat4 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = normal(rng);
  Mat4 q = Eigen::HouseholderQR<Mat4>(g).householderQ();
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

// Roots of c[4] t^4 + ... + c[0] via the companion matrix, polished by Newton.
std::array<Cplx, 4> quartic_roots(const std::array<double, 5>& c) {
  Mat4 comp = Mat4::Zero();
  for (int k = 0; k < 4; ++k) comp(0, k) = -c[3 - k] / c[4];
  comp(1, 0) = comp(2, 1) = comp(3, 2) = 1.0;
  Eigen::EigenSolver<Mat4> es(comp, false);
  std::array<Cplx, 4> roots;
  for (int k = 0; k < 4; ++k) {
    Cplx z = es.eigenvalues()[k];
    for (int it = 0; it < 3; ++it) {
      Cplx p = c[4], dp = 0.0;
      for (int m = 3; m >= 0; --m) {
        dp = dp * z + p;
        p = p * z + c[m];
      }
      if (std::abs(dp) == 0.0) break;
      const Cplx step = p / dp;
      // keep the step only if it is small; near multiple roots Newton overshoots
      if (std::abs(step) > 1e-6 * (1.0 + std::abs(z))) break;
      z -= step;
    }
    roots[k] = z;
  }
  return roots;
}

struct LineOption {
  double sum;
  double prod;
};

struct Seed {
  double fit;
  Vec3 a0;
  Eigen::Matrix<double, 6, 1> as;
};

// Depth-first search over the root pairings on each sample line. A pairing
// assigns two of the four roots to the factor A; consistent assignments make
// -sum/2 linear and prod quadratic in the line direction.
class PairingSearch {
 public:
  PairingSearch(std::vector<Vec3> dirs, std::vector<std::vector<LineOption>> options, double tol, int max_seeds)
      : dirs_(std::move(dirs)), options_(std::move(options)), tol_(tol), max_seeds_(max_seeds) {
    choice_.resize(dirs_.size());
  }

  std::vector<Seed> run() {
    dfs(0);
    std::sort(seeds_.begin(), seeds_.end(), [](const Seed& a, const Seed& b) { return a.fit < b.fit; });
    return seeds_;
  }

 private:
  static constexpr long kNodeLimit = 200000;

  bool fit(int n, Seed& out) const {
    Eigen::MatrixXd m0(n, 3), m1(n, 6);
    Eigen::VectorXd r0(n), r1(n);
    for (int k = 0; k < n; ++k) {
      const Vec3& r = dirs_[k];
      const LineOption& o = options_[k][choice_[k]];
      m0.row(k) = 2.0 * r.transpose();
      r0[k] = -o.sum;
      m1.row(k) << r[0] * r[0], 2 * r[0] * r[1], 2 * r[0] * r[2], r[1] * r[1], 2 * r[1] * r[2], r[2] * r[2];
      r1[k] = o.prod;
    }
    double worst = 0.0;
    if (n >= 4) {
      out.a0 = m0.colPivHouseholderQr().solve(r0);
      worst = std::max(worst, (m0 * out.a0 - r0).lpNorm<Eigen::Infinity>());
    }
    if (n >= 7) {
      out.as = m1.colPivHouseholderQr().solve(r1);
      worst = std::max(worst, (m1 * out.as - r1).lpNorm<Eigen::Infinity>());
    }
    out.fit = worst;
    return worst <= tol_;
  }

  void dfs(int k) {
    if (++nodes_ > kNodeLimit) return;
    const int n = static_cast<int>(dirs_.size());
    for (int o = 0; o < static_cast<int>(options_[k].size()); ++o) {
      choice_[k] = o;
      Seed s;
      if (!fit(k + 1, s)) continue;
      if (k + 1 == n) {
        record(s);
      } else {
        dfs(k + 1);
      }
    }
  }

  void record(const Seed& s) {
    for (const Seed& other : seeds_) {
      if ((other.a0 - s.a0).norm() + (other.as - s.as).norm() < 1e-6) return;
    }
    seeds_.push_back(s);
    if (static_cast<int>(seeds_.size()) > 4 * max_seeds_) {
      std::sort(seeds_.begin(), seeds_.end(), [](const Seed& a, const Seed& b) { return a.fit < b.fit; });
      seeds_.resize(max_seeds_);
    }
  }

  std::vector<Vec3> dirs_;
  std::vector<std::vector<LineOption>> options_;
  double tol_;
  int max_seeds_;
  std::vector<int> choice_;
  std::vector<Seed> seeds_;
  long nodes_ = 0;
};

// Levenberg-Marquardt on a small dense least-squares problem.
template <int N, class ResidualFn, class JacobianFn>
Eigen::Matrix<double, N, 1> levenberg_marquardt(Eigen::Matrix<double, N, 1> x, ResidualFn residual,
                                                JacobianFn jacobian, int max_iter = 300) {
  double lambda = 1e-3;
  Eigen::VectorXd r = residual(x);
  double cost = r.squaredNorm();
  for (int it = 0; it < max_iter && cost > 1e-32; ++it) {
    const Eigen::MatrixXd j = jacobian(x);
    const Eigen::Matrix<double, N, N> h = j.transpose() * j;
    const Eigen::Matrix<double, N, 1> g = j.transpose() * r;
    bool improved = false;
    while (lambda < 1e16) {
      Eigen::Matrix<double, N, N> damped = h;
      for (int d = 0; d < N; ++d) damped(d, d) += lambda * (h(d, d) + 1e-12);
      const Eigen::Matrix<double, N, 1> step = damped.ldlt().solve(-g);
      const Eigen::Matrix<double, N, 1> trial = x + step;
      const Eigen::VectorXd rt = residual(trial);
      const double ct = rt.squaredNorm();
      if (std::isfinite(ct) && ct < cost) {
        const double decrease = cost - ct;
        x = trial;
        r = rt;
        cost = ct;
        lambda = std::max(lambda / 5.0, 1e-15);
        improved = true;
        if (decrease < 1e-15 * ct && step.norm() < 1e-15 * (1.0 + x.norm())) return x;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) break;
  }
  return x;
}

struct FactorFit {
  Mat4 a;
  Mat4 b;
  double residual;
};

FactorFit refine_pair(const QuarticForm& h, const Mat4& a_seed) {
  const Eigen::Matrix<double, 35, 1> target = weighted(h);

  // B from the linear least-squares problem product(A, B) = h.
  Eigen::Matrix<double, 35, 10> lin;
  for (int e = 0; e < 10; ++e) lin.col(e) = weighted(product_quartic(a_seed, unit_symmetric(e)));
  const Vec10 b_seed = lin.colPivHouseholderQr().solve(target);

  Vec20 x;
  x.head<10>() = to_upper(a_seed);
  x.tail<10>() = b_seed;
  const double gauge = a_seed(0, 0);

  auto residual = [&](const Vec20& p) {
    Eigen::VectorXd r(36);
    const Mat4 a = from_upper(p.data());
    const Mat4 b = from_upper(p.data() + 10);
    r.head<35>() = weighted(product_quartic(a, b)) - target;
    r[35] = p[0] - gauge;
    return r;
  };
  auto jacobian = [&](const Vec20& p) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(36, 20);
    const Mat4 a = from_upper(p.data());
    const Mat4 b = from_upper(p.data() + 10);
    for (int e = 0; e < 10; ++e) {
      const Mat4 u = unit_symmetric(e);
      j.block<35, 1>(0, e) = weighted(product_quartic(u, b));
      j.block<35, 1>(0, 10 + e) = weighted(product_quartic(a, u));
    }
    j(35, 0) = 1.0;
    return j;
  };
  x = levenberg_marquardt<20>(x, residual, jacobian);
  FactorFit out{from_upper(x.data()), from_upper(x.data() + 10), 0.0};
  out.residual = factor_residual(h, out.a, out.b, 1.0);
  return out;
}

FactorFit refine_square(const QuarticForm& h, const Mat4& q_seed, double sign) {
  const Eigen::Matrix<double, 35, 1> target = weighted(h);
  auto residual = [&](const Vec10& p) {
    const Mat4 q = from_upper(p.data());
    Eigen::VectorXd r = sign * weighted(product_quartic(q, q)) - target;
    return r;
  };
  auto jacobian = [&](const Vec10& p) {
    Eigen::MatrixXd j(35, 10);
    const Mat4 q = from_upper(p.data());
    for (int e = 0; e < 10; ++e) j.col(e) = 2.0 * sign * weighted(product_quartic(q, unit_symmetric(e)));
    return j;
  };
  const Vec10 x = levenberg_marquardt<10>(to_upper(q_seed), residual, jacobian);
  FactorFit out{from_upper(x.data()), from_upper(x.data()), 0.0};
  out.residual = factor_residual(h, out.a, out.b, sign);
  return out;
}

double projective_distance(const Mat4& a, const Mat4& b) {
  const Mat4 an = a / a.norm();
  const Mat4 bn = b / b.norm();
  return std::min((an - bn).norm(), (an + bn).norm());
}

}  // namespace

std::string_view to_string(BirefringenceTag tag) {
  switch (tag) {
    case BirefringenceTag::DoubleLightCone: return "DoubleLightCone";
    case BirefringenceTag::SingleCone: return "SingleCone";
    case BirefringenceTag::ReducibleNonLorentz: return "ReducibleNonLorentz";
    case BirefringenceTag::NoQuadricFactorization: return "NoQuadricFactorization";
  }
  return "Unknown";
}

Signature signature_of(const Mat4& q, double rel_tol) {
  const Mat4 sym = 0.5 * (q + q.transpose());
  const Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Mat4>(sym, Eigen::EigenvaluesOnly).eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  Signature s;
  for (int k = 0; k < 4; ++k) {
    if (std::abs(ev[k]) <= rel_tol * scale || scale == 0.0) {
      ++s.zero;
    } else if (ev[k] > 0) {
      ++s.positive;
    } else {
      ++s.negative;
    }
  }
  return s;
}

QuadricForm::QuadricForm(const Mat4& q, double rel_tol)
    : q_(0.5 * (q + q.transpose())), signature_(signature_of(q_, rel_tol)) {}

Mat4 adjugate(const Mat4& q) {
  Mat4 adj;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Eigen::Matrix3d minor;
      for (int r = 0, mr = 0; r < 4; ++r) {
        if (r == j) continue;
        for (int c = 0, mc = 0; c < 4; ++c) {
          if (c == i) continue;
          minor(mr, mc++) = q(r, c);
        }
        ++mr;
      }
      adj(i, j) = (((i + j) % 2) ? -1.0 : 1.0) * minor.determinant();
    }
  return adj;
}

bool quadric_irreducible(const Mat4& q, double tol) {
  const double n = q.norm();
  if (n == 0.0) throw Error(ErrorCode::ZeroForm, "quadric is identically zero");
  return adjugate(q).norm() > tol * n * n * n;
}

double gaeta_covariant(const Mat4& q, const Vec4& xi, const Vec4& eta, const Vec4& zeta) {
  auto f = [&](const Vec4& x) { return x.dot(q * x); };
  // (Df)_a(b) = d/dt f(a + t b) at t = 0
  auto df = [&](const Vec4& a, const Vec4& b) { return a.dot(q * b) + b.dot(q * a); };
  Eigen::Matrix3d m;
  m << 2 * f(xi), df(xi, eta), df(xi, zeta),
       df(xi, eta), 2 * f(eta), df(eta, zeta),
       df(xi, zeta), df(eta, zeta), 2 * f(zeta);
  return -0.5 * m.determinant();
}

QuarticForm product_quartic(const Mat4& a, const Mat4& b) {
  QuarticForm f;
  const auto& idx = QuarticForm::multi_indices();
  for (int s = 0; s < QuarticForm::kSize; ++s) {
    const auto [i, j, k, l] = idx[s];
    f[s] = (a(i, j) * b(k, l) + a(k, l) * b(i, j) + a(i, k) * b(j, l) + a(j, l) * b(i, k) + a(i, l) * b(j, k) +
            a(j, k) * b(i, l)) /
           6.0;
  }
  return f;
}

const std::array<Vec4, QuarticForm::kSize>& residual_grid() {
  static const std::array<Vec4, QuarticForm::kSize> grid = [] {
    std::array<Vec4, QuarticForm::kSize> g;
    for (int s = 0; s < QuarticForm::kSize; ++s) {
      const auto e = QuarticForm::exponents(s);
      g[s] = Vec4(e[0], e[1], e[2], e[3]) / 4.0;
    }
    return g;
  }();
  return grid;
}

double factor_residual(const QuarticForm& f, const Mat4& a, const Mat4& b, double c) {
  const double n = f.norm();
  double worst = 0.0;
  for (const Vec4& xi : residual_grid()) {
    const double model = c * xi.dot(a * xi) * xi.dot(b * xi);
    worst = std::max(worst, std::abs(f.evaluate(xi) - model));
  }
  return n > 0.0 ? worst / n : worst;
}

double canonical_scale(const Mat4& q, Mat4& scaled) {
  double biggest = 0.0;
  for (const auto& [i, j] : kUpper) biggest = std::max(biggest, std::abs(q(i, j)));
  double factor = 1.0;
  for (const auto& [i, j] : kUpper) {
    if (std::abs(q(i, j)) >= (1.0 - 1e-6) * biggest) {
      factor = q(i, j);
      break;
    }
  }
  if (factor == 0.0) factor = 1.0;
  scaled = q / factor;
  return factor;
}

CanonicalPair canonical_pair(const Mat4& gplus, const Mat4& gminus, double c) {
  Mat4 a, b;
  const double fa = canonical_scale(gplus, a);
  const double fb = canonical_scale(gminus, b);
  bool swap = false;
  for (const auto& [i, j] : kUpper) {
    const double d = a(i, j) - b(i, j);
    if (std::abs(d) > 1e-9) {
      swap = d > 0;
      break;
    }
  }
  if (swap) std::swap(a, b);
  return CanonicalPair{a, b, c * fa * fb};
}

double pair_distance(const CanonicalPair& a, const CanonicalPair& b) {
  return std::sqrt((a.first - b.first).squaredNorm() + (a.second - b.second).squaredNorm());
}

namespace {

constexpr int kAttempts = 3;

// f = h_to_f * h(rot^T xi); h has a dominant eta_0^4 term.
BirefringenceResult factor_once(const QuarticForm& f, const QuarticForm& h, const Mat4& rot, double h_to_f,
                                std::mt19937_64& rng, const FactorOptions& options) {
  // Root pairings on sample lines t e_0 + (0, r).
  std::normal_distribution<double> normal;
  std::vector<Vec3> dirs;
  std::vector<std::vector<LineOption>> line_options;
  double root_scale = 1.0;
  for (int k = 0; k < options.line_samples; ++k) {
    Vec3 r(normal(rng), normal(rng), normal(rng));
    r.normalize();
    const auto c = restrict_to_plane(h, Vec4(0.0, r[0], r[1], r[2]), Vec4::UnitX());
    const auto roots = quartic_roots(c);
    double biggest = 0.0;
    for (const Cplx& z : roots) biggest = std::max(biggest, std::abs(z));
    root_scale = std::max(root_scale, 1.0 + biggest * biggest);

    static constexpr int kPairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    std::vector<LineOption> opts;
    const double imag_tol = 1e-6 * (1.0 + biggest * biggest);
    for (const auto& p : kPairings) {
      const Cplx s1 = roots[p[0]] + roots[p[1]], p1 = roots[p[0]] * roots[p[1]];
      const Cplx s2 = roots[p[2]] + roots[p[3]], p2 = roots[p[2]] * roots[p[3]];
      if (std::max({std::abs(s1.imag()), std::abs(p1.imag()), std::abs(s2.imag()), std::abs(p2.imag())}) > imag_tol)
        continue;
      // the first line fixes which factor is called A
      for (const LineOption o : {LineOption{s1.real(), p1.real()}, LineOption{s2.real(), p2.real()}}) {
        // split double roots give near-duplicate options
        const bool seen = std::any_of(opts.begin(), opts.end(), [&](const LineOption& q) {
          return std::abs(q.sum - o.sum) + std::abs(q.prod - o.prod) <= 1e-7 * (1.0 + biggest * biggest);
        });
        if (!seen) opts.push_back(o);
        if (k == 0) break;
      }
    }
    dirs.push_back(r);
    line_options.push_back(std::move(opts));
  }

  std::vector<Seed> seeds;
  {
    PairingSearch search(dirs, line_options, 1e-5 * root_scale, options.max_starts);
    seeds = search.run();
  }
  if (static_cast<int>(seeds.size()) > options.max_starts) seeds.resize(options.max_starts);

  BirefringenceResult result;
  result.residual = std::numeric_limits<double>::infinity();
  if (seeds.empty()) {
    result.tag = BirefringenceTag::NoQuadricFactorization;
    result.residual = factor_residual(f, Mat4::Zero(), Mat4::Zero(), 0.0);
    return result;
  }

  FactorFit best{Mat4::Zero(), Mat4::Zero(), std::numeric_limits<double>::infinity()};
  for (const Seed& s : seeds) {
    Mat4 a = Mat4::Zero();
    a(0, 0) = 1.0;
    for (int i = 0; i < 3; ++i) a(0, i + 1) = a(i + 1, 0) = s.a0[i];
    const double as[6] = {s.as[0], s.as[1], s.as[2], s.as[3], s.as[4], s.as[5]};
    a(1, 1) = as[0];
    a(1, 2) = a(2, 1) = as[1];
    a(1, 3) = a(3, 1) = as[2];
    a(2, 2) = as[3];
    a(2, 3) = a(3, 2) = as[4];
    a(3, 3) = as[5];
    const FactorFit fit = refine_pair(h, a);
    if (fit.residual < best.residual) best = fit;
    if (best.residual < 1e-14) break;
  }

  // Back to the original coordinates: xi = M eta, so A_xi = M A_eta M^T.
  auto to_original = [&](const Mat4& q) -> Mat4 { return rot * q * rot.transpose(); };

  // A perfect square makes the pair problem singular; fit it directly. The
  // seed averages the two factors, which cancels their first-order drift.
  if (projective_distance(best.a, best.b) < 1e-2) {
    const double lambda = best.b(0, 0) / best.a(0, 0);
    const double sign = lambda < 0 ? -1.0 : 1.0;
    const Mat4 q_seed = std::sqrt(std::abs(lambda)) * 0.5 * (best.a + best.b / lambda);
    const FactorFit sq = refine_square(h, q_seed, sign);
    if (sq.residual <= options.residual_tol) {
      Mat4 canon;
      const double s = canonical_scale(to_original(sq.a), canon);
      result.C = h_to_f * sign * s * s;
      result.gplus = QuadricForm(canon, options.signature_tol);
      result.residual = factor_residual(f, canon, canon, result.C);
      result.tag = result.gplus->signature().is_lorentz() ? BirefringenceTag::SingleCone
                                                           : BirefringenceTag::ReducibleNonLorentz;
      if (result.residual <= options.residual_tol) return result;
      result.gplus.reset();
    }
  }

  const Mat4 a = to_original(best.a);
  const Mat4 b = to_original(best.b);
  const CanonicalPair canon = canonical_pair(a, b, h_to_f);
  result.residual = factor_residual(f, canon.first, canon.second, canon.C);
  if (!(result.residual <= options.residual_tol)) {
    result.tag = BirefringenceTag::NoQuadricFactorization;
    result.gplus.reset();
    result.gminus.reset();
    result.C = 0.0;
    return result;
  }
  if (projective_distance(canon.first, canon.second) < options.proportional_tol) {
    const double mu = canon.first.cwiseProduct(canon.second).sum() / canon.first.squaredNorm();
    result.gplus = QuadricForm(canon.first, options.signature_tol);
    result.C = canon.C * mu;
    result.residual = factor_residual(f, canon.first, canon.first, result.C);
    result.tag = result.gplus->signature().is_lorentz() ? BirefringenceTag::SingleCone
                                                         : BirefringenceTag::ReducibleNonLorentz;
    return result;
  }
  result.gplus = QuadricForm(canon.first, options.signature_tol);
  result.gminus = QuadricForm(canon.second, options.signature_tol);
  result.C = canon.C;
  const bool lorentz = result.gplus->signature().is_lorentz() && result.gminus->signature().is_lorentz();
  result.tag = lorentz ? BirefringenceTag::DoubleLightCone : BirefringenceTag::ReducibleNonLorentz;
  return result;
}

}  // namespace

BirefringenceResult factor_quartic(const QuarticForm& f, const FactorOptions& options) {
  const double norm = f.norm();
  if (norm == 0.0) throw Error(ErrorCode::ZeroForm, "quartic is identically zero");
  std::mt19937_64 rng(options.seed);

  // Work with h(eta) = f(M eta) / |f| where the eta_0^4 coefficient is not small.
  Mat4 rot = Mat4::Identity();
  double h_to_f = norm;
  QuarticForm h = f * (1.0 / norm);
  double lead_ratio = std::abs(h[0]) / h.norm();
  for (int attempt = 0; attempt < 64 && lead_ratio < 0.05; ++attempt) {
    const Mat4 m = random_rotation(rng);
    const QuarticForm trial = transform_density(f, m.transpose());
    const double ratio = std::abs(trial[0]) / trial.norm();
    if (ratio > lead_ratio) {
      lead_ratio = ratio;
      rot = m;
      h_to_f = trial.norm();
      h = trial * (1.0 / h_to_f);
    }
  }

  // Sample lines occasionally graze the surface and spoil the root pairing; retry with fresh ones.
  BirefringenceResult result;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    result = factor_once(f, h, rot, h_to_f, rng, options);
    if (result.tag != BirefringenceTag::NoQuadricFactorization) break;
  }
  return result;
}

}  // namespace birelab
