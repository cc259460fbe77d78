#include "birelab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "birelab/error.hpp"
#include "birelab/metaclass.hpp"
#include "birelab/quartic_factor.hpp"
#include "birelab/sampling.hpp"
#include "birelab/segre.hpp"

namespace birelab {

namespace {

struct Check {
  std::string property;
  bool ok;
  std::string detail;
};

using Checks = std::vector<Check>;
using DrawFn = std::function<Checks(std::mt19937_64&)>;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

Check within(const std::string& property, double value, double tol) {
  return {property, value <= tol, fmt(value) + " > " + fmt(tol)};
}

double relative_difference(const QuarticForm& a, const QuarticForm& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale > 0 ? (a - b).norm() / scale : 0.0;
}

Checks light_cone(std::mt19937_64& rng) {
  const Mat4 g = random_lorentz_metric(rng);
  const BirefringenceResult r = factor_quartic(tamm_rubilar(hodge_star(g)));
  Checks out{{"single-cone", r.tag == BirefringenceTag::SingleCone, std::string(to_string(r.tag))},
             within("residual", r.residual, 1e-8)};
  if (r.gplus) {
    Mat4 expected;
    canonical_scale(g.inverse(), expected);
    out.push_back(within("inverse-metric-factor", (r.gplus->matrix() - expected).norm(), 1e-7));
  } else {
    out.push_back({"inverse-metric-factor", false, "no factor"});
  }
  return out;
}

Checks roundtrip(Metaclass id, std::mt19937_64& rng) {
  const MetaclassParams p = random_birefringent_params(rng, id);
  const QuarticForm f = tamm_rubilar(construct_metaclass(p));
  const BirefringenceResult r = factor_quartic(f);
  const ClosedFormCones cones = cones_closed_form(p);
  const CanonicalPair expected = canonical_pair(cones.gplus.matrix(), cones.gminus.matrix(), cones.C);

  Checks out;
  out.push_back({"double-light-cone", r.tag == BirefringenceTag::DoubleLightCone, std::string(to_string(r.tag))});
  out.push_back(within("closed-form-identity", factor_residual(f, cones.gplus.matrix(), cones.gminus.matrix(), cones.C),
                       1e-8));
  out.push_back({"closed-form-lorentz",
                 cones.gplus.signature().is_lorentz() && cones.gminus.signature().is_lorentz(), "non-Lorentz factor"});
  if (r.tag == BirefringenceTag::DoubleLightCone) {
    const CanonicalPair found{r.gplus->matrix(), r.gminus->matrix(), r.C};
    out.push_back(within("matches-closed-form", pair_distance(found, expected), 1e-7));
    out.push_back(within("class-constant", std::abs(r.C - expected.C) / std::abs(expected.C), 1e-7));
    out.push_back({"lorentz-factors", r.gplus->signature().is_lorentz() && r.gminus->signature().is_lorentz(),
                   "non-Lorentz factor"});
    out.push_back({"no-contained-plane", contains_no_plane(f, rng), "a 2-plane lies in the surface"});
  }
  if (id == Metaclass::I) out.push_back(within("D0-vanishes", std::abs(*d_invariants(p).D0), 1e-9));
  return out;
}

Checks exclusion(Metaclass id, std::mt19937_64& rng) {
  const MetaclassParams p = random_generic_params(rng, id);
  const ExclusionEvidence ev = exclusion_evidence(p);
  Checks out{{"not-double-light-cone", ev.excluded, std::string(to_string(ev.factorization.tag))}};
  if (id == Metaclass::VI) {
    bool all_non_lorentz = ev.candidates.size() == 2;
    for (const auto& c : ev.candidates)
      all_non_lorentz = all_non_lorentz && !c.gplus_signature.is_lorentz() && !c.gminus_signature.is_lorentz();
    out.push_back({"candidates-non-lorentz", all_non_lorentz, "a candidate factor is Lorentz"});
  }
  return out;
}

Checks segre_correspondence(std::mt19937_64& rng) {
  Checks out;
  for (Metaclass id : {Metaclass::I, Metaclass::II, Metaclass::III, Metaclass::IV, Metaclass::V, Metaclass::VI,
                       Metaclass::VII}) {
    const std::string name(to_string(id));
    const MediumTensor kappa = construct_metaclass(random_generic_params(rng, id));
    auto classify = [&](const MediumTensor& k) -> std::string {
      try {
        return std::string(to_string(metaclass_of(k)));
      } catch (const Error& e) {
        return e.what();
      }
    };
    const std::string found = classify(kappa);
    out.push_back({"normal-form-" + name, found == name, found});
    int stable = 0;
    std::string mismatch;
    for (int t = 0; t < 10; ++t) {
      const std::string got = classify(pullback(kappa, random_well_conditioned(rng, 10.0)));
      if (got == name) {
        ++stable;
      } else if (mismatch.empty()) {
        mismatch = "pullback " + std::to_string(t) + ": " + got;
      }
    }
    out.push_back({"pullback-stable-" + name, stable == 10, mismatch});
  }
  return out;
}

Checks covariance(std::mt19937_64& rng) {
  const MediumTensor kappa = random_skewon_free(rng);
  const Mat4 t = random_well_conditioned(rng, 100);
  const QuarticForm a = transform_density(tamm_rubilar(kappa), t);
  const QuarticForm b = tamm_rubilar(pullback(kappa, t));
  return {within("transform-commutes", relative_difference(a, b), 1e-9)};
}

Checks oracle_equivalence(std::mt19937_64& rng) {
  const int rank = 1 + static_cast<int>(uniform(rng, 0, 4)) % 4;
  const Mat4 q = random_symmetric_of_rank(rng, rank);
  const bool irreducible = quadric_irreducible(q);
  std::normal_distribution<double> normal;
  auto vec = [&] { return Vec4(normal(rng), normal(rng), normal(rng), normal(rng)); };
  bool nonvanishing = false;
  const double qn = q.norm();
  for (int k = 0; k < 50; ++k) {
    const Vec4 x = vec(), y = vec(), z = vec();
    const double scale = qn * qn * qn * x.squaredNorm() * y.squaredNorm() * z.squaredNorm();
    if (std::abs(gaeta_covariant(q, x, y, z)) > 1e-9 * scale) nonvanishing = true;
  }
  return {{"adjugate-iff-gaeta", irreducible == nonvanishing,
           "rank " + std::to_string(rank) + ": adjugate " + (irreducible ? "nonzero" : "zero") + ", Gaeta " +
               (nonvanishing ? "nonvanishing" : "vanishing")},
          {"adjugate-iff-rank", irreducible == (rank >= 3), "rank " + std::to_string(rank)}};
}

const std::map<std::string, DrawFn>& suites() {
  static const std::map<std::string, DrawFn> table{
      {"light-cone", light_cone},
      {"metaclass-I-roundtrip", [](auto& rng) { return roundtrip(Metaclass::I, rng); }},
      {"metaclass-II-roundtrip", [](auto& rng) { return roundtrip(Metaclass::II, rng); }},
      {"metaclass-IV-roundtrip", [](auto& rng) { return roundtrip(Metaclass::IV, rng); }},
      {"exclusion-III", [](auto& rng) { return exclusion(Metaclass::III, rng); }},
      {"exclusion-V", [](auto& rng) { return exclusion(Metaclass::V, rng); }},
      {"exclusion-VI", [](auto& rng) { return exclusion(Metaclass::VI, rng); }},
      {"exclusion-VII", [](auto& rng) { return exclusion(Metaclass::VII, rng); }},
      {"segre-correspondence", segre_correspondence},
      {"covariance", covariance},
      {"oracle-equivalence", oracle_equivalence},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suites()) n.push_back(name);
    return n;
  }();
  return names;
}

bool contains_no_plane(const QuarticForm& f, std::mt19937_64& rng, int random_planes) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (plane_in_surface(f, Vec4::Unit(i), Vec4::Unit(j))) return false;
  std::normal_distribution<double> normal;
  for (int k = 0; k < random_planes; ++k) {
    const Vec4 u(normal(rng), normal(rng), normal(rng), normal(rng));
    const Vec4 v(normal(rng), normal(rng), normal(rng), normal(rng));
    if (plane_in_surface(f, u, v)) return false;
  }
  return true;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int count, int threads) {
  const auto it = suites().find(name);
  if (it == suites().end()) throw Error(ErrorCode::UnknownSuite, "unknown suite \"" + name + "\"");
  if (count < 0) throw Error(ErrorCode::InvalidInput, "count must be non-negative");
  const DrawFn& fn = it->second;

  std::vector<Checks> results(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < count; k = next++) {
      std::mt19937_64 rng = draw_rng(seed, static_cast<std::uint64_t>(k));
      try {
        results[k] = fn(rng);
      } catch (const std::exception& e) {
        results[k] = {{"no-exception", false, e.what()}};
      }
    }
  };
  int n = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  n = std::min(n, std::max(count, 1));
  std::vector<std::thread> pool;
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  SuiteReport report{name, seed, count, 0, 0, {}, {}};
  for (int k = 0; k < count; ++k) {
    bool draw_ok = true;
    for (const Check& c : results[k]) {
      PropertyCount& pc = report.properties[c.property];
      if (c.ok) {
        ++pc.passed;
      } else {
        ++pc.failed;
        draw_ok = false;
        if (report.failures.size() < 10)
          report.failures.push_back("draw " + std::to_string(k) + ": " + c.property + ": " + c.detail);
      }
    }
    ++(draw_ok ? report.draws_passed : report.draws_failed);
  }
  return report;
}

Json suite_report_to_json(const SuiteReport& r) {
  Json props = Json::object();
  for (const auto& [name, c] : r.properties) props[name] = Json{{"passed", c.passed}, {"failed", c.failed}};
  return Json{{"suite", r.suite},       {"seed", r.seed},         {"count", r.count},
              {"passed", r.draws_passed}, {"failed", r.draws_failed}, {"ok", r.ok()},
              {"properties", props},      {"failures", r.failures}};
}

}  // namespace birelab
