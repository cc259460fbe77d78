#include "birelab/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <Eigen/SVD>

#include "birelab/error.hpp"
#include "birelab/fresnel.hpp"
#include "birelab/metaclass.hpp"
#include "birelab/quartic_factor.hpp"
#include "birelab/verify.hpp"

namespace birelab {

namespace {

constexpr const char* kSchema = "birelab.report/1";

bool has_d_invariants(Metaclass id) {
  return id == Metaclass::I || id == Metaclass::IV || id == Metaclass::VI || id == Metaclass::VII;
}

bool has_closed_form(Metaclass id) { return id == Metaclass::I || id == Metaclass::II || id == Metaclass::IV; }

// Writes to --out when given, otherwise to `out`.
template <class Fn>
void emit(const std::optional<std::string>& path, std::ostream& out, Fn write) {
  if (!path) {
    write(out);
    return;
  }
  std::ofstream file(*path);
  if (!file) throw Error(ErrorCode::InvalidInput, "cannot write " + *path);
  write(file);
}

int report_error(const Error& e, std::ostream& err) {
  err << "birelab: " << e.what() << '\n';
  return e.code() == ErrorCode::IllConditioned ? kExitIllConditioned : kExitInputError;
}

MetaclassParams params_from_args(const CommandArgs& args) {
  if (!args.params && !args.class_name) throw Error(ErrorCode::InvalidInput, "need --class and/or --params");
  const Json doc = args.params ? load_json_argument(*args.params) : Json::object();
  return parse_params(doc, args.class_name);
}

std::pair<double, double> parse_bounds(const std::string& text) {
  std::istringstream in(text);
  double lo = 0, hi = 0;
  char comma = 0;
  if (!(in >> lo >> comma >> hi) || comma != ',' || !(in >> std::ws).eof())
    throw Error(ErrorCode::InvalidInput, "--bounds expects \"lo,hi\", got \"" + text + "\"");
  if (!(lo < hi)) throw Error(ErrorCode::InvalidInput, "--bounds needs lo < hi");
  return {lo, hi};
}

}  // namespace

Tolerances Tolerances::from_environment() {
  Tolerances t;
  if (const char* env = std::getenv("BIRELAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::InvalidInput, std::string("BIRELAB_TOL must be a positive number, got \"") + env + "\"");
    t.classification = v;
  }
  return t;
}

SegreOptions Tolerances::segre() const {
  SegreOptions o;
  o.cluster_tol = 100.0 * classification;
  return o;
}

AnalysisOutcome analyze(const ParsedMedium& input, const Tolerances& tol) {
  AnalysisOutcome outcome;
  Json& report = outcome.report;
  const MediumTensor& kappa = input.medium;
  report["schema"] = kSchema;
  report["medium"] = matrix_to_json(kappa.matrix());
  report["ingestion_correction"] = input.correction_norm;

  const Decomposition parts = decompose(kappa);
  const bool skewon_free = is_skewon_free(kappa, tol.classification);
  report["skewon_free"] = skewon_free;
  report["skewon_defect"] = skewon_defect(kappa);
  report["axion"] = parts.axion;

  const auto sv = Eigen::JacobiSVD<Mat6>(kappa.matrix()).singularValues();
  const bool invertible = sv[0] > 0.0 && sv[5] > 1e-12 * sv[0];
  report["invertible"] = invertible;

  try {
    const SegreType type = segre_type(kappa.matrix(), tol.segre());
    report["segre_label"] = type.label();
    if (!skewon_free) {
      report["metaclass"] = "not classified (skewon part)";
    } else if (!invertible) {
      report["metaclass"] = "not classified (singular)";
    } else {
      report["metaclass"] = std::string(to_string(metaclass_of_type(type)));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IllConditioned) throw;
    report["segre_label"] = nullptr;
    report["metaclass"] = "refused (ill-conditioned)";
    report["refusal"] = e.what();
    outcome.refused = true;
  }

  const QuarticForm quartic = tamm_rubilar(kappa);
  report["quartic"] = quartic_to_json(quartic)["quartic"];
  Json residuals = Json::object();
  if (quartic.is_zero()) {
    report["birefringence"] = Json{{"tag", nullptr}, {"note", "Fresnel quartic vanishes identically"}};
  } else {
    FactorOptions options;
    options.signature_tol = tol.classification;
    const BirefringenceResult r = factor_quartic(quartic, options);
    report["birefringence"] = result_to_json(r);
    residuals["factorization"] = r.residual;
  }

  if (input.source) {
    const MetaclassParams& p = *input.source;
    report["source"] = params_to_json(p);
    if (has_d_invariants(p.id)) {
      try {
        report["d_invariants"] = d_invariants_to_json(d_invariants(p));
      } catch (const Error& e) {
        report["d_invariants"] = Json{{"error", e.what()}};
      }
    }
    if (has_closed_form(p.id)) {
      try {
        const ClosedFormCones cones = cones_closed_form(p);
        const double res = factor_residual(quartic, cones.gplus.matrix(), cones.gminus.matrix(), cones.C);
        report["closed_form"] = Json{{"g_plus", matrix_to_json(cones.gplus.matrix())},
                                     {"g_minus", matrix_to_json(cones.gminus.matrix())},
                                     {"C", cones.C}};
        residuals["closed_form"] = res;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PreconditionViolated) throw;
        report["closed_form"] = Json{{"precondition", e.what()}};
      }
    }
  }
  report["residuals"] = residuals;
  return outcome;
}

bool rotationally_symmetric(const QuarticForm& f, double rel_tol) {
  const double c = std::cos(0.7), s = std::sin(0.7);
  Mat4 r = Mat4::Identity();
  r(1, 1) = c, r(1, 2) = -s, r(2, 1) = s, r(2, 2) = c;
  const double scale = f.norm();
  return (transform_density(f, r) - f).norm() <= rel_tol * (scale > 0 ? scale : 1.0);
}

void write_surface(const QuarticForm& f, const SurfaceRequest& request, std::ostream& out) {
  if (request.resolution < 2) throw Error(ErrorCode::InvalidInput, "--resolution must be at least 2");
  if (!(request.lo < request.hi)) throw Error(ErrorCode::InvalidInput, "bounds need lo < hi");
  if (request.projection != "xi1=0" && request.projection != "slice-xi1")
    throw Error(ErrorCode::InvalidInput, "unknown projection \"" + request.projection + "\"");
  if (request.projection == "xi1=0" && !rotationally_symmetric(f))
    throw Error(ErrorCode::NotRotationallySymmetric,
                "quartic is not invariant under rotations of (xi1, xi2); use --projection slice-xi1");
  const int n = request.resolution;
  std::vector<double> axis(n);
  for (int i = 0; i < n; ++i) axis[i] = request.lo + (request.hi - request.lo) * i / (n - 1);
  out << "x,y,z,f\n";
  char line[128];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = f.evaluate(Vec4(axis[i], 0.0, axis[j], axis[k]));
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", axis[i], axis[j], axis[k], v);
        out << line;
      }
}

int cmd_analyze(const CommandArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (!args.input) throw Error(ErrorCode::InvalidInput, "analyze needs --input");
    const Tolerances tol = Tolerances::from_environment();
    const AnalysisOutcome outcome = analyze(parse_medium(load_json_file(*args.input)), tol);
    emit(args.out, out, [&](std::ostream& o) { o << outcome.report.dump(2) << '\n'; });
    if (outcome.refused) {
      err << "birelab: classification refused: " << outcome.report["refusal"].get<std::string>() << '\n';
      return kExitIllConditioned;
    }
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_construct(const CommandArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const MetaclassParams p = params_from_args(args);
    const Json doc = medium_to_json(construct_metaclass(p), p);
    emit(args.out, out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_surface(const CommandArgs& args, std::ostream& out, std::ostream& err) {
  try {
    SurfaceRequest request = args.surface;
    if (!args.bounds.empty()) std::tie(request.lo, request.hi) = parse_bounds(args.bounds);
    if (request.resolution < 2) throw Error(ErrorCode::InvalidInput, "--resolution must be at least 2");
    QuarticForm f;
    if (args.input) {
      if (args.class_name || args.params)
        throw Error(ErrorCode::InvalidInput, "give either --input or --class/--params");
      const Json doc = load_json_file(*args.input);
      f = doc.contains("quartic") ? parse_quartic(doc) : tamm_rubilar(parse_medium(doc).medium);
    } else {
      f = tamm_rubilar(construct_metaclass(params_from_args(args)));
    }
    emit(args.out, out, [&](std::ostream& o) { write_surface(f, request, o); });
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_verify(const CommandArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const SuiteReport report = run_suite(args.suite, args.seed, args.count);
    emit(args.out, out, [&](std::ostream& o) { o << suite_report_to_json(report).dump(2) << '\n'; });
    return report.ok() ? kExitOk : kExitVerifyFailed;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

}  // namespace birelab
