#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "birelab/json_io.hpp"
#include "birelab/segre.hpp"

namespace birelab {

enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitIllConditioned = 2, kExitVerifyFailed = 3 };

/// Tolerances shared by the commands. BIRELAB_TOL sets `classification`;
/// the eigenvalue clustering distance follows as 100 * classification.
struct Tolerances {
  double classification = 1e-9;

  static Tolerances from_environment();
  SegreOptions segre() const;
};

struct AnalysisOutcome {
  Json report;
  bool refused = false;  // classification refused as ill-conditioned
};

AnalysisOutcome analyze(const ParsedMedium& input, const Tolerances& tol = {});

struct SurfaceRequest {
  std::string projection = "xi1=0";  // or "slice-xi1"
  int resolution = 96;
  double lo = -3.0;
  double hi = 3.0;
};

/// CSV "x,y,z,f" with f = f(x, 0, y, z) on the regular lattice, x slowest.
void write_surface(const QuarticForm& f, const SurfaceRequest& request, std::ostream& out);
/// True when f is unchanged by rotations in the (xi1, xi2) plane, to rel_tol.
bool rotationally_symmetric(const QuarticForm& f, double rel_tol = 1e-10);

struct CommandArgs {
  std::optional<std::string> input;
  std::optional<std::string> class_name;
  std::optional<std::string> params;
  std::optional<std::string> out;
  SurfaceRequest surface;
  std::string bounds;
  std::string suite;
  std::uint64_t seed = 0;
  int count = 100;
};

int cmd_analyze(const CommandArgs& args, std::ostream& out, std::ostream& err);
int cmd_construct(const CommandArgs& args, std::ostream& out, std::ostream& err);
int cmd_surface(const CommandArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const CommandArgs& args, std::ostream& out, std::ostream& err);

}  // namespace birelab
