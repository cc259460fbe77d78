#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "birelab/fresnel.hpp"
#include "birelab/json_io.hpp"

namespace birelab {

struct PropertyCount {
  int passed = 0;
  int failed = 0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int count = 0;
  int draws_passed = 0;
  int draws_failed = 0;
  std::map<std::string, PropertyCount> properties;
  /// First few failures, "draw 17: property: detail", in draw order.
  std::vector<std::string> failures;

  bool ok() const { return draws_failed == 0; }
};

const std::vector<std::string>& suite_names();

/// Runs `count` independent draws. Draw k uses draw_rng(seed, k), so the
/// report does not depend on `threads` (0 = hardware concurrency).
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int count, int threads = 0);

Json suite_report_to_json(const SuiteReport& report);

/// No coordinate plane and none of `random_planes` random planes lies in the zero set of f.
bool contains_no_plane(const QuarticForm& f, std::mt19937_64& rng, int random_planes = 100);

}  // namespace birelab
