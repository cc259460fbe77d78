#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "birelab/metaclass.hpp"
#include "birelab/quartic_factor.hpp"
#include "birelab/tensor_core.hpp"

namespace birelab {

using Json = nlohmann::json;

struct ParsedMedium {
  MediumTensor medium;
  /// Frobenius norm of the antisymmetrization applied to raw components.
  double correction_norm = 0.0;
  /// Normal-form parameters when the document came from `construct`.
  std::optional<MetaclassParams> source;
};

/// {"basis": "O-standard", "matrix": 6x6} or {"components": 4x4x4x4}.
ParsedMedium parse_medium(const Json& doc);
Json medium_to_json(const MediumTensor& kappa, const std::optional<MetaclassParams>& source = std::nullopt);

Json matrix_to_json(const Mat4& m);
Json matrix_to_json(const Mat6& m);

/// {"quartic": {"0000": c, ...}}
Json quartic_to_json(const QuarticForm& f);
QuarticForm parse_quartic(const Json& doc);

Json signature_to_json(const Signature& s);
Json result_to_json(const BirefringenceResult& r);

/// {"class": "I", "alpha": [...], "beta": [...]}; class IV also accepts {"D1": x}.
MetaclassParams parse_params(const Json& doc, const std::optional<std::string>& class_name = std::nullopt);
Json params_to_json(const MetaclassParams& p);

Json d_invariants_to_json(const DInvariants& d);

/// Parses text as JSON, or reads it as a file path when it does not start with '{'.
Json load_json_argument(const std::string& text);
Json load_json_file(const std::string& path);

}  // namespace birelab
