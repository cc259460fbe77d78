#include "birelab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "birelab/error.hpp"

namespace birelab {

namespace {

double number(const Json& v, const char* what) {
  if (!v.is_number()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const Json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const Json& v = doc.at(key);
  if (!v.is_array()) throw Error(ErrorCode::InvalidInput, std::string(key) + " must be an array");
  std::vector<double> out;
  for (const Json& x : v) out.push_back(number(x, key));
  return out;
}

const Json& array_of_size(const Json& v, std::size_t n, const char* what) {
  if (!v.is_array() || v.size() != n)
    throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an array of length " + std::to_string(n));
  return v;
}

}  // namespace

ParsedMedium parse_medium(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidInput, "medium document must be a JSON object");
  ParsedMedium out;
  if (doc.contains("matrix")) {
    const std::string basis = doc.value("basis", std::string("O-standard"));
    if (basis != "O-standard") throw Error(ErrorCode::UnknownBasis, "unknown basis \"" + basis + "\"");
    const Json& rows = array_of_size(doc.at("matrix"), 6, "matrix");
    Mat6 m;
    for (int i = 0; i < 6; ++i) {
      const Json& row = array_of_size(rows[i], 6, "matrix row");
      for (int j = 0; j < 6; ++j) m(i, j) = number(row[j], "matrix entry");
    }
    out.medium = MediumTensor(m);
  } else if (doc.contains("components")) {
    if (doc.contains("basis")) throw Error(ErrorCode::InvalidInput, "\"basis\" applies to \"matrix\" input only");
    RawComponents raw;
    const Json& c = array_of_size(doc.at("components"), 4, "components");
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l)
          for (int m = 0; m < 4; ++m)
            raw(i, j, l, m) = number(array_of_size(array_of_size(array_of_size(c[i], 4, "components")[j], 4,
                                                                              "components")[l],
                                                   4, "components")[m],
                                     "component");
    const IngestedMedium ingested = ingest_components(raw);
    out.medium = ingested.medium;
    out.correction_norm = ingested.correction_norm;
  } else {
    throw Error(ErrorCode::InvalidInput, "medium needs \"matrix\" or \"components\"");
  }
  if (doc.contains("source")) out.source = parse_params(doc.at("source"));
  return out;
}

Json matrix_to_json(const Mat4& m) {
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
  return rows;
}

Json matrix_to_json(const Mat6& m) {
  Json rows = Json::array();
  for (int i = 0; i < 6; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3), m(i, 4), m(i, 5)});
  return rows;
}

Json medium_to_json(const MediumTensor& kappa, const std::optional<MetaclassParams>& source) {
  Json doc{{"basis", "O-standard"}, {"matrix", matrix_to_json(kappa.matrix())}};
  if (source) doc["source"] = params_to_json(*source);
  return doc;
}

Json quartic_to_json(const QuarticForm& f) {
  Json coeffs = Json::object();
  for (int s = 0; s < QuarticForm::kSize; ++s) coeffs[QuarticForm::key(s)] = f[s];
  return Json{{"quartic", coeffs}};
}

QuarticForm parse_quartic(const Json& doc) {
  if (!doc.is_object() || !doc.contains("quartic") || !doc.at("quartic").is_object())
    throw Error(ErrorCode::InvalidInput, "quartic document needs a \"quartic\" object");
  QuarticForm f;
  for (const auto& [key, value] : doc.at("quartic").items()) {
    if (key.size() != 4) throw Error(ErrorCode::InvalidInput, "bad quartic key \"" + key + "\"");
    int idx[4];
    for (int k = 0; k < 4; ++k) {
      if (key[k] < '0' || key[k] > '3') throw Error(ErrorCode::InvalidInput, "bad quartic key \"" + key + "\"");
      idx[k] = key[k] - '0';
    }
    f[QuarticForm::slot(idx[0], idx[1], idx[2], idx[3])] = number(value, "quartic coefficient");
  }
  return f;
}

Json signature_to_json(const Signature& s) { return Json::array({s.positive, s.negative, s.zero}); }

Json result_to_json(const BirefringenceResult& r) {
  Json out{{"tag", std::string(to_string(r.tag))}};
  switch (r.tag) {
    case BirefringenceTag::SingleCone:
      out["g"] = matrix_to_json(r.gplus->matrix());
      out["signature"] = signature_to_json(r.gplus->signature());
      break;
    case BirefringenceTag::DoubleLightCone:
    case BirefringenceTag::ReducibleNonLorentz:
      if (r.gplus && r.gminus) {
        out["g_plus"] = matrix_to_json(r.gplus->matrix());
        out["g_minus"] = matrix_to_json(r.gminus->matrix());
        out["signatures"] = Json::array({signature_to_json(r.gplus->signature()),
                                         signature_to_json(r.gminus->signature())});
      } else if (r.gplus) {
        out["g"] = matrix_to_json(r.gplus->matrix());
        out["signature"] = signature_to_json(r.gplus->signature());
      }
      break;
    case BirefringenceTag::NoQuadricFactorization:
      break;
  }
  if (r.tag != BirefringenceTag::NoQuadricFactorization) out["C"] = r.C;
  out["residual"] = r.residual;
  return out;
}

MetaclassParams parse_params(const Json& doc, const std::optional<std::string>& class_name) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidInput, "parameters must be a JSON object");
  std::string name;
  if (class_name) {
    name = *class_name;
  } else if (doc.contains("class") && doc.at("class").is_string()) {
    name = doc.at("class").get<std::string>();
  } else {
    throw Error(ErrorCode::InvalidInput, "parameters need a \"class\"");
  }
  const auto id = metaclass_from_string(name);
  if (!id || *id == Metaclass::VIII_to_XXIII) throw Error(ErrorCode::InvalidParams, "unknown class \"" + name + "\"");
  if (doc.contains("D1")) {
    if (*id != Metaclass::IV) throw Error(ErrorCode::InvalidParams, "\"D1\" parameterizes class IV only");
    if (doc.contains("alpha") || doc.contains("beta"))
      throw Error(ErrorCode::InvalidParams, "give either \"D1\" or \"alpha\"/\"beta\"");
    return class_iv_params_for_d1(number(doc.at("D1"), "D1"));
  }
  MetaclassParams p{*id, number_list(doc, "alpha"), number_list(doc, "beta")};
  p.validate();
  return p;
}

Json params_to_json(const MetaclassParams& p) {
  return Json{{"class", std::string(to_string(p.id))}, {"alpha", p.alpha}, {"beta", p.beta}};
}

Json d_invariants_to_json(const DInvariants& d) {
  Json out{{"C", d.C}};
  if (d.D0) out["D0"] = *d.D0;
  if (d.D1) out["D1"] = *d.D1;
  if (d.D2) out["D2"] = *d.D2;
  if (d.D3) out["D3"] = *d.D3;
  if (d.d0_relation_residual) out["D0_relation_residual"] = *d.d0_relation_residual;
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

Json load_json_argument(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::InvalidInput, e.what());
    }
  }
  return load_json_file(text);
}

}  // namespace birelab
