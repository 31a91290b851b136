// Copyright 2026 The dpca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpca/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dpca {
namespace {

using json = nlohmann::json;

json vector_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Vector read_vector(const json& node, Index expected, const char* name) {
  if (!node.is_array() || static_cast<Index>(node.size()) != expected) {
    std::ostringstream msg;
    msg << "field '" << name << "' must be an array of " << expected << " numbers";
    throw Error(ErrorCode::kParse, msg.str());
  }
  Vector out(expected);
  for (Index i = 0; i < expected; ++i) {
    if (!node[i].is_number()) throw Error(ErrorCode::kParse, std::string("non-numeric entry in '") + name + "'");
    out(i) = node[i].get<double>();
  }
  return out;
}

Matrix read_matrix(const json& node, Index rows, Index cols, const char* name) {
  if (!node.is_array() || static_cast<Index>(node.size()) != rows) {
    std::ostringstream msg;
    msg << "field '" << name << "' must have " << rows << " rows";
    throw Error(ErrorCode::kParse, msg.str());
  }
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) out.row(i) = read_vector(node[i], cols, name).transpose();
  return out;
}

const json& field(const json& doc, const char* name) {
  if (!doc.contains(name)) throw Error(ErrorCode::kParse, std::string("missing field '") + name + "'");
  return doc.at(name);
}

Index read_size(const json& doc, const char* name) {
  const json& node = field(doc, name);
  if (!node.is_number_integer() || node.get<long long>() < 0) {
    throw Error(ErrorCode::kParse, std::string("field '") + name + "' must be a nonnegative integer");
  }
  return static_cast<Index>(node.get<long long>());
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace

std::string model_to_json(const ModelFile& file) {
  const ComponentModel& m = file.model;
  validate(m);
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["method"] = to_string(m.method);
  doc["D"] = m.dim();
  doc["d"] = m.count();
  doc["alpha"] = m.alpha ? json(*m.alpha) : json(nullptr);
  doc["target_mean"] = vector_json(m.target_mean);
  doc["background_mean"] = m.background_mean ? vector_json(*m.background_mean) : json(nullptr);
  doc["components"] = matrix_json(m.components);
  doc["eigenvalues"] = vector_json(m.eigenvalues);
  doc["orthonormalized"] = m.orthonormalized;
  doc["regularization"] = {
      {"floor_rel", m.regularization.floor_rel},
      {"floor_applied", m.regularization.floor_applied},
      {"target_ridge", m.regularization.target_ridge},
      {"background_ridge", m.regularization.background_ridge},
  };
  doc["feature_scale"] = file.feature_scale ? vector_json(*file.feature_scale) : json(nullptr);
  doc["provenance"] = file.provenance;
  return doc.dump(2) + "\n";
}

ModelFile model_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "model file must be a JSON object");
  try {
    const json& version = field(doc, "format_version");
    if (!version.is_number_integer() || version.get<int>() != kModelFormatVersion) {
      throw Error(ErrorCode::kParse, "unsupported model format version");
    }
    const auto method = parse_method(field(doc, "method").get<std::string>());
    if (!method) throw Error(ErrorCode::kParse, "unknown method tag");

    ModelFile file;
    ComponentModel& m = file.model;
    m.method = *method;
    const Index dim = read_size(doc, "D");
    const Index d = read_size(doc, "d");
    if (const json& alpha = field(doc, "alpha"); !alpha.is_null()) m.alpha = alpha.get<double>();
    m.target_mean = read_vector(field(doc, "target_mean"), dim, "target_mean");
    if (const json& bm = field(doc, "background_mean"); !bm.is_null()) {
      m.background_mean = read_vector(bm, dim, "background_mean");
    }
    m.components = read_matrix(field(doc, "components"), dim, d, "components");
    m.eigenvalues = read_vector(field(doc, "eigenvalues"), d, "eigenvalues");
    m.orthonormalized = field(doc, "orthonormalized").get<bool>();
    const json& reg = field(doc, "regularization");
    m.regularization.floor_rel = field(reg, "floor_rel").get<double>();
    m.regularization.floor_applied = field(reg, "floor_applied").get<bool>();
    m.regularization.target_ridge = field(reg, "target_ridge").get<double>();
    m.regularization.background_ridge = field(reg, "background_ridge").get<double>();
    if (const json& fs = field(doc, "feature_scale"); !fs.is_null()) {
      file.feature_scale = read_vector(fs, dim, "feature_scale");
    }
    file.provenance = field(doc, "provenance").get<std::map<std::string, std::string>>();
    validate(m);
    return file;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad model file: ") + e.what());
  }
}

void save_model(const ModelFile& file, const std::filesystem::path& path) {
  write_file(path, model_to_json(file));
}

ModelFile load_model(const std::filesystem::path& path) { return model_from_json(read_file(path)); }

std::string spec_to_json(const FactorModelSpec& spec) {
  validate(spec);
  json doc;
  doc["D"] = spec.dim;
  doc["k"] = spec.shared_rank;
  doc["d_s"] = spec.specific_rank;
  doc["U_b"] = matrix_json(spec.shared_basis);
  doc["U_s"] = matrix_json(spec.specific_basis);
  doc["m_x"] = vector_json(spec.target_mean);
  doc["m_y"] = vector_json(spec.background_mean);
  doc["coeff_std_background"] = vector_json(spec.background_coeff_std);
  doc["coeff_std_shared"] = vector_json(spec.shared_coeff_std);
  doc["coeff_std_specific"] = vector_json(spec.specific_coeff_std);
  doc["noise_std"] = spec.noise_std;
  doc["seed"] = spec.seed;
  return doc.dump(2) + "\n";
}

FactorModelSpec spec_from_json(const std::string& text) {
  const json doc = parse(text);
  try {
    FactorModelSpec spec;
    spec.dim = read_size(doc, "D");
    spec.shared_rank = read_size(doc, "k");
    spec.specific_rank = read_size(doc, "d_s");
    spec.shared_basis = read_matrix(field(doc, "U_b"), spec.dim, spec.shared_rank, "U_b");
    spec.specific_basis = read_matrix(field(doc, "U_s"), spec.dim, spec.specific_rank, "U_s");
    spec.target_mean = read_vector(field(doc, "m_x"), spec.dim, "m_x");
    spec.background_mean = read_vector(field(doc, "m_y"), spec.dim, "m_y");
    spec.background_coeff_std =
        read_vector(field(doc, "coeff_std_background"), spec.shared_rank, "coeff_std_background");
    spec.shared_coeff_std = read_vector(field(doc, "coeff_std_shared"), spec.shared_rank, "coeff_std_shared");
    spec.specific_coeff_std =
        read_vector(field(doc, "coeff_std_specific"), spec.specific_rank, "coeff_std_specific");
    spec.noise_std = field(doc, "noise_std").get<double>();
    spec.seed = field(doc, "seed").get<std::uint64_t>();
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad factor model file: ") + e.what());
  }
}

void save_spec(const FactorModelSpec& spec, const std::filesystem::path& path) {
  write_file(path, spec_to_json(spec));
}

FactorModelSpec load_spec(const std::filesystem::path& path) { return spec_from_json(read_file(path)); }

}  // namespace dpca
