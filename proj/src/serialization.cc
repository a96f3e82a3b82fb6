// Copyright 2026 The qcdmmw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcdmmw/serialization.h"

#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "qcdmmw/errors.h"

namespace qcdmmw {

namespace {

using json = nlohmann::json;

[[noreturn]] void SchemaError(const std::string& pointer,
                              const std::string& message) {
  throw InputError(fmt::format("channel file {}: {}",
                               pointer.empty() ? "/" : pointer, message));
}

const json& Require(const json& obj, const std::string& key,
                    const std::string& pointer) {
  if (!obj.contains(key)) SchemaError(pointer + "/" + key, "missing field");
  return obj.at(key);
}

Index ReadPositive(const json& v, const std::string& pointer) {
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    SchemaError(pointer, "expected a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

Complex ReadComplex(const json& v, const std::string& pointer) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    SchemaError(pointer, "expected a complex number [re, im]");
  }
  return Complex(v[0].get<double>(), v[1].get<double>());
}

CMatrix ReadMatrix(const json& v, const std::string& pointer) {
  if (!v.is_array() || v.empty()) {
    SchemaError(pointer, "expected a non-empty list of rows");
  }
  const auto rows = static_cast<Index>(v.size());
  Index cols = -1;
  CMatrix m;
  for (Index i = 0; i < rows; ++i) {
    const std::string row_ptr = fmt::format("{}/{}", pointer, i);
    const json& row = v[i];
    if (!row.is_array() || row.empty()) {
      SchemaError(row_ptr, "expected a non-empty row");
    }
    if (cols < 0) {
      cols = static_cast<Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Index>(row.size()) != cols) {
      SchemaError(row_ptr, fmt::format("row has {} entries, expected {}",
                                       row.size(), cols));
    }
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = ReadComplex(row[j], fmt::format("{}/{}", row_ptr, j));
    }
  }
  return m;
}

ChannelSpec ReadSpec(const json& v, const std::string& pointer,
                     double iso_tol) {
  if (!v.is_object()) SchemaError(pointer, "expected a channel object");
  ChannelSpec spec;
  const json& kind = Require(v, "kind", pointer);
  if (!kind.is_string()) SchemaError(pointer + "/kind", "expected a string");
  try {
    spec.kind = ParseChannelKind(kind.get<std::string>());
  } catch (const InputError& e) {
    SchemaError(pointer + "/kind", e.what());
  }
  spec.input_dim =
      ReadPositive(Require(v, "input_dim", pointer), pointer + "/input_dim");
  spec.output_dim =
      ReadPositive(Require(v, "output_dim", pointer), pointer + "/output_dim");
  if (v.contains("env_dim")) {
    if (spec.kind != ChannelKind::kStinespring) {
      SchemaError(pointer + "/env_dim", "only allowed for stinespring channels");
    }
    spec.env_dim = ReadPositive(v.at("env_dim"), pointer + "/env_dim");
  }
  const json& mats = Require(v, "matrices", pointer);
  if (!mats.is_array() || mats.empty()) {
    SchemaError(pointer + "/matrices", "expected a non-empty list of matrices");
  }
  for (std::size_t i = 0; i < mats.size(); ++i) {
    spec.matrices.push_back(
        ReadMatrix(mats[i], fmt::format("{}/matrices/{}", pointer, i)));
  }

  try {
    ValidateChannelSpec(spec, iso_tol);
  } catch (const ValidationError& e) {
    throw ValidationError(e.check(), e.residual(),
                          fmt::format("channel file {}: {}", pointer, e.what()));
  } catch (const InputError& e) {
    SchemaError(pointer, e.what());
  }
  return spec;
}

json OptionalToJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> OptionalFromJson(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<double>();
}

json IntervalToJson(const DiamondInterval& iv) {
  return json{{"lo", iv.lo}, {"hi", iv.hi}};
}

DiamondInterval IntervalFromJson(const json& doc) {
  return DiamondInterval{doc.at("lo").get<double>(), doc.at("hi").get<double>()};
}

}  // namespace

ChannelPair ParseChannelJson(const json& doc, double iso_tol) {
  if (!doc.is_object()) SchemaError("", "expected a JSON object");
  const json& channels = Require(doc, "channels", "");
  if (!channels.is_array() || channels.size() != 2) {
    SchemaError("/channels", "expected a list of exactly two channels");
  }
  ChannelSpec first = ReadSpec(channels[0], "/channels/0", iso_tol);
  ChannelSpec second = ReadSpec(channels[1], "/channels/1", iso_tol);
  if (first.input_dim != second.input_dim ||
      first.output_dim != second.output_dim) {
    throw InputError(fmt::format(
        "channel file: dimension mismatch: /channels/0 maps {} -> {} but "
        "/channels/1 maps {} -> {}",
        first.input_dim, first.output_dim, second.input_dim,
        second.output_dim));
  }
  return {std::move(first), std::move(second)};
}

ChannelPair ParseChannelFile(const std::string& path, double iso_tol) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open channel file '{}'", path));
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InputError(
        fmt::format("channel file '{}' is not valid JSON: {}", path, e.what()));
  }
  return ParseChannelJson(doc, iso_tol);
}

json MatrixToJson(const CMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json ChannelSpecToJson(const ChannelSpec& spec) {
  json doc{{"kind", ChannelKindName(spec.kind)},
           {"input_dim", spec.input_dim},
           {"output_dim", spec.output_dim}};
  if (spec.env_dim > 0) doc["env_dim"] = spec.env_dim;
  json mats = json::array();
  for (const CMatrix& m : spec.matrices) mats.push_back(MatrixToJson(m));
  doc["matrices"] = std::move(mats);
  return doc;
}

json ReportToJson(const DiamondReport& r) {
  json doc{{"lambda", r.lambda},
           {"delta", r.delta},
           {"delta1", r.delta1},
           {"delta_total", r.delta_total()},
           {"interval", IntervalToJson(r.interval)},
           {"certified_interval", IntervalToJson(r.certified_interval)},
           {"certificates", {{"lower", r.lower_cert}, {"upper", r.upper_cert}}},
           {"iterations", r.iterations},
           {"game_dim", r.game_dim},
           {"decision", r.decision ? json(DecisionName(*r.decision))
                                   : json(nullptr)},
           {"a", OptionalToJson(r.a)},
           {"b", OptionalToJson(r.b)}};
  if (r.thresholds) {
    doc["thresholds"] = {{"upper_when_far", r.thresholds->upper_when_far},
                         {"lower_when_close", r.thresholds->lower_when_close}};
  } else {
    doc["thresholds"] = nullptr;
  }
  return doc;
}

DiamondReport ReportFromJson(const json& doc) {
  DiamondReport r;
  try {
    r.lambda = doc.at("lambda").get<double>();
    r.delta = doc.at("delta").get<double>();
    r.delta1 = doc.at("delta1").get<double>();
    r.interval = IntervalFromJson(doc.at("interval"));
    r.certified_interval = IntervalFromJson(doc.at("certified_interval"));
    r.lower_cert = doc.at("certificates").at("lower").get<double>();
    r.upper_cert = doc.at("certificates").at("upper").get<double>();
    r.iterations = doc.at("iterations").get<long>();
    r.game_dim = doc.at("game_dim").get<long>();
    if (doc.contains("decision") && !doc.at("decision").is_null()) {
      r.decision = ParseDecision(doc.at("decision").get<std::string>());
    }
    r.a = OptionalFromJson(doc, "a");
    r.b = OptionalFromJson(doc, "b");
    if (doc.contains("thresholds") && !doc.at("thresholds").is_null()) {
      const json& th = doc.at("thresholds");
      r.thresholds = PromiseThresholds{
          th.at("upper_when_far").get<double>(),
          th.at("lower_when_close").get<double>()};
    }
  } catch (const json::exception& e) {
    throw InputError(fmt::format("malformed report: {}", e.what()));
  }
  return r;
}

json RecordToJson(const IterationRecord& rec) {
  return json{{"t", rec.t},
              {"loss", rec.loss},
              {"payoff", OptionalToJson(rec.payoff)},
              {"exponent_min_eig", rec.exponent_min_eig},
              {"exponent_max_eig", rec.exponent_max_eig},
              {"density_trace_residual", rec.density_trace_residual},
              {"density_min_eig", rec.density_min_eig}};
}

IterationRecord RecordFromJson(const json& doc) {
  IterationRecord rec;
  try {
    rec.t = doc.at("t").get<long>();
    rec.loss = doc.at("loss").get<double>();
    rec.payoff = OptionalFromJson(doc, "payoff");
    rec.exponent_min_eig = doc.at("exponent_min_eig").get<double>();
    rec.exponent_max_eig = doc.at("exponent_max_eig").get<double>();
    rec.density_trace_residual =
        doc.at("density_trace_residual").get<double>();
    rec.density_min_eig = doc.at("density_min_eig").get<double>();
  } catch (const json::exception& e) {
    throw InputError(fmt::format("malformed trace record: {}", e.what()));
  }
  return rec;
}

void WriteTrace(std::ostream& out, const SolverTrace& trace) {
  for (const IterationRecord& rec : trace.records) {
    out << RecordToJson(rec).dump() << '\n';
  }
}

std::vector<IterationRecord> ReadTrace(std::istream& in) {
  std::vector<IterationRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      records.push_back(RecordFromJson(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw InputError(fmt::format("malformed trace line {}: {}",
                                   records.size() + 1, e.what()));
    }
  }
  return records;
}

}  // namespace qcdmmw
