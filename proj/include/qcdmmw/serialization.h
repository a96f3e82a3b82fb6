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

// JSON formats.
//
// Channel file:
//
//   { "channels": [ <spec>, <spec> ] }
//
//   <spec> = { "kind": "stinespring" | "kraus" | "unitary" | "constant",
//              "input_dim": n, "output_dim": m,
//              "env_dim": z,              // optional, stinespring only
//              "matrices": [ <matrix>, ... ] }
//
//   <matrix> is a list of rows; each entry is [re, im] (a bare number is
//   read as a real entry). Tensor-product spaces use the library-wide index
//   convention: leftmost factor most significant, so a stinespring isometry
//   has row index y * env_dim + k.
//
// Reports are single JSON objects; traces are JSON lines, one
// IterationRecord per line.

#ifndef QCDMMW_SERIALIZATION_H_
#define QCDMMW_SERIALIZATION_H_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcdmmw/channels.h"
#include "qcdmmw/estimator.h"
#include "qcdmmw/mmw_solver.h"

namespace qcdmmw {

using ChannelPair = std::pair<ChannelSpec, ChannelSpec>;

// Schema violations raise InputError with the offending JSON pointer;
// failed channel checks raise ValidationError prefixed with the channel's
// pointer; mismatched dimensions name both channels' dimensions.
ChannelPair ParseChannelJson(const nlohmann::json& doc,
                             double iso_tol = kIsoTol);
ChannelPair ParseChannelFile(const std::string& path,
                             double iso_tol = kIsoTol);

nlohmann::json MatrixToJson(const CMatrix& m);
nlohmann::json ChannelSpecToJson(const ChannelSpec& spec);

nlohmann::json ReportToJson(const DiamondReport& report);
DiamondReport ReportFromJson(const nlohmann::json& doc);

nlohmann::json RecordToJson(const IterationRecord& record);
IterationRecord RecordFromJson(const nlohmann::json& doc);

// One compact JSON object per line.
void WriteTrace(std::ostream& out, const SolverTrace& trace);
std::vector<IterationRecord> ReadTrace(std::istream& in);

}  // namespace qcdmmw

#endif  // QCDMMW_SERIALIZATION_H_
