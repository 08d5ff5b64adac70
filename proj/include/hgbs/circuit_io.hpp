// Copyright 2026 The hgbs Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hgbs/circuit.hpp"

namespace hgbs::circuit {

/// Circuit file layout:
///   { "header": {"seed": 7}, "num_modes": M,
///     "layers": [[{"modes":[i,i+1],"theta":..,"varphi":..,"phi":..,
///                  "loss_gamma":..,"lossy_mode":..}, ...], ...] }
/// The header is present only for seeded circuits.
nlohmann::ordered_json to_json(const Circuit &c);
Circuit circuit_from_json(const nlohmann::json &j);

std::string dump_circuit(const Circuit &c);

/// Throws std::runtime_error naming the path on I/O failure.
void write_circuit_file(const Circuit &c, const std::filesystem::path &path);
Circuit read_circuit_file(const std::filesystem::path &path);

} // namespace hgbs::circuit
