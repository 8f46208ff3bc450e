// Copyright 2026 The qest Authors
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

#ifndef QEST_IO_HPP
#define QEST_IO_HPP

#include <optional>
#include <string>

#include "qest/measurement.hpp"
#include "qest/mixed.hpp"
#include "qest/statmodel.hpp"

namespace qest::io {

/// Parsed model file.  A file always carries the pure-state fields
/// (dim, psi0, dpsi, weight) and may additionally carry a "mixed" section
/// (rho, drho) sharing the same weight.
struct ModelFile {
    std::optional<PureModel> pure;
    std::optional<MixedModel> mixed;
};

/// Parses a model file.  Malformed JSON or schema violations throw
/// ParseError with a field-specific message.
ModelFile parse_model_file(const std::string& path);
ModelFile parse_model_json(const std::string& text);

/// POVM serialization: complex entries as [re, im] pairs, 17 significant
/// digits, lossless on re-parse.
std::string povm_to_json(const Povm& povm);
void write_povm_file(const std::string& path, const Povm& povm);
Povm parse_povm_file(const std::string& path);
Povm parse_povm_json(const std::string& text);

/// Shortest-width decimal with 17 significant digits (round-trips exactly).
std::string format_double(double x);

} // namespace qest::io

#endif // QEST_IO_HPP
