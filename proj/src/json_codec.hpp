// Copyright 2026 The axpue Authors.
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

// JSON encoders shared by the file formats and the scenario manifest.
// Decoders throw Error(SchemaError) without a line number; callers that know
// the line re-throw with it.

#pragma once

#include <string>
#include <string_view>

#include "axpue/model.hpp"
#include "json.hpp"

namespace axpue::detail {

using Json = nlohmann::json;

[[noreturn]] void schema_error(const std::string& message);

const Json& require(const Json& object, std::string_view key);
std::string require_string(const Json& object, std::string_view key);
double require_number(const Json& object, std::string_view key);
/// Epoch seconds from a number or an RFC 3339 string.
double require_time(const Json& object, std::string_view key);
std::uint64_t require_count(const Json& value, std::string_view what);

Json run_to_json(const ApplicationRun& run);
/// Checks schema and the work-type/category agreement, but not end > start.
ApplicationRun run_from_json(const Json& object);

Json device_to_json(const DeviceRecord& device);
DeviceRecord device_from_json(const Json& object);

}  // namespace axpue::detail
