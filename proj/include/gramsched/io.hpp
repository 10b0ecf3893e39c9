/*
 Copyright 2026 The gramsched Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef GRAMSCHED_IO_HPP
#define GRAMSCHED_IO_HPP

#include "gramsched/bss_sparsifier.hpp"
#include "gramsched/scheduler.hpp"
#include "gramsched/system_model.hpp"
#include "gramsched/verify_metrics.hpp"

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace gramsched::io {

using Json = nlohmann::ordered_json;

// System file:  {"n","m","p","A","B","C"[, "labels": {"inputs", "outputs"}]}
// with row-major flattened matrices.
Json system_to_json(const LtiSystem& sys);
LtiSystem system_from_json(const Json& j);

// Swing parameter file: {"inertia", "damping", "coupling" (row-major g*g), "dt"}.
Json swing_params_to_json(const SwingParams& params);
SwingParams swing_params_from_json(const Json& j);

// Schedule file: {"t","m","p","actuators":[{"k","i","scale"}],"sensors":[...],
// "provenance"[, "budgets": {"ds","da"}]}, entries sorted by (k, i).
Json schedule_to_json(const Schedule& sched);
Schedule schedule_from_json(const Json& j);

/// Fixed field order. Infinite values are written as the string "inf".
Json report_to_json(const VerificationReport& report);

/// One line of the sparsifier trace (line-delimited JSON).
Json trace_to_json(std::string_view pass, const BarrierTrace& rec);

/// Number -> JSON, or "inf"/"-inf"/"nan" for non-finite values.
Json number(double x);

/// 6 significant digits; "inf" for infinity.
std::string format_number(double x);

Json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace gramsched::io

#endif  // GRAMSCHED_IO_HPP
