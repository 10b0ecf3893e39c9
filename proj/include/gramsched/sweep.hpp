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
#ifndef GRAMSCHED_SWEEP_HPP
#define GRAMSCHED_SWEEP_HPP

#include "gramsched/scheduler.hpp"
#include "gramsched/system_model.hpp"
#include "gramsched/verify_metrics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gramsched {

enum class SweepMode { Joint, Separation, Sensor, Actuator };

std::string_view to_string(SweepMode mode);
SweepMode sweep_mode_from_string(std::string_view s);

struct SweepSpec {
    int t = 0;
    std::vector<double> sensor_budgets;    ///< rows
    std::vector<double> actuator_budgets;  ///< columns
    SweepMode mode = SweepMode::Joint;
    bool normalize = false;
    CandidateVariant variant = CandidateVariant::Proof;
    /// Worker threads; 0 reads GRAMSCHED_THREADS, falling back to 1.
    unsigned threads = 0;
};

/// One grid cell. `row` / `col` equal to the budget-list size denote the
/// fully-sensed row / fully-actuated column.
struct SweepCell {
    std::size_t row = 0;
    std::size_t col = 0;
    std::optional<double> d_s;  ///< empty: fully sensed
    std::optional<double> d_a;  ///< empty: fully actuated
    bool skipped = false;
    std::string skip_reason;
    std::optional<VerificationReport> report;
    /// Separation mode only: single-sided factors eps_s and eps_a.
    std::optional<double> separation_sensor_epsilon;
    std::optional<double> separation_actuator_epsilon;

    /// The epsilon this cell reports: the joint factor for interior cells,
    /// the single-sided factor on the margins.
    double epsilon() const;
};

struct SweepResult {
    SweepSpec spec;
    std::size_t rows = 0;  ///< sensor_budgets.size() + 1
    std::size_t cols = 0;  ///< actuator_budgets.size() + 1
    std::vector<SweepCell> cells;  ///< row-major

    const SweepCell& at(std::size_t r, std::size_t c) const { return cells.at(r * cols + c); }

    std::string epsilon_csv() const;
    std::string normalized_epsilon_csv() const;
    std::string hankel_norm_csv() const;
    std::string log_error_csv() const;
};

/// Runs every cell; infeasible or failing cells are recorded as skips.
SweepResult run_sweep(const LtiSystem& sys, const SweepSpec& spec);

}  // namespace gramsched

#endif  // GRAMSCHED_SWEEP_HPP
