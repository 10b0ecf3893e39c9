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
#ifndef GRAMSCHED_SCHEDULER_HPP
#define GRAMSCHED_SCHEDULER_HPP

#include "gramsched/bss_sparsifier.hpp"
#include "gramsched/common.hpp"
#include "gramsched/gramian_hankel.hpp"
#include "gramsched/system_model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gramsched {

enum class Provenance { Joint, SensorOnly, ActuatorOnly, Separation, Full };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

struct ScheduleEntry {
    int k = 0;        ///< time step in [0, t)
    int channel = 0;  ///< actuator index in [0, m) or sensor index in [0, p)
    double scale = 0.0;

    friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

/// Requested average budgets, recorded with the schedule so that the
/// verifier can evaluate the matching closed-form bounds.
struct Budgets {
    double sensors = 0.0;
    double actuators = 0.0;

    friend bool operator==(const Budgets&, const Budgets&) = default;
};

/**
 * Sparse time-varying scalings a_i(k) (actuators) and s_i(k) (sensors).
 * Only strictly positive scalings are stored; anything at or below 1e-300
 * is dropped.
 */
class Schedule {
public:
    Schedule(int t, Index m, Index p, Provenance provenance);

    /// Every actuator and sensor active with unit scaling.
    static Schedule full(int t, Index m, Index p);

    int t() const noexcept { return t_; }
    Index m() const noexcept { return m_; }
    Index p() const noexcept { return p_; }
    Provenance provenance() const noexcept { return provenance_; }
    void set_provenance(Provenance p) noexcept { provenance_ = p; }

    const std::optional<Budgets>& budgets() const noexcept { return budgets_; }
    void set_budgets(Budgets b) { budgets_ = b; }

    void set_actuator(int k, Index i, double scale);
    void set_sensor(int k, Index i, double scale);
    double actuator(int k, Index i) const;
    double sensor(int k, Index i) const;

    /// Sorted by (k, channel).
    std::vector<ScheduleEntry> actuator_entries() const;
    std::vector<ScheduleEntry> sensor_entries() const;

    std::size_t active_actuator_pairs() const noexcept { return actuators_.size(); }
    std::size_t active_sensor_pairs() const noexcept { return sensors_.size(); }

    /// True when every (k, i) pair on that side carries scale exactly 1.
    bool actuators_full() const;
    bool sensors_full() const;

    /// Multiply every scaling on one side by `factor` (> 0).
    void scale_actuators(double factor);
    void scale_sensors(double factor);

    friend bool operator==(const Schedule&, const Schedule&) = default;

private:
    using Key = std::pair<int, Index>;
    void check_index(int k, Index i, Index channels) const;

    int t_;
    Index m_;
    Index p_;
    Provenance provenance_;
    std::optional<Budgets> budgets_;
    std::map<Key, double> actuators_;
    std::map<Key, double> sensors_;
};

enum class CandidateVariant {
    /// v_ij = Q A^i b_j, u_ij = Q^{-1/2} A^i c_j^T.
    Proof,
    /// V = P^{1/2} O^T, U = P^{-1/2} R (sensor and actuator roles mirrored).
    Listing,
};

struct ScheduleOptions {
    CandidateVariant variant = CandidateVariant::Proof;
    WeightScaling scaling = WeightScaling::Symmetric;
    /// Receives sparsifier iterations; the first argument names the pass
    /// ("actuators" or "sensors").
    std::function<void(std::string_view, const BarrierTrace&)> trace;
    /// Non-fatal diagnostics (budget rounding).
    std::function<void(const std::string&)> warn;
};

/// floor(d t) with a 1e-9 guard against representation error in d.
Index budget_count(double d, int t);

/**
 * Joint sensor/actuator schedule from a single two-family sparsification.
 * Budgets are average active channels per step; a budget equal to the
 * channel count keeps that side fully active.
 */
Schedule joint_schedule(const LtiSystem& sys, int t, double d_s, double d_a, const ScheduleOptions& opts = {});

/// Sparse sensors, every actuator active.
Schedule sensor_schedule(const LtiSystem& sys, int t, double d_s, const ScheduleOptions& opts = {});

/// Sparse actuators, every sensor active.
Schedule actuator_schedule(const LtiSystem& sys, int t, double d_a, const ScheduleOptions& opts = {});

/// Independent sensor and actuator schedules merged into one.
Schedule separation_schedule(const LtiSystem& sys, int t, double d_s, double d_a,
                             const ScheduleOptions& opts = {});

/**
 * P_s = sum_k sum_j a_j(k)^2 (A^{t-k-1} b_j)(A^{t-k-1} b_j)^T and
 * Q_s = sum_k sum_j s_j(k)^2 (c_j A^{t-k-1})^T (c_j A^{t-k-1}).
 */
GramianSet scheduled_gramians(const LtiSystem& sys, const Schedule& sched);

struct AverageCardinality {
    double sensors = 0.0;
    double actuators = 0.0;
};

/// sum_k card(active set at k) / t, per side.
AverageCardinality average_cardinalities(const Schedule& sched);

struct NormalizeSides {
    bool sensors = true;
    bool actuators = true;
};

/// Rescale so that sum s^2 = n d_s and sum a^2 = n d_a on the selected sides.
Schedule normalize_schedule(const Schedule& sched, double d_s, double d_a, Index n, NormalizeSides sides = {});

}  // namespace gramsched

#endif  // GRAMSCHED_SCHEDULER_HPP
