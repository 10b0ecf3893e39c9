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
#ifndef GRAMSCHED_VERIFY_METRICS_HPP
#define GRAMSCHED_VERIFY_METRICS_HPP

#include "gramsched/common.hpp"
#include "gramsched/scheduler.hpp"
#include "gramsched/system_model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gramsched {

/// Slack on every "empirical <= theoretical" comparison.
inline constexpr double kBoundTolerance = 1e-8;

/// 2 atanh(sqrt(n / kappa)). Throws InvalidArgument unless kappa > n.
double theoretical_epsilon(Index n, Index kappa);

/**
 * A systemic performance metric: a real functional on the PSD cone that is
 * homogeneous of degree one and monotone in the Loewner order.
 */
struct SystemicMetric {
    std::string id;
    std::function<double(const Matrix&)> evaluate;
};

SystemicMetric squared_hankel_norm_metric();  ///< lambda_max
SystemicMetric trace_metric();

class MetricRegistry {
public:
    /// Registry preloaded with the squared Hankel norm and the trace.
    MetricRegistry();

    /**
     * Add a user metric after randomized spot checks of homogeneity and
     * monotonicity on `dimension` x `dimension` PSD matrices. Throws
     * InvalidArgument if a check fails or the id is taken.
     */
    void add(SystemicMetric metric, Index dimension, std::uint64_t seed = 0x5eed);

    const SystemicMetric& get(const std::string& id) const;
    const std::vector<SystemicMetric>& metrics() const noexcept { return metrics_; }

private:
    std::vector<SystemicMetric> metrics_;
};

/// |ln(rho(M_s) / rho(M))|. Throws if either value is not strictly positive.
double metric_log_ratio(const SystemicMetric& metric, const Matrix& M, const Matrix& M_s);

struct SideCertificate {
    bool sparsified = false;          ///< false when every pair is active with unit scale
    std::optional<double> requested;  ///< average budget asked for, when known
    Index kappa = 0;                  ///< pair budget used for the bound
    Index active_pairs = 0;
    double achieved_average = 0.0;
    double epsilon_theory = 0.0;
    double epsilon_empirical = 0.0;
    bool pass = true;
};

struct MetricValue {
    std::string id;
    double log_ratio = 0.0;
};

/// Empirical sandwich factors after rescaling to the normalization targets.
struct NormalizedEpsilons {
    double sensors = 0.0;
    double actuators = 0.0;
    double joint = 0.0;
    double joint_balanced = 0.0;
    double hankel_norm = 0.0;
    double hankel_log_error = 0.0;
};

struct VerificationReport {
    Provenance provenance = Provenance::Full;
    int t = 0;
    Index n = 0;
    SideCertificate sensors;    ///< Q_s against Q
    SideCertificate actuators;  ///< P_s against P
    double joint_epsilon_theory = 0.0;
    /// Q_s^{1/2} P_s Q_s^{1/2} against Q^{1/2} P Q^{1/2}, original realization.
    double joint_epsilon = 0.0;
    bool joint_pass = true;
    /// Same comparison in the realization x -> P^{-1/2} x where P = I.
    double joint_epsilon_balanced = 0.0;
    bool joint_balanced_pass = true;
    double hankel_norm_full = 0.0;
    double hankel_norm_scheduled = 0.0;
    /// |ln(sigma_max(H_s) / sigma_max(H))|
    double hankel_log_error = 0.0;
    std::vector<MetricValue> metrics;
    std::optional<NormalizedEpsilons> normalized;

    /// Bounds that hold by construction: both single-sided sandwiches and the
    /// joint sandwich in the balanced realization.
    bool certified() const noexcept {
        return sensors.pass && actuators.pass && joint_balanced_pass;
    }
};

struct VerifyOptions {
    /// Also evaluate the schedule rescaled to sum s^2 = n d_s, sum a^2 = n d_a
    /// (sparsified sides only). Needs the schedule's recorded budgets.
    bool normalize = false;
    const MetricRegistry* registry = nullptr;  ///< defaults to the built-ins
};

VerificationReport verify_schedule(const LtiSystem& sys, const Schedule& sched, const VerifyOptions& opts = {});

}  // namespace gramsched

#endif  // GRAMSCHED_VERIFY_METRICS_HPP
