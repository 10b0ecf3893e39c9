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
#include "gramsched/scheduler.hpp"

#include <cmath>
#include <sstream>

namespace gramsched {

namespace {

constexpr double kZeroScale = 1e-300;

struct SidePlan {
    Index kappa = 0;
    bool full = false;
};

SidePlan plan_side(double d, int t, Index channels, Index n, const char* side, const ScheduleOptions& opts) {
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw InvalidArgument(std::string(side) + " budget must be positive");
    }
    if (d > static_cast<double>(channels) * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << side << " budget " << d << " exceeds the channel count " << channels;
        throw InvalidArgument(os.str());
    }
    SidePlan plan;
    plan.kappa = budget_count(d, t);
    const Index total = channels * t;
    if (plan.kappa >= total) {
        plan.full = true;
        plan.kappa = total;
        return plan;
    }
    if (plan.kappa <= n) {
        std::ostringstream os;
        os << side << " budget d*t = " << plan.kappa << " must exceed the state dimension n = " << n;
        throw InvalidArgument(os.str());
    }
    if (opts.warn) {
        const double exact = 2.0 * std::atanh(std::sqrt(static_cast<double>(n) / (d * t)));
        const double rounded = sparsifier_epsilon(n, plan.kappa);
        if (std::abs(rounded - exact) > 0.01 * exact) {
            std::ostringstream os;
            os << side << " budget d*t = " << d * t << " rounded down to " << plan.kappa
               << " changes the theoretical epsilon from " << exact << " to " << rounded;
            opts.warn(os.str());
        }
    }
    return plan;
}

SparsifyOptions pass_options(const ScheduleOptions& opts, std::string_view name) {
    SparsifyOptions so;
    so.scaling = opts.scaling;
    if (opts.trace) {
        so.trace = [sink = opts.trace, name](const BarrierTrace& rec) { sink(name, rec); };
    }
    return so;
}

// Weight at column i * channels + j belongs to channel j at time t - i - 1.
void fill_actuators(Schedule& s, const Vector& w, Index channels) {
    for (Index c = 0; c < w.size(); ++c) {
        if (w(c) > 0.0) {
            const int k = s.t() - static_cast<int>(c / channels) - 1;
            s.set_actuator(k, c % channels, std::sqrt(w(c)));
        }
    }
}

void fill_sensors(Schedule& s, const Vector& w, Index channels) {
    for (Index c = 0; c < w.size(); ++c) {
        if (w(c) > 0.0) {
            const int k = s.t() - static_cast<int>(c / channels) - 1;
            s.set_sensor(k, c % channels, std::sqrt(w(c)));
        }
    }
}

void fill_all_actuators(Schedule& s) {
    for (int k = 0; k < s.t(); ++k)
        for (Index i = 0; i < s.m(); ++i) s.set_actuator(k, i, 1.0);
}

void fill_all_sensors(Schedule& s) {
    for (int k = 0; k < s.t(); ++k)
        for (Index i = 0; i < s.p(); ++i) s.set_sensor(k, i, 1.0);
}

void require_horizon(const LtiSystem& sys, int t) {
    if (t < sys.n()) {
        std::ostringstream os;
        os << "horizon t = " << t << " is shorter than n = " << sys.n() << " (the horizon must satisfy t >= n)";
        throw InvalidArgument(os.str());
    }
}

double squared_sum(const std::vector<ScheduleEntry>& entries) {
    double total = 0.0;
    for (const auto& e : entries) total += e.scale * e.scale;
    return total;
}

}  // namespace

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::Joint: return "joint";
        case Provenance::SensorOnly: return "sensor-only";
        case Provenance::ActuatorOnly: return "actuator-only";
        case Provenance::Separation: return "separation";
        case Provenance::Full: return "full";
    }
    return "full";
}

Provenance provenance_from_string(std::string_view s) {
    if (s == "joint") return Provenance::Joint;
    if (s == "sensor-only") return Provenance::SensorOnly;
    if (s == "actuator-only") return Provenance::ActuatorOnly;
    if (s == "separation") return Provenance::Separation;
    if (s == "full") return Provenance::Full;
    throw InvalidArgument("unknown schedule provenance '" + std::string(s) + "'");
}

Schedule::Schedule(int t, Index m, Index p, Provenance provenance)
    : t_(t), m_(m), p_(p), provenance_(provenance) {
    if (t <= 0 || m <= 0 || p <= 0) throw InvalidArgument("schedule needs t, m, p > 0");
}

Schedule Schedule::full(int t, Index m, Index p) {
    Schedule s(t, m, p, Provenance::Full);
    fill_all_actuators(s);
    fill_all_sensors(s);
    return s;
}

void Schedule::check_index(int k, Index i, Index channels) const {
    if (k < 0 || k >= t_ || i < 0 || i >= channels) {
        std::ostringstream os;
        os << "schedule entry (k=" << k << ", i=" << i << ") out of range";
        throw InvalidArgument(os.str());
    }
}

void Schedule::set_actuator(int k, Index i, double scale) {
    check_index(k, i, m_);
    if (!(scale >= 0.0) || !std::isfinite(scale)) throw InvalidArgument("scalings must be finite and nonnegative");
    if (scale <= kZeroScale) {
        actuators_.erase({k, i});
    } else {
        actuators_[{k, i}] = scale;
    }
}

void Schedule::set_sensor(int k, Index i, double scale) {
    check_index(k, i, p_);
    if (!(scale >= 0.0) || !std::isfinite(scale)) throw InvalidArgument("scalings must be finite and nonnegative");
    if (scale <= kZeroScale) {
        sensors_.erase({k, i});
    } else {
        sensors_[{k, i}] = scale;
    }
}

double Schedule::actuator(int k, Index i) const {
    check_index(k, i, m_);
    const auto it = actuators_.find({k, i});
    return it == actuators_.end() ? 0.0 : it->second;
}

double Schedule::sensor(int k, Index i) const {
    check_index(k, i, p_);
    const auto it = sensors_.find({k, i});
    return it == sensors_.end() ? 0.0 : it->second;
}

std::vector<ScheduleEntry> Schedule::actuator_entries() const {
    std::vector<ScheduleEntry> out;
    out.reserve(actuators_.size());
    for (const auto& [key, scale] : actuators_) out.push_back({key.first, static_cast<int>(key.second), scale});
    return out;
}

std::vector<ScheduleEntry> Schedule::sensor_entries() const {
    std::vector<ScheduleEntry> out;
    out.reserve(sensors_.size());
    for (const auto& [key, scale] : sensors_) out.push_back({key.first, static_cast<int>(key.second), scale});
    return out;
}

bool Schedule::actuators_full() const {
    if (actuators_.size() != static_cast<std::size_t>(m_ * t_)) return false;
    for (const auto& kv : actuators_)
        if (kv.second != 1.0) return false;
    return true;
}

bool Schedule::sensors_full() const {
    if (sensors_.size() != static_cast<std::size_t>(p_ * t_)) return false;
    for (const auto& kv : sensors_)
        if (kv.second != 1.0) return false;
    return true;
}

void Schedule::scale_actuators(double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidArgument("scale factor must be positive");
    for (auto& kv : actuators_) kv.second *= factor;
}

void Schedule::scale_sensors(double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidArgument("scale factor must be positive");
    for (auto& kv : sensors_) kv.second *= factor;
}

Index budget_count(double d, int t) {
    if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("budget must be positive");
    return static_cast<Index>(std::floor(d * t + 1e-9));
}

Schedule joint_schedule(const LtiSystem& sys, int t, double d_s, double d_a, const ScheduleOptions& opts) {
    const Index n = sys.n();
    const GramianSet g = gramians(sys, t);
    const SidePlan sens = plan_side(d_s, t, sys.p(), n, "sensor", opts);
    const SidePlan act = plan_side(d_a, t, sys.m(), n, "actuator", opts);

    Schedule sched(t, sys.m(), sys.p(), Provenance::Joint);
    sched.set_budgets({d_s, d_a});
    if (sens.full && act.full) {
        sched.set_provenance(Provenance::Full);
        fill_all_actuators(sched);
        fill_all_sensors(sched);
        return sched;
    }

    const Matrix R = reachability_matrix(sys, t);
    const Matrix OT = observability_columns(sys, t);
    const SparsifyOptions act_opts = pass_options(opts, "actuators");
    const SparsifyOptions sens_opts = pass_options(opts, "sensors");

    Vector act_w;
    Vector sens_w;
    if (opts.variant == CandidateVariant::Proof) {
        // Actuator family Q A^i b_j sums to X = Q P Q; sensor family
        // Q^{-1/2} A^i c_j^T is isotropic.
        const Matrix V = g.Q * R;
        if (!act.full && !sens.full) {
            const Matrix U = whiten_columns(OT);
            const DualSetResult dual = gen_dual_set(V, U, act.kappa, sens.kappa, act_opts, sens_opts);
            act_w = dual.s.weights;
            sens_w = dual.r.weights;
        } else if (!act.full) {
            act_w = bss_pass(whiten_columns(V), act.kappa, act_opts).weights;
        } else {
            sym_inv_sqrt(g.P);  // minimality of the actuated side
            sens_w = bss_pass(whiten_columns(OT), sens.kappa, sens_opts).weights;
        }
    } else {
        // Mirror image around X = P^{1/2} Q P^{1/2}: V = P^{1/2} O^T carries
        // the sensors, U = P^{-1/2} R the actuators.
        const Matrix V = sym_sqrt(g.P) * OT;
        if (!act.full && !sens.full) {
            const Matrix U = whiten_columns(R);
            const DualSetResult dual = gen_dual_set(V, U, sens.kappa, act.kappa, sens_opts, act_opts);
            sens_w = dual.s.weights;
            act_w = dual.r.weights;
        } else if (!sens.full) {
            sens_w = bss_pass(whiten_columns(V), sens.kappa, sens_opts).weights;
        } else {
            sym_inv_sqrt(g.Q);
            act_w = bss_pass(whiten_columns(R), act.kappa, act_opts).weights;
        }
    }

    if (act.full) fill_all_actuators(sched); else fill_actuators(sched, act_w, sys.m());
    if (sens.full) fill_all_sensors(sched); else fill_sensors(sched, sens_w, sys.p());
    return sched;
}

Schedule sensor_schedule(const LtiSystem& sys, int t, double d_s, const ScheduleOptions& opts) {
    require_horizon(sys, t);
    const SidePlan sens = plan_side(d_s, t, sys.p(), sys.n(), "sensor", opts);
    Schedule sched(t, sys.m(), sys.p(), Provenance::SensorOnly);
    sched.set_budgets({d_s, static_cast<double>(sys.m())});
    fill_all_actuators(sched);
    if (sens.full) {
        sched.set_provenance(Provenance::Full);
        fill_all_sensors(sched);
        return sched;
    }
    const Matrix U = whiten_columns(observability_columns(sys, t));
    const SparsifyResult res = bss_pass(U, sens.kappa, pass_options(opts, "sensors"));
    fill_sensors(sched, res.weights, sys.p());
    return sched;
}

Schedule actuator_schedule(const LtiSystem& sys, int t, double d_a, const ScheduleOptions& opts) {
    require_horizon(sys, t);
    const SidePlan act = plan_side(d_a, t, sys.m(), sys.n(), "actuator", opts);
    Schedule sched(t, sys.m(), sys.p(), Provenance::ActuatorOnly);
    sched.set_budgets({static_cast<double>(sys.p()), d_a});
    fill_all_sensors(sched);
    if (act.full) {
        sched.set_provenance(Provenance::Full);
        fill_all_actuators(sched);
        return sched;
    }
    const Matrix U = whiten_columns(reachability_matrix(sys, t));
    const SparsifyResult res = bss_pass(U, act.kappa, pass_options(opts, "actuators"));
    fill_actuators(sched, res.weights, sys.m());
    return sched;
}

Schedule separation_schedule(const LtiSystem& sys, int t, double d_s, double d_a, const ScheduleOptions& opts) {
    const Schedule sens = sensor_schedule(sys, t, d_s, opts);
    const Schedule act = actuator_schedule(sys, t, d_a, opts);
    const bool nothing_removed = sens.sensors_full() && act.actuators_full();
    Schedule merged(t, sys.m(), sys.p(), nothing_removed ? Provenance::Full : Provenance::Separation);
    merged.set_budgets({d_s, d_a});
    for (const auto& e : sens.sensor_entries()) merged.set_sensor(e.k, e.channel, e.scale);
    for (const auto& e : act.actuator_entries()) merged.set_actuator(e.k, e.channel, e.scale);
    return merged;
}

GramianSet scheduled_gramians(const LtiSystem& sys, const Schedule& sched) {
    if (sched.m() != sys.m() || sched.p() != sys.p()) {
        throw InvalidArgument("schedule channel counts do not match the system");
    }
    const int t = sched.t();
    const Index m = sys.m();
    const Index p = sys.p();
    const Matrix R = reachability_matrix(sys, t);
    const Matrix OT = observability_columns(sys, t);

    // Column i * channels + j of R / O^T is A^i b_j / (A^i)^T c_j^T, which
    // pairs with the scaling at time k = t - i - 1.
    Vector a2 = Vector::Zero(m * t);
    for (const auto& e : sched.actuator_entries()) a2((t - e.k - 1) * m + e.channel) = e.scale * e.scale;
    Vector s2 = Vector::Zero(p * t);
    for (const auto& e : sched.sensor_entries()) s2((t - e.k - 1) * p + e.channel) = e.scale * e.scale;

    GramianSet g;
    g.t = t;
    g.P = symmetrize(R * a2.asDiagonal() * R.transpose());
    g.Q = symmetrize(OT * s2.asDiagonal() * OT.transpose());
    return g;
}

AverageCardinality average_cardinalities(const Schedule& sched) {
    const double t = static_cast<double>(sched.t());
    return AverageCardinality{static_cast<double>(sched.active_sensor_pairs()) / t,
                              static_cast<double>(sched.active_actuator_pairs()) / t};
}

Schedule normalize_schedule(const Schedule& sched, double d_s, double d_a, Index n, NormalizeSides sides) {
    if (n <= 0) throw InvalidArgument("normalize_schedule: n must be positive");
    Schedule out = sched;
    if (sides.sensors) {
        const double total = squared_sum(sched.sensor_entries());
        if (!(total > 0.0)) throw InvalidArgument("normalize_schedule: every sensor scaling is zero");
        if (!(d_s > 0.0)) throw InvalidArgument("normalize_schedule: sensor budget must be positive");
        out.scale_sensors(std::sqrt(static_cast<double>(n) * d_s / total));
    }
    if (sides.actuators) {
        const double total = squared_sum(sched.actuator_entries());
        if (!(total > 0.0)) throw InvalidArgument("normalize_schedule: every actuator scaling is zero");
        if (!(d_a > 0.0)) throw InvalidArgument("normalize_schedule: actuator budget must be positive");
        out.scale_actuators(std::sqrt(static_cast<double>(n) * d_a / total));
    }
    return out;
}

}  // namespace gramsched
