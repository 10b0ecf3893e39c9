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
#include "gramsched/sweep.hpp"

#include "gramsched/io.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

namespace gramsched {

namespace {

unsigned thread_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("GRAMSCHED_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
    }
    return s;
}

bool feasible(double d, int t, Index channels, Index n, std::string& reason) {
    const Index kappa = budget_count(d, t);
    if (kappa >= channels * t) return true;
    if (kappa <= n) {
        std::ostringstream os;
        os << "budget d*t=" << kappa << " <= n=" << n;
        reason = os.str();
        return false;
    }
    return true;
}

SweepCell run_cell(const LtiSystem& sys, const SweepSpec& spec, std::size_t row, std::size_t col) {
    SweepCell cell;
    cell.row = row;
    cell.col = col;
    if (row < spec.sensor_budgets.size()) cell.d_s = spec.sensor_budgets[row];
    if (col < spec.actuator_budgets.size()) cell.d_a = spec.actuator_budgets[col];

    auto skip = [&cell](std::string reason) {
        cell.skipped = true;
        cell.skip_reason = sanitize(std::move(reason));
        return cell;
    };

    const bool interior = cell.d_s && cell.d_a;
    if (interior && (spec.mode == SweepMode::Sensor || spec.mode == SweepMode::Actuator)) {
        return skip("mode " + std::string(to_string(spec.mode)));
    }
    if (cell.d_s && !cell.d_a && spec.mode == SweepMode::Actuator) return skip("mode actuator");
    if (!cell.d_s && cell.d_a && spec.mode == SweepMode::Sensor) return skip("mode sensor");

    std::string reason;
    if (cell.d_s && !feasible(*cell.d_s, spec.t, sys.p(), sys.n(), reason)) return skip("sensor " + reason);
    if (cell.d_a && !feasible(*cell.d_a, spec.t, sys.m(), sys.n(), reason)) return skip("actuator " + reason);

    ScheduleOptions opts;
    opts.variant = spec.variant;
    VerifyOptions vopts;
    vopts.normalize = spec.normalize;

    try {
        Schedule sched = Schedule::full(spec.t, sys.m(), sys.p());
        if (interior) {
            sched = spec.mode == SweepMode::Separation ? separation_schedule(sys, spec.t, *cell.d_s, *cell.d_a, opts)
                                                       : joint_schedule(sys, spec.t, *cell.d_s, *cell.d_a, opts);
        } else if (cell.d_s) {
            sched = sensor_schedule(sys, spec.t, *cell.d_s, opts);
        } else if (cell.d_a) {
            sched = actuator_schedule(sys, spec.t, *cell.d_a, opts);
        } else {
            sched.set_budgets({static_cast<double>(sys.p()), static_cast<double>(sys.m())});
        }
        cell.report = verify_schedule(sys, sched, vopts);
        if (interior && spec.mode == SweepMode::Separation) {
            cell.separation_sensor_epsilon = cell.report->sensors.epsilon_empirical;
            cell.separation_actuator_epsilon = cell.report->actuators.epsilon_empirical;
        }
    } catch (const std::exception& e) {
        return skip(e.what());
    }
    return cell;
}

double normalized_epsilon(const SweepCell& c) {
    const auto& r = *c.report;
    if (!r.normalized) return c.epsilon();
    if (c.d_s && c.d_a) return r.normalized->joint;
    if (c.d_s) return r.normalized->sensors;
    if (c.d_a) return r.normalized->actuators;
    return r.normalized->joint;
}

template <typename CellText>
std::string grid_csv(const SweepResult& res, CellText&& text) {
    std::ostringstream os;
    os << "d_s\\d_a";
    for (double da : res.spec.actuator_budgets) os << ',' << io::format_number(da);
    os << ",full\n";
    for (std::size_t r = 0; r < res.rows; ++r) {
        os << (r < res.spec.sensor_budgets.size() ? io::format_number(res.spec.sensor_budgets[r]) : "full");
        for (std::size_t c = 0; c < res.cols; ++c) {
            const SweepCell& cell = res.at(r, c);
            os << ',' << (cell.skipped ? "skip:" + cell.skip_reason : text(cell));
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace

std::string_view to_string(SweepMode mode) {
    switch (mode) {
        case SweepMode::Joint: return "joint";
        case SweepMode::Separation: return "separation";
        case SweepMode::Sensor: return "sensor";
        case SweepMode::Actuator: return "actuator";
    }
    return "joint";
}

SweepMode sweep_mode_from_string(std::string_view s) {
    if (s == "joint") return SweepMode::Joint;
    if (s == "separation") return SweepMode::Separation;
    if (s == "sensor") return SweepMode::Sensor;
    if (s == "actuator") return SweepMode::Actuator;
    throw InvalidArgument("unknown mode '" + std::string(s) + "' (expected joint, separation, sensor, actuator)");
}

double SweepCell::epsilon() const {
    if (!report) return std::numeric_limits<double>::quiet_NaN();
    if (d_s && d_a) return report->joint_epsilon;
    if (d_s) return report->sensors.epsilon_empirical;
    if (d_a) return report->actuators.epsilon_empirical;
    return report->joint_epsilon;
}

std::string SweepResult::epsilon_csv() const {
    return grid_csv(*this, [](const SweepCell& c) {
        std::string s = io::format_number(c.epsilon());
        if (c.separation_sensor_epsilon && c.separation_actuator_epsilon) {
            s += " (" + io::format_number(*c.separation_sensor_epsilon) + "+" +
                 io::format_number(*c.separation_actuator_epsilon) + ")";
        }
        return s;
    });
}

std::string SweepResult::normalized_epsilon_csv() const {
    return grid_csv(*this, [](const SweepCell& c) { return io::format_number(normalized_epsilon(c)); });
}

std::string SweepResult::hankel_norm_csv() const {
    return grid_csv(*this, [](const SweepCell& c) {
        const auto& r = *c.report;
        return io::format_number(r.normalized ? r.normalized->hankel_norm : r.hankel_norm_scheduled);
    });
}

std::string SweepResult::log_error_csv() const {
    return grid_csv(*this, [](const SweepCell& c) {
        const auto& r = *c.report;
        return io::format_number(r.normalized ? r.normalized->hankel_log_error : r.hankel_log_error);
    });
}

SweepResult run_sweep(const LtiSystem& sys, const SweepSpec& spec) {
    if (spec.t <= 0) throw InvalidArgument("sweep horizon must be positive");
    if (spec.t < sys.n()) throw InvalidArgument("sweep horizon t must satisfy t >= n");
    for (double d : spec.sensor_budgets)
        if (!(d > 0.0)) throw InvalidArgument("sweep budgets must be positive");
    for (double d : spec.actuator_budgets)
        if (!(d > 0.0)) throw InvalidArgument("sweep budgets must be positive");

    SweepResult res;
    res.spec = spec;
    res.rows = spec.sensor_budgets.size() + 1;
    res.cols = spec.actuator_budgets.size() + 1;
    res.cells.resize(res.rows * res.cols);

    const std::size_t total = res.cells.size();
    const unsigned workers = std::min<unsigned>(thread_count(spec.threads), static_cast<unsigned>(total));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            res.cells[idx] = run_cell(sys, spec, idx / res.cols, idx % res.cols);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return res;
}

}  // namespace gramsched
