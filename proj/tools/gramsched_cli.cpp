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
// gramsched: sensor/actuator schedule synthesis, verification and sweeps.
//
// Exit codes: 0 success (all applicable bounds hold), 1 usage or input
// error, 2 bound violation or sparsifier breakdown.

#include "gramsched/gramsched.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace gramsched;
using io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitBound = 2;

CandidateVariant parse_variant(const std::string& s) {
    if (s == "proof") return CandidateVariant::Proof;
    if (s == "listing") return CandidateVariant::Listing;
    throw InvalidArgument("unknown variant '" + s + "' (expected proof or listing)");
}

LtiSystem load_system(const std::string& path) { return io::system_from_json(io::read_json(path)); }

void require_minimal(const LtiSystem& sys, int t) {
    const MinimalityReport r = validate_minimal(sys, t);
    if (!r.minimal()) {
        std::ostringstream os;
        os << "system is not minimal over horizon t = " << t << ": rank R(t) = " << r.reachability_rank
           << ", rank O(t) = " << r.observability_rank << ", n = " << r.n;
        throw InvalidArgument(os.str());
    }
}

/// Line-delimited JSON sink for sparsifier iterations.
class TraceFile {
public:
    explicit TraceFile(const std::string& path) : out_(path) {
        if (!out_) throw InvalidArgument("cannot write trace file '" + path + "'");
    }
    void operator()(std::string_view pass, const BarrierTrace& rec) {
        out_ << io::trace_to_json(pass, rec).dump() << '\n';
    }

private:
    std::ofstream out_;
};

void print_summary(const VerificationReport& r) {
    std::cerr << "provenance " << to_string(r.provenance) << ", t = " << r.t << ", n = " << r.n << '\n'
              << "  sensors   eps " << io::format_number(r.sensors.epsilon_empirical) << " <= "
              << io::format_number(r.sensors.epsilon_theory) << (r.sensors.pass ? "  ok" : "  VIOLATED") << '\n'
              << "  actuators eps " << io::format_number(r.actuators.epsilon_empirical) << " <= "
              << io::format_number(r.actuators.epsilon_theory) << (r.actuators.pass ? "  ok" : "  VIOLATED") << '\n'
              << "  joint     eps " << io::format_number(r.joint_epsilon) << " (balanced "
              << io::format_number(r.joint_epsilon_balanced) << ") vs " << io::format_number(r.joint_epsilon_theory)
              << '\n'
              << "  hankel norm " << io::format_number(r.hankel_norm_full) << " -> "
              << io::format_number(r.hankel_norm_scheduled) << ", |log ratio| " << io::format_number(r.hankel_log_error)
              << '\n';
}

// ---------------------------------------------------------------------------

struct ScheduleArgs {
    std::string system;
    int t = 0;
    std::optional<double> ds;
    std::optional<double> da;
    std::string mode = "joint";
    std::string variant = "proof";
    bool normalize = false;
    std::string trace;
    std::string out = "schedule.json";
    std::string report = "report.json";
};

int cmd_schedule(const ScheduleArgs& a) {
    const LtiSystem sys = load_system(a.system);
    if (a.t < sys.n()) {
        throw InvalidArgument("horizon t = " + std::to_string(a.t) + " is shorter than n = " +
                              std::to_string(sys.n()) + " (the horizon must satisfy t >= n)");
    }
    require_minimal(sys, a.t);

    ScheduleOptions opts;
    opts.variant = parse_variant(a.variant);
    opts.warn = [](const std::string& w) { std::cerr << "warning: " << w << '\n'; };
    std::optional<TraceFile> trace;
    if (!a.trace.empty()) {
        trace.emplace(a.trace);
        opts.trace = [&trace](std::string_view pass, const BarrierTrace& rec) { (*trace)(pass, rec); };
    }

    const SweepMode mode = sweep_mode_from_string(a.mode);
    auto need = [](const std::optional<double>& d, const char* flag) {
        if (!d) throw InvalidArgument(std::string("mode needs ") + flag);
        return *d;
    };
    Schedule sched = Schedule::full(a.t, sys.m(), sys.p());
    switch (mode) {
        case SweepMode::Joint: sched = joint_schedule(sys, a.t, need(a.ds, "--ds"), need(a.da, "--da"), opts); break;
        case SweepMode::Separation:
            sched = separation_schedule(sys, a.t, need(a.ds, "--ds"), need(a.da, "--da"), opts);
            break;
        case SweepMode::Sensor: sched = sensor_schedule(sys, a.t, need(a.ds, "--ds"), opts); break;
        case SweepMode::Actuator: sched = actuator_schedule(sys, a.t, need(a.da, "--da"), opts); break;
    }

    VerifyOptions vopts;
    vopts.normalize = a.normalize;
    const VerificationReport rep = verify_schedule(sys, sched, vopts);
    io::write_json(a.out, io::schedule_to_json(sched));
    io::write_json(a.report, io::report_to_json(rep));
    print_summary(rep);
    return rep.certified() ? kExitOk : kExitBound;
}

struct VerifyArgs {
    std::string system;
    std::string schedule;
    bool normalize = false;
    std::string report;
};

int cmd_verify(const VerifyArgs& a) {
    const LtiSystem sys = load_system(a.system);
    const Schedule sched = io::schedule_from_json(io::read_json(a.schedule));
    if (sched.m() != sys.m() || sched.p() != sys.p()) {
        throw InvalidArgument("schedule channel counts do not match the system");
    }
    if (sched.t() < sys.n()) throw InvalidArgument("schedule horizon is shorter than n (the horizon must satisfy t >= n)");
    VerifyOptions vopts;
    vopts.normalize = a.normalize;
    const VerificationReport rep = verify_schedule(sys, sched, vopts);
    const Json j = io::report_to_json(rep);
    if (a.report.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        io::write_json(a.report, j);
    }
    print_summary(rep);
    return rep.certified() ? kExitOk : kExitBound;
}

struct SweepArgs {
    std::string system;
    std::optional<Index> generators;
    std::uint64_t seed = 1;
    int t = 0;
    std::vector<double> ds;
    std::vector<double> da;
    std::string mode = "joint";
    std::string variant = "proof";
    bool normalize = false;
    std::string out = "sweep";
};

int cmd_sweep(const SweepArgs& a) {
    if (a.system.empty() == !a.generators.has_value()) {
        throw InvalidArgument("sweep needs exactly one of --system or --generators");
    }
    const LtiSystem sys = a.generators ? swing_system(random_swing_params(*a.generators, a.seed)) : load_system(a.system);
    if (a.t < sys.n()) throw InvalidArgument("horizon t is shorter than n (the horizon must satisfy t >= n)");
    require_minimal(sys, a.t);

    SweepSpec spec;
    spec.t = a.t;
    spec.sensor_budgets = a.ds;
    spec.actuator_budgets = a.da;
    spec.mode = sweep_mode_from_string(a.mode);
    spec.normalize = a.normalize;
    spec.variant = parse_variant(a.variant);
    const SweepResult res = run_sweep(sys, spec);

    const fs::path dir(a.out);
    fs::create_directories(dir);
    io::write_text(dir / "epsilon.csv", res.epsilon_csv());
    io::write_text(dir / "hankel_norm.csv", res.hankel_norm_csv());
    io::write_text(dir / "log_error.csv", res.log_error_csv());
    if (a.normalize) io::write_text(dir / "epsilon_normalized.csv", res.normalized_epsilon_csv());

    std::ostringstream cells;
    bool all_certified = true;
    std::size_t skipped = 0;
    for (const SweepCell& c : res.cells) {
        Json j;
        j["row"] = c.row;
        j["col"] = c.col;
        j["d_s"] = c.d_s ? Json(*c.d_s) : Json("full");
        j["d_a"] = c.d_a ? Json(*c.d_a) : Json("full");
        j["skipped"] = c.skipped;
        if (c.skipped) {
            j["reason"] = c.skip_reason;
            ++skipped;
        } else {
            j["report"] = io::report_to_json(*c.report);
            all_certified = all_certified && c.report->certified();
        }
        cells << j.dump() << '\n';
    }
    io::write_text(dir / "cells.jsonl", cells.str());
    std::cerr << res.cells.size() << " cells, " << skipped << " skipped; written to " << dir.string() << '\n';
    return all_certified ? kExitOk : kExitBound;
}

std::string dense_csv(const Schedule& s, bool sensors) {
    const Index channels = sensors ? s.p() : s.m();
    std::ostringstream os;
    os << "i\\k";
    for (int k = 0; k < s.t(); ++k) os << ',' << k;
    os << '\n';
    for (Index i = 0; i < channels; ++i) {
        os << i;
        for (int k = 0; k < s.t(); ++k) {
            const double v = sensors ? s.sensor(k, i) : s.actuator(k, i);
            os << ',' << io::format_number(v * v);
        }
        os << '\n';
    }
    return os.str();
}

int cmd_heatmap(const std::string& schedule, const std::string& prefix) {
    const Schedule s = io::schedule_from_json(io::read_json(schedule));
    io::write_text(prefix + "_sensors.csv", dense_csv(s, true));
    io::write_text(prefix + "_actuators.csv", dense_csv(s, false));
    return kExitOk;
}

struct SwingArgs {
    std::string params;
    std::optional<Index> generators;
    std::uint64_t seed = 1;
    double dt = 0.2;
    std::string out = "system.json";
    std::string params_out;
};

int cmd_swing(const SwingArgs& a) {
    if (a.params.empty() == !a.generators.has_value()) {
        throw InvalidArgument("swing needs exactly one of --params or --generators");
    }
    const SwingParams p =
        a.generators ? random_swing_params(*a.generators, a.seed, a.dt) : io::swing_params_from_json(io::read_json(a.params));
    const LtiSystem sys = swing_system(p);
    io::write_json(a.out, io::system_to_json(sys));
    if (!a.params_out.empty()) io::write_json(a.params_out, io::swing_params_to_json(p));
    std::cerr << "swing system: n = " << sys.n() << ", m = " << sys.m() << ", p = " << sys.p() << '\n';
    return kExitOk;
}

struct RandomArgs {
    Index n = 4;
    Index m = 2;
    Index p = 2;
    std::uint64_t seed = 1;
    double radius = 0.9;
    std::string out = "system.json";
};

int cmd_random(const RandomArgs& a) {
    io::write_json(a.out, io::system_to_json(random_system(a.n, a.m, a.p, a.seed, a.radius)));
    return kExitOk;
}

template <typename F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const NumericalBreakdown& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBound;
    } catch (const std::exception& e) {
        // Bad input of any kind: malformed files, failed preconditions,
        // non-minimal systems, memory budget, overflow.
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic sensor/actuator scheduling for discrete LTI systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "gramsched 0.1.0");

    ScheduleArgs sa;
    auto* sched = app.add_subcommand("schedule", "Synthesize a schedule and its verification report");
    sched->add_option("--system", sa.system, "System JSON file")->required();
    sched->add_option("--t", sa.t, "Horizon")->required();
    sched->add_option("--ds", sa.ds, "Average active sensors per step");
    sched->add_option("--da", sa.da, "Average active actuators per step");
    sched->add_option("--mode", sa.mode, "joint | separation | sensor | actuator")
        ->check(CLI::IsMember({"joint", "separation", "sensor", "actuator"}));
    sched->add_option("--variant", sa.variant, "Candidate construction: proof | listing")
        ->check(CLI::IsMember({"proof", "listing"}));
    sched->add_flag("--normalize", sa.normalize, "Also report factors after sum-of-squares normalization");
    sched->add_option("--trace", sa.trace, "Write sparsifier iterations as line-delimited JSON");
    sched->add_option("--out", sa.out, "Schedule output file");
    sched->add_option("--report", sa.report, "Report output file");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Verify a schedule file against a system");
    verify->add_option("--system", va.system, "System JSON file")->required();
    verify->add_option("--schedule", va.schedule, "Schedule JSON file")->required();
    verify->add_flag("--normalize", va.normalize, "Also report normalized factors");
    verify->add_option("--report", va.report, "Report output file (default: stdout)");

    SweepArgs wa;
    auto* sweep = app.add_subcommand("sweep", "Grid over (d_s, d_a) with fully sensed / actuated margins");
    sweep->add_option("--system", wa.system, "System JSON file");
    sweep->add_option("--generators", wa.generators, "Use a seeded swing demo with this many generators");
    sweep->add_option("--seed", wa.seed, "Seed for --generators");
    sweep->add_option("--t", wa.t, "Horizon")->required();
    sweep->add_option("--ds", wa.ds, "Sensor budgets (comma separated)")->delimiter(',')->required();
    sweep->add_option("--da", wa.da, "Actuator budgets (comma separated)")->delimiter(',')->required();
    sweep->add_option("--mode", wa.mode, "joint | separation | sensor | actuator")
        ->check(CLI::IsMember({"joint", "separation", "sensor", "actuator"}));
    sweep->add_option("--variant", wa.variant, "proof | listing")->check(CLI::IsMember({"proof", "listing"}));
    sweep->add_flag("--normalize", wa.normalize, "Add normalized grids");
    sweep->add_option("--out", wa.out, "Output directory");

    std::string hm_schedule;
    std::string hm_prefix = "heatmap";
    auto* heatmap = app.add_subcommand("heatmap", "Dense squared-scaling matrices per (channel, k)");
    heatmap->add_option("--schedule", hm_schedule, "Schedule JSON file")->required();
    heatmap->add_option("--out", hm_prefix, "Output prefix (<prefix>_sensors.csv, <prefix>_actuators.csv)");

    SwingArgs ga;
    auto* swing = app.add_subcommand("swing", "Discretized swing-equation system");
    swing->add_option("--params", ga.params, "Swing parameter JSON file");
    swing->add_option("--generators", ga.generators, "Generate seeded parameters for this many generators");
    swing->add_option("--seed", ga.seed, "Seed for --generators");
    swing->add_option("--dt", ga.dt, "Sampling interval for --generators");
    swing->add_option("--out", ga.out, "System output file");
    swing->add_option("--params-out", ga.params_out, "Also write the parameters used");

    RandomArgs ra;
    auto* random = app.add_subcommand("random-system", "Seeded random system");
    random->add_option("--n", ra.n, "States");
    random->add_option("--m", ra.m, "Inputs");
    random->add_option("--p", ra.p, "Outputs");
    random->add_option("--seed", ra.seed, "Seed");
    random->add_option("--radius", ra.radius, "Spectral radius of A");
    random->add_option("--out", ra.out, "System output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    if (*sched) return guarded([&] { return cmd_schedule(sa); });
    if (*verify) return guarded([&] { return cmd_verify(va); });
    if (*sweep) return guarded([&] { return cmd_sweep(wa); });
    if (*heatmap) return guarded([&] { return cmd_heatmap(hm_schedule, hm_prefix); });
    if (*swing) return guarded([&] { return cmd_swing(ga); });
    if (*random) return guarded([&] { return cmd_random(ra); });
    return kExitInput;
}
