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
#include "gramsched/verify_metrics.hpp"

#include "gramsched/gramian_hankel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace gramsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lambda_max(const Matrix& M) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(M), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

Matrix random_psd(std::mt19937_64& rng, Index d) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix G(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) G(i, j) = normal(rng);
    return G * G.transpose();
}

double log_ratio_or_inf(const SystemicMetric& metric, const Matrix& M, const Matrix& M_s) {
    const double ref = metric.evaluate(M);
    const double val = metric.evaluate(M_s);
    if (!(ref > 0.0)) throw InvalidArgument("metric '" + metric.id + "' vanishes on the full system");
    if (!(val > 0.0)) return kInf;
    return std::abs(std::log(val / ref));
}

SideCertificate certify_side(bool sparsified, std::optional<double> requested, Index active_pairs, Index channels,
                             int t, Index n, const Matrix& G, const Matrix& G_s) {
    SideCertificate c;
    c.sparsified = sparsified;
    c.requested = requested;
    c.active_pairs = active_pairs;
    c.achieved_average = static_cast<double>(active_pairs) / t;
    if (!sparsified) {
        c.kappa = channels * t;
        return c;
    }
    c.kappa = requested ? std::min(budget_count(*requested, t), channels * t) : active_pairs;
    c.epsilon_theory = c.kappa > n ? theoretical_epsilon(n, c.kappa) : kInf;
    c.epsilon_empirical = loewner_sandwich_epsilon(G, G_s);
    // A singular scheduled Gramian never certifies, even against an infinite bound.
    c.pass = std::isfinite(c.epsilon_empirical) && c.epsilon_empirical <= c.epsilon_theory + kBoundTolerance;
    return c;
}

struct JointFactors {
    double joint = 0.0;
    double balanced = 0.0;
    double hankel_full = 0.0;
    double hankel_scheduled = 0.0;
    Matrix M;
    Matrix M_s;
};

JointFactors joint_factors(const GramianSet& full, const GramianSet& sched, bool nothing_removed) {
    JointFactors f;
    f.M = gramian_sandwich(full.P, full.Q);
    f.M_s = gramian_sandwich(sched.P, sched.Q);
    f.hankel_full = std::sqrt(std::max(lambda_max(f.M), 0.0));
    f.hankel_scheduled = std::sqrt(std::max(lambda_max(f.M_s), 0.0));
    if (nothing_removed) return f;

    f.joint = loewner_sandwich_epsilon(f.M, f.M_s);

    // Realization x -> P^{-1/2} x: P becomes I, Q becomes P^{1/2} Q P^{1/2}.
    const Matrix Ph = sym_sqrt(full.P);
    const Matrix Pih = sym_inv_sqrt(full.P);
    const Matrix Q_bal = symmetrize(Ph * full.Q * Ph);
    const Matrix Qs_bal = symmetrize(Ph * sched.Q * Ph);
    const Matrix Ps_bal = symmetrize(Pih * sched.P * Pih);
    f.balanced = loewner_sandwich_epsilon(Q_bal, gramian_sandwich(Ps_bal, Qs_bal));
    return f;
}

double hankel_log_error(double full, double scheduled) {
    if (!(scheduled > 0.0)) return kInf;
    return std::abs(std::log(scheduled / full));
}

}  // namespace

double theoretical_epsilon(Index n, Index kappa) {
    if (n <= 0 || kappa <= n) {
        std::ostringstream os;
        os << "theoretical_epsilon: budget " << kappa << " must exceed n = " << n;
        throw InvalidArgument(os.str());
    }
    return 2.0 * std::atanh(std::sqrt(static_cast<double>(n) / static_cast<double>(kappa)));
}

SystemicMetric squared_hankel_norm_metric() {
    return SystemicMetric{"squared-hankel-norm", [](const Matrix& M) { return lambda_max(M); }};
}

SystemicMetric trace_metric() {
    return SystemicMetric{"trace", [](const Matrix& M) { return M.trace(); }};
}

MetricRegistry::MetricRegistry() : metrics_{squared_hankel_norm_metric(), trace_metric()} {}

void MetricRegistry::add(SystemicMetric metric, Index dimension, std::uint64_t seed) {
    if (!metric.evaluate) throw InvalidArgument("metric '" + metric.id + "' has no evaluator");
    if (dimension <= 0) throw InvalidArgument("metric spot checks need a positive dimension");
    for (const auto& m : metrics_)
        if (m.id == metric.id) throw InvalidArgument("metric '" + metric.id + "' is already registered");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> factor(1.0, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix A = random_psd(rng, dimension);
        const Matrix B = A + random_psd(rng, dimension);
        const double c = factor(rng);
        const double ra = metric.evaluate(A);
        const double rca = metric.evaluate(c * A);
        const double rb = metric.evaluate(B);
        if (!std::isfinite(ra) || !std::isfinite(rca) || !std::isfinite(rb)) {
            throw InvalidArgument("metric '" + metric.id + "' returned a non-finite value");
        }
        if (std::abs(rca - c * ra) > 1e-9 * std::max(std::abs(c * ra), 1e-300)) {
            throw InvalidArgument("metric '" + metric.id + "' failed the homogeneity check");
        }
        if (ra > rb + 1e-12 * std::abs(rb)) {
            throw InvalidArgument("metric '" + metric.id + "' failed the monotonicity check");
        }
    }
    metrics_.push_back(std::move(metric));
}

const SystemicMetric& MetricRegistry::get(const std::string& id) const {
    for (const auto& m : metrics_)
        if (m.id == id) return m;
    throw InvalidArgument("unknown metric '" + id + "'");
}

double metric_log_ratio(const SystemicMetric& metric, const Matrix& M, const Matrix& M_s) {
    if (M.rows() != M_s.rows() || M.cols() != M_s.cols()) throw InvalidArgument("metric_log_ratio: dimension mismatch");
    const double ref = metric.evaluate(M);
    const double val = metric.evaluate(M_s);
    if (!(ref > 0.0) || !(val > 0.0)) {
        throw InvalidArgument("metric '" + metric.id + "' must be strictly positive on both arguments");
    }
    return std::abs(std::log(val / ref));
}

VerificationReport verify_schedule(const LtiSystem& sys, const Schedule& sched, const VerifyOptions& opts) {
    if (sched.m() != sys.m() || sched.p() != sys.p()) {
        throw InvalidArgument("schedule channel counts do not match the system");
    }
    const int t = sched.t();
    const Index n = sys.n();
    const GramianSet full = gramians(sys, t);
    const GramianSet scheduled = scheduled_gramians(sys, sched);

    VerificationReport rep;
    rep.provenance = sched.provenance();
    rep.t = t;
    rep.n = n;

    const auto& budgets = sched.budgets();
    const std::optional<double> ds = budgets ? std::optional<double>(budgets->sensors) : std::nullopt;
    const std::optional<double> da = budgets ? std::optional<double>(budgets->actuators) : std::nullopt;
    const bool sens_sparse = !sched.sensors_full();
    const bool act_sparse = !sched.actuators_full();

    rep.sensors = certify_side(sens_sparse, ds, static_cast<Index>(sched.active_sensor_pairs()), sys.p(), t, n,
                               full.Q, scheduled.Q);
    rep.actuators = certify_side(act_sparse, da, static_cast<Index>(sched.active_actuator_pairs()), sys.m(), t, n,
                                 full.P, scheduled.P);
    rep.joint_epsilon_theory = rep.sensors.epsilon_theory + rep.actuators.epsilon_theory;

    const JointFactors f = joint_factors(full, scheduled, !sens_sparse && !act_sparse);
    rep.joint_epsilon = f.joint;
    rep.joint_pass = std::isfinite(f.joint) && f.joint <= rep.joint_epsilon_theory + kBoundTolerance;
    rep.joint_epsilon_balanced = f.balanced;
    rep.joint_balanced_pass = std::isfinite(f.balanced) && f.balanced <= rep.joint_epsilon_theory + kBoundTolerance;
    rep.hankel_norm_full = f.hankel_full;
    rep.hankel_norm_scheduled = f.hankel_scheduled;
    rep.hankel_log_error = hankel_log_error(f.hankel_full, f.hankel_scheduled);

    static const MetricRegistry builtin;
    const MetricRegistry& registry = opts.registry ? *opts.registry : builtin;
    for (const auto& metric : registry.metrics()) {
        rep.metrics.push_back({metric.id, log_ratio_or_inf(metric, f.M, f.M_s)});
    }

    if (opts.normalize && (sens_sparse || act_sparse)) {
        if (!budgets) throw InvalidArgument("normalization needs the schedule's recorded budgets");
        const Schedule normed =
            normalize_schedule(sched, budgets->sensors, budgets->actuators, n, NormalizeSides{sens_sparse, act_sparse});
        const GramianSet ng = scheduled_gramians(sys, normed);
        NormalizedEpsilons ne;
        ne.sensors = sens_sparse ? loewner_sandwich_epsilon(full.Q, ng.Q) : 0.0;
        ne.actuators = act_sparse ? loewner_sandwich_epsilon(full.P, ng.P) : 0.0;
        const JointFactors nf = joint_factors(full, ng, false);
        ne.joint = nf.joint;
        ne.joint_balanced = nf.balanced;
        ne.hankel_norm = nf.hankel_scheduled;
        ne.hankel_log_error = hankel_log_error(nf.hankel_full, nf.hankel_scheduled);
        rep.normalized = ne;
    }
    return rep;
}

}  // namespace gramsched
