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
#ifndef GRAMSCHED_BSS_SPARSIFIER_HPP
#define GRAMSCHED_BSS_SPARSIFIER_HPP

#include "gramsched/common.hpp"

#include <functional>
#include <limits>

namespace gramsched {

/// Lower barrier potential sum_i 1 / (lambda_i(A) - mu). Requires mu < lambda_min(A).
double phi_lower(double mu, const Matrix& A);

/// Upper barrier potential sum_i 1 / (mu - lambda_i(A)). Requires mu > lambda_max(A).
double phi_upper(double mu, const Matrix& A);

/**
 * Lower gain
 *   v^T (A - (mu+delta) I)^-2 v / (phi_lower(mu+delta, A) - phi_lower(mu, A))
 *     - v^T (A - (mu+delta) I)^-1 v.
 * The shifted barrier mu + delta may lie above eigenvalues of A; only an exact
 * hit (singular resolvent) or a vanishing potential difference is an error.
 */
double gain_lower(const Vector& v, double delta, const Matrix& A, double mu);

/**
 * Upper gain
 *   u^T ((mu+delta) I - A)^-2 u / (phi_upper(mu, A) - phi_upper(mu+delta, A))
 *     + u^T ((mu+delta) I - A)^-1 u.
 */
double gain_upper(const Vector& u, double delta, const Matrix& A, double mu);

/// How the accumulated weights are rescaled after the last iteration.
enum class WeightScaling {
    /// kappa^-1 (1 + sqrt(n/kappa))^-1: two-sided exp(+-eps) sandwich,
    /// eps = 2 atanh(sqrt(n/kappa)).
    Symmetric,
    /// kappa^-1 (1 - sqrt(n/kappa)): (1 -+ sqrt(n/kappa))^2 bounds.
    Listing,
};

/// Snapshot of one sparsifier iteration, taken before the update at step tau.
/// The final record (tau == budget) has chosen == -1.
struct BarrierTrace {
    int tau = 0;
    double lower = 0.0;
    double upper = 0.0;
    Index chosen = -1;
    double step = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

using TraceSink = std::function<void(const BarrierTrace&)>;

struct SparsifyOptions {
    WeightScaling scaling = WeightScaling::Symmetric;
    /// Frobenius tolerance on ||sum u u^T - I|| / sqrt(n).
    double isotropy_tol = 1e-8;
    TraceSink trace;
};

struct SparsifyResult {
    Vector weights;
    Index selected = 0;
    Index budget = 0;
    double epsilon_theory = std::numeric_limits<double>::infinity();
};

/// 2 atanh(sqrt(n / kappa)); requires kappa > n.
double sparsifier_epsilon(Index n, Index kappa);

/**
 * Deterministic barrier sparsification of an isotropic family.
 *
 * `candidates` holds the vectors u_i as columns with sum u_i u_i^T = I_n.
 * Runs exactly `budget` iterations; each adds weight to the candidate with
 * the largest gap gain_lower - gain_upper (smallest index on ties). With
 * Symmetric scaling the result satisfies
 *   exp(-eps) I <= sum w_i u_i u_i^T <= exp(eps) I,   eps = 2 atanh(sqrt(n/budget)),
 * using at most `budget` nonzero weights.
 */
SparsifyResult bss_pass(const Matrix& candidates, Index budget, const SparsifyOptions& opts = {});

struct DualSetResult {
    SparsifyResult s;  ///< weights over columns of V
    SparsifyResult r;  ///< weights over columns of U
};

/**
 * Two-family sparsification. V has columns with V V^T = X (positive
 * definite); U is isotropic. V is whitened by X^{-1/2} before its pass, so
 *   exp(-eps1) X <= sum s_i v_i v_i^T <= exp(eps1) X,
 *   exp(-eps2) I <= sum r_i u_i u_i^T <= exp(eps2) I.
 */
DualSetResult gen_dual_set(const Matrix& V, const Matrix& U, Index kappa1, Index kappa2,
                           const SparsifyOptions& opts = {});

/// Same, with separate options (trace sinks) for the V and U passes.
DualSetResult gen_dual_set(const Matrix& V, const Matrix& U, Index kappa1, Index kappa2,
                           const SparsifyOptions& v_opts, const SparsifyOptions& u_opts);

}  // namespace gramsched

#endif  // GRAMSCHED_BSS_SPARSIFIER_HPP
