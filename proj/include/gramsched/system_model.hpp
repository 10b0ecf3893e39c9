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
#ifndef GRAMSCHED_SYSTEM_MODEL_HPP
#define GRAMSCHED_SYSTEM_MODEL_HPP

#include "gramsched/common.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gramsched {

struct ChannelLabels {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
};

/**
 * Discrete-time LTI system x(k+1) = A x(k) + B u(k), y(k) = C x(k).
 *
 * Immutable after construction. The constructor rejects empty or
 * inconsistent shapes and non-finite entries.
 */
class LtiSystem {
public:
    LtiSystem(Matrix A, Matrix B, Matrix C, ChannelLabels labels = {});

    const Matrix& A() const noexcept { return A_; }
    const Matrix& B() const noexcept { return B_; }
    const Matrix& C() const noexcept { return C_; }
    const ChannelLabels& labels() const noexcept { return labels_; }

    Index n() const noexcept { return A_.rows(); }
    Index m() const noexcept { return B_.cols(); }
    Index p() const noexcept { return C_.rows(); }

    /// The dual system (A^T, C^T, B^T). Inputs and outputs swap roles.
    LtiSystem dual() const;

private:
    Matrix A_;
    Matrix B_;
    Matrix C_;
    ChannelLabels labels_;
};

struct RankOptions {
    /// Singular values below max(rows, cols) * sigma_max * rel_tol count as zero.
    double rel_tol = 1e-12;
};

Index numerical_rank(const Matrix& M, const RankOptions& opts = {});

struct MinimalityReport {
    Index n = 0;
    Index reachability_rank = 0;
    Index observability_rank = 0;
    int horizon = 0;

    bool minimal() const noexcept { return reachability_rank == n && observability_rank == n; }
};

/// Numerical ranks of R(t) and O(t). Requires t >= n.
MinimalityReport validate_minimal(const LtiSystem& sys, int horizon, const RankOptions& opts = {});

/**
 * Parameters of the linearized swing dynamics
 *   m_i theta_i'' + d_i theta_i' = -sum_j k_ij (theta_i - theta_j) + u_i.
 * `coupling` is the weighted graph Laplacian K (symmetric, zero row sums,
 * nonpositive off-diagonals).
 */
struct SwingParams {
    Vector inertia;
    Vector damping;
    Matrix coupling;
    double dt = 0.2;

    Index generators() const noexcept { return inertia.size(); }

    /// Throws InvalidArgument if any invariant fails.
    void validate() const;
};

struct ContinuousModel {
    Matrix A;
    Matrix B;
    Matrix C;
};

struct DiscretePair {
    Matrix A;
    Matrix B;
};

/// A_c = [[0, I], [-M^-1 K, -M^-1 D]], B_c = [0; M^-1], C = I_{2g}.
ContinuousModel swing_to_continuous(const SwingParams& params);

/// Zero-order hold: exponential of [[A_c, B_c], [0, 0]] * h.
DiscretePair discretize_zoh(const Matrix& Ac, const Matrix& Bc, double h);

/// Full pipeline: continuous swing model, ZOH at params.dt, labelled channels.
LtiSystem swing_system(const SwingParams& params);

/**
 * Seeded swing parameters for g generators: inertia uniform in [2, 6],
 * damping uniform in [0.5, 1.5], a ring of lines plus g/2 random chords
 * with susceptances uniform in [0.5, 1.5].
 */
SwingParams random_swing_params(Index generators, std::uint64_t seed, double dt = 0.2);

/**
 * Seeded random system: A has i.i.d. standard normal entries rescaled to the
 * given spectral radius, B and C are i.i.d. standard normal.
 */
LtiSystem random_system(Index n, Index m, Index p, std::uint64_t seed, double spectral_radius = 0.9);

}  // namespace gramsched

#endif  // GRAMSCHED_SYSTEM_MODEL_HPP
