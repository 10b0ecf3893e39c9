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
#include "gramsched/system_model.hpp"

#include "gramsched/gramian_hankel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace gramsched {

namespace {

std::string shape(const Matrix& M) {
    std::ostringstream os;
    os << M.rows() << "x" << M.cols();
    return os.str();
}

void require_labels(const std::vector<std::string>& labels, Index expected, const char* what) {
    if (!labels.empty() && static_cast<Index>(labels.size()) != expected) {
        std::ostringstream os;
        os << what << " labels: expected " << expected << ", got " << labels.size();
        throw InvalidArgument(os.str());
    }
}

}  // namespace

LtiSystem::LtiSystem(Matrix A, Matrix B, Matrix C, ChannelLabels labels)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), labels_(std::move(labels)) {
    if (A_.rows() == 0 || A_.rows() != A_.cols()) {
        throw InvalidArgument("A must be square and nonempty, got " + shape(A_));
    }
    if (B_.rows() != A_.rows() || B_.cols() == 0) {
        throw InvalidArgument("B must be n x m with m > 0, got " + shape(B_));
    }
    if (C_.cols() != A_.rows() || C_.rows() == 0) {
        throw InvalidArgument("C must be p x n with p > 0, got " + shape(C_));
    }
    if (!A_.allFinite() || !B_.allFinite() || !C_.allFinite()) {
        throw InvalidArgument("system matrices contain non-finite entries");
    }
    require_labels(labels_.inputs, m(), "input");
    require_labels(labels_.outputs, p(), "output");
}

LtiSystem LtiSystem::dual() const {
    Matrix At = A_.transpose();
    Matrix Bd = C_.transpose();
    Matrix Cd = B_.transpose();
    return LtiSystem(std::move(At), std::move(Bd), std::move(Cd),
                     ChannelLabels{labels_.outputs, labels_.inputs});
}

Index numerical_rank(const Matrix& M, const RankOptions& opts) {
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(M);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double threshold =
        static_cast<double>(std::max(M.rows(), M.cols())) * sv(0) * opts.rel_tol;
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) ++rank;
    }
    return rank;
}

MinimalityReport validate_minimal(const LtiSystem& sys, int horizon, const RankOptions& opts) {
    if (horizon < sys.n()) {
        std::ostringstream os;
        os << "horizon t = " << horizon << " is shorter than the state dimension n = " << sys.n()
           << " (the horizon must satisfy t >= n)";
        throw InvalidArgument(os.str());
    }
    MinimalityReport rep;
    rep.n = sys.n();
    rep.horizon = horizon;
    rep.reachability_rank = numerical_rank(reachability_matrix(sys, horizon), opts);
    rep.observability_rank = numerical_rank(observability_matrix(sys, horizon), opts);
    return rep;
}

void SwingParams::validate() const {
    const Index g = generators();
    if (g == 0) throw InvalidArgument("swing model needs at least one generator");
    if (damping.size() != g) throw InvalidArgument("damping must have one entry per generator");
    if (coupling.rows() != g || coupling.cols() != g) {
        throw InvalidArgument("coupling must be g x g, got " + shape(coupling));
    }
    if (!inertia.allFinite() || !damping.allFinite() || !coupling.allFinite() || !std::isfinite(dt)) {
        throw InvalidArgument("swing parameters contain non-finite values");
    }
    if (!(dt > 0.0)) throw InvalidArgument("sampling interval dt must be positive");
    if ((inertia.array() <= 0.0).any()) throw InvalidArgument("inertia coefficients must be positive");
    if ((damping.array() < 0.0).any()) throw InvalidArgument("damping coefficients must be nonnegative");

    const double scale = coupling.cwiseAbs().maxCoeff();
    const double tol = 1e-12 * scale;
    if ((coupling - coupling.transpose()).cwiseAbs().maxCoeff() > tol) {
        throw InvalidArgument("coupling matrix must be symmetric");
    }
    if (coupling.rowwise().sum().cwiseAbs().maxCoeff() > tol) {
        throw InvalidArgument("coupling matrix rows must sum to zero");
    }
    for (Index i = 0; i < g; ++i) {
        for (Index j = 0; j < g; ++j) {
            if (i != j && coupling(i, j) > tol) {
                throw InvalidArgument("coupling matrix off-diagonal entries must be nonpositive");
            }
        }
    }
}

ContinuousModel swing_to_continuous(const SwingParams& params) {
    params.validate();
    const Index g = params.generators();
    const Vector inv_m = params.inertia.cwiseInverse();

    ContinuousModel model;
    model.A = Matrix::Zero(2 * g, 2 * g);
    model.A.topRightCorner(g, g).setIdentity();
    model.A.bottomLeftCorner(g, g) = -(inv_m.asDiagonal() * params.coupling);
    model.A.bottomRightCorner(g, g) = Vector(-inv_m.cwiseProduct(params.damping)).asDiagonal();
    model.B = Matrix::Zero(2 * g, g);
    model.B.bottomRows(g) = inv_m.asDiagonal();
    model.C = Matrix::Identity(2 * g, 2 * g);
    return model;
}

DiscretePair discretize_zoh(const Matrix& Ac, const Matrix& Bc, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("sampling interval must be positive");
    if (Ac.rows() != Ac.cols() || Bc.rows() != Ac.rows()) {
        throw InvalidArgument("discretize_zoh: A_c must be n x n and B_c n x m");
    }
    const Index n = Ac.rows();
    const Index m = Bc.cols();
    Matrix aug = Matrix::Zero(n + m, n + m);
    aug.topLeftCorner(n, n) = Ac * h;
    aug.topRightCorner(n, m) = Bc * h;
    const Matrix E = aug.exp();
    if (!E.allFinite()) {
        throw std::overflow_error("matrix exponential overflowed; h * ||A_c|| is too large");
    }
    return DiscretePair{E.topLeftCorner(n, n), E.topRightCorner(n, m)};
}

LtiSystem swing_system(const SwingParams& params) {
    const ContinuousModel cont = swing_to_continuous(params);
    DiscretePair d = discretize_zoh(cont.A, cont.B, params.dt);
    const Index g = params.generators();
    ChannelLabels labels;
    for (Index i = 0; i < g; ++i) labels.inputs.push_back("u" + std::to_string(i + 1));
    for (Index i = 0; i < g; ++i) labels.outputs.push_back("theta" + std::to_string(i + 1));
    for (Index i = 0; i < g; ++i) labels.outputs.push_back("w" + std::to_string(i + 1));
    return LtiSystem(std::move(d.A), std::move(d.B), cont.C, std::move(labels));
}

SwingParams random_swing_params(Index generators, std::uint64_t seed, double dt) {
    if (generators <= 0) throw InvalidArgument("generator count must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> inertia(2.0, 6.0);
    std::uniform_real_distribution<double> damping(0.5, 1.5);
    std::uniform_real_distribution<double> line(0.5, 1.5);

    const Index g = generators;
    SwingParams params;
    params.dt = dt;
    params.inertia.resize(g);
    params.damping.resize(g);
    for (Index i = 0; i < g; ++i) params.inertia(i) = inertia(rng);
    for (Index i = 0; i < g; ++i) params.damping(i) = damping(rng);

    Matrix W = Matrix::Zero(g, g);
    auto connect = [&W](Index i, Index j, double w) {
        W(i, j) += w;
        W(j, i) += w;
    };
    if (g > 1) {
        for (Index i = 0; i < g; ++i) {
            const Index j = (i + 1) % g;
            if (j != i && !(g == 2 && i == 1)) connect(i, j, line(rng));
        }
        std::uniform_int_distribution<Index> bus(0, g - 1);
        for (Index c = 0; c < g / 2; ++c) {
            const Index i = bus(rng);
            const Index j = bus(rng);
            const double w = line(rng);
            if (i != j) connect(i, j, w);
        }
    }
    params.coupling = -W;
    params.coupling.diagonal() = W.rowwise().sum();
    return params;
}

LtiSystem random_system(Index n, Index m, Index p, std::uint64_t seed, double spectral_radius) {
    if (n <= 0 || m <= 0 || p <= 0) throw InvalidArgument("random_system: dimensions must be positive");
    if (!(spectral_radius > 0.0)) throw InvalidArgument("random_system: spectral radius must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto draw = [&](Index r, Index c) {
        Matrix M(r, c);
        for (Index i = 0; i < r; ++i)
            for (Index j = 0; j < c; ++j) M(i, j) = normal(rng);
        return M;
    };
    Matrix A = draw(n, n);
    const double rho = Eigen::EigenSolver<Matrix>(A, false).eigenvalues().cwiseAbs().maxCoeff();
    if (rho > 0.0) A *= spectral_radius / rho;
    Matrix B = draw(n, m);
    Matrix C = draw(p, n);
    return LtiSystem(std::move(A), std::move(B), std::move(C));
}

}  // namespace gramsched
