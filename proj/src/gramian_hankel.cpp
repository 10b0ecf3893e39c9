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
#include "gramsched/gramian_hankel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gramsched {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> eigen_sym(const Matrix& S, const char* what) {
    if (S.rows() != S.cols()) throw InvalidArgument(std::string(what) + ": matrix must be square");
    if (!S.allFinite()) throw InvalidArgument(std::string(what) + ": matrix has non-finite entries");
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(S));
    if (es.info() != Eigen::Success) throw NumericalBreakdown(std::string(what) + ": eigensolver failed");
    return es;
}

void check_budget(Index rows, Index cols, std::size_t budget, const char* what) {
    const double entries = static_cast<double>(rows) * static_cast<double>(cols);
    if (entries > static_cast<double>(budget)) {
        std::ostringstream os;
        os << what << " would need " << rows << "x" << cols << " entries, above the budget of " << budget;
        throw BudgetExceeded(os.str());
    }
}

void check_horizon(int t, int minimum, const char* what) {
    if (t < minimum) {
        std::ostringstream os;
        os << what << ": horizon t = " << t << " must be at least " << minimum;
        throw InvalidArgument(os.str());
    }
}

}  // namespace

Matrix symmetrize(const Matrix& S) {
    if (S.rows() != S.cols()) throw InvalidArgument("symmetrize: matrix must be square");
    return 0.5 * (S + S.transpose());
}

Matrix sym_sqrt(const Matrix& S) {
    const auto es = eigen_sym(S, "sym_sqrt");
    const Vector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return symmetrize(es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose());
}

Matrix sym_inv_sqrt(const Matrix& S, double min_ratio) {
    const auto es = eigen_sym(S, "sym_inv_sqrt");
    const Vector& lambda = es.eigenvalues();
    const double lmax = lambda.maxCoeff();
    const double lmin = lambda.minCoeff();
    if (!(lmax > 0.0) || lmin / lmax < min_ratio) {
        std::ostringstream os;
        os << "near-singular Gramian (loss of minimality): lambda_min / lambda_max = "
           << (lmax > 0.0 ? lmin / lmax : 0.0) << " is below " << min_ratio;
        throw NearSingularError(os.str());
    }
    const Vector inv_root = lambda.cwiseSqrt().cwiseInverse();
    return symmetrize(es.eigenvectors() * inv_root.asDiagonal() * es.eigenvectors().transpose());
}

Matrix whiten_columns(const Matrix& M, double min_ratio) {
    if (M.rows() == 0 || M.cols() < M.rows()) {
        throw InvalidArgument("whiten_columns: need at least as many columns as rows");
    }
    if (!M.allFinite()) throw InvalidArgument("whiten_columns: non-finite entries");
    Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sigma = svd.singularValues();
    const double smax = sigma(0);
    const double smin = sigma(sigma.size() - 1);
    const double ratio = smax > 0.0 ? (smin / smax) * (smin / smax) : 0.0;
    if (!(smax > 0.0) || ratio < min_ratio) {
        std::ostringstream os;
        os << "near-singular Gramian (loss of minimality): lambda_min / lambda_max = " << ratio << " is below "
           << min_ratio;
        throw NearSingularError(os.str());
    }
    return svd.matrixU() * svd.matrixV().transpose();
}

double loewner_sandwich_epsilon(const Matrix& X_ref, const Matrix& X_s, double min_ratio) {
    if (X_ref.rows() != X_s.rows() || X_ref.cols() != X_s.cols()) {
        throw InvalidArgument("loewner_sandwich_epsilon: dimension mismatch");
    }
    const Matrix W_half = sym_inv_sqrt(X_ref, min_ratio);
    const auto es = eigen_sym(W_half * X_s * W_half, "loewner_sandwich_epsilon");
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    if (!(lmin > 0.0)) return std::numeric_limits<double>::infinity();
    return std::max({std::log(lmax), -std::log(lmin), 0.0});
}

Matrix reachability_matrix(const LtiSystem& sys, int t, std::size_t entry_budget) {
    check_horizon(t, 1, "reachability_matrix");
    const Index n = sys.n();
    const Index m = sys.m();
    check_budget(n, m * t, entry_budget, "reachability_matrix");
    Matrix R(n, m * t);
    R.leftCols(m) = sys.B();
    for (int i = 1; i < t; ++i) {
        R.middleCols(i * m, m).noalias() = sys.A() * R.middleCols((i - 1) * m, m);
    }
    return R;
}

Matrix observability_columns(const LtiSystem& sys, int t, std::size_t entry_budget) {
    check_horizon(t, 1, "observability_matrix");
    const Index n = sys.n();
    const Index p = sys.p();
    check_budget(n, p * t, entry_budget, "observability_matrix");
    // Materialized transposes keep this path bit-identical to
    // reachability_matrix of the dual system.
    const Matrix At = sys.A().transpose();
    Matrix OT(n, p * t);
    OT.leftCols(p) = sys.C().transpose();
    for (int i = 1; i < t; ++i) {
        OT.middleCols(i * p, p).noalias() = At * OT.middleCols((i - 1) * p, p);
    }
    return OT;
}

Matrix observability_matrix(const LtiSystem& sys, int t, std::size_t entry_budget) {
    return observability_columns(sys, t, entry_budget).transpose();
}

void GramianSet::validate() const {
    auto check = [](const Matrix& G, const char* name) {
        if (G.rows() != G.cols() || G.rows() == 0) throw InvalidArgument(std::string(name) + " must be square");
        const double norm = G.norm();
        if ((G - G.transpose()).norm() > 1e-12 * norm) {
            throw InvalidArgument(std::string(name) + " is not symmetric");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(G), Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10 * std::max(es.eigenvalues().maxCoeff(), 0.0)) {
            throw InvalidArgument(std::string(name) + " is not positive semidefinite");
        }
    };
    check(P, "P");
    check(Q, "Q");
    if (P.rows() != Q.rows()) throw InvalidArgument("P and Q dimensions differ");
}

GramianSet gramians(const LtiSystem& sys, int t) {
    if (t < sys.n()) {
        std::ostringstream os;
        os << "gramians: horizon t = " << t << " is shorter than n = " << sys.n()
           << " (the horizon must satisfy t >= n)";
        throw InvalidArgument(os.str());
    }
    const Matrix R = reachability_matrix(sys, t);
    const Matrix OT = observability_columns(sys, t);
    GramianSet g;
    g.P = symmetrize(R * R.transpose());
    g.Q = symmetrize(OT * OT.transpose());
    g.t = t;
    return g;
}

Matrix hankel_matrix(const LtiSystem& sys, int t, std::size_t entry_budget) {
    check_horizon(t, 1, "hankel_matrix");
    const Index m = sys.m();
    const Index p = sys.p();
    check_budget(p * t, m * t, entry_budget, "hankel_matrix");

    // Markov parameters C A^k B for k = 0 .. 2t-2, each computed once, so
    // blocks on the same anti-diagonal are copies of one another.
    std::vector<Matrix> markov;
    markov.reserve(static_cast<std::size_t>(2 * t - 1));
    Matrix AkB = sys.B();
    for (int k = 0; k < 2 * t - 1; ++k) {
        markov.push_back(sys.C() * AkB);
        if (k + 1 < 2 * t - 1) AkB = sys.A() * AkB;
    }
    Matrix H(p * t, m * t);
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < t; ++j) {
            H.block(i * p, j * m, p, m) = markov[static_cast<std::size_t>(i + j)];
        }
    }
    return H;
}

Matrix gramian_sandwich(const Matrix& P, const Matrix& Q) {
    if (P.rows() != Q.rows() || P.cols() != Q.cols()) throw InvalidArgument("gramian_sandwich: dimension mismatch");
    const Matrix Qh = sym_sqrt(Q);
    return symmetrize(Qh * P * Qh);
}

HankelSpectrum hankel_spectrum(const GramianSet& g) {
    g.validate();
    const auto es = eigen_sym(gramian_sandwich(g.P, g.Q), "hankel_spectrum");
    const Vector& lambda = es.eigenvalues();
    const double lmax = lambda.maxCoeff();
    HankelSpectrum spec;
    spec.t = g.t;
    spec.values.reserve(static_cast<std::size_t>(lambda.size()));
    for (Index i = lambda.size() - 1; i >= 0; --i) {
        double l = lambda(i);
        if (l < 0.0) {
            if (l < -1e-10 * std::max(lmax, 0.0)) {
                throw InvalidArgument("hankel_spectrum: Gramian product has a negative eigenvalue");
            }
            l = 0.0;
        }
        spec.values.push_back(std::sqrt(l));
    }
    return spec;
}

double hankel_norm(const HankelSpectrum& spectrum) {
    if (spectrum.values.empty()) throw InvalidArgument("hankel_norm: empty spectrum");
    return spectrum.values.front();
}

}  // namespace gramsched
