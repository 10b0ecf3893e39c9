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
#include "gramsched/bss_sparsifier.hpp"

#include "gramsched/gramian_hankel.hpp"

#include <cmath>
#include <sstream>

namespace gramsched {

namespace {

struct Spectrum {
    Vector lambda;
    Matrix vectors;
};

Spectrum spectrum_of(const Matrix& A) {
    if (A.rows() != A.cols()) throw InvalidArgument("barrier matrix must be square");
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(A));
    if (es.info() != Eigen::Success) throw NumericalBreakdown("eigensolver failed on barrier matrix");
    return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

Vector eigenvalues_of(const Matrix& A) {
    if (A.rows() != A.cols()) throw InvalidArgument("barrier matrix must be square");
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(A), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

// Coefficients of one barrier's gain as a quadratic form in the eigenbasis:
//   gain(y) = sign_lin * <y^2, inv> + <y^2, inv_sq> / potential_drop
// where y are the eigen-coordinates of the candidate vector.
struct GainCoefficients {
    Vector inv;
    Vector inv_sq;
    double potential_drop = 0.0;
    double sign_lin = 1.0;

    double operator()(const Vector& y2) const {
        return y2.dot(inv_sq) / potential_drop + sign_lin * y2.dot(inv);
    }
};

GainCoefficients lower_coefficients(const Vector& lambda, double delta, double mu) {
    const double shifted = mu + delta;
    GainCoefficients c;
    c.inv.resize(lambda.size());
    double phi_shifted = 0.0;
    double phi_here = 0.0;
    for (Index i = 0; i < lambda.size(); ++i) {
        const double d = lambda(i) - shifted;
        const double d0 = lambda(i) - mu;
        if (d == 0.0 || d0 == 0.0) throw InvalidArgument("gain_lower: singular resolvent");
        c.inv(i) = 1.0 / d;
        phi_shifted += 1.0 / d;
        phi_here += 1.0 / d0;
    }
    c.inv_sq = c.inv.cwiseProduct(c.inv);
    c.potential_drop = phi_shifted - phi_here;
    c.sign_lin = -1.0;
    if (c.potential_drop == 0.0 || !std::isfinite(c.potential_drop)) {
        throw InvalidArgument("gain_lower: zero potential difference");
    }
    return c;
}

GainCoefficients upper_coefficients(const Vector& lambda, double delta, double mu) {
    const double shifted = mu + delta;
    GainCoefficients c;
    c.inv.resize(lambda.size());
    double phi_shifted = 0.0;
    double phi_here = 0.0;
    for (Index i = 0; i < lambda.size(); ++i) {
        const double e = shifted - lambda(i);
        const double e0 = mu - lambda(i);
        if (e == 0.0 || e0 == 0.0) throw InvalidArgument("gain_upper: singular resolvent");
        c.inv(i) = 1.0 / e;
        phi_shifted += 1.0 / e;
        phi_here += 1.0 / e0;
    }
    c.inv_sq = c.inv.cwiseProduct(c.inv);
    c.potential_drop = phi_here - phi_shifted;
    c.sign_lin = 1.0;
    if (c.potential_drop == 0.0 || !std::isfinite(c.potential_drop)) {
        throw InvalidArgument("gain_upper: zero potential difference");
    }
    return c;
}

std::string dump_state(int tau, double lower, double upper, const Vector& lambda, double best_gap) {
    std::ostringstream os;
    os.precision(17);
    os << "tau=" << tau << " lower=" << lower << " upper=" << upper << " best_gap=" << best_gap
       << " eigenvalues=[";
    for (Index i = 0; i < lambda.size(); ++i) os << (i ? ", " : "") << lambda(i);
    os << "]";
    return os.str();
}

void check_isotropic(const Matrix& U, double tol) {
    const Index n = U.rows();
    const Matrix S = U * U.transpose();
    const double dev = (S - Matrix::Identity(n, n)).norm() / std::sqrt(static_cast<double>(n));
    if (!(dev <= tol)) {
        std::ostringstream os;
        os << "bss_pass: candidates are not isotropic (||sum u u^T - I||_F / sqrt(n) = " << dev << ")";
        throw InvalidArgument(os.str());
    }
}

}  // namespace

double phi_lower(double mu, const Matrix& A) {
    const Vector lambda = eigenvalues_of(A);
    if (!(mu < lambda.minCoeff())) throw InvalidArgument("phi_lower: barrier violation (mu >= lambda_min)");
    return (lambda.array() - mu).inverse().sum();
}

double phi_upper(double mu, const Matrix& A) {
    const Vector lambda = eigenvalues_of(A);
    if (!(mu > lambda.maxCoeff())) throw InvalidArgument("phi_upper: barrier violation (mu <= lambda_max)");
    return (mu - lambda.array()).inverse().sum();
}

double gain_lower(const Vector& v, double delta, const Matrix& A, double mu) {
    if (v.size() != A.rows()) throw InvalidArgument("gain_lower: dimension mismatch");
    const Spectrum sp = spectrum_of(A);
    const Vector y = sp.vectors.transpose() * v;
    return lower_coefficients(sp.lambda, delta, mu)(y.cwiseProduct(y));
}

double gain_upper(const Vector& u, double delta, const Matrix& A, double mu) {
    if (u.size() != A.rows()) throw InvalidArgument("gain_upper: dimension mismatch");
    const Spectrum sp = spectrum_of(A);
    const Vector y = sp.vectors.transpose() * u;
    return upper_coefficients(sp.lambda, delta, mu)(y.cwiseProduct(y));
}

double sparsifier_epsilon(Index n, Index kappa) {
    if (kappa <= n || n <= 0) throw InvalidArgument("sparsifier budget must exceed the dimension");
    return 2.0 * std::atanh(std::sqrt(static_cast<double>(n) / static_cast<double>(kappa)));
}

SparsifyResult bss_pass(const Matrix& candidates, Index budget, const SparsifyOptions& opts) {
    const Index n = candidates.rows();
    const Index count = candidates.cols();
    if (n == 0) throw InvalidArgument("bss_pass: empty candidate vectors");
    if (budget <= n) {
        std::ostringstream os;
        os << "bss_pass: budget " << budget << " must exceed the dimension " << n;
        throw InvalidArgument(os.str());
    }
    if (budget > count) {
        std::ostringstream os;
        os << "bss_pass: budget " << budget << " exceeds the candidate count " << count;
        throw InvalidArgument(os.str());
    }
    if (!candidates.allFinite()) throw InvalidArgument("bss_pass: non-finite candidate entries");
    check_isotropic(candidates, opts.isotropy_tol);

    const double x = std::sqrt(static_cast<double>(n) / static_cast<double>(budget));
    const double root = std::sqrt(static_cast<double>(budget) * static_cast<double>(n));
    const double lower_shift = 1.0;
    const double upper_shift = (1.0 + x) / (1.0 - x);

    Matrix accumulated = Matrix::Zero(n, n);
    Vector weights = Vector::Zero(count);

    for (int tau = 0; tau <= budget; ++tau) {
        const double lower = tau - root;
        const double upper = upper_shift * (tau + root);
        const Spectrum sp = spectrum_of(accumulated);
        const double lmin = sp.lambda.minCoeff();
        const double lmax = sp.lambda.maxCoeff();

        BarrierTrace rec;
        rec.tau = tau;
        rec.lower = lower;
        rec.upper = upper;
        rec.lambda_min = lmin;
        rec.lambda_max = lmax;

        if (!(lower < lmin && lmax < upper)) {
            throw NumericalBreakdown("bss_pass: eigenvalues left the barrier interval: " +
                                     dump_state(tau, lower, upper, sp.lambda, 0.0));
        }
        if (tau == budget) {
            if (opts.trace) opts.trace(rec);
            break;
        }

        const GainCoefficients lo = lower_coefficients(sp.lambda, lower_shift, lower);
        const GainCoefficients up = upper_coefficients(sp.lambda, upper_shift, upper);
        const Matrix y2 = (sp.vectors.transpose() * candidates).array().square().matrix();

        Index best = -1;
        double best_gap = -std::numeric_limits<double>::infinity();
        double best_lo = 0.0;
        double best_up = 0.0;
        for (Index j = 0; j < count; ++j) {
            const Vector col = y2.col(j);
            const double l = lo(col);
            const double u = up(col);
            if (!(l + u > 0.0)) continue;  // zero vector
            const double gap = l - u;
            if (gap > best_gap) {
                best_gap = gap;
                best = j;
                best_lo = l;
                best_up = u;
            }
        }
        if (best < 0 || best_gap < -1e-12 * (std::abs(best_lo) + std::abs(best_up))) {
            throw NumericalBreakdown("bss_pass: no admissible index: " +
                                     dump_state(tau, lower, upper, sp.lambda, best_gap));
        }

        const double step = 2.0 / (best_up + best_lo);
        weights(best) += step;
        const Vector u = candidates.col(best);
        accumulated.noalias() += step * (u * u.transpose());

        rec.chosen = best;
        rec.step = step;
        if (opts.trace) opts.trace(rec);
    }

    SparsifyResult res;
    res.budget = budget;
    switch (opts.scaling) {
        case WeightScaling::Symmetric:
            res.weights = weights / (static_cast<double>(budget) * (1.0 + x));
            res.epsilon_theory = 2.0 * std::atanh(x);
            break;
        case WeightScaling::Listing:
            res.weights = weights * ((1.0 - x) / static_cast<double>(budget));
            res.epsilon_theory = -2.0 * std::log1p(-x);
            break;
    }
    res.selected = (res.weights.array() > 0.0).count();
    return res;
}

DualSetResult gen_dual_set(const Matrix& V, const Matrix& U, Index kappa1, Index kappa2,
                           const SparsifyOptions& opts) {
    return gen_dual_set(V, U, kappa1, kappa2, opts, opts);
}

DualSetResult gen_dual_set(const Matrix& V, const Matrix& U, Index kappa1, Index kappa2,
                           const SparsifyOptions& v_opts, const SparsifyOptions& u_opts) {
    if (V.rows() != U.rows()) throw InvalidArgument("gen_dual_set: V and U must have the same row count");
    // X^{-1/2} V with X = V V^T, via the SVD of V.
    const Matrix whitened = whiten_columns(V);
    DualSetResult out;
    out.s = bss_pass(whitened, kappa1, v_opts);
    out.r = bss_pass(U, kappa2, u_opts);
    return out;
}

}  // namespace gramsched
