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
#ifndef GRAMSCHED_GRAMIAN_HANKEL_HPP
#define GRAMSCHED_GRAMIAN_HANKEL_HPP

#include "gramsched/common.hpp"
#include "gramsched/system_model.hpp"

#include <vector>

namespace gramsched {

// ---------------------------------------------------------------------------
// Symmetric matrix utilities
// ---------------------------------------------------------------------------

/// (S + S^T) / 2
Matrix symmetrize(const Matrix& S);

/// Principal square root V diag(sqrt(lambda)) V^T. Negative rounding noise in
/// the spectrum is clamped to zero.
Matrix sym_sqrt(const Matrix& S);

/// S^{-1/2}. Throws NearSingularError when lambda_min / lambda_max falls below
/// `min_ratio`.
Matrix sym_inv_sqrt(const Matrix& S, double min_ratio = 1e-12);

/**
 * (M M^T)^{-1/2} M for a wide matrix M of full row rank, computed as U V^T
 * from the thin SVD M = U S V^T. The columns of the result sum (as rank-one
 * terms) to the identity to working precision, independent of the
 * conditioning of M M^T. Throws NearSingularError when
 * sigma_min^2 / sigma_max^2 < `min_ratio`.
 */
Matrix whiten_columns(const Matrix& M, double min_ratio = 1e-12);

/**
 * Smallest eps with exp(-eps) X_ref <= X_s <= exp(eps) X_ref in the Loewner
 * order, i.e. max(ln lambda_max(W), -ln lambda_min(W)) for
 * W = X_ref^{-1/2} X_s X_ref^{-1/2}.
 *
 * Returns +infinity when X_s is singular along a direction where X_ref is not.
 */
double loewner_sandwich_epsilon(const Matrix& X_ref, const Matrix& X_s, double min_ratio = 1e-12);

// ---------------------------------------------------------------------------
// Block matrices and Gramians
// ---------------------------------------------------------------------------

/// [B, AB, ..., A^{t-1}B], n x (m t).
Matrix reachability_matrix(const LtiSystem& sys, int t, std::size_t entry_budget = kDefaultEntryBudget);

/// [C; CA; ...; CA^{t-1}], (p t) x n.
Matrix observability_matrix(const LtiSystem& sys, int t, std::size_t entry_budget = kDefaultEntryBudget);

/// O(t)^T as columns (A^i)^T c_j^T, column index i * p + j. n x (p t).
Matrix observability_columns(const LtiSystem& sys, int t, std::size_t entry_budget = kDefaultEntryBudget);

struct GramianSet {
    Matrix P;  ///< controllability Gramian R R^T
    Matrix Q;  ///< observability Gramian O^T O
    int t = 0;

    /// Checks symmetry (1e-12 relative) and PSD (1e-10 relative); throws
    /// InvalidArgument on failure.
    void validate() const;
};

/// P = R(t) R(t)^T and Q = O(t)^T O(t). Requires t >= n.
GramianSet gramians(const LtiSystem& sys, int t);

/// Block (i, j) = C A^{i+j} B. (p t) x (m t).
Matrix hankel_matrix(const LtiSystem& sys, int t, std::size_t entry_budget = kDefaultEntryBudget);

struct HankelSpectrum {
    std::vector<double> values;  ///< descending, nonnegative
    int t = 0;
};

/// Q^{1/2} P Q^{1/2}, the symmetric Gramian product.
Matrix gramian_sandwich(const Matrix& P, const Matrix& Q);

/// sigma_i = sqrt(lambda_i(Q^{1/2} P Q^{1/2})), sorted descending.
HankelSpectrum hankel_spectrum(const GramianSet& g);

/// sigma_max. Throws on an empty spectrum.
double hankel_norm(const HankelSpectrum& spectrum);

}  // namespace gramsched

#endif  // GRAMSCHED_GRAMIAN_HANKEL_HPP
