/*
 * Copyright 2026 The bureshall Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


/**
 * @brief Average entropies of the fixed-trace ensemble: Havrda-Charvát-Tsallis
 *        S_ω, von Neumann S₁, linear entropy and purity, with the
 *        Hilbert-Schmidt formulas and the conjectured closed forms for comparison.
 *
 * Values carry a float and, where every Γ/ψ argument stays on the half-integer
 * lattice, an exact track. The float value is then converted from the exact one.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bureshall/density.hpp"
#include "bureshall/ensemble.hpp"
#include "bureshall/exact.hpp"

namespace bureshall::entropy {

struct Value {
    double value = 0.0;
    std::optional<exact::ExactScalar> exact;

    static Value from_exact(const exact::ExactScalar& e);
};

/// ⟨S_ω⟩ for ω > 0, ω ≠ 1. Exact track for integer ω and half-integer α.
Value avg_hct(const EnsembleParams& p, double omega);

/// ⟨S₁⟩. Verifies the ω = 1 normalization of the η sum first (SelfCheckError).
Value avg_von_neumann(const EnsembleParams& p);

/// ⟨S₂⟩ = 1 - ⟨S_P⟩.
Value avg_linear(const EnsembleParams& p);
Value avg_purity(const EnsembleParams& p);

/// Hilbert-Schmidt ensemble: ψ(mn+1) - ψ(m+1) - (n-1)/(2m) and (m+n)/(mn+1).
Value hs_von_neumann(int n, int m);
Value hs_purity(int n, int m);

/// ψ(mn - n²/2 + 1) - ψ(m + 1/2) and [2m(2m+n) - (n²-1)] / [2m(2mn - n² + 2)].
Value conjecture_von_neumann(int n, int m);
Value conjecture_purity(int n, int m);

/// (mn-1)(n²-1) / [2m(mn+1)(2mn-n²+2)], the closed form of ⟨S_P⟩_BH - ⟨S_P⟩_HS.
exact::Rational purity_difference(int n, int m);

/// Kernel used for the ξ sum in verify_conjecture_identities. sign_flipped
/// negates every ξ entry, border included, and exists only as a negative control.
enum class XiKernel { standard, sign_flipped };

struct IdentityReport {
    int n = 0;
    int m = 0;
    exact::ExactScalar xi_sum;
    exact::ExactScalar xi_expected;  // (mn - n²/2) ψ(m+1/2) / (n! C)
    exact::ExactScalar eta_sum;      // at ω = 2
    exact::ExactScalar eta_expected;  // n(2m-n)[2m(2m+n) - (n²-1)] / (8m n! C)

    exact::ExactScalar xi_residual() const { return xi_sum - xi_expected; }
    exact::ExactScalar eta_residual() const { return eta_sum - eta_expected; }
    bool holds() const { return xi_residual().is_zero() && eta_residual().is_zero(); }
};

/// Both sums Σ_{j<k} (-1)^{j+k} (K_{j,k} - K_{k,j}) Pf[H^(j,k)] in exact
/// arithmetic against the values implied by the conjectured closed forms.
/// Requires integer m (DomainError otherwise).
IdentityReport verify_conjecture_identities(const EnsembleParams& p, XiKernel xi = XiKernel::standard);

/// ⟨S_ω⟩ through ∫λ^ω R₁ dλ of the unrestricted ensemble.
/// QuadratureError carries the achieved estimate when the tolerance is missed.
density::QuadratureResult avg_hct_via_unrestricted(const EnsembleParams& p, double omega);

// Reports --------------------------------------------------------------------

enum class Quantity { hct, von_neumann, linear, purity };

std::string quantity_name(Quantity q);
Quantity parse_quantity(const std::string& s);

struct EntropyReport {
    EntropyReport(const EnsembleParams& p, Quantity q) : params(p), quantity(q) {}

    EnsembleParams params;
    Quantity quantity;
    /// Only meaningful for Quantity::hct.
    double omega = 2.0;
    Value bures_hall;
    /// Available for von Neumann, linear, purity and hct at ω = 2.
    std::optional<Value> hilbert_schmidt;
    std::optional<Value> conjecture;
    /// bures_hall - hilbert_schmidt.
    std::optional<Value> difference;
};

/// HS and conjecture fields are filled when integer dimensions are known.
EntropyReport make_report(const EnsembleParams& p, Quantity q, double omega = 2.0);

struct TableRow {
    int n;
    int m;
    EntropyReport von_neumann;
    EntropyReport purity;
};

/// Rows for 1 <= n <= n_max, n <= m <= m_max in (n, m) order; cells are
/// computed in parallel.
std::vector<TableRow> entropy_table(int n_max, int m_max);

}  // namespace bureshall::entropy
