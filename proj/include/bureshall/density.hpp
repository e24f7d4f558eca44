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
 * @brief Level densities of the unrestricted and fixed-trace ensembles, the
 *        r-point correlation of the unrestricted ensemble, tabulation and
 *        quadrature over the densities.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bureshall/ensemble.hpp"

namespace bureshall::density {

/// Diagnostics of one pointwise evaluation.
struct EvalInfo {
    double value = 0.0;
    /// Σ|terms| / |Σ terms| of the double-precision pass.
    double cancellation = 1.0;
    /// True when the value came from an extended-precision pass.
    bool extended = false;
};

/// Relative cancellation beyond which a point is re-evaluated in quad precision.
inline constexpr double kCancellationLimit = 1e6;

/// R₁(λ) of the unrestricted ensemble. Construction precomputes all
/// λ-independent factors; evaluation is const and thread-safe.
class UnrestrictedDensity {
public:
    explicit UnrestrictedDensity(const EnsembleParams& p);
    ~UnrestrictedDensity();
    UnrestrictedDensity(UnrestrictedDensity&&) noexcept;
    UnrestrictedDensity& operator=(UnrestrictedDensity&&) noexcept;

    const EnsembleParams& params() const;
    double operator()(double lambda) const;
    EvalInfo evaluate_info(double lambda) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// R₁^(F)(μ) of the fixed-trace ensemble for n >= 2.
class FixedTraceDensity {
public:
    /// Throws UnsupportedError for n = 1 (the eigenvalue is deterministically 1)
    /// and for integer α, where 1-k-α hits a pole of the continuation.
    explicit FixedTraceDensity(const EnsembleParams& p);
    ~FixedTraceDensity();
    FixedTraceDensity(FixedTraceDensity&&) noexcept;
    FixedTraceDensity& operator=(FixedTraceDensity&&) noexcept;

    const EnsembleParams& params() const;
    double operator()(double mu) const;
    /// Same as operator() but with 1-μ supplied separately, for accuracy near μ = 1.
    double evaluate(double mu, double one_minus_mu) const;
    EvalInfo evaluate_info(double mu, double one_minus_mu) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// R₁(λ); DomainError for λ <= 0.
double level_density_unrestricted(const EnsembleParams& p, double lambda);

/// R₁^(F)(μ); DomainError outside (0,1), UnsupportedError for n = 1.
double level_density_fixed(const EnsembleParams& p, double mu);

/// R_r(λ₁..λ_r) of the unrestricted ensemble via the (N+2r)-dimensional block
/// Pfaffian. Points must be positive and pairwise distinct.
double correlation_unrestricted(const EnsembleParams& p, std::span<const double> points);

// Quadrature -----------------------------------------------------------------

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

/// ∫₀^∞ w(λ) R₁(λ) dλ (tanh-sinh on [0, L], exp-sinh on [L, ∞)).
/// Throws QuadratureError when the error estimate exceeds max_rel_error·|value|.
QuadratureResult integrate_unrestricted(const UnrestrictedDensity& r, const std::function<double(double)>& weight,
                                        double max_rel_error = 1e-9);

/// ∫_a^b w(λ) R₁(λ) dλ over a finite range 0 <= a < b (tanh-sinh).
QuadratureResult integrate_unrestricted(const UnrestrictedDensity& r, const std::function<double(double)>& weight,
                                        double a, double b, double max_rel_error = 1e-9);

/// ∫_a^b w(μ) R₁^(F)(μ) dμ with 0 <= a < b <= 1; endpoint distances are passed
/// to the density exactly so singular endpoints are integrated accurately.
QuadratureResult integrate_fixed(const FixedTraceDensity& r, const std::function<double(double)>& weight,
                                 double a = 0.0, double b = 1.0, double max_rel_error = 1e-9);

/// ∫₀^∞ λ^ω R₁ dλ.
QuadratureResult unrestricted_moment(const EnsembleParams& p, double omega);

/// ∫₀¹ μ^ω R₁^(F) dμ. For n = 1 the Dirac mass at μ = 1 gives exactly 1.
QuadratureResult fixed_trace_moment(const EnsembleParams& p, double omega);

// Tabulation -----------------------------------------------------------------

enum class Ensemble { unrestricted, fixed_trace };

std::string ensemble_name(Ensemble e);
Ensemble parse_ensemble(const std::string& s);

enum class Spacing { chebyshev, uniform };

std::string spacing_name(Spacing s);
Spacing parse_spacing(const std::string& s);

struct GridSpec {
    std::size_t points = 512;
    /// Defaults: Chebyshev for the fixed-trace ensemble, uniform otherwise.
    std::optional<Spacing> spacing;
    /// Unrestricted upper end; default n + 2α + 10√n.
    std::optional<double> lambda_max;
};

/// Default unrestricted cutoff n + 2α + 10√n, shared with the log-gas sampler.
double default_lambda_max(const EnsembleParams& p);

struct DensityCurve {
    DensityCurve(Ensemble e, const EnsembleParams& p) : ensemble(e), params(p) {}

    Ensemble ensemble;
    EnsembleParams params;
    std::vector<double> x;
    /// Raw values; tiny negative values from cancellation are kept.
    std::vector<double> density;
    /// Quadrature weights of the grid; Σ weight·density is the mass.
    std::vector<double> weight;
    double normalization = 0.0;
    /// n = 1 fixed trace: a point mass at μ = 1, no grid.
    bool dirac = false;

    /// density / n.
    std::vector<double> marginal() const;
};

struct Grid {
    std::vector<double> x;
    /// upper - x, computed without cancellation near the upper end.
    std::vector<double> complement;
    std::vector<double> weight;
};

/// Nodes and quadrature weights on [0, b]. Chebyshev nodes
/// x_i = b(1 - cos θ_i)/2, θ_i = π(i+½)/N, carry the Gauss-Chebyshev weights
/// (π/N)·√(x(b-x)), which integrate x^{-1/2}-type endpoint behaviour accurately;
/// uniform nodes x_i = b(i+½)/N carry midpoint weights b/N.
Grid make_grid(Spacing spacing, std::size_t points, double upper);

DensityCurve tabulate_density(const EnsembleParams& p, Ensemble ensemble, const GridSpec& grid = {});

}  // namespace bureshall::density
