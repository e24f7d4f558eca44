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
 * @brief Ensemble parameters, normalization constants and the scalar kernels
 *        f, g, G shared by the density and entropy formulas.
 *
 * The unrestricted ensemble has eigenvalue density
 *   P(λ) = C Δ²(λ)/Δ₊(λ) Π λ_i^α e^{-λ_i},   α = m - n - 1/2,
 * and the fixed-trace ensemble replaces e^{-λ} by δ(Σμ - 1) with constant C^(F).
 */

#pragma once

#include <optional>
#include <span>
#include <string>

#include "bureshall/exact.hpp"

namespace bureshall {

class EnsembleParams {
public:
    /// Density-matrix dimension n and environment dimension m >= n.
    static EnsembleParams from_dims(int n, int m);

    /// Generalized ensemble with real α > -1. Only the float track is available
    /// unless 2α happens to be an odd integer.
    static EnsembleParams from_alpha(int n, double alpha);

    int n() const { return n_; }
    std::optional<int> m() const { return m_; }
    double alpha() const { return alpha_; }
    /// (n-1)(n+2α+2)/2
    double gamma_param() const { return 0.5 * (n_ - 1) * (n_ + 2.0 * alpha_ + 2.0); }
    /// n for even n, n+1 for odd n.
    int N() const { return n_ % 2 == 0 ? n_ : n_ + 1; }
    bool odd() const { return n_ % 2 != 0; }

    /// Exact arithmetic is available when α is a half-integer (integer m).
    bool has_exact_track() const { return twice_alpha_.has_value(); }
    /// 2α; only meaningful with the exact track.
    long twice_alpha() const;
    /// 2γ; only meaningful with the exact track.
    long twice_gamma() const;
    /// α + γ + 1 = n(n+2α+1)/2, doubled.
    long twice_alpha_gamma_1() const;

    std::string describe() const;

private:
    EnsembleParams(int n, std::optional<int> m, double alpha, std::optional<long> twice_alpha)
        : n_(n), m_(m), alpha_(alpha), twice_alpha_(twice_alpha) {}

    int n_;
    std::optional<int> m_;
    double alpha_;
    std::optional<long> twice_alpha_;
};

/// A signed number carried as sign·exp(log_abs) to survive extreme magnitudes.
struct LogValue {
    double log_abs = 0.0;
    int sign = 1;

    double value() const;
    friend LogValue operator*(LogValue x, LogValue y) { return {x.log_abs + y.log_abs, x.sign * y.sign}; }
    friend LogValue operator/(LogValue x, LogValue y) { return {x.log_abs - y.log_abs, x.sign * y.sign}; }
};

LogValue log_gamma_value(double x);

// Normalization constants --------------------------------------------------

/// C of the unrestricted ensemble, in log form.
LogValue log_normalization_C(const EnsembleParams& p);
double normalization_C(const EnsembleParams& p);
exact::ExactScalar normalization_C_exact(const EnsembleParams& p);

/// C^(F) = Γ(n(n+2α+1)/2)·C of the fixed-trace ensemble.
LogValue log_normalization_CF(const EnsembleParams& p);
double normalization_CF(const EnsembleParams& p);
exact::ExactScalar normalization_CF_exact(const EnsembleParams& p);

// Kernels -------------------------------------------------------------------

/// f_j(λ) = λ^{j+α-1} e^{-λ}.
double kernel_f(const EnsembleParams& p, int j, double lambda);

/// g(x,y) = (y-x)/(y+x).
double kernel_g(double x, double y);

/// G_j(λ) = Γ(j+α)[2λ e^λ E_{j+α}(λ) - 1]; G_{n+1} = -1 for odd n.
double kernel_G(const EnsembleParams& p, int j, double lambda);

/// ln of the joint density without C: ln[Δ²/Δ₊ Π λ^α e^{-λ}]. -inf off the domain.
double log_jpd_unnormalized(const EnsembleParams& p, std::span<const double> lambda);

}  // namespace bureshall
