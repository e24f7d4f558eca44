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


// Shared quadrature oracles built directly on the joint eigenvalue density.

#pragma once

#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bureshall/ensemble.hpp"

namespace oracle {

using bureshall::EnsembleParams;

inline double jpd2(const EnsembleParams& p, double x, double y) {
    const std::array<double, 2> v{x, y};
    return bureshall::normalization_C(p) * std::exp(bureshall::log_jpd_unnormalized(p, v));
}

inline double jpd3(const EnsembleParams& p, double x, double y, double z) {
    const std::array<double, 3> v{x, y, z};
    return bureshall::normalization_C(p) * std::exp(bureshall::log_jpd_unnormalized(p, v));
}

/// ∫₀^∞ f over [0, c] ∪ [c, c + 60], splitting at the kink c; e^{-60} is below double resolution.
template <class F>
double half_line(F f, double c) {
    boost::math::quadrature::tanh_sinh<double> ts;
    double a = 0.0;
    if (c > 0) a = ts.integrate(f, 0.0, c, 1e-12);
    return a + ts.integrate(f, c, c + 60.0, 1e-12);
}

/// R₁(λ) for n = 2: 2 ∫ P(λ, y) dy.
inline double level_density_n2(const EnsembleParams& p, double lambda) {
    return 2.0 * half_line([&](double y) { return jpd2(p, lambda, y); }, lambda);
}

/// R₁(λ) for n = 3: 3 ∫∫ P(λ, y, z) dy dz.
inline double level_density_n3(const EnsembleParams& p, double lambda) {
    auto inner = [&](double y) { return half_line([&](double z) { return jpd3(p, lambda, y, z); }, lambda); };
    return 3.0 * half_line(inner, lambda);
}

/// Fixed-trace R₁(μ) for n = 2 from λ = tμ, t = λ₁ + λ₂: 2 ∫ t P(tμ, t(1-μ)) dt.
/// 1-μ is passed separately so points next to μ = 1 keep full accuracy.
inline double fixed_density_n2(const EnsembleParams& p, double mu, double one_minus_mu) {
    boost::math::quadrature::exp_sinh<double> es;
    auto f = [&](double t) { return t * jpd2(p, t * mu, t * one_minus_mu); };
    return 2.0 * es.integrate(f, 1e-12);
}

inline double fixed_density_n2(const EnsembleParams& p, double mu) { return fixed_density_n2(p, mu, 1.0 - mu); }

}  // namespace oracle
