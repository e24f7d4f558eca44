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
 * @brief Real special functions used by the density and entropy formulas.
 *
 * Gamma and digamma are delegated to Boost.Math. The exponential integral
 * E_a(z) and the incomplete beta B_z(a,b) are implemented here because the
 * formulas need them for real (half-integer) orders and, for B_z, for
 * negative first argument where only the analytic continuation exists.
 */

#pragma once

namespace bureshall::specfun {

struct LogGamma {
    double value;  ///< ln|Γ(x)|
    int sign;      ///< sign of Γ(x)
};

/// ln|Γ(x)| with the sign of Γ(x). Throws PoleError at non-positive integers.
LogGamma log_gamma(double x);

/// 1/Γ(x); zero at the poles of Γ.
double rgamma(double x);

/// ψ(x). Throws PoleError at non-positive integers.
double digamma(double x);

/// E_a(z) = ∫_1^∞ e^{-zt} t^{-a} dt for z > 0.
double exp_integral(double a, double z);

/// e^z E_a(z); finite and O(1/z) for large z where the factors over/underflow.
double exp_integral_scaled(double a, double z);

/// Complete beta B(a,b) = Γ(a)Γ(b)/Γ(a+b), continued to negative non-integer arguments.
double beta(double a, double b);

/// B_z(a,b) = ∫_0^z u^{a-1}(1-u)^{b-1} du and its analytic continuation in a
/// (a not a non-positive integer) and b. z must lie in [0, 1].
double inc_beta(double a, double b, double z);

}  // namespace bureshall::specfun
