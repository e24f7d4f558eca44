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

#include "bureshall/specfun.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/digamma.hpp>

#include "bureshall/detail/specfun_impl.hpp"
#include "bureshall/errors.hpp"

namespace bureshall::specfun {

namespace {

using detail::is_nonpositive_integer;

using detail::beta_cf;

double inc_beta_positive(double a, double b, double z) {
    if (z == 1.0) return beta(a, b);
    const double log_front = a * std::log(z) + b * std::log1p(-z);
    if (z < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * beta_cf(a, b, z) / a;
    }
    return beta(a, b) - std::exp(log_front) * beta_cf(b, a, 1.0 - z) / b;
}

}  // namespace

LogGamma log_gamma(double x) {
    if (is_nonpositive_integer(x)) throw PoleError("log_gamma: pole at non-positive integer");
    int sign = 1;
    const double v = detail::log_abs_gamma(x, sign);
    return {v, sign};
}

double rgamma(double x) { return detail::rgamma(x); }

double digamma(double x) {
    if (is_nonpositive_integer(x)) throw PoleError("digamma: pole at non-positive integer");
    return boost::math::digamma(x);
}

double exp_integral_scaled(double a, double z) { return detail::exp_integral_scaled(a, z); }

double exp_integral(double a, double z) {
    const double scaled = exp_integral_scaled(a, z);
    return scaled * std::exp(-z);
}

double beta(double a, double b) {
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
        throw PoleError("beta: pole at non-positive integer argument");
    }
    if (is_nonpositive_integer(a + b)) return 0.0;
    const LogGamma ga = log_gamma(a);
    const LogGamma gb = log_gamma(b);
    const LogGamma gab = log_gamma(a + b);
    return ga.sign * gb.sign * gab.sign * std::exp(ga.value + gb.value - gab.value);
}

double inc_beta(double a, double b, double z) {
    if (!(z >= 0.0 && z <= 1.0)) throw DomainError("inc_beta: z must lie in [0, 1]");
    if (is_nonpositive_integer(a)) throw PoleError("inc_beta: pole at non-positive integer a");
    if (z == 0.0) {
        if (a > 0.0) return 0.0;
        throw DomainError("inc_beta: continuation diverges at z = 0 for a < 0");
    }
    if (a > 0.0 && b > 0.0) return inc_beta_positive(a, b, z);
    if (z == 1.0) {
        if (b > 0.0) return beta(a, b);
        throw DomainError("inc_beta: continuation diverges at z = 1 for b <= 0");
    }
    const double direct_front = std::exp(a * std::log(z));
    if (z <= 0.5 || b <= 0.0) {
        return direct_front * detail::inc_beta_series_unscaled(a, b, z);
    }
    // B_z(a,b) = B(a,b) - B_{1-z}(b,a); the reflected series has no cancellation for a < 0.
    const double x = 1.0 - z;
    return beta(a, b) - std::exp(b * std::log(x)) * detail::inc_beta_series_unscaled(b, a, x);
}

}  // namespace bureshall::specfun
