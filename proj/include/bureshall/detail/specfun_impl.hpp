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

// Precision-generic kernels behind specfun.hpp. Instantiated for double and
// for the 50-digit binary float used by the cancellation fallback in the
// density evaluators.

#pragma once

#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bureshall/errors.hpp"

namespace bureshall::specfun::detail {

inline constexpr int kMaxSeriesTerms = 200000;

template <class Real>
Real eps() {
    return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real tiny() {
    return std::numeric_limits<Real>::min() / eps<Real>();
}

template <class Real>
bool is_integer(const Real& x) {
    using std::floor;
    return floor(x) == x;
}

template <class Real>
bool is_nonpositive_integer(const Real& x) {
    return x <= 0 && is_integer(x);
}

/// ln|Γ(x)| and sign(Γ(x)); caller guarantees x is not a pole.
template <class Real>
Real log_abs_gamma(const Real& x, int& sign) {
    return boost::math::lgamma(x, &sign);
}

/// 1/Γ(x), continuous through the poles where it vanishes.
template <class Real>
Real rgamma(const Real& x) {
    using std::exp;
    if (is_nonpositive_integer(x)) return Real(0);
    int sign = 1;
    const Real lg = log_abs_gamma(x, sign);
    return sign * exp(-lg);
}

/// e^z Γ(1-a, z) z^(a-1) by modified Lentz on the Legendre continued fraction.
template <class Real>
Real exp_integral_cf_scaled(const Real& a, const Real& z) {
    using std::abs;
    Real b = z + a;
    if (abs(b) < tiny<Real>()) b = tiny<Real>();
    Real c = 1 / tiny<Real>();
    Real d = 1 / b;
    Real h = d;
    for (int i = 1; i < kMaxSeriesTerms; ++i) {
        const Real an = -Real(i) * (a - 1 + i);
        b += 2;
        d = an * d + b;
        if (abs(d) < tiny<Real>()) d = tiny<Real>();
        d = 1 / d;
        c = b + an / c;
        if (abs(c) < tiny<Real>()) c = tiny<Real>();
        const Real del = c * d;
        h *= del;
        if (abs(del - 1) <= eps<Real>()) return h;
    }
    throw DomainError("exp_integral: continued fraction failed to converge");
}

/// E_a(z) for small z and non-integer a: Γ(1-a) z^(a-1) - Σ (-z)^k / (k! (1-a+k)).
template <class Real>
Real exp_integral_series_nonint(const Real& a, const Real& z) {
    using std::abs;
    using std::pow;
    int sign = 1;
    const Real lg = log_abs_gamma(Real(1 - a), sign);
    Real sum = 0;
    Real fact = 1;  // (-z)^k / k!
    for (int k = 0; k < kMaxSeriesTerms; ++k) {
        if (k > 0) fact *= -z / k;
        const Real term = fact / (1 - a + k);
        sum += term;
        if (abs(term) <= abs(sum) * eps<Real>() && k > 2) break;
    }
    using std::exp;
    using std::log;
    return sign * exp(lg + (a - 1) * log(z)) - sum;
}

/// E_p(z) for small z and integer p >= 1.
template <class Real>
Real exp_integral_series_int(int p, const Real& z) {
    using std::abs;
    using std::log;
    const Real euler = boost::math::constants::euler<Real>();
    const int nm1 = p - 1;
    Real ans = nm1 != 0 ? Real(1) / nm1 : Real(-log(z) - euler);
    Real fact = 1;
    for (int i = 1; i < kMaxSeriesTerms; ++i) {
        fact *= -z / i;
        Real del;
        if (i != nm1) {
            del = -fact / (i - nm1);
        } else {
            Real psi = -euler;
            for (int ii = 1; ii <= nm1; ++ii) psi += Real(1) / ii;
            del = fact * (-log(z) + psi);
        }
        ans += del;
        if (abs(del) <= abs(ans) * eps<Real>()) break;
    }
    return ans;
}

/// e^z E_a(z), the overflow-free form used wherever E_a is paired with e^z.
template <class Real>
Real exp_integral_scaled(const Real& a, const Real& z) {
    using std::exp;
    using std::pow;
    if (!(z > 0)) throw DomainError("exp_integral: requires z > 0");
    if (is_integer(a) && a <= 0) {
        // E_{-p}(z) = p! e^{-z} Σ_{i<=p} z^i / i! / z^{p+1}
        const int p = static_cast<int>(-a);
        Real sum = 0;
        Real term = 1;
        for (int i = 0; i <= p; ++i) {
            if (i > 0) term *= z / i;
            sum += term;
        }
        Real pf = 1;
        for (int i = 2; i <= p; ++i) pf *= i;
        return pf * sum / pow(z, p + 1);
    }
    if (z >= 1) return exp_integral_cf_scaled(a, z);
    if (is_integer(a)) {
        return exp(z) * exp_integral_series_int(static_cast<int>(a), z);
    }
    return exp(z) * exp_integral_series_nonint(a, z);
}

/// Σ_k (1-b)_k z^k / (k! (a+k)); B_z(a,b) = z^a times this.
/// Converges for |z| < 1 and any a off the non-positive integers.
template <class Real>
Real inc_beta_series_unscaled(const Real& a, const Real& b, const Real& z) {
    using std::abs;
    Real sum = 0;
    Real poch = 1;  // (1-b)_k z^k / k!
    for (int k = 0; k < kMaxSeriesTerms; ++k) {
        if (k > 0) {
            poch *= (k - b) * z / k;
            if (poch == 0) break;
        }
        const Real term = poch / (a + k);
        sum += term;
        if (k > 4 && abs(term) <= abs(sum) * eps<Real>() && abs(poch) <= abs(sum) * eps<Real>()) break;
    }
    return sum;
}

/// Σ_t (1-a)_t (b)_t x^t / (t! Γ(b+t+1)); B_x(b,a)/Γ(b) = x^b times this.
/// Entire in b, so the ratio stays finite where Γ(b) has a pole. rg_b1 is
/// 1/Γ(b+1), which callers evaluating many points can supply precomputed.
template <class Real>
Real lower_beta_over_gamma_unscaled(const Real& b, const Real& a, const Real& x, const Real& rg_b1) {
    using std::abs;
    if (is_nonpositive_integer(b)) {
        // Only t = -b survives: (b)_t/Γ(b+t+1) = (-1)^p p! at t = p; the x^t cancels x^b.
        const int p = static_cast<int>(-b);
        Real value = 1;  // (-1)^p (1-a)_p x^p
        for (int t = 0; t < p; ++t) value *= -(1 - a + t) * x;
        return value;
    }
    Real term = rg_b1;
    Real sum = term;
    for (int t = 0; t < kMaxSeriesTerms; ++t) {
        term *= (t + 1 - a) * (b + t) * x / ((t + 1) * (b + t + 1));
        sum += term;
        if (abs(term) <= abs(sum) * eps<Real>() && t > 4) break;
        if (term == 0) break;
    }
    return sum;
}

template <class Real>
Real lower_beta_over_gamma_unscaled(const Real& b, const Real& a, const Real& x) {
    return lower_beta_over_gamma_unscaled(b, a, x, rgamma(Real(b + 1)));
}

/// Modified-Lentz value of the incomplete-beta continued fraction:
/// B_x(a,b) = x^a (1-x)^b cf / a. Used for b < 0 as well, where it converges
/// quickly for x close to 1 and large a.
template <class Real>
Real beta_cf(const Real& a, const Real& b, const Real& x) {
    using std::abs;
    const Real fpmin = tiny<Real>();
    const Real qab = a + b;
    const Real qap = a + 1;
    const Real qam = a - 1;
    Real c = 1;
    Real d = 1 - qab * x / qap;
    if (abs(d) < fpmin) d = fpmin;
    d = 1 / d;
    Real h = d;
    for (int m = 1; m < kMaxSeriesTerms; ++m) {
        const int m2 = 2 * m;
        Real aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1 + aa * d;
        if (abs(d) < fpmin) d = fpmin;
        c = 1 + aa / c;
        if (abs(c) < fpmin) c = fpmin;
        d = 1 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1 + aa * d;
        if (abs(d) < fpmin) d = fpmin;
        c = 1 + aa / c;
        if (abs(c) < fpmin) c = fpmin;
        d = 1 / d;
        const Real del = d * c;
        h *= del;
        if (abs(del - 1) <= eps<Real>()) return h;
    }
    throw DomainError("beta continued fraction failed to converge");
}

}  // namespace bureshall::specfun::detail
