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

#include "bureshall/pfaffian.hpp"

#include <boost/math/constants/constants.hpp>

namespace bureshall::pfaffian {

using exact::ExactScalar;
using exact::gamma_exact;
using exact::HalfInteger;
using exact::ratio;
using exact::Rational;

SkewMatrix<double> build_H(const EnsembleParams& p) {
    const int n = p.n();
    const double a = p.alpha();
    SkewMatrix<double> h(static_cast<std::size_t>(p.N()));
    for (int j = 1; j <= n; ++j) {
        const LogValue gj = log_gamma_value(j + a);
        for (int k = j + 1; k <= n; ++k) {
            const LogValue gk = log_gamma_value(k + a);
            h.set(j - 1, k - 1, (k - j) / (j + k + 2.0 * a) * (gj * gk).value());
        }
        if (p.odd()) h.set(j - 1, n, gj.value());
    }
    return h;
}

SkewMatrix<long double> build_H_extended(const EnsembleParams& p) {
    const int n = p.n();
    const long double a = p.alpha();
    SkewMatrix<long double> h(static_cast<std::size_t>(p.N()));
    for (int j = 1; j <= n; ++j) {
        const long double lgj = std::lgamma(j + a);
        for (int k = j + 1; k <= n; ++k) {
            const long double ratio = static_cast<long double>(k - j) / (j + k + 2 * a);
            h.set(j - 1, k - 1, ratio * std::exp(lgj + std::lgamma(k + a)));
        }
        if (p.odd()) h.set(j - 1, n, std::exp(lgj));
    }
    return h;
}

SkewMatrix<ExactScalar> build_H_exact(const EnsembleParams& p) {
    const int n = p.n();
    const long ta = p.twice_alpha();
    SkewMatrix<ExactScalar> h(static_cast<std::size_t>(p.N()));
    for (int j = 1; j <= n; ++j) {
        const ExactScalar gj = gamma_exact(HalfInteger::from_twice(2L * j + ta));
        for (int k = j + 1; k <= n; ++k) {
            const ExactScalar gk = gamma_exact(HalfInteger::from_twice(2L * k + ta));
            const ExactScalar factor(exact::ratio(2L * (k - j), 2L * (j + k) + 2 * ta));
            h.set(j - 1, k - 1, factor * gj * gk);
        }
        if (p.odd()) h.set(j - 1, n, gj);
    }
    return h;
}

LogValue log_pf_H_closed(const EnsembleParams& p) {
    const int n = p.n();
    const double a = p.alpha();
    const double ln2 = boost::math::constants::ln_two<double>();
    const double lnpi = std::log(boost::math::constants::pi<double>());
    LogValue v{0.5 * n * lnpi - (n * n + 2.0 * a * n) * ln2, 1};
    v = v / log_gamma_value(n + 1.0);
    for (int k = 1; k <= n; ++k) {
        v = v * log_gamma_value(k + 1.0) * log_gamma_value(k + 2.0 * a + 1.0) / log_gamma_value(k + a + 0.5);
    }
    return v;
}

double pf_H_closed(const EnsembleParams& p) { return log_pf_H_closed(p).value(); }

ExactScalar pf_H_closed_exact(const EnsembleParams& p) {
    const int n = p.n();
    const long ta = p.twice_alpha();
    ExactScalar v(1 / exact::pow2(static_cast<long>(n) * n + ta * n), n);
    v /= gamma_exact(HalfInteger::from_int(n + 1));
    for (int k = 1; k <= n; ++k) {
        v *= gamma_exact(HalfInteger::from_int(k + 1)) * gamma_exact(HalfInteger::from_twice(2L * k + 2 * ta + 2));
        v /= gamma_exact(HalfInteger::from_twice(2L * k + ta + 1));
    }
    return v;
}

namespace {

void check_minor_indices(const EnsembleParams& p, int j, int k) {
    if (j < 1 || j >= k || k > p.N()) throw DomainError("pf_H_minor: requires 1 <= j < k <= N");
}

}  // namespace

LogValue log_pf_H_minor(const EnsembleParams& p, int j, int k) {
    check_minor_indices(p, j, k);
    const int n = p.n();
    const double a = p.alpha();
    LogValue v{0.0, 1};
    for (int r = 1; r <= n; ++r) {
        if (r == j || r == k) continue;
        v = v * log_gamma_value(r + a);
        for (int s = r + 1; s <= n; ++s) {
            if (s == j || s == k) continue;
            v.log_abs += std::log((s - r) / (r + s + 2.0 * a));
        }
    }
    return v;
}

double pf_H_minor(const EnsembleParams& p, int j, int k) { return log_pf_H_minor(p, j, k).value(); }

ExactScalar pf_H_minor_exact(const EnsembleParams& p, int j, int k) {
    check_minor_indices(p, j, k);
    const int n = p.n();
    const long ta = p.twice_alpha();
    Rational q(1);
    ExactScalar v(1);
    for (int r = 1; r <= n; ++r) {
        if (r == j || r == k) continue;
        v *= gamma_exact(HalfInteger::from_twice(2L * r + ta));
        for (int s = r + 1; s <= n; ++s) {
            if (s == j || s == k) continue;
            q *= ratio(2L * (s - r), 2L * (r + s) + 2 * ta);
        }
    }
    return ExactScalar(q) * v;
}

}  // namespace bureshall::pfaffian
