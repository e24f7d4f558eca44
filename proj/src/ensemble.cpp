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

#include "bureshall/ensemble.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "bureshall/errors.hpp"
#include "bureshall/specfun.hpp"

namespace bureshall {

using exact::ExactScalar;
using exact::gamma_exact;
using exact::HalfInteger;
using exact::Rational;

EnsembleParams EnsembleParams::from_dims(int n, int m) {
    if (n < 1) throw DomainError("EnsembleParams: n must be >= 1");
    if (m < n) throw DomainError("EnsembleParams: m must be >= n");
    return EnsembleParams(n, m, m - n - 0.5, 2L * (m - n) - 1);
}

EnsembleParams EnsembleParams::from_alpha(int n, double alpha) {
    if (n < 1) throw DomainError("EnsembleParams: n must be >= 1");
    if (!(alpha > -1.0) || !std::isfinite(alpha)) throw DomainError("EnsembleParams: alpha must be > -1");
    std::optional<long> twice;
    const double t = 2.0 * alpha;
    if (std::floor(t) == t && std::abs(t) < 1e6) twice = static_cast<long>(t);
    return EnsembleParams(n, std::nullopt, alpha, twice);
}

long EnsembleParams::twice_alpha() const {
    if (!twice_alpha_) throw UnsupportedError("EnsembleParams: no exact track for this alpha");
    return *twice_alpha_;
}

long EnsembleParams::twice_gamma() const { return static_cast<long>(n_ - 1) * (n_ + twice_alpha() + 2); }

long EnsembleParams::twice_alpha_gamma_1() const { return static_cast<long>(n_) * (n_ + twice_alpha() + 1); }

std::string EnsembleParams::describe() const {
    std::ostringstream os;
    os << "n=" << n_;
    if (m_) os << " m=" << *m_;
    os << " alpha=" << alpha_;
    return os.str();
}

double LogValue::value() const { return sign * std::exp(log_abs); }

LogValue log_gamma_value(double x) {
    const auto lg = specfun::log_gamma(x);
    return {lg.value, lg.sign};
}

LogValue log_normalization_C(const EnsembleParams& p) {
    const int n = p.n();
    const double a = p.alpha();
    const double ln2 = boost::math::constants::ln_two<double>();
    const double lnpi = std::log(boost::math::constants::pi<double>());
    LogValue c{(n * n + 2.0 * a * n) * ln2 - 0.5 * n * lnpi, 1};
    for (int j = 1; j <= n; ++j) {
        c = c * log_gamma_value(j + a + 0.5) / (log_gamma_value(j + 1.0) * log_gamma_value(j + 2.0 * a + 1.0));
    }
    return c;
}

double normalization_C(const EnsembleParams& p) { return log_normalization_C(p).value(); }

ExactScalar normalization_C_exact(const EnsembleParams& p) {
    const int n = p.n();
    const long ta = p.twice_alpha();
    // 2^{n² + 2αn} π^{-n/2} Π Γ(j+α+1/2) / (Γ(j+1) Γ(j+2α+1))
    ExactScalar c(exact::pow2(static_cast<long>(n) * n + ta * n), -n);
    for (int j = 1; j <= n; ++j) {
        c *= gamma_exact(HalfInteger::from_twice(2L * j + ta + 1));
        c /= gamma_exact(HalfInteger::from_int(j + 1)) * gamma_exact(HalfInteger::from_twice(2L * j + 2 * ta + 2));
    }
    return c;
}

LogValue log_normalization_CF(const EnsembleParams& p) {
    const double n = p.n();
    return log_gamma_value(0.5 * n * (n + 2.0 * p.alpha() + 1.0)) * log_normalization_C(p);
}

double normalization_CF(const EnsembleParams& p) { return log_normalization_CF(p).value(); }

ExactScalar normalization_CF_exact(const EnsembleParams& p) {
    return gamma_exact(HalfInteger::from_twice(p.twice_alpha_gamma_1())) * normalization_C_exact(p);
}

double kernel_f(const EnsembleParams& p, int j, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("kernel_f: requires lambda > 0");
    if (j < 1 || j > p.N()) throw DomainError("kernel_f: index out of range");
    if (j > p.n()) return 0.0;
    return std::exp((j + p.alpha() - 1.0) * std::log(lambda) - lambda);
}

double kernel_g(double x, double y) {
    if (x + y == 0.0) throw DomainError("kernel_g: requires x + y != 0");
    return (y - x) / (y + x);
}

double kernel_G(const EnsembleParams& p, int j, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("kernel_G: requires lambda > 0");
    if (j < 1 || j > p.N()) throw DomainError("kernel_G: index out of range");
    if (j > p.n()) return -1.0;
    const double a = j + p.alpha();
    const double bracket = 2.0 * lambda * specfun::exp_integral_scaled(a, lambda) - 1.0;
    return log_gamma_value(a).value() * bracket;
}

double log_jpd_unnormalized(const EnsembleParams& p, std::span<const double> lambda) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const double a = p.alpha();
    double acc = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (!(lambda[i] > 0.0)) return kNegInf;
        acc += a * std::log(lambda[i]) - lambda[i];
        for (std::size_t k = i + 1; k < lambda.size(); ++k) {
            const double d = std::abs(lambda[k] - lambda[i]);
            if (d == 0.0) return kNegInf;
            acc += 2.0 * std::log(d) - std::log(lambda[k] + lambda[i]);
        }
    }
    return acc;
}

}  // namespace bureshall
