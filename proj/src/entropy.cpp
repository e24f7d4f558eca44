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


#include "bureshall/entropy.hpp"

#include <cmath>
#include <utility>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/float128.hpp>

#include "bureshall/errors.hpp"
#include "bureshall/parallel.hpp"
#include "bureshall/pfaffian.hpp"

namespace bureshall::entropy {

using exact::digamma_exact;
using exact::ExactScalar;
using exact::gamma_exact;
using exact::HalfInteger;
using exact::ratio;
using exact::Rational;

Value Value::from_exact(const ExactScalar& e) { return {exact::to_float(e), e}; }

namespace {

using Quad = boost::multiprecision::float128;

bool is_integral(double w) { return std::floor(w) == w && std::abs(w) < 1e6; }

void require_dims(int n, int m) {
    if (n < 1 || m < n) throw DomainError("requires integer dimensions 1 <= n <= m");
}

int dims_m(const EnsembleParams& p) {
    if (!p.m()) throw DomainError("requires integer environment dimension m");
    return *p.m();
}

void require_omega(double omega) {
    if (!(omega > 0) || !std::isfinite(omega)) throw DomainError("entropy: requires omega > 0");
    if (omega == 1.0) throw DomainError("entropy: omega = 1 is the von Neumann limit; use avg_von_neumann");
}

// Exact track ------------------------------------------------------------------

ExactScalar gamma_twice(long t) { return gamma_exact(HalfInteger::from_twice(t)); }
ExactScalar digamma_twice(long t) { return digamma_exact(HalfInteger::from_twice(t)); }

// Σ_{j<k<=N} (-1)^{j+k} (K_{j,k} - K_{k,j}) Pf[H^(j,k)]; for odd n the column
// k = n+1 contributes border(j) since K_{n+1,j} = 0.
template <class Kernel, class Border>
ExactScalar pair_sum_exact(const EnsembleParams& p, Kernel kernel, Border border) {
    const int n = p.n();
    const int N = p.N();
    ExactScalar sum;
    for (int j = 1; j <= N; ++j) {
        for (int k = j + 1; k <= N; ++k) {
            ExactScalar t = k <= n ? kernel(j, k) - kernel(k, j) : border(j);
            t = pfaffian::pf_H_minor_exact(p, j, k) * t;
            if ((j + k) % 2 == 0) {
                sum += t;
            } else {
                sum -= t;
            }
        }
    }
    return sum;
}

ExactScalar eta_sum_exact(const EnsembleParams& p, long omega) {
    const long ta = p.twice_alpha();
    return pair_sum_exact(
        p,
        [&](int j, int k) {
            const ExactScalar r(ratio(2 * (j - k + omega), 2 * (j + k + omega) + 2 * ta));
            return r * gamma_twice(2L * j + ta + 2 * omega) * gamma_twice(2L * k + ta);
        },
        [&](int j) { return -gamma_twice(2L * j + ta + 2 * omega); });
}

ExactScalar xi_sum_exact(const EnsembleParams& p, XiKernel variant) {
    const long ta = p.twice_alpha();
    const int flip = variant == XiKernel::sign_flipped ? -1 : 1;
    return pair_sum_exact(
        p,
        [&](int j, int k) {
            const ExactScalar r(ratio(flip * 2 * (j - k + 1), 2 * (j + k + 1) + 2 * ta));
            return (r * gamma_twice(2L * j + ta + 2) * gamma_twice(2L * k + ta)) * digamma_twice(2L * j + ta + 2);
        },
        [&](int j) { return ExactScalar(-flip) * (gamma_twice(2L * j + ta + 2) * digamma_twice(2L * j + ta + 2)); });
}

// n! C^(F) / Γ(α+γ+ω+1)
ExactScalar prefactor_exact(const EnsembleParams& p, long omega) {
    const ExactScalar nfact = gamma_exact(HalfInteger::from_int(p.n() + 1));
    return nfact * normalization_CF_exact(p) / gamma_twice(p.twice_alpha_gamma_1() + 2 * omega);
}

// Quad-precision track ---------------------------------------------------------

Quad lgq(const Quad& x) { return boost::math::lgamma(x); }

Quad log_C_quad(const EnsembleParams& p) {
    const int n = p.n();
    const Quad a = p.alpha();
    Quad v = (Quad(n) * n + 2 * a * n) * boost::math::constants::ln_two<Quad>() -
             Quad(n) / 2 * log(boost::math::constants::pi<Quad>());
    for (int j = 1; j <= n; ++j) v += lgq(j + a + Quad(1) / 2) - lgq(Quad(j + 1)) - lgq(j + 2 * a + 1);
    return v;
}

Quad log_pf_minor_quad(const EnsembleParams& p, int j, int k) {
    const int n = p.n();
    const Quad a = p.alpha();
    Quad v = 0;
    for (int r = 1; r <= n; ++r) {
        if (r == j || r == k) continue;
        v += lgq(r + a);
        for (int s = r + 1; s <= n; ++s) {
            if (s == j || s == k) continue;
            v += log(Quad(s - r) / (r + s + 2 * a));
        }
    }
    return v;
}

// coefficient · e^{log_mag}
struct Term {
    Quad coef;
    Quad log_mag;
};

// log[n! C^(F) / Γ(α+γ+ω+1)] + Σ over the same pairs as pair_sum_exact.
template <class Kernel, class Border>
Quad pair_sum_quad(const EnsembleParams& p, const Quad& log_prefactor, Kernel kernel, Border border) {
    const int n = p.n();
    const int N = p.N();
    Quad sum = 0;
    for (int j = 1; j <= N; ++j) {
        for (int k = j + 1; k <= N; ++k) {
            const Quad base = log_prefactor + log_pf_minor_quad(p, j, k);
            Quad t;
            if (k <= n) {
                const Term x = kernel(j, k);
                const Term y = kernel(k, j);
                t = x.coef * exp(base + x.log_mag) - y.coef * exp(base + y.log_mag);
            } else {
                const Term b = border(j);
                t = b.coef * exp(base + b.log_mag);
            }
            sum += (j + k) % 2 == 0 ? t : Quad(-t);
        }
    }
    return sum;
}

Quad log_prefactor_quad(const EnsembleParams& p, const Quad& omega) {
    const Quad apg1 = Quad(p.n()) * (p.n() + 2 * Quad(p.alpha()) + 1) / 2;
    return lgq(Quad(p.n() + 1)) + log_C_quad(p) + lgq(apg1) - lgq(apg1 + omega);
}

// n! C^(F)/Γ(α+γ+ω+1) · Σ(η_{j,k} - η_{k,j}) Pf[H^(j,k)]
Quad eta_total_quad(const EnsembleParams& p, const Quad& omega) {
    const Quad a = p.alpha();
    return pair_sum_quad(
        p, log_prefactor_quad(p, omega),
        [&](int j, int k) {
            return Term{(j - k + omega) / (j + k + 2 * a + omega), lgq(j + a + omega) + lgq(k + a)};
        },
        [&](int j) { return Term{Quad(-1), lgq(j + a + omega)}; });
}

Quad xi_total_quad(const EnsembleParams& p) {
    const Quad a = p.alpha();
    return pair_sum_quad(
        p, log_prefactor_quad(p, Quad(1)),
        [&](int j, int k) {
            const Quad coef = (j - k + 1) / (j + k + 2 * a + 1) * boost::math::digamma(j + a + 1);
            return Term{coef, lgq(j + a + 1) + lgq(k + a)};
        },
        [&](int j) { return Term{-boost::math::digamma(j + a + 1), lgq(j + a + 1)}; });
}

Value difference(const Value& x, const Value& y) {
    if (x.exact && y.exact) return Value::from_exact(*x.exact - *y.exact);
    return {x.value - y.value, std::nullopt};
}

Value one_minus(const Value& v) {
    if (v.exact) return Value::from_exact(ExactScalar(1) - *v.exact);
    return {1.0 - v.value, std::nullopt};
}

}  // namespace

Value avg_hct(const EnsembleParams& p, double omega) {
    require_omega(omega);
    if (p.n() == 1) {
        // a single eigenvalue equal to 1
        if (p.has_exact_track() && is_integral(omega)) return Value::from_exact(ExactScalar(0));
        return {0.0, std::nullopt};
    }
    if (p.has_exact_track() && is_integral(omega)) {
        const long w = static_cast<long>(omega);
        const ExactScalar total = prefactor_exact(p, w) * eta_sum_exact(p, w);
        return Value::from_exact((ExactScalar(1) - total) / ExactScalar(Rational(w - 1)));
    }
    const Quad w = omega;
    return {static_cast<double>((1 - eta_total_quad(p, w)) / (w - 1)), std::nullopt};
}

Value avg_von_neumann(const EnsembleParams& p) {
    if (p.has_exact_track()) {
        const ExactScalar pref = prefactor_exact(p, 1);
        if (!(pref * eta_sum_exact(p, 1) == ExactScalar(1))) {
            throw SelfCheckError("avg_von_neumann: eta normalization at omega = 1 is not 1");
        }
        return Value::from_exact(digamma_twice(p.twice_alpha_gamma_1() + 2) - pref * xi_sum_exact(p, XiKernel::standard));
    }
    const Quad check = eta_total_quad(p, Quad(1));
    if (!(abs(check - 1) <= Quad(1e-20))) {
        throw SelfCheckError("avg_von_neumann: eta normalization at omega = 1 is not 1");
    }
    const Quad apg2 = Quad(p.n()) * (p.n() + 2 * Quad(p.alpha()) + 1) / 2 + 1;
    return {static_cast<double>(boost::math::digamma(apg2) - xi_total_quad(p)), std::nullopt};
}

Value avg_linear(const EnsembleParams& p) { return avg_hct(p, 2.0); }

Value avg_purity(const EnsembleParams& p) { return one_minus(avg_linear(p)); }

Value hs_von_neumann(int n, int m) {
    require_dims(n, m);
    const ExactScalar v = digamma_exact(HalfInteger::from_int(static_cast<long>(m) * n + 1)) -
                          digamma_exact(HalfInteger::from_int(m + 1)) - ExactScalar(ratio(n - 1, 2 * m));
    return Value::from_exact(v);
}

Value hs_purity(int n, int m) {
    require_dims(n, m);
    return Value::from_exact(ExactScalar(ratio(m + n, static_cast<long>(m) * n + 1)));
}

Value conjecture_von_neumann(int n, int m) {
    require_dims(n, m);
    const long t = 2L * m * n - static_cast<long>(n) * n + 2;
    return Value::from_exact(digamma_twice(t) - digamma_twice(2L * m + 1));
}

Value conjecture_purity(int n, int m) {
    require_dims(n, m);
    const long num = 2L * m * (2L * m + n) - (static_cast<long>(n) * n - 1);
    const long den = 2L * m * (2L * m * n - static_cast<long>(n) * n + 2);
    return Value::from_exact(ExactScalar(ratio(num, den)));
}

Rational purity_difference(int n, int m) {
    require_dims(n, m);
    const long mn = static_cast<long>(m) * n;
    const long nn = static_cast<long>(n) * n;
    Rational num = Rational(mn - 1) * Rational(nn - 1);
    Rational den = Rational(2L * m) * Rational(mn + 1) * Rational(2 * mn - nn + 2);
    return Rational(num / den);
}

IdentityReport verify_conjecture_identities(const EnsembleParams& p, XiKernel xi) {
    const int m = dims_m(p);
    const int n = p.n();
    IdentityReport r;
    r.n = n;
    r.m = m;
    const ExactScalar nC = gamma_exact(HalfInteger::from_int(n + 1)) * normalization_C_exact(p);
    const long mn = static_cast<long>(m) * n;
    const long nn = static_cast<long>(n) * n;
    r.xi_sum = xi_sum_exact(p, xi);
    r.xi_expected = ExactScalar(ratio(2 * mn - nn, 2)) / nC * digamma_twice(2L * m + 1);
    r.eta_sum = eta_sum_exact(p, 2);
    const Rational bracket(2L * m * (2L * m + n) - (nn - 1), 8L * m);
    r.eta_expected = ExactScalar(Rational(n * (2L * m - n)) * bracket) / nC;
    return r;
}

density::QuadratureResult avg_hct_via_unrestricted(const EnsembleParams& p, double omega) {
    require_omega(omega);
    const density::QuadratureResult moment = density::unrestricted_moment(p, omega);
    const Quad apg1 = Quad(p.n()) * (p.n() + 2 * Quad(p.alpha()) + 1) / 2;
    const double ratio = static_cast<double>(exp(lgq(apg1) - lgq(apg1 + omega)));
    return {(1.0 - ratio * moment.value) / (omega - 1.0), ratio * moment.error / std::abs(omega - 1.0)};
}

// Reports ----------------------------------------------------------------------

std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::hct:
            return "hct";
        case Quantity::von_neumann:
            return "von_neumann";
        case Quantity::linear:
            return "linear";
        case Quantity::purity:
            return "purity";
    }
    return "unknown";
}

Quantity parse_quantity(const std::string& s) {
    if (s == "hct") return Quantity::hct;
    if (s == "von_neumann" || s == "von-neumann" || s == "vn") return Quantity::von_neumann;
    if (s == "linear") return Quantity::linear;
    if (s == "purity") return Quantity::purity;
    throw DomainError("unknown quantity '" + s + "'");
}

EntropyReport make_report(const EnsembleParams& p, Quantity q, double omega) {
    EntropyReport r(p, q);
    const std::optional<int> m = p.m();
    const int n = p.n();
    switch (q) {
        case Quantity::von_neumann:
            r.bures_hall = avg_von_neumann(p);
            if (m) {
                r.hilbert_schmidt = hs_von_neumann(n, *m);
                r.conjecture = conjecture_von_neumann(n, *m);
            }
            break;
        case Quantity::purity:
            r.bures_hall = avg_purity(p);
            if (m) {
                r.hilbert_schmidt = hs_purity(n, *m);
                r.conjecture = conjecture_purity(n, *m);
            }
            break;
        case Quantity::hct:
            r.omega = omega;
            r.bures_hall = avg_hct(p, omega);
            if (m && omega == 2.0) {
                r.hilbert_schmidt = one_minus(hs_purity(n, *m));
                r.conjecture = one_minus(conjecture_purity(n, *m));
            }
            break;
        case Quantity::linear:
            r.bures_hall = avg_linear(p);
            if (m) {
                r.hilbert_schmidt = one_minus(hs_purity(n, *m));
                r.conjecture = one_minus(conjecture_purity(n, *m));
            }
            break;
    }
    if (r.hilbert_schmidt) r.difference = difference(r.bures_hall, *r.hilbert_schmidt);
    return r;
}

std::vector<TableRow> entropy_table(int n_max, int m_max) {
    std::vector<std::pair<int, int>> cells;
    for (int n = 1; n <= n_max; ++n) {
        for (int m = n; m <= m_max; ++m) cells.emplace_back(n, m);
    }
    std::vector<std::optional<TableRow>> rows(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        const auto [n, m] = cells[i];
        const EnsembleParams p = EnsembleParams::from_dims(n, m);
        rows[i].emplace(TableRow{n, m, make_report(p, Quantity::von_neumann), make_report(p, Quantity::purity)});
    });
    std::vector<TableRow> out;
    out.reserve(rows.size());
    for (auto& r : rows) out.push_back(std::move(*r));
    return out;
}

}  // namespace bureshall::entropy
