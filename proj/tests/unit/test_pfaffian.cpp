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


#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "bureshall/errors.hpp"
#include "bureshall/pfaffian.hpp"

using namespace bureshall;
using namespace bureshall::pfaffian;
using doctest::Approx;

namespace {

// Expansion along the first row: Pf[A] = Σ_j (-1)^j a_{0j} Pf[A without 0, j].
double pf_expand(const SkewMatrix<double>& a) {
    if (a.dim() == 0) return 1.0;
    double sum = 0.0;
    for (std::size_t j = 1; j < a.dim(); ++j) {
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        sum += sign * a(0, j) * pf_expand(a.without(0, j));
    }
    return sum;
}

SkewMatrix<double> random_skew(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    SkewMatrix<double> a(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) a.set(i, j, g(rng));
    }
    return a;
}

}  // namespace

TEST_CASE("generic Pfaffian of small matrices") {
    SkewMatrix<double> a(4);
    a.set(0, 1, 2.0);
    a.set(0, 2, 3.0);
    a.set(0, 3, 5.0);
    a.set(1, 2, 7.0);
    a.set(1, 3, 11.0);
    a.set(2, 3, 13.0);
    CHECK(pfaffian_generic(a) == Approx(2.0 * 13 - 3.0 * 11 + 5.0 * 7));
    CHECK(pfaffian_generic(SkewMatrix<double>(0)) == 1.0);
    CHECK_THROWS_AS(pfaffian_generic(SkewMatrix<double>(3)), DomainError);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(pfaffian_generic(a), DomainError);
}

TEST_CASE("generic Pfaffian against row expansion and Pf² = det") {
    std::mt19937_64 rng(42);
    for (std::size_t dim : {2u, 4u, 6u, 8u, 10u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto a = random_skew(dim, rng);
            CHECK(pfaffian_generic(a) == Approx(pf_expand(a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("Pfaffian with a zero leading column needs a pivot") {
    SkewMatrix<double> a(4);
    a.set(0, 2, 1.0);
    a.set(1, 3, 1.0);
    CHECK(pfaffian_generic(a) == Approx(pf_expand(a)));
    CHECK(pfaffian_generic(a) == Approx(-1.0));
}

TEST_CASE("exact Pfaffian of H equals the closed form") {
    for (int n = 1; n <= 6; ++n) {
        for (int m = n; m <= 7; ++m) {
            const auto p = EnsembleParams::from_dims(n, m);
            CAPTURE(n);
            CAPTURE(m);
            CHECK(pfaffian_generic(build_H_exact(p)) == pf_H_closed_exact(p));
        }
    }
}

TEST_CASE("exact minors equal the restricted products") {
    for (int n = 1; n <= 5; ++n) {
        const auto p = EnsembleParams::from_dims(n, n + 2);
        const auto h = build_H_exact(p);
        for (int j = 1; j <= p.N(); ++j) {
            for (int k = j + 1; k <= p.N(); ++k) {
                CAPTURE(n);
                CAPTURE(j);
                CAPTURE(k);
                CHECK(pfaffian_generic(h.without(j - 1, k - 1)) == pf_H_minor_exact(p, j, k));
            }
        }
    }
}

TEST_CASE("float closed forms against elimination") {
    for (int n = 1; n <= 8; ++n) {
        const auto p = EnsembleParams::from_dims(n, 8);
        const auto h = build_H_extended(p);
        CHECK(pf_H_closed(p) == Approx(static_cast<double>(pfaffian_generic(h))).epsilon(1e-10));
        CHECK(log_pf_H_closed(p).value() == Approx(pf_H_closed(p)).epsilon(1e-12));
        for (int k = 2; k <= p.N(); ++k) {
            CHECK(pf_H_minor(p, 1, k) == Approx(static_cast<double>(pfaffian_generic(h.without(0, k - 1)))).epsilon(1e-10));
        }
    }
}

TEST_CASE("generalized alpha uses the float track") {
    const auto p = EnsembleParams::from_alpha(4, 0.3);
    CHECK_FALSE(p.has_exact_track());
    CHECK(pf_H_closed(p) == Approx(pfaffian_generic(build_H(p))).epsilon(1e-10));
}
