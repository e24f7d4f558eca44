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

#include <doctest.h>

#include "bureshall/errors.hpp"
#include "bureshall/exact.hpp"

using namespace bureshall::exact;
using doctest::Approx;

TEST_CASE("gamma on the half-integer lattice") {
    CHECK(gamma_exact(HalfInteger::from_int(5)) == ExactScalar(24));
    CHECK(gamma_exact(HalfInteger::from_twice(1)) == ExactScalar::pi_power(1));
    CHECK(gamma_exact(HalfInteger::from_twice(5)) == ExactScalar(Rational(3, 4), 1));
    for (long t = 1; t <= 30; ++t) {
        CHECK(to_float(gamma_exact(HalfInteger::from_twice(t))) == Approx(std::tgamma(0.5 * t)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(gamma_exact(HalfInteger::from_int(0)), bureshall::DomainError);
}

TEST_CASE("digamma on the half-integer lattice") {
    CHECK(digamma_exact(HalfInteger::from_int(1)) == -ExactScalar::euler_gamma());
    const ExactScalar half = -ExactScalar::euler_gamma() - ExactScalar(2) * ExactScalar::ln2();
    CHECK(digamma_exact(HalfInteger::from_twice(1)) == half);
    // ψ(x+1) = ψ(x) + 1/x
    for (long t = 1; t <= 20; ++t) {
        const ExactScalar lhs = digamma_exact(HalfInteger::from_twice(t + 2));
        const ExactScalar rhs = digamma_exact(HalfInteger::from_twice(t)) + ExactScalar(Rational(2, t));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("display forms") {
    CHECK((ExactScalar(2) * ExactScalar::ln2() - ExactScalar(Rational(7, 6))).display() == "2*ln2 - 7/6");
    CHECK(ExactScalar(Rational(7, 8)).display() == "7/8");
    CHECK(ExactScalar().display() == "0");
    CHECK(ExactScalar(Rational(15, 8), 1).display() == "pi^(1/2)*15/8");
    CHECK(rational_string(Rational(6, 4)) == "3/2");
    CHECK(rational_string(Rational(-4, 2)) == "-2");
}

TEST_CASE("arithmetic keeps components separate") {
    const ExactScalar x = ExactScalar(Rational(1, 3)) + ExactScalar::ln2();
    const ExactScalar y = x * ExactScalar(3) - ExactScalar(1);
    CHECK(y.const_part() == 0);
    CHECK(y.ln2_part() == 3);
    CHECK(y.euler_part() == 0);
    CHECK(y.is_pure() == false);
    CHECK((y / ExactScalar(3)).ln2_part() == 1);
    CHECK((x - x).is_zero());
    CHECK(to_float(x) == Approx(1.0 / 3 + std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("pi powers multiply and cancel") {
    const ExactScalar a(Rational(2), 1);
    const ExactScalar b(Rational(3), -1);
    const ExactScalar c = a * b;
    CHECK(c.pi_half_power() == 0);
    CHECK(c == ExactScalar(6));
    CHECK((a / a) == ExactScalar(1));
}

TEST_CASE("pow2") {
    CHECK(pow2(10) == 1024);
    CHECK(pow2(-3) == Rational(1, 8));
    CHECK(pow2(0) == 1);
}
