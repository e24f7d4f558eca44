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
 * @brief Exact scalars of the form π^(p/2)·(a + b·ln2 + c·γ_E) with a, b, c ∈ ℚ.
 *
 * This set is closed under the operations the closed-form averages need:
 * Γ at half-integers is a rational multiple of π^(1/2) or 1, ψ at
 * half-integers is rational plus multiples of ln2 and γ_E, and the sums only
 * ever multiply a pure π-power rational by at most one ψ-bearing factor.
 */

#pragma once

#include <compare>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace bureshall::exact {

using Rational = mpq_class;

/// num/den in lowest terms with a positive denominator. mpq_class(num, den)
/// alone does not reduce, and GMP arithmetic expects reduced operands.
inline Rational ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// A value x with 2x an integer; the lattice on which Γ and ψ stay exact.
struct HalfInteger {
    long twice;

    static constexpr HalfInteger from_int(long k) { return {2 * k}; }
    static constexpr HalfInteger from_twice(long t) { return {t}; }

    bool is_integer() const { return twice % 2 == 0; }
    double to_double() const { return 0.5 * static_cast<double>(twice); }
    Rational to_rational() const { return ratio(twice, 2); }

    friend HalfInteger operator+(HalfInteger x, HalfInteger y) { return {x.twice + y.twice}; }
    friend HalfInteger operator-(HalfInteger x, HalfInteger y) { return {x.twice - y.twice}; }
    friend auto operator<=>(HalfInteger, HalfInteger) = default;
};

class ExactScalar {
public:
    /// Zero. Zero is additively compatible with every π power.
    ExactScalar() = default;

    /// π^(p/2) · q.
    explicit ExactScalar(Rational q, int pi_half_power = 0);
    ExactScalar(long v) : ExactScalar(Rational(v)) {}  // NOLINT: integer literals read naturally

    static ExactScalar make(int pi_half_power, Rational a, Rational b, Rational c);
    static ExactScalar ln2();
    static ExactScalar euler_gamma();
    static ExactScalar pi_power(int pi_half_power);

    int pi_half_power() const { return pi_half_power_; }
    const Rational& const_part() const { return a_; }
    const Rational& ln2_part() const { return b_; }
    const Rational& euler_part() const { return c_; }

    bool is_zero() const;
    /// No ln2 or γ_E component.
    bool is_pure() const;

    ExactScalar operator-() const;
    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o);
    ExactScalar& operator/=(const ExactScalar& o);

    friend ExactScalar operator+(ExactScalar x, const ExactScalar& y) { return x += y; }
    friend ExactScalar operator-(ExactScalar x, const ExactScalar& y) { return x -= y; }
    friend ExactScalar operator*(ExactScalar x, const ExactScalar& y) { return x *= y; }
    friend ExactScalar operator/(ExactScalar x, const ExactScalar& y) { return x /= y; }
    friend bool operator==(const ExactScalar& x, const ExactScalar& y);

    /// "pi^(p/2)*(a + b*ln2 + c*euler)" with every component written out.
    std::string canonical() const;
    /// Compact human form: "2*ln2 - 7/6", "7/8", "pi^(1/2)*15/8".
    std::string display() const;

private:
    void normalize();

    int pi_half_power_ = 0;
    Rational a_{0};
    Rational b_{0};
    Rational c_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& s);

/// Γ(x) for 2x a positive integer. Throws DomainError otherwise.
ExactScalar gamma_exact(HalfInteger x);

/// ψ(x) for 2x a positive integer. Throws DomainError otherwise.
ExactScalar digamma_exact(HalfInteger x);

/// Numeric value; components are combined in 256-bit floating point.
double to_float(const ExactScalar& s);

/// Exact 2^e for any integer e.
Rational pow2(long e);

/// Lowest-terms "p/q" or "p".
std::string rational_string(const Rational& q);

}  // namespace bureshall::exact
