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

#include "bureshall/exact.hpp"

#include <sstream>
#include <utility>
#include <vector>

#include "bureshall/errors.hpp"

namespace bureshall::exact {

namespace {

constexpr const char* kPi = "3.14159265358979323846264338327950288419716939937510582097494";
constexpr const char* kLn2 = "0.69314718055994530941723212145817656807550013436025525412068";
constexpr const char* kEuler = "0.57721566490153286060651209008240243104215933593992359880577";
constexpr mp_bitcnt_t kFloatBits = 256;

mpf_class big_float(const char* digits) { return mpf_class(digits, kFloatBits); }

mpf_class big_float(const Rational& q) {
    mpf_class num(q.get_num(), kFloatBits);
    mpf_class den(q.get_den(), kFloatBits);
    return num / den;
}

}  // namespace

Rational pow2(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

std::string rational_string(const Rational& value) {
    Rational q = value;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ExactScalar::ExactScalar(Rational q, int pi_half_power)
    : pi_half_power_(pi_half_power), a_(std::move(q)) {
    normalize();
}

ExactScalar ExactScalar::make(int pi_half_power, Rational a, Rational b, Rational c) {
    ExactScalar s;
    s.pi_half_power_ = pi_half_power;
    s.a_ = std::move(a);
    s.b_ = std::move(b);
    s.c_ = std::move(c);
    s.normalize();
    return s;
}

ExactScalar ExactScalar::ln2() { return make(0, 0, 1, 0); }
ExactScalar ExactScalar::euler_gamma() { return make(0, 0, 0, 1); }
ExactScalar ExactScalar::pi_power(int pi_half_power) { return ExactScalar(Rational(1), pi_half_power); }

void ExactScalar::normalize() {
    a_.canonicalize();
    b_.canonicalize();
    c_.canonicalize();
    if (is_zero()) pi_half_power_ = 0;
}

bool ExactScalar::is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0; }

bool ExactScalar::is_pure() const { return b_ == 0 && c_ == 0; }

ExactScalar ExactScalar::operator-() const { return make(pi_half_power_, -a_, -b_, -c_); }

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (pi_half_power_ != o.pi_half_power_) {
        throw RepresentationError("ExactScalar: addition of different powers of pi");
    }
    a_ += o.a_;
    b_ += o.b_;
    c_ += o.c_;
    normalize();
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) { return *this += -o; }

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
    if (is_zero() || o.is_zero()) return *this = ExactScalar();
    if (!is_pure() && !o.is_pure()) {
        throw RepresentationError("ExactScalar: product of two transcendental-bearing values");
    }
    if (is_pure()) {
        const Rational f = a_;
        a_ = f * o.a_;
        b_ = f * o.b_;
        c_ = f * o.c_;
    } else {
        a_ *= o.a_;
        b_ *= o.a_;
        c_ *= o.a_;
    }
    pi_half_power_ += o.pi_half_power_;
    normalize();
    return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
    if (!o.is_pure()) throw RepresentationError("ExactScalar: division by a transcendental-bearing value");
    if (o.a_ == 0) throw DomainError("ExactScalar: division by zero");
    a_ /= o.a_;
    b_ /= o.a_;
    c_ /= o.a_;
    pi_half_power_ -= o.pi_half_power_;
    normalize();
    return *this;
}

bool operator==(const ExactScalar& x, const ExactScalar& y) {
    return x.pi_half_power_ == y.pi_half_power_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
}

std::string ExactScalar::canonical() const {
    std::ostringstream os;
    os << "pi^(" << pi_half_power_ << "/2)*(" << rational_string(a_) << " + " << rational_string(b_)
       << "*ln2 + " << rational_string(c_) << "*euler)";
    return os.str();
}

std::string ExactScalar::display() const {
    if (is_zero()) return "0";
    std::vector<std::pair<const Rational*, const char*>> terms;
    if (b_ != 0) terms.emplace_back(&b_, "ln2");
    if (c_ != 0) terms.emplace_back(&c_, "euler");
    if (a_ != 0) terms.emplace_back(&a_, "");

    std::string body;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Rational& q = *terms[i].first;
        const std::string symbol = terms[i].second;
        const bool negative = q < 0;
        if (i == 0) {
            if (negative) body += "-";
        } else {
            body += negative ? " - " : " + ";
        }
        const Rational mag = abs(q);
        if (symbol.empty()) {
            body += rational_string(mag);
        } else if (mag == 1) {
            body += symbol;
        } else {
            body += rational_string(mag) + "*" + symbol;
        }
    }
    if (pi_half_power_ == 0) return body;

    std::string prefix;
    if (pi_half_power_ == 2) {
        prefix = "pi";
    } else if (pi_half_power_ % 2 == 0) {
        prefix = "pi^" + std::to_string(pi_half_power_ / 2);
    } else {
        prefix = "pi^(" + std::to_string(pi_half_power_) + "/2)";
    }
    if (terms.size() > 1) return prefix + "*(" + body + ")";
    return prefix + "*" + body;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.display(); }

ExactScalar gamma_exact(HalfInteger x) {
    if (x.twice <= 0) throw DomainError("gamma_exact: argument must be a positive half-integer or integer");
    if (x.is_integer()) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(x.twice / 2 - 1));
        return ExactScalar(Rational(f));
    }
    // Γ(k + 1/2) = √π · Π_{i=1}^{k} (2i-1)/2
    Rational q(1);
    for (long t = 1; t < x.twice; t += 2) q *= ratio(t, 2);
    return ExactScalar(q, 1);
}

ExactScalar digamma_exact(HalfInteger x) {
    if (x.twice <= 0) throw DomainError("digamma_exact: argument must be a positive half-integer or integer");
    Rational h(0);
    if (x.is_integer()) {
        // ψ(k) = H_{k-1} - γ_E
        for (long i = 1; i < x.twice / 2; ++i) h += ratio(1, i);
        return ExactScalar::make(0, h, 0, -1);
    }
    // ψ(k + 1/2) = 2 Σ_{i=1}^{k} 1/(2i-1) - 2 ln2 - γ_E
    for (long t = 1; t < x.twice; t += 2) h += ratio(2, t);
    return ExactScalar::make(0, h, -2, -1);
}

double to_float(const ExactScalar& s) {
    if (s.is_zero()) return 0.0;
    mpf_class v = big_float(s.const_part()) + big_float(s.ln2_part()) * big_float(kLn2) +
                  big_float(s.euler_part()) * big_float(kEuler);
    const int p = s.pi_half_power();
    if (p != 0) {
        const mpf_class pi = big_float(kPi);
        mpf_class root_pi(0, kFloatBits);
        mpf_sqrt(root_pi.get_mpf_t(), pi.get_mpf_t());
        const mpf_class base = p > 0 ? root_pi : mpf_class(1 / root_pi, kFloatBits);
        mpf_class f(1, kFloatBits);
        mpf_pow_ui(f.get_mpf_t(), base.get_mpf_t(), static_cast<unsigned long>(p > 0 ? p : -p));
        v *= f;
    }
    return v.get_d();
}

}  // namespace bureshall::exact
