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
 * @brief Pfaffians: a generic skew-symmetric elimination for any scalar type
 *        and the closed-form products for the moment matrix H and its minors.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "bureshall/ensemble.hpp"
#include "bureshall/errors.hpp"
#include "bureshall/exact.hpp"

namespace bureshall::pfaffian {

/// Dense antisymmetric matrix, row-major, 0-based storage.
template <class T>
class SkewMatrix {
public:
    SkewMatrix() = default;
    explicit SkewMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, T(0)) {}

    std::size_t dim() const { return dim_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    /// Sets A(i,j) = v and A(j,i) = -v.
    void set(std::size_t i, std::size_t j, const T& v) {
        (*this)(i, j) = v;
        (*this)(j, i) = -v;
    }

    /// Copy with rows/columns i and j (0-based) removed.
    SkewMatrix without(std::size_t i, std::size_t j) const {
        SkewMatrix out(dim_ - 2);
        std::size_t r = 0;
        for (std::size_t a = 0; a < dim_; ++a) {
            if (a == i || a == j) continue;
            std::size_t c = 0;
            for (std::size_t b = 0; b < dim_; ++b) {
                if (b == i || b == j) continue;
                out(r, c++) = (*this)(a, b);
            }
            ++r;
        }
        return out;
    }

private:
    std::size_t dim_ = 0;
    std::vector<T> data_;
};

namespace detail {

inline double pivot_weight(double x) { return std::abs(x); }
inline long double pivot_weight(long double x) { return std::abs(x); }
inline double pivot_weight(const exact::ExactScalar& x) { return x.is_zero() ? 0.0 : 1.0; }

inline bool skew_ok(double a, double b, double tol) {
    const double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a + b) <= tol * scale;
}
inline bool skew_ok(long double a, long double b, double tol) {
    return skew_ok(static_cast<double>(a), static_cast<double>(b), tol);
}
inline bool skew_ok(const exact::ExactScalar& a, const exact::ExactScalar& b, double) { return (a + b).is_zero(); }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(long double x) { return x == 0.0L; }
inline bool is_zero(const exact::ExactScalar& x) { return x.is_zero(); }

}  // namespace detail

/// Throws DomainError unless A is skew-symmetric (to 1e-12 relative for
/// floating point, exactly otherwise).
template <class T>
void require_skew(const SkewMatrix<T>& a, double tol = 1e-12) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = i; j < a.dim(); ++j) {
            if (!detail::skew_ok(a(i, j), a(j, i), tol)) {
                throw DomainError("pfaffian: matrix is not skew-symmetric");
            }
        }
    }
}

/// Pf[A] by skew-symmetric Gaussian elimination with partial pivoting
/// (Parlett-Reid). Each pivot interchange flips the sign. Pf of the empty
/// matrix is 1.
template <class T>
T pfaffian_generic(SkewMatrix<T> a) {
    const std::size_t n = a.dim();
    if (n % 2 != 0) throw DomainError("pfaffian: dimension must be even");
    require_skew(a);
    T result(1);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t kp = k + 1;
        double best = detail::pivot_weight(a(k + 1, k));
        for (std::size_t i = k + 2; i < n; ++i) {
            const double w = detail::pivot_weight(a(i, k));
            if (w > best) {
                best = w;
                kp = i;
            }
        }
        if (kp != k + 1) {
            for (std::size_t i = 0; i < n; ++i) std::swap(a(k + 1, i), a(kp, i));
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, kp));
            result = -result;
        }
        const T pivot = a(k, k + 1);
        if (detail::is_zero(pivot)) return T(0);
        result *= pivot;
        if (k + 2 >= n) continue;

        std::vector<T> tau;
        tau.reserve(n - k - 2);
        for (std::size_t i = k + 2; i < n; ++i) tau.push_back(a(k, i) / pivot);
        for (std::size_t i = k + 2; i < n; ++i) {
            for (std::size_t j = k + 2; j < n; ++j) {
                a(i, j) += tau[i - k - 2] * a(j, k + 1) - tau[j - k - 2] * a(i, k + 1);
            }
        }
    }
    return result;
}

// Moment matrix H ----------------------------------------------------------
//
// H_{jk} = (k-j)/(j+k+2α) Γ(j+α)Γ(k+α) for j,k <= n; for odd n a border
// H_{j,n+1} = Γ(j+α). Indices in the API below are 1-based as in the formulas.

SkewMatrix<double> build_H(const EnsembleParams& p);
/// Entries rounded to long double; H is ill-conditioned enough at n = 8 that
/// double entries limit the eliminated Pfaffian to about 1e-9.
SkewMatrix<long double> build_H_extended(const EnsembleParams& p);
SkewMatrix<exact::ExactScalar> build_H_exact(const EnsembleParams& p);

/// Closed form π^{n/2}/(2^{n²+2αn} n!) Π Γ(k+1)Γ(k+2α+1)/Γ(k+α+1/2).
LogValue log_pf_H_closed(const EnsembleParams& p);
double pf_H_closed(const EnsembleParams& p);
exact::ExactScalar pf_H_closed_exact(const EnsembleParams& p);

/// Pf[H^(j,k)] as the restricted product
///   Π_{r<s; r,s ∉ {j,k}} (s-r)/(r+s+2α) · Π_{l ∉ {j,k}} Γ(l+α),
/// with r, s, l running over 1..n. Requires 1 <= j < k <= N.
LogValue log_pf_H_minor(const EnsembleParams& p, int j, int k);
double pf_H_minor(const EnsembleParams& p, int j, int k);
exact::ExactScalar pf_H_minor_exact(const EnsembleParams& p, int j, int k);

}  // namespace bureshall::pfaffian
