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

#pragma once

#include <stdexcept>
#include <string>

namespace bureshall {

/// Argument outside the domain of a function or formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Argument sits on a pole (non-positive integer for Γ, ψ, B).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Requested quantity is well defined but not evaluated by this routine.
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Exact-arithmetic operation would leave the representable set.
class RepresentationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An internal identity that must hold exactly (or to rounding) did not.
class SelfCheckError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Numerical integration failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error)
        : std::runtime_error(what), estimate_(estimate), error_(error) {}

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

}  // namespace bureshall
