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

#include "bureshall/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>

#include "bureshall/detail/specfun_impl.hpp"
#include "bureshall/errors.hpp"
#include "bureshall/parallel.hpp"
#include "bureshall/pfaffian.hpp"

namespace bureshall::density {

namespace {

using Quad = boost::multiprecision::float128;
using Wide = boost::multiprecision::cpp_bin_float_50;

// A quad-precision result is trusted up to this cancellation; beyond it the
// point is recomputed with 50 digits.
constexpr double kQuadCancellationLimit = 1e18;

template <class Real>
Real lgam(const Real& x) {
    int sign = 1;
    return boost::math::lgamma(x, &sign);
}

template <class Real>
struct Accumulator {
    Real sum = 0;
    Real comp = 0;
    Real abs_sum = 0;

    void add(const Real& t) {
        using std::abs;
        const Real s = sum + t;
        if (abs(sum) >= abs(t)) {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
        abs_sum += abs(t);
    }
    Real total() const { return sum + comp; }
};

// ln C in working precision.
template <class Real>
Real log_C(const EnsembleParams& p) {
    using std::log;
    const int n = p.n();
    const Real a = p.alpha();
    const Real half = Real(1) / 2;
    Real v = (Real(n) * n + 2 * a * n) * log(Real(2)) - half * n * log(boost::math::constants::pi<Real>());
    for (int j = 1; j <= n; ++j) {
        v += lgam(Real(j + a + half)) - lgam(Real(j + 1)) - lgam(Real(j + 2 * a + 1));
    }
    return v;
}

// ln Pf[H^(j,k)] in working precision; all minors are positive.
template <class Real>
Real log_pf_minor(const EnsembleParams& p, int j, int k) {
    using std::log;
    const int n = p.n();
    const Real a = p.alpha();
    Real v = 0;
    for (int r = 1; r <= n; ++r) {
        if (r == j || r == k) continue;
        v += lgam(Real(r + a));
        for (int s = r + 1; s <= n; ++s) {
            if (s == j || s == k) continue;
            v += log(Real(s - r) / (r + s + 2 * a));
        }
    }
    return v;
}

// Pair coefficients (-1)^{j+k} n! c Pf[H^(j,k)] stored as (log magnitude, sign).
template <class Real>
struct PairTable {
    int N = 0;
    std::vector<Real> log_mag;
    std::vector<int> sign;

    PairTable(const EnsembleParams& p, const Real& log_norm) : N(p.N()), log_mag(N * N), sign(N * N) {
        const Real log_nfact = lgam(Real(p.n() + 1));
        for (int j = 1; j <= N; ++j) {
            for (int k = j + 1; k <= N; ++k) {
                log_mag[idx(j, k)] = log_nfact + log_norm + log_pf_minor<Real>(p, j, k);
                sign[idx(j, k)] = (j + k) % 2 == 0 ? 1 : -1;
            }
        }
    }
    std::size_t idx(int j, int k) const { return static_cast<std::size_t>((j - 1) * N + (k - 1)); }
};

template <class Real>
class UnrestrictedEval {
public:
    explicit UnrestrictedEval(const EnsembleParams& p)
        : n_(p.n()), N_(p.N()), a_(p.alpha()), pairs_(p, log_C<Real>(p)), lg_(n_ + 1) {
        for (int k = 1; k <= n_; ++k) lg_[k] = lgam(Real(k + a_));
    }

    Accumulator<Real> operator()(const Real& lambda) const {
        using std::exp;
        using std::log;
        const Real lm = log(lambda);
        std::vector<Real> log_f(n_ + 1), bracket(n_ + 1);
        for (int j = 1; j <= n_; ++j) {
            log_f[j] = (j + a_ - 1) * lm - lambda;
            bracket[j] = 2 * lambda * specfun::detail::exp_integral_scaled(Real(j + a_), lambda) - 1;
        }
        Accumulator<Real> acc;
        for (int j = 1; j <= N_; ++j) {
            for (int k = j + 1; k <= N_; ++k) {
                const Real c = pairs_.log_mag[pairs_.idx(j, k)];
                const int s = pairs_.sign[pairs_.idx(j, k)];
                if (k <= n_) {
                    // F_j G_k - F_k G_j
                    acc.add(s * exp(c + log_f[j] + lg_[k]) * bracket[k]);
                    acc.add(-s * exp(c + log_f[k] + lg_[j]) * bracket[j]);
                } else {
                    // G_{n+1} = -1, F_{n+1} = 0
                    acc.add(-s * exp(c + log_f[j]));
                }
            }
        }
        return acc;
    }

private:
    int n_;
    int N_;
    Real a_;
    PairTable<Real> pairs_;
    std::vector<Real> lg_;
};

// Ψ_{j,k}(μ) = Γ(k+α) μ^{j+α-1} [ 2μ^{k+α} Γ(1-k-α)/Γ(1-j-k-α+γ)
//                                 - 2μ^{k+α} B_μ(1-k-α, γ-j)/Γ(γ-j)
//                                 - (1-μ)^{γ-j}/Γ(γ-j+1) ]
// Away from μ = 0 the complement B_μ = B - B_{1-μ} cancels the first term exactly:
//   Ψ_{j,k} = Γ(k+α) μ^{j+α-1} (1-μ)^{γ-j} [ 2μ^{k+α} B_{1-μ}(γ-j, 1-k-α)/(Γ(γ-j)(1-μ)^{γ-j})
//                                          - 1/Γ(γ-j+1) ].
template <class Real>
class FixedTraceEval {
public:
    explicit FixedTraceEval(const EnsembleParams& p)
        : n_(p.n()),
          N_(p.N()),
          a_(p.alpha()),
          pairs_(p, lgam(Real(Real(p.n()) * (p.n() + 2 * Real(p.alpha()) + 1) / 2)) + log_C<Real>(p)),
          lg_(n_ + 1),
          b_(n_ + 1),
          rg_b_(n_ + 1),
          rg_b1_(n_ + 1),
          k1_((n_ + 1) * (n_ + 1)) {
        using std::exp;
        const Real gam = Real(n_ - 1) * (n_ + 2 * a_ + 2) / 2;
        for (int k = 1; k <= n_; ++k) lg_[k] = lgam(Real(k + a_));
        for (int j = 1; j <= n_; ++j) {
            b_[j] = gam - j;
            rg_b_[j] = specfun::detail::rgamma(b_[j]);
            rg_b1_[j] = specfun::detail::rgamma(Real(b_[j] + 1));
        }
        for (int j = 1; j <= n_; ++j) {
            for (int k = 1; k <= n_; ++k) {
                const Real one_minus_ak = 1 - k - a_;
                int sign = 1;
                const Real lg = specfun::detail::log_abs_gamma(one_minus_ak, sign);
                k1_[j * (n_ + 1) + k] = 2 * sign * exp(lg) * specfun::detail::rgamma(Real(one_minus_ak + b_[j]));
            }
        }
    }

    Accumulator<Real> operator()(const Real& mu, const Real& omm) const {
        using std::exp;
        using std::log;
        const Real lm = log(mu);
        const Real l1 = log(omm);
        // Ψ_{j,k} = Γ(k+α) μ^{j+α-1} ψ̃_{j,k}; the reduced values carry no large prefactors.
        std::vector<Real> reduced((n_ + 1) * (n_ + 1));
        for (int j = 1; j <= n_; ++j) {
            const Real& b = b_[j];
            const Real xb = exp(b * l1);
            // The direct series loses about e^{2μb} to cancellation, so it is
            // kept for small μb; the continued fraction covers the rest.
            const bool direct = mu * std::max(b, Real(1)) < Real(1) / 20;
            for (int k = 1; k <= n_; ++k) {
                if (k == j) continue;
                const Real ak = k + a_;
                Real v;
                if (direct || (b <= 0 && mu <= Real(1) / 2)) {
                    v = exp(ak * lm) * k1_[j * (n_ + 1) + k] - xb * rg_b1_[j];
                    if (rg_b_[j] != 0) {
                        v -= 2 * mu * rg_b_[j] * specfun::detail::inc_beta_series_unscaled(Real(1 - ak), b, mu);
                    }
                } else if (b <= 0) {
                    const Real l = specfun::detail::lower_beta_over_gamma_unscaled(b, Real(1 - ak), omm, rg_b1_[j]);
                    v = xb * (2 * exp(ak * lm) * l - rg_b1_[j]);
                } else {
                    // B_{1-μ}(b, 1-a) = (1-μ)^b μ^{1-a} cf / b
                    v = xb * rg_b1_[j] * (2 * mu * specfun::detail::beta_cf(b, Real(1 - ak), omm) - 1);
                }
                reduced[j * (n_ + 1) + k] = v;
            }
        }
        Accumulator<Real> acc;
        for (int j = 1; j <= N_; ++j) {
            for (int k = j + 1; k <= N_; ++k) {
                const Real c = pairs_.log_mag[pairs_.idx(j, k)];
                const int s = pairs_.sign[pairs_.idx(j, k)];
                if (k <= n_) {
                    acc.add(s * exp(c + lg_[k] + (j + a_ - 1) * lm) * reduced[j * (n_ + 1) + k]);
                    acc.add(-s * exp(c + lg_[j] + (k + a_ - 1) * lm) * reduced[k * (n_ + 1) + j]);
                } else {
                    // Ψ_{j,n+1} = -μ^{j+α-1}(1-μ)^{γ-j}/Γ(γ-j+1); Ψ_{n+1,k} = 0
                    acc.add(-s * exp(c + (j + a_ - 1) * lm + b_[j] * l1) * rg_b1_[j]);
                }
            }
        }
        return acc;
    }

private:
    int n_;
    int N_;
    Real a_;
    PairTable<Real> pairs_;
    std::vector<Real> lg_;
    std::vector<Real> b_;
    std::vector<Real> rg_b_;
    std::vector<Real> rg_b1_;
    std::vector<Real> k1_;
};

template <class Acc>
double ratio(const Acc& acc) {
    using std::abs;
    const auto total = abs(acc.total());
    if (total == 0) return acc.abs_sum == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    return static_cast<double>(acc.abs_sum / total);
}

}  // namespace

// UnrestrictedDensity ----------------------------------------------------------

struct UnrestrictedDensity::Impl {
    explicit Impl(const EnsembleParams& p) : params(p), fast(p), quad(p), wide(p) {}
    EnsembleParams params;
    UnrestrictedEval<double> fast;
    UnrestrictedEval<Quad> quad;
    UnrestrictedEval<Wide> wide;
};

UnrestrictedDensity::UnrestrictedDensity(const EnsembleParams& p) : impl_(std::make_unique<Impl>(p)) {}
UnrestrictedDensity::~UnrestrictedDensity() = default;
UnrestrictedDensity::UnrestrictedDensity(UnrestrictedDensity&&) noexcept = default;
UnrestrictedDensity& UnrestrictedDensity::operator=(UnrestrictedDensity&&) noexcept = default;

const EnsembleParams& UnrestrictedDensity::params() const { return impl_->params; }

EvalInfo UnrestrictedDensity::evaluate_info(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("level_density_unrestricted: requires lambda > 0");
    const auto acc = impl_->fast(lambda);
    EvalInfo info{acc.total(), ratio(acc), false};
    if (info.cancellation > kCancellationLimit) {
        info.extended = true;
        const auto q = impl_->quad(Quad(lambda));
        info.value = static_cast<double>(q.total());
        if (ratio(q) > kQuadCancellationLimit) info.value = static_cast<double>(impl_->wide(Wide(lambda)).total());
    }
    return info;
}

double UnrestrictedDensity::operator()(double lambda) const { return evaluate_info(lambda).value; }

// FixedTraceDensity ------------------------------------------------------------

struct FixedTraceDensity::Impl {
    explicit Impl(const EnsembleParams& p) : params(p), fast(p), quad(p), wide(p) {}
    EnsembleParams params;
    FixedTraceEval<double> fast;
    FixedTraceEval<Quad> quad;
    FixedTraceEval<Wide> wide;
};

namespace {

const EnsembleParams& check_fixed_supported(const EnsembleParams& p) {
    if (p.n() == 1) throw UnsupportedError("level_density_fixed: n = 1 is a point mass at mu = 1");
    if (specfun::detail::is_integer(p.alpha())) {
        throw UnsupportedError("level_density_fixed: integer alpha puts 1-k-alpha on a pole of the continuation");
    }
    return p;
}

}  // namespace

FixedTraceDensity::FixedTraceDensity(const EnsembleParams& p)
    : impl_(std::make_unique<Impl>(check_fixed_supported(p))) {}
FixedTraceDensity::~FixedTraceDensity() = default;
FixedTraceDensity::FixedTraceDensity(FixedTraceDensity&&) noexcept = default;
FixedTraceDensity& FixedTraceDensity::operator=(FixedTraceDensity&&) noexcept = default;

const EnsembleParams& FixedTraceDensity::params() const { return impl_->params; }

EvalInfo FixedTraceDensity::evaluate_info(double mu, double one_minus_mu) const {
    // μ may round to 1 when 1-μ is carried separately.
    if (!(mu > 0.0 && mu <= 1.0) || !(one_minus_mu > 0.0 && one_minus_mu <= 1.0)) {
        throw DomainError("level_density_fixed: requires 0 < mu < 1");
    }
    const auto acc = impl_->fast(mu, one_minus_mu);
    EvalInfo info{acc.total(), ratio(acc), false};
    if (info.cancellation > kCancellationLimit) {
        info.extended = true;
        const auto q = impl_->quad(Quad(mu), Quad(one_minus_mu));
        info.value = static_cast<double>(q.total());
        if (ratio(q) > kQuadCancellationLimit) {
            info.value = static_cast<double>(impl_->wide(Wide(mu), Wide(one_minus_mu)).total());
        }
    }
    return info;
}

double FixedTraceDensity::evaluate(double mu, double one_minus_mu) const {
    return evaluate_info(mu, one_minus_mu).value;
}

double FixedTraceDensity::operator()(double mu) const { return evaluate(mu, 1.0 - mu); }

double level_density_unrestricted(const EnsembleParams& p, double lambda) {
    return UnrestrictedDensity(p)(lambda);
}

double level_density_fixed(const EnsembleParams& p, double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("level_density_fixed: requires 0 < mu < 1");
    return FixedTraceDensity(p)(mu);
}

// Block layout: [a-block (r)] [b-block (r)] [H-block (N)].
double correlation_unrestricted(const EnsembleParams& p, std::span<const double> points) {
    const std::size_t r = points.size();
    if (r == 0) throw DomainError("correlation_unrestricted: at least one point required");
    for (std::size_t i = 0; i < r; ++i) {
        if (!(points[i] > 0.0)) throw DomainError("correlation_unrestricted: points must be positive");
        for (std::size_t l = i + 1; l < r; ++l) {
            if (points[i] == points[l]) throw DomainError("correlation_unrestricted: points must be distinct");
        }
    }
    const int N = p.N();
    const auto h = pfaffian::build_H(p);
    pfaffian::SkewMatrix<double> m(2 * r + N);
    for (std::size_t i = 0; i < r; ++i) {
        for (int k = 1; k <= N; ++k) {
            m.set(i, 2 * r + k - 1, kernel_f(p, k, points[i]));
            m.set(r + i, 2 * r + k - 1, kernel_G(p, k, points[i]));
        }
        for (std::size_t l = i + 1; l < r; ++l) m.set(r + i, r + l, kernel_g(points[i], points[l]));
    }
    for (int j = 0; j < N; ++j) {
        for (int k = j + 1; k < N; ++k) m.set(2 * r + j, 2 * r + k, h(j, k));
    }
    const double pf = pfaffian::pfaffian_generic(std::move(m));
    const double sign = (r * (r - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    const LogValue front = log_gamma_value(p.n() + 1.0) * log_normalization_C(p);
    return sign * front.value() * pf;
}

// Quadrature --------------------------------------------------------------------

namespace {

void check_quadrature(const char* what, double error, double l1, double max_rel_error, double value) {
    if (!(error <= max_rel_error * l1) && !(error <= 1e-300)) {
        throw QuadratureError(std::string(what) + ": error estimate above tolerance", value, error);
    }
}

}  // namespace

QuadratureResult integrate_unrestricted(const UnrestrictedDensity& r, const std::function<double(double)>& weight,
                                        double max_rel_error) {
    const EnsembleParams& p = r.params();
    const double split = std::max(1.0, p.n() + 2.0 * p.alpha() + 1.0);
    auto f = [&](double x) -> double {
        if (!(x > 0.0) || !std::isfinite(x)) return 0.0;
        // far in the tail the density underflows while λ^ω may overflow
        const double d = r(x);
        return d == 0.0 ? 0.0 : weight(x) * d;
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    double err1 = 0.0, l1a = 0.0, err2 = 0.0, l1b = 0.0;
    const double head = ts.integrate(f, 0.0, split, 1e-13, &err1, &l1a);
    const double tail = es.integrate(f, split, std::numeric_limits<double>::infinity(), 1e-13, &err2, &l1b);
    QuadratureResult out{head + tail, err1 + err2};
    check_quadrature("integrate_unrestricted", out.error, l1a + l1b, max_rel_error, out.value);
    return out;
}

QuadratureResult integrate_unrestricted(const UnrestrictedDensity& r, const std::function<double(double)>& weight,
                                        double a, double b, double max_rel_error) {
    if (!(a >= 0.0 && a < b && std::isfinite(b))) throw DomainError("integrate_unrestricted: requires 0 <= a < b < inf");
    auto f = [&](double x) -> double {
        if (!(x > 0.0)) return 0.0;
        const double d = r(x);
        return d == 0.0 ? 0.0 : weight(x) * d;
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0, l1 = 0.0;
    const double v = ts.integrate(f, a, b, 1e-13, &err, &l1);
    check_quadrature("integrate_unrestricted", err, l1, max_rel_error, v);
    return {v, err};
}

QuadratureResult integrate_fixed(const FixedTraceDensity& r, const std::function<double(double)>& weight, double a,
                                 double b, double max_rel_error) {
    if (!(a >= 0.0 && a < b && b <= 1.0)) throw DomainError("integrate_fixed: requires 0 <= a < b <= 1");
    auto f = [&](double x, double xc) -> double {
        // xc is the signed distance to the nearer endpoint: a - x for the left half, b - x for the right.
        const double mu = (a == 0.0 && xc < 0.0) ? -xc : x;
        const double omm = (b == 1.0 && xc > 0.0) ? xc : 1.0 - x;
        if (!(mu > 0.0) || !(omm > 0.0)) return 0.0;
        const double w = weight(mu);
        return w == 0.0 ? 0.0 : w * r.evaluate(mu, omm);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0, l1 = 0.0;
    const double v = ts.integrate(f, a, b, 1e-13, &err, &l1);
    check_quadrature("integrate_fixed", err, l1, max_rel_error, v);
    return {v, err};
}

QuadratureResult unrestricted_moment(const EnsembleParams& p, double omega) {
    const UnrestrictedDensity r(p);
    return integrate_unrestricted(r, [omega](double x) { return omega == 0.0 ? 1.0 : std::pow(x, omega); });
}

QuadratureResult fixed_trace_moment(const EnsembleParams& p, double omega) {
    if (p.n() == 1) return {1.0, 0.0};
    const FixedTraceDensity r(p);
    return integrate_fixed(r, [omega](double x) { return omega == 0.0 ? 1.0 : std::pow(x, omega); });
}

// Tabulation --------------------------------------------------------------------

std::string ensemble_name(Ensemble e) { return e == Ensemble::unrestricted ? "unrestricted" : "fixed_trace"; }

Ensemble parse_ensemble(const std::string& s) {
    if (s == "unrestricted") return Ensemble::unrestricted;
    if (s == "fixed" || s == "fixed_trace" || s == "fixed-trace") return Ensemble::fixed_trace;
    throw DomainError("unknown ensemble '" + s + "' (expected fixed or unrestricted)");
}

std::string spacing_name(Spacing s) { return s == Spacing::chebyshev ? "chebyshev" : "uniform"; }

Spacing parse_spacing(const std::string& s) {
    if (s == "chebyshev") return Spacing::chebyshev;
    if (s == "uniform") return Spacing::uniform;
    throw DomainError("unknown spacing '" + s + "' (expected chebyshev or uniform)");
}

double default_lambda_max(const EnsembleParams& p) {
    return p.n() + 2.0 * p.alpha() + 10.0 * std::sqrt(static_cast<double>(p.n()));
}

Grid make_grid(Spacing spacing, std::size_t points, double upper) {
    if (points < 2) throw DomainError("make_grid: at least 2 points required");
    if (!(upper > 0.0) || !std::isfinite(upper)) throw DomainError("make_grid: upper end must be positive");
    const double pi = boost::math::constants::pi<double>();
    const double count = static_cast<double>(points);
    Grid g;
    g.x.resize(points);
    g.complement.resize(points);
    g.weight.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        if (spacing == Spacing::chebyshev) {
            const double theta = pi * (static_cast<double>(i) + 0.5) / count;
            const double s = std::sin(0.5 * theta);
            const double c = std::cos(0.5 * theta);
            g.x[i] = upper * s * s;
            g.complement[i] = upper * c * c;
            g.weight[i] = (pi / count) * 0.5 * upper * std::sin(theta);
        } else {
            g.x[i] = upper * (static_cast<double>(i) + 0.5) / count;
            g.complement[i] = upper * (count - static_cast<double>(i) - 0.5) / count;
            g.weight[i] = upper / count;
        }
    }
    return g;
}

std::vector<double> DensityCurve::marginal() const {
    std::vector<double> out(density.size());
    for (std::size_t i = 0; i < density.size(); ++i) out[i] = density[i] / params.n();
    return out;
}

DensityCurve tabulate_density(const EnsembleParams& p, Ensemble ensemble, const GridSpec& grid) {
    DensityCurve curve(ensemble, p);
    if (ensemble == Ensemble::fixed_trace && p.n() == 1) {
        curve.dirac = true;
        curve.normalization = 1.0;
        return curve;
    }
    const Spacing spacing = grid.spacing.value_or(ensemble == Ensemble::fixed_trace ? Spacing::chebyshev
                                                                                   : Spacing::uniform);
    double upper = 1.0;
    if (ensemble == Ensemble::unrestricted) {
        upper = grid.lambda_max.value_or(default_lambda_max(p));
        if (!(upper > 0.0)) throw DomainError("tabulate_density: lambda_max must be positive");
    }
    Grid g = make_grid(spacing, grid.points, upper);
    curve.density.assign(grid.points, 0.0);
    if (ensemble == Ensemble::unrestricted) {
        const UnrestrictedDensity r(p);
        parallel_for(grid.points, [&](std::size_t i) { curve.density[i] = r(g.x[i]); });
    } else {
        const FixedTraceDensity r(p);
        parallel_for(grid.points, [&](std::size_t i) { curve.density[i] = r.evaluate(g.x[i], g.complement[i]); });
    }
    double mass = 0.0;
    for (std::size_t i = 0; i < grid.points; ++i) mass += g.weight[i] * curve.density[i];
    curve.x = std::move(g.x);
    curve.weight = std::move(g.weight);
    curve.normalization = mass;
    return curve;
}

}  // namespace bureshall::density
