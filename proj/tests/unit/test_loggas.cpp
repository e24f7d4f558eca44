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


#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include "bureshall/errors.hpp"
#include "bureshall/loggas.hpp"

using namespace bureshall;
using namespace bureshall::loggas;
using doctest::Approx;

TEST_CASE("energy of a hand-worked configuration") {
    // n = 2, α = -1/2, λ = (1, 3):
    // W = ½(-2 ln 2 + ln 4 + ½ ln 3 + 4) = ¼ ln 3 + 2
    const auto p = EnsembleParams::from_dims(2, 2);
    const std::array<double, 2> x{1.0, 3.0};
    CHECK(energy(p, x) == Approx(0.25 * std::log(3.0) + 2.0).epsilon(1e-15));
}

TEST_CASE("energy is minus half the log joint density") {
    const auto p = EnsembleParams::from_dims(4, 6);
    const std::array<double, 4> x{0.3, 1.7, 2.2, 5.9};
    CHECK(energy(p, x) == Approx(-0.5 * log_jpd_unnormalized(p, x)).epsilon(1e-14));
    const std::array<double, 4> tie{0.3, 1.7, 1.7, 5.9};
    CHECK(std::isinf(energy(p, tie)));
    const std::array<double, 4> neg{-0.3, 1.7, 2.2, 5.9};
    CHECK(std::isinf(energy(p, neg)));
}

TEST_CASE("incremental energy change matches recomputation") {
    const auto p = EnsembleParams::from_dims(3, 5);
    std::vector<double> x{0.4, 2.5, 7.1};
    for (std::size_t i = 0; i < 3; ++i) {
        for (double to : {0.05, 1.3, 9.0}) {
            std::vector<double> y = x;
            y[i] = to;
            CHECK(energy_change(p, x, i, to) == Approx(energy(p, y) - energy(p, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("acceptance probability satisfies detailed balance") {
    for (double dw : {0.0, 0.1, 0.8, 3.0}) {
        CHECK(acceptance_probability(-dw) == 1.0);
        CHECK(acceptance_probability(dw) / acceptance_probability(-dw) == Approx(std::exp(-2 * dw)));
    }
}

TEST_CASE("counter generator depends only on seed and counter") {
    CounterRng a(7);
    a();
    a();
    const auto third = a();
    CounterRng b(7, 2);
    CHECK(b() == third);
    CHECK(CounterRng(8)() != CounterRng(7)());
}

TEST_CASE("configuration defaults and validation") {
    const auto p = EnsembleParams::from_dims(3, 3);
    const auto c = ChainConfig::defaults(p, 1000, 1);
    CHECK(c.thin == 150);
    CHECK(c.burn_in == 60000);
    CHECK(c.snapshot_count() == 1000);
    CHECK(c.lambda_cutoff == Approx(3 + 2 * p.alpha() + 10 * std::sqrt(3.0)));
    auto bad = c;
    bad.n_steps = bad.burn_in;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = c;
    bad.thin = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("chains are reproducible") {
    const auto p = EnsembleParams::from_dims(2, 3);
    auto c = ChainConfig::defaults(p, 500, 99);
    const auto r1 = run_chain(c);
    const auto r2 = run_chain(c);
    CHECK(r1.samples.values == r2.samples.values);
    c.seed = 100;
    CHECK(run_chain(c).samples.values != r1.samples.values);
    const auto multi = run_chains(c, 3);
    CHECK(multi.samples.size() == 1500);
}

TEST_CASE("n = 1 samples the Gamma law") {
    const auto p = EnsembleParams::from_dims(1, 2);
    const double a = p.alpha() + 1;
    const auto c = ChainConfig::defaults(p, 400000, 5);
    const auto r = run_chain(c);
    CHECK(r.max_energy_drift < 1e-9);
    CHECK_FALSE(r.acceptance_warning);
    const Histogram h = histogram(r.samples, 64, 0.0, c.lambda_cutoff);
    double worst = 0.0;
    for (std::size_t b = 0; b < 64; ++b) {
        const double lo = h.lo + b * h.bin_width();
        const double exact =
            (boost::math::gamma_p(a, lo + h.bin_width()) - boost::math::gamma_p(a, lo)) / h.bin_width();
        worst = std::max(worst, std::abs(h.density[b] - exact));
    }
    CHECK(worst < 0.02);
    const auto analytic = analytic_bin_averages(p, density::Ensemble::unrestricted, h);
    CHECK(sup_norm(h, analytic) == Approx(worst).epsilon(1e-6));
}

TEST_CASE("n = 2 chain against the exact averages") {
    const auto p = EnsembleParams::from_dims(2, 2);
    const auto r = run_chain(ChainConfig::defaults(p, 100000, 11));
    CHECK(r.acceptance_rate > kAcceptanceLow);
    CHECK(r.acceptance_rate < kAcceptanceHigh);
    const auto mu = fixed_trace_samples(r.samples);
    const auto pur = mc_entropy_estimate(mu, entropy::Quantity::purity);
    CHECK(std::abs(pur.mean - 0.875) < 4 * pur.std_error);
    const auto vn = mc_entropy_estimate(mu, entropy::Quantity::von_neumann);
    CHECK(std::abs(vn.mean - (2 * std::log(2.0) - 7.0 / 6)) < 4 * vn.std_error);
}

TEST_CASE("per-snapshot entropies") {
    const std::array<double, 2> mu{0.25, 0.75};
    CHECK(snapshot_entropy(mu, entropy::Quantity::purity) == Approx(0.625));
    CHECK(snapshot_entropy(mu, entropy::Quantity::linear) == Approx(0.375));
    CHECK(snapshot_entropy(mu, entropy::Quantity::von_neumann) ==
          Approx(-0.25 * std::log(0.25) - 0.75 * std::log(0.75)));
    CHECK(snapshot_entropy(mu, entropy::Quantity::hct, 3.0) == Approx((1 - 0.25 * 0.25 * 0.25 - 0.75 * 0.75 * 0.75) / 2));
}

TEST_CASE("histogram bookkeeping") {
    SampleSet s;
    s.dim = 2;
    s.values = {0.1, 0.6, 0.2, 1.4};
    const Histogram h = histogram(s, 2, 0.0, 1.0);
    CHECK(h.counts[0] == 2);
    CHECK(h.counts[1] == 1);
    CHECK(h.mass_inside == Approx(0.75));
    CHECK(h.density[0] == Approx(2.0 / (4 * 0.5)));
    const auto f = fixed_trace_samples(s);
    CHECK(f.row(0)[0] + f.row(0)[1] == Approx(1.0));
    std::ostringstream os;
    write_samples_csv(os, s, "lambda");
    CHECK(os.str().rfind("lambda_1,lambda_2\n", 0) == 0);
}

TEST_CASE("estimates need enough snapshots") {
    SampleSet s;
    s.dim = 2;
    s.values.assign(200, 0.5);
    CHECK_THROWS_AS(mc_entropy_estimate(s, entropy::Quantity::purity), DomainError);
}
