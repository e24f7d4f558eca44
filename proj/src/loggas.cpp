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


#include "bureshall/loggas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "bureshall/errors.hpp"
#include "bureshall/parallel.hpp"

namespace bureshall::loggas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Proposals per width adjustment during burn-in.
constexpr std::uint64_t kTuneWindow = 500;

std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::result_type CounterRng::operator()() {
    ++counter_;
    return splitmix64(seed_ + counter_ * 0x9e3779b97f4a7c15ULL);
}

ChainConfig ChainConfig::defaults(const EnsembleParams& p, std::uint64_t snapshots, std::uint64_t seed) {
    ChainConfig c(p);
    const double n = p.n();
    c.proposal_width = 0.5 * (n + 2.0 * p.alpha() + 1.0) / std::sqrt(n);
    c.lambda_cutoff = density::default_lambda_max(p);
    c.thin = 50 * static_cast<std::uint64_t>(p.n());
    c.burn_in = 20000 * static_cast<std::uint64_t>(p.n());
    c.n_steps = c.burn_in + snapshots * c.thin;
    c.seed = seed;
    return c;
}

void ChainConfig::validate() const {
    if (!(n_steps > burn_in)) throw DomainError("chain: n_steps must exceed burn_in");
    if (thin == 0) throw DomainError("chain: thin must be positive");
    if (!(proposal_width > 0) || !std::isfinite(proposal_width)) throw DomainError("chain: proposal_width must be > 0");
    if (!(lambda_cutoff > 0) || !std::isfinite(lambda_cutoff)) throw DomainError("chain: lambda_cutoff must be > 0");
}

double energy(const EnsembleParams& p, std::span<const double> positions) {
    const double a = p.alpha();
    double w = 0.0;
    for (double x : positions) {
        if (!(x > 0.0) || !std::isfinite(x)) return kInf;
        w += -a * std::log(x) + x;
    }
    for (std::size_t j = 0; j < positions.size(); ++j) {
        for (std::size_t k = j + 1; k < positions.size(); ++k) {
            const double d = std::abs(positions[j] - positions[k]);
            if (d == 0.0) return kInf;
            w += -2.0 * std::log(d) + std::log(positions[j] + positions[k]);
        }
    }
    return 0.5 * w;
}

double energy_change(const EnsembleParams& p, std::span<const double> positions, std::size_t i, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) return kInf;
    const double old = positions[i];
    double s = -p.alpha() * std::log(x / old) + (x - old);
    for (std::size_t k = 0; k < positions.size(); ++k) {
        if (k == i) continue;
        const double pk = positions[k];
        if (x == pk) return kInf;
        const double r = (old - pk) / (x - pk);
        s += std::log((x + pk) / (old + pk) * r * r);
    }
    return 0.5 * s;
}

double acceptance_probability(double delta_energy) {
    if (delta_energy <= 0.0) return 1.0;
    return std::exp(-2.0 * delta_energy);
}

ChainResult run_chain(const ChainConfig& config) {
    config.validate();
    const EnsembleParams& p = config.params;
    const std::size_t n = static_cast<std::size_t>(p.n());
    const double cutoff = config.lambda_cutoff;

    CounterRng rng(config.seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;

    ChainResult out;
    ChainState& st = out.final_state;
    st.positions.resize(n);
    for (std::size_t i = 0; i < n; ++i) st.positions[i] = cutoff * static_cast<double>(i + 1) / (2.0 * (n + 1));
    st.energy = energy(p, st.positions);

    out.samples.dim = n;
    out.samples.values.reserve(config.snapshot_count() * n);

    double width = config.proposal_width;
    std::uint64_t window_prop = 0, window_acc = 0;
    std::uint64_t post_prop = 0, post_acc = 0;

    for (std::uint64_t step = 0; step < config.n_steps; ++step) {
        const std::size_t i = step % n;
        const double y = st.positions[i] + width * normal(rng);
        bool accept = false;
        double dw = 0.0;
        if (y > 0.0 && y < cutoff) {
            dw = energy_change(p, st.positions, i, y);
            accept = dw <= 0.0 || uniform(rng) < acceptance_probability(dw);
        }
        ++st.proposed;
        if (accept) {
            st.positions[i] = y;
            st.energy += dw;
            ++st.accepted;
        }

        if (step < config.burn_in) {
            if (config.autotune) {
                ++window_prop;
                window_acc += accept;
                if (window_prop == kTuneWindow) {
                    const double rate = static_cast<double>(window_acc) / window_prop;
                    width = std::min(width * std::exp(2.0 * (rate - kTargetAcceptance)), cutoff);
                    window_prop = window_acc = 0;
                }
            }
        } else {
            ++post_prop;
            post_acc += accept;
            if ((step - config.burn_in + 1) % config.thin == 0) {
                out.samples.values.insert(out.samples.values.end(), st.positions.begin(), st.positions.end());
            }
        }

        if ((step + 1) % kEnergyRefresh == 0) {
            const double full = energy(p, st.positions);
            out.max_energy_drift = std::max(out.max_energy_drift, std::abs(st.energy - full));
            st.energy = full;
        }
    }

    out.acceptance_rate = post_prop == 0 ? 0.0 : static_cast<double>(post_acc) / post_prop;
    out.proposal_width = width;
    out.acceptance_warning = out.acceptance_rate < kAcceptanceLow || out.acceptance_rate > kAcceptanceHigh;
    return out;
}

ChainResult run_chains(const ChainConfig& config, unsigned chains) {
    if (chains == 0) throw DomainError("run_chains: requires at least one chain");
    if (chains == 1) return run_chain(config);
    std::vector<ChainResult> parts(chains);
    parallel_for(chains, [&](std::size_t c) {
        ChainConfig cc = config;
        cc.seed = CounterRng(config.seed, c)();
        parts[c] = run_chain(cc);
    });
    ChainResult out;
    out.samples.dim = parts.front().samples.dim;
    out.final_state = parts.back().final_state;
    for (const auto& r : parts) {
        out.samples.values.insert(out.samples.values.end(), r.samples.values.begin(), r.samples.values.end());
        out.acceptance_rate += r.acceptance_rate / chains;
        out.proposal_width += r.proposal_width / chains;
        out.max_energy_drift = std::max(out.max_energy_drift, r.max_energy_drift);
        out.acceptance_warning = out.acceptance_warning || r.acceptance_warning;
    }
    return out;
}

SampleSet fixed_trace_samples(const SampleSet& samples) {
    SampleSet out;
    out.dim = samples.dim;
    out.values.resize(samples.values.size());
    for (std::size_t r = 0; r < samples.size(); ++r) {
        const auto row = samples.row(r);
        double total = 0.0;
        for (double x : row) total += x;
        for (std::size_t i = 0; i < samples.dim; ++i) out.values[r * samples.dim + i] = row[i] / total;
    }
    return out;
}

double snapshot_entropy(std::span<const double> mu, entropy::Quantity q, double omega) {
    using entropy::Quantity;
    if (q == Quantity::hct && omega == 1.0) q = Quantity::von_neumann;
    double s = 0.0;
    switch (q) {
        case Quantity::von_neumann:
            for (double x : mu) {
                if (x > 0.0) s -= x * std::log(x);
            }
            return s;
        case Quantity::purity:
            for (double x : mu) s += x * x;
            return s;
        case Quantity::linear:
            for (double x : mu) s += x * x;
            return 1.0 - s;
        case Quantity::hct:
            for (double x : mu) s += std::pow(x, omega);
            return (1.0 - s) / (omega - 1.0);
    }
    return s;
}

Estimate mc_entropy_estimate(const SampleSet& fixed_samples, entropy::Quantity q, double omega) {
    constexpr std::size_t kBatches = 50;
    const std::size_t count = fixed_samples.size();
    if (count < 1000) throw DomainError("mc_entropy_estimate: requires at least 1000 snapshots");
    std::vector<double> v(count);
    double mean = 0.0;
    for (std::size_t r = 0; r < count; ++r) {
        v[r] = snapshot_entropy(fixed_samples.row(r), q, omega);
        mean += v[r];
    }
    mean /= static_cast<double>(count);

    const std::size_t per = count / kBatches;
    std::vector<double> bm(kBatches, 0.0);
    for (std::size_t b = 0; b < kBatches; ++b) {
        for (std::size_t r = b * per; r < (b + 1) * per; ++r) bm[b] += v[r];
        bm[b] /= static_cast<double>(per);
    }
    double bmean = 0.0;
    for (double x : bm) bmean += x;
    bmean /= kBatches;
    double var = 0.0;
    for (double x : bm) var += (x - bmean) * (x - bmean);
    var /= static_cast<double>(kBatches - 1);
    return {mean, std::sqrt(var / kBatches)};
}

Histogram histogram(const SampleSet& samples, std::size_t bins, double lo, double hi) {
    if (bins == 0 || !(hi > lo)) throw DomainError("histogram: requires bins > 0 and hi > lo");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0.0);
    const double w = h.bin_width();
    std::size_t inside = 0;
    for (double v : samples.values) {
        if (!(v >= lo && v < hi)) continue;
        const auto b = std::min(bins - 1, static_cast<std::size_t>((v - lo) / w));
        h.counts[b] += 1.0;
        ++inside;
    }
    const double total = static_cast<double>(samples.values.size());
    h.density.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) h.density[b] = total > 0 ? h.counts[b] / (total * w) : 0.0;
    h.mass_inside = total > 0 ? inside / total : 0.0;
    return h;
}

std::vector<double> analytic_bin_averages(const EnsembleParams& p, density::Ensemble e, const Histogram& h) {
    const std::size_t bins = h.counts.size();
    const double w = h.bin_width();
    const double n = p.n();
    std::vector<double> out(bins);
    auto one = [](double) { return 1.0; };
    if (e == density::Ensemble::unrestricted) {
        const density::UnrestrictedDensity r(p);
        for (std::size_t b = 0; b < bins; ++b) {
            const double a = h.lo + b * w;
            out[b] = density::integrate_unrestricted(r, one, a, a + w).value / (n * w);
        }
    } else {
        const density::FixedTraceDensity r(p);
        for (std::size_t b = 0; b < bins; ++b) {
            const double a = h.lo + b * w;
            const double end = b + 1 == bins ? h.hi : a + w;
            out[b] = density::integrate_fixed(r, one, a, std::min(end, 1.0)).value / (n * w);
        }
    }
    return out;
}

double sup_norm(const Histogram& h, std::span<const double> reference) {
    if (reference.size() != h.density.size()) throw DomainError("sup_norm: bin count mismatch");
    double s = 0.0;
    for (std::size_t b = 0; b < reference.size(); ++b) s = std::max(s, std::abs(h.density[b] - reference[b]));
    return s;
}

void write_samples_csv(std::ostream& os, const SampleSet& samples, const std::string& prefix) {
    for (std::size_t i = 0; i < samples.dim; ++i) os << (i ? "," : "") << prefix << '_' << (i + 1);
    os << '\n';
    char buf[32];
    for (std::size_t r = 0; r < samples.size(); ++r) {
        const auto row = samples.row(r);
        for (std::size_t i = 0; i < samples.dim; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            os << (i ? "," : "") << buf;
        }
        os << '\n';
    }
}

}  // namespace bureshall::loggas
