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
 * @brief Metropolis-Hastings sampling of the unrestricted ensemble read as a
 *        log-gas at β = 2, fixed-trace samples by normalization, and Monte
 *        Carlo estimates of the entropies and marginal densities.
 *
 * The joint density is e^{-2W} with
 *   W = ½(-2 Σ_{j<k} ln|λ_j-λ_k| + Σ_{j<k} ln(λ_j+λ_k) - α Σ ln λ_i + Σ λ_i).
 */

#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bureshall/density.hpp"
#include "bureshall/ensemble.hpp"
#include "bureshall/entropy.hpp"

namespace bureshall::loggas {

/// SplitMix64 evaluated at (seed, counter): the k-th draw depends only on the
/// seed and k. Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) : seed_(seed), counter_(counter) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()();

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

/// One step is one single-particle proposal; snapshots are taken every `thin`
/// steps after burn-in, so a chain yields (n_steps - burn_in) / thin of them.
struct ChainConfig {
    explicit ChainConfig(const EnsembleParams& p) : params(p) {}

    EnsembleParams params;
    std::uint64_t n_steps = 0;
    std::uint64_t burn_in = 0;
    std::uint64_t thin = 1;
    double proposal_width = 1.0;
    double lambda_cutoff = 1.0;
    std::uint64_t seed = 0;
    /// Adjust the width during burn-in towards kTargetAcceptance.
    bool autotune = true;

    /// Defaults: width 0.5(n+2α+1)/√n, cutoff n+2α+10√n, thin 50n,
    /// burn-in 2·10⁴·n steps, and enough steps for `snapshots` snapshots.
    static ChainConfig defaults(const EnsembleParams& p, std::uint64_t snapshots, std::uint64_t seed);

    /// Throws DomainError on n_steps <= burn_in, thin = 0, width or cutoff <= 0.
    void validate() const;
    std::uint64_t snapshot_count() const { return n_steps > burn_in ? (n_steps - burn_in) / thin : 0; }
};

inline constexpr double kTargetAcceptance = 0.35;
inline constexpr double kAcceptanceLow = 0.15;
inline constexpr double kAcceptanceHigh = 0.6;
/// Steps between full recomputations of W.
inline constexpr std::uint64_t kEnergyRefresh = 10000;

struct ChainState {
    std::vector<double> positions;
    double energy = 0.0;
    std::uint64_t accepted = 0;
    std::uint64_t proposed = 0;

    double acceptance_rate() const { return proposed == 0 ? 0.0 : static_cast<double>(accepted) / proposed; }
};

/// W(λ); +inf when a position is <= 0 or two positions coincide.
double energy(const EnsembleParams& p, std::span<const double> positions);

/// W after moving particle i to x, minus W before, from the terms involving i only.
double energy_change(const EnsembleParams& p, std::span<const double> positions, std::size_t i, double x);

/// min(1, e^{-2ΔW}).
double acceptance_probability(double delta_energy);

/// Snapshots stored row-major, `dim` values per row.
struct SampleSet {
    std::size_t dim = 0;
    std::vector<double> values;

    std::size_t size() const { return dim == 0 ? 0 : values.size() / dim; }
    std::span<const double> row(std::size_t i) const { return {values.data() + i * dim, dim}; }
};

struct ChainResult {
    SampleSet samples;
    ChainState final_state;
    /// Post-burn-in acceptance rate.
    double acceptance_rate = 0.0;
    /// Width in use after burn-in tuning.
    double proposal_width = 0.0;
    /// Largest |W_incremental - W_recomputed| seen at the periodic refresh.
    double max_energy_drift = 0.0;
    /// Acceptance rate outside [kAcceptanceLow, kAcceptanceHigh].
    bool acceptance_warning = false;
};

/// Runs one chain. Deterministic in (config, seed).
ChainResult run_chain(const ChainConfig& config);

/// Runs `chains` chains with seeds derived from config.seed, concurrently, and
/// concatenates their snapshots in chain order.
ChainResult run_chains(const ChainConfig& config, unsigned chains);

/// μ_i = λ_i / Σλ per snapshot.
SampleSet fixed_trace_samples(const SampleSet& samples);

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Mean and batch-means standard error of S₁, S₂ (linear), S_P or S_ω over
/// fixed-trace snapshots. Requires at least 1000 snapshots.
Estimate mc_entropy_estimate(const SampleSet& fixed_samples, entropy::Quantity q, double omega = 2.0);

/// Per-snapshot value of the quantity.
double snapshot_entropy(std::span<const double> mu, entropy::Quantity q, double omega = 2.0);

// Histograms -----------------------------------------------------------------

struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> counts;
    /// Marginal density estimate per bin: counts / (all values · bin width).
    std::vector<double> density;
    /// Fraction of all values inside [lo, hi).
    double mass_inside = 0.0;

    double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
    double bin_center(std::size_t b) const { return lo + (static_cast<double>(b) + 0.5) * bin_width(); }
};

/// Histogram of every value of every snapshot.
Histogram histogram(const SampleSet& samples, std::size_t bins, double lo, double hi);

/// Bin averages of the analytic marginal density R₁/n over the same bins.
std::vector<double> analytic_bin_averages(const EnsembleParams& p, density::Ensemble e, const Histogram& h);

/// max_b |h.density[b] - reference[b]|.
double sup_norm(const Histogram& h, std::span<const double> reference);

/// Header "lambda_1,...,lambda_n" (or mu_ for fixed-trace) then one row per snapshot.
void write_samples_csv(std::ostream& os, const SampleSet& samples, const std::string& prefix);

}  // namespace bureshall::loggas
