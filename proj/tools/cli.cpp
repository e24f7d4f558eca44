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


#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bureshall/density.hpp"
#include "bureshall/entropy.hpp"
#include "bureshall/errors.hpp"
#include "bureshall/loggas.hpp"
#include "bureshall/parallel.hpp"
#include "bureshall/version.hpp"
#include "schema.hpp"

namespace bureshall::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

fs::path manifest_for(const fs::path& out) { return fs::path(out.string() + ".manifest.json"); }

void ensure_dir(const fs::path& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

EnsembleParams dims(int n, int m) {
    if (n < 1 || m < n) throw DomainError("requires integers 1 <= n <= m");
    return EnsembleParams::from_dims(n, m);
}

void require_format(const std::string& f) {
    if (f != "csv" && f != "json") throw DomainError("format must be csv or json");
}

std::string exact_string(const entropy::Value& v) { return v.exact ? v.exact->display() : "NA"; }

// density -----------------------------------------------------------------------

struct DensityOptions {
    int n = 0;
    int m = 0;
    std::string ensemble = "unrestricted";
    std::size_t points = 512;
    std::string spacing;
    double lambda_max = 0.0;
    std::string format = "csv";
    std::string out;
};

int cmd_density(const DensityOptions& o, std::ostream& out) {
    const Stopwatch clock;
    const EnsembleParams p = dims(o.n, o.m);
    const density::Ensemble ens = density::parse_ensemble(o.ensemble);
    require_format(o.format);
    if (o.points == 0) throw DomainError("points must be positive");

    density::GridSpec g;
    g.points = o.points;
    if (!o.spacing.empty()) g.spacing = density::parse_spacing(o.spacing);
    if (o.lambda_max > 0) g.lambda_max = o.lambda_max;
    const density::Spacing spacing =
        g.spacing.value_or(ens == density::Ensemble::fixed_trace ? density::Spacing::chebyshev : density::Spacing::uniform);

    const density::DensityCurve curve = density::tabulate_density(p, ens, g);
    const std::vector<double> marginal = curve.marginal();

    const fs::path path = o.out.empty() ? fs::path("density_n" + std::to_string(o.n) + "_m" + std::to_string(o.m) + "_" +
                                                   density::ensemble_name(ens) + "." + o.format)
                                        : fs::path(o.out);
    ensure_dir(path.parent_path());

    std::string text;
    if (o.format == "csv") {
        std::ostringstream os;
        os << "x,density,marginal,weight\n";
        for (std::size_t i = 0; i < curve.x.size(); ++i) {
            os << num(curve.x[i]) << ',' << num(curve.density[i]) << ',' << num(marginal[i]) << ','
               << num(curve.weight[i]) << '\n';
        }
        text = os.str();
    } else {
        json j;
        j["schema"] = schema::kDensityJson;
        j["ensemble"] = density::ensemble_name(ens);
        j["n"] = o.n;
        j["m"] = o.m;
        j["alpha"] = p.alpha();
        j["spacing"] = density::spacing_name(spacing);
        j["normalization"] = curve.normalization;
        j["dirac"] = curve.dirac;
        j["x"] = curve.x;
        j["density"] = curve.density;
        j["marginal"] = marginal;
        j["weight"] = curve.weight;
        text = j.dump(1) + "\n";
    }
    write_text(path, text);

    json params = {{"n", o.n},
                   {"m", o.m},
                   {"ensemble", density::ensemble_name(ens)},
                   {"points", o.points},
                   {"spacing", density::spacing_name(spacing)},
                   {"format", o.format}};
    if (ens == density::Ensemble::unrestricted) params["lambda_max"] = g.lambda_max.value_or(density::default_lambda_max(p));
    write_manifest(manifest_for(path), "density", params,
                   {{path, o.format == "csv" ? schema::kDensityCsv : schema::kDensityJson}}, clock.seconds());

    out << "density: wrote " << path.string();
    if (curve.dirac) {
        out << " (point mass at mu = 1)\n";
    } else {
        out << " (" << curve.x.size() << " points, mass " << num(curve.normalization) << ")\n";
    }
    return kExitOk;
}

// entropy-table -------------------------------------------------------------------

struct TableOptions {
    int n_max = 6;
    int m_max = 6;
    std::vector<std::string> quantities{"von_neumann", "purity"};
    std::string format = "csv";
    std::string out;
};

int cmd_entropy_table(const TableOptions& o, std::ostream& out) {
    const Stopwatch clock;
    if (o.n_max < 1 || o.m_max < o.n_max) throw DomainError("requires 1 <= n-max <= m-max");
    require_format(o.format);
    std::vector<entropy::Quantity> qs;
    for (const auto& s : o.quantities) {
        const entropy::Quantity q = entropy::parse_quantity(s);
        if (q == entropy::Quantity::hct) throw DomainError("entropy-table supports von_neumann, linear and purity");
        qs.push_back(q);
    }
    if (qs.empty()) throw DomainError("no quantities requested");

    struct Job {
        int n;
        int m;
        entropy::Quantity q;
    };
    std::vector<Job> jobs;
    for (int n = 1; n <= o.n_max; ++n) {
        for (int m = n; m <= o.m_max; ++m) {
            for (auto q : qs) jobs.push_back({n, m, q});
        }
    }
    std::vector<std::optional<entropy::EntropyReport>> reports(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        reports[i].emplace(entropy::make_report(EnsembleParams::from_dims(jobs[i].n, jobs[i].m), jobs[i].q));
    });

    json rows = json::array();
    std::ostringstream csv;
    csv << "n,m,quantity,bh_exact,bh_float,hs_exact,hs_float,difference_exact,difference_float,conjecture_match\n";
    bool all_match = true;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& r = *reports[i];
        const bool match = r.bures_hall.exact && r.conjecture && r.conjecture->exact && *r.bures_hall.exact == *r.conjecture->exact;
        all_match = all_match && match;
        const std::string name = entropy::quantity_name(jobs[i].q);
        csv << jobs[i].n << ',' << jobs[i].m << ',' << name << ',' << exact_string(r.bures_hall) << ','
            << num(r.bures_hall.value) << ',' << exact_string(*r.hilbert_schmidt) << ',' << num(r.hilbert_schmidt->value)
            << ',' << exact_string(*r.difference) << ',' << num(r.difference->value) << ',' << (match ? "true" : "false")
            << '\n';
        rows.push_back({{"n", jobs[i].n},
                        {"m", jobs[i].m},
                        {"quantity", name},
                        {"bh_exact", exact_string(r.bures_hall)},
                        {"bh_float", r.bures_hall.value},
                        {"hs_exact", exact_string(*r.hilbert_schmidt)},
                        {"hs_float", r.hilbert_schmidt->value},
                        {"difference_exact", exact_string(*r.difference)},
                        {"difference_float", r.difference->value},
                        {"conjecture_match", match}});
    }

    const fs::path path = o.out.empty() ? fs::path("entropy_table." + o.format) : fs::path(o.out);
    ensure_dir(path.parent_path());
    if (o.format == "csv") {
        write_text(path, csv.str());
    } else {
        json j{{"schema", schema::kEntropyTableJson}, {"n_max", o.n_max}, {"m_max", o.m_max}, {"rows", rows}};
        write_text(path, j.dump(2) + "\n");
    }
    write_manifest(manifest_for(path), "entropy-table",
                   {{"n_max", o.n_max}, {"m_max", o.m_max}, {"quantities", o.quantities}, {"format", o.format}},
                   {{path, o.format == "csv" ? schema::kEntropyTableCsv : schema::kEntropyTableJson}}, clock.seconds());
    out << "entropy-table: wrote " << path.string() << " (" << jobs.size() << " rows; conjectured forms "
        << (all_match ? "match every row" : "do NOT match every row") << ")\n";
    return kExitOk;
}

// verify ---------------------------------------------------------------------------

struct VerifyOptions {
    int n_max = 8;
    int m_max = 8;
    bool tamper_xi = false;
    std::string out = "verify_report.json";
};

struct CellCheck {
    int n = 0;
    int m = 0;
    std::string xi_residual;
    std::string eta_residual;
    std::vector<std::pair<std::string, bool>> checks;
    std::string error;

    bool pass() const {
        if (!error.empty()) return false;
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
    }
};

CellCheck verify_cell(int n, int m, entropy::XiKernel xi) {
    using exact::ExactScalar;
    CellCheck c;
    c.n = n;
    c.m = m;
    const EnsembleParams p = EnsembleParams::from_dims(n, m);
    try {
        const entropy::IdentityReport id = entropy::verify_conjecture_identities(p, xi);
        c.xi_residual = id.xi_residual().display();
        c.eta_residual = id.eta_residual().display();
        c.checks.emplace_back("identities", id.holds());

        std::optional<entropy::Value> vn;
        try {
            vn = entropy::avg_von_neumann(p);
            c.checks.emplace_back("eta_self_check", true);
        } catch (const SelfCheckError&) {
            c.checks.emplace_back("eta_self_check", false);
        }
        const entropy::Value purity = entropy::avg_purity(p);
        const entropy::Value linear = entropy::avg_linear(p);
        const entropy::Value hs = entropy::hs_purity(n, m);
        if (vn) {
            const ExactScalar& s = *vn->exact;
            c.checks.emplace_back("von_neumann_no_euler_no_pi", s.euler_part() == 0 && s.pi_half_power() == 0);
            c.checks.emplace_back("von_neumann_matches_conjecture", s == *entropy::conjecture_von_neumann(n, m).exact);
            c.checks.emplace_back("von_neumann_range", vn->value >= -1e-15 && vn->value <= std::log(n) + 1e-15);
        }
        c.checks.emplace_back("purity_matches_conjecture", *purity.exact == *entropy::conjecture_purity(n, m).exact);
        const exact::Rational expected = entropy::purity_difference(n, m);
        const ExactScalar diff = *purity.exact - *hs.exact;
        c.checks.emplace_back("purity_difference_closed_form", diff == ExactScalar(expected));
        c.checks.emplace_back("purity_difference_sign", n == 1 ? expected == 0 : expected > 0);
        c.checks.emplace_back("purity_range", purity.value >= 1.0 / n - 1e-15 && purity.value <= 1.0 + 1e-15);
        c.checks.emplace_back("linear_is_one_minus_purity", *linear.exact == ExactScalar(1) - *purity.exact);
    } catch (const std::exception& e) {
        c.error = e.what();
    }
    return c;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
    const Stopwatch clock;
    if (o.n_max < 1 || o.m_max < o.n_max) throw DomainError("requires 1 <= n-max <= m-max");
    const entropy::XiKernel xi = o.tamper_xi ? entropy::XiKernel::sign_flipped : entropy::XiKernel::standard;
    std::vector<std::pair<int, int>> cells;
    for (int n = 1; n <= o.n_max; ++n) {
        for (int m = n; m <= o.m_max; ++m) cells.emplace_back(n, m);
    }
    std::vector<CellCheck> results(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) { results[i] = verify_cell(cells[i].first, cells[i].second, xi); });

    bool all_pass = true;
    json jcells = json::array();
    for (const auto& c : results) {
        json checks = json::object();
        for (const auto& [name, ok] : c.checks) checks[name] = ok;
        json jc{{"n", c.n},
                {"m", c.m},
                {"xi_residual", c.xi_residual},
                {"eta_residual", c.eta_residual},
                {"checks", checks},
                {"pass", c.pass()}};
        if (!c.error.empty()) jc["error"] = c.error;
        jcells.push_back(jc);
        if (!c.pass()) {
            all_pass = false;
            err << "verify: (" << c.n << "," << c.m << ") failed: xi residual " << c.xi_residual << ", eta residual "
                << c.eta_residual;
            for (const auto& [name, ok] : c.checks) {
                if (!ok) err << ", " << name;
            }
            if (!c.error.empty()) err << ", error: " << c.error;
            err << '\n';
        }
    }
    const fs::path path(o.out);
    ensure_dir(path.parent_path());
    json report{{"schema", schema::kVerifyJson},
                {"n_max", o.n_max},
                {"m_max", o.m_max},
                {"xi_kernel", o.tamper_xi ? "sign_flipped" : "standard"},
                {"cells", jcells},
                {"all_pass", all_pass}};
    write_text(path, report.dump(2) + "\n");
    write_manifest(manifest_for(path), "verify",
                   {{"n_max", o.n_max}, {"m_max", o.m_max}, {"tamper_xi", o.tamper_xi}},
                   {{path, schema::kVerifyJson}}, clock.seconds());
    out << "verify: " << cells.size() << " cells, " << (all_pass ? "all checks pass" : "FAILURES") << "; report "
        << path.string() << '\n';
    return all_pass ? kExitOk : kExitCheckFailed;
}

// mc ---------------------------------------------------------------------------------

struct McOptions {
    int n = 0;
    int m = 0;
    double steps = 0.0;
    std::uint64_t seed = 1;
    unsigned chains = 1;
    std::size_t bins = 16;
    double tolerance = 0.02;
    bool samples = false;
    std::string out_dir = "mc_out";
};

inline constexpr std::uint64_t kDefaultSnapshots = 200000;

int cmd_mc(const McOptions& o, std::ostream& out, std::ostream& err) {
    const Stopwatch clock;
    const EnsembleParams p = dims(o.n, o.m);
    if (o.chains == 0) throw DomainError("chains must be positive");
    if (o.bins == 0) throw DomainError("bins must be positive");
    loggas::ChainConfig cfg = loggas::ChainConfig::defaults(p, kDefaultSnapshots, o.seed);
    if (o.steps != 0.0) {
        if (!(o.steps > 0) || std::floor(o.steps) != o.steps || o.steps > 1e15) {
            throw DomainError("steps must be a positive integer");
        }
        cfg.n_steps = static_cast<std::uint64_t>(o.steps);
    }
    cfg.validate();
    if (cfg.snapshot_count() < 1000) {
        throw DomainError("steps too small: " + std::to_string(cfg.snapshot_count()) +
                          " snapshots after burn-in, at least 1000 needed");
    }

    const loggas::ChainResult run = loggas::run_chains(cfg, o.chains);
    const loggas::SampleSet fixed = loggas::fixed_trace_samples(run.samples);

    struct Panel {
        density::Ensemble ensemble;
        loggas::Histogram hist;
        std::vector<double> analytic;
        double sup = 0.0;
    };
    std::vector<Panel> panels;
    {
        Panel u{density::Ensemble::unrestricted, loggas::histogram(run.samples, o.bins, 0.0, cfg.lambda_cutoff), {}, 0.0};
        u.analytic = loggas::analytic_bin_averages(p, u.ensemble, u.hist);
        u.sup = loggas::sup_norm(u.hist, u.analytic);
        panels.push_back(std::move(u));
    }
    if (p.n() >= 2) {
        Panel f{density::Ensemble::fixed_trace, loggas::histogram(fixed, o.bins, 0.0, 1.0), {}, 0.0};
        f.analytic = loggas::analytic_bin_averages(p, f.ensemble, f.hist);
        f.sup = loggas::sup_norm(f.hist, f.analytic);
        panels.push_back(std::move(f));
    }

    std::ostringstream hist_csv, overlay_csv, est_csv;
    hist_csv << "ensemble,bin,lo,hi,count,mc_density\n";
    overlay_csv << "ensemble,bin,center,mc_density,analytic_density,abs_diff\n";
    bool pass = true;
    json sup = json::object();
    for (const auto& panel : panels) {
        const std::string name = density::ensemble_name(panel.ensemble);
        const auto& h = panel.hist;
        for (std::size_t b = 0; b < h.counts.size(); ++b) {
            const double lo = h.lo + b * h.bin_width();
            hist_csv << name << ',' << b << ',' << num(lo) << ',' << num(lo + h.bin_width()) << ','
                     << static_cast<std::uint64_t>(h.counts[b]) << ',' << num(h.density[b]) << '\n';
            overlay_csv << name << ',' << b << ',' << num(h.bin_center(b)) << ',' << num(h.density[b]) << ','
                        << num(panel.analytic[b]) << ',' << num(std::abs(h.density[b] - panel.analytic[b])) << '\n';
        }
        sup[name] = panel.sup;
        pass = pass && panel.sup <= o.tolerance;
    }

    est_csv << "quantity,mc_mean,std_error,exact,exact_value,z_score,within_3se\n";
    json estimates = json::object();
    for (auto q : {entropy::Quantity::von_neumann, entropy::Quantity::purity}) {
        const loggas::Estimate e = loggas::mc_entropy_estimate(fixed, q);
        const entropy::Value exact = q == entropy::Quantity::purity ? entropy::avg_purity(p) : entropy::avg_von_neumann(p);
        const double diff = e.mean - exact.value;
        double z = 0.0;
        bool within = false;
        if (e.std_error > 0) {
            z = diff / e.std_error;
            within = std::abs(z) <= 3.0;
        } else {
            within = std::abs(diff) <= 1e-12;
        }
        pass = pass && within;
        const std::string name = entropy::quantity_name(q);
        est_csv << name << ',' << num(e.mean) << ',' << num(e.std_error) << ',' << exact_string(exact) << ','
                << num(exact.value) << ',' << num(z) << ',' << (within ? "true" : "false") << '\n';
        estimates[name] = {{"mean", e.mean},
                           {"std_error", e.std_error},
                           {"exact", exact_string(exact)},
                           {"exact_value", exact.value},
                           {"z_score", z},
                           {"within_3se", within}};
    }

    const fs::path dir(o.out_dir);
    ensure_dir(dir);
    std::vector<OutputFile> outputs{{dir / "histogram.csv", schema::kMcHistogramCsv},
                                    {dir / "overlay.csv", schema::kMcOverlayCsv},
                                    {dir / "estimates.csv", schema::kMcEstimatesCsv},
                                    {dir / "summary.json", schema::kMcSummaryJson}};
    write_text(outputs[0].path, hist_csv.str());
    write_text(outputs[1].path, overlay_csv.str());
    write_text(outputs[2].path, est_csv.str());
    json summary{{"schema", schema::kMcSummaryJson},
                 {"n", o.n},
                 {"m", o.m},
                 {"alpha", p.alpha()},
                 {"seed", o.seed},
                 {"chains", o.chains},
                 {"steps_per_chain", cfg.n_steps},
                 {"burn_in", cfg.burn_in},
                 {"thin", cfg.thin},
                 {"snapshots", run.samples.size()},
                 {"lambda_cutoff", cfg.lambda_cutoff},
                 {"acceptance_rate", run.acceptance_rate},
                 {"proposal_width", run.proposal_width},
                 {"max_energy_drift", run.max_energy_drift},
                 {"acceptance_warning", run.acceptance_warning},
                 {"bins", o.bins},
                 {"tolerance", o.tolerance},
                 {"sup_norm", sup},
                 {"estimates", estimates},
                 {"pass", pass}};
    write_text(outputs[3].path, summary.dump(2) + "\n");
    if (o.samples) {
        std::ostringstream su, sf;
        loggas::write_samples_csv(su, run.samples, "lambda");
        loggas::write_samples_csv(sf, fixed, "mu");
        outputs.push_back({dir / "samples_unrestricted.csv", schema::kMcSamplesCsv});
        write_text(outputs.back().path, su.str());
        outputs.push_back({dir / "samples_fixed_trace.csv", schema::kMcSamplesCsv});
        write_text(outputs.back().path, sf.str());
    }
    write_manifest(dir / "manifest.json", "mc",
                   {{"n", o.n},
                    {"m", o.m},
                    {"steps", cfg.n_steps},
                    {"seed", o.seed},
                    {"chains", o.chains},
                    {"bins", o.bins},
                    {"tolerance", o.tolerance},
                    {"samples", o.samples}},
                   outputs, clock.seconds());

    out << "mc: " << run.samples.size() << " snapshots, acceptance " << num(run.acceptance_rate) << ", sup-norm";
    for (const auto& panel : panels) out << ' ' << density::ensemble_name(panel.ensemble) << '=' << num(panel.sup);
    out << "; " << (pass ? "PASS" : "FAIL") << "; outputs in " << dir.string() << '\n';
    if (run.acceptance_warning) {
        err << "mc: acceptance rate " << num(run.acceptance_rate) << " outside [" << loggas::kAcceptanceLow << ", "
            << loggas::kAcceptanceHigh << "] after tuning\n";
        return kExitAcceptance;
    }
    return pass ? kExitOk : kExitCheckFailed;
}

// schema-check ------------------------------------------------------------------------

int cmd_schema_check(const std::vector<std::string>& files, const std::string& forced, std::ostream& out,
                     std::ostream& err) {
    bool invalid = false;
    bool unreadable = false;
    for (const auto& f : files) {
        const fs::path path(f);
        try {
            if (!fs::exists(path)) throw IoError("no such file: " + f);
            std::vector<CheckResult> results;
            const std::string name = path.filename().string();
            if (forced.empty() && name.size() >= 13 && name.compare(name.size() - 13, 13, "manifest.json") == 0) {
                results = check_manifest(path);
            } else {
                const std::string s = forced.empty() ? declared_schema(path) : forced;
                if (s.empty()) {
                    err << "schema-check: no manifest declares a schema for " << f << "; pass --schema\n";
                    invalid = true;
                    continue;
                }
                results.push_back(check_file(path, s));
            }
            for (const auto& r : results) {
                if (r.ok()) {
                    out << "OK " << r.path.string() << " [" << r.schema << "]\n";
                } else {
                    invalid = true;
                    out << "INVALID " << r.path.string() << " [" << r.schema << "]\n";
                    for (const auto& pr : r.problems) out << "  " << pr << '\n';
                }
            }
        } catch (const IoError& e) {
            unreadable = true;
            err << "schema-check: " << e.what() << '\n';
        }
    }
    if (unreadable) return kExitIo;
    return invalid ? kExitCheckFailed : kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bures-Hall ensemble: spectral densities, average entropies and Monte Carlo checks", "bureshall"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    DensityOptions dopt;
    auto* density_cmd = app.add_subcommand("density", "Tabulate R1 and the marginal density on a grid");
    density_cmd->add_option("--n", dopt.n, "Density-matrix dimension")->required();
    density_cmd->add_option("--m", dopt.m, "Environment dimension (m >= n)")->required();
    density_cmd->add_option("--ensemble", dopt.ensemble, "unrestricted or fixed")->capture_default_str();
    density_cmd->add_option("--points", dopt.points, "Grid points")->capture_default_str();
    density_cmd->add_option("--spacing", dopt.spacing, "chebyshev or uniform (default: chebyshev for fixed, uniform otherwise)");
    density_cmd->add_option("--lambda-max", dopt.lambda_max, "Unrestricted grid end (default n + 2*alpha + 10*sqrt(n))");
    density_cmd->add_option("--format", dopt.format, "csv or json")->capture_default_str();
    density_cmd->add_option("--out", dopt.out, "Output file");

    TableOptions topt;
    auto* table_cmd = app.add_subcommand("entropy-table", "Exact and numerical average entropies for n <= m");
    table_cmd->add_option("--n-max", topt.n_max)->capture_default_str();
    table_cmd->add_option("--m-max", topt.m_max)->capture_default_str();
    table_cmd->add_option("--quantities", topt.quantities, "von_neumann, linear, purity")
        ->delimiter(',')
        ->capture_default_str();
    table_cmd->add_option("--format", topt.format, "csv or json")->capture_default_str();
    table_cmd->add_option("--out", topt.out, "Output file (default entropy_table.<format>)");

    VerifyOptions vopt;
    auto* verify_cmd = app.add_subcommand("verify", "Exact check of the closed forms and identities over a range");
    verify_cmd->add_option("--n-max", vopt.n_max)->capture_default_str();
    verify_cmd->add_option("--m-max", vopt.m_max)->capture_default_str();
    verify_cmd->add_option("--out", vopt.out, "JSON report")->capture_default_str();
    verify_cmd->add_flag("--tamper-xi", vopt.tamper_xi, "Negate the xi kernel (negative control; must fail)");

    McOptions mopt;
    auto* mc_cmd = app.add_subcommand("mc", "Metropolis-Hastings log-gas sampling compared with the analytic results");
    mc_cmd->add_option("--n", mopt.n)->required();
    mc_cmd->add_option("--m", mopt.m)->required();
    mc_cmd->add_option("--steps", mopt.steps, "Proposals per chain including burn-in (default: 2e5 snapshots)");
    mc_cmd->add_option("--seed", mopt.seed)->capture_default_str();
    mc_cmd->add_option("--chains", mopt.chains)->capture_default_str();
    mc_cmd->add_option("--bins", mopt.bins)->capture_default_str();
    mc_cmd->add_option("--tolerance", mopt.tolerance, "Histogram sup-norm limit")->capture_default_str();
    mc_cmd->add_flag("--samples", mopt.samples, "Also write the snapshots as CSV");
    mc_cmd->add_option("--out-dir", mopt.out_dir)->capture_default_str();

    std::vector<std::string> check_files;
    std::string check_schema;
    auto* check_cmd = app.add_subcommand("schema-check", "Validate emitted files against their declared schemas");
    check_cmd->add_option("files", check_files, "Data files or manifests")->required();
    check_cmd->add_option("--schema", check_schema, "Schema name, overriding the manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (density_cmd->parsed()) return cmd_density(dopt, out);
        if (table_cmd->parsed()) return cmd_entropy_table(topt, out);
        if (verify_cmd->parsed()) return cmd_verify(vopt, out, err);
        if (mc_cmd->parsed()) return cmd_mc(mopt, out, err);
        if (check_cmd->parsed()) return cmd_schema_check(check_files, check_schema, out, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitInvalid;
}

}  // namespace bureshall::cli
