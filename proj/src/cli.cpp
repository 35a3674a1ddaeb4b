#include "mhd2d/cli.hpp"

#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "mhd2d/errors.hpp"
#include "mhd2d/initial_conditions.hpp"
#include "mhd2d/littlewood_paley.hpp"
#include "mhd2d/runner.hpp"
#include "mhd2d/series_io.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

/// Config assembled from --config, then --set, then the named flags; the
/// command line wins over the file.
struct ConfigOptions {
    std::string file;
    std::vector<std::string> assignments;
    std::vector<std::pair<std::string, std::string>> flags;

    void add_to(CLI::App& app) {
        app.add_option("-c,--config", file, "key = value config file")->check(CLI::ExistingFile);
        app.add_option("--set", assignments, "override, key=value (repeatable)");
        for (const char* key : {"n", "beta", "t_end", "output_interval", "checkpoint_interval", "cfl_number", "dt_max",
                                "ic", "seed", "q_list", "s_list", "r_list", "output_dir"}) {
            std::string flag = std::string("--") + key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            app.add_option_function<std::string>(
                flag, [this, key](const std::string& v) { flags.emplace_back(key, v); }, std::string("config key ") + key);
        }
        app.add_flag_callback("--ndjson", [this] { flags.emplace_back("ndjson", "true"); }, "also write series.ndjson");
        app.add_flag_callback("--linear", [this] { flags.emplace_back("nonlinear", "false"); },
                              "disable the nonlinear terms");
    }

    RunConfig build() const {
        RunConfig cfg = file.empty() ? RunConfig{} : RunConfig::from_file(file);
        for (const auto& a : assignments) {
            const auto eq = a.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + a + "'");
            cfg.set(a.substr(0, eq), a.substr(eq + 1));
        }
        for (const auto& [k, v] : flags) cfg.set(k, v);
        if (cfg.output_dir.empty()) {
            const char* env = std::getenv(kOutputDirEnv);
            cfg.output_dir = env && *env ? env : "mhd2d-run";
        }
        cfg.validate();
        return cfg;
    }
};

int report_run(const RunResult& r, const std::filesystem::path& dir, std::ostream& out) {
    out << "rows: " << r.series.size() << "\n";
    out << "final t: " << format_number(r.final_checkpoint.t) << "\n";
    out << "output: " << dir.string() << "\n";
    if (r.failure) {
        out << "aborted: " << to_string(r.failure->cause) << " at t = " << format_number(r.failure->t) << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int check_lp(int n, int fields, std::uint64_t seed, std::ostream& out) {
    const GridSpec grid(n);
    const DyadicFilterBank bank(grid);
    const double defect = bank.partition_defect();
    double recon = 0.0;
    for (int i = 0; i < fields; ++i) {
        SpectralField F = random_annulus_field(grid, 0.0, n / 2 - 1, 1.0, seed + static_cast<std::uint64_t>(i));
        F.at(0, 0) = Complex(1.0, 0.0);
        const RealField f = inverse(F);
        const RealField g = decompose(f, bank).reconstruct();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) recon = std::max(recon, std::abs(g(a, b) - f(a, b)));
    }
    const bool ok = defect <= 1e-12 && recon <= 1e-10;
    out << "n = " << n << ", J_max = " << bank.top_shell() << "\n";
    out << "partition of unity max deviation: " << sci(defect) << " (limit 1e-12)\n";
    out << "reconstruction max error over " << fields << " fields: " << sci(recon) << " (limit 1e-10)\n";
    out << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kExitOk : kExitPropertyViolation;
}

int check_bernstein(int n, const std::vector<double>& alphas, int trials, std::uint64_t seed, double tol,
                    std::ostream& out) {
    const GridSpec grid(n);
    const DyadicFilterBank bank(grid);
    bool ok = true;
    for (double alpha : alphas) {
        int bad = 0;
        double lo = kInfinity, hi = 0.0;
        for (int i = 0; i < trials; ++i) {
            const int j = i % (bank.top_shell() + 1);
            const SpectralField F = random_annulus_field(grid, DyadicFilterBank::inner_radius(j),
                                                         DyadicFilterBank::outer_radius(j), 1.0,
                                                         seed + static_cast<std::uint64_t>(i));
            const auto r = bernstein_check(inverse(F), alpha, 2.0, 2.0, j, bank);
            lo = std::min(lo, r.lower_ratio);
            hi = std::max(hi, r.lower_ratio);
            if (!r.within_l2_envelope(tol)) ++bad;
        }
        out << "alpha = " << format_number(alpha) << ": ratio range [" << lo << ", " << hi << "], envelope ["
            << std::pow(0.75, 2 * alpha) << ", " << std::pow(8.0 / 3.0, 2 * alpha) << "], violations " << bad << "/"
            << trials << "\n";
        ok = ok && bad == 0;
    }
    out << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kExitOk : kExitPropertyViolation;
}

int dispatch(CLI::App& app, const std::vector<std::string>& args, std::ostream& out) {
    app.require_subcommand(1);

    ConfigOptions run_opts;
    auto* run_cmd = app.add_subcommand("run", "integrate one configuration");
    run_opts.add_to(*run_cmd);

    std::string ckpt_path, resume_config, resume_dir;
    std::optional<double> resume_t_end;
    bool allow_mismatch = false;
    auto* resume_cmd = app.add_subcommand("resume", "continue a run from a checkpoint");
    resume_cmd->add_option("checkpoint", ckpt_path, "checkpoint file")->required();
    resume_cmd->add_option("--t-end", resume_t_end, "new end time");
    resume_cmd->add_option("--output-dir", resume_dir, "directory to continue in");
    resume_cmd->add_option("-c,--config", resume_config, "config instead of config.txt next to the checkpoint");
    resume_cmd->add_flag("--allow-digest-mismatch", allow_mismatch, "resume even if the config digest differs");

    ConfigOptions sweep_opts;
    std::string betas_text = "1.1,1.5,2";
    int jobs = 1;
    auto* sweep_cmd = app.add_subcommand("sweep", "independent runs over a list of beta values");
    sweep_opts.add_to(*sweep_cmd);
    sweep_cmd->add_option("--betas", betas_text, "comma-separated beta values")->capture_default_str();
    sweep_cmd->add_option("-j,--jobs", jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);

    int lp_n = 64, lp_fields = 20;
    std::uint64_t lp_seed = 1;
    auto* lp_cmd = app.add_subcommand("check-lp", "partition of unity and shell reconstruction");
    lp_cmd->add_option("--n", lp_n, "grid size")->capture_default_str();
    lp_cmd->add_option("--fields", lp_fields, "random fields to reconstruct")->capture_default_str();
    lp_cmd->add_option("--seed", lp_seed, "first seed")->capture_default_str();

    int bn = 64, b_trials = 50;
    std::uint64_t b_seed = 1;
    double b_tol = 1e-10;
    std::string alpha_text = "0.5,1,1.25";
    auto* bern_cmd = app.add_subcommand("check-bernstein", "L2 Bernstein envelope on random shell fields");
    bern_cmd->add_option("--n", bn, "grid size")->capture_default_str();
    bern_cmd->add_option("--alpha", alpha_text, "comma-separated exponents")->capture_default_str();
    bern_cmd->add_option("--trials", b_trials, "fields per exponent")->capture_default_str();
    bern_cmd->add_option("--seed", b_seed, "first seed")->capture_default_str();
    bern_cmd->add_option("--tol", b_tol, "tolerance")->capture_default_str();

    double r_beta = 1.5;
    std::string q_text, s_text, r_text;
    auto* ranges_cmd = app.add_subcommand("check-ranges", "admissibility of q, s and r for a beta");
    ranges_cmd->add_option("--beta", r_beta, "dissipation exponent")->required();
    ranges_cmd->add_option("--q", q_text, "comma-separated Lebesgue exponents");
    ranges_cmd->add_option("--s", s_text, "comma-separated Besov smoothness values");
    ranges_cmd->add_option("--r", r_text, "comma-separated gradient exponents");

    std::string series_path;
    auto* report_cmd = app.add_subcommand("report", "boundedness summary of a series file");
    report_cmd->add_option("series", series_path, "series.csv")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        if (!e2.str().empty()) spdlog::error("{}", e2.str());
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (*run_cmd) {
        const RunConfig cfg = run_opts.build();
        return report_run(run(cfg), cfg.output_dir, out);
    }
    if (*resume_cmd) {
        ResumeOptions opt;
        opt.t_end = resume_t_end;
        if (!resume_dir.empty()) opt.output_dir = resume_dir;
        if (!resume_config.empty()) opt.config = RunConfig::from_file(resume_config);
        opt.allow_digest_mismatch = allow_mismatch;
        const auto r = resume(ckpt_path, opt);
        return report_run(r, opt.output_dir.value_or(std::filesystem::path(ckpt_path).parent_path()), out);
    }
    if (*sweep_cmd) {
        const RunConfig cfg = sweep_opts.build();
        const auto members = sweep(cfg, parse_number_list(betas_text), jobs);
        bool all = true;
        for (const auto& m : members) {
            out << "beta = " << format_number(m.beta) << ": " << (m.completed ? "completed" : "failed: " + m.failure)
                << "\n";
            all = all && m.completed;
        }
        out << "manifest: " << (std::filesystem::path(cfg.output_dir) / run_files::kManifest).string() << "\n";
        return all ? kExitOk : kExitNumerical;
    }
    if (*lp_cmd) return check_lp(lp_n, lp_fields, lp_seed, out);
    if (*bern_cmd) return check_bernstein(bn, parse_number_list(alpha_text), b_trials, b_seed, b_tol, out);
    if (*ranges_cmd) {
        const auto list = [](const std::string& t) { return t.empty() ? std::vector<double>{} : parse_number_list(t); };
        const auto rep = validate_ranges(r_beta, list(q_text), list(s_text), list(r_text));
        out << rep.table();
        return rep.all_admissible() && rep.in_hypothesis ? kExitOk : kExitPropertyViolation;
    }
    if (*report_cmd) {
        const auto summary = boundedness_report(read_series_csv(series_path));
        out << summary.text();
        return summary.all_finite() ? kExitOk : kExitPropertyViolation;
    }
    return kExitUsage;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pseudospectral 2D MHD with fractional magnetic diffusion", "mhd2d"};
    try {
        return dispatch(app, args, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalAbort& e) {
        err << "numerical abort: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cli_run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_run(args, std::cout, std::cerr);
}

}  // namespace mhd2d
