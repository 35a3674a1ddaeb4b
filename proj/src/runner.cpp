#include "mhd2d/runner.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "json.hpp"
#include "mhd2d/errors.hpp"
#include "mhd2d/initial_conditions.hpp"
#include "mhd2d/series_io.hpp"
#include "mhd2d/spectral.hpp"

namespace fs = std::filesystem;

namespace mhd2d {

std::string run_files::checkpoint_name(long output_index) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "checkpoint_%06ld.bin", output_index);
    return buf;
}

long expected_row_count(double t_end, double output_interval) {
    return static_cast<long>(std::floor(t_end / output_interval + 1e-9)) + 1;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw IoError("cannot write " + path.string());
    f << text;
    if (!f) throw IoError("failed writing " + path.string());
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void log_range_warnings(const RunConfig& cfg) {
    if (cfg.beta <= 1.0)
        spdlog::warn("beta = {} is outside the global regularity hypothesis beta in (1, 2]; running anyway", cfg.beta);
    const auto report = validate_ranges(cfg.beta, cfg.q_list, cfg.s_list, cfg.r_list);
    for (const auto* group : {&report.q, &report.s, &report.r})
        for (const auto& v : *group)
            if (!v.admissible)
                spdlog::warn("{} = {} is not admissible for beta = {} ({}); monitored without a bound", v.name,
                             format_number(v.value), format_number(cfg.beta), v.constraint);
}

/// Drives the state from output index `index` (already recorded) to t_end.
class Integrator {
public:
    Integrator(const RunConfig& cfg, fs::path dir)
        : cfg_(cfg),
          grid_(cfg.grid()),
          ctl_(cfg.step_control()),
          bank_(grid_),
          layout_(MonitorLayout::resolve(cfg.range_params())),
          dir_(std::move(dir)),
          last_output_(expected_row_count(cfg.t_end, cfg.output_interval) - 1) {}

    const MonitorLayout& layout() const { return layout_; }
    const DyadicFilterBank& bank() const { return bank_; }

    void attach_writer(SeriesWriter w) { writer_.emplace(std::move(w)); }

    NormRecord emit(const FlowState& state, const std::optional<NormRecord>& prev, double dt_used) {
        NormRecord rec = record(state, layout_, bank_, prev, dt_used, cfg_.nonlinear);
        if (writer_) writer_->write(rec.to_row());
        return rec;
    }

    double output_time(long m) const {
        const double t = static_cast<double>(m) * cfg_.output_interval;
        if (m == last_output_ && std::abs(t - cfg_.t_end) <= 1e-9 * cfg_.output_interval) return cfg_.t_end;
        return t;
    }

    RunResult integrate(FlowState state, long index, std::vector<NormRecord> series) {
        RunResult result{layout_, std::move(series), make_checkpoint(state, cfg_), std::nullopt};
        double next_checkpoint = first_checkpoint_after(state.t);
        double dt_used = 0.0;

        try {
            while (true) {
                const bool to_output = index < last_output_;
                const double target = to_output ? output_time(index + 1) : cfg_.t_end;
                if (target - state.t <= 1e-12 * std::max(1.0, std::abs(target))) break;

                while (target - state.t > 1e-12 * std::max(1.0, std::abs(target))) {
                    const double remaining = target - state.t;
                    const double steps = std::ceil(remaining / cfl_dt(state, ctl_));
                    const double dt = steps <= 1.0 ? remaining : remaining / steps;
                    state = step(state, ctl_, dt);
                    dt_used = dt;
                    if (steps <= 1.0) state.t = target;
                }
                state.t = target;
                if (!to_output) break;

                ++index;
                result.series.push_back(emit(state, result.series.back(), dt_used));
                if (cfg_.checkpoint_interval > 0.0 && state.t >= next_checkpoint - 1e-9 * cfg_.output_interval) {
                    if (!dir_.empty()) save_checkpoint(dir_ / run_files::checkpoint_name(index), make_checkpoint(state, cfg_));
                    while (next_checkpoint <= state.t + 1e-9 * cfg_.output_interval) next_checkpoint += cfg_.checkpoint_interval;
                }
            }
        } catch (const NumericalAbort& e) {
            spdlog::error("run aborted: {}", e.what());
            result.failure = RunFailure{e.cause(), e.time(), e.max_speed(), e.what()};
            if (!dir_.empty()) {
                nlohmann::ordered_json j;
                j["cause"] = to_string(e.cause());
                j["t"] = e.time();
                j["max_speed"] = std::isfinite(e.max_speed()) ? nlohmann::ordered_json(e.max_speed()) : nullptr;
                j["message"] = e.what();
                write_text(dir_ / run_files::kFailure, j.dump(2) + "\n");
            }
        }

        result.final_checkpoint = make_checkpoint(state, cfg_);
        if (!dir_.empty()) save_checkpoint(dir_ / run_files::kFinal, result.final_checkpoint);
        return result;
    }

private:
    double first_checkpoint_after(double t) const {
        if (cfg_.checkpoint_interval <= 0.0) return kInfinity;
        const double k = std::floor(t / cfg_.checkpoint_interval + 1e-9) + 1.0;
        return k * cfg_.checkpoint_interval;
    }

    const RunConfig& cfg_;
    GridSpec grid_;
    StepControl ctl_;
    DyadicFilterBank bank_;
    MonitorLayout layout_;
    fs::path dir_;
    long last_output_;
    std::optional<SeriesWriter> writer_;
};

}  // namespace

RunResult run(const RunConfig& config) {
    config.validate();
    set_deterministic_planning(config.deterministic);
    log_range_warnings(config);

    const GridSpec grid = config.grid();
    FlowState state = make_initial_condition(config.ic.name, config.ic.params, config.ic.seed, grid, config.beta);

    const fs::path dir = config.output_dir;
    Integrator integ(config, dir);
    if (!dir.empty()) {
        ensure_directory(dir);
        write_text(dir / run_files::kConfig, config.to_text());
        integ.attach_writer(SeriesWriter(dir / run_files::kSeries, integ.layout().column_names(), config.ndjson));
    }
    std::vector<NormRecord> series{integ.emit(state, std::nullopt, 0.0)};
    spdlog::info("run: n = {}, beta = {}, t_end = {}, ic = {}", config.n, format_number(config.beta),
                 format_number(config.t_end), config.ic.name);
    return integ.integrate(std::move(state), 0, std::move(series));
}

RunResult resume(const fs::path& checkpoint, const ResumeOptions& options) {
    const fs::path source_dir = checkpoint.parent_path().empty() ? fs::path(".") : checkpoint.parent_path();
    RunConfig config = options.config ? *options.config : RunConfig::from_file(source_dir / run_files::kConfig);
    if (options.t_end) config.t_end = *options.t_end;
    config.output_dir = (options.output_dir ? *options.output_dir : source_dir).string();
    config.validate();
    set_deterministic_planning(config.deterministic);

    Checkpoint ckpt = load_checkpoint(checkpoint, config.dealias_fraction);
    if (ckpt.config_digest != config.digest()) {
        if (!options.allow_digest_mismatch)
            throw ConfigError("config digest " + to_hex(config.digest()) + " does not match checkpoint digest " +
                              to_hex(ckpt.config_digest));
        spdlog::warn("config digest mismatch overridden");
    }
    if (ckpt.n() != config.n || ckpt.beta != config.beta)
        throw ConfigError("checkpoint grid size or beta differs from the config");
    if (ckpt.t > config.t_end) throw ConfigError("checkpoint time lies past t_end");

    Integrator integ(config, config.output_dir);
    const auto columns = integ.layout().column_names();
    SeriesTable table = read_series_csv(source_dir / run_files::kSeries);
    if (table.columns != columns) throw IoError("series layout in " + source_dir.string() + " does not match the config");
    long index = -1;
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        if (table.rows[i][0] == ckpt.t) index = static_cast<long>(i);
    if (index < 0) throw IoError("no series row at the checkpoint time; resume needs a checkpoint taken at an output time");
    table.rows.resize(static_cast<std::size_t>(index) + 1);

    std::vector<NormRecord> series;
    for (const auto& row : table.rows) series.push_back(NormRecord::from_row(integ.layout(), row));

    const fs::path dir = config.output_dir;
    ensure_directory(dir);
    write_text(dir / run_files::kConfig, config.to_text());
    write_series_csv(dir / run_files::kSeries, table);
    if (config.ndjson) {
        SeriesWriter mirror(dir / "series.rebuild.csv", columns, true);
        for (const auto& row : table.rows) mirror.write(row);
        std::error_code ec;
        fs::rename(dir / "series.rebuild.ndjson", ndjson_path_for(dir / run_files::kSeries), ec);
        fs::remove(dir / "series.rebuild.csv", ec);
    }
    integ.attach_writer(SeriesWriter::append(dir / run_files::kSeries, columns, config.ndjson));

    spdlog::info("resume from t = {} to t_end = {}", format_number(ckpt.t), format_number(config.t_end));
    return integ.integrate(std::move(ckpt.state), index, std::move(series));
}

std::vector<SweepMember> sweep(const RunConfig& base, const std::vector<double>& betas, int jobs) {
    if (betas.empty()) throw ConfigError("sweep needs at least one beta");
    if (base.output_dir.empty()) throw ConfigError("sweep needs an output directory");
    const fs::path root = base.output_dir;
    ensure_directory(root);

    std::vector<RunConfig> configs;
    std::vector<SweepMember> members;
    for (double beta : betas) {
        RunConfig c = base;
        c.beta = beta;
        c.output_dir = (root / ("beta_" + format_number(beta))).string();
        c.validate();
        configs.push_back(c);
        members.push_back({beta, c.output_dir, false, {}});
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                const auto result = run(configs[i]);
                members[i].completed = result.completed();
                if (result.failure) members[i].failure = result.failure->message;
            } catch (const std::exception& e) {
                members[i].failure = e.what();
            }
        }
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    nlohmann::ordered_json manifest;
    manifest["schema"] = "mhd2d-sweep-1";
    manifest["template"] = base.canonical_text();
    manifest["runs"] = nlohmann::ordered_json::array();
    for (const auto& m : members) {
        const auto rel = m.directory.lexically_relative(root);
        nlohmann::ordered_json entry;
        entry["beta"] = m.beta;
        entry["directory"] = rel.string();
        entry["series"] = (rel / run_files::kSeries).string();
        entry["completed"] = m.completed;
        entry["failure"] = m.failure.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(m.failure);
        manifest["runs"].push_back(entry);
    }
    write_text(root / run_files::kManifest, manifest.dump(2) + "\n");
    return members;
}

}  // namespace mhd2d
