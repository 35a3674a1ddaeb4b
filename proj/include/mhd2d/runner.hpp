#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mhd2d/checkpoint.hpp"
#include "mhd2d/config.hpp"
#include "mhd2d/diagnostics.hpp"
#include "mhd2d/errors.hpp"

namespace mhd2d {

struct RunFailure {
    AbortCause cause = AbortCause::NonFinite;
    double t = 0.0;
    double max_speed = 0.0;
    std::string message;
};

struct RunResult {
    MonitorLayout layout;
    std::vector<NormRecord> series;
    Checkpoint final_checkpoint;
    std::optional<RunFailure> failure;

    bool completed() const { return !failure.has_value(); }
};

/// Files written into a run directory.
namespace run_files {
inline constexpr const char* kConfig = "config.txt";
inline constexpr const char* kSeries = "series.csv";
inline constexpr const char* kFinal = "final.bin";
inline constexpr const char* kFailure = "failure.json";
inline constexpr const char* kManifest = "manifest.json";
std::string checkpoint_name(long output_index);
}  // namespace run_files

/// Output times are m * output_interval for m = 0 .. floor(t_end / output_interval);
/// the integration itself ends at t_end. Time steps are shortened so every
/// output time is hit exactly. When config.output_dir is set, the series,
/// periodic checkpoints (at the first output time at or past each multiple of
/// checkpoint_interval), the final checkpoint and, on abort, failure.json are
/// written there. A numerical abort is reported through RunResult::failure.
RunResult run(const RunConfig& config);

struct ResumeOptions {
    /// Continue to this end time instead of the stored one.
    std::optional<double> t_end;
    /// Directory to continue in; defaults to the checkpoint's directory.
    std::optional<std::filesystem::path> output_dir;
    /// Proceed even when the config digest differs from the checkpoint's.
    bool allow_digest_mismatch = false;
    /// Config to use instead of config.txt next to the checkpoint.
    std::optional<RunConfig> config;
};

/// Continues a run from a checkpoint written at an output time. The series
/// rows up to the checkpoint time are taken from the run directory so the
/// cumulative integrals continue exactly. Throws ConfigError on a digest
/// mismatch (unless allowed) and IoError on a missing series row.
RunResult resume(const std::filesystem::path& checkpoint, const ResumeOptions& options);

struct SweepMember {
    double beta = 0.0;
    std::filesystem::path directory;
    bool completed = false;
    std::string failure;
};

/// Independent runs of the template at each beta, in subdirectories
/// beta_<value> of the template's output_dir, using up to `jobs` threads. A
/// manifest.json listing the members in input order is written last.
std::vector<SweepMember> sweep(const RunConfig& base, const std::vector<double>& betas, int jobs);

/// Number of output rows for a completed run.
long expected_row_count(double t_end, double output_interval);

}  // namespace mhd2d
