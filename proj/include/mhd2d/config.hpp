#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mhd2d/diagnostics.hpp"
#include "mhd2d/grid.hpp"
#include "mhd2d/solver.hpp"

namespace mhd2d {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "MHD2D_OUTPUT_DIR";

struct InitialCondition {
    std::string name = "orszag_tang_like";
    std::map<std::string, double> params;
    std::uint64_t seed = 0;
};

using Digest = std::array<std::uint8_t, 32>;

/// Everything that defines a run. Serialized as flat "key = value" text;
/// see README for the key list.
struct RunConfig {
    int n = 64;
    double beta = 1.5;
    double t_end = 1.0;
    double output_interval = 0.01;
    /// 0 writes only the final checkpoint.
    double checkpoint_interval = 0.0;
    double cfl_number = 0.4;
    double dt_max = 0.01;
    double dealias_fraction = GridSpec::kDefaultDealias;
    bool nonlinear = true;
    InitialCondition ic;
    std::vector<double> q_list{2.0, 4.0};
    std::vector<double> s_list;
    std::vector<double> r_list{2.0};
    bool deterministic = true;
    bool ndjson = false;
    std::string output_dir;

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    /// Applies one key = value assignment. Throws ConfigError on unknown keys
    /// or unparsable values.
    void set(const std::string& key, const std::string& value);

    GridSpec grid() const { return GridSpec(n, dealias_fraction); }
    StepControl step_control() const;
    RangeParams range_params() const { return {beta, q_list, s_list, r_list}; }

    /// Full key = value text, parseable by from_text.
    std::string to_text() const;
    /// Keys that determine the trajectory and its records; t_end,
    /// checkpoint_interval, output_dir and ndjson are excluded so a run can be
    /// resumed with a later end time.
    std::string canonical_text() const;
    /// SHA-256 of canonical_text().
    Digest digest() const;

    static RunConfig from_text(const std::string& text);
    static RunConfig from_file(const std::filesystem::path& path);
};

/// Parses "2, 4, inf" style lists.
std::vector<double> parse_number_list(const std::string& text);
double parse_number(const std::string& text);

std::string to_hex(const Digest& d);

}  // namespace mhd2d
