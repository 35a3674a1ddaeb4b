#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "mhd2d/config.hpp"
#include "mhd2d/solver.hpp"

namespace mhd2d {

/// Binary checkpoint, little-endian throughout:
///
///   offset  size  field
///        0     7  magic "MHD2B01"
///        7     4  version (u32, currently 1)
///       11     4  n (u32)
///       15     8  beta (IEEE-754 binary64)
///       23     8  t (binary64)
///       31     8  seed (u64)
///       39    32  SHA-256 of the canonical config text
///       71     -  omega_hat then j_hat, n*n (re, im) binary64 pairs each,
///                 row-major over the lattice in FFT order
struct Checkpoint {
    static constexpr std::string_view kMagic = "MHD2B01";
    static constexpr std::uint32_t kVersion = 1;
    static constexpr std::size_t kHeaderSize = 71;

    std::uint32_t version = kVersion;
    double beta = 0.0;
    double t = 0.0;
    std::uint64_t seed = 0;
    Digest config_digest{};
    FlowState state;

    int n() const { return state.grid().n(); }
};

Checkpoint make_checkpoint(const FlowState& state, const RunConfig& config);

/// Throws IoError on write failure.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
/// Throws IoError on a missing file, bad magic, unsupported version or
/// truncated payload. dealias_fraction sets the grid the state is placed on.
Checkpoint load_checkpoint(const std::filesystem::path& path,
                           double dealias_fraction = GridSpec::kDefaultDealias);

}  // namespace mhd2d
