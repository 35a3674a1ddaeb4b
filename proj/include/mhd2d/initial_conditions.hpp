#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mhd2d/solver.hpp"

namespace mhd2d {

/// Generators (parameters in brackets, defaults after '='):
///
///   zero              omega = j = 0
///   single_mode_b     u = 0, b = A (sin x2, 0), so j = -A cos x2      [amplitude = 1]
///   orszag_tang_like  stream function psi = U (cos x1 + cos x2), magnetic
///                     potential a = B (cos 2x1 + cos x2); omega = -Lap psi,
///                     j = -Lap a                                       [u_amp = 1, b_amp = 1]
///   random_band       seeded random omega, j on 0 < |k| <= k_max with
///                     coefficient size ~ |k|^-slope, rescaled so the rms of
///                     u and b equal u_rms and b_rms   [k_max = 6, slope = 1, u_rms = 0.5, b_rms = 0.5]
///
/// Throws ConfigError for unknown names or parameters, and when k_max
/// reaches past the dealiasing cutoff.
FlowState make_initial_condition(const std::string& name, const std::map<std::string, double>& params,
                                 std::uint64_t seed, const GridSpec& grid, double beta);

/// Seeded real-valued, mean-free field with random coefficients of size
/// ~ |k|^-slope on k_min <= |k| <= k_max; the Nyquist lines stay empty.
SpectralField random_annulus_field(const GridSpec& grid, double k_min, double k_max, double slope, std::uint64_t seed);

bool is_known_initial_condition(const std::string& name);
std::vector<std::string> initial_condition_names();

}  // namespace mhd2d
