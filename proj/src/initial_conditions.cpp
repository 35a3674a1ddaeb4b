#include "mhd2d/initial_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mhd2d/errors.hpp"

namespace mhd2d {

namespace {

using Params = std::map<std::string, double>;

double param(const Params& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void allow_only(const std::string& name, const Params& p, std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : p) {
        bool ok = false;
        for (const char* allowed : keys) ok = ok || k == allowed;
        if (!ok) throw ConfigError("initial condition '" + name + "' has no parameter '" + k + "'");
        if (!std::isfinite(v)) throw ConfigError("initial condition parameter '" + k + "' must be finite");
    }
}

/// Sets coeff(k) = c and coeff(-k) = conj(c).
void set_pair(SpectralField& F, int k1, int k2, Complex c) {
    F.at(k1, k2) = c;
    F.at(-k1, -k2) = std::conj(c);
}

/// Uniform double in [0, 1) from the raw 64-bit stream; std::mt19937_64 is
/// fully specified, unlike the standard distributions.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Complex random_coefficient(std::mt19937_64& rng, double scale) {
    const double radius = std::sqrt(-2.0 * std::log1p(-uniform(rng)));
    const double phase = 2.0 * std::numbers::pi * uniform(rng);
    return std::polar(scale * radius, phase);
}

/// rms of the Biot-Savart field of a curl: sqrt(sum |w_hat|^2 / |k|^2)
double rms_of_inverted(const SpectralField& curl) {
    const auto& g = curl.grid();
    double sum = 0.0;
    for (int a = 0; a < g.n(); ++a)
        for (int b = 0; b < g.n(); ++b) {
            const double k1 = g.wavenumber(a), k2 = g.wavenumber(b);
            const double k_sq = k1 * k1 + k2 * k2;
            if (k_sq > 0.0) sum += std::norm(curl(a, b)) / k_sq;
        }
    return std::sqrt(sum);
}

FlowState random_band(const Params& p, std::uint64_t seed, const GridSpec& grid, double beta) {
    const double k_max = param(p, "k_max", 6.0);
    const double slope = param(p, "slope", 1.0);
    const double u_rms = param(p, "u_rms", 0.5);
    const double b_rms = param(p, "b_rms", 0.5);
    if (!(k_max >= 1.0)) throw ConfigError("random_band: k_max must be >= 1");
    if (k_max > grid.dealias_cutoff())
        throw ConfigError("random_band: k_max beyond the dealiasing cutoff " + std::to_string(grid.dealias_cutoff()));
    if (u_rms < 0.0 || b_rms < 0.0) throw ConfigError("random_band: rms amplitudes must be >= 0");

    std::mt19937_64 rng(seed);
    SpectralField w(grid), j(grid);
    const int kmax = static_cast<int>(std::floor(k_max));
    // one representative per conjugate pair: k1 > 0, or k1 = 0 and k2 > 0
    for (int k1 = 0; k1 <= kmax; ++k1)
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;
            const double r = std::sqrt(static_cast<double>(k1 * k1 + k2 * k2));
            if (r > k_max) continue;
            const double scale = std::pow(r, -slope);
            set_pair(w, k1, k2, random_coefficient(rng, scale));
            set_pair(j, k1, k2, random_coefficient(rng, scale));
        }
    const double wu = rms_of_inverted(w);
    const double jb = rms_of_inverted(j);
    if (wu > 0.0) w *= u_rms / wu;
    if (jb > 0.0) j *= b_rms / jb;
    return make_state(std::move(w), std::move(j), 0.0, beta);
}

}  // namespace

SpectralField random_annulus_field(const GridSpec& grid, double k_min, double k_max, double slope, std::uint64_t seed) {
    if (!(k_min <= k_max)) throw ConfigError("random_annulus_field: empty annulus");
    std::mt19937_64 rng(seed);
    SpectralField F(grid);
    const int lim = std::min(static_cast<int>(std::floor(k_max)), grid.n() / 2 - 1);
    for (int k1 = 0; k1 <= lim; ++k1)
        for (int k2 = -lim; k2 <= lim; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;
            const double r = std::sqrt(static_cast<double>(k1 * k1 + k2 * k2));
            if (r < k_min || r > k_max) continue;
            set_pair(F, k1, k2, random_coefficient(rng, std::pow(r, -slope)));
        }
    return F;
}

std::vector<std::string> initial_condition_names() {
    return {"zero", "single_mode_b", "orszag_tang_like", "random_band"};
}

bool is_known_initial_condition(const std::string& name) {
    for (const auto& n : initial_condition_names())
        if (n == name) return true;
    return false;
}

FlowState make_initial_condition(const std::string& name, const Params& params, std::uint64_t seed,
                                 const GridSpec& grid, double beta) {
    if (name == "zero") {
        allow_only(name, params, {});
        return zero_state(grid, beta);
    }
    if (name == "single_mode_b") {
        allow_only(name, params, {"amplitude"});
        const double amp = param(params, "amplitude", 1.0);
        SpectralField j(grid);
        set_pair(j, 0, 1, Complex(-0.5 * amp, 0.0));
        return make_state(SpectralField(grid), std::move(j), 0.0, beta);
    }
    if (name == "orszag_tang_like") {
        allow_only(name, params, {"u_amp", "b_amp"});
        const double u = param(params, "u_amp", 1.0);
        const double b = param(params, "b_amp", 1.0);
        if (grid.dealias_cutoff() < 2.0) throw ConfigError("orszag_tang_like needs modes |k| = 2 below the cutoff");
        SpectralField w(grid), j(grid);
        set_pair(w, 1, 0, Complex(0.5 * u, 0.0));
        set_pair(w, 0, 1, Complex(0.5 * u, 0.0));
        set_pair(j, 2, 0, Complex(2.0 * b, 0.0));
        set_pair(j, 0, 1, Complex(0.5 * b, 0.0));
        return make_state(std::move(w), std::move(j), 0.0, beta);
    }
    if (name == "random_band") {
        allow_only(name, params, {"k_max", "slope", "u_rms", "b_rms"});
        return random_band(params, seed, grid, beta);
    }
    throw ConfigError("unknown initial condition '" + name + "'");
}

}  // namespace mhd2d
