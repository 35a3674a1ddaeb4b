#include "mhd2d/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhd2d/errors.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

namespace {

double smooth_bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

void check_exponent(double p, const char* name) {
    if (std::isnan(p) || p < 1.0) throw ConfigError(std::string(name) + " must lie in [1, inf]");
}

double radius(const GridSpec& grid, int a, int b) {
    const double k1 = grid.wavenumber(a);
    const double k2 = grid.wavenumber(b);
    return std::sqrt(k1 * k1 + k2 * k2);
}

}  // namespace

double DyadicFilterBank::low_pass(double r) {
    constexpr double lo = 0.75;
    constexpr double hi = 1.0;
    if (r <= lo) return 1.0;
    if (r >= hi) return 0.0;
    const double t = (r - lo) / (hi - lo);
    const double up = smooth_bump(1.0 - t);
    return up / (up + smooth_bump(t));
}

double DyadicFilterBank::annulus(double r) { return low_pass(0.5 * r) - low_pass(r); }

double DyadicFilterBank::inner_radius(int j) { return std::ldexp(0.75, j); }
double DyadicFilterBank::outer_radius(int j) { return std::ldexp(8.0 / 3.0, j); }

DyadicFilterBank::DyadicFilterBank(const GridSpec& grid) : grid_(grid), top_shell_(-1) {
    const double nyquist = grid.n() / 2;
    while (inner_radius(top_shell_ + 1) <= nyquist) ++top_shell_;
    if (top_shell_ < 0) throw ConfigError("grid too small to host shell j = 0");

    const int n = grid.n();
    multipliers_.assign(static_cast<std::size_t>(shell_count()), std::vector<double>(grid.size(), 0.0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double r = radius(grid, a, b);
            const std::size_t p = grid.flat(a, b);
            multipliers_[0][p] = low_pass(r);
            for (int j = 0; j <= top_shell_; ++j) multipliers_[static_cast<std::size_t>(j + 1)][p] = annulus(std::ldexp(r, -j));
            // catch-all: mass the scaled shells cannot reach goes to the top shell
            multipliers_[static_cast<std::size_t>(top_shell_ + 1)][p] += 1.0 - low_pass(std::ldexp(r, -top_shell_ - 1));
        }
}

double DyadicFilterBank::multiplier(int j, int a, int b) const {
    if (j < -1 || j > top_shell_) throw ConfigError("shell index out of range: " + std::to_string(j));
    return multipliers_[static_cast<std::size_t>(j + 1)][grid_.flat(a, b)];
}

double DyadicFilterBank::partition_defect() const {
    const double covered = inner_radius(top_shell_);
    const int n = grid_.n();
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (radius(grid_, a, b) > covered) continue;
            const std::size_t p = grid_.flat(a, b);
            double sum = 0.0;
            for (const auto& m : multipliers_) sum += m[p];
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    return worst;
}

DyadicFilterBank build_filter_bank(const GridSpec& grid) { return DyadicFilterBank(grid); }

SpectralField project_shell(const SpectralField& F, int j, const DyadicFilterBank& bank) {
    if (!(F.grid() == bank.grid())) throw ConfigError("filter bank built for a different grid");
    if (j < -1 || j > bank.top_shell())
        throw ConfigError("shell index " + std::to_string(j) + " outside [-1, " + std::to_string(bank.top_shell()) + "]");
    SpectralField out(F.grid());
    const int n = F.grid().n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out(a, b) = bank.multiplier(j, a, b) * F(a, b);
    return out;
}

RealField project_shell(const RealField& f, int j, const DyadicFilterBank& bank) {
    return inverse(project_shell(forward(f), j, bank));
}

RealField partial_sum(const RealField& f, int j, const DyadicFilterBank& bank) {
    if (j < 0) throw ConfigError("partial sum index must be >= 0");
    const auto F = forward(f);
    SpectralField acc(f.grid());
    for (int k = -1; k <= std::min(j - 1, bank.top_shell()); ++k) acc += project_shell(F, k, bank);
    return inverse(acc);
}

RealField ShellDecomposition::reconstruct() const {
    RealField sum(grid);
    for (const auto& b : blocks) sum += b;
    return sum;
}

ShellDecomposition decompose(const RealField& f, const DyadicFilterBank& bank) {
    const auto F = forward(f);
    ShellDecomposition d{f.grid(), {}};
    for (int j = -1; j <= bank.top_shell(); ++j) d.blocks.push_back(inverse(project_shell(F, j, bank)));
    return d;
}

std::vector<double> shell_lp_norms(const SpectralField& F, double p, const DyadicFilterBank& bank) {
    check_exponent(p, "p");
    std::vector<double> norms;
    norms.reserve(static_cast<std::size_t>(bank.shell_count()));
    for (int j = -1; j <= bank.top_shell(); ++j) norms.push_back(lq_norm(inverse(project_shell(F, j, bank)), p));
    return norms;
}

double besov_from_shell_norms(const std::vector<double>& shell_norms, double s, double q_index) {
    check_exponent(q_index, "q_index");
    if (!std::isfinite(s)) throw ConfigError("smoothness index must be finite");
    double acc = 0.0;
    for (std::size_t idx = 0; idx < shell_norms.size(); ++idx) {
        const int j = static_cast<int>(idx) - 1;
        const double term = std::exp2(j * s) * shell_norms[idx];
        if (std::isinf(q_index))
            acc = std::max(acc, term);
        else
            acc += std::pow(term, q_index);
    }
    return std::isinf(q_index) ? acc : std::pow(acc, 1.0 / q_index);
}

double besov_norm(const SpectralField& F, double s, double p, double q_index, const DyadicFilterBank& bank) {
    check_exponent(q_index, "q_index");
    return besov_from_shell_norms(shell_lp_norms(F, p, bank), s, q_index);
}

double besov_norm(const RealField& f, double s, double p, double q_index, const DyadicFilterBank& bank) {
    return besov_norm(forward(f), s, p, q_index, bank);
}

bool is_shell_supported(const SpectralField& F, int j, double rel_tol) {
    const auto& grid = F.grid();
    const double lo = DyadicFilterBank::inner_radius(j);
    const double hi = DyadicFilterBank::outer_radius(j);
    const double floor = rel_tol * F.max_abs();
    const int n = grid.n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double r = radius(grid, a, b);
            if ((r < lo || r > hi) && std::abs(F(a, b)) > floor) return false;
        }
    return true;
}

bool BernsteinReport::within_l2_envelope(double tol) const {
    if (!l2_envelope_low || !l2_envelope_high) return false;
    return lower_ratio >= *l2_envelope_low - tol && lower_ratio <= *l2_envelope_high + tol;
}

BernsteinReport bernstein_check(const RealField& f, double alpha, double p, double q, int j,
                                const DyadicFilterBank& bank) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be finite and >= 0");
    check_exponent(p, "p");
    check_exponent(q, "q");
    if (p > q) throw ConfigError("Bernstein check needs p <= q");
    if (j < 0 || j > bank.top_shell()) throw ConfigError("shell index out of range for Bernstein check");
    const auto F = forward(f);
    if (!is_shell_supported(F, j)) throw ConfigError("field is not supported in shell " + std::to_string(j));

    const RealField d = inverse(fractional_laplacian(F, alpha));
    const double lhs = lq_norm(d, q);
    const double dual = std::isinf(q) ? 1.0 / p : 1.0 / p - 1.0 / q;

    BernsteinReport r;
    r.shell = j;
    r.alpha = alpha;
    r.p = p;
    r.q = q;
    r.lower_ratio = lhs / (std::exp2(2.0 * alpha * j) * lq_norm(f, q));
    r.upper_ratio = lhs / (std::exp2(2.0 * alpha * j + 2.0 * j * dual) * lq_norm(f, p));
    if (p == 2.0 && q == 2.0) {
        r.l2_envelope_low = std::pow(0.75, 2.0 * alpha);
        r.l2_envelope_high = std::pow(8.0 / 3.0, 2.0 * alpha);
    }
    return r;
}

}  // namespace mhd2d
