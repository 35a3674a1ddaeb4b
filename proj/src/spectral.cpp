#include "mhd2d/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "mhd2d/errors.hpp"

namespace mhd2d {

namespace {

std::atomic<bool> g_deterministic{true};

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// Plans are created once per (n, mode) and shared. Execution goes through the
// new-array interface, which FFTW documents as thread-safe; only planning
// needs the lock.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, p] : plans_) {
            fftw_destroy_plan(p.forward);
            fftw_destroy_plan(p.backward);
        }
    }

    const PlanPair& get(int n) {
        const bool det = g_deterministic.load();
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, det);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        const unsigned flags = (det ? FFTW_ESTIMATE : FFTW_MEASURE) | FFTW_UNALIGNED;
        const std::size_t count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
        auto* in = fftw_alloc_complex(count);
        auto* out = fftw_alloc_complex(count);
        PlanPair p;
        p.forward = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, flags);
        p.backward = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, flags);
        fftw_free(in);
        fftw_free(out);
        return plans_.emplace(key, p).first->second;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, bool>, PlanPair> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

std::vector<Complex> synthesize(const SpectralField& F) {
    const auto& grid = F.grid();
    std::vector<Complex> in(F.coeffs().begin(), F.coeffs().end());
    std::vector<Complex> out(grid.size());
    fftw_execute_dft(plan_cache().get(grid.n()).backward, as_fftw(in.data()), as_fftw(out.data()));
    return out;
}

void require_finite_exponent(double beta) {
    if (!std::isfinite(beta)) throw ConfigError("exponent must be finite");
    if (beta < 0.0) throw ConfigError("exponent must be nonnegative");
}

template <class Symbol>
SpectralField apply_radial(const SpectralField& F, Symbol&& symbol) {
    const auto& grid = F.grid();
    SpectralField out(grid);
    const int n = grid.n();
    for (int a = 0; a < n; ++a) {
        const double k1 = grid.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            const double k2 = grid.wavenumber(b);
            const double k_sq = k1 * k1 + k2 * k2;
            out(a, b) = k_sq == 0.0 ? Complex{} : symbol(k_sq) * F(a, b);
        }
    }
    return out;
}

}  // namespace

void set_deterministic_planning(bool on) { g_deterministic.store(on); }
bool deterministic_planning() { return g_deterministic.load(); }

SpectralField forward(const RealField& f) {
    if (!f.all_finite()) throw NonFiniteError("forward transform: non-finite sample");
    const auto& grid = f.grid();
    std::vector<Complex> in(grid.size());
    auto v = f.values();
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = Complex(v[i], 0.0);
    std::vector<Complex> out(grid.size());
    fftw_execute_dft(plan_cache().get(grid.n()).forward, as_fftw(in.data()), as_fftw(out.data()));
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& c : out) c *= scale;
    SpectralField F(grid, std::move(out));
    F.symmetrize();
    return F;
}

RealField inverse(const SpectralField& F) {
    auto z = synthesize(F);
    std::vector<double> re(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) re[i] = z[i].real();
    return RealField(F.grid(), std::move(re));
}

double inverse_imaginary_defect(const SpectralField& F) {
    double worst = 0.0;
    for (const auto& z : synthesize(F)) worst = std::max(worst, std::abs(z.imag()));
    return worst;
}

SpectralField fractional_laplacian(const SpectralField& F, double beta) {
    require_finite_exponent(beta);
    if (beta == 1.0) return apply_radial(F, [](double k_sq) { return k_sq; });
    return apply_radial(F, [beta](double k_sq) { return std::pow(k_sq, beta); });
}

SpectralField lambda_power(const SpectralField& F, double beta) {
    require_finite_exponent(beta);
    return apply_radial(F, [beta](double k_sq) { return std::pow(k_sq, 0.5 * beta); });
}

SpectralField partial_derivative(const SpectralField& F, int axis) {
    if (axis != 1 && axis != 2) throw ConfigError("derivative axis must be 1 or 2");
    const auto& grid = F.grid();
    SpectralField out(grid);
    const int n = grid.n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double k = axis == 1 ? grid.odd_wavenumber(a) : grid.odd_wavenumber(b);
            out(a, b) = Complex(0.0, k) * F(a, b);
        }
    return out;
}

std::pair<SpectralField, SpectralField> biot_savart(const SpectralField& curl_hat) {
    const auto& grid = curl_hat.grid();
    const double scale = std::max(1.0, curl_hat.max_abs());
    if (std::abs(curl_hat.mean()) > 1e-13 * scale)
        throw MeanModeError("Biot-Savart inversion needs a mean-free input (coeff(0) != 0)");
    SpectralField v1(grid), v2(grid);
    const int n = grid.n();
    for (int a = 0; a < n; ++a) {
        const double k1 = grid.wavenumber(a);
        const double o1 = grid.odd_wavenumber(a);
        for (int b = 0; b < n; ++b) {
            const double k2 = grid.wavenumber(b);
            const double o2 = grid.odd_wavenumber(b);
            const double k_sq = k1 * k1 + k2 * k2;
            if (k_sq == 0.0) continue;
            const Complex w = curl_hat(a, b) / k_sq;
            v1(a, b) = Complex(0.0, o2) * w;
            v2(a, b) = Complex(0.0, -o1) * w;
        }
    }
    return {std::move(v1), std::move(v2)};
}

SpectralField curl(const SpectralField& v1, const SpectralField& v2) {
    return partial_derivative(v2, 1) - partial_derivative(v1, 2);
}

void dealias_in_place(SpectralField& F) {
    const auto& grid = F.grid();
    const double cutoff = grid.dealias_cutoff();
    const int n = grid.n();
    for (int a = 0; a < n; ++a) {
        const bool row_cut = std::abs(grid.wavenumber(a)) > cutoff;
        for (int b = 0; b < n; ++b)
            if (row_cut || std::abs(grid.wavenumber(b)) > cutoff) F(a, b) = Complex{};
    }
}

SpectralField dealias(const SpectralField& F) {
    SpectralField out = F;
    dealias_in_place(out);
    return out;
}

double lq_norm(const RealField& f, double q) {
    if (std::isnan(q) || q < 1.0) throw ConfigError("Lebesgue exponent must be >= 1");
    auto v = f.values();
    if (std::isinf(q)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    double sum = 0.0;
    if (q == 2.0) {
        for (double x : v) sum += x * x;
    } else {
        for (double x : v) sum += std::pow(std::abs(x), q);
    }
    return std::pow(f.grid().cell_area() * sum, 1.0 / q);
}

double l2_norm(const SpectralField& F) {
    double sum = 0.0;
    for (const auto& c : F.coeffs()) sum += std::norm(c);
    return std::sqrt(4.0 * std::numbers::pi * std::numbers::pi * sum);
}

RealField magnitude(const RealField& a, const RealField& b) {
    RealField out(a.grid());
    auto o = out.values();
    auto x = a.values();
    auto y = b.values();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = std::hypot(x[i], y[i]);
    return out;
}

}  // namespace mhd2d
