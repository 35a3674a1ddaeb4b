#include "mhd2d/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhd2d/errors.hpp"

namespace mhd2d {

GridSpec::GridSpec(int n, double dealias_fraction) : n_(n), dealias_fraction_(dealias_fraction) {
    if (n < 8 || n % 2 != 0) throw ConfigError("grid size must be an even integer >= 8, got " + std::to_string(n));
    if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
        throw ConfigError("dealias fraction must lie in (0, 1]");
}

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw ConfigError("fields live on different grids");
}

}  // namespace

RealField::RealField(const GridSpec& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw ConfigError("sample count does not match grid");
}

bool RealField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

RealField& RealField::operator*=(double s) {
    for (auto& v : values_) v *= s;
    return *this;
}

RealField& RealField::operator+=(const RealField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

RealField& RealField::operator-=(const RealField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

RealField operator*(double s, RealField f) { return f *= s; }
RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }

RealField multiply(const RealField& a, const RealField& b) {
    require_same_grid(a.grid(), b.grid());
    RealField out(a.grid());
    auto o = out.values();
    auto x = a.values();
    auto y = b.values();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] * y[i];
    return out;
}

SpectralField::SpectralField(const GridSpec& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size()) throw ConfigError("coefficient count does not match grid");
}

bool SpectralField::all_finite() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

double SpectralField::hermitian_defect() const {
    const int n = grid_.n();
    double worst = 0.0;
    for (int a = 0; a < n; ++a) {
        const int ma = (n - a) % n;
        for (int b = 0; b < n; ++b) {
            const int mb = (n - b) % n;
            worst = std::max(worst, std::abs((*this)(ma, mb) - std::conj((*this)(a, b))));
        }
    }
    return worst;
}

void SpectralField::symmetrize() {
    const int n = grid_.n();
    for (int a = 0; a < n; ++a) {
        const int ma = (n - a) % n;
        for (int b = 0; b < n; ++b) {
            const int mb = (n - b) % n;
            const std::size_t p = grid_.flat(a, b);
            const std::size_t q = grid_.flat(ma, mb);
            if (q < p) continue;
            if (p == q) {
                coeffs_[p] = Complex(coeffs_[p].real(), 0.0);
                continue;
            }
            // (x + conj y)/2 and (y + conj x)/2 round to exact conjugates
            const Complex avg = 0.5 * (coeffs_[p] + std::conj(coeffs_[q]));
            coeffs_[p] = avg;
            coeffs_[q] = std::conj(avg);
        }
    }
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SpectralField operator*(double s, SpectralField f) { return f *= s; }
SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }

}  // namespace mhd2d
