#pragma once

#include <cstddef>
#include <numbers>

namespace mhd2d {

/// Uniform n x n grid on the periodic square [0, 2pi)^2.
///
/// Physical sample (i, l) sits at x = (2 pi i / n, 2 pi l / n). The frequency
/// lattice uses FFT ordering: storage index a maps to wavenumber a for
/// a < n/2 and a - n otherwise, so every k satisfies -n/2 <= k < n/2.
class GridSpec {
public:
    static constexpr double kDefaultDealias = 2.0 / 3.0;

    /// Throws ConfigError unless n is even and >= 8 and the fraction is in (0, 1].
    explicit GridSpec(int n, double dealias_fraction = kDefaultDealias);

    int n() const { return n_; }
    double dealias_fraction() const { return dealias_fraction_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }
    double spacing() const { return 2.0 * std::numbers::pi / n_; }
    /// Quadrature weight h^2 of one grid cell.
    double cell_area() const { return spacing() * spacing(); }

    int wavenumber(int index) const { return index < n_ / 2 ? index : index - n_; }
    int index_of(int wavenumber) const { return wavenumber >= 0 ? wavenumber : wavenumber + n_; }
    bool is_nyquist(int wavenumber) const { return wavenumber == -n_ / 2; }

    /// Wavenumber used for odd (first-derivative) symbols: the unpaired
    /// Nyquist mode gets 0 so odd operators keep the field real.
    double odd_wavenumber(int index) const {
        const int k = wavenumber(index);
        return is_nyquist(k) ? 0.0 : static_cast<double>(k);
    }

    std::size_t flat(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(col);
    }

    /// Largest |k_axis| kept by the truncation rule.
    double dealias_cutoff() const { return dealias_fraction_ * (n_ / 2); }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    int n_;
    double dealias_fraction_;
};

}  // namespace mhd2d
