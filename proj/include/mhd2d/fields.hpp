#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mhd2d/grid.hpp"

namespace mhd2d {

using Complex = std::complex<double>;

/// Real samples of a scalar field, row index = x1 index, column = x2 index.
class RealField {
public:
    explicit RealField(const GridSpec& grid) : grid_(grid), values_(grid.size(), 0.0) {}
    RealField(const GridSpec& grid, std::vector<double> values);

    /// Samples f(x1, x2) at every grid point.
    template <class F>
    static RealField sample(const GridSpec& grid, F&& f) {
        RealField out(grid);
        const double h = grid.spacing();
        for (int i = 0; i < grid.n(); ++i)
            for (int l = 0; l < grid.n(); ++l) out.values_[grid.flat(i, l)] = f(h * i, h * l);
        return out;
    }

    const GridSpec& grid() const { return grid_; }
    double operator()(int i, int l) const { return values_[grid_.flat(i, l)]; }
    double& operator()(int i, int l) { return values_[grid_.flat(i, l)]; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    bool all_finite() const;

    RealField& operator*=(double s);
    RealField& operator+=(const RealField& other);
    RealField& operator-=(const RealField& other);

private:
    GridSpec grid_;
    std::vector<double> values_;
};

RealField operator*(double s, RealField f);
RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
/// Pointwise product.
RealField multiply(const RealField& a, const RealField& b);

/// Fourier-series coefficients over the full n x n lattice, stored in FFT
/// order with row index = k1 index. Real fields satisfy coeff(-k) = conj(coeff(k)).
class SpectralField {
public:
    explicit SpectralField(const GridSpec& grid) : grid_(grid), coeffs_(grid.size(), Complex{}) {}
    SpectralField(const GridSpec& grid, std::vector<Complex> coeffs);

    const GridSpec& grid() const { return grid_; }

    /// Access by wavenumber pair, each in [-n/2, n/2).
    const Complex& at(int k1, int k2) const { return coeffs_[grid_.flat(grid_.index_of(k1), grid_.index_of(k2))]; }
    Complex& at(int k1, int k2) { return coeffs_[grid_.flat(grid_.index_of(k1), grid_.index_of(k2))]; }

    /// Access by storage index.
    const Complex& operator()(int a, int b) const { return coeffs_[grid_.flat(a, b)]; }
    Complex& operator()(int a, int b) { return coeffs_[grid_.flat(a, b)]; }

    std::span<const Complex> coeffs() const { return coeffs_; }
    std::span<Complex> coeffs() { return coeffs_; }

    const Complex& mean() const { return coeffs_[0]; }

    bool all_finite() const;
    /// max_k |coeff(-k) - conj(coeff(k))|
    double hermitian_defect() const;
    /// Replaces each pair by its Hermitian average, making the symmetry exact.
    void symmetrize();
    double max_abs() const;

    SpectralField& operator*=(double s);
    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);

private:
    GridSpec grid_;
    std::vector<Complex> coeffs_;
};

SpectralField operator*(double s, SpectralField f);
SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);

}  // namespace mhd2d
