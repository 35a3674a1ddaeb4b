#pragma once

#include <array>
#include <limits>
#include <utility>

#include "mhd2d/fields.hpp"

namespace mhd2d {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// FFTW planning mode for every transform in the process. Deterministic
/// planning (the default) always picks the same algorithm, so repeated runs
/// are bitwise identical; measured planning may differ between runs.
void set_deterministic_planning(bool on);
bool deterministic_planning();

/// coeff(k) = (1/n^2) sum_x f(x) e^{-i k.x}, the grid version of
/// (1/4pi^2) int f e^{-ik.x} dx. Output is made exactly Hermitian.
/// Throws NonFiniteError on non-finite input.
SpectralField forward(const RealField& f);
/// Inverse of forward; the real part of the synthesized field.
RealField inverse(const SpectralField& F);
/// Largest |imaginary part| of the synthesized field (reality diagnostic).
double inverse_imaginary_defect(const SpectralField& F);

/// (-Delta)^beta: coeff(k) -> |k|^{2 beta} coeff(k), mean mode -> 0.
SpectralField fractional_laplacian(const SpectralField& F, double beta);
/// Lambda^beta = (-Delta)^{beta/2}: coeff(k) -> |k|^beta coeff(k), mean mode -> 0.
SpectralField lambda_power(const SpectralField& F, double beta);
/// coeff(k) -> i k_axis coeff(k), axis in {1, 2}. The Nyquist line maps to 0.
SpectralField partial_derivative(const SpectralField& F, int axis);

/// Divergence-free field whose curl is the given mean-free scalar:
/// u_hat(k) = i (k2, -k1) w_hat(k) / |k|^2. Throws MeanModeError when the
/// mean coefficient is not zero.
std::pair<SpectralField, SpectralField> biot_savart(const SpectralField& curl_hat);
/// Scalar curl d1 v2 - d2 v1.
SpectralField curl(const SpectralField& v1, const SpectralField& v2);

/// Zeroes coeff(k) when |k1| or |k2| exceeds dealias_fraction * n/2.
SpectralField dealias(const SpectralField& F);
void dealias_in_place(SpectralField& F);

/// Grid quadrature (h^2 sum |f|^q)^{1/q}; q = kInfinity gives max |f|.
/// Throws ConfigError for q < 1 or NaN.
double lq_norm(const RealField& f, double q);
/// sqrt(4 pi^2 sum_k |coeff(k)|^2).
double l2_norm(const SpectralField& F);

/// Pointwise Euclidean magnitude of a 2-vector field.
RealField magnitude(const RealField& a, const RealField& b);

}  // namespace mhd2d
