#pragma once

#include <utility>

#include "mhd2d/fields.hpp"

namespace mhd2d {

/// Spectral state of the vorticity-current system. u and b are recovered
/// from omega and j by Biot-Savart inversion.
struct FlowState {
    SpectralField omega_hat;
    SpectralField j_hat;
    double t = 0.0;
    double beta = 1.5;

    const GridSpec& grid() const { return omega_hat.grid(); }
};

/// Builds a state and checks its invariants: matching grids, finite
/// coefficients, zero mean modes, beta in (0, 2]. Throws ConfigError or
/// MeanModeError.
FlowState make_state(SpectralField omega_hat, SpectralField j_hat, double t, double beta);
FlowState zero_state(const GridSpec& grid, double beta);

struct StepControl {
    double cfl_number = 0.4;
    double dt_max = 1e-2;
    bool nonlinear_enabled = true;
    bool diffusion_enabled = true;
    /// Steps shorter than dt_min_fraction * dt_max count as CFL collapse.
    double dt_min_fraction = 1e-9;

    void validate() const;
};

/// Velocity and magnetic field in physical space.
struct PhysicalFields {
    RealField u1, u2, b1, b2;
};

PhysicalFields physical_fields(const FlowState& state);

/// max over the grid of |u| + |b| (Euclidean magnitudes).
double max_signal_speed(const PhysicalFields& fields);

/// Non-diffusive tendencies (d omega/dt, d j/dt) of the vorticity-current
/// system, dealiased and mean-free. Throws NumericalAbort on non-finite values.
std::pair<SpectralField, SpectralField> compute_rhs(const FlowState& state);

/// min(dt_max, cfl * h / (max(|u| + |b|) + 1e-12)).
double cfl_dt(const FlowState& state, const StepControl& ctl);

/// One integrating-factor RK4 step of length dt. The diffusion
/// e^{-|k|^{2 beta} dt} is applied exactly; the remaining terms go through
/// classical RK4 in the transformed variable.
FlowState step(const FlowState& state, const StepControl& ctl, double dt);
/// Step with dt = cfl_dt(state, ctl). Throws NumericalAbort on CFL collapse
/// or a non-finite result.
FlowState step(const FlowState& state, const StepControl& ctl);

}  // namespace mhd2d
