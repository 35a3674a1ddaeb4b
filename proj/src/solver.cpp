#include "mhd2d/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "mhd2d/errors.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

namespace {

double max_speed_or_nan(const FlowState& state) {
    try {
        const auto f = physical_fields(state);
        double m = 0.0;
        auto a = f.u1.values();
        auto b = f.u2.values();
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::hypot(a[i], b[i]));
        return m;
    } catch (const std::exception&) {
        return std::nan("");
    }
}

[[noreturn]] void abort_non_finite(const FlowState& state, const char* where) {
    std::ostringstream msg;
    msg << "non-finite values in " << where << " at t = " << state.t;
    throw NumericalAbort(AbortCause::NonFinite, state.t, max_speed_or_nan(state), msg.str());
}

/// e^{-|k|^{2 beta} h} per lattice mode.
std::vector<double> decay_factors(const GridSpec& grid, double beta, double h) {
    std::vector<double> e(grid.size());
    const int n = grid.n();
    for (int a = 0; a < n; ++a) {
        const double k1 = grid.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            const double k2 = grid.wavenumber(b);
            const double k_sq = k1 * k1 + k2 * k2;
            const double rate = beta == 1.0 ? k_sq : std::pow(k_sq, beta);
            e[grid.flat(a, b)] = std::exp(-rate * h);
        }
    }
    return e;
}

/// Spectral (omega, j) pair used as the RK4 stage variable.
struct Pair {
    SpectralField w, j;
};

}  // namespace

FlowState make_state(SpectralField omega_hat, SpectralField j_hat, double t, double beta) {
    if (!(omega_hat.grid() == j_hat.grid())) throw ConfigError("omega and j live on different grids");
    if (!(beta > 0.0 && beta <= 2.0)) throw ConfigError("beta must lie in (0, 2]");
    if (!std::isfinite(t) || t < 0.0) throw ConfigError("time must be finite and >= 0");
    if (!omega_hat.all_finite() || !j_hat.all_finite()) throw NonFiniteError("state has non-finite coefficients");
    if (omega_hat.mean() != Complex{} || j_hat.mean() != Complex{})
        throw MeanModeError("vorticity and current must have zero mean mode");
    return FlowState{std::move(omega_hat), std::move(j_hat), t, beta};
}

FlowState zero_state(const GridSpec& grid, double beta) {
    return make_state(SpectralField(grid), SpectralField(grid), 0.0, beta);
}

void StepControl::validate() const {
    if (!(cfl_number > 0.0 && cfl_number <= 1.0)) throw ConfigError("cfl_number must lie in (0, 1]");
    if (!(dt_max > 0.0) || !std::isfinite(dt_max)) throw ConfigError("dt_max must be positive");
}

PhysicalFields physical_fields(const FlowState& state) {
    auto [u1, u2] = biot_savart(state.omega_hat);
    auto [b1, b2] = biot_savart(state.j_hat);
    return {inverse(u1), inverse(u2), inverse(b1), inverse(b2)};
}

double max_signal_speed(const PhysicalFields& f) {
    double m = 0.0;
    auto u1 = f.u1.values();
    auto u2 = f.u2.values();
    auto b1 = f.b1.values();
    auto b2 = f.b2.values();
    for (std::size_t i = 0; i < u1.size(); ++i) m = std::max(m, std::hypot(u1[i], u2[i]) + std::hypot(b1[i], b2[i]));
    return m;
}

std::pair<SpectralField, SpectralField> compute_rhs(const FlowState& state) {
    const auto& grid = state.grid();
    const SpectralField w = dealias(state.omega_hat);
    const SpectralField j = dealias(state.j_hat);
    auto [u1h, u2h] = biot_savart(w);
    auto [b1h, b2h] = biot_savart(j);

    const RealField u1 = inverse(u1h), u2 = inverse(u2h);
    const RealField b1 = inverse(b1h), b2 = inverse(b2h);
    const RealField wx = inverse(partial_derivative(w, 1)), wy = inverse(partial_derivative(w, 2));
    const RealField jx = inverse(partial_derivative(j, 1)), jy = inverse(partial_derivative(j, 2));
    const RealField d1b1 = inverse(partial_derivative(b1h, 1)), d2b1 = inverse(partial_derivative(b1h, 2));
    const RealField d1b2 = inverse(partial_derivative(b2h, 1));
    const RealField d1u1 = inverse(partial_derivative(u1h, 1)), d2u1 = inverse(partial_derivative(u1h, 2));
    const RealField d1u2 = inverse(partial_derivative(u2h, 1));

    RealField n_omega(grid), n_j(grid);
    auto no = n_omega.values();
    auto nj = n_j.values();
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const double U1 = u1.values()[p], U2 = u2.values()[p];
        const double B1 = b1.values()[p], B2 = b2.values()[p];
        const double WX = wx.values()[p], WY = wy.values()[p];
        const double JX = jx.values()[p], JY = jy.values()[p];
        no[p] = -(U1 * WX + U2 * WY) + (B1 * JX + B2 * JY);
        nj[p] = -(U1 * JX + U2 * JY) + (B1 * WX + B2 * WY) +
                2.0 * d1b1.values()[p] * (d2u1.values()[p] + d1u2.values()[p]) -
                2.0 * d1u1.values()[p] * (d2b1.values()[p] + d1b2.values()[p]);
    }
    if (!n_omega.all_finite() || !n_j.all_finite()) abort_non_finite(state, "nonlinear tendencies");

    SpectralField tw = forward(n_omega);
    SpectralField tj = forward(n_j);
    dealias_in_place(tw);
    dealias_in_place(tj);
    tw.coeffs()[0] = Complex{};
    tj.coeffs()[0] = Complex{};
    return {std::move(tw), std::move(tj)};
}

double cfl_dt(const FlowState& state, const StepControl& ctl) {
    const double speed = max_signal_speed(physical_fields(state));
    const double dt = ctl.cfl_number * state.grid().spacing() / (speed + 1e-12);
    return std::min(ctl.dt_max, dt);
}

FlowState step(const FlowState& state, const StepControl& ctl, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive and finite");
    if (dt < ctl.dt_min_fraction * ctl.dt_max) {
        std::ostringstream msg;
        msg << "time step collapsed to " << dt << " at t = " << state.t;
        throw NumericalAbort(AbortCause::CflCollapse, state.t, max_speed_or_nan(state), msg.str());
    }
    const auto& grid = state.grid();
    const std::size_t size = grid.size();

    std::vector<double> e_half(size, 1.0), e_full(size, 1.0);
    if (ctl.diffusion_enabled) {
        e_half = decay_factors(grid, state.beta, 0.5 * dt);
        e_full = decay_factors(grid, state.beta, dt);
    }

    auto rhs = [&](const SpectralField& w, const SpectralField& j) -> Pair {
        if (!ctl.nonlinear_enabled) return {SpectralField(grid), SpectralField(grid)};
        FlowState s{w, j, state.t, state.beta};
        auto [tw, tj] = compute_rhs(s);
        return {std::move(tw), std::move(tj)};
    };

    const auto w0 = state.omega_hat.coeffs();
    const auto j0 = state.j_hat.coeffs();
    const double h = dt;

    // Lawson RK4: omega has no linear part, j decays with e^{-|k|^{2 beta} t}.
    const Pair k1 = rhs(state.omega_hat, state.j_hat);

    SpectralField wa(grid), ja(grid);
    for (std::size_t p = 0; p < size; ++p) {
        wa.coeffs()[p] = w0[p] + 0.5 * h * k1.w.coeffs()[p];
        ja.coeffs()[p] = e_half[p] * (j0[p] + 0.5 * h * k1.j.coeffs()[p]);
    }
    const Pair k2 = rhs(wa, ja);

    SpectralField wb(grid), jb(grid);
    for (std::size_t p = 0; p < size; ++p) {
        wb.coeffs()[p] = w0[p] + 0.5 * h * k2.w.coeffs()[p];
        jb.coeffs()[p] = e_half[p] * j0[p] + 0.5 * h * k2.j.coeffs()[p];
    }
    const Pair k3 = rhs(wb, jb);

    SpectralField wc(grid), jc(grid);
    for (std::size_t p = 0; p < size; ++p) {
        wc.coeffs()[p] = w0[p] + h * k3.w.coeffs()[p];
        jc.coeffs()[p] = e_full[p] * j0[p] + h * e_half[p] * k3.j.coeffs()[p];
    }
    const Pair k4 = rhs(wc, jc);

    SpectralField w1(grid), j1(grid);
    const double sixth = h / 6.0;
    for (std::size_t p = 0; p < size; ++p) {
        w1.coeffs()[p] = w0[p] + sixth * (k1.w.coeffs()[p] + 2.0 * (k2.w.coeffs()[p] + k3.w.coeffs()[p]) + k4.w.coeffs()[p]);
        j1.coeffs()[p] = e_full[p] * j0[p] +
                         sixth * (e_full[p] * k1.j.coeffs()[p] +
                                  2.0 * e_half[p] * (k2.j.coeffs()[p] + k3.j.coeffs()[p]) + k4.j.coeffs()[p]);
    }

    FlowState next{std::move(w1), std::move(j1), state.t + dt, state.beta};
    if (!next.omega_hat.all_finite() || !next.j_hat.all_finite()) abort_non_finite(next, "state after step");
    return next;
}

FlowState step(const FlowState& state, const StepControl& ctl) { return step(state, ctl, cfl_dt(state, ctl)); }

}  // namespace mhd2d
