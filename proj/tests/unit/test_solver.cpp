#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mhd2d/errors.hpp"
#include "mhd2d/initial_conditions.hpp"
#include "mhd2d/solver.hpp"
#include "mhd2d/spectral.hpp"

using namespace mhd2d;
using std::numbers::pi;

namespace {

FlowState single_mode_b(int n, double beta, double amp = 1.0) {
    return make_initial_condition("single_mode_b", {{"amplitude", amp}}, 0, GridSpec(n), beta);
}

}  // namespace

TEST_CASE("make_state validation") {
    const GridSpec g(16);
    SpectralField w(g), j(g);
    CHECK_NOTHROW(make_state(w, j, 0.0, 1.5));
    CHECK_THROWS_AS(make_state(w, j, 0.0, 0.0), ConfigError);
    CHECK_THROWS_AS(make_state(w, j, 0.0, 2.5), ConfigError);
    CHECK_THROWS_AS(make_state(w, j, -1.0, 1.5), ConfigError);
    SpectralField m = j;
    m.at(0, 0) = 1e-3;
    CHECK_THROWS_AS(make_state(w, m, 0.0, 1.5), MeanModeError);
    SpectralField bad = j;
    bad.at(1, 0) = std::nan("");
    CHECK_THROWS_AS(make_state(bad, j, 0.0, 1.5), NonFiniteError);
    CHECK_THROWS_AS(make_state(SpectralField(GridSpec(8)), j, 0.0, 1.5), ConfigError);
}

TEST_CASE("zero state") {
    const auto z = zero_state(GridSpec(16), 1.5);
    auto [dw, dj] = compute_rhs(z);
    CHECK(dw.max_abs() == 0.0);
    CHECK(dj.max_abs() == 0.0);
    const StepControl ctl;
    CHECK(cfl_dt(z, ctl) == ctl.dt_max);
    const auto next = step(z, ctl);
    CHECK(next.omega_hat.max_abs() == 0.0);
    CHECK(next.j_hat.max_abs() == 0.0);
    CHECK(next.t == ctl.dt_max);
}

TEST_CASE("single-mode b has no nonlinear tendency") {
    const auto s = single_mode_b(32, 1.5);
    auto [dw, dj] = compute_rhs(s);
    CHECK(dw.max_abs() < 1e-15);
    CHECK(dj.max_abs() < 1e-15);
}

TEST_CASE("physical fields and signal speed") {
    const auto s = single_mode_b(64, 1.5, 2.0);
    const auto pf = physical_fields(s);
    const double h = 2 * pi / 64;
    CHECK(pf.b1(3, 16) == doctest::Approx(2.0).epsilon(1e-14));  // 2 sin(x2) at x2 = pi / 2
    CHECK(pf.b1(0, 5) == doctest::Approx(2.0 * std::sin(5 * h)).epsilon(1e-14));
    CHECK(std::abs(pf.b2(4, 7)) < 1e-15);
    CHECK(max_signal_speed(pf) == doctest::Approx(2.0).epsilon(1e-14));

    StepControl ctl;
    ctl.dt_max = 1.0;
    CHECK(cfl_dt(s, ctl) == doctest::Approx(0.4 * (2 * pi / 64) / 2.0).epsilon(1e-12));
    CHECK(cfl_dt(s, ctl) == doctest::Approx(0.019634954).epsilon(1e-8));
    ctl.dt_max = 0.01;
    CHECK(cfl_dt(s, ctl) == 0.01);
}

TEST_CASE("integrating factor is exact on a linear mode") {
    const GridSpec g(32);
    SpectralField j(g);
    j.at(1, 0) = Complex(0.3, -0.2);
    j.at(-1, 0) = std::conj(j.at(1, 0));
    const auto s = make_state(SpectralField(g), j, 0.0, 1.25);
    StepControl ctl;
    ctl.nonlinear_enabled = false;
    ctl.dt_max = 1.0;
    const auto next = step(s, ctl, 0.1);
    CHECK(std::abs(next.j_hat.at(1, 0) - std::exp(-0.1) * j.at(1, 0)) <= 1e-15);
    CHECK(next.t == doctest::Approx(0.1));
}

TEST_CASE("linear decay of every mode") {
    const GridSpec g(32);
    for (double beta : {1.0, 1.5, 2.0}) {
        auto s = make_initial_condition("random_band", {{"k_max", 10.0}}, 11, g, beta);
        StepControl ctl;
        ctl.nonlinear_enabled = false;
        const double dt = 0.01;
        const auto next = step(s, ctl, dt);
        double worst = 0.0;
        for (int a = 0; a < g.n(); ++a)
            for (int b = 0; b < g.n(); ++b) {
                const double k1 = g.wavenumber(a), k2 = g.wavenumber(b);
                const double factor = std::exp(-std::pow(k1 * k1 + k2 * k2, beta) * dt);
                const Complex expect = factor * s.j_hat(a, b);
                if (std::abs(expect) > 0.0) worst = std::max(worst, std::abs(next.j_hat(a, b) - expect) / std::abs(expect));
                CHECK(next.omega_hat(a, b) == s.omega_hat(a, b));
            }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("exact decaying solution") {
    for (double beta : {1.1, 2.0}) {
        auto s = single_mode_b(32, beta);
        StepControl ctl;
        for (int i = 0; i < 20; ++i) s = step(s, ctl, 0.01);
        const RealField j = inverse(s.j_hat);
        const double h = 2 * pi / 32;
        double err = 0.0;
        for (int a = 0; a < 32; ++a)
            for (int b = 0; b < 32; ++b) err = std::max(err, std::abs(j(a, b) + std::exp(-s.t) * std::cos(h * b)));
        CHECK(err <= 1e-10);
    }
}

TEST_CASE("nonlinear step keeps mean zero, Hermitian, dealiased") {
    const GridSpec g(32);
    auto s = make_initial_condition("random_band", {}, 3, g, 1.5);
    StepControl ctl;
    for (int i = 0; i < 5; ++i) s = step(s, ctl);
    CHECK(s.omega_hat.mean() == Complex(0.0));
    CHECK(s.j_hat.mean() == Complex(0.0));
    CHECK(s.omega_hat.hermitian_defect() == 0.0);
    CHECK(s.j_hat.hermitian_defect() == 0.0);
    double outside = 0.0;
    for (int a = 0; a < g.n(); ++a)
        for (int b = 0; b < g.n(); ++b)
            if (std::abs(g.wavenumber(a)) > g.dealias_cutoff() || std::abs(g.wavenumber(b)) > g.dealias_cutoff())
                outside = std::max({outside, std::abs(s.omega_hat(a, b)), std::abs(s.j_hat(a, b))});
    CHECK(outside == 0.0);
}

TEST_CASE("step aborts") {
    const auto s = single_mode_b(16, 1.5);
    StepControl ctl;
    try {
        step(s, ctl, 1e-15);
        FAIL("expected an abort");
    } catch (const NumericalAbort& e) {
        CHECK(e.cause() == AbortCause::CflCollapse);
    }
    CHECK_THROWS_AS(step(s, ctl, -1.0), ConfigError);

    StepControl bad;
    bad.cfl_number = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    // a state too large for the step blows up to non-finite values
    auto big = make_initial_condition("random_band", {{"k_max", 4.0}, {"u_rms", 1e150}, {"b_rms", 1e150}}, 1, GridSpec(16), 1.5);
    try {
        step(big, ctl, 0.01);
        FAIL("expected an abort");
    } catch (const NumericalAbort& e) {
        CHECK(e.cause() == AbortCause::NonFinite);
    }
}
