#include "mhd2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "mhd2d/errors.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

// ---------------------------------------------------------------- layout

MonitorLayout MonitorLayout::resolve(const RangeParams& params) {
    MonitorLayout layout;
    layout.beta = params.beta;
    layout.q_values = params.q_list.empty() ? std::vector<double>{2.0} : params.q_list;
    layout.r_values = params.r_list;

    const Interval q_ok = lebesgue_range(params.beta);
    if (params.s_list.empty()) {
        if (!smoothness_range(params.beta, 2.0).empty()) layout.besov_pairs.emplace_back(2.0, params.beta);
    } else {
        for (double q : layout.q_values) {
            if (!q_ok.contains(q)) continue;
            for (double s : params.s_list)
                if (smoothness_range(params.beta, q).contains(s)) layout.besov_pairs.emplace_back(q, s);
        }
    }
    return layout;
}

std::vector<std::string> MonitorLayout::column_names() const {
    std::vector<std::string> c = {"t",      "dt_used",  "l2_u",  "l2_b", "l2_lambda_beta_b", "energy_initial",
                                  "energy_residual", "l2_omega", "l2_j", "l2_lambda_beta_j"};
    for (double q : q_values) c.push_back("lq_omega_q" + format_number(q));
    for (double q : q_values) c.push_back("lq_j_q" + format_number(q));
    for (auto [q, s] : besov_pairs) c.push_back("besov_j_q" + format_number(q) + "_s" + format_number(s));
    for (const char* name : {"linf_omega", "linf_b", "linf_j", "linf_grad_j"}) c.emplace_back(name);
    for (double r : r_values) c.push_back("lr_grad_j_r" + format_number(r));
    c.emplace_back("tail_weight");
    c.emplace_back("rate_l2_lambda_beta_b_sq");
    c.emplace_back("rate_l2_lambda_beta_j_sq");
    c.emplace_back("int_l2_lambda_beta_b_sq");
    c.emplace_back("int_l2_lambda_beta_j_sq");
    for (auto [q, s] : besov_pairs) c.push_back("int_besov_j_q" + format_number(q) + "_s" + format_number(s));
    c.emplace_back("int_linf_grad_j");
    for (double r : r_values) c.push_back("int_lr_grad_j_r" + format_number(r));
    c.emplace_back("int_linf_j");
    return c;
}

std::vector<double> NormRecord::to_row() const {
    std::vector<double> row = {t, dt_used, l2_u, l2_b, l2_lambda_beta_b, energy_initial, energy_residual,
                               l2_omega, l2_j, l2_lambda_beta_j};
    row.insert(row.end(), lq_omega.begin(), lq_omega.end());
    row.insert(row.end(), lq_j.begin(), lq_j.end());
    row.insert(row.end(), besov_j.begin(), besov_j.end());
    row.insert(row.end(), {linf_omega, linf_b, linf_j, linf_grad_j});
    row.insert(row.end(), lr_grad_j.begin(), lr_grad_j.end());
    row.insert(row.end(), {tail_weight, rate_l2_lambda_beta_b_sq, rate_l2_lambda_beta_j_sq, int_l2_lambda_beta_b_sq,
                           int_l2_lambda_beta_j_sq});
    row.insert(row.end(), int_besov_j.begin(), int_besov_j.end());
    row.push_back(int_linf_grad_j);
    row.insert(row.end(), int_lr_grad_j.begin(), int_lr_grad_j.end());
    row.push_back(int_linf_j);
    return row;
}

NormRecord NormRecord::from_row(const MonitorLayout& layout, std::span<const double> row) {
    if (row.size() != layout.column_count()) throw ConfigError("series row does not match column layout");
    std::size_t i = 0;
    auto next = [&] { return row[i++]; };
    auto take = [&](std::size_t count) {
        std::vector<double> v(row.begin() + static_cast<std::ptrdiff_t>(i),
                              row.begin() + static_cast<std::ptrdiff_t>(i + count));
        i += count;
        return v;
    };
    const std::size_t nq = layout.q_values.size();
    const std::size_t nb = layout.besov_pairs.size();
    const std::size_t nr = layout.r_values.size();

    NormRecord r;
    r.t = next();
    r.dt_used = next();
    r.l2_u = next();
    r.l2_b = next();
    r.l2_lambda_beta_b = next();
    r.energy_initial = next();
    r.energy_residual = next();
    r.l2_omega = next();
    r.l2_j = next();
    r.l2_lambda_beta_j = next();
    r.lq_omega = take(nq);
    r.lq_j = take(nq);
    r.besov_j = take(nb);
    r.linf_omega = next();
    r.linf_b = next();
    r.linf_j = next();
    r.linf_grad_j = next();
    r.lr_grad_j = take(nr);
    r.tail_weight = next();
    r.rate_l2_lambda_beta_b_sq = next();
    r.rate_l2_lambda_beta_j_sq = next();
    r.int_l2_lambda_beta_b_sq = next();
    r.int_l2_lambda_beta_j_sq = next();
    r.int_besov_j = take(nb);
    r.int_linf_grad_j = next();
    r.int_lr_grad_j = take(nr);
    r.int_linf_j = next();
    return r;
}

// ---------------------------------------------------------------- record

namespace {

double hypot_l2(const SpectralField& a, const SpectralField& b) {
    const double x = l2_norm(a);
    const double y = l2_norm(b);
    return std::sqrt(x * x + y * y);
}

double trapezoid(double prev_integral, double dt, double prev_value, double value) {
    return prev_integral + 0.5 * dt * (prev_value + value);
}

/// Trapezoid with the Euler-Maclaurin endpoint term; fourth order when the
/// endpoint derivatives are exact.
double corrected_trapezoid(double prev_integral, double dt, double prev_value, double value, double prev_rate,
                           double rate) {
    return prev_integral + 0.5 * dt * (prev_value + value) - dt * dt / 12.0 * (rate - prev_rate);
}

/// 4 pi^2 sum Re(conj(a) b), the L2 inner product by Plancherel.
double inner(const SpectralField& a, const SpectralField& b) {
    double sum = 0.0;
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    for (std::size_t i = 0; i < ca.size(); ++i) sum += ca[i].real() * cb[i].real() + ca[i].imag() * cb[i].imag();
    return 4.0 * std::numbers::pi * std::numbers::pi * sum;
}

double tail_weight(const FlowState& state) {
    const auto& grid = state.grid();
    const double cut = grid.n() / 4.0;
    const int n = grid.n();
    double sum = 0.0;
    for (int a = 0; a < n; ++a) {
        const double k1 = grid.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            const double k2 = grid.wavenumber(b);
            if (std::sqrt(k1 * k1 + k2 * k2) > cut) sum += std::norm(state.omega_hat(a, b)) + std::norm(state.j_hat(a, b));
        }
    }
    return sum;
}

}  // namespace

NormRecord record(const FlowState& state, const MonitorLayout& layout, const DyadicFilterBank& bank,
                  const std::optional<NormRecord>& prev, double dt_used, bool nonlinear) {
    if (!prev && state.t > 0.0) throw ConfigError("record at t > 0 needs the previous record for time integrals");
    if (prev && state.t < prev->t) throw ConfigError("records must be nondecreasing in time");
    if (!(bank.grid() == state.grid())) throw ConfigError("filter bank built for a different grid");

    const double beta = state.beta;
    auto [u1h, u2h] = biot_savart(state.omega_hat);
    auto [b1h, b2h] = biot_savart(state.j_hat);

    NormRecord r;
    r.t = state.t;
    r.dt_used = dt_used;
    r.l2_u = hypot_l2(u1h, u2h);
    r.l2_b = hypot_l2(b1h, b2h);
    r.l2_lambda_beta_b = hypot_l2(lambda_power(b1h, beta), lambda_power(b2h, beta));
    r.l2_omega = l2_norm(state.omega_hat);
    r.l2_j = l2_norm(state.j_hat);
    r.l2_lambda_beta_j = l2_norm(lambda_power(state.j_hat, beta));

    const RealField omega = inverse(state.omega_hat);
    const RealField j = inverse(state.j_hat);
    const RealField b_mag = magnitude(inverse(b1h), inverse(b2h));
    const RealField grad_j = magnitude(inverse(partial_derivative(state.j_hat, 1)), inverse(partial_derivative(state.j_hat, 2)));

    for (double q : layout.q_values) {
        r.lq_omega.push_back(lq_norm(omega, q));
        r.lq_j.push_back(lq_norm(j, q));
    }
    std::map<double, std::vector<double>> shells_by_q;
    for (auto [q, s] : layout.besov_pairs) {
        auto it = shells_by_q.find(q);
        if (it == shells_by_q.end()) it = shells_by_q.emplace(q, shell_lp_norms(state.j_hat, q, bank)).first;
        r.besov_j.push_back(besov_from_shell_norms(it->second, s, 1.0));
    }
    r.linf_omega = lq_norm(omega, kInfinity);
    r.linf_b = lq_norm(b_mag, kInfinity);
    r.linf_j = lq_norm(j, kInfinity);
    r.linf_grad_j = lq_norm(grad_j, kInfinity);
    for (double q : layout.r_values) r.lr_grad_j.push_back(lq_norm(grad_j, q));
    r.tail_weight = tail_weight(state);

    // d/dt ||L j||^2 = 2 <L j, L dj/dt> for the linear maps L behind both dissipation norms
    SpectralField dj = nonlinear ? compute_rhs(state).second : SpectralField(state.grid());
    dj -= fractional_laplacian(state.j_hat, beta);
    {
        auto [db1, db2] = biot_savart(dj);
        r.rate_l2_lambda_beta_b_sq = 2.0 * (inner(lambda_power(b1h, beta), lambda_power(db1, beta)) +
                                            inner(lambda_power(b2h, beta), lambda_power(db2, beta)));
        r.rate_l2_lambda_beta_j_sq = 2.0 * inner(lambda_power(state.j_hat, beta), lambda_power(dj, beta));
    }

    const double lb_sq = r.l2_lambda_beta_b * r.l2_lambda_beta_b;
    const double lj_sq = r.l2_lambda_beta_j * r.l2_lambda_beta_j;
    if (prev) {
        const double dt = r.t - prev->t;
        const double plb = prev->l2_lambda_beta_b * prev->l2_lambda_beta_b;
        const double plj = prev->l2_lambda_beta_j * prev->l2_lambda_beta_j;
        r.energy_initial = prev->energy_initial;
        r.int_l2_lambda_beta_b_sq = corrected_trapezoid(prev->int_l2_lambda_beta_b_sq, dt, plb, lb_sq,
                                                        prev->rate_l2_lambda_beta_b_sq, r.rate_l2_lambda_beta_b_sq);
        r.int_l2_lambda_beta_j_sq = corrected_trapezoid(prev->int_l2_lambda_beta_j_sq, dt, plj, lj_sq,
                                                        prev->rate_l2_lambda_beta_j_sq, r.rate_l2_lambda_beta_j_sq);
        r.int_linf_grad_j = trapezoid(prev->int_linf_grad_j, dt, prev->linf_grad_j, r.linf_grad_j);
        r.int_linf_j = trapezoid(prev->int_linf_j, dt, prev->linf_j, r.linf_j);
        if (prev->besov_j.size() != r.besov_j.size() || prev->lr_grad_j.size() != r.lr_grad_j.size())
            throw ConfigError("previous record has a different column layout");
        for (std::size_t i = 0; i < r.besov_j.size(); ++i)
            r.int_besov_j.push_back(trapezoid(prev->int_besov_j[i], dt, prev->besov_j[i], r.besov_j[i]));
        for (std::size_t i = 0; i < r.lr_grad_j.size(); ++i)
            r.int_lr_grad_j.push_back(trapezoid(prev->int_lr_grad_j[i], dt, prev->lr_grad_j[i], r.lr_grad_j[i]));
    } else {
        r.energy_initial = r.l2_u * r.l2_u + r.l2_b * r.l2_b;
        r.int_besov_j.assign(r.besov_j.size(), 0.0);
        r.int_lr_grad_j.assign(r.lr_grad_j.size(), 0.0);
    }
    r.energy_residual =
        (r.l2_u * r.l2_u + r.l2_b * r.l2_b + 2.0 * r.int_l2_lambda_beta_b_sq) - r.energy_initial;
    return r;
}

// ---------------------------------------------------------------- inequality checks

namespace {

std::optional<double> ratio(double num, double den) {
    if (!(den > 0.0) || !std::isfinite(den)) return std::nullopt;
    return num / den;
}

/// ||f||_inf / (||f||_2^{1-1/beta} ||Lambda^beta f||_2^{1/beta})
std::optional<double> linf_interpolation(const SpectralField& F, double beta) {
    const double l2 = l2_norm(F);
    const double top = l2_norm(lambda_power(F, beta));
    if (l2 == 0.0 || top == 0.0) return std::nullopt;
    return ratio(lq_norm(inverse(F), kInfinity), std::pow(l2, 1.0 - 1.0 / beta) * std::pow(top, 1.0 / beta));
}

}  // namespace

SobolevRatios sobolev_ratio_checks(const FlowState& state, const std::vector<double>& q_values) {
    const double beta = state.beta;
    auto [b1h, b2h] = biot_savart(state.j_hat);
    const double b_l2 = hypot_l2(b1h, b2h);
    const double j_l2 = l2_norm(state.j_hat);
    const double lj = l2_norm(lambda_power(state.j_hat, beta));

    SobolevRatios out;
    if (b_l2 > 0.0 && lj > 0.0) {
        const double b_inf = lq_norm(magnitude(inverse(b1h), inverse(b2h)), kInfinity);
        const double a = 1.0 / (1.0 + beta);
        out.b_linf = ratio(b_inf, std::pow(b_l2, 1.0 - a) * std::pow(lj, a));
    }

    const RealField grad_j = magnitude(inverse(partial_derivative(state.j_hat, 1)), inverse(partial_derivative(state.j_hat, 2)));
    const RealField j = inverse(state.j_hat);
    for (double q : q_values) {
        std::optional<double> v;
        if (j_l2 > 0.0 && lj > 0.0) {
            const double a = 2.0 * (q - 1.0) / (beta * q);
            v = ratio(lq_norm(grad_j, q), std::pow(j_l2, 1.0 - a) * std::pow(lj, a));
        }
        out.grad_j_lq.emplace_back(q, v);

        // |j|^{q/2} is not band-limited; this ratio is monitored, never asserted
        RealField power(j.grid());
        for (std::size_t p = 0; p < power.values().size(); ++p) power.values()[p] = std::pow(std::abs(j.values()[p]), 0.5 * q);
        const SpectralField P = forward(power);
        const double lhs = hypot_l2(partial_derivative(P, 1), partial_derivative(P, 2));
        const double rhs = std::pow(lq_norm(j, q), 0.5 * q) + l2_norm(lambda_power(P, beta));
        out.embedding.emplace_back(q, ratio(lhs, rhs));
    }

    out.d1b1_linf = linf_interpolation(partial_derivative(b1h, 1), beta);
    out.j_linf = linf_interpolation(state.j_hat, beta);
    return out;
}

DiffusionBoundReport diffusion_lower_bound_check(const RealField& j, int shell, double q, double beta,
                                                 const DyadicFilterBank& bank) {
    if (std::isnan(q) || q < 2.0) throw ConfigError("diffusion lower bound needs q >= 2");
    if (shell < 0 || shell > bank.top_shell()) throw ConfigError("shell index outside [0, J_max]");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be finite and >= 0");

    const SpectralField block = project_shell(forward(j), shell, bank);
    DiffusionBoundReport rep;
    rep.shell = shell;
    rep.q = q;
    rep.beta = beta;
    const double weight = std::exp2(2.0 * beta * shell);

    if (q == 2.0) {
        const double top = l2_norm(lambda_power(block, beta));
        const double base = l2_norm(block);
        rep.integral = top * top;
        rep.reference = weight * base * base;
        rep.threshold = std::pow(0.75, 2.0 * beta) * rep.reference;
        rep.holds = rep.integral >= rep.threshold * (1.0 - 1e-12);
    } else {
        const RealField f = inverse(block);
        const RealField g = inverse(fractional_laplacian(block, beta));
        double sum = 0.0;
        for (std::size_t p = 0; p < f.values().size(); ++p) {
            const double v = f.values()[p];
            sum += v * std::pow(std::abs(v), q - 2.0) * g.values()[p];
        }
        rep.integral = j.grid().cell_area() * sum;
        const double fq = std::pow(lq_norm(f, q), q);
        rep.reference = weight * fq;
        rep.threshold = -1e-10 * fq;
        rep.holds = rep.integral >= rep.threshold;
    }
    rep.ratio = ratio(rep.integral, rep.reference);
    return rep;
}

// ---------------------------------------------------------------- boundedness

std::optional<std::size_t> SeriesTable::column_index(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) return std::nullopt;
    return static_cast<std::size_t>(it - columns.begin());
}

SeriesTable to_table(const MonitorLayout& layout, const std::vector<NormRecord>& series) {
    SeriesTable table{layout.column_names(), {}};
    for (const auto& r : series) table.rows.push_back(r.to_row());
    return table;
}

const QuantitySummary* BoundednessSummary::find(const std::string& name) const {
    for (const auto& q : quantities)
        if (q.name == name) return &q;
    return nullptr;
}

std::string BoundednessSummary::text() const {
    std::ostringstream os;
    char line[200];
    std::snprintf(line, sizeof line, "%-28s %-14s %-10s %-14s %s\n", "quantity", "max", "argmax_t", "final", "status");
    os << line;
    for (const auto& q : quantities) {
        std::snprintf(line, sizeof line, "%-28s %-14.6e %-10.4f %-14.6e %s\n", q.name.c_str(), q.max, q.argmax_t,
                      q.final_value,
                      q.first_non_finite_t ? ("NON-FINITE at t=" + format_number(*q.first_non_finite_t)).c_str()
                                           : "finite");
        os << line;
    }
    if (first_non_finite_t)
        os << "first non-finite entry: " << first_non_finite_column << " at t = " << format_number(*first_non_finite_t)
           << '\n';
    else
        os << "all monitored quantities finite\n";
    return os.str();
}

BoundednessSummary boundedness_report(const SeriesTable& series) {
    if (series.rows.empty()) throw ConfigError("boundedness report needs a nonempty series");
    if (series.columns.empty() || series.columns.front() != "t") throw ConfigError("series must start with a t column");

    BoundednessSummary out;
    for (std::size_t c = 1; c < series.columns.size(); ++c) {
        QuantitySummary q;
        q.name = series.columns[c];
        bool seen = false;
        for (const auto& row : series.rows) {
            const double t = row[0];
            const double v = row[c];
            if (!std::isfinite(v)) {
                if (!q.first_non_finite_t) q.first_non_finite_t = t;
                continue;
            }
            if (!seen || v > q.max) {
                q.max = v;
                q.argmax_t = t;
                seen = true;
            }
        }
        q.final_value = series.rows.back()[c];
        if (q.first_non_finite_t && (!out.first_non_finite_t || *q.first_non_finite_t < *out.first_non_finite_t)) {
            out.first_non_finite_t = q.first_non_finite_t;
            out.first_non_finite_column = q.name;
        }
        out.quantities.push_back(std::move(q));
    }
    return out;
}

}  // namespace mhd2d
