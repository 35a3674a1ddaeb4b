#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mhd2d/littlewood_paley.hpp"
#include "mhd2d/ranges.hpp"
#include "mhd2d/solver.hpp"

namespace mhd2d {

/// Requested exponents for the monitored norms.
struct RangeParams {
    double beta = 1.5;
    std::vector<double> q_list;  // Lebesgue exponents for omega, j
    std::vector<double> s_list;  // Besov smoothness for j
    std::vector<double> r_list;  // exponents for grad j
};

/// Column layout of a NormRecord resolved from RangeParams.
///
/// Every configured q and r is monitored (grid norms are always finite);
/// inadmissible ones are only flagged. Besov columns use the admissible (q, s)
/// pairs. With no s given, the pair (2, beta) is used: s = beta is the
/// midpoint of (1, 2 beta - 1).
struct MonitorLayout {
    double beta = 1.5;
    std::vector<double> q_values;
    std::vector<std::pair<double, double>> besov_pairs;  // (q, s)
    std::vector<double> r_values;

    static MonitorLayout resolve(const RangeParams& params);
    std::vector<std::string> column_names() const;
    std::size_t column_count() const { return column_names().size(); }
};

/// One output-time row of every monitored norm and running time integral.
struct NormRecord {
    double t = 0.0;
    double dt_used = 0.0;
    double l2_u = 0.0, l2_b = 0.0, l2_lambda_beta_b = 0.0;
    double energy_initial = 0.0;
    double energy_residual = 0.0;
    double l2_omega = 0.0, l2_j = 0.0, l2_lambda_beta_j = 0.0;
    std::vector<double> lq_omega, lq_j;  // per MonitorLayout::q_values
    std::vector<double> besov_j;         // per besov_pairs, ||j||_{B^s_{q,1}}
    double linf_omega = 0.0, linf_b = 0.0, linf_j = 0.0, linf_grad_j = 0.0;
    std::vector<double> lr_grad_j;       // per r_values
    /// sum over |k| > n/4 of |omega_hat|^2 + |j_hat|^2
    double tail_weight = 0.0;
    /// exact time derivatives of ||Lambda^beta b||_2^2 and ||Lambda^beta j||_2^2
    double rate_l2_lambda_beta_b_sq = 0.0, rate_l2_lambda_beta_j_sq = 0.0;

    double int_l2_lambda_beta_b_sq = 0.0, int_l2_lambda_beta_j_sq = 0.0;
    std::vector<double> int_besov_j;
    double int_linf_grad_j = 0.0;
    std::vector<double> int_lr_grad_j;
    double int_linf_j = 0.0;

    /// Values in MonitorLayout::column_names order.
    std::vector<double> to_row() const;
    static NormRecord from_row(const MonitorLayout& layout, std::span<const double> row);
};

/// Computes every monitored quantity for the state. Cumulative integrals
/// extend prev by the trapezoid rule, except the two dissipation integrals,
/// which add the endpoint correction -dt^2/12 (f'(t) - f'(t_prev)) using the
/// exact rates from the tendency (`nonlinear` says whether it includes the
/// nonlinear terms). The energy residual is
/// ||u||^2 + ||b||^2 + 2 int ||Lambda^beta b||^2 - (||u0||^2 + ||b0||^2).
/// Throws ConfigError when prev is missing at t > 0.
NormRecord record(const FlowState& state, const MonitorLayout& layout, const DyadicFilterBank& bank,
                  const std::optional<NormRecord>& prev, double dt_used = 0.0, bool nonlinear = true);

/// LHS / (RHS without constant) for the interpolation inequalities used in
/// the L^q estimates. Absent when the denominator vanishes.
struct SobolevRatios {
    /// ||b||_inf / (||b||_2^{1-1/(1+beta)} ||Lambda^beta j||_2^{1/(1+beta)})
    std::optional<double> b_linf;
    /// per q: ||grad j||_q / (||j||_2^{1-2(q-1)/(beta q)} ||Lambda^beta j||_2^{2(q-1)/(beta q)})
    std::vector<std::pair<double, std::optional<double>>> grad_j_lq;
    /// ||f||_inf / (||f||_2^{1-1/beta} ||Lambda^beta f||_2^{1/beta}) for f = d1 b1
    std::optional<double> d1b1_linf;
    /// same inequality with f = j
    std::optional<double> j_linf;
    /// ||grad(|j|^{q/2})||_2 / (||j||_q^{q/2} + ||Lambda^beta |j|^{q/2}||_2), recorded only
    std::vector<std::pair<double, std::optional<double>>> embedding;
};

SobolevRatios sobolev_ratio_checks(const FlowState& state, const std::vector<double>& q_values = {2.0, 4.0});

struct DiffusionBoundReport {
    int shell = 0;
    double q = 2.0;
    double beta = 1.5;
    /// int Delta_k j |Delta_k j|^{q-2} (-Delta)^beta Delta_k j
    double integral = 0.0;
    /// 2^{2 beta k} ||Delta_k j||_q^q
    double reference = 0.0;
    /// integral / reference, absent when reference is 0
    std::optional<double> ratio;
    /// q = 2: (3/4)^{2 beta} 2^{2 beta k} ||Delta_k j||_2^2; q > 2: -1e-10 ||Delta_k j||_q^q
    double threshold = 0.0;
    bool holds = false;
};

/// Throws ConfigError for q < 2 or a shell index outside [0, J_max].
DiffusionBoundReport diffusion_lower_bound_check(const RealField& j, int shell, double q, double beta,
                                                 const DyadicFilterBank& bank);

/// Series of rows with named columns; the first column is t.
struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::optional<std::size_t> column_index(const std::string& name) const;
};

SeriesTable to_table(const MonitorLayout& layout, const std::vector<NormRecord>& series);

struct QuantitySummary {
    std::string name;
    double max = 0.0;
    double argmax_t = 0.0;
    double final_value = 0.0;
    std::optional<double> first_non_finite_t;
};

struct BoundednessSummary {
    std::vector<QuantitySummary> quantities;
    std::optional<double> first_non_finite_t;
    std::string first_non_finite_column;

    bool all_finite() const { return !first_non_finite_t.has_value(); }
    const QuantitySummary* find(const std::string& name) const;
    std::string text() const;
};

/// Running maxima, argmax times and final values of every column after t.
/// Throws ConfigError on an empty series.
BoundednessSummary boundedness_report(const SeriesTable& series);

}  // namespace mhd2d
