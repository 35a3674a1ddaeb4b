#pragma once

#include <string>
#include <vector>

namespace mhd2d {

/// Interval with independently open or closed ends; hi may be +inf.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(double x) const;
    bool empty() const;
    std::string describe() const;
};

/// Admissible Lebesgue exponents for the omega / j bounds:
/// 2 <= q <= 2/(2 - beta), and 2 <= q < inf when beta = 2.
Interval lebesgue_range(double beta);
/// Admissible Besov smoothness for a given q: 2/q < s < 2 beta - 1.
Interval smoothness_range(double beta, double q);
/// Admissible exponents for the time-integrated grad j bound:
/// 2 <= r <= inf if beta > 4/3, else 2 <= r < 2/(4 - 3 beta).
Interval gradient_range(double beta);

/// The global bounds are proven for beta in (1, 2].
bool beta_in_hypothesis(double beta);

struct ParamVerdict {
    std::string name;   // "q", "s" or "r"
    double value = 0.0;
    double paired_q = 0.0;  // only meaningful for s
    bool admissible = false;
    /// Constraint that decides the verdict, e.g. "q <= 2/(2-beta) = 4".
    std::string constraint;
};

struct RangeReport {
    double beta = 0.0;
    bool in_hypothesis = false;
    std::string beta_note;
    std::vector<ParamVerdict> q, s, r;

    bool all_admissible() const;
    std::string table() const;
};

/// Checks every q, every (q, s) pair and every r. Never throws for beta
/// outside (1, 2]; the report says "outside theorem hypothesis" instead.
RangeReport validate_ranges(double beta, const std::vector<double>& q_list, const std::vector<double>& s_list,
                            const std::vector<double>& r_list);

/// Shortest decimal spelling used in reports and column names ("4", "1.25", "inf").
std::string format_number(double x);

}  // namespace mhd2d
