#include "mhd2d/ranges.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "mhd2d/spectral.hpp"

namespace mhd2d {

std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

bool Interval::contains(double x) const {
    if (std::isnan(x)) return false;
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

bool Interval::empty() const {
    if (lo < hi) return false;
    return !(lo == hi && lo_closed && hi_closed);
}

std::string Interval::describe() const {
    std::ostringstream os;
    os << (lo_closed ? '[' : '(') << format_number(lo) << ", " << format_number(hi) << (hi_closed ? ']' : ')');
    return os.str();
}

Interval lebesgue_range(double beta) {
    if (beta >= 2.0) return {2.0, kInfinity, true, false};
    return {2.0, 2.0 / (2.0 - beta), true, true};
}

Interval smoothness_range(double beta, double q) { return {2.0 / q, 2.0 * beta - 1.0, false, false}; }

Interval gradient_range(double beta) {
    if (beta > 4.0 / 3.0) return {2.0, kInfinity, true, true};
    return {2.0, 2.0 / (4.0 - 3.0 * beta), true, false};
}

bool beta_in_hypothesis(double beta) { return beta > 1.0 && beta <= 2.0; }

namespace {

ParamVerdict judge(const std::string& name, double value, const Interval& range, const std::string& upper_formula) {
    ParamVerdict v;
    v.name = name;
    v.value = value;
    v.admissible = range.contains(value);
    const std::string lower_op = range.lo_closed ? " >= " : " > ";
    const std::string upper_op = range.hi_closed ? " <= " : " < ";
    const bool too_low = range.lo_closed ? value < range.lo : value <= range.lo;
    if (v.admissible) {
        v.constraint = name + " in " + range.describe();
    } else if (too_low || std::isnan(value)) {
        v.constraint = name + lower_op + format_number(range.lo);
    } else {
        v.constraint = name + upper_op + upper_formula + " = " + format_number(range.hi);
    }
    return v;
}

}  // namespace

RangeReport validate_ranges(double beta, const std::vector<double>& q_list, const std::vector<double>& s_list,
                            const std::vector<double>& r_list) {
    RangeReport rep;
    rep.beta = beta;
    rep.in_hypothesis = beta_in_hypothesis(beta);
    rep.beta_note = rep.in_hypothesis ? "beta in (1, 2]" : "outside theorem hypothesis (needs beta in (1, 2])";

    const Interval qr = lebesgue_range(beta);
    const std::string q_formula = beta >= 2.0 ? "inf (beta = 2)" : "2/(2-beta)";
    for (double q : q_list) rep.q.push_back(judge("q", q, qr, q_formula));

    for (double q : q_list)
        for (double s : s_list) {
            auto v = judge("s", s, smoothness_range(beta, q), "2*beta-1");
            if (!v.admissible && s <= 2.0 / q) v.constraint = "s > 2/q = " + format_number(2.0 / q);
            v.paired_q = q;
            rep.s.push_back(v);
        }

    const Interval rr = gradient_range(beta);
    const std::string r_formula = beta > 4.0 / 3.0 ? "inf (beta > 4/3)" : "2/(4-3*beta)";
    for (double r : r_list) rep.r.push_back(judge("r", r, rr, r_formula));
    return rep;
}

bool RangeReport::all_admissible() const {
    if (!in_hypothesis) return false;
    for (const auto* group : {&q, &s, &r})
        for (const auto& v : *group)
            if (!v.admissible) return false;
    return true;
}

std::string RangeReport::table() const {
    std::ostringstream os;
    os << "beta = " << format_number(beta) << "  (" << beta_note << ")\n";
    os << "param  value     q      verdict       constraint\n";
    auto row = [&](const ParamVerdict& v) {
        char line[160];
        std::snprintf(line, sizeof line, "%-6s %-9s %-6s %-13s %s\n", v.name.c_str(), format_number(v.value).c_str(),
                      v.name == "s" ? format_number(v.paired_q).c_str() : "-",
                      v.admissible ? "admissible" : "INADMISSIBLE", v.constraint.c_str());
        os << line;
    };
    for (const auto& v : q) row(v);
    for (const auto& v : s) row(v);
    for (const auto& v : r) row(v);
    return os.str();
}

}  // namespace mhd2d
