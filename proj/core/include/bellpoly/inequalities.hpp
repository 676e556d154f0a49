#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bellpoly/correlation.hpp"
#include "bellpoly/direction.hpp"
#include "bellpoly/epr_table.hpp"

namespace bellpoly::ineq {

/// One evaluated constraint line. `margin` is the signed violation: the
/// worst amount by which the line's comparisons are broken, so
/// satisfied <=> margin <= 0. Chain lines like 0 <= p12 <= p1 <= 1 fold
/// all of their comparisons into one margin; two-sided lines report both
/// bounds.
template <class S>
struct BasicInequalityLine {
    std::string id;
    S lhs;  // value of the line's principal expression
    std::optional<S> lower;
    std::optional<S> upper;
    bool satisfied = true;
    S margin{0};
};

template <class S>
struct BasicInequalityReport {
    std::string system;
    std::vector<BasicInequalityLine<S>> lines;

    bool all_satisfied() const {
        return std::all_of(lines.begin(), lines.end(),
                           [](const auto& l) { return l.satisfied; });
    }
    std::size_t violated_count() const {
        return static_cast<std::size_t>(
            std::count_if(lines.begin(), lines.end(),
                          [](const auto& l) { return !l.satisfied; }));
    }
    S max_margin() const {
        S worst = lines.empty() ? S(0) : lines.front().margin;
        for (const auto& l : lines) worst = std::max(worst, l.margin);
        return worst;
    }
    const BasicInequalityLine<S>* worst_line() const {
        const BasicInequalityLine<S>* w = nullptr;
        for (const auto& l : lines) {
            if (!w || l.margin > w->margin) w = &l;
        }
        return w;
    }
};

using InequalityLine = BasicInequalityLine<double>;
using InequalityReport = BasicInequalityReport<double>;
using ExactInequalityReport = BasicInequalityReport<Rational>;

/// n = 2, S = {(1,2)}: the three-line facet system of c(2, S).
template <class S>
BasicInequalityReport<S> eval_n2(const BasicCorrelationVector<S>& p);

/// n = 3, S = all pairs: box lines for every pair plus the four
/// three-index lines (Bell-Pitowsky system).
template <class S>
BasicInequalityReport<S> eval_bell_pitowsky(const BasicCorrelationVector<S>& p);

/// n = 4, S = {(1,3),(1,4),(2,3),(2,4)}: 12 box lines plus the four
/// two-sided -1 <= ... <= 0 lines (Clauser-Horne-Pitowsky system).
template <class S>
BasicInequalityReport<S> eval_ch_pitowsky(const BasicCorrelationVector<S>& p);

/// The four cyclic -1 <= ... <= 0 constraints over the conditional table
/// (Bell-Clauser-Horne system).
template <class S>
BasicInequalityReport<S> eval_bell_clauser_horne(const BasicEprTable<S>& t);

/// Conditional table of the singlet state for the four measurement
/// directions, filled through the trace rule.
EprConditionalTable quantum_epr_table(const Direction& a1, const Direction& a2,
                                      const Direction& b1, const Direction& b2);

/// Fixed-width text rendering used by the CLI.
std::string to_text(const InequalityReport& report);

}  // namespace bellpoly::ineq
