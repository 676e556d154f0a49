#include "bellpoly/inequalities.hpp"

#include <cstdio>

#include "bellpoly/qprob.hpp"

namespace bellpoly::ineq {

namespace {

template <class S>
using Line = BasicInequalityLine<S>;

template <class S>
S smax(const S& a, const S& b) {
    return a > b ? a : b;
}

// Chain 0 <= p_ij <= p_i <= 1. lhs reported as p_ij; margin is the worst
// broken comparison.
template <class S>
Line<S> box_chain(const std::string& pair_name, const std::string& single_name,
                  const S& p_pair, const S& p_single) {
    Line<S> line;
    line.id = "0<=" + pair_name + "<=" + single_name + "<=1";
    line.lhs = p_pair;
    const S below_zero = S(S(0) - p_pair);
    const S above_single = S(p_pair - p_single);
    const S above_one = S(p_single - S(1));
    line.margin = smax(smax(below_zero, above_single), above_one);
    line.satisfied = !(line.margin > S(0));
    return line;
}

template <class S>
Line<S> upper_line(const std::string& id, const S& lhs, const S& bound) {
    Line<S> line;
    line.id = id;
    line.lhs = lhs;
    line.upper = bound;
    line.margin = lhs - bound;
    line.satisfied = !(line.margin > S(0));
    return line;
}

template <class S>
Line<S> lower_line(const std::string& id, const S& lhs, const S& bound) {
    Line<S> line;
    line.id = id;
    line.lhs = lhs;
    line.lower = bound;
    line.margin = bound - lhs;
    line.satisfied = !(line.margin > S(0));
    return line;
}

template <class S>
Line<S> band_line(const std::string& id, const S& lhs) {
    Line<S> line;
    line.id = id;
    line.lhs = lhs;
    line.lower = S(-1);
    line.upper = S(0);
    const S above_upper = S(lhs - S(0));
    const S below_lower = S(S(-1) - lhs);
    line.margin = smax(above_upper, below_lower);
    line.satisfied = !(line.margin > S(0));
    return line;
}

template <class S>
void append_pair_box(BasicInequalityReport<S>& report,
                     const BasicCorrelationVector<S>& p, int i, int j) {
    const std::string pi = "p" + std::to_string(i);
    const std::string pj = "p" + std::to_string(j);
    const std::string pij = "p" + std::to_string(i) + std::to_string(j);
    const S& vi = p.singles[i - 1];
    const S& vj = p.singles[j - 1];
    const S& vij = p.pairs[*p.index_set.pair_index(i, j)];

    report.lines.push_back(box_chain<S>(pij, pi, vij, vi));
    report.lines.push_back(box_chain<S>(pij, pj, vij, vj));
    report.lines.push_back(
        upper_line<S>(pi + "+" + pj + "-" + pij + "<=1", vi + vj - vij, S(1)));
}

template <class S>
void require_shape(const BasicCorrelationVector<S>& p, const IndexPairSet& expected,
                   const char* system) {
    if (!(p.index_set == expected)) {
        throw ShapeError(std::string(system) +
                         ": correlation vector has the wrong index set");
    }
}

}  // namespace

template <class S>
BasicInequalityReport<S> eval_n2(const BasicCorrelationVector<S>& p) {
    require_shape(p, IndexPairSet(2, {{1, 2}}), "n2");
    BasicInequalityReport<S> report;
    report.system = "c(2,S) facets";
    append_pair_box(report, p, 1, 2);
    return report;
}

template <class S>
BasicInequalityReport<S> eval_bell_pitowsky(const BasicCorrelationVector<S>& p) {
    require_shape(p, IndexPairSet::all_pairs(3), "bell-pitowsky");
    BasicInequalityReport<S> report;
    report.system = "bell-pitowsky";
    for (const auto& [i, j] : p.index_set.pairs()) append_pair_box(report, p, i, j);

    const S& p1 = p.singles[0];
    const S& p2 = p.singles[1];
    const S& p3 = p.singles[2];
    const S& p12 = p.pairs[*p.index_set.pair_index(1, 2)];
    const S& p13 = p.pairs[*p.index_set.pair_index(1, 3)];
    const S& p23 = p.pairs[*p.index_set.pair_index(2, 3)];

    report.lines.push_back(upper_line<S>("p1+p2+p3-p12-p13-p23<=1",
                                         p1 + p2 + p3 - p12 - p13 - p23, S(1)));
    report.lines.push_back(
        lower_line<S>("p1-p12-p13+p23>=0", p1 - p12 - p13 + p23, S(0)));
    report.lines.push_back(
        lower_line<S>("p2-p12-p23+p13>=0", p2 - p12 - p23 + p13, S(0)));
    report.lines.push_back(
        lower_line<S>("p3-p13-p23+p12>=0", p3 - p13 - p23 + p12, S(0)));
    return report;
}

template <class S>
BasicInequalityReport<S> eval_ch_pitowsky(const BasicCorrelationVector<S>& p) {
    require_shape(p, IndexPairSet::clauser_horne(), "ch-pitowsky");
    BasicInequalityReport<S> report;
    report.system = "clauser-horne-pitowsky";
    for (const auto& [i, j] : p.index_set.pairs()) append_pair_box(report, p, i, j);

    const S& p1 = p.singles[0];
    const S& p2 = p.singles[1];
    const S& p3 = p.singles[2];
    const S& p4 = p.singles[3];
    const S& p13 = p.pairs[*p.index_set.pair_index(1, 3)];
    const S& p14 = p.pairs[*p.index_set.pair_index(1, 4)];
    const S& p23 = p.pairs[*p.index_set.pair_index(2, 3)];
    const S& p24 = p.pairs[*p.index_set.pair_index(2, 4)];

    report.lines.push_back(band_line<S>("-1<=p13+p14+p24-p23-p1-p4<=0",
                                        p13 + p14 + p24 - p23 - p1 - p4));
    report.lines.push_back(band_line<S>("-1<=p23+p24+p14-p13-p2-p4<=0",
                                        p23 + p24 + p14 - p13 - p2 - p4));
    report.lines.push_back(band_line<S>("-1<=p14+p13+p23-p24-p1-p3<=0",
                                        p14 + p13 + p23 - p24 - p1 - p3));
    report.lines.push_back(band_line<S>("-1<=p24+p23+p13-p14-p2-p3<=0",
                                        p24 + p23 + p13 - p14 - p2 - p3));
    return report;
}

template <class S>
BasicInequalityReport<S> eval_bell_clauser_horne(const BasicEprTable<S>& t) {
    BasicInequalityReport<S> report;
    report.system = "bell-clauser-horne";
    const auto& ab = t.joint;
    const auto& a = t.left;
    const auto& b = t.right;

    report.lines.push_back(band_line<S>(
        "bch1: -1<=P(A1B1)+P(A1B2)+P(A2B2)-P(A2B1)-P(A1)-P(B2)<=0",
        ab[0][0] + ab[0][1] + ab[1][1] - ab[1][0] - a[0] - b[1]));
    report.lines.push_back(band_line<S>(
        "bch2: -1<=P(A2B1)+P(A2B2)+P(A1B2)-P(A1B1)-P(A2)-P(B2)<=0",
        ab[1][0] + ab[1][1] + ab[0][1] - ab[0][0] - a[1] - b[1]));
    report.lines.push_back(band_line<S>(
        "bch3: -1<=P(A1B2)+P(A1B1)+P(A2B1)-P(A2B2)-P(A1)-P(B1)<=0",
        ab[0][1] + ab[0][0] + ab[1][0] - ab[1][1] - a[0] - b[0]));
    report.lines.push_back(band_line<S>(
        "bch4: -1<=P(A2B2)+P(A2B1)+P(A1B1)-P(A1B2)-P(A2)-P(B1)<=0",
        ab[1][1] + ab[1][0] + ab[0][0] - ab[0][1] - a[1] - b[0]));
    return report;
}

template BasicInequalityReport<double> eval_n2(const BasicCorrelationVector<double>&);
template BasicInequalityReport<Rational> eval_n2(const BasicCorrelationVector<Rational>&);
template BasicInequalityReport<double> eval_bell_pitowsky(
    const BasicCorrelationVector<double>&);
template BasicInequalityReport<Rational> eval_bell_pitowsky(
    const BasicCorrelationVector<Rational>&);
template BasicInequalityReport<double> eval_ch_pitowsky(
    const BasicCorrelationVector<double>&);
template BasicInequalityReport<Rational> eval_ch_pitowsky(
    const BasicCorrelationVector<Rational>&);
template BasicInequalityReport<double> eval_bell_clauser_horne(
    const BasicEprTable<double>&);
template BasicInequalityReport<Rational> eval_bell_clauser_horne(
    const BasicEprTable<Rational>&);

EprConditionalTable quantum_epr_table(const Direction& a1, const Direction& a2,
                                      const Direction& b1, const Direction& b2) {
    using namespace bellpoly::qprob;
    const DensityOperator w = singlet_state();
    const std::array<Direction, 2> left = {a1, a2};
    const std::array<Direction, 2> right = {b1, b2};

    EprConditionalTable t;
    for (int i = 0; i < 2; ++i) {
        const ProjectorEvent li = up_event(Wing::Left, left[i]);
        t.left[i] = quantum_prob(w, std::array{li});
        const ProjectorEvent ri = up_event(Wing::Right, right[i]);
        t.right[i] = quantum_prob(w, std::array{ri});
        for (int j = 0; j < 2; ++j) {
            const ProjectorEvent rj = up_event(Wing::Right, right[j]);
            t.joint[i][j] = quantum_prob(w, std::array{li, rj});
        }
    }
    return t;
}

std::string to_text(const InequalityReport& report) {
    std::string out = "system: " + report.system + "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-56s %12s %12s  %s\n", "inequality", "lhs",
                  "margin", "status");
    out += buf;
    for (const auto& line : report.lines) {
        std::snprintf(buf, sizeof(buf), "  %-56s %12.9f %12.9f  %s\n", line.id.c_str(),
                      line.lhs, line.margin, line.satisfied ? "ok" : "VIOLATED");
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "  => %s (max margin %.9f)\n",
                  report.all_satisfied() ? "SATISFIED" : "VIOLATED",
                  report.max_margin());
    out += buf;
    return out;
}

}  // namespace bellpoly::ineq
