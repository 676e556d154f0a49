#pragma once

#include <array>

#include "bellpoly/correlation.hpp"

namespace bellpoly {

/// Conditional probabilities of the two-wing experiment:
/// p(A_i | a_i), p(B_j | b_j) and the joints p(A_i & B_j | a_i & b_j).
/// Indexes are 0-based (setting 1 -> index 0).
template <class S>
struct BasicEprTable {
    std::array<S, 2> left;                   // p(A_i | a_i)
    std::array<S, 2> right;                  // p(B_j | b_j)
    std::array<std::array<S, 2>, 2> joint;   // [i][j] = p(A_i & B_j | a_i & b_j)
};

using EprConditionalTable = BasicEprTable<double>;
using ExactEprTable = BasicEprTable<Rational>;

inline ExactEprTable to_exact(const EprConditionalTable& t) {
    ExactEprTable e;
    for (int i = 0; i < 2; ++i) {
        e.left[i] = rational_from_double(t.left[i]);
        e.right[i] = rational_from_double(t.right[i]);
        for (int j = 0; j < 2; ++j) e.joint[i][j] = rational_from_double(t.joint[i][j]);
    }
    return e;
}

/// Correlation vector of the table under the identification
/// X1 = A1, X2 = A2, X3 = B1, X4 = B2 with S = {(1,3),(1,4),(2,3),(2,4)}.
template <class S>
BasicCorrelationVector<S> table_to_vector(const BasicEprTable<S>& t) {
    return BasicCorrelationVector<S>(
        IndexPairSet::clauser_horne(),
        {t.left[0], t.left[1], t.right[0], t.right[1]},
        {t.joint[0][0], t.joint[0][1], t.joint[1][0], t.joint[1][1]});
}

}  // namespace bellpoly
