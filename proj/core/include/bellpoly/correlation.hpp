#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bellpoly/errors.hpp"
#include "bellpoly/rational.hpp"

namespace bellpoly {

/// The pair-index set S of a correlation vector: n events and the ordered
/// list of pairs (i, j), 1-based, i < j, whose joint probabilities are
/// recorded.
class IndexPairSet {
public:
    IndexPairSet(int n, std::vector<std::pair<int, int>> pairs);

    static IndexPairSet all_pairs(int n);
    /// n = 4, S = {(1,3), (1,4), (2,3), (2,4)}.
    static IndexPairSet clauser_horne();

    int n() const noexcept { return n_; }
    const std::vector<std::pair<int, int>>& pairs() const noexcept { return pairs_; }
    std::size_t pair_count() const noexcept { return pairs_.size(); }
    /// n + |S|, the dimension of R(n, S).
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(n_) + pairs_.size(); }

    std::optional<std::size_t> pair_index(int i, int j) const;

    bool operator==(const IndexPairSet&) const = default;

private:
    int n_;
    std::vector<std::pair<int, int>> pairs_;
};

/// A correlation vector: single-event values p_i and pair values p_ij for
/// (i, j) in S. Values outside [0,1] are not a construction error -- they
/// are exactly the kind of defect membership checking is for -- but they
/// are reportable via range_violations().
template <class S>
struct BasicCorrelationVector {
    IndexPairSet index_set;
    std::vector<S> singles;  // size n
    std::vector<S> pairs;    // size |S|

    BasicCorrelationVector(IndexPairSet s, std::vector<S> single_values,
                           std::vector<S> pair_values)
        : index_set(std::move(s)),
          singles(std::move(single_values)),
          pairs(std::move(pair_values)) {
        if (singles.size() != static_cast<std::size_t>(index_set.n()) ||
            pairs.size() != index_set.pair_count()) {
            throw ShapeError("correlation vector length does not match its index set");
        }
    }

    /// Flat coordinates (p_1 ... p_n, p_ij ...) in R(n, S).
    std::vector<S> coordinates() const {
        std::vector<S> c;
        c.reserve(index_set.dimension());
        c.insert(c.end(), singles.begin(), singles.end());
        c.insert(c.end(), pairs.begin(), pairs.end());
        return c;
    }

    std::vector<std::string> range_violations() const;

    bool operator==(const BasicCorrelationVector&) const = default;
};

using CorrelationVector = BasicCorrelationVector<double>;
using ExactCorrelationVector = BasicCorrelationVector<Rational>;

/// Exact embedding: every double is a dyadic rational.
ExactCorrelationVector to_exact(const CorrelationVector& v);
CorrelationVector to_approx(const ExactCorrelationVector& v);

/// A vertex of the correlation polytope: the truth-value assignment
/// epsilon and its image u^eps (u_i = eps_i, u_ij = eps_i * eps_j).
struct Vertex {
    std::vector<std::uint8_t> assignment;   // size n
    std::vector<std::uint8_t> coordinates;  // size n + |S|, entries 0/1
};

/// All 2^n vertices. Order: vertex k has eps_i = bit (i-1) of k, so the
/// n = 2 sequence is (0,0), (1,0), (0,1), (1,1). Guarded at n <= 24.
std::vector<Vertex> enumerate_vertices(const IndexPairSet& s);

/// Index of the vertex with the given assignment in enumerate_vertices order.
std::size_t vertex_index(const std::vector<std::uint8_t>& assignment);

}  // namespace bellpoly
