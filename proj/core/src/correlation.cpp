#include "bellpoly/correlation.hpp"

#include <set>

namespace bellpoly {

IndexPairSet::IndexPairSet(int n, std::vector<std::pair<int, int>> pairs)
    : n_(n), pairs_(std::move(pairs)) {
    if (n_ < 1) throw ShapeError("index set needs n >= 1");
    std::set<std::pair<int, int>> seen;
    for (const auto& [i, j] : pairs_) {
        if (i < 1 || j < 1 || i > n_ || j > n_) {
            throw ShapeError("pair index out of range: (" + std::to_string(i) + "," +
                             std::to_string(j) + ") with n = " + std::to_string(n_));
        }
        if (i >= j) {
            throw ShapeError("pair indexes must satisfy i < j, got (" +
                             std::to_string(i) + "," + std::to_string(j) + ")");
        }
        if (!seen.insert({i, j}).second) {
            throw ShapeError("duplicate pair (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
        }
    }
}

IndexPairSet IndexPairSet::all_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    return IndexPairSet(n, std::move(pairs));
}

IndexPairSet IndexPairSet::clauser_horne() {
    return IndexPairSet(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}});
}

std::optional<std::size_t> IndexPairSet::pair_index(int i, int j) const {
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        if (pairs_[k].first == i && pairs_[k].second == j) return k;
    }
    return std::nullopt;
}

template <class S>
std::vector<std::string> BasicCorrelationVector<S>::range_violations() const {
    std::vector<std::string> issues;
    auto check = [&issues](const std::string& name, const S& value) {
        if (value < S(0) || value > S(1)) {
            issues.push_back(name + " outside [0,1]");
        }
    };
    for (std::size_t i = 0; i < singles.size(); ++i) {
        check("p" + std::to_string(i + 1), singles[i]);
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [i, j] = index_set.pairs()[k];
        check("p" + std::to_string(i) + std::to_string(j), pairs[k]);
    }
    return issues;
}

template struct BasicCorrelationVector<double>;
template struct BasicCorrelationVector<Rational>;

ExactCorrelationVector to_exact(const CorrelationVector& v) {
    std::vector<Rational> singles, pairs;
    singles.reserve(v.singles.size());
    pairs.reserve(v.pairs.size());
    for (double x : v.singles) singles.push_back(rational_from_double(x));
    for (double x : v.pairs) pairs.push_back(rational_from_double(x));
    return ExactCorrelationVector(v.index_set, std::move(singles), std::move(pairs));
}

CorrelationVector to_approx(const ExactCorrelationVector& v) {
    std::vector<double> singles, pairs;
    singles.reserve(v.singles.size());
    pairs.reserve(v.pairs.size());
    for (const Rational& x : v.singles) singles.push_back(to_double(x));
    for (const Rational& x : v.pairs) pairs.push_back(to_double(x));
    return CorrelationVector(v.index_set, std::move(singles), std::move(pairs));
}

std::vector<Vertex> enumerate_vertices(const IndexPairSet& s) {
    const int n = s.n();
    if (n > 24) {
        throw CapacityError("vertex enumeration capped at n = 24, got n = " +
                            std::to_string(n));
    }
    const std::size_t count = std::size_t{1} << n;
    std::vector<Vertex> vertices;
    vertices.reserve(count);

    for (std::size_t k = 0; k < count; ++k) {
        Vertex v;
        v.assignment.resize(n);
        for (int i = 0; i < n; ++i) v.assignment[i] = (k >> i) & 1u;
        v.coordinates.reserve(s.dimension());
        v.coordinates.insert(v.coordinates.end(), v.assignment.begin(), v.assignment.end());
        for (const auto& [i, j] : s.pairs()) {
            v.coordinates.push_back(v.assignment[i - 1] & v.assignment[j - 1]);
        }
        vertices.push_back(std::move(v));
    }
    return vertices;
}

std::size_t vertex_index(const std::vector<std::uint8_t>& assignment) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i]) k |= std::size_t{1} << i;
    }
    return k;
}

}  // namespace bellpoly
