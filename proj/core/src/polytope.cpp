#include "bellpoly/polytope.hpp"

#include <cmath>
#include <cstddef>

#include "bellpoly/simplex.hpp"

namespace bellpoly::polytope {

namespace {

constexpr double kSolveTol = 1e-9;
constexpr double kBoundaryEps = 1e-12;

template <class S>
struct Tolerances;

template <>
struct Tolerances<double> {
    static constexpr double entering = 1e-10;
    static constexpr double pivot = 1e-10;
    static constexpr double feasible = kSolveTol;
};

struct RationalTolerances {
    inline static const Rational zero = Rational(0);
};

template <>
struct Tolerances<Rational> {
    inline static const Rational entering = Rational(0);
    inline static const Rational pivot = Rational(0);
    inline static const Rational feasible = Rational(0);
};

// Feasibility system for p in c(n,S): columns are the vertices u^eps plus
// a convexity row of ones; lambda >= 0.
template <class S>
void build_system(const BasicCorrelationVector<S>& p,
                  const std::vector<Vertex>& vertices,
                  std::vector<std::vector<S>>& a, std::vector<S>& b) {
    const std::size_t dim = p.index_set.dimension();
    const std::size_t cols = vertices.size();
    a.assign(dim + 1, std::vector<S>(cols, S(0)));
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < dim; ++r) {
            a[r][c] = S(static_cast<int>(vertices[c].coordinates[r]));
        }
        a[dim][c] = S(1);
    }
    b = p.coordinates();
    b.push_back(S(1));
}

template <class S>
BasicMembershipVerdict<S> decide(const BasicCorrelationVector<S>& p,
                                 std::size_t max_n) {
    const int n = p.index_set.n();
    if (static_cast<std::size_t>(n) > max_n) {
        throw CapacityError("membership decision capped at n = " +
                            std::to_string(max_n) + ", got n = " + std::to_string(n));
    }

    const auto vertices = enumerate_vertices(p.index_set);
    std::vector<std::vector<S>> a;
    std::vector<S> b;
    build_system(p, vertices, a, b);

    const auto result = solve_equality_feasibility<S>(
        a, b, Tolerances<S>::entering, Tolerances<S>::pivot, Tolerances<S>::feasible);

    if (result.status == FeasibilityStatus::Feasible) {
        BasicWitness<S> w;
        w.weights = result.solution;
        w.boundary = result.objective > S(kBoundaryEps);
        return BasicMembershipVerdict<S>(std::move(w));
    }

    // Farkas certificate: y with y . u^eps <= y0 for all vertices and
    // y . p > y0. Canonicalize: tightest offset, then scale the separation
    // to exactly 1.
    const std::size_t dim = p.index_set.dimension();
    std::vector<S> normal(result.dual.begin(), result.dual.begin() + dim);
    const S& convexity_dual = result.dual[dim];

    S tightest = -convexity_dual;  // offset implied by the LP dual
    bool first = true;
    for (const Vertex& v : vertices) {
        S value(0);
        for (std::size_t r = 0; r < dim; ++r) {
            if (v.coordinates[r]) value += normal[r];
        }
        if (first || value > tightest) {
            tightest = value;
            first = false;
        }
    }

    S separation(0);
    const auto coords = p.coordinates();
    for (std::size_t r = 0; r < dim; ++r) separation += normal[r] * coords[r];
    separation -= tightest;

    if (separation <= S(0)) {
        // The solver claims infeasible but the recomputed gap vanished:
        // the point is numerically on the boundary. Report membership
        // with the boundary flag and the best weights the solver had.
        BasicWitness<S> w;
        w.weights = result.solution;
        w.boundary = true;
        return BasicMembershipVerdict<S>(std::move(w));
    }

    BasicCertificate<S> cert;
    cert.normal.resize(dim);
    for (std::size_t r = 0; r < dim; ++r) cert.normal[r] = normal[r] / separation;
    cert.offset = tightest / separation;
    return BasicMembershipVerdict<S>(std::move(cert));
}

}  // namespace

MembershipVerdict membership(const CorrelationVector& p) { return decide<double>(p, 16); }

ExactMembershipVerdict membership_exact(const ExactCorrelationVector& p) {
    return decide<Rational>(p, 8);
}

bool check_witness(const CorrelationVector& p, std::span<const double> weights) {
    const auto vertices = enumerate_vertices(p.index_set);
    if (weights.size() != vertices.size()) {
        throw ShapeError("witness must carry one weight per vertex (" +
                         std::to_string(vertices.size()) + "), got " +
                         std::to_string(weights.size()));
    }

    double sum = 0.0;
    for (double w : weights) {
        if (w < -1e-12) return false;
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) return false;

    const auto coords = p.coordinates();
    for (std::size_t r = 0; r < coords.size(); ++r) {
        double combo = 0.0;
        for (std::size_t c = 0; c < vertices.size(); ++c) {
            if (vertices[c].coordinates[r]) combo += weights[c];
        }
        if (std::abs(combo - coords[r]) > 1e-8) return false;
    }
    return true;
}

bool check_witness_exact(const ExactCorrelationVector& p,
                         std::span<const Rational> weights) {
    const auto vertices = enumerate_vertices(p.index_set);
    if (weights.size() != vertices.size()) {
        throw ShapeError("witness must carry one weight per vertex");
    }

    Rational sum(0);
    for (const Rational& w : weights) {
        if (w < 0) return false;
        sum += w;
    }
    if (sum != 1) return false;

    const auto coords = p.coordinates();
    for (std::size_t r = 0; r < coords.size(); ++r) {
        Rational combo(0);
        for (std::size_t c = 0; c < vertices.size(); ++c) {
            if (vertices[c].coordinates[r]) combo += weights[c];
        }
        if (combo != coords[r]) return false;
    }
    return true;
}

}  // namespace bellpoly::polytope
