#pragma once

#include <span>
#include <variant>
#include <vector>

#include "bellpoly/correlation.hpp"
#include "bellpoly/rational.hpp"

namespace bellpoly::polytope {

/// Convex weights over the 2^n vertices reproducing the tested vector.
/// `boundary` marks verdicts where the solver needed slack below the
/// decision tolerance (distance to the polytope under 1e-9): still
/// reported as membership, flagged for the caller.
template <class S>
struct BasicWitness {
    std::vector<S> weights;  // size 2^n, enumerate_vertices order
    bool boundary = false;
};

/// Separating hyperplane: normal . u^eps <= offset for every vertex while
/// normal . p = offset + 1 (certificates are normalized to unit separation).
template <class S>
struct BasicCertificate {
    std::vector<S> normal;  // size n + |S|
    S offset;
};

template <class S>
class BasicMembershipVerdict {
public:
    explicit BasicMembershipVerdict(BasicWitness<S> w) : v_(std::move(w)) {}
    explicit BasicMembershipVerdict(BasicCertificate<S> c) : v_(std::move(c)) {}

    bool is_member() const noexcept { return std::holds_alternative<BasicWitness<S>>(v_); }
    const BasicWitness<S>& witness() const { return std::get<BasicWitness<S>>(v_); }
    const BasicCertificate<S>& certificate() const {
        return std::get<BasicCertificate<S>>(v_);
    }

private:
    std::variant<BasicWitness<S>, BasicCertificate<S>> v_;
};

using Witness = BasicWitness<double>;
using Certificate = BasicCertificate<double>;
using MembershipVerdict = BasicMembershipVerdict<double>;
using ExactMembershipVerdict = BasicMembershipVerdict<Rational>;

/// Decides p in c(n, S) by phase-1 LP feasibility over the vertex weights.
/// Tolerance stack: LP solve at 1e-9, witness/certificate re-check at 1e-8,
/// boundary flag when the optimum lies in (1e-12, 1e-9]. Guarded at n <= 16
/// (the tableau has 2^n columns).
MembershipVerdict membership(const CorrelationVector& p);

/// Same decision in exact rational arithmetic; no tolerances anywhere.
/// Guarded at n <= 8.
ExactMembershipVerdict membership_exact(const ExactCorrelationVector& p);

/// Independent audit of a witness: weights >= -1e-12, sum to 1 within 1e-9,
/// and reproduce p within 1e-8 in the sup norm.
bool check_witness(const CorrelationVector& p, std::span<const double> weights);

/// Exact counterpart used by the laboratory-record machinery.
bool check_witness_exact(const ExactCorrelationVector& p,
                         std::span<const Rational> weights);

}  // namespace bellpoly::polytope
