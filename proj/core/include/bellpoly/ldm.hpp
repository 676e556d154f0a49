#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bellpoly/direction.hpp"
#include "bellpoly/epr_table.hpp"
#include "bellpoly/inequalities.hpp"

namespace bellpoly::ldm {

/// A local deterministic Markovian world over finite parameter spaces.
///
/// mu carries the left-side data, nu the right-side data, lambda the data
/// shared by both wings. In every run the triple (mu, lambda, nu) is drawn
/// from the product measure p(mu) p(lambda) p(nu), and the 0/1 response
/// functions decide which of the eight event types occur:
///
///   setting_left[i](mu, lambda)   "the left magnet is turned to a_i"
///   outcome_left[i](mu, lambda)   "the left up-detector fires under a_i"
///   setting_right[j](lambda, nu), outcome_right[j](lambda, nu)  likewise
///
/// Invariants: exactly one left setting is chosen for each (mu, lambda)
/// and one right setting for each (lambda, nu); an outcome implies its
/// setting; with no_conspiracy set, setting choices ignore lambda (left
/// settings depend on mu alone, right settings on nu alone).
class LdmModel {
public:
    std::size_t mu_count = 0, lambda_count = 0, nu_count = 0;
    std::vector<double> p_mu, p_lambda, p_nu;
    // Left tables are indexed [mu * lambda_count + lambda], right tables
    // [lambda * nu_count + nu].
    std::array<std::vector<std::uint8_t>, 2> setting_left, outcome_left;
    std::array<std::vector<std::uint8_t>, 2> setting_right, outcome_right;
    bool no_conspiracy = true;

    std::uint8_t a(int i, std::size_t mu, std::size_t lam) const {
        return setting_left[i][mu * lambda_count + lam];
    }
    std::uint8_t outcome_a(int i, std::size_t mu, std::size_t lam) const {
        return outcome_left[i][mu * lambda_count + lam];
    }
    std::uint8_t b(int j, std::size_t lam, std::size_t nu) const {
        return setting_right[j][lam * nu_count + nu];
    }
    std::uint8_t outcome_b(int j, std::size_t lam, std::size_t nu) const {
        return outcome_right[j][lam * nu_count + nu];
    }

    /// Throws ValidationError when any invariant fails.
    void validate() const;
};

/// Conditional table with possibly undefined cells (zero-probability
/// settings make the Bayes quotient undefined, which is reported as such,
/// never as 0).
struct ConditionalTable {
    std::array<std::optional<double>, 2> left;  // p(A_i | a_i)
    std::array<std::optional<double>, 2> right;
    std::array<std::array<std::optional<double>, 2>, 2> joint;

    bool fully_defined() const;
    /// Throws UndefinedValueError naming the missing cells.
    EprConditionalTable require_defined() const;
};

struct EventCounts {
    std::uint64_t trials = 0;
    std::array<std::uint64_t, 2> outcome_left{}, outcome_right{};
    std::array<std::uint64_t, 2> setting_left{}, setting_right{};
    std::array<std::array<std::uint64_t, 2>, 2> joint_outcomes{};  // A_i & B_j
    std::array<std::array<std::uint64_t, 2>, 2> joint_settings{};  // a_i & b_j
};

/// Absolute probabilities (or relative frequencies) of the eight event
/// types and the conjunctions, plus the derived conditional table.
struct EnsembleStats {
    std::array<double, 2> p_outcome_left{}, p_outcome_right{};
    std::array<double, 2> p_setting_left{}, p_setting_right{};
    std::array<std::array<double, 2>, 2> p_joint_outcomes{};
    std::array<std::array<double, 2>, 2> p_joint_settings{};
    ConditionalTable conditionals;
    std::optional<EventCounts> counts;  // present for sampled ensembles
};

/// Exact summation over M x L x N of the product measure.
EnsembleStats exact_probabilities(const LdmModel& m);

/// I.i.d. sampling from the product measure. Deterministic for a fixed
/// seed; trials are processed in the fixed block layout of rng.hpp, so the
/// merged counts do not depend on the worker count.
EnsembleStats simulate(const LdmModel& m, std::uint64_t trials, std::uint64_t seed);

/// Factorization condition p(A_i & B_j | a_i & b_j & lambda) =
/// p(A_i | a_i & lambda) p(B_j | b_j & lambda), verified per lambda.
struct ScreeningOffReport {
    struct Entry {
        std::size_t lambda = 0;
        double max_gap = 0.0;
        bool holds = true;
        std::vector<std::string> undefined;  // conditions with zero probability
    };
    std::vector<Entry> per_lambda;
    bool all_hold = true;
    double max_gap = 0.0;
};
ScreeningOffReport check_screening_off(const LdmModel& m, double tol = 1e-12);

/// p(A_i | a_i & b_j & lambda) = p(A_i | a_i & lambda) and the mirrored
/// right-wing condition.
struct ParameterIndependenceReport {
    struct Entry {
        std::size_t lambda = 0;
        double max_gap = 0.0;
        bool holds = true;
        std::vector<std::string> undefined;
    };
    std::vector<Entry> per_lambda;
    bool all_hold = true;
    double max_gap = 0.0;
};
ParameterIndependenceReport check_parameter_independence(const LdmModel& m,
                                                         double tol = 1e-12);

/// The total-probability decomposition over lambda,
///   p(X | Y) = sum_lambda p(X | Y & lambda) p(lambda),
/// checked for the marginals and the four joints. It is exactly the step
/// that needs the no-conspiracy condition, so conspiracy models are
/// expected to break it (or leave terms undefined).
struct DecompositionReport {
    struct Entry {
        std::string id;
        std::optional<double> direct;      // p(X | Y)
        std::optional<double> decomposed;  // sum over lambda
        double gap = 0.0;
        bool holds = true;
        bool defined = true;
    };
    std::vector<Entry> entries;
    bool all_defined = true;
    bool all_hold = true;
    double max_gap = 0.0;
};
DecompositionReport check_total_probability(const LdmModel& m, double tol = 1e-12);

/// Joint distribution of three 0/1 events; index = 4a + 2b + c where
/// 1 means "occurs".
struct JointDistribution3 {
    std::array<double, 8> p{};
    void validate() const;
    double prob(std::optional<bool> a, std::optional<bool> b,
                std::optional<bool> c) const;
};

/// Reichenbach screening: C is accepted as a common cause for the (A, B)
/// correlation iff the joint factorizes both given C and given not-C.
/// A deterministic C (p(C) in {0, 1}) leaves the vacuous side undefined.
struct ReichenbachReport {
    std::optional<bool> factorizes_given_c;
    std::optional<bool> factorizes_given_not_c;
    double gap_given_c = 0.0;
    double gap_given_not_c = 0.0;

    /// True iff every defined side factorizes.
    bool satisfied() const;
};
ReichenbachReport check_reichenbach(const JointDistribution3& joint,
                                    double tol = 1e-12);

struct ModelShape {
    std::size_t mu = 16, lambda = 16, nu = 16;
};

/// Random valid model: distributions from symmetric Dirichlet(1), setting
/// choices uniform (per mu/nu under no-conspiracy, per (mu,lambda) /
/// (lambda,nu) in conspiracy mode), outcomes fair coins where the setting
/// allows one.
LdmModel random_model(const ModelShape& shape, std::uint64_t seed,
                      bool conspiracy = false);

/// lambda = one of the 16 deterministic outcome strategies; weights give
/// p(lambda). Settings are chosen by a fair independent coin on each side,
/// so the model is no-conspiracy and its conditional table is exactly
/// sum_eps w_eps u^eps.
LdmModel strategy_mixture_model(std::span<const double> weights16);

/// Perfect anticorrelation at equal settings: shared lambda in {0,1},
/// the left up-detector fires on lambda = 0, the right one on lambda = 1.
LdmModel anticorrelation_model();

/// Conspiracy demonstration: lambda picks the setting pair and the
/// outcomes, producing a conditional table with a maximal Bell-CH
/// violation (+1 on the first line).
LdmModel conspiracy_ch_violation_model();

struct TargetingOptions {
    std::uint64_t seed = 1;
    int restarts = 32;
    int refine_steps = 400;
};

/// Best-effort search for the no-conspiracy model whose conditional table
/// is closest (L1) to the quantum table of the given geometry. The
/// residual is the L1 table distance; since every line of the Bell-CH
/// system has +-1 coefficients, the residual of any no-conspiracy model is
/// bounded below by the quantum table's largest Bell-CH violation.
struct TargetingResult {
    LdmModel model;
    std::vector<double> weights;  // 16 strategy weights
    double residual = 0.0;
    EprConditionalTable achieved;
};
TargetingResult build_quantum_targeting_model(
    const std::array<Direction, 4>& geometry, const TargetingOptions& options = {});

}  // namespace bellpoly::ldm
