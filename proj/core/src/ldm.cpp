#include "bellpoly/ldm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bellpoly/errors.hpp"
#include "bellpoly/rng.hpp"

namespace bellpoly::ldm {

namespace {

constexpr double kDistributionTol = 1e-12;

void validate_distribution(const std::vector<double>& p, const char* name,
                           std::size_t expected_size) {
    if (p.size() != expected_size) {
        throw ValidationError(std::string(name) + " has wrong length");
    }
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw ValidationError(std::string(name) + " has a negative or bad entry");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kDistributionTol) {
        throw ValidationError(std::string(name) + " does not sum to 1");
    }
}

std::size_t sample_index(const std::vector<double>& cumulative, double u) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= cumulative.size()) idx = cumulative.size() - 1;
    return idx;
}

std::vector<double> cumulative_of(const std::vector<double>& p) {
    std::vector<double> c(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        c[i] = acc;
    }
    c.back() = std::max(c.back(), 1.0);  // guard the u ~ 1 edge
    return c;
}

std::optional<double> ratio(double num, double den) {
    if (den <= 0.0) return std::nullopt;
    return num / den;
}

ConditionalTable conditionals_from(
    const std::array<double, 2>& p_a, const std::array<double, 2>& p_b,
    const std::array<double, 2>& p_A, const std::array<double, 2>& p_B,
    const std::array<std::array<double, 2>, 2>& p_ab,
    const std::array<std::array<double, 2>, 2>& p_AB) {
    ConditionalTable t;
    for (int i = 0; i < 2; ++i) {
        t.left[i] = ratio(p_A[i], p_a[i]);
        t.right[i] = ratio(p_B[i], p_b[i]);
        for (int j = 0; j < 2; ++j) t.joint[i][j] = ratio(p_AB[i][j], p_ab[i][j]);
    }
    return t;
}

// Per-lambda wing sums: numerators over outcomes, denominators over settings.
struct WingSums {
    std::array<double, 2> outcome_left{}, setting_left{};
    std::array<double, 2> outcome_right{}, setting_right{};
};

WingSums wing_sums(const LdmModel& m, std::size_t lam) {
    WingSums s;
    for (std::size_t mu = 0; mu < m.mu_count; ++mu) {
        const double w = m.p_mu[mu];
        for (int i = 0; i < 2; ++i) {
            if (m.a(i, mu, lam)) s.setting_left[i] += w;
            if (m.outcome_a(i, mu, lam)) s.outcome_left[i] += w;
        }
    }
    for (std::size_t nu = 0; nu < m.nu_count; ++nu) {
        const double w = m.p_nu[nu];
        for (int j = 0; j < 2; ++j) {
            if (m.b(j, lam, nu)) s.setting_right[j] += w;
            if (m.outcome_b(j, lam, nu)) s.outcome_right[j] += w;
        }
    }
    return s;
}

}  // namespace

void LdmModel::validate() const {
    if (mu_count == 0 || lambda_count == 0 || nu_count == 0) {
        throw ValidationError("all parameter spaces must be nonempty");
    }
    validate_distribution(p_mu, "p(mu)", mu_count);
    validate_distribution(p_lambda, "p(lambda)", lambda_count);
    validate_distribution(p_nu, "p(nu)", nu_count);

    const std::size_t left_size = mu_count * lambda_count;
    const std::size_t right_size = lambda_count * nu_count;
    for (int i = 0; i < 2; ++i) {
        if (setting_left[i].size() != left_size || outcome_left[i].size() != left_size ||
            setting_right[i].size() != right_size ||
            outcome_right[i].size() != right_size) {
            throw ValidationError("response table has wrong length");
        }
    }

    for (std::size_t mu = 0; mu < mu_count; ++mu) {
        for (std::size_t lam = 0; lam < lambda_count; ++lam) {
            if (a(0, mu, lam) + a(1, mu, lam) != 1) {
                throw ValidationError("left wing must select exactly one setting");
            }
            for (int i = 0; i < 2; ++i) {
                if (outcome_a(i, mu, lam) && !a(i, mu, lam)) {
                    throw ValidationError("left outcome without its setting");
                }
            }
        }
    }
    for (std::size_t lam = 0; lam < lambda_count; ++lam) {
        for (std::size_t nu = 0; nu < nu_count; ++nu) {
            if (b(0, lam, nu) + b(1, lam, nu) != 1) {
                throw ValidationError("right wing must select exactly one setting");
            }
            for (int j = 0; j < 2; ++j) {
                if (outcome_b(j, lam, nu) && !b(j, lam, nu)) {
                    throw ValidationError("right outcome without its setting");
                }
            }
        }
    }

    if (no_conspiracy) {
        for (std::size_t mu = 0; mu < mu_count; ++mu) {
            for (std::size_t lam = 1; lam < lambda_count; ++lam) {
                if (a(0, mu, lam) != a(0, mu, 0)) {
                    throw ValidationError(
                        "no-conspiracy model has lambda-dependent left settings");
                }
            }
        }
        for (std::size_t nu = 0; nu < nu_count; ++nu) {
            for (std::size_t lam = 1; lam < lambda_count; ++lam) {
                if (b(0, lam, nu) != b(0, 0, nu)) {
                    throw ValidationError(
                        "no-conspiracy model has lambda-dependent right settings");
                }
            }
        }
    }
}

bool ConditionalTable::fully_defined() const {
    for (int i = 0; i < 2; ++i) {
        if (!left[i] || !right[i]) return false;
        for (int j = 0; j < 2; ++j) {
            if (!joint[i][j]) return false;
        }
    }
    return true;
}

EprConditionalTable ConditionalTable::require_defined() const {
    std::string missing;
    auto note = [&missing](const std::string& name) {
        if (!missing.empty()) missing += ", ";
        missing += name;
    };
    for (int i = 0; i < 2; ++i) {
        if (!left[i]) note("P(A" + std::to_string(i + 1) + "|a" + std::to_string(i + 1) + ")");
        if (!right[i]) note("P(B" + std::to_string(i + 1) + "|b" + std::to_string(i + 1) + ")");
        for (int j = 0; j < 2; ++j) {
            if (!joint[i][j]) {
                note("P(A" + std::to_string(i + 1) + "B" + std::to_string(j + 1) + "|..)");
            }
        }
    }
    if (!missing.empty()) {
        throw UndefinedValueError("conditional table has undefined cells: " + missing);
    }
    EprConditionalTable t;
    for (int i = 0; i < 2; ++i) {
        t.left[i] = *left[i];
        t.right[i] = *right[i];
        for (int j = 0; j < 2; ++j) t.joint[i][j] = *joint[i][j];
    }
    return t;
}

EnsembleStats exact_probabilities(const LdmModel& m) {
    m.validate();
    EnsembleStats stats;

    for (std::size_t mu = 0; mu < m.mu_count; ++mu) {
        const double wmu = m.p_mu[mu];
        if (wmu == 0.0) continue;
        for (std::size_t lam = 0; lam < m.lambda_count; ++lam) {
            const double wml = wmu * m.p_lambda[lam];
            if (wml == 0.0) continue;

            std::array<std::uint8_t, 2> ua, uA;
            for (int i = 0; i < 2; ++i) {
                ua[i] = m.a(i, mu, lam);
                uA[i] = m.outcome_a(i, mu, lam);
                stats.p_setting_left[i] += ua[i] ? wml : 0.0;
                stats.p_outcome_left[i] += uA[i] ? wml : 0.0;
            }

            for (std::size_t nu = 0; nu < m.nu_count; ++nu) {
                const double w = wml * m.p_nu[nu];
                if (w == 0.0) continue;
                for (int j = 0; j < 2; ++j) {
                    const bool ub = m.b(j, lam, nu);
                    const bool uB = m.outcome_b(j, lam, nu);
                    for (int i = 0; i < 2; ++i) {
                        if (ua[i] && ub) stats.p_joint_settings[i][j] += w;
                        if (uA[i] && uB) stats.p_joint_outcomes[i][j] += w;
                    }
                }
            }
        }
    }
    for (std::size_t lam = 0; lam < m.lambda_count; ++lam) {
        const double wl = m.p_lambda[lam];
        if (wl == 0.0) continue;
        for (std::size_t nu = 0; nu < m.nu_count; ++nu) {
            const double w = wl * m.p_nu[nu];
            for (int j = 0; j < 2; ++j) {
                if (m.b(j, lam, nu)) stats.p_setting_right[j] += w;
                if (m.outcome_b(j, lam, nu)) stats.p_outcome_right[j] += w;
            }
        }
    }

    stats.conditionals = conditionals_from(
        stats.p_setting_left, stats.p_setting_right, stats.p_outcome_left,
        stats.p_outcome_right, stats.p_joint_settings, stats.p_joint_outcomes);
    return stats;
}

EnsembleStats simulate(const LdmModel& m, std::uint64_t trials, std::uint64_t seed) {
    m.validate();
    if (trials < 1) throw ValidationError("simulate needs trials >= 1");

    const auto cum_mu = cumulative_of(m.p_mu);
    const auto cum_lambda = cumulative_of(m.p_lambda);
    const auto cum_nu = cumulative_of(m.p_nu);

    auto run_block = [&](std::uint64_t block, std::uint64_t count) {
        EventCounts c;
        std::mt19937_64 rng(substream_seed(seed, block));
        for (std::uint64_t t = 0; t < count; ++t) {
            const std::size_t mu = sample_index(cum_mu, uniform01(rng));
            const std::size_t lam = sample_index(cum_lambda, uniform01(rng));
            const std::size_t nu = sample_index(cum_nu, uniform01(rng));

            std::array<std::uint8_t, 2> ua, uA, ub, uB;
            for (int i = 0; i < 2; ++i) {
                ua[i] = m.a(i, mu, lam);
                uA[i] = m.outcome_a(i, mu, lam);
                ub[i] = m.b(i, lam, nu);
                uB[i] = m.outcome_b(i, lam, nu);
                c.setting_left[i] += ua[i];
                c.outcome_left[i] += uA[i];
                c.setting_right[i] += ub[i];
                c.outcome_right[i] += uB[i];
            }
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    c.joint_settings[i][j] += ua[i] & ub[j];
                    c.joint_outcomes[i][j] += uA[i] & uB[j];
                }
            }
        }
        c.trials = count;
        return c;
    };

    const auto blocks = map_trial_blocks<EventCounts>(trials, run_block);

    EventCounts total;
    for (const EventCounts& c : blocks) {
        total.trials += c.trials;
        for (int i = 0; i < 2; ++i) {
            total.setting_left[i] += c.setting_left[i];
            total.outcome_left[i] += c.outcome_left[i];
            total.setting_right[i] += c.setting_right[i];
            total.outcome_right[i] += c.outcome_right[i];
            for (int j = 0; j < 2; ++j) {
                total.joint_settings[i][j] += c.joint_settings[i][j];
                total.joint_outcomes[i][j] += c.joint_outcomes[i][j];
            }
        }
    }

    EnsembleStats stats;
    const double n = static_cast<double>(total.trials);
    std::array<std::array<double, 2>, 2> joint_set_freq{}, joint_out_freq{};
    for (int i = 0; i < 2; ++i) {
        stats.p_setting_left[i] = total.setting_left[i] / n;
        stats.p_outcome_left[i] = total.outcome_left[i] / n;
        stats.p_setting_right[i] = total.setting_right[i] / n;
        stats.p_outcome_right[i] = total.outcome_right[i] / n;
        for (int j = 0; j < 2; ++j) {
            joint_set_freq[i][j] = total.joint_settings[i][j] / n;
            joint_out_freq[i][j] = total.joint_outcomes[i][j] / n;
        }
    }
    stats.p_joint_settings = joint_set_freq;
    stats.p_joint_outcomes = joint_out_freq;

    ConditionalTable t;
    for (int i = 0; i < 2; ++i) {
        t.left[i] = total.setting_left[i] > 0
                        ? std::optional<double>(static_cast<double>(total.outcome_left[i]) /
                                                static_cast<double>(total.setting_left[i]))
                        : std::nullopt;
        t.right[i] = total.setting_right[i] > 0
                         ? std::optional<double>(
                               static_cast<double>(total.outcome_right[i]) /
                               static_cast<double>(total.setting_right[i]))
                         : std::nullopt;
        for (int j = 0; j < 2; ++j) {
            t.joint[i][j] =
                total.joint_settings[i][j] > 0
                    ? std::optional<double>(
                          static_cast<double>(total.joint_outcomes[i][j]) /
                          static_cast<double>(total.joint_settings[i][j]))
                    : std::nullopt;
        }
    }
    stats.conditionals = t;
    stats.counts = total;
    return stats;
}

ScreeningOffReport check_screening_off(const LdmModel& m, double tol) {
    m.validate();
    ScreeningOffReport report;

    for (std::size_t lam = 0; lam < m.lambda_count; ++lam) {
        ScreeningOffReport::Entry entry;
        entry.lambda = lam;
        const WingSums s = wing_sums(m, lam);

        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                // Joint conditional computed from the full (mu, nu) sums,
                // independently of the factorized form being verified.
                double num = 0.0, den = 0.0;
                for (std::size_t mu = 0; mu < m.mu_count; ++mu) {
                    const double wmu = m.p_mu[mu];
                    if (wmu == 0.0) continue;
                    const bool ua = m.a(i, mu, lam);
                    const bool uA = m.outcome_a(i, mu, lam);
                    if (!ua) continue;
                    for (std::size_t nu = 0; nu < m.nu_count; ++nu) {
                        const double w = wmu * m.p_nu[nu];
                        if (m.b(j, lam, nu)) {
                            den += w;
                            if (uA && m.outcome_b(j, lam, nu)) num += w;
                        }
                    }
                }
                const auto joint = ratio(num, den);
                const auto pa = ratio(s.outcome_left[i], s.setting_left[i]);
                const auto pb = ratio(s.outcome_right[j], s.setting_right[j]);
                if (!joint || !pa || !pb) {
                    entry.undefined.push_back("i=" + std::to_string(i + 1) +
                                              ",j=" + std::to_string(j + 1));
                    continue;
                }
                entry.max_gap = std::max(entry.max_gap, std::abs(*joint - *pa * *pb));
            }
        }
        entry.holds = entry.max_gap <= tol;
        report.all_hold = report.all_hold && entry.holds;
        report.max_gap = std::max(report.max_gap, entry.max_gap);
        report.per_lambda.push_back(std::move(entry));
    }
    return report;
}

ParameterIndependenceReport check_parameter_independence(const LdmModel& m, double tol) {
    m.validate();
    ParameterIndependenceReport report;

    for (std::size_t lam = 0; lam < m.lambda_count; ++lam) {
        ParameterIndependenceReport::Entry entry;
        entry.lambda = lam;
        const WingSums s = wing_sums(m, lam);

        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                // p(A_i | a_i & b_j & lambda) against p(A_i | a_i & lambda).
                double num = 0.0, den = 0.0;
                for (std::size_t mu = 0; mu < m.mu_count; ++mu) {
                    const double wmu = m.p_mu[mu];
                    if (wmu == 0.0 || !m.a(i, mu, lam)) continue;
                    for (std::size_t nu = 0; nu < m.nu_count; ++nu) {
                        const double w = wmu * m.p_nu[nu];
                        if (m.b(j, lam, nu)) {
                            den += w;
                            if (m.outcome_a(i, mu, lam)) num += w;
                        }
                    }
                }
                const auto with_b = ratio(num, den);
                const auto without_b = ratio(s.outcome_left[i], s.setting_left[i]);
                if (with_b && without_b) {
                    entry.max_gap = std::max(entry.max_gap, std::abs(*with_b - *without_b));
                } else {
                    entry.undefined.push_back("left i=" + std::to_string(i + 1) +
                                              ",j=" + std::to_string(j + 1));
                }

                // Mirrored: p(B_j | a_i & b_j & lambda) vs p(B_j | b_j & lambda).
                double numr = 0.0, denr = 0.0;
                for (std::size_t nu = 0; nu < m.nu_count; ++nu) {
                    const double wnu = m.p_nu[nu];
                    if (wnu == 0.0 || !m.b(j, lam, nu)) continue;
                    for (std::size_t mu = 0; mu < m.mu_count; ++mu) {
                        const double w = wnu * m.p_mu[mu];
                        if (m.a(i, mu, lam)) {
                            denr += w;
                            if (m.outcome_b(j, lam, nu)) numr += w;
                        }
                    }
                }
                const auto with_a = ratio(numr, denr);
                const auto without_a = ratio(s.outcome_right[j], s.setting_right[j]);
                if (with_a && without_a) {
                    entry.max_gap = std::max(entry.max_gap, std::abs(*with_a - *without_a));
                } else {
                    entry.undefined.push_back("right i=" + std::to_string(i + 1) +
                                              ",j=" + std::to_string(j + 1));
                }
            }
        }
        entry.holds = entry.max_gap <= tol;
        report.all_hold = report.all_hold && entry.holds;
        report.max_gap = std::max(report.max_gap, entry.max_gap);
        report.per_lambda.push_back(std::move(entry));
    }
    return report;
}

DecompositionReport check_total_probability(const LdmModel& m, double tol) {
    const EnsembleStats stats = exact_probabilities(m);
    DecompositionReport report;

    // Per-lambda conditional of each quantity; nullopt when that lambda
    // never realizes the conditioning event.
    auto add_entry = [&](const std::string& id, std::optional<double> direct,
                         auto per_lambda_value) {
        DecompositionReport::Entry entry;
        entry.id = id;
        entry.direct = direct;
        double sum = 0.0;
        bool defined = direct.has_value();
        for (std::size_t lam = 0; lam < m.lambda_count && defined; ++lam) {
            if (m.p_lambda[lam] == 0.0) continue;
            const std::optional<double> v = per_lambda_value(lam);
            if (!v) {
                defined = false;
                break;
            }
            sum += *v * m.p_lambda[lam];
        }
        entry.defined = defined;
        if (defined) {
            entry.decomposed = sum;
            entry.gap = std::abs(*direct - sum);
            entry.holds = entry.gap <= tol;
        } else {
            entry.holds = false;
        }
        report.all_defined = report.all_defined && entry.defined;
        report.all_hold = report.all_hold && entry.holds;
        if (entry.defined) report.max_gap = std::max(report.max_gap, entry.gap);
        report.entries.push_back(std::move(entry));
    };

    for (int i = 0; i < 2; ++i) {
        add_entry("P(A" + std::to_string(i + 1) + "|a" + std::to_string(i + 1) + ")",
                  stats.conditionals.left[i], [&, i](std::size_t lam) {
                      const WingSums s = wing_sums(m, lam);
                      return ratio(s.outcome_left[i], s.setting_left[i]);
                  });
    }
    for (int j = 0; j < 2; ++j) {
        add_entry("P(B" + std::to_string(j + 1) + "|b" + std::to_string(j + 1) + ")",
                  stats.conditionals.right[j], [&, j](std::size_t lam) {
                      const WingSums s = wing_sums(m, lam);
                      return ratio(s.outcome_right[j], s.setting_right[j]);
                  });
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            add_entry("P(A" + std::to_string(i + 1) + "B" + std::to_string(j + 1) +
                          "|a" + std::to_string(i + 1) + "b" + std::to_string(j + 1) + ")",
                      stats.conditionals.joint[i][j], [&, i, j](std::size_t lam) {
                          const WingSums s = wing_sums(m, lam);
                          const auto pa = ratio(s.outcome_left[i], s.setting_left[i]);
                          const auto pb = ratio(s.outcome_right[j], s.setting_right[j]);
                          // Screening-off holds identically under the product
                          // measure, so the per-lambda joint is the product.
                          if (!pa || !pb) return std::optional<double>();
                          return std::optional<double>(*pa * *pb);
                      });
        }
    }
    return report;
}

void JointDistribution3::validate() const {
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw ValidationError("joint distribution has a negative or bad entry");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kDistributionTol) {
        throw ValidationError("joint distribution does not sum to 1");
    }
}

double JointDistribution3::prob(std::optional<bool> a, std::optional<bool> b,
                                std::optional<bool> c) const {
    double sum = 0.0;
    for (int idx = 0; idx < 8; ++idx) {
        const bool va = (idx & 4) != 0, vb = (idx & 2) != 0, vc = (idx & 1) != 0;
        if (a && *a != va) continue;
        if (b && *b != vb) continue;
        if (c && *c != vc) continue;
        sum += p[idx];
    }
    return sum;
}

bool ReichenbachReport::satisfied() const {
    if (factorizes_given_c && !*factorizes_given_c) return false;
    if (factorizes_given_not_c && !*factorizes_given_not_c) return false;
    return true;
}

ReichenbachReport check_reichenbach(const JointDistribution3& joint, double tol) {
    joint.validate();
    ReichenbachReport report;

    auto side = [&](bool c_value, std::optional<bool>& verdict, double& gap) {
        const double pc = joint.prob(std::nullopt, std::nullopt, c_value);
        if (pc < 1e-15) {
            verdict = std::nullopt;  // vacuous side
            return;
        }
        const double pab = joint.prob(true, true, c_value) / pc;
        const double pa = joint.prob(true, std::nullopt, c_value) / pc;
        const double pb = joint.prob(std::nullopt, true, c_value) / pc;
        gap = std::abs(pab - pa * pb);
        verdict = gap <= tol;
    };
    side(true, report.factorizes_given_c, report.gap_given_c);
    side(false, report.factorizes_given_not_c, report.gap_given_not_c);
    return report;
}

LdmModel random_model(const ModelShape& shape, std::uint64_t seed, bool conspiracy) {
    std::mt19937_64 rng(substream_seed(seed, 0x1d71));

    auto dirichlet = [&rng](std::size_t k) {
        std::vector<double> p(k);
        double sum = 0.0;
        for (double& x : p) {
            x = -std::log(1.0 - uniform01(rng));
            sum += x;
        }
        for (double& x : p) x /= sum;
        // Exact renormalization guard for the validator's 1e-12 gate.
        double total = 0.0;
        for (double x : p) total += x;
        p.back() += 1.0 - total;
        return p;
    };

    LdmModel m;
    m.mu_count = shape.mu;
    m.lambda_count = shape.lambda;
    m.nu_count = shape.nu;
    m.p_mu = dirichlet(shape.mu);
    m.p_lambda = dirichlet(shape.lambda);
    m.p_nu = dirichlet(shape.nu);
    m.no_conspiracy = !conspiracy;

    const std::size_t left_size = shape.mu * shape.lambda;
    const std::size_t right_size = shape.lambda * shape.nu;
    for (int i = 0; i < 2; ++i) {
        m.setting_left[i].assign(left_size, 0);
        m.outcome_left[i].assign(left_size, 0);
        m.setting_right[i].assign(right_size, 0);
        m.outcome_right[i].assign(right_size, 0);
    }

    // Setting choices: per mu/nu under no-conspiracy, per cell otherwise.
    std::vector<std::uint8_t> left_choice(conspiracy ? left_size : shape.mu);
    for (auto& c : left_choice) c = rng() & 1u;
    std::vector<std::uint8_t> right_choice(conspiracy ? right_size : shape.nu);
    for (auto& c : right_choice) c = rng() & 1u;

    for (std::size_t mu = 0; mu < shape.mu; ++mu) {
        for (std::size_t lam = 0; lam < shape.lambda; ++lam) {
            const std::size_t cell = mu * shape.lambda + lam;
            const int chosen = conspiracy ? left_choice[cell] : left_choice[mu];
            m.setting_left[chosen][cell] = 1;
            m.outcome_left[chosen][cell] = rng() & 1u;
        }
    }
    for (std::size_t lam = 0; lam < shape.lambda; ++lam) {
        for (std::size_t nu = 0; nu < shape.nu; ++nu) {
            const std::size_t cell = lam * shape.nu + nu;
            const int chosen = conspiracy ? right_choice[cell] : right_choice[nu];
            m.setting_right[chosen][cell] = 1;
            m.outcome_right[chosen][cell] = rng() & 1u;
        }
    }

    m.validate();
    return m;
}

LdmModel strategy_mixture_model(std::span<const double> weights16) {
    if (weights16.size() != 16) throw ShapeError("need exactly 16 strategy weights");
    double sum = 0.0;
    for (double w : weights16) {
        if (!(w >= 0.0)) throw ValidationError("strategy weights must be nonnegative");
        sum += w;
    }
    if (sum <= 0.0) throw ValidationError("strategy weights must not all vanish");

    LdmModel m;
    m.mu_count = 2;
    m.lambda_count = 16;
    m.nu_count = 2;
    m.p_mu = {0.5, 0.5};
    m.p_nu = {0.5, 0.5};
    m.p_lambda.assign(weights16.begin(), weights16.end());
    for (double& w : m.p_lambda) w /= sum;
    double total = 0.0;
    for (double w : m.p_lambda) total += w;
    m.p_lambda.back() += 1.0 - total;

    for (int i = 0; i < 2; ++i) {
        m.setting_left[i].assign(2 * 16, 0);
        m.outcome_left[i].assign(2 * 16, 0);
        m.setting_right[i].assign(16 * 2, 0);
        m.outcome_right[i].assign(16 * 2, 0);
    }
    for (std::size_t mu = 0; mu < 2; ++mu) {
        for (std::size_t lam = 0; lam < 16; ++lam) {
            const std::size_t cell = mu * 16 + lam;
            m.setting_left[mu][cell] = 1;
            // Strategy bits: X1 = A1, X2 = A2, X3 = B1, X4 = B2.
            const bool fires = (lam >> mu) & 1u;
            m.outcome_left[mu][cell] = fires ? 1 : 0;
        }
    }
    for (std::size_t lam = 0; lam < 16; ++lam) {
        for (std::size_t nu = 0; nu < 2; ++nu) {
            const std::size_t cell = lam * 2 + nu;
            m.setting_right[nu][cell] = 1;
            const bool fires = (lam >> (2 + nu)) & 1u;
            m.outcome_right[nu][cell] = fires ? 1 : 0;
        }
    }
    m.no_conspiracy = true;
    m.validate();
    return m;
}

LdmModel anticorrelation_model() {
    LdmModel m;
    m.mu_count = 1;
    m.lambda_count = 2;
    m.nu_count = 1;
    m.p_mu = {1.0};
    m.p_lambda = {0.5, 0.5};
    m.p_nu = {1.0};

    m.setting_left[0] = {1, 1};
    m.setting_left[1] = {0, 0};
    m.outcome_left[0] = {1, 0};  // fires on lambda = 0
    m.outcome_left[1] = {0, 0};
    m.setting_right[0] = {1, 1};
    m.setting_right[1] = {0, 0};
    m.outcome_right[0] = {0, 1};  // fires on lambda = 1
    m.outcome_right[1] = {0, 0};
    m.no_conspiracy = true;
    m.validate();
    return m;
}

LdmModel conspiracy_ch_violation_model() {
    LdmModel m;
    m.mu_count = 1;
    m.lambda_count = 4;
    m.nu_count = 1;
    m.p_mu = {1.0};
    m.p_lambda = {0.25, 0.25, 0.25, 0.25};
    m.p_nu = {1.0};

    // lambda encodes the setting pair: 0 -> (a1,b1), 1 -> (a1,b2),
    // 2 -> (a2,b1), 3 -> (a2,b2).
    m.setting_left[0] = {1, 1, 0, 0};
    m.setting_left[1] = {0, 0, 1, 1};
    m.setting_right[0] = {1, 0, 1, 0};
    m.setting_right[1] = {0, 1, 0, 1};

    // Outcomes arranged for joints (1,1,0,1): the first Bell-CH line
    // evaluates to +1.
    m.outcome_left[0] = {1, 1, 0, 0};
    m.outcome_left[1] = {0, 0, 0, 1};
    m.outcome_right[0] = {1, 0, 0, 0};
    m.outcome_right[1] = {0, 1, 0, 1};
    m.no_conspiracy = false;
    m.validate();
    return m;
}

namespace {

// L1 distance between the mixture table of w and the target coordinates.
struct MixtureObjective {
    std::array<std::array<double, 8>, 16> vertex_coords;  // u^eps per strategy
    std::array<double, 8> target;

    std::array<double, 8> residual(std::span<const double> w) const {
        std::array<double, 8> r{};
        for (std::size_t k = 0; k < 8; ++k) {
            double acc = 0.0;
            for (std::size_t e = 0; e < 16; ++e) acc += w[e] * vertex_coords[e][k];
            r[k] = acc - target[k];
        }
        return r;
    }

    double value(std::span<const double> w) const {
        const auto r = residual(w);
        double f = 0.0;
        for (double x : r) f += std::abs(x);
        return f;
    }
};

double refine_frank_wolfe(const MixtureObjective& obj, std::vector<double>& w,
                          int steps) {
    double best = obj.value(w);
    for (int step = 0; step < steps; ++step) {
        const auto r = obj.residual(w);
        // Linearized objective: pick the strategy with the smallest
        // subgradient coordinate.
        std::size_t target_eps = 0;
        double best_g = 0.0;
        for (std::size_t e = 0; e < 16; ++e) {
            double g = 0.0;
            for (std::size_t k = 0; k < 8; ++k) {
                const double sign = r[k] > 0.0 ? 1.0 : (r[k] < 0.0 ? -1.0 : 0.0);
                g += sign * obj.vertex_coords[e][k];
            }
            if (e == 0 || g < best_g) {
                best_g = g;
                target_eps = e;
            }
        }

        // Exact line search on the piecewise-linear section towards e_eps.
        std::array<double, 8> direction;
        for (std::size_t k = 0; k < 8; ++k) {
            direction[k] = obj.vertex_coords[target_eps][k] - obj.target[k] - r[k];
        }
        double best_t = 0.0;
        double best_f = best;
        auto consider = [&](double t) {
            if (t < 0.0 || t > 1.0) return;
            double f = 0.0;
            for (std::size_t k = 0; k < 8; ++k) f += std::abs(r[k] + t * direction[k]);
            if (f < best_f) {
                best_f = f;
                best_t = t;
            }
        };
        consider(1.0);
        for (std::size_t k = 0; k < 8; ++k) {
            if (direction[k] != 0.0) consider(-r[k] / direction[k]);
        }

        if (best_f >= best - 1e-15) break;
        for (std::size_t e = 0; e < 16; ++e) w[e] *= (1.0 - best_t);
        w[target_eps] += best_t;
        best = best_f;
    }
    return best;
}

}  // namespace

TargetingResult build_quantum_targeting_model(const std::array<Direction, 4>& geometry,
                                              const TargetingOptions& options) {
    const EprConditionalTable quantum = ineq::quantum_epr_table(
        geometry[0], geometry[1], geometry[2], geometry[3]);
    const CorrelationVector target = table_to_vector(quantum);

    MixtureObjective obj;
    {
        const auto vertices = enumerate_vertices(IndexPairSet::clauser_horne());
        for (std::size_t e = 0; e < 16; ++e) {
            for (std::size_t k = 0; k < 8; ++k) {
                obj.vertex_coords[e][k] = vertices[e].coordinates[k];
            }
        }
        const auto coords = target.coordinates();
        std::copy(coords.begin(), coords.end(), obj.target.begin());
    }

    std::vector<std::vector<double>> candidates;
    candidates.emplace_back(16, 1.0 / 16.0);  // independent fair coins
    {
        // Perfect anticorrelation with equal outcomes per wing:
        // eps = (1,1,0,0) and (0,0,1,1).
        std::vector<double> w(16, 0.0);
        w[vertex_index({1, 1, 0, 0})] = 0.5;
        w[vertex_index({0, 0, 1, 1})] = 0.5;
        candidates.push_back(std::move(w));
    }
    for (std::size_t e = 0; e < 16; ++e) {
        std::vector<double> w(16, 0.0);
        w[e] = 1.0;
        candidates.push_back(std::move(w));
    }
    std::mt19937_64 rng(substream_seed(options.seed, 0xf17e));
    for (int r = 0; r < options.restarts; ++r) {
        std::vector<double> w(16);
        double sum = 0.0;
        for (double& x : w) {
            x = -std::log(1.0 - uniform01(rng));
            sum += x;
        }
        for (double& x : w) x /= sum;
        candidates.push_back(std::move(w));
    }

    std::vector<double> best_w;
    double best_f = 0.0;
    bool first = true;
    for (auto& w : candidates) {
        const double f = refine_frank_wolfe(obj, w, options.refine_steps);
        if (first || f < best_f) {
            best_f = f;
            best_w = w;
            first = false;
        }
    }

    TargetingResult result;
    result.weights = best_w;
    result.residual = best_f;
    result.model = strategy_mixture_model(best_w);
    result.achieved = exact_probabilities(result.model).conditionals.require_defined();
    return result;
}

}  // namespace bellpoly::ldm
