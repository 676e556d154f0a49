#include "bellpoly/json_io.hpp"

namespace bellpoly::jsonio {

namespace {

Json pairs_json(const IndexPairSet& s) {
    Json pairs = Json::array();
    for (const auto& [i, j] : s.pairs()) pairs.push_back(Json::array({i, j}));
    return pairs;
}

IndexPairSet index_set_from(const Json& j) {
    if (!j.contains("n") || !j.contains("S")) {
        throw ValidationError("correlation vector JSON needs 'n' and 'S'");
    }
    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : j.at("S")) {
        if (!p.is_array() || p.size() != 2) {
            throw ValidationError("'S' entries must be [i, j] pairs");
        }
        pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    return IndexPairSet(j.at("n").get<int>(), std::move(pairs));
}

double number_from(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
    throw ValidationError("expected a number or rational string");
}

Rational rational_from(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number()) return rational_from_double(j.get<double>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ValidationError("expected a number or rational string");
}

template <class S, class Cell>
Json vector_json(const BasicCorrelationVector<S>& v, Cell cell) {
    Json j;
    j["n"] = v.index_set.n();
    j["S"] = pairs_json(v.index_set);
    Json p = Json::array();
    for (const auto& x : v.singles) p.push_back(cell(x));
    Json pp = Json::array();
    for (const auto& x : v.pairs) pp.push_back(cell(x));
    j["p"] = std::move(p);
    j["p_pair"] = std::move(pp);
    return j;
}

template <class S, class Cell>
Json report_json(const ineq::BasicInequalityReport<S>& report, Cell cell) {
    Json j;
    j["system"] = report.system;
    Json lines = Json::array();
    for (const auto& line : report.lines) {
        Json l;
        l["id"] = line.id;
        l["lhs"] = cell(line.lhs);
        l["lower"] = line.lower ? Json(cell(*line.lower)) : Json(nullptr);
        l["upper"] = line.upper ? Json(cell(*line.upper)) : Json(nullptr);
        l["margin"] = cell(line.margin);
        l["satisfied"] = line.satisfied;
        lines.push_back(std::move(l));
    }
    j["lines"] = std::move(lines);
    j["all_satisfied"] = report.all_satisfied();
    j["violated_count"] = report.violated_count();
    j["max_margin"] = cell(report.max_margin());
    return j;
}

Json optional_json(const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const CorrelationVector& v) {
    return vector_json(v, [](double x) { return Json(x); });
}

Json to_json(const ExactCorrelationVector& v) {
    return vector_json(v, [](const Rational& x) { return Json(to_string(x)); });
}

CorrelationVector correlation_vector_from_json(const Json& j) {
    IndexPairSet s = index_set_from(j);
    std::vector<double> singles, pairs;
    for (const auto& x : j.at("p")) singles.push_back(number_from(x));
    for (const auto& x : j.at("p_pair")) pairs.push_back(number_from(x));
    return CorrelationVector(std::move(s), std::move(singles), std::move(pairs));
}

ExactCorrelationVector exact_correlation_vector_from_json(const Json& j) {
    IndexPairSet s = index_set_from(j);
    std::vector<Rational> singles, pairs;
    for (const auto& x : j.at("p")) singles.push_back(rational_from(x));
    for (const auto& x : j.at("p_pair")) pairs.push_back(rational_from(x));
    return ExactCorrelationVector(std::move(s), std::move(singles), std::move(pairs));
}

Json to_json(const ineq::InequalityReport& report) {
    return report_json(report, [](double x) { return Json(x); });
}

Json to_json(const ineq::ExactInequalityReport& report) {
    return report_json(report, [](const Rational& x) {
        Json j;
        j = Json::object();
        j["exact"] = to_string(x);
        j["value"] = to_double(x);
        return j;
    });
}

Json to_json(const EprConditionalTable& table) {
    Json j;
    j["marginal_left"] = Json::array({table.left[0], table.left[1]});
    j["marginal_right"] = Json::array({table.right[0], table.right[1]});
    j["joint"] = Json::array({Json::array({table.joint[0][0], table.joint[0][1]}),
                              Json::array({table.joint[1][0], table.joint[1][1]})});
    return j;
}

Json to_json(const ldm::ConditionalTable& table) {
    Json j;
    j["marginal_left"] =
        Json::array({optional_json(table.left[0]), optional_json(table.left[1])});
    j["marginal_right"] =
        Json::array({optional_json(table.right[0]), optional_json(table.right[1])});
    j["joint"] = Json::array(
        {Json::array({optional_json(table.joint[0][0]), optional_json(table.joint[0][1])}),
         Json::array({optional_json(table.joint[1][0]), optional_json(table.joint[1][1])})});
    return j;
}

Json to_json(const polytope::MembershipVerdict& verdict) {
    Json j;
    j["member"] = verdict.is_member();
    if (verdict.is_member()) {
        const auto& w = verdict.witness();
        j["boundary"] = w.boundary;
        j["witness"] = Json::object({{"weights", w.weights}});
    } else {
        const auto& c = verdict.certificate();
        j["certificate"] =
            Json::object({{"normal", c.normal}, {"offset", c.offset}, {"separation", 1.0}});
    }
    return j;
}

Json to_json(const polytope::ExactMembershipVerdict& verdict) {
    Json j;
    j["member"] = verdict.is_member();
    auto strings = [](const std::vector<Rational>& xs) {
        Json arr = Json::array();
        for (const auto& x : xs) arr.push_back(to_string(x));
        return arr;
    };
    if (verdict.is_member()) {
        const auto& w = verdict.witness();
        j["boundary"] = w.boundary;
        j["witness"] = Json::object({{"weights", strings(w.weights)}});
    } else {
        const auto& c = verdict.certificate();
        j["certificate"] = Json::object({{"normal", strings(c.normal)},
                                         {"offset", to_string(c.offset)},
                                         {"separation", "1"}});
    }
    return j;
}

Json to_json(const ldm::LdmModel& model) {
    auto table2d = [](const std::vector<std::uint8_t>& t, std::size_t rows,
                      std::size_t cols) {
        Json out = Json::array();
        for (std::size_t r = 0; r < rows; ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < cols; ++c) row.push_back(int(t[r * cols + c]));
            out.push_back(std::move(row));
        }
        return out;
    };

    Json j;
    j["mu_count"] = model.mu_count;
    j["lambda_count"] = model.lambda_count;
    j["nu_count"] = model.nu_count;
    j["p_mu"] = model.p_mu;
    j["p_lambda"] = model.p_lambda;
    j["p_nu"] = model.p_nu;
    j["no_conspiracy"] = model.no_conspiracy;
    for (int i = 0; i < 2; ++i) {
        const std::string suffix = std::to_string(i + 1);
        j["setting_a" + suffix] =
            table2d(model.setting_left[i], model.mu_count, model.lambda_count);
        j["outcome_A" + suffix] =
            table2d(model.outcome_left[i], model.mu_count, model.lambda_count);
        j["setting_b" + suffix] =
            table2d(model.setting_right[i], model.lambda_count, model.nu_count);
        j["outcome_B" + suffix] =
            table2d(model.outcome_right[i], model.lambda_count, model.nu_count);
    }
    return j;
}

ldm::LdmModel ldm_model_from_json(const Json& j) {
    ldm::LdmModel m;
    try {
        m.mu_count = j.at("mu_count").get<std::size_t>();
        m.lambda_count = j.at("lambda_count").get<std::size_t>();
        m.nu_count = j.at("nu_count").get<std::size_t>();
        m.p_mu = j.at("p_mu").get<std::vector<double>>();
        m.p_lambda = j.at("p_lambda").get<std::vector<double>>();
        m.p_nu = j.at("p_nu").get<std::vector<double>>();
        m.no_conspiracy = j.at("no_conspiracy").get<bool>();

        auto flat = [](const Json& table, std::size_t rows, std::size_t cols) {
            std::vector<std::uint8_t> out;
            out.reserve(rows * cols);
            if (table.size() != rows) throw ValidationError("bad table row count");
            for (const auto& row : table) {
                if (row.size() != cols) throw ValidationError("bad table column count");
                for (const auto& cell : row) {
                    const int v = cell.get<int>();
                    if (v != 0 && v != 1) throw ValidationError("table cells must be 0/1");
                    out.push_back(static_cast<std::uint8_t>(v));
                }
            }
            return out;
        };
        for (int i = 0; i < 2; ++i) {
            const std::string suffix = std::to_string(i + 1);
            m.setting_left[i] =
                flat(j.at("setting_a" + suffix), m.mu_count, m.lambda_count);
            m.outcome_left[i] =
                flat(j.at("outcome_A" + suffix), m.mu_count, m.lambda_count);
            m.setting_right[i] =
                flat(j.at("setting_b" + suffix), m.lambda_count, m.nu_count);
            m.outcome_right[i] =
                flat(j.at("outcome_B" + suffix), m.lambda_count, m.nu_count);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad LDM model JSON: ") + e.what());
    }
    m.validate();
    return m;
}

Json to_json(const ldm::EnsembleStats& stats) {
    Json j;
    j["p_outcome_left"] = stats.p_outcome_left;
    j["p_outcome_right"] = stats.p_outcome_right;
    j["p_setting_left"] = stats.p_setting_left;
    j["p_setting_right"] = stats.p_setting_right;
    j["p_joint_outcomes"] =
        Json::array({stats.p_joint_outcomes[0], stats.p_joint_outcomes[1]});
    j["p_joint_settings"] =
        Json::array({stats.p_joint_settings[0], stats.p_joint_settings[1]});
    j["conditional_table"] = to_json(stats.conditionals);
    if (stats.counts) {
        Json c;
        c["trials"] = stats.counts->trials;
        c["outcome_left"] = stats.counts->outcome_left;
        c["outcome_right"] = stats.counts->outcome_right;
        c["setting_left"] = stats.counts->setting_left;
        c["setting_right"] = stats.counts->setting_right;
        c["joint_outcomes"] =
            Json::array({stats.counts->joint_outcomes[0], stats.counts->joint_outcomes[1]});
        c["joint_settings"] =
            Json::array({stats.counts->joint_settings[0], stats.counts->joint_settings[1]});
        j["counts"] = std::move(c);
    }
    return j;
}

Json to_json(const ldm::ScreeningOffReport& report) {
    Json j;
    j["all_hold"] = report.all_hold;
    j["max_gap"] = report.max_gap;
    Json entries = Json::array();
    for (const auto& e : report.per_lambda) {
        entries.push_back(Json::object({{"lambda", e.lambda},
                                        {"holds", e.holds},
                                        {"max_gap", e.max_gap},
                                        {"undefined", e.undefined}}));
    }
    j["per_lambda"] = std::move(entries);
    return j;
}

Json to_json(const ldm::ParameterIndependenceReport& report) {
    Json j;
    j["all_hold"] = report.all_hold;
    j["max_gap"] = report.max_gap;
    Json entries = Json::array();
    for (const auto& e : report.per_lambda) {
        entries.push_back(Json::object({{"lambda", e.lambda},
                                        {"holds", e.holds},
                                        {"max_gap", e.max_gap},
                                        {"undefined", e.undefined}}));
    }
    j["per_lambda"] = std::move(entries);
    return j;
}

Json to_json(const ldm::DecompositionReport& report) {
    Json j;
    j["all_hold"] = report.all_hold;
    j["all_defined"] = report.all_defined;
    j["max_gap"] = report.max_gap;
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        entries.push_back(Json::object({{"id", e.id},
                                        {"direct", optional_json(e.direct)},
                                        {"decomposed", optional_json(e.decomposed)},
                                        {"gap", e.gap},
                                        {"holds", e.holds},
                                        {"defined", e.defined}}));
    }
    j["entries"] = std::move(entries);
    return j;
}

Json to_json(const fine::CoincidenceStats& stats) {
    Json j;
    j["pairs"] = stats.pairs;
    j["left_detected"] = stats.left_detected;
    j["right_detected"] = stats.right_detected;
    j["coincidences"] = stats.coincidences;
    j["coincidence_rate"] = stats.coincidence_rate();
    j["outcomes"] = Json::array({stats.outcomes[0], stats.outcomes[1]});
    return j;
}

Json to_json(const fine::LoopholeReport& report) {
    Json j;
    Json geom = Json::array();
    for (const Direction& d : report.geometry) {
        geom.push_back(Json::array({d.x(), d.y(), d.z()}));
    }
    j["geometry"] = std::move(geom);
    j["pairs_per_setting"] = report.pairs_per_setting;
    j["mean_coincidence_rate"] = report.mean_coincidence_rate;
    j["raw_table"] = to_json(report.raw_table);
    j["post_table"] = to_json(report.post_table);
    j["raw_bell_ch"] = to_json(report.raw_bell_ch);
    j["post_bell_ch"] = report.post_bell_ch ? to_json(*report.post_bell_ch) : Json(nullptr);
    Json runs = Json::array();
    for (int i = 0; i < 2; ++i) {
        Json row = Json::array();
        for (int k = 0; k < 2; ++k) row.push_back(to_json(report.runs[i][k]));
        runs.push_back(std::move(row));
    }
    j["runs"] = std::move(runs);
    return j;
}

Json to_json(const labrecord::FrequencyVector& f) {
    Json j;
    j["rows"] = f.rows;
    j["single_counts"] = f.single_counts;
    j["pair_counts"] = f.pair_counts;
    j["frequencies"] = to_json(f.vector);
    j["frequencies_approx"] = to_json(to_approx(f.vector));
    return j;
}

}  // namespace bellpoly::jsonio
