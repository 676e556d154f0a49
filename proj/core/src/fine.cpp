#include "bellpoly/fine.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "bellpoly/errors.hpp"
#include "bellpoly/rng.hpp"

namespace bellpoly::fine {

namespace {

constexpr double kPi = 3.14159265358979323846;

Direction sample_sphere(std::mt19937_64& rng) {
    const double z = 2.0 * uniform01(rng) - 1.0;
    const double phi = 2.0 * kPi * uniform01(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Direction(s * std::cos(phi), s * std::sin(phi), z);
}

}  // namespace

FineModel default_model() {
    FineModel m;
    m.left_up = [](const Direction& lambda, const Direction& a) {
        return lambda.dot(a) >= 0.0;
    };
    m.right_up = [](const Direction& lambda, const Direction& b) {
        return lambda.dot(b) < 0.0;
    };
    m.left_detect = [](const Direction&, const Direction&) { return 1.0; };
    m.right_detect = [](const Direction& lambda, const Direction& b) {
        return std::abs(lambda.dot(b));
    };
    return m;
}

FineModel full_detection_model() {
    FineModel m = default_model();
    m.right_detect = [](const Direction&, const Direction&) { return 1.0; };
    return m;
}

std::optional<double> CoincidenceStats::post_probability(int left_outcome,
                                                         int right_outcome) const {
    if (coincidences == 0) return std::nullopt;
    return static_cast<double>(outcomes[left_outcome][right_outcome]) /
           static_cast<double>(coincidences);
}

double CoincidenceStats::raw_probability(int left_outcome, int right_outcome) const {
    return pairs ? static_cast<double>(outcomes[left_outcome][right_outcome]) /
                       static_cast<double>(pairs)
                 : 0.0;
}

CoincidenceStats run(const FineModel& m, const Direction& a, const Direction& b,
                     std::uint64_t pairs, std::uint64_t seed) {
    if (pairs < 1) throw ValidationError("run needs pairs >= 1");

    auto run_block = [&](std::uint64_t block, std::uint64_t count) {
        CoincidenceStats s;
        std::mt19937_64 lambda_rng(substream_seed(seed, 2 * block));
        std::mt19937_64 detect_rng(substream_seed(seed, 2 * block + 1));
        for (std::uint64_t t = 0; t < count; ++t) {
            const Direction lambda = sample_sphere(lambda_rng);
            const bool lu = m.left_up(lambda, a);
            const bool ru = m.right_up(lambda, b);
            // Both detection draws happen on every pair so that toggling a
            // detection function leaves the stream alignment intact.
            const double dl = uniform01(detect_rng);
            const double dr = uniform01(detect_rng);
            const bool left_det = dl < m.left_detect(lambda, a);
            const bool right_det = dr < m.right_detect(lambda, b);

            s.left_detected += left_det;
            s.right_detected += right_det;
            if (left_det && lu) s.left_up_detected += 1;
            if (right_det && ru) s.right_up_detected += 1;
            if (left_det && right_det) {
                s.coincidences += 1;
                s.outcomes[lu ? 0 : 1][ru ? 0 : 1] += 1;
            }
        }
        s.pairs = count;
        return s;
    };

    const auto blocks = map_trial_blocks<CoincidenceStats>(pairs, run_block);

    CoincidenceStats total;
    for (const CoincidenceStats& s : blocks) {
        total.pairs += s.pairs;
        total.left_detected += s.left_detected;
        total.right_detected += s.right_detected;
        total.coincidences += s.coincidences;
        total.left_up_detected += s.left_up_detected;
        total.right_up_detected += s.right_up_detected;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) total.outcomes[i][j] += s.outcomes[i][j];
    }
    return total;
}

std::vector<AngleScanPoint> angle_scan(const FineModel& m,
                                       std::span<const double> angles_deg,
                                       std::uint64_t pairs, std::uint64_t seed) {
    std::vector<AngleScanPoint> points;
    points.reserve(angles_deg.size());
    const Direction a = Direction::from_plane_angle_deg(0.0);
    for (std::size_t k = 0; k < angles_deg.size(); ++k) {
        const Direction b = Direction::from_plane_angle_deg(angles_deg[k]);
        const CoincidenceStats s = run(m, a, b, pairs, substream_seed(seed, 0xa000 + k));
        AngleScanPoint p;
        p.angle_deg = angles_deg[k];
        p.pairs = s.pairs;
        p.coincidences = s.coincidences;
        p.post_up_up = s.post_probability(0, 0);
        p.coincidence_rate = s.coincidence_rate();
        points.push_back(p);
    }
    return points;
}

std::string angle_scan_csv(std::span<const AngleScanPoint> points) {
    std::string out = "angle_deg,pairs,coincidences,coincidence_rate,post_up_up\n";
    char buf[160];
    for (const auto& p : points) {
        if (p.post_up_up) {
            std::snprintf(buf, sizeof(buf), "%.6f,%llu,%llu,%.9f,%.9f\n", p.angle_deg,
                          static_cast<unsigned long long>(p.pairs),
                          static_cast<unsigned long long>(p.coincidences),
                          p.coincidence_rate, *p.post_up_up);
        } else {
            std::snprintf(buf, sizeof(buf), "%.6f,%llu,%llu,%.9f,\n", p.angle_deg,
                          static_cast<unsigned long long>(p.pairs),
                          static_cast<unsigned long long>(p.coincidences),
                          p.coincidence_rate);
        }
        out += buf;
    }
    return out;
}

LoopholeReport loophole_report(const FineModel& m,
                               const std::array<Direction, 4>& geometry,
                               std::uint64_t pairs_per_setting, std::uint64_t seed) {
    LoopholeReport report{.geometry = geometry};
    report.pairs_per_setting = pairs_per_setting;

    const std::array<Direction, 2> left = {geometry[0], geometry[1]};
    const std::array<Direction, 2> right = {geometry[2], geometry[3]};

    double rate_sum = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            report.runs[i][j] = run(m, left[i], right[j], pairs_per_setting,
                                    substream_seed(seed, 16 + 2 * i + j));
            rate_sum += report.runs[i][j].coincidence_rate();
        }
    }
    report.mean_coincidence_rate = rate_sum / 4.0;

    // Raw ensemble: denominators are all emitted pairs; marginals pool the
    // two runs sharing the setting.
    const double pairs_d = static_cast<double>(pairs_per_setting);
    for (int i = 0; i < 2; ++i) {
        report.raw_table.left[i] =
            static_cast<double>(report.runs[i][0].left_up_detected +
                                report.runs[i][1].left_up_detected) /
            (2.0 * pairs_d);
        report.raw_table.right[i] =
            static_cast<double>(report.runs[0][i].right_up_detected +
                                report.runs[1][i].right_up_detected) /
            (2.0 * pairs_d);
        for (int j = 0; j < 2; ++j) {
            report.raw_table.joint[i][j] = report.runs[i][j].raw_probability(0, 0);
        }
    }
    report.raw_bell_ch = ineq::eval_bell_clauser_horne(report.raw_table);

    // Post-selected ensemble: denominators are coincidences.
    for (int i = 0; i < 2; ++i) {
        const std::uint64_t left_coinc =
            report.runs[i][0].coincidences + report.runs[i][1].coincidences;
        const std::uint64_t left_up = report.runs[i][0].outcomes[0][0] +
                                      report.runs[i][0].outcomes[0][1] +
                                      report.runs[i][1].outcomes[0][0] +
                                      report.runs[i][1].outcomes[0][1];
        report.post_table.left[i] =
            left_coinc ? std::optional<double>(static_cast<double>(left_up) /
                                               static_cast<double>(left_coinc))
                       : std::nullopt;

        const std::uint64_t right_coinc =
            report.runs[0][i].coincidences + report.runs[1][i].coincidences;
        const std::uint64_t right_up = report.runs[0][i].outcomes[0][0] +
                                       report.runs[0][i].outcomes[1][0] +
                                       report.runs[1][i].outcomes[0][0] +
                                       report.runs[1][i].outcomes[1][0];
        report.post_table.right[i] =
            right_coinc ? std::optional<double>(static_cast<double>(right_up) /
                                                static_cast<double>(right_coinc))
                        : std::nullopt;

        for (int j = 0; j < 2; ++j) {
            report.post_table.joint[i][j] = report.runs[i][j].post_probability(0, 0);
        }
    }
    if (report.post_table.fully_defined()) {
        report.post_bell_ch =
            ineq::eval_bell_clauser_horne(report.post_table.require_defined());
    }
    return report;
}

}  // namespace bellpoly::fine
