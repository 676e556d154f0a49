#include "bellpoly/labrecord.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace bellpoly::labrecord {

namespace {

constexpr std::array<std::pair<int, int>, 4> kPairs = {
    {{1, 3}, {1, 4}, {2, 3}, {2, 4}}};

const char* kCsvHeader = "run,X1,X2,X3,X4,X13,X14,X23,X24";

void validate_row(const LabRecord::Row& row, std::size_t row_number) {
    for (std::size_t k = 0; k < 4; ++k) {
        const auto [i, j] = kPairs[k];
        const std::uint8_t expected = row.x[i - 1] & row.x[j - 1];
        if (row.conj[k] != expected) {
            throw MalformedRecordError(
                row_number, "X" + std::to_string(i) + std::to_string(j) +
                                " must equal X" + std::to_string(i) + " AND X" +
                                std::to_string(j));
        }
    }
}

}  // namespace

LabRecord LabRecord::from_singles(
    const std::vector<std::array<std::uint8_t, 4>>& singles) {
    LabRecord r;
    r.rows.reserve(singles.size());
    for (const auto& x : singles) {
        Row row;
        row.x = x;
        for (std::size_t k = 0; k < 4; ++k) {
            const auto [i, j] = kPairs[k];
            row.conj[k] = x[i - 1] & x[j - 1];
        }
        r.rows.push_back(row);
    }
    return r;
}

void LabRecord::validate() const {
    for (std::size_t n = 0; n < rows.size(); ++n) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (rows[n].x[c] > 1 || rows[n].conj[c] > 1) {
                throw MalformedRecordError(n + 1, "cells must be 0 or 1");
            }
        }
        validate_row(rows[n], n + 1);
    }
}

FrequencyVector frequencies(const LabRecord& r) {
    if (r.rows.empty()) {
        throw ValidationError("record must have at least one row");
    }
    r.validate();

    std::array<std::uint64_t, 4> single_counts{};
    std::array<std::uint64_t, 4> pair_counts{};
    for (const auto& row : r.rows) {
        for (std::size_t c = 0; c < 4; ++c) {
            single_counts[c] += row.x[c];
            pair_counts[c] += row.conj[c];
        }
    }

    const Rational n(static_cast<long>(r.rows.size()));
    std::vector<Rational> singles, pairs;
    for (std::size_t c = 0; c < 4; ++c) {
        singles.push_back(Rational(static_cast<long>(single_counts[c])) / n);
    }
    for (std::size_t c = 0; c < 4; ++c) {
        pairs.push_back(Rational(static_cast<long>(pair_counts[c])) / n);
    }
    return FrequencyVector{
        .vector = ExactCorrelationVector(IndexPairSet::clauser_horne(),
                                         std::move(singles), std::move(pairs)),
        .single_counts = single_counts,
        .pair_counts = pair_counts,
        .rows = r.rows.size(),
    };
}

std::vector<Rational> vertex_weights(const LabRecord& r) {
    if (r.rows.empty()) {
        throw ValidationError("record must have at least one row");
    }
    r.validate();

    std::vector<std::uint64_t> counts(16, 0);
    for (const auto& row : r.rows) {
        std::vector<std::uint8_t> assignment(row.x.begin(), row.x.end());
        counts[vertex_index(assignment)] += 1;
    }

    const Rational n(static_cast<long>(r.rows.size()));
    std::vector<Rational> weights;
    weights.reserve(16);
    for (std::uint64_t c : counts) {
        weights.push_back(Rational(static_cast<long>(c)) / n);
    }
    return weights;
}

LabRecord record_from_weights(std::span<const Rational> weights16,
                              std::uint64_t max_rows) {
    if (weights16.size() != 16) throw ShapeError("need exactly 16 vertex weights");
    Rational sum(0);
    for (const Rational& w : weights16) {
        if (w < 0) throw ValidationError("weights must be nonnegative");
        sum += w;
    }
    if (sum != 1) throw ValidationError("weights must sum to exactly 1");

    const BigInt lcm = denominator_lcm(weights16);
    std::vector<std::uint64_t> copies(16, 0);
    std::uint64_t total = 0;

    if (lcm <= BigInt(max_rows)) {
        for (std::size_t e = 0; e < 16; ++e) {
            const BigInt c = boost::multiprecision::numerator(weights16[e] * Rational(lcm));
            copies[e] = c.convert_to<std::uint64_t>();
            total += copies[e];
        }
    } else {
        // Largest-remainder rounding to multiples of 1/max_rows.
        const Rational n(static_cast<long>(max_rows));
        std::vector<std::pair<Rational, std::size_t>> remainders;
        for (std::size_t e = 0; e < 16; ++e) {
            const Rational scaled = weights16[e] * n;
            const BigInt floor_part =
                boost::multiprecision::numerator(scaled) /
                boost::multiprecision::denominator(scaled);
            copies[e] = floor_part.convert_to<std::uint64_t>();
            total += copies[e];
            remainders.emplace_back(scaled - Rational(floor_part), e);
        }
        std::sort(remainders.begin(), remainders.end(),
                  [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                  });
        for (std::size_t k = 0; total < max_rows && k < remainders.size(); ++k) {
            copies[remainders[k].second] += 1;
            ++total;
        }
    }

    std::vector<std::array<std::uint8_t, 4>> singles;
    singles.reserve(total);
    for (std::size_t e = 0; e < 16; ++e) {
        std::array<std::uint8_t, 4> bits;
        for (std::size_t i = 0; i < 4; ++i) bits[i] = (e >> i) & 1u;
        for (std::uint64_t c = 0; c < copies[e]; ++c) singles.push_back(bits);
    }
    return LabRecord::from_singles(singles);
}

ImpossibilityVerdict record_impossibility_demo(const ExactCorrelationVector& target) {
    if (!(target.index_set == IndexPairSet::clauser_horne())) {
        throw ShapeError("impossibility demo expects n = 4 with the CH index set");
    }

    ImpossibilityVerdict verdict{
        .representable = false,
        .membership = polytope::membership_exact(target),
        .ch_report = ineq::eval_ch_pitowsky(target),
        .record = std::nullopt,
    };
    verdict.representable = verdict.membership.is_member();
    if (verdict.representable) {
        verdict.record = record_from_weights(verdict.membership.witness().weights);
    }
    return verdict;
}

LabRecord read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw MalformedRecordError(0, "empty input, expected header " +
                                          std::string(kCsvHeader));
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) {
        throw MalformedRecordError(0, "bad header '" + line + "', expected '" +
                                          kCsvHeader + "'");
    }

    LabRecord r;
    std::size_t row_number = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row_number;

        std::array<long, 9> cells;
        std::stringstream ss(line);
        std::string cell;
        for (std::size_t c = 0; c < 9; ++c) {
            if (!std::getline(ss, cell, ',')) {
                throw MalformedRecordError(row_number, "expected 9 comma-separated cells");
            }
            try {
                std::size_t used = 0;
                cells[c] = std::stol(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw MalformedRecordError(row_number, "bad cell '" + cell + "'");
            }
        }
        if (std::getline(ss, cell, ',')) {
            throw MalformedRecordError(row_number, "expected 9 comma-separated cells");
        }

        LabRecord::Row row;
        for (std::size_t c = 0; c < 8; ++c) {
            const long v = cells[c + 1];
            if (v != 0 && v != 1) {
                throw MalformedRecordError(row_number, "cells must be 0 or 1");
            }
            if (c < 4) {
                row.x[c] = static_cast<std::uint8_t>(v);
            } else {
                row.conj[c - 4] = static_cast<std::uint8_t>(v);
            }
        }
        validate_row(row, row_number);
        r.rows.push_back(row);
    }
    return r;
}

void write_csv(const LabRecord& r, std::ostream& out) {
    out << kCsvHeader << "\n";
    for (std::size_t n = 0; n < r.rows.size(); ++n) {
        out << (n + 1);
        for (std::size_t c = 0; c < 4; ++c) out << ',' << int(r.rows[n].x[c]);
        for (std::size_t c = 0; c < 4; ++c) out << ',' << int(r.rows[n].conj[c]);
        out << "\n";
    }
}

}  // namespace bellpoly::labrecord
