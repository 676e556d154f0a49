#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bellpoly/correlation.hpp"
#include "bellpoly/inequalities.hpp"
#include "bellpoly/polytope.hpp"
#include "bellpoly/rational.hpp"

namespace bellpoly::labrecord {

/// A per-run 0/1 record of four event occurrences X1..X4 plus the four
/// conjunction columns for the pairs (1,3), (1,4), (2,3), (2,4). Every
/// conjunction bit must equal the AND of its single bits; ingest rejects
/// rows that break this with the offending row index.
struct LabRecord {
    struct Row {
        std::array<std::uint8_t, 4> x;
        std::array<std::uint8_t, 4> conj;  // order (1,3), (1,4), (2,3), (2,4)
    };
    std::vector<Row> rows;

    /// Builds a record from single-event bits, deriving the conjunctions.
    static LabRecord from_singles(const std::vector<std::array<std::uint8_t, 4>>& singles);

    /// Throws MalformedRecordError (1-based row index) on inconsistency.
    void validate() const;
};

/// Relative frequencies of a record: exact count / N rationals.
struct FrequencyVector {
    ExactCorrelationVector vector;  // n = 4, Clauser-Horne index set
    std::array<std::uint64_t, 4> single_counts{};
    std::array<std::uint64_t, 4> pair_counts{};
    std::uint64_t rows = 0;
};

FrequencyVector frequencies(const LabRecord& r);

/// Weight of each of the 16 truth-value patterns among the rows:
/// lambda_eps = N_eps / N, indexed in enumerate_vertices order. The convex
/// combination of vertices with these weights reproduces frequencies(r)
/// exactly.
std::vector<Rational> vertex_weights(const LabRecord& r);

/// Synthesizes a record realizing the given convex weights. Exact when the
/// common denominator fits within max_rows; otherwise the weights are
/// rounded to multiples of 1/max_rows (largest remainder).
LabRecord record_from_weights(std::span<const Rational> weights16,
                              std::uint64_t max_rows = 1'000'000);

/// Decides whether any finite record can carry the target frequencies.
/// A certificate means no laboratory record of any length produces them;
/// a witness is turned into a concrete record.
struct ImpossibilityVerdict {
    bool representable = false;
    polytope::ExactMembershipVerdict membership;
    ineq::ExactInequalityReport ch_report;
    std::optional<LabRecord> record;  // present iff representable
};

ImpossibilityVerdict record_impossibility_demo(const ExactCorrelationVector& target);

/// CSV ingest/emit, header `run,X1,X2,X3,X4,X13,X14,X23,X24`, one row per
/// run. Single pass; validation errors carry the row index.
LabRecord read_csv(std::istream& in);
void write_csv(const LabRecord& r, std::ostream& out);

}  // namespace bellpoly::labrecord
