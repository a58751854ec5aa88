#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3mirror/diaggrp.hpp"
#include "k3mirror/fixedlocus.hpp"
#include "k3mirror/invpoly.hpp"

namespace k3 {

struct AnalysisRecord {
    std::string yonemura_no; // "" when the pair is not a table row
    WeightSystem weight_system;
    std::string polynomial;
    int p = 0;
    std::vector<Vec4> group_generators;
    long long index = 1; // |G/J_W|
    int r = 0, a = 0;
    FixedLocusInvariants gnk;
    std::string dual_polynomial_no;
    std::string dual_polynomial;
    long long dual_group_index = 1;
    int dual_r = 0, dual_a = 0;
    bool mirror_check = false;
};

// Golden table data (Tables 1-4 transcription).
struct GoldenSubRow {
    long long index = 1;
    std::optional<std::string> generators;      // only for the No. 3a order-3 rows
    int r = 0, a = 0;
    std::optional<std::string> dual_generators;
};

struct GoldenRow {
    int p = 0;
    std::string no;
    WeightSystem ws;
    std::string polynomial;
    long long sl_index = 1;
    std::string dual;
    std::vector<GoldenSubRow> rows;
};

const std::vector<GoldenRow>& golden_rows();
void set_golden_override(const std::string& path); // --golden

// Full record for one (W,G) pair; the dual pair is analyzed as well.
AnalysisRecord analyze(const InvertiblePolynomial& W, const SymmetryGroup& G, int p);

struct VerifyRowResult {
    std::string no;
    std::string polynomial;
    long long sl_index_expected = 0, sl_index_computed = 0;
    long long index = 1;
    int r_expected = 0, a_expected = 0;
    int r_computed = 0, a_computed = 0;
    FixedLocusInvariants gnk;
    std::string dual_expected, dual_computed;
    long long dual_index_expected = 0, dual_index_computed = 0;
    bool mirror_check = false;
    bool ok = false;
    std::string note;
};

struct VerifyReport {
    int p = 0;
    std::vector<VerifyRowResult> rows;
    std::vector<std::string> mismatches; // empty on success
    std::vector<std::string> notes;
    bool ok() const { return mismatches.empty(); }
};

// Regenerate all (W,G) pairs for prime p from the admissible families and
// diff against the golden tables.
VerifyReport verify_tables(int p);

std::string report_to_json(const VerifyReport& rep);
std::string report_to_csv(const VerifyReport& rep);
std::string report_to_md(const VerifyReport& rep);

} // namespace k3
