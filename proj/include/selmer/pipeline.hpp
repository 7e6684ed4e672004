#pragma once
// From (K, E) to a Selmer report: the semi-narrow class group bound, niceness
// at every finite prime, root-number parity and the determination of the
// 2-Selmer rank; plus the table-reproduction harness.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "selmer/local.hpp"
#include "selmer/squareclass.hpp"

namespace selmer {

// K = Q[t]/(g) described by g in descending integer coefficients; {1, 0} is Q.
struct FieldSpec {
    std::vector<Int> poly{1, 0};
    FieldPtr build() const;
    std::string describe() const;
};
// "Q", {"d": 3} (Q(sqrt 3)) or {"poly": [1, 0, -3]}.
FieldSpec parse_field_spec(const std::string& json_text);

// Element of K given by ascending coefficients in powers of the generator of K.
using KCoeffs = std::vector<Rat>;
Elt element_of(const NumberField& K, const KCoeffs& c);
// "3", "1/2", "[1, 2]" (= 1 + 2 t) -> coefficients.
KCoeffs parse_k_element(const std::string& text);
// Comma separated list of elements; bracketed elements may contain commas.
std::vector<KCoeffs> parse_k_list(const std::string& text);

// Possible values of a Mordell-Weil rank as printed in a table ("0, 2").
struct RankSet {
    std::vector<int> values;
    int min() const;
    std::string str() const;
};
RankSet parse_rank_set(const std::string& text);

struct CurveJob {
    FieldSpec field;
    std::array<KCoeffs, 5> a;  // a1, a2, a3, a4, a6
    // Ranks of E(Q) and of the quadratic twist E^K(Q), consumed as inputs.
    std::optional<RankSet> r1, r2;
    std::string label;
};

struct PipelineOptions {
    std::uint64_t seed = 1;
    // Decide criteria-undetermined primes by the exact Kummer image, when the
    // completion is small enough to sample.
    bool oracle_fallback = true;
    // Also run the Kummer-image oracle at primes where a criterion fired.
    bool cross_check = false;
};

enum class Parity { Even, Odd, Unknown };
std::string parity_name(Parity p);

struct PrimeReport {
    std::string label;  // prime of K
    Int p;
    int e = 1, f = 1;
    std::string reduction;
    int v_disc = 0;  // minimal discriminant valuation
    int two_torsion = 1;
    NicenessCertificate certificate;
    // How lower/upper niceness was settled: "criterion", "oracle" or "none".
    std::string source = "none";
    std::optional<bool> lower, upper;
    std::optional<bool> cross_check;  // oracle agrees with the criterion
};

struct SelmerReport {
    std::string label;
    std::string field;
    std::array<std::string, 5> curve;
    int degK = 1;
    // n = dim C_L^inf[2] - dim C_K^+[2], and the same quantity as log2 |M1|.
    int n = 0, n_from_M1 = 0;
    int lo = 0, hi = 0;
    bool lower_rigorous = false, upper_rigorous = false;  // niceness established everywhere
    bool all_nice = false;
    std::vector<PrimeReport> primes;

    bool semistable = false;
    int infinite_places = 0;
    int split_multiplicative = 0;  // t
    Parity parity = Parity::Unknown;
    // Minimal discriminant over Q (rational curves only) and its inert primes.
    std::optional<Int> delta_min;
    std::string delta_factored;
    int m = 0;
    bool m_from_delta = false;     // false: m is the split-multiplicative count t
    bool m_parity_matches_t = true;

    std::optional<RankSet> r1, r2;
    std::vector<int> candidates;  // values of s(E) consistent with everything known
    std::optional<int> s_determined;
    std::string type;             // "P", "R" or ""

    std::vector<Int> CL, CLplus, CLinf, CKplus;
    int CLinf_rank = 0, CKplus_rank = 0;
    bool certified = false;
    std::string trust;
    std::uint64_t seed = 1;
    double seconds = 0;
};

SelmerReport analyze(const CurveJob& job, const PipelineOptions& opts = {});

// The reduction-and-niceness part of the report at the primes above p.
std::vector<PrimeReport> analyze_primes(const RelativeField& R, const WeierstrassModel& E, const Int& p,
                                        const PipelineOptions& opts);

// Root-number parity of dim Sel_2 for semistable E/K with E(K)[2] = 0:
// epsilon = (-1)^{s + t}, s = infinite places, t = split multiplicative primes.
Parity selmer_parity(int infinite_places, int split_multiplicative, bool semistable);

// "-2^3*3457"
std::string format_factored(const Int& n);

// ---- Tables -------------------------------------------------------------

struct TableRow {
    std::string param;
    std::string delta;  // factored minimal discriminant
    int m = 0;
    std::string CLplus;  // "[4, 2]"
    int n = 0;
    RankSet r1, r2;
    RankSet s;         // a single value when determined
    std::string type;  // "P", "R" or ""
};

struct TableFixture {
    std::string id;
    FieldSpec field;
    // Curve coefficient templates; "{}" is replaced by the row parameter,
    // "2*{}" by twice it.
    std::array<std::string, 5> curve;
    std::string param_name;
    std::vector<std::string> core;  // parameters of the must-pass rows
    std::vector<TableRow> rows;
};

TableFixture load_fixture(const std::string& path);
std::string fixture_path(const std::string& id);  // <data dir>/fixtures/<id>.tsv
CurveJob job_for_row(const TableFixture& T, const TableRow& row);

struct RowResult {
    TableRow expected;
    std::optional<SelmerReport> report;
    std::string error;  // computational failure or timeout
    bool timed_out = false;
    std::vector<std::string> mismatches;
    bool pass() const { return report && error.empty() && mismatches.empty(); }
};

// Compare a report with the printed row: discriminant factorisation, m,
// C_L^+, n, parity of s(E) and s(E)/Type where the row determines them.
std::vector<std::string> compare_row(const TableRow& expected, const SelmerReport& r);

struct TableOptions {
    PipelineOptions pipeline;
    double timeout_seconds = 1800;
    int jobs = 1;
};
// Rows run in forked worker processes (at most `jobs` at a time), so a row
// that exceeds the timeout is recorded and killed without stopping the run.
std::vector<RowResult> reproduce_table(const TableFixture& T, const std::vector<TableRow>& rows,
                                       const TableOptions& opts = {});
// Rows whose parameter lies in [lo, hi].
std::vector<TableRow> select_rows(const TableFixture& T, long lo, long hi);
std::vector<TableRow> core_rows(const TableFixture& T);

std::string tsv_header(const TableFixture& T);
std::string tsv_line(const std::string& param, const SelmerReport& r);

// JSON (de)serialisation of reports, used by the CLI and the worker pool.
std::string report_to_json(const SelmerReport& r, int indent = -1);
SelmerReport report_from_json(const std::string& text);

}  // namespace selmer
