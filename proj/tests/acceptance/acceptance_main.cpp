// Acceptance run: one PASS/FAIL line per criterion.
//
//   1  |M1|, |M2| by exhaustive enumeration equal the class-group formula
//   2  identities among signs, units and class numbers ("basic quantities")
//   3  smallest rows of the three tables reproduced with certified class groups
//   4  brute-forced Kummer images over Q_2 sit between M1v and M2v
//   5  parity of the reproduced s(E) on the parity-forced rows
//   6  index chain P_L > P_L^0 > P_L^inf > P_L^+
//   7  criteria 1-6 pass identically under three seeds
//
// Instances are fixed (chosen by a fixed generator seed); the run seed drives
// every randomized algorithm underneath.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "selmer/pipeline.hpp"

using namespace selmer;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string summary;
    std::ostringstream fp;  // seed-independent fingerprint of the mathematical results
    std::vector<std::string> failures;
    double seconds = 0;
    void fail(const std::string& why) {
        pass = false;
        failures.push_back(why);
    }
};

// A base field with a monic cubic over it.
struct Instance {
    std::string name;
    FieldSpec field;
    std::vector<long> cubic;  // descending, integer coefficients
};

std::array<Elt, 4> cubic_of(const NumberField& K, const std::vector<long>& c) {
    std::array<Elt, 4> F;
    for (size_t i = 0; i < 4; ++i) F[3 - i] = K.from_int(c[i]);
    return F;
}

Int cubic_disc(const std::vector<long>& c) {
    Int a(c[1]), b(c[2]), d(c[3]);
    return a * a * b * b - 4 * b * b * b - 4 * a * a * a * d - 27 * d * d + 18 * a * b * d;
}

// Random monic irreducible cubics over Q with |disc| <= 5000: four of each
// sign of the discriminant.
std::vector<Instance> rational_instances() {
    Rng rng(20240607);
    std::vector<Instance> out;
    int pos = 0, neg = 0;
    std::set<std::vector<long>> seen;
    while (pos < 4 || neg < 4) {
        std::vector<long> c{1, rng.range(-4, 4), rng.range(-9, 9), rng.range(-9, 9)};
        Int D = cubic_disc(c);
        if (D == 0 || abs(D) > 5000 || seen.count(c)) continue;
        if ((D > 0 && pos >= 4) || (D < 0 && neg >= 4)) continue;
        try {
            NumberField::build(Poly::from_descending({Int(c[0]), Int(c[1]), Int(c[2]), Int(c[3])}));
        } catch (const ReducibleError&) {
            continue;
        }
        seen.insert(c);
        (D > 0 ? pos : neg)++;
        std::ostringstream name;
        name << "Q: x^3" << std::showpos << " " << c[1] << "x^2 " << c[2] << "x " << c[3] << " (disc "
             << D.get_str() << ")";
        out.push_back({name.str(), FieldSpec{}, c});
    }
    return out;
}

// Cubic fields whose semi-narrow class group has even order, so that the
// formula is exercised with |M1| > 1 over Q as well.
std::vector<Instance> even_instances() {
    return {{"Q: x^3 - 3x^2 - 11x - 9 (disc -2092)", FieldSpec{}, {1, -3, -11, -9}},
            {"Q: x^3 - 3x^2 - 11x - 6 (disc 1229)", FieldSpec{}, {1, -3, -11, -6}}};
}

// The cubics of the smallest supersingular and multiplicative table rows.
std::vector<Instance> table_instances() {
    return {{"Q(sqrt 3): x^3 + 16x + 16", parse_field_spec(R"({"d": 3})"), {1, 0, 16, 16}},
            {"Q(sqrt 21): x^3 + x^2 + 128", parse_field_spec(R"({"d": 21})"), {1, 1, 0, 128}}};
}

// Fields for the sign and index-chain identities, covering (a, b) = (1, 0),
// (0, 1) and (2, 0).
std::vector<Instance> signature_instances() {
    return {{"Q: x^3 - x - 1", FieldSpec{}, {1, 0, -1, -1}},
            {"Q: x^3 - x^2 + 2x + 3", FieldSpec{}, {1, -1, 2, 3}},
            {"Q: x^3 - 3x + 1", FieldSpec{}, {1, 0, -3, 1}},
            {"Q: x^3 - x^2 - 2x + 1", FieldSpec{}, {1, -1, -2, 1}},
            {"Q: x^3 - 3x^2 - 11x - 9 (disc -2092)", FieldSpec{}, {1, -3, -11, -9}},
            {"Q: x^3 - 3x^2 - 11x - 6 (disc 1229)", FieldSpec{}, {1, -3, -11, -6}},
            {"Q(sqrt 3): x^3 + 16x + 16", parse_field_spec(R"({"d": 3})"), {1, 0, 16, 16}},
            {"Q(sqrt 21): x^3 + x^2 + 128", parse_field_spec(R"({"d": 21})"), {1, 1, 0, 128}}};
}

struct Built {
    SquareClassSpace S;
    double seconds = 0;
};

// Square-class spaces are shared between criteria within one seed.
class Cache {
public:
    explicit Cache(std::uint64_t seed) : seed_(seed) {}
    const Built& get(const Instance& I) {
        auto key = I.field.describe() + "|" + I.name;
        auto it = map_.find(key);
        if (it != map_.end()) return it->second;
        auto t0 = Clock::now();
        auto K = I.field.build();
        SquareClassOptions so;
        so.seed = seed_;
        Built b{build_ambient(K, cubic_of(*K, I.cubic), so), 0};
        b.seconds = since(t0);
        return map_.emplace(key, std::move(b)).first->second;
    }
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::map<std::string, Built> map_;
};

// ---- 1 --------------------------------------------------------------------

void criterion1(Cache& cache, Outcome& o) {
    int count = 0, nontrivial = 0;
    double worst_q = 0, worst_6 = 0;
    auto run = [&](const Instance& I, bool rational) {
        auto t0 = Clock::now();
        const Built& b = cache.get(I);
        auto rep = verify_cardinality_theorem(b.S, true);
        double t = b.seconds + since(t0);
        (rational ? worst_q : worst_6) = std::max(rational ? worst_q : worst_6, t);
        ++count;
        if (rep.M1 > 0) ++nontrivial;
        o.fp << I.name << ":" << rep.M1 << "," << rep.M2 << "," << rep.M1_enum << "," << rep.M2_enum << ","
             << rep.cinf2 << "," << rep.cplusK2 << ";";
        if (!rep.enum_ok || !rep.m1_ok || !rep.m2_ok) o.fail(I.name + ": " + rep.summary());
        if (rep.M1_enum != rep.cinf2 - rep.cplusK2 || rep.M2_enum != rep.M1_enum + b.S.R.K->degree())
            o.fail(I.name + ": enumeration differs from the formula");
        if (!b.S.cgL.certified || !b.S.cgK.certified) o.fail(I.name + ": class group not certified");
        if (rational && t >= 1.0) o.fail(I.name + ": " + std::to_string(t) + " s exceeds 1 s");
        if (!rational && t >= 1800.0) o.fail(I.name + ": exceeds 30 min");
    };
    for (auto& I : rational_instances()) run(I, true);
    for (auto& I : even_instances()) run(I, true);
    for (auto& I : table_instances()) run(I, false);
    if (count < 10) o.fail("fewer than 10 instances");
    std::ostringstream s;
    s.precision(2);
    s << std::fixed << count << " instances (" << nontrivial << " with |M1| > 1), slowest over Q " << worst_q
      << " s, degree 6 " << worst_6 << " s";
    o.summary = s.str();
}

// ---- 2 and 6 ----------------------------------------------------------------

void criterion2(Cache& cache, Outcome& o) {
    std::set<std::pair<int, int>> patterns;
    int fields = 0;
    for (auto& I : signature_instances()) {
        const Built& b = cache.get(I);
        auto q = basic_quantities(b.S);
        patterns.insert({b.S.R.a, b.S.R.b});
        ++fields;
        o.fp << I.name << ":" << q.a << q.b << q.c << "," << q.sgnK << "," << q.sgnL << "," << q.sgnUK << ","
             << q.unitsK << "," << q.unitsL << "," << q.unitsL_norm << "," << q.orderCK.get_str() << ","
             << q.orderCKplus.get_str() << ";";
        if (!q.ok())
            o.fail(I.name + ": identities " + std::to_string(q.item1) + std::to_string(q.item2) +
                   std::to_string(q.item3) + std::to_string(q.item4) + std::to_string(q.item5));
    }
    for (auto p : {std::pair{1, 0}, std::pair{0, 1}, std::pair{2, 0}})
        if (!patterns.count(p)) o.fail("signature pattern (" + std::to_string(p.first) + "," + std::to_string(p.second) + ") missing");
    o.summary = std::to_string(fields) + " fields, all five sign/unit/class-number identities exact, patterns (a,b) = (1,0) (0,1) (2,0)";
}

void criterion6(Cache& cache, Outcome& o) {
    int fields = 0;
    for (auto& I : signature_instances()) {
        const Built& b = cache.get(I);
        auto c = index_chain_check(b.S.R);
        ++fields;
        o.fp << I.name << ":" << c.log_P_P0 << c.log_P0_Pinf << c.log_Pinf_Pplus << ";";
        if (!c.ok())
            o.fail(I.name + ": got 2^" + std::to_string(c.log_P_P0) + ", 2^" + std::to_string(c.log_P0_Pinf) +
                   ", 2^" + std::to_string(c.log_Pinf_Pplus) + " for (a,b) = (" + std::to_string(c.a) + "," +
                   std::to_string(c.b) + ")");
    }
    o.summary = std::to_string(fields) + " fields, [P:P0] = 2^b, [P0:Pinf] = 2^(a+b), [Pinf:P+] = 2^b";
}

// ---- 3 and 5 ----------------------------------------------------------------

struct RowRun {
    std::string id;
    TableRow row;
    SelmerReport rep;
};

std::vector<RowRun> run_rows(std::uint64_t seed, Outcome& o) {
    std::vector<RowRun> out;
    PipelineOptions opts;
    opts.seed = seed;
    for (std::string id : {"ss", "ord", "mult"}) {
        auto T = load_fixture(fixture_path(id));
        for (auto& row : core_rows(T)) {
            try {
                out.push_back({id, row, analyze(job_for_row(T, row), opts)});
            } catch (const std::exception& e) {
                o.fail(id + " " + row.param + ": " + e.what());
            }
        }
    }
    return out;
}

void criterion3(const std::vector<RowRun>& rows, Outcome& o) {
    double worst = 0;
    for (auto& r : rows) {
        worst = std::max(worst, r.rep.seconds);
        o.fp << tsv_line(r.id + ":" + r.row.param, r.rep) << "|";
        for (auto& p : r.rep.primes) o.fp << p.label << "=" << p.certificate.criterion << "/" << p.source << ",";
        o.fp << ";";
        for (auto& m : compare_row(r.row, r.rep)) o.fail(r.id + " " + r.row.param + ": " + m);
        if (r.rep.seconds > 1800) o.fail(r.id + " " + r.row.param + ": exceeds 30 min");
    }
    if (rows.size() != 7) o.fail("expected 7 rows, ran " + std::to_string(rows.size()));
    std::ostringstream s;
    s.precision(1);
    s << std::fixed << rows.size() << " rows (ss a4 = 1, 5, 7; ord a6 = 1, 13; mult b = 1, 5), certified, slowest "
      << worst << " s";
    o.summary = s.str();
}

void criterion5(const std::vector<RowRun>& rows, Outcome& o) {
    int checked = 0;
    for (auto& r : rows) {
        if (r.row.type != "P") continue;
        ++checked;
        const auto& rep = r.rep;
        o.fp << r.id << r.row.param << ":" << parity_name(rep.parity) << ";";
        if (!rep.s_determined) {
            o.fail(r.id + " " + r.row.param + ": s(E) not determined");
            continue;
        }
        Parity want = *rep.s_determined % 2 ? Parity::Odd : Parity::Even;
        if (rep.parity != want) o.fail(r.id + " " + r.row.param + ": parity " + parity_name(rep.parity));
        if (*rep.s_determined != rep.n + 1) o.fail(r.id + " " + r.row.param + ": s(E) != n + 1");
        if (r.row.s.values != std::vector<int>{*rep.s_determined}) o.fail(r.id + " " + r.row.param + ": s(E) differs");
        if (!rep.m_parity_matches_t) o.fail(r.id + " " + r.row.param + ": m and t have different parity");
    }
    if (checked == 0) o.fail("no type-P rows");
    o.summary = std::to_string(checked) + " type-P rows, parity from (-1)^(s+t) matches s(E) = n + 1";
}

// ---- 4 ----------------------------------------------------------------------

std::string canonical_span(const std::vector<BitVec>& basis, std::size_t dim) {
    std::vector<std::string> all;
    f2_enumerate(basis, dim, [&](const BitVec& x) { all.push_back(x.to_string()); });
    std::sort(all.begin(), all.end());
    std::string s;
    for (auto& x : all) s += x + " ";
    return s;
}

void criterion4(std::uint64_t seed, Outcome& o) {
    FieldPtr Q = FieldSpec{}.build();
    auto Q2 = local_fields(Q, Int(2)).at(0);
    // Good ordinary (full and partial 2-torsion), good supersingular from the
    // a1 = 0, a3 = 1 family, multiplicative with odd v(Delta).
    std::vector<std::array<long, 5>> curves{{1, -2, 0, 2, 3},  {1, -1, 0, 0, 3},  {1, -1, 0, 2, -1}, {1, -2, 0, -3, 2},
                                            {1, 0, 0, 0, 1},   {0, 0, 1, 1, 0},   {0, 1, 1, -2, 3},  {0, -1, 1, 0, 1},
                                            {0, 0, 1, 5, 0},   {1, -2, 0, -3, -1}, {1, 0, 0, 0, 2},  {1, 0, 0, 0, 10},
                                            {1, -2, 0, -2, -2}};
    std::map<std::string, int> kinds;
    int fired = 0, exact = 0;
    for (auto& a : curves) {
        std::array<Elt, 5> e;
        for (size_t i = 0; i < 5; ++i) e[i] = Q->from_int(a[i]);
        auto E = make_model(*Q, e);
        auto R = absolutize(Q, two_division_cubic(*Q, E));
        LocalSquareSpace S(R, Q2, seed);
        auto C = reduction_data(Q2, E);
        auto cert = niceness(Q2, C, Q2.valuation(cubic_discriminant(*Q, R.F)), S.two_torsion());
        std::string name = "[" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]) + "," +
                           std::to_string(a[3]) + "," + std::to_string(a[4]) + "]";
        kinds[reduction_name(C.type)]++;
        if (cert.verdict != Verdict::Nice) {
            o.fail(name + ": no criterion fired");
            continue;
        }
        ++fired;
        KummerOptions ko;
        ko.seed = seed;
        auto img = kummer_image_oracle(S, ko);
        auto M = local_condition_sets(S);
        size_t want = 1 + (S.two_torsion() == 4 ? 2 : S.two_torsion() == 2 ? 1 : 0);
        if (img.basis.size() != want) o.fail(name + ": |image| = 2^" + std::to_string(img.basis.size()));
        if (!f2_subspace(M.M1, img.basis)) o.fail(name + ": M1v not inside the image (" + cert.criterion + ")");
        if (!f2_subspace(img.basis, M.M2)) o.fail(name + ": image not inside M2v (" + cert.criterion + ")");
        o.fp << name << ":" << cert.criterion << ":" << canonical_span(img.basis, S.dim()) << ";";

        if (C.type == Reduction::GoodOrdinary && S.two_torsion() == 4) {
            // {([boxtimes]^i, [u], [u][boxtimes]^i)}: trivial at the component of the unit root
            // up to boxtimes, the same unit class on the other two.
            const auto& comps = S.components();
            size_t ia = 3;
            for (size_t i = 0; i < 3; ++i)
                if (valuation(*R.L, comps[i].w, R.x_in_L) == 0) ia = i;
            if (ia == 3) {
                o.fail(name + ": no unit root component");
                continue;
            }
            auto drop = [&](BitVec x) {
                for (size_t t = 0; t < comps[ia].dim(); ++t) x.set(comps[ia].offset + t, false);
                return x;
            };
            std::vector<BitVec> expected;
            for (long u : {-1L, 5L}) expected.push_back(drop(S.classify(R.L->from_int(u))));
            size_t ig = (ia + 1) % 3;
            expected.push_back(S.embed_unit(ia, comps[ia].boxtimes) ^ S.embed_unit(ig, comps[ig].boxtimes));
            if (f2_equal_spans(img.basis, expected))
                ++exact;
            else
                o.fail(name + ": ordinary split image differs from the explicit set");
        }
    }
    if (fired < 10) o.fail("fewer than 10 curves with a firing criterion");
    if (exact == 0) o.fail("no good-ordinary curve with full 2-torsion");
    for (auto k : {"good-ordinary", "good-supersingular", "mult-split"})
        if (!kinds.count(k) && !(std::string(k) == "mult-split" && kinds.count("mult-nonsplit")))
            o.fail(std::string("no ") + k + " curve");
    std::ostringstream s;
    s << curves.size() << " curves over Q_2 (";
    bool first = true;
    for (auto& [k, v] : kinds) {
        s << (first ? "" : ", ") << v << " " << k;
        first = false;
    }
    s << "), M1v <= image <= M2v with |image| = 2|E[2]|, " << exact << " ordinary-split images exact";
    o.summary = s.str();
}

// ---- driver -------------------------------------------------------------------

struct SeedRun {
    std::array<Outcome, 7> out;  // indices 1..6 used
};

void run_all(std::uint64_t seed, SeedRun& r) {
    Cache cache(seed);
    auto guard = [&](int i, const std::function<void(Outcome&)>& f) {
        auto t0 = Clock::now();
        try {
            f(r.out[i]);
        } catch (const std::exception& e) {
            r.out[i].fail(std::string("exception: ") + e.what());
        }
        r.out[i].seconds += since(t0);
    };
    guard(1, [&](Outcome& o) { criterion1(cache, o); });
    guard(2, [&](Outcome& o) { criterion2(cache, o); });
    std::vector<RowRun> rows;
    guard(3, [&](Outcome& o) {
        rows = run_rows(seed, o);
        criterion3(rows, o);
    });
    guard(4, [&](Outcome& o) { criterion4(seed, o); });
    guard(5, [&](Outcome& o) { criterion5(rows, o); });
    guard(6, [&](Outcome& o) { criterion6(cache, o); });
}

void report(int i, const Outcome& o, double seconds) {
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.summary << " ["
              << static_cast<int>(seconds + 0.5) << " s]\n";
    for (auto& f : o.failures) std::cout << "    " << f << "\n";
    std::cout.flush();
}

}  // namespace

int main() {
    const std::array<std::uint64_t, 3> seeds{1, 2, 3};
    std::vector<SeedRun> runs(seeds.size());
    run_all(seeds[0], runs[0]);
    bool all = true;
    for (int i = 1; i <= 6; ++i) {
        report(i, runs[0].out[static_cast<size_t>(i)], runs[0].out[static_cast<size_t>(i)].seconds);
        all = all && runs[0].out[static_cast<size_t>(i)].pass;
    }

    auto t1 = Clock::now();
    Outcome det;
    for (size_t k = 1; k < seeds.size(); ++k) {
        run_all(seeds[k], runs[k]);
        for (int i = 1; i <= 6; ++i) {
            const auto& a = runs[0].out[static_cast<size_t>(i)];
            const auto& b = runs[k].out[static_cast<size_t>(i)];
            if (!b.pass) det.fail("criterion " + std::to_string(i) + " fails under seed " + std::to_string(seeds[k]));
            if (a.fp.str() != b.fp.str())
                det.fail("criterion " + std::to_string(i) + " results differ between seeds " + std::to_string(seeds[0]) +
                         " and " + std::to_string(seeds[k]));
        }
    }
    det.summary = "criteria 1-6 identical under seeds 1, 2, 3";
    report(7, det, since(t1));
    all = all && det.pass;
    return all ? 0 : 1;
}
