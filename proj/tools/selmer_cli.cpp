// selmer: command-line front end to the library.
//
//   selmer analyze --field '{"d": 3}' --curve 0,0,1,1,0 [--ranks 1,0] [--json|--tsv]
//   selmer classgroup --poly 1,0,0,-2 [--star plain|plus]
//   selmer classgroup --field '{"d": 3}' --cubic 1,0,16,16 --star infty
//   selmer verify-cardinality --field Q --cubic 1,0,-1,-1   (alias: verify-thm14)
//   selmer local --field Q --curve 1,0,0,0,1 --prime 2 [--oracle]
//   selmer table --id ss [--rows 1..7] [--all] [--timeout 1800] [--jobs 1]
//
// Exit codes: 0 everything passed, 1 computational failure, 2 fixture mismatch.

#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "selmer/pipeline.hpp"

using namespace selmer;
using nlohmann::json;

namespace {

json ints(const std::vector<Int>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
    return a;
}

std::array<KCoeffs, 5> parse_curve(const std::string& text) {
    auto v = parse_k_list(text);
    if (v.size() != 5) throw MathError("--curve needs five coefficients a1,a2,a3,a4,a6");
    std::array<KCoeffs, 5> a;
    for (size_t i = 0; i < 5; ++i) a[i] = v[i];
    return a;
}

// Monic cubic over K in descending coefficients -> ascending array.
std::array<Elt, 4> parse_cubic(const NumberField& K, const std::string& text) {
    auto v = parse_k_list(text);
    if (v.size() == 3) v.insert(v.begin(), KCoeffs{Rat(1)});
    if (v.size() != 4) throw MathError("--cubic needs the coefficients of a monic cubic, leading first");
    std::array<Elt, 4> F;
    for (size_t i = 0; i < 4; ++i) F[3 - i] = element_of(K, v[i]);
    if (F[3] != K.one()) throw MathError("--cubic must be monic");
    return F;
}

// "1,0" or "0|2,1|3": alternatives separated by '|'.
std::pair<RankSet, RankSet> parse_ranks(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw MathError("--ranks expects r1,r2");
    auto alt = [](std::string s) {
        for (auto& ch : s)
            if (ch == '|') ch = ',';
        return parse_rank_set(s);
    };
    return {alt(text.substr(0, comma)), alt(text.substr(comma + 1))};
}

Star star_from(const std::string& s) { return parse_star(s); }

int cmd_analyze(const std::string& field, const std::string& curve, const std::string& ranks, bool tsv,
                bool cross, bool no_oracle, std::uint64_t seed) {
    CurveJob job;
    job.field = parse_field_spec(field);
    job.a = parse_curve(curve);
    if (!ranks.empty()) {
        auto [r1, r2] = parse_ranks(ranks);
        job.r1 = r1;
        job.r2 = r2;
    }
    PipelineOptions opts;
    opts.seed = seed;
    opts.cross_check = cross;
    opts.oracle_fallback = !no_oracle;
    auto rep = analyze(job, opts);
    if (tsv) {
        std::cout << "param\tΔ\tm\tC_L^+\tn\tr1\tr2\ts(E)\tType\n" << tsv_line("-", rep) << "\n";
    } else {
        std::cout << report_to_json(rep, 2) << "\n";
    }
    bool ok = rep.certified && rep.n == rep.n_from_M1;
    for (auto& p : rep.primes)
        if (p.cross_check == false) ok = false;
    return ok ? 0 : 1;
}

int cmd_classgroup(const std::string& poly, const std::string& field, const std::string& cubic,
                   const std::string& star, std::uint64_t seed) {
    ClassGroupOptions co;
    co.seed = seed;
    Star s = star_from(star);
    json out;
    if (!poly.empty()) {
        auto coeffs = parse_k_list(poly);
        std::vector<Int> g;
        for (auto& c : coeffs) {
            if (c.size() != 1 || c[0].get_den() != 1) throw MathError("--poly takes integer coefficients");
            g.push_back(c[0].get_num());
        }
        auto K = NumberField::build(Poly::from_descending(g));
        auto cg = class_group(K, co);
        std::vector<BitVec> X;
        if (s == Star::Plain)
            for (int k = 0; k < K->r1(); ++k) X.push_back(BitVec::unit(static_cast<size_t>(K->r1()), static_cast<size_t>(k)));
        else if (s != Star::Plus)
            throw MathError("--star zero/infty need a relative structure: use --field and --cubic");
        auto G = modified_class_group(cg, X);
        out = {{"field", K->describe()},
               {"disc", K->disc().get_str()},
               {"signature", {K->r1(), K->r2()}},
               {"star", star_name(s)},
               {"invariants", ints(G.invariants)},
               {"order", G.order().get_str()},
               {"two_rank", G.two_rank},
               {"certified", cg.certified},
               {"trust", cg.trust}};
        std::cout << out.dump(2) << "\n";
        return cg.certified ? 0 : 1;
    }
    if (cubic.empty()) throw MathError("classgroup needs --poly, or --field with --cubic");
    auto K = parse_field_spec(field).build();
    SquareClassOptions so;
    so.seed = seed;
    so.classgroup = co;
    auto S = build_ambient(K, parse_cubic(*K, cubic), so);
    auto G = modified_class_group(S.cgL, S.signs.allowed(s));
    out = {{"field", S.R.L->describe()},
           {"base", K->describe()},
           {"disc", S.R.L->disc().get_str()},
           {"signature", {S.R.L->r1(), S.R.L->r2()}},
           {"abc", {S.R.a, S.R.b, S.R.c}},
           {"star", star_name(s)},
           {"invariants", ints(G.invariants)},
           {"order", G.order().get_str()},
           {"two_rank", G.two_rank},
           {"certified", S.cgL.certified},
           {"trust", S.cgL.trust}};
    std::cout << out.dump(2) << "\n";
    return S.cgL.certified ? 0 : 1;
}

int cmd_verify(const std::string& field, const std::string& cubic, bool enumerate, std::uint64_t seed) {
    auto K = parse_field_spec(field).build();
    SquareClassOptions so;
    so.seed = seed;
    auto S = build_ambient(K, parse_cubic(*K, cubic), so);
    auto card = verify_cardinality_theorem(S, enumerate);
    auto basic = basic_quantities(S);
    auto chain = index_chain_check(S.R);
    auto gp = gamma_pi_check(S);
    json out = {{"field", S.R.L->describe()},
                {"abc", {S.R.a, S.R.b, S.R.c}},
                {"cardinality", {{"summary", card.summary()},
                                 {"log2_M1", card.M1},
                                 {"log2_M2", card.M2},
                                 {"log2_M1_enumerated", enumerate ? json(card.M1_enum) : json(nullptr)},
                                 {"log2_M2_enumerated", enumerate ? json(card.M2_enum) : json(nullptr)},
                                 {"rank_CLinf", card.cinf2},
                                 {"rank_CKplus", card.cplusK2},
                                 {"ok", card.ok()}}},
                {"basic_quantities", basic.ok()},
                {"index_chain", {{"P/P0", chain.log_P_P0}, {"P0/Pinf", chain.log_P0_Pinf},
                                 {"Pinf/Pplus", chain.log_Pinf_Pplus}, {"ok", chain.ok()}}},
                {"gamma_pi", gp.ok()},
                {"certified", S.cgL.certified && S.cgK.certified}};
    std::cout << out.dump(2) << "\n";
    bool ok = card.ok() && basic.ok() && chain.ok() && gp.ok() && S.cgL.certified && S.cgK.certified;
    return ok ? 0 : 1;
}

int cmd_local(const std::string& field, const std::string& curve, const std::string& prime, bool oracle,
              std::uint64_t seed) {
    auto K = parse_field_spec(field).build();
    auto a = parse_curve(curve);
    std::array<Elt, 5> e;
    for (size_t i = 0; i < 5; ++i) e[i] = element_of(*K, a[i]);
    auto E = make_model(*K, e);
    auto R = absolutize(K, two_division_cubic(*K, E));
    Int p(prime);
    json out = json::array();
    bool ok = true;
    for (auto& Kv : local_fields(K, p)) {
        auto C = reduction_data(Kv, E);
        LocalSquareSpace S(R, Kv, seed);
        auto cert = niceness(Kv, C, Kv.valuation(cubic_discriminant(*K, R.F)), S.two_torsion());
        auto M = local_condition_sets(S);
        json j = {{"prime", Kv.label()},
                  {"e", Kv.e()},
                  {"f", Kv.f()},
                  {"reduction", reduction_name(C.type)},
                  {"v_disc", C.v_disc},
                  {"model_steps", C.model_steps},
                  {"tamagawa", C.tamagawa ? json(*C.tamagawa) : json(nullptr)},
                  {"two_torsion", S.two_torsion()},
                  {"square_class_dim", S.dim()},
                  {"log2_M1v", M.M1.size()},
                  {"log2_M2v", M.M2.size()},
                  {"verdict", verdict_name(cert.verdict)},
                  {"criterion", cert.criterion},
                  {"detail", cert.detail}};
        if (oracle) {
            KummerOptions ko;
            ko.seed = seed;
            auto img = kummer_image_oracle(S, ko);
            bool lower = f2_subspace(M.M1, img.basis), upper = f2_subspace(img.basis, M.M2);
            j["oracle"] = {{"log2_image", img.basis.size()},
                           {"target", img.target_dim},
                           {"points", img.points},
                           {"lower_nice", lower},
                           {"upper_nice", upper}};
            if (cert.verdict == Verdict::Nice && !(lower && upper)) ok = false;
        }
        out.push_back(j);
    }
    std::cout << out.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_table(const std::string& id, const std::string& rows, bool all, double timeout, int jobs,
              std::uint64_t seed) {
    auto T = load_fixture(fixture_path(id));
    std::vector<TableRow> selected;
    if (all) {
        selected = T.rows;
    } else if (!rows.empty()) {
        auto dots = rows.find("..");
        long lo = std::stol(rows.substr(0, dots));
        long hi = dots == std::string::npos ? lo : std::stol(rows.substr(dots + 2));
        selected = select_rows(T, lo, hi);
    } else {
        selected = core_rows(T);
    }
    TableOptions opts;
    opts.pipeline.seed = seed;
    opts.timeout_seconds = timeout;
    opts.jobs = jobs;
    auto results = reproduce_table(T, selected, opts);
    bool mismatch = false, failure = false;
    std::cout << tsv_header(T) << "\tresult\n";
    for (auto& r : results) {
        if (r.report) {
            std::cout << tsv_line(r.expected.param, *r.report) << "\t" << (r.pass() ? "pass" : "MISMATCH") << "\n";
        } else {
            std::cout << r.expected.param << "\t\t\t\t\t\t\t\t\t" << (r.timed_out ? "TIMEOUT" : "ERROR") << "\n";
            std::cerr << T.id << " " << r.expected.param << ": " << r.error << "\n";
            failure = true;
        }
        for (auto& m : r.mismatches) std::cerr << T.id << " " << r.expected.param << ": " << m << "\n";
        if (!r.mismatches.empty()) mismatch = true;
    }
    return mismatch ? 2 : failure ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds for 2-Selmer ranks through semi-narrow class groups"};
    app.require_subcommand(1);
    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "Seed for every randomized step")->capture_default_str();

    std::string field = "Q", curve, ranks, poly, cubic, star = "plain", prime, id, rows;
    bool tsv = false, json_out = false, cross = false, no_oracle = false, oracle = false, no_enum = false,
         all = false;
    double timeout = 1800;
    int jobs = 1;

    auto* an = app.add_subcommand("analyze", "Selmer report for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over K");
    an->fallthrough();
    an->add_option("--field", field, "\"Q\", {\"d\": D} or {\"poly\": [1, 0, -D]}")->capture_default_str();
    an->add_option("--curve", curve, "a1,a2,a3,a4,a6 (elements of K as [c0, c1] in powers of the generator)")->required();
    an->add_option("--ranks", ranks, "Known ranks r1,r2 of E(Q) and of the twist; alternatives as 0|2");
    auto* fj = an->add_flag("--json", json_out, "JSON report (default)");
    an->add_flag("--tsv", tsv, "One TSV row with the table columns")->excludes(fj);
    an->add_flag("--cross-check", cross, "Also brute-force the local image where a criterion fired");
    an->add_flag("--no-oracle", no_oracle, "Leave criteria-undetermined primes undetermined");

    auto* cg = app.add_subcommand("classgroup", "Class group, narrow or semi-narrow class group");
    cg->fallthrough();
    cg->add_option("--poly", poly, "Defining polynomial of an absolute field, leading coefficient first");
    cg->add_option("--field", field, "Base field K (with --cubic)");
    cg->add_option("--cubic", cubic, "Monic cubic over K defining L = K[x]/(F), leading first");
    cg->add_option("--star", star, "plain | plus | zero | infty")->check(CLI::IsMember({"plain", "plus", "zero", "infty"}));

    auto* vt = app.add_subcommand("verify-cardinality", "Check |M1| and |M2| against the class-group formula");
    vt->alias("verify-thm14");
    vt->fallthrough();
    vt->add_option("--field", field, "Base field K");
    vt->add_option("--cubic", cubic, "Monic cubic over K, leading first")->required();
    vt->add_flag("--no-enumerate", no_enum, "Skip the exhaustive enumeration of the ambient space");

    auto* lo = app.add_subcommand("local", "Reduction, niceness and local conditions at the primes above p");
    lo->fallthrough();
    lo->add_option("--field", field, "Base field K");
    lo->add_option("--curve", curve, "a1,a2,a3,a4,a6")->required();
    lo->add_option("--prime", prime, "Rational prime p")->required();
    lo->add_flag("--oracle", oracle, "Brute-force the image of the local Kummer map");

    auto* tb = app.add_subcommand("table", "Reproduce rows of a shipped table fixture");
    tb->fallthrough();
    tb->add_option("--id", id, "ss | ord | mult")->required()->check(CLI::IsMember({"ss", "ord", "mult"}));
    tb->add_option("--rows", rows, "Parameter range a..b (default: the core rows)");
    tb->add_flag("--all", all, "Every row of the table");
    tb->add_option("--timeout", timeout, "Per-row timeout in seconds")->capture_default_str();
    tb->add_option("--jobs", jobs, "Rows computed concurrently")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    try {
        if (an->parsed()) return cmd_analyze(field, curve, ranks, tsv, cross, no_oracle, seed);
        if (cg->parsed()) return cmd_classgroup(poly, field, cubic, star, seed);
        if (vt->parsed()) return cmd_verify(field, cubic, !no_enum, seed);
        if (lo->parsed()) return cmd_local(field, curve, prime, oracle, seed);
        if (tb->parsed()) return cmd_table(id, rows, all, timeout, jobs, seed);
    } catch (const std::exception& e) {
        std::cerr << "selmer: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
