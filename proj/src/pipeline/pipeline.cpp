#include "selmer/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "json.hpp"

namespace selmer {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

Rat parse_rat(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw MathError("empty number");
    Rat r;
    if (r.set_str(t, 10) != 0) throw MathError("not a rational number: '" + t + "'");
    r.canonicalize();
    return r;
}

Rat rat_of_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw MathError("expected an integer or a rational string, got " + j.dump());
}

bool is_rational(const KCoeffs& c) {
    return std::all_of(c.begin() + (c.empty() ? 0 : 1), c.end(), [](const Rat& x) { return x == 0; });
}

std::string coeffs_string(const KCoeffs& c) {
    if (c.empty()) return "0";
    if (is_rational(c)) return to_string(c[0]);
    std::string s = "[";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + to_string(c[i]);
    return s + "]";
}

}  // namespace

// ---- Input --------------------------------------------------------------

FieldPtr FieldSpec::build() const { return NumberField::build(Poly::from_descending(poly)); }

std::string FieldSpec::describe() const {
    if (poly.size() == 2) return "Q";
    if (poly.size() == 3 && poly[0] == 1 && poly[1] == 0) return "Q(sqrt(" + Int(-poly[2]).get_str() + "))";
    std::string s = "Q[t]/(";
    for (size_t i = 0; i < poly.size(); ++i) s += (i ? " " : "") + poly[i].get_str();
    return s + ")";
}

FieldSpec parse_field_spec(const std::string& json_text) {
    std::string t = trim(json_text);
    FieldSpec F;
    if (t.empty() || t == "Q" || t == "\"Q\"") return F;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(t);
    } catch (const std::exception& e) {
        throw MathError(std::string("field description is not valid JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("d")) {
        Int d(j["d"].is_string() ? j["d"].get<std::string>() : std::to_string(j["d"].get<long long>()));
        if (d == 1) return F;
        if (is_square(d)) throw MathError("Q(sqrt d) needs d to be a non-square");
        F.poly = {1, 0, -d};
        return F;
    }
    if (j.is_object() && j.contains("poly")) {
        F.poly.clear();
        for (auto& c : j["poly"]) {
            Rat r = rat_of_json(c);
            if (r.get_den() != 1) throw MathError("field polynomial must have integer coefficients");
            F.poly.push_back(r.get_num());
        }
        if (F.poly.size() < 2 || F.poly[0] != 1) throw MathError("field polynomial must be monic of degree >= 1");
        return F;
    }
    throw MathError("field description must be \"Q\", {\"d\": D} or {\"poly\": [...]}");
}

Elt element_of(const NumberField& K, const KCoeffs& c) {
    std::vector<Rat> v(c.begin(), c.end());
    if (v.size() > static_cast<size_t>(K.degree())) throw MathError("element has more coefficients than the field degree");
    if (v.empty()) v.push_back(Rat(0));
    return K.from_poly(Poly(v));
}

KCoeffs parse_k_element(const std::string& text) {
    std::string t = trim(text);
    if (!t.empty() && t[0] == '[') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(t);
        } catch (const std::exception& e) {
            throw MathError("bad element '" + t + "': " + e.what());
        }
        KCoeffs c;
        for (auto& x : j) c.push_back(rat_of_json(x));
        return c;
    }
    return {parse_rat(t)};
}

std::vector<KCoeffs> parse_k_list(const std::string& text) {
    std::vector<KCoeffs> out;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(parse_k_element(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(parse_k_element(cur));
    return out;
}

int RankSet::min() const {
    if (values.empty()) throw MathError("empty rank set");
    return *std::min_element(values.begin(), values.end());
}

std::string RankSet::str() const {
    std::string s;
    for (size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + std::to_string(values[i]);
    return s;
}

RankSet parse_rank_set(const std::string& text) {
    RankSet r;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        r.values.push_back(std::stoi(item));
    }
    std::sort(r.values.begin(), r.values.end());
    return r;
}

std::string parity_name(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        default: return "unknown";
    }
}

Parity selmer_parity(int infinite_places, int split_multiplicative, bool semistable) {
    if (!semistable) return Parity::Unknown;
    return (infinite_places + split_multiplicative) % 2 == 0 ? Parity::Even : Parity::Odd;
}

std::string format_factored(const Int& n) {
    if (n == 0) return "0";
    std::string s = n < 0 ? "-" : "";
    Int a = abs(n);
    if (a == 1) return s + "1";
    bool first = true;
    for (auto& [p, e] : factor_integer(a)) {
        s += (first ? "" : "*") + p.get_str();
        if (e > 1) s += "^" + std::to_string(e);
        first = false;
    }
    return s;
}

// ---- Local part -----------------------------------------------------------

std::vector<PrimeReport> analyze_primes(const RelativeField& R, const WeierstrassModel& E, const Int& p,
                                        const PipelineOptions& opts) {
    const NumberField& K = *R.K;
    Elt D = cubic_discriminant(K, R.F);
    std::vector<PrimeReport> out;
    for (auto& Kv : local_fields(R.K, p)) {
        PrimeReport pr;
        pr.label = Kv.label();
        pr.p = p;
        pr.e = Kv.e();
        pr.f = Kv.f();
        LocalCurve C = reduction_data(Kv, E);
        pr.reduction = reduction_name(C.type);
        pr.v_disc = C.v_disc;
        LocalSquareSpace S(R, Kv, opts.seed);
        pr.two_torsion = S.two_torsion();
        pr.certificate = niceness(Kv, C, Kv.valuation(D), pr.two_torsion);
        auto run_oracle = [&](std::optional<bool>& lower, std::optional<bool>& upper) {
            KummerOptions ko;
            ko.seed = opts.seed;
            auto img = kummer_image_oracle(S, ko);
            auto M = local_condition_sets(S);
            lower = f2_subspace(M.M1, img.basis);
            upper = f2_subspace(img.basis, M.M2);
        };
        switch (pr.certificate.verdict) {
            case Verdict::Nice:
                pr.source = "criterion";
                pr.lower = pr.upper = true;
                if (opts.cross_check) {
                    try {
                        std::optional<bool> lo, up;
                        run_oracle(lo, up);
                        pr.cross_check = *lo && *up;
                    } catch (const MathError& e) {
                        pr.certificate.detail += "; oracle unavailable: " + std::string(e.what());
                    }
                }
                break;
            case Verdict::NotNice:
                // At odd v the two model conditions coincide and have the size of
                // the image, so a different image violates both inclusions.
                pr.source = "criterion";
                pr.lower = pr.upper = false;
                break;
            case Verdict::Undetermined:
                if (opts.oracle_fallback) {
                    try {
                        run_oracle(pr.lower, pr.upper);
                        pr.source = "oracle";
                    } catch (const MathError& e) {
                        pr.certificate.detail += "; oracle unavailable: " + std::string(e.what());
                    }
                }
                break;
        }
        out.push_back(std::move(pr));
    }
    return out;
}

// ---- The report -----------------------------------------------------------

SelmerReport analyze(const CurveJob& job, const PipelineOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    SelmerReport rep;
    rep.label = job.label;
    rep.field = job.field.describe();
    rep.seed = opts.seed;
    rep.r1 = job.r1;
    rep.r2 = job.r2;
    for (size_t i = 0; i < 5; ++i) rep.curve[i] = coeffs_string(job.a[i]);

    FieldPtr K = job.field.build();
    rep.degK = K->degree();
    std::array<Elt, 5> a;
    for (size_t i = 0; i < 5; ++i) {
        a[i] = element_of(*K, job.a[i]);
        if (!a[i].is_integral()) throw MathError("curve coefficients must be algebraic integers");
    }
    WeierstrassModel E = make_model(*K, a);
    if (E.disc.is_zero()) throw MathError("the Weierstrass equation is singular");
    auto G = two_division_cubic(*K, E);

    // Global side: class groups and the square-class spaces.
    SquareClassOptions so;
    so.seed = opts.seed;
    so.classgroup.seed = opts.seed;
    SquareClassSpace S = build_ambient(K, G, so);
    auto plus = modified_class_group(S.cgL, S.signs.allowed(Star::Plus));
    auto inf = modified_class_group(S.cgL, S.signs.allowed(Star::Infty));
    auto kplus = modified_class_group(S.cgK, {});
    rep.CL = S.cgL.invariants;
    rep.CLplus = plus.invariants;
    rep.CLinf = inf.invariants;
    rep.CKplus = kplus.invariants;
    rep.CLinf_rank = inf.two_rank;
    rep.CKplus_rank = kplus.two_rank;
    rep.n = inf.two_rank - kplus.two_rank;
    rep.n_from_M1 = static_cast<int>(compute_M(S, MName::M1).size());
    rep.certified = S.cgL.certified && S.cgK.certified;
    rep.trust = S.cgL.trust;

    // Local side: 2 and the primes of bad reduction of the given model; every
    // other prime is odd with good reduction, hence nice with Tamagawa index 1.
    Rat normD = K->norm(E.disc);
    std::set<Int> ps{Int(2)};
    for (auto& [q, e] : factor_integer(Int(normD.get_num()))) ps.insert(q);
    rep.semistable = true;
    for (const Int& p : ps) {
        for (auto& pr : analyze_primes(S.R, E, p, opts)) {
            if (pr.reduction == reduction_name(Reduction::Additive)) rep.semistable = false;
            if (pr.reduction == reduction_name(Reduction::SplitMultiplicative)) ++rep.split_multiplicative;
            rep.primes.push_back(std::move(pr));
        }
    }
    rep.lower_rigorous = std::all_of(rep.primes.begin(), rep.primes.end(), [](auto& p) { return p.lower == true; });
    rep.upper_rigorous = std::all_of(rep.primes.begin(), rep.primes.end(), [](auto& p) { return p.upper == true; });
    rep.all_nice = rep.lower_rigorous && rep.upper_rigorous;
    rep.lo = rep.n;
    rep.hi = rep.n + rep.degK;

    rep.infinite_places = K->r1() + K->r2();
    rep.parity = selmer_parity(rep.infinite_places, rep.split_multiplicative, rep.semistable);

    // m: inert prime divisors of the minimal discriminant over Q (rational
    // curves over quadratic fields), otherwise the split-multiplicative count.
    bool rational = std::all_of(job.a.begin(), job.a.end(), [](const KCoeffs& c) { return is_rational(c); });
    if (rational) {
        FieldPtr Q = FieldSpec{}.build();
        std::array<Elt, 5> aq;
        for (size_t i = 0; i < 5; ++i) aq[i] = element_of(*Q, job.a[i].empty() ? KCoeffs{} : KCoeffs{job.a[i][0]});
        WeierstrassModel EQ = make_model(*Q, aq);
        Int disc = EQ.disc.c[0];
        Int dmin = disc < 0 ? -1 : 1;
        std::vector<Int> primes;
        for (auto& [q, e] : factor_integer(disc)) {
            int v = reduction_data(local_fields(Q, q).at(0), EQ).v_disc;
            for (int i = 0; i < v; ++i) dmin *= q;
            if (v > 0) primes.push_back(q);
        }
        rep.delta_min = dmin;
        rep.delta_factored = format_factored(dmin);
        if (rep.degK == 2) {
            rep.m_from_delta = true;
            rep.m = 0;
            for (auto& q : primes) {
                auto vs = local_fields(K, q);
                if (vs.size() == 1 && vs[0].f() == 2) ++rep.m;
            }
        }
    }
    if (!rep.m_from_delta) rep.m = rep.split_multiplicative;
    rep.m_parity_matches_t = rep.m % 2 == rep.split_multiplicative % 2;

    // s(E): only the parity rule and the rank rule are used.
    if (rep.all_nice) {
        int rank_lower = -1;
        if (rep.degK == 1 && job.r1) rank_lower = job.r1->min();
        if (rep.degK == 2 && job.r1 && job.r2) rank_lower = job.r1->min() + job.r2->min();
        for (int s = rep.lo; s <= rep.hi; ++s) {
            if (rep.parity == Parity::Even && s % 2 != 0) continue;
            if (rep.parity == Parity::Odd && s % 2 != 1) continue;
            if (s < rank_lower) continue;
            rep.candidates.push_back(s);
        }
        if (rep.candidates.size() == 1) {
            rep.s_determined = rep.candidates[0];
            if ((*rep.s_determined - rep.n) % 2 != 0)
                rep.type = "P";
            else if (rank_lower > rep.n)
                rep.type = "R";
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace selmer
