#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "selmer/pipeline.hpp"

namespace selmer {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

json ints_to_json(const std::vector<Int>& v) {
    json a = json::array();
    for (auto& x : v) {
        if (x.fits_slong_p())
            a.push_back(x.get_si());
        else
            a.push_back(x.get_str());
    }
    return a;
}

std::vector<Int> ints_from_json(const json& a) {
    std::vector<Int> v;
    for (auto& x : a) v.emplace_back(x.is_string() ? x.get<std::string>() : std::to_string(x.get<long long>()));
    return v;
}

json opt_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }
std::optional<bool> opt_bool(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<bool>();
}

// Evaluate a coefficient template such as "0", "{}" or "2*{}".
std::string instantiate(const std::string& tmpl, const std::string& param) {
    Int v = 1;
    for (auto& factor : split(tmpl, '*')) {
        std::string f = trim(factor);
        v *= Int(f == "{}" ? param : f);
    }
    return v.get_str();
}

std::string s_column(const SelmerReport& r) {
    if (r.s_determined) return std::to_string(*r.s_determined);
    std::string s;
    for (size_t i = 0; i < r.candidates.size(); ++i) s += (i ? ", " : "") + std::to_string(r.candidates[i]);
    return s.empty() ? "?" : s;
}

}  // namespace

// ---- JSON -----------------------------------------------------------------

std::string report_to_json(const SelmerReport& r, int indent) {
    json j;
    j["label"] = r.label;
    j["field"] = r.field;
    j["curve"] = r.curve;
    j["n"] = r.n;
    j["n_from_M1"] = r.n_from_M1;
    j["bounds"] = {r.lo, r.hi};
    j["bounds_rigorous"] = {{"lower", r.lower_rigorous}, {"upper", r.upper_rigorous}};
    j["all_nice"] = r.all_nice;
    j["parity"] = parity_name(r.parity);
    j["s"] = r.s_determined ? json(*r.s_determined) : json(nullptr);
    j["s_candidates"] = r.candidates;
    j["type"] = r.type;
    j["m"] = r.m;
    j["m_from_delta"] = r.m_from_delta;
    j["m_parity_matches_t"] = r.m_parity_matches_t;
    j["delta_min"] = r.delta_min ? json(r.delta_min->get_str()) : json(nullptr);
    j["delta_factored"] = r.delta_factored;
    j["semistable"] = r.semistable;
    j["infinite_places"] = r.infinite_places;
    j["split_multiplicative"] = r.split_multiplicative;
    j["degK"] = r.degK;
    j["r1"] = r.r1 ? json(r.r1->values) : json(nullptr);
    j["r2"] = r.r2 ? json(r.r2->values) : json(nullptr);
    json nice = json::array();
    for (auto& p : r.primes) {
        nice.push_back({{"prime", p.label},
                        {"p", p.p.get_str()},
                        {"e", p.e},
                        {"f", p.f},
                        {"reduction", p.reduction},
                        {"v_disc", p.v_disc},
                        {"two_torsion", p.two_torsion},
                        {"verdict", verdict_name(p.certificate.verdict)},
                        {"criterion", p.certificate.criterion},
                        {"detail", p.certificate.detail},
                        {"source", p.source},
                        {"lower", opt_bool(p.lower)},
                        {"upper", opt_bool(p.upper)},
                        {"cross_check", opt_bool(p.cross_check)}});
    }
    j["nice"] = nice;
    j["class_groups"] = {{"CL", ints_to_json(r.CL)},
                         {"CLplus", ints_to_json(r.CLplus)},
                         {"CLinf", ints_to_json(r.CLinf)},
                         {"CKplus", ints_to_json(r.CKplus)},
                         {"CLinf_rank", r.CLinf_rank},
                         {"CKplus_rank", r.CKplus_rank}};
    j["certified"] = r.certified;
    j["trust"] = r.trust;
    j["seed"] = r.seed;
    j["seconds"] = r.seconds;
    return j.dump(indent);
}

SelmerReport report_from_json(const std::string& text) {
    json j = json::parse(text);
    SelmerReport r;
    r.label = j["label"];
    r.field = j["field"];
    r.curve = j["curve"].get<std::array<std::string, 5>>();
    r.n = j["n"];
    r.n_from_M1 = j["n_from_M1"];
    r.lo = j["bounds"][0];
    r.hi = j["bounds"][1];
    r.lower_rigorous = j["bounds_rigorous"]["lower"];
    r.upper_rigorous = j["bounds_rigorous"]["upper"];
    r.all_nice = j["all_nice"];
    std::string par = j["parity"];
    r.parity = par == "even" ? Parity::Even : par == "odd" ? Parity::Odd : Parity::Unknown;
    if (!j["s"].is_null()) r.s_determined = j["s"].get<int>();
    r.candidates = j["s_candidates"].get<std::vector<int>>();
    r.type = j["type"];
    r.m = j["m"];
    r.m_from_delta = j["m_from_delta"];
    r.m_parity_matches_t = j["m_parity_matches_t"];
    if (!j["delta_min"].is_null()) r.delta_min = Int(j["delta_min"].get<std::string>());
    r.delta_factored = j["delta_factored"];
    r.semistable = j["semistable"];
    r.infinite_places = j["infinite_places"];
    r.split_multiplicative = j["split_multiplicative"];
    r.degK = j["degK"];
    if (!j["r1"].is_null()) r.r1 = RankSet{j["r1"].get<std::vector<int>>()};
    if (!j["r2"].is_null()) r.r2 = RankSet{j["r2"].get<std::vector<int>>()};
    for (auto& p : j["nice"]) {
        PrimeReport pr;
        pr.label = p["prime"];
        pr.p = Int(p["p"].get<std::string>());
        pr.e = p["e"];
        pr.f = p["f"];
        pr.reduction = p["reduction"];
        pr.v_disc = p["v_disc"];
        pr.two_torsion = p["two_torsion"];
        std::string v = p["verdict"];
        pr.certificate.verdict = v == verdict_name(Verdict::Nice)      ? Verdict::Nice
                                 : v == verdict_name(Verdict::NotNice) ? Verdict::NotNice
                                                                       : Verdict::Undetermined;
        pr.certificate.criterion = p["criterion"];
        pr.certificate.detail = p["detail"];
        pr.source = p["source"];
        pr.lower = opt_bool(p["lower"]);
        pr.upper = opt_bool(p["upper"]);
        pr.cross_check = opt_bool(p["cross_check"]);
        r.primes.push_back(std::move(pr));
    }
    auto& cg = j["class_groups"];
    r.CL = ints_from_json(cg["CL"]);
    r.CLplus = ints_from_json(cg["CLplus"]);
    r.CLinf = ints_from_json(cg["CLinf"]);
    r.CKplus = ints_from_json(cg["CKplus"]);
    r.CLinf_rank = cg["CLinf_rank"];
    r.CKplus_rank = cg["CKplus_rank"];
    r.certified = j["certified"];
    r.trust = j["trust"];
    r.seed = j["seed"];
    r.seconds = j["seconds"];
    return r;
}

// ---- Fixtures -------------------------------------------------------------

std::string fixture_path(const std::string& id) {
    const char* env = std::getenv("SELMER_DATA_DIR");
    std::string dir = env ? env : SELMER_DATA_DIR;
    return dir + "/fixtures/" + id + ".tsv";
}

TableFixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MathError("cannot open fixture " + path);
    TableFixture T;
    std::string line;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        if (line[0] == '#') {
            auto tab = line.find('\t');
            if (tab == std::string::npos) continue;  // comment
            std::string key = trim(line.substr(1, tab - 1)), value = trim(line.substr(tab + 1));
            if (key == "id") T.id = value;
            if (key == "field") T.field = parse_field_spec(value);
            if (key == "curve") {
                auto parts = split(value, ',');
                if (parts.size() != 5) throw MathError(path + ": curve template needs five coefficients");
                for (size_t i = 0; i < 5; ++i) T.curve[i] = trim(parts[i]);
            }
            if (key == "core")
                for (auto& c : split(value, ',')) T.core.push_back(trim(c));
            continue;
        }
        auto cols = split(line, '\t');
        if (!header) {
            if (cols.size() != 9) throw MathError(path + ": header must have nine columns");
            T.param_name = cols[0];
            header = true;
            continue;
        }
        if (cols.size() != 9) throw MathError(path + ":" + std::to_string(lineno) + ": expected nine columns");
        TableRow r;
        r.param = trim(cols[0]);
        r.delta = trim(cols[1]);
        r.m = std::stoi(cols[2]);
        r.CLplus = trim(cols[3]);
        r.n = std::stoi(cols[4]);
        r.r1 = parse_rank_set(cols[5]);
        r.r2 = parse_rank_set(cols[6]);
        r.s = parse_rank_set(cols[7]);
        r.type = trim(cols[8]);
        T.rows.push_back(r);
    }
    if (T.id.empty()) throw MathError(path + ": missing #id");
    return T;
}

CurveJob job_for_row(const TableFixture& T, const TableRow& row) {
    CurveJob job;
    job.field = T.field;
    for (size_t i = 0; i < 5; ++i) job.a[i] = parse_k_element(instantiate(T.curve[i], row.param));
    job.r1 = row.r1;
    job.r2 = row.r2;
    job.label = T.id + ":" + T.param_name + "=" + row.param;
    return job;
}

std::vector<TableRow> select_rows(const TableFixture& T, long lo, long hi) {
    std::vector<TableRow> out;
    for (auto& r : T.rows) {
        long v = std::stol(r.param);
        if (lo <= v && v <= hi) out.push_back(r);
    }
    return out;
}

std::vector<TableRow> core_rows(const TableFixture& T) {
    std::vector<TableRow> out;
    for (auto& r : T.rows)
        if (std::find(T.core.begin(), T.core.end(), r.param) != T.core.end()) out.push_back(r);
    return out;
}

std::vector<std::string> compare_row(const TableRow& x, const SelmerReport& r) {
    std::vector<std::string> bad;
    auto check = [&](bool ok, const std::string& what, const std::string& want, const std::string& got) {
        if (!ok) bad.push_back(what + ": expected " + want + ", got " + got);
    };
    check(r.delta_factored == x.delta, "Delta", x.delta, r.delta_factored);
    check(r.m == x.m, "m", std::to_string(x.m), std::to_string(r.m));
    std::string cl = format_invariants(r.CLplus);
    check(cl == x.CLplus, "C_L^+", x.CLplus, cl);
    check(r.n == x.n, "n", std::to_string(x.n), std::to_string(r.n));
    check(r.n_from_M1 == r.n, "n via |M1|", std::to_string(r.n), std::to_string(r.n_from_M1));
    check(r.certified, "certification", "unconditional", r.trust);
    check(r.all_nice, "niceness", "nice at every finite prime", "not established");
    int want_parity = x.s.values.empty() ? -1 : x.s.values[0] % 2;
    std::string got_parity = parity_name(r.parity);
    check(want_parity < 0 || got_parity == (want_parity ? "odd" : "even"), "parity of s(E)",
          want_parity ? "odd" : "even", got_parity);
    check(r.candidates == x.s.values, "s(E)", x.s.str(), s_column(r));
    check(r.type == x.type, "Type", x.type.empty() ? "(none)" : x.type, r.type.empty() ? "(none)" : r.type);
    return bad;
}

std::string tsv_header(const TableFixture& T) {
    return T.param_name + "\tΔ\tm\tC_L^+\tn\tr1\tr2\ts(E)\tType";
}

std::string tsv_line(const std::string& param, const SelmerReport& r) {
    std::ostringstream os;
    os << param << '\t' << r.delta_factored << '\t' << r.m << '\t' << format_invariants(r.CLplus) << '\t' << r.n << '\t'
       << (r.r1 ? r.r1->str() : "") << '\t' << (r.r2 ? r.r2->str() : "") << '\t' << s_column(r) << '\t' << r.type;
    return os.str();
}

// ---- Worker pool ------------------------------------------------------------

std::vector<RowResult> reproduce_table(const TableFixture& T, const std::vector<TableRow>& rows,
                                       const TableOptions& opts) {
    using clock = std::chrono::steady_clock;
    struct Worker {
        pid_t pid = -1;
        int fd = -1;
        size_t row = 0;
        clock::time_point start;
        std::string out;
        bool eof = false, killed = false;
        int status = 0;
        bool reaped = false;
    };
    std::vector<RowResult> results(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) results[i].expected = rows[i];
    std::vector<Worker> active;
    size_t next = 0;
    int jobs = std::max(1, opts.jobs);

    auto launch = [&](size_t i) {
        int fds[2];
        if (pipe(fds) != 0) throw MathError(std::string("pipe: ") + std::strerror(errno));
        std::fflush(nullptr);
        pid_t pid = fork();
        if (pid < 0) throw MathError(std::string("fork: ") + std::strerror(errno));
        if (pid == 0) {
            close(fds[0]);
            std::string msg;
            int code = 0;
            try {
                auto rep = analyze(job_for_row(T, rows[i]), opts.pipeline);
                msg = report_to_json(rep);
            } catch (const std::exception& e) {
                msg = json{{"error", e.what()}}.dump();
                code = 1;
            }
            size_t off = 0;
            while (off < msg.size()) {
                ssize_t w = write(fds[1], msg.data() + off, msg.size() - off);
                if (w <= 0) break;
                off += static_cast<size_t>(w);
            }
            close(fds[1]);
            _exit(code);
        }
        close(fds[1]);
        Worker w;
        w.pid = pid;
        w.fd = fds[0];
        w.row = i;
        w.start = clock::now();
        active.push_back(std::move(w));
    };

    auto finish = [&](Worker& w) {
        RowResult& res = results[w.row];
        if (w.killed) {
            res.timed_out = true;
            std::ostringstream msg;
            msg << "timeout after " << opts.timeout_seconds << " s";
            res.error = msg.str();
            return;
        }
        try {
            json j = json::parse(w.out);
            if (j.contains("error")) {
                res.error = j["error"];
                return;
            }
            res.report = report_from_json(w.out);
            res.mismatches = compare_row(res.expected, *res.report);
        } catch (const std::exception& e) {
            res.error = "worker exited abnormally (status " + std::to_string(w.status) + ")";
        }
    };

    while (next < rows.size() || !active.empty()) {
        while (next < rows.size() && static_cast<int>(active.size()) < jobs) launch(next++);
        std::vector<pollfd> pfds;
        for (auto& w : active)
            if (!w.eof) pfds.push_back({w.fd, POLLIN, 0});
        if (!pfds.empty()) poll(pfds.data(), pfds.size(), 100);
        char buf[65536];
        for (auto& w : active) {
            if (w.eof) continue;
            for (auto& p : pfds) {
                if (p.fd != w.fd || !(p.revents & (POLLIN | POLLHUP | POLLERR))) continue;
                ssize_t k = read(w.fd, buf, sizeof buf);
                if (k > 0)
                    w.out.append(buf, static_cast<size_t>(k));
                else {
                    w.eof = true;
                    close(w.fd);
                }
            }
        }
        for (auto& w : active) {
            if (!w.reaped && waitpid(w.pid, &w.status, WNOHANG) == w.pid) w.reaped = true;
            double age = std::chrono::duration<double>(clock::now() - w.start).count();
            if (!w.reaped && !w.killed && age > opts.timeout_seconds) {
                kill(w.pid, SIGKILL);
                w.killed = true;
            }
            if (w.killed && !w.reaped) {
                waitpid(w.pid, &w.status, 0);
                w.reaped = true;
                if (!w.eof) {
                    close(w.fd);
                    w.eof = true;
                }
            }
        }
        for (auto it = active.begin(); it != active.end();) {
            if (it->reaped && it->eof) {
                finish(*it);
                it = active.erase(it);
            } else {
                ++it;
            }
        }
        if (pfds.empty() && !active.empty()) usleep(20000);
    }
    return results;
}

}  // namespace selmer
