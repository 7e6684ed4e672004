#include "selmer/realroots.hpp"

#include <algorithm>

namespace selmer {

namespace {

std::vector<Poly> sturm_sequence(const Poly& f) {
    std::vector<Poly> s{f, f.derivative()};
    while (!s.back().is_zero() && s.back().degree() > 0) {
        Poly r = s[s.size() - 2] % s.back();
        if (r.is_zero()) break;
        // Positive scaling keeps signs; normalising keeps coefficients small.
        Rat lc = abs(r.lead());
        s.push_back(-(r * (Rat(1) / lc)));
    }
    return s;
}

int sign_of(const Rat& x) { return (x > 0) - (x < 0); }

int variations(const std::vector<Poly>& s, const Rat& x) {
    int v = 0, last = 0;
    for (auto& p : s) {
        int sg = sign_of(p.eval(x));
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++v;
        last = sg;
    }
    return v;
}

Rat cauchy_bound(const Poly& f) {
    Rat m = 0;
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rat(abs(f.coeff(i) / f.lead())));
    return m + 1;
}

void isolate(const Poly& f, const std::vector<Poly>& s, Rat lo, Rat hi, int vlo, int vhi, std::vector<RatInterval>& out) {
    int n = vlo - vhi;  // roots in (lo, hi]
    if (n == 0) return;
    if (n == 1 && f.eval(hi) != 0) {
        out.push_back({lo, hi});
        return;
    }
    Rat mid = (lo + hi) / 2;
    for (int k = 2; f.eval(mid) == 0 && k < 64; ++k) mid = lo + (hi - lo) * make_rat(k, 2 * k + 1);
    int vm = variations(s, mid);
    isolate(f, s, lo, mid, vlo, vm, out);
    isolate(f, s, mid, hi, vm, vhi, out);
}

}  // namespace

std::vector<RatInterval> isolate_real_roots(const Poly& f) {
    if (f.degree() < 1) return {};
    if (f.degree() == 1) {
        Rat r = -f.coeff(0) / f.coeff(1);
        return {{r, r}};
    }
    auto s = sturm_sequence(f);
    Rat B = cauchy_bound(f);
    Rat lo = -B, hi = B;
    std::vector<RatInterval> out;
    isolate(f, s, lo, hi, variations(s, lo), variations(s, hi), out);
    // Roots at a right endpoint are not possible here (|root| < B), but
    // normalise so that every returned interval has f(lo) f(hi) < 0.
    for (auto& iv : out) {
        if (iv.lo == iv.hi) continue;
        if (f.eval(iv.lo) == 0) iv.lo = (iv.lo + iv.hi) / 2;  // cannot happen for lo strictly left of the root
    }
    std::sort(out.begin(), out.end(), [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
    return out;
}

int count_real_roots(const Poly& f) {
    if (f.degree() < 1) return 0;
    auto s = sturm_sequence(f);
    Rat B = cauchy_bound(f);
    return variations(s, -B) - variations(s, B);
}

RatInterval refine_root(const Poly& f, RatInterval iv, const Rat& width) {
    if (iv.lo == iv.hi) return iv;
    int slo = sign_of(f.eval(iv.lo));
    while (iv.width() > width) {
        Rat mid = (iv.lo + iv.hi) / 2;
        int sm = sign_of(f.eval(mid));
        if (sm == 0) return {mid, mid};
        if (sm == slo) iv.lo = mid;
        else iv.hi = mid;
    }
    return iv;
}

RatInterval eval_interval(const Poly& p, const RatInterval& iv) {
    RatInterval acc{0, 0};
    for (int i = p.degree(); i >= 0; --i) {
        // acc * iv
        Rat c[4] = {acc.lo * iv.lo, acc.lo * iv.hi, acc.hi * iv.lo, acc.hi * iv.hi};
        Rat lo = *std::min_element(c, c + 4), hi = *std::max_element(c, c + 4);
        acc = {lo + p.coeff(i), hi + p.coeff(i)};
    }
    return acc;
}

int sign_at_root(const Poly& p, const Poly& f, const RatInterval& iv0) {
    RatInterval iv = iv0;
    for (int iter = 0; iter < 4000; ++iter) {
        RatInterval v = eval_interval(p, iv);
        if (v.lo > 0) return 1;
        if (v.hi < 0) return -1;
        if (iv.lo == iv.hi) return 0;
        iv = refine_root(f, iv, iv.width() / 1024);
    }
    throw MathError("sign_at_root: value indistinguishable from zero");
}

double midpoint_double(const RatInterval& iv) { return Rat((iv.lo + iv.hi) / 2).get_d(); }

}  // namespace selmer
