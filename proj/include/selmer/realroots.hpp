#pragma once
// Certified real root isolation by Sturm sequences with rational endpoints,
// and interval evaluation used to certify signs of algebraic numbers.

#include "selmer/poly.hpp"

#include <vector>

namespace selmer {

// Closed interval [lo, hi] with rational endpoints.  For an isolated root of
// f either lo == hi is the exact (rational) root, or lo < hi, f(lo) f(hi) < 0
// and (lo, hi) contains exactly one root.
struct RatInterval {
    Rat lo, hi;
    Rat width() const { return hi - lo; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool disjoint(const RatInterval& o) const { return hi < o.lo || o.hi < lo; }
};

// Ascending isolating intervals of the real roots of a squarefree polynomial.
std::vector<RatInterval> isolate_real_roots(const Poly& f);
int count_real_roots(const Poly& f);
// Refine an isolating interval of f until its width is at most `width`.
RatInterval refine_root(const Poly& f, RatInterval iv, const Rat& width);
// Enclosure of {p(x) : x in iv} by interval Horner evaluation.
RatInterval eval_interval(const Poly& p, const RatInterval& iv);
// Sign of p at the root of f isolated by iv (p must not vanish there).
int sign_at_root(const Poly& p, const Poly& f, const RatInterval& iv);
double midpoint_double(const RatInterval& iv);

}  // namespace selmer
