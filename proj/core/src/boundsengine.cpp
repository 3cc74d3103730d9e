#include "spreadlab/boundsengine.hpp"

#include "spreadlab/data.hpp"
#include "spreadlab/macwlp.hpp"

#include <algorithm>
#include <functional>

namespace boundsengine {

using gfcore::Error;
using gfcore::ErrorKind;

namespace {

BigInt qpow(std::uint64_t q, unsigned e) { return gfcore::ipow(BigInt(q), e); }

Rational qpow_signed(std::uint64_t q, long e)
{
    return e >= 0 ? Rational(qpow(q, unsigned(e))) : Rational(1) / Rational(qpow(q, unsigned(-e)));
}

BigInt g1(unsigned n, std::uint64_t q) { return gfcore::gauss1(long(n), BigInt(q)); }

Params need_partial(std::uint64_t q, unsigned v, unsigned k, bool need_r)
{
    const Params p = split(q, v, k);
    if (p.t < 2) throw Error(ErrorKind::NotApplicable, "need v >= 2k");
    if (need_r && p.r == 0) throw Error(ErrorKind::WrongResidue, "k divides v; the spread bound is exact");
    return p;
}

// Chain behind main_theorem_1_upper for z <= [r 1]/2: every admissible hole count is negative or has tau < 0.
bool mt1_certified(std::uint64_t q, unsigned r, unsigned k, const BigInt& z)
{
    const BigInt gr = g1(r, q);
    const BigInt u = BigInt(k) - gr - 1 + z;
    const BigInt y = z + 1;
    if (z == 0) return -u * q - 1 < 0;
    const unsigned yy = unsigned(y);
    const BigInt gy = g1(yy, q), qy = qpow(q, yy), delta = qpow(q, yy - 1);
    for (BigInt i = y - 1 - u; i >= 1; --i) {
        const BigInt c = i * qy - gy + y - 1;
        if (macwlp::tau(q, c, delta, i * (q - 1)) >= 0) return false;
    }
    return true;
}

}  // namespace

Params split(std::uint64_t q, unsigned v, unsigned k)
{
    if (!gfcore::prime_power(q)) throw Error(ErrorKind::NotAPrimePower, std::to_string(q) + " is not a prime power");
    if (k < 1 || v < 1) throw Error(ErrorKind::RangeError, "need v, k >= 1");
    return Params{q, v, k, v / k, v % k};
}

BigInt l_of(std::uint64_t q, unsigned v, unsigned k)
{
    const Params p = split(q, v, k);
    if (p.t < 1) throw Error(ErrorKind::RangeError, "need v >= k");
    return (qpow(q, v - k) - qpow(q, p.r)) / (qpow(q, k) - 1);
}

BigInt trivial_upper(std::uint64_t q, unsigned v, unsigned k)
{
    split(q, v, k);
    return (qpow(q, v) - 1) / (qpow(q, k) - 1);
}

BigInt spread_exact(std::uint64_t q, unsigned v, unsigned k)
{
    const Params p = split(q, v, k);
    if (p.r != 0) throw Error(ErrorKind::WrongResidue, "k does not divide v");
    return gfcore::gauss1(long(p.t), qpow(q, k));
}

BigInt multicomponent_lower(std::uint64_t q, unsigned v, unsigned k)
{
    need_partial(q, v, k, true);
    return l_of(q, v, k) * qpow(q, k) + 1;
}

BigInt beutelspacher(std::uint64_t q, unsigned v, unsigned k)
{
    const Params p = need_partial(q, v, k, true);
    if (p.r != 1) throw Error(ErrorKind::WrongResidue, "needs v = 1 mod k");
    return (qpow(q, v) - qpow(q, k + 1) + qpow(q, k) - 1) / (qpow(q, k) - 1);
}

BigInt drake_freeman(std::uint64_t q, unsigned v, unsigned k)
{
    const Params p = need_partial(q, v, k, true);
    const BigInt qk = qpow(q, k), qr = qpow(q, p.r);
    const BigInt d = 1 + 4 * qk * (qk - qr);
    const BigInt s = gfcore::isqrt(d);
    const BigInt tt = 2 * qk - 2 * qr + 1;
    // ceil((sqrt(d) - tt) / 2), with sqrt(d) strictly inside (s, s+1) unless d is a square.
    const BigInt num = s * s == d ? BigInt(s - tt) : BigInt(s + 1 - tt);
    const BigInt theta = gfcore::ceil_div(num, 2);
    return trivial_upper(q, v, k) - theta;
}

BigInt q2_r2_exact(std::uint64_t q, unsigned v, unsigned k)
{
    if (q != 2) throw Error(ErrorKind::ParameterMismatch, "q must be 2");
    const Params p = need_partial(q, v, k, true);
    if (p.r != 2) throw Error(ErrorKind::WrongResidue, "needs v = 2 mod k");
    if (k < 4) throw Error(ErrorKind::RangeError, "needs k >= 4");
    return (qpow(2, v) - 3 * qpow(2, k) - 1) / (qpow(2, k) - 1);
}

BigInt q3_r2_upper(unsigned v, unsigned k)
{
    const Params p = need_partial(3, v, k, true);
    if (p.r != 2) throw Error(ErrorKind::WrongResidue, "needs v = 2 mod k");
    if (k < 4) throw Error(ErrorKind::RangeError, "needs k >= 4");
    return (qpow(3, v) - 9) / (qpow(3, k) - 1) - 5;
}

BigInt main_theorem_1_upper(std::uint64_t q, unsigned v, unsigned k)
{
    const Params p = need_partial(q, v, k, true);
    if (k <= p.r) throw Error(ErrorKind::NotApplicable, "needs k > r");
    const BigInt gr = g1(p.r, q);
    const BigInt z = std::max(BigInt(0), BigInt(gr + 1 - k));
    const BigInt value = l_of(q, v, k) * qpow(q, k) + 1 + z * (q - 1);
    if (2 * z <= gr) {
        if (!mt1_certified(q, p.r, k, z))
            throw Error(ErrorKind::InconsistentInput, "hole-count chain failed for z = " + z.str());
    } else if (value < drake_freeman(q, v, k)) {
        throw Error(ErrorKind::InconsistentInput, "large-z bound undercuts Drake-Freeman");
    }
    return value;
}

std::optional<BigInt> main_theorem_2_at(std::uint64_t q, unsigned v, unsigned k, unsigned y)
{
    const Params p = need_partial(q, v, k, true);
    if (k <= p.r) throw Error(ErrorKind::NotApplicable, "needs k > r");
    const BigInt z = g1(p.r, q) + 1 - k;
    if (z < 0) throw Error(ErrorKind::NotApplicable, "needs k <= [r 1]_q + 1");
    if (y < std::max(p.r, 2u) || y > k) throw Error(ErrorKind::RangeError, "needs max(r, 2) <= y <= k");
    const BigInt lam = qpow(q, y);
    const BigInt e = 1 + 4 * lam * (lam - (z + y - 1) * (q - 1) - 1);
    if (e < 0) return std::nullopt;
    // ceil((2 lam - 1 - sqrt(e)) / 2) = ceil((2 lam - 1 - isqrt(e)) / 2) whether or not e is a square.
    return l_of(q, v, k) * qpow(q, k) + gfcore::ceil_div(2 * lam - 1 - gfcore::isqrt(e), 2);
}

BigInt main_theorem_2_upper(std::uint64_t q, unsigned v, unsigned k)
{
    const Params p = need_partial(q, v, k, true);
    std::optional<BigInt> best;
    for (unsigned y = std::max(p.r, 2u); y <= k; ++y) {
        const auto c = main_theorem_2_at(q, v, k, y);
        if (c && (!best || *c < *best)) best = c;
    }
    if (!best) throw Error(ErrorKind::NotApplicable, "no admissible y");
    return *best;
}

DfEstimate df_estimate(std::uint64_t q, unsigned v, unsigned k)
{
    const Params p = need_partial(q, v, k, true);
    const Rational qr = qpow(q, p.r), lqk = l_of(q, v, k) * qpow(q, k);
    const Rational tail = qpow_signed(q, 2 * long(p.r) - long(k));
    DfEstimate e;
    e.sigma_lower = (qr - 1) / 2 - tail * Rational(50, 291);
    e.theta_upper = (qr - 1) / 2 - tail * Rational(3, 32);
    e.a_upper = lqk + qr / 2 + Rational(1, 2) + tail * Rational(50, 291);
    if (k >= 2 * p.r) e.a_upper_simple = lqk + 1 + qr / 2;
    return e;
}

BigInt hole_count(std::uint64_t q, unsigned v, unsigned k, const BigInt& size)
{
    return g1(v, q) - size * g1(k, q);
}

HolesResult divisible_holes_upper(std::uint64_t q, unsigned v, unsigned k, const BigInt& start)
{
    const Params p = need_partial(q, v, k, false);
    const unsigned level = k - 1;
    HolesResult res;
    BigInt n = start;
    for (int step = 0; step < 10000; ++step, --n) {
        const BigInt h = hole_count(q, v, k, n);
        std::string line = "size " + n.str() + ": " + h.str() + " holes, q^" + std::to_string(level) + "-divisible: ";
        if (h < 0) {
            res.trace.push_back(line + "negative");
            continue;
        }
        bool excluded;
        if (h <= 4096) {
            const auto verdict = macwlp::existence_status(q, level, h);
            excluded = verdict.status == macwlp::Existence::Excluded;
            line += std::string(macwlp::to_string(verdict.status)) + " (" + macwlp::to_string(verdict.stage) + ")";
            res.trace.push_back(line);
            for (const auto& c : verdict.certificate) res.trace.push_back("  " + c);
        } else {
            std::vector<std::string> sub;
            excluded = macwlp::excluded_analytic(q, level, h, &sub);
            res.trace.push_back(line + (excluded ? "Excluded" : "not excluded"));
            for (const auto& s : sub) res.trace.push_back("  " + s);
        }
        if (!excluded) break;
    }
    (void)p;
    res.upper = n;
    return res;
}

BoundReport best_bounds(std::uint64_t q, unsigned v, unsigned k)
{
    BoundReport rep;
    rep.p = split(q, v, k);
    const Params& p = rep.p;
    if (p.t == 0) {
        rep.lower = rep.upper = 0;
        rep.lower_source = rep.upper_source = "v < k";
        return rep;
    }
    if (p.t == 1) {
        rep.lower = rep.upper = 1;
        rep.lower_source = rep.upper_source = "two k-subspaces of F_q^v meet when v < 2k";
        return rep;
    }
    const BigInt triv = trivial_upper(q, v, k);

    auto add = [&](const std::string& name, bool lower, const std::function<BigInt()>& f) {
        FormulaValue fv{name, lower, std::nullopt, ""};
        try {
            fv.value = f();
        } catch (const Error& e) {
            fv.note = e.what();
        }
        rep.per_formula.push_back(std::move(fv));
    };
    add("trivial", false, [&] { return triv; });
    add("spread", false, [&] { return spread_exact(q, v, k); });
    add("spread", true, [&] { return spread_exact(q, v, k); });
    add("multicomponent", true, [&] { return multicomponent_lower(q, v, k); });
    add("beutelspacher", true, [&] { return beutelspacher(q, v, k); });
    add("beutelspacher", false, [&] { return beutelspacher(q, v, k); });
    add("drake_freeman", false, [&] { return drake_freeman(q, v, k); });
    add("main_theorem_1", false, [&] { return main_theorem_1_upper(q, v, k); });
    add("main_theorem_2", false, [&] { return main_theorem_2_upper(q, v, k); });
    add("q2_r2", true, [&] { return q2_r2_exact(q, v, k); });
    add("q2_r2", false, [&] { return q2_r2_exact(q, v, k); });
    if (q == 3) add("q3_r2", false, [&] { return q3_r2_upper(v, k); });
    for (const auto& s : dataset::sporadic_bounds()) {
        if (s.q != q || s.k != k || v < s.v || (v - s.v) % k != 0) continue;
        if (!s.lower && s.v != v) continue;
        FormulaValue fv{"sporadic", s.lower, s.value, s.citation};
        // Extending by k coordinates adds a lifted layer of q^{v'} members each time.
        for (unsigned w = s.v; w < v; w += k) *fv.value += qpow(q, w);
        if (s.v != v) fv.note += " (extended from v = " + std::to_string(s.v) + ")";
        rep.per_formula.push_back(std::move(fv));
    }

    std::optional<BigInt> best_upper, best_lower;
    for (const auto& f : rep.per_formula) {
        if (!f.value) continue;
        if (f.lower && (!best_lower || *f.value > *best_lower)) best_lower = *f.value, rep.lower_source = f.name;
        if (!f.lower && (!best_upper || *f.value < *best_upper)) best_upper = *f.value, rep.upper_source = f.name;
    }
    rep.lower = best_lower.value_or(BigInt(1));
    rep.upper = *best_upper;

    if (p.r != 0 && rep.lower < rep.upper) {
        HolesResult from_trivial = divisible_holes_upper(q, v, k, triv);
        rep.per_formula.push_back({"divisible_holes", false, from_trivial.upper, "from the trivial bound"});
        HolesResult h = from_trivial.upper <= rep.upper ? from_trivial : divisible_holes_upper(q, v, k, rep.upper);
        if (h.upper < rep.upper) {
            rep.upper = h.upper;
            rep.upper_source = "divisible_holes";
        }
        rep.chain = std::move(h.trace);
    }
    if (rep.lower > rep.upper)
        throw Error(ErrorKind::InconsistentInput, "lower bound " + rep.lower.str() + " exceeds upper bound " +
                                                      rep.upper.str());
    rep.sigma_min = triv - rep.upper;
    rep.sigma_max = triv - rep.lower;
    return rep;
}

}  // namespace boundsengine
