#include "spreadlab/macwlp.hpp"

#include "spreadlab/divset.hpp"

#include <algorithm>

namespace macwlp {

using gfcore::Error;
using gfcore::ErrorKind;

namespace {

BigInt binom(const BigInt& n, const BigInt& k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt kk = k > n - k ? n - k : k;
    BigInt r = 1;
    for (BigInt i = 1; i <= kk; ++i) r = r * (n - kk + i) / i;
    return r;
}

BigInt pow_big(std::uint64_t q, unsigned e) { return gfcore::ipow(BigInt(q), e); }

BigInt mod_pos(const BigInt& a, const BigInt& m)
{
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

BigInt krawtchouk(std::uint64_t n, std::uint64_t i, std::uint64_t j, std::uint64_t q)
{
    BigInt s = 0;
    for (std::uint64_t t = 0; t <= i; ++t) {
        BigInt term = gfcore::ipow(BigInt(q - 1), unsigned(i - t)) * binom(j, t) * binom(n - j, i - t);
        s += (t % 2) ? -term : term;
    }
    return s;
}

std::vector<BigInt> macwilliams_transform(const std::vector<BigInt>& a, unsigned k, std::uint64_t q)
{
    if (a.empty()) throw Error(ErrorKind::InconsistentInput, "empty weight distribution");
    const std::uint64_t n = a.size() - 1;
    if (k > n) throw Error(ErrorKind::RangeError, "dimension exceeds the length");
    BigInt total = 0;
    for (const auto& x : a) total += x;
    const BigInt qk = pow_big(q, k);
    if (a[0] != 1 || total != qk)
        throw Error(ErrorKind::InconsistentInput, "need A_0 = 1 and sum A_i = q^k");
    std::vector<BigInt> out(a.size());
    for (std::uint64_t i = 0; i <= n; ++i) {
        BigInt s = 0;
        for (std::uint64_t j = 0; j <= n; ++j)
            if (a[j] != 0) s += a[j] * krawtchouk(n, i, j, q);
        if (s % qk != 0) throw Error(ErrorKind::InconsistentInput, "dual distribution is not integral");
        out[i] = s / qk;
    }
    return out;
}

BigInt tau(std::uint64_t q, const BigInt& c, const BigInt& delta, const BigInt& m)
{
    const BigInt qq = q;
    return m * (m - 1) * delta * delta * qq * qq - c * (2 * m - 1) * (qq - 1) * delta * qq +
           c * (qq - 1) * (c * (qq - 1) + 1);
}

BigInt tau_window(std::uint64_t q, const BigInt& delta) { return (BigInt(q) * delta + 2) / 4; }

std::optional<TauWitness> tau_exclude(std::uint64_t q, const BigInt& n, const BigInt& delta)
{
    const BigInt w = tau_window(q, delta);
    if (w < 1) return std::nullopt;
    // tau is convex in m with real minimizer 1/2 + n(q-1)/(q delta).
    const Rational star = Rational(1, 2) + Rational(n * (q - 1), delta * q);
    std::vector<BigInt> cand{gfcore::floor(star), gfcore::ceil(star), BigInt(1), w};
    std::optional<TauWitness> best;
    for (auto m : cand) {
        m = std::clamp(m, BigInt(1), w);
        const BigInt t = tau(q, n, delta, m);
        if (!best || t < best->value || (t == best->value && m < best->m)) best = TauWitness{m, t};
    }
    if (best && best->value < 0) return best;
    return std::nullopt;
}

Rational linear_identity_residual(std::uint64_t q, std::uint64_t delta, std::uint64_t u, std::uint64_t m,
                                  const std::vector<BigInt>& a, std::size_t v)
{
    if (v < 1) throw Error(ErrorKind::RangeError, "v must be positive");
    BigInt lhs = 0;
    for (std::uint64_t h = 0; h <= m; ++h) {
        const std::uint64_t idx = u + h * delta;
        if (idx < a.size()) lhs += BigInt(h) * a[idx];
    }
    lhs *= (q - 1);
    const Rational rhs = Rational(BigInt(u) + BigInt(m) * delta - BigInt(u) * q) * Rational(pow_big(q, unsigned(v - 1)), delta) - m;
    return Rational(lhs) - rhs;
}

bool average_exclude(std::uint64_t q, const BigInt& n, const BigInt& u) { return n > 0 && u * q >= n; }

namespace {

void check_congruence(std::uint64_t q, unsigned r, const BigInt& b, const BigInt& y)
{
    const BigInt mod = pow_big(q, r + 1);
    if (mod_pos(y - BigInt(q - 1) * b, mod) != 0)
        throw Error(ErrorKind::CongruenceViolated, "y = " + y.str() + " is not congruent to (q-1) b = " +
                                                       (BigInt(q - 1) * b).str() + " mod " + mod.str());
}

}  // namespace

AverageBound average_bound(std::uint64_t q, unsigned r, const BigInt& a, const BigInt& b, const BigInt& y)
{
    if (r < 1) throw Error(ErrorKind::RangeError, "need r >= 1");
    if (y < 0) throw Error(ErrorKind::RangeError, "y must be nonnegative");
    check_congruence(q, r, b, y);
    AverageBound out;
    out.bound = (a - 1) * pow_big(q, r) + (b + y) / q;
    out.modulus = pow_big(q, r);
    out.residue = mod_pos(b, out.modulus);
    out.level = r - 1;
    return out;
}

unsigned max_depth(std::uint64_t q, unsigned r, const BigInt& y)
{
    if (y <= 0) return 0;
    const auto pp = gfcore::prime_power(q);
    if (!pp) throw Error(ErrorKind::NotAPrimePower, std::to_string(q) + " is not a prime power");
    long vp = 0;
    for (BigInt t = y; t % pp->p == 0; t /= pp->p) ++vp;
    // j < r + 1 - max(0, g - 1) with g = vp / e, scaled by e.
    const long e = pp->e, excess = std::max(0L, vp - e);
    const long limit = e * (long(r) + 1) - excess;  // need e j < limit
    if (limit <= 0) return 0;
    const long j = (limit - 1) / e;
    return unsigned(std::min<long>(j, long(r)));
}

AverageBound iterated_average(std::uint64_t q, unsigned r, const BigInt& a, const BigInt& b, const BigInt& y,
                              unsigned j)
{
    AverageBound out;
    if (j == 0) {
        out.modulus = pow_big(q, r + 1);
        out.bound = a * out.modulus + b;
        out.residue = mod_pos(b, out.modulus);
        out.level = r;
        return out;
    }
    if (y < 1) throw Error(ErrorKind::RangeError, "y must be positive");
    check_congruence(q, r, b, y);
    if (j > max_depth(q, r, y))
        throw Error(ErrorKind::DepthExceeded, "j = " + std::to_string(j) + " exceeds the admissible depth " +
                                                  std::to_string(max_depth(q, r, y)) + " for y = " + y.str());
    const BigInt qj = pow_big(q, j);
    const BigInt num = b + gfcore::gauss1(long(j), BigInt(q)) * y;
    if (num % qj != 0) throw Error(ErrorKind::InconsistentInput, "averaging numerator is not divisible by q^j");
    out.modulus = pow_big(q, r + 1 - j);
    out.bound = (a - j) * out.modulus + num / qj;
    out.residue = mod_pos(b, out.modulus);
    out.level = r - j;
    return out;
}

BigInt default_y(std::uint64_t q, unsigned r, const BigInt& b)
{
    const BigInt mod = pow_big(q, r + 1);
    BigInt y = mod_pos(BigInt(q - 1) * b, mod);
    return y == 0 ? mod : y;
}

CubicValues cubic_values(std::uint64_t q, const BigInt& n, const BigInt& delta, const BigInt& t)
{
    const BigInt Q = q, D = delta;
    CubicValues c;
    c.h = D * D * Q * Q * t * t + D * D * Q * Q * t - 2 * D * n * Q * Q * t - D * n * Q * Q + 2 * D * n * Q * t +
          n * n * Q * Q + D * n * Q - 2 * n * n * Q + n * n + n * Q - n;
    c.g2 = c.h - (2 * D * Q * t + D * Q - 2 * n * Q + 2 * n + Q - 2);
    c.g1 = D * Q * c.h;
    c.g0 = -n * (Q - 1) * c.g2;
    return c;
}

bool cubic_exclude(std::uint64_t q, const BigInt& n, const BigInt& delta, const BigInt& t)
{
    if (t * delta <= n && n <= (t + 1) * delta)
        throw Error(ErrorKind::NotApplicable, "n / delta lies in [t, t + 1]");
    const CubicValues c = cubic_values(q, n, delta, t);
    return c.h >= 0 && c.g2 < 0;
}

std::optional<BigInt> cubic_search(std::uint64_t q, const BigInt& n, const BigInt& delta)
{
    const BigInt top = std::min(BigInt(n / delta + 3), BigInt(1000000));
    for (BigInt t = 0; t <= top; ++t) {
        if (t * delta <= n && n <= (t + 1) * delta) continue;
        if (cubic_exclude(q, n, delta, t)) return t;
    }
    return std::nullopt;
}

std::optional<std::string> exclusion_interval(std::uint64_t q, unsigned r, const BigInt& n)
{
    if (n < 0) return "negative cardinality";
    if (n == 0) return std::nullopt;
    const BigInt qr1 = pow_big(q, r + 1);
    if (n <= BigInt(r) * qr1 && !divset::representable(q, r, n))
        return n.str() + " <= r q^(r+1) = " + (BigInt(r) * qr1).str() + " and is not a [r+1 1]_q + b q^(r+1)";
    if (r == 1 && n >= 2 && n <= BigInt(q) * q && n != BigInt(q) * q && n % (q + 1) != 0)
        return "r = 1, 2 <= n < q^2 and q+1 does not divide n";
    return std::nullopt;
}

std::vector<BigInt> default_weights(std::uint64_t q, unsigned r, const BigInt& n)
{
    if (r < 1) throw Error(ErrorKind::RangeError, "need r >= 1");
    const BigInt delta = pow_big(q, r);
    std::vector<BigInt> w;
    for (BigInt np = n % delta; np <= n - delta; np += delta) {
        if (r >= 2 && existence_status(q, r - 1, np).status == Existence::Excluded) continue;
        w.push_back(n - np);
    }
    std::sort(w.begin(), w.end());
    return w;
}

std::pair<unsigned, unsigned> k_range(std::uint64_t q, unsigned r, const BigInt& n)
{
    unsigned lo = 1;
    while (gfcore::gauss1(long(lo), BigInt(q)) < n) ++lo;
    unsigned ceil_log = 0;
    for (BigInt p = 1; p < n; p *= q) ++ceil_log;
    return {lo, r + 2 + ceil_log};
}

LpProblem default_problem(std::uint64_t q, unsigned r, const BigInt& n)
{
    LpProblem p;
    p.q = q;
    p.n = n;
    p.delta = pow_big(q, r);
    p.weights = default_weights(q, r, n);
    const unsigned kmin = k_range(q, r, n).first;
    p.rules.push_back({Rule::Kind::MinY, BigInt(kmin), "n distinct points span at least " + std::to_string(kmin) +
                                                           " dimensions"});
    return p;
}

namespace {

Rational y_of(std::uint64_t q, unsigned k)
{
    return k >= 3 ? Rational(pow_big(q, k - 3)) : Rational(1) / Rational(pow_big(q, 3 - k));
}

std::optional<unsigned> fixed_k_rule(const LpProblem& p)
{
    for (const auto& r : p.rules)
        if (r.kind == Rule::Kind::FixK) return unsigned(r.value);
    return std::nullopt;
}

}  // namespace

lp::System build_system(const LpProblem& p, std::optional<unsigned> k)
{
    if (p.identities < 3 || p.identities > 4) throw Error(ErrorKind::RangeError, "use 3 or 4 identities");
    if (!k) k = fixed_k_rule(p);
    std::vector<BigInt> ws;
    for (const auto& w : p.weights) {
        bool zero = w <= 0 || w > p.n;
        for (const auto& r : p.rules)
            if (r.kind == Rule::Kind::ZeroWeight && r.value == w) zero = true;
        if (!zero) ws.push_back(w);
    }
    lp::System s;
    for (const auto& w : ws) s.names.push_back("A" + w.str());
    const bool has_x = p.identities == 4;
    const std::size_t ix = ws.size(), iy = ws.size() + (has_x ? 1 : 0);
    if (has_x) s.names.push_back("x");
    if (!k) s.names.push_back("y");
    const std::size_t nv = s.names.size();
    const Rational yk = k ? y_of(p.q, *k) : Rational(0);
    for (unsigned i = 0; i < p.identities; ++i) {
        lp::Constraint c;
        c.coef.assign(nv, 0);
        for (std::size_t j = 0; j < ws.size(); ++j) c.coef[j] = binom(p.n - ws[j], i);
        const BigInt cni = binom(p.n, i);
        const BigInt qpow = pow_big(p.q, 3 - i);
        if (i == 3) c.coef[ix] = -1;
        if (k)
            c.rhs = Rational(qpow * cni) * yk - cni;
        else {
            c.coef[iy] = -Rational(qpow * cni);
            c.rhs = -Rational(cni);
        }
        c.label = "identity " + std::to_string(i);
        s.eq.push_back(std::move(c));
    }
    for (const auto& r : p.rules) {
        if (r.kind != Rule::Kind::MinY && r.kind != Rule::Kind::MaxY) continue;
        const Rational bound = y_of(p.q, unsigned(r.value));
        const bool lower = r.kind == Rule::Kind::MinY;
        lp::Constraint c;
        c.coef.assign(nv, 0);
        c.label = r.reason;
        if (k) {
            // Constant comparison: 0 >= 1 when violated, 0 >= 0 otherwise.
            const bool ok = lower ? yk >= bound : yk <= bound;
            c.rhs = ok ? 0 : 1;
        } else {
            c.coef[iy] = lower ? 1 : -1;
            c.rhs = lower ? bound : -bound;
        }
        s.ge.push_back(std::move(c));
    }
    return s;
}

LpReport lp_feasibility(const LpProblem& p, std::optional<std::pair<unsigned, unsigned>> dims)
{
    LpReport rep;
    rep.system = build_system(p);
    rep.result = lp::feasibility(rep.system);
    rep.feasible = rep.result.status != lp::Status::Infeasible;
    if (!rep.feasible) rep.certificate_checked = lp::check_infeasibility(rep.system, rep.result.certificate);
    else
        rep.certificate_checked = lp::check_point(rep.system, rep.result.x);

    const auto& names = rep.system.names;
    const auto yit = std::find(names.begin(), names.end(), "y");
    if (yit != names.end()) {
        std::vector<std::size_t> pref;
        for (std::size_t j = 0; j < names.size(); ++j)
            if (names[j][0] == 'A') pref.push_back(j);
        rep.solved = lp::solve_for(rep.system, pref);
        const std::size_t yi = std::size_t(yit - names.begin());
        const bool y_free = std::find(rep.solved->free.begin(), rep.solved->free.end(), yi) != rep.solved->free.end();
        if (y_free && rep.solved->free.size() <= 3) {
            try {
                rep.projection = lp::project(rep.system, *rep.solved, yi);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::BudgetExceeded) throw;
            }
        }
    }

    if (dims) {
        const auto [klo, khi] = *dims;
        for (unsigned k = klo; k <= khi; ++k) {
            KSolution ks;
            ks.k = k;
            const lp::System s = build_system(p, k);
            ks.feasible = lp::feasibility(s).status != lp::Status::Infeasible;
            if (ks.feasible) {
                ks.unique = true;
                for (std::size_t j = 0; j < s.nvars(); ++j) {
                    std::vector<Rational> obj(s.nvars(), 0);
                    obj[j] = 1;
                    const auto lo = lp::minimize(s, obj);
                    obj[j] = -1;
                    const auto hi = lp::minimize(s, obj);
                    ks.lo.push_back(lo.value);
                    if (hi.status == lp::Status::Optimal) {
                        ks.hi.push_back(-hi.value);
                        if (-hi.value != lo.value) ks.unique = false;
                    } else {
                        ks.hi.push_back(-1);
                        ks.unique = false;
                    }
                }
            }
            rep.per_k.push_back(std::move(ks));
        }
    }
    return rep;
}

}  // namespace macwlp
