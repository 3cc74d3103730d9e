#include "spreadlab/data.hpp"
#include "spreadlab/divset.hpp"
#include "spreadlab/macwlp.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace macwlp {

namespace {

BigInt pow_big(std::uint64_t q, unsigned e) { return gfcore::ipow(BigInt(q), e); }

constexpr std::uint64_t kSemigroupCap = 1 << 16;
constexpr std::uint64_t kLemmaClosureCap = 2048;
constexpr std::size_t kCandidateCap = 4096;

struct Gen {
    std::uint64_t value = 0;
    std::string label;
    bool cited = false;
};

constexpr int kUnreached = -1;
constexpr int kZero = -2;
constexpr int kLemma = -3;

struct Semigroup {
    std::uint64_t limit = 0;
    std::vector<Gen> gens;
    std::vector<int> con;  // generator used last, constructive generators only
    std::vector<int> any;  // cited generators and the r = 1 lemma allowed
    std::vector<std::uint64_t> lemma_base;  // for kLemma entries: the q-divisible set it grows from
};

std::mutex g_mutex;
std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const Semigroup>> g_semigroups;
std::map<std::tuple<std::uint64_t, unsigned, BigInt>, Verdict> g_verdicts;

struct AnalyticEntry {
    bool excluded = false;
    std::string reason;
    unsigned child_level = 0;
    std::vector<BigInt> children;
};
std::map<std::tuple<std::uint64_t, unsigned, BigInt>, AnalyticEntry> g_analytic;

std::vector<Gen> generators(std::uint64_t q, unsigned r, std::uint64_t limit)
{
    std::vector<Gen> g;
    auto add = [&](const BigInt& v, std::string label, bool cited = false) {
        if (v > 0 && v <= limit) g.push_back({std::uint64_t(v), std::move(label), cited});
    };
    const BigInt Q = q;
    const std::string rs = std::to_string(r);
    add(gfcore::gauss1(long(r) + 1, Q), "(" + std::to_string(r + 1) + ")-space");
    add(pow_big(q, r + 1), "affine " + std::to_string(r + 1) + "-space");
    const BigInt g2r = gfcore::gauss1(long(2 * r), Q);
    const BigInt step1 = pow_big(q, r + 1) - pow_big(q, r) - gfcore::gauss1(long(r), Q);
    for (std::uint64_t i = 0; i <= gfcore::ipow_u64(q, r) + 1 && g2r + step1 * i <= limit; ++i)
        add(g2r + step1 * i, "construction1(q=" + std::to_string(q) + ", r=" + rs + ", i=" + std::to_string(i) + ")");
    const BigInt step4 = pow_big(q, r + 1) - gfcore::gauss1(long(r) + 1, Q);
    const BigInt bmax = pow_big(q, r - 1) - 1;
    for (unsigned m = 1; m <= r; ++m) {
        const BigInt amax = gfcore::gauss1(long(m), Q);
        for (BigInt a = 1; a <= amax; ++a) {
            const BigInt base = g2r + a * step4;
            if (base > limit) break;
            for (BigInt b = 0; b <= a * bmax; ++b) {
                const BigInt v = base + b * pow_big(q, r + 1);
                if (v > limit) break;
                add(v, "construction4(q=" + std::to_string(q) + ", r=" + rs + ", m=" + std::to_string(m) +
                           ", a=" + a.str() + ", sum b=" + b.str() + ")");
            }
        }
    }
    // Cones over smaller levels only reach sizes [r+1 1]_q + t q^(r+1), which the two spaces above cover.
    if (r == 1) add(Q * Q + 1, "elliptic quadric in PG(3," + std::to_string(q) + ")");
    if (q == 3 && r == 2) add(56, "Hill cap (matrices/hill_cap.txt)");
    // The quadric over F_{q^2}, reduced to F_q, is q^3-divisible.
    if (r == 3 && gfcore::is_prime(q))
        add((Q * Q * Q * Q + 1) * (Q + 1), "field reduction of the elliptic quadric in PG(3," +
                                               std::to_string(q * q) + ")");
    for (const auto& c : dataset::cited_status())
        if (c.q == q && c.r == r && c.kind == dataset::CitedKind::Exists) add(c.n, "cited: " + c.citation, true);
    std::sort(g.begin(), g.end(), [](const Gen& a, const Gen& b) { return a.value < b.value; });
    return g;
}

std::shared_ptr<Semigroup> build_semigroup(std::uint64_t q, unsigned r, std::uint64_t limit)
{
    auto sg = std::make_shared<Semigroup>();
    sg->limit = limit;
    sg->gens = generators(q, r, limit);
    sg->con.assign(limit + 1, kUnreached);
    sg->any.assign(limit + 1, kUnreached);
    sg->lemma_base.assign(limit + 1, 0);
    sg->con[0] = sg->any[0] = kZero;
    for (std::uint64_t n = 1; n <= limit; ++n)
        for (std::size_t i = 0; i < sg->gens.size() && sg->gens[i].value <= n; ++i) {
            const std::uint64_t rest = n - sg->gens[i].value;
            if (!sg->gens[i].cited && sg->con[n] == kUnreached && sg->con[rest] != kUnreached) sg->con[n] = int(i);
            if (sg->any[n] == kUnreached && sg->any[rest] != kUnreached) sg->any[n] = int(i);
        }
    for (std::uint64_t n = 1; n <= limit; ++n)
        if (sg->any[n] == kUnreached && sg->con[n] != kUnreached) sg->any[n] = sg->con[n];
    if (r == 1) {
        // Cited growth result: a q-divisible n-set yields one of n + i(q^2 - q - 1) points for 0 <= i <= n.
        const std::uint64_t stepl = q * q - q - 1, cap = std::min(limit, kLemmaClosureCap);
        for (std::uint64_t n = 1; n <= cap; ++n) {
            if (sg->any[n] != kUnreached) continue;
            for (std::uint64_t a = 1; a < n && sg->any[n] == kUnreached; ++a) {
                const bool sum = sg->any[a] != kUnreached && sg->any[n - a] != kUnreached;
                const bool grow = (n - a) % stepl == 0 && (n - a) / stepl <= a && sg->any[a] != kUnreached;
                if (sum || grow) {
                    sg->any[n] = kLemma;
                    sg->lemma_base[n] = a;
                }
            }
        }
    }
    return sg;
}

std::shared_ptr<const Semigroup> semigroup(std::uint64_t q, unsigned r, std::uint64_t n)
{
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_semigroups.find({q, r});
        if (it != g_semigroups.end() && it->second->limit >= n) return it->second;
    }
    std::uint64_t limit = 512;
    while (limit < n) limit *= 2;
    auto sg = build_semigroup(q, r, std::min(limit, kSemigroupCap));
    std::lock_guard<std::mutex> lock(g_mutex);
    auto& slot = g_semigroups[{q, r}];
    if (!slot || slot->limit < sg->limit) slot = sg;
    return slot;
}

std::vector<std::string> decomposition(const Semigroup& sg, std::uint64_t n, bool any)
{
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> parts;  // label -> (value, count)
    std::vector<std::string> lemma;
    const auto& via = any ? sg.any : sg.con;
    while (n > 0) {
        const int g = via[n];
        if (g == kLemma) {
            lemma.push_back(std::to_string(n) + " from " + std::to_string(sg.lemma_base[n]) +
                            " by the cited growth result for q-divisible sets (sizes n + i(q^2-q-1), 0 <= i <= n)");
            break;
        }
        if (g < 0) break;
        auto& p = parts[sg.gens[std::size_t(g)].label];
        p.first = sg.gens[std::size_t(g)].value;
        p.second += 1;
        n -= sg.gens[std::size_t(g)].value;
    }
    std::vector<std::string> out;
    for (const auto& [label, vc] : parts)
        out.push_back(std::to_string(vc.second) + " x " + std::to_string(vc.first) + " points: " + label);
    out.insert(out.end(), lemma.begin(), lemma.end());
    return out;
}

Verdict make(Existence e, Stage s, std::vector<std::string> cert)
{
    return Verdict{e, s, std::move(cert)};
}

std::string join(const std::vector<BigInt>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s;
}

// Candidate intersection sizes from iterated averaging at depth j, or empty when 0 is among them.
std::optional<std::vector<BigInt>> averaging_candidates(const AverageBound& ab)
{
    std::vector<BigInt> c;
    if (ab.bound < 0) return c;
    if (ab.residue == 0) return std::nullopt;
    if ((ab.bound - ab.residue) / ab.modulus + 1 > BigInt(kCandidateCap)) return std::nullopt;
    for (BigInt x = ab.residue; x <= ab.bound; x += ab.modulus) c.push_back(x);
    return c;
}

Verdict compute(std::uint64_t q, unsigned r, const BigInt& n)
{
    if (n < 0) return make(Existence::Excluded, Stage::Trivial, {"negative cardinality"});
    if (n == 0) return make(Existence::Exists, Stage::Trivial, {"the empty set"});
    if (r == 0) return make(Existence::Exists, Stage::Trivial, {"every set is 1-divisible"});
    const BigInt delta = pow_big(q, r);

    if (auto rep = divset::representable(q, r, n))
        return make(Existence::Exists, Stage::Constructive,
                    {n.str() + " = " + rep->a.str() + " x [" + std::to_string(r + 1) + " 1]_" + std::to_string(q) +
                     " + " + rep->b.str() + " x " + std::to_string(q) + "^" + std::to_string(r + 1),
                     "disjoint union of (" + std::to_string(r + 1) + ")-spaces and affine " + std::to_string(r + 1) +
                         "-spaces"});
    const bool small = n <= BigInt(kSemigroupCap);
    std::shared_ptr<const Semigroup> sg;
    if (small) {
        sg = semigroup(q, r, std::uint64_t(n));
        if (sg->con[std::size_t(n)] != kUnreached)
            return make(Existence::Exists, Stage::Constructive, decomposition(*sg, std::uint64_t(n), false));
    }
    if (n <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
        if (auto c = dataset::cited(q, r, std::uint64_t(n))) {
            if (c->kind == dataset::CitedKind::Exists)
                return make(Existence::ExistsCited, Stage::Cited, {"cited: " + c->citation});
            return make(Existence::DecidedCited, Stage::Cited, {"cited: " + c->citation});
        }
    }
    if (small && sg->any[std::size_t(n)] != kUnreached)
        return make(Existence::ExistsCited, Stage::Cited, decomposition(*sg, std::uint64_t(n), true));

    if (auto why = exclusion_interval(q, r, n)) return make(Existence::Excluded, Stage::Interval, {*why});

    if (auto t = tau_exclude(q, n, delta))
        return make(Existence::Excluded, Stage::Tau,
                    {"tau_" + std::to_string(q) + "(" + n.str() + ", " + delta.str() + ", " + t->m.str() +
                     ") = " + t->value.str() + " < 0"});

    // Averaging: hyperplane multiplicities n' = n mod delta, n' <= n - delta, each admissible one level down.
    std::vector<BigInt> admissible;
    for (BigInt np = n % delta; np <= n - delta; np += delta)
        if (r == 1 || existence_status(q, r - 1, np).status != Existence::Excluded) admissible.push_back(np);
    if (admissible.empty())
        return make(Existence::Excluded, Stage::Average, {"no hyperplane multiplicity is admissible"});
    if (average_exclude(q, n, admissible.front()))
        return make(Existence::Excluded, Stage::Average,
                    {"hyperplane multiplicities lie in {" + join(admissible) + "}", "all are at least n/q, but the average over hyperplanes forces one below n/q"});
    {
        const BigInt mod = pow_big(q, r + 1);
        const BigInt a = n / mod, b = n % mod, y = default_y(q, r, b);
        for (unsigned j = max_depth(q, r, y); j >= 1; --j) {
            const AverageBound ab = iterated_average(q, r, a, b, y, j);
            if (ab.level == 0) continue;
            const auto cand = averaging_candidates(ab);
            if (!cand) continue;
            bool all = true;
            for (const auto& c : *cand)
                if (existence_status(q, ab.level, c).status != Existence::Excluded) {
                    all = false;
                    break;
                }
            if (all)
                return make(Existence::Excluded, Stage::Average,
                            {"iterated averaging with y = " + y.str() + ", j = " + std::to_string(j) +
                                 ": some codimension-" + std::to_string(j) + " subspace meets the set in one of {" +
                                 join(*cand) + "} points",
                             "none of these is q^" + std::to_string(ab.level) + "-divisible"});
        }
    }

    {
        const LpProblem p = default_problem(q, r, n);
        const LpReport rep = lp_feasibility(p);
        if (!rep.feasible && rep.certificate_checked) {
            std::vector<std::string> cert{"weights {" + join(p.weights) + "}"};
            if (rep.projection && rep.projection->contradiction) {
                const auto& pr = *rep.projection;
                if (pr.upper) cert.push_back("y <= " + gfcore::to_string(pr.upper->value));
                if (pr.lower) cert.push_back("y >= " + gfcore::to_string(pr.lower->value));
            }
            std::ostringstream os;
            os << "Farkas multipliers on the identities:";
            for (const auto& u : rep.result.certificate.eq) os << ' ' << gfcore::to_string(u);
            cert.push_back(os.str());
            return make(Existence::Excluded, Stage::Lp, cert);
        }
    }

    if (auto t = cubic_search(q, n, delta))
        return make(Existence::Excluded, Stage::Cubic, {"cubic test at t = " + t->str()});

    return make(Existence::Undecided, Stage::None, {});
}

bool analytic(std::uint64_t q, unsigned r, const BigInt& n);

AnalyticEntry analytic_entry(std::uint64_t q, unsigned r, const BigInt& n)
{
    AnalyticEntry e;
    if (n < 0) return {true, "negative cardinality", 0, {}};
    if (n == 0 || r == 0) return e;
    const BigInt delta = pow_big(q, r);
    if (auto t = tau_exclude(q, n, delta))
        return {true, "tau negative at m = " + t->m.str(), 0, {}};
    if (auto why = exclusion_interval(q, r, n)) return {true, *why, 0, {}};
    if (auto t = cubic_search(q, n, delta)) return {true, "cubic test at t = " + t->str(), 0, {}};
    const BigInt mod = pow_big(q, r + 1);
    const BigInt a = n / mod, b = n % mod, y = default_y(q, r, b);
    for (unsigned j = max_depth(q, r, y); j >= 1; --j) {
        const AverageBound ab = iterated_average(q, r, a, b, y, j);
        if (ab.level == 0) continue;
        const auto cand = averaging_candidates(ab);
        if (!cand) continue;
        bool all = true;
        for (const auto& c : *cand)
            if (!analytic(q, ab.level, c)) {
                all = false;
                break;
            }
        if (all)
            return {true, "iterated averaging, j = " + std::to_string(j) + ", y = " + y.str(), ab.level, *cand};
    }
    return e;
}

bool analytic(std::uint64_t q, unsigned r, const BigInt& n)
{
    const auto key = std::make_tuple(q, r, n);
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_analytic.find(key);
        if (it != g_analytic.end()) return it->second.excluded;
    }
    AnalyticEntry e = analytic_entry(q, r, n);
    const bool ex = e.excluded;
    std::lock_guard<std::mutex> lock(g_mutex);
    g_analytic.emplace(key, std::move(e));
    return ex;
}

void trace_into(std::uint64_t q, unsigned r, const BigInt& n, std::vector<std::string>& out, int depth)
{
    AnalyticEntry e;
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_analytic.find(std::make_tuple(q, r, n));
        if (it == g_analytic.end()) return;
        e = it->second;
    }
    std::string line(std::size_t(depth) * 2, ' ');
    line += n.str() + " points, q^" + std::to_string(r) + "-divisible: " + (e.excluded ? e.reason : "not excluded");
    if (!e.children.empty()) line += "; candidates {" + join(e.children) + "}";
    out.push_back(std::move(line));
    for (const auto& c : e.children) trace_into(q, e.child_level, c, out, depth + 1);
}

}  // namespace

const char* to_string(Existence e)
{
    switch (e) {
    case Existence::Exists: return "Exists";
    case Existence::ExistsCited: return "Exists(cited)";
    case Existence::DecidedCited: return "Decided(cited)";
    case Existence::Excluded: return "Excluded";
    case Existence::Undecided: return "Undecided";
    }
    return "?";
}

const char* to_string(Stage s)
{
    switch (s) {
    case Stage::Trivial: return "trivial";
    case Stage::Constructive: return "constructive";
    case Stage::Cited: return "cited";
    case Stage::Interval: return "interval";
    case Stage::Tau: return "tau";
    case Stage::Average: return "average";
    case Stage::Lp: return "lp";
    case Stage::Cubic: return "cubic";
    case Stage::None: return "none";
    }
    return "?";
}

Verdict existence_status(std::uint64_t q, unsigned r, const BigInt& n)
{
    if (!gfcore::prime_power(q)) throw gfcore::Error(gfcore::ErrorKind::NotAPrimePower, std::to_string(q) + " is not a prime power");
    const auto key = std::make_tuple(q, r, n);
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_verdicts.find(key);
        if (it != g_verdicts.end()) return it->second;
    }
    Verdict v = compute(q, r, n);
    std::lock_guard<std::mutex> lock(g_mutex);
    g_verdicts.emplace(key, v);
    return v;
}

bool excluded_analytic(std::uint64_t q, unsigned r, const BigInt& n, std::vector<std::string>* trace)
{
    const bool ex = analytic(q, r, n);
    if (trace) trace_into(q, r, n, *trace, 0);
    return ex;
}

void clear_caches()
{
    std::lock_guard<std::mutex> lock(g_mutex);
    g_semigroups.clear();
    g_verdicts.clear();
    g_analytic.clear();
}

}  // namespace macwlp
