#include "spreadlab/lp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace lp {

using gfcore::BigInt;
using gfcore::Error;
using gfcore::ErrorKind;

namespace {

void check_shape(const System& s)
{
    for (const auto* rows : {&s.eq, &s.ge})
        for (const auto& c : *rows)
            if (c.coef.size() != s.nvars())
                throw Error(ErrorKind::ParameterMismatch, "constraint `" + c.label + "` has the wrong width");
}

struct Tableau {
    std::size_t m = 0;
    std::size_t cols = 0;  // structural + slack + artificial, rhs stored separately
    std::vector<std::vector<Rational>> t;
    std::vector<Rational> rhs;
    std::vector<std::size_t> basis;

    void pivot(std::size_t r, std::size_t c)
    {
        const Rational p = t[r][c];
        for (auto& x : t[r]) x /= p;
        rhs[r] /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || t[i][c] == 0) continue;
            const Rational f = t[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                if (t[r][j] != 0) t[i][j] -= f * t[r][j];
            rhs[i] -= f * rhs[r];
        }
        basis[r] = c;
    }

    Rational reduced_cost(const std::vector<Rational>& cost, std::size_t j) const
    {
        Rational rc = cost[j];
        for (std::size_t i = 0; i < m; ++i)
            if (cost[basis[i]] != 0 && t[i][j] != 0) rc -= cost[basis[i]] * t[i][j];
        return rc;
    }

    // Bland's rule. Returns false when unbounded.
    bool run(const std::vector<Rational>& cost, const std::vector<bool>& allowed)
    {
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols && enter == cols; ++j)
                if (allowed[j] && reduced_cost(cost, j) < 0) enter = j;
            if (enter == cols) return true;
            std::size_t leave = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                const Rational ratio = rhs[i] / t[i][enter];
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return false;
            pivot(leave, enter);
        }
    }
};

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

Result minimize(const System& s, const std::vector<Rational>& objective)
{
    check_shape(s);
    const std::size_t n = s.nvars(), me = s.eq.size(), mg = s.ge.size(), m = me + mg;
    if (objective.size() != n) throw Error(ErrorKind::ParameterMismatch, "objective has the wrong width");
    const std::size_t art0 = n + mg;
    Tableau tb;
    tb.m = m;
    tb.cols = art0 + m;
    tb.t.assign(m, std::vector<Rational>(tb.cols, 0));
    tb.rhs.assign(m, 0);
    tb.basis.assign(m, 0);
    std::vector<int> sign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        const Constraint& c = i < me ? s.eq[i] : s.ge[i - me];
        sign[i] = c.rhs < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = c.coef[j] * sign[i];
        if (i >= me) tb.t[i][n + (i - me)] = -sign[i];
        tb.t[i][art0 + i] = 1;
        tb.rhs[i] = c.rhs * sign[i];
        tb.basis[i] = art0 + i;
    }

    std::vector<Rational> phase1(tb.cols, 0);
    for (std::size_t i = 0; i < m; ++i) phase1[art0 + i] = 1;
    std::vector<bool> allowed(tb.cols, true);
    tb.run(phase1, allowed);

    Rational infeas = 0;
    for (std::size_t i = 0; i < m; ++i) infeas += phase1[tb.basis[i]] * tb.rhs[i];

    Result res;
    if (infeas > 0) {
        res.status = Status::Infeasible;
        res.certificate.eq.assign(me, 0);
        res.certificate.ge.assign(mg, 0);
        for (std::size_t k = 0; k < m; ++k) {
            Rational u = 0;
            for (std::size_t r = 0; r < m; ++r) u += phase1[tb.basis[r]] * tb.t[r][art0 + k];
            u *= sign[k];
            if (k < me)
                res.certificate.eq[k] = u;
            else
                res.certificate.ge[k - me] = u;
        }
        return res;
    }

    // Drive zero-level artificials out of the basis; rows with no other support are redundant.
    for (std::size_t r = 0; r < m; ++r) {
        if (tb.basis[r] < art0) continue;
        for (std::size_t j = 0; j < art0; ++j)
            if (tb.t[r][j] != 0) {
                tb.pivot(r, j);
                break;
            }
    }
    for (std::size_t j = art0; j < tb.cols; ++j) allowed[j] = false;
    std::vector<Rational> cost(tb.cols, 0);
    for (std::size_t j = 0; j < n; ++j) cost[j] = objective[j];
    if (!tb.run(cost, allowed)) {
        res.status = Status::Unbounded;
        return res;
    }
    res.status = Status::Optimal;
    res.x.assign(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (tb.basis[i] < n) res.x[tb.basis[i]] = tb.rhs[i];
    res.value = dot(objective, res.x);
    return res;
}

Result feasibility(const System& s) { return minimize(s, std::vector<Rational>(s.nvars(), 0)); }

bool check_infeasibility(const System& s, const Farkas& cert)
{
    if (cert.eq.size() != s.eq.size() || cert.ge.size() != s.ge.size()) return false;
    for (const auto& l : cert.ge)
        if (l < 0) return false;
    Rational rhs = 0;
    for (std::size_t j = 0; j < s.nvars(); ++j) {
        Rational c = 0;
        for (std::size_t i = 0; i < s.eq.size(); ++i) c += cert.eq[i] * s.eq[i].coef[j];
        for (std::size_t i = 0; i < s.ge.size(); ++i) c += cert.ge[i] * s.ge[i].coef[j];
        if (c > 0) return false;
    }
    for (std::size_t i = 0; i < s.eq.size(); ++i) rhs += cert.eq[i] * s.eq[i].rhs;
    for (std::size_t i = 0; i < s.ge.size(); ++i) rhs += cert.ge[i] * s.ge[i].rhs;
    return rhs > 0;
}

bool check_point(const System& s, const std::vector<Rational>& z)
{
    if (z.size() != s.nvars()) return false;
    for (const auto& x : z)
        if (x < 0) return false;
    for (const auto& c : s.eq)
        if (dot(c.coef, z) != c.rhs) return false;
    for (const auto& c : s.ge)
        if (dot(c.coef, z) < c.rhs) return false;
    return true;
}

SolvedForm solve_for(const System& s, const std::vector<std::size_t>& preferred)
{
    check_shape(s);
    const std::size_t n = s.nvars();
    std::vector<std::size_t> order;
    std::vector<bool> seen(n, false);
    for (std::size_t j : preferred) {
        if (j >= n) throw Error(ErrorKind::RangeError, "preferred variable out of range");
        if (!seen[j]) order.push_back(j), seen[j] = true;
    }
    for (std::size_t j = 0; j < n; ++j)
        if (!seen[j]) order.push_back(j);

    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (const auto& c : s.eq) a.push_back(c.coef), b.push_back(c.rhs);
    const std::size_t m = a.size();
    std::vector<bool> used(m, false);
    std::vector<std::pair<std::size_t, std::size_t>> piv;  // (row, column)
    for (std::size_t col : order) {
        std::size_t r = m;
        for (std::size_t i = 0; i < m && r == m; ++i)
            if (!used[i] && a[i][col] != 0) r = i;
        if (r == m) continue;
        used[r] = true;
        const Rational p = a[r][col];
        for (auto& x : a[r]) x /= p;
        b[r] /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        piv.emplace_back(r, col);
    }
    SolvedForm out;
    for (std::size_t i = 0; i < m; ++i)
        if (!used[i] && b[i] != 0) out.consistent = false;
    std::set<std::size_t> basic;
    for (auto [r, c] : piv) basic.insert(c);
    for (std::size_t j = 0; j < n; ++j)
        if (!basic.count(j)) out.free.push_back(j);
    for (auto [r, c] : piv) {
        out.basic.push_back(c);
        out.constant.push_back(b[r]);
        std::vector<Rational> row;
        for (std::size_t f : out.free) row.push_back(-a[r][f]);
        out.coef.push_back(std::move(row));
    }
    return out;
}

namespace {

struct Ineq {
    Rational constant;
    std::vector<Rational> coef;  // over form.free
    std::map<std::size_t, Rational> combo;

    void scale(const Rational& f)
    {
        constant *= f;
        for (auto& c : coef) c *= f;
        for (auto& [k, v] : combo) v *= f;
    }
};

// Positive rescaling so the leading nonzero entry has absolute value 1; returns a dedup key.
std::string normalize(Ineq& r)
{
    Rational lead = 0;
    for (const auto& c : r.coef)
        if (c != 0) {
            lead = c;
            break;
        }
    if (lead == 0) lead = r.constant;
    if (lead != 0) r.scale(Rational(1) / abs(lead));
    std::ostringstream os;
    os << r.constant;
    for (const auto& c : r.coef) os << ',' << c;
    return os.str();
}

DerivedBound scaled_bound(const Ineq& r, std::size_t keep_pos, bool upper)
{
    const Rational c = r.coef[keep_pos];
    DerivedBound b;
    b.upper = upper;
    b.value = -r.constant / c;
    const Rational f = Rational(1) / abs(c);
    for (const auto& [k, v] : r.combo)
        if (v != 0) b.combination.emplace_back(k, v * f);
    return b;
}

}  // namespace

Projection project(const System& s, const SolvedForm& form, std::size_t keep, std::size_t max_rows)
{
    check_shape(s);
    const auto kp = std::find(form.free.begin(), form.free.end(), keep);
    if (kp == form.free.end()) throw Error(ErrorKind::ParameterMismatch, "projection variable must be free");
    const std::size_t keep_pos = std::size_t(kp - form.free.begin());
    const std::size_t nf = form.free.size();

    Projection out;
    out.variable = keep;
    std::vector<Ineq> rows;
    auto add_source = [&](Ineq r, std::string label) {
        r.combo[out.sources.size()] = 1;
        out.sources.push_back(std::move(label));
        rows.push_back(std::move(r));
    };
    for (std::size_t i = 0; i < form.basic.size(); ++i)
        add_source({form.constant[i], form.coef[i], {}}, s.names[form.basic[i]] + " >= 0");
    for (std::size_t j = 0; j < nf; ++j) {
        Ineq r{0, std::vector<Rational>(nf, 0), {}};
        r.coef[j] = 1;
        add_source(std::move(r), s.names[form.free[j]] + " >= 0");
    }
    for (const auto& g : s.ge) {
        Ineq r{-g.rhs, std::vector<Rational>(nf, 0), {}};
        for (std::size_t i = 0; i < form.basic.size(); ++i) {
            const Rational c = g.coef[form.basic[i]];
            if (c == 0) continue;
            r.constant += c * form.constant[i];
            for (std::size_t j = 0; j < nf; ++j) r.coef[j] += c * form.coef[i][j];
        }
        for (std::size_t j = 0; j < nf; ++j) r.coef[j] += g.coef[form.free[j]];
        add_source(std::move(r), g.label.empty() ? "constraint" : g.label);
    }
    if (!form.consistent) {
        out.feasible = false;
        return out;
    }

    for (std::size_t e = 0; e < nf; ++e) {
        if (e == keep_pos) continue;
        std::vector<Ineq> pos, neg, next;
        for (auto& r : rows) {
            if (r.coef[e] > 0)
                pos.push_back(std::move(r));
            else if (r.coef[e] < 0)
                neg.push_back(std::move(r));
            else
                next.push_back(std::move(r));
        }
        for (const auto& p : pos)
            for (const auto& nn : neg) {
                Ineq a = p, b = nn;
                a.scale(-nn.coef[e]);
                b.scale(p.coef[e]);
                a.constant += b.constant;
                for (std::size_t j = 0; j < nf; ++j) a.coef[j] += b.coef[j];
                a.coef[e] = 0;
                for (const auto& [k, v] : b.combo) a.combo[k] += v;
                next.push_back(std::move(a));
            }
        std::map<std::string, std::size_t> seen;
        rows.clear();
        for (auto& r : next) {
            const std::string key = normalize(r);
            if (seen.emplace(key, rows.size()).second) rows.push_back(std::move(r));
        }
        if (rows.size() > max_rows)
            throw Error(ErrorKind::BudgetExceeded, "Fourier-Motzkin produced " + std::to_string(rows.size()) + " rows");
    }

    for (const auto& r : rows) {
        const Rational c = r.coef[keep_pos];
        if (c == 0) {
            if (r.constant < 0 && !out.contradiction) {
                DerivedBound b;
                b.value = r.constant;
                for (const auto& [k, v] : r.combo)
                    if (v != 0) b.combination.emplace_back(k, v);
                out.contradiction = std::move(b);
            }
        } else if (c > 0) {
            DerivedBound b = scaled_bound(r, keep_pos, false);
            if (!out.lower || b.value > out.lower->value) out.lower = std::move(b);
        } else {
            DerivedBound b = scaled_bound(r, keep_pos, true);
            if (!out.upper || b.value < out.upper->value) out.upper = std::move(b);
        }
    }
    if (!out.contradiction && out.lower && out.upper && out.lower->value > out.upper->value) {
        DerivedBound b;
        b.value = out.upper->value - out.lower->value;
        std::map<std::size_t, Rational> sum;
        for (const auto& [k, v] : out.lower->combination) sum[k] += v;
        for (const auto& [k, v] : out.upper->combination) sum[k] += v;
        for (const auto& [k, v] : sum) b.combination.emplace_back(k, v);
        out.contradiction = std::move(b);
    }
    out.feasible = !out.contradiction;
    return out;
}

std::string format_linear(const std::vector<std::string>& names, const std::vector<std::size_t>& vars,
                          const Rational& constant, const std::vector<Rational>& coef)
{
    std::ostringstream os;
    os << gfcore::to_string(constant);
    for (std::size_t j = 0; j < vars.size(); ++j) {
        if (coef[j] == 0) continue;
        const Rational c = coef[j];
        os << (c < 0 ? " - " : " + ");
        const Rational a = abs(c);
        const BigInt num = numerator(a), den = denominator(a);
        if (num != 1) os << num;
        os << names[vars[j]];
        if (den != 1) os << '/' << den;
    }
    return os.str();
}

}  // namespace lp
