// One line per acceptance criterion; exit status is the number of failures.
#include "oracles.hpp"

#include "spreadlab/boundsengine.hpp"
#include "spreadlab/data.hpp"
#include "spreadlab/divset.hpp"
#include "spreadlab/macwlp.hpp"
#include "spreadlab/spreadlab.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

using gfcore::BigInt;
using gfcore::Rational;

namespace {

struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what)
    {
        if (!ok) failures.push_back(what);
    }
    template <class A, class B>
    void equal(const A& got, const B& want, const std::string& what)
    {
        if (!(got == want)) {
            std::ostringstream s;
            s << what << ": got " << got << ", want " << want;
            failures.push_back(s.str());
        }
    }
};

bool chain_has(const boundsengine::BoundReport& rep, const std::string& needle)
{
    for (const auto& line : rep.chain)
        if (line.find(needle) != std::string::npos) return true;
    return false;
}

std::vector<oracle::Vec> to_vecs(const projgeom::PointSet& c)
{
    std::vector<oracle::Vec> out;
    for (const auto& [p, m] : c.items())
        for (std::uint64_t i = 0; i < m; ++i) out.emplace_back(p.x.begin(), p.x.end());
    return out;
}

std::vector<oracle::Vec> rows_of(const gfcore::Matrix& g)
{
    std::vector<oracle::Vec> out(g.rows, oracle::Vec(g.cols));
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < g.cols; ++j) out[i][j] = unsigned(g(i, j));
    return out;
}

void exact_plane_spreads(Check& c)
{
    for (unsigned m = 2; m <= 4; ++m) {
        const BigInt p = gfcore::ipow(BigInt(2), 3 * m);
        const BigInt want[3] = {(p - 1) / 7, (2 * p - 9) / 7, (4 * p - 18) / 7};
        for (unsigned r = 0; r < 3; ++r) {
            const unsigned v = 3 * m + r;
            const auto rep = boundsengine::best_bounds(2, v, 3);
            c.equal(rep.lower, want[r], "lower A_2(" + std::to_string(v) + ",6;3)");
            c.equal(rep.upper, want[r], "upper A_2(" + std::to_string(v) + ",6;3)");
        }
    }
}

void four_spreads(Check& c)
{
    for (unsigned m = 2; m <= 3; ++m) {
        const BigInt p = gfcore::ipow(BigInt(2), 4 * m);
        const BigInt exact[3] = {(p - 1) / 15, (2 * p - 17) / 15, (4 * p - 49) / 15};
        for (unsigned r = 0; r < 3; ++r) {
            const unsigned v = 4 * m + r;
            const auto rep = boundsengine::best_bounds(2, v, 4);
            c.equal(rep.lower, exact[r], "lower A_2(" + std::to_string(v) + ",8;4)");
            c.equal(rep.upper, exact[r], "upper A_2(" + std::to_string(v) + ",8;4)");
        }
        const unsigned v = 4 * m + 3;
        const auto rep = boundsengine::best_bounds(2, v, 4);
        c.equal(rep.lower, (8 * p - 113) / 15, "lower A_2(" + std::to_string(v) + ",8;4)");
        c.equal(rep.upper, (8 * p - 53) / 15 - 1, "upper A_2(" + std::to_string(v) + ",8;4)");
        c.equal(boundsengine::hole_count(2, v, 4, rep.upper + 1), 52, "holes one above the upper bound");
        c.expect(chain_has(rep, "52 holes, q^3-divisible: Excluded (lp)"), "chain lacks the n = 52 LP exclusion");
    }
    const auto r11 = boundsengine::best_bounds(2, 11, 4);
    c.equal(r11.lower, 129, "lower A_2(11,8;4)");
    c.equal(r11.upper, 132, "upper A_2(11,8;4)");
    // Monotonicity: a partial spread in F_2^11 extends to F_2^15 with the same holes.
    const auto s = spreadlab::multicomponent(2, 11, 4);
    const auto e = spreadlab::extend_spread(s);
    c.equal(e.size(), s.size() + 2048, "extended size");
    c.expect(spreadlab::verify_partial_spread(e.members, 4).empty(), "extended spread overlaps");
    c.equal(spreadlab::holes(e).cardinality(), spreadlab::holes(s).cardinality(), "holes after extension");
}

void spot_values(Check& c)
{
    using namespace boundsengine;
    c.equal(drake_freeman(2, 15, 6), 516, "DF(2,15,6)");
    c.equal(drake_freeman(2, 17, 7), 1028, "DF(2,17,7)");
    c.equal(drake_freeman(9, 18, 8), BigInt("3486784442"), "DF(9,18,8)");
    c.equal(main_theorem_2_upper(2, 15, 6), 515, "MT2(2,15,6)");
    c.equal(main_theorem_2_upper(2, 17, 7), 1026, "MT2(2,17,7)");
    c.equal(main_theorem_2_upper(9, 18, 8), BigInt("3486784420"), "MT2(9,18,8)");
    c.equal(main_theorem_2_upper(3, 15, 6), 19695, "MT2(3,15,6)");
    c.equal(main_theorem_1_upper(2, 8, 3), 34, "MT1(2,8,3)");
    c.equal(drake_freeman(3, 8, 3), 248, "DF(3,8,3)");
    c.equal(divisible_holes_upper(3, 8, 3, trivial_upper(3, 8, 3)).upper, 248, "hole chain (3,8,3)");
    c.equal(best_bounds(3, 8, 3).upper, 248, "best upper (3,8,3)");
    const auto r8 = best_bounds(8, 14, 6);
    c.equal(r8.upper, 16777237, "A_8(14,12;6) upper");
    c.expect(chain_has(r8, "iterated averaging"), "(8,14,6) chain lacks iterated averaging");
    c.expect(chain_has(r8, "tau negative at m = 1"), "(8,14,6) chain lacks tau at m = 1");
    c.expect(chain_has(r8, "tau negative at m = 8"), "(8,14,6) chain lacks tau at m = 8");
    c.expect(chain_has(r8, "cubic test at t = 14"), "(8,14,6) chain lacks the cubic test at t = 14");
}

void constructions(Check& c)
{
    const auto s = spreadlab::multicomponent(2, 8, 3);
    c.equal(s.size(), 33, "multicomponent(2,8,3) size");
    c.expect(spreadlab::verify_partial_spread(s.members, 3).empty(), "multicomponent(2,8,3) overlaps");
    const auto h = spreadlab::holes(s);
    c.equal(h.cardinality(), 24, "holes of multicomponent(2,8,3)");
    c.expect(divset::is_divisible(h, 4).kind == divset::DivKind::Strong, "holes not 4-divisible");

    const auto t = spreadlab::multicomponent(2, 5, 2);
    c.equal(t.size(), 9, "multicomponent(2,5,2) size");
    c.expect(spreadlab::verify_partial_spread(t.members, 2).empty(), "multicomponent(2,5,2) overlaps");
    c.equal(spreadlab::holes(t).cardinality(), 4, "holes of multicomponent(2,5,2)");

    const auto f = spreadlab::spread_field_reduction(3, 2, 2);
    c.equal(f.size(), 10, "spread_field_reduction(3,2,2) size");
    c.expect(spreadlab::verify_vsp(f.members, 4).ok, "field reduction lines do not partition PG(3,3)");
    // Members from the F_9 = F_3[x]/(x^2+1) description with basis (1, x).
    using E = std::pair<unsigned, unsigned>;
    auto mul = [](E a, E b) {
        return E{(a.first * b.first + 2 * a.second * b.second) % 3, (a.first * b.second + a.second * b.first) % 3};
    };
    std::vector<E> f9;
    for (unsigned a = 0; a < 3; ++a)
        for (unsigned b = 0; b < 3; ++b) f9.push_back({a, b});
    std::vector<std::pair<E, E>> gens{{{0, 0}, {1, 0}}};
    for (const auto& w : f9) gens.push_back({{1, 0}, w});
    std::set<std::set<oracle::Vec>> want, got;
    for (const auto& [u, w] : gens) {
        std::set<oracle::Vec> member;
        for (const auto& l : f9) {
            const auto a = mul(l, u), b = mul(l, w);
            member.insert({a.first, a.second, b.first, b.second});
        }
        want.insert(member);
    }
    for (const auto& m : f.members) {
        std::vector<oracle::Vec> rows = rows_of(m.canonical());
        got.insert(oracle::span(3, rows, 4));
    }
    c.expect(want.count({{0, 0, 0, 0}, {1, 0, 1, 1}, {2, 0, 2, 2}, {0, 1, 2, 1}, {1, 1, 0, 2}, {2, 1, 1, 0},
                         {0, 2, 1, 2}, {1, 2, 2, 0}, {2, 2, 0, 1}}) == 1,
             "worked member P missing from the rebuilt spread");
    c.expect(got == want, "field reduction members differ from the F_9 description");
}

void existence(Check& c)
{
    using macwlp::Existence;
    using macwlp::Stage;
    for (int n = 1; n <= 100; ++n) {
        const auto s1 = macwlp::existence_status(2, 1, n).status;
        c.expect((s1 == Existence::Excluded) == (n <= 2), "q=2 r=1 n=" + std::to_string(n));
        const auto s2 = macwlp::existence_status(2, 2, n).status;
        const bool e2 = n == 7 || n == 8 || n >= 14;
        c.expect(e2 ? s2 == Existence::Exists : s2 == Existence::Excluded, "q=2 r=2 n=" + std::to_string(n));
    }
    for (int n = 1; n <= 80; ++n) {
        const auto v = macwlp::existence_status(2, 3, n);
        const std::string tag = "q=2 r=3 n=" + std::to_string(n);
        if (n == 49 || n == 50 || n == 74)
            c.expect(v.status == Existence::ExistsCited, tag + " should be Exists(cited)");
        else if (n == 52)
            c.expect(v.status == Existence::Excluded && v.stage == Stage::Lp, tag + " should be Excluded(lp)");
        else if (n >= 53 && n <= 58) {
            const auto w = macwlp::tau_exclude(2, n, 8);
            c.expect(v.status == Existence::Excluded && v.stage == Stage::Tau && w && w->m == 4,
                     tag + " should be Excluded(tau, m = 4)");
        } else if (n == 59)
            c.expect(v.status == Existence::Undecided, tag + " should be Undecided");
        else {
            const bool e = n == 15 || n == 16 || (n >= 30 && n <= 32) || (n >= 45 && n <= 51) || n >= 60;
            c.expect(e ? (v.status == Existence::Exists || v.status == Existence::ExistsCited)
                       : v.status == Existence::Excluded,
                     tag);
        }
    }
    const std::tuple<std::uint64_t, unsigned, std::vector<int>> rows[] = {
        {2, 4, {130, 131, 163, 164, 165, 185, 215, 216, 232, 233, 244, 245, 246, 247}},
        {3, 2, {70, 77, 99, 100, 101, 102, 113, 114, 115, 128}},
        {5, 1, {40}},
    };
    for (const auto& [q, r, open] : rows)
        for (int n = 1; n <= open.back(); ++n) {
            const bool listed = std::find(open.begin(), open.end(), n) != open.end();
            const bool undecided = macwlp::existence_status(q, r, n).status == Existence::Undecided;
            c.expect(listed == undecided, "table row q=" + std::to_string(q) + " r=" + std::to_string(r) +
                                              " n=" + std::to_string(n));
        }
}

void lp_certificates(Check& c)
{
    const auto rep = macwlp::lp_feasibility(macwlp::default_problem(2, 3, 52));
    c.expect(!rep.feasible, "n = 52 should be infeasible");
    c.expect(lp::check_infeasibility(rep.system, rep.result.certificate), "n = 52 certificate does not replay");
    std::vector<std::string> solved;
    if (rep.solved)
        for (std::size_t i = 0; i < rep.solved->basic.size(); ++i)
            solved.push_back(rep.system.names[rep.solved->basic[i]] + " = " +
                             lp::format_linear(rep.system.names, rep.solved->free, rep.solved->constant[i],
                                               rep.solved->coef[i]));
    const std::vector<std::string> want = {"A8 = -4 + x/512 + 7y/64", "A16 = 6 - 3x/512 - 17y/64",
                                           "A24 = -4 + 3x/512 + 397y/64", "A32 = 1 - x/512 + 125y/64"};
    c.expect(solved == want, "n = 52 solved form differs");
    c.expect(rep.projection && rep.projection->upper && rep.projection->upper->value == Rational(384, 17),
             "n = 52 projection lacks y <= 384/17");
    c.expect(rep.projection && rep.projection->lower && rep.projection->lower->value == 96,
             "n = 52 projection lacks y >= 96");

    const auto p17 = macwlp::default_problem(2, 2, 17);
    const auto r17 = macwlp::lp_feasibility(p17, macwlp::k_range(2, 2, 17));
    std::vector<std::string> sols;
    for (const auto& ks : r17.per_k) {
        if (!ks.feasible) continue;
        if (!ks.unique) {
            sols.push_back("k=" + std::to_string(ks.k) + " not unique");
            continue;
        }
        const auto names = macwlp::build_system(p17, ks.k).names;
        std::map<std::string, Rational> at;
        for (std::size_t i = 0; i < names.size(); ++i) at[names[i]] = ks.lo[i];
        std::ostringstream s;
        s << ks.k << ';' << at["A12"] << ',' << at["A8"] << ',' << at["A4"] << ';'
          << at["x"] / gfcore::ipow(BigInt(2), ks.k - 3);
        sols.push_back(s.str());
    }
    const std::vector<std::string> want17 = {"6;12,49,2;6", "7;25,95,7;2", "8;51,187,17;0"};
    c.expect(sols == want17, "n = 17 solutions differ");

    const auto p51 = macwlp::default_problem(2, 3, 51);
    const auto r51 = macwlp::lp_feasibility(p51, macwlp::k_range(2, 3, 51));
    std::vector<unsigned> ks;
    for (const auto& k : r51.per_k)
        if (k.feasible) ks.push_back(k.k);
    c.expect(ks == std::vector<unsigned>{8, 9}, "n = 51 dimensions should be {8, 9}");
    for (const auto& k : r51.per_k) {
        if (k.k != 8) continue;
        const auto names = macwlp::build_system(p51, 8).names;
        std::map<std::string, Rational> at;
        for (std::size_t i = 0; i < names.size(); ++i) at[names[i]] = k.lo[i];
        c.expect(k.unique && at["A8"] == 0 && at["A16"] == 0 && at["A24"] == 204 && at["A32"] == 51,
                 "n = 51, k = 8 enumerator should be 1 + 204X^24 + 51X^32");
    }
}

void matrices(Check& c)
{
    const int spectra[3][3] = {{12, 49, 2}, {25, 95, 7}, {51, 187, 17}};
    for (unsigned i = 0; i < 3; ++i) {
        const std::string name = "matrices/gen17_k" + std::to_string(6 + i) + ".txt";
        const auto g = dataset::matrix(name, 2);
        const auto s = divset::columns_as_points(g);
        c.expect(divset::is_projective_columns(g), name + " not projective");
        c.equal(s.cardinality(), 17, name + " size");
        c.expect(divset::is_divisible(s, 4).kind == divset::DivKind::Strong, name + " not 4-divisible");
        const auto sp = divset::spectrum(s);
        c.equal(sp.dimension, 6 + i, name + " dimension");
        c.expect(sp.a[5] == spectra[i][0] && sp.a[9] == spectra[i][1] && sp.a[13] == spectra[i][2],
                 name + " spectrum");
    }
    const auto hill = divset::columns_as_points(dataset::matrix("matrices/hill_cap.txt", 3));
    c.equal(hill.cardinality(), 56, "Hill cap size");
    c.equal(hill.ambient(), 6, "Hill cap ambient");
    c.expect(divset::is_divisible(hill, 9).kind == divset::DivKind::Strong, "Hill cap not 9-divisible");
    const auto wd = divset::spectrum(hill).weight_distribution();
    BigInt nonzero = 0;
    for (std::size_t w = 1; w < wd.size(); ++w)
        if (w != 36 && w != 45) nonzero += wd[w];
    c.expect(wd[0] == 1 && wd[36] == 616 && wd[45] == 112 && nonzero == 0, "Hill cap weight distribution");
    const auto o = divset::field_reduction_points(divset::ovoid(4), 2);
    c.equal(o.cardinality(), 51, "reduced ovoid size");
    c.expect(divset::is_divisible(o, 8).kind == divset::DivKind::Strong, "reduced ovoid not 8-divisible");
}

void properties(Check& c)
{
    std::mt19937_64 rng(1);
    const auto f2 = gfcore::field_new(2);
    auto random_matrix = [&](const gfcore::FieldPtr& f, std::size_t r, std::size_t cols) {
        gfcore::Matrix m(f, r, cols);
        for (auto& x : m.a) x = gfcore::Elem(rng() % f->q());
        return m;
    };
    for (int it = 0; it < 1000; ++it) {
        const std::size_t k = 1 + rng() % 3, v = k + 1 + rng() % (7 - k);
        const auto b1 = random_matrix(f2, k, v - k), b2 = random_matrix(f2, k, v - k);
        const unsigned rk = oracle::rank(2, rows_of(gfcore::mat_sub(b1, b2)));
        if (projgeom::subspace_distance(projgeom::lift(b1), projgeom::lift(b2)) != int(2 * rk)) {
            c.expect(false, "lifted distance");
            break;
        }
    }
    for (int it = 0; it < 100; ++it) {
        const std::uint64_t q = it % 2 ? 3 : 2;
        const std::size_t v = 2 + rng() % (q == 2 ? 7 : 4);
        const auto f = gfcore::field_new(q);
        const auto pts = projgeom::enumerate_all_points(f, v);
        projgeom::PointSet s(f, v);
        for (std::size_t j = 0, n = 1 + rng() % 30; j < n; ++j) s.add(pts[rng() % pts.size()]);
        const auto sp = divset::spectrum(s);
        c.expect(sp.standard_equations_hold(), "standard equations");
        if (v <= 5) {
            const auto oa = oracle::hyperplane_spectrum(unsigned(q), unsigned(v), to_vecs(s));
            for (std::size_t i = 0; i < oa.size(); ++i) c.expect(sp.a[i] == oa[i], "spectrum vs oracle");
        }
        const auto x = projgeom::canonicalize(random_matrix(f, 1 + rng() % 2, v));
        if (x.dim() > 0)
            c.expect(projgeom::quotient(s, x).cardinality() + projgeom::restrict(s, x).cardinality() ==
                         s.cardinality(),
                     "quotient plus restriction");
    }
    std::vector<divset::DivisibleSet> made;
    for (std::uint64_t i = 0; i <= 5; ++i) made.push_back(divset::construction1(2, 2, i));
    made.push_back(divset::sunflower_union(3, {3, 3, 3}, 1, divset::SunflowerVariant::QPetals));
    made.push_back(divset::sunflower_union(2, {3, 3, 3}, 1, divset::SunflowerVariant::QPlus1WithCenter));
    made.push_back(divset::cone(divset::construction1(2, 1, 1), 1, divset::ConeVariant::RemoveVertex));
    made.push_back(divset::construction4(2, 2, 2, 2, {1, 0}));
    made.push_back(divset::h6());
    made.push_back(divset::h7());
    made.push_back(divset::h8());
    for (const auto& d : made)
        c.expect(divset::is_divisible(d.set, d.delta).kind == divset::DivKind::Strong, d.recipe + " not divisible");
    for (std::uint64_t q : {2, 3, 5})
        for (unsigned r = 1; r <= 3; ++r) {
            const BigInt mod = gfcore::ipow(BigInt(q), r + 1);
            for (BigInt b = 0; b < mod; b += 1 + mod / 5) {
                const BigInt y = macwlp::default_y(q, r, b);
                const auto a = macwlp::average_bound(q, r, 3, b, y), u = macwlp::average_bound(q, r, 2, b + mod, y),
                           d = macwlp::average_bound(q, r, 4, b - mod, y);
                c.expect(a.bound == u.bound && a.bound == d.bound && a.residue == u.residue && a.residue == d.residue,
                         "average_bound split");
            }
        }
    const std::pair<const char*, std::uint64_t> codes[] = {{"matrices/gen17_k6.txt", 2},
                                                           {"matrices/gen17_k7.txt", 2},
                                                           {"matrices/gen17_k8.txt", 2},
                                                           {"matrices/hill_cap.txt", 3}};
    for (const auto& [name, q] : codes) {
        const auto g = dataset::matrix(name, q);
        const auto w = oracle::weight_distribution(unsigned(q), rows_of(g));
        const std::vector<BigInt> a(w.begin(), w.end());
        const auto b = macwlp::macwilliams_transform(a, unsigned(g.rows), q);
        c.expect(macwlp::macwilliams_transform(b, unsigned(g.cols - g.rows), q) == a,
                 std::string("MacWilliams round trip ") + name);
    }
    c.equal(oracle::max_partial_spread_q2(4, 2), 5u, "A_2(4,4;2)");
    c.equal(oracle::max_partial_spread_q2(5, 2), 9u, "A_2(5,4;2)");
}

}  // namespace

int main()
{
    const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
        {"exact A_2(v,6;3) for v = 6..14", exact_plane_spreads},
        {"A_2(v,8;4) for v = 8..15, upper bound sharpened by the n = 52 LP", four_spreads},
        {"upper-bound spot values and the A_8(14,12;6) chain", spot_values},
        {"spread constructions and their holes", constructions},
        {"existence of q^r-divisible sets and the open-case rows", existence},
        {"LP solved forms, projections and per-dimension solutions", lp_certificates},
        {"shipped matrices and the reduced ovoid", matrices},
        {"property suites and exhaustive partial spread maxima", properties},
    };
    int failed = 0, index = 0;
    for (const auto& [title, fn] : criteria) {
        ++index;
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %d. %s (%.2f s)\n", c.failures.empty() ? "PASS" : "FAIL", index, title, secs);
        for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("       %s\n", c.failures[i].c_str());
        if (c.failures.size() > 10) std::printf("       ... %zu more\n", c.failures.size() - 10);
        failed += !c.failures.empty();
    }
    std::fflush(stdout);
    return failed;
}
