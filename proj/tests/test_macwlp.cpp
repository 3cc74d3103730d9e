#include "oracles.hpp"

#include "spreadlab/data.hpp"
#include "spreadlab/divset.hpp"
#include "spreadlab/macwlp.hpp"

#include <doctest.h>

#include <random>

using namespace macwlp;

namespace {

std::vector<std::string> solved_rows(const LpReport& rep)
{
    std::vector<std::string> out;
    if (!rep.solved) return out;
    const auto& sf = *rep.solved;
    for (std::size_t i = 0; i < sf.basic.size(); ++i)
        out.push_back(rep.system.names[sf.basic[i]] + " = " +
                      lp::format_linear(rep.system.names, sf.free, sf.constant[i], sf.coef[i]));
    return out;
}

std::vector<BigInt> as_big(const std::vector<std::uint64_t>& a)
{
    return {a.begin(), a.end()};
}

std::vector<oracle::Vec> rows_of(const gfcore::Matrix& g)
{
    std::vector<oracle::Vec> out(g.rows, oracle::Vec(g.cols));
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < g.cols; ++j) out[i][j] = unsigned(g.a[i * g.cols + j]);
    return out;
}

bool listed(const std::vector<int>& xs, int n) { return std::find(xs.begin(), xs.end(), n) != xs.end(); }

}  // namespace

TEST_SUITE("macwlp")
{
    TEST_CASE("tau against a full scan")
    {
        for (std::uint64_t q : {2, 3, 4, 5, 7}) {
            for (unsigned r = 1; r <= 3; ++r) {
                const long long delta = (long long)gfcore::ipow_u64(q, r);
                for (long long n = 1; n <= 300; ++n) {
                    long long m = 0;
                    const long long best = oracle::tau_min((long long)q, n, delta, &m);
                    const auto w = tau_exclude(q, n, delta);
                    CAPTURE(q);
                    CAPTURE(r);
                    CAPTURE(n);
                    CHECK(bool(w) == (best < 0));
                    if (w) {
                        CHECK(w->value == best);
                        CHECK(w->m == m);
                        CHECK(tau(q, n, delta, w->m) == w->value);
                    }
                }
            }
        }
    }

    TEST_CASE("tau and the interval test agree where both apply")
    {
        for (std::uint64_t q : {2, 3})
            for (unsigned r = 1; r <= 2; ++r)
                for (int n = 1; n <= 60; ++n) {
                    const bool by_tau = bool(tau_exclude(q, n, gfcore::ipow_u64(q, r)));
                    const bool by_interval = bool(exclusion_interval(q, r, n));
                    CAPTURE(q);
                    CAPTURE(r);
                    CAPTURE(n);
                    const bool rep = bool(divset::representable(q, r, n));
                    // Representable sizes exist, so neither test may exclude them.
                    if (rep) {
                        CHECK_FALSE(by_tau);
                        CHECK_FALSE(by_interval);
                    }
                    // Up to r q^(r+1) the interval test is exact, so tau cannot go further.
                    if (BigInt(n) <= r * gfcore::ipow(q, r + 1)) {
                        CHECK(by_interval == !rep);
                        if (by_tau) CHECK(by_interval);
                    }
                }
    }

    TEST_CASE("average bound does not depend on the split of n")
    {
        for (std::uint64_t q : {2, 3, 4})
            for (unsigned r = 1; r <= 3; ++r) {
                const BigInt mod = gfcore::ipow(q, r + 1);
                for (int a = 2; a <= 5; ++a)
                    for (BigInt b = 0; b < mod; b += 1 + mod / 7) {
                        const BigInt y = default_y(q, r, b);
                        const auto base = average_bound(q, r, a, b, y);
                        const auto up = average_bound(q, r, a - 1, b + mod, y);
                        const auto down = average_bound(q, r, a + 1, b - mod, y);
                        CHECK(base.bound == up.bound);
                        CHECK(base.bound == down.bound);
                        CHECK(base.residue == up.residue);
                        CHECK(base.residue == down.residue);
                        CHECK(base.bound == (a - 1) * gfcore::ipow(q, r) + (b + y) / q);
                    }
            }
    }

    TEST_CASE("MacWilliams transform against enumerated duals")
    {
        std::mt19937_64 rng(7);
        for (int it = 0; it < 60; ++it) {
            const unsigned p = it % 2 ? 3 : 2;
            const unsigned n = 3 + unsigned(rng() % (p == 2 ? 8 : 5));
            const unsigned k = 1 + unsigned(rng() % (n - 1));
            std::vector<oracle::Vec> g(k, oracle::Vec(n));
            for (auto& row : g)
                for (auto& x : row) x = unsigned(rng() % p);
            if (oracle::rank(p, g) != k) continue;
            const auto a = as_big(oracle::weight_distribution(p, g));
            const auto b = as_big(oracle::dual_weight_distribution(p, g));
            CHECK(macwilliams_transform(a, k, p) == b);
            CHECK(macwilliams_transform(b, n - k, p) == a);
        }
        CHECK_THROWS_AS(macwilliams_transform({1, 1, 1}, 1, 2), gfcore::Error);
    }

    TEST_CASE("MacWilliams round trip on the shipped codes")
    {
        const std::pair<const char*, std::uint64_t> codes[] = {{"matrices/gen17_k6.txt", 2},
                                                               {"matrices/gen17_k7.txt", 2},
                                                               {"matrices/gen17_k8.txt", 2},
                                                               {"matrices/hill_cap.txt", 3}};
        for (const auto& [name, q] : codes) {
            CAPTURE(name);
            const auto g = dataset::matrix(name, q);
            const auto a = as_big(oracle::weight_distribution(unsigned(q), rows_of(g)));
            const auto c = divset::columns_as_points(g);
            CHECK(divset::spectrum(c).weight_distribution() == a);
            const auto b = macwilliams_transform(a, unsigned(g.rows), q);
            CHECK(macwilliams_transform(b, unsigned(g.cols - g.rows), q) == a);
            CHECK(b[1] == 0);  // projective
        }
    }

    TEST_CASE("the linear identity vanishes on constructed sets")
    {
        for (auto [q, r, i] : {std::tuple<std::uint64_t, unsigned, std::uint64_t>{2, 1, 2}, {2, 2, 3}, {3, 1, 1}}) {
            const auto d = divset::construction1(q, r, i);
            const auto sp = divset::spectrum(d.set);
            const std::uint64_t n = d.cardinality(), u = n % d.delta, m = (n - u) / d.delta;
            CHECK(linear_identity_residual(q, d.delta, u, m, sp.a, d.set.ambient()) == 0);
        }
    }

    TEST_CASE("LP for n = 52 is infeasible with the recorded elimination")
    {
        const auto rep = lp_feasibility(default_problem(2, 3, 52));
        CHECK_FALSE(rep.feasible);
        CHECK(rep.certificate_checked);
        CHECK(lp::check_infeasibility(rep.system, rep.result.certificate));
        const std::vector<std::string> want = {"A8 = -4 + x/512 + 7y/64", "A16 = 6 - 3x/512 - 17y/64",
                                               "A24 = -4 + 3x/512 + 397y/64", "A32 = 1 - x/512 + 125y/64"};
        CHECK(solved_rows(rep) == want);
        REQUIRE(rep.projection);
        REQUIRE(rep.projection->upper);
        REQUIRE(rep.projection->lower);
        CHECK(rep.projection->upper->value == Rational(384, 17));
        CHECK(rep.projection->lower->value == 96);
        CHECK(rep.projection->contradiction);
    }

    TEST_CASE("LP for n = 17 has one solution per dimension")
    {
        const auto rep = lp_feasibility(default_problem(2, 2, 17), std::pair<unsigned, unsigned>{6, 8});
        CHECK(rep.feasible);
        REQUIRE(rep.per_k.size() == 3);
        // (a5, a9, a13, dual A3) per k; A4 of the code is a13.
        const int want[3][4] = {{12, 49, 2, 6}, {25, 95, 7, 2}, {51, 187, 17, 0}};
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& ks = rep.per_k[i];
            CHECK(ks.k == 6 + i);
            CHECK(ks.unique);
            const auto names = build_system(default_problem(2, 2, 17), ks.k).names;
            auto at = [&](const std::string& nm) {
                const auto it = std::find(names.begin(), names.end(), nm);
                REQUIRE(it != names.end());
                return ks.lo[std::size_t(it - names.begin())];
            };
            CHECK(at("A12") == want[i][0]);
            CHECK(at("A8") == want[i][1]);
            CHECK(at("A4") == want[i][2]);
            CHECK(at("x") / gfcore::ipow(2, unsigned(ks.k - 3)) == want[i][3]);
        }
    }

    TEST_CASE("LP for n = 51 forces k in {8, 9}")
    {
        const auto rep = lp_feasibility(default_problem(2, 3, 51), k_range(2, 3, 51));
        std::vector<unsigned> ok;
        for (const auto& ks : rep.per_k)
            if (ks.feasible) ok.push_back(ks.k);
        CHECK(ok == std::vector<unsigned>{8, 9});
        for (const auto& ks : rep.per_k) {
            if (ks.k != 8) continue;
            CHECK(ks.unique);
            const auto names = build_system(default_problem(2, 3, 51), 8).names;
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (names[i] == "A8" || names[i] == "A16") CHECK(ks.lo[i] == 0);
                if (names[i] == "A24") CHECK(ks.lo[i] == 204);
                if (names[i] == "A32") CHECK(ks.lo[i] == 51);
            }
        }
    }

    TEST_CASE("existence for q = 2")
    {
        for (int n = 1; n <= 100; ++n) {
            CAPTURE(n);
            const auto s1 = existence_status(2, 1, n).status;
            CHECK((s1 == Existence::Excluded) == (n <= 2));
            const auto s2 = existence_status(2, 2, n).status;
            const bool e2 = n == 7 || n == 8 || n >= 14;
            CHECK((s2 == Existence::Exists) == e2);
            CHECK((s2 == Existence::Excluded) == !e2);
        }
        for (int n = 1; n <= 80; ++n) {
            CAPTURE(n);
            const auto v = existence_status(2, 3, n);
            if (n == 49 || n == 50 || n == 74)
                CHECK(v.status == Existence::ExistsCited);
            else if (n == 52) {
                CHECK(v.status == Existence::Excluded);
                CHECK(v.stage == Stage::Lp);
            } else if (n >= 53 && n <= 58) {
                CHECK(v.status == Existence::Excluded);
                CHECK(v.stage == Stage::Tau);
                CHECK(tau_exclude(2, n, 8)->m == 4);
            } else if (n == 59)
                CHECK(v.status == Existence::Undecided);
            else {
                const bool e = n == 15 || n == 16 || (n >= 30 && n <= 32) || (n >= 45 && n <= 51) || n >= 60;
                CHECK(v.status != Existence::Undecided);
                CHECK((v.status != Existence::Excluded) == e);
            }
        }
    }

    TEST_CASE("open cases for q = 2 r = 4, q = 3 r = 2 and q = 5 r = 1")
    {
        const std::tuple<std::uint64_t, unsigned, std::vector<int>> rows[] = {
            {2, 4, {130, 131, 163, 164, 165, 185, 215, 216, 232, 233, 244, 245, 246, 247}},
            {3, 2, {70, 77, 99, 100, 101, 102, 113, 114, 115, 128}},
            {5, 1, {40}},
        };
        for (const auto& [q, r, open] : rows) {
            for (int n = 1; n <= open.back(); ++n) {
                CAPTURE(q);
                CAPTURE(n);
                const auto v = existence_status(q, r, n);
                CHECK((v.status == Existence::Undecided) == listed(open, n));
            }
        }
    }

    TEST_CASE("certificates replay")
    {
        for (std::uint64_t q : {2, 3})
            for (unsigned r = 1; r <= 3; ++r)
                for (int n = 1; n <= 90; ++n) {
                    const auto v = existence_status(q, r, n);
                    if (v.status != Existence::Excluded) continue;
                    CAPTURE(q);
                    CAPTURE(r);
                    CAPTURE(n);
                    CHECK_FALSE(v.certificate.empty());
                    const BigInt delta = gfcore::ipow(q, r);
                    if (v.stage == Stage::Tau) {
                        const auto w = tau_exclude(q, n, delta);
                        REQUIRE(w);
                        CHECK(tau(q, n, delta, w->m) < 0);
                    }
                    if (v.stage == Stage::Interval) CHECK(exclusion_interval(q, r, n));
                    if (v.stage == Stage::Lp) {
                        const auto rep = lp_feasibility(default_problem(q, r, n));
                        CHECK_FALSE(rep.feasible);
                        CHECK(lp::check_infeasibility(rep.system, rep.result.certificate));
                    }
                    if (v.stage == Stage::Cubic) CHECK(cubic_search(q, n, delta));
                }
    }

    TEST_CASE("constructed sets are never excluded")
    {
        std::vector<divset::DivisibleSet> made;
        for (auto [q, r] : {std::pair<std::uint64_t, unsigned>{2, 1}, {2, 2}, {3, 1}})
            for (std::uint64_t i = 0; i <= gfcore::ipow_u64(q, r) + 1; ++i) made.push_back(divset::construction1(q, r, i));
        made.push_back(divset::h6());
        made.push_back(divset::sunflower_union(2, {3, 3}, 1, divset::SunflowerVariant::QPetals));
        for (const auto& d : made) {
            const auto r = divset::log_q(d.set.field()->q(), d.delta);
            REQUIRE(r);
            CAPTURE(d.recipe);
            CHECK(existence_status(d.set.field()->q(), *r, d.cardinality()).status != Existence::Excluded);
        }
        CHECK(existence_status(3, 2, 56).status != Existence::Excluded);
        CHECK(existence_status(2, 3, 51).status != Existence::Excluded);
    }

    TEST_CASE("cubic test")
    {
        for (int n = 1; n <= 200; ++n) {
            const auto t = cubic_search(2, n, 8);
            if (t) CHECK(cubic_exclude(2, n, 8, *t));
        }
    }
}
