#include "spreadlab/lp.hpp"

#include <doctest.h>

#include <random>

using lp::Rational;

namespace {

lp::System random_system(std::mt19937_64& rng, std::size_t nvars, std::size_t neq, std::size_t nge)
{
    lp::System s;
    for (std::size_t j = 0; j < nvars; ++j) s.names.push_back("z" + std::to_string(j));
    auto row = [&] {
        lp::Constraint c;
        for (std::size_t j = 0; j < nvars; ++j) c.coef.emplace_back(int(rng() % 7) - 3);
        c.rhs = int(rng() % 9) - 4;
        return c;
    };
    for (std::size_t i = 0; i < neq; ++i) s.eq.push_back(row());
    for (std::size_t i = 0; i < nge; ++i) s.ge.push_back(row());
    return s;
}

}  // namespace

TEST_SUITE("lp")
{
    TEST_CASE("simplex agrees with elimination on random systems")
    {
        std::mt19937_64 rng(11);
        int feasible = 0, infeasible = 0;
        for (int it = 0; it < 400; ++it) {
            const auto s = random_system(rng, 3 + it % 3, 1 + it % 2, it % 4);
            const auto res = lp::feasibility(s);
            if (res.status == lp::Status::Infeasible) {
                ++infeasible;
                CHECK(lp::check_infeasibility(s, res.certificate));
            } else {
                ++feasible;
                CHECK(lp::check_point(s, res.x));
            }
            const auto form = lp::solve_for(s, {});
            if (form.free.empty()) continue;
            const auto pr = lp::project(s, form, form.free.front());
            const bool fm_feasible = pr.feasible && !pr.contradiction;
            CAPTURE(it);
            CHECK(fm_feasible == (res.status != lp::Status::Infeasible));
        }
        // The generator hits both outcomes.
        CHECK(feasible > 20);
        CHECK(infeasible > 20);
    }

    TEST_CASE("a small optimum")
    {
        // min -z0 - z1 subject to z0 + 2 z1 + z2 = 4, 3 z0 + z1 + z3 = 6.
        lp::System s;
        s.names = {"z0", "z1", "z2", "z3"};
        s.eq.push_back({{1, 2, 1, 0}, 4, "a"});
        s.eq.push_back({{3, 1, 0, 1}, 6, "b"});
        const auto res = lp::minimize(s, {-1, -1, 0, 0});
        REQUIRE(res.status == lp::Status::Optimal);
        CHECK(res.value == Rational(-14, 5));
        CHECK(res.x[0] == Rational(8, 5));
        CHECK(res.x[1] == Rational(6, 5));
        const auto other = lp::minimize(s, {0, 0, -1, 0});
        CHECK(other.status == lp::Status::Optimal);
        CHECK(other.value == -4);
        lp::System open;
        open.names = {"a", "b"};
        open.eq.push_back({{1, -1}, 0, "diag"});
        CHECK(lp::minimize(open, {-1, 0}).status == lp::Status::Unbounded);
    }

    TEST_CASE("certificates are checked independently")
    {
        lp::System s;
        s.names = {"a", "b"};
        s.eq.push_back({{1, 1}, -1, "sum"});
        const auto res = lp::feasibility(s);
        REQUIRE(res.status == lp::Status::Infeasible);
        CHECK(lp::check_infeasibility(s, res.certificate));
        lp::Farkas wrong = res.certificate;
        for (auto& u : wrong.eq) u = -u;
        CHECK_FALSE(lp::check_infeasibility(s, wrong));
        CHECK_FALSE(lp::check_point(s, {Rational(1), Rational(0)}));
    }

    TEST_CASE("solved form and projection")
    {
        // a = 2 - b/2 + c, with a, b, c >= 0 and c <= 1 gives b <= 6.
        lp::System s;
        s.names = {"a", "b", "c"};
        s.eq.push_back({{2, 1, -2}, 4, "e"});
        s.ge.push_back({{0, 0, -1}, -1, "c <= 1"});
        const auto form = lp::solve_for(s, {0});
        REQUIRE(form.basic == std::vector<std::size_t>{0});
        CHECK(form.constant[0] == 2);
        CHECK(lp::format_linear(s.names, form.free, form.constant[0], form.coef[0]) == "2 - b/2 + c");
        const auto pr = lp::project(s, form, 1);
        REQUIRE(pr.upper);
        CHECK(pr.upper->value == 6);
        CHECK_FALSE(pr.contradiction);
        CHECK_THROWS_AS(lp::project(s, form, 0), gfcore::Error);
    }
}
