#include "oracles.hpp"

#include "spreadlab/divset.hpp"
#include "spreadlab/spreadlab.hpp"

#include <doctest.h>

#include <set>

using namespace spreadlab;
using gfcore::BigInt;

namespace {

BigInt multicomponent_size(std::uint64_t q, unsigned v, unsigned k)
{
    const unsigned t = v / k, r = v % k;
    BigInt s = 1;
    for (unsigned j = 1; j < t; ++j) s += gfcore::ipow(BigInt(q), j * k + r);
    return s;
}

void check_holes(const PartialSpread& s)
{
    const auto h = holes(s);
    CHECK(h.cardinality() + s.size() * gfcore::gauss1(long(s.k), s.field->q()) == gfcore::gauss1(long(s.v), s.field->q()));
    const auto res = divset::is_divisible(h, gfcore::ipow_u64(s.field->q(), unsigned(s.k - 1)));
    CHECK(res.kind != divset::DivKind::No);
}

}  // namespace

TEST_SUITE("spreadlab")
{
    TEST_CASE("field reduction spreads partition the space")
    {
        for (auto [q, k, t] : {std::tuple<std::uint64_t, unsigned, unsigned>{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}, {4, 2, 2}}) {
            const auto s = spread_field_reduction(q, k, t);
            CHECK(BigInt(s.size()) == gfcore::gauss1(long(t), gfcore::ipow(BigInt(q), k)));
            CHECK(verify_partial_spread(s.members, k).empty());
            const auto vsp = verify_vsp(s.members, s.v);
            CHECK(vsp.ok);
        }
    }

    TEST_CASE("the F_9 example spread, rebuilt from F_3[x]/(x^2+1)")
    {
        // Elements a + b x with x^2 = -1; a point (u, w) of PG(1, 9) yields the F_3-span of lambda (u, w).
        auto mul = [](std::pair<unsigned, unsigned> s, std::pair<unsigned, unsigned> t) {
            return std::pair<unsigned, unsigned>{(s.first * t.first + 2 * s.second * t.second) % 3,
                                                 (s.first * t.second + s.second * t.first) % 3};
        };
        std::vector<std::pair<unsigned, unsigned>> f9;
        for (unsigned a = 0; a < 3; ++a)
            for (unsigned b = 0; b < 3; ++b) f9.push_back({a, b});
        std::set<std::set<oracle::Vec>> expected;
        std::vector<std::pair<std::pair<unsigned, unsigned>, std::pair<unsigned, unsigned>>> pts{{{0, 0}, {1, 0}}};
        for (const auto& w : f9) pts.push_back({{1, 0}, w});
        for (const auto& [u, w] : pts) {
            std::set<oracle::Vec> member;
            for (const auto& l : f9) {
                const auto a = mul(l, u), b = mul(l, w);
                member.insert({a.first, a.second, b.first, b.second});
            }
            expected.insert(member);
        }
        REQUIRE(expected.size() == 10);
        CHECK(expected.count({{0, 0, 0, 0}, {1, 0, 1, 1}, {2, 0, 2, 2}, {0, 1, 2, 1}, {1, 1, 0, 2}, {2, 1, 1, 0},
                              {0, 2, 1, 2}, {1, 2, 2, 0}, {2, 2, 0, 1}}));

        const auto s = spread_field_reduction(3, 2, 2);
        std::set<std::set<oracle::Vec>> got;
        for (const auto& m : s.members) {
            std::vector<oracle::Vec> gens;
            for (std::size_t i = 0; i < m.canonical().rows; ++i)
                gens.push_back({m.canonical()(i, 0), m.canonical()(i, 1), m.canonical()(i, 2), m.canonical()(i, 3)});
            got.insert(oracle::span(3, gens, 4));
        }
        CHECK(got == expected);
    }

    TEST_CASE("multicomponent sizes and hole divisibility")
    {
        for (auto [q, v, k] : {std::tuple<std::uint64_t, unsigned, unsigned>{2, 5, 2}, {2, 7, 2}, {2, 7, 3}, {2, 8, 3},
                               {3, 5, 2}, {2, 9, 4}, {2, 10, 4}, {3, 7, 3}, {4, 5, 2}}) {
            CAPTURE(q);
            CAPTURE(v);
            CAPTURE(k);
            const auto s = multicomponent(q, v, k);
            CHECK(BigInt(s.size()) == multicomponent_size(q, v, k));
            CHECK(verify_partial_spread(s.members, k).empty());
            check_holes(s);
        }
        const auto s = multicomponent(2, 8, 3);
        CHECK(s.size() == 33);
        CHECK(holes(s).cardinality() == 24);
        CHECK(divset::is_divisible(holes(s), 4).kind == divset::DivKind::Strong);
        CHECK(holes(multicomponent(2, 5, 2)).cardinality() == 4);
    }

    TEST_CASE("lifted MRD layers and extension")
    {
        const auto l = lifted_mrd(2, 6, 3);
        CHECK(l.size() == 8);
        CHECK(verify_partial_spread(l.members, 3).empty());
        for (std::size_t i = 0; i < l.size(); ++i)
            for (std::size_t j = i + 1; j < l.size(); ++j) CHECK(projgeom::subspace_distance(l.members[i], l.members[j]) == 6);
        CHECK_THROWS_AS(lifted_mrd(2, 5, 3), gfcore::Error);
        for (auto [q, v, k] : {std::tuple<std::uint64_t, unsigned, unsigned>{2, 5, 2}, {2, 8, 3}, {3, 5, 2}}) {
            const auto s = multicomponent(q, v, k);
            const auto e = extend_spread(s);
            CHECK(e.v == v + k);
            CHECK(BigInt(e.size() - s.size()) == gfcore::ipow(BigInt(q), v));
            CHECK(verify_partial_spread(e.members, k).empty());
            CHECK(holes(e).cardinality() == holes(s).cardinality());
            check_holes(e);
        }
    }

    TEST_CASE("verification reports overlaps")
    {
        auto s = multicomponent(2, 5, 2);
        s.members.push_back(s.members.front());
        const auto bad = verify_partial_spread(s.members, 2);
        REQUIRE_FALSE(bad.empty());
        CHECK(bad.front().dim == 2);
        CHECK_THROWS_AS(holes(s), gfcore::Error);
    }

    TEST_CASE("spread file round trip")
    {
        for (const auto& s : {multicomponent(2, 8, 3), spread_field_reduction(3, 2, 2), lifted_mrd(4, 4, 2)}) {
            const auto text = format_spread(s);
            const auto back = parse_spread(text);
            CHECK(back.members == s.members);
            CHECK(format_spread(back) == text);
        }
        CHECK_THROWS_AS(parse_spread("2 4 2 3\n1000\n0100\n"), gfcore::Error);
    }

    TEST_CASE("exhaustive partial spread maxima: A_2(4,4;2) = 5 and A_2(5,4;2) = 9")
    {
        CHECK(oracle::max_partial_spread_q2(4, 2) == 5);
        CHECK(oracle::max_partial_spread_q2(5, 2) == 9);
        CHECK(multicomponent(2, 5, 2).size() == 9);
        CHECK(spread_field_reduction(2, 2, 2).size() == 5);
    }
}
