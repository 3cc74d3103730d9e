#include "spreadlab/spreadlab.hpp"

#include <set>
#include <sstream>

namespace spreadlab {

using gfcore::Error;
using gfcore::ErrorKind;
using gfcore::Matrix;
using projgeom::Point;
using projgeom::Vec;

namespace {

void check_points_budget(std::uint64_t q, std::size_t v)
{
    const gfcore::BigInt n = gfcore::gauss1(long(v), q);
    if (n > projgeom::enumeration_budget())
        throw Error(ErrorKind::BudgetExceeded, "PG(" + std::to_string(v - 1) + ", " + std::to_string(q) +
                                                   ") has " + n.str() + " points, over budget");
}

// Shifts a subspace of F^w into F^v with `off` leading zero coordinates.
Subspace shift(const Subspace& x, std::size_t v, std::size_t off)
{
    Matrix m(x.field(), x.dim(), v);
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.ambient(); ++j) m(i, off + j) = x.canonical()(i, j);
    return projgeom::canonicalize(m);
}

}  // namespace

PartialSpread spread_field_reduction(std::uint64_t q, unsigned k, unsigned t)
{
    if (k < 1 || t < 1) throw Error(ErrorKind::ParameterMismatch, "need k >= 1 and t >= 1");
    check_points_budget(q, std::size_t(k) * t);
    gfcore::Extension ext(gfcore::field_new(q), k);
    const std::uint64_t big = ext.order();
    PartialSpread s{ext.base(), std::size_t(k) * t, k, {}};
    std::vector<Matrix> mats(big);
    for (std::uint64_t b = 0; b < big; ++b) mats[b] = ext.matrix(b);
    // Points of PG(t-1, q^k): first nonzero coordinate 1, lexicographic in element indices.
    std::vector<std::uint64_t> x(t, 0);
    for (unsigned pos = t; pos-- > 0;) {
        const unsigned tail = t - pos - 1;
        const std::uint64_t count = gfcore::ipow_u64(big, tail);
        for (std::uint64_t c = 0; c < count; ++c) {
            std::fill(x.begin(), x.end(), 0);
            x[pos] = 1;
            std::uint64_t rem = c;
            for (unsigned i = t; i-- > pos + 1;) {
                x[i] = rem % big;
                rem /= big;
            }
            Matrix m(s.field, k, s.v);
            for (unsigned blk = 0; blk < t; ++blk)
                for (unsigned i = 0; i < k; ++i)
                    for (unsigned j = 0; j < k; ++j) m(i, blk * k + j) = mats[x[blk]](i, j);
            s.members.push_back(projgeom::canonicalize(m));
        }
    }
    return s;
}

PartialSpread lifted_mrd(std::uint64_t q, unsigned v, unsigned k)
{
    if (k < 1 || k >= v) throw Error(ErrorKind::ParameterMismatch, "need 1 <= k < v");
    if (v < 2 * k) throw Error(ErrorKind::ParameterMismatch, "two k-subspaces of F_q^v meet when v < 2k");
    const unsigned n = v - k;
    const gfcore::BigInt size = gfcore::ipow(q, n);
    if (size > projgeom::enumeration_budget())
        throw Error(ErrorKind::BudgetExceeded, "lifted layer of " + size.str() + " members exceeds budget");
    gfcore::Extension ext(gfcore::field_new(q), n);
    PartialSpread s{ext.base(), v, k, {}};
    auto add = [&](std::uint64_t beta) {
        const Matrix mb = ext.matrix(beta);
        Matrix b(s.field, k, n);
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < n; ++j) b(i, j) = mb(i, j);
        s.members.push_back(projgeom::lift(b));
    };
    add(0);
    for (std::uint64_t j = 0; j + 1 < ext.order(); ++j) add(ext.power_of_primitive(j));
    return s;
}

PartialSpread multicomponent(std::uint64_t q, unsigned v, unsigned k)
{
    if (k < 2) throw Error(ErrorKind::ParameterMismatch, "k must be at least 2");
    const unsigned t = v / k, r = v % k;
    if (t < 2 || r == 0)
        throw Error(ErrorKind::ParameterMismatch, "need v = tk + r with t >= 2 and 1 <= r < k");
    auto f = gfcore::field_new(q);
    PartialSpread s{f, v, k, {}};
    for (unsigned layer = 1; layer < t; ++layer) {
        const std::size_t off = std::size_t(layer - 1) * k;
        for (const auto& m : lifted_mrd(q, unsigned(v - off), k).members) s.members.push_back(shift(m, v, off));
    }
    std::vector<std::size_t> last;
    for (std::size_t j = v - k; j < v; ++j) last.push_back(j);
    s.members.push_back(projgeom::coordinate_subspace(f, v, last));
    return s;
}

PartialSpread extend_spread(const PartialSpread& s)
{
    const std::size_t v = s.v + s.k;
    PartialSpread out{s.field, v, s.k, {}};
    for (const auto& m : s.members) out.members.push_back(shift(m, v, s.k));
    for (auto& m : lifted_mrd(s.field->q(), unsigned(v), unsigned(s.k)).members) out.members.push_back(std::move(m));
    return out;
}

std::vector<Violation> verify_partial_spread(const std::vector<Subspace>& members, std::size_t k)
{
    std::vector<Violation> out;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (members[i].dim() != k) out.push_back({i, i, members[i].dim()});
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (members[i].ambient() != members[j].ambient()) {
                out.push_back({i, j, 0});
                continue;
            }
            const std::size_t d = members[i].dim() + members[j].dim() - projgeom::sum(members[i], members[j]).dim();
            if (d > 0) out.push_back({i, j, d});
        }
    return out;
}

PointSet holes(const PartialSpread& s)
{
    check_points_budget(s.field->q(), s.v);
    std::set<Point> covered;
    for (const auto& m : s.members)
        for (auto& p : projgeom::enumerate_points(m))
            if (!covered.insert(std::move(p)).second)
                throw Error(ErrorKind::InconsistentInput, "members of the partial spread overlap");
    PointSet out(s.field, s.v);
    for (const auto& p : projgeom::enumerate_all_points(s.field, s.v))
        if (!covered.count(p)) out.add(p);
    return out;
}

VspReport verify_vsp(const std::vector<Subspace>& members, std::size_t v)
{
    VspReport r;
    if (members.empty()) return r;
    const auto& f = members.front().field();
    check_points_budget(f->q(), v);
    std::map<Point, std::uint64_t> cover;
    for (const auto& m : members) {
        if (m.ambient() != v) throw Error(ErrorKind::AmbientMismatch, "member in another space");
        r.type[m.dim()] += 1;
        for (auto& p : projgeom::enumerate_points(m)) cover[p] += 1;
    }
    for (const auto& p : projgeom::enumerate_all_points(f, v)) {
        auto it = cover.find(p);
        if (it == cover.end())
            ++r.uncovered;
        else if (it->second > 1)
            ++r.overcovered;
    }
    r.ok = r.uncovered == 0 && r.overcovered == 0;
    return r;
}

std::string format_spread(const PartialSpread& s)
{
    std::ostringstream os;
    os << s.field->q() << ' ' << s.v << ' ' << s.k << ' ' << s.members.size() << '\n';
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        if (i) os << '\n';
        os << projgeom::format_matrix(s.members[i].canonical());
    }
    return os.str();
}

PartialSpread parse_spread(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    std::uint64_t q = 0, v = 0, k = 0, n = 0;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        std::istringstream hs(line);
        if (!(hs >> q >> v >> k >> n)) throw Error(ErrorKind::ParseError, "expected header `q v k n`");
        break;
    }
    if (q == 0) throw Error(ErrorKind::ParseError, "missing header");
    auto f = gfcore::field_new(q);
    PartialSpread s{f, v, k, {}};
    std::string block;
    auto flush = [&] {
        if (block.empty()) return;
        const Matrix m = projgeom::parse_matrix(f, block);
        block.clear();
        if (m.cols != v) throw Error(ErrorKind::ParseError, "member has " + std::to_string(m.cols) + " columns");
        s.members.push_back(projgeom::canonicalize(m));
    };
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            flush();
            continue;
        }
        block += line;
        block += '\n';
    }
    flush();
    if (s.members.size() != n)
        throw Error(ErrorKind::ParseError, "header announces " + std::to_string(n) + " members, found " +
                                               std::to_string(s.members.size()));
    return s;
}

}  // namespace spreadlab
