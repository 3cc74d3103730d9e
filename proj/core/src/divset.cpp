#include "spreadlab/divset.hpp"

#include "spreadlab/spreadlab.hpp"

#include <algorithm>
#include <map>
#include <iterator>
#include <sstream>

namespace divset {

using gfcore::Elem;
using gfcore::Error;
using gfcore::ErrorKind;
using gfcore::Field;
using gfcore::FieldPtr;
using gfcore::Matrix;
using projgeom::canonicalize;
using projgeom::coordinate_subspace;
using projgeom::make_point;

namespace {

// Integer combination of characteristic functions.
class Chi {
public:
    Chi(FieldPtr f, std::size_t v) : f_(std::move(f)), v_(v) {}

    void add(const PointSet& s, long long coef)
    {
        for (const auto& [p, m] : s.items()) add(p, coef * static_cast<long long>(m));
    }
    void add(const Subspace& x, long long coef) { add(projgeom::point_set_of(x), coef); }
    void add(const Point& p, long long coef)
    {
        auto& c = val_[p];
        c += coef;
        if (c == 0) val_.erase(p);
    }

    PointSet to_set() const
    {
        PointSet out(f_, v_);
        for (const auto& [p, c] : val_) {
            if (c < 0) throw Error(ErrorKind::InconsistentInput, "negative multiplicity in a characteristic combination");
            out.add(p, std::uint64_t(c));
        }
        return out;
    }

private:
    FieldPtr f_;
    std::size_t v_;
    std::map<Point, long long> val_;
};

Vec unit(std::size_t v, std::size_t i)
{
    Vec e(v, 0);
    e[i] = 1;
    return e;
}

std::vector<std::size_t> range(std::size_t from, std::size_t to)
{
    std::vector<std::size_t> r;
    for (std::size_t i = from; i < to; ++i) r.push_back(i);
    return r;
}

// Embeds x of F_q^w into F_q^v at coordinate offset `off`.
Subspace embed(const Subspace& x, std::size_t v, std::size_t off)
{
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        Vec g(v, 0);
        for (std::size_t j = 0; j < x.ambient(); ++j) g[off + j] = x.canonical()(i, j);
        gens.push_back(std::move(g));
    }
    return canonicalize(x.field(), v, gens);
}

std::uint64_t r_of(std::uint64_t q, std::uint64_t delta, const char* what)
{
    auto e = log_q(q, delta);
    if (!e) throw Error(ErrorKind::NotApplicable, std::string(what) + " needs a divisor that is a power of q");
    return *e;
}

}  // namespace

std::optional<unsigned> log_q(std::uint64_t q, std::uint64_t delta)
{
    if (q < 2 || delta == 0) return std::nullopt;
    unsigned e = 0;
    while (delta % q == 0) {
        delta /= q;
        ++e;
    }
    if (delta != 1) return std::nullopt;
    return e;
}

std::vector<std::uint64_t> hyperplane_counts(const PointSet& c)
{
    const Field& f = *c.field();
    const auto normals = projgeom::enumerate_all_points(c.field(), c.ambient());
    std::vector<std::uint64_t> out(normals.size(), 0);
    for (std::size_t h = 0; h < normals.size(); ++h)
        for (const auto& [p, m] : c.items())
            if (projgeom::dot(f, normals[h].x, p.x) == 0) out[h] += m;
    return out;
}

DivResult is_divisible(const PointSet& c, std::uint64_t delta)
{
    if (delta == 0) throw Error(ErrorKind::RangeError, "divisor must be positive");
    const std::uint64_t n = c.cardinality() % delta;
    const auto counts = hyperplane_counts(c);
    DivResult r;
    if (counts.empty()) {
        r.kind = DivKind::Strong;
        r.u = n;
        return r;
    }
    const std::uint64_t u = counts.front() % delta;
    bool common = true;
    for (auto x : counts) common = common && x % delta == u;
    if (common) {
        r.kind = u == n ? DivKind::Strong : DivKind::Weak;
        r.u = u;
        return r;
    }
    const auto normals = projgeom::enumerate_all_points(c.field(), c.ambient());
    for (std::size_t h = 0; h < counts.size(); ++h)
        if (counts[h] % delta != n) {
            r.witness = normals[h].x;
            break;
        }
    return r;
}

const char* to_string(DivKind k)
{
    switch (k) {
    case DivKind::Strong: return "strong";
    case DivKind::Weak: return "weak";
    case DivKind::No: return "no";
    }
    return "?";
}

void standard_residuals(std::uint64_t q, std::size_t v, std::uint64_t n, const std::vector<BigInt>& a, BigInt out[3],
                        const BigInt& equal_pairs)
{
    BigInt s0 = 0, s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const BigInt bi = i;
        s0 += a[i];
        s1 += bi * a[i];
        s2 += bi * (bi - 1) / 2 * a[i];
    }
    const BigInt bn = n;
    out[0] = s0 - gfcore::gauss1(long(v), q);
    out[1] = s1 - bn * gfcore::gauss1(long(v) - 1, q);
    const BigInt qv2 = v >= 2 ? gfcore::ipow(q, unsigned(v - 2)) : BigInt(0);
    out[2] = s2 - bn * (bn - 1) / 2 * gfcore::gauss1(long(v) - 2, q) - qv2 * equal_pairs;
}

std::size_t span_dimension(const PointSet& c)
{
    std::vector<Vec> gens;
    for (const auto& [p, m] : c.items()) gens.push_back(p.x);
    return canonicalize(c.field(), c.ambient(), gens).dim();
}

Spectrum spectrum(const PointSet& c)
{
    Spectrum s;
    s.n = c.cardinality();
    s.v = c.ambient();
    s.q = c.field()->q();
    s.dimension = span_dimension(c);
    s.a.assign(s.n + 1, 0);
    for (auto x : hyperplane_counts(c)) s.a[x] += 1;
    BigInt pairs = 0;
    for (const auto& [p, m] : c.items()) pairs += BigInt(m) * (m - 1) / 2;
    standard_residuals(s.q, s.v, s.n, s.a, s.residual, pairs);
    return s;
}

std::vector<BigInt> Spectrum::weight_distribution() const
{
    std::vector<BigInt> w(n + 1, 0);
    const BigInt scale = gfcore::ipow(q, unsigned(v - dimension));
    for (std::size_t i = 1; i <= n; ++i) w[i] = BigInt(q - 1) * a[n - i] / scale;
    w[0] = 1;
    return w;
}

PointSet columns_as_points(const Matrix& g)
{
    const Field& f = *g.field;
    PointSet out(g.field, g.rows);
    for (std::size_t j = 0; j < g.cols; ++j) {
        Vec col(g.rows);
        for (std::size_t i = 0; i < g.rows; ++i) col[i] = g(i, j);
        if (!projgeom::normalize(f, col)) throw Error(ErrorKind::InconsistentInput, "zero column in generator matrix");
        out.add(Point{std::move(col)});
    }
    return out;
}

bool is_projective_columns(const Matrix& g)
{
    for (std::size_t j = 0; j < g.cols; ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < g.rows; ++i) zero = zero && g(i, j) == 0;
        if (zero) return false;
    }
    return columns_as_points(g).is_set();
}

DivisibleSet construct_subspace(const Subspace& y)
{
    const std::uint64_t q = y.field()->q();
    return {projgeom::point_set_of(y), y.dim() ? gfcore::ipow_u64(q, unsigned(y.dim() - 1)) : 1, "subspace"};
}

DivisibleSet construct_affine(const Subspace& y, const Subspace& x)
{
    if (x.ambient() != y.ambient()) throw Error(ErrorKind::AmbientMismatch, "X and Y live in different spaces");
    if (!y.contains(x) || x.dim() == y.dim()) throw Error(ErrorKind::NotNested, "X must be a proper subspace of Y");
    if (x.dim() == 0) throw Error(ErrorKind::NotNested, "X must have dimension at least 1");
    Chi chi(y.field(), y.ambient());
    chi.add(y, 1);
    chi.add(x, -1);
    return {chi.to_set(), gfcore::ipow_u64(y.field()->q(), unsigned(x.dim() - 1)), "affine"};
}

DivisibleSet disjoint_union(const DivisibleSet& c1, const DivisibleSet& c2)
{
    if (c2.set.cardinality() == 0) return c1;
    if (c1.set.cardinality() == 0) return c2;
    if (c1.set.field()->q() != c2.set.field()->q()) throw Error(ErrorKind::AmbientMismatch, "different fields");
    if (c1.delta != c2.delta) throw Error(ErrorKind::DivisorMismatch, "divisors differ");
    const std::size_t v1 = c1.set.ambient(), v = v1 + c2.set.ambient();
    PointSet out(c1.set.field(), v);
    for (const auto& [p, m] : c1.set.items()) {
        Vec x = p.x;
        x.resize(v, 0);
        out.add(Point{std::move(x)}, m);
    }
    for (const auto& [p, m] : c2.set.items()) {
        Vec x(v1, 0);
        x.insert(x.end(), p.x.begin(), p.x.end());
        out.add(Point{std::move(x)}, m);
    }
    return {out, c1.delta, "union"};
}

DivisibleSet sunflower_union(std::uint64_t q, const std::vector<std::size_t>& petal_dims, std::size_t center_dim,
                             SunflowerVariant variant)
{
    const std::size_t want = variant == SunflowerVariant::QPetals ? q : q + 1;
    if (petal_dims.size() != want)
        throw Error(ErrorKind::BadPetalCount, "expected " + std::to_string(want) + " petals, got " +
                                                  std::to_string(petal_dims.size()));
    for (auto d : petal_dims)
        if (d < center_dim + 1) throw Error(ErrorKind::RangeError, "petal dimension must exceed the center dimension");
    auto f = gfcore::field_new(q);
    std::size_t v = center_dim;
    for (auto d : petal_dims) v += d - center_dim;
    Chi chi(f, v);
    const auto center = coordinate_subspace(f, v, range(0, center_dim));
    std::size_t next = center_dim;
    for (auto d : petal_dims) {
        auto idx = range(0, center_dim);
        for (std::size_t j = 0; j < d - center_dim; ++j) idx.push_back(next++);
        chi.add(coordinate_subspace(f, v, idx), 1);
    }
    // Each petal covers the center once; q copies go, a (q+1)-th stays.
    chi.add(center, -static_cast<long long>(q));
    return {chi.to_set(), gfcore::ipow_u64(q, unsigned(center_dim)), "sunflower"};
}

DivisibleSet construction1(std::uint64_t q, unsigned r, std::uint64_t i)
{
    if (r < 1) throw Error(ErrorKind::RangeError, "r must be at least 1");
    const std::uint64_t members = gfcore::ipow_u64(q, r) + 1;
    if (i > members) throw Error(ErrorKind::RangeError, "i must lie in [0, q^r + 1]");
    const auto spread = spreadlab::spread_field_reduction(q, r, 2);
    auto f = spread.field;
    const std::size_t v = 2 * r + std::size_t(i) * (q - 1);
    Chi chi(f, v);
    chi.add(coordinate_subspace(f, v, range(0, 2 * r)), 1);
    std::size_t next = 2 * r;
    for (std::uint64_t s = 0; s < i; ++s) {
        const Subspace x = embed(spread.members[s], v, 0);
        for (std::uint64_t j = 0; j + 1 < q; ++j) chi.add(projgeom::sum(x, canonicalize(f, v, {unit(v, next++)})), 1);
        chi.add(x, -static_cast<long long>(q));
    }
    return {chi.to_set(), gfcore::ipow_u64(q, r), "construction1"};
}

DivisibleSet cone(const DivisibleSet& base, std::size_t vertex_dim, ConeVariant variant)
{
    const FieldPtr& f = base.set.field();
    const std::uint64_t q = f->q();
    if (vertex_dim < 1) throw Error(ErrorKind::RangeError, "vertex dimension must be at least 1");
    const std::uint64_t mod = base.delta * q;
    const std::uint64_t m = base.set.cardinality();
    if (variant == ConeVariant::RemoveVertex && m % mod != 0)
        throw Error(ErrorKind::CongruenceViolated, "m must be divisible by q * delta");
    if (variant == ConeVariant::KeepVertex && (m % mod) * ((q - 1) % mod) % mod != mod - 1)
        throw Error(ErrorKind::CongruenceViolated, "m (q - 1) must be -1 modulo q * delta");
    const std::size_t s = vertex_dim, v = s + base.set.ambient();
    PointSet out(f, v);
    const std::uint64_t nx = gfcore::ipow_u64(q, unsigned(s));
    for (const auto& [p, mult] : base.set.items()) {
        for (std::uint64_t t = 0; t < nx; ++t) {
            Vec x(v, 0);
            std::uint64_t rem = t;
            for (std::size_t j = s; j-- > 0;) {
                x[j] = Elem(rem % q);
                rem /= q;
            }
            std::copy(p.x.begin(), p.x.end(), x.begin() + std::ptrdiff_t(s));
            out.add(make_point(*f, std::move(x)), mult);
        }
    }
    if (variant == ConeVariant::KeepVertex)
        for (const auto& p : projgeom::enumerate_points(coordinate_subspace(f, v, range(0, s)))) out.add(p);
    return {out, base.delta * nx, "cone"};
}

DivisibleSet construction4(std::uint64_t q, unsigned r, unsigned m, std::uint64_t a, const std::vector<std::uint64_t>& b)
{
    if (r < 1 || m > r) throw Error(ErrorKind::RangeError, "need r >= 1 and 0 <= m <= r");
    const BigInt nf = gfcore::gauss1(long(m), q);
    if (BigInt(a) > nf) throw Error(ErrorKind::RangeError, "a exceeds the number of (2r+1)-spaces through S");
    if (b.size() != a) throw Error(ErrorKind::ParameterMismatch, "b must list one entry per i <= a");
    const std::uint64_t bmax = gfcore::ipow_u64(q, r - 1) - 1;
    for (auto bi : b)
        if (bi > bmax) throw Error(ErrorKind::RangeError, "b_i must lie in [0, q^(r-1) - 1]");
    const auto spread = spreadlab::spread_field_reduction(q, r, 2);
    auto f = spread.field;
    const std::size_t v = 2 * r + m;
    Chi chi(f, v);
    chi.add(coordinate_subspace(f, v, range(0, 2 * r)), 1);
    const auto w = projgeom::enumerate_all_points(f, m);
    for (std::uint64_t i = 0; i < a; ++i) {
        const Subspace li = spread.members[i];
        Vec wi(v, 0);
        std::copy(w[i].x.begin(), w[i].x.end(), wi.begin() + std::ptrdiff_t(2 * r));
        const Subspace l = embed(li, v, 0);
        // s runs over a complement of L_i in S spanned by its free columns.
        const auto freec = li.free_columns();
        const std::uint64_t c = q - 1 + b[i] * q;
        for (std::uint64_t j = 0; j < c; ++j) {
            Vec g = wi;
            std::uint64_t rem = j;
            for (std::size_t t = freec.size(); t-- > 0;) {
                g[freec[t]] = Elem(rem % q);
                rem /= q;
            }
            chi.add(projgeom::sum(l, canonicalize(f, v, {g})), 1);
        }
        chi.add(l, -static_cast<long long>(q * (b[i] + 1)));
    }
    return {chi.to_set(), gfcore::ipow_u64(q, r), "construction4"};
}

PointSet field_reduction_points(const PointSet& c, std::uint64_t target_q)
{
    const FieldPtr& big = c.field();
    if (target_q == big->q()) return c;
    if (target_q != big->p())
        throw Error(ErrorKind::NotApplicable, "field reduction targets the prime subfield only");
    const unsigned e = big->e();
    auto f = gfcore::field_new(target_q);
    const std::size_t t = c.ambient(), v = t * e;
    PointSet out(f, v);
    // The e-dimensional F_p-span of x is spanned by x * alpha^j, alpha the polynomial-basis generator.
    Elem alpha_j = 1;
    std::vector<Elem> powers;
    for (unsigned j = 0; j < e; ++j) {
        powers.push_back(alpha_j);
        alpha_j = big->mul(alpha_j, Elem(big->p()));
    }
    for (const auto& [p, m] : c.items()) {
        std::vector<Vec> gens;
        for (auto pw : powers) {
            Vec g;
            for (auto xi : p.x) {
                auto d = big->coeffs(big->mul(xi, pw));
                d.resize(e, 0);
                g.insert(g.end(), d.begin(), d.end());
            }
            gens.push_back(std::move(g));
        }
        for (const auto& pt : projgeom::enumerate_points(canonicalize(f, v, gens))) out.add(pt, m);
    }
    return out;
}

PointSet ovoid(std::uint64_t q)
{
    auto f = gfcore::field_new(q);
    const Field& F = *f;
    Elem bb = 0, cc = 0;
    bool found = false;
    for (Elem b = 0; b < q && !found; ++b)
        for (Elem c = 0; c < q && !found; ++c) {
            bool root = false;
            for (Elem t = 0; t < q && !root; ++t) root = F.add(F.add(F.mul(t, t), F.mul(b, t)), c) == 0;
            if (!root) {
                bb = b;
                cc = c;
                found = true;
            }
        }
    PointSet out(f, 4);
    for (const auto& p : projgeom::enumerate_all_points(f, 4)) {
        const auto& x = p.x;
        const Elem val = F.add(F.add(F.mul(x[0], x[1]), F.mul(x[2], x[2])),
                               F.add(F.mul(bb, F.mul(x[2], x[3])), F.mul(cc, F.mul(x[3], x[3]))));
        if (val == 0) out.add(p);
    }
    return out;
}

DivisibleSet h6()
{
    auto f = gfcore::field_new(2);
    const std::size_t v = 6;
    Chi chi(f, v);
    chi.add(coordinate_subspace(f, v, {0, 1, 3, 4}), 1);
    chi.add(coordinate_subspace(f, v, {0, 1, 2}), 1);
    chi.add(coordinate_subspace(f, v, {3, 4, 5}), 1);
    chi.add(coordinate_subspace(f, v, {0, 1}), -2);
    chi.add(coordinate_subspace(f, v, {3, 4}), -2);
    return {chi.to_set(), 4, "h6"};
}

DivisibleSet h7()
{
    auto f = gfcore::field_new(2);
    DivisibleSet s = sunflower_union(2, {3, 4, 4}, 2, SunflowerVariant::QPlus1WithCenter);
    // Petals: E = L + e2, S1 = L + <e3, e4>, S2 = L + <e5, e6> over L = <e0, e1>.
    Chi chi(f, s.set.ambient());
    chi.add(s.set, 1);
    chi.add(coordinate_subspace(f, 7, {0, 3, 4}), -1);
    chi.add(coordinate_subspace(f, 7, {1, 5, 6}), -1);
    return {chi.to_set(), 4, "h7"};
}

DivisibleSet h8()
{
    auto f = gfcore::field_new(2);
    const std::size_t v = 8;
    // Vertex Q = e0, projective basis of <e1..e4>, affine solid <e0, e5, e6, e7> minus <e5, e6, e7>.
    Chi chi(f, v);
    std::vector<Vec> basis = {unit(v, 1), unit(v, 2), unit(v, 3), unit(v, 4), Vec{0, 1, 1, 1, 1, 0, 0, 0}};
    for (const auto& b : basis) {
        chi.add(make_point(*f, b), 1);
        Vec bq = b;
        bq[0] = 1;
        chi.add(make_point(*f, bq), 1);
    }
    chi.add(make_point(*f, unit(v, 0)), -1);
    chi.add(coordinate_subspace(f, v, {0, 5, 6, 7}), 1);
    chi.add(coordinate_subspace(f, v, {5, 6, 7}), -1);
    return {chi.to_set(), 4, "h8"};
}

bool residual_check(const DivisibleSet& c, unsigned j)
{
    const FieldPtr& f = c.set.field();
    const std::uint64_t q = f->q();
    const std::uint64_t r = r_of(q, c.delta, "residual_check");
    if (j < 1 || j >= r) throw Error(ErrorKind::RangeError, "need 1 <= j < r");
    const std::uint64_t target = c.delta / gfcore::ipow_u64(q, j);
    const std::size_t v = c.set.ambient();
    if (j > v) return true;
    for (const auto& w : projgeom::enumerate_subspaces(f, v, j)) {
        const Subspace u = projgeom::perp(w);
        // Coordinates inside U are the pivot entries of each vector.
        PointSet local(f, u.dim());
        for (const auto& [p, m] : c.set.items()) {
            if (!u.contains(p.x)) continue;
            Vec y;
            for (auto pc : u.pivots()) y.push_back(p.x[pc]);
            local.add(make_point(*f, std::move(y)), m);
        }
        if (is_divisible(local, target).kind != DivKind::Strong) return false;
    }
    return true;
}

bool characteristic_identity(const PointSet& c, const std::vector<std::pair<long long, PointSet>>& terms)
{
    Chi chi(c.field(), c.ambient());
    for (const auto& [coef, s] : terms) {
        if (s.ambient() != c.ambient()) throw Error(ErrorKind::AmbientMismatch, "term in another space");
        chi.add(s, coef);
    }
    chi.add(c, -1);
    try {
        return chi.to_set().cardinality() == 0;
    } catch (const Error&) {
        return false;
    }
}

BigInt frobenius_upper(std::uint64_t q, unsigned r)
{
    const BigInt a = gfcore::gauss1(long(r) + 1, q);
    const BigInt b = gfcore::ipow(q, r + 1);
    return a * b - a - b;
}

std::optional<Representation> representable(std::uint64_t q, unsigned r, const BigInt& n)
{
    if (n < 0) return std::nullopt;
    const BigInt a_unit = gfcore::gauss1(long(r) + 1, q);
    const BigInt b_unit = gfcore::ipow(q, r + 1);
    // [r+1 1]_q (1 - q) = 1 - q^{r+1}, so 1 - q inverts [r+1 1]_q modulo q^{r+1}.
    BigInt a = (n % b_unit) * (BigInt(1) - BigInt(q)) % b_unit;
    if (a < 0) a += b_unit;
    if (a * a_unit > n) return std::nullopt;
    return Representation{a, (n - a * a_unit) / b_unit};
}

std::string format_point_set(const PointSet& c)
{
    std::ostringstream os;
    os << c.field()->q() << ' ' << c.ambient() << ' ' << c.cardinality() << '\n';
    for (const auto& [p, m] : c.items())
        for (std::uint64_t i = 0; i < m; ++i) os << projgeom::format_vector(*c.field(), p.x) << '\n';
    return os.str();
}

PointSet parse_point_set(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    std::uint64_t q = 0, v = 0, n = 0;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        std::istringstream hs(line);
        if (!(hs >> q >> v >> n)) throw Error(ErrorKind::ParseError, "expected header `q v n`");
        break;
    }
    if (q == 0) throw Error(ErrorKind::ParseError, "missing header");
    auto f = gfcore::field_new(q);
    std::string body((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    const Matrix rows = projgeom::parse_matrix(f, body);
    if (rows.rows != n)
        throw Error(ErrorKind::ParseError,
                    "header announces " + std::to_string(n) + " points, found " + std::to_string(rows.rows));
    if (n && rows.cols != v) throw Error(ErrorKind::ParseError, "rows have " + std::to_string(rows.cols) + " columns");
    PointSet c(f, v);
    for (std::size_t i = 0; i < rows.rows; ++i)
        c.add(make_point(*f, Vec(rows.a.begin() + i * v, rows.a.begin() + (i + 1) * v)));
    return c;
}

}  // namespace divset
