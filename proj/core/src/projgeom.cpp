#include "spreadlab/projgeom.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace projgeom {

using gfcore::Error;
using gfcore::ErrorKind;
using gfcore::Field;

namespace {
std::uint64_t g_budget = std::uint64_t(1) << 22;

void check_budget(std::uint64_t q, std::size_t dim)
{
    const gfcore::BigInt n = gfcore::gauss1(long(dim), q);
    if (n > g_budget) throw Error(ErrorKind::BudgetExceeded, "enumeration of " + n.str() + " points exceeds budget");
}
}  // namespace

std::uint64_t enumeration_budget() { return g_budget; }
void set_enumeration_budget(std::uint64_t b) { g_budget = b; }

Rref rref(const Matrix& m)
{
    const Field& f = *m.field;
    Matrix w = m;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < w.cols && r < w.rows; ++c) {
        std::size_t p = r;
        while (p < w.rows && w(p, c) == 0) ++p;
        if (p == w.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < w.cols; ++j) std::swap(w(r, j), w(p, j));
        const Elem iv = f.inv(w(r, c));
        for (std::size_t j = c; j < w.cols; ++j) w(r, j) = f.mul(w(r, j), iv);
        for (std::size_t i = 0; i < w.rows; ++i) {
            if (i == r || w(i, c) == 0) continue;
            const Elem fac = w(i, c);
            for (std::size_t j = c; j < w.cols; ++j) w(i, j) = f.sub(w(i, j), f.mul(fac, w(r, j)));
        }
        piv.push_back(c);
        ++r;
    }
    Matrix out(m.field, r, m.cols);
    std::copy(w.a.begin(), w.a.begin() + std::ptrdiff_t(r * m.cols), out.a.begin());
    return {out, piv};
}

Subspace::Subspace(Matrix canonical, std::vector<std::size_t> pivots, std::size_t ambient)
    : canon_(std::move(canonical)), pivots_(std::move(pivots)), v_(ambient)
{
}

bool Subspace::operator<(const Subspace& o) const
{
    if (v_ != o.v_) return v_ < o.v_;
    return canon_ < o.canon_;
}

Vec Subspace::reduce(const Vec& x) const
{
    const Field& f = *canon_.field;
    Vec w = x;
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Elem c = w[pivots_[i]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < v_; ++j) w[j] = f.sub(w[j], f.mul(c, canon_(i, j)));
    }
    Vec out;
    for (auto j : free_columns()) out.push_back(w[j]);
    return out;
}

std::vector<std::size_t> Subspace::free_columns() const
{
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t j = 0; j < v_; ++j) {
        if (k < pivots_.size() && pivots_[k] == j)
            ++k;
        else
            out.push_back(j);
    }
    return out;
}

bool Subspace::contains(const Vec& x) const
{
    if (x.size() != v_) throw Error(ErrorKind::AmbientMismatch, "vector length differs from ambient dimension");
    const Vec r = reduce(x);
    return std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; });
}

bool Subspace::contains(const Subspace& y) const
{
    if (y.ambient() != v_) throw Error(ErrorKind::AmbientMismatch, "subspaces live in different spaces");
    for (std::size_t i = 0; i < y.dim(); ++i) {
        Vec row(y.canonical().a.begin() + std::ptrdiff_t(i * v_), y.canonical().a.begin() + std::ptrdiff_t((i + 1) * v_));
        if (!contains(row)) return false;
    }
    return true;
}

Subspace canonicalize(const Matrix& generators)
{
    Rref r = rref(generators);
    return Subspace(std::move(r.m), std::move(r.pivots), generators.cols);
}

Subspace canonicalize(const FieldPtr& f, std::size_t v, const std::vector<Vec>& generators)
{
    Matrix m(f, generators.size(), v);
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].size() != v) throw Error(ErrorKind::AmbientMismatch, "generator length mismatch");
        for (std::size_t j = 0; j < v; ++j) m(i, j) = generators[i][j];
    }
    return canonicalize(m);
}

Subspace zero_subspace(const FieldPtr& f, std::size_t v) { return Subspace(Matrix(f, 0, v), {}, v); }

Subspace full_space(const FieldPtr& f, std::size_t v)
{
    std::vector<std::size_t> piv(v);
    for (std::size_t i = 0; i < v; ++i) piv[i] = i;
    return Subspace(gfcore::identity(f, v), piv, v);
}

Subspace coordinate_subspace(const FieldPtr& f, std::size_t v, const std::vector<std::size_t>& idx)
{
    std::vector<Vec> gens;
    for (auto i : idx) {
        Vec e(v, 0);
        e.at(i) = 1;
        gens.push_back(e);
    }
    return canonicalize(f, v, gens);
}

Subspace sum(const Subspace& x, const Subspace& y)
{
    if (x.ambient() != y.ambient()) throw Error(ErrorKind::AmbientMismatch, "sum of subspaces in different spaces");
    Matrix m(x.field(), x.dim() + y.dim(), x.ambient());
    std::copy(x.canonical().a.begin(), x.canonical().a.end(), m.a.begin());
    std::copy(y.canonical().a.begin(), y.canonical().a.end(), m.a.begin() + std::ptrdiff_t(x.canonical().a.size()));
    return canonicalize(m);
}

Subspace perp(const Subspace& x)
{
    const Field& f = *x.field();
    const std::size_t v = x.ambient();
    std::vector<Vec> gens;
    for (auto j : x.free_columns()) {
        Vec n(v, 0);
        n[j] = 1;
        for (std::size_t i = 0; i < x.dim(); ++i) n[x.pivots()[i]] = f.neg(x.canonical()(i, j));
        gens.push_back(n);
    }
    return canonicalize(x.field(), v, gens);
}

Subspace intersect(const Subspace& x, const Subspace& y)
{
    if (x.ambient() != y.ambient()) throw Error(ErrorKind::AmbientMismatch, "intersection of subspaces in different spaces");
    return perp(sum(perp(x), perp(y)));
}

int subspace_distance(const Subspace& x, const Subspace& y)
{
    const auto s = sum(x, y);
    return int(2 * s.dim()) - int(x.dim()) - int(y.dim());
}

int injection_distance(const Subspace& x, const Subspace& y)
{
    if (x.ambient() != y.ambient()) throw Error(ErrorKind::AmbientMismatch, "injection distance across spaces");
    const auto s = sum(x, y);
    const int meet = int(x.dim()) + int(y.dim()) - int(s.dim());
    return int(std::max(x.dim(), y.dim())) - meet;
}

Subspace lift(const Matrix& b)
{
    const std::size_t k = b.rows, n = b.cols;
    Matrix m(b.field, k, k + n);
    for (std::size_t i = 0; i < k; ++i) {
        m(i, i) = 1;
        for (std::size_t j = 0; j < n; ++j) m(i, k + j) = b(i, j);
    }
    return canonicalize(m);
}

Elem dot(const Field& f, const Vec& a, const Vec& b)
{
    Elem s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

bool normalize(const Field& f, Vec& x)
{
    auto it = std::find_if(x.begin(), x.end(), [](Elem e) { return e != 0; });
    if (it == x.end()) return false;
    if (*it == 1) return true;
    const Elem iv = f.inv(*it);
    for (; it != x.end(); ++it) *it = f.mul(*it, iv);
    return true;
}

Point make_point(const Field& f, Vec x)
{
    if (!normalize(f, x)) throw Error(ErrorKind::InconsistentInput, "zero vector is not a point");
    return Point{std::move(x)};
}

void PointSet::add(const Point& p, std::uint64_t mult)
{
    if (p.x.size() != v_) throw Error(ErrorKind::AmbientMismatch, "point does not match ambient dimension");
    if (mult == 0) return;
    pts_[p] += mult;
}

std::uint64_t PointSet::cardinality() const
{
    std::uint64_t n = 0;
    for (const auto& [p, m] : pts_) n += m;
    return n;
}

bool PointSet::is_set() const
{
    return std::all_of(pts_.begin(), pts_.end(), [](const auto& kv) { return kv.second == 1; });
}

std::uint64_t PointSet::multiplicity(const Point& p) const
{
    auto it = pts_.find(p);
    return it == pts_.end() ? 0 : it->second;
}

std::vector<Point> PointSet::points() const
{
    std::vector<Point> out;
    out.reserve(pts_.size());
    for (const auto& [p, m] : pts_) out.push_back(p);
    return out;
}

namespace {
// Iterates the normalized coefficient vectors of F_q^k in lexicographic order.
template <class Fn>
void for_each_normalized(std::uint64_t q, std::size_t k, Fn&& fn)
{
    Vec c(k, 0);
    for (std::size_t pos = k; pos-- > 0;) {
        // c = (0, ..., 0, 1, *, ..., *) with the leading 1 at `pos`.
        std::fill(c.begin(), c.end(), 0);
        c[pos] = 1;
        const std::size_t tail = k - pos - 1;
        std::uint64_t count = gfcore::ipow_u64(q, unsigned(tail));
        for (std::uint64_t t = 0; t < count; ++t) {
            std::uint64_t r = t;
            for (std::size_t i = k; i-- > pos + 1;) {
                c[i] = Elem(r % q);
                r /= q;
            }
            fn(c);
        }
    }
}
}  // namespace

std::vector<Point> enumerate_points(const Subspace& x)
{
    const Field& f = *x.field();
    check_budget(f.q(), x.dim());
    std::vector<Point> out;
    const std::size_t k = x.dim(), v = x.ambient();
    for_each_normalized(f.q(), k, [&](const Vec& c) {
        Vec p(v, 0);
        for (std::size_t i = 0; i < k; ++i) {
            if (c[i] == 0) continue;
            for (std::size_t j = 0; j < v; ++j) p[j] = f.add(p[j], f.mul(c[i], x.canonical()(i, j)));
        }
        out.push_back(Point{std::move(p)});
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Point> enumerate_all_points(const FieldPtr& f, std::size_t v)
{
    check_budget(f->q(), v);
    std::vector<Point> out;
    for_each_normalized(f->q(), v, [&](const Vec& c) { out.push_back(Point{c}); });
    return out;
}

std::vector<Subspace> enumerate_hyperplanes(const FieldPtr& f, std::size_t v)
{
    std::vector<Subspace> out;
    for (const auto& h : enumerate_all_points(f, v)) out.push_back(perp(canonicalize(f, v, {h.x})));
    return out;
}

std::vector<Subspace> enumerate_subspaces(const FieldPtr& f, std::size_t v, std::size_t k)
{
    const gfcore::BigInt total = gfcore::gaussian_binomial(long(v), long(k), f->q());
    if (total > g_budget) throw Error(ErrorKind::BudgetExceeded, "enumeration of " + total.str() + " subspaces exceeds budget");
    std::vector<Subspace> out;
    if (k > v) return out;
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    const std::uint64_t q = f->q();
    while (true) {
        // Free positions: row i, non-pivot column j > piv[i].
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = piv[i] + 1; j < v; ++j)
                if (!std::binary_search(piv.begin(), piv.end(), j)) free.emplace_back(i, j);
        std::vector<Elem> digit(free.size(), 0);
        while (true) {
            Matrix m(f, k, v);
            for (std::size_t i = 0; i < k; ++i) m(i, piv[i]) = 1;
            for (std::size_t t = 0; t < free.size(); ++t) m(free[t].first, free[t].second) = digit[t];
            out.emplace_back(m, piv, v);
            std::size_t t = free.size();
            while (t > 0) {
                --t;
                if (++digit[t] < q) break;
                digit[t] = 0;
                if (t == 0) {
                    t = std::size_t(-1);
                    break;
                }
            }
            if (free.empty() || t == std::size_t(-1)) break;
        }
        // Next pivot combination in lexicographic order.
        std::size_t i = k;
        while (i > 0 && piv[i - 1] == v - k + i - 1) --i;
        if (i == 0) break;
        ++piv[i - 1];
        for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

PointSet point_set_of(const Subspace& x)
{
    PointSet c(x.field(), x.ambient());
    for (const auto& p : enumerate_points(x)) c.add(p);
    return c;
}

PointSet restrict(const PointSet& c, const Subspace& x)
{
    if (c.ambient() != x.ambient()) throw Error(ErrorKind::AmbientMismatch, "restriction to a subspace of another space");
    PointSet out(c.field(), c.ambient());
    for (const auto& [p, m] : c.items())
        if (x.contains(p.x)) out.add(p, m);
    return out;
}

PointSet quotient(const PointSet& c, const Subspace& x)
{
    if (c.ambient() != x.ambient()) throw Error(ErrorKind::AmbientMismatch, "quotient by a subspace of another space");
    const Field& f = *c.field();
    PointSet out(c.field(), x.ambient() - x.dim());
    for (const auto& [p, m] : c.items()) {
        Vec r = x.reduce(p.x);
        if (!normalize(f, r)) continue;
        out.add(Point{std::move(r)}, m);
    }
    return out;
}

std::string format_matrix(const Matrix& m)
{
    std::ostringstream os;
    const bool compact = m.field->q() <= 10;
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (!compact && j) os << ' ';
            os << m(i, j);
        }
        os << '\n';
    }
    return os.str();
}

Matrix parse_matrix(const FieldPtr& f, const std::string& text)
{
    std::vector<Vec> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        Vec row;
        const bool tokens = line.find_first_of(" \t,") != std::string::npos && f->q() > 10;
        if (tokens) {
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) row.push_back(Elem(std::stoul(tok)));
        } else {
            for (char ch : line) {
                if (std::isspace(static_cast<unsigned char>(ch)) || ch == '&' || ch == ',') continue;
                if (!std::isdigit(static_cast<unsigned char>(ch)))
                    throw Error(ErrorKind::ParseError, std::string("unexpected character '") + ch + "'");
                row.push_back(Elem(ch - '0'));
            }
        }
        if (row.empty()) continue;
        for (auto e : row)
            if (e >= f->q()) throw Error(ErrorKind::ParseError, "entry outside the field");
        if (!rows.empty() && row.size() != rows.front().size()) throw Error(ErrorKind::ParseError, "ragged matrix rows");
        rows.push_back(std::move(row));
    }
    Matrix m(f, rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}

std::string format_vector(const Field& f, const Vec& x)
{
    std::ostringstream os;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (f.q() > 10 && j) os << ' ';
        os << x[j];
    }
    return os.str();
}

}  // namespace projgeom
