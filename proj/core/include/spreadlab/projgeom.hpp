// Linear algebra over F_q and the projective geometry PG(v-1, q).
#pragma once

#include "spreadlab/gfcore.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace projgeom {

using gfcore::Elem;
using gfcore::FieldPtr;
using gfcore::Matrix;
using Vec = std::vector<Elem>;

/// Maximum number of points any enumeration may produce (SPREADLAB_BUDGET in the CLI).
std::uint64_t enumeration_budget();
void set_enumeration_budget(std::uint64_t b);

struct Rref {
    Matrix m;
    std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form with zero rows dropped.
Rref rref(const Matrix& m);

class Subspace {
public:
    Subspace() = default;
    /// Takes an RREF full-rank matrix and its pivot columns.
    Subspace(Matrix canonical, std::vector<std::size_t> pivots, std::size_t ambient);

    const FieldPtr& field() const { return canon_.field; }
    std::size_t ambient() const { return v_; }
    std::size_t dim() const { return pivots_.size(); }
    const Matrix& canonical() const { return canon_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const Vec& x) const;
    bool contains(const Subspace& y) const;
    /// Coordinates of x modulo this subspace: x reduced by the canonical rows, restricted to the non-pivot columns.
    Vec reduce(const Vec& x) const;
    std::vector<std::size_t> free_columns() const;

    bool operator==(const Subspace& o) const { return v_ == o.v_ && canon_ == o.canon_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const;

private:
    Matrix canon_;
    std::vector<std::size_t> pivots_;
    std::size_t v_ = 0;
};

Subspace canonicalize(const FieldPtr& f, std::size_t v, const std::vector<Vec>& generators);
Subspace canonicalize(const Matrix& generators);
Subspace zero_subspace(const FieldPtr& f, std::size_t v);
Subspace full_space(const FieldPtr& f, std::size_t v);
/// Span of the unit vectors e_i for i in idx (0-based).
Subspace coordinate_subspace(const FieldPtr& f, std::size_t v, const std::vector<std::size_t>& idx);

Subspace sum(const Subspace& x, const Subspace& y);
Subspace intersect(const Subspace& x, const Subspace& y);
/// Orthogonal complement for the standard bilinear form.
Subspace perp(const Subspace& x);

int subspace_distance(const Subspace& x, const Subspace& y);
int injection_distance(const Subspace& x, const Subspace& y);

/// Row space of (I_k | B).
Subspace lift(const Matrix& b);

Elem dot(const gfcore::Field& f, const Vec& a, const Vec& b);
/// Scales x so that its first nonzero coordinate is 1; returns false for the zero vector.
bool normalize(const gfcore::Field& f, Vec& x);

struct Point {
    Vec x;
    bool operator==(const Point& o) const { return x == o.x; }
    bool operator<(const Point& o) const { return x < o.x; }
};

Point make_point(const gfcore::Field& f, Vec x);

/// Multiset of points with a common ambient dimension; points are kept sorted and distinct.
class PointSet {
public:
    PointSet() = default;
    PointSet(FieldPtr f, std::size_t v) : f_(std::move(f)), v_(v) {}

    const FieldPtr& field() const { return f_; }
    std::size_t ambient() const { return v_; }
    void add(const Point& p, std::uint64_t mult = 1);
    std::uint64_t cardinality() const;
    std::size_t support_size() const { return pts_.size(); }
    bool is_set() const;
    std::uint64_t multiplicity(const Point& p) const;

    const std::map<Point, std::uint64_t>& items() const { return pts_; }
    std::vector<Point> points() const;

    bool operator==(const PointSet& o) const { return v_ == o.v_ && pts_ == o.pts_; }

private:
    FieldPtr f_;
    std::size_t v_ = 0;
    std::map<Point, std::uint64_t> pts_;
};

/// Normalized points of X in lexicographic order.
std::vector<Point> enumerate_points(const Subspace& x);
std::vector<Point> enumerate_all_points(const FieldPtr& f, std::size_t v);
/// Hyperplanes as kernels of the normalized normal vectors, in lexicographic order of the normals.
std::vector<Subspace> enumerate_hyperplanes(const FieldPtr& f, std::size_t v);

/// All k-subspaces of F_q^v, ordered by pivot set then free entries.
std::vector<Subspace> enumerate_subspaces(const FieldPtr& f, std::size_t v, std::size_t k);

PointSet point_set_of(const Subspace& x);
PointSet restrict(const PointSet& c, const Subspace& x);
/// Multiset C/X in PG(V/X), coordinates on the free columns of X.
PointSet quotient(const PointSet& c, const Subspace& x);

/// Text format: one row per line; digits when q <= 10, else whitespace-separated element indices.
std::string format_matrix(const Matrix& m);
Matrix parse_matrix(const FieldPtr& f, const std::string& text);
std::string format_vector(const gfcore::Field& f, const Vec& x);

}  // namespace projgeom
