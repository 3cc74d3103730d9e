// Divisible point sets: the divisibility predicate, hyperplane spectra and constructions.
#pragma once

#include "spreadlab/projgeom.hpp"

#include <optional>
#include <string>
#include <vector>

namespace divset {

using gfcore::BigInt;
using projgeom::Point;
using projgeom::PointSet;
using projgeom::Subspace;
using projgeom::Vec;

struct DivisibleSet {
    PointSet set;
    std::uint64_t delta = 1;  ///< claimed divisor, a power of p
    std::string recipe;

    std::uint64_t cardinality() const { return set.cardinality(); }
};

enum class DivKind { Strong, Weak, No };

struct DivResult {
    DivKind kind = DivKind::No;
    std::uint64_t u = 0;  ///< common residue of |C cap H| mod delta (Strong: equals |C| mod delta)
    std::optional<Vec> witness;  ///< normal vector of a hyperplane breaking the congruence
};

/// |C cap H| for every hyperplane, indexed like enumerate_all_points(field, v) (normal vectors).
std::vector<std::uint64_t> hyperplane_counts(const PointSet& c);

DivResult is_divisible(const PointSet& c, std::uint64_t delta);
const char* to_string(DivKind k);

struct Spectrum {
    std::uint64_t n = 0;
    std::size_t v = 0;
    std::uint64_t q = 0;
    std::size_t dimension = 0;  ///< dim <C>
    std::vector<BigInt> a;  ///< a[i] = number of hyperplanes meeting C in exactly i points
    BigInt residual[3];  ///< standard equations, lhs minus rhs

    /// Weight distribution of the associated code of length n and dimension dim <C>.
    std::vector<BigInt> weight_distribution() const;
    bool standard_equations_hold() const { return residual[0] == 0 && residual[1] == 0 && residual[2] == 0; }
};

Spectrum spectrum(const PointSet& c);
/// Standard-equation residuals for a hyperplane-count vector; equal_pairs is sum over points of C(mult, 2).
void standard_residuals(std::uint64_t q, std::size_t v, std::uint64_t n, const std::vector<BigInt>& a, BigInt out[3],
                        const BigInt& equal_pairs = 0);

std::size_t span_dimension(const PointSet& c);

/// Points of a generator matrix: its columns, normalized; zero columns are rejected.
PointSet columns_as_points(const gfcore::Matrix& g);
bool is_projective_columns(const gfcore::Matrix& g);

DivisibleSet construct_subspace(const Subspace& y);
DivisibleSet construct_affine(const Subspace& y, const Subspace& x);
DivisibleSet disjoint_union(const DivisibleSet& c1, const DivisibleSet& c2);

enum class SunflowerVariant { QPetals, QPlus1WithCenter };
DivisibleSet sunflower_union(std::uint64_t q, const std::vector<std::size_t>& petal_dims, std::size_t center_dim,
                             SunflowerVariant variant);

/// Sizes [2r 1]_q + i(q^{r+1} - q^r - [r 1]_q) for 0 <= i <= q^r + 1; i = 0 is the bare 2r-space.
DivisibleSet construction1(std::uint64_t q, unsigned r, std::uint64_t i);

enum class ConeVariant { RemoveVertex, KeepVertex };
DivisibleSet cone(const DivisibleSet& base, std::size_t vertex_dim, ConeVariant variant);

DivisibleSet construction4(std::uint64_t q, unsigned r, unsigned m, std::uint64_t a, const std::vector<std::uint64_t>& b);

/// Each point over F_{p^e} becomes the point set of the e-dimensional F_p-subspace it spans.
PointSet field_reduction_points(const PointSet& c, std::uint64_t target_q);

/// Elliptic quadric x0 x1 + x2^2 + b x2 x3 + c x3^2 = 0 with the smallest irreducible t^2 + b t + c.
PointSet ovoid(std::uint64_t q);

/// Geometric recipes for the three 4-divisible 17-point sets over F_2 of dimensions 6, 7, 8.
DivisibleSet h6();
DivisibleSet h7();
DivisibleSet h8();

/// Every (v-j)-subspace meets C in a q^{r-j}-divisible set.
bool residual_check(const DivisibleSet& c, unsigned j);

/// Checks chi_C == sum coef_i chi_{C_i} pointwise.
bool characteristic_identity(const PointSet& c, const std::vector<std::pair<long long, PointSet>>& terms);

BigInt frobenius_upper(std::uint64_t q, unsigned r);
struct Representation {
    BigInt a;
    BigInt b;
};
/// n = a [r+1 1]_q + b q^{r+1} with a, b >= 0 and a minimal.
std::optional<Representation> representable(std::uint64_t q, unsigned r, const BigInt& n);

/// Header `q v n`, then one normalized coordinate row per point; multiset points repeat.
std::string format_point_set(const PointSet& c);
PointSet parse_point_set(const std::string& text);

/// Exact exponent e with q^e == delta, or nullopt.
std::optional<unsigned> log_q(std::uint64_t q, std::uint64_t delta);

}  // namespace divset
