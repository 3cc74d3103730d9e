// Partial spreads, vector space partitions and hole sets.
#pragma once

#include "spreadlab/projgeom.hpp"

#include <map>
#include <string>
#include <vector>

namespace spreadlab {

using gfcore::FieldPtr;
using projgeom::PointSet;
using projgeom::Subspace;

struct PartialSpread {
    FieldPtr field;
    std::size_t v = 0;
    std::size_t k = 0;
    std::vector<Subspace> members;

    std::size_t size() const { return members.size(); }
};

/// The k-spread of F_q^{kt} obtained from the points of PG(t-1, q^k), one member per point.
PartialSpread spread_field_reduction(std::uint64_t q, unsigned k, unsigned t);

/// q^{v-k} members (I_k | B), B the first k rows of the matrices M(beta) over F_{q^{v-k}}. Requires v >= 2k.
PartialSpread lifted_mrd(std::uint64_t q, unsigned v, unsigned k);

/// v = tk + r with t >= 2 and 1 <= r < k: t-1 lifted layers plus the span of the last k unit vectors.
PartialSpread multicomponent(std::uint64_t q, unsigned v, unsigned k);

/// Prepends k zero coordinates to every member and adds a lifted layer of size q^v.
PartialSpread extend_spread(const PartialSpread& s);

struct Violation {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t dim = 0;  ///< dimension of the intersection, or of member i on a dimension mismatch (j == i)
};

/// Empty when every member has dimension k and all pairwise intersections are trivial.
std::vector<Violation> verify_partial_spread(const std::vector<Subspace>& members, std::size_t k);

/// Uncovered points. Throws InconsistentInput when members overlap.
PointSet holes(const PartialSpread& s);

struct VspReport {
    bool ok = false;
    std::map<std::size_t, std::size_t> type;  ///< dimension -> number of members
    std::uint64_t uncovered = 0;  ///< points of PG(v-1, q) covered by no member
    std::uint64_t overcovered = 0;  ///< points covered more than once
};

VspReport verify_vsp(const std::vector<Subspace>& members, std::size_t v);

/// Header `q v k n`, then n canonical matrices separated by blank lines.
std::string format_spread(const PartialSpread& s);
PartialSpread parse_spread(const std::string& text);

}  // namespace spreadlab
