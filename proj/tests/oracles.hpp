// Brute-force references used by the test suites and the acceptance binary. Nothing here calls the library's
// arithmetic: vectors over prime fields are plain integer tuples.
#pragma once

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<unsigned>;

/// All vectors of F_p^v in lexicographic order.
std::vector<Vec> all_vectors(unsigned p, unsigned v);

/// Nonzero vectors whose first nonzero entry is 1.
std::vector<Vec> normalized_vectors(unsigned p, unsigned v);

/// Set of vectors spanned over F_p.
std::set<Vec> span(unsigned p, const std::vector<Vec>& gens, unsigned v);

/// Rank over F_p by elimination on a copy.
unsigned rank(unsigned p, std::vector<Vec> rows);

/// Number of k-subspaces of F_p^v, counted as distinct spans of k-tuples.
std::uint64_t count_subspaces(unsigned p, unsigned v, unsigned k);

/// Size of a largest set of pairwise disjoint k-subspaces of F_2^v, by exhaustive branch and bound.
unsigned max_partial_spread_q2(unsigned v, unsigned k);

/// a[i] = number of hyperplanes meeting the point multiset in i points.
std::vector<std::uint64_t> hyperplane_spectrum(unsigned p, unsigned v, const std::vector<Vec>& points);

/// Weight distribution of the row space of g (rows of length n) over F_p.
std::vector<std::uint64_t> weight_distribution(unsigned p, const std::vector<Vec>& g);

/// Weight distribution of the dual of the row space of g, by enumerating F_p^n.
std::vector<std::uint64_t> dual_weight_distribution(unsigned p, const std::vector<Vec>& g);

/// Minimum of the tau quadratic over 1 <= m <= floor((q delta + 2) / 4), by scanning every m; returns 1 when the
/// window is empty.
long long tau_min(long long q, long long c, long long delta, long long* argmin = nullptr);

}  // namespace oracle
