// Bounds for A_q(v, 2k; k), the maximum size of a partial k-spread in F_q^v.
#pragma once

#include "spreadlab/gfcore.hpp"

#include <optional>
#include <string>
#include <vector>

namespace boundsengine {

using gfcore::BigInt;
using gfcore::Rational;

/// v = k t + r with 0 <= r < k.
struct Params {
    std::uint64_t q = 2;
    unsigned v = 0;
    unsigned k = 0;
    unsigned t = 0;
    unsigned r = 0;
};

Params split(std::uint64_t q, unsigned v, unsigned k);

/// l = (q^{v-k} - q^r) / (q^k - 1).
BigInt l_of(std::uint64_t q, unsigned v, unsigned k);
/// floor([v 1]_q / [k 1]_q) = l q^k + q^r.
BigInt trivial_upper(std::uint64_t q, unsigned v, unsigned k);
/// [t 1]_{q^k} when k divides v; WrongResidue otherwise.
BigInt spread_exact(std::uint64_t q, unsigned v, unsigned k);
/// l q^k + 1.
BigInt multicomponent_lower(std::uint64_t q, unsigned v, unsigned k);
/// Exact value for r = 1.
BigInt beutelspacher(std::uint64_t q, unsigned v, unsigned k);
/// l q^k + q^r - ceil(theta), 2 theta = sqrt(1 + 4 q^k (q^k - q^r)) - (2 q^k - 2 q^r + 1).
BigInt drake_freeman(std::uint64_t q, unsigned v, unsigned k);
/// Exact value for q = 2, r = 2, k >= 4.
BigInt q2_r2_exact(std::uint64_t q, unsigned v, unsigned k);
/// q = 3, r = 2, k >= 4: l q^k + q^r - 5.
BigInt q3_r2_upper(unsigned v, unsigned k);
/// l q^k + 1 + z (q-1) with z = max(0, [r 1]_q + 1 - k); needs k > r.
BigInt main_theorem_1_upper(std::uint64_t q, unsigned v, unsigned k);
/// Minimum over max(r, 2) <= y <= k of l q^k + ceil(lambda - 1/2 - sqrt(1 + 4 lambda (lambda - (z+y-1)(q-1) - 1))/2),
/// lambda = q^y, z = [r 1]_q + 1 - k >= 0.
BigInt main_theorem_2_upper(std::uint64_t q, unsigned v, unsigned k);
/// The same bound at one y; empty when the discriminant is negative.
std::optional<BigInt> main_theorem_2_at(std::uint64_t q, unsigned v, unsigned k, unsigned y);

struct DfEstimate {
    Rational sigma_lower;  ///< sigma exceeds this
    Rational theta_upper;  ///< the Drake-Freeman theta is at most this
    Rational a_upper;  ///< A_q(v, 2k; k) is below this
    std::optional<Rational> a_upper_simple;  ///< l q^k + 1 + q^r / 2 when k >= 2r
};

/// Rational envelope with 2.91 < (3 + 2 sqrt 2)/2 and 16/3 < 5.34 for the surd terms.
DfEstimate df_estimate(std::uint64_t q, unsigned v, unsigned k);

/// Smallest N <= start for which the [v 1]_q - N [k 1]_q holes are not excluded as a q^{k-1}-divisible set.
struct HolesResult {
    BigInt upper;
    std::vector<std::string> trace;
};
HolesResult divisible_holes_upper(std::uint64_t q, unsigned v, unsigned k, const BigInt& start);

/// Holes of a partial k-spread of size lq^k + x in F_q^{kt+r}: [k+r 1]_q - x [k 1]_q, for every t.
BigInt hole_count(std::uint64_t q, unsigned v, unsigned k, const BigInt& size);

struct FormulaValue {
    std::string name;
    bool lower = false;
    std::optional<BigInt> value;  ///< empty when not applicable
    std::string note;
};

struct BoundReport {
    Params p;
    BigInt lower;
    BigInt upper;
    std::string lower_source;
    std::string upper_source;
    BigInt sigma_min;  ///< trivial_upper - upper
    BigInt sigma_max;  ///< trivial_upper - lower
    std::vector<FormulaValue> per_formula;
    std::vector<std::string> chain;  ///< divisibility steps behind the upper bound
};

BoundReport best_bounds(std::uint64_t q, unsigned v, unsigned k);

}  // namespace boundsengine
