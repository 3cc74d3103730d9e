// Non-existence tests for q^r-divisible sets: tau, averaging, the cubic test and the MacWilliams LP.
#pragma once

#include "spreadlab/lp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace macwlp {

using gfcore::BigInt;
using gfcore::Rational;

/// K_i(j) for length n over F_q.
BigInt krawtchouk(std::uint64_t n, std::uint64_t i, std::uint64_t j, std::uint64_t q);

/// Dual weight distribution of an [n, k]_q code given a[0..n]; throws InconsistentInput if not integral.
std::vector<BigInt> macwilliams_transform(const std::vector<BigInt>& a, unsigned k, std::uint64_t q);

BigInt tau(std::uint64_t q, const BigInt& c, const BigInt& delta, const BigInt& m);

struct TauWitness {
    BigInt m;
    BigInt value;
};

/// Largest admissible m: floor((q delta + 2) / 4).
BigInt tau_window(std::uint64_t q, const BigInt& delta);
/// The m in [1, window] minimizing tau, when that minimum is negative.
std::optional<TauWitness> tau_exclude(std::uint64_t q, const BigInt& n, const BigInt& delta);

/// (q-1) sum_{h<=m} h a_{u+h delta} minus (u + m delta - u q) q^{v-1}/delta - m; zero for every delta-divisible set
/// whose hyperplane multiplicities lie in {u, u + delta, ..., u + m delta = n}. a is indexed by intersection size.
Rational linear_identity_residual(std::uint64_t q, std::uint64_t delta, std::uint64_t u, std::uint64_t m,
                                  const std::vector<BigInt>& a, std::size_t v);

/// No nonempty set has every hyperplane multiplicity at least n/q in {u, ..., n}.
bool average_exclude(std::uint64_t q, const BigInt& n, const BigInt& u);

struct AverageBound {
    BigInt bound;  ///< some (v-j)-subspace meets C in at most this many points
    BigInt residue;  ///< ... and that number is congruent to residue
    BigInt modulus;  ///< ... modulo this
    unsigned level = 0;  ///< the intersection is q^level-divisible
};

/// n = a q^{r+1} + b with y = (q-1) b mod q^{r+1}.
AverageBound average_bound(std::uint64_t q, unsigned r, const BigInt& a, const BigInt& b, const BigInt& y);
AverageBound iterated_average(std::uint64_t q, unsigned r, const BigInt& a, const BigInt& b, const BigInt& y,
                              unsigned j);
/// Smallest y >= 1 with y = (q-1) b mod q^{r+1}.
BigInt default_y(std::uint64_t q, unsigned r, const BigInt& b);
/// Largest j accepted by iterated_average for this y.
unsigned max_depth(std::uint64_t q, unsigned r, const BigInt& y);

struct CubicValues {
    BigInt h;
    BigInt g2;
    BigInt g1;
    BigInt g0;
};

CubicValues cubic_values(std::uint64_t q, const BigInt& n, const BigInt& delta, const BigInt& t);
/// Requires n/delta outside [t, t+1]; excluded when h >= 0 and g2 < 0.
bool cubic_exclude(std::uint64_t q, const BigInt& n, const BigInt& delta, const BigInt& t);
/// First t >= 0 for which cubic_exclude holds.
std::optional<BigInt> cubic_search(std::uint64_t q, const BigInt& n, const BigInt& delta);

/// Reason string when n is excluded by the representability interval or the r = 1 characterisation.
std::optional<std::string> exclusion_interval(std::uint64_t q, unsigned r, const BigInt& n);

/// ZeroWeight carries a weight; MinY, MaxY and FixK carry a dimension k, with y = q^(k-3).
struct Rule {
    enum class Kind { ZeroWeight, MinY, MaxY, FixK };
    Kind kind = Kind::ZeroWeight;
    BigInt value;
    std::string reason;
};

struct LpProblem {
    std::uint64_t q = 2;
    BigInt n;
    BigInt delta;
    std::vector<BigInt> weights;  ///< allowed nonzero weights
    unsigned identities = 4;  ///< 3 or 4 MacWilliams identities
    std::vector<Rule> rules;
};

/// Weights n - n' with n' = n mod delta, n' <= n - delta, and no level-(r-1) exclusion for n'.
std::vector<BigInt> default_weights(std::uint64_t q, unsigned r, const BigInt& n);
LpProblem default_problem(std::uint64_t q, unsigned r, const BigInt& n);

/// Variables A_w per weight, then x = y A_3^perp (with 4 identities), then y unless a FixK rule is present.
lp::System build_system(const LpProblem& p, std::optional<unsigned> k = std::nullopt);

std::pair<unsigned, unsigned> k_range(std::uint64_t q, unsigned r, const BigInt& n);

struct KSolution {
    unsigned k = 0;
    bool feasible = false;
    bool unique = false;
    std::vector<Rational> lo;  ///< per variable of the fixed-k system
    std::vector<Rational> hi;
};

struct LpReport {
    bool feasible = true;
    lp::System system;
    lp::Result result;
    bool certificate_checked = false;
    std::optional<lp::SolvedForm> solved;
    std::optional<lp::Projection> projection;  ///< onto y, when the elimination stays small
    std::vector<KSolution> per_k;
};

/// Exact feasibility with y continuous, plus one fixed-k system per k in dims.
LpReport lp_feasibility(const LpProblem& p, std::optional<std::pair<unsigned, unsigned>> dims = std::nullopt);

enum class Existence { Exists, ExistsCited, DecidedCited, Excluded, Undecided };
enum class Stage { Trivial, Constructive, Cited, Interval, Tau, Average, Lp, Cubic, None };

struct Verdict {
    Existence status = Existence::Undecided;
    Stage stage = Stage::None;
    std::vector<std::string> certificate;
};

const char* to_string(Existence e);
const char* to_string(Stage s);

/// Existence of a q^r-divisible set of n points.
Verdict existence_status(std::uint64_t q, unsigned r, const BigInt& n);

/// Arithmetic-only exclusion (interval, tau, cubic, iterated averaging); safe for very large n.
bool excluded_analytic(std::uint64_t q, unsigned r, const BigInt& n, std::vector<std::string>* trace = nullptr);

void clear_caches();

}  // namespace macwlp
