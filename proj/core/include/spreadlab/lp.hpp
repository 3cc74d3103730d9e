// Exact rational linear feasibility: simplex with Farkas certificates, solved forms and Fourier-Motzkin projection.
#pragma once

#include "spreadlab/gfcore.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lp {

using gfcore::Rational;

/// sum coef[j] * z[j] (= or >=) rhs.
struct Constraint {
    std::vector<Rational> coef;
    Rational rhs;
    std::string label;
};

/// Every variable is nonnegative.
struct System {
    std::vector<std::string> names;
    std::vector<Constraint> eq;
    std::vector<Constraint> ge;

    std::size_t nvars() const { return names.size(); }
};

enum class Status { Optimal, Infeasible, Unbounded };

/// Multipliers u (free, on eq) and lambda (>= 0, on ge) with E^T u + G^T lambda <= 0 and u.f + lambda.h > 0.
struct Farkas {
    std::vector<Rational> eq;
    std::vector<Rational> ge;
};

struct Result {
    Status status = Status::Infeasible;
    std::vector<Rational> x;
    Rational value;
    Farkas certificate;  ///< filled when infeasible
};

/// Minimizes objective . z with Bland's rule; exact throughout.
Result minimize(const System& s, const std::vector<Rational>& objective);
Result feasibility(const System& s);

/// Independent replay of an infeasibility certificate.
bool check_infeasibility(const System& s, const Farkas& cert);
bool check_point(const System& s, const std::vector<Rational>& z);

/// Equalities solved for basic variables: z[basic[i]] = constant[i] + sum_j coef[i][j] * z[free[j]].
struct SolvedForm {
    bool consistent = true;
    std::vector<std::size_t> basic;
    std::vector<std::size_t> free;
    std::vector<Rational> constant;
    std::vector<std::vector<Rational>> coef;
};

/// Gauss-Jordan on the equality rows, pivoting on the preferred variables first.
SolvedForm solve_for(const System& s, const std::vector<std::size_t>& preferred);

/// A derived single-variable bound together with the nonnegative combination that produced it.
struct DerivedBound {
    Rational value;
    bool upper = false;
    std::vector<std::pair<std::size_t, Rational>> combination;  ///< indices into Projection::sources
};

struct Projection {
    bool feasible = true;
    std::size_t variable = 0;
    std::vector<std::string> sources;  ///< the inequalities "basic >= 0", "free >= 0" and substituted ge rows
    std::optional<DerivedBound> lower;
    std::optional<DerivedBound> upper;
    std::optional<DerivedBound> contradiction;  ///< a combination reducing to value >= 0 with value < 0
};

/// Fourier-Motzkin elimination of every free variable except `keep`; throws BudgetExceeded past max_rows.
Projection project(const System& s, const SolvedForm& form, std::size_t keep, std::size_t max_rows = 4096);

std::string format_linear(const std::vector<std::string>& names, const std::vector<std::size_t>& vars,
                          const Rational& constant, const std::vector<Rational>& coef);

}  // namespace lp
