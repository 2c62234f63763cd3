#ifndef PWAMIN_SIMPLEX_HPP
#define PWAMIN_SIMPLEX_HPP

#include <vector>

#include "pwamin/scalar.hpp"

namespace pwamin {

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Result of min c^T x s.t. M x = d, x >= 0, with a checkable
/// certificate for each status:
///  - Optimal: `solution` (feasible) and `dual` with dual^T M <= c
///    componentwise and dual^T d = objective.
///  - Unbounded: `solution` feasible plus `ray` with M ray = 0,
///    ray >= 0, c^T ray < 0.
///  - Infeasible: `farkas` with farkas^T M <= 0 and farkas^T d > 0.
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> solution;
    Rational objective;
    std::vector<Rational> dual;
    std::vector<Rational> ray;
    std::vector<Rational> farkas;
};

/// Dense two-phase primal simplex over exact rationals with Bland's
/// anti-cycling rule. Built for desk-scale certified ground truth, not
/// for performance.
LpResult solve_standard_lp(const std::vector<std::vector<Rational>>& m,
                           const std::vector<Rational>& d,
                           const std::vector<Rational>& c);

} // namespace pwamin

#endif
