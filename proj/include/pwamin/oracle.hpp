#ifndef PWAMIN_ORACLE_HPP
#define PWAMIN_ORACLE_HPP

#include <optional>
#include <vector>

#include "pwamin/pwa.hpp"
#include "pwamin/scalar.hpp"

namespace pwamin {

// Exact LP-backed decision procedures for the convex-hull conditions.
// These are the ground truth the rest of the project is checked against,
// so everything here runs in exact arithmetic and every certificate is
// re-verified before being returned.

enum class CertificateFlavor { Feasible, StrictlyFeasible };

/// Convex weights lambda with sum 1 and sum lambda_i a_i = 0, witnessing
/// 0 in conv (Feasible, lambda >= 0) or 0 in rint conv (StrictlyFeasible,
/// lambda > 0).
struct DualCertificate {
    std::vector<Rational> lambda;
    CertificateFlavor flavor = CertificateFlavor::Feasible;
};

/// Re-checks the defining constraints of a certificate against X.
bool certificate_is_valid(const std::vector<Vec<Rational>>& xs, const DualCertificate& cert);

struct ConvResult {
    bool contains = false;
    std::optional<DualCertificate> certificate;
};

/// 0 in conv X?
ConvResult contains_origin_conv(const std::vector<Vec<Rational>>& xs);

/// 0 in rint conv X? Decided by maximizing the minimum convex weight.
ConvResult contains_origin_rint_conv(const std::vector<Vec<Rational>>& xs);

/// f bounded below iff 0 in conv of the rows of A.
bool is_bounded_below(const PwaFunction<Rational>& f);

/// x minimizes f iff 0 in conv of the active rows at x.
bool is_global_minimizer(const PwaFunction<Rational>& f, const Point<Rational>& x);

enum class MinStatus { Optimal, Unbounded };

/// Exact minimization of f via the LP min{ z | Ax + b <= z }, cross-checked
/// against the independently solved dual max{ b^T lambda | lambda >= 0,
/// 1^T lambda = 1, A^T lambda = 0 }.
struct MinResult {
    MinStatus status = MinStatus::Unbounded;
    Point<Rational> minimizer;          // Optimal only
    Rational value;                     // Optimal only
    std::optional<DualCertificate> dual; // Optimal only
};

MinResult solve_min_lp(const PwaFunction<Rational>& f);

/// Is { Ax | Ax <= b } bounded? Throws EmptyFeasibleSetError when the
/// set is empty, in which case the question is void.
bool y_set_is_bounded(const PwaFunction<Rational>& f);

} // namespace pwamin

#endif
