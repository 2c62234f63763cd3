#ifndef PWAMIN_COORDINATE_HPP
#define PWAMIN_COORDINATE_HPP

#include <algorithm>
#include <cassert>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pwamin/envelope.hpp"
#include "pwamin/pwa.hpp"
#include "pwamin/signs.hpp"

namespace pwamin {

enum class UpdateRule { Unique, Proximal };

enum class RunStatus { FixedPoint, CycleBudgetExhausted, DivergenceSuspected };

inline const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::FixedPoint: return "FixedPoint";
        case RunStatus::CycleBudgetExhausted: return "CycleBudgetExhausted";
        case RunStatus::DivergenceSuspected: return "DivergenceSuspected";
    }
    return "?";
}

inline const char* to_string(UpdateRule r) {
    return r == UpdateRule::Unique ? "unique" : "proximal";
}

/// One coordinate update: which variable moved where, and the objective
/// right after.
template <class S>
struct IterationRow {
    long cycle;
    long iteration;
    int coord;      // 1-based
    S x_coord;      // value of x_j after the update
    S max_y;
};

/// One full sweep: objective, violation measure and step size at the end
/// of the cycle. e_y is absent when no slack makes the active sign set
/// closable (possible under the proximal rule only).
template <class S>
struct CycleRow {
    long cycle;
    long iteration;
    S max_y;
    std::optional<S> e_y;
    S step_inf_norm;
};

template <class S>
struct SweepTrace {
    std::vector<IterationRow<S>> iterations;
    std::vector<CycleRow<S>> cycles;
};

// --- y-space primitives -------------------------------------------------
//
// The update maps act on any y in R^m, not only on y = Ax + b; the
// property tests exercise them on arbitrary vectors.

namespace detail {

template <class S>
void column_lines(const PwaFunction<S>& f, const Vec<S>& y, std::size_t col,
                  std::vector<Line<S>>& neg, std::vector<Line<S>>& pos) {
    neg.clear();
    pos.clear();
    for (std::size_t i = 0; i < f.row_count(); ++i) {
        const S& a = f.coeff(i, col);
        if (a < S(0)) neg.push_back({a, y[i]});
        else if (a > S(0)) pos.push_back({a, y[i]});
    }
}

} // namespace detail

/// Applies the unique-rule update for coordinate j (1-based) to y in
/// place and returns the shift applied to x_j. An all-zero column is a
/// no-op; a single-signed column violates the rule's precondition.
///
/// The shift is the unique root of
///   max_{i : a_ij < 0} (a_ij t + y_i) = max_{i : a_ij > 0} (a_ij t + y_i),
/// computed by intersecting the upper envelopes of the two line families.
template <class S>
S unique_step(const PwaFunction<S>& f, Vec<S>& y, int coord) {
    if (y.size() != f.row_count()) throw DimensionError("value vector length mismatch");
    if (coord < 1 || static_cast<std::size_t>(coord) > f.var_count())
        throw PreconditionError("coordinate out of range");
    const std::size_t col = static_cast<std::size_t>(coord - 1);

    std::vector<Line<S>> neg, pos;
    detail::column_lines(f, y, col, neg, pos);
    if (neg.empty() && pos.empty()) return S(0);
    if (neg.empty() || pos.empty())
        throw PreconditionError("column " + std::to_string(coord) +
                                " has entries of only one sign; unique rule does not apply");

    S shift = intersect_decreasing_increasing(upper_envelope(std::move(neg)),
                                              upper_envelope(std::move(pos)));
    if (shift == S(0)) return shift;

    S cap = max_value(y);
    if constexpr (ScalarTraits<S>::exact) {
        for (std::size_t i = 0; i < f.row_count(); ++i) {
            const S& a = f.coeff(i, col);
            if (a != S(0)) y[i] += a * shift;
        }
        assert(max_value(y) <= cap); // max p_j(y) <= max y
    } else {
        // max p_j(y) <= max y holds in real arithmetic; cap rounding
        // overshoot so float traces keep the invariant too.
        for (std::size_t i = 0; i < f.row_count(); ++i) {
            const S& a = f.coeff(i, col);
            if (a != S(0)) y[i] = std::min(y[i] + a * shift, cap);
        }
    }
    return shift;
}

/// One full cycle p = p_n ∘ ... ∘ p_1 on a plain value vector.
template <class S>
Vec<S> apply_cycle(const PwaFunction<S>& f, Vec<S> y) {
    for (int j = 1; j <= static_cast<int>(f.var_count()); ++j) unique_step(f, y, j);
    return y;
}

/// k cycles.
template <class S>
Vec<S> apply_cycles(const PwaFunction<S>& f, Vec<S> y, int k) {
    for (int c = 0; c < k; ++c) y = apply_cycle(f, std::move(y));
    return y;
}

/// True iff max_{i:a_ij<0} y_i = max_{i:a_ij>0} y_i within tol for every
/// coordinate with a nonzero column.
template <class S>
bool is_fixed_point(const PwaFunction<S>& f, const Vec<S>& y, const S& tol) {
    if (y.size() != f.row_count()) throw DimensionError("value vector length mismatch");
    if (tol < S(0)) throw PreconditionError("tol must be nonnegative");
    for (std::size_t col = 0; col < f.var_count(); ++col) {
        std::optional<S> neg, pos;
        for (std::size_t i = 0; i < f.row_count(); ++i) {
            const S& a = f.coeff(i, col);
            if (a < S(0)) { if (!neg || y[i] > *neg) neg = y[i]; }
            else if (a > S(0)) { if (!pos || y[i] > *pos) pos = y[i]; }
        }
        if (!neg && !pos) continue;
        if (!neg || !pos)
            throw PreconditionError("column " + std::to_string(col + 1) +
                                    " has entries of only one sign; unique rule does not apply");
        S gap = *neg - *pos;
        if (gap < S(0)) gap = -gap;
        if (gap > tol) return false;
    }
    return true;
}

/// e(y): the least eps >= 0 whose eps-active rows have a sign set with
/// nonempty closure, or nullopt when even the full row set fails. The
/// infimum is attained at one of the thresholds max y - y_i because the
/// feasible eps set is upward closed.
template <class S>
std::optional<S> violation_measure_opt(const PwaFunction<S>& f, const Vec<S>& y) {
    if (y.size() != f.row_count()) throw DimensionError("value vector length mismatch");
    S top = max_value(y);
    Vec<S> thresholds;
    thresholds.reserve(y.size());
    for (const S& v : y) thresholds.push_back(top - v);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    for (const S& d : thresholds) {
        if (!consistency_closure(row_sign_set(f, eps_argmax_set(y, d))).empty()) return d;
    }
    return std::nullopt;
}

/// e(y) under the standing assumption that the whole row sign set is
/// consistent, which bounds it by max y - min y.
template <class S>
S violation_measure(const PwaFunction<S>& f, const Vec<S>& y) {
    if (!is_consistent(row_sign_set(f)))
        throw PreconditionError("row sign set is not consistent; e(y) may be infinite");
    auto e = violation_measure_opt(f, y);
    if (!e) throw Error("internal: e(y) undefined despite consistent row signs");
    return *e;
}

// --- solver state and sweeps --------------------------------------------

/// Coupled (x, y) iterate with y = Ax + b maintained by every update
/// (exactly in exact mode). x is carried for reporting minimizers; the
/// updates themselves only need y.
template <class S>
class SolverState {
public:
    SolverState(PwaFunction<S> f, Point<S> x0, UpdateRule rule)
        : f_(std::move(f)), x_(std::move(x0)), rule_(rule) {
        if (x_.size() != f_.var_count()) throw DimensionError("x0 dimension mismatch");
        if (rule_ == UpdateRule::Unique && !is_consistent(row_sign_set(f_)))
            throw PreconditionError("unique rule requires a consistent row sign set");
        y_ = values(f_, x_);
    }

    const PwaFunction<S>& function() const { return f_; }
    const Point<S>& x() const { return x_; }
    const ValueVector<S>& y() const { return y_; }
    long cycle() const { return cycle_; }
    long iteration() const { return iteration_; }
    UpdateRule rule() const { return rule_; }

    friend void unique_update(SolverState& st, int coord) {
        S shift = unique_step(st.f_, st.y_, coord);
        st.x_[static_cast<std::size_t>(coord - 1)] += shift;
    }

    /// Picks the univariate minimizer of the full objective nearest to
    /// the previous x_j. Signals when no minimizer exists.
    friend void proximal_update(SolverState& st, int coord) {
        if (coord < 1 || static_cast<std::size_t>(coord) > st.f_.var_count())
            throw PreconditionError("coordinate out of range");
        const std::size_t col = static_cast<std::size_t>(coord - 1);
        std::vector<Line<S>> lines;
        lines.reserve(st.f_.row_count());
        for (std::size_t i = 0; i < st.f_.row_count(); ++i) {
            const S& a = st.f_.coeff(i, col);
            lines.push_back({a, st.y_[i] - a * st.x_[col]});
        }
        LineMinimum<S> m = minimize_max_of_lines(lines);
        if (!m.bounded)
            throw UnboundedCoordinateError(coord, "objective is unbounded along coordinate " +
                                                      std::to_string(coord));
        S target = st.x_[col];
        if (m.lo && target < *m.lo) target = *m.lo;
        if (m.hi && target > *m.hi) target = *m.hi;
        if (target != st.x_[col]) {
            S shift = target - st.x_[col];
            for (std::size_t i = 0; i < st.f_.row_count(); ++i) {
                const S& a = st.f_.coeff(i, col);
                if (a != S(0)) st.y_[i] += a * shift;
            }
            st.x_[col] = target;
        }
    }

    /// Visits coordinates 1..n in order with the configured rule.
    /// Returns the y-difference of the cycle; appends trace rows if
    /// a trace is given.
    friend Vec<S> sweep(SolverState& st, SweepTrace<S>* trace) {
        Vec<S> before = st.y_;
        for (int j = 1; j <= static_cast<int>(st.f_.var_count()); ++j) {
            if (st.rule_ == UpdateRule::Unique) unique_update(st, j);
            else proximal_update(st, j);
            ++st.iteration_;
            if (trace)
                trace->iterations.push_back({st.cycle_ + 1, st.iteration_, j,
                                             st.x_[static_cast<std::size_t>(j - 1)],
                                             max_value(st.y_)});
        }
        ++st.cycle_;
        Vec<S> delta(st.y_.size());
        for (std::size_t i = 0; i < st.y_.size(); ++i) delta[i] = st.y_[i] - before[i];
        if (trace)
            trace->cycles.push_back({st.cycle_, st.iteration_, max_value(st.y_),
                                     violation_measure_opt(st.f_, st.y_), inf_norm(delta)});
        return delta;
    }

private:
    PwaFunction<S> f_;
    Point<S> x_;
    ValueVector<S> y_;
    long cycle_ = 0;
    long iteration_ = 0;
    UpdateRule rule_;
};

template <class S>
Vec<S> sweep(SolverState<S>& st) {
    return sweep(st, static_cast<SweepTrace<S>*>(nullptr));
}

template <class S>
struct RunOutcome {
    RunStatus status;
    SolverState<S> state;
    SweepTrace<S> trace;
    long cycles_used;
    S value;                     // max y at the end
    std::optional<S> violation;  // e(y) at the end, when defined
    S max_abs_y;                 // sup of |y|_inf over the run
};

/// Runs cyclic sweeps until a fixed point (step <= tol), the cycle
/// budget runs out, or divergence is suspected. Divergence is a
/// heuristic: over a window of W = max(10, n) cycles the step stays
/// above tol, max y drops by more than W*tol, and the per-cycle
/// y-difference is (numerically) one constant translation vector.
template <class S>
RunOutcome<S> run(const PwaFunction<S>& f, Point<S> x0, UpdateRule rule, long max_cycles,
                  S tol, bool want_trace = true) {
    if (max_cycles < 1) throw PreconditionError("max_cycles must be at least 1");
    if (tol < S(0)) throw PreconditionError("tol must be nonnegative");

    SolverState<S> st(f, std::move(x0), rule);
    SweepTrace<S> trace;
    SweepTrace<S>* tp = want_trace ? &trace : nullptr;

    const long window = std::max<long>(10, static_cast<long>(f.var_count()));
    std::deque<Vec<S>> deltas;
    std::deque<S> max_history; // max y before each cycle in the window
    S max_abs = inf_norm(st.y());

    auto finish = [&](RunStatus status) {
        S value = max_value(st.y());
        auto e = violation_measure_opt(st.function(), st.y());
        long used = st.cycle();
        return RunOutcome<S>{status, std::move(st), std::move(trace), used, value, e, max_abs};
    };

    for (long c = 0; c < max_cycles; ++c) {
        S max_before = max_value(st.y());
        Vec<S> delta;
        try {
            delta = sweep(st, tp);
        } catch (const UnboundedCoordinateError&) {
            return finish(RunStatus::DivergenceSuspected);
        }
        S norm = inf_norm(st.y());
        if (norm > max_abs) max_abs = norm;
        if (!ScalarTraits<S>::exact && !ScalarTraits<S>::is_finite(norm))
            return finish(RunStatus::DivergenceSuspected);

        if (inf_norm(delta) <= tol) return finish(RunStatus::FixedPoint);

        deltas.push_back(std::move(delta));
        max_history.push_back(max_before);
        if (static_cast<long>(deltas.size()) > window) {
            deltas.pop_front();
            max_history.pop_front();
        }
        if (static_cast<long>(deltas.size()) == window) {
            S drop = max_history.front() - max_value(st.y());
            bool translating = drop > S(window) * tol;
            for (std::size_t k = 1; translating && k < deltas.size(); ++k) {
                Vec<S> diff(deltas[k].size());
                for (std::size_t i = 0; i < diff.size(); ++i)
                    diff[i] = deltas[k][i] - deltas[0][i];
                if (inf_norm(diff) > tol) translating = false;
            }
            if (translating) return finish(RunStatus::DivergenceSuspected);
        }
    }
    return finish(RunStatus::CycleBudgetExhausted);
}

// --- trace serialization --------------------------------------------------

/// CSV with one row per coordinate update and one summary row per cycle.
/// Numbers use the run's scalar serialization: lowest-terms rationals in
/// exact mode, shortest round-trip decimals in float mode. An undefined
/// e(y) prints as "inf".
template <class S>
std::string trace_to_csv(const SweepTrace<S>& t) {
    std::ostringstream out;
    out << "cycle,iteration,j,x_j_star,max_y,e_y,step_inf_norm\n";
    std::size_t ci = 0;
    for (const auto& row : t.iterations) {
        while (ci < t.cycles.size() && t.cycles[ci].cycle < row.cycle) {
            const auto& cr = t.cycles[ci++];
            out << cr.cycle << ',' << cr.iteration << ",,," << ScalarTraits<S>::format(cr.max_y)
                << ',' << (cr.e_y ? ScalarTraits<S>::format(*cr.e_y) : "inf") << ','
                << ScalarTraits<S>::format(cr.step_inf_norm) << '\n';
        }
        out << row.cycle << ',' << row.iteration << ',' << row.coord << ','
            << ScalarTraits<S>::format(row.x_coord) << ',' << ScalarTraits<S>::format(row.max_y)
            << ",,\n";
    }
    while (ci < t.cycles.size()) {
        const auto& cr = t.cycles[ci++];
        out << cr.cycle << ',' << cr.iteration << ",,," << ScalarTraits<S>::format(cr.max_y) << ','
            << (cr.e_y ? ScalarTraits<S>::format(*cr.e_y) : "inf") << ','
            << ScalarTraits<S>::format(cr.step_inf_norm) << '\n';
    }
    return out.str();
}

} // namespace pwamin

#endif
