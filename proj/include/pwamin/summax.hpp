#ifndef PWAMIN_SUMMAX_HPP
#define PWAMIN_SUMMAX_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "pwamin/coordinate.hpp"
#include "pwamin/pwa.hpp"

namespace pwamin {

template <class S>
struct AffineTerm {
    Vec<S> a;
    S b;
};

/// f(x) = sum_i max_j (a_ij^T x + b_ij): a list of groups, each a
/// nonempty list of affine terms over the same n variables.
template <class S>
class SumMaxFunction {
public:
    SumMaxFunction(std::size_t n, std::vector<std::vector<AffineTerm<S>>> groups)
        : n_(n), groups_(std::move(groups)) {
        if (n_ == 0) throw DimensionError("need at least one variable");
        if (groups_.empty()) throw DimensionError("need at least one group");
        for (const auto& g : groups_) {
            if (g.empty()) throw DimensionError("every group must be nonempty");
            for (const auto& t : g) {
                if (t.a.size() != n_) throw DimensionError("term dimension mismatch");
                for (const S& v : t.a)
                    if (!ScalarTraits<S>::is_finite(v)) throw Error("non-finite term entry");
                if (!ScalarTraits<S>::is_finite(t.b)) throw Error("non-finite term offset");
            }
        }
    }

    std::size_t var_count() const { return n_; }
    std::size_t group_count() const { return groups_.size(); }
    const std::vector<std::vector<AffineTerm<S>>>& groups() const { return groups_; }

private:
    std::size_t n_;
    std::vector<std::vector<AffineTerm<S>>> groups_;
};

/// alpha_i = max_j (a_ij^T x + b_ij) for each group.
template <class S>
Vec<S> group_maxima(const SumMaxFunction<S>& s, const Point<S>& x) {
    if (x.size() != s.var_count()) throw DimensionError("point dimension mismatch");
    Vec<S> alpha;
    alpha.reserve(s.group_count());
    for (const auto& g : s.groups()) {
        S best;
        bool first = true;
        for (const auto& t : g) {
            S v = t.b;
            for (std::size_t j = 0; j < x.size(); ++j) v += t.a[j] * x[j];
            if (first || v > best) { best = v; first = false; }
        }
        alpha.push_back(best);
    }
    return alpha;
}

template <class S>
S eval_summax(const SumMaxFunction<S>& s, const Point<S>& x) {
    S total(0);
    for (const S& a : group_maxima(s, x)) total += a;
    return total;
}

/// Shifts u with sum 0 that equalize all components of alpha + u: each
/// equals mean(alpha), which is also min over feasible u of
/// max_i (alpha_i + u_i).
template <class S>
struct Balanced {
    S value;      // mean of alpha
    Vec<S> shifts; // u*, summing to zero
};

template <class S>
Balanced<S> balance(const Vec<S>& alpha) {
    if (alpha.empty()) throw DimensionError("cannot balance an empty vector");
    S mean(0);
    for (const S& a : alpha) mean += a;
    mean /= S(static_cast<long>(alpha.size()));
    Balanced<S> out{mean, {}};
    out.shifts.reserve(alpha.size());
    for (const S& a : alpha) out.shifts.push_back(mean - a);
    return out;
}

/// Single max-of-affine function over (x, u_1..u_{K-1}) whose rows encode
/// a_ij^T x + b_ij + u_i with the constraint sum u = 0 eliminated by
/// substituting u_K = -(u_1 + ... + u_{K-1}). For every x, minimizing
/// over u gives the mean of the group maxima, so minimizers in x agree
/// with the original function and values divide by the group count.
template <class S>
struct LiftedFunction {
    PwaFunction<S> fn;
    std::size_t original_vars;
    std::size_t group_count;
    std::vector<std::pair<std::size_t, std::size_t>> row_source; // (group, term), 0-based
};

template <class S>
LiftedFunction<S> lift(const SumMaxFunction<S>& s) {
    const std::size_t k = s.group_count();
    if (k < 2) throw PreconditionError("lift needs at least two groups; one group already is a max of affine functions");
    const std::size_t n = s.var_count();
    const std::size_t vars = n + k - 1;

    std::vector<Vec<S>> rows;
    Vec<S> offsets;
    std::vector<std::pair<std::size_t, std::size_t>> source;
    for (std::size_t gi = 0; gi < k; ++gi) {
        const auto& g = s.groups()[gi];
        for (std::size_t ti = 0; ti < g.size(); ++ti) {
            Vec<S> row(vars, S(0));
            for (std::size_t j = 0; j < n; ++j) row[j] = g[ti].a[j];
            if (gi + 1 < k) {
                row[n + gi] = S(1);
            } else {
                for (std::size_t u = 0; u < k - 1; ++u) row[n + u] = S(-1);
            }
            rows.push_back(std::move(row));
            offsets.push_back(g[ti].b);
            source.emplace_back(gi, ti);
        }
    }
    return LiftedFunction<S>{PwaFunction<S>(std::move(rows), std::move(offsets)), n, k,
                             std::move(source)};
}

/// Evaluates the lifted function at (x, u) where u has full length K and
/// sums to zero.
template <class S>
Point<S> lifted_point(const LiftedFunction<S>& lf, const Point<S>& x, const Vec<S>& u) {
    Point<S> z = x;
    z.insert(z.end(), u.begin(), u.end() - 1);
    return z;
}

/// Alternates the closed-form u update (balance the group maxima) with
/// one unique-rule sweep over the x coordinates of the lifted function.
/// The reported trace and final value are in terms of the original
/// objective sum_i max_j (a_ij^T x + b_ij).
template <class S>
RunOutcome<S> interlaced_minimize(const SumMaxFunction<S>& s, Point<S> x0, long max_cycles, S tol) {
    if (max_cycles < 1) throw PreconditionError("max_cycles must be at least 1");
    if (tol < S(0)) throw PreconditionError("tol must be nonnegative");
    LiftedFunction<S> lf = lift(s);
    const PwaFunction<S>& g = lf.fn;
    const std::size_t n = lf.original_vars;
    const std::size_t k = lf.group_count;
    if (x0.size() != n) throw DimensionError("x0 dimension mismatch");

    // unique-rule precondition on the swept (x) columns only
    for (std::size_t col = 0; col < n; ++col) {
        bool has_neg = false, has_pos = false, has_any = false;
        for (std::size_t i = 0; i < g.row_count(); ++i) {
            if (g.coeff(i, col) < S(0)) has_neg = true;
            if (g.coeff(i, col) > S(0)) has_pos = true;
            if (g.coeff(i, col) != S(0)) has_any = true;
        }
        if (has_any && !(has_neg && has_pos))
            throw PreconditionError("lifted column " + std::to_string(col + 1) +
                                    " has entries of only one sign; unique rule does not apply");
    }

    Point<S> x = std::move(x0);
    Vec<S> u(k, S(0));
    SweepTrace<S> trace;
    const long window = std::max<long>(10, static_cast<long>(n + k));
    std::deque<Vec<S>> deltas;
    std::deque<S> obj_history;
    long iteration = 0;
    S max_abs(0);

    auto original_objective = [&](const Vec<S>& y) {
        // per-group max of lifted rows, minus the shifts (which sum to 0)
        S total(0);
        std::size_t r = 0;
        for (std::size_t gi = 0; gi < k; ++gi) {
            S best;
            bool first = true;
            for (; r < lf.row_source.size() && lf.row_source[r].first == gi; ++r) {
                if (first || y[r] > best) { best = y[r]; first = false; }
            }
            total += best - u[gi];
        }
        return total;
    };

    Vec<S> y;
    auto finish = [&](RunStatus status) {
        SolverState<S> st(g, lifted_point(lf, x, u), UpdateRule::Unique);
        S value = eval_summax(s, x);
        auto e = violation_measure_opt(g, st.y());
        long used = static_cast<long>(trace.cycles.size());
        return RunOutcome<S>{status, std::move(st), std::move(trace), used, value, e, max_abs};
    };

    for (long c = 1; c <= max_cycles; ++c) {
        Balanced<S> bal = balance(group_maxima(s, x));
        u = std::move(bal.shifts);
        y = values(g, lifted_point(lf, x, u));
        Vec<S> y_before = y;
        for (int j = 1; j <= static_cast<int>(n); ++j) {
            S shift = unique_step(g, y, j);
            x[static_cast<std::size_t>(j - 1)] += shift;
            ++iteration;
            trace.iterations.push_back({c, iteration, j, x[static_cast<std::size_t>(j - 1)],
                                        original_objective(y)});
        }
        Vec<S> delta(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) delta[i] = y[i] - y_before[i];
        S obj = original_objective(y);
        trace.cycles.push_back({c, iteration, obj, violation_measure_opt(g, y), inf_norm(delta)});

        S norm = inf_norm(y);
        if (norm > max_abs) max_abs = norm;
        if (!ScalarTraits<S>::exact && !ScalarTraits<S>::is_finite(norm))
            return finish(RunStatus::DivergenceSuspected);

        // fixed point of the interlaced scheme: the u update was already
        // balanced and the x sweep moved nothing
        Balanced<S> rebal = balance(group_maxima(s, x));
        Vec<S> du(k);
        for (std::size_t i = 0; i < k; ++i) du[i] = rebal.shifts[i] - u[i];
        S step = std::max(inf_norm(delta), inf_norm(du));
        if (step <= tol) return finish(RunStatus::FixedPoint);

        deltas.push_back(std::move(delta));
        obj_history.push_back(obj);
        if (static_cast<long>(deltas.size()) > window) {
            deltas.pop_front();
            obj_history.pop_front();
        }
        if (static_cast<long>(deltas.size()) == window) {
            S drop = obj_history.front() - obj;
            bool translating = drop > S(window) * tol;
            for (std::size_t q = 1; translating && q < deltas.size(); ++q) {
                Vec<S> diff(deltas[q].size());
                for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = deltas[q][i] - deltas[0][i];
                if (inf_norm(diff) > tol) translating = false;
            }
            if (translating) return finish(RunStatus::DivergenceSuspected);
        }
    }
    return finish(RunStatus::CycleBudgetExhausted);
}

} // namespace pwamin

#endif
