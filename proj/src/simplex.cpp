#include "pwamin/simplex.hpp"

#include <cstddef>

#include "pwamin/errors.hpp"

namespace pwamin {

namespace {

using Row = std::vector<Rational>;

// Tableau layout: columns [0, cols) are structural variables, columns
// [cols, cols+rows) the artificial basis that phase 1 starts from, and
// the last column the right-hand side. The artificial block starts as
// the identity, so after pivoting it always holds B^{-1}: dual vectors
// and Farkas certificates can be read off the objective row.
struct Tableau {
    std::size_t rows, cols;
    std::vector<Row> t;          // rows x (cols + rows + 1)
    std::vector<std::size_t> basis;
    Row obj;                     // reduced costs, same width minus rhs
    Rational obj_value;

    std::size_t width() const { return cols + rows + 1; }
    std::size_t rhs() const { return cols + rows; }

    void pivot(std::size_t pr, std::size_t pc) {
        Row& prow = t[pr];
        Rational inv = Rational(1) / prow[pc];
        for (auto& v : prow) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pr || t[i][pc].sign() == 0) continue;
            Rational factor = t[i][pc];
            for (std::size_t j = 0; j < width(); ++j) t[i][j] -= factor * prow[j];
        }
        if (obj[pc].sign() != 0) {
            Rational factor = obj[pc];
            for (std::size_t j = 0; j < width() - 1; ++j) obj[j] -= factor * prow[j];
            obj_value += factor * prow[rhs()]; // reduced cost times entering value
        }
        basis[pr] = pc;
    }

    // reduced costs r = cost - cost_B^T B^{-1} [M I]; obj_value = cost_B^T B^{-1} d
    void price(const Row& cost) {
        obj.assign(width() - 1, Rational(0));
        for (std::size_t j = 0; j < width() - 1; ++j) obj[j] = cost[j];
        obj_value = Rational(0);
        for (std::size_t i = 0; i < rows; ++i) {
            const Rational& cb = cost[basis[i]];
            if (cb.sign() == 0) continue;
            for (std::size_t j = 0; j < width() - 1; ++j) obj[j] -= cb * t[i][j];
            obj_value += cb * t[i][rhs()];
        }
    }

    // Bland: entering = lowest eligible index with negative reduced cost;
    // leaving = lowest basis index among the minimum ratios.
    // Returns false when an improving column has no positive entry.
    bool iterate(std::size_t eligible_cols, bool* unbounded, std::size_t* unbounded_col) {
        for (;;) {
            std::size_t enter = eligible_cols;
            for (std::size_t j = 0; j < eligible_cols; ++j) {
                if (obj[j].sign() < 0) { enter = j; break; }
            }
            if (enter == eligible_cols) return true;

            std::size_t leave = rows;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows; ++i) {
                if (t[i][enter].sign() <= 0) continue;
                Rational ratio = t[i][rhs()] / t[i][enter];
                if (leave == rows || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == rows) {
                if (unbounded) { *unbounded = true; *unbounded_col = enter; }
                return false;
            }
            pivot(leave, enter);
        }
    }
};

} // namespace

LpResult solve_standard_lp(const std::vector<std::vector<Rational>>& m,
                           const std::vector<Rational>& d,
                           const std::vector<Rational>& c) {
    const std::size_t rows = m.size();
    if (d.size() != rows) throw DimensionError("rhs length does not match row count");
    const std::size_t cols = rows == 0 ? c.size() : m.front().size();
    if (c.size() != cols) throw DimensionError("cost length does not match column count");
    for (const auto& row : m)
        if (row.size() != cols) throw DimensionError("ragged constraint matrix");

    Tableau tb;
    tb.rows = rows;
    tb.cols = cols;
    tb.t.assign(rows, Row(cols + rows + 1, Rational(0)));
    tb.basis.resize(rows);
    std::vector<bool> flipped(rows, false);
    for (std::size_t i = 0; i < rows; ++i) {
        bool flip = d[i].sign() < 0;
        flipped[i] = flip;
        for (std::size_t j = 0; j < cols; ++j) tb.t[i][j] = flip ? -m[i][j] : m[i][j];
        tb.t[i][cols + i] = Rational(1);
        tb.t[i][tb.rhs()] = flip ? -d[i] : d[i];
        tb.basis[i] = cols + i;
    }

    LpResult out;

    // phase 1: minimize the sum of artificials
    Row phase1_cost(cols + rows, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) phase1_cost[cols + i] = Rational(1);
    tb.price(phase1_cost);
    tb.iterate(cols, nullptr, nullptr); // artificials never re-enter
    if (tb.obj_value.sign() > 0) {
        out.status = LpStatus::Infeasible;
        // reduced cost on artificial k is 1 - y_k, so y = 1 - obj[cols+k];
        // y^T M <= 0 and y^T d = phase-1 optimum > 0. The multipliers are
        // stated for the sign-normalized rows, so flipped rows flip back.
        out.farkas.reserve(rows);
        for (std::size_t k = 0; k < rows; ++k) {
            Rational y = Rational(1) - tb.obj[cols + k];
            out.farkas.push_back(flipped[k] ? -y : y);
        }
        return out;
    }

    // drive remaining artificials out of the basis; a row with no
    // structural pivot candidate is a redundant constraint and stays
    // inert (all structural entries zero, rhs zero).
    for (std::size_t i = 0; i < rows; ++i) {
        if (tb.basis[i] < cols) continue;
        for (std::size_t j = 0; j < cols; ++j) {
            if (tb.t[i][j].sign() != 0) {
                tb.pivot(i, j);
                break;
            }
        }
    }

    // phase 2
    Row phase2_cost(cols + rows, Rational(0));
    for (std::size_t j = 0; j < cols; ++j) phase2_cost[j] = c[j];
    tb.price(phase2_cost);
    bool unbounded = false;
    std::size_t ucol = 0;
    tb.iterate(cols, &unbounded, &ucol);

    auto extract_solution = [&]() {
        std::vector<Rational> x(cols, Rational(0));
        for (std::size_t i = 0; i < rows; ++i)
            if (tb.basis[i] < cols) x[tb.basis[i]] = tb.t[i][tb.rhs()];
        return x;
    };

    if (unbounded) {
        out.status = LpStatus::Unbounded;
        out.solution = extract_solution();
        out.ray.assign(cols, Rational(0));
        out.ray[ucol] = Rational(1);
        for (std::size_t i = 0; i < rows; ++i)
            if (tb.basis[i] < cols) out.ray[tb.basis[i]] = -tb.t[i][ucol];
        return out;
    }

    out.status = LpStatus::Optimal;
    out.solution = extract_solution();
    out.objective = Rational(0);
    for (std::size_t j = 0; j < cols; ++j) out.objective += c[j] * out.solution[j];
    // artificial costs are zero in phase 2, so obj[cols+k] = -y_k
    out.dual.reserve(rows);
    for (std::size_t k = 0; k < rows; ++k) {
        Rational y = -tb.obj[cols + k];
        out.dual.push_back(flipped[k] ? -y : y);
    }
    return out;
}

} // namespace pwamin
