#include "pwamin/oracle.hpp"

#include "pwamin/errors.hpp"
#include "pwamin/simplex.hpp"

namespace pwamin {

namespace {

std::size_t common_dim(const std::vector<Vec<Rational>>& xs) {
    if (xs.empty()) throw PreconditionError("need a nonempty set of vectors");
    std::size_t n = xs.front().size();
    for (const auto& v : xs)
        if (v.size() != n) throw DimensionError("vectors have unequal dimensions");
    return n;
}

} // namespace

bool certificate_is_valid(const std::vector<Vec<Rational>>& xs, const DualCertificate& cert) {
    if (cert.lambda.size() != xs.size()) return false;
    std::size_t n = common_dim(xs);
    Rational total(0);
    for (const auto& l : cert.lambda) {
        if (cert.flavor == CertificateFlavor::StrictlyFeasible ? l.sign() <= 0 : l.sign() < 0)
            return false;
        total += l;
    }
    if (total != Rational(1)) return false;
    for (std::size_t j = 0; j < n; ++j) {
        Rational acc(0);
        for (std::size_t i = 0; i < xs.size(); ++i) acc += cert.lambda[i] * xs[i][j];
        if (acc.sign() != 0) return false;
    }
    return true;
}

ConvResult contains_origin_conv(const std::vector<Vec<Rational>>& xs) {
    const std::size_t k = xs.size();
    const std::size_t n = common_dim(xs);

    // feasibility of { lambda >= 0, 1^T lambda = 1, X^T lambda = 0 }
    std::vector<std::vector<Rational>> m(1 + n, std::vector<Rational>(k, Rational(0)));
    std::vector<Rational> d(1 + n, Rational(0));
    for (std::size_t i = 0; i < k; ++i) m[0][i] = Rational(1);
    d[0] = Rational(1);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < k; ++i) m[1 + j][i] = xs[i][j];

    LpResult lp = solve_standard_lp(m, d, std::vector<Rational>(k, Rational(0)));
    if (lp.status != LpStatus::Optimal) return {false, std::nullopt};
    DualCertificate cert{lp.solution, CertificateFlavor::Feasible};
    if (!certificate_is_valid(xs, cert)) throw Error("internal: invalid feasibility certificate");
    return {true, std::move(cert)};
}

ConvResult contains_origin_rint_conv(const std::vector<Vec<Rational>>& xs) {
    const std::size_t k = xs.size();
    const std::size_t n = common_dim(xs);

    // max t s.t. lambda = mu + t*1, mu >= 0, t >= 0, 1^T lambda = 1,
    // X^T lambda = 0. Strict feasibility holds iff the optimum t is
    // positive; t <= 1/k keeps the LP bounded.
    std::vector<std::vector<Rational>> m(1 + n, std::vector<Rational>(k + 1, Rational(0)));
    std::vector<Rational> d(1 + n, Rational(0));
    for (std::size_t i = 0; i < k; ++i) m[0][i] = Rational(1);
    m[0][k] = Rational(static_cast<long>(k));
    d[0] = Rational(1);
    for (std::size_t j = 0; j < n; ++j) {
        Rational col_sum(0);
        for (std::size_t i = 0; i < k; ++i) {
            m[1 + j][i] = xs[i][j];
            col_sum += xs[i][j];
        }
        m[1 + j][k] = col_sum;
    }
    std::vector<Rational> cost(k + 1, Rational(0));
    cost[k] = Rational(-1);

    LpResult lp = solve_standard_lp(m, d, cost);
    if (lp.status != LpStatus::Optimal) return {false, std::nullopt};
    const Rational& t = lp.solution[k];
    if (t.sign() <= 0) return {false, std::nullopt};
    DualCertificate cert;
    cert.flavor = CertificateFlavor::StrictlyFeasible;
    cert.lambda.reserve(k);
    for (std::size_t i = 0; i < k; ++i) cert.lambda.push_back(lp.solution[i] + t);
    if (!certificate_is_valid(xs, cert)) throw Error("internal: invalid strict certificate");
    return {true, std::move(cert)};
}

bool is_bounded_below(const PwaFunction<Rational>& f) {
    return contains_origin_conv(f.rows()).contains;
}

bool is_global_minimizer(const PwaFunction<Rational>& f, const Point<Rational>& x) {
    ValueVector<Rational> y = values(f, x);
    std::vector<Vec<Rational>> active;
    for (int i : argmax_set(y)) active.push_back(f.row(static_cast<std::size_t>(i - 1)));
    return contains_origin_conv(active).contains;
}

MinResult solve_min_lp(const PwaFunction<Rational>& f) {
    const std::size_t mrows = f.row_count();
    const std::size_t n = f.var_count();

    // primal min{ z | Ax + b <= z } with free x, z split into
    // nonnegative parts and one slack per row:
    //   A x+ - A x- - z+ 1 + z- 1 + s = -b
    const std::size_t cols = 2 * n + 2 + mrows;
    std::vector<std::vector<Rational>> m(mrows, std::vector<Rational>(cols, Rational(0)));
    std::vector<Rational> d(mrows, Rational(0));
    std::vector<Rational> cost(cols, Rational(0));
    for (std::size_t i = 0; i < mrows; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = f.coeff(i, j);
            m[i][n + j] = -f.coeff(i, j);
        }
        m[i][2 * n] = Rational(-1);
        m[i][2 * n + 1] = Rational(1);
        m[i][2 * n + 2 + i] = Rational(1);
        d[i] = -f.offset(i);
    }
    cost[2 * n] = Rational(1);
    cost[2 * n + 1] = Rational(-1);

    LpResult primal = solve_standard_lp(m, d, cost);
    if (primal.status == LpStatus::Infeasible)
        throw Error("internal: the epigraph LP is always feasible");

    // the dual, solved independently: max b^T lambda over the convex
    // weights annihilating the rows
    std::vector<std::vector<Rational>> dm(1 + n, std::vector<Rational>(mrows, Rational(0)));
    std::vector<Rational> dd(1 + n, Rational(0));
    for (std::size_t i = 0; i < mrows; ++i) dm[0][i] = Rational(1);
    dd[0] = Rational(1);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < mrows; ++i) dm[1 + j][i] = f.coeff(i, j);
    std::vector<Rational> dcost(mrows, Rational(0));
    for (std::size_t i = 0; i < mrows; ++i) dcost[i] = -f.offset(i);

    LpResult dual = solve_standard_lp(dm, dd, dcost);

    if (primal.status == LpStatus::Unbounded) {
        if (dual.status != LpStatus::Infeasible)
            throw Error("internal: unbounded primal with feasible dual");
        return MinResult{MinStatus::Unbounded, {}, Rational(0), std::nullopt};
    }

    if (dual.status != LpStatus::Optimal)
        throw Error("internal: bounded primal with no dual optimum");
    Rational dual_value = -dual.objective;
    if (dual_value != primal.objective)
        throw Error("internal: strong duality violated");

    MinResult out;
    out.status = MinStatus::Optimal;
    out.minimizer.reserve(n);
    for (std::size_t j = 0; j < n; ++j) out.minimizer.push_back(primal.solution[j] - primal.solution[n + j]);
    out.value = primal.objective;
    DualCertificate cert{dual.solution, CertificateFlavor::Feasible};
    if (!certificate_is_valid(f.rows(), cert)) throw Error("internal: invalid dual certificate");
    out.dual = std::move(cert);

    if (eval(f, out.minimizer) != out.value) throw Error("internal: minimizer value mismatch");
    return out;
}

bool y_set_is_bounded(const PwaFunction<Rational>& f) {
    const std::size_t mrows = f.row_count();
    const std::size_t n = f.var_count();

    // nonemptiness of { x | Ax <= b }: A x+ - A x- + s = b
    const std::size_t cols = 2 * n + mrows;
    std::vector<std::vector<Rational>> m(mrows, std::vector<Rational>(cols, Rational(0)));
    std::vector<Rational> d(mrows, Rational(0));
    for (std::size_t i = 0; i < mrows; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = f.coeff(i, j);
            m[i][n + j] = -f.coeff(i, j);
        }
        m[i][2 * n + i] = Rational(1);
        d[i] = f.offset(i);
    }
    LpResult lp = solve_standard_lp(m, d, std::vector<Rational>(cols, Rational(0)));
    if (lp.status != LpStatus::Optimal)
        throw EmptyFeasibleSetError("the set { x | Ax <= b } is empty");

    return contains_origin_rint_conv(f.rows()).contains;
}

} // namespace pwamin
