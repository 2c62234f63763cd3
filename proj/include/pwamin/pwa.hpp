#ifndef PWAMIN_PWA_HPP
#define PWAMIN_PWA_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "pwamin/errors.hpp"
#include "pwamin/scalar.hpp"

namespace pwamin {

template <class S>
using Vec = std::vector<S>;

/// A point in variable space (length n).
template <class S>
using Point = std::vector<S>;

/// The vector y of affine values at a point (length m).
template <class S>
using ValueVector = std::vector<S>;

/// Sorted set of 1-based row/coordinate indices.
using IndexSet = std::vector<int>;

/// f(x) = max_i (a_i^T x + b_i), stored as the row matrix A and offset
/// vector b. Immutable after construction; the single source of truth
/// for m, n and the rows.
template <class S>
class PwaFunction {
public:
    PwaFunction(std::vector<Vec<S>> rows, Vec<S> offsets)
        : a_(std::move(rows)), b_(std::move(offsets)) {
        if (a_.empty()) throw DimensionError("function needs at least one affine piece");
        n_ = a_.front().size();
        if (n_ == 0) throw DimensionError("function needs at least one variable");
        if (b_.size() != a_.size())
            throw DimensionError("row count of A and length of b disagree");
        for (const auto& row : a_) {
            if (row.size() != n_) throw DimensionError("rows of A have unequal lengths");
            for (const S& v : row)
                if (!ScalarTraits<S>::is_finite(v)) throw Error("non-finite matrix entry");
        }
        for (const S& v : b_)
            if (!ScalarTraits<S>::is_finite(v)) throw Error("non-finite offset entry");
    }

    std::size_t row_count() const { return a_.size(); }
    std::size_t var_count() const { return n_; }
    const std::vector<Vec<S>>& rows() const { return a_; }
    const Vec<S>& row(std::size_t i) const { return a_[i]; }        // 0-based
    const S& coeff(std::size_t i, std::size_t j) const { return a_[i][j]; } // 0-based
    const Vec<S>& offsets() const { return b_; }
    const S& offset(std::size_t i) const { return b_[i]; }          // 0-based

private:
    std::vector<Vec<S>> a_;
    Vec<S> b_;
    std::size_t n_;
};

template <class S>
S max_value(const Vec<S>& y) {
    if (y.empty()) throw DimensionError("max of empty vector");
    return *std::max_element(y.begin(), y.end());
}

template <class S>
S min_value(const Vec<S>& y) {
    if (y.empty()) throw DimensionError("min of empty vector");
    return *std::min_element(y.begin(), y.end());
}

template <class S>
S inf_norm(const Vec<S>& v) {
    S best(0);
    for (const S& e : v) {
        S a = e < S(0) ? -e : e;
        if (a > best) best = a;
    }
    return best;
}

/// y = Ax + b.
template <class S>
ValueVector<S> values(const PwaFunction<S>& f, const Point<S>& x) {
    if (x.size() != f.var_count()) throw DimensionError("point dimension does not match function");
    ValueVector<S> y;
    y.reserve(f.row_count());
    for (std::size_t i = 0; i < f.row_count(); ++i) {
        S acc = f.offset(i);
        for (std::size_t j = 0; j < f.var_count(); ++j) acc += f.coeff(i, j) * x[j];
        y.push_back(acc);
    }
    return y;
}

/// f(x) = max(Ax + b).
template <class S>
S eval(const PwaFunction<S>& f, const Point<S>& x) {
    return max_value(values(f, x));
}

/// Indices attaining the maximum (1-based, sorted). Ties are kept: the
/// result is a set, never a single index.
template <class S>
IndexSet argmax_set(const ValueVector<S>& y) {
    S top = max_value(y);
    IndexSet out;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] == top) out.push_back(static_cast<int>(i) + 1);
    return out;
}

/// { i | y_i + eps >= max y }; reduces to argmax_set at eps = 0 and is
/// nondecreasing in eps.
template <class S>
IndexSet eps_argmax_set(const ValueVector<S>& y, const S& eps) {
    if (eps < S(0)) throw PreconditionError("eps must be nonnegative");
    S top = max_value(y);
    IndexSet out;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] + eps >= top) out.push_back(static_cast<int>(i) + 1);
    return out;
}

/// I(y, z) = { i | y_i >= z }.
template <class S>
IndexSet level_set_indices(const ValueVector<S>& y, const S& z) {
    IndexSet out;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] >= z) out.push_back(static_cast<int>(i) + 1);
    return out;
}

/// Converts an exact function/vector into the float-mode twin.
inline Vec<double> to_float(const Vec<Rational>& v) {
    Vec<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(e.to_double());
    return out;
}

inline PwaFunction<double> to_float(const PwaFunction<Rational>& f) {
    std::vector<Vec<double>> rows;
    rows.reserve(f.row_count());
    for (const auto& r : f.rows()) rows.push_back(to_float(r));
    return PwaFunction<double>(std::move(rows), to_float(f.offsets()));
}

} // namespace pwamin

#endif
