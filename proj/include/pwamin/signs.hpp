#ifndef PWAMIN_SIGNS_HPP
#define PWAMIN_SIGNS_HPP

#include <cstddef>
#include <vector>

#include "pwamin/pwa.hpp"

namespace pwamin {

using Sign = signed char; // -1, 0, +1
using SignVector = std::vector<Sign>;

/// Finite set of sign vectors of one common dimension. Deduplicated and
/// kept in lexicographic order, so equality is element-wise comparison.
class SignSet {
public:
    SignSet() : n_(0) {}
    explicit SignSet(std::size_t n) : n_(n) {}
    SignSet(std::size_t n, std::vector<SignVector> elems);

    std::size_t dim() const { return n_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const std::vector<SignVector>& elements() const { return elems_; }
    bool contains(const SignVector& s) const;

    friend bool operator==(const SignSet& a, const SignSet& b) {
        return a.n_ == b.n_ && a.elems_ == b.elems_;
    }

private:
    std::size_t n_;
    std::vector<SignVector> elems_;
};

/// Componentwise sign of a scalar vector.
template <class S>
SignVector sign_of(const Vec<S>& a) {
    SignVector out;
    out.reserve(a.size());
    for (const S& v : a)
        out.push_back(v < S(0) ? Sign(-1) : (v > S(0) ? Sign(1) : Sign(0)));
    return out;
}

/// Coordinate j (1-based) is consistent when a -1 appears there exactly
/// when a +1 does.
bool is_consistent_in_coordinate(const SignSet& s, int coord);

/// Consistent in every coordinate. The empty set and {0} are consistent.
bool is_consistent(const SignSet& s);

/// Removes every element with a nonzero entry in coordinate j (1-based).
/// This is one enforcement step; after it the coordinate is consistent.
SignSet prune_coordinate(const SignSet& s, int coord);

/// Greatest consistent subset, computed by iterated deletion. Coordinates
/// are scanned cyclically starting at 1 and the first inconsistent one is
/// enforced; the result does not depend on that order.
SignSet consistency_closure(SignSet s);

/// Sign set of selected rows of a function (1-based row indices).
template <class S>
SignSet row_sign_set(const PwaFunction<S>& f, const IndexSet& rows) {
    std::vector<SignVector> elems;
    elems.reserve(rows.size());
    for (int i : rows) elems.push_back(sign_of(f.row(static_cast<std::size_t>(i - 1))));
    return SignSet(f.var_count(), std::move(elems));
}

/// Sign set of all rows.
template <class S>
SignSet row_sign_set(const PwaFunction<S>& f) {
    std::vector<SignVector> elems;
    elems.reserve(f.row_count());
    for (const auto& r : f.rows()) elems.push_back(sign_of(r));
    return SignSet(f.var_count(), std::move(elems));
}

/// Necessary condition for 0 in conv X, using only component signs:
/// true iff cons{sgn a | a in X} is nonempty. Empty X yields false.
template <class S>
bool sign_condition_holds(const std::vector<Vec<S>>& xs) {
    if (xs.empty()) return false;
    std::vector<SignVector> elems;
    elems.reserve(xs.size());
    for (const auto& a : xs) elems.push_back(sign_of(a));
    SignSet s(xs.front().size(), std::move(elems));
    return !consistency_closure(s).empty();
}

} // namespace pwamin

#endif
