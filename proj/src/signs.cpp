#include "pwamin/signs.hpp"

#include <algorithm>

#include "pwamin/errors.hpp"

namespace pwamin {

SignSet::SignSet(std::size_t n, std::vector<SignVector> elems) : n_(n), elems_(std::move(elems)) {
    for (const auto& s : elems_) {
        if (s.size() != n_) throw DimensionError("sign vector dimension mismatch");
        for (Sign v : s)
            if (v < -1 || v > 1) throw Error("sign entry outside {-1,0,1}");
    }
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool SignSet::contains(const SignVector& s) const {
    return std::binary_search(elems_.begin(), elems_.end(), s);
}

bool is_consistent_in_coordinate(const SignSet& s, int coord) {
    if (coord < 1 || static_cast<std::size_t>(coord) > s.dim())
        throw PreconditionError("coordinate out of range");
    const std::size_t c = static_cast<std::size_t>(coord - 1);
    bool has_neg = false, has_pos = false;
    for (const auto& e : s.elements()) {
        if (e[c] < 0) has_neg = true;
        if (e[c] > 0) has_pos = true;
    }
    return has_neg == has_pos;
}

bool is_consistent(const SignSet& s) {
    for (int j = 1; j <= static_cast<int>(s.dim()); ++j)
        if (!is_consistent_in_coordinate(s, j)) return false;
    return true;
}

SignSet prune_coordinate(const SignSet& s, int coord) {
    if (coord < 1 || static_cast<std::size_t>(coord) > s.dim())
        throw PreconditionError("coordinate out of range");
    const std::size_t c = static_cast<std::size_t>(coord - 1);
    std::vector<SignVector> kept;
    for (const auto& e : s.elements())
        if (e[c] == 0) kept.push_back(e);
    return SignSet(s.dim(), std::move(kept));
}

SignSet consistency_closure(SignSet s) {
    const int n = static_cast<int>(s.dim());
    if (n == 0 || s.empty()) return s;
    int consecutive_ok = 0;
    int j = 1;
    while (consecutive_ok < n) {
        if (is_consistent_in_coordinate(s, j)) {
            ++consecutive_ok;
        } else {
            s = prune_coordinate(s, j);
            consecutive_ok = 1; // the enforced coordinate is now all-zero
        }
        j = (j % n) + 1;
    }
    return s;
}

} // namespace pwamin
