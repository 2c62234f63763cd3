#ifndef PWAMIN_ENVELOPE_HPP
#define PWAMIN_ENVELOPE_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "pwamin/errors.hpp"

namespace pwamin {

template <class S>
struct Line {
    S slope;
    S offset;
};

template <class S>
S line_at(const Line<S>& l, const S& x) {
    return l.slope * x + l.offset;
}

/// Abscissa where two lines of different slope meet.
template <class S>
S intersect_x(const Line<S>& p, const Line<S>& q) {
    return (q.offset - p.offset) / (p.slope - q.slope);
}

/// Upper envelope of max over a family of lines: the subsequence of
/// non-dominated lines in increasing slope order. Piece k is active on
/// [x_{k-1}, x_k] where x_k = intersect_x(env[k], env[k+1]).
template <class S>
std::vector<Line<S>> upper_envelope(std::vector<Line<S>> lines) {
    if (lines.empty()) throw PreconditionError("envelope of empty line family");
    std::sort(lines.begin(), lines.end(), [](const Line<S>& a, const Line<S>& b) {
        if (a.slope != b.slope) return a.slope < b.slope;
        return a.offset < b.offset;
    });
    // equal slopes: only the largest offset can appear on a max-envelope
    std::vector<Line<S>> dedup;
    for (const auto& l : lines) {
        if (!dedup.empty() && dedup.back().slope == l.slope)
            dedup.back() = l;
        else
            dedup.push_back(l);
    }
    std::vector<Line<S>> env;
    for (const auto& l : dedup) {
        while (env.size() >= 2) {
            const Line<S>& a = env[env.size() - 2];
            const Line<S>& b = env.back();
            // b contributes iff it rises above a before l takes over
            if (intersect_x(a, b) >= intersect_x(b, l))
                env.pop_back();
            else
                break;
        }
        env.push_back(l);
    }
    return env;
}

/// Unique root of D(t) = I(t) where D is the envelope of a family with
/// all slopes negative (strictly decreasing) and I the envelope of a
/// family with all slopes positive (strictly increasing). Walks the two
/// piece lists in one synchronized breakpoint scan.
template <class S>
S intersect_decreasing_increasing(const std::vector<Line<S>>& dec, const std::vector<Line<S>>& inc) {
    if (dec.empty() || inc.empty())
        throw PreconditionError("both envelope sides must be nonempty");
    std::size_t id = 0, ii = 0;
    for (;;) {
        const Line<S>& d = dec[id];
        const Line<S>& i = inc[ii];
        // difference d - i is strictly decreasing on this segment
        S root = (i.offset - d.offset) / (d.slope - i.slope);

        bool d_has_next = id + 1 < dec.size();
        bool i_has_next = ii + 1 < inc.size();
        if (!d_has_next && !i_has_next) return root;

        std::optional<S> bp_d, bp_i;
        if (d_has_next) bp_d = intersect_x(d, dec[id + 1]);
        if (i_has_next) bp_i = intersect_x(i, inc[ii + 1]);
        S upper = bp_d && bp_i ? std::min(*bp_d, *bp_i) : (bp_d ? *bp_d : *bp_i);

        if (root <= upper) return root;
        if (bp_d && *bp_d == upper) ++id;
        if (bp_i && *bp_i == upper) ++ii;
    }
}

/// Minimum of v -> max_i (slope_i v + offset_i).
/// When bounded, the argmin is the interval [lo, hi]; a missing bound
/// means the interval extends to infinity on that side (all lines of
/// one sign absent). A lone zero-slope family gives argmin = R.
template <class S>
struct LineMinimum {
    bool bounded;
    S value;               // meaningful when bounded
    std::optional<S> lo;   // nullopt: -inf
    std::optional<S> hi;   // nullopt: +inf
};

template <class S>
LineMinimum<S> minimize_max_of_lines(const std::vector<Line<S>>& lines) {
    std::vector<Line<S>> env = upper_envelope(lines);
    const S zero(0);
    if (env.front().slope > zero || env.back().slope < zero)
        return {false, zero, std::nullopt, std::nullopt};

    std::size_t k = 0;
    while (env[k].slope < zero) ++k;
    S value = env[k].slope == zero ? env[k].offset
                                   : line_at(env[k], intersect_x(env[k - 1], env[k]));

    LineMinimum<S> out{true, value, std::nullopt, std::nullopt};
    for (const auto& l : env) {
        if (l.slope < zero) {
            S bound = (value - l.offset) / l.slope;
            if (!out.lo || bound > *out.lo) out.lo = bound;
        } else if (l.slope > zero) {
            S bound = (value - l.offset) / l.slope;
            if (!out.hi || bound < *out.hi) out.hi = bound;
        }
    }
    return out;
}

} // namespace pwamin

#endif
