#include <doctest.h>

#include "pwamin/envelope.hpp"
#include "testers.hpp"

using namespace pwamin;

namespace {

Rational family_max(const std::vector<Line<Rational>>& lines, const Rational& x) {
    Rational best = line_at(lines.front(), x);
    for (const auto& l : lines) best = std::max(best, line_at(l, x));
    return best;
}

Rational envelope_at(const std::vector<Line<Rational>>& env, const Rational& x) {
    return family_max(env, x); // the envelope is itself a family of lines
}

std::vector<Line<Rational>> random_lines(Pcg32& rng, std::size_t count, bool negative,
                                         bool positive) {
    std::vector<Line<Rational>> out;
    for (std::size_t i = 0; i < count; ++i) {
        Rational slope(0);
        while (slope == Rational(0) || (negative && slope > Rational(0)) ||
               (positive && slope < Rational(0)))
            slope = testers::random_rational(rng, 5, 3);
        if (!negative && !positive && rng.bounded(5) == 0) slope = Rational(0);
        out.push_back({slope, testers::random_rational(rng, 8, 3)});
    }
    return out;
}

} // namespace

TEST_CASE("upper envelope equals the pointwise max everywhere") {
    Pcg32 rng(101);
    for (int iter = 0; iter < 300; ++iter) {
        auto lines = random_lines(rng, 1 + rng.bounded(7), false, false);
        auto env = upper_envelope(lines);
        // envelope slopes strictly increase
        for (std::size_t i = 1; i < env.size(); ++i) CHECK(env[i - 1].slope < env[i].slope);
        for (int probe = 0; probe < 12; ++probe) {
            Rational x = testers::random_rational(rng, 30, 3);
            CHECK(envelope_at(env, x) == family_max(lines, x));
        }
    }
}

TEST_CASE("monotone envelope intersection agrees with the pairwise-candidate oracle") {
    Pcg32 rng(202);
    for (int iter = 0; iter < 400; ++iter) {
        auto neg = random_lines(rng, 1 + rng.bounded(5), true, false);
        auto pos = random_lines(rng, 1 + rng.bounded(5), false, true);
        Rational root = intersect_decreasing_increasing(upper_envelope(neg), upper_envelope(pos));

        // at the root both side maxima coincide
        CHECK(family_max(neg, root) == family_max(pos, root));

        // oracle: the root must be one of the pairwise intersection points
        bool found = false;
        for (const auto& a : neg)
            for (const auto& b : pos) {
                Rational t = intersect_x(a, b);
                if (family_max(neg, t) == family_max(pos, t)) {
                    CHECK(t == root); // the crossing is unique
                    found = true;
                }
            }
        CHECK(found);
    }
}

TEST_CASE("minimize_max_of_lines: bounded shapes") {
    using L = Line<Rational>;
    // flat bottom [0, 2]
    auto flat = minimize_max_of_lines<Rational>({L{Rational(-1), Rational(0)},
                                                 L{Rational(0), Rational(0)},
                                                 L{Rational(1), Rational(-2)}});
    REQUIRE(flat.bounded);
    CHECK(flat.value == Rational(0));
    CHECK(*flat.lo == Rational(0));
    CHECK(*flat.hi == Rational(2));

    // single kink at 1
    auto kink = minimize_max_of_lines<Rational>({L{Rational(-1), Rational(0)},
                                                 L{Rational(1), Rational(-2)}});
    REQUIRE(kink.bounded);
    CHECK(kink.value == Rational(-1));
    CHECK(*kink.lo == Rational(1));
    CHECK(*kink.hi == Rational(1));

    // constants only: argmin is all of R
    auto consts = minimize_max_of_lines<Rational>({L{Rational(0), Rational(3)},
                                                   L{Rational(0), Rational(1)}});
    REQUIRE(consts.bounded);
    CHECK(consts.value == Rational(3));
    CHECK(!consts.lo);
    CHECK(!consts.hi);

    // one-sided slopes with a constant floor: half-infinite argmin
    auto half = minimize_max_of_lines<Rational>({L{Rational(1), Rational(0)},
                                                 L{Rational(0), Rational(-1)}});
    REQUIRE(half.bounded);
    CHECK(half.value == Rational(-1));
    CHECK(!half.lo);
    CHECK(*half.hi == Rational(-1));
}

TEST_CASE("minimize_max_of_lines: unbounded families") {
    using L = Line<Rational>;
    CHECK_FALSE(minimize_max_of_lines<Rational>({L{Rational(1), Rational(0)}}).bounded);
    CHECK_FALSE(minimize_max_of_lines<Rational>({L{Rational(-1), Rational(0)},
                                                 L{Rational(-2), Rational(5)}}).bounded);
}

TEST_CASE("minimize_max_of_lines agrees with dense sampling") {
    Pcg32 rng(303);
    for (int iter = 0; iter < 200; ++iter) {
        auto lines = random_lines(rng, 1 + rng.bounded(6), false, false);
        auto res = minimize_max_of_lines(lines);
        if (!res.bounded) continue;
        // the claimed value is attained on the claimed interval and no
        // sampled point does better
        Rational probe = res.lo ? *res.lo : (res.hi ? *res.hi : Rational(0));
        CHECK(family_max(lines, probe) == res.value);
        if (res.lo && res.hi) {
            CHECK(*res.lo <= *res.hi);
            CHECK(family_max(lines, (*res.lo + *res.hi) / Rational(2)) == res.value);
        }
        for (int p = 0; p < 20; ++p)
            CHECK(family_max(lines, testers::random_rational(rng, 40, 3)) >= res.value);
    }
}
