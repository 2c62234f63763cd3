#include <doctest.h>

#include "pwamin/oracle.hpp"
#include "pwamin/simplex.hpp"
#include "testers.hpp"

using namespace pwamin;

namespace {

Vec<Rational> rv(std::initializer_list<long> xs) {
    Vec<Rational> out;
    for (long v : xs) out.push_back(Rational(v));
    return out;
}

Rational dot(const Vec<Rational>& a, const Vec<Rational>& b) {
    Rational acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

} // namespace

TEST_CASE("standard-form simplex basics with verified certificates") {
    // min -x1 - x2 s.t. x1 + x2 + s = 2
    auto opt = solve_standard_lp({{Rational(1), Rational(1), Rational(1)}}, {Rational(2)},
                                 {Rational(-1), Rational(-1), Rational(0)});
    REQUIRE(opt.status == LpStatus::Optimal);
    CHECK(opt.objective == Rational(-2));
    // dual certificate: dual^T M <= c and dual^T d = objective
    REQUIRE(opt.dual.size() == 1);
    CHECK(opt.dual[0] * Rational(2) == opt.objective);
    for (long j = 0; j < 3; ++j)
        CHECK(opt.dual[0] * (j < 2 ? Rational(1) : Rational(1)) <=
              (j < 2 ? Rational(-1) : Rational(0)));

    // infeasible: x1 + x2 = -1 with x >= 0; Farkas certificate checks out
    auto inf = solve_standard_lp({{Rational(1), Rational(1)}}, {Rational(-1)},
                                 {Rational(0), Rational(0)});
    REQUIRE(inf.status == LpStatus::Infeasible);
    REQUIRE(inf.farkas.size() == 1);
    CHECK(inf.farkas[0] * Rational(1) <= Rational(0));
    CHECK(inf.farkas[0] * Rational(-1) > Rational(0));

    // unbounded: min -x1 with x1 - x2 = 0
    auto unb = solve_standard_lp({{Rational(1), Rational(-1)}}, {Rational(0)},
                                 {Rational(-1), Rational(0)});
    REQUIRE(unb.status == LpStatus::Unbounded);
    REQUIRE(unb.ray.size() == 2);
    CHECK(unb.ray[0] - unb.ray[1] == Rational(0));
    CHECK(unb.ray[0].sign() >= 0);
    CHECK(unb.ray[1].sign() >= 0);
    CHECK(-unb.ray[0] < Rational(0)); // improving direction
}

TEST_CASE("contains_origin_conv on the worked sets") {
    auto no = contains_origin_conv({rv({1, -2}), rv({-2, 1})});
    CHECK_FALSE(no.contains);

    auto yes = contains_origin_conv({rv({0, 1, -1}), rv({-1, 0, 1}), rv({1, -1, 0})});
    REQUIRE(yes.contains);
    REQUIRE(yes.certificate.has_value());
    // the certificate here is unique: equal thirds
    CHECK(yes.certificate->lambda ==
          Vec<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});

    auto zero = contains_origin_conv({rv({0, 0})});
    REQUIRE(zero.contains);
    CHECK(zero.certificate->lambda == Vec<Rational>{Rational(1)});
}

TEST_CASE("contains_origin_rint_conv") {
    auto f1 = testers::example1();
    auto r = contains_origin_rint_conv(f1.rows());
    REQUIRE(r.contains);
    REQUIRE(r.certificate.has_value());
    for (const auto& l : r.certificate->lambda) CHECK(l.sign() > 0);
    CHECK(certificate_is_valid(f1.rows(), *r.certificate));

    // opposite points on a line: 0 is in the relative interior of the span
    CHECK(contains_origin_rint_conv({rv({1, 0}), rv({-1, 0})}).contains);

    CHECK_FALSE(contains_origin_rint_conv({rv({1, -2}), rv({-2, 1})}).contains);

    // in conv but only on the boundary: not rint
    CHECK(contains_origin_conv({rv({0, 0}), rv({1, 0})}).contains);
    CHECK_FALSE(contains_origin_rint_conv({rv({1, 1}), rv({-1, 0}), rv({1, 0})}).contains);
}

TEST_CASE("is_bounded_below") {
    CHECK_FALSE(is_bounded_below(testers::example4()));
    CHECK(is_bounded_below(testers::example1()));
    PwaFunction<Rational> c({{Rational(0), Rational(0)}}, {Rational(5)});
    CHECK(is_bounded_below(c));
}

TEST_CASE("is_global_minimizer") {
    auto f1 = testers::example1();
    CHECK(is_global_minimizer(f1, rv({3, 3, 3})));
    CHECK(is_global_minimizer(f1, rv({0, 0, 0})));
    CHECK_FALSE(is_global_minimizer(f1, rv({2, 1, 0})));

    auto f2 = testers::example2();
    CHECK_FALSE(is_global_minimizer(f2, rv({0, 0})));
}

TEST_CASE("solve_min_lp on the worked examples") {
    auto r1 = solve_min_lp(testers::example1());
    REQUIRE(r1.status == MinStatus::Optimal);
    CHECK(r1.value == Rational(0));
    CHECK(eval(testers::example1(), r1.minimizer) == Rational(0));

    auto r4 = solve_min_lp(testers::example4());
    CHECK(r4.status == MinStatus::Unbounded);

    PwaFunction<Rational> c({{Rational(0)}}, {Rational(-3)});
    auto rc = solve_min_lp(c);
    REQUIRE(rc.status == MinStatus::Optimal);
    CHECK(rc.value == Rational(-3));
}

TEST_CASE("y_set_is_bounded") {
    CHECK(y_set_is_bounded(testers::example1()));

    PwaFunction<Rational> half({{Rational(1), Rational(0)}}, {Rational(0)});
    CHECK_FALSE(y_set_is_bounded(half));

    PwaFunction<Rational> box({{Rational(1), Rational(0)},
                               {Rational(-1), Rational(0)},
                               {Rational(0), Rational(1)},
                               {Rational(0), Rational(-1)}},
                              {Rational(1), Rational(1), Rational(1), Rational(1)});
    CHECK(y_set_is_bounded(box));

    // 0 <= -1 is impossible: the feasible set is empty
    PwaFunction<Rational> empty({{Rational(0)}}, {Rational(-1)});
    CHECK_THROWS_AS(y_set_is_bounded(empty), EmptyFeasibleSetError);
}

TEST_CASE("strong duality, complementary slackness and the sign relaxation, randomized") {
    Pcg32 rng(47);
    int bounded_seen = 0, unbounded_seen = 0;
    for (int iter = 0; iter < 120; ++iter) {
        std::size_t n = 1 + rng.bounded(4), m = 1 + rng.bounded(6);
        auto f = generate_random(n, m, rng.next(), GenProfile::Unrestricted);

        auto conv = contains_origin_conv(f.rows());
        CHECK(conv.contains == is_bounded_below(f));
        if (conv.contains) {
            CHECK(certificate_is_valid(f.rows(), *conv.certificate));
            CHECK(sign_condition_holds(f.rows())); // necessity, never the converse
        }
        auto rint = contains_origin_rint_conv(f.rows());
        if (rint.contains) CHECK(conv.contains);

        auto res = solve_min_lp(f);
        if (res.status == MinStatus::Optimal) {
            ++bounded_seen;
            CHECK(conv.contains);
            REQUIRE(res.dual.has_value());
            // dual value b^T lambda equals the primal optimum exactly
            CHECK(dot(f.offsets(), res.dual->lambda) == res.value);
            CHECK(certificate_is_valid(f.rows(), *res.dual));
            // complementary slackness: only active rows carry weight
            auto y = values(f, res.minimizer);
            auto active = argmax_set(y);
            for (std::size_t i = 0; i < m; ++i) {
                bool is_active = std::binary_search(active.begin(), active.end(),
                                                    static_cast<int>(i) + 1);
                if (!is_active) CHECK(res.dual->lambda[i] == Rational(0));
            }
            CHECK(is_global_minimizer(f, res.minimizer));
        } else {
            ++unbounded_seen;
            CHECK_FALSE(conv.contains);
        }
    }
    CHECK(bounded_seen > 0);
    CHECK(unbounded_seen > 0);
}

TEST_CASE("lp minimum agrees with the float grid search") {
    Pcg32 rng(53);
    for (int iter = 0; iter < 25; ++iter) {
        std::size_t n = 1 + rng.bounded(4), m = 2 + rng.bounded(5);
        auto f = generate_random(n, m, rng.next(), GenProfile::Unrestricted);
        auto res = solve_min_lp(f);
        auto grid = testers::grid_refine_minimum(testers::oracle_target(f));
        if (res.status == MinStatus::Optimal) {
            REQUIRE(grid.bounded);
            CHECK(std::abs(grid.min_value - res.value.to_double()) < 1e-6);
        } else {
            CHECK_FALSE(grid.bounded);
        }
    }
}
