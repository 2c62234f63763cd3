#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pwamin/coordinate.hpp"
#include "pwamin/oracle.hpp"
#include "testers.hpp"

using namespace pwamin;

namespace {

Vec<Rational> rvec(std::initializer_list<long> xs) {
    Vec<Rational> out;
    for (long v : xs) out.push_back(Rational(v));
    return out;
}

} // namespace

TEST_CASE("unique step reproduces the closed-form averaging maps") {
    auto f = testers::example1();
    Pcg32 rng(5);
    for (int iter = 0; iter < 100; ++iter) {
        Vec<Rational> y = testers::random_vector(rng, 3);
        Rational y1 = y[0], y2 = y[1], y3 = y[2];

        Vec<Rational> a = y;
        unique_step(f, a, 1);
        CHECK(a == Vec<Rational>{y1, (y2 + y3) / Rational(2), (y2 + y3) / Rational(2)});

        Vec<Rational> b = y;
        unique_step(f, b, 2);
        CHECK(b == Vec<Rational>{(y3 + y1) / Rational(2), y2, (y3 + y1) / Rational(2)});

        Vec<Rational> c = y;
        unique_step(f, c, 3);
        CHECK(c == Vec<Rational>{(y1 + y2) / Rational(2), (y1 + y2) / Rational(2), y3});
    }
}

TEST_CASE("unique updates walk the documented divergence table") {
    auto f = testers::example4();
    SolverState<Rational> st(f, rvec({0, 0, 0}), UpdateRule::Unique);
    REQUIRE(st.y() == rvec({0, 4, 0, 2}));

    unique_update(st, 1);
    CHECK(st.x() == rvec({-1, 0, 0}));
    CHECK(st.y() == rvec({-1, 3, -1, 3}));

    unique_update(st, 2);
    CHECK(st.x() == rvec({-1, -2, 0}));
    CHECK(st.y() == rvec({1, 3, -3, 1}));

    unique_update(st, 3);
    CHECK(st.x() == rvec({-1, -2, 2}));
    CHECK(st.y() == rvec({-1, 3, -1, 1}));

    // each later cycle subtracts exactly one from every component
    Vec<Rational> y = st.y();
    for (int cycle = 0; cycle < 6; ++cycle) {
        Vec<Rational> next = apply_cycle(f, y);
        for (std::size_t i = 0; i < y.size(); ++i) CHECK(next[i] == y[i] - Rational(1));
        y = next;
    }
}

TEST_CASE("unique step edge cases") {
    // all-zero column: nothing depends on the variable, no-op
    PwaFunction<Rational> f({{Rational(0), Rational(1)}, {Rational(0), Rational(-1)}},
                            {Rational(0), Rational(0)});
    Vec<Rational> y{Rational(3), Rational(5)};
    CHECK(unique_step(f, y, 1) == Rational(0));
    CHECK(y == Vec<Rational>{Rational(3), Rational(5)});

    // single-signed column violates the precondition
    PwaFunction<Rational> g({{Rational(1)}, {Rational(2)}}, {Rational(0), Rational(0)});
    Vec<Rational> z{Rational(0), Rational(0)};
    CHECK_THROWS_AS(unique_step(g, z, 1), PreconditionError);

    // a state already satisfying the balance equation does not move
    auto f1 = testers::example1();
    Vec<Rational> fixed{Rational(2), Rational(2), Rational(2)};
    CHECK(unique_step(f1, fixed, 1) == Rational(0));
    CHECK(fixed == Vec<Rational>{Rational(2), Rational(2), Rational(2)});
}

TEST_CASE("proximal rule keeps the documented stall point") {
    auto f = testers::example1();
    SolverState<Rational> st(f, rvec({2, 1, 0}), UpdateRule::Proximal);
    for (int j = 1; j <= 3; ++j) {
        proximal_update(st, j);
        CHECK(st.x() == rvec({2, 1, 0}));
        CHECK(st.y() == rvec({1, -2, 1}));
    }
}

TEST_CASE("proximal rule clamps to the nearest univariate minimizer") {
    // 1-d function with argmin interval [0, 2]: max(-v, 0, v - 2)
    PwaFunction<Rational> f({{Rational(-1)}, {Rational(0)}, {Rational(1)}},
                            {Rational(0), Rational(0), Rational(-2)});
    SolverState<Rational> far(f, rvec({5}), UpdateRule::Proximal);
    proximal_update(far, 1);
    CHECK(far.x() == rvec({2}));
    CHECK(eval(f, far.x()) == Rational(0));

    SolverState<Rational> inside(f, rvec({1}), UpdateRule::Proximal);
    proximal_update(inside, 1);
    CHECK(inside.x() == rvec({1}));

    // unbounded coordinate: no minimizer to pick
    PwaFunction<Rational> g({{Rational(1)}}, {Rational(0)});
    SolverState<Rational> u(g, rvec({0}), UpdateRule::Proximal);
    CHECK_THROWS_AS(proximal_update(u, 1), UnboundedCoordinateError);
}

TEST_CASE("sweep matches the one-cycle table and keeps x and y coupled") {
    auto f = testers::example4();
    SolverState<Rational> st(f, rvec({0, 0, 0}), UpdateRule::Unique);
    sweep(st);
    CHECK(st.x() == rvec({-1, -2, 2}));
    CHECK(st.y() == rvec({-1, 3, -1, 1}));
    CHECK(st.y() == values(f, st.x()));
    CHECK(st.cycle() == 1);

    // iterated sweeps on the averaging example approach the mean of the
    // initial values
    auto f1 = testers::example1();
    SolverState<Rational> avg(f1, rvec({2, 1, 0}), UpdateRule::Unique);
    Rational mean = (avg.y()[0] + avg.y()[1] + avg.y()[2]) / Rational(3);
    for (int c = 0; c < 60; ++c) sweep(avg);
    for (const auto& v : avg.y()) CHECK(abs(v - mean) < Rational(1, 1000000000000L));
    CHECK(avg.y() == values(f1, avg.x()));
}

TEST_CASE("a fixed point is left unchanged by a sweep") {
    auto f1 = testers::example1();
    SolverState<Rational> st(f1, rvec({4, 4, 4}), UpdateRule::Unique);
    Vec<Rational> before = st.y();
    Vec<Rational> delta = sweep(st);
    CHECK(st.y() == before);
    CHECK(inf_norm(delta) == Rational(0));
}

TEST_CASE("run outcomes on the worked examples") {
    // divergence: suspected via the constant-translation window
    auto out4 = run(testers::example4(), rvec({0, 0, 0}), UpdateRule::Unique, 50, Rational(0));
    CHECK(out4.status == RunStatus::DivergenceSuspected);
    CHECK(out4.cycles_used < 50);

    // proximal stall: immediate fixed point with value 1
    auto out1 = run(testers::example1(), rvec({2, 1, 0}), UpdateRule::Proximal, 10, Rational(0));
    CHECK(out1.status == RunStatus::FixedPoint);
    CHECK(out1.cycles_used == 1);
    CHECK(out1.value == Rational(1));

    // the two-variable example fixes x1 = x2 after one coordinate update
    Pcg32 rng(17);
    for (int iter = 0; iter < 20; ++iter) {
        Vec<Rational> x0 = testers::random_vector(rng, 2);
        auto out2 = run(testers::example2(), x0, UpdateRule::Unique, 10, Rational(0));
        CHECK(out2.status == RunStatus::FixedPoint);
        CHECK(out2.state.x()[0] == out2.state.x()[1]);
        CHECK(is_fixed_point(testers::example2(), out2.state.y(), Rational(0)));
    }

    // unbounded proximal coordinate surfaces as suspected divergence
    PwaFunction<Rational> g({{Rational(1)}}, {Rational(0)});
    auto outg = run(g, rvec({0}), UpdateRule::Proximal, 10, Rational(0));
    CHECK(outg.status == RunStatus::DivergenceSuspected);

    // unique rule refuses an inconsistent row sign set up front
    CHECK_THROWS_AS(run(g, rvec({0}), UpdateRule::Unique, 10, Rational(0)), PreconditionError);
    CHECK_THROWS_AS(run(testers::example1(), rvec({0, 0, 0}), UpdateRule::Unique, 0, Rational(0)),
                    PreconditionError);
}

TEST_CASE("is_fixed_point") {
    auto f1 = testers::example1();
    CHECK(is_fixed_point(f1, rvec({7, 7, 7}), Rational(0)));
    CHECK_FALSE(is_fixed_point(f1, rvec({1, -2, 1}), Rational(0)));

    // the divergent example has no fixed point anywhere we sample
    auto f4 = testers::example4();
    Pcg32 rng(23);
    for (int iter = 0; iter < 200; ++iter) {
        auto y = values(f4, testers::random_vector(rng, 3));
        CHECK_FALSE(is_fixed_point(f4, y, Rational(0)));
    }
}

TEST_CASE("violation measure") {
    auto f1 = testers::example1();

    // nonempty closure at the argmax gives e = 0
    Vec<Rational> flat{Rational(2), Rational(2), Rational(2)};
    CHECK(violation_measure(f1, flat) == Rational(0));

    // the proximal stall point sits at e = 3: all rows must activate
    CHECK(violation_measure(f1, rvec({1, -2, 1})) == Rational(3));
    bool defined = false;
    CHECK(testers::oracle_violation(f1, rvec({1, -2, 1}), &defined) == Rational(3));
    CHECK(defined);

    // precondition: inconsistent row signs make e potentially infinite
    PwaFunction<Rational> g({{Rational(1)}}, {Rational(0)});
    CHECK_THROWS_AS(violation_measure(g, Vec<Rational>{Rational(0)}), PreconditionError);
    CHECK(!violation_measure_opt(g, Vec<Rational>{Rational(0)}));

    // random agreement with the eps-grid oracle, plus the range bound
    Pcg32 rng(29);
    for (int iter = 0; iter < 150; ++iter) {
        std::size_t n = 1 + rng.bounded(4), m = 2 + rng.bounded(5);
        auto f = generate_random(n, m, rng.next(), GenProfile::SignConsistentOnly);
        auto y = testers::random_vector(rng, m);
        Rational e = violation_measure(f, y);
        Rational oracle = testers::oracle_violation(f, y, &defined);
        REQUIRE(defined);
        CHECK(e == oracle);
        CHECK(e <= max_value(y) - min_value(y));
    }
}

TEST_CASE("max y never increases across unique updates") {
    Pcg32 rng(31);
    for (int iter = 0; iter < 300; ++iter) {
        std::size_t n = 1 + rng.bounded(4), m = 2 + rng.bounded(5);
        auto f = generate_random(n, m, rng.next(), GenProfile::SignConsistentOnly);
        auto y = testers::random_vector(rng, m);
        for (int j = 1; j <= static_cast<int>(n); ++j) {
            Rational before = max_value(y);
            unique_step(f, y, j);
            CHECK(max_value(y) <= before);
        }
    }
}

TEST_CASE("unique-rule fixed points: consistent signs and proximal dominance") {
    Pcg32 rng(37);
    int fixed_found = 0;
    for (int iter = 0; iter < 200 && fixed_found < 40; ++iter) {
        std::size_t n = 1 + rng.bounded(3), m = 2 + rng.bounded(4);
        auto f = generate_random(n, m, rng.next(), GenProfile::SignConsistentOnly);
        auto x0 = testers::random_vector(rng, n, 6, 3);
        auto out = run(f, x0, UpdateRule::Unique, 40, Rational(0), false);
        if (out.status != RunStatus::FixedPoint) continue;
        ++fixed_found;
        const auto& y = out.state.y();
        REQUIRE(is_fixed_point(f, y, Rational(0)));
        // the active sign set at a fixed point is consistent
        CHECK(is_consistent(row_sign_set(f, argmax_set(y))));
        // and the proximal rule cannot move off a unique-rule fixed point
        for (int j = 1; j <= static_cast<int>(n); ++j) {
            SolverState<Rational> st(f, out.state.x(), UpdateRule::Proximal);
            proximal_update(st, j);
            CHECK(st.x() == out.state.x());
        }
    }
    CHECK(fixed_found > 0);
}

TEST_CASE("iterates stay bounded under the strict-interior hypothesis (float)") {
    Pcg32 rng(41);
    for (int iter = 0; iter < 30; ++iter) {
        std::size_t n = 1 + rng.bounded(4), m = 2 + rng.bounded(7);
        auto f = generate_random(n, m, rng.next(), GenProfile::RintConsistent);
        REQUIRE(contains_origin_rint_conv(f.rows()).contains);
        auto fd = to_float(f);
        Point<double> x0;
        for (std::size_t j = 0; j < n; ++j) x0.push_back(static_cast<double>(rng.range(-5, 5)));
        auto out = run(fd, x0, UpdateRule::Unique, 500, 1e-9, false);
        CHECK(std::isfinite(out.max_abs_y));
        CHECK(inf_norm(out.state.y()) <= out.max_abs_y);
    }
}

TEST_CASE("float mode converges on the averaging example") {
    auto f = testers::example1<double>();
    auto out = run(f, Point<double>{2.0, 1.0, 0.0}, UpdateRule::Unique, 200, 1e-9);
    CHECK(out.status == RunStatus::FixedPoint);
    CHECK(std::abs(out.value) < 1e-8);
    REQUIRE(out.violation.has_value());
    CHECK(*out.violation < 1e-8);
}

TEST_CASE("undefined violation measure is reported as inf") {
    // max(x1 + x2, -x1 + 2 x2, 2 x1): iterated pruning deletes every sign
    // vector (coordinate 2, then coordinate 1), so no slack ever closes
    // the active set; the proximal rule still fixes at the origin
    PwaFunction<Rational> f({{Rational(1), Rational(1)},
                             {Rational(-1), Rational(2)},
                             {Rational(2), Rational(0)}},
                            {Rational(0), Rational(0), Rational(0)});
    REQUIRE(consistency_closure(row_sign_set(f)).empty());
    auto out = run(f, rvec({0, 0}), UpdateRule::Proximal, 10, Rational(0));
    CHECK(out.status == RunStatus::FixedPoint);
    CHECK(!out.violation.has_value());
    std::string csv = trace_to_csv(out.trace);
    CHECK(csv.find(",inf,") != std::string::npos);
}

TEST_CASE("trace records iterations, cycles, and is deterministic") {
    auto f = testers::example4();
    auto out = run(f, rvec({0, 0, 0}), UpdateRule::Unique, 5, Rational(0));
    CHECK(out.status == RunStatus::CycleBudgetExhausted);
    REQUIRE(out.trace.iterations.size() == 15);
    REQUIRE(out.trace.cycles.size() == 5);

    CHECK(out.trace.iterations[0].coord == 1);
    CHECK(out.trace.iterations[0].x_coord == Rational(-1));
    CHECK(out.trace.iterations[0].max_y == Rational(3));
    CHECK(out.trace.iterations[1].x_coord == Rational(-2));
    CHECK(out.trace.iterations[2].x_coord == Rational(2));
    CHECK(out.trace.cycles[0].max_y == Rational(3));
    CHECK(out.trace.cycles[0].step_inf_norm == Rational(1));
    REQUIRE(out.trace.cycles[0].e_y.has_value());
    CHECK(*out.trace.cycles[0].e_y == Rational(4));

    std::string csv = trace_to_csv(out.trace);
    CHECK(csv.substr(0, csv.find('\n')) == "cycle,iteration,j,x_j_star,max_y,e_y,step_inf_norm");
    CHECK(csv.find("1,1,1,-1,3,,\n") != std::string::npos);
    CHECK(csv.find("1,3,,,3,4,1\n") != std::string::npos);

    // bit-identical traces for identical exact runs
    auto out2 = run(f, rvec({0, 0, 0}), UpdateRule::Unique, 5, Rational(0));
    CHECK(trace_to_csv(out2.trace) == csv);
}
