#include "cbounds/bounds.hpp"
#include "cbounds/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace cbounds;

TEST_CASE("rapidity conversions")
{
    CHECK(theta_from_t(0.5) == doctest::Approx(0.881373587019543).epsilon(1e-14));
    CHECK(theta_from_r(0.5) == doctest::Approx(0.881373587019543).epsilon(1e-14));
    CHECK(theta_from_n(1.0) == doctest::Approx(0.881373587019543).epsilon(1e-14));
    CHECK(theta_from_t(1.0) == 0.0);
    CHECK(theta_from_r(0.0) == 0.0);
    CHECK(theta_from_n(0.0) == 0.0);
    CHECK_THROWS_AS(theta_from_t(0.0), DomainError);
    CHECK_THROWS_AS(theta_from_t(1.5), DomainError);
    CHECK_THROWS_AS(theta_from_r(1.0), DomainError);
    CHECK_THROWS_AS(theta_from_r(-0.1), DomainError);
    CHECK_THROWS_AS(theta_from_n(-1.0), DomainError);
    CHECK(t_from_theta(5.0) == doctest::Approx(1.815832309438067e-4).epsilon(1e-13));

    std::mt19937_64 g(21);
    std::uniform_real_distribution<double> u(0.01, 30.0);
    for (int i = 0; i < 2000; ++i) {
        const double th = u(g);
        CHECK(theta_from_t(t_from_theta(th)) == doctest::Approx(th).epsilon(1e-12));
        CHECK(theta_from_n(n_from_theta(th)) == doctest::Approx(th).epsilon(1e-12));
        // R = tanh^2 saturates: the inverse amplifies rounding by about e^{2 theta}
        if (th < 6.0) CHECK(theta_from_r(r_from_theta(th)) == doctest::Approx(th).epsilon(1e-9));
        CHECK(t_from_theta(th) + r_from_theta(th) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("rapidity sequence construction")
{
    CHECK_THROWS_AS(RapiditySequence({1.0, -0.5}), DomainError);
    CHECK_THROWS_AS(RapiditySequence({std::nan("")}), DomainError);
    const double ts[] = {0.5, 1.0};
    const auto s = RapiditySequence::from_transmissions(ts);
    CHECK(s.size() == 2);
    CHECK(s[1] == 0.0);
    CHECK(s[0] == doctest::Approx(0.881373587019543));
}

TEST_CASE("two-barrier worked values")
{
    const auto t = two_barrier_t_bounds(0.5, 0.5);
    CHECK(t.low == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(t.high == doctest::Approx(1.0).epsilon(1e-15));
    const auto tr = two_barrier_t_bounds_rational(0.5, 0.5);
    CHECK(tr.low == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(tr.high == 1.0);

    const auto n = two_barrier_n_bounds(1.0, 1.0);
    CHECK(n.low == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(n.high == doctest::Approx(8.0).epsilon(1e-15));
    const auto nr = two_barrier_n_bounds_rational(1.0, 1.0);
    CHECK(nr.low == 0.0);
    CHECK(nr.high == doctest::Approx(8.0).epsilon(1e-15));

    const auto t2 = two_barrier_t_bounds(0.5, 0.8);
    CHECK(t2.low == doctest::Approx(0.2308861570204070).epsilon(1e-14));
    CHECK(t2.high == doctest::Approx(0.8555335960660128).epsilon(1e-14));
    const auto n2 = two_barrier_n_bounds(3.0, 1.0);
    CHECK(n2.low == doctest::Approx(0.20204102886728761).epsilon(1e-14));
    CHECK(n2.high == doctest::Approx(19.797958971132712).epsilon(1e-14));
}

TEST_CASE("two-barrier forms are symmetric and reduce to single barriers")
{
    const auto a = two_barrier_t_bounds(0.3, 0.9);
    const auto b = two_barrier_t_bounds(0.9, 0.3);
    CHECK(a.low == doctest::Approx(b.low).epsilon(1e-15));
    CHECK(a.high == doctest::Approx(b.high).epsilon(1e-15));
    const auto one = two_barrier_t_bounds(0.3, 1.0);
    CHECK(one.low == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(one.high == doctest::Approx(0.3).epsilon(1e-14));
    const auto r = two_barrier_r_bounds(0.5, 0.5);
    CHECK(r.low == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.high == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("B_n cases")
{
    CHECK(b_n_closed({2.0}) == 2.0);
    CHECK(b_n_iterative({2.0}) == 2.0);
    CHECK(b_n_closed({1.0, 1.0}) == 0.0);
    CHECK(b_n_closed({3.0, 1.0}) == 2.0);
    CHECK(b_n_iterative({1.0, 3.0}) == 2.0);
    CHECK(b_n_closed({5.0, 1.0, 1.0, 1.0}) == 2.0);
    CHECK(b_n_iterative({1.0, 1.0, 5.0, 1.0}) == 2.0);
    CHECK(b_n_closed({1.0, 2.0, 1.5}) == 0.0);
    CHECK(b_n_iterative({1.0, 2.0, 1.5}) == 0.0);
    CHECK(s_n({1.0, 2.0, 1.5}) == 4.5);
    CHECK(theta_peak({1.0, 2.0, 1.5}) == 2.0);
    CHECK(s_n(RapiditySequence{}) == 0.0);
}

TEST_CASE("dominant barrier at every position, n = 5 and n = 10")
{
    for (std::size_t n : {5u, 10u}) {
        for (std::size_t peak = 0; peak < n; ++peak) {
            for (double big : {0.5, double(n), 2.0 * n}) {
                std::vector<double> th(n, 1.0);
                th[peak] = big;
                const RapiditySequence seq(th);
                const double expect = std::max(2.0 * big - s_n(seq), 0.0);
                CHECK(b_n_closed(seq) == doctest::Approx(expect).epsilon(1e-12));
                CHECK(b_n_iterative(seq) == doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("B_n iterative and closed forms agree and ignore order")
{
    std::mt19937_64 g(22);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    for (std::size_t n = 1; n <= 12; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> th(n);
            for (auto& x : th) x = u(g);
            if (trial % 3 == 0) th[0] = std::accumulate(th.begin() + 1, th.end(), 0.0) + u(g);
            const RapiditySequence seq(th);
            const double c = b_n_closed(seq);
            CHECK(std::abs(b_n_iterative(seq) - c) <= 1e-12);
            std::shuffle(th.begin(), th.end(), g);
            CHECK(std::abs(b_n_iterative(RapiditySequence(th)) - c) <= 1e-12);
            CHECK(c >= 0.0);
            CHECK(c <= s_n(seq));
        }
    }
}

TEST_CASE("bounds report")
{
    const auto rep = bounds_report({3.0, 1.0});
    CHECK(rep.s_n == 4.0);
    CHECK(rep.b_n == 2.0);
    CHECK(rep.theta_peak == 3.0);
    CHECK(rep.theta_off_peak == 1.0);
    const double c4 = std::cosh(4.0), c2 = std::cosh(2.0);
    CHECK(rep.t_interval.low == doctest::Approx(1.0 / (c4 * c4)).epsilon(1e-14));
    CHECK(rep.t_interval.high == doctest::Approx(1.0 / (c2 * c2)).epsilon(1e-14));
    CHECK(rep.r_interval.low == doctest::Approx(std::tanh(2.0) * std::tanh(2.0)).epsilon(1e-14));
    CHECK(rep.n_interval.high == doctest::Approx(std::sinh(4.0) * std::sinh(4.0)).epsilon(1e-14));
    CHECK(rep.alpha_mod_interval.low == doctest::Approx(c2).epsilon(1e-14));
    CHECK(rep.beta_mod_interval.high == doctest::Approx(std::sinh(4.0)).epsilon(1e-14));
    CHECK(rep.theta_interval().low == 2.0);
    CHECK_THROWS_AS(bounds_report(RapiditySequence{}), EmptySequenceError);
    CHECK_THROWS_AS(bounds_report({200.0, 200.0}), OverflowError);
}

TEST_CASE("classical transmission")
{
    const double ts[] = {0.5, 0.4, 0.25};
    CHECK(classical_transmission(ts) == doctest::Approx(0.05));
}

TEST_CASE("resonance check")
{
    const double unequal[] = {0.9, 0.1};
    const auto r = resonance_possible(unequal);
    CHECK_FALSE(r.possible);
    CHECK(r.t_peak == 0.1);
    CHECK(r.t_min == doctest::Approx(0.053254437869822485).epsilon(1e-13));
    CHECK(r.threshold == doctest::Approx(0.375).epsilon(1e-13));
    CHECK(r.margin == doctest::Approx(-0.275).epsilon(1e-13));

    const double equal[] = {0.4, 0.4};
    const auto e = resonance_possible(equal);
    CHECK(e.possible);
    CHECK(std::abs(e.margin) < 1e-14);

    const double three[] = {0.5, 0.6, 0.7};
    const auto t3 = resonance_possible(three);
    CHECK(t3.possible);
    CHECK(t3.margin > 0.0);

    const double dominant[] = {0.01, 0.9, 0.95};
    CHECK_FALSE(resonance_possible(dominant).possible);
    CHECK(resonance_possible(dominant).margin < 0.0);

    CHECK_THROWS_AS(resonance_possible(std::span<const double>{}), EmptySequenceError);
}

TEST_CASE("resonance flag matches the margin sign away from equality")
{
    std::mt19937_64 g(23);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int i = 0; i < 5000; ++i) {
        std::vector<double> ts(2 + i % 4);
        for (auto& t : ts) t = u(g);
        const auto r = resonance_possible(ts);
        if (std::abs(r.margin) > 1e-9) CHECK(r.possible == (r.margin > 0.0));
        CHECK(r.possible == (b_n_closed(RapiditySequence::from_transmissions(ts)) == 0.0));
    }
}

TEST_CASE("production check")
{
    const double ns[] = {3.0, 0.1};
    const auto p = production_guaranteed(ns);
    CHECK(p.guaranteed);
    CHECK(p.n_max == doctest::Approx(5.997825058615211).epsilon(1e-13));
    CHECK(p.threshold == doctest::Approx(0.8226701269227346).epsilon(1e-13));
    CHECK(p.n_min == doctest::Approx(1.4021749413847885).epsilon(1e-12));

    const double boundary[] = {1.0, 1.0};
    const auto b = production_guaranteed(boundary);
    CHECK_FALSE(b.guaranteed);
    CHECK(b.n_min == 0.0);
    CHECK(b.threshold == doctest::Approx(1.0).epsilon(1e-15));

    const double single[] = {0.2};
    CHECK(production_guaranteed(single).guaranteed);
    const double none[] = {0.0};
    CHECK_FALSE(production_guaranteed(none).guaranteed);
    const double bad[] = {-1.0};
    CHECK_THROWS_AS(production_guaranteed(bad), DomainError);
}
