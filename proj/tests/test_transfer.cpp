#include "cbounds/errors.hpp"
#include "cbounds/transfer.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cbounds;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

HyperbolicParams random_params(std::mt19937_64& g, double max_theta = 4.0)
{
    std::uniform_real_distribution<double> th(0.0, max_theta);
    std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
    return {th(g), ph(g), ph(g)};
}

} // namespace

TEST_CASE("default matrix is the identity")
{
    TransferMatrix m;
    CHECK(m.alpha() == complex(1.0, 0.0));
    CHECK(m.beta() == complex(0.0, 0.0));
    CHECK(transmission(m) == 1.0);
    CHECK(rapidity(m) == 0.0);
}

TEST_CASE("matrix entries follow the conjugate layout")
{
    const auto m = make_transfer({1.25, 0.0}, {0.0, 0.75});
    CHECK(m(0, 0) == m.alpha());
    CHECK(m(0, 1) == m.beta());
    CHECK(m(1, 0) == std::conj(m.beta()));
    CHECK(m(1, 1) == std::conj(m.alpha()));
    CHECK_THROWS_AS(m(2, 0), DomainError);
}

TEST_CASE("polar form at theta = ln(1 + sqrt 2)")
{
    const auto m = from_polar({std::log(1.0 + std::sqrt(2.0)), 0.0, 0.0});
    CHECK(m.alpha().real() == doctest::Approx(1.4142135623730951).epsilon(1e-15));
    CHECK(m.beta().real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(transmission(m) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("normalization is enforced")
{
    CHECK_THROWS_AS(make_transfer({1.0, 0.0}, {0.5, 0.0}), NormalizationError);
    CHECK_THROWS_AS(make_transfer({0.5, 0.0}, {0.0, 0.0}), NormalizationError);
    CHECK_THROWS_AS(make_transfer({std::nan(""), 0.0}, {0.0, 0.0}), DomainError);
    CHECK_NOTHROW(make_transfer({std::cosh(2.0), 0.0}, {0.0, std::sinh(2.0)}));
    CHECK_THROWS_AS(from_polar({-0.1, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(from_polar({400.0, 0.0, 0.0}), OverflowError);
}

TEST_CASE("polar round trip")
{
    std::mt19937_64 g(11);
    for (int i = 0; i < 1000; ++i) {
        auto p = random_params(g);
        p.theta += 0.01;
        const auto q = to_polar(from_polar(p));
        CHECK(q.theta == doctest::Approx(p.theta).epsilon(1e-12));
        CHECK(std::abs(normalize_phase(q.phi_alpha - p.phi_alpha)) < 1e-12);
        CHECK(std::abs(normalize_phase(q.phi_beta - p.phi_beta)) < 1e-12);
    }
}

TEST_CASE("probabilities")
{
    std::mt19937_64 g(12);
    for (int i = 0; i < 500; ++i) {
        const auto p = random_params(g);
        const auto m = from_polar(p);
        const double c = std::cosh(p.theta);
        CHECK(transmission(m) == doctest::Approx(1.0 / (c * c)).epsilon(1e-12));
        CHECK(transmission(m) + reflection(m) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(particle_number(m) == doctest::Approx(std::sinh(p.theta) * std::sinh(p.theta)).epsilon(1e-12));
        const auto amp = amplitudes(m);
        CHECK(amp.transmission() == doctest::Approx(transmission(m)).epsilon(1e-12));
        CHECK(amp.reflection() == doctest::Approx(reflection(m)).epsilon(1e-12));
        CHECK(std::abs(amp.t - 1.0 / m.alpha()) < 1e-12);
        CHECK(std::abs(amp.r - m.beta() / m.alpha()) < 1e-12);
    }
}

TEST_CASE("compose matches a plain matrix product")
{
    std::mt19937_64 g(13);
    for (int i = 0; i < 1000; ++i) {
        const auto p1 = random_params(g, 3.0);
        const auto p2 = random_params(g, 3.0);
        const auto m = compose(from_polar(p1), from_polar(p2));
        const auto ref = oracle::matmul(oracle::polar(p1.theta, p1.phi_alpha, p1.phi_beta),
                                        oracle::polar(p2.theta, p2.phi_alpha, p2.phi_beta));
        const double scale = std::abs(ref[0][0]);
        CHECK(std::abs(m.alpha() - ref[0][0]) / scale < 1e-12);
        CHECK(std::abs(m.beta() - ref[0][1]) / scale < 1e-12);
        CHECK(std::abs(m(1, 0) - ref[1][0]) / scale < 1e-12);
        CHECK(std::abs(m(1, 1) - ref[1][1]) / scale < 1e-12);
    }
}

TEST_CASE("compose is associative but not commutative")
{
    const auto a = from_polar({0.7, 0.3, -1.1});
    const auto b = from_polar({1.2, 2.0, 0.4});
    const auto c = from_polar({0.4, -0.5, 2.9});
    const auto l = compose(compose(a, b), c);
    const auto r = compose(a, compose(b, c));
    CHECK(std::abs(l.alpha() - r.alpha()) < 1e-12);
    CHECK(std::abs(l.beta() - r.beta()) < 1e-12);
    const auto ab = compose(a, b);
    const auto ba = compose(b, a);
    CHECK(std::abs(ab.beta() - ba.beta()) > 1e-3);
    const TransferMatrix seq[] = {a, b, c};
    const auto s = compose_sequence(seq);
    CHECK(std::abs(s.alpha() - l.alpha()) < 1e-12);
    CHECK_THROWS_AS(compose_sequence(std::span<const TransferMatrix>{}), EmptySequenceError);
}

TEST_CASE("aligned boosts add rapidities")
{
    const auto m = compose(boost(0.3), boost(0.4));
    CHECK(rapidity(m) == doctest::Approx(0.7).epsilon(1e-14));
    // tanh(0.3 + 0.4) via the addition formula: reflection amplitude ratio
    const double t3 = std::tanh(0.3), t4 = std::tanh(0.4);
    CHECK(std::tanh(rapidity(m)) == doctest::Approx((t3 + t4) / (1 + t3 * t4)).epsilon(1e-14));
    // anti-aligned phases subtract
    const auto d = compose(boost(0.9), from_polar({0.4, 0.0, std::numbers::pi}));
    CHECK(rapidity(d) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("shift moves only the phase of beta")
{
    std::mt19937_64 g(14);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 200; ++i) {
        const auto m = from_polar(random_params(g));
        const double k = u(g), a = u(g) - 2.5;
        const auto s = shift(m, k, a);
        CHECK(s.alpha() == m.alpha());
        CHECK(std::abs(s.beta() - m.beta() * std::exp(complex(0.0, 2.0 * k * a))) < 1e-12);
        CHECK(rapidity(s) == doctest::Approx(rapidity(m)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(shift(boost(1.0), 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(shift(boost(1.0), -1.0, 1.0), DomainError);
}

TEST_CASE("large products stay normalized")
{
    // Many strong matrices; relative normalization must survive the growth.
    TransferMatrix m;
    std::mt19937_64 g(15);
    for (int i = 0; i < 60; ++i) m = compose(m, from_polar(random_params(g, 5.0)));
    const double a = std::abs(m.alpha()), b = std::abs(m.beta());
    CHECK(std::abs((a - b) * (a + b) - 1.0) <= 1e-10 * (a * a + b * b));
}

TEST_CASE("overflow is reported instead of returning inf")
{
    auto m = boost(300.0);
    CHECK_THROWS_AS(compose(m, boost(100.0)), OverflowError);
}

TEST_CASE("normalize_phase")
{
    CHECK(normalize_phase(std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(normalize_phase(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(normalize_phase(3 * std::numbers::pi / 2) == doctest::Approx(-std::numbers::pi / 2));
    CHECK(rel(normalize_phase(0.25 + 40 * std::numbers::pi), 0.25) < 1e-12);
}
