#include <catch_amalgamated.hpp>

#include <kspace/measure.hpp>

#include <random>

using namespace kspace;

namespace {

AtomicMeasure random_measure(std::mt19937_64& rng, int atoms) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Atom> v;
    for (int i = 0; i < atoms; ++i) {
        const double angle = pi * (u(rng) + 1.0);
        const double re = u(rng);
        const double im = u(rng);
        v.push_back({CirclePoint(angle), cplx{re, im}});
    }
    return AtomicMeasure(std::move(v));
}

}  // namespace

TEST_CASE("atomic measures merge close atoms and reject empty mass") {
    const AtomicMeasure mu({{CirclePoint(1.0), 1.0}, {CirclePoint(1.0 + 1e-13), 2.0}, {CirclePoint(2.0), -1.0}});
    REQUIRE(mu.size() == 2);
    CHECK(std::abs(mu.atoms()[0].weight - cplx{3.0, 0.0}) < 1e-15);

    const AtomicMeasure wrap({{CirclePoint(0.0), 1.0}, {CirclePoint(two_pi - 1e-13), 1.0}});
    CHECK(wrap.size() == 1);

    CHECK_THROWS_AS(AtomicMeasure({}), DomainError);
    CHECK_THROWS_AS(AtomicMeasure({{CirclePoint(0.0), 1.0}, {CirclePoint(0.0), -1.0}}), DomainError);
}

TEST_CASE("cauchy_eval examples") {
    const CauchyTransform delta(AtomicMeasure::point_mass(0.0));
    CHECK(std::abs(cauchy_eval(delta, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(cauchy_eval(delta, 0.5) - 2.0) < 1e-15);

    const CauchyTransform pair(AtomicMeasure({{CirclePoint(0.0), 0.5}, {CirclePoint(pi), 0.5}}));
    const cplx z{0.0, 0.6};
    const cplx oracle = 0.5 / (1.0 - z) + 0.5 / (1.0 + z);
    CHECK(std::abs(cauchy_eval(pair, z) - oracle) < 1e-15);
    CHECK(std::abs(cauchy_eval(pair, z) - 1.0 / 1.36) < 1e-15);

    CHECK_THROWS_AS(cauchy_eval(delta, 1.0), DomainError);
}

TEST_CASE("tv_norm examples") {
    CHECK(tv_norm(AtomicMeasure::point_mass(0.0)) == 1.0);
    CHECK(tv_norm(AtomicMeasure({{CirclePoint(0.0), 1.0}, {CirclePoint(pi), -1.0}})) == 2.0);
    CHECK(std::abs(tv_norm(AtomicMeasure::point_mass(0.3, cplx{3.0, 4.0})) - 5.0) < 1e-15);
}

TEST_CASE("taylor_coeffs examples") {
    const auto ones = taylor_coeffs(AtomicMeasure::point_mass(0.0), 5);
    for (const auto& c : ones) CHECK(std::abs(c - 1.0) < 1e-15);

    const auto at_i = taylor_coeffs(AtomicMeasure::point_mass(pi / 2), 4);
    const cplx expect_i[] = {1.0, cplx{0, -1}, -1.0, cplx{0, 1}};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(at_i[k] - expect_i[k]) < 1e-15);

    const auto half = taylor_coeffs(AtomicMeasure({{CirclePoint(0.0), 0.5}, {CirclePoint(pi), 0.5}}), 4);
    const double expect_half[] = {1.0, 0.0, 1.0, 0.0};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(half[k] - expect_half[k]) < 1e-15);

    CHECK_THROWS_AS(taylor_coeffs(AtomicMeasure::point_mass(0.0), 0), DomainError);
    CHECK_THROWS_AS(taylor_coeffs(AtomicMeasure::point_mass(0.0), 4097), DomainError);
}

TEST_CASE("monomial_pushforward examples") {
    const auto nu = monomial_pushforward(AtomicMeasure::point_mass(0.0), 2);
    REQUIRE(nu.size() == 2);
    CHECK(std::abs(nu.atoms()[0].position.value() - 1.0) < 1e-15);
    CHECK(std::abs(nu.atoms()[1].position.value() + 1.0) < 1e-15);
    CHECK(std::abs(nu.atoms()[0].weight - 0.5) < 1e-15);
    // 1/2/(1 - z) + 1/2/(1 + z) = 1/(1 - z^2): coefficients 1, 0, 1, 0, ...
    const auto c = taylor_coeffs(nu, 20);
    for (int k = 0; k < 20; ++k) CHECK(std::abs(c[k] - (k % 2 == 0 ? 1.0 : 0.0)) < 1e-12);

    const auto mu = AtomicMeasure({{CirclePoint(0.4), cplx{1, 2}}, {CirclePoint(3.0), -0.5}});
    const auto same = monomial_pushforward(mu, 1);
    REQUIRE(same.size() == mu.size());
    CHECK(std::abs(same.atoms()[1].weight - mu.atoms()[1].weight) == 0.0);

    const auto roots = monomial_pushforward(AtomicMeasure::point_mass(pi / 2), 2);
    REQUIRE(roots.size() == 2);
    for (const auto& a : roots.atoms()) {
        CHECK(std::abs(a.position.value() * a.position.value() - cplx{0, 1}) < 1e-15);
        CHECK(std::abs(a.weight - 0.5) < 1e-15);
    }
    // K_mu(z^2) has Taylor coefficients mu_hat(k/2) at even k
    const auto base = taylor_coeffs(AtomicMeasure::point_mass(pi / 2), 10);
    const auto pushed = taylor_coeffs(roots, 20);
    for (int k = 0; k < 20; ++k) {
        const cplx expect = k % 2 == 0 ? base[k / 2] : cplx{0.0, 0.0};
        CHECK(std::abs(pushed[k] - expect) < 1e-12);
    }
    CHECK_THROWS_AS(monomial_pushforward(mu, 0), DomainError);
}

TEST_CASE("transform matches its Taylor series within the geometric tail bound") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto mu = random_measure(rng, 1 + trial % 5);
        const CauchyTransform f(mu);
        const auto coeffs = taylor_coeffs(mu, 200);
        const cplx z = std::polar(0.9 * std::sqrt(u(rng)), two_pi * u(rng));
        cplx partial{0.0, 0.0};
        cplx zk = 1.0;
        for (int k = 0; k < 200; ++k) {
            const double tail = 2.0 * tv_norm(mu) * std::pow(0.9, k) / 0.1;
            CHECK(std::abs(f(z) - partial) <= tail);
            partial += coeffs[k] * zk;
            zk *= z;
        }
    }
}

TEST_CASE("pushforward preserves total variation and dilates coefficients") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const auto mu = random_measure(rng, 1 + trial % 4);
        const int n = 1 + trial % 5;
        const auto nu = monomial_pushforward(mu, n);
        CHECK(std::abs(tv_norm(nu) - tv_norm(mu)) <= 1e-14 * std::max(1.0, tv_norm(mu)));
        const auto a = taylor_coeffs(mu, 50);
        const auto b = taylor_coeffs(nu, 50);
        for (int k = 0; k < 50; ++k) {
            const cplx expect = k % n == 0 ? a[k / n] : cplx{0.0, 0.0};
            CHECK(std::abs(b[k] - expect) <= 1e-12);
        }
    }
}

TEST_CASE("cauchy transform is additive in the measure") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const auto mu = random_measure(rng, 3);
        const auto nu = random_measure(rng, 2);
        const cplx z{0.3, -0.5};
        const cplx lhs = CauchyTransform(mu + nu)(z);
        const cplx rhs = CauchyTransform(mu)(z) + CauchyTransform(nu)(z);
        CHECK(std::abs(lhs - rhs) < 1e-13);
        const cplx s{0.5, 2.0};
        CHECK(std::abs(CauchyTransform(s * mu)(z) - s * CauchyTransform(mu)(z)) < 1e-13);
    }
}
