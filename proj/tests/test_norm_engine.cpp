#include <catch_amalgamated.hpp>

#include <kspace/norm_engine.hpp>

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

const AtomicMeasure delta_1 = AtomicMeasure::point_mass(0.0);
const AtomicMeasure dipole_sum({{CirclePoint(0.0), 1.0}, {CirclePoint(pi), 1.0}});
const AtomicMeasure dipole_diff({{CirclePoint(0.0), 1.0}, {CirclePoint(pi), -1.0}});

std::vector<AtomicMeasure> fixture_measures() {
    return {delta_1,
            AtomicMeasure::point_mass(pi / 2),
            dipole_sum,
            dipole_diff,
            AtomicMeasure({{CirclePoint(0.0), 0.5}, {CirclePoint(pi), 0.5}}),
            AtomicMeasure({{CirclePoint(0.7), cplx{1.0, -0.5}}, {CirclePoint(2.9), 0.3}, {CirclePoint(4.4), cplx{0.0, 0.8}}})};
}

}  // namespace

TEST_CASE("pairing examples") {
    CHECK(std::abs(pairing(delta_1, DiskAlgebraPoly::constant(1.0)) - 1.0) < 1e-15);
    CHECK(std::abs(pairing(AtomicMeasure::point_mass(pi / 2), DiskAlgebraPoly::monomial(1)) - cplx{0.0, -1.0}) < 1e-15);
    CHECK(std::abs(pairing(dipole_diff, DiskAlgebraPoly::monomial(1)) - 2.0) < 1e-15);
    CHECK(std::abs(pairing_quadrature(dipole_diff, DiskAlgebraPoly::monomial(1), 0.999) - 2.0 * 0.999) < 1e-8);
}

TEST_CASE("pairing agrees with direct quadrature of f(rt) conj(h(t))") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 40; ++trial) {
        const auto mu = random_measure(rng, 1 + trial % 4);
        const auto h = sample_unit_ball(static_cast<std::size_t>(trial % 9), 7000 + trial);
        const cplx q = pairing_quadrature(mu, h, 0.999);
        CHECK(std::abs(q - pairing_at_radius(mu, h, 0.999)) < 1e-8);
        // the radius-r value approaches the limit at rate d * tv * (1 - r)
        const double slack = static_cast<double>(h.degree()) * tv_norm(mu) * 1e-3 + 1e-8;
        CHECK(std::abs(q - pairing(mu, h)) <= slack);
    }
    CHECK(pairing_at_radius(dipole_diff, DiskAlgebraPoly::monomial(1), 1.0) == pairing(dipole_diff, DiskAlgebraPoly::monomial(1)));
    CHECK_THROWS_AS(pairing_quadrature(delta_1, DiskAlgebraPoly::monomial(1), 1.0), DomainError);
}

TEST_CASE("pairing is bounded by tv times certified sup") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 500; ++trial) {
        const auto mu = random_measure(rng, 1 + trial % 6);
        const auto h = sample_unit_ball(static_cast<std::size_t>(trial % 20), 8000 + trial);
        CHECK(std::abs(pairing(mu, h)) <= tv_norm(mu) * h.certified_sup() + 1e-12);
    }
}

TEST_CASE("knorm_lower examples") {
    const auto one = knorm_lower(delta_1, 4, 2, 20240001);
    CHECK(std::abs(one.value - 1.0) < 1e-6);
    CHECK(one.witness.degree() == 0);

    const auto sum = knorm_lower(dipole_sum, 4, 2, 20240001);
    CHECK(std::abs(sum.value - 2.0) < 1e-6);

    const auto diff = knorm_lower(dipole_diff, 4, 2, 20240001);
    CHECK(std::abs(diff.value - 2.0) < 1e-3);
    CHECK(diff.value <= 2.0 + 1e-9);

    // same seed, same answer
    const auto again = knorm_lower(dipole_diff, 4, 2, 20240001);
    CHECK(again.value == diff.value);
    CHECK(again.witness.coeffs() == diff.witness.coeffs());
}

TEST_CASE("duality sandwich holds on fixtures and random measures") {
    for (const auto& mu : fixture_measures()) {
        const auto b = knorm_bracket(mu, SearchOptions{8, 2, 20240001, 100});
        CHECK(b.lower <= b.upper + 1e-9);
        CHECK(b.witness_h.certified_sup() <= 1.0 + 1e-12);
        CHECK(std::abs(pairing(mu, b.witness_h)) / b.witness_h.certified_sup() >= b.lower * (1 - 1e-12));
    }
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const auto mu = random_measure(rng, 1 + trial % 5);
        const auto lo = knorm_lower(mu, 6, 1, 100 + trial, 60);
        CHECK(lo.value <= tv_norm(mu) + 1e-9);
        CHECK(lo.value > 0.0);
    }
}

TEST_CASE("dual search certifies the witness it reports") {
    const std::vector<cplx> moments{cplx{0.3, 0.1}, cplx{-1.0, 0.4}, cplx{0.2, 0.9}, 0.5};
    const auto best = maximize_dual_pairing(moments, SearchOptions{3, 3, 7, 100});
    const DiskAlgebraPoly fine(best.witness.coeffs(), std::size_t{1} << 18);
    CHECK(best.value <= std::abs(apply_functional(moments, best.witness.coeffs())) / fine.certified_sup() + 1e-12);
    // never below the constant and best monomial witnesses
    for (const auto& m : moments) CHECK(best.value >= std::abs(m) - 1e-12);
    CHECK_THROWS_AS(maximize_dual_pairing(moments, SearchOptions{3, 0, 7, 100}), DomainError);
    CHECK(detail::degree_ladder(6) == std::vector<std::size_t>{0, 1, 2, 4, 6});
    CHECK(detail::degree_ladder(0) == std::vector<std::size_t>{0});
}

TEST_CASE("composition pairing for z^2 matches the pushforward measure") {
    const auto sq = DiskSelfMap::polynomial({0.0, 0.0, 1.0});
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 10; ++trial) {
        const auto mu = trial == 0 ? delta_1 : random_measure(rng, 1 + trial % 3);
        const auto pushed = monomial_pushforward(mu, 2);
        const auto h = sample_unit_ball(static_cast<std::size_t>(1 + trial % 8), 9000 + trial);
        CHECK(std::abs(composition_pairing(mu, sq, h) - pairing(pushed, h)) < 1e-8);
        const auto cm = composition_moments(mu, sq, 8);
        CHECK(cm.boundary_contact);
        CHECK(std::abs(apply_functional(cm.moments, h.coeffs()) - pairing(pushed, h)) < 1e-8);
    }
}

TEST_CASE("Moebius composition moments match the closed-form pairing") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        const auto mu = random_measure(rng, 1 + trial % 4);
        const DiskPoint a(std::polar(0.9 * (trial / 30.0), 0.3 * trial));
        const auto h = sample_unit_ball(static_cast<std::size_t>(trial % 10), 9500 + trial);
        cplx direct{};
        for (const auto& atom : mu.atoms()) {
            direct += atom.weight * std::conj(p_lambda_closed_form(a, h, atom.position, 1.0));
        }
        const auto moments = mobius_composition_moments(mu, a, h.degree());
        CHECK(std::abs(apply_functional(moments, h.coeffs()) - direct) < 1e-12 * std::max(1.0, std::abs(direct)));
        CHECK(std::abs(composition_pairing(mu, DiskSelfMap::mobius(a), h) - direct) < 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("bound formulas") {
    CHECK(bound_cima_matheson(0.0) == 1.0);
    CHECK(bound_cima_matheson(0.5) == 4.0);
    CHECK(std::abs(bound_cima_matheson(0.9) - 28.0) < 1e-12);
    CHECK(std::abs(bound_bourdon_cima(0.0) - 4.828427) < 1e-6);
    CHECK(std::abs(bound_bourdon_cima(0.5) - 9.656854) < 1e-6);
    for (int i = 0; i < 100; ++i) {
        const double x = 0.99 * i / 99.0;
        CHECK(bound_bourdon_cima(x) > bound_cima_matheson(x));
    }
    CHECK_THROWS_AS(bound_cima_matheson(1.0), DomainError);
    CHECK_THROWS_AS(bound_bourdon_cima(1.2), DomainError);
    CHECK_THROWS_AS(bound_cima_matheson(-0.1), DomainError);
}

TEST_CASE("verify_lemma1 examples") {
    const VerifyOptions opts;
    const auto id = verify_lemma1(dipole_diff, DiskSelfMap::polynomial({0.0, 1.0}), opts);
    CHECK(id.pass);
    CHECK(id.lower <= id.upper + 1e-8);
    CHECK(id.lower >= 2.0 - 1e-3);

    const auto sq = verify_lemma1(delta_1, DiskSelfMap::polynomial({0.0, 0.0, 1.0}), opts);
    CHECK(sq.pass);
    CHECK(sq.lower <= 1.0 + 1e-8);
    CHECK(sq.lower >= 1.0 - 1e-3);
    CHECK(tv_norm(monomial_pushforward(delta_1, 2)) == 1.0);
    REQUIRE(sq.notes.size() == 1);
    CHECK(sq.notes[0] == "boundary-contact: limit not guaranteed");

    CHECK(verify_lemma1(delta_1, DiskSelfMap::polynomial({0.0, 0.5}), opts).pass);

    try {
        (void)verify_lemma1(delta_1, DiskSelfMap::polynomial({0.1, 0.5}), opts);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("precondition psi(0)=0 violated") != std::string::npos);
    }
}

TEST_CASE("verify_lemma2 examples") {
    const auto r0 = verify_lemma2(delta_1, DiskPoint(0.0));
    CHECK(r0.pass);
    CHECK(r0.bound == 1.0);
    CHECK(r0.lower <= 1.0 + 1e-8);
    CHECK(r0.lower >= 1.0 - 1e-6);

    const auto r5 = verify_lemma2(delta_1, DiskPoint(0.5));
    CHECK(r5.pass);
    CHECK(r5.bound == 4.0);
    CHECK(r5.lower <= 4.0 + 1e-8);
    REQUIRE(r5.metrics.size() == 1);
    CHECK(r5.metrics[0].first == "sharpness_ratio");
    CHECK(r5.metrics[0].second == r5.lower / 4.0);
}

TEST_CASE("verify_eq1 examples") {
    const auto m = verify_eq1(delta_1, DiskSelfMap::mobius(DiskPoint(0.5)));
    CHECK(m.pass);
    CHECK(m.bound == 4.0);

    const auto id = verify_eq1(delta_1, DiskSelfMap::polynomial({0.0, 1.0}));
    CHECK(id.pass);
    CHECK(id.bound == 1.0);
    CHECK(std::abs(id.lower - 1.0) < 1e-6);

    const auto q = verify_eq1(AtomicMeasure({{CirclePoint(0.0), 0.5}, {CirclePoint(pi), 0.5}}),
                              DiskSelfMap::polynomial({0.25, 0.0, 0.5}));
    CHECK(q.pass);
    CHECK(std::abs(q.bound - 2.0) < 1e-12);
    CHECK(q.lower <= q.bound + 1e-8);
}

TEST_CASE("sharpness_scan rows stay under the bound and records are monotone") {
    const std::vector<double> as{0.0, 0.5};
    ScanOptions opts;
    opts.outer_sweeps = 3;
    opts.random_starts = 1;
    const auto rows = sharpness_scan(as, 4, 20240001, opts);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].ratio <= 1.0 + 1e-8);
    CHECK(rows[0].ratio >= 1.0 - 1e-6);
    CHECK(rows[1].ratio > 0.0);
    CHECK(rows[1].ratio <= 4.0 + 1e-8);
    for (const auto& row : rows) {
        CHECK(row.ratio <= row.bound + 1e-8);
        CHECK(std::is_sorted(row.record.begin(), row.record.end()));
        CHECK(row.record.back() == row.ratio);
    }
    const std::vector<double> bad{0.96};
    CHECK_THROWS_AS(sharpness_scan(bad, 4, 1, opts), DomainError);
}
