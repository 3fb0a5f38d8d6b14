#include <catch_amalgamated.hpp>

#include <kspace/self_map.hpp>

using namespace kspace;

namespace {

std::vector<DiskSelfMap> fixture_maps() {
    return {
        DiskSelfMap::mobius(DiskPoint(0.0)),
        DiskSelfMap::mobius(DiskPoint(0.25)),
        DiskSelfMap::mobius(DiskPoint(0.5)),
        DiskSelfMap::mobius(DiskPoint(cplx{0.0, 0.75})),
        DiskSelfMap::polynomial({0.0, 1.0}),
        DiskSelfMap::polynomial({0.0, 0.5}),
        DiskSelfMap::polynomial({0.25, 0.0, 0.5}),
        DiskSelfMap::polynomial({0.0, 0.0, 1.0}),
        DiskSelfMap::polynomial({cplx{0.1, 0.2}, cplx{0.3, -0.1}, 0.2, cplx{0.0, 0.15}}),
        DiskSelfMap::blaschke({DiskPoint(0.3)}),
        DiskSelfMap::blaschke({DiskPoint(cplx{0.2, -0.4}), DiskPoint(cplx{-0.5, 0.1})}, std::polar(1.0, 1.3)),
        DiskSelfMap::composed(MobiusMap(DiskPoint(cplx{-0.3, 0.2})), DiskSelfMap::polynomial({0.0, 0.0, 0.9})),
    };
}

}  // namespace

TEST_CASE("self_map_eval examples") {
    CHECK(std::abs(self_map_eval(DiskSelfMap::polynomial({0.0, 0.5}), 1.0) - 0.5) == 0.0);
    CHECK(std::abs(self_map_eval(DiskSelfMap::mobius(DiskPoint(0.5)), 0.0) - 0.5) == 0.0);
    CHECK(std::abs(self_map_eval(DiskSelfMap::blaschke({DiskPoint(0.3)}), 0.3)) < 1e-16);
    CHECK_THROWS_AS(self_map_eval(DiskSelfMap::polynomial({0.0, 0.5}), 1.01), DomainError);
}

TEST_CASE("polynomial self-maps are certified at construction") {
    CHECK_THROWS_AS(DiskSelfMap::polynomial({0.5, 0.6}), DomainError);
    CHECK_THROWS_AS(DiskSelfMap::polynomial({}), DomainError);
    CHECK(DiskSelfMap::polynomial({0.0, 1.0}).sup_bound() == 1.0);
    CHECK(DiskSelfMap::polynomial({0.0, 1.0}).boundary_contact());
    CHECK(DiskSelfMap::polynomial({0.25, 0.0, 0.5}).sup_bound() <= 0.75);
    CHECK_FALSE(DiskSelfMap::polynomial({0.25, 0.0, 0.5}).boundary_contact());
    CHECK_FALSE(DiskSelfMap::mobius(DiskPoint(0.4)).boundary_contact());
    CHECK(DiskSelfMap::blaschke({DiskPoint(0.4)}).boundary_contact());
}

TEST_CASE("sup_bound dominates the boundary modulus") {
    for (const auto& phi : fixture_maps()) {
        CHECK(phi.sup_bound() <= 1.0);
        double m = 0.0;
        for (int k = 0; k < 4096; ++k) m = std::max(m, std::abs(phi(std::polar(1.0, two_pi * k / 4096.0))));
        CHECK(m <= phi.sup_bound() + 1e-12);
    }
}

TEST_CASE("schwarz_factorize examples") {
    {
        const auto phi = DiskSelfMap::mobius(DiskPoint(0.5));
        const auto f = schwarz_factorize(phi);
        CHECK(std::abs(f.a.value() - 0.5) == 0.0);
        for (const cplx z : disk_test_grid()) CHECK(std::abs(f.psi(z) - z) < 1e-12);
    }
    {
        const auto phi = DiskSelfMap::polynomial({0.0, 1.0});
        const auto f = schwarz_factorize(phi);
        CHECK(f.a.modulus() == 0.0);
        for (const cplx z : disk_test_grid()) CHECK(std::abs(f.psi(z) + z) < 1e-15);
        for (const cplx z : disk_test_grid()) CHECK(std::abs(MobiusMap(f.a)(f.psi(z)) - z) < 1e-15);
    }
    {
        const auto phi = DiskSelfMap::polynomial({0.25, 0.0, 0.5});
        const auto f = schwarz_factorize(phi);
        CHECK(std::abs(f.a.value() - 0.25) < 1e-16);
        CHECK(std::abs(f.psi(0.0)) <= 1e-14);
        // independent oracle: psi = (phi(0) - phi) / (1 - conj(phi(0)) phi) by direct evaluation
        for (const cplx z : disk_test_grid()) {
            const cplx p = 0.25 + 0.5 * z * z;
            const cplx psi = (0.25 - p) / (1.0 - 0.25 * p);
            CHECK(std::abs(f.psi(z) - psi) < 1e-15);
            CHECK(std::abs(MobiusMap(f.a)(f.psi(z)) - p) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(schwarz_factorize(DiskSelfMap::polynomial({1.0})), DomainError);
}

TEST_CASE("factorization contracts hold on the fixture set") {
    for (const auto& phi : fixture_maps()) {
        const auto f = schwarz_factorize(phi);
        const auto chk = check_factorization(phi, f);
        CHECK(chk.reconstruction_error <= 1e-12);
        CHECK(chk.base_point_error <= 1e-14);
        CHECK(chk.schwarz_excess <= 1e-10);
        CHECK(f.psi.kind() == DiskSelfMap::Kind::composed);
        CHECK(f.psi.sup_bound() <= 1.0);
    }
    CHECK(disk_test_grid().size() == 256);
}
