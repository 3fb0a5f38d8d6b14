#pragma once

// Analytic self-maps of the disk and the factorization phi = lambda_a o psi
// with a = phi(0) and psi(0) = 0.

#include <kspace/circle.hpp>
#include <kspace/disk_algebra.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <type_traits>
#include <string>
#include <variant>
#include <vector>

namespace kspace {

class DiskSelfMap {
public:
    struct Polynomial {
        std::vector<cplx> coeffs;
    };
    struct Blaschke {
        BlaschkeProduct product;
    };
    struct Mobius {
        MobiusMap map;
    };
    struct Composed {
        MobiusMap outer;
        std::shared_ptr<const DiskSelfMap> inner;
    };

    enum class Kind { polynomial, blaschke, mobius, composed };

    /// Rejects polynomials whose certified boundary modulus exceeds 1.
    static DiskSelfMap polynomial(std::vector<cplx> coeffs) {
        if (coeffs.empty()) throw DomainError("polynomial self-map needs coefficients");
        const DiskAlgebraPoly p(coeffs);
        if (p.certified_sup() > 1.0) {
            throw DomainError("polynomial does not map the disk into itself: certified sup " +
                              std::to_string(p.certified_sup()) + " > 1");
        }
        return DiskSelfMap(Polynomial{std::move(coeffs)}, p.certified_sup());
    }

    static DiskSelfMap blaschke(std::vector<DiskPoint> zeros, cplx rotation = 1.0) {
        return DiskSelfMap(Blaschke{BlaschkeProduct(std::move(zeros), rotation)}, 1.0);
    }

    static DiskSelfMap mobius(DiskPoint a) { return DiskSelfMap(Mobius{MobiusMap(a)}, 1.0); }

    static DiskSelfMap composed(MobiusMap outer, DiskSelfMap inner) {
        const double bound = std::min(1.0, outer.sup_on_radius(inner.sup_bound()));
        return DiskSelfMap(Composed{outer, std::make_shared<const DiskSelfMap>(std::move(inner))},
                           bound);
    }

    Kind kind() const { return static_cast<Kind>(rep_.index()); }
    const auto& representation() const { return rep_; }

    /// Certified upper bound for |phi| on the closed disk.
    double sup_bound() const { return sup_bound_; }

    /// Bound 1 without being an automorphism: radial limits are not guaranteed.
    bool boundary_contact() const { return sup_bound_ >= 1.0 && kind() != Kind::mobius; }

    /// Evaluation without the |z| <= 1 check.
    cplx apply(cplx z) const {
        return std::visit(
            [z](const auto& r) -> cplx {
                using T = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<T, Polynomial>) {
                    return horner(r.coeffs, z);
                } else if constexpr (std::is_same_v<T, Blaschke>) {
                    return r.product.apply(z);
                } else if constexpr (std::is_same_v<T, Mobius>) {
                    return r.map.apply(z);
                } else {
                    return r.outer.apply(r.inner->apply(z));
                }
            },
            rep_);
    }

    cplx operator()(cplx z) const {
        if (std::abs(z) > 1.0 + closed_disk_slack) {
            throw DomainError("self-map evaluated outside the closed disk");
        }
        return apply(z);
    }

    std::string kind_name() const {
        switch (kind()) {
            case Kind::polynomial: return "polynomial";
            case Kind::blaschke: return "blaschke";
            case Kind::mobius: return "mobius";
            case Kind::composed: return "composed";
        }
        return "unknown";
    }

    /// Base point of a Moebius-kind map; throws for other kinds.
    DiskPoint mobius_point() const {
        if (const auto* m = std::get_if<Mobius>(&rep_)) return m->map.a();
        throw DomainError("self-map is not of Moebius kind");
    }

private:
    using Rep = std::variant<Polynomial, Blaschke, Mobius, Composed>;

    DiskSelfMap(Rep rep, double bound) : rep_(std::move(rep)), sup_bound_(bound) {}

    Rep rep_;
    double sup_bound_ = 1.0;
};

inline cplx self_map_eval(const DiskSelfMap& phi, cplx z) { return phi(z); }

struct SchwarzFactorization {
    DiskPoint a;
    DiskSelfMap psi;
};

/// a = phi(0), psi = lambda_a o phi (kept symbolic); phi = lambda_a o psi.
inline SchwarzFactorization schwarz_factorize(const DiskSelfMap& phi) {
    const cplx a0 = phi.apply(0.0);
    if (!(std::abs(a0) < 1.0 - disk_margin)) {
        throw DomainError("schwarz_factorize: |phi(0)| >= 1, the map is a unimodular constant");
    }
    const DiskPoint a(a0);
    return {a, DiskSelfMap::composed(MobiusMap(a), phi)};
}

/// 16 radii x 16 angles, radii evenly spaced in [0, 0.999].
inline std::vector<cplx> disk_test_grid() {
    std::vector<cplx> pts;
    pts.reserve(256);
    for (int i = 0; i < 16; ++i) {
        const double r = 0.999 * i / 15.0;
        for (int j = 0; j < 16; ++j) pts.push_back(std::polar(r, two_pi * j / 16.0));
    }
    return pts;
}

struct FactorizationCheck {
    double reconstruction_error = 0.0;  ///< max |phi - lambda_a(psi)| on the disk grid
    double base_point_error = 0.0;      ///< |psi(0)|
    double schwarz_excess = 0.0;        ///< max (|psi(z)| - |z|) on the disk grid
};

inline FactorizationCheck check_factorization(const DiskSelfMap& phi, const SchwarzFactorization& f) {
    FactorizationCheck c;
    const MobiusMap lambda(f.a);
    c.base_point_error = std::abs(f.psi.apply(0.0));
    c.schwarz_excess = -1.0;
    for (const cplx z : disk_test_grid()) {
        const cplx w = f.psi.apply(z);
        c.reconstruction_error = std::max(c.reconstruction_error, std::abs(phi.apply(z) - lambda.apply(w)));
        c.schwarz_excess = std::max(c.schwarz_excess, std::abs(w) - std::abs(z));
    }
    return c;
}

}  // namespace kspace
