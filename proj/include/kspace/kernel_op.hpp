#pragma once

// The kernel operator
//     (P_phi h)(zeta) = lim_{r->1} integral_T h(t) / (1 - zeta conj(phi(r t))) dm(t),
// its exact residue form for phi = lambda_a, radial-limit detection and a
// grid estimate of ||P_phi h||_inf over zeta in T.
//
// Two quadratures are provided. p_phi_at integrates on T itself. The radial
// sweep instead integrates on |t| = rho > 1: for polynomial h the integrand
// h(t) G(r / t) / t, G(w) = 1 / (1 - zeta conj(phi(conj w))), is analytic in
// |t| > r, so Cauchy's theorem moves the contour outward without changing the
// value and r may approach (and reach) 1 with no loss of conditioning.

#include <kspace/circle.hpp>
#include <kspace/disk_algebra.hpp>
#include <kspace/errors.hpp>
#include <kspace/self_map.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <string>
#include <vector>

namespace kspace {

/// Radii r_k = 1 - 2^-k for k = k_min..k_max.
struct RadialScheme {
    int k_min = 4;
    int k_max = 40;
    double convergence_tol = 1e-9;
    DoublingPolicy quadrature{};

    std::vector<double> radii() const {
        std::vector<double> out;
        for (int k = k_min; k <= k_max; ++k) out.push_back(1.0 - std::ldexp(1.0, -k));
        return out;
    }
};

namespace detail {

inline void check_radius(double r, bool allow_one) {
    const bool ok = allow_one ? (r > 0.0 && r <= 1.0) : (r > 0.0 && r < 1.0);
    if (!ok) {
        throw DomainError("kernel radius r = " + std::to_string(r) +
                          (allow_one ? " must lie in (0, 1]" : " must lie in (0, 1)"));
    }
}

inline double contour_radius(std::size_t degree) {
    return std::min(2.0, 1.0 + 4.0 / static_cast<double>(degree + 1));
}

/// 1 / (1 - zeta conj(phi(conj w))) for |w| < 1.
inline cplx kernel_factor(const DiskSelfMap& phi, cplx zeta, cplx w) {
    return 1.0 / (1.0 - zeta * std::conj(phi.apply(std::conj(w))));
}

}  // namespace detail

/// Trapezoid rule on T for integral h(t) / (1 - zeta conj(phi(r t))) dm(t),
/// starting from `grid` and doubling until stable. Requires 0 < r < 1.
inline cplx p_phi_at(const DiskSelfMap& phi, const DiskAlgebraPoly& h, const CirclePoint& zeta, double r,
                     const QuadratureGrid& grid, double tol = 1e-12) {
    detail::check_radius(r, false);
    const cplx z = zeta.value();
    DoublingPolicy policy;
    policy.start = grid.node_count();
    policy.tol = tol;
    policy.cap = std::max(policy.cap, policy.start);
    const auto res = integrate_adaptive<cplx>(
        [&](cplx t) { return h.apply(t) / (1.0 - z * std::conj(phi.apply(r * t))); }, policy);
    return res.value;
}

/// Exact value of the kernel integral for phi = lambda_a:
///     -a h(0) / (zeta - a) + h(r lambda_a(zeta)) (1 - |a|^2) / |1 - zeta conj(a)|^2.
/// Valid for every 0 < r <= 1 (r = 1 is the radial limit).
inline cplx p_lambda_closed_form(const DiskPoint& a, const DiskAlgebraPoly& h, const CirclePoint& zeta,
                                 double r) {
    detail::check_radius(r, true);
    const cplx av = a.value();
    const cplx z = zeta.value();
    const cplx den = 1.0 - z * std::conj(av);
    const cplx pole = r * (av - z) / den;
    const double kern = (1.0 - std::norm(av)) / std::norm(den);
    return -av * h.apply(0.0) / (z - av) + h.apply(pole) * kern;
}

/// Both terms of the closed form separately: {-a h(0)/(zeta - a), h(r lambda_a(zeta)) (1-|a|^2)/|1 - zeta conj a|^2}.
inline std::pair<cplx, cplx> p_lambda_terms(const DiskPoint& a, const DiskAlgebraPoly& h, const CirclePoint& zeta,
                                            double r) {
    detail::check_radius(r, true);
    const cplx av = a.value();
    const cplx z = zeta.value();
    const cplx den = 1.0 - z * std::conj(av);
    return {-av * h.apply(0.0) / (z - av), h.apply(r * (av - z) / den) * ((1.0 - std::norm(av)) / std::norm(den))};
}

/// Kernel integral at radius 0 < r <= 1 evaluated on the deformed contour.
inline cplx p_phi_on_contour(const DiskSelfMap& phi, const DiskAlgebraPoly& h, const CirclePoint& zeta,
                             double r, const DoublingPolicy& policy = {}) {
    detail::check_radius(r, true);
    const cplx z = zeta.value();
    const double rho = detail::contour_radius(h.degree());
    const auto res = integrate_adaptive<cplx>(
        [&](cplx t) { return h.apply(t) * detail::kernel_factor(phi, z, r / t); }, policy, rho);
    return res.value;
}

/// Kernel moments integral t^m / (1 - zeta conj(phi(r t))) dm(t), m = 0..degree,
/// on the deformed contour. P_phi h = sum_m h_m * moment_m.
inline std::vector<cplx> kernel_moments_at(const DiskSelfMap& phi, const CirclePoint& zeta, double r,
                                           std::size_t degree, const DoublingPolicy& policy = {}) {
    detail::check_radius(r, true);
    const cplx z = zeta.value();
    const double rho = detail::contour_radius(degree);
    const auto res = integrate_adaptive<std::vector<cplx>>(
        [&](cplx t) {
            std::vector<cplx> v(degree + 1);
            cplx term = detail::kernel_factor(phi, z, r / t);
            for (std::size_t m = 0; m <= degree; ++m) {
                v[m] = term;
                term *= t;
            }
            return v;
        },
        policy, rho);
    return res.value;
}

template <class Value>
struct RadialLimit {
    Value value{};
    double radius = 1.0;          ///< radius whose value was returned
    int steps = 0;                ///< radii evaluated
    bool closed_form = false;     ///< Moebius dispatch, no sweep
    bool boundary_contact = false;
};

namespace detail {

template <class Value, class AtRadius>
RadialLimit<Value> radial_sweep(AtRadius&& at_radius, const RadialScheme& scheme, bool boundary_contact) {
    RadialLimit<Value> out;
    out.boundary_contact = boundary_contact;
    bool have_prev = false;
    Value prev{};
    double last_diff = 0.0;
    for (const double r : scheme.radii()) {
        Value cur = at_radius(r);
        ++out.steps;
        if (have_prev) {
            last_diff = max_abs_diff(cur, prev);
            if (last_diff < scheme.convergence_tol * std::max(1.0, max_abs(cur))) {
                out.value = std::move(cur);
                out.radius = r;
                return out;
            }
        }
        prev = std::move(cur);
        have_prev = true;
    }
    throw NonConvergence("radial limit did not stabilize by k = " + std::to_string(scheme.k_max) +
                         " (last difference " + std::to_string(last_diff) + ")" +
                         (boundary_contact ? "; boundary-contact: limit not guaranteed" : ""));
}

}  // namespace detail

/// lim_{r->1} of the kernel integral. Moebius maps use the closed form at r = 1;
/// everything else is swept along the scheme's radii until two consecutive
/// values agree to convergence_tol (scaled by max(1, |value|)).
inline RadialLimit<cplx> p_phi_radial_limit(const DiskSelfMap& phi, const DiskAlgebraPoly& h,
                                            const CirclePoint& zeta, const RadialScheme& scheme = {}) {
    if (phi.kind() == DiskSelfMap::Kind::mobius) {
        RadialLimit<cplx> out;
        out.value = p_lambda_closed_form(phi.mobius_point(), h, zeta, 1.0);
        out.closed_form = true;
        return out;
    }
    return detail::radial_sweep<cplx>(
        [&](double r) { return p_phi_on_contour(phi, h, zeta, r, scheme.quadrature); }, scheme,
        phi.boundary_contact());
}

/// Radial limits of all kernel moments m = 0..degree at once.
inline RadialLimit<std::vector<cplx>> kernel_moment_limit(const DiskSelfMap& phi, const CirclePoint& zeta,
                                                          std::size_t degree, const RadialScheme& scheme = {}) {
    if (phi.kind() == DiskSelfMap::Kind::mobius) {
        const cplx a = phi.mobius_point().value();
        const cplx z = zeta.value();
        const cplx den = 1.0 - z * std::conj(a);
        const cplx pole = (a - z) / den;
        const double kern = (1.0 - std::norm(a)) / std::norm(den);
        RadialLimit<std::vector<cplx>> out;
        out.value.resize(degree + 1);
        cplx pw = 1.0;
        for (std::size_t m = 0; m <= degree; ++m) {
            out.value[m] = pw * kern;
            pw *= pole;
        }
        out.value[0] += -a / (z - a);
        out.closed_form = true;
        return out;
    }
    return detail::radial_sweep<std::vector<cplx>>(
        [&](double r) { return kernel_moments_at(phi, zeta, r, degree, scheme.quadrature); }, scheme,
        phi.boundary_contact());
}

struct SupNormEstimate {
    double grid_max = 0.0;      ///< max over the zeta grid; a lower estimate of the sup
    double grid_angle = 0.0;    ///< first grid angle attaining grid_max
    double refined = 0.0;       ///< max(grid_max, value after one Newton step)
    double refined_angle = 0.0;
    std::size_t grid_size = 0;
    bool boundary_contact = false;
};

/// Grid maximum of |P_phi h| over M equispaced zeta, plus one Newton step on
/// |P_phi h|^2 around the best node (reported separately as `refined`).
inline SupNormEstimate p_phi_sup_norm(const DiskSelfMap& phi, const DiskAlgebraPoly& h, std::size_t grid_size = 256,
                                      const RadialScheme& scheme = {}) {
    if (h.certified_sup() > 1.0 + 1e-12) throw DomainError("p_phi_sup_norm needs a certified unit-ball h");
    if (grid_size == 0) throw DomainError("p_phi_sup_norm needs a positive grid size");
    auto modulus_at = [&](double theta) {
        return std::abs(p_phi_radial_limit(phi, h, CirclePoint(theta), scheme).value);
    };
    SupNormEstimate est;
    est.grid_size = grid_size;
    est.boundary_contact = phi.boundary_contact();
    const double spacing = two_pi / static_cast<double>(grid_size);
    for (std::size_t k = 0; k < grid_size; ++k) {
        const double theta = spacing * static_cast<double>(k);
        const double v = modulus_at(theta);
        if (v > est.grid_max) {  // strict: ties keep the smallest index
            est.grid_max = v;
            est.grid_angle = theta;
        }
    }
    est.refined = est.grid_max;
    est.refined_angle = est.grid_angle;

    const double step = spacing * 1e-2;
    const double g0 = est.grid_max * est.grid_max;
    const double gp = std::pow(modulus_at(est.grid_angle + step), 2);
    const double gm = std::pow(modulus_at(est.grid_angle - step), 2);
    const double d1 = (gp - gm) / (2.0 * step);
    const double d2 = (gp - 2.0 * g0 + gm) / (step * step);
    if (d2 < 0.0) {
        const double delta = std::clamp(-d1 / d2, -spacing, spacing);
        const double theta = est.grid_angle + delta;
        const double v = modulus_at(theta);
        if (v > est.refined) {
            est.refined = v;
            est.refined_angle = CirclePoint(theta).angle();
        }
    }
    return est;
}

}  // namespace kspace
