#pragma once

// Complex-plane primitives: points of the open disk and the unit circle,
// the Moebius involutions of the disk, finite Blaschke products and the
// equispaced trapezoid grid for the normalized arc-length measure dm.

#include <kspace/errors.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kspace {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Points closer to the circle than this are not accepted as disk points.
inline constexpr double disk_margin = 1e-15;

class DiskPoint {
public:
    DiskPoint() = default;
    explicit DiskPoint(cplx value) : value_(value) {
        if (!(std::abs(value) < 1.0 - disk_margin)) {
            throw DomainError("disk point must satisfy |a| < 1 - 1e-15, got |a| = " +
                              std::to_string(std::abs(value)));
        }
    }

    cplx value() const { return value_; }
    double modulus() const { return std::abs(value_); }

private:
    cplx value_{0.0, 0.0};
};

class CirclePoint {
public:
    CirclePoint() = default;
    /// Any real angle is accepted and reduced into [0, 2pi).
    explicit CirclePoint(double angle) : angle_(reduce(angle)), value_(std::polar(1.0, angle_)) {}

    /// Projects a nonzero complex number radially onto the circle.
    static CirclePoint from_value(cplx z) {
        if (z == cplx{0.0, 0.0}) throw DomainError("cannot project 0 onto the unit circle");
        return CirclePoint(std::arg(z));
    }

    double angle() const { return angle_; }
    cplx value() const { return value_; }

private:
    static double reduce(double angle) {
        double r = std::fmod(angle, two_pi);
        if (r < 0.0) r += two_pi;
        if (r >= two_pi) r = 0.0;
        return r;
    }

    double angle_ = 0.0;
    cplx value_{1.0, 0.0};
};

/// The involution lambda_a(z) = (a - z) / (1 - conj(a) z).
class MobiusMap {
public:
    MobiusMap() = default;
    explicit MobiusMap(DiskPoint a) : a_(a) {}

    DiskPoint a() const { return a_; }

    /// Evaluates without the |z| <= 1 check. Valid anywhere 1 - conj(a) z != 0.
    cplx apply(cplx z) const {
        const cplx a = a_.value();
        const cplx den = 1.0 - std::conj(a) * z;
        if (den == cplx{0.0, 0.0}) throw InternalError("Moebius denominator vanished");
        return (a - z) / den;
    }

    cplx operator()(cplx z) const { return apply(z); }

    /// Sharp bound for |lambda_a| on the closed disk of radius s <= 1.
    double sup_on_radius(double s) const {
        const double m = a_.modulus();
        return (m + s) / (1.0 + m * s);
    }

private:
    DiskPoint a_;
};

/// Boundary tolerance shared by operations that accept the closed disk.
inline constexpr double closed_disk_slack = 1e-12;

inline cplx mobius_eval(const MobiusMap& m, cplx z) {
    if (std::abs(z) > 1.0 + closed_disk_slack) {
        throw DomainError("mobius_eval needs |z| <= 1");
    }
    return m.apply(z);
}

/// lambda_a(lambda_a(z)); equals z up to rounding.
inline cplx mobius_compose_self(const MobiusMap& m, cplx z) {
    return mobius_eval(m, mobius_eval(m, z));
}

/// rotation * prod_k (z - z_k) / (1 - conj(z_k) z); |rotation| = 1.
class BlaschkeProduct {
public:
    BlaschkeProduct(std::vector<DiskPoint> zeros, cplx rotation)
        : zeros_(std::move(zeros)), rotation_(rotation) {
        if (std::abs(std::abs(rotation) - 1.0) > 1e-12) {
            throw DomainError("Blaschke rotation must be unimodular");
        }
        rotation_ /= std::abs(rotation);
    }

    const std::vector<DiskPoint>& zeros() const { return zeros_; }
    cplx rotation() const { return rotation_; }

    cplx apply(cplx z) const {
        cplx acc = rotation_;
        for (const auto& zk : zeros_) {
            const cplx a = zk.value();
            acc *= (z - a) / (1.0 - std::conj(a) * z);
        }
        return acc;
    }

    cplx operator()(cplx z) const { return apply(z); }

private:
    std::vector<DiskPoint> zeros_;
    cplx rotation_{1.0, 0.0};
};

/// N equispaced nodes t_k = exp(2 pi i k / N), each carrying weight 1/N.
class QuadratureGrid {
public:
    explicit QuadratureGrid(std::size_t node_count) : n_(node_count) {
        if (n_ == 0) throw DomainError("quadrature grid needs at least one node");
    }

    std::size_t node_count() const { return n_; }
    double weight() const { return 1.0 / static_cast<double>(n_); }
    double angle(std::size_t k) const {
        return two_pi * static_cast<double>(k % n_) / static_cast<double>(n_);
    }
    cplx node(std::size_t k) const { return std::polar(1.0, angle(k)); }

    std::vector<cplx> nodes() const {
        std::vector<cplx> out(n_);
        for (std::size_t k = 0; k < n_; ++k) out[k] = node(k);
        return out;
    }

private:
    std::size_t n_;
};

/// Trapezoid rule for integral over T of f dm: the plain sample mean.
inline cplx grid_integrate(const QuadratureGrid& g, std::span<const cplx> samples) {
    if (samples.size() != g.node_count()) {
        throw DomainError("grid_integrate: got " + std::to_string(samples.size()) +
                          " samples for a " + std::to_string(g.node_count()) + "-node grid");
    }
    cplx sum{0.0, 0.0};
    for (const auto& s : samples) sum += s;
    return sum * g.weight();
}

/// Grid refinement policy: start at `start` nodes, double until two successive
/// means differ by less than tol * max(1, |mean|), give up past `cap` nodes.
struct DoublingPolicy {
    std::size_t start = 512;
    std::size_t cap = std::size_t{1} << 16;
    double tol = 1e-12;
};

template <class Value>
struct AdaptiveResult {
    Value value;
    std::size_t nodes = 0;
};

namespace detail {

inline void accumulate(cplx& acc, const cplx& v) { acc += v; }
inline void accumulate(std::vector<cplx>& acc, const std::vector<cplx>& v) {
    if (acc.empty()) acc.assign(v.size(), cplx{});
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
}

inline cplx scaled(const cplx& v, double s) { return v * s; }
inline std::vector<cplx> scaled(std::vector<cplx> v, double s) {
    for (auto& x : v) x *= s;
    return v;
}

inline double max_abs(const cplx& v) { return std::abs(v); }
inline double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(const cplx& a, const cplx& b) { return std::abs(a - b); }
inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace detail

/// Mean of sample(t) over t = radius * exp(i theta), theta equispaced, with
/// grid doubling per `policy`. Samples already taken are reused on doubling.
/// `Value` is cplx or std::vector<cplx> (component-wise means).
template <class Value, class Sample>
AdaptiveResult<Value> integrate_adaptive(Sample&& sample, const DoublingPolicy& policy = {},
                                         double radius = 1.0) {
    if (policy.start == 0) throw DomainError("doubling policy needs a positive start size");
    std::size_t n = policy.start;
    Value sum{};
    for (std::size_t k = 0; k < n; ++k) {
        detail::accumulate(sum, sample(std::polar(radius, two_pi * double(k) / double(n))));
    }
    Value prev = detail::scaled(sum, 1.0 / double(n));
    while (2 * n <= policy.cap) {
        const std::size_t n2 = 2 * n;
        for (std::size_t k = 1; k < n2; k += 2) {
            detail::accumulate(sum, sample(std::polar(radius, two_pi * double(k) / double(n2))));
        }
        Value cur = detail::scaled(sum, 1.0 / double(n2));
        const double scale = std::max(1.0, detail::max_abs(cur));
        if (detail::max_abs_diff(cur, prev) < policy.tol * scale) return {std::move(cur), n2};
        prev = std::move(cur);
        n = n2;
    }
    throw NonConvergence("trapezoid grid doubling did not stabilize within " +
                         std::to_string(policy.cap) + " nodes");
}

}  // namespace kspace
