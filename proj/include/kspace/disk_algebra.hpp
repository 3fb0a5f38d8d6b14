#pragma once

// Polynomial members of the disk algebra with certified boundary sup-norms.
//
// Certification rests on Bernstein's inequality |h'| <= d ||h|| on T. Every
// boundary point lies within pi/N of one of N equispaced samples, so
//     ||h|| <= max_k |h(t_k)| + d (pi/N) ||h||,
// which rearranges to ||h|| <= max_k |h(t_k)| / (1 - d pi / N) once N > pi d.

#include <kspace/circle.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace kspace {

/// Horner evaluation with no domain check.
inline cplx horner(std::span<const cplx> coeffs, cplx z) {
    cplx acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline double coefficient_l1(std::span<const cplx> coeffs) {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::abs(c);
    return s;
}

inline std::size_t default_sample_count(std::size_t degree) {
    return std::max<std::size_t>(256, 64 * degree);
}

/// Sample count used when a search finalizes its witness.
inline constexpr std::size_t fine_sample_count = std::size_t{1} << 16;

inline double bernstein_factor(std::size_t degree, std::size_t sample_count) {
    return 1.0 - static_cast<double>(degree) * pi / static_cast<double>(sample_count);
}

/// Max of |h| over N equispaced boundary samples divided by the Bernstein
/// factor 1 - d pi / N. Never below the true sup-norm on T.
inline double certify_sup_norm(std::span<const cplx> coeffs, std::size_t sample_count) {
    if (coeffs.empty()) throw DomainError("certify_sup_norm needs at least one coefficient");
    const std::size_t degree = coeffs.size() - 1;
    const double factor = bernstein_factor(degree, sample_count);
    if (sample_count == 0 || !(factor > 0.0)) {
        throw DomainError("certify_sup_norm: " + std::to_string(sample_count) +
                          " samples are too few for degree " + std::to_string(degree));
    }
    if (degree == 0) return std::abs(coeffs[0]);
    const QuadratureGrid grid(sample_count);
    double m = 0.0;
    for (std::size_t k = 0; k < sample_count; ++k) m = std::max(m, std::abs(horner(coeffs, grid.node(k))));
    return m / factor;
}

class DiskAlgebraPoly {
public:
    /// Certifies with `sample_count` boundary samples (default max(256, 64 d))
    /// and keeps the smaller of that bound and the coefficient l1-norm.
    explicit DiskAlgebraPoly(std::vector<cplx> coeffs, std::optional<std::size_t> sample_count = {})
        : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw DomainError("polynomial needs at least one coefficient");
        const std::size_t n = sample_count.value_or(default_sample_count(degree()));
        certified_sup_ = std::min(certify_sup_norm(coeffs_, n), coefficient_l1(coeffs_));
    }

    static DiskAlgebraPoly constant(cplx c) { return DiskAlgebraPoly({c}); }
    static DiskAlgebraPoly monomial(std::size_t k, cplx c = 1.0) {
        std::vector<cplx> v(k + 1, cplx{0.0, 0.0});
        v[k] = c;
        return DiskAlgebraPoly(std::move(v));
    }

    const std::vector<cplx>& coeffs() const { return coeffs_; }
    std::size_t degree() const { return coeffs_.size() - 1; }
    double certified_sup() const { return certified_sup_; }

    cplx apply(cplx z) const { return horner(coeffs_, z); }

    cplx operator()(cplx z) const {
        if (std::abs(z) > 1.0 + closed_disk_slack) {
            throw DomainError("disk-algebra polynomial evaluated outside the closed disk");
        }
        return apply(z);
    }

private:
    std::vector<cplx> coeffs_;
    double certified_sup_ = 0.0;
};

inline cplx poly_eval(const DiskAlgebraPoly& h, cplx z) { return h(z); }

/// Random polynomial of the given degree scaled into the certified unit ball.
/// Coefficients are drawn from [-1, 1] x [-1, 1] before scaling.
inline DiskAlgebraPoly sample_unit_ball(std::size_t degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<cplx> c(degree + 1);
    double s = 0.0;
    do {
        for (auto& x : c) {
            const double re = unit(rng);
            const double im = unit(rng);
            x = cplx{re, im};
        }
        s = std::min(certify_sup_norm(c, default_sample_count(degree)), coefficient_l1(c));
    } while (!(s > 0.0));
    for (auto& x : c) x /= s;
    DiskAlgebraPoly h(c);
    // absorb a rounding overshoot of a few ulps
    for (double t = h.certified_sup(); t > 1.0; t = h.certified_sup()) {
        const double shrink = std::nextafter(std::nextafter(t, 2.0), 2.0);
        for (auto& x : c) x /= shrink;
        h = DiskAlgebraPoly(c);
    }
    return h;
}

}  // namespace kspace
