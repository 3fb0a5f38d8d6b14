#pragma once

// Finitely atomic measures on the unit circle and their Cauchy-Stieltjes
// transforms K_mu(z) = sum_j c_j / (1 - conj(zeta_j) z).

#include <kspace/circle.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace kspace {

struct Atom {
    CirclePoint position;
    cplx weight;
};

/// Atoms closer than this (in angle, around the circle) are merged.
inline constexpr double atom_merge_tolerance = 1e-12;

/// Largest Taylor block taylor_coeffs will produce.
inline constexpr std::size_t max_taylor_count = std::size_t{1} << 12;

class AtomicMeasure {
public:
    /// Sorts atoms by angle, merges near-duplicates by summing their weights
    /// and drops atoms whose weight is exactly zero. Throws when nothing with
    /// positive mass remains.
    explicit AtomicMeasure(std::vector<Atom> atoms) : atoms_(normalize(std::move(atoms))) {
        total_variation_ = 0.0;
        for (const auto& a : atoms_) total_variation_ += std::abs(a.weight);
        if (!(total_variation_ > 0.0) || !std::isfinite(total_variation_)) {
            throw DomainError("atomic measure needs finite positive total variation");
        }
    }

    static AtomicMeasure point_mass(double angle, cplx weight = 1.0) {
        return AtomicMeasure({Atom{CirclePoint(angle), weight}});
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double total_variation() const { return total_variation_; }

    friend AtomicMeasure operator+(const AtomicMeasure& x, const AtomicMeasure& y) {
        std::vector<Atom> all = x.atoms_;
        all.insert(all.end(), y.atoms_.begin(), y.atoms_.end());
        return AtomicMeasure(std::move(all));
    }

    friend AtomicMeasure operator*(cplx s, const AtomicMeasure& x) {
        std::vector<Atom> all = x.atoms_;
        for (auto& a : all) a.weight *= s;
        return AtomicMeasure(std::move(all));
    }

private:
    static std::vector<Atom> normalize(std::vector<Atom> atoms) {
        if (atoms.empty()) throw DomainError("atomic measure needs at least one atom");
        for (const auto& a : atoms) {
            if (!std::isfinite(a.weight.real()) || !std::isfinite(a.weight.imag())) {
                throw DomainError("atom weight must be finite");
            }
        }
        std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) {
            return l.position.angle() < r.position.angle();
        });
        std::vector<Atom> merged;
        merged.reserve(atoms.size());
        for (const auto& a : atoms) {
            if (!merged.empty() &&
                a.position.angle() - merged.back().position.angle() < atom_merge_tolerance) {
                merged.back().weight += a.weight;
            } else {
                merged.push_back(a);
            }
        }
        // wrap-around: an atom just below 2pi coincides with one at 0
        if (merged.size() > 1 &&
            merged.front().position.angle() + two_pi - merged.back().position.angle() <
                atom_merge_tolerance) {
            merged.front().weight += merged.back().weight;
            merged.pop_back();
        }
        std::erase_if(merged, [](const Atom& a) { return a.weight == cplx{0.0, 0.0}; });
        return merged;
    }

    std::vector<Atom> atoms_;
    double total_variation_ = 0.0;
};

/// f = K_mu, analytic in the open disk.
class CauchyTransform {
public:
    explicit CauchyTransform(AtomicMeasure measure) : measure_(std::move(measure)) {}

    const AtomicMeasure& measure() const { return measure_; }

    /// No domain check; finite for |z| < 1.
    cplx apply(cplx z) const {
        cplx acc{0.0, 0.0};
        for (const auto& a : measure_.atoms()) {
            acc += a.weight / (1.0 - std::conj(a.position.value()) * z);
        }
        return acc;
    }

    cplx operator()(cplx z) const {
        if (!(std::abs(z) < 1.0)) throw DomainError("Cauchy transform is evaluated only for |z| < 1");
        return apply(z);
    }

private:
    AtomicMeasure measure_;
};

inline cplx cauchy_eval(const CauchyTransform& f, cplx z) { return f(z); }

/// Total variation sum |c_j|: an upper bound for the K-norm of K_mu.
inline double tv_norm(const AtomicMeasure& mu) { return mu.total_variation(); }

/// mu_hat(k) = sum_j c_j conj(zeta_j)^k for k < count, the Taylor coefficients of K_mu.
inline std::vector<cplx> taylor_coeffs(const AtomicMeasure& mu, std::size_t count) {
    if (count == 0 || count > max_taylor_count) {
        throw DomainError("taylor_coeffs count must lie in [1, 4096]");
    }
    std::vector<cplx> out(count, cplx{0.0, 0.0});
    for (const auto& a : mu.atoms()) {
        // powers via angle multiples keep every term exactly unimodular
        const double theta = a.position.angle();
        for (std::size_t k = 0; k < count; ++k) {
            out[k] += a.weight * std::polar(1.0, -theta * static_cast<double>(k));
        }
    }
    return out;
}

inline std::vector<cplx> taylor_coeffs(const CauchyTransform& f, std::size_t count) {
    return taylor_coeffs(f.measure(), count);
}

/// The measure nu with K_nu(z) = K_mu(z^n): each atom (zeta, c) splits into
/// the n n-th roots of zeta carrying c/n each.
inline AtomicMeasure monomial_pushforward(const AtomicMeasure& mu, int n) {
    if (n < 1) throw DomainError("monomial_pushforward needs n >= 1");
    if (n == 1) return mu;
    std::vector<Atom> out;
    out.reserve(mu.size() * static_cast<std::size_t>(n));
    const double nd = static_cast<double>(n);
    for (const auto& a : mu.atoms()) {
        for (int k = 0; k < n; ++k) {
            const double angle = (a.position.angle() + two_pi * k) / nd;
            out.push_back(Atom{CirclePoint(angle), a.weight / nd});
        }
    }
    return AtomicMeasure(std::move(out));
}

}  // namespace kspace
