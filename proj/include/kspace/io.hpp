#pragma once

// JSON literals for measures, polynomials and self-maps, and the report
// encoding used by the command-line harness.
//
//   measure   [{"angle": 0.0, "re": 1.0, "im": 0.0}, ...]
//   poly      [[re, im], ...]                          (constant term first)
//   self-map  {"kind": "polynomial", "coeffs": [[re, im], ...]}
//             {"kind": "blaschke", "zeros": [[re, im], ...], "rotation": [re, im]}
//             {"kind": "mobius", "a": [re, im]}
//             {"kind": "composed", "outer": {"a": [re, im]}, "inner": <self-map>}

#include <kspace/disk_algebra.hpp>
#include <kspace/errors.hpp>
#include <kspace/measure.hpp>
#include <kspace/norm_engine.hpp>
#include <kspace/self_map.hpp>

#include <json.hpp>

#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace kspace::io {

using json = nlohmann::json;

/// A literal that parsed as JSON but does not fit its schema. `where` is a
/// JSON pointer into the fixture document.
class SchemaError : public DomainError {
public:
    SchemaError(std::string where, std::string message)
        : DomainError(where + ": " + message), where_(std::move(where)), message_(std::move(message)) {}
    const std::string& where() const { return where_; }
    const std::string& message() const { return message_; }

private:
    std::string where_;
    std::string message_;
};

namespace detail {

inline double number_at(const json& j, const std::string& where) {
    if (!j.is_number()) throw SchemaError(where, "expected a number");
    return j.get<double>();
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw SchemaError(where, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(where, std::string("missing field \"") + key + "\"");
    return *it;
}

}  // namespace detail

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

/// [re, im] or a bare real number.
inline cplx complex_from_json(const json& j, const std::string& where = "") {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw SchemaError(where, "expected [re, im]");
    return {detail::number_at(j[0], where + "/0"), detail::number_at(j[1], where + "/1")};
}

inline std::vector<cplx> complex_list_from_json(const json& j, const std::string& where = "") {
    if (!j.is_array()) throw SchemaError(where, "expected an array of [re, im] pairs");
    std::vector<cplx> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_from_json(j[i], where + "/" + std::to_string(i)));
    return out;
}

inline json to_json(const std::vector<cplx>& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(to_json(z));
    return out;
}

inline json to_json(const DiskAlgebraPoly& h) { return to_json(h.coeffs()); }

inline DiskAlgebraPoly poly_from_json(const json& j, const std::string& where = "") {
    auto coeffs = complex_list_from_json(j, where);
    if (coeffs.empty()) throw SchemaError(where, "polynomial needs at least one coefficient");
    return DiskAlgebraPoly(std::move(coeffs));
}

inline json to_json(const AtomicMeasure& mu) {
    json out = json::array();
    for (const auto& a : mu.atoms()) {
        out.push_back({{"angle", a.position.angle()}, {"re", a.weight.real()}, {"im", a.weight.imag()}});
    }
    return out;
}

inline AtomicMeasure measure_from_json(const json& j, const std::string& where = "") {
    if (!j.is_array() || j.empty()) throw SchemaError(where, "measure literal must be a nonempty array");
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = where + "/" + std::to_string(i);
        const double angle = detail::number_at(detail::field(j[i], "angle", w), w + "/angle");
        const double re = detail::number_at(detail::field(j[i], "re", w), w + "/re");
        const double im = detail::number_at(detail::field(j[i], "im", w), w + "/im");
        atoms.push_back(Atom{CirclePoint(angle), cplx{re, im}});
    }
    try {
        return AtomicMeasure(std::move(atoms));
    } catch (const DomainError& e) {
        throw SchemaError(where, e.what());
    }
}

inline json to_json(const DiskSelfMap& phi) {
    return std::visit(
        [](const auto& r) -> json {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, DiskSelfMap::Polynomial>) {
                return {{"kind", "polynomial"}, {"coeffs", to_json(r.coeffs)}};
            } else if constexpr (std::is_same_v<T, DiskSelfMap::Blaschke>) {
                std::vector<cplx> zeros;
                for (const auto& z : r.product.zeros()) zeros.push_back(z.value());
                return {{"kind", "blaschke"}, {"zeros", to_json(zeros)}, {"rotation", to_json(r.product.rotation())}};
            } else if constexpr (std::is_same_v<T, DiskSelfMap::Mobius>) {
                return {{"kind", "mobius"}, {"a", to_json(r.map.a().value())}};
            } else {
                return {{"kind", "composed"}, {"outer", {{"a", to_json(r.outer.a().value())}}}, {"inner", to_json(*r.inner)}};
            }
        },
        phi.representation());
}

inline DiskSelfMap self_map_from_json(const json& j, const std::string& where = "") {
    const json& kind_j = detail::field(j, "kind", where);
    if (!kind_j.is_string()) throw SchemaError(where + "/kind", "expected a string");
    const std::string kind = kind_j.get<std::string>();
    try {
        if (kind == "polynomial") {
            return DiskSelfMap::polynomial(complex_list_from_json(detail::field(j, "coeffs", where), where + "/coeffs"));
        }
        if (kind == "blaschke") {
            std::vector<DiskPoint> zeros;
            for (const auto& z : complex_list_from_json(detail::field(j, "zeros", where), where + "/zeros")) {
                zeros.emplace_back(z);
            }
            const cplx rot = j.contains("rotation") ? complex_from_json(j["rotation"], where + "/rotation") : cplx{1.0, 0.0};
            return DiskSelfMap::blaschke(std::move(zeros), rot);
        }
        if (kind == "mobius") {
            return DiskSelfMap::mobius(DiskPoint(complex_from_json(detail::field(j, "a", where), where + "/a")));
        }
        if (kind == "composed") {
            const json& outer = detail::field(j, "outer", where);
            const DiskPoint a(complex_from_json(detail::field(outer, "a", where + "/outer"), where + "/outer/a"));
            return DiskSelfMap::composed(MobiusMap(a), self_map_from_json(detail::field(j, "inner", where), where + "/inner"));
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const DomainError& e) {
        throw SchemaError(where, e.what());
    }
    throw SchemaError(where + "/kind", "unknown self-map kind \"" + kind + "\"");
}

inline json to_json(const VerificationReport& rep, json inputs) {
    json witnesses = json::object();
    if (rep.witness_h) witnesses["h"] = to_json(*rep.witness_h);
    if (rep.witness_mu) witnesses["mu"] = to_json(*rep.witness_mu);
    json metrics = json::object();
    for (const auto& [k, v] : rep.metrics) metrics[k] = v;
    json out = {{"claim", rep.claim},
                {"inputs", std::move(inputs)},
                {"lower", rep.lower},
                {"upper", rep.upper},
                {"bound", rep.bound},
                {"pass", rep.pass},
                {"witnesses", std::move(witnesses)},
                {"metrics", std::move(metrics)},
                {"runtime_ms", rep.runtime_ms}};
    if (!rep.notes.empty()) out["notes"] = rep.notes;
    return out;
}

/// Removes every "runtime_ms" member, recursively.
inline json strip_runtime(json j) {
    if (j.is_object()) {
        j.erase("runtime_ms");
        for (auto it = j.begin(); it != j.end(); ++it) *it = strip_runtime(*it);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_runtime(v);
    }
    return j;
}

}  // namespace kspace::io
