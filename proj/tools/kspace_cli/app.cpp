#include "kspace_cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace kspace::cli {

Tolerances Tolerances::from(const std::map<std::string, double>& overrides) {
    Tolerances t;
    for (const auto& [name, value] : overrides) {
        if (!(std::isfinite(value) && value > 0.0)) {
            throw DomainError("tolerance " + name + " must be a positive number");
        }
        if (name == "slack") {
            t.slack = value;
        } else if (name == "radial") {
            t.radial = value;
        } else if (name == "quadrature") {
            t.quadrature = value;
        } else if (name == "kernel_compare") {
            t.kernel_compare = value;
        } else {
            throw DomainError("unknown tolerance \"" + name + "\" (known: slack, radial, quadrature, kernel_compare)");
        }
    }
    return t;
}

namespace {

template <class T>
const T& lookup(const std::vector<T>& items, const json& ref, const std::string& where, const char* what) {
    if (ref.is_string()) {
        const auto name = ref.get<std::string>();
        for (const auto& item : items) {
            if (item.name == name) return item;
        }
        throw io::SchemaError(where, std::string("no ") + what + " named \"" + name + "\"");
    }
    if (ref.is_number_integer() && ref.get<long long>() >= 0 && ref.get<std::size_t>() < items.size()) {
        return items[ref.get<std::size_t>()];
    }
    throw io::SchemaError(where, std::string("expected a ") + what + " name or index");
}

std::string entry_name(const json& entry, std::size_t index, const std::string& where) {
    if (!entry.is_object() || !entry.contains("name")) return "#" + std::to_string(index);
    if (!entry["name"].is_string()) throw io::SchemaError(where + "/name", "expected a string");
    return entry["name"].get<std::string>();
}

const json& array_member(const json& doc, const char* key) {
    static const json empty = json::array();
    if (!doc.contains(key)) return empty;
    if (!doc[key].is_array()) throw io::SchemaError(std::string("/") + key, "expected an array");
    return doc[key];
}

}  // namespace

const NamedMeasure& Fixtures::measure(const json& ref, const std::string& where) const {
    return lookup(measures, ref, where, "measure");
}

const NamedSelfMap& Fixtures::self_map(const json& ref, const std::string& where) const {
    return lookup(self_maps, ref, where, "self-map");
}

Fixtures load_fixtures(const json& doc) {
    if (!doc.is_object()) throw io::SchemaError("", "fixture document must be an object");
    Fixtures fx;
    const json& measures = array_member(doc, "measures");
    for (std::size_t i = 0; i < measures.size(); ++i) {
        const std::string where = "/measures/" + std::to_string(i);
        const json& e = measures[i];
        const std::string name = entry_name(e, i, where);
        const json& atoms = e.is_object() ? io::detail::field(e, "atoms", where) : e;
        fx.measures.push_back({name, io::measure_from_json(atoms, e.is_object() ? where + "/atoms" : where)});
    }
    const json& maps = array_member(doc, "self_maps");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const std::string where = "/self_maps/" + std::to_string(i);
        fx.self_maps.push_back({entry_name(maps[i], i, where), io::self_map_from_json(maps[i], where)});
    }
    const json& cases = array_member(doc, "cases");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string where = "/cases/" + std::to_string(i);
        const json& cmd = io::detail::field(cases[i], "command", where);
        if (!cmd.is_string() || std::find(commands.begin(), commands.end(), cmd.get<std::string>()) == commands.end()) {
            throw io::SchemaError(where + "/command", "unknown command");
        }
    }
    fx.cases = cases;

    auto check_unique = [](const auto& items, const char* key) {
        for (std::size_t i = 0; i < items.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (items[i].name == items[j].name) {
                    throw io::SchemaError(std::string("/") + key + "/" + std::to_string(i),
                                          "duplicate name \"" + items[i].name + "\"");
                }
            }
        }
    };
    check_unique(fx.measures, "measures");
    check_unique(fx.self_maps, "self_maps");
    return fx;
}

json read_fixture_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open fixture file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points one past the offending character
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (const auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
        throw io::SchemaError(path + ":" + std::to_string(line) + ":" + std::to_string(col), msg);
    }
}

namespace {

struct Context {
    const RunConfig& config;
    const Fixtures& fixtures;
    Tolerances tol;
    VerifyOptions verify;
};

struct Case {
    json bindings;
    std::string where;
};

/// Explicit cases for `command`, or the cross product produced by `fallback`.
std::vector<Case> cases_for(const Context& ctx, const std::string& command, const std::function<std::vector<json>()>& fallback) {
    std::vector<Case> out;
    for (std::size_t i = 0; i < ctx.fixtures.cases.size(); ++i) {
        const json& c = ctx.fixtures.cases[i];
        if (c["command"] == command) out.push_back({c, "/cases/" + std::to_string(i)});
    }
    if (out.empty()) {
        for (auto& b : fallback()) out.push_back({std::move(b), "<generated>"});
    }
    if (out.empty()) throw DomainError("fixtures provide nothing to run for " + command);
    return out;
}

std::vector<json> all_pairs(const Fixtures& fx) {
    std::vector<json> out;
    for (const auto& m : fx.measures) {
        for (const auto& s : fx.self_maps) out.push_back({{"measure", m.name}, {"self_map", s.name}});
    }
    return out;
}

double number_or(const Case& c, const char* key, double fallback) {
    if (!c.bindings.contains(key)) return fallback;
    return io::detail::number_at(c.bindings[key], c.where + "/" + key);
}

std::size_t count_or(const Case& c, const char* key, std::size_t fallback) {
    if (!c.bindings.contains(key)) return fallback;
    const json& v = c.bindings[key];
    if (!v.is_number_integer() || v.get<long long>() < 0) throw io::SchemaError(c.where + "/" + key, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

VerifyOptions options_for(const Context& ctx, const Case& c) {
    VerifyOptions o = ctx.verify;
    o.search.degree_cap = count_or(c, "degree_cap", o.search.degree_cap);
    o.search.restarts = static_cast<int>(count_or(c, "restarts", static_cast<std::size_t>(o.search.restarts)));
    return o;
}

const NamedMeasure& measure_of(const Context& ctx, const Case& c) {
    return ctx.fixtures.measure(io::detail::field(c.bindings, "measure", c.where), c.where + "/measure");
}

const NamedSelfMap& self_map_of(const Context& ctx, const Case& c) {
    return ctx.fixtures.self_map(io::detail::field(c.bindings, "self_map", c.where), c.where + "/self_map");
}

json self_map_input(const NamedSelfMap& s) {
    json j = io::to_json(s.map);
    j["name"] = s.name;
    return j;
}

using Reports = std::vector<json>;

Reports run_verify_bound(const Context& ctx) {
    Reports out;
    for (const auto& c : cases_for(ctx, "verify-bound", [&] { return all_pairs(ctx.fixtures); })) {
        const auto& m = measure_of(ctx, c);
        const auto& s = self_map_of(ctx, c);
        const auto rep = verify_eq1(m.measure, s.map, options_for(ctx, c));
        out.push_back(io::to_json(rep, {{"measure", m.name}, {"self_map", self_map_input(s)}}));
    }
    return out;
}

Reports run_verify_lemma1(const Context& ctx) {
    Reports out;
    for (const auto& c : cases_for(ctx, "verify-lemma1", [&] { return all_pairs(ctx.fixtures); })) {
        const auto& m = measure_of(ctx, c);
        const auto& s = self_map_of(ctx, c);
        const auto rep = verify_lemma1(m.measure, s.map, options_for(ctx, c));
        out.push_back(io::to_json(rep, {{"measure", m.name}, {"self_map", self_map_input(s)}}));
    }
    return out;
}

Reports run_verify_lemma2(const Context& ctx) {
    Reports out;
    auto fallback = [&] {
        std::vector<json> v;
        for (const auto& m : ctx.fixtures.measures) {
            for (const auto& s : ctx.fixtures.self_maps) {
                if (s.map.kind() == DiskSelfMap::Kind::mobius) {
                    v.push_back({{"measure", m.name}, {"a", io::to_json(s.map.mobius_point().value())}});
                }
            }
        }
        return v;
    };
    for (const auto& c : cases_for(ctx, "verify-lemma2", fallback)) {
        const auto& m = measure_of(ctx, c);
        const DiskPoint a(io::complex_from_json(io::detail::field(c.bindings, "a", c.where), c.where + "/a"));
        const auto rep = verify_lemma2(m.measure, a, options_for(ctx, c));
        out.push_back(io::to_json(rep, {{"measure", m.name}, {"a", io::to_json(a.value())}}));
    }
    return out;
}

Reports run_factorize(const Context& ctx) {
    Reports out;
    auto fallback = [&] {
        std::vector<json> v;
        for (const auto& s : ctx.fixtures.self_maps) v.push_back({{"self_map", s.name}});
        return v;
    };
    for (const auto& c : cases_for(ctx, "factorize", fallback)) {
        const detail::Stopwatch clock;
        const auto& s = self_map_of(ctx, c);
        const auto fac = schwarz_factorize(s.map);
        const auto chk = check_factorization(s.map, fac);
        const bool pass = chk.reconstruction_error <= 1e-12 && chk.base_point_error <= 1e-14 &&
                          chk.schwarz_excess <= ctx.tol.slack;
        out.push_back({{"claim", "factorize: phi = lambda_a o psi with a = phi(0), psi(0) = 0"},
                       {"inputs", {{"self_map", self_map_input(s)}}},
                       {"lower", nullptr},
                       {"upper", chk.reconstruction_error},
                       {"bound", 1e-12},
                       {"pass", pass},
                       {"witnesses", {{"a", io::to_json(fac.a.value())}, {"psi", io::to_json(fac.psi)}}},
                       {"metrics",
                        {{"reconstruction_error", chk.reconstruction_error},
                         {"psi0_abs", chk.base_point_error},
                         {"schwarz_excess", chk.schwarz_excess}}},
                       {"runtime_ms", clock.elapsed_ms()}});
    }
    return out;
}

struct CompareRow {
    std::size_t case_index;
    std::string route;
    double zeta_angle;
    double r;
    cplx value;
};

Reports run_kernel_compare(const Context& ctx, std::vector<CompareRow>& rows) {
    Reports out;
    auto fallback = [&] {
        std::vector<json> v;
        for (const auto& s : ctx.fixtures.self_maps) v.push_back({{"self_map", s.name}});
        return v;
    };
    std::size_t index = 0;
    for (const auto& c : cases_for(ctx, "kernel-compare", fallback)) {
        const detail::Stopwatch clock;
        std::string map_name;
        std::optional<DiskSelfMap> phi;
        if (c.bindings.contains("a")) {
            const DiskPoint a(io::complex_from_json(c.bindings["a"], c.where + "/a"));
            phi = DiskSelfMap::mobius(a);
            map_name = "mobius";
        } else {
            const auto& s = self_map_of(ctx, c);
            phi = s.map;
            map_name = s.name;
        }
        const auto h = c.bindings.contains("h") ? io::poly_from_json(c.bindings["h"], c.where + "/h")
                                                : DiskAlgebraPoly::constant(1.0);
        const double angle = number_or(c, "zeta_angle", 0.0);
        const double r = number_or(c, "r", 0.9);
        const CirclePoint zeta(angle);

        const bool closed = phi->kind() == DiskSelfMap::Kind::mobius;
        const DoublingPolicy policy{512, std::size_t{1} << 16, ctx.tol.quadrature};
        const cplx reference = closed ? p_lambda_closed_form(phi->mobius_point(), h, zeta, r)
                                      : p_phi_on_contour(*phi, h, zeta, r, policy);
        const cplx quad = p_phi_at(*phi, h, zeta, r, QuadratureGrid(512), ctx.tol.quadrature);
        const double diff = std::abs(quad - reference);
        const double allowed = ctx.tol.kernel_compare * std::max(1.0, std::abs(reference));
        const std::string route = closed ? "closed_form" : "contour";

        json inputs = {{"self_map", io::to_json(*phi)}, {"h", io::to_json(h)}, {"zeta_angle", angle}, {"r", r}};
        inputs["self_map"]["name"] = map_name;
        out.push_back({{"claim", "kernel-compare: unit-circle quadrature of P_phi h agrees with the " + route + " route"},
                       {"inputs", std::move(inputs)},
                       {"lower", nullptr},
                       {"upper", diff},
                       {"bound", allowed},
                       {"pass", diff <= allowed},
                       {"witnesses", json::object()},
                       {"metrics",
                        {{"reference_re", reference.real()},
                         {"reference_im", reference.imag()},
                         {"quadrature_re", quad.real()},
                         {"quadrature_im", quad.imag()},
                         {"abs_diff", diff}}},
                       {"runtime_ms", clock.elapsed_ms()}});
        rows.push_back({index, route, angle, r, reference});
        rows.push_back({index, "quadrature", angle, r, quad});
        ++index;
    }
    return out;
}

Reports run_norm_estimate(const Context& ctx) {
    Reports out;
    auto fallback = [&] {
        std::vector<json> v;
        for (const auto& m : ctx.fixtures.measures) v.push_back({{"measure", m.name}});
        return v;
    };
    for (const auto& c : cases_for(ctx, "norm-estimate", fallback)) {
        const detail::Stopwatch clock;
        const auto& m = measure_of(ctx, c);
        SearchOptions search;
        search.seed = ctx.config.seed;
        search.degree_cap = count_or(c, "degree_cap", search.degree_cap);
        search.restarts = static_cast<int>(count_or(c, "restarts", static_cast<std::size_t>(search.restarts)));
        const auto b = knorm_bracket(m.measure, search);
        VerificationReport rep;
        rep.claim = "norm-estimate: lower <= ||K_mu||_K <= upper";
        rep.lower = b.lower;
        rep.upper = b.upper;
        rep.bound = b.upper;
        rep.pass = b.lower <= b.upper + 1e-9;
        rep.witness_h = b.witness_h;
        rep.witness_mu = b.witness_mu;
        rep.metrics.emplace_back("gap", b.upper - b.lower);
        rep.runtime_ms = clock.elapsed_ms();
        out.push_back(io::to_json(rep, {{"measure", m.name}, {"degree_cap", search.degree_cap}}));
    }
    return out;
}

Reports run_sharpness_scan(const Context& ctx) {
    Reports out;
    auto fallback = [] {
        return std::vector<json>{{{"a_values", {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}}}};
    };
    for (const auto& c : cases_for(ctx, "sharpness-scan", fallback)) {
        const std::size_t cap = count_or(c, "degree_cap", 8);
        const json& av = io::detail::field(c.bindings, "a_values", c.where);
        if (!av.is_array()) throw io::SchemaError(c.where + "/a_values", "expected an array of numbers");
        std::vector<double> as;
        for (std::size_t i = 0; i < av.size(); ++i) {
            as.push_back(io::detail::number_at(av[i], c.where + "/a_values/" + std::to_string(i)));
        }
        for (const double a : as) {
            const detail::Stopwatch clock;
            const std::vector<double> one{a};
            const auto row = sharpness_scan(one, cap, ctx.config.seed).front();
            out.push_back({{"claim", "sharpness: ||f o lambda_a||_K / ||f||_K <= (1+2|a|)/(1-|a|)"},
                           {"inputs", {{"a", a}, {"degree_cap", cap}}},
                           {"lower", row.ratio},
                           {"upper", nullptr},
                           {"bound", row.bound},
                           {"pass", row.ratio <= row.bound + ctx.tol.slack},
                           {"witnesses", {{"h", io::to_json(row.witness)}, {"mu", io::to_json(row.measure)}}},
                           {"metrics", {{"sharpness_ratio", row.ratio / row.bound}}},
                           {"record", row.record},
                           {"runtime_ms", clock.elapsed_ms()}});
        }
    }
    return out;
}

std::string csv_quote(const std::string& s) {
    std::string q = "\"";
    for (const char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string render_csv(const std::string& command, const Reports& reports, const std::vector<CompareRow>& rows) {
    std::ostringstream os;
    auto num = [](const json& v) { return v.dump(); };
    if (command == "kernel-compare") {
        os << "case,route,zeta_angle,r,re,im,abs\n";
        for (const auto& row : rows) {
            os << row.case_index << ',' << row.route << ',' << num(row.zeta_angle) << ',' << num(row.r) << ','
               << num(row.value.real()) << ',' << num(row.value.imag()) << ',' << num(std::abs(row.value)) << '\n';
        }
    } else if (command == "sharpness-scan") {
        os << "a,ratio,bound,ratio_over_bound,atoms,pass\n";
        for (const auto& r : reports) {
            os << num(r["inputs"]["a"]) << ',' << num(r["lower"]) << ',' << num(r["bound"]) << ','
               << num(r["metrics"]["sharpness_ratio"]) << ',' << r["witnesses"]["mu"].size() << ','
               << (r["pass"].get<bool>() ? "true" : "false") << '\n';
        }
    } else {
        os << "index,claim,lower,upper,bound,pass\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            os << i << ',' << csv_quote(r["claim"].get<std::string>()) << ',' << num(r["lower"]) << ','
               << num(r["upper"]) << ',' << num(r["bound"]) << ',' << (r["pass"].get<bool>() ? "true" : "false")
               << '\n';
        }
    }
    return os.str();
}

}  // namespace

RunResult run(const RunConfig& config) {
    const detail::Stopwatch clock;
    RunResult result;
    try {
        if (std::find(commands.begin(), commands.end(), config.command) == commands.end()) {
            throw DomainError("unknown command \"" + config.command + "\"");
        }
        if (config.format != "json" && config.format != "csv") {
            throw DomainError("unknown format \"" + config.format + "\" (expected json or csv)");
        }
        const Tolerances tol = Tolerances::from(config.tolerances);

        Fixtures fx;
        if (config.fixtures == "standard") {
            fx = load_fixtures(standard_fixture_document());
        } else {
            const json doc = read_fixture_file(config.fixtures);
            try {
                fx = load_fixtures(doc);
            } catch (const io::SchemaError& e) {
                throw io::SchemaError(config.fixtures + ": " + e.where(), e.message());
            }
        }

        VerifyOptions verify;
        verify.search.seed = config.seed;
        verify.slack = tol.slack;
        verify.radial.convergence_tol = tol.radial;
        verify.radial.quadrature.tol = tol.quadrature;
        const Context ctx{config, fx, tol, verify};

        Reports reports;
        std::vector<CompareRow> rows;
        const std::string& cmd = config.command;
        if (cmd == "verify-bound") {
            reports = run_verify_bound(ctx);
        } else if (cmd == "verify-lemma1") {
            reports = run_verify_lemma1(ctx);
        } else if (cmd == "verify-lemma2") {
            reports = run_verify_lemma2(ctx);
        } else if (cmd == "factorize") {
            reports = run_factorize(ctx);
        } else if (cmd == "kernel-compare") {
            reports = run_kernel_compare(ctx, rows);
        } else if (cmd == "norm-estimate") {
            reports = run_norm_estimate(ctx);
        } else {
            reports = run_sharpness_scan(ctx);
        }

        const bool pass = std::all_of(reports.begin(), reports.end(), [](const json& r) { return r["pass"].get<bool>(); });
        if (config.format == "csv") {
            result.output = render_csv(cmd, reports, rows);
        } else {
            const json doc = {{"command", cmd},
                              {"seed", config.seed},
                              {"fixtures", config.fixtures},
                              {"tolerances",
                               {{"slack", tol.slack},
                                {"radial", tol.radial},
                                {"quadrature", tol.quadrature},
                                {"kernel_compare", tol.kernel_compare}}},
                              {"reports", reports},
                              {"pass", pass},
                              {"runtime_ms", clock.elapsed_ms()}};
            result.output = doc.dump(2) + "\n";
        }
        result.exit_code = pass ? exit_pass : exit_fail;

        if (config.out) {
            std::ofstream f(*config.out, std::ios::binary);
            if (!f) throw DomainError("cannot write report to " + *config.out);
            f << result.output;
        }
    } catch (const io::SchemaError& e) {
        result = {exit_input, "", std::string("input error: ") + e.what()};
    } catch (const NonConvergence& e) {
        result = {exit_input, "", std::string("convergence error: ") + e.what()};
    } catch (const DomainError& e) {
        result = {exit_input, "", std::string("error: ") + e.what()};
    } catch (const InternalError& e) {
        result = {exit_internal, "", std::string("internal error: ") + e.what()};
    }
    return result;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical verification of composition-operator bounds on the Cauchy transform space K", "kspace"};
    RunConfig config;
    std::string out_path;
    std::vector<std::string> tol_args;
    app.add_option("command", config.command, "Command to run")->required()->check(CLI::IsMember(commands));
    app.add_option("--seed", config.seed, "Seed for every randomized search")->capture_default_str();
    app.add_option("--out", out_path, "Write the report here instead of stdout");
    app.add_option("--format", config.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--tol", tol_args, "Tolerance override name=value (slack, radial, quadrature, kernel_compare)")
        ->allow_extra_args(false);
    app.add_option("--fixtures", config.fixtures, "Fixture file, or \"standard\" for the built-in set")
        ->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_pass : exit_input;
    }

    for (const auto& arg : tol_args) {
        const auto eq = arg.find('=');
        double value = 0.0;
        bool ok = eq != std::string::npos && eq > 0;
        if (ok) {
            try {
                std::size_t used = 0;
                value = std::stod(arg.substr(eq + 1), &used);
                ok = used == arg.size() - eq - 1;
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok) {
            err << "kspace: error: --tol expects name=value, got \"" << arg << "\"\n";
            return exit_input;
        }
        config.tolerances[arg.substr(0, eq)] = value;
    }
    if (!out_path.empty()) config.out = out_path;

    const RunResult r = run(config);
    if (!r.diagnostic.empty()) err << "kspace: " << r.diagnostic << '\n';
    if (!config.out) out << r.output;
    return r.exit_code;
}

}  // namespace kspace::cli
