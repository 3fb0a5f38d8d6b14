#pragma once

#include <kspace/io.hpp>
#include <kspace/kspace.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kspace::cli {

using json = nlohmann::json;

inline const std::vector<std::string> commands{"verify-bound", "verify-lemma1", "verify-lemma2", "factorize",
                                               "kernel-compare", "norm-estimate", "sharpness-scan"};

/// Exit codes.
inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_input = 2;     ///< bad input, unmet precondition, non-convergence
inline constexpr int exit_internal = 3;  ///< invariant violation inside the library

struct RunConfig {
    std::string command;
    std::string fixtures = "standard";  ///< a path, or "standard" for the built-in set
    std::uint64_t seed = 20240001;
    std::optional<std::string> out;
    std::string format = "json";
    std::map<std::string, double> tolerances;
};

struct RunResult {
    int exit_code = exit_pass;
    std::string output;      ///< rendered report (json or csv); empty on error
    std::string diagnostic;  ///< one line, empty on success
};

/// Tolerance names accepted by --tol.
struct Tolerances {
    double slack = 1e-8;            ///< one-sided "lower <= bound" slack
    double radial = 1e-9;           ///< radial-limit stabilization
    double quadrature = 1e-12;      ///< grid-doubling stopping rule
    double kernel_compare = 1e-10;  ///< quadrature vs reference, relative to max(1, |ref|)

    static Tolerances from(const std::map<std::string, double>& overrides);
};

struct NamedMeasure {
    std::string name;
    AtomicMeasure measure;
};

struct NamedSelfMap {
    std::string name;
    DiskSelfMap map;
};

struct Fixtures {
    std::vector<NamedMeasure> measures;
    std::vector<NamedSelfMap> self_maps;
    json cases = json::array();

    const NamedMeasure& measure(const json& ref, const std::string& where) const;
    const NamedSelfMap& self_map(const json& ref, const std::string& where) const;
};

/// Canonical fixture document shipped with `--fixtures standard`.
const json& standard_fixture_document();

Fixtures load_fixtures(const json& doc);

/// Reads and parses a fixture file. JSON syntax errors come back as
/// io::SchemaError whose message is anchored at "path:line:col".
json read_fixture_file(const std::string& path);

/// Runs one command. Writes the report to config.out when set.
RunResult run(const RunConfig& config);

/// Full command-line entry point (argument parsing included).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kspace::cli
