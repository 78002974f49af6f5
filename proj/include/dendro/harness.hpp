#pragma once

#include "dendro/scalar.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dendro {

enum class Mode { rational, floating };

std::string to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

class SuiteError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SuiteOptions {
    std::size_t cases = 0;  // 0 selects the suite default
    std::uint64_t seed = 42;
    std::optional<Mode> mode;
    double tol = default_tolerance;
    std::size_t dim = 0;  // 0 cycles dimensions 1..3 (or 2 for tree suites)

    // theorem_squares: exhaustive enumeration bounds
    std::size_t max_vertices = 5;
    std::size_t max_arity = 3;

    // obstruction
    std::string radius = "const:0.5";
    std::vector<double> c1{0.0, 0.0};
    std::vector<double> point{0.2, 0.0};
    double tmin = 0.001;
    double tmax = 0.1;
    std::size_t steps = 100;
};

struct CheckReport {
    std::string suite;
    std::size_t cases = 0;
    std::size_t failures = 0;
    double max_residual = 0.0;
    std::uint64_t seed = 0;
    Mode mode = Mode::rational;
    double tol = default_tolerance;
    std::vector<std::string> witnesses;
    std::map<std::string, std::int64_t> counts;
    std::map<std::string, double> metrics;

    bool passed() const { return failures == 0; }
};

const std::vector<std::string>& suite_names();

// Throws SuiteError for an unknown suite or an unsupported mode.
CheckReport run_suite(std::string_view name, const SuiteOptions& options);

// One "key: value" line per field, then witnesses.
std::string format_report(const CheckReport& report);
// The report as a single-line JSON record.
std::string report_json(const CheckReport& report);

// Size knobs of a generated case; the shrinker lowers them one at a time.
struct CaseParams {
    std::uint64_t seed = 0;
    std::size_t dim = 2;
    std::size_t max_vertices = 6;
    std::size_t max_arity = 3;
    std::size_t max_length = 4;
    double scale = 1.0;

    bool operator==(const CaseParams&) const = default;
};

// Greedy shrink: repeatedly lower a knob while `fails` still holds.
CaseParams shrink_case(CaseParams failing, const std::function<bool(const CaseParams&)>& fails);

std::string describe(const CaseParams& params);

}  // namespace dendro
