#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace latfluct {
namespace experiments {

enum class Method { fourier, realspace, mc, bound };
std::string method_name(Method m);

struct ResultRow {
    std::string experiment;
    double R = 0.0;
    std::string quantity;
    Method method = Method::fourier;
    double value = 0.0;
    std::optional<double> target;
    double error_bound = 0.0;
    std::uint64_t seed = 0;

    std::optional<double> rel_error() const;
};

// Overrides left at their sentinel take the experiment's default.
struct ExperimentConfig {
    std::string name;
    int d = -1;
    double a = -1.0;
    std::vector<double> grid;
    double eps = -1.0;
    std::int64_t replicates = -1;
    std::uint64_t seed = 2026;
};

struct ExperimentInfo {
    std::string name;
    std::string description;
    std::string anchor; // the quantitative claim the experiment reproduces
};

// Stable registration order.
std::vector<ExperimentInfo> list_experiments();

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

// Column layout: experiment,R,quantity,method,value,target,rel_error,error_bound,seed
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
void write_json(std::ostream& os, const std::vector<ResultRow>& rows);

// Full command-line entry point; returns the process exit code
// (0 ok, 2 validation error, 3 numeric non-convergence).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace experiments
} // namespace latfluct
