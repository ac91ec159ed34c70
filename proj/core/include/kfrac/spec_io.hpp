#pragma once

#include "kfrac/constants.hpp"
#include "kfrac/problem.hpp"
#include "kfrac/solver.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace kfrac::io {

/// Contents of a problem spec file.
struct SpecFile {
    ProblemSpec spec;
    MountainPassConfig solver;
    std::optional<double> lambda_log10;
};

/// Throws ParseError naming the offending key; semantic checks (validate) are separate.
SpecFile parse_spec(const nlohmann::json& j);
SpecFile load_spec(const std::filesystem::path& path);
nlohmann::json to_json(const SpecFile& file);

nlohmann::json to_json(const LogReal& x);
nlohmann::json to_json(const ConstantsReport& c);
nlohmann::json to_json(const NormReport& n);
nlohmann::json to_json(const BoundVerdicts& v);
nlohmann::json to_json(const GridFunction& u);

NormReport norms_from_json(const nlohmann::json& j);
/// Nodal values of a stored solution; the grid comes from the caller.
GridFunction grid_function_from_json(const nlohmann::json& j, const Grid& grid);

struct ResultFile {
    SpecFile spec;
    double lambda_log10 = 0.0;
    SolveResult result;
    std::string tool_version;
    std::string timestamp;
};

nlohmann::json to_json(const ResultFile& r, const ConstantsReport& constants);
/// Inverse of to_json for the fields needed to replay verdicts.
ResultFile result_from_json(const nlohmann::json& j);

std::string tool_version();

} // namespace kfrac::io
