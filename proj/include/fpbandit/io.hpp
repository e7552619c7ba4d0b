#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fpbandit/analysis.hpp"
#include "fpbandit/lowerbound.hpp"
#include "fpbandit/model.hpp"
#include "fpbandit/sim.hpp"

namespace fpbandit {

/// Malformed JSON, with 1-based position information.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line_, std::size_t column_)
        : std::runtime_error(msg), line(line_), column(column_) {}
    std::size_t line;
    std::size_t column;
};

/// Parses text as JSON; throws ParseError with line/column on failure.
nlohmann::json parse_json(const std::string& text);

/// Reads and parses a JSON file. Throws std::runtime_error if unreadable.
nlohmann::json load_json_file(const std::string& path);

struct LoadedInstance {
    ParameterSet params;
    std::optional<std::size_t> true_parameter;
};

/// Builds a ParameterSet (and optional true-parameter index) from the
/// instance schema. Throws std::invalid_argument on any invariant violation.
LoadedInstance instance_from_json(const nlohmann::json& j);

/// Resolves a "name or mean vector" reference to a parameter index.
std::size_t resolve_parameter(const ParameterSet& params,
                              const nlohmann::json& ref);

nlohmann::json to_json(const StructuralReport& report,
                       const ParameterSet& params);
nlohmann::json to_json(const ConstantsReport& constants,
                       const ParameterSet& params);
nlohmann::json to_json(const LowerBoundResult& lb, const ParameterSet& params,
                       double achievable_log_coefficient);
nlohmann::json summary_json(const BatchResult& result);

void write_text_file(const std::string& path, const std::string& text);

} // namespace fpbandit
