#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blf/errors.hpp"

namespace blf {

enum class Stage { Invariants, Alf, Minimize, Concave, Match, Palfify, Blf };
enum class ReportFormat { Text, Structured };

Stage parse_stage(const std::string& name);  // ParseError on an unknown name
const char* to_string(Stage s);

// "product:<genus>" or "pencil:<genus>,<base points>".
struct ConcaveSpec {
    std::string kind;
    std::int64_t genus = 0;
    std::int64_t euler = 1;  // base-point count; pencils only
};

ConcaveSpec parse_concave_spec(const std::string& text);  // ParseError on bad syntax

struct PipelineConfig {
    std::string input;
    Stage stage = Stage::Invariants;
    ReportFormat format = ReportFormat::Text;
    std::optional<ConcaveSpec> concave;
};

struct RunResult {
    int exit_code = 0;    // 0 ok, 2 parse, 3 precondition, 4 planning
    std::string report;   // on failure: one "error: <kind>: <what>" line
};

// Chains the stages up to config.stage and renders the report; identical
// input and config always yield byte-identical text.
RunResult run_pipeline(const PipelineConfig& config);

// Every violation in the file as "line N: ..." strings; empty exactly when
// the file parses.  An unreadable path is itself a diagnostic, not an error.
std::vector<std::string> validate_file(const std::string& path);

}  // namespace blf
