#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "blf/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"grid-diagram pipeline: invariants through the broken-fibration census"};
    app.require_subcommand(0, 1);

    std::string vpath;
    CLI::App* val = app.add_subcommand("validate", "list every violation in a grid file");
    val->add_option("path", vpath, "grid file to check")->required();

    std::string input, stage = "invariants", format = "text", concave, out;
    app.add_option("--input", input, "grid diagram file");
    app.add_option("--stage", stage, "invariants|alf|minimize|concave|match|palfify|blf");
    app.add_option("--format", format, "text|structured");
    app.add_option("--concave", concave, "product:<genus> or pencil:<genus>,<base points>");
    app.add_option("--out", out, "write the report to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cout << "error: parse: " << e.what() << "\n";
        return 2;
    }

    if (*val) {
        for (const std::string& d : blf::validate_file(vpath)) std::cout << d << "\n";
        return 0;
    }

    blf::RunResult result;
    try {
        blf::PipelineConfig cfg;
        cfg.input = input;
        cfg.stage = blf::parse_stage(stage);
        if (format == "text")
            cfg.format = blf::ReportFormat::Text;
        else if (format == "structured")
            cfg.format = blf::ReportFormat::Structured;
        else
            throw blf::ParseError("unknown format '" + format + "'");
        if (!concave.empty()) cfg.concave = blf::parse_concave_spec(concave);
        result = blf::run_pipeline(cfg);
    } catch (const blf::ParseError& e) {
        std::cout << "error: parse: " << e.what() << "\n";
        return 2;
    }

    if (result.exit_code != 0) {
        std::cout << result.report;  // the single machine-readable error line
        return result.exit_code;
    }
    if (out.empty()) {
        std::cout << result.report;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) {
            std::cout << "error: parse: cannot write '" << out << "'\n";
            return 2;
        }
        f << result.report;
    }
    return 0;
}
