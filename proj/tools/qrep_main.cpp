#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qrep/graph.hpp"
#include "qrep/report.hpp"

namespace {

// Exit codes: 0 success / all-match, 1 usage or parse error, 2 resource cap,
// 3 predictor-oracle mismatch.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCap = 2;
constexpr int kExitMismatch = 3;

std::uint64_t default_cap() {
    if (const char* env = std::getenv("QREP_MAX_VERTICES")) {
        try {
            return std::stoull(env);
        } catch (const std::logic_error&) {
            std::cerr << "warning: ignoring invalid QREP_MAX_VERTICES='" << env << "'\n";
        }
    }
    return qrep::kDefaultVertexCap;
}

bool parse_field_range(const std::string& text, std::uint64_t& lo, std::uint64_t& hi) {
    std::size_t dots = text.find("..");
    if (dots == std::string::npos) return false;
    try {
        std::size_t pos = 0;
        lo = std::stoull(text.substr(0, dots), &pos);
        if (pos != dots) return false;
        std::string rest = text.substr(dots + 2);
        hi = std::stoull(rest, &pos);
        return pos == rest.size();
    } catch (const std::logic_error&) {
        return false;
    }
}

int error_exit_code(const qrep::Error& e) {
    return e.code() == qrep::ErrorCode::CapExceeded ? kExitCap : kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"representation graphs of quadratic forms over finite fields"};
    app.require_subcommand(1);

    std::string field_spec = "q=5";
    std::string form_dsl = "H";
    std::uint32_t a = 1;
    std::uint64_t max_vertices = default_cap();
    unsigned threads = 1;
    bool no_timing = false;

    auto add_common = [&](CLI::App* cmd, bool with_a) {
        cmd->add_option("-q,--field", field_spec,
                        "field spec, e.g. q=9 or p=3,m=2[,mod=1,0,1]");
        cmd->add_option("-f,--form", form_dsl,
                        "form DSL, e.g. 'diag(1,1,1,1)', '2*H + bin(1,wp)'");
        if (with_a) cmd->add_option("-a", a, "element encoding of a");
        cmd->add_option("--max-vertices", max_vertices, "vertex cap for brute force");
        cmd->add_option("--threads", threads, "parallelism hint for scan kernels");
        cmd->add_flag("--no-timing", no_timing, "omit timing from reports");
    };

    auto* classify = app.add_subcommand("classify", "classify a quadratic form");
    add_common(classify, false);

    auto* predict = app.add_subcommand("predict", "closed-form invariant predictions");
    add_common(predict, true);

    auto* verify = app.add_subcommand("verify",
                                      "predictions cross-checked against brute force");
    add_common(verify, true);

    auto* sweep = app.add_subcommand("sweep", "per-field prediction/oracle table");
    std::string fields_range = "5..13";
    std::string mode = "diameter";
    bool all_a = false;
    add_common(sweep, true);
    sweep->add_option("--fields", fields_range, "inclusive prime-power range LO..HI");
    sweep->add_option("--mode", mode, "diameter | all")
        ->check(CLI::IsMember({"diameter", "all"}));
    sweep->add_flag("--all-a", all_a, "sweep every a in F instead of a = 1");

    auto* export_cmd = app.add_subcommand("export", "write the graph as edges or dot");
    std::string format = "edges";
    std::string output_path;
    add_common(export_cmd, true);
    export_cmd->add_option("--format", format, "edges | dot")
        ->check(CLI::IsMember({"edges", "dot"}));
    export_cmd->add_option("-o,--output", output_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*classify) {
            std::cout << qrep::classify_text(field_spec, form_dsl);
            return kExitOk;
        }
        if (*predict || *verify) {
            qrep::ReportOptions options;
            options.bruteforce = verify->parsed();
            options.max_vertices = max_vertices;
            options.threads = threads;
            options.timing = !no_timing;
            qrep::InvariantReport report = qrep::build_report(field_spec, form_dsl, a, options);
            std::cout << report.doc.dump(2) << "\n";
            return options.bruteforce && !report.all_match ? kExitMismatch : kExitOk;
        }
        if (*sweep) {
            std::uint64_t lo = 0, hi = 0;
            if (!parse_field_range(fields_range, lo, hi)) {
                std::cerr << "invalid --fields range '" << fields_range << "'\n";
                return kExitUsage;
            }
            auto rows = qrep::run_sweep(form_dsl, lo, hi, all_a,
                                        mode == "all" ? qrep::SweepMode::All
                                                      : qrep::SweepMode::Diameter,
                                        max_vertices, threads, a);
            std::cout << qrep::format_sweep_table(rows);
            bool any_mismatch = false, any_cap = false, any_error = false;
            for (const auto& row : rows) {
                switch (row.status) {
                case qrep::SweepRow::Status::Mismatch: any_mismatch = true; break;
                case qrep::SweepRow::Status::CapExceeded: any_cap = true; break;
                case qrep::SweepRow::Status::Error: any_error = true; break;
                case qrep::SweepRow::Status::Ok: break;
                }
            }
            if (any_mismatch) return kExitMismatch;
            if (any_cap) return kExitCap;
            return any_error ? kExitUsage : kExitOk;
        }
        if (*export_cmd) {
            qrep::FieldPtr field = qrep::parse_field_spec(field_spec);
            qrep::GraphJob job{qrep::parse_form(field, form_dsl), a, max_vertices, threads};
            if (a >= field->order()) {
                std::cerr << "a out of range for field of order " << field->order() << "\n";
                return kExitUsage;
            }
            qrep::ExportFormat fmt =
                format == "dot" ? qrep::ExportFormat::Dot : qrep::ExportFormat::Edges;
            if (output_path.empty()) {
                qrep::export_graph(job, fmt, std::cout);
            } else {
                std::ofstream out(output_path, std::ios::binary);
                if (!out) {
                    std::cerr << "cannot open '" << output_path << "'\n";
                    return kExitUsage;
                }
                qrep::export_graph(job, fmt, out);
            }
            return kExitOk;
        }
    } catch (const qrep::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return error_exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
