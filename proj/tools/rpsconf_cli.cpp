// Command-line front end: conflict reports, parameter sweeps, table
// reproduction and (i, j) <-> permutation conversion.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rpsconf/rpsconf.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitDomain = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw rpsconf::Error(rpsconf::ErrorKind::SchemaError, "cannot open file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw rpsconf::Error(rpsconf::ErrorKind::SchemaError, "cannot write file: " + path);
    }
    out << text;
}

struct MeasureOptions {
    std::string weights = "uniform";
    double p = 0.5;
    std::string custom_weights;
    std::string depth = "default";
};

void add_measure_options(CLI::App* cmd, MeasureOptions& opts) {
    cmd->add_option("--weights", opts.weights, "Weight profile: uniform|geometric|custom")
        ->check(CLI::IsMember({"uniform", "geometric", "custom"}));
    cmd->add_option("--p", opts.p, "Decay parameter for geometric weights, in [0, 1)");
    cmd->add_option("--custom-weights", opts.custom_weights,
                    "Comma-separated per-depth weights for --weights custom");
    cmd->add_option("--depth", opts.depth, "Evaluation depth: default|<n>|unbounded");
}

rpsconf::WeightScheme make_scheme(const MeasureOptions& opts) {
    if (opts.weights == "uniform") return rpsconf::WeightScheme::uniform();
    if (opts.weights == "geometric") return rpsconf::WeightScheme::geometric(opts.p);
    if (opts.custom_weights.empty()) {
        throw rpsconf::Error(rpsconf::ErrorKind::ParameterOutOfRange,
                             "--weights custom needs --custom-weights");
    }
    return rpsconf::WeightScheme::custom(rpsconf::parse_sweep_values(opts.custom_weights));
}

rpsconf::DepthSpec make_depth(const MeasureOptions& opts) {
    if (opts.depth == "default") return rpsconf::DepthSpec::defaults();
    if (opts.depth == "unbounded") return rpsconf::DepthSpec::unbounded();
    std::size_t pos = 0;
    unsigned long long n = 0;
    try {
        n = std::stoull(opts.depth, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != opts.depth.size() || n < 1) {
        throw rpsconf::Error(rpsconf::ErrorKind::ParameterOutOfRange,
                             "--depth must be default, unbounded or an integer >= 1, got '" +
                                 opts.depth + "'");
    }
    return rpsconf::DepthSpec::truncate(static_cast<std::size_t>(n));
}

rpsconf::VaryTarget parse_vary(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
        throw rpsconf::Error(rpsconf::ErrorKind::ParameterOutOfRange,
                             "--vary expects body:record, got '" + text + "'");
    }
    rpsconf::VaryTarget target;
    target.body = text.substr(0, colon);
    try {
        target.record = std::stoull(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw rpsconf::Error(rpsconf::ErrorKind::ParameterOutOfRange,
                             "--vary record index must be an integer, got '" + text + "'");
    }
    return target;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conflict measurement between random permutation sets"};
    app.require_subcommand(1);

    // conflict
    auto* conflict_cmd =
        app.add_subcommand("conflict", "Conflict between two bodies of an evidence file");
    std::string input, body1, body2, output;
    int precision = 4;
    MeasureOptions conflict_opts;
    conflict_cmd->add_option("--input", input, "Evidence JSON file")->required();
    conflict_cmd->add_option("--body1", body1, "First body name")->required();
    conflict_cmd->add_option("--body2", body2, "Second body name")->required();
    add_measure_options(conflict_cmd, conflict_opts);
    conflict_cmd->add_option("--precision", precision, "Decimal places (default 4)");
    conflict_cmd->add_option("--output", output, "Output path (default stdout)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Conflict along a parameter axis, as CSV");
    std::string sweep_input, sweep_body1, sweep_body2, sweep_output;
    std::string axis_text, values_text, vary_text;
    int sweep_precision = 4;
    MeasureOptions sweep_opts;
    sweep_cmd->add_option("--input", sweep_input, "Evidence JSON file")->required();
    sweep_cmd->add_option("--body1", sweep_body1, "First body name")->required();
    sweep_cmd->add_option("--body2", sweep_body2, "Second body name")->required();
    sweep_cmd->add_option("--axis", axis_text, "Sweep axis: p|depth|cardinality")->required();
    sweep_cmd
        ->add_option("--values", values_text, "Values: start:stop:step or comma-separated list")
        ->required();
    add_measure_options(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--vary", vary_text,
                          "body:record whose focal set becomes the identity prefix "
                          "(cardinality axis)");
    sweep_cmd->add_option("--precision", sweep_precision, "Decimal places (default 4)");
    sweep_cmd->add_option("--output", sweep_output, "Output path (default stdout)");

    // repro
    auto* repro_cmd = app.add_subcommand("repro", "Reproduce a numbered table as CSV");
    int table_id = 0;
    std::string repro_output;
    repro_cmd->add_option("--table", table_id, "Table id (2..7)")->required();
    repro_cmd->add_option("--output", repro_output, "Output path (default stdout)");

    // codec
    auto* codec_cmd = app.add_subcommand("codec", "Convert between (i, j) codes and permutations");
    codec_cmd->require_subcommand(1);
    std::size_t frame_size = 0;
    std::vector<std::string> encode_labels;
    auto* encode_cmd = codec_cmd->add_subcommand("encode", "Permutation labels -> (i, j)");
    encode_cmd->add_option("--frame-size", frame_size, "Frame size n (labels w1..wn)")
        ->required();
    encode_cmd->add_option("labels", encode_labels, "Element labels in order")->required();
    std::uint64_t code_i = 0, code_j = 0;
    auto* decode_cmd = codec_cmd->add_subcommand("decode", "(i, j) -> permutation labels");
    decode_cmd->add_option("--frame-size", frame_size, "Frame size n (labels w1..wn)")
        ->required();
    decode_cmd->add_option("i", code_i, "Subset code")->required();
    decode_cmd->add_option("j", code_j, "Order code (1-based)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*conflict_cmd) {
            const rpsconf::EvidenceDocument doc = rpsconf::parse_evidence(read_file(input));
            const rpsconf::ConflictReport report =
                rpsconf::conf(doc.body(body1).pmf, doc.body(body2).pmf,
                              make_scheme(conflict_opts), make_depth(conflict_opts));
            write_output(output, rpsconf::render_conflict_report(report, precision));
        } else if (*sweep_cmd) {
            const rpsconf::EvidenceDocument doc = rpsconf::parse_evidence(read_file(sweep_input));
            rpsconf::SweepSpec spec;
            spec.axis = rpsconf::parse_sweep_axis(axis_text);
            spec.values = rpsconf::parse_sweep_values(values_text);
            std::optional<rpsconf::VaryTarget> vary;
            if (!vary_text.empty()) vary = parse_vary(vary_text);
            // The p axis defaults to geometric weights unless told otherwise.
            if (spec.axis == rpsconf::SweepAxis::P && !sweep_cmd->count("--weights")) {
                sweep_opts.weights = "geometric";
            }
            write_output(sweep_output,
                         rpsconf::run_sweep(doc, sweep_body1, sweep_body2, spec,
                                            make_scheme(sweep_opts), make_depth(sweep_opts),
                                            vary, sweep_precision));
        } else if (*repro_cmd) {
            write_output(repro_output, rpsconf::tables::render_table(table_id));
        } else if (*encode_cmd) {
            const rpsconf::Frame frame = rpsconf::Frame::of_size(frame_size);
            const auto focal = rpsconf::OrderedFocalSet::from_labels(frame, encode_labels);
            const rpsconf::FocalCode code = rpsconf::focal_code(focal);
            std::cout << "(" << code.i.value << ", " << code.j.value << ")\n";
        } else if (*decode_cmd) {
            const rpsconf::Frame frame = rpsconf::Frame::of_size(frame_size);
            const auto focal = rpsconf::perm_from_rank(frame, rpsconf::SubsetCode{code_i},
                                                       rpsconf::OrderCode{code_j});
            if (focal.empty()) {
                std::cout << "(empty)\n";
            } else {
                const auto labels = focal.to_labels(frame);
                for (std::size_t t = 0; t < labels.size(); ++t) {
                    std::cout << (t ? " " : "") << labels[t];
                }
                std::cout << "\n";
            }
        }
    } catch (const rpsconf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rpsconf::is_validation_error(e.kind()) ? kExitValidation : kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return 0;
}
