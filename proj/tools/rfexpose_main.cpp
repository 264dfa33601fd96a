// SPDX-License-Identifier: Apache-2.0
//
// rfexpose command-line front end.
//
//   rfexpose sweep    --config <file|preset> [--out P] [--seed N]
//                     [--mode line|drop] [--format csv|svg|both] [--data DIR]
//   rfexpose compare  --config A --config B [--out P] [--format ...] [--data DIR]
//   rfexpose validate --config <file|preset> [--data DIR]
//   rfexpose presets list [--data DIR]
//
// Exit codes: 0 success, 1 validation/usage error, 2 runtime/model error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <rfexpose/rfexpose.hpp>

namespace {

using namespace rfexpose;

enum class OutputFormat { Csv, Svg, Both };

OutputFormat parse_format(const std::string& s) {
    if (s == "csv")
        return OutputFormat::Csv;
    if (s == "svg")
        return OutputFormat::Svg;
    if (s == "both")
        return OutputFormat::Both;
    throw ValidationError("--format must be csv, svg, or both, got \"" + s + "\"");
}

SweepMode parse_mode(const std::string& s) {
    if (s == "line")
        return SweepMode::Line;
    if (s == "drop")
        return SweepMode::Drop;
    throw ValidationError("--mode must be line or drop, got \"" + s + "\"");
}

std::string output_prefix(const std::string& out_flag, const ScenarioConfig& config,
                          const std::string& config_path) {
    if (!out_flag.empty())
        return out_flag;
    if (!config.output_prefix.empty())
        return config.output_prefix;
    return std::filesystem::path(config_path).stem().string();
}

void write_sweep_plots(const std::vector<SweepRow>& rows, const CsvMetadata& md,
                       const std::string& prefix, const std::string& label,
                       std::vector<std::string>& written) {
    struct Panel {
        const char* column;
        const char* suffix;
        const char* y_label;
        bool log_y;
    };
    static const Panel panels[] = {
        {"p_r_dbm", "_p_r.svg", "received power [dBm]", false},
        {"rate_bps", "_rate.svg", "downlink rate [bit/s]", false},
        {"s_i_w_m2", "_pd.svg", "incident power density [W/m^2]", true},
        {"sar_w_kg", "_sar.svg", "SAR [W/kg]", true},
    };
    for (const auto& p : panels) {
        PlotOptions opt;
        opt.title = label;
        opt.x_label = "UE position x [m]";
        opt.y_label = p.y_label;
        opt.log_y = p.log_y;
        opt.metadata = md;
        const std::string path = prefix + p.suffix;
        emit_plot(rows, p.column, label, opt, path);
        written.push_back(path);
    }
}

int cmd_sweep(const std::string& config_arg, const std::string& data_dir,
              const std::string& out_flag, bool seed_set, std::uint64_t seed,
              bool mode_set, const std::string& mode_str, const std::string& format_str) {
    const OutputFormat format = parse_format(format_str);
    const std::string path = resolve_config_path(config_arg, data_dir);
    LoadedScenario s = load_scenario(path);
    if (seed_set)
        s.config.seed = seed;
    if (mode_set)
        s.config.mode = parse_mode(mode_str);

    for (const auto& e : s.config.provenance)
        if (e.tag == "default")
            std::cout << "defaulted: " << e.field << " = " << e.value << "\n";

    const std::vector<SweepRow> rows = run_sweep(s);
    const CsvMetadata md = run_metadata(s);
    const std::string prefix = output_prefix(out_flag, s.config, path);

    std::vector<std::string> written;
    if (format == OutputFormat::Csv || format == OutputFormat::Both) {
        const std::string csv_path = prefix + ".csv";
        emit_csv(rows, md, csv_path);
        written.push_back(csv_path);
    }
    if (format == OutputFormat::Svg || format == OutputFormat::Both)
        write_sweep_plots(rows, md, prefix, s.config.label, written);

    std::size_t pd_ok = 0, sar_ok = 0;
    for (const auto& r : rows) {
        pd_ok += r.compliant_pd ? 1 : 0;
        sar_ok += r.compliant_sar ? 1 : 0;
    }
    std::cout << "sweep: " << s.config.label << " (" << to_string(s.config.mode) << " mode, "
              << rows.size() << " positions)\n";
    std::cout << "compliant positions: pd " << pd_ok << "/" << rows.size() << ", sar " << sar_ok
              << "/" << rows.size() << "\n";
    for (const auto& w : written)
        std::cout << "wrote " << w << "\n";
    return 0;
}

int cmd_compare(const std::vector<std::string>& config_args, const std::string& data_dir,
                const std::string& out_flag, const std::string& format_str) {
    const OutputFormat format = parse_format(format_str);
    const std::string path_a = resolve_config_path(config_args[0], data_dir);
    const std::string path_b = resolve_config_path(config_args[1], data_dir);
    LoadedScenario a = load_scenario(path_a);
    LoadedScenario b = load_scenario(path_b);
    // The comparison is defined on a shared 1-D position grid.
    a.config.mode = SweepMode::Line;
    b.config.mode = SweepMode::Line;
    const std::vector<SweepRow> rows_a = run_sweep(a);
    const std::vector<SweepRow> rows_b = run_sweep(b);
    const ComparisonReport rep = compare_systems(a.config, rows_a, b.config, rows_b);

    CsvMetadata md;
    md.emplace_back("generator", std::string(kToolName) + " " + kToolVersion);
    md.emplace_back("label_a", a.config.label);
    md.emplace_back("label_b", b.config.label);
    md.emplace_back("config_hash_a", a.config.config_hash);
    md.emplace_back("config_hash_b", b.config.config_hash);
    md.emplace_back("model_file_version", a.model.version());
    md.emplace_back("tissue_file_version", a.tissue.version);

    std::string prefix = out_flag.empty() ? "compare" : out_flag;
    std::vector<std::string> written;
    if (format == OutputFormat::Csv || format == OutputFormat::Both) {
        const std::string csv_path = prefix + "_compare.csv";
        std::ofstream out(csv_path, std::ios::binary);
        if (!out)
            throw ValidationError("cannot open \"" + csv_path + "\" for writing");
        emit_comparison_csv(rep, md, out);
        written.push_back(csv_path);
    }
    if (format == OutputFormat::Svg || format == OutputFormat::Both) {
        struct Panel {
            const char* column;
            const char* suffix;
            const char* y_label;
            bool log_y;
        };
        static const Panel panels[] = {
            {"rate_bps", "_rate_compare.svg", "downlink rate [bit/s]", true},
            {"s_i_w_m2", "_pd_compare.svg", "incident power density [W/m^2]", true},
            {"sar_w_kg", "_sar_compare.svg", "SAR [W/kg]", true},
        };
        const auto& col_x = sweep_column("x_m");
        for (const auto& p : panels) {
            const auto& col = sweep_column(p.column);
            PlotSeries sa{a.config.label, {}};
            PlotSeries sb{b.config.label, {}};
            for (const auto& r : rows_a)
                sa.points.emplace_back(col_x.numeric(r), col.numeric(r));
            for (const auto& r : rows_b)
                sb.points.emplace_back(col_x.numeric(r), col.numeric(r));
            PlotOptions opt;
            opt.title = a.config.label + " vs " + b.config.label;
            opt.x_label = "UE position x [m]";
            opt.y_label = p.y_label;
            opt.log_y = p.log_y;
            opt.metadata = md;
            const std::string svg_path = prefix + p.suffix;
            write_svg_plot({sa, sb}, opt, svg_path);
            written.push_back(svg_path);
        }
    }
    const std::string report_path = prefix + "_report.txt";
    {
        std::ofstream out(report_path, std::ios::binary);
        if (!out)
            throw ValidationError("cannot open \"" + report_path + "\" for writing");
        out << comparison_text(rep);
    }
    written.push_back(report_path);

    std::cout << comparison_text(rep);
    for (const auto& w : written)
        std::cout << "wrote " << w << "\n";
    return 0;
}

int cmd_validate(const std::string& config_arg, const std::string& data_dir) {
    const std::string path = resolve_config_path(config_arg, data_dir);
    const LoadedScenario s = load_scenario(path);
    std::cout << "config: " << path << "\n";
    std::cout << "label: " << s.config.label << "\n";
    std::cout << "config_hash: " << s.config.config_hash << "\n";
    std::cout << "model_file_version: " << s.model.version() << "\n";
    std::cout << "tissue_file_version: " << s.tissue.version << "\n";
    std::cout << "provenance:\n";
    for (const auto& e : s.config.provenance)
        std::cout << "  " << e.field << " = " << e.value << " [" << e.tag << "]\n";
    const std::size_t checked = self_test(s);
    std::cout << "self-test: " << checked << " positions checked, all invariants hold\n";
    std::cout << "ok\n";
    return 0;
}

int cmd_presets_list(const std::string& data_dir) {
    const std::vector<PresetInfo> presets = list_presets(data_dir);
    for (const auto& p : presets)
        std::cout << p.name << "  (" << p.label << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Downlink cellular RF-exposure simulator: received power, SNR, "
                 "Shannon rate, incident power density, and SAR over multi-site "
                 "layouts, with compliance checks and CSV/SVG emission."};
    app.require_subcommand(1);
    std::string data_dir = "data";
    app.add_option("--data", data_dir, "Data directory holding presets and model files")
        ->capture_default_str();

    std::string sweep_config, sweep_out, sweep_mode = "line", sweep_format = "both";
    std::uint64_t sweep_seed = 1;
    auto* sweep = app.add_subcommand("sweep", "Run a sweep and write CSV/SVG artifacts");
    sweep->add_option("--config", sweep_config, "Config file or preset name")->required();
    sweep->add_option("--out", sweep_out, "Output path prefix");
    sweep->add_option("--seed", sweep_seed, "Override the config's RNG seed");
    sweep->add_option("--mode", sweep_mode, "Sweep mode: line or drop");
    sweep->add_option("--format", sweep_format, "Artifacts to write: csv, svg, or both")
        ->capture_default_str();

    std::vector<std::string> compare_configs;
    std::string compare_out, compare_format = "both";
    auto* compare = app.add_subcommand("compare", "Compare two systems on the same sweep grid");
    compare->add_option("--config", compare_configs, "Two config files or preset names")
        ->expected(2)
        ->required();
    compare->add_option("--out", compare_out, "Output path prefix");
    compare->add_option("--format", compare_format, "Artifacts to write: csv, svg, or both")
        ->capture_default_str();

    std::string validate_config;
    auto* validate = app.add_subcommand("validate", "Validate a config and self-test the chain");
    validate->add_option("--config", validate_config, "Config file or preset name")->required();

    auto* presets = app.add_subcommand("presets", "Preset management");
    auto* presets_list = presets->add_subcommand("list", "List shipped presets");
    presets->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // usage problems are validation errors
    }

    try {
        if (sweep->parsed())
            return cmd_sweep(sweep_config, data_dir, sweep_out, sweep->count("--seed") > 0,
                             sweep_seed, sweep->count("--mode") > 0, sweep_mode, sweep_format);
        if (compare->parsed())
            return cmd_compare(compare_configs, data_dir, compare_out, compare_format);
        if (validate->parsed())
            return cmd_validate(validate_config, data_dir);
        if (presets_list->parsed())
            return cmd_presets_list(data_dir);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
