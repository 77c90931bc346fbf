// radiomark: command-line entry point for the radiomic biomarker pipeline.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "radiomark/error.hpp"
#include "radiomark/pipeline/commands.hpp"

namespace fs = std::filesystem;
using namespace radiomark;

namespace {

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config: return 2;
        case ErrorKind::io: return 3;
        case ErrorKind::numeric: return 4;
    }
    return 1;
}

struct Common {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c, bool with_out = true) {
    cmd->add_option("--config", c.config_path, "JSON pipeline config")->check(CLI::ExistingFile);
    if (with_out) cmd->add_option("--out", c.out, "output directory (overrides config)");
    cmd->add_option("--seed", c.seed, "64-bit seed (overrides config)");
}

// Flags override config fields.
PipelineConfig resolve(const Common& c) {
    PipelineConfig config = c.config_path.empty() ? PipelineConfig{} : PipelineConfig::load(c.config_path);
    if (!c.out.empty()) config.out = c.out;
    if (c.seed) config.seed = c.seed;
    config.validate();
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radiomic biomarker extraction, selection and cross-cohort transfer"};
    app.require_subcommand(1);

    Common common;
    std::string manifest;
    auto* extract = app.add_subcommand("extract", "extract radiomic features for every study in a manifest");
    add_common(extract, common);
    extract->add_option("--manifest", manifest, "study manifest JSON (overrides config)");

    std::string features, name;
    auto* build = app.add_subcommand("build", "select a LASSO biomarker on the training split of a feature CSV");
    add_common(build, common);
    build->add_option("--features", features, "feature CSV")->required();
    build->add_option("--name", name, "cohort id recorded in the model (default: CSV stem)");

    std::vector<std::string> models, feature_csvs;
    auto* transfer = app.add_subcommand("transfer", "score every model on every cohort's validation split");
    add_common(transfer, common);
    transfer->add_option("--models", models, "model JSON files")->required();
    transfer->add_option("--features", feature_csvs, "feature CSVs, one per cohort")->required();

    auto* simulate = app.add_subcommand("simulate", "write seeded synthetic cohorts and optional phantoms");
    add_common(simulate, common);

    std::string run_dir;
    std::optional<double> alpha;
    auto* report = app.add_subcommand("report", "summarise a transfer run directory");
    report->add_option("--config", common.config_path, "JSON pipeline config")->check(CLI::ExistingFile);
    report->add_option("run_dir", run_dir, "directory holding transfer outputs")->required();
    report->add_option("--alpha", alpha, "significance level (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*extract) {
            PipelineConfig config = resolve(common);
            if (!manifest.empty()) config.manifest = manifest;
            cmd_extract(config);
        } else if (*build) {
            const PipelineConfig config = resolve(common);
            const std::string cohort = name.empty() ? fs::path(features).stem().string() : name;
            const BiomarkerModel model = cmd_build(config, features, cohort);
            std::printf("%s: %zu features selected at lambda %.6g\n", cohort.c_str(), model.features.size(),
                        model.lambda);
        } else if (*transfer) {
            const PipelineConfig config = resolve(common);
            std::vector<fs::path> m(models.begin(), models.end()), f(feature_csvs.begin(), feature_csvs.end());
            cmd_transfer(config, m, f);
        } else if (*simulate) {
            cmd_simulate(resolve(common));
        } else if (*report) {
            const PipelineConfig config = resolve(common);
            std::cout << cmd_report(run_dir, alpha.value_or(config.alpha));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
