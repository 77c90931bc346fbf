#include "radiomark/pipeline/commands.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "radiomark/error.hpp"
#include "radiomark/evaluation/split.hpp"
#include "radiomark/imaging/io.hpp"
#include "radiomark/imaging/manifest.hpp"
#include "radiomark/random.hpp"
#include "radiomark/synth/cohorts.hpp"
#include "radiomark/synth/phantom.hpp"

namespace radiomark {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path prepare_out(const PipelineConfig& config) {
    const fs::path out(config.out);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create output directory '" + out.string() + "': " + ec.message());
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
}

void echo_config(const fs::path& out, const std::string& command, const PipelineConfig& config) {
    write_text(out / (command + "_config.json"), json(config).dump(2) + "\n");
}

std::uint64_t require_seed(const PipelineConfig& config, const char* command) {
    if (!config.seed) throw ConfigError(std::string(command) + " requires --seed");
    return *config.seed;
}

std::vector<std::string> split_csv(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

std::vector<std::vector<std::string>> read_csv_rows(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line != "\r") rows.push_back(split_csv(line));
    if (rows.empty()) throw ConfigError("'" + path.string() + "' is empty");
    return rows;
}

std::string fixed(double v, const char* fmt = "%.4f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

void cmd_extract(const PipelineConfig& config) {
    config.validate();
    if (config.manifest.empty()) throw ConfigError("extract requires a manifest path");
    const auto entries = read_manifest(config.manifest);
    const fs::path out = prepare_out(config);
    echo_config(out, "extract", config);

    std::set<std::string> sequences;
    for (const auto& e : entries)
        for (const auto& [name, _] : e.sequences) sequences.insert(name);
    std::vector<std::string> columns;
    const auto per_sequence = config.catalog.sequence_feature_names();
    for (const auto& s : sequences)
        for (const auto& n : per_sequence) columns.push_back(s + "__" + n);

    FeatureTable table(columns);
    std::ostringstream log;
    std::optional<ErrorKind> first_error;
    std::size_t failures = 0;
    for (const auto& entry : entries) {
        try {
            const Study study = load_study(entry);
            if (study.sequences.size() != sequences.size())
                throw ConfigError("study '" + entry.id + "' does not provide every sequence of the manifest");
            table.add_row(study.id, study.visit_time, study.label, extract_study(study, config.catalog));
        } catch (const Error& e) {
            log << entry.id << ": " << e.what() << '\n';
            if (!first_error) first_error = e.kind();
            ++failures;
        }
    }
    table.write_csv(out / "features.csv");
    if (failures) {
        write_text(out / "extract_errors.log", log.str());
        throw Error(*first_error, std::to_string(failures) + " of " + std::to_string(entries.size()) +
                                      " studies failed; see " + (out / "extract_errors.log").string());
    }
}

BiomarkerModel cmd_build(const PipelineConfig& config, const fs::path& features_csv, const std::string& cohort_id) {
    config.validate();
    PipelineConfig effective = config;
    effective.selection.seed = require_seed(config, "build");
    const FeatureTable table = FeatureTable::read_csv(features_csv);
    const CohortSplit split = split_by_time(table, config.split_ratio);
    const FeatureTable train = table.select_ids(split.train_ids);
    const fs::path out = prepare_out(config);
    echo_config(out, "build", effective);

    const BuildResult result = build_biomarker(train, effective.selection, cohort_id);
    result.model.write_json(out / "model.json");

    std::ofstream curve(out / "cv_curve.csv");
    if (!curve) throw IoError("cannot write cv_curve.csv");
    curve << "lambda,mean_loss,se_loss,chosen\n";
    for (std::size_t k = 0; k < result.curve.lambdas.size(); ++k)
        curve << format_double(result.curve.lambdas[k]) << ',' << format_double(result.curve.mean_loss[k]) << ','
              << format_double(result.curve.se_loss[k]) << ',' << (k == result.curve.chosen_index ? 1 : 0) << '\n';
    return result.model;
}

TransferMatrix cmd_transfer(const PipelineConfig& config, const std::vector<fs::path>& models,
                            const std::vector<fs::path>& features_csvs) {
    config.validate();
    if (models.empty() || models.size() != features_csvs.size())
        throw ConfigError("transfer needs the same number of models and feature tables");
    std::vector<BiomarkerModel> loaded;
    std::vector<std::string> model_names, cohort_names;
    for (const auto& m : models) {
        loaded.push_back(BiomarkerModel::read_json(m));
        model_names.push_back(loaded.back().provenance.cohort_id);
    }
    std::vector<FeatureTable> validation;
    for (const auto& csv : features_csvs) {
        const FeatureTable table = FeatureTable::read_csv(csv);
        const CohortSplit split = split_by_time(table, config.split_ratio);
        validation.push_back(table.select_ids(split.validation_ids));
        cohort_names.push_back(csv.stem().string());
    }
    const fs::path out = prepare_out(config);
    echo_config(out, "transfer", config);
    TransferMatrix tm = transfer_matrix(loaded, model_names, validation, cohort_names);
    tm.write_auc_csv(out / "auc_matrix.csv");
    tm.write_delong_csv(out / "delong.csv", config.alpha);
    tm.write_roc_csv(out / "roc_points.csv");
    return tm;
}

void cmd_simulate(const PipelineConfig& config) {
    config.validate();
    const std::uint64_t seed = require_seed(config, "simulate");
    std::vector<SyntheticCohortSpec> specs = config.simulation.cohorts;
    if (specs.empty()) {
        specs = default_experiment(seed, config.simulation.mixed_hard_fraction);
    } else {
        for (std::size_t k = 0; k < specs.size(); ++k) specs[k].seed = derive_seed(seed, k + 1);
    }
    const auto tables = make_cohorts(specs);
    const fs::path out = prepare_out(config);
    echo_config(out, "simulate", config);
    write_text(out / "simulate_spec.json", json{{"seed", seed}, {"cohorts", specs}}.dump(2) + "\n");
    for (std::size_t k = 0; k < specs.size(); ++k) tables[k].write_csv(out / (specs[k].name + ".csv"));

    if (!config.simulation.phantoms || config.simulation.phantoms->count == 0) return;
    const PhantomBatch& batch = *config.simulation.phantoms;
    const fs::path dir = out / "phantoms";
    fs::create_directories(dir);
    std::vector<StudyEntry> entries;
    const VisitTime start = VisitTime::parse("2018-01-01");
    for (std::size_t i = 0; i < batch.count; ++i) {
        char id[32];
        std::snprintf(id, sizeof id, "phantom-%03zu", i + 1);
        char date[16];
        std::snprintf(date, sizeof date, "%04d-%02d-%02d", start.year, start.month,
                      static_cast<int>(1 + i % 28));
        StudyEntry entry{id, date, static_cast<int>(i % 2), {}};
        for (std::size_t s = 0; s < batch.sequences.size(); ++s) {
            PhantomSpec spec = batch.spec;
            spec.positive = entry.label == 1;
            spec.seed = derive_seed(seed, 1000 + i, s);
            const Phantom ph = make_phantom(spec);
            const std::string stem = std::string(id) + "_" + batch.sequences[s];
            write_raw(ph.volume, dir / (stem + "_image"));
            write_raw(ph.mask, ph.volume.spacing(), dir / (stem + "_mask"));
            entry.sequences[batch.sequences[s]] = {dir / (stem + "_image.f32"), dir / (stem + "_mask.f32")};
        }
        entries.push_back(std::move(entry));
    }
    write_manifest(entries, dir / "manifest.json");
}

std::string cmd_report(const fs::path& run_dir, double alpha) {
    const fs::path auc_path = run_dir / "auc_matrix.csv";
    const fs::path delong_path = run_dir / "delong.csv";
    if (!fs::exists(auc_path) || !fs::exists(delong_path))
        throw IoError("'" + run_dir.string() + "' holds no transfer results (auc_matrix.csv, delong.csv)");
    const auto auc_rows = read_csv_rows(auc_path);
    const auto delong_rows = read_csv_rows(delong_path);
    const auto& header = auc_rows.front();

    std::ostringstream text;
    text << "Cross-cohort biomarker transfer\n";
    text << "===============================\n\n";
    text << "Validation AUC (rows: biomarker source cohort, columns: validation cohort)\n\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-16s", "biomarker");
    text << line;
    for (std::size_t c = 1; c < header.size(); ++c) {
        std::snprintf(line, sizeof line, "%12s", header[c].c_str());
        text << line;
    }
    std::snprintf(line, sizeof line, "%16s", "mean_off_diag");
    text << line << '\n';
    for (std::size_t r = 1; r < auc_rows.size(); ++r) {
        const auto& row = auc_rows[r];
        if (row.size() != header.size()) throw ConfigError("auc_matrix.csv row " + std::to_string(r) + " is ragged");
        std::snprintf(line, sizeof line, "%-16s", row[0].c_str());
        text << line;
        double off = 0;
        std::size_t off_n = 0;
        for (std::size_t c = 1; c < row.size(); ++c) {
            const double v = std::stod(row[c]);
            std::snprintf(line, sizeof line, "%12.4f", v);
            text << line;
            if (header[c] != row[0]) {
                off += v;
                ++off_n;
            }
        }
        if (off_n && off_n < header.size() - 1) {
            std::snprintf(line, sizeof line, "%16.4f", off / static_cast<double>(off_n));
            text << line;
        } else {
            std::snprintf(line, sizeof line, "%16s", "-");
            text << line;
        }
        text << '\n';
    }

    text << "\nPaired DeLong tests per validation cohort (** = p < " << fixed(alpha, "%g") << ")\n\n";
    for (std::size_t r = 1; r < delong_rows.size(); ++r) {
        const auto& row = delong_rows[r];
        if (row.size() != 10) throw ConfigError("delong.csv row " + std::to_string(r) + " is malformed");
        const double diff = std::stod(row[5]), z = std::stod(row[7]), p = std::stod(row[8]);
        const std::string flag = row[9] == "degenerate" ? "no detectable difference" : p < alpha ? "**" : "ns";
        std::snprintf(line, sizeof line, "%-12s %-12s vs %-12s  dAUC %+.4f  z %+8.3f  p %.4g  %s\n", row[0].c_str(),
                      row[1].c_str(), row[2].c_str(), diff, z, p, flag.c_str());
        text << line;
    }
    const std::string summary = text.str();
    write_text(run_dir / "summary.txt", summary);
    return summary;
}

}  // namespace radiomark
