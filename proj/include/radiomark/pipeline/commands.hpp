#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "radiomark/evaluation/transfer.hpp"
#include "radiomark/pipeline/config.hpp"

namespace radiomark {

/// Writes `features.csv` (one row per manifest study) and
/// `extract_config.json` to config.out. Failing studies are listed in
/// `extract_errors.log` and the command throws after writing the rows that
/// succeeded.
void cmd_extract(const PipelineConfig& config);

/// Trains a biomarker on the time-based training split of `features_csv`.
/// Writes `model.json`, `cv_curve.csv` and `build_config.json`. Requires
/// config.seed.
BiomarkerModel cmd_build(const PipelineConfig& config, const std::filesystem::path& features_csv,
                         const std::string& cohort_id);

/// Scores each model on every cohort's validation split. Writes
/// `auc_matrix.csv`, `delong.csv`, `roc_points.csv` and `transfer_config.json`.
TransferMatrix cmd_transfer(const PipelineConfig& config, const std::vector<std::filesystem::path>& models,
                            const std::vector<std::filesystem::path>& features_csvs);

/// Writes one `<cohort>.csv` per synthetic cohort, `simulate_spec.json` with
/// the effective cohort specs, and, when phantoms are configured,
/// `phantoms/` plus `phantoms/manifest.json`. Requires config.seed.
void cmd_simulate(const PipelineConfig& config);

/// Human-readable summary of a transfer run directory; also written to
/// `<run_dir>/summary.txt`.
std::string cmd_report(const std::filesystem::path& run_dir, double alpha = 0.05);

}  // namespace radiomark
