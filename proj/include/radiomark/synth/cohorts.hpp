#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radiomark/features/feature_table.hpp"

namespace radiomark {

/// Feature-space population with a controllable hard-sample stratum.
///
/// Each patient gets a balanced latent class z, a margin of +/-delta along
/// the unit informative direction (+/-delta/4 for hard samples), i.i.d.
/// N(0, 1) noise in every feature, and, for easy samples only, a nuisance
/// shift of +/-nuisance_shift/2 orthogonal to the informative direction.
/// Labels are z flipped with probability label_noise; the nuisance sign
/// follows the recorded label, so inside a cohort it also explains label
/// noise while carrying nothing the other cohorts share.
struct SyntheticCohortSpec {
    std::string name = "cohort";
    std::size_t n = 100;
    std::size_t p = 40;
    std::vector<double> informative;     // length p, shared across cohorts
    std::vector<double> nuisance_shift;  // length p, orthogonal to informative
    double delta = 5.0;
    double hard_fraction = 0.3;
    double label_noise = 0.1;
    std::uint64_t seed = 0;
    std::string start_date = "2016-01-01";

    void validate() const;
};

void to_json(nlohmann::json& j, const SyntheticCohortSpec& s);
void from_json(const nlohmann::json& j, SyntheticCohortSpec& s);

/// Generates one cohort; feature columns are `feature_000`..., visit times
/// increase by one day per patient from start_date.
FeatureTable make_cohort(const SyntheticCohortSpec& spec);

/// Generates the cohorts of an experiment after checking they share the
/// informative direction and have distinct nuisance shifts.
std::vector<FeatureTable> make_cohorts(const std::vector<SyntheticCohortSpec>& specs);

/// Three cohorts mirroring the reference study sizes: a hard-sample cohort
/// of 51 (h = 1) and mixed cohorts of 574 and 204 (h = 0.3 by default).
/// Cohort k is seeded with derive_seed(seed, k + 1).
std::vector<SyntheticCohortSpec> default_experiment(std::uint64_t seed, double mixed_hard_fraction = 0.3);

/// Projection of every row on the unit informative direction, used as a
/// population-optimal reference classifier.
std::vector<double> oracle_scores(const SyntheticCohortSpec& spec, const FeatureTable& table);

}  // namespace radiomark
