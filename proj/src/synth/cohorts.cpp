#include "radiomark/synth/cohorts.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "radiomark/error.hpp"
#include "radiomark/random.hpp"

namespace radiomark {

using nlohmann::json;

namespace {

constexpr std::uint64_t kClassStream = 1;
constexpr std::uint64_t kPatientStream = 2;

double norm(const std::vector<double>& v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

std::string iso_date_plus(const VisitTime& start, long days) {
    using namespace std::chrono;
    const sys_days base = year_month_day{year{start.year}, month{static_cast<unsigned>(start.month)},
                                         day{static_cast<unsigned>(start.day)}};
    const year_month_day ymd{base + std::chrono::days{days}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()));
    return buf;
}

}  // namespace

void SyntheticCohortSpec::validate() const {
    if (n < 4) throw ConfigError("cohort '" + name + "' needs at least 4 patients");
    if (p == 0) throw ConfigError("cohort '" + name + "' needs at least one feature");
    if (informative.size() != p || nuisance_shift.size() != p)
        throw ConfigError("cohort '" + name + "': informative and nuisance_shift must have p entries");
    const double wn = norm(informative);
    if (!(wn > 0)) throw ConfigError("cohort '" + name + "': informative direction is zero");
    const double dot = std::inner_product(informative.begin(), informative.end(), nuisance_shift.begin(), 0.0);
    if (std::fabs(dot) > 1e-9 * wn * std::max(1.0, norm(nuisance_shift)))
        throw ConfigError("cohort '" + name + "': nuisance shift must be orthogonal to the informative direction");
    if (!(delta >= 0)) throw ConfigError("cohort '" + name + "': delta must be nonnegative");
    if (!(hard_fraction >= 0 && hard_fraction <= 1)) throw ConfigError("hard_fraction must lie in [0, 1]");
    if (!(label_noise >= 0 && label_noise < 0.5)) throw ConfigError("label_noise must lie in [0, 0.5)");
    if (hard_fraction == 1.0 && n / 2 < 4)
        throw ConfigError("cohort '" + name + "': an all-hard cohort needs at least 4 patients per class");
    VisitTime::parse(start_date);
}

void to_json(json& j, const SyntheticCohortSpec& s) {
    j = json{{"name", s.name},
             {"n", s.n},
             {"p", s.p},
             {"informative", s.informative},
             {"nuisance_shift", s.nuisance_shift},
             {"delta", s.delta},
             {"hard_fraction", s.hard_fraction},
             {"label_noise", s.label_noise},
             {"seed", s.seed},
             {"start_date", s.start_date}};
}

void from_json(const json& j, SyntheticCohortSpec& s) {
    s = SyntheticCohortSpec{};
    j.at("name").get_to(s.name);
    j.at("n").get_to(s.n);
    j.at("p").get_to(s.p);
    j.at("informative").get_to(s.informative);
    j.at("nuisance_shift").get_to(s.nuisance_shift);
    if (j.contains("delta")) j.at("delta").get_to(s.delta);
    if (j.contains("hard_fraction")) j.at("hard_fraction").get_to(s.hard_fraction);
    if (j.contains("label_noise")) j.at("label_noise").get_to(s.label_noise);
    if (j.contains("seed")) j.at("seed").get_to(s.seed);
    if (j.contains("start_date")) j.at("start_date").get_to(s.start_date);
    s.validate();
}

FeatureTable make_cohort(const SyntheticCohortSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n, p = spec.p;
    const double wn = norm(spec.informative);

    // Balanced latent classes: the n/2 patients with the smallest keys are positive.
    std::vector<std::uint64_t> keys(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = derive_seed(spec.seed, kClassStream, i);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<int> latent(n, 0);
    for (std::size_t k = 0; k < n / 2; ++k) latent[order[k]] = 1;

    std::vector<std::string> names(p);
    for (std::size_t j = 0; j < p; ++j) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "feature_%03zu", j);
        names[j] = buf;
    }
    std::vector<std::vector<double>> rows(n, std::vector<double>(p));
    std::vector<int> labels(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        Rng rng(derive_seed(spec.seed, kPatientStream, i));
        const bool hard = rng.uniform() < spec.hard_fraction;
        const bool flip = rng.uniform() < spec.label_noise;
        const double sign = latent[i] == 1 ? 1.0 : -1.0;
        const double margin = sign * (hard ? spec.delta / 4 : spec.delta);
        labels[i] = flip ? 1 - latent[i] : latent[i];
        // Nuisance follows the recorded label, so in-cohort it also explains label noise.
        const double recorded = labels[i] == 1 ? 1.0 : -1.0;
        auto& x = rows[i];
        for (std::size_t j = 0; j < p; ++j) {
            x[j] = margin * spec.informative[j] / wn + rng.normal();
            if (!hard) x[j] += 0.5 * recorded * spec.nuisance_shift[j];
        }
    }

    FeatureTable table(names);
    const VisitTime start = VisitTime::parse(spec.start_date);
    const int width = n >= 10000 ? 5 : 4;
    for (std::size_t i = 0; i < n; ++i) {
        char id[64];
        std::snprintf(id, sizeof id, "%s-%0*zu", spec.name.c_str(), width, i + 1);
        table.add_row(id, VisitTime::parse(iso_date_plus(start, static_cast<long>(i))), labels[i], std::move(rows[i]));
    }
    return table;
}

std::vector<FeatureTable> make_cohorts(const std::vector<SyntheticCohortSpec>& specs) {
    for (std::size_t a = 0; a < specs.size(); ++a) {
        specs[a].validate();
        for (std::size_t b = a + 1; b < specs.size(); ++b) {
            if (specs[a].informative != specs[b].informative)
                throw ConfigError("cohorts '" + specs[a].name + "' and '" + specs[b].name +
                                  "' must share the informative direction");
            if (specs[a].nuisance_shift == specs[b].nuisance_shift)
                throw ConfigError("cohorts '" + specs[a].name + "' and '" + specs[b].name +
                                  "' must have distinct nuisance shifts");
            if (specs[a].name == specs[b].name) throw ConfigError("cohort names must be distinct");
        }
    }
    std::vector<FeatureTable> out;
    out.reserve(specs.size());
    for (const auto& s : specs) out.push_back(make_cohort(s));
    return out;
}

std::vector<SyntheticCohortSpec> default_experiment(std::uint64_t seed, double mixed_hard_fraction) {
    constexpr std::size_t p = 40;
    std::vector<double> informative(p, 0.0);
    informative[0] = 1.0;

    auto shift = [&](std::initializer_list<std::pair<std::size_t, double>> entries) {
        std::vector<double> v(p, 0.0);
        for (const auto& [j, value] : entries) v[j] = value;
        return v;
    };
    const struct {
        const char* name;
        std::size_t n;
        double hard;
        std::vector<double> nuisance;
    } cohorts[3] = {
        {"hard", 51, 1.0, shift({{1, 6.0}, {2, -6.0}})},
        {"mixed_a", 574, mixed_hard_fraction, shift({{3, 6.0}, {4, 6.0}, {5, -6.0}})},
        {"mixed_b", 204, mixed_hard_fraction, shift({{3, -6.0}, {4, -6.0}, {6, 6.0}})},
    };
    std::vector<SyntheticCohortSpec> specs;
    for (std::size_t k = 0; k < 3; ++k) {
        SyntheticCohortSpec s;
        s.name = cohorts[k].name;
        s.n = cohorts[k].n;
        s.p = p;
        s.informative = informative;
        s.nuisance_shift = cohorts[k].nuisance;
        s.delta = 5.0;
        s.hard_fraction = cohorts[k].hard;
        s.label_noise = 0.1;
        s.seed = derive_seed(seed, k + 1);
        specs.push_back(std::move(s));
    }
    return specs;
}

std::vector<double> oracle_scores(const SyntheticCohortSpec& spec, const FeatureTable& table) {
    const double wn = norm(spec.informative);
    std::vector<double> out(table.rows(), 0.0);
    for (std::size_t j = 0; j < spec.p; ++j) {
        if (spec.informative[j] == 0) continue;
        const std::size_t c = table.column(table.feature_names()[j]);
        for (std::size_t r = 0; r < table.rows(); ++r) out[r] += table.value(r, c) * spec.informative[j] / wn;
    }
    return out;
}

}  // namespace radiomark
