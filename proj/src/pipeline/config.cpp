#include "radiomark/pipeline/config.hpp"

#include <fstream>

#include "radiomark/error.hpp"

namespace radiomark {

using nlohmann::json;

void PipelineConfig::validate() const {
    catalog.validate();
    selection.validate();
    if (!(split_ratio > 0 && split_ratio < 1)) throw ConfigError("split_ratio must lie in (0, 1)");
    if (!(alpha > 0 && alpha < 1)) throw ConfigError("alpha must lie in (0, 1)");
    if (out.empty()) throw ConfigError("output directory must be set");
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path.string() + "'");
    try {
        return json::parse(in).get<PipelineConfig>();
    } catch (const json::exception& e) {
        throw ConfigError("config '" + path.string() + "': " + e.what());
    }
}

void to_json(json& j, const SimulationConfig& c) {
    j = json::object();
    j["cohorts"] = c.cohorts;
    j["mixed_hard_fraction"] = c.mixed_hard_fraction;
    if (c.phantoms)
        j["phantoms"] = {{"count", c.phantoms->count}, {"sequences", c.phantoms->sequences}, {"spec", c.phantoms->spec}};
    else
        j["phantoms"] = nullptr;
}

void from_json(const json& j, SimulationConfig& c) {
    c = SimulationConfig{};
    if (j.contains("cohorts")) j.at("cohorts").get_to(c.cohorts);
    if (j.contains("mixed_hard_fraction")) j.at("mixed_hard_fraction").get_to(c.mixed_hard_fraction);
    if (j.contains("phantoms") && !j.at("phantoms").is_null()) {
        const auto& p = j.at("phantoms");
        PhantomBatch batch;
        if (p.contains("count")) p.at("count").get_to(batch.count);
        if (p.contains("sequences")) p.at("sequences").get_to(batch.sequences);
        if (p.contains("spec")) p.at("spec").get_to(batch.spec);
        if (batch.sequences.empty()) throw ConfigError("phantoms need at least one sequence name");
        c.phantoms = batch;
    }
}

void to_json(json& j, const PipelineConfig& c) {
    j = json{{"manifest", c.manifest},   {"simulation", c.simulation}, {"catalog", c.catalog},
             {"selection", c.selection}, {"split_ratio", c.split_ratio}, {"alpha", c.alpha},
             {"out", c.out}};
    if (c.seed)
        j["seed"] = *c.seed;
    else
        j["seed"] = nullptr;
}

void from_json(const json& j, PipelineConfig& c) {
    c = PipelineConfig{};
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (j.contains("manifest")) j.at("manifest").get_to(c.manifest);
    if (j.contains("simulation")) j.at("simulation").get_to(c.simulation);
    if (j.contains("catalog")) j.at("catalog").get_to(c.catalog);
    if (j.contains("selection")) j.at("selection").get_to(c.selection);
    if (j.contains("split_ratio")) j.at("split_ratio").get_to(c.split_ratio);
    if (j.contains("alpha")) j.at("alpha").get_to(c.alpha);
    if (j.contains("out")) j.at("out").get_to(c.out);
    if (j.contains("seed") && !j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
    c.validate();
}

}  // namespace radiomark
