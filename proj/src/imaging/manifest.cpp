#include "radiomark/imaging/manifest.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "radiomark/error.hpp"
#include "radiomark/imaging/io.hpp"

namespace radiomark {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<StudyEntry> read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("manifest '" + path.string() + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_array()) throw ConfigError("manifest must be a JSON array of studies");
    if (doc.empty()) throw ConfigError("manifest '" + path.string() + "' lists no studies");

    const fs::path base = path.parent_path();
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

    std::vector<StudyEntry> entries;
    for (const auto& item : doc) {
        try {
            StudyEntry e;
            e.id = item.at("id").get<std::string>();
            e.visit_time = item.at("visit_time").get<std::string>();
            e.label = item.at("label").get<int>();
            if (e.label != 0 && e.label != 1) throw ConfigError("study '" + e.id + "': label must be 0 or 1");
            VisitTime::parse(e.visit_time);
            for (const auto& [name, seq] : item.at("sequences").items())
                e.sequences[name] = {resolve(seq.at("volume").get<std::string>()),
                                     resolve(seq.at("mask").get<std::string>())};
            if (e.sequences.empty()) throw ConfigError("study '" + e.id + "' lists no sequences");
            entries.push_back(std::move(e));
        } catch (const json::exception& ex) {
            throw ConfigError("manifest entry malformed: " + std::string(ex.what()));
        }
    }
    return entries;
}

void write_manifest(const std::vector<StudyEntry>& entries, const fs::path& path) {
    json doc = json::array();
    const fs::path base = path.parent_path();
    for (const auto& e : entries) {
        json seqs = json::object();
        for (const auto& [name, p] : e.sequences)
            seqs[name] = {{"volume", p.volume.lexically_relative(base).generic_string()},
                          {"mask", p.mask.lexically_relative(base).generic_string()}};
        doc.push_back({{"id", e.id}, {"visit_time", e.visit_time}, {"label", e.label}, {"sequences", seqs}});
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write manifest '" + path.string() + "'");
    out << doc.dump(2) << '\n';
}

Study load_study(const StudyEntry& entry) {
    Study s;
    s.id = entry.id;
    s.visit_time = VisitTime::parse(entry.visit_time);
    s.label = entry.label;
    for (const auto& [name, paths] : entry.sequences)
        s.sequences[name] = SequenceImage{load_volume(paths.volume), load_mask(paths.mask)};
    s.validate();
    return s;
}

}  // namespace radiomark
