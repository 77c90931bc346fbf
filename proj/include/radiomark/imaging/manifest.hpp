#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "radiomark/imaging/volume.hpp"

namespace radiomark {

struct SequencePaths {
    std::filesystem::path volume;
    std::filesystem::path mask;
};

/// One manifest entry; images are loaded on demand by load_study.
struct StudyEntry {
    std::string id;
    std::string visit_time;
    int label = 0;
    std::map<std::string, SequencePaths> sequences;
};

/// Parses a cohort manifest: a JSON array of
/// `{id, visit_time, label, sequences: {name: {volume, mask}}}`.
/// Relative image paths resolve against the manifest's directory.
std::vector<StudyEntry> read_manifest(const std::filesystem::path& path);

void write_manifest(const std::vector<StudyEntry>& entries, const std::filesystem::path& path);

Study load_study(const StudyEntry& entry);

}  // namespace radiomark
