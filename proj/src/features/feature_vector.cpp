#include "radiomark/features/feature_vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace radiomark {

void FeatureVector::append(const FeatureVector& block, const std::string& prefix) {
    entries_.reserve(entries_.size() + block.size());
    for (const auto& [name, value] : block.entries_) entries_.emplace_back(prefix + name, value);
}

void FeatureVector::sort_by_name() {
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
}

std::optional<double> FeatureVector::find(const std::string& name) const {
    for (const auto& [n, v] : entries_)
        if (n == name) return v;
    return std::nullopt;
}

double FeatureVector::at(const std::string& name) const {
    if (auto v = find(name)) return *v;
    throw std::out_of_range("no feature named '" + name + "'");
}

std::vector<std::string> FeatureVector::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
}

std::vector<double> FeatureVector::values() const {
    std::vector<double> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.second);
    return out;
}

}  // namespace radiomark
