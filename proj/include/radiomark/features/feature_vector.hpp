#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace radiomark {

/// Ordered (name, value) feature row.
class FeatureVector {
public:
    using Entry = std::pair<std::string, double>;

    FeatureVector() = default;
    explicit FeatureVector(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    void add(std::string name, double value) { entries_.emplace_back(std::move(name), value); }
    /// Appends every entry of `block`, prefixing names with `prefix`.
    void append(const FeatureVector& block, const std::string& prefix = {});
    /// Sorts by name; used to canonicalise a class block.
    void sort_by_name();

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    const Entry& operator[](std::size_t i) const { return entries_[i]; }

    std::optional<double> find(const std::string& name) const;
    /// Throws std::out_of_range on a missing name.
    double at(const std::string& name) const;

    std::vector<std::string> names() const;
    std::vector<double> values() const;

    bool operator==(const FeatureVector&) const = default;

private:
    std::vector<Entry> entries_;
};

}  // namespace radiomark
