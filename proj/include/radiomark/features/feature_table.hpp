#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "radiomark/features/feature_vector.hpp"
#include "radiomark/imaging/volume.hpp"

namespace radiomark {

/// Patients x features, with labels and visit times. Row-major values.
class FeatureTable {
public:
    FeatureTable() = default;
    explicit FeatureTable(std::vector<std::string> feature_names);

    /// Appends a patient; `values` must follow feature_names().
    void add_row(std::string id, VisitTime visit, int label, std::vector<double> values);
    /// Appends a patient from a named vector; names must match exactly.
    void add_row(std::string id, VisitTime visit, int label, const FeatureVector& features);

    std::size_t rows() const noexcept { return ids_.size(); }
    std::size_t cols() const noexcept { return names_.size(); }
    const std::vector<std::string>& feature_names() const noexcept { return names_; }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::vector<VisitTime>& visit_times() const noexcept { return visits_; }
    const std::vector<int>& labels() const noexcept { return labels_; }

    double value(std::size_t row, std::size_t col) const { return values_[row * names_.size() + col]; }
    double& value(std::size_t row, std::size_t col) { return values_[row * names_.size() + col]; }
    /// Column index of `name`; throws MissingFeatureError.
    std::size_t column(const std::string& name) const;
    std::vector<double> column_values(std::size_t col) const;

    /// Rows in the given order (by row index).
    FeatureTable select_rows(const std::vector<std::size_t>& rows) const;
    /// Rows whose id is listed, in list order; throws ConfigError on unknown ids.
    FeatureTable select_ids(const std::vector<std::string>& ids) const;

    /// CSV with header `id,visit_time,label,<features...>`; values printed
    /// with 17 significant digits.
    void write_csv(const std::filesystem::path& path) const;
    static FeatureTable read_csv(const std::filesystem::path& path);

private:
    std::vector<std::string> names_;
    std::vector<std::string> ids_;
    std::vector<VisitTime> visits_;
    std::vector<int> labels_;
    std::vector<double> values_;
};

/// "%.17g" rendering used by every CSV writer.
std::string format_double(double v);

}  // namespace radiomark
