#include "radiomark/features/feature_table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "radiomark/error.hpp"

namespace radiomark {

namespace {

std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF files
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line) {
    double v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(path.string() + ":" + std::to_string(line) + ": cannot parse number '" + s + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

FeatureTable::FeatureTable(std::vector<std::string> feature_names) : names_(std::move(feature_names)) {}

void FeatureTable::add_row(std::string id, VisitTime visit, int label, std::vector<double> values) {
    if (values.size() != names_.size())
        throw ConfigError("row '" + id + "' has " + std::to_string(values.size()) + " values, table has " +
                          std::to_string(names_.size()) + " columns");
    if (label != 0 && label != 1) throw ConfigError("row '" + id + "' label must be 0 or 1");
    ids_.push_back(std::move(id));
    visits_.push_back(std::move(visit));
    labels_.push_back(label);
    values_.insert(values_.end(), values.begin(), values.end());
}

void FeatureTable::add_row(std::string id, VisitTime visit, int label, const FeatureVector& features) {
    if (features.size() != names_.size()) throw ConfigError("row '" + id + "' does not match the table catalog");
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (features[i].first != names_[i])
            throw ConfigError("row '" + id + "' column " + std::to_string(i) + " is '" + features[i].first +
                              "', expected '" + names_[i] + "'");
    add_row(std::move(id), std::move(visit), label, features.values());
}

std::size_t FeatureTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    throw MissingFeatureError("feature column '" + name + "' not present");
}

std::vector<double> FeatureTable::column_values(std::size_t col) const {
    std::vector<double> out(rows());
    for (std::size_t r = 0; r < rows(); ++r) out[r] = value(r, col);
    return out;
}

FeatureTable FeatureTable::select_rows(const std::vector<std::size_t>& rows) const {
    FeatureTable out(names_);
    for (std::size_t r : rows)
        out.add_row(ids_[r], visits_[r], labels_[r],
                    std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(r * cols()),
                                        values_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols())));
    return out;
}

FeatureTable FeatureTable::select_ids(const std::vector<std::string>& ids) const {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < ids_.size(); ++r) index.emplace(ids_[r], r);
    std::vector<std::size_t> rows;
    rows.reserve(ids.size());
    for (const auto& id : ids) {
        const auto it = index.find(id);
        if (it == index.end()) throw ConfigError("unknown patient id '" + id + "'");
        rows.push_back(it->second);
    }
    return select_rows(rows);
}

void FeatureTable::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << "id,visit_time,label";
    for (const auto& n : names_) out << ',' << n;
    out << '\n';
    for (std::size_t r = 0; r < rows(); ++r) {
        out << ids_[r] << ',' << visits_[r].text << ',' << labels_[r];
        for (std::size_t c = 0; c < cols(); ++c) out << ',' << format_double(value(r, c));
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

FeatureTable FeatureTable::read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open feature table '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("feature table '" + path.string() + "' is empty");
    auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "id" || header[1] != "visit_time" || header[2] != "label")
        throw ConfigError("feature table '" + path.string() + "' must start with id,visit_time,label");
    FeatureTable table(std::vector<std::string>(header.begin() + 3, header.end()));
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
        std::vector<double> values(fields.size() - 3);
        for (std::size_t i = 3; i < fields.size(); ++i) {
            values[i - 3] = parse_double(fields[i], path, lineno);
            if (!std::isfinite(values[i - 3]))
                throw NonFiniteInputError(path.string() + ":" + std::to_string(lineno) + ": non-finite value");
        }
        const double label = parse_double(fields[2], path, lineno);
        table.add_row(fields[0], VisitTime::parse(fields[1]), static_cast<int>(label), std::move(values));
    }
    return table;
}

}  // namespace radiomark
