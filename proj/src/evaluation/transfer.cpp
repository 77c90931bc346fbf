#include "radiomark/evaluation/transfer.hpp"

#include <fstream>

#include "radiomark/error.hpp"

namespace radiomark {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

}  // namespace

double TransferMatrix::mean_off_diagonal(std::size_t model) const {
    double sum = 0;
    std::size_t count = 0;
    for (std::size_t c = 0; c < cohort_names.size(); ++c)
        if (c != model) {
            sum += auc[model][c];
            ++count;
        }
    return count ? sum / static_cast<double>(count) : 0.0;
}

void TransferMatrix::write_auc_csv(const std::filesystem::path& path) const {
    auto out = open_out(path);
    out << "model";
    for (const auto& c : cohort_names) out << ',' << c;
    out << '\n';
    for (std::size_t m = 0; m < model_names.size(); ++m) {
        out << model_names[m];
        for (double a : auc[m]) out << ',' << format_double(a);
        out << '\n';
    }
}

void TransferMatrix::write_delong_csv(const std::filesystem::path& path, double alpha) const {
    auto out = open_out(path);
    out << "cohort,model_a,model_b,auc_a,auc_b,difference,variance,z,p,significant\n";
    for (const auto& c : comparisons) {
        const auto& r = c.result;
        out << cohort_names[c.cohort] << ',' << model_names[c.model_a] << ',' << model_names[c.model_b] << ','
            << format_double(r.auc_a) << ',' << format_double(r.auc_b) << ',' << format_double(r.difference) << ','
            << format_double(r.variance) << ',' << format_double(r.z) << ',' << format_double(r.p) << ','
            << (r.degenerate ? "degenerate" : r.p < alpha ? "yes" : "no") << '\n';
    }
}

void TransferMatrix::write_roc_csv(const std::filesystem::path& path) const {
    auto out = open_out(path);
    out << "model,cohort,fpr,tpr\n";
    for (std::size_t m = 0; m < model_names.size(); ++m)
        for (std::size_t c = 0; c < cohort_names.size(); ++c)
            for (const auto& p : roc[m][c].points)
                out << model_names[m] << ',' << cohort_names[c] << ',' << format_double(p.fpr) << ','
                    << format_double(p.tpr) << '\n';
}

TransferMatrix transfer_matrix(const std::vector<BiomarkerModel>& models, const std::vector<std::string>& model_names,
                               const std::vector<FeatureTable>& cohorts, const std::vector<std::string>& cohort_names) {
    if (models.size() != model_names.size() || cohorts.size() != cohort_names.size())
        throw ConfigError("transfer matrix names do not match inputs");
    if (models.empty() || cohorts.empty()) throw ConfigError("transfer matrix needs models and cohorts");

    TransferMatrix tm;
    tm.model_names = model_names;
    tm.cohort_names = cohort_names;
    tm.auc.assign(models.size(), std::vector<double>(cohorts.size()));
    tm.roc.assign(models.size(), std::vector<RocAnalysis>(cohorts.size()));

    for (std::size_t c = 0; c < cohorts.size(); ++c) {
        std::vector<std::vector<double>> scores(models.size());
        for (std::size_t m = 0; m < models.size(); ++m) {
            try {
                scores[m] = score(models[m], cohorts[c]);
            } catch (const MissingFeatureError& e) {
                throw MissingFeatureError("model '" + model_names[m] + "' on cohort '" + cohort_names[c] +
                                          "': " + e.what());
            }
            auto roc = roc_analysis(scores[m], cohorts[c].labels());
            tm.auc[m][c] = roc.auc;
            tm.roc[m][c] = std::move(roc);
        }
        for (std::size_t a = 0; a < models.size(); ++a)
            for (std::size_t b = a + 1; b < models.size(); ++b)
                tm.comparisons.push_back({c, a, b, delong_paired(scores[a], scores[b], cohorts[c].labels())});
    }
    return tm;
}

}  // namespace radiomark
