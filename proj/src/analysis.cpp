#include "dami/core/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "dami/core/linalg.hpp"
#include "dami/core/random.hpp"
#include "dami/core/transform.hpp"

namespace dami {

double coefficient_of_variation(const std::vector<double>& values) {
    if (values.size() < 2)
        fail(ErrorCode::InvalidArgument, "coefficient of variation needs at least two values");
    bool all_equal = true;
    for (double v : values)
        if (v != values.front()) {
            all_equal = false;
            break;
        }
    if (all_equal) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    if (std::abs(mean) < 1e-300) return std::numeric_limits<double>::infinity();
    return std::sqrt(var) / std::abs(mean);
}

const char* transform_family_name(TransformFamily family) {
    switch (family) {
        case TransformFamily::Translation: return "translation";
        case TransformFamily::Rotation: return "rotation";
        case TransformFamily::Scaling: return "scaling";
        case TransformFamily::SpatialAffine: return "affine";
        case TransformFamily::ChannelAffine: return "channel-affine";
        case TransformFamily::Dual: return "dual";
    }
    return "?";
}

std::vector<TransformFamily> all_transform_families() {
    return {TransformFamily::Translation,   TransformFamily::Rotation,
            TransformFamily::Scaling,       TransformFamily::SpatialAffine,
            TransformFamily::ChannelAffine, TransformFamily::Dual};
}

namespace {

std::pair<AffineMap, AffineMap> sample_family(TransformFamily family, int M, int N,
                                              std::uint64_t seed) {
    AffineMap sp = AffineMap::identity(M);
    AffineMap ch = AffineMap::identity(N);
    std::uint64_t s1 = Rng::derive(seed, 11);
    std::uint64_t s2 = Rng::derive(seed, 22);
    switch (family) {
        case TransformFamily::Translation: sp = sample_affine(M, s1, AffineFamily::Translation); break;
        case TransformFamily::Rotation: sp = sample_affine(M, s1, AffineFamily::Rotation); break;
        case TransformFamily::Scaling: sp = sample_affine(M, s1, AffineFamily::Scaling); break;
        case TransformFamily::SpatialAffine: sp = sample_affine(M, s1, AffineFamily::GeneralAffine); break;
        case TransformFamily::ChannelAffine: ch = sample_affine(N, s2, AffineFamily::GeneralAffine); break;
        case TransformFamily::Dual:
            sp = sample_affine(M, s1, AffineFamily::GeneralAffine);
            ch = sample_affine(N, s2, AffineFamily::GeneralAffine);
            break;
    }
    return {sp, ch};
}

}  // namespace

namespace {

// RFC-4180 quoting for fields that carry commas (kernel strings do).
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string InvarianceReport::to_csv(const std::string& header_comment) const {
    std::ostringstream os;
    if (!header_comment.empty()) {
        std::istringstream lines(header_comment);
        std::string line;
        while (std::getline(lines, line)) os << "# " << line << "\n";
    }
    os << "invariant";
    for (auto f : families) os << "," << transform_family_name(f);
    os << ",ALL\n";
    os.precision(12);
    for (std::size_t r = 0; r < row_names.size(); ++r) {
        os << csv_field(row_names[r]);
        for (double v : cv[r]) {
            os << ",";
            if (std::isnan(v))
                os << "missing";
            else if (std::isinf(v))
                os << "inf";
            else
                os << v;
        }
        os << "\n";
    }
    return os.str();
}

InvarianceReport invariance_report(const ObjectMN& obj, const std::vector<InvariantExpr>& exprs,
                                   const std::vector<std::string>& names,
                                   const InvarianceOptions& options) {
    if (names.size() != exprs.size())
        fail(ErrorCode::InvalidArgument, "one name per expression required");
    InvarianceReport report;
    report.row_names = names;
    report.families = all_transform_families();
    report.cv.assign(exprs.size(), std::vector<double>(report.families.size() + 1,
                                                       std::numeric_limits<double>::quiet_NaN()));

    // Values per expression per family; the original object contributes to
    // every family's pool and once to the ALL pool.
    std::vector<ObjectMN> originals{obj};
    FeatureMatrix base = evaluate_batch(exprs, originals, options.eval);

    std::vector<std::vector<double>> all_values(exprs.size());
    for (std::size_t e = 0; e < exprs.size(); ++e)
        if (base.status_at(0, e) == CellStatus::Ok) all_values[e].push_back(base.at(0, e));

    for (std::size_t fi = 0; fi < report.families.size(); ++fi) {
        TransformFamily family = report.families[fi];
        std::vector<ObjectMN> variants;
        variants.reserve(static_cast<std::size_t>(options.trials));
        for (int t = 0; t < options.trials; ++t) {
            auto [sp, ch] = sample_family(family, obj.space_dim(), obj.channel_dim(),
                                          Rng::derive(options.seed, fi + 1, static_cast<std::uint64_t>(t) + 1));
            variants.push_back(apply_dual(obj, sp, ch));
        }
        FeatureMatrix values = evaluate_batch(exprs, variants, options.eval);
        for (std::size_t e = 0; e < exprs.size(); ++e) {
            std::vector<double> pool;
            if (base.status_at(0, e) == CellStatus::Ok) pool.push_back(base.at(0, e));
            for (std::size_t r = 0; r < values.rows; ++r)
                if (values.status_at(r, e) == CellStatus::Ok) {
                    pool.push_back(values.at(r, e));
                    all_values[e].push_back(values.at(r, e));
                }
            if (pool.size() >= 2) report.cv[e][fi] = coefficient_of_variation(pool);
        }
    }
    for (std::size_t e = 0; e < exprs.size(); ++e)
        if (all_values[e].size() >= 2)
            report.cv[e].back() = coefficient_of_variation(all_values[e]);
    return report;
}

namespace {

std::vector<std::vector<std::size_t>> make_folds(const std::vector<int>& labels, int folds,
                                                 std::uint64_t seed, bool& stratified,
                                                 std::vector<std::string>& warnings) {
    std::map<int, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(i);

    stratified = true;
    for (const auto& [label, rows] : by_label)
        if (rows.size() < static_cast<std::size_t>(folds)) {
            stratified = false;
            warnings.push_back("class " + std::to_string(label) + " has fewer members than folds; "
                               "fold assignment degraded to unstratified");
            break;
        }

    Rng rng(Rng::derive(seed, 0xf01d5));
    auto shuffle = [&rng](std::vector<std::size_t>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(rng.next_u64() % i)]);
    };

    std::vector<std::vector<std::size_t>> fold_rows(static_cast<std::size_t>(folds));
    if (stratified) {
        std::size_t next = 0;
        for (auto& [label, rows] : by_label) {
            shuffle(rows);
            for (std::size_t i = 0; i < rows.size(); ++i)
                fold_rows[(next + i) % static_cast<std::size_t>(folds)].push_back(rows[i]);
            next = (next + rows.size()) % static_cast<std::size_t>(folds);
        }
    } else {
        std::vector<std::size_t> rows(labels.size());
        std::iota(rows.begin(), rows.end(), 0);
        shuffle(rows);
        for (std::size_t i = 0; i < rows.size(); ++i)
            fold_rows[i % static_cast<std::size_t>(folds)].push_back(rows[i]);
    }
    return fold_rows;
}

}  // namespace

KnnReport knn_crossval(const FeatureMatrix& features, const std::vector<int>& labels,
                       const KnnOptions& options) {
    if (labels.size() != features.rows)
        fail(ErrorCode::InvalidArgument, "one label per feature row required");
    if (options.folds < 2 || features.rows < static_cast<std::size_t>(options.folds))
        fail(ErrorCode::InvalidArgument, "need at least as many rows as folds");
    if (options.neighbors < 1) fail(ErrorCode::InvalidArgument, "neighbors must be >= 1");

    KnnReport report;

    // Columns with any non-finite entry cannot enter a distance; drop them.
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < features.cols; ++c) {
        bool ok = true;
        for (std::size_t r = 0; r < features.rows; ++r)
            if (!std::isfinite(features.at(r, c))) {
                ok = false;
                break;
            }
        if (ok)
            cols.push_back(c);
        else
            report.dropped_columns.push_back(c);
    }
    if (cols.empty()) fail(ErrorCode::Validation, "no finite feature columns left");

    auto fold_rows = make_folds(labels, options.folds, options.seed, report.stratified, report.warnings);

    for (const auto& test_rows : fold_rows) {
        std::vector<std::size_t> train_rows;
        for (const auto& other : fold_rows)
            if (&other != &test_rows) train_rows.insert(train_rows.end(), other.begin(), other.end());

        std::vector<double> mean(cols.size(), 0.0), stdev(cols.size(), 1.0);
        if (options.zscore) {
            for (std::size_t ci = 0; ci < cols.size(); ++ci) {
                double m = 0.0;
                for (auto r : train_rows) m += features.at(r, cols[ci]);
                m /= static_cast<double>(train_rows.size());
                double v = 0.0;
                for (auto r : train_rows) {
                    double d = features.at(r, cols[ci]) - m;
                    v += d * d;
                }
                v /= static_cast<double>(train_rows.size());
                mean[ci] = m;
                stdev[ci] = v > 0.0 ? std::sqrt(v) : 1.0;  // constant column contributes nothing
            }
        }
        auto scaled = [&](std::size_t row, std::size_t ci) {
            return (features.at(row, cols[ci]) - mean[ci]) / stdev[ci];
        };

        std::size_t correct = 0;
        for (auto t : test_rows) {
            // distances to all training rows
            std::vector<std::pair<double, std::size_t>> dist;
            dist.reserve(train_rows.size());
            for (auto tr : train_rows) {
                double d = 0.0;
                for (std::size_t ci = 0; ci < cols.size(); ++ci) {
                    double diff = scaled(t, ci) - scaled(tr, ci);
                    d += diff * diff;
                }
                dist.emplace_back(d, tr);
            }
            std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(options.neighbors), dist.size());
            std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
            std::map<int, std::size_t> votes;
            for (std::size_t i = 0; i < k; ++i) ++votes[labels[dist[i].second]];
            int best_label = labels[dist[0].second];
            std::size_t best_votes = 0;
            for (const auto& [label, count] : votes)
                if (count > best_votes) {
                    best_votes = count;
                    best_label = label;
                }
            if (best_label == labels[t]) ++correct;
        }
        report.fold_accuracy.push_back(test_rows.empty()
                                           ? 1.0
                                           : static_cast<double>(correct) / static_cast<double>(test_rows.size()));
    }
    double mean_acc = 0.0;
    for (double a : report.fold_accuracy) mean_acc += a;
    report.mean_accuracy = mean_acc / static_cast<double>(report.fold_accuracy.size());
    return report;
}

}  // namespace dami
