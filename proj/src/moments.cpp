#include "dami/core/moments.hpp"

#include <cmath>

#include "dami/core/linalg.hpp"

namespace dami {

namespace {

double ipow(double base, int exp) {
    double out = 1.0;
    while (exp > 0) {
        if (exp & 1) out *= base;
        base *= base;
        exp >>= 1;
    }
    return out;
}

std::vector<double> weighted_mean(const std::vector<double>& data, const std::vector<double>& w,
                                  std::size_t count, int dim, double total) {
    std::vector<KahanSum> acc(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < count; ++i)
        for (int a = 0; a < dim; ++a)
            acc[static_cast<std::size_t>(a)].add(w[i] * data[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)]);
    std::vector<double> mean(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) mean[static_cast<std::size_t>(a)] = acc[static_cast<std::size_t>(a)].value() / total;
    return mean;
}

// Subtract the mean, then remove the rounding residual with a second pass.
std::vector<double> centered(const std::vector<double>& data, const std::vector<double>& w,
                             std::size_t count, int dim, double total) {
    std::vector<double> mean = weighted_mean(data, w, count, dim, total);
    std::vector<double> out(data.size());
    for (std::size_t i = 0; i < count; ++i)
        for (int a = 0; a < dim; ++a) {
            std::size_t idx = i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a);
            out[idx] = data[idx] - mean[static_cast<std::size_t>(a)];
        }
    std::vector<double> residual = weighted_mean(out, w, count, dim, total);
    for (std::size_t i = 0; i < count; ++i)
        for (int a = 0; a < dim; ++a)
            out[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] -= residual[static_cast<std::size_t>(a)];
    return out;
}

}  // namespace

Centroid centroid(const ObjectMN& obj) {
    Centroid c;
    c.spatial = weighted_mean(obj.coord_data(), obj.weight_data(), obj.point_count(),
                              obj.space_dim(), obj.total_weight());
    c.channel = weighted_mean(obj.channel_data(), obj.weight_data(), obj.point_count(),
                              obj.channel_dim(), obj.total_weight());
    return c;
}

MomentTable central_moments(const ObjectMN& obj, const std::vector<MomentKey>& keys,
                            const MomentOptions& options) {
    const int M = obj.space_dim();
    const int N = obj.channel_dim();
    const std::size_t n = obj.point_count();

    std::vector<double> cs = centered(obj.coord_data(), obj.weight_data(), n, M, obj.total_weight());
    std::vector<double> cc = centered(obj.channel_data(), obj.weight_data(), n, N, obj.total_weight());

    if (options.prescale) {
        for (int a = 0; a < M; ++a) {
            double mx = 0.0;
            for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, std::abs(cs[i * static_cast<std::size_t>(M) + static_cast<std::size_t>(a)]));
            if (mx > 0.0)
                for (std::size_t i = 0; i < n; ++i) cs[i * static_cast<std::size_t>(M) + static_cast<std::size_t>(a)] /= mx;
        }
        for (int a = 0; a < N; ++a) {
            double mx = 0.0;
            for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, std::abs(cc[i * static_cast<std::size_t>(N) + static_cast<std::size_t>(a)]));
            if (mx > 0.0)
                for (std::size_t i = 0; i < n; ++i) cc[i * static_cast<std::size_t>(N) + static_cast<std::size_t>(a)] /= mx;
        }
    }

    MomentTable table;
    for (const auto& key : keys) {
        if (key.space_dim() != M || key.channel_dim() != N)
            fail(ErrorCode::Validation, "moment key dimensions do not match the object");
        if (table.count(key)) continue;
        int order = key.total_order();
        if (order == 0) {
            table[key] = obj.total_weight();
            continue;
        }
        if (order == 1) {
            table[key] = 0.0;  // exact: weighted centered values sum to zero by construction
            continue;
        }
        KahanSum sum;
        for (std::size_t i = 0; i < n; ++i) {
            double t = obj.weight(i);
            for (int a = 0; a < M; ++a) {
                int e = key.spatial[static_cast<std::size_t>(a)];
                if (e) t *= ipow(cs[i * static_cast<std::size_t>(M) + static_cast<std::size_t>(a)], e);
            }
            for (int a = 0; a < N; ++a) {
                int e = key.channel[static_cast<std::size_t>(a)];
                if (e) t *= ipow(cc[i * static_cast<std::size_t>(N) + static_cast<std::size_t>(a)], e);
            }
            sum.add(t);
        }
        table[key] = sum.value();
    }
    return table;
}

}  // namespace dami
