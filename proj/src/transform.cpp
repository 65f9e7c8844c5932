#include "dami/core/transform.hpp"

#include <cmath>

#include "dami/core/linalg.hpp"
#include "dami/core/moments.hpp"

namespace dami {

ObjectMN apply_dual(const ObjectMN& obj, const AffineMap& spatial, const AffineMap& channel) {
    if (spatial.dim != obj.space_dim())
        fail(ErrorCode::Validation, "spatial map dimension does not match the object");
    if (channel.dim != obj.channel_dim())
        fail(ErrorCode::Validation, "channel map dimension does not match the object");
    spatial.validate();
    channel.validate();

    const int M = obj.space_dim();
    const int N = obj.channel_dim();
    const std::size_t n = obj.point_count();
    std::vector<double> coords(n * static_cast<std::size_t>(M));
    std::vector<double> channels(n * static_cast<std::size_t>(N));
    for (std::size_t i = 0; i < n; ++i) {
        auto p = obj.coords(i);
        for (int r = 0; r < M; ++r) {
            double s = spatial.offset[static_cast<std::size_t>(r)];
            for (int c = 0; c < M; ++c) s += spatial.linear[r * M + c] * p[static_cast<std::size_t>(c)];
            coords[i * static_cast<std::size_t>(M) + static_cast<std::size_t>(r)] = s;
        }
        auto q = obj.channels(i);
        for (int r = 0; r < N; ++r) {
            double s = channel.offset[static_cast<std::size_t>(r)];
            for (int c = 0; c < N; ++c) s += channel.linear[r * N + c] * q[static_cast<std::size_t>(c)];
            channels[i * static_cast<std::size_t>(N) + static_cast<std::size_t>(r)] = s;
        }
    }
    return ObjectMN(M, N, std::move(coords), std::move(channels), obj.weight_data());
}

namespace {

// Weighted second-central-moment matrix of one side.
std::vector<double> second_moment_matrix(const std::vector<double>& data,
                                         const std::vector<double>& w, std::size_t n, int dim,
                                         const std::vector<double>& mean) {
    std::vector<KahanSum> acc(static_cast<std::size_t>(dim) * dim);
    for (std::size_t i = 0; i < n; ++i)
        for (int a = 0; a < dim; ++a) {
            double da = data[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] - mean[static_cast<std::size_t>(a)];
            for (int b = a; b < dim; ++b) {
                double db = data[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(b)] - mean[static_cast<std::size_t>(b)];
                acc[static_cast<std::size_t>(a * dim + b)].add(w[i] * da * db);
            }
        }
    std::vector<double> m(static_cast<std::size_t>(dim) * dim);
    for (int a = 0; a < dim; ++a)
        for (int b = a; b < dim; ++b) {
            double v = acc[static_cast<std::size_t>(a * dim + b)].value();
            m[a * dim + b] = v;
            m[b * dim + a] = v;
        }
    return m;
}

struct SideReduction {
    int rank = 0;
    std::vector<double> eigenvalues;
    std::vector<double> basis;  // rank x dim, rows = retained directions
};

SideReduction reduce_side(const std::vector<double>& data, const std::vector<double>& w,
                          std::size_t n, int dim, const std::vector<double>& mean,
                          double tolerance) {
    auto m = second_moment_matrix(data, w, n, dim, mean);
    auto eig = symmetric_eigen(m, dim);
    SideReduction out;
    out.eigenvalues = eig.values;
    double top = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
    for (int i = 0; i < dim; ++i)
        if (eig.values[static_cast<std::size_t>(i)] > tolerance * top && eig.values[static_cast<std::size_t>(i)] > 0.0) ++out.rank;
    out.basis.assign(static_cast<std::size_t>(out.rank) * dim, 0.0);
    for (int r = 0; r < out.rank; ++r)
        for (int c = 0; c < dim; ++c) out.basis[r * dim + c] = eig.vectors[r * dim + c];
    return out;
}

std::vector<double> project(const std::vector<double>& data, std::size_t n, int dim,
                            const std::vector<double>& mean, const SideReduction& red) {
    std::vector<double> out(n * static_cast<std::size_t>(red.rank));
    for (std::size_t i = 0; i < n; ++i)
        for (int r = 0; r < red.rank; ++r) {
            double s = 0.0;
            for (int c = 0; c < dim; ++c)
                s += red.basis[r * dim + c] *
                     (data[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c)] - mean[static_cast<std::size_t>(c)]);
            out[i * static_cast<std::size_t>(red.rank) + static_cast<std::size_t>(r)] = s;
        }
    return out;
}

}  // namespace

RankReduceResult rank_reduce(const ObjectMN& obj, double tolerance) {
    Centroid c = centroid(obj);
    SideReduction spatial = reduce_side(obj.coord_data(), obj.weight_data(), obj.point_count(),
                                        obj.space_dim(), c.spatial, tolerance);
    SideReduction channel = reduce_side(obj.channel_data(), obj.weight_data(), obj.point_count(),
                                        obj.channel_dim(), c.channel, tolerance);
    if (spatial.rank == 0)
        fail(ErrorCode::NullSpace,
             "spatial side has rank 0 (all points coincide); no invariant is defined");
    if (channel.rank == 0)
        fail(ErrorCode::NullSpace,
             "channel side has rank 0 (single color); the channel normalizer vanishes");

    RankReduceResult out;
    out.report.spatial_rank = spatial.rank;
    out.report.channel_rank = channel.rank;
    out.report.spatial_reduced = spatial.rank < obj.space_dim();
    out.report.channel_reduced = channel.rank < obj.channel_dim();
    out.report.spatial_eigenvalues = spatial.eigenvalues;
    out.report.channel_eigenvalues = channel.eigenvalues;

    std::vector<double> coords = out.report.spatial_reduced
                                     ? project(obj.coord_data(), obj.point_count(), obj.space_dim(), c.spatial, spatial)
                                     : obj.coord_data();
    std::vector<double> channels = out.report.channel_reduced
                                       ? project(obj.channel_data(), obj.point_count(), obj.channel_dim(), c.channel, channel)
                                       : obj.channel_data();
    out.object = ObjectMN(spatial.rank == obj.space_dim() ? obj.space_dim() : spatial.rank,
                          channel.rank == obj.channel_dim() ? obj.channel_dim() : channel.rank,
                          std::move(coords), std::move(channels), obj.weight_data());
    return out;
}

}  // namespace dami
