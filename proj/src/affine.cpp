#include "dami/core/affine.hpp"

#include <cmath>

#include "dami/core/linalg.hpp"
#include "dami/core/random.hpp"

namespace dami {

AffineMap AffineMap::identity(int dim) {
    AffineMap m;
    m.dim = dim;
    m.linear.assign(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) m.linear[i * dim + i] = 1.0;
    m.offset.assign(static_cast<std::size_t>(dim), 0.0);
    return m;
}

void AffineMap::validate() const {
    if (dim < 1) fail(ErrorCode::Validation, "affine map dimension must be positive");
    if (linear.size() != static_cast<std::size_t>(dim) * dim || offset.size() != static_cast<std::size_t>(dim))
        fail(ErrorCode::Validation, "affine map storage does not match its dimension");
    for (double v : linear)
        if (!std::isfinite(v)) fail(ErrorCode::Validation, "non-finite affine entry");
    for (double v : offset)
        if (!std::isfinite(v)) fail(ErrorCode::Validation, "non-finite affine offset");
}

double AffineMap::det() const { return determinant(linear, dim); }
double AffineMap::cond() const { return condition_number(linear, dim); }

AffineMap AffineMap::compose(const AffineMap& other) const {
    if (dim != other.dim) fail(ErrorCode::Validation, "composing affine maps of different dimensions");
    AffineMap out;
    out.dim = dim;
    out.linear = mat_mul(linear, other.linear, dim);
    out.offset = mat_vec(linear, other.offset, dim);
    for (int i = 0; i < dim; ++i) out.offset[static_cast<std::size_t>(i)] += offset[static_cast<std::size_t>(i)];
    return out;
}

AffineMap AffineMap::inverse(double tol) const {
    if (std::abs(det()) <= tol)
        fail(ErrorCode::Validation, "affine map determinant below tolerance; not invertible");
    AffineMap out;
    out.dim = dim;
    out.linear = invert(linear, dim, tol);
    auto negoff = mat_vec(out.linear, offset, dim);
    out.offset.resize(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) out.offset[static_cast<std::size_t>(i)] = -negoff[static_cast<std::size_t>(i)];
    return out;
}

std::vector<double> AffineMap::apply(const std::vector<double>& x) const {
    auto out = mat_vec(linear, x, dim);
    for (int i = 0; i < dim; ++i) out[static_cast<std::size_t>(i)] += offset[static_cast<std::size_t>(i)];
    return out;
}

const char* affine_family_name(AffineFamily family) {
    switch (family) {
        case AffineFamily::Translation: return "translation";
        case AffineFamily::Rotation: return "rotation";
        case AffineFamily::Scaling: return "scaling";
        case AffineFamily::GeneralAffine: return "affine";
    }
    return "?";
}

namespace {

// Random rotation: Gram-Schmidt on Gaussian columns, then orientation fix.
std::vector<double> random_rotation(Rng& rng, int dim) {
    std::vector<double> q(static_cast<std::size_t>(dim) * dim);
    for (int col = 0; col < dim; ++col) {
        std::vector<double> v(static_cast<std::size_t>(dim));
        while (true) {
            for (int r = 0; r < dim; ++r) v[static_cast<std::size_t>(r)] = rng.gauss();
            for (int prev = 0; prev < col; ++prev) {
                double dot = 0.0;
                for (int r = 0; r < dim; ++r) dot += v[static_cast<std::size_t>(r)] * q[r * dim + prev];
                for (int r = 0; r < dim; ++r) v[static_cast<std::size_t>(r)] -= dot * q[r * dim + prev];
            }
            double norm = 0.0;
            for (double x : v) norm += x * x;
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (int r = 0; r < dim; ++r) q[r * dim + col] = v[static_cast<std::size_t>(r)] / norm;
                break;
            }
        }
    }
    if (determinant(q, dim) < 0.0)
        for (int r = 0; r < dim; ++r) q[r * dim] = -q[r * dim];
    return q;
}

}  // namespace

AffineMap sample_affine(int dim, std::uint64_t seed, AffineFamily family,
                        const SampleConstraints& constraints) {
    if (dim < 1) fail(ErrorCode::InvalidArgument, "affine sample dimension must be positive");
    Rng rng(Rng::derive(seed, 0x5eedu + static_cast<std::uint64_t>(family)));
    AffineMap map = AffineMap::identity(dim);

    switch (family) {
        case AffineFamily::Translation: {
            bool nonzero = false;
            while (!nonzero) {
                for (int i = 0; i < dim; ++i) {
                    map.offset[static_cast<std::size_t>(i)] = rng.uniform(-2.0, 2.0);
                    if (std::abs(map.offset[static_cast<std::size_t>(i)]) > 1e-6) nonzero = true;
                }
            }
            return map;
        }
        case AffineFamily::Rotation: {
            map.linear = random_rotation(rng, dim);
            return map;
        }
        case AffineFamily::Scaling: {
            for (int tries = 0; tries < constraints.max_rejects; ++tries) {
                double det = 1.0;
                for (int i = 0; i < dim; ++i) {
                    double s = std::exp(rng.uniform(std::log(0.4), std::log(2.5)));
                    map.linear[i * dim + i] = s;
                    det *= s;
                }
                if (det >= constraints.det_min && det <= constraints.det_max) return map;
            }
            fail(ErrorCode::Budget, "scaling sample rejection budget exhausted");
        }
        case AffineFamily::GeneralAffine: {
            for (int tries = 0; tries < constraints.max_rejects; ++tries) {
                for (auto& v : map.linear) v = rng.uniform(-1.0, 1.0);
                double det = map.det();
                if (constraints.allow_reflection) {
                    if (std::abs(det) < constraints.det_min || std::abs(det) > constraints.det_max) continue;
                } else {
                    if (det < constraints.det_min || det > constraints.det_max) continue;
                }
                if (map.cond() > constraints.cond_max) continue;
                for (auto& v : map.offset) v = rng.uniform(-1.0, 1.0);
                return map;
            }
            fail(ErrorCode::Budget, "affine sample rejection budget exhausted");
        }
    }
    fail(ErrorCode::Internal, "unreachable affine family");
}

}  // namespace dami
