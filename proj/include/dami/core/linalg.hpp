#pragma once

#include <cmath>
#include <vector>

namespace dami {

// Small dense helpers for dim <= 8 matrices, row-major storage.

double determinant(const std::vector<double>& m, int n);

/// Inverse via Gauss-Jordan with partial pivoting; throws Validation when
/// |det| <= tol.
std::vector<double> invert(const std::vector<double>& m, int n, double tol = 1e-12);

struct SymmetricEigen {
    std::vector<double> values;   // descending
    std::vector<double> vectors;  // row-major, row i = eigenvector of values[i]
};

/// Cyclic Jacobi for symmetric matrices; deterministic sweep order.
SymmetricEigen symmetric_eigen(const std::vector<double>& m, int n);

/// Ratio of largest to smallest singular value (sqrt of eigenvalue ratio of
/// A^T A); infinity for singular input.
double condition_number(const std::vector<double>& m, int n);

std::vector<double> mat_mul(const std::vector<double>& a, const std::vector<double>& b, int n);
std::vector<double> mat_vec(const std::vector<double>& a, const std::vector<double>& x, int n);

/// Neumaier compensated accumulator; keeps tuple sums and moment sums stable
/// when magnitudes span many decades.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace dami
