#pragma once

#include <map>
#include <vector>

#include "dami/core/kernel.hpp"
#include "dami/core/poly.hpp"

namespace dami {

/// Intermediate representation of a kernel product before integration: for
/// each participating point, the spatial and channel exponents it has
/// accumulated so far, with an exact coefficient.  The exponent block of
/// point `i` (ids 1..L) lives at offset (i-1)*(M+N).
struct PerPointPoly {
    int space_dim = 0;
    int channel_dim = 0;
    int degree = 0;  // number of points
    std::map<std::vector<std::uint8_t>, Rational> terms;
};

/// Leibniz expansion of a single primitive over the kernel's point pool:
/// one monomial per permutation, signed by the permutation parity, each
/// assigning exponent 1 of one axis to one point of the tuple.
PerPointPoly expand_primitive(const Primitive& p, int space_dim, int channel_dim, int degree);

/// Product of two per-point polynomials (exponents add, coefficients
/// multiply, like monomials merge).
PerPointPoly multiply(const PerPointPoly& a, const PerPointPoly& b);

/// Integrates a per-point polynomial: the points range independently over
/// the object, so each monomial becomes the product over points of the
/// central moment with that point's exponent tuple.  Points carrying equal
/// tuples contribute equal factors, which is what collapses relabeled
/// kernels onto identical polynomials.
MomentPolynomial integrate(const PerPointPoly& poly);

/// Full expansion of a kernel into a canonical moment polynomial.  The
/// kernel must reference point ids exactly {1..L}; primitive exponents are
/// applied by repeated multiplication.  An empty result means the kernel
/// integrates to zero identically.
MomentPolynomial expand_kernel(const KernelSpec& spec);

/// Expansion of the squared full-tuple channel determinant C(1..N)^2 — the
/// channel normalizer, equal to N! times the determinant of the N x N
/// second-order channel moment matrix.
MomentPolynomial channel_norm_polynomial(int space_dim, int channel_dim);

/// Spatial counterpart: expansion of S(1..M)^2.
MomentPolynomial spatial_norm_polynomial(int space_dim, int channel_dim);

}  // namespace dami
