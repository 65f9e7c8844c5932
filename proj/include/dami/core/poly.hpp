#pragma once

#include <string>
#include <vector>

#include "dami/core/key.hpp"
#include "dami/core/rational.hpp"

namespace dami {

/// One addend of a moment polynomial: an exact rational coefficient times a
/// product of central moments, kept as a sorted multiset of keys.
struct Term {
    Rational coeff;
    std::vector<MomentKey> factors;  // sorted ascending

    friend bool operator==(const Term& a, const Term& b) {
        return a.coeff == b.coeff && a.factors == b.factors;
    }
};

/// Sum of terms over central moments, always held in canonical form: factors
/// sorted within each term, like terms merged, zero coefficients dropped,
/// terms sorted by factor multiset.  Equality is therefore structural.
class MomentPolynomial {
public:
    MomentPolynomial() = default;
    MomentPolynomial(int space_dim, int channel_dim)
        : space_dim_(space_dim), channel_dim_(channel_dim) {}

    int space_dim() const noexcept { return space_dim_; }
    int channel_dim() const noexcept { return channel_dim_; }

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }

    /// Adds coeff * (product of keys); keys need not be sorted.
    void add_term(Rational coeff, std::vector<MomentKey> factors);

    /// Restores canonical form after a batch of add_term calls.
    void normalize();

    /// Every distinct key appearing in any term.
    std::vector<MomentKey> keys() const;

    bool has_all_even_exponent_term() const;

    /// True when the polynomials agree up to one global rational scale,
    /// writing that scale to `ratio` (equal term multisets, constant
    /// coefficient ratio).
    bool proportional_to(const MomentPolynomial& other, Rational& ratio) const;

    /// "6*u_{001001}*u_{010010}*u_{100100} - 6*..." style rendering.
    std::string str() const;

    friend bool operator==(const MomentPolynomial& a, const MomentPolynomial& b) {
        return a.space_dim_ == b.space_dim_ && a.channel_dim_ == b.channel_dim_ &&
               a.terms_ == b.terms_;
    }
    friend bool operator!=(const MomentPolynomial& a, const MomentPolynomial& b) {
        return !(a == b);
    }

private:
    int space_dim_ = 0;
    int channel_dim_ = 0;
    std::vector<Term> terms_;
};

/// The polynomial consisting of the single zeroth moment (total mass).
MomentPolynomial mass_polynomial(int space_dim, int channel_dim);

}  // namespace dami
