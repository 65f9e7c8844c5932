#include "dami/core/poly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "dami/core/error.hpp"

namespace dami {

std::string MomentKey::label() const {
    bool single_digit = true;
    for (auto e : spatial)
        if (e > 9) single_digit = false;
    for (auto e : channel)
        if (e > 9) single_digit = false;
    std::ostringstream os;
    os << "u_{";
    if (single_digit) {
        for (auto e : spatial) os << static_cast<int>(e);
        for (auto e : channel) os << static_cast<int>(e);
    } else {
        bool first = true;
        for (int e : flat()) {
            if (!first) os << ",";
            os << e;
            first = false;
        }
    }
    os << "}";
    return os.str();
}

void MomentPolynomial::add_term(Rational coeff, std::vector<MomentKey> factors) {
    if (coeff.is_zero()) return;
    std::sort(factors.begin(), factors.end());
    terms_.push_back(Term{coeff, std::move(factors)});
}

void MomentPolynomial::normalize() {
    std::map<std::vector<MomentKey>, Rational> merged;
    for (auto& t : terms_) {
        std::sort(t.factors.begin(), t.factors.end());
        merged[t.factors] += t.coeff;
    }
    terms_.clear();
    for (auto& [factors, coeff] : merged) {
        if (!coeff.is_zero()) terms_.push_back(Term{coeff, factors});
    }
}

std::vector<MomentKey> MomentPolynomial::keys() const {
    std::set<MomentKey> out;
    for (const auto& t : terms_) out.insert(t.factors.begin(), t.factors.end());
    return {out.begin(), out.end()};
}

bool MomentPolynomial::has_all_even_exponent_term() const {
    for (const auto& t : terms_) {
        bool all_even = true;
        for (const auto& k : t.factors) {
            if (!k.all_exponents_even()) {
                all_even = false;
                break;
            }
        }
        if (all_even) return true;
    }
    return false;
}

bool MomentPolynomial::proportional_to(const MomentPolynomial& other, Rational& ratio) const {
    if (terms_.size() != other.terms_.size()) return false;
    if (terms_.empty()) {
        ratio = Rational(1);
        return true;
    }
    // Canonical order means matching terms line up index by index.
    Rational r;
    bool have = false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].factors != other.terms_[i].factors) return false;
        Rational q = terms_[i].coeff / other.terms_[i].coeff;
        if (!have) {
            r = q;
            have = true;
        } else if (q != r) {
            return false;
        }
    }
    ratio = r;
    return true;
}

std::string MomentPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        if (first) {
            if (c.is_negative()) os << "-";
            first = false;
        } else {
            os << (c.is_negative() ? " - " : " + ");
        }
        Rational a = c.is_negative() ? -c : c;
        os << a.str();
        // group equal factors as powers
        std::size_t i = 0;
        while (i < t.factors.size()) {
            std::size_t j = i;
            while (j < t.factors.size() && t.factors[j] == t.factors[i]) ++j;
            os << "*" << t.factors[i].label();
            if (j - i > 1) os << "^" << (j - i);
            i = j;
        }
    }
    return os.str();
}

MomentPolynomial mass_polynomial(int space_dim, int channel_dim) {
    MomentPolynomial p(space_dim, channel_dim);
    p.add_term(Rational(1), {MomentKey::zero(space_dim, channel_dim)});
    p.normalize();
    return p;
}

}  // namespace dami
