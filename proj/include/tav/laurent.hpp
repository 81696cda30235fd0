#pragma once

#include <map>

#include "tav/rings.hpp"

namespace tav {

enum class UnitMode { SignOnly, FullUnits };

/// Laurent polynomial over a CoeffRing: sparse map exponent -> nonzero coeff.
class LaurentPoly {
public:
    explicit LaurentPoly(Ring ring) : ring_(std::move(ring)) {}
    LaurentPoly(Ring ring, std::map<long, RingElem> coeffs)
        : ring_(std::move(ring)), c_(std::move(coeffs)) {
        prune();
    }

    static LaurentPoly zero(const Ring& r) { return LaurentPoly(r); }
    static LaurentPoly constant(const RingElem& c);
    static LaurentPoly t(const Ring& r, long e = 1);
    /// c * t^e
    static LaurentPoly term(const RingElem& c, long e);
    /// From ascending integer coefficients starting at exponent 0.
    static LaurentPoly from_ints(const Ring& r, const std::vector<long>& asc);

    const Ring& ring() const { return ring_; }
    const std::map<long, RingElem>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long min_exp() const;  // throws on zero
    long max_exp() const;
    /// degree span max-min; 0 for zero polynomial
    long span() const { return c_.empty() ? 0 : max_exp() - min_exp(); }
    RingElem coeff(long e) const;
    void set_coeff(long e, const RingElem& v);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    bool operator==(const LaurentPoly& o) const;
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly scale(const RingElem& c) const;
    LaurentPoly shift(long e) const;  // * t^e
    LaurentPoly pow(unsigned long n) const;
    /// p(1/t)
    LaurentPoly reciprocal() const;
    RingElem eval(const RingElem& x) const;  // needs x unit if min_exp < 0

    std::string str() const;  // canonical text form, e.g. "1 - t + t^2"

private:
    void prune();
    Ring ring_;
    std::map<long, RingElem> c_;
};

/// Canonical representative of the unit class eps * t^l.
/// Min exponent shifted to 0; over Z positive leading coefficient,
/// over a field monic.
LaurentPoly normalize_unit(const LaurentPoly& p);

/// q = eps * t^l * p with eps in {+-1} (SignOnly) or any ring unit (FullUnits).
/// Returns the witness unit if equivalent.
std::optional<std::pair<RingElem, long>> poly_equiv_unit(const LaurentPoly& p,
                                                        const LaurentPoly& q,
                                                        UnitMode mode);
bool poly_equiv(const LaurentPoly& p, const LaurentPoly& q, UnitMode mode);

/// p(u*t) for a unit u.
LaurentPoly substitute_scaled(const LaurentPoly& p, const RingElem& u);

/// Map coefficients into another ring via convert_elem.
LaurentPoly convert_poly(const LaurentPoly& p, const Ring& target);

/// Quotient of Laurent polynomials; den nonzero.
class RationalLaurent {
public:
    RationalLaurent(LaurentPoly num, LaurentPoly den);

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    const Ring& ring() const { return num_.ring(); }
    bool is_zero() const { return num_.is_zero(); }

    /// Reduce by polynomial gcd (over a field, or via Q for Z coefficients).
    RationalLaurent reduced() const;

    RationalLaurent operator*(const RationalLaurent& o) const;

    std::string str() const;

private:
    LaurentPoly num_, den_;
};

/// Cross-multiplied unit-class equivalence of fractions.
bool frac_equiv(const RationalLaurent& a, const RationalLaurent& b, UnitMode mode);
std::optional<std::pair<RingElem, long>> frac_equiv_unit(const RationalLaurent& a,
                                                         const RationalLaurent& b,
                                                         UnitMode mode);

}  // namespace tav
