#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <mutex>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace tav {

class CoeffRing;
class RingElem;
using Ring = std::shared_ptr<const CoeffRing>;

struct RingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_prime_u64(std::uint64_t n);

/// Exact coefficient ring: Z, F_p, F_{p^d}, or Q(zeta_m).
/// Immutable after construction; elements carry a shared pointer to their ring.
class CoeffRing : public std::enable_shared_from_this<CoeffRing> {
public:
    enum class Kind { Integers, Prime, Ext, Cyclotomic };

    static Ring integers();
    static Ring prime_field(std::uint64_t p);
    /// F_{p^d} with the lexicographically smallest monic irreducible modulus.
    static Ring ext_field(std::uint64_t p, unsigned d);
    /// Q(zeta_m), modulus the m-th cyclotomic polynomial.
    static Ring cyclotomic(unsigned m);

    Kind kind() const { return kind_; }
    bool is_field() const { return kind_ != Kind::Integers; }
    std::uint64_t characteristic() const {
        return (kind_ == Kind::Prime || kind_ == Kind::Ext) ? p_ : 0;
    }
    std::uint64_t prime() const { return p_; }
    unsigned ext_degree() const { return deg_; }
    unsigned conductor() const { return m_; }
    /// p^d for finite fields.
    std::uint64_t field_size() const;
    /// Monic modulus of F_{p^d}, ascending coefficients, length d+1.
    const std::vector<std::uint64_t>& ext_modulus() const { return ext_mod_; }
    /// Phi_m, ascending integer coefficients, length deg+1.
    const std::vector<mpz_class>& cyc_modulus() const { return cyc_mod_; }

    RingElem zero() const;
    RingElem one() const;
    RingElem from_int(long v) const;
    RingElem from_mpz(const mpz_class& v) const;
    RingElem from_mpq(const mpq_class& v) const;  // Cyclotomic only
    /// zeta_m for cyclotomic, the residue of x for ext fields.
    RingElem generator() const;

    RingElem add(const RingElem& a, const RingElem& b) const;
    RingElem sub(const RingElem& a, const RingElem& b) const;
    RingElem mul(const RingElem& a, const RingElem& b) const;
    RingElem neg(const RingElem& a) const;
    std::optional<RingElem> inverse(const RingElem& a) const;
    RingElem pow(const RingElem& a, const mpz_class& e) const;
    bool is_unit(const RingElem& a) const;
    bool is_zero(const RingElem& a) const;
    bool is_one(const RingElem& a) const;
    bool equal(const RingElem& a, const RingElem& b) const;
    std::string to_string(const RingElem& a) const;

    /// Multiplicative order of a nonzero finite-field element.
    std::uint64_t element_order(const RingElem& a) const;

    /// Code of a finite-field element as base-p digits packed into an integer.
    std::uint64_t encode(const RingElem& a) const;
    RingElem decode(std::uint64_t code) const;
    /// Table-based finite-field ops on codes (tables built on first use).
    std::uint64_t mul_code(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t add_code(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub_code(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv_code(std::uint64_t a) const;
    std::uint64_t neg_code(std::uint64_t a) const;

    ~CoeffRing() = default;

private:
    CoeffRing() = default;
    void build_tables() const;

    Kind kind_ = Kind::Integers;
    std::uint64_t p_ = 0;
    unsigned deg_ = 1;   // d for Ext, phi(m) for Cyclotomic
    unsigned m_ = 0;
    std::vector<std::uint64_t> ext_mod_;
    std::vector<mpz_class> cyc_mod_;

    // log/exp tables for finite fields, built lazily under a once flag
    mutable std::vector<std::uint32_t> exp_, log_;
    mutable std::once_flag tables_once_;
};

bool same_ring(const Ring& a, const Ring& b);

/// Element of a CoeffRing, stored in canonical reduced form.
class RingElem {
public:
    using FpVec = std::vector<std::uint64_t>;
    using QVec = std::vector<mpq_class>;
    using Payload = std::variant<mpz_class, std::uint64_t, FpVec, QVec>;

    RingElem() = default;
    RingElem(Ring ring, Payload v) : ring_(std::move(ring)), v_(std::move(v)) {}

    const Ring& ring() const { return ring_; }
    const Payload& payload() const { return v_; }

    RingElem operator+(const RingElem& o) const { return ring_->add(*this, o); }
    RingElem operator-(const RingElem& o) const { return ring_->sub(*this, o); }
    RingElem operator*(const RingElem& o) const { return ring_->mul(*this, o); }
    RingElem operator-() const { return ring_->neg(*this); }
    RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
    RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
    RingElem& operator*=(const RingElem& o) { return *this = *this * o; }
    bool operator==(const RingElem& o) const { return ring_->equal(*this, o); }
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    bool is_zero() const { return ring_->is_zero(*this); }
    bool is_one() const { return ring_->is_one(*this); }
    bool is_unit() const { return ring_->is_unit(*this); }
    RingElem inverse() const;
    RingElem pow(const mpz_class& e) const { return ring_->pow(*this, e); }
    std::string str() const { return ring_->to_string(*this); }

private:
    Ring ring_;
    Payload v_;
};

/// Map an element into another ring where a canonical embedding exists:
/// same ring, Z -> anything, F_p -> F_{p^d}.
RingElem convert_elem(const RingElem& a, const Ring& target);

/// F_{p^d} with d = ord_l(p), plus a verified primitive l-th root of unity.
std::pair<Ring, RingElem> build_ext_field(std::uint64_t p, std::uint64_t l);

}  // namespace tav
