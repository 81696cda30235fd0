#include "tav/laurent.hpp"

#include <sstream>

namespace tav {

void LaurentPoly::prune() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_zero())
            it = c_.erase(it);
        else
            ++it;
    }
}

LaurentPoly LaurentPoly::constant(const RingElem& c) {
    LaurentPoly p(c.ring());
    if (!c.is_zero()) p.c_.emplace(0, c);
    return p;
}

LaurentPoly LaurentPoly::t(const Ring& r, long e) {
    LaurentPoly p(r);
    p.c_.emplace(e, r->one());
    return p;
}

LaurentPoly LaurentPoly::term(const RingElem& c, long e) {
    LaurentPoly p(c.ring());
    if (!c.is_zero()) p.c_.emplace(e, c);
    return p;
}

LaurentPoly LaurentPoly::from_ints(const Ring& r, const std::vector<long>& asc) {
    LaurentPoly p(r);
    for (std::size_t i = 0; i < asc.size(); ++i) {
        RingElem c = r->from_int(asc[i]);
        if (!c.is_zero()) p.c_.emplace(static_cast<long>(i), c);
    }
    return p;
}

long LaurentPoly::min_exp() const {
    if (c_.empty()) throw RingError("min_exp of zero polynomial");
    return c_.begin()->first;
}

long LaurentPoly::max_exp() const {
    if (c_.empty()) throw RingError("max_exp of zero polynomial");
    return c_.rbegin()->first;
}

RingElem LaurentPoly::coeff(long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? ring_->zero() : it->second;
}

void LaurentPoly::set_coeff(long e, const RingElem& v) {
    if (v.is_zero())
        c_.erase(e);
    else
        c_.insert_or_assign(e, v);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, v] : o.c_) {
        auto it = r.c_.find(e);
        if (it == r.c_.end())
            r.c_.emplace(e, v);
        else {
            it->second += v;
            if (it->second.is_zero()) r.c_.erase(it);
        }
    }
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, v] : r.c_) v = -v;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    return *this + (-o);
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r(ring_);
    for (const auto& [e1, v1] : c_)
        for (const auto& [e2, v2] : o.c_) {
            RingElem p = v1 * v2;
            if (p.is_zero()) continue;
            auto it = r.c_.find(e1 + e2);
            if (it == r.c_.end())
                r.c_.emplace(e1 + e2, std::move(p));
            else {
                it->second += p;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
    return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    auto it = c_.begin(), jt = o.c_.begin();
    for (; it != c_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second != jt->second) return false;
    return true;
}

LaurentPoly LaurentPoly::scale(const RingElem& c) const {
    if (c.is_zero()) return LaurentPoly(ring_);
    LaurentPoly r = *this;
    for (auto& [e, v] : r.c_) v *= c;
    r.prune();
    return r;
}

LaurentPoly LaurentPoly::shift(long e) const {
    LaurentPoly r(ring_);
    for (const auto& [k, v] : c_) r.c_.emplace(k + e, v);
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned long n) const {
    LaurentPoly r = constant(ring_->one());
    LaurentPoly base = *this;
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

LaurentPoly LaurentPoly::reciprocal() const {
    LaurentPoly r(ring_);
    for (const auto& [e, v] : c_) r.c_.emplace(-e, v);
    return r;
}

RingElem LaurentPoly::eval(const RingElem& x) const {
    RingElem s = ring_->zero();
    for (const auto& [e, v] : c_) s += v * x.pow(mpz_class(e));
    return s;
}

std::string LaurentPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : c_) {
        std::string cs = v.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) {
                os << "-";
                cs = cs.substr(1);
            }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        bool unit_coeff = v.is_one() || cs == "1";
        if (e == 0) {
            os << cs;
        } else {
            if (!unit_coeff) os << cs << "*";
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

LaurentPoly normalize_unit(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    LaurentPoly q = p.shift(-p.min_exp());
    const Ring& R = p.ring();
    RingElem lead = q.coeff(q.max_exp());
    if (R->kind() == CoeffRing::Kind::Integers) {
        if (std::get<mpz_class>(lead.payload()) < 0) q = -q;
    } else {
        q = q.scale(lead.inverse());
    }
    return q;
}

std::optional<std::pair<RingElem, long>> poly_equiv_unit(const LaurentPoly& p,
                                                        const LaurentPoly& q,
                                                        UnitMode mode) {
    if (!same_ring(p.ring(), q.ring())) throw RingError("poly_equiv: ring mismatch");
    const Ring& R = p.ring();
    if (p.is_zero() && q.is_zero()) return std::make_pair(R->one(), 0L);
    if (p.is_zero() || q.is_zero()) return std::nullopt;
    long l = q.min_exp() - p.min_exp();
    if (q.max_exp() - q.min_exp() != p.max_exp() - p.min_exp()) return std::nullopt;
    RingElem c0 = p.coeff(p.min_exp());
    auto inv = R->inverse(c0);
    RingElem eps = R->zero();
    if (inv) {
        eps = q.coeff(q.min_exp()) * *inv;
    } else {
        // non-unit trailing coefficient (Z case): eps must be +-1
        RingElem d0 = q.coeff(q.min_exp());
        if (d0 == c0)
            eps = R->one();
        else if (d0 == -c0)
            eps = -R->one();
        else
            return std::nullopt;
    }
    if (!eps.is_unit()) return std::nullopt;
    if (mode == UnitMode::SignOnly && !(eps.is_one() || eps == -R->one()))
        return std::nullopt;
    if (q == p.shift(l).scale(eps)) return std::make_pair(eps, l);
    return std::nullopt;
}

bool poly_equiv(const LaurentPoly& p, const LaurentPoly& q, UnitMode mode) {
    return poly_equiv_unit(p, q, mode).has_value();
}

LaurentPoly substitute_scaled(const LaurentPoly& p, const RingElem& u) {
    if (!u.is_unit()) throw RingError("substitute_scaled: u not a unit");
    LaurentPoly r(p.ring());
    for (const auto& [e, v] : p.coeffs())
        r.set_coeff(e, v * u.pow(mpz_class(e)));
    return r;
}

LaurentPoly convert_poly(const LaurentPoly& p, const Ring& target) {
    LaurentPoly r(target);
    for (const auto& [e, v] : p.coeffs()) r.set_coeff(e, convert_elem(v, target));
    return r;
}

// ---- dense ordinary-polynomial helpers over a field, for gcd reduction ----

namespace {

using Dense = std::vector<RingElem>;  // ascending, may have zero-leading trimmed

Dense to_dense(const LaurentPoly& p) {
    // shift so min exponent is 0
    Dense d;
    if (p.is_zero()) return d;
    long lo = p.min_exp(), hi = p.max_exp();
    d.assign(hi - lo + 1, p.ring()->zero());
    for (const auto& [e, v] : p.coeffs()) d[e - lo] = v;
    return d;
}

LaurentPoly from_dense(const Ring& R, const Dense& d) {
    LaurentPoly p(R);
    for (std::size_t i = 0; i < d.size(); ++i)
        p.set_coeff(static_cast<long>(i), d[i]);
    return p;
}

void dtrim(Dense& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// division over a field: a = q*b + r
std::pair<Dense, Dense> ddivmod(Dense a, const Dense& b) {
    dtrim(a);
    Dense q;
    if (a.size() < b.size()) return {q, a};
    const Ring& R = b.back().ring();
    q.assign(a.size() - b.size() + 1, R->zero());
    RingElem li = b.back().inverse();
    while (a.size() >= b.size()) {
        RingElem c = a.back() * li;
        std::size_t sh = a.size() - b.size();
        q[sh] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] -= c * b[i];
        dtrim(a);
        if (a.empty()) break;
    }
    return {q, a};
}

Dense dgcd(Dense a, Dense b) {
    dtrim(a);
    dtrim(b);
    while (!b.empty()) {
        auto [q, r] = ddivmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        RingElem li = a.back().inverse();
        for (auto& c : a) c *= li;
    }
    return a;
}

}  // namespace

RationalLaurent::RationalLaurent(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw RingError("RationalLaurent: zero denominator");
}

RationalLaurent RationalLaurent::reduced() const {
    const Ring& R = num_.ring();
    if (num_.is_zero()) return RationalLaurent(num_, LaurentPoly::constant(R->one()));
    if (R->kind() == CoeffRing::Kind::Integers) {
        // pass through Q[t], then clear denominators and content
        Ring Q = CoeffRing::cyclotomic(1);
        RationalLaurent rq =
            RationalLaurent(convert_poly(num_, Q), convert_poly(den_, Q)).reduced();
        // scale both by the lcm of all coefficient denominators / gcd of numerators
        auto back_to_z = [&](const LaurentPoly& p, mpz_class& den_lcm) {
            for (const auto& [e, v] : p.coeffs()) {
                const auto& qv = std::get<RingElem::QVec>(v.payload());
                mpq_class c = qv.empty() ? mpq_class(0) : qv[0];
                mpz_class d = c.get_den();
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
            }
        };
        mpz_class L = 1;
        back_to_z(rq.num(), L);
        back_to_z(rq.den(), L);
        auto scaled = [&](const LaurentPoly& p) {
            LaurentPoly r(R);
            for (const auto& [e, v] : p.coeffs()) {
                const auto& qv = std::get<RingElem::QVec>(v.payload());
                mpq_class c = (qv.empty() ? mpq_class(0) : qv[0]) * mpq_class(L);
                r.set_coeff(e, R->from_mpz(mpz_class(c.get_num())));
            }
            return r;
        };
        LaurentPoly n = scaled(rq.num()), d = scaled(rq.den());
        // remove common integer content
        mpz_class g = 0;
        for (const auto& [e, v] : n.coeffs())
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(),
                    std::get<mpz_class>(v.payload()).get_mpz_t());
        for (const auto& [e, v] : d.coeffs())
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(),
                    std::get<mpz_class>(v.payload()).get_mpz_t());
        if (g > 1) {
            auto divg = [&](const LaurentPoly& p) {
                LaurentPoly r(R);
                for (const auto& [e, v] : p.coeffs())
                    r.set_coeff(e, R->from_mpz(std::get<mpz_class>(v.payload()) / g));
                return r;
            };
            n = divg(n);
            d = divg(d);
        }
        if (std::get<mpz_class>(d.coeff(d.max_exp()).payload()) < 0) {
            n = -n;
            d = -d;
        }
        return RationalLaurent(std::move(n), std::move(d));
    }
    // field coefficients: monic gcd on shifted polynomials
    long shift = num_.min_exp() - den_.min_exp();
    Dense a = to_dense(num_), b = to_dense(den_);
    Dense g = dgcd(a, b);
    if (g.size() > 1) {
        a = ddivmod(std::move(a), g).first;
        b = ddivmod(std::move(b), g).first;
    }
    LaurentPoly n = from_dense(R, a), d = from_dense(R, b);
    // restore relative t-shift between numerator and denominator
    if (shift > 0)
        n = n.shift(shift);
    else if (shift < 0)
        d = d.shift(-shift);
    return RationalLaurent(std::move(n), std::move(d));
}

RationalLaurent RationalLaurent::operator*(const RationalLaurent& o) const {
    return RationalLaurent(num_ * o.num_, den_ * o.den_);
}

std::string RationalLaurent::str() const {
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

std::optional<std::pair<RingElem, long>> frac_equiv_unit(const RationalLaurent& a,
                                                         const RationalLaurent& b,
                                                         UnitMode mode) {
    return poly_equiv_unit(a.num() * b.den(), b.num() * a.den(), mode);
}

bool frac_equiv(const RationalLaurent& a, const RationalLaurent& b, UnitMode mode) {
    return frac_equiv_unit(a, b, mode).has_value();
}

}  // namespace tav
