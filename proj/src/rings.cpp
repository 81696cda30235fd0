#include "tav/rings.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace tav {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }  // p < 2^31

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

std::vector<u64> prime_factors_u64(u64 n) {
    std::vector<u64> fs;
    for (u64 q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            fs.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// ---- F_p[x] arithmetic, ascending dense coefficients ----

using Fx = std::vector<u64>;

void fx_trim(Fx& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Fx fx_mul(const Fx& a, const Fx& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Fx r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    fx_trim(r);
    return r;
}

// remainder of a modulo monic f
Fx fx_mod(Fx a, const Fx& f, u64 p) {
    fx_trim(a);
    const std::size_t d = f.size() - 1;
    while (a.size() > d) {
        u64 c = a.back();
        std::size_t s = a.size() - 1 - d;
        if (c) {
            for (std::size_t i = 0; i < d; ++i)
                a[s + i] = (a[s + i] + p * p - mulmod(c, f[i], p) % p) % p;
        }
        a.pop_back();
        fx_trim(a);
        if (a.size() <= d) break;
    }
    fx_trim(a);
    return a;
}

Fx fx_powmod(Fx base, mpz_class e, const Fx& f, u64 p) {
    Fx r{1};
    base = fx_mod(std::move(base), f, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fx_mod(fx_mul(r, base, p), f, p);
        base = fx_mod(fx_mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

Fx fx_gcd(Fx a, Fx b, u64 p) {
    fx_trim(a);
    fx_trim(b);
    while (!b.empty()) {
        // reduce a mod b (b not monic in general)
        u64 lead = b.back();
        u64 li = invmod(lead, p);
        Fx bm = b;
        for (auto& c : bm) c = mulmod(c, li, p);
        a = fx_mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        u64 li = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, li, p);
    }
    return a;
}

bool fx_irreducible(const Fx& f, u64 p) {
    // f monic of degree d: x^{p^d} == x mod f, and gcd(x^{p^{d/q}} - x, f) = 1
    const unsigned d = static_cast<unsigned>(f.size() - 1);
    mpz_class pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), d);
    Fx x{0, 1};
    Fx xp = fx_powmod(x, pd, f, p);
    Fx diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    fx_trim(diff);
    if (!diff.empty()) return false;
    for (u64 q : prime_factors_u64(d)) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), d / q);
        Fx y = fx_powmod(x, e, f, p);
        if (y.size() < 2) y.resize(2, 0);
        y[1] = (y[1] + p - 1) % p;
        fx_trim(y);
        Fx g = fx_gcd(y, f, p);
        if (!(g.size() == 1 && g[0] == 1)) return false;
    }
    return true;
}

// ---- Q[x] arithmetic for cyclotomic fields ----

using Qx = std::vector<mpq_class>;

void qx_trim(Qx& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Qx qx_mul(const Qx& a, const Qx& b) {
    if (a.empty() || b.empty()) return {};
    Qx r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    qx_trim(r);
    return r;
}

// remainder modulo monic integer modulus
Qx qx_mod(Qx a, const std::vector<mpz_class>& f) {
    qx_trim(a);
    const std::size_t d = f.size() - 1;
    while (a.size() > d) {
        mpq_class c = a.back();
        std::size_t s = a.size() - 1 - d;
        if (c != 0)
            for (std::size_t i = 0; i < d; ++i) a[s + i] -= c * mpq_class(f[i]);
        a.pop_back();
        qx_trim(a);
    }
    return a;
}

// extended gcd of a with monic modulus f over Q: returns u with u*a = 1 mod f
std::optional<Qx> qx_invmod(Qx a, const std::vector<mpz_class>& fz) {
    Qx f(fz.size());
    for (std::size_t i = 0; i < fz.size(); ++i) f[i] = mpq_class(fz[i]);
    // Euclid with Bezout tracking: r0 = f, r1 = a
    Qx r0 = f, r1 = a, s0 = {}, s1 = {mpq_class(1)};
    qx_trim(r1);
    if (r1.empty()) return std::nullopt;
    auto sub_mul = [](const Qx& x, const Qx& q, const Qx& y) {
        // x - q*y
        Qx qy = qx_mul(q, y);
        Qx r = x;
        if (r.size() < qy.size()) r.resize(qy.size(), mpq_class(0));
        for (std::size_t i = 0; i < qy.size(); ++i) r[i] -= qy[i];
        qx_trim(r);
        return r;
    };
    while (!r1.empty()) {
        // divide r0 by r1
        Qx q;
        Qx rem = r0;
        qx_trim(rem);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, mpq_class(0));
            mpq_class lead = r1.back();
            while (rem.size() >= r1.size() && !rem.empty()) {
                mpq_class c = rem.back() / lead;
                std::size_t sh = rem.size() - r1.size();
                q[sh] = c;
                for (std::size_t i = 0; i < r1.size(); ++i) rem[sh + i] -= c * r1[i];
                qx_trim(rem);
            }
        }
        qx_trim(q);
        Qx r2 = rem;
        Qx s2 = sub_mul(s0, q, s1);
        r0 = std::move(r1);
        s0 = std::move(s1);
        r1 = std::move(r2);
        s1 = std::move(s2);
    }
    // r0 = gcd (degree 0 since modulus irreducible and a != 0)
    if (r0.size() != 1) return std::nullopt;
    mpq_class g = r0[0];
    for (auto& c : s0) c /= g;
    return s0;
}

// ---- cyclotomic polynomials over Z ----

using Zx = std::vector<mpz_class>;

Zx zx_divexact(const Zx& a, const Zx& b) {
    // exact division of integer polynomials, b monic-leading divides
    Zx rem = a, q;
    q.assign(a.size() - b.size() + 1, mpz_class(0));
    while (rem.size() >= b.size() && !(rem.size() == 1 && rem[0] == 0)) {
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.size() < b.size()) break;
        mpz_class c = rem.back() / b.back();
        std::size_t sh = rem.size() - b.size();
        q[sh] = c;
        for (std::size_t i = 0; i < b.size(); ++i) rem[sh + i] -= c * b[i];
    }
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (!rem.empty()) throw RingError("cyclotomic division not exact");
    return q;
}

Zx zx_mul(const Zx& a, const Zx& b) {
    Zx r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

const Zx& cyclotomic_poly(unsigned m) {
    static std::map<unsigned, Zx> memo;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    std::function<const Zx&(unsigned)> get = [&](unsigned k) -> const Zx& {
        auto jt = memo.find(k);
        if (jt != memo.end()) return jt->second;
        Zx xk_minus_1(k + 1, mpz_class(0));
        xk_minus_1[0] = -1;
        xk_minus_1[k] = 1;
        Zx denom{mpz_class(1)};
        for (unsigned d = 1; d < k; ++d)
            if (k % d == 0) denom = zx_mul(denom, get(d));
        Zx phi = zx_divexact(xk_minus_1, denom);
        return memo.emplace(k, std::move(phi)).first->second;
    };
    return get(m);
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    // deterministic Miller-Rabin for n < 3.2e18 with these bases
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) d >>= 1, ++r;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        if (a % n == 0) continue;
        __uint128_t x = 1;
        {
            __uint128_t base = a % n, e = d;
            while (e) {
                if (e & 1) x = x * base % n;
                base = base * base % n;
                e >>= 1;
            }
        }
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < r; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

// ---- ring construction with interning ----

namespace {
using RingKey = std::tuple<int, u64, unsigned, unsigned>;
std::map<RingKey, std::shared_ptr<CoeffRing>>& ring_registry() {
    static std::map<RingKey, std::shared_ptr<CoeffRing>> reg;
    return reg;
}
std::mutex& registry_mutex() {
    static std::mutex mx;
    return mx;
}
}  // namespace

Ring CoeffRing::integers() {
    std::lock_guard<std::mutex> lk(registry_mutex());
    RingKey key{0, 0, 0, 0};
    auto& reg = ring_registry();
    auto it = reg.find(key);
    if (it != reg.end()) return it->second;
    auto r = std::shared_ptr<CoeffRing>(new CoeffRing());
    r->kind_ = Kind::Integers;
    reg.emplace(key, r);
    return r;
}

Ring CoeffRing::prime_field(u64 p) {
    if (p >= (1ull << 31) || !is_prime_u64(p))
        throw RingError("prime_field: p must be a prime below 2^31");
    std::lock_guard<std::mutex> lk(registry_mutex());
    RingKey key{1, p, 1, 0};
    auto& reg = ring_registry();
    auto it = reg.find(key);
    if (it != reg.end()) return it->second;
    auto r = std::shared_ptr<CoeffRing>(new CoeffRing());
    r->kind_ = Kind::Prime;
    r->p_ = p;
    reg.emplace(key, r);
    return r;
}

Ring CoeffRing::ext_field(u64 p, unsigned d) {
    if (!is_prime_u64(p)) throw RingError("ext_field: p not prime");
    if (d < 1) throw RingError("ext_field: d must be positive");
    {
        // field size cap so that element codes and tables stay small
        long double sz = 1;
        for (unsigned i = 0; i < d; ++i) sz *= static_cast<long double>(p);
        if (sz > 4e6L) throw RingError("ext_field: p^d too large");
    }
    std::lock_guard<std::mutex> lk(registry_mutex());
    RingKey key{2, p, d, 0};
    auto& reg = ring_registry();
    auto it = reg.find(key);
    if (it != reg.end()) return it->second;
    auto r = std::shared_ptr<CoeffRing>(new CoeffRing());
    r->kind_ = Kind::Ext;
    r->p_ = p;
    r->deg_ = d;
    // lexicographically smallest monic irreducible of degree d:
    // scan coefficient vectors (c_{d-1},...,c_0) in increasing order
    u64 total = 1;
    for (unsigned i = 0; i < d; ++i) total *= p;
    bool found = false;
    for (u64 code = 0; code < total; ++code) {
        Fx f(d + 1, 0);
        u64 c = code;
        for (unsigned i = 0; i < d; ++i) {
            f[i] = c % p;
            c /= p;
        }
        f[d] = 1;
        if (fx_irreducible(f, p)) {
            r->ext_mod_ = f;
            found = true;
            break;
        }
    }
    if (!found) throw RingError("ext_field: no irreducible found");  // unreachable
    reg.emplace(key, r);
    return r;
}

Ring CoeffRing::cyclotomic(unsigned m) {
    if (m < 1) throw RingError("cyclotomic: m must be positive");
    std::lock_guard<std::mutex> lk(registry_mutex());
    RingKey key{3, 0, 0, m};
    auto& reg = ring_registry();
    auto it = reg.find(key);
    if (it != reg.end()) return it->second;
    auto r = std::shared_ptr<CoeffRing>(new CoeffRing());
    r->kind_ = Kind::Cyclotomic;
    r->m_ = m;
    r->cyc_mod_ = cyclotomic_poly(m);
    r->deg_ = static_cast<unsigned>(r->cyc_mod_.size() - 1);
    reg.emplace(key, r);
    return r;
}

u64 CoeffRing::field_size() const {
    if (kind_ == Kind::Prime) return p_;
    if (kind_ == Kind::Ext) {
        u64 q = 1;
        for (unsigned i = 0; i < deg_; ++i) q *= p_;
        return q;
    }
    throw RingError("field_size: not a finite field");
}

bool same_ring(const Ring& a, const Ring& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    return a->kind() == b->kind() && a->prime() == b->prime() &&
           a->ext_degree() == b->ext_degree() && a->conductor() == b->conductor();
}

// ---- element construction ----

RingElem CoeffRing::zero() const { return from_int(0); }
RingElem CoeffRing::one() const { return from_int(1); }

RingElem CoeffRing::from_int(long v) const { return from_mpz(mpz_class(v)); }

RingElem CoeffRing::from_mpz(const mpz_class& v) const {
    auto self = shared_from_this();
    switch (kind_) {
        case Kind::Integers:
            return RingElem(self, v);
        case Kind::Prime: {
            mpz_class r = v % static_cast<long>(p_);
            if (r < 0) r += static_cast<long>(p_);
            return RingElem(self, r.get_ui());
        }
        case Kind::Ext: {
            mpz_class r = v % static_cast<long>(p_);
            if (r < 0) r += static_cast<long>(p_);
            RingElem::FpVec c;
            if (r != 0) c.push_back(r.get_ui());
            return RingElem(self, std::move(c));
        }
        case Kind::Cyclotomic: {
            RingElem::QVec c;
            if (v != 0) c.push_back(mpq_class(v));
            return RingElem(self, std::move(c));
        }
    }
    throw RingError("bad kind");
}

RingElem CoeffRing::from_mpq(const mpq_class& v) const {
    if (kind_ != Kind::Cyclotomic)
        throw RingError("from_mpq: rational coefficients only in cyclotomic fields");
    RingElem::QVec c;
    if (v != 0) {
        mpq_class w = v;
        w.canonicalize();
        c.push_back(w);
    }
    return RingElem(shared_from_this(), std::move(c));
}

RingElem CoeffRing::generator() const {
    auto self = shared_from_this();
    if (kind_ == Kind::Ext) {
        if (deg_ == 1) {
            // F_p presented as degree-1 extension: x ~ -c0
            u64 c = (p_ - ext_mod_[0] % p_) % p_;
            RingElem::FpVec v;
            if (c) v.push_back(c);
            return RingElem(self, std::move(v));
        }
        return RingElem(self, RingElem::FpVec{0, 1});
    }
    if (kind_ == Kind::Cyclotomic) {
        if (deg_ == 1) {
            // zeta_1 = 1, zeta_2 = -1: x = -c0 mod (x + c0)

            mpq_class c = -mpq_class(cyc_mod_[0]);
            RingElem::QVec v;
            if (c != 0) v.push_back(c);
            return RingElem(self, std::move(v));
        }
        return RingElem(self, RingElem::QVec{mpq_class(0), mpq_class(1)});
    }
    throw RingError("generator: only ext and cyclotomic fields have one");
}

// ---- arithmetic ----

namespace {
void check_rings(const RingElem& a, const RingElem& b) {
    if (!same_ring(a.ring(), b.ring())) throw RingError("ring mismatch");
}
}  // namespace

RingElem CoeffRing::add(const RingElem& a, const RingElem& b) const {
    check_rings(a, b);
    auto self = shared_from_this();
    switch (kind_) {
        case Kind::Integers:
            return RingElem(self, std::get<mpz_class>(a.payload()) +
                                      std::get<mpz_class>(b.payload()));
        case Kind::Prime:
            return RingElem(self, (std::get<u64>(a.payload()) +
                                   std::get<u64>(b.payload())) %
                                      p_);
        case Kind::Ext: {
            auto x = std::get<RingElem::FpVec>(a.payload());
            const auto& y = std::get<RingElem::FpVec>(b.payload());
            if (x.size() < y.size()) x.resize(y.size(), 0);
            for (std::size_t i = 0; i < y.size(); ++i) x[i] = (x[i] + y[i]) % p_;
            fx_trim(x);
            return RingElem(self, std::move(x));
        }
        case Kind::Cyclotomic: {
            auto x = std::get<RingElem::QVec>(a.payload());
            const auto& y = std::get<RingElem::QVec>(b.payload());
            if (x.size() < y.size()) x.resize(y.size(), mpq_class(0));
            for (std::size_t i = 0; i < y.size(); ++i) x[i] += y[i];
            qx_trim(x);
            return RingElem(self, std::move(x));
        }
    }
    throw RingError("bad kind");
}

RingElem CoeffRing::neg(const RingElem& a) const {
    auto self = shared_from_this();
    switch (kind_) {
        case Kind::Integers:
            return RingElem(self, mpz_class(-std::get<mpz_class>(a.payload())));
        case Kind::Prime: {
            u64 v = std::get<u64>(a.payload());
            return RingElem(self, v ? p_ - v : 0);
        }
        case Kind::Ext: {
            auto x = std::get<RingElem::FpVec>(a.payload());
            for (auto& c : x) c = c ? p_ - c : 0;
            return RingElem(self, std::move(x));
        }
        case Kind::Cyclotomic: {
            auto x = std::get<RingElem::QVec>(a.payload());
            for (auto& c : x) c = -c;
            return RingElem(self, std::move(x));
        }
    }
    throw RingError("bad kind");
}

RingElem CoeffRing::sub(const RingElem& a, const RingElem& b) const {
    return add(a, neg(b));
}

RingElem CoeffRing::mul(const RingElem& a, const RingElem& b) const {
    check_rings(a, b);
    auto self = shared_from_this();
    switch (kind_) {
        case Kind::Integers:
            return RingElem(self, mpz_class(std::get<mpz_class>(a.payload()) *
                                            std::get<mpz_class>(b.payload())));
        case Kind::Prime:
            return RingElem(self, mulmod(std::get<u64>(a.payload()),
                                         std::get<u64>(b.payload()), p_));
        case Kind::Ext: {
            Fx r = fx_mod(fx_mul(std::get<RingElem::FpVec>(a.payload()),
                                 std::get<RingElem::FpVec>(b.payload()), p_),
                          ext_mod_, p_);
            return RingElem(self, std::move(r));
        }
        case Kind::Cyclotomic: {
            Qx r = qx_mod(qx_mul(std::get<RingElem::QVec>(a.payload()),
                                 std::get<RingElem::QVec>(b.payload())),
                          cyc_mod_);
            return RingElem(self, std::move(r));
        }
    }
    throw RingError("bad kind");
}

std::optional<RingElem> CoeffRing::inverse(const RingElem& a) const {
    auto self = shared_from_this();
    switch (kind_) {
        case Kind::Integers: {
            const auto& v = std::get<mpz_class>(a.payload());
            if (v == 1 || v == -1) return RingElem(self, v);
            return std::nullopt;
        }
        case Kind::Prime: {
            u64 v = std::get<u64>(a.payload());
            if (!v) return std::nullopt;
            return RingElem(self, invmod(v, p_));
        }
        case Kind::Ext: {
            const auto& v = std::get<RingElem::FpVec>(a.payload());
            if (v.empty()) return std::nullopt;
            mpz_class e = mpz_class(static_cast<unsigned long>(field_size())) - 2;
            return pow(a, e);
        }
        case Kind::Cyclotomic: {
            const auto& v = std::get<RingElem::QVec>(a.payload());
            if (v.empty()) return std::nullopt;
            auto inv = qx_invmod(v, cyc_mod_);
            if (!inv) return std::nullopt;
            qx_trim(*inv);
            return RingElem(self, std::move(*inv));
        }
    }
    throw RingError("bad kind");
}

RingElem RingElem::inverse() const {
    auto r = ring_->inverse(*this);
    if (!r) throw RingError("element not invertible");
    return *r;
}

RingElem CoeffRing::pow(const RingElem& a, const mpz_class& e) const {
    if (e < 0) {
        auto inv = inverse(a);
        if (!inv) throw RingError("pow: negative exponent of non-unit");
        return pow(*inv, mpz_class(-e));
    }
    RingElem r = one(), base = a;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

bool CoeffRing::is_unit(const RingElem& a) const {
    if (kind_ == Kind::Integers) {
        const auto& v = std::get<mpz_class>(a.payload());
        return v == 1 || v == -1;
    }
    return !is_zero(a);
}

bool CoeffRing::is_zero(const RingElem& a) const {
    switch (kind_) {
        case Kind::Integers:
            return std::get<mpz_class>(a.payload()) == 0;
        case Kind::Prime:
            return std::get<u64>(a.payload()) == 0;
        case Kind::Ext:
            return std::get<RingElem::FpVec>(a.payload()).empty();
        case Kind::Cyclotomic:
            return std::get<RingElem::QVec>(a.payload()).empty();
    }
    throw RingError("bad kind");
}

bool CoeffRing::is_one(const RingElem& a) const { return equal(a, one()); }

bool CoeffRing::equal(const RingElem& a, const RingElem& b) const {
    check_rings(a, b);
    switch (kind_) {
        case Kind::Integers:
            return std::get<mpz_class>(a.payload()) == std::get<mpz_class>(b.payload());
        case Kind::Prime:
            return std::get<u64>(a.payload()) == std::get<u64>(b.payload());
        case Kind::Ext:
            return std::get<RingElem::FpVec>(a.payload()) ==
                   std::get<RingElem::FpVec>(b.payload());
        case Kind::Cyclotomic: {
            const auto& x = std::get<RingElem::QVec>(a.payload());
            const auto& y = std::get<RingElem::QVec>(b.payload());
            if (x.size() != y.size()) return false;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i] != y[i]) return false;
            return true;
        }
    }
    throw RingError("bad kind");
}

std::string CoeffRing::to_string(const RingElem& a) const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Integers:
            os << std::get<mpz_class>(a.payload());
            break;
        case Kind::Prime:
            os << std::get<u64>(a.payload());
            break;
        case Kind::Ext: {
            const auto& v = std::get<RingElem::FpVec>(a.payload());
            if (v.empty()) {
                os << "0";
                break;
            }
            bool first = true;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!v[i]) continue;
                if (!first) os << " + ";
                first = false;
                if (i == 0 || v[i] != 1) os << v[i];
                if (i >= 1) {
                    if (v[i] != 1) os << "*";
                    os << "z";
                    if (i > 1) os << "^" << i;
                }
            }
            break;
        }
        case Kind::Cyclotomic: {
            const auto& v = std::get<RingElem::QVec>(a.payload());
            if (v.empty()) {
                os << "0";
                break;
            }
            if (v.size() == 1) {
                os << v[0];
                break;
            }
            os << "(";
            bool first = true;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i] == 0) continue;
                if (!first) os << " + ";
                first = false;
                os << v[i];
                if (i >= 1) {
                    os << "*z";
                    if (i > 1) os << "^" << i;
                }
            }
            os << ")";
            break;
        }
    }
    return os.str();
}

u64 CoeffRing::element_order(const RingElem& a) const {
    if (!is_field() || kind_ == Kind::Cyclotomic)
        throw RingError("element_order: finite fields only");
    if (is_zero(a)) throw RingError("element_order: zero element");
    u64 n = field_size() - 1;
    u64 ord = n;
    for (u64 q : prime_factors_u64(n)) {
        while (ord % q == 0 &&
               is_one(pow(a, mpz_class(static_cast<unsigned long>(ord / q)))))
            ord /= q;
    }
    return ord;
}

// ---- code arithmetic for finite fields ----

u64 CoeffRing::encode(const RingElem& a) const {
    if (kind_ == Kind::Prime) return std::get<u64>(a.payload());
    if (kind_ != Kind::Ext) throw RingError("encode: finite fields only");
    const auto& v = std::get<RingElem::FpVec>(a.payload());
    u64 code = 0, mult = 1;
    for (unsigned i = 0; i < deg_; ++i) {
        code += (i < v.size() ? v[i] : 0) * mult;
        mult *= p_;
    }
    return code;
}

RingElem CoeffRing::decode(u64 code) const {
    if (kind_ == Kind::Prime) return RingElem(shared_from_this(), code % p_);
    if (kind_ != Kind::Ext) throw RingError("decode: finite fields only");
    RingElem::FpVec v;
    for (unsigned i = 0; i < deg_; ++i) {
        v.push_back(code % p_);
        code /= p_;
    }
    fx_trim(v);
    return RingElem(shared_from_this(), std::move(v));
}

void CoeffRing::build_tables() const {
    const u64 q = field_size();
    // find a multiplicative generator by exhaustive order check
    RingElem g = zero();
    for (u64 c = 1; c < q; ++c) {
        RingElem cand = decode(c);
        if (element_order(cand) == q - 1) {
            g = cand;
            break;
        }
    }
    exp_.assign(q - 1, 0);
    log_.assign(q, 0);
    RingElem cur = one();
    for (u64 k = 0; k < q - 1; ++k) {
        u64 code = encode(cur);
        exp_[k] = static_cast<std::uint32_t>(code);
        log_[code] = static_cast<std::uint32_t>(k);
        cur = mul(cur, g);
    }
}

u64 CoeffRing::mul_code(u64 a, u64 b) const {
    if (kind_ == Kind::Prime) return mulmod(a, b, p_);
    if (!a || !b) return 0;
    std::call_once(tables_once_, [this] { build_tables(); });
    const u64 q1 = field_size() - 1;
    u64 s = log_[a] + log_[b];
    if (s >= q1) s -= q1;
    return exp_[s];
}

u64 CoeffRing::add_code(u64 a, u64 b) const {
    if (kind_ == Kind::Prime) return (a + b) % p_;
    if (p_ == 2) return a ^ b;
    u64 r = 0, mult = 1;
    for (unsigned i = 0; i < deg_; ++i) {
        r += ((a % p_ + b % p_) % p_) * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

u64 CoeffRing::neg_code(u64 a) const {
    if (kind_ == Kind::Prime) return a ? p_ - a : 0;
    if (p_ == 2) return a;
    u64 r = 0, mult = 1;
    for (unsigned i = 0; i < deg_; ++i) {
        u64 d = a % p_;
        r += (d ? p_ - d : 0) * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

u64 CoeffRing::sub_code(u64 a, u64 b) const { return add_code(a, neg_code(b)); }

u64 CoeffRing::inv_code(u64 a) const {
    if (!a) throw RingError("inv_code: zero");
    if (kind_ == Kind::Prime) return invmod(a, p_);
    std::call_once(tables_once_, [this] { build_tables(); });
    const u64 q1 = field_size() - 1;
    u64 l = log_[a];
    return exp_[l ? q1 - l : 0];
}

// ---- conversions ----

RingElem convert_elem(const RingElem& a, const Ring& target) {
    if (same_ring(a.ring(), target)) {
        if (a.ring().get() == target.get()) return a;
        // structurally equal: rebuild payload against target
        return RingElem(target, a.payload());
    }
    const auto& src = a.ring();
    if (src->kind() == CoeffRing::Kind::Integers)
        return target->from_mpz(std::get<mpz_class>(a.payload()));
    if (src->kind() == CoeffRing::Kind::Prime &&
        target->kind() == CoeffRing::Kind::Ext &&
        src->prime() == target->prime()) {
        return target->from_mpz(
            mpz_class(static_cast<unsigned long>(std::get<std::uint64_t>(a.payload()))));
    }
    if (src->kind() == CoeffRing::Kind::Ext &&
        target->kind() == CoeffRing::Kind::Prime &&
        src->prime() == target->prime()) {
        const auto& v = std::get<RingElem::FpVec>(a.payload());
        if (v.size() > 1) throw RingError("convert: element not in prime subfield");
        return RingElem(target, v.empty() ? 0 : v[0]);
    }
    throw RingError("convert: no canonical embedding");
}

std::pair<Ring, RingElem> build_ext_field(u64 p, u64 l) {
    if (!is_prime_u64(p)) throw RingError("build_ext_field: p not prime");
    if (l < 1 || std::gcd(p, l) != 1) throw RingError("build_ext_field: gcd(p,l) != 1");
    // d = ord_l(p)
    unsigned d = 1;
    u64 r = p % l;
    while (r != 1 % l) {
        r = (r * p) % l;
        ++d;
    }
    Ring F = d == 1 ? CoeffRing::prime_field(p) : CoeffRing::ext_field(p, d);
    const u64 q = F->field_size();
    if ((q - 1) % l != 0) throw RingError("build_ext_field: internal order error");
    // generator by exhaustive order check, then zeta = g^{(q-1)/l}
    RingElem zeta = F->one();
    for (u64 c = 1; c < q; ++c) {
        RingElem cand = F->decode(c);
        if (F->element_order(cand) == q - 1) {
            zeta = cand.pow(mpz_class(static_cast<unsigned long>((q - 1) / l)));
            break;
        }
    }
    // verify primitivity
    if (!zeta.pow(mpz_class(static_cast<unsigned long>(l))).is_one())
        throw RingError("build_ext_field: zeta^l != 1");
    for (u64 qf : prime_factors_u64(l))
        if (zeta.pow(mpz_class(static_cast<unsigned long>(l / qf))).is_one())
            throw RingError("build_ext_field: zeta not primitive");
    return {F, zeta};
}

}  // namespace tav
