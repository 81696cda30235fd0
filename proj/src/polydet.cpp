#include "tav/polydet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace tav {

namespace {

using Dense = std::vector<RingElem>;  // ascending coefficients

Dense to_shifted_dense(const LaurentPoly& p, long shift, const Ring& R) {
    Dense d;
    if (p.is_zero()) return d;
    long lo = p.min_exp() - shift, hi = p.max_exp() - shift;
    if (lo < 0) throw RingError("poly_det: negative shifted exponent");
    d.assign(hi + 1, R->zero());
    for (const auto& [e, v] : p.coeffs()) d[e - shift] = v;
    return d;
}

LaurentPoly from_dense(const Ring& R, const Dense& d, long shift) {
    LaurentPoly p(R);
    for (std::size_t i = 0; i < d.size(); ++i)
        p.set_coeff(static_cast<long>(i) + shift, d[i]);
    return p;
}

void dtrim(Dense& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Dense dmul(const Dense& a, const Dense& b, const Ring& R) {
    if (a.empty() || b.empty()) return {};
    Dense r(a.size() + b.size() - 1, R->zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    dtrim(r);
    return r;
}

Dense dsub(Dense a, const Dense& b) {
    if (a.size() < b.size()) a.resize(b.size(), b.empty() ? RingElem() : b[0].ring()->zero());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    dtrim(a);
    return a;
}

RingElem elem_divexact(const RingElem& a, const RingElem& b) {
    const Ring& R = a.ring();
    if (R->kind() == CoeffRing::Kind::Integers) {
        const auto& x = std::get<mpz_class>(a.payload());
        const auto& y = std::get<mpz_class>(b.payload());
        if (y == 0 || !mpz_divisible_p(x.get_mpz_t(), y.get_mpz_t()))
            throw RingError("poly_det: inexact coefficient division");
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        return R->from_mpz(q);
    }
    return a * b.inverse();
}

// exact division of polynomials in R[t]; remainder must vanish
Dense ddivexact(Dense a, const Dense& b, const Ring& R) {
    dtrim(a);
    if (b.empty()) throw RingError("poly_det: division by zero polynomial");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw RingError("poly_det: inexact division");
    Dense q(a.size() - b.size() + 1, R->zero());
    while (a.size() >= b.size()) {
        RingElem c = elem_divexact(a.back(), b.back());
        std::size_t sh = a.size() - b.size();
        q[sh] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] -= c * b[i];
        dtrim(a);
        if (a.empty()) break;
    }
    if (!a.empty()) throw RingError("poly_det: inexact polynomial division");
    return q;
}

struct ShiftInfo {
    std::vector<long> row_shift;
    long total = 0;
    long degree_bound = 0;  // bound on deg of det of the shifted matrix
    bool zero_row = false;
};

ShiftInfo shift_info(const PolyMat& M) {
    ShiftInfo s;
    s.row_shift.assign(M.rows, 0);
    for (unsigned i = 0; i < M.rows; ++i) {
        long lo = 0, hi = 0;
        bool any = false;
        for (unsigned j = 0; j < M.cols; ++j) {
            const auto& p = M.at(i, j);
            if (p.is_zero()) continue;
            if (!any) {
                lo = p.min_exp();
                hi = p.max_exp();
                any = true;
            } else {
                lo = std::min(lo, p.min_exp());
                hi = std::max(hi, p.max_exp());
            }
        }
        if (!any) {
            s.zero_row = true;
            return s;
        }
        s.row_shift[i] = lo;
        s.total += lo;
        s.degree_bound += hi - lo;
    }
    return s;
}

}  // namespace

LaurentPoly poly_det_bareiss(const PolyMat& M) {
    if (M.rows != M.cols) throw RingError("poly_det: not square");
    const Ring& R = M.ring;
    unsigned n = M.rows;
    if (n == 0) return LaurentPoly::constant(R->one());
    ShiftInfo s = shift_info(M);
    if (s.zero_row) return LaurentPoly(R);
    std::vector<Dense> a(static_cast<std::size_t>(n) * n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            a[i * n + j] = to_shifted_dense(M.at(i, j), s.row_shift[i], R);
    int sign = 1;
    Dense prev{R->one()};
    for (unsigned k = 0; k + 1 < n; ++k) {
        // pivot
        unsigned piv = n;
        for (unsigned r = k; r < n; ++r)
            if (!a[r * n + k].empty()) {
                piv = r;
                break;
            }
        if (piv == n) return LaurentPoly(R);
        if (piv != k) {
            for (unsigned j = 0; j < n; ++j) std::swap(a[piv * n + j], a[k * n + j]);
            sign = -sign;
        }
        for (unsigned i = k + 1; i < n; ++i) {
            for (unsigned j = k + 1; j < n; ++j) {
                Dense num = dsub(dmul(a[k * n + k], a[i * n + j], R),
                                 dmul(a[i * n + k], a[k * n + j], R));
                a[i * n + j] = num.empty() ? Dense{} : ddivexact(std::move(num), prev, R);
            }
            a[i * n + k].clear();
        }
        prev = a[k * n + k];
    }
    Dense d = a[(n - 1) * n + (n - 1)];
    LaurentPoly out = from_dense(R, d, s.total);
    if (sign < 0) out = -out;
    return out;
}

LaurentPoly poly_det_cofactor(const PolyMat& M) {
    if (M.rows != M.cols) throw RingError("poly_det: not square");
    const Ring& R = M.ring;
    unsigned n = M.rows;
    if (n == 0) return LaurentPoly::constant(R->one());
    if (n == 1) return M.at(0, 0);
    LaurentPoly out(R);
    for (unsigned j = 0; j < n; ++j) {
        if (M.at(0, j).is_zero()) continue;
        PolyMat sub(n - 1, n - 1, R);
        for (unsigned i = 1; i < n; ++i) {
            unsigned cc = 0;
            for (unsigned c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = M.at(i, c);
            }
        }
        LaurentPoly term = M.at(0, j) * poly_det_cofactor(sub);
        out += (j % 2 == 0) ? term : -term;
    }
    return out;
}

// ---- finite-field evaluation/interpolation with code arithmetic ----

std::optional<LaurentPoly> poly_det_interp(const PolyMat& M) {
    if (M.rows != M.cols) throw RingError("poly_det: not square");
    const Ring& R = M.ring;
    if (R->kind() != CoeffRing::Kind::Prime && R->kind() != CoeffRing::Kind::Ext)
        return std::nullopt;
    unsigned n = M.rows;
    if (n == 0) return LaurentPoly::constant(R->one());
    ShiftInfo s = shift_info(M);
    if (s.zero_row) return LaurentPoly(R);
    const std::uint64_t need = static_cast<std::uint64_t>(s.degree_bound) + 1;
    Ring F = R;
    bool lifted = false;
    if (F->field_size() < need) {
        if (R->kind() != CoeffRing::Kind::Prime) return std::nullopt;
        std::uint64_t p = R->prime();
        unsigned e = 1;
        std::uint64_t q = p;
        while (q < need) {
            q *= p;
            ++e;
            if (q > 4000000ull) return std::nullopt;
        }
        F = CoeffRing::ext_field(p, e);
        lifted = true;
    }
    const std::uint64_t q = F->field_size();
    // entries as sparse (exponent, code) lists relative to the row shift
    struct Entry {
        std::vector<std::pair<long, std::uint64_t>> terms;
        long max_e = 0;
    };
    std::vector<Entry> ent(static_cast<std::size_t>(n) * n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            Entry& E = ent[i * n + j];
            for (const auto& [e, v] : M.at(i, j).coeffs()) {
                RingElem c = lifted ? convert_elem(v, F) : v;
                E.terms.emplace_back(e - s.row_shift[i], F->encode(c));
                E.max_e = std::max(E.max_e, e - s.row_shift[i]);
            }
        }
    const long D = s.degree_bound;
    std::vector<std::uint64_t> xs, ys;
    std::vector<std::uint64_t> scratch(static_cast<std::size_t>(n) * n);
    std::vector<std::uint64_t> xpow(D + 1);
    for (long m = 0; m <= D; ++m) {
        std::uint64_t x = static_cast<std::uint64_t>(m);  // code of m-th element
        if (x >= q) throw RingError("poly_det_interp: ran out of points");
        xpow[0] = F->encode(F->one());
        for (long e = 1; e <= D; ++e) xpow[e] = F->mul_code(xpow[e - 1], x);
        for (std::size_t idx = 0; idx < ent.size(); ++idx) {
            std::uint64_t v = 0;
            for (const auto& [e, c] : ent[idx].terms)
                v = F->add_code(v, F->mul_code(c, xpow[e]));
            scratch[idx] = v;
        }
        // Gaussian elimination determinant on codes
        std::vector<std::uint64_t> a = scratch;
        std::uint64_t det = F->encode(F->one());
        bool zero = false;
        for (unsigned k = 0; k < n && !zero; ++k) {
            unsigned piv = n;
            for (unsigned r = k; r < n; ++r)
                if (a[r * n + k] != 0) {
                    piv = r;
                    break;
                }
            if (piv == n) {
                zero = true;
                break;
            }
            if (piv != k) {
                for (unsigned c = 0; c < n; ++c) std::swap(a[piv * n + c], a[k * n + c]);
                det = F->neg_code(det);
            }
            std::uint64_t pv = a[k * n + k];
            det = F->mul_code(det, pv);
            std::uint64_t pinv = F->inv_code(pv);
            for (unsigned r = k + 1; r < n; ++r) {
                std::uint64_t f = F->mul_code(a[r * n + k], pinv);
                if (!f) continue;
                for (unsigned c = k; c < n; ++c)
                    a[r * n + c] =
                        F->sub_code(a[r * n + c], F->mul_code(f, a[k * n + c]));
            }
        }
        xs.push_back(x);
        ys.push_back(zero ? 0 : det);
    }
    // Lagrange interpolation: Newton's divided differences over codes
    std::size_t m = xs.size();
    std::vector<std::uint64_t> coef = ys;  // Newton coefficients
    for (std::size_t lvl = 1; lvl < m; ++lvl)
        for (std::size_t i = m - 1; i >= lvl; --i) {
            std::uint64_t num = F->sub_code(coef[i], coef[i - 1]);
            std::uint64_t den = F->sub_code(xs[i], xs[i - lvl]);
            coef[i] = F->mul_code(num, F->inv_code(den));
            if (i == lvl) break;
        }
    // expand Newton form to monomial coefficients
    std::vector<std::uint64_t> poly{coef[m - 1]};
    for (std::size_t i = m - 1; i-- > 0;) {
        // poly = poly*(x - xs[i]) + coef[i]
        std::vector<std::uint64_t> np(poly.size() + 1, 0);
        std::uint64_t nx = F->neg_code(xs[i]);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            np[k + 1] = F->add_code(np[k + 1], poly[k]);
            np[k] = F->add_code(np[k], F->mul_code(poly[k], nx));
        }
        np[0] = F->add_code(np[0], coef[i]);
        poly = std::move(np);
    }
    LaurentPoly out(R);
    for (std::size_t e = 0; e < poly.size(); ++e) {
        if (!poly[e]) continue;
        RingElem c = F->decode(poly[e]);
        if (lifted) c = convert_elem(c, R);
        out.set_coeff(static_cast<long>(e) + s.total, c);
    }
    return out;
}

// ---- characteristic-0 (or large-characteristic) evaluation engine ----

std::optional<LaurentPoly> poly_det_eval(const PolyMat& M) {
    if (M.rows != M.cols) throw RingError("poly_det: not square");
    const Ring& R = M.ring;
    if (!R->is_field()) return std::nullopt;
    unsigned n = M.rows;
    if (n == 0) return LaurentPoly::constant(R->one());
    ShiftInfo s = shift_info(M);
    if (s.zero_row) return LaurentPoly(R);
    const long D = s.degree_bound;
    if (R->characteristic() != 0 &&
        R->field_size() < static_cast<std::uint64_t>(D) + 1)
        return std::nullopt;
    std::vector<RingElem> xs, ys;
    for (long m = 0; m <= D; ++m) {
        RingElem x = R->from_int(m);
        std::vector<RingElem> xpow(D + 1, R->one());
        for (long e = 1; e <= D; ++e) xpow[e] = xpow[e - 1] * x;
        std::vector<RingElem> a(static_cast<std::size_t>(n) * n, R->zero());
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                RingElem v = R->zero();
                for (const auto& [e, c] : M.at(i, j).coeffs())
                    v += c * xpow[e - s.row_shift[i]];
                a[i * n + j] = v;
            }
        RingElem det = R->one();
        bool zero = false;
        for (unsigned k = 0; k < n && !zero; ++k) {
            unsigned piv = n;
            for (unsigned r = k; r < n; ++r)
                if (!a[r * n + k].is_zero()) {
                    piv = r;
                    break;
                }
            if (piv == n) {
                zero = true;
                break;
            }
            if (piv != k) {
                for (unsigned c = 0; c < n; ++c) std::swap(a[piv * n + c], a[k * n + c]);
                det = -det;
            }
            RingElem pv = a[k * n + k];
            det *= pv;
            RingElem pinv = pv.inverse();
            for (unsigned r = k + 1; r < n; ++r) {
                RingElem f = a[r * n + k] * pinv;
                if (f.is_zero()) continue;
                for (unsigned c = k; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
            }
        }
        xs.push_back(x);
        ys.push_back(zero ? R->zero() : det);
    }
    // Newton interpolation
    std::size_t m = xs.size();
    std::vector<RingElem> coef = ys;
    for (std::size_t lvl = 1; lvl < m; ++lvl)
        for (std::size_t i = m - 1; i >= lvl; --i) {
            coef[i] = (coef[i] - coef[i - 1]) * (xs[i] - xs[i - lvl]).inverse();
            if (i == lvl) break;
        }
    std::vector<RingElem> poly{coef[m - 1]};
    for (std::size_t i = m - 1; i-- > 0;) {
        std::vector<RingElem> np(poly.size() + 1, R->zero());
        for (std::size_t k = 0; k < poly.size(); ++k) {
            np[k + 1] += poly[k];
            np[k] -= poly[k] * xs[i];
        }
        np[0] += coef[i];
        poly = std::move(np);
    }
    LaurentPoly out(R);
    for (std::size_t e = 0; e < poly.size(); ++e)
        out.set_coeff(static_cast<long>(e) + s.total, poly[e]);
    return out;
}

// ---- CRT over word-size primes for integer matrices ----

LaurentPoly poly_det_crt(const PolyMat& M) {
    if (M.rows != M.cols) throw RingError("poly_det: not square");
    const Ring& Z = M.ring;
    if (Z->kind() != CoeffRing::Kind::Integers)
        throw RingError("poly_det_crt: integers only");
    unsigned n = M.rows;
    if (n == 0) return LaurentPoly::constant(Z->one());
    ShiftInfo s = shift_info(M);
    if (s.zero_row) return LaurentPoly(Z);
    // coefficient bound: product over rows of the row-wise 1-norm sum
    mpz_class B = 1;
    for (unsigned i = 0; i < n; ++i) {
        mpz_class rs = 0;
        for (unsigned j = 0; j < n; ++j)
            for (const auto& [e, v] : M.at(i, j).coeffs())
                rs += abs(std::get<mpz_class>(v.payload()));
        B *= rs;
    }
    mpz_class modulus = 1;
    std::uint64_t pc = (1ull << 30);
    std::map<long, mpz_class> acc;  // exponent -> symmetric residue accumulator
    mpz_class half;
    while (modulus <= 2 * B) {
        while (!is_prime_u64(pc)) --pc;
        std::uint64_t p = pc--;
        Ring Fp = CoeffRing::prime_field(p);
        PolyMat Mp(n, n, Fp);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                Mp.at(i, j) = convert_poly(M.at(i, j), Fp);
        auto dp = poly_det_interp(Mp);
        if (!dp) dp = poly_det_bareiss(Mp);
        // CRT combine: acc_e' = acc_e + modulus * ((r_e - acc_e) * modulus^{-1} mod p)
        mpz_class pz(static_cast<unsigned long>(p));
        mpz_class minv;
        if (!mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t()))
            throw RingError("poly_det_crt: modulus not invertible");
        std::set<long> exps;
        for (auto& [e, v] : acc) exps.insert(e);
        for (const auto& [e, v] : dp->coeffs()) exps.insert(e);
        for (long e : exps) {
            mpz_class r(static_cast<unsigned long>(
                dp->coeff(e).is_zero()
                    ? 0
                    : std::get<std::uint64_t>(dp->coeff(e).payload())));
            mpz_class cur = acc.count(e) ? acc[e] : mpz_class(0);
            mpz_class delta = ((r - cur) * minv) % pz;
            if (delta < 0) delta += pz;
            acc[e] = cur + modulus * delta;
        }
        modulus *= pz;
    }
    half = modulus / 2;
    LaurentPoly out(Z);
    for (auto& [e, v] : acc) {
        mpz_class c = v % modulus;
        if (c < 0) c += modulus;
        if (c > half) c -= modulus;
        out.set_coeff(e, Z->from_mpz(c));
    }
    return out;
}

LaurentPoly poly_det(const PolyMat& M) {
    if (M.rows != M.cols) throw RingError("poly_det: not square");
    const Ring& R = M.ring;
    unsigned n = M.rows;
    switch (R->kind()) {
        case CoeffRing::Kind::Integers:
            return n <= 6 ? poly_det_bareiss(M) : poly_det_crt(M);
        case CoeffRing::Kind::Prime:
        case CoeffRing::Kind::Ext: {
            auto d = poly_det_interp(M);
            return d ? *d : poly_det_bareiss(M);
        }
        case CoeffRing::Kind::Cyclotomic: {
            if (n <= 3) return poly_det_bareiss(M);
            auto d = poly_det_eval(M);
            return d ? *d : poly_det_bareiss(M);
        }
    }
    throw RingError("poly_det: bad ring");
}

}  // namespace tav
