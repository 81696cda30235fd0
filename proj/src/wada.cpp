#include "tav/wada.hpp"

namespace tav {

namespace {

/// Monomial matrix: row i has weight w[i]*t^{e[i]} at column col[i].
struct Monomial {
    std::vector<unsigned> col;
    std::vector<RingElem> w;
    std::vector<long> e;

    static Monomial identity(unsigned d, const Ring& R) {
        Monomial m;
        m.col.resize(d);
        m.w.assign(d, R->one());
        m.e.assign(d, 0);
        for (unsigned i = 0; i < d; ++i) m.col[i] = i;
        return m;
    }
    /// Right-multiply by t^s * rho(g) (monomial rep data).
    void mul_letter(const Representation& rep, unsigned g, long s) {
        for (unsigned i = 0; i < col.size(); ++i) {
            unsigned c = col[i];
            w[i] = w[i] * rep.wt(g, c);
            col[i] = rep.col(g, c);
            e[i] += s;
        }
    }
};

void add_monomial(PolyMat& M, const Monomial& mono, long coeff,
                  unsigned row_off, unsigned col_off, const Ring& R) {
    RingElem c = R->from_int(coeff);
    for (unsigned i = 0; i < mono.col.size(); ++i) {
        LaurentPoly& p = M.at(row_off + i, col_off + mono.col[i]);
        p.set_coeff(mono.e[i], p.coeff(mono.e[i]) + c * mono.w[i]);
    }
}

}  // namespace

PolyMat phi_word(const FreeWord& w, const Epimorphism& f,
                 const Representation& rep) {
    FoxElement x;
    x.add(1, w);
    return phi_fox(x, f, rep);
}

PolyMat phi_fox(const FoxElement& x, const Epimorphism& f,
                const Representation& rep) {
    const Ring& R = rep.ring();
    const Group& G = rep.group();
    const unsigned d = rep.dim();
    PolyMat out(d, d, R);
    if (rep.monomial()) {
        for (const auto& [c, word] : x.terms) {
            Monomial m = Monomial::identity(d, R);
            for (int l : word) {
                unsigned g = f(static_cast<unsigned>(std::abs(l)) - 1);
                if (l > 0)
                    m.mul_letter(rep, g, 1);
                else
                    m.mul_letter(rep, G->inv(g), -1);
            }
            add_monomial(out, m, c, 0, 0, R);
        }
        return out;
    }
    // dense representation path
    for (const auto& [c, word] : x.terms) {
        // accumulate product of per-letter polynomial matrices
        PolyMat prod(d, d, R);
        for (unsigned i = 0; i < d; ++i)
            prod.at(i, i) = LaurentPoly::constant(R->one());
        for (int l : word) {
            unsigned g = f(static_cast<unsigned>(std::abs(l)) - 1);
            Mat m = (l > 0) ? rep.matrix(g) : rep.matrix(G->inv(g));
            long s = (l > 0) ? 1 : -1;
            PolyMat next(d, d, R);
            for (unsigned i = 0; i < d; ++i)
                for (unsigned k = 0; k < d; ++k) {
                    if (prod.at(i, k).is_zero()) continue;
                    for (unsigned j = 0; j < d; ++j) {
                        if (m.at(k, j).is_zero()) continue;
                        next.at(i, j) +=
                            prod.at(i, k) * LaurentPoly::term(m.at(k, j), s);
                    }
                }
            prod = std::move(next);
        }
        RingElem cc = R->from_int(c);
        for (unsigned i = 0; i < d; ++i)
            for (unsigned j = 0; j < d; ++j)
                out.at(i, j) += prod.at(i, j).scale(cc);
    }
    return out;
}

TwistedAlexander twisted_alexander(const WirtingerPresentation& K,
                                   const Epimorphism& f,
                                   const Representation& rep,
                                   std::optional<unsigned> column) {
    K.validate();
    const Ring& R = rep.ring();
    const Group& G = rep.group();
    const unsigned d = rep.dim();
    const unsigned n = K.n;
    unsigned j = column.value_or(n - 1);  // zero-based deleted column
    if (j >= n) throw KnotError("twisted_alexander: column out of range");
    // denominator det Phi(s_j - 1) = det(t*rho(f(s_j)) - I)
    FoxElement sj_minus_1;
    sj_minus_1.add(1, FreeWord{static_cast<int>(j) + 1});
    sj_minus_1.add(-1, FreeWord{});
    PolyMat denm = phi_fox(sj_minus_1, f, rep);
    LaurentPoly den = poly_det(denm);
    if (den.is_zero())
        throw KnotError("twisted_alexander: det Phi(s_j - 1) = 0");
    LaurentPoly num(R);
    if (n == 1) {
        num = LaurentPoly::constant(R->one());
    } else {
        PolyMat M((n - 1) * d, (n - 1) * d, R);
        for (unsigned i = 0; i + 1 < n; ++i) {
            unsigned cc = 0;
            for (unsigned c = 0; c < n; ++c) {
                if (c == j) continue;
                FoxElement dr = fox_derivative(K.relators[i], c);
                PolyMat blk = phi_fox(dr, f, rep);
                for (unsigned r = 0; r < d; ++r)
                    for (unsigned s = 0; s < d; ++s)
                        M.at(i * d + r, cc * d + s) = std::move(blk.at(r, s));
                ++cc;
            }
        }
        num = poly_det(M);
    }
    (void)G;
    TwistedAlexander T{RationalLaurent(num, den).reduced(), LaurentPoly(R),
                       LaurentPoly(R), K.name, j};
    T.norm_num = normalize_unit(T.value.num());
    T.norm_den = normalize_unit(T.value.den());
    return T;
}

bool is_vanishing(const TwistedAlexander& T) { return T.value.num().is_zero(); }

}  // namespace tav
