#include "tav/rep.hpp"

#include <random>

namespace tav {

Mat Mat::identity(unsigned n, const Ring& R) {
    Mat m(n, R);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = R->one();
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (n != o.n) throw RingError("Mat: size mismatch");
    const Ring& R = a[0].ring();
    Mat r(n, R);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
            const RingElem& x = at(i, k);
            if (x.is_zero()) continue;
            for (unsigned j = 0; j < n; ++j) {
                const RingElem& y = o.at(k, j);
                if (!y.is_zero()) r.at(i, j) += x * y;
            }
        }
    return r;
}

bool Mat::operator==(const Mat& o) const {
    if (n != o.n) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != o.a[i]) return false;
    return true;
}

RingElem Mat::trace() const {
    RingElem s = a[0].ring()->zero();
    for (unsigned i = 0; i < n; ++i) s += at(i, i);
    return s;
}

bool Character::operator==(const Character& o) const {
    if (group->order() != o.group->order() || values.size() != o.values.size())
        return false;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] != o.values[i]) return false;
    return true;
}

Mat Representation::matrix(unsigned g) const {
    if (!monomial_) return dense_[g];
    Mat m(dim_, R_);
    for (unsigned i = 0; i < dim_; ++i) m.at(i, perm_[g][i]) = wt_[g][i];
    return m;
}

void Representation::verify() const {
    // identity image
    if (!(matrix(0) == Mat::identity(dim_, R_)))
        throw GroupError("Representation: image of identity is not I");
    unsigned N = G_->order();
    auto gens = G_->generating_set();
    auto check = [&](unsigned a, unsigned b) {
        if (monomial_) {
            unsigned ab = G_->mul(a, b);
            for (unsigned i = 0; i < dim_; ++i) {
                unsigned mid = perm_[a][i];
                if (perm_[ab][i] != perm_[b][mid] ||
                    wt_[ab][i] != wt_[a][i] * wt_[b][mid])
                    throw GroupError("Representation: not a homomorphism");
            }
        } else {
            if (!(dense_[G_->mul(a, b)] == dense_[a] * dense_[b]))
                throw GroupError("Representation: not a homomorphism");
        }
    };
    for (unsigned a : gens)
        for (unsigned b : gens) check(a, b);
    std::mt19937_64 rng(0xC0FFEEu);
    std::uniform_int_distribution<unsigned> pick(0, N - 1);
    for (int k = 0; k < 100; ++k) {
        unsigned a = pick(rng), b = pick(rng), c = pick(rng);
        check(a, b);
        check(G_->mul(a, b), c);
    }
}

Representation Representation::regular(const Group& G, const Ring& R) {
    Representation rep;
    rep.G_ = G;
    rep.R_ = R;
    rep.dim_ = G->order();
    rep.monomial_ = true;
    rep.perm_.resize(G->order());
    rep.wt_.resize(G->order());
    for (unsigned g = 0; g < G->order(); ++g) {
        rep.perm_[g].resize(G->order());
        rep.wt_[g].assign(G->order(), R->one());
        for (unsigned i = 0; i < G->order(); ++i)
            rep.perm_[g][i] = G->mul(i, g);  // right multiplication
    }
    rep.verify();
    return rep;
}

Representation Representation::coset(const Group& G, const Subgroup& H,
                                     const Ring& R) {
    unsigned N = G->order();
    // right cosets Hg, indexed by canonical (minimal) representative
    std::vector<unsigned> canon(N);
    for (unsigned g = 0; g < N; ++g) {
        unsigned mn = N;
        for (unsigned h : H.members) mn = std::min(mn, G->mul(h, g));
        canon[g] = mn;
    }
    std::vector<unsigned> reps;
    for (unsigned g = 0; g < N; ++g)
        if (canon[g] == g) reps.push_back(g);
    std::vector<unsigned> idx(N);
    for (unsigned i = 0; i < reps.size(); ++i) idx[reps[i]] = i;
    unsigned d = static_cast<unsigned>(reps.size());
    Representation rep;
    rep.G_ = G;
    rep.R_ = R;
    rep.dim_ = d;
    rep.monomial_ = true;
    rep.perm_.resize(N);
    rep.wt_.resize(N);
    for (unsigned g = 0; g < N; ++g) {
        rep.perm_[g].resize(d);
        rep.wt_[g].assign(d, R->one());
        for (unsigned i = 0; i < d; ++i)
            rep.perm_[g][i] = idx[canon[G->mul(reps[i], g)]];
    }
    rep.verify();
    return rep;
}

Representation Representation::trivial(const Group& G, const Ring& R,
                                       unsigned dim) {
    Representation rep;
    rep.G_ = G;
    rep.R_ = R;
    rep.dim_ = dim;
    rep.monomial_ = true;
    rep.perm_.assign(G->order(), {});
    rep.wt_.assign(G->order(), {});
    for (unsigned g = 0; g < G->order(); ++g) {
        rep.perm_[g].resize(dim);
        rep.wt_[g].assign(dim, R->one());
        for (unsigned i = 0; i < dim; ++i) rep.perm_[g][i] = i;
    }
    rep.verify();
    return rep;
}

Representation Representation::character_rep(const Group& Ckn, unsigned j,
                                             const Ring& R) {
    unsigned kn = Ckn->order();
    // require the standard cyclic table
    for (unsigned a = 0; a < kn; ++a)
        for (unsigned b = 0; b < kn; ++b)
            if (Ckn->mul(a, b) != (a + b) % kn)
                throw GroupError("character_rep: not the standard cyclic group");
    if (R->kind() != CoeffRing::Kind::Cyclotomic || R->conductor() != kn)
        throw GroupError("character_rep: ring must be cyclotomic of conductor kn");
    RingElem zeta = R->generator();
    Representation rep;
    rep.G_ = Ckn;
    rep.R_ = R;
    rep.dim_ = 1;
    rep.monomial_ = true;
    rep.perm_.assign(kn, {0u});
    rep.wt_.resize(kn);
    for (unsigned l = 0; l < kn; ++l)
        rep.wt_[l] = {zeta.pow(mpz_class(static_cast<unsigned long>(j) * l))};
    rep.verify();
    return rep;
}

Representation Representation::from_matrices(const Group& G, const Ring& R,
                                             std::vector<Mat> images) {
    if (images.size() != G->order())
        throw GroupError("from_matrices: wrong image count");
    Representation rep;
    rep.G_ = G;
    rep.R_ = R;
    rep.dim_ = images[0].n;
    rep.monomial_ = false;
    rep.dense_ = std::move(images);
    for (const auto& m : rep.dense_)
        if (m.n != rep.dim_) throw GroupError("from_matrices: ragged dimensions");
    rep.verify();
    return rep;
}

Representation Representation::compose(const GroupHom& hom) const {
    if (hom.codomain->order() != G_->order())
        throw GroupError("compose: hom codomain mismatch");
    Representation rep;
    rep.G_ = hom.domain;
    rep.R_ = R_;
    rep.dim_ = dim_;
    rep.monomial_ = monomial_;
    unsigned N = hom.domain->order();
    if (monomial_) {
        rep.perm_.resize(N);
        rep.wt_.resize(N);
        for (unsigned g = 0; g < N; ++g) {
            rep.perm_[g] = perm_[hom(g)];
            rep.wt_[g] = wt_[hom(g)];
        }
    } else {
        rep.dense_.resize(N);
        for (unsigned g = 0; g < N; ++g) rep.dense_[g] = dense_[hom(g)];
    }
    rep.verify();
    return rep;
}

Representation Representation::tensor(const Representation& A,
                                      const Representation& B) {
    if (A.G_->order() != B.G_->order() || !same_ring(A.R_, B.R_))
        throw GroupError("tensor: group/ring mismatch");
    unsigned N = A.G_->order();
    Representation rep;
    rep.G_ = A.G_;
    rep.R_ = A.R_;
    rep.dim_ = A.dim_ * B.dim_;
    if (A.monomial_ && B.monomial_) {
        rep.monomial_ = true;
        rep.perm_.resize(N);
        rep.wt_.resize(N);
        for (unsigned g = 0; g < N; ++g) {
            rep.perm_[g].resize(rep.dim_);
            rep.wt_[g].reserve(rep.dim_);
            for (unsigned i = 0; i < A.dim_; ++i)
                for (unsigned j = 0; j < B.dim_; ++j) {
                    rep.perm_[g][i * B.dim_ + j] =
                        A.perm_[g][i] * B.dim_ + B.perm_[g][j];
                    rep.wt_[g].push_back(A.wt_[g][i] * B.wt_[g][j]);
                }
        }
    } else {
        rep.monomial_ = false;
        rep.dense_.resize(N);
        for (unsigned g = 0; g < N; ++g) {
            Mat a = A.matrix(g), b = B.matrix(g);
            Mat m(rep.dim_, rep.R_);
            for (unsigned i = 0; i < A.dim_; ++i)
                for (unsigned j = 0; j < A.dim_; ++j)
                    for (unsigned k = 0; k < B.dim_; ++k)
                        for (unsigned l = 0; l < B.dim_; ++l)
                            m.at(i * B.dim_ + k, j * B.dim_ + l) =
                                a.at(i, j) * b.at(k, l);
            rep.dense_[g] = std::move(m);
        }
    }
    rep.verify();
    return rep;
}

Representation Representation::direct_sum(const std::vector<Representation>& parts) {
    if (parts.empty()) throw GroupError("direct_sum: empty");
    unsigned N = parts[0].G_->order();
    unsigned dim = 0;
    bool mono = true;
    for (const auto& p : parts) {
        if (p.G_->order() != N || !same_ring(p.R_, parts[0].R_))
            throw GroupError("direct_sum: group/ring mismatch");
        dim += p.dim_;
        mono = mono && p.monomial_;
    }
    Representation rep;
    rep.G_ = parts[0].G_;
    rep.R_ = parts[0].R_;
    rep.dim_ = dim;
    rep.monomial_ = mono;
    if (mono) {
        rep.perm_.resize(N);
        rep.wt_.resize(N);
        for (unsigned g = 0; g < N; ++g) {
            unsigned off = 0;
            for (const auto& p : parts) {
                for (unsigned i = 0; i < p.dim_; ++i) {
                    rep.perm_[g].push_back(off + p.perm_[g][i]);
                    rep.wt_[g].push_back(p.wt_[g][i]);
                }
                off += p.dim_;
            }
        }
    } else {
        rep.dense_.resize(N);
        for (unsigned g = 0; g < N; ++g) {
            Mat m(dim, rep.R_);
            unsigned off = 0;
            for (const auto& p : parts) {
                Mat pm = p.matrix(g);
                for (unsigned i = 0; i < p.dim_; ++i)
                    for (unsigned j = 0; j < p.dim_; ++j)
                        m.at(off + i, off + j) = pm.at(i, j);
                off += p.dim_;
            }
            rep.dense_[g] = std::move(m);
        }
    }
    rep.verify();
    return rep;
}

Character Representation::character() const {
    Character chi;
    chi.group = G_;
    for (const auto& cls : G_->conjugacy_classes()) {
        unsigned g = cls[0];
        if (monomial_) {
            RingElem s = R_->zero();
            for (unsigned i = 0; i < dim_; ++i)
                if (perm_[g][i] == i) s += wt_[g][i];
            chi.values.push_back(s);
        } else {
            chi.values.push_back(dense_[g].trace());
        }
    }
    return chi;
}

}  // namespace tav
