#pragma once

#include "tav/group.hpp"
#include "tav/rings.hpp"

namespace tav {

/// Dense square matrix over a CoeffRing.
struct Mat {
    unsigned n = 0;
    std::vector<RingElem> a;

    Mat() = default;
    Mat(unsigned n_, const Ring& R)
        : n(n_), a(static_cast<std::size_t>(n_) * n_, R->zero()) {}
    RingElem& at(unsigned i, unsigned j) { return a[i * n + j]; }
    const RingElem& at(unsigned i, unsigned j) const { return a[i * n + j]; }
    static Mat identity(unsigned n, const Ring& R);
    Mat operator*(const Mat& o) const;
    bool operator==(const Mat& o) const;
    RingElem trace() const;
};

/// Character: trace per conjugacy class, in conjugacy_classes() order.
struct Character {
    Group group;
    std::vector<RingElem> values;

    bool operator==(const Character& o) const;
};

/// Verified representation of a finite group over a CoeffRing.
/// Monomial-backed where possible (permutation reps, 1-dim twists, tensors
/// of those): row i of M(g) has its single nonzero wt(g,i) at column
/// col(g,i), so matrices are materialized only on demand.
class Representation {
public:
    static Representation regular(const Group& G, const Ring& R);
    /// Right action on right cosets Hg; H need not be normal.
    static Representation coset(const Group& G, const Subgroup& H, const Ring& R);
    static Representation trivial(const Group& G, const Ring& R, unsigned dim = 1);
    /// 1-dim rep of the standard cyclic group C_kn: x^l -> zeta_{kn}^{jl},
    /// over cyclotomic(kn).
    static Representation character_rep(const Group& Ckn, unsigned j, const Ring& R);
    /// Dense matrices; verified on generator pairs plus 100 random triples.
    static Representation from_matrices(const Group& G, const Ring& R,
                                        std::vector<Mat> images);

    /// g -> rep(hom(g)); rep of hom's domain.
    Representation compose(const GroupHom& hom) const;
    static Representation tensor(const Representation& a, const Representation& b);
    static Representation direct_sum(const std::vector<Representation>& parts);

    const Group& group() const { return G_; }
    const Ring& ring() const { return R_; }
    unsigned dim() const { return dim_; }
    bool monomial() const { return monomial_; }
    unsigned col(unsigned g, unsigned i) const { return perm_[g][i]; }
    const RingElem& wt(unsigned g, unsigned i) const { return wt_[g][i]; }
    Mat matrix(unsigned g) const;

    Character character() const;

private:
    Representation() = default;
    void verify() const;

    Group G_;
    Ring R_;
    unsigned dim_ = 0;
    bool monomial_ = false;
    std::vector<std::vector<unsigned>> perm_;  // monomial storage
    std::vector<std::vector<RingElem>> wt_;
    std::vector<Mat> dense_;
};

}  // namespace tav
