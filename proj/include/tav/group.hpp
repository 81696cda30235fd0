#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

namespace tav {

struct GroupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class FiniteGroup;
using Group = std::shared_ptr<const FiniteGroup>;

/// Cayley-table finite group. Identity is index 0. Construction verifies
/// associativity (exhaustively for order <= 64, by Light's test on a
/// generating set otherwise), the Latin-square property, and inverses.
class FiniteGroup {
public:
    /// mul given as flat row-major order*order table; identity may be anywhere
    /// and is renumbered to index 0.
    static Group make(std::string name, unsigned order, std::vector<unsigned> mul,
                      std::vector<std::string> labels);

    const std::string& name() const { return name_; }
    unsigned order() const { return n_; }
    unsigned mul(unsigned a, unsigned b) const { return mul_[a * n_ + b]; }
    unsigned inv(unsigned a) const { return inv_[a]; }
    unsigned conj(unsigned g, unsigned x) const {  // x^-1 g x
        return mul(mul(inv(x), g), x);
    }
    const std::string& label(unsigned a) const { return labels_[a]; }
    std::optional<unsigned> index_of_label(const std::string& l) const;

    unsigned element_order(unsigned a) const;
    bool is_abelian() const;
    /// Small generating set found greedily (largest subgroup growth first).
    std::vector<unsigned> generating_set() const;
    const std::vector<std::vector<unsigned>>& conjugacy_classes() const;

private:
    FiniteGroup() = default;
    unsigned n_ = 1;
    std::string name_;
    std::vector<unsigned> mul_, inv_;
    std::vector<std::string> labels_;
    mutable std::vector<std::vector<unsigned>> classes_;  // lazy
};

/// Subgroup as a sorted member index set; closure verified on construction.
struct Subgroup {
    Group parent;
    std::vector<unsigned> members;  // sorted, contains 0

    Subgroup(Group parent, std::vector<unsigned> members);
    unsigned order() const { return static_cast<unsigned>(members.size()); }
    bool contains(unsigned g) const;
    bool is_normal() const;
};

/// Verified homomorphism: images[a*b] == images[a]*images[b] checked for all pairs.
struct GroupHom {
    Group domain, codomain;
    std::vector<unsigned> images;

    GroupHom(Group domain, Group codomain, std::vector<unsigned> images);
    unsigned operator()(unsigned g) const { return images[g]; }
    bool is_surjective() const;
    Subgroup kernel() const;
    static GroupHom identity(const Group& G);
    GroupHom compose(const GroupHom& inner) const;  // this o inner
};

// ---- constructions ----

Group cyclic_group(unsigned m);
Group dihedral_group(unsigned n);   // order 2n
Group dicyclic_group(unsigned n);   // order 4n
Group symmetric_group(unsigned n);
Group alternating_group(unsigned n);
Group product_group(const Group& a, const Group& b);
/// C_p x| C_m with action a -> a^r; requires gcd(r,p)=1 and r^m = 1 mod p.
Group semidirect_group(unsigned p, unsigned m, unsigned r);
/// A x| C_m where the automorphism of A is given as an index permutation
/// with phi^m = id. Used for catalog groups outside the DSL grammar.
Group semidirect_by_aut(const Group& A, unsigned m,
                        const std::vector<unsigned>& phi, const std::string& name);

/// Parse and build from the GroupSpec DSL:
/// cyclic:m, dihedral:n, dicyclic:n, symmetric:n, alternating:n,
/// product(S,S), semidirect(p,m,r), quotient(S,<central element label>),
/// pullback(S,k,n).
Group build_group(const std::string& spec, unsigned order_cap = 2000);

// ---- structural operations ----

Subgroup generated_subgroup(const Group& G, const std::vector<unsigned>& gens);
Subgroup normal_closure(const Group& G, const std::vector<unsigned>& S);
Subgroup commutator_subgroup(const Group& G);
Subgroup center(const Group& G);
/// p if |H| = p^k, k >= 1; nullopt otherwise. |H| = 1 -> nullopt here
/// (treated as a p-group by TAV logic separately).
std::optional<unsigned> is_p_group(unsigned order);

std::pair<Group, GroupHom> quotient_group(const Group& G, const Subgroup& N);
std::pair<Group, GroupHom> abelianization(const Group& G);

std::pair<bool, std::optional<unsigned>> weight_le_one(const Group& G);
bool is_tav_group(const Group& G);
/// Requires weight_le_one; false iff some nontrivial central cyclic C
/// meets G' trivially.
bool is_seed(const Group& G);

/// Pull-back central extension data.
struct PullbackExt {
    Group Gkn;
    GroupHom pr;    // G_{k,n} -> G1
    GroupHom pr2;   // G_{k,n} -> C_{kn} (abelianization)
    GroupHom iota;  // C_n -> Z(G_{k,n})
    unsigned k = 1, n = 1;
};

/// G_{k,n} = {(z, x^l) : pi(z) = pi_k(x^l)}; pi is the abelianization of G1,
/// identified with C_k by sending the class of `designated` (default: any
/// generator of the abelianization) to the standard generator.
PullbackExt pullback_extension(const Group& G1, unsigned k, unsigned n,
                               std::optional<unsigned> designated = std::nullopt);

bool isomorphic(const Group& A, const Group& B);

/// All groups of order <= max_order up to isomorphism (max_order <= 23).
std::vector<Group> catalog_groups(unsigned max_order);

}  // namespace tav
