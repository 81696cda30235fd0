#pragma once

#include "tav/wada.hpp"

namespace tav {

struct VerificationReport {
    std::string claim;
    std::string inputs;
    std::string lhs, rhs;   // normalized polynomial/fraction text
    std::string unit;       // witness unit (ring element and t-power)
    bool pass = false;
    bool nonvanishing = false;  // LHS numerator nonzero
    double seconds = 0.0;
    std::vector<VerificationReport> stages;  // for composite checks
};

/// Row-space basis over F_p (row-reduced echelon form rows).
struct FpMatrix {
    unsigned rows = 0, cols = 0;
    std::uint64_t p = 2;
    std::vector<std::uint64_t> a;

    FpMatrix() = default;
    FpMatrix(unsigned r, unsigned c, std::uint64_t p_)
        : rows(r), cols(c), p(p_), a(static_cast<std::size_t>(r) * c, 0) {}
    std::uint64_t& at(unsigned i, unsigned j) { return a[i * cols + j]; }
    std::uint64_t at(unsigned i, unsigned j) const { return a[i * cols + j]; }
};

/// Descending chain F_p[H] = V_0 > V_1 > ... > V_N = 0 of right-action
/// submodules with trivial induced action on every quotient (powers of the
/// augmentation ideal; coincides with the monomial-degree filtration for
/// elementary abelian H).
struct FiltrationChain {
    Group H;
    unsigned p = 2;
    std::vector<FpMatrix> chain;      // RREF basis per level; last is empty
    std::vector<unsigned> dims;       // dims of the chain members
    FpMatrix change_of_basis;         // adapted basis rows (shallow levels first)
    std::vector<unsigned> level_dim;  // quotient dimension per level
};

FiltrationChain pgroup_filtration(const Group& H, unsigned p);

/// Standalone group on the subgroup's induced Cayley table (member order).
Group subgroup_as_group(const Subgroup& H);

/// Adapted basis for F_p[G] spreading the H-filtration across a right
/// transversal; rows grouped by (level, quotient vector, coset) so that the
/// conjugated regular representation of G is block upper triangular with
/// |H| diagonal blocks equal to the coset representation on H\G.
FpMatrix filtration_change_of_basis_G(const Group& G, const Subgroup& H,
                                      const FiltrationChain& chain);

/// Theorem "mod p": regular-rep invariant of G over F_p equals the coset-rep
/// invariant raised to |H| = p^n, up to unit.
VerificationReport verify_modp(const WirtingerPresentation& K,
                               const Epimorphism& f, const Subgroup& H);

/// Dihedral corollary for D_{p^n}, p odd.
VerificationReport verify_dihedral(const WirtingerPresentation& K,
                                   const Epimorphism& f);
VerificationReport verify_dihedral(const WirtingerPresentation& K, unsigned pn);

/// Cyclic case: abelianization onto C_m compared with the zeta-product over
/// F_{p^d}, d = ord_l(p), m = p^k * l.
VerificationReport verify_cyclic(const WirtingerPresentation& K, unsigned m,
                                 unsigned p);

/// Composite route: |G'| = p^n, G/G' = C_m; exponent p^{k+n}; also asserts
/// nonvanishing.
VerificationReport verify_corollary_37(const WirtingerPresentation& K,
                                       const Epimorphism& f);

/// Central-extension product formula over Q(zeta_{kn}).
VerificationReport verify_central(const WirtingerPresentation& K,
                                  const Group& G1, unsigned k, unsigned n);

std::pair<bool, std::optional<Epimorphism>> tav_membership(
    const WirtingerPresentation& K, const Group& G);

struct TavScanEntry {
    std::string group;
    unsigned order = 0;
    bool weight_one = false;
    bool derived_p_group = false;  // trivial counted as p-group
    std::string formula;           // cyclic | dihedral | cor37 | (none)
    std::vector<VerificationReport> verifications;
};

struct TavScanReport {
    unsigned total_groups = 0;
    unsigned weight_one_groups = 0;
    bool formulas_coincide_18 = false;  // C3:D3 and C3xD3 give the same formula
    bool all_nonvanishing = true;
    std::vector<TavScanEntry> entries;
};

TavScanReport tav_scan(unsigned max_order,
                       const std::vector<std::string>& corpus,
                       bool run_verifications = true);

struct TavOrderResult {
    bool found = false;
    unsigned order = 0;       // when found
    unsigned lower_bound = 0; // max_order + 1 when not found
    std::string note;
};

TavOrderResult tav_order_bounded(const WirtingerPresentation& K,
                                 unsigned max_order);

/// Thread count from TAVKIT_THREADS (default 1).
unsigned thread_count();

}  // namespace tav
