#pragma once

#include "tav/laurent.hpp"

namespace tav {

struct KnotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Word in a free group: letters +-(i+1) mean s_i^{+-1} (i zero-based).
using FreeWord = std::vector<int>;

FreeWord free_reduce(const FreeWord& w);
FreeWord free_inverse(const FreeWord& w);
long exponent_sum(const FreeWord& w);

/// Element of Z[F_n]: merged list of (integer coefficient, reduced word).
struct FoxElement {
    std::vector<std::pair<long, FreeWord>> terms;

    void add(long c, const FreeWord& w);
    FoxElement operator+(const FoxElement& o) const;
    /// Left-multiply every term's word by w.
    FoxElement premul(const FreeWord& w) const;
};

/// d w / d s_j (j zero-based).
FoxElement fox_derivative(const FreeWord& w, unsigned j);

/// Knot group presentation <s_1..s_n | r_1..r_{n-1}> with meridian generators.
struct WirtingerPresentation {
    std::string name;
    unsigned n = 1;
    std::vector<FreeWord> relators;

    /// Verifies relator count and zero exponent sums.
    void validate() const;
};

/// Bundled knots: unknot, 3_1, 4_1, 5_1, 5_2, 6_1, 6_2, 6_3, 7_1..7_7.
/// Each is checked against its recorded Alexander polynomial at load time.
WirtingerPresentation builtin_knot(const std::string& name);
std::vector<std::string> builtin_knot_names();

/// Parse the JSON knot format
/// {"name": "...", "generators": n, "relators": [["s1","s2^-1",...], ...]}.
WirtingerPresentation knot_from_json(const std::string& json_text);

/// Presentation of the closure of a braid word (letters +-i for sigma_i^+-1)
/// on `strands` strands; the closure must be a knot.
WirtingerPresentation braid_closure_presentation(const std::string& name,
                                                 const std::vector<int>& word,
                                                 unsigned strands);

/// Schubert 2-bridge presentation of b(p,q): two generators, one relator.
WirtingerPresentation two_bridge_presentation(const std::string& name,
                                              unsigned p, unsigned q);

/// Abelianized Fox derivative: every generator maps to t.
LaurentPoly fox_abelianized(const FreeWord& w, unsigned j, const Ring& Z);

/// Classical Alexander polynomial, normalized (min exponent 0, positive
/// leading coefficient); asserts |Delta(1)| = 1.
LaurentPoly alexander_polynomial(const WirtingerPresentation& K);

}  // namespace tav
