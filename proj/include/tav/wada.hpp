#pragma once

#include "tav/epi.hpp"
#include "tav/polydet.hpp"
#include "tav/rep.hpp"

namespace tav {

/// Image of a group-ring element under phi (x) rho: each letter s_i^{+-1}
/// maps to (t * rho(f(s_i)))^{+-1}, words multiply, terms add.
PolyMat phi_word(const FreeWord& w, const Epimorphism& f,
                 const Representation& rep);
PolyMat phi_fox(const FoxElement& x, const Epimorphism& f,
                const Representation& rep);

struct TwistedAlexander {
    RationalLaurent value;       // reduced det M_j / det Phi(s_j - 1)
    LaurentPoly norm_num;        // unit-normalized reduced numerator
    LaurentPoly norm_den;        // unit-normalized reduced denominator
    std::string knot;
    unsigned deleted_column = 0;
};

/// Wada's invariant for the deleted block column j (default: last).
TwistedAlexander twisted_alexander(const WirtingerPresentation& K,
                                   const Epimorphism& f,
                                   const Representation& rep,
                                   std::optional<unsigned> column = std::nullopt);

bool is_vanishing(const TwistedAlexander& T);

}  // namespace tav
