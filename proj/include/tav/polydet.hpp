#pragma once

#include "tav/laurent.hpp"

namespace tav {

/// Dense matrix of Laurent polynomials over a common ring.
struct PolyMat {
    unsigned rows = 0, cols = 0;
    Ring ring;
    std::vector<LaurentPoly> a;

    PolyMat(unsigned r, unsigned c, Ring rg)
        : rows(r), cols(c), ring(std::move(rg)),
          a(static_cast<std::size_t>(r) * c, LaurentPoly(ring)) {}
    LaurentPoly& at(unsigned r, unsigned c) { return a[r * cols + c]; }
    const LaurentPoly& at(unsigned r, unsigned c) const { return a[r * cols + c]; }
};

/// Exact determinant; dispatches to the engine suited to the ring and size
/// (fraction-free Bareiss, finite-field evaluation/interpolation with
/// extension-field lifting, CRT over word-size primes for Z, integer-point
/// evaluation for characteristic 0).
LaurentPoly poly_det(const PolyMat& M);

LaurentPoly poly_det_bareiss(const PolyMat& M);
/// Cofactor expansion; exponential, for small matrices and as a test oracle.
LaurentPoly poly_det_cofactor(const PolyMat& M);
/// Evaluation/interpolation over a finite field (lifting F_p to F_{p^e} when
/// the field is too small); nullopt when not applicable.
std::optional<LaurentPoly> poly_det_interp(const PolyMat& M);
/// Evaluation at integer points for fields of characteristic 0 (or large
/// enough characteristic).
std::optional<LaurentPoly> poly_det_eval(const PolyMat& M);
/// CRT over ~2^30 primes; integers only.
LaurentPoly poly_det_crt(const PolyMat& M);

}  // namespace tav
