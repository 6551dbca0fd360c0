#pragma once

#include <complex>
#include <vector>

#include "cubelab/expsums.hpp"
#include "cubelab/forms.hpp"
#include "cubelab/halfexp.hpp"
#include "cubelab/intpoly.hpp"

namespace cubelab {

// dim H^{m*}_prim = (2^{m-1} + 2(-1)^{m-3}) / 3: 2 at m=4, 6 at m=5, 10 at m=6.
int middle_dim(int m);

struct ZetaOptions {
    // pivot-histogram convolution up to this q; character transform above
    int64_t pivot_threshold = 4096;
    i128 cell_bound = i128(1) << 32;  // q^2 histogram cells
    bool use_cache = true;
};

// Per-(F, c, p) zeta data: projective counts of the section over F_{p^r},
// middle-cohomology traces, and the (possibly partial) normalized Frobenius
// characteristic polynomial P(t) = prod_j (1 - beta_j t), |beta_j| = sqrt(p).
struct SectionZetaData {
    std::vector<int64_t> form;
    CVector c;
    int64_t p = 0;
    int m = 0;
    std::vector<Int> counts;  // counts[r-1] = rho_c(p^r)
    std::vector<Int> traces;  // traces[r-1] = sum_j beta_j^r
    std::vector<Int> coeffs;  // t^0..t^R of P, full degree when complete
    bool complete = false;
    int dim = 0;

    IntPolynomial charpoly() const { return IntPolynomial(coeffs); }
};

struct LocalFactorCoeffs {
    int64_t p = 0;
    std::vector<HalfExp> lambda;  // lambda~_c(p^l) for l = 0..L
};

struct WeilReport {
    std::vector<std::complex<double>> reciprocal_roots;
    double max_modulus_deviation = 0;  // max | |beta| - sqrt(p) |
    std::vector<Int> funceq_residuals;  // c_{h+i} - p^i c_{h-i}, exact
    bool funceq_exact = false;
};

// Exact projective count of the hyperplane section over F_{p^r}.
// Preconditions: p good for the ambient form (p does not divide 3 F_1..F_m),
// some c_i invertible mod p.
Int count_section_ext(const DiagonalCubicForm& F, const CVector& c, int64_t p, int r,
                      const ZetaOptions& opts = {});

// Assemble P from counts r = 1..min(R, dim/2); completes the upper half by
// the functional equation coeff(t^{h+i}) = p^i coeff(t^{h-i}) and verifies
// any overdetermined data.  Full assembly for m in {4, 6}.
SectionZetaData frobenius_charpoly(const DiagonalCubicForm& F, const CVector& c,
                                   int64_t p, int depth, const ZetaOptions& opts = {});

std::vector<std::pair<IntPolynomial, int>> charpoly_factor(const SectionZetaData& data);

LocalFactorCoeffs local_factor_coeffs(const SectionZetaData& data, int L);

WeilReport weil_report(const SectionZetaData& data);
WeilReport weil_report_poly(const IntPolynomial& poly, int64_t p);

// Count over F_{p^r} predicted by the completed charpoly.
Int predicted_count(const SectionZetaData& data, int r);

}  // namespace cubelab
