#pragma once

#include <complex>

#include "quatmod/groups.hpp"
#include "quatmod/qalg.hpp"
#include "quatmod/symspace.hpp"

namespace quatmod::doubling {

using qalg::Complex;
using qalg::MatC;
using qalg::MatQuat;
using qalg::QuatAlgebra;

// Doubling data for G_n x G_n -> G_N, N = 2n, n = 2m + r.
//
// Exact layer: R over B with R* omega R = J_{N/2}, omega = diag[phi, -phi];
// rho(g1, g2) = R^{-1} diag[g1, g2] R.
//
// Numeric layer: Rnum (2N x 2N) together with Jfrak and the normalisation
// S = diag[1_{2m}, 1/2 1_r, 1/2 1_r, 1_{2m}] define the space-level embedding.
// The S-normalisation is applied as the frame twist Tnorm = diag(S^{1/2}, S^{-1/2}):
// iota(z1, z2) = A B^{-1} computed from Tnorm R^{-1} diag[U(z1), Jfrak conj(U(z2))],
// which is Z_N-valued and sends (z0, z0) to i 1_N.
struct DoublingContext {
    int m = 0, r = 0, n = 0, N = 0;
    QuatAlgebra alg;

    MatQuat Rexact, RexactInv;  // N x N over B
    MatQuat omega, JN;          // N x N over B

    MatC Rnum, RnumInv;  // 2N x 2N
    MatC Jfrak;          // 2n x 2n
    MatC S, Shalf;       // N x N
    MatC Tnorm;          // 2N x 2N frame twist diag(S^{1/2}, S^{-1/2}), an element of G_N-infinity
    symspace::RealizationData source;  // Z-realization of G_n
    symspace::RealizationData target;  // Z-realization of G_N  (m_N = n, r_N = 0)
};

DoublingContext buildContext(int m, int r, QuatAlgebra alg);

// rho on raw matrices; no membership check (used by the coset machinery).
MatQuat rhoExactRaw(const DoublingContext& ctx, const MatQuat& g1, const MatQuat& g2);

// rho on verified group elements; result is a verified element of G_N(J_{N/2}).
groups::GroupElement rhoEmbed(const DoublingContext& ctx, const groups::GroupElement& g1,
                              const groups::GroupElement& g2);

// Numeric rho on the Z-realizations: R^{-1} diag[g1, Jfrak conj(g2) Jfrak^{-1}] R.
MatC rhoNumeric(const DoublingContext& ctx, const MatC& g1, const MatC& g2);

// Bottom block B(z1, z2) of the stacked image, and its determinant.
std::pair<MatC, Complex> bMatrix(const DoublingContext& ctx, const symspace::DomainPoint& z1,
                                 const symspace::DomainPoint& z2);

// iota(z1, z2) = A(z1, z2) B(z1, z2)^{-1} S, a point of Z_N.
symspace::DomainPoint iotaEmbed(const DoublingContext& ctx, const symspace::DomainPoint& z1,
                                const symspace::DomainPoint& z2);

// Independent closed-form evaluation of iota (blockwise in u, v, w).
MatC iotaClosedForm(const DoublingContext& ctx, const symspace::DomainPoint& z1,
                    const symspace::DomainPoint& z2);

}  // namespace quatmod::doubling
