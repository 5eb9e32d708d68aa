#pragma once

#include <vector>

#include "quatmod/qalg.hpp"
#include "quatmod/rng.hpp"

namespace quatmod::groups {

using qalg::MatQuat;
using qalg::Quat;
using qalg::QuatAlgebra;

// phi = [[0, 0, -1_m], [0, zeta 1_r, 0], [1_m, 0, 0]],  n = 2m + r,  phi* = -phi.
struct SkewHermitianForm {
    int m = 0, r = 0;
    QuatAlgebra alg;
    MatQuat mat;

    int n() const { return 2 * m + r; }
};

SkewHermitianForm standardForm(int m, int r, QuatAlgebra alg);

// g* phi g = phi and reduced det g = 1, both exact.
bool isGroupElement(const MatQuat& g, const SkewHermitianForm& form);

struct GroupElement {
    SkewHermitianForm form;
    MatQuat mat;

    GroupElement(SkewHermitianForm f, MatQuat g);  // verifies membership
};

GroupElement groupIdentity(const SkewHermitianForm& form);
MatQuat groupInverse(const MatQuat& g, const SkewHermitianForm& form);  // phi^{-1} g* phi

struct CongruenceLevel {
    long N = 1;
    std::vector<std::pair<long, int>> factorization;  // p^e with p^e || N

    explicit CongruenceLevel(long N);
};

// [[q, sigma q^], [0, q^]] on the split form (r = 0), q^ = (q*)^{-1}.
GroupElement siegelElement(const MatQuat& q, const MatQuat& sigma, const SkewHermitianForm& form);

bool klingenMember(const MatQuat& x, int t, const SkewHermitianForm& form);
MatQuat klingenProject(const MatQuat& x, int t, const SkewHermitianForm& form);

// section of the Klingen projection: G_{2t+r} -> P_n^t  (identity on the complement)
MatQuat embedKlingen(const MatQuat& xi, int t, const SkewHermitianForm& form);

// kappa_t = [[0, 0, -1_t], [0, 1_r, 0], [1_t, 0, 0]], an element of G_{2t+r}.
MatQuat kappaElement(int t, int r, QuatAlgebra alg);

// true iff g is congruent to [[1_m, *, *], [0, 1_r, *], [0, 0, 1_m]] mod p^e
// (componentwise in order coordinates, p-adically, with p^e || N).
bool congruenceMember(const MatQuat& g, const SkewHermitianForm& form, const CongruenceLevel& level,
                      long p);
bool congruenceMemberAll(const MatQuat& g, const SkewHermitianForm& form, const CongruenceLevel& level);

// Coset representatives tau_t of P_N \ G_N / (G_n x G_n), N = 2n, and the
// modified representatives  tau~_t = tau_t * rho(1, kappa_t x 1_{2m-2t}).
GroupElement cosetRep(int t, int m, int r, QuatAlgebra alg);
GroupElement modifiedCosetRep(int t, int m, int r, QuatAlgebra alg);

// kappa_t pi_t(beta) = pi_t(gamma) kappa_t; the modified variant drops kappa_t.
bool vtCondition(const MatQuat& beta, const MatQuat& gamma, int t, const SkewHermitianForm& form);
bool vtConditionModified(const MatQuat& beta, const MatQuat& gamma, int t, const SkewHermitianForm& form);

// tau~_m * rho(xi, 1) * tau~_m^{-1}, computed exactly.  The result's block rows
// are checked against the closed-form pattern in the xi-blocks; a mismatch
// throws (it would mean the coset machinery is broken).
MatQuat conjugateByTauM(const GroupElement& xi);

// Exact random elements: words in Siegel elements and the Weyl element (split
// form r = 0 only, per the group presentation used here).
GroupElement randomGroupElementExact(uint64_t seed, const SkewHermitianForm& form, int factors = 6);

// Exact random *integral* words for any (m, r): words in hyperbolic Siegel
// elements, r-block unipotents and kappa.  With level > 1 every factor is
// congruent to 1_n mod level, hence so is the word.
GroupElement randomIntegralWord(uint64_t seed, const SkewHermitianForm& form, long level = 1,
                                int factors = 4);

}  // namespace quatmod::groups
