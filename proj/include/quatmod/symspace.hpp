#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "quatmod/qalg.hpp"
#include "quatmod/rng.hpp"

namespace quatmod::symspace {

using qalg::Complex;
using qalg::MatC;

enum class Realization { Z, H, B };

// (H, K, u0) data of one realization of the real group:
// G = {g : g* H g = H, tg K g = K} acting on {z : U(z) = [z; u0] in Omega}.
// Hpair is H normalized so that -i U(z)* Hpair U(z) is positive definite on the
// domain (for Z and H it equals Hform; for B it is -Hform).
struct RealizationData {
    Realization tag = Realization::Z;
    int m = 0, r = 0, n = 0;
    MatC Hform, Kform;  // 2n x 2n
    MatC Hpair;         // 2n x 2n
    MatC u0;            // n x n
};

RealizationData zRealization(int m, int r);
RealizationData hRealization(int n);
RealizationData bRealization(int n);

struct DomainPoint {
    Realization tag = Realization::Z;
    int m = 0, r = 0;  // meaningful for Z; for H/B the size comes from z
    MatC z;

    int n() const { return int(z.rows()); }
};

DomainPoint origin(const RealizationData& re);  // i 1_n for Z/H, 0 for B
RealizationData realizationOf(const DomainPoint& z);

struct AutomorphyData {
    MatC lambda;
    Complex j;  // det(lambda)
};

struct PairingData {
    MatC eta;
    Complex delta;  // det(eta)
};

struct Tolerances {
    double eq = 1e-9;       // equality residuals
    double closure = 1e-8;  // closure / cocycle checks
    double pos = 1e-9;      // margin on smallest eigenvalue
};

bool membership(const DomainPoint& z, const Tolerances& tol = {});

// Frame conditions directly: t(U) K U = 0 and -i U* Hpair U > 0 for U = [z; u0].
// Equivalent to the explicit predicates on the built-in realizations, and the
// only available membership test for transported realizations (e.g. the
// doubling target).
bool frameMembership(const RealizationData& re, const MatC& z, const Tolerances& tol = {});

// g z = (a z + b u0)(c z + d u0)^{-1} u0,  lambda(g, z) = u0^{-1}(c z + d u0).
std::pair<DomainPoint, AutomorphyData> act(const MatC& g, const DomainPoint& z,
                                           const Tolerances& tol = {});

// Same action with explicit realization data (the point is a raw matrix).
std::pair<MatC, AutomorphyData> actData(const RealizationData& re, const MatC& g, const MatC& z,
                                        const Tolerances& tol = {});

// eta(z1, z2) = i(z1* - z2) on Z and H,  i(z1* z2 - 1) on B;  delta = det(eta).
PairingData etaDelta(const DomainPoint& z1, const DomainPoint& z2);

// -i U(z1)* Hpair U(z2): the pairing with eta(z, z) > 0 used by the
// realization-comparison identities.
MatC etaPairing(const RealizationData& re, const MatC& z1, const MatC& z2);

DomainPoint cayley(const DomainPoint& zH);         // z -> (z - i)(z + i)^{-1}
DomainPoint cayleyInverse(const DomainPoint& zB);  // w -> i(1 + w)(1 - w)^{-1}

// The comparison map induced by R [z; u01] = [z2; u02] mu(z).
std::pair<DomainPoint, MatC> realizationMap(const MatC& R, const DomainPoint& z, const MatC& u01,
                                            const MatC& u02, Realization targetTag);

// R implementing H -> B with rho = Cayley; conjugation by it maps the H-group
// onto the B-group.
MatC cayleyR(int n);

// |delta(z)|^{-(n-1)}; the density of the invariant measure.
double measureDensity(const DomainPoint& z);

// Membership of g in the realization's group, to tolerance.
bool inGroup(const MatC& g, const RealizationData& re, double tol = 1e-9);

// Real basis of the Lie algebra {X : X* H + H X = 0, tX K + K X = 0}.
std::vector<MatC> lieBasis(const RealizationData& re);

// exp of a random Lie-algebra element; lands in the group to ~1e-12.
MatC randomGroupElementNumeric(const RealizationData& re, Rng& rng, double scale = 0.25);

// Same, restricted to the stabilizer of the origin.
MatC randomStabilizerElement(const RealizationData& re, Rng& rng, double scale = 0.25);

// Smallest eigenvalue of the hermitian part of M (numeric positivity helper).
double smallestEigenvalue(const MatC& hermitian);

// Sylvester-style cross-check: all leading principal minors positive.
bool leadingMinorsPositive(const MatC& hermitian, double tol = 1e-12);

}  // namespace quatmod::symspace
