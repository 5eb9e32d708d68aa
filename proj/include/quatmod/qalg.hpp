#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "quatmod/rational.hpp"

namespace quatmod::qalg {

using MatC = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// B = (alpha, beta / Q) with basis 1, zeta, xi, zeta*xi;
// zeta^2 = alpha, xi^2 = beta, zeta*xi = -xi*zeta.  Definite: alpha, beta < 0.
struct QuatAlgebra {
    long alpha = -1;
    long beta = -1;

    QuatAlgebra() = default;
    QuatAlgebra(long a, long b) : alpha(a), beta(b) {
        if (a >= 0 || b >= 0) throw std::invalid_argument("quaternion algebra must be definite (alpha, beta < 0)");
        if (!isSquarefree(a) || !isSquarefree(b)) throw std::invalid_argument("alpha, beta must be squarefree");
    }
    bool operator==(const QuatAlgebra& o) const { return alpha == o.alpha && beta == o.beta; }
    bool operator!=(const QuatAlgebra& o) const { return !(*this == o); }
};

struct Quat {
    QuatAlgebra alg;
    Rational a, b, c, d;  // coordinates w.r.t. (1, zeta, xi, zeta*xi)

    Quat() : a(0), b(0), c(0), d(0) {}
    explicit Quat(QuatAlgebra al) : alg(al), a(0), b(0), c(0), d(0) {}
    Quat(QuatAlgebra al, Rational a_, Rational b_, Rational c_, Rational d_)
        : alg(al), a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Quat scalar(QuatAlgebra al, const Rational& t) { return Quat(al, t, 0, 0, 0); }
    static Quat zeta(QuatAlgebra al) { return Quat(al, 0, 1, 0, 0); }
    static Quat xi(QuatAlgebra al) { return Quat(al, 0, 0, 1, 0); }
    static Quat zetaXi(QuatAlgebra al) { return Quat(al, 0, 0, 0, 1); }

    bool isZero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
    bool isRationalScalar() const { return b == 0 && c == 0 && d == 0; }
    bool operator==(const Quat& o) const { return alg == o.alg && a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator!=(const Quat& o) const { return !(*this == o); }
};

Quat operator+(const Quat& x, const Quat& y);
Quat operator-(const Quat& x, const Quat& y);
Quat operator-(const Quat& x);
Quat operator*(const Quat& x, const Quat& y);
Quat operator*(const Rational& t, const Quat& x);

// main involution: a + b zeta + c xi + d zeta xi  ->  a - b zeta - c xi - d zeta xi
Quat conjugate(const Quat& x);
Rational quatTrace(const Quat& x);                     // x + conj(x) = 2a
Rational quatNorm(const Quat& x);                      // x * conj(x), positive definite
std::pair<Rational, Rational> traceNorm(const Quat& x);
Quat quatInverse(const Quat& x);

// Elements p + q*sqrt(beta) of K = Q(xi), beta < 0 squarefree.
struct QuadExt {
    long beta = -1;
    Rational p, q;

    QuadExt() : p(0), q(0) {}
    QuadExt(long be, Rational p_, Rational q_) : beta(be), p(std::move(p_)), q(std::move(q_)) {}
    static QuadExt scalar(long be, const Rational& t) { return QuadExt(be, t, 0); }

    bool isZero() const { return p == 0 && q == 0; }
    bool isRational() const { return q == 0; }
    bool operator==(const QuadExt& o) const { return beta == o.beta && p == o.p && q == o.q; }
    bool operator!=(const QuadExt& o) const { return !(*this == o); }
};

QuadExt operator+(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x);
QuadExt operator*(const QuadExt& x, const QuadExt& y);
QuadExt qconj(const QuadExt& x);  // p + q sqrt(beta) -> p - q sqrt(beta)
QuadExt qinv(const QuadExt& x);
Complex toComplex(const QuadExt& x);  // sqrt(beta) = i sqrt(|beta|)

// Dense matrices over B.
struct MatQuat {
    QuatAlgebra alg;
    int rows = 0, cols = 0;
    std::vector<Quat> e;

    MatQuat() = default;
    MatQuat(QuatAlgebra al, int r, int c) : alg(al), rows(r), cols(c), e(size_t(r) * c, Quat(al)) {}

    Quat& at(int i, int j) { return e[size_t(i) * cols + j]; }
    const Quat& at(int i, int j) const { return e[size_t(i) * cols + j]; }

    static MatQuat identity(QuatAlgebra al, int n);
    static MatQuat zero(QuatAlgebra al, int r, int c) { return MatQuat(al, r, c); }

    bool operator==(const MatQuat& o) const;
    bool operator!=(const MatQuat& o) const { return !(*this == o); }
    bool isZero() const;
    void setBlock(int i0, int j0, const MatQuat& blk);
    MatQuat block(int i0, int j0, int r, int c) const;
};

MatQuat operator+(const MatQuat& x, const MatQuat& y);
MatQuat operator-(const MatQuat& x, const MatQuat& y);
MatQuat operator-(const MatQuat& x);
MatQuat operator*(const MatQuat& x, const MatQuat& y);
MatQuat operator*(const Quat& s, const MatQuat& x);
MatQuat operator*(const Rational& s, const MatQuat& x);
MatQuat conjTranspose(const MatQuat& x);  // X* = transpose of entrywise conjugate
MatQuat transposeOnly(const MatQuat& x);
MatQuat matInverse(const MatQuat& x);     // exact, via the splitting embedding
bool isHermitian(const MatQuat& x);
bool isSkewHermitian(const MatQuat& x);

// Dense matrices over K.
struct MatQuad {
    long beta = -1;
    int rows = 0, cols = 0;
    std::vector<QuadExt> e;

    MatQuad() = default;
    MatQuad(long be, int r, int c) : beta(be), rows(r), cols(c), e(size_t(r) * c, QuadExt(be, 0, 0)) {}

    QuadExt& at(int i, int j) { return e[size_t(i) * cols + j]; }
    const QuadExt& at(int i, int j) const { return e[size_t(i) * cols + j]; }

    static MatQuad identity(long be, int n);
    bool operator==(const MatQuad& o) const;
    bool operator!=(const MatQuad& o) const { return !(*this == o); }
};

MatQuad operator+(const MatQuad& x, const MatQuad& y);
MatQuad operator-(const MatQuad& x, const MatQuad& y);
MatQuad operator*(const MatQuad& x, const MatQuad& y);
MatQuad qtranspose(const MatQuad& x);
MatQuad qconjugate(const MatQuad& x);     // entrywise K-conjugation
QuadExt qdet(const MatQuad& x);           // exact Gaussian elimination
MatQuad qmatInverse(const MatQuad& x);
MatC toComplex(const MatQuad& x);

// The splitting embedding i: B -> M_2(K),
//   a + b zeta + c xi + d zeta xi  ->  [[a + c xi, alpha(b - d xi)], [b + d xi, a - c xi]].
MatQuad splitEmbed(const Quat& x);
MatQuad matSplitEmbed(const MatQuat& x);
MatQuat splitPullback(const MatQuad& x, QuatAlgebra alg);  // inverse of matSplitEmbed on its image

// Reduced determinant / trace: det and trace of the split embedding.  Both are
// provably rational; a surviving sqrt(beta) part signals a bug and throws.
std::pair<Rational, Rational> reducedDetTrace(const MatQuat& x);
Rational reducedDet(const MatQuat& x);
Rational reducedTrace(const MatQuat& x);

// lambda(tau, sigma) = (1/2) * reduced trace of tau*sigma.
Rational lambdaPairing(const MatQuat& tau, const MatQuat& sigma);

// Numeric embedding M_n(B (x) R) = M_n(H) -> M_{2n}(C) in the Hamilton basis
// zeta -> sqrt(|alpha|) i, xi -> sqrt(|beta|) j.  Image satisfies conj(x) J'_n = J'_n x.
MatC realEmbed(const MatQuat& x);
MatC jPrime(int n);   // diag[J, ..., J],  J = [[0,-1],[1,0]]
MatC iPrime(int n, long alpha);  // diag[I, ..., I],  I = [[-alpha,0],[0,1]]
MatQuad jPrimeQuad(long beta, int n);
MatQuad iPrimeQuad(long beta, int n, long alpha);

}  // namespace quatmod::qalg
