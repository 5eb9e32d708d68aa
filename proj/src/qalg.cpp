#include "quatmod/qalg.hpp"

#include <cmath>

namespace quatmod::qalg {

namespace {
void requireSameAlgebra(const QuatAlgebra& x, const QuatAlgebra& y) {
    if (x != y) throw std::invalid_argument("quaternion algebra mismatch");
}
}  // namespace

Quat operator+(const Quat& x, const Quat& y) {
    requireSameAlgebra(x.alg, y.alg);
    return Quat(x.alg, x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d);
}

Quat operator-(const Quat& x, const Quat& y) {
    requireSameAlgebra(x.alg, y.alg);
    return Quat(x.alg, x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d);
}

Quat operator-(const Quat& x) { return Quat(x.alg, -x.a, -x.b, -x.c, -x.d); }

// Multiplication table: zeta^2 = alpha, xi^2 = beta, (zeta xi)^2 = -alpha beta,
// zeta * xi = zeta xi,  xi * zeta = -zeta xi,  zeta * (zeta xi) = alpha xi,
// (zeta xi) * zeta = -alpha xi,  xi * (zeta xi) = -beta zeta,  (zeta xi) * xi = beta zeta.
Quat operator*(const Quat& x, const Quat& y) {
    requireSameAlgebra(x.alg, y.alg);
    const Rational al(x.alg.alpha), be(x.alg.beta);
    Rational a = x.a * y.a + al * x.b * y.b + be * x.c * y.c - al * be * x.d * y.d;
    Rational b = x.a * y.b + x.b * y.a - be * x.c * y.d + be * x.d * y.c;
    Rational c = x.a * y.c + x.c * y.a + al * x.b * y.d - al * x.d * y.b;
    Rational d = x.a * y.d + x.d * y.a + x.b * y.c - x.c * y.b;
    return Quat(x.alg, a, b, c, d);
}

Quat operator*(const Rational& t, const Quat& x) { return Quat(x.alg, t * x.a, t * x.b, t * x.c, t * x.d); }

Quat conjugate(const Quat& x) { return Quat(x.alg, x.a, -x.b, -x.c, -x.d); }

Rational quatTrace(const Quat& x) { return 2 * x.a; }

Rational quatNorm(const Quat& x) {
    const Rational al(x.alg.alpha), be(x.alg.beta);
    return x.a * x.a - al * x.b * x.b - be * x.c * x.c + al * be * x.d * x.d;
}

std::pair<Rational, Rational> traceNorm(const Quat& x) { return {quatTrace(x), quatNorm(x)}; }

Quat quatInverse(const Quat& x) {
    Rational n = quatNorm(x);
    if (n == 0) throw std::domain_error("inverse of zero quaternion");
    Rational t = 1 / n;
    return t * conjugate(x);
}

QuadExt operator+(const QuadExt& x, const QuadExt& y) { return QuadExt(x.beta, x.p + y.p, x.q + y.q); }
QuadExt operator-(const QuadExt& x, const QuadExt& y) { return QuadExt(x.beta, x.p - y.p, x.q - y.q); }
QuadExt operator-(const QuadExt& x) { return QuadExt(x.beta, -x.p, -x.q); }

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    Rational be(x.beta);
    return QuadExt(x.beta, x.p * y.p + be * x.q * y.q, x.p * y.q + x.q * y.p);
}

QuadExt qconj(const QuadExt& x) { return QuadExt(x.beta, x.p, -x.q); }

QuadExt qinv(const QuadExt& x) {
    Rational n = x.p * x.p - Rational(x.beta) * x.q * x.q;
    if (n == 0) throw std::domain_error("inverse of zero in Q(sqrt(beta))");
    return QuadExt(x.beta, x.p / n, -x.q / n);
}

Complex toComplex(const QuadExt& x) {
    double root = std::sqrt(double(-x.beta));
    return Complex(x.p.get_d(), x.q.get_d() * root);
}

MatQuat MatQuat::identity(QuatAlgebra al, int n) {
    MatQuat m(al, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Quat::scalar(al, 1);
    return m;
}

bool MatQuat::operator==(const MatQuat& o) const {
    if (rows != o.rows || cols != o.cols || alg != o.alg) return false;
    for (size_t k = 0; k < e.size(); ++k)
        if (e[k] != o.e[k]) return false;
    return true;
}

bool MatQuat::isZero() const {
    for (const auto& x : e)
        if (!x.isZero()) return false;
    return true;
}

void MatQuat::setBlock(int i0, int j0, const MatQuat& blk) {
    for (int i = 0; i < blk.rows; ++i)
        for (int j = 0; j < blk.cols; ++j) at(i0 + i, j0 + j) = blk.at(i, j);
}

MatQuat MatQuat::block(int i0, int j0, int r, int c) const {
    MatQuat out(alg, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) out.at(i, j) = at(i0 + i, j0 + j);
    return out;
}

MatQuat operator+(const MatQuat& x, const MatQuat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix size mismatch");
    MatQuat out(x.alg, x.rows, x.cols);
    for (size_t k = 0; k < x.e.size(); ++k) out.e[k] = x.e[k] + y.e[k];
    return out;
}

MatQuat operator-(const MatQuat& x, const MatQuat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix size mismatch");
    MatQuat out(x.alg, x.rows, x.cols);
    for (size_t k = 0; k < x.e.size(); ++k) out.e[k] = x.e[k] - y.e[k];
    return out;
}

MatQuat operator-(const MatQuat& x) {
    MatQuat out(x.alg, x.rows, x.cols);
    for (size_t k = 0; k < x.e.size(); ++k) out.e[k] = -x.e[k];
    return out;
}

MatQuat operator*(const MatQuat& x, const MatQuat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix size mismatch");
    requireSameAlgebra(x.alg, y.alg);
    MatQuat out(x.alg, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Quat& xik = x.at(i, k);
            if (xik.isZero()) continue;
            for (int j = 0; j < y.cols; ++j) {
                if (y.at(k, j).isZero()) continue;
                out.at(i, j) = out.at(i, j) + xik * y.at(k, j);
            }
        }
    return out;
}

MatQuat operator*(const Quat& s, const MatQuat& x) {
    MatQuat out(x.alg, x.rows, x.cols);
    for (size_t k = 0; k < x.e.size(); ++k) out.e[k] = s * x.e[k];
    return out;
}

MatQuat operator*(const Rational& s, const MatQuat& x) {
    MatQuat out(x.alg, x.rows, x.cols);
    for (size_t k = 0; k < x.e.size(); ++k) out.e[k] = s * x.e[k];
    return out;
}

MatQuat conjTranspose(const MatQuat& x) {
    MatQuat out(x.alg, x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out.at(j, i) = conjugate(x.at(i, j));
    return out;
}

MatQuat transposeOnly(const MatQuat& x) {
    MatQuat out(x.alg, x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out.at(j, i) = x.at(i, j);
    return out;
}

bool isHermitian(const MatQuat& x) { return x.rows == x.cols && conjTranspose(x) == x; }
bool isSkewHermitian(const MatQuat& x) { return x.rows == x.cols && conjTranspose(x) == -x; }

MatQuad MatQuad::identity(long be, int n) {
    MatQuad m(be, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = QuadExt::scalar(be, 1);
    return m;
}

bool MatQuad::operator==(const MatQuad& o) const {
    if (rows != o.rows || cols != o.cols || beta != o.beta) return false;
    for (size_t k = 0; k < e.size(); ++k)
        if (e[k] != o.e[k]) return false;
    return true;
}

MatQuad operator+(const MatQuad& x, const MatQuad& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix size mismatch");
    MatQuad out(x.beta, x.rows, x.cols);
    for (size_t k = 0; k < x.e.size(); ++k) out.e[k] = x.e[k] + y.e[k];
    return out;
}

MatQuad operator-(const MatQuad& x, const MatQuad& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix size mismatch");
    MatQuad out(x.beta, x.rows, x.cols);
    for (size_t k = 0; k < x.e.size(); ++k) out.e[k] = x.e[k] - y.e[k];
    return out;
}

MatQuad operator*(const MatQuad& x, const MatQuad& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix size mismatch");
    MatQuad out(x.beta, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const QuadExt& xik = x.at(i, k);
            if (xik.isZero()) continue;
            for (int j = 0; j < y.cols; ++j) {
                if (y.at(k, j).isZero()) continue;
                out.at(i, j) = out.at(i, j) + xik * y.at(k, j);
            }
        }
    return out;
}

MatQuad qtranspose(const MatQuad& x) {
    MatQuad out(x.beta, x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out.at(j, i) = x.at(i, j);
    return out;
}

MatQuad qconjugate(const MatQuad& x) {
    MatQuad out(x.beta, x.rows, x.cols);
    for (size_t k = 0; k < x.e.size(); ++k) out.e[k] = qconj(x.e[k]);
    return out;
}

QuadExt qdet(const MatQuad& x) {
    if (x.rows != x.cols) throw std::invalid_argument("determinant of non-square matrix");
    int n = x.rows;
    MatQuad a = x;
    QuadExt det = QuadExt::scalar(x.beta, 1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!a.at(i, col).isZero()) { piv = i; break; }
        if (piv < 0) return QuadExt::scalar(x.beta, 0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
            det = -det;
        }
        det = det * a.at(col, col);
        QuadExt inv = qinv(a.at(col, col));
        for (int i = col + 1; i < n; ++i) {
            if (a.at(i, col).isZero()) continue;
            QuadExt f = a.at(i, col) * inv;
            for (int j = col; j < n; ++j) a.at(i, j) = a.at(i, j) - f * a.at(col, j);
        }
    }
    return det;
}

MatQuad qmatInverse(const MatQuad& x) {
    if (x.rows != x.cols) throw std::invalid_argument("inverse of non-square matrix");
    int n = x.rows;
    MatQuad a = x;
    MatQuad inv = MatQuad::identity(x.beta, n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!a.at(i, col).isZero()) { piv = i; break; }
        if (piv < 0) throw std::domain_error("matrix is singular");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        QuadExt pinv = qinv(a.at(col, col));
        for (int j = 0; j < n; ++j) {
            a.at(col, j) = pinv * a.at(col, j);
            inv.at(col, j) = pinv * inv.at(col, j);
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || a.at(i, col).isZero()) continue;
            QuadExt f = a.at(i, col);
            for (int j = 0; j < n; ++j) {
                a.at(i, j) = a.at(i, j) - f * a.at(col, j);
                inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

MatC toComplex(const MatQuad& x) {
    MatC out(x.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out(i, j) = toComplex(x.at(i, j));
    return out;
}

MatQuad splitEmbed(const Quat& x) {
    long be = x.alg.beta;
    Rational al(x.alg.alpha);
    MatQuad m(be, 2, 2);
    m.at(0, 0) = QuadExt(be, x.a, x.c);
    m.at(0, 1) = QuadExt(be, al * x.b, -al * x.d);
    m.at(1, 0) = QuadExt(be, x.b, x.d);
    m.at(1, 1) = QuadExt(be, x.a, -x.c);
    return m;
}

MatQuad matSplitEmbed(const MatQuat& x) {
    if (x.rows != x.cols) throw std::invalid_argument("split embedding needs a square matrix");
    MatQuad out(x.alg.beta, 2 * x.rows, 2 * x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) {
            MatQuad blk = splitEmbed(x.at(i, j));
            for (int bi = 0; bi < 2; ++bi)
                for (int bj = 0; bj < 2; ++bj) out.at(2 * i + bi, 2 * j + bj) = blk.at(bi, bj);
        }
    return out;
}

MatQuat splitPullback(const MatQuad& x, QuatAlgebra alg) {
    if (x.rows != x.cols || x.rows % 2 != 0) throw std::invalid_argument("pullback needs even square matrix");
    if (x.beta != alg.beta) throw std::invalid_argument("field mismatch in pullback");
    int n = x.rows / 2;
    Rational al(alg.alpha);
    MatQuat out(alg, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const QuadExt& tl = x.at(2 * i, 2 * j);
            const QuadExt& tr = x.at(2 * i, 2 * j + 1);
            const QuadExt& bl = x.at(2 * i + 1, 2 * j);
            const QuadExt& br = x.at(2 * i + 1, 2 * j + 1);
            Quat q(alg, tl.p, bl.p, tl.q, bl.q);
            // consistency: the 2x2 block must have the split-embedding shape
            if (br != qconj(tl)) throw std::domain_error("matrix is not in the image of the split embedding");
            QuadExt expectedTr(alg.beta, al * bl.p, -al * bl.q);
            if (tr != expectedTr) throw std::domain_error("matrix is not in the image of the split embedding");
            out.at(i, j) = q;
        }
    return out;
}

MatQuat matInverse(const MatQuat& x) {
    return splitPullback(qmatInverse(matSplitEmbed(x)), x.alg);
}

std::pair<Rational, Rational> reducedDetTrace(const MatQuat& x) {
    if (x.rows != x.cols) throw std::invalid_argument("reduced det/trace of non-square matrix");
    MatQuad emb = matSplitEmbed(x);
    QuadExt det = qdet(emb);
    QuadExt tr = QuadExt::scalar(emb.beta, 0);
    for (int i = 0; i < emb.rows; ++i) tr = tr + emb.at(i, i);
    if (!det.isRational() || !tr.isRational())
        throw std::logic_error("reduced det/trace came out irrational");
    return {det.p, tr.p};
}

Rational reducedDet(const MatQuat& x) { return reducedDetTrace(x).first; }
Rational reducedTrace(const MatQuat& x) { return reducedDetTrace(x).second; }

Rational lambdaPairing(const MatQuat& tau, const MatQuat& sigma) {
    if (tau.cols != sigma.rows || sigma.cols != tau.rows)
        throw std::invalid_argument("lambda pairing size mismatch");
    return reducedTrace(tau * sigma) / 2;
}

MatC jPrime(int n) {
    MatC out = MatC::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        out(2 * i, 2 * i + 1) = -1.0;
        out(2 * i + 1, 2 * i) = 1.0;
    }
    return out;
}

MatC iPrime(int n, long alpha) {
    MatC out = MatC::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        out(2 * i, 2 * i) = double(-alpha);
        out(2 * i + 1, 2 * i + 1) = 1.0;
    }
    return out;
}

MatQuad jPrimeQuad(long beta, int n) {
    MatQuad out(beta, 2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        out.at(2 * i, 2 * i + 1) = QuadExt::scalar(beta, -1);
        out.at(2 * i + 1, 2 * i) = QuadExt::scalar(beta, 1);
    }
    return out;
}

MatQuad iPrimeQuad(long beta, int n, long alpha) {
    MatQuad out(beta, 2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        out.at(2 * i, 2 * i) = QuadExt::scalar(beta, -alpha);
        out.at(2 * i + 1, 2 * i + 1) = QuadExt::scalar(beta, 1);
    }
    return out;
}

MatC realEmbed(const MatQuat& x) {
    const double sa = std::sqrt(double(-x.alg.alpha));
    const double sb = std::sqrt(double(-x.alg.beta));
    MatC out = MatC::Zero(2 * x.rows, 2 * x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) {
            const Quat& q = x.at(i, j);
            // Hamilton coordinates of q under zeta -> sqrt|alpha| i, xi -> sqrt|beta| j
            double ha = q.a.get_d();
            double hb = q.b.get_d() * sa;
            double hc = q.c.get_d() * sb;
            double hd = q.d.get_d() * sa * sb;
            out(2 * i, 2 * j) = Complex(ha, hc);
            out(2 * i, 2 * j + 1) = Complex(-hb, hd);
            out(2 * i + 1, 2 * j) = Complex(hb, hd);
            out(2 * i + 1, 2 * j + 1) = Complex(ha, -hc);
        }
    return out;
}

}  // namespace quatmod::qalg
