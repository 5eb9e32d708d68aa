#include "quatmod/symspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace quatmod::symspace {

namespace {
const Complex kI(0.0, 1.0);

MatC jPrimeBlock(int m) { return qalg::jPrime(m); }
}  // namespace

RealizationData zRealization(int m, int r) {
    if (m < 0 || r < 0 || 2 * m + r == 0) throw std::invalid_argument("bad (m, r)");
    int n = 2 * m + r;
    int tm = 2 * m;
    MatC H = MatC::Zero(2 * n, 2 * n);
    // blocks (2m, r, r, 2m)
    H.block(0, tm + 2 * r, tm, tm) = -MatC::Identity(tm, tm);
    H.block(tm, tm + r, r, r) = -MatC::Identity(r, r);
    H.block(tm + r, tm, r, r) = MatC::Identity(r, r);
    H.block(tm + 2 * r, 0, tm, tm) = MatC::Identity(tm, tm);

    MatC K = MatC::Zero(2 * n, 2 * n);
    MatC Jm = jPrimeBlock(m);
    K.block(0, tm + 2 * r, tm, tm) = Jm;
    K.block(tm, tm, r, r) = MatC::Identity(r, r);
    K.block(tm + r, tm + r, r, r) = MatC::Identity(r, r);
    K.block(tm + 2 * r, 0, tm, tm) = -Jm;

    MatC u0 = MatC::Zero(n, n);
    u0.block(0, tm, r, r) = MatC::Identity(r, r);
    u0.block(r, 0, tm, tm) = MatC::Identity(tm, tm);

    return RealizationData{Realization::Z, m, r, n, H, K, H, u0};
}

RealizationData hRealization(int n) {
    MatC H = MatC::Zero(2 * n, 2 * n);
    H.block(0, n, n, n) = -MatC::Identity(n, n);
    H.block(n, 0, n, n) = MatC::Identity(n, n);
    MatC K = MatC::Identity(2 * n, 2 * n);
    return RealizationData{Realization::H, 0, 0, n, H, K, H, MatC::Identity(n, n)};
}

RealizationData bRealization(int n) {
    MatC H = MatC::Zero(2 * n, 2 * n);
    H.block(0, 0, n, n) = kI * MatC::Identity(n, n);
    H.block(n, n, n, n) = -kI * MatC::Identity(n, n);
    MatC K = MatC::Zero(2 * n, 2 * n);
    K.block(0, n, n, n) = -kI * MatC::Identity(n, n);
    K.block(n, 0, n, n) = -kI * MatC::Identity(n, n);
    return RealizationData{Realization::B, 0, 0, n, H, K, -H, MatC::Identity(n, n)};
}

DomainPoint origin(const RealizationData& re) {
    if (re.tag == Realization::B) return DomainPoint{re.tag, re.m, re.r, MatC::Zero(re.n, re.n)};
    return DomainPoint{re.tag, re.m, re.r, kI * MatC::Identity(re.n, re.n)};
}

RealizationData realizationOf(const DomainPoint& z) {
    switch (z.tag) {
        case Realization::Z: return zRealization(z.m, z.r);
        case Realization::H: return hRealization(z.n());
        default: return bRealization(z.n());
    }
}

double smallestEigenvalue(const MatC& hermitian) {
    MatC sym = (hermitian + hermitian.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<MatC> es(sym);
    return es.eigenvalues().minCoeff();
}

bool leadingMinorsPositive(const MatC& hermitian, double tol) {
    int n = int(hermitian.rows());
    for (int k = 1; k <= n; ++k) {
        Complex det = hermitian.topLeftCorner(k, k).determinant();
        if (!(det.real() > tol)) return false;
    }
    return true;
}

bool membership(const DomainPoint& z, const Tolerances& tol) {
    int n = z.n();
    if (z.z.cols() != n) throw std::invalid_argument("domain point must be square");
    switch (z.tag) {
        case Realization::Z: {
            int m = z.m, r = z.r, tm = 2 * m;
            if (n != 2 * m + r) throw std::invalid_argument("(m, r) does not match point size");
            MatC u = z.z.topLeftCorner(tm, tm);
            MatC v = z.z.topRightCorner(tm, r);
            MatC x = z.z.bottomLeftCorner(r, tm);
            MatC w = z.z.bottomRightCorner(r, r);
            MatC Jm = jPrimeBlock(m);
            if (r > 0) {
                if ((w.transpose() * w + MatC::Identity(r, r)).norm() > tol.eq) return false;
                if ((x - w * v.transpose() * Jm).norm() > tol.eq) return false;
            }
            if ((u * Jm + v * v.transpose() - Jm * u.transpose()).norm() > tol.eq) return false;
            return smallestEigenvalue(kI * (z.z.adjoint() - z.z)) > tol.pos;
        }
        case Realization::H: {
            if ((z.z.transpose() * z.z + MatC::Identity(n, n)).norm() > tol.eq) return false;
            return smallestEigenvalue(kI * (z.z.adjoint() - z.z)) > tol.pos;
        }
        default: {
            if ((z.z.transpose() + z.z).norm() > tol.eq) return false;
            return smallestEigenvalue(MatC::Identity(n, n) - z.z * z.z.adjoint()) > tol.pos;
        }
    }
}

bool inGroup(const MatC& g, const RealizationData& re, double tol) {
    if (g.rows() != 2 * re.n || g.cols() != 2 * re.n) return false;
    double res1 = (g.adjoint() * re.Hform * g - re.Hform).norm();
    double res2 = (g.transpose() * re.Kform * g - re.Kform).norm();
    return res1 < tol * std::max(1.0, re.Hform.norm()) && res2 < tol * std::max(1.0, re.Kform.norm());
}

bool frameMembership(const RealizationData& re, const MatC& z, const Tolerances& tol) {
    int n = re.n;
    if (z.rows() != n || z.cols() != n) throw std::invalid_argument("point size does not match realization");
    MatC U(2 * n, n);
    U << z, re.u0;
    if ((U.transpose() * re.Kform * U).norm() > tol.eq * 10) return false;
    return smallestEigenvalue(-kI * (U.adjoint() * re.Hpair * U)) > tol.pos;
}

std::pair<MatC, AutomorphyData> actData(const RealizationData& re, const MatC& g, const MatC& z,
                                        const Tolerances& tol) {
    int n = re.n;
    if (!inGroup(g, re, tol.eq * 10)) throw std::domain_error("matrix is not in the realization's group");
    MatC a = g.topLeftCorner(n, n), b = g.topRightCorner(n, n);
    MatC c = g.bottomLeftCorner(n, n), d = g.bottomRightCorner(n, n);
    MatC denom = c * z + d * re.u0;
    Eigen::FullPivLU<MatC> lu(denom);
    if (!lu.isInvertible()) throw std::domain_error("boundary degeneracy: c z + d u0 is singular");
    MatC zg = (a * z + b * re.u0) * lu.inverse() * re.u0;
    MatC lambda = re.u0.inverse() * denom;
    return {zg, AutomorphyData{lambda, lambda.determinant()}};
}

std::pair<DomainPoint, AutomorphyData> act(const MatC& g, const DomainPoint& z, const Tolerances& tol) {
    RealizationData re = realizationOf(z);
    auto [zg, aut] = actData(re, g, z.z, tol);
    return {DomainPoint{z.tag, z.m, z.r, zg}, aut};
}

PairingData etaDelta(const DomainPoint& z1, const DomainPoint& z2) {
    if (z1.tag != z2.tag || z1.n() != z2.n()) throw std::invalid_argument("pairing needs matching realizations");
    MatC eta;
    if (z1.tag == Realization::B)
        eta = kI * (z1.z.adjoint() * z2.z - MatC::Identity(z1.n(), z1.n()));
    else
        eta = kI * (z1.z.adjoint() - z2.z);
    return PairingData{eta, eta.determinant()};
}

MatC etaPairing(const RealizationData& re, const MatC& z1, const MatC& z2) {
    int n = re.n;
    MatC U1(2 * n, n), U2(2 * n, n);
    U1 << z1, re.u0;
    U2 << z2, re.u0;
    return -kI * (U1.adjoint() * re.Hpair * U2);
}

DomainPoint cayley(const DomainPoint& zH) {
    if (zH.tag != Realization::H) throw std::invalid_argument("cayley maps H-points");
    int n = zH.n();
    MatC denom = zH.z + kI * MatC::Identity(n, n);
    Eigen::FullPivLU<MatC> lu(denom);
    if (!lu.isInvertible()) throw std::domain_error("z + i is singular");
    return DomainPoint{Realization::B, 0, 0, (zH.z - kI * MatC::Identity(n, n)) * lu.inverse()};
}

DomainPoint cayleyInverse(const DomainPoint& zB) {
    if (zB.tag != Realization::B) throw std::invalid_argument("inverse cayley maps B-points");
    int n = zB.n();
    MatC denom = MatC::Identity(n, n) - zB.z;
    Eigen::FullPivLU<MatC> lu(denom);
    if (!lu.isInvertible()) throw std::domain_error("1 - w is singular");
    return DomainPoint{Realization::H, 0, 0, kI * (MatC::Identity(n, n) + zB.z) * lu.inverse()};
}

std::pair<DomainPoint, MatC> realizationMap(const MatC& R, const DomainPoint& z, const MatC& u01,
                                            const MatC& u02, Realization targetTag) {
    int n = z.n();
    MatC U(2 * n, n);
    U << z.z, u01;
    MatC W = R * U;
    MatC bottom = W.bottomRows(n);
    Eigen::FullPivLU<MatC> lu(bottom);
    if (!lu.isInvertible()) throw std::domain_error("bottom block of R U(z) is singular");
    MatC mu = u02.inverse() * bottom;
    MatC target = W.topRows(n) * mu.inverse();
    return {DomainPoint{targetTag, z.m, z.r, target}, mu};
}

MatC cayleyR(int n) {
    MatC R(2 * n, 2 * n);
    MatC one = MatC::Identity(n, n);
    R << one, -kI * one, one, kI * one;
    return R / std::sqrt(2.0);
}

double measureDensity(const DomainPoint& z) {
    PairingData p = etaDelta(z, z);
    double d = std::abs(p.delta);
    if (d < 1e-12) throw std::domain_error("boundary point: delta(z) vanishes");
    return std::pow(d, -(z.n() - 1));
}

std::vector<MatC> lieBasis(const RealizationData& re) {
    const int dim = 2 * re.n;
    const int nvars = 2 * dim * dim;  // real + imaginary parts of X
    // constraints: X* H + H X = 0 and tX K + K X = 0, real-linear in X
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4 * dim * dim, nvars);
    auto varRe = [&](int i, int j) { return 2 * (i * dim + j); };
    auto varIm = [&](int i, int j) { return 2 * (i * dim + j) + 1; };

    int row = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            // (X* H)_{ij} = sum_k conj(X_{ki}) H_{kj};  (H X)_{ij} = sum_k H_{ik} X_{kj}
            int rowRe = row++, rowIm = row++;
            for (int k = 0; k < dim; ++k) {
                Complex hkj = re.Hform(k, j);
                // conj(X_{ki}) * hkj contributes (xr - i xi)(hr + i hi)
                A(rowRe, varRe(k, i)) += hkj.real();
                A(rowRe, varIm(k, i)) += hkj.imag();
                A(rowIm, varRe(k, i)) += hkj.imag();
                A(rowIm, varIm(k, i)) -= hkj.real();
                Complex hik = re.Hform(i, k);
                A(rowRe, varRe(k, j)) += hik.real();
                A(rowRe, varIm(k, j)) -= hik.imag();
                A(rowIm, varRe(k, j)) += hik.imag();
                A(rowIm, varIm(k, j)) += hik.real();
            }
        }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            // (tX K)_{ij} = sum_k X_{ki} K_{kj};  (K X)_{ij} = sum_k K_{ik} X_{kj}
            int rowRe = row++, rowIm = row++;
            for (int k = 0; k < dim; ++k) {
                Complex kkj = re.Kform(k, j);
                A(rowRe, varRe(k, i)) += kkj.real();
                A(rowRe, varIm(k, i)) -= kkj.imag();
                A(rowIm, varRe(k, i)) += kkj.imag();
                A(rowIm, varIm(k, i)) += kkj.real();
                Complex kik = re.Kform(i, k);
                A(rowRe, varRe(k, j)) += kik.real();
                A(rowRe, varIm(k, j)) -= kik.imag();
                A(rowIm, varRe(k, j)) += kik.imag();
                A(rowIm, varIm(k, j)) += kik.real();
            }
        }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-9);
    Eigen::MatrixXd kernel = lu.kernel();
    std::vector<MatC> basis;
    for (int c = 0; c < kernel.cols(); ++c) {
        MatC X(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                X(i, j) = Complex(kernel(varRe(i, j), c), kernel(varIm(i, j), c));
        if (X.norm() > 1e-12) basis.push_back(X / X.norm());
    }
    return basis;
}

namespace {

MatC sampleFromBasis(const std::vector<MatC>& basis, Rng& rng, double scale) {
    if (basis.empty()) throw std::logic_error("empty Lie-algebra basis");
    MatC X = MatC::Zero(basis[0].rows(), basis[0].cols());
    for (const auto& Bm : basis) X += rng.real(-scale, scale) * Bm;
    return X.exp();
}

}  // namespace

MatC randomGroupElementNumeric(const RealizationData& re, Rng& rng, double scale) {
    return sampleFromBasis(lieBasis(re), rng, scale);
}

MatC randomStabilizerElement(const RealizationData& re, Rng& rng, double scale) {
    // intersect the Lie algebra with the kernel of the derivative of the action
    // at the origin: X11 z0 + X12 u0 - z0 u0^{-1} (X21 z0 + X22 u0) = 0
    std::vector<MatC> basis = lieBasis(re);
    const int n = re.n;
    MatC z0 = origin(re).z;
    MatC u0inv = re.u0.inverse();
    Eigen::MatrixXd A(2 * n * n, int(basis.size()));
    for (size_t b = 0; b < basis.size(); ++b) {
        const MatC& X = basis[b];
        MatC d = X.topLeftCorner(n, n) * z0 + X.topRightCorner(n, n) * re.u0 -
                 z0 * u0inv * (X.bottomLeftCorner(n, n) * z0 + X.bottomRightCorner(n, n) * re.u0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                A(2 * (i * n + j), int(b)) = d(i, j).real();
                A(2 * (i * n + j) + 1, int(b)) = d(i, j).imag();
            }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-9);
    Eigen::MatrixXd kernel = lu.kernel();
    std::vector<MatC> stabBasis;
    for (int c = 0; c < kernel.cols(); ++c) {
        MatC X = MatC::Zero(2 * n, 2 * n);
        for (size_t b = 0; b < basis.size(); ++b) X += kernel(int(b), c) * basis[b];
        if (X.norm() > 1e-12) stabBasis.push_back(X / X.norm());
    }
    return sampleFromBasis(stabBasis, rng, scale);
}

}  // namespace quatmod::symspace
