#include "quatmod/doubling.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <stdexcept>

namespace quatmod::doubling {

using qalg::Quat;
using qalg::quatInverse;
using quatmod::rat;
using symspace::DomainPoint;
using symspace::Realization;

namespace {
const Complex kI(0.0, 1.0);
}

DoublingContext buildContext(int m, int r, QuatAlgebra alg) {
    if (m < 1) throw std::invalid_argument("doubling context needs m >= 1");
    DoublingContext ctx;
    ctx.m = m;
    ctx.r = r;
    ctx.n = 2 * m + r;
    ctx.N = 2 * ctx.n;
    ctx.alg = alg;

    const int n = ctx.n, N = ctx.N;
    Quat one = Quat::scalar(alg, 1);
    Quat zeta = Quat::zeta(alg);
    Quat zetaInv = quatInverse(zeta);

    // R over B, block sizes (m, r, m, m, r, m)
    int off[6] = {0, m, m + r, n, n + m, n + m + r};
    MatQuat R(alg, N, N);
    auto fill = [&](int bi, int bj, const Quat& s, int sz) {
        for (int i = 0; i < sz; ++i) R.at(off[bi] + i, off[bj] + i) = s;
    };
    fill(0, 0, one, m);
    fill(1, 1, rat(1, 2) * one, r);
    fill(1, 4, -zetaInv, r);
    fill(2, 3, one, m);
    fill(3, 2, -one, m);
    fill(4, 1, rat(-1, 2) * one, r);
    fill(4, 4, -zetaInv, r);
    fill(5, 5, one, m);
    ctx.Rexact = R;

    MatQuat Rinv(alg, N, N);
    auto fillInv = [&](int bi, int bj, const Quat& s, int sz) {
        for (int i = 0; i < sz; ++i) Rinv.at(off[bi] + i, off[bj] + i) = s;
    };
    fillInv(0, 0, one, m);
    fillInv(1, 1, one, r);
    fillInv(1, 4, -one, r);
    fillInv(2, 3, -one, m);
    fillInv(3, 2, one, m);
    fillInv(4, 1, rat(-1, 2) * zeta, r);
    fillInv(4, 4, rat(-1, 2) * zeta, r);
    fillInv(5, 5, one, m);
    ctx.RexactInv = Rinv;

    groups::SkewHermitianForm phi = groups::standardForm(m, r, alg);
    MatQuat omega(alg, N, N);
    omega.setBlock(0, 0, phi.mat);
    omega.setBlock(n, n, -phi.mat);
    ctx.omega = omega;
    ctx.JN = groups::standardForm(n, 0, alg).mat;

    if (ctx.Rexact * ctx.RexactInv != MatQuat::identity(alg, N))
        throw std::logic_error("R inverse is wrong");
    if (qalg::conjTranspose(ctx.Rexact) * omega * ctx.Rexact != ctx.JN)
        throw std::logic_error("R* omega R != J identity failed");

    // numeric R, block sizes (2m, r, r, 2m) doubled
    const int tm = 2 * m;
    int noff[8] = {0, tm, tm + r, tm + 2 * r, 2 * n, 2 * n + tm, 2 * n + tm + r, 2 * n + tm + 2 * r};
    int nsz[8] = {tm, r, r, tm, tm, r, r, tm};
    MatC Rn = MatC::Zero(2 * N, 2 * N);
    auto nfill = [&](int bi, int bj, Complex s) {
        for (int i = 0; i < nsz[bi]; ++i) Rn(noff[bi] + i, noff[bj] + i) = s;
    };
    nfill(0, 0, 1.0);
    nfill(1, 1, 0.5);
    nfill(1, 6, -1.0);
    nfill(2, 2, 0.5);
    nfill(2, 5, 1.0);
    nfill(3, 4, 1.0);
    nfill(4, 3, -1.0);
    nfill(5, 1, -0.5);
    nfill(5, 6, -1.0);
    nfill(6, 2, -0.5);
    nfill(6, 5, 1.0);
    nfill(7, 7, 1.0);
    ctx.Rnum = Rn;
    ctx.RnumInv = Rn.inverse();

    MatC Jf = MatC::Zero(2 * n, 2 * n);
    MatC Jm = qalg::jPrime(m);
    Jf.block(0, 0, tm, tm) = Jm;
    Jf.block(tm, tm + r, r, r) = -MatC::Identity(r, r);
    Jf.block(tm + r, tm, r, r) = MatC::Identity(r, r);
    Jf.block(tm + 2 * r, tm + 2 * r, tm, tm) = Jm;
    ctx.Jfrak = Jf;

    MatC S = MatC::Identity(N, N);
    for (int i = 0; i < 2 * r; ++i) S(tm + i, tm + i) = 0.5;
    ctx.S = S;

    // The normalisation S enters as the frame twist diag(S^{1/2}, S^{-1/2}),
    // an element of the target group; this keeps iota inside Z_N (the raw
    // A B^{-1} S leaves the domain when r > 0) while fixing iota(z0, z0) = i 1_N.
    MatC Shalf = MatC::Identity(N, N), ShalfInv = MatC::Identity(N, N);
    for (int i = 0; i < 2 * r; ++i) {
        Shalf(tm + i, tm + i) = 1.0 / std::sqrt(2.0);
        ShalfInv(tm + i, tm + i) = std::sqrt(2.0);
    }
    ctx.Shalf = Shalf;
    MatC T = MatC::Zero(2 * N, 2 * N);
    T.block(0, 0, N, N) = Shalf;
    T.block(N, N, N, N) = ShalfInv;
    ctx.Tnorm = T;

    ctx.source = symspace::zRealization(m, r);

    // The doubled frame lives in the realization transported by the effective
    // R = Rnum Tnorm^{-1}: H transports exactly onto the split-form H of Z_N,
    // and K onto an integral pairing (the (2m, 2r)-type pairing in doubled
    // coordinates; it equals the standard split pairing when r = 0).
    MatC Reff = Rn * T.inverse();
    const int d = 2 * n;
    MatC blockH = MatC::Zero(2 * N, 2 * N);
    blockH.block(0, 0, d, d) = ctx.source.Hform;
    blockH.block(d, d, d, d) = -(Jf.adjoint().inverse() * ctx.source.Hform * Jf.inverse());
    MatC Hind = Reff.adjoint() * blockH * Reff;
    MatC blockK = MatC::Zero(2 * N, 2 * N);
    blockK.block(0, 0, d, d) = ctx.source.Kform;
    blockK.block(d, d, d, d) = Jf.transpose().inverse() * ctx.source.Kform * Jf.inverse();
    MatC Kind = Reff.transpose() * blockK * Reff;
    auto snap = [](MatC& M) {
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j) {
                double re = std::round(M(i, j).real()), im = std::round(M(i, j).imag());
                if (std::abs(M(i, j).real() - re) > 1e-9 || std::abs(M(i, j).imag() - im) > 1e-9)
                    throw std::logic_error("transported form is not integral");
                M(i, j) = Complex(re, im);
            }
    };
    snap(Hind);
    snap(Kind);
    if ((Hind - symspace::zRealization(n, 0).Hform).norm() != 0.0)
        throw std::logic_error("transported H form does not match the split form");
    ctx.target = symspace::RealizationData{symspace::Realization::Z, 2 * m, 2 * r, N,
                                           Hind, Kind, Hind, MatC::Identity(N, N)};
    return ctx;
}

MatQuat rhoExactRaw(const DoublingContext& ctx, const MatQuat& g1, const MatQuat& g2) {
    if (g1.rows != ctx.n || g2.rows != ctx.n) throw std::invalid_argument("rho block size mismatch");
    MatQuat diag(ctx.alg, ctx.N, ctx.N);
    diag.setBlock(0, 0, g1);
    diag.setBlock(ctx.n, ctx.n, g2);
    return ctx.RexactInv * diag * ctx.Rexact;
}

groups::GroupElement rhoEmbed(const DoublingContext& ctx, const groups::GroupElement& g1,
                              const groups::GroupElement& g2) {
    if (g1.form.m != ctx.m || g1.form.r != ctx.r || g2.form.m != ctx.m || g2.form.r != ctx.r)
        throw std::invalid_argument("rho needs elements of G_n with the context's (m, r)");
    groups::SkewHermitianForm formN = groups::standardForm(ctx.n, 0, ctx.alg);
    return groups::GroupElement(formN, rhoExactRaw(ctx, g1.mat, g2.mat));
}

MatC rhoNumeric(const DoublingContext& ctx, const MatC& g1, const MatC& g2) {
    const int d = 2 * ctx.n;
    if (g1.rows() != d || g2.rows() != d) throw std::invalid_argument("rho block size mismatch");
    MatC diag = MatC::Zero(2 * ctx.N, 2 * ctx.N);
    diag.block(0, 0, d, d) = g1;
    diag.block(d, d, d, d) = ctx.Jfrak * g2.conjugate() * ctx.Jfrak.inverse();
    return ctx.Tnorm * ctx.RnumInv * diag * ctx.Rnum * ctx.Tnorm.inverse();
}

namespace {

MatC stackedImage(const DoublingContext& ctx, const DomainPoint& z1, const DomainPoint& z2) {
    const int n = ctx.n;
    if (z1.tag != Realization::Z || z2.tag != Realization::Z || z1.n() != n || z2.n() != n)
        throw std::invalid_argument("iota needs Z-realization points of size n");
    MatC U1(2 * n, n), U2(2 * n, n);
    U1 << z1.z, ctx.source.u0;
    U2 << z2.z, ctx.source.u0;
    MatC stacked = MatC::Zero(2 * ctx.N, ctx.N);
    stacked.block(0, 0, 2 * n, n) = U1;
    stacked.block(2 * n, n, 2 * n, n) = ctx.Jfrak * U2.conjugate();
    return ctx.Tnorm * ctx.RnumInv * stacked;
}

void checkW0(const DoublingContext& ctx, const DomainPoint& z1, const DomainPoint& z2) {
    if (ctx.r == 0) return;
    const int tm = 2 * ctx.m, r = ctx.r;
    MatC w1 = z1.z.bottomRightCorner(r, r), w2 = z2.z.bottomRightCorner(r, r);
    MatC w0inv = MatC::Identity(r, r) + w1 * w2.conjugate();
    Eigen::JacobiSVD<MatC> svd(w0inv);
    double smin = svd.singularValues().minCoeff(), smax = svd.singularValues().maxCoeff();
    if (smin <= 0 || smax / smin > 1e12) throw std::domain_error("1 + w1 conj(w2) is numerically singular");
    (void)tm;
}

}  // namespace

std::pair<MatC, Complex> bMatrix(const DoublingContext& ctx, const DomainPoint& z1,
                                 const DomainPoint& z2) {
    checkW0(ctx, z1, z2);
    MatC M = stackedImage(ctx, z1, z2);
    MatC B = M.bottomRows(ctx.N);
    return {B, B.determinant()};
}

DomainPoint iotaEmbed(const DoublingContext& ctx, const DomainPoint& z1, const DomainPoint& z2) {
    checkW0(ctx, z1, z2);
    MatC M = stackedImage(ctx, z1, z2);
    MatC A = M.topRows(ctx.N);
    MatC B = M.bottomRows(ctx.N);
    Eigen::FullPivLU<MatC> lu(B);
    if (!lu.isInvertible()) throw std::domain_error("B(z1, z2) is singular");
    DomainPoint out{Realization::Z, 2 * ctx.m, 2 * ctx.r, A * lu.inverse()};
    if (!symspace::frameMembership(ctx.target, out.z, symspace::Tolerances{1e-8, 1e-8, 1e-9}))
        throw std::logic_error("iota image failed the Z_N membership check");
    return out;
}

MatC iotaClosedForm(const DoublingContext& ctx, const DomainPoint& z1, const DomainPoint& z2) {
    const int m = ctx.m, r = ctx.r, tm = 2 * m;
    MatC u1 = z1.z.topLeftCorner(tm, tm), u2 = z2.z.topLeftCorner(tm, tm);
    MatC Jm = qalg::jPrime(m);
    MatC out = MatC::Zero(ctx.N, ctx.N);
    if (r == 0) {
        out.block(0, 0, tm, tm) = u1;
        out.block(tm, tm, tm, tm) = -u2.adjoint();
        return out;
    }
    MatC v1 = z1.z.topRightCorner(tm, r), v2 = z2.z.topRightCorner(tm, r);
    MatC w1 = z1.z.bottomRightCorner(r, r), w2 = z2.z.bottomRightCorner(r, r);
    MatC w2c = w2.conjugate();
    MatC w0 = (MatC::Identity(r, r) + w1 * w2c).inverse();
    MatC w0p = MatC::Identity(r, r) - w1 * w2c;
    MatC w1i = w1.inverse();
    MatC v1tJ = v1.transpose() * Jm;
    MatC v2s = v2.adjoint();
    MatC Jv2c = Jm * v2.conjugate();

    int o[4] = {0, tm, tm + r, tm + 2 * r};
    out.block(o[0], o[0], tm, tm) = u1 - v1 * w2c * w0 * w1 * v1tJ;
    out.block(o[0], o[1], tm, r) = v1 * w1i * w0 * w1;
    out.block(o[0], o[2], tm, r) = -v1 * w2c * w0;
    out.block(o[0], o[3], tm, tm) = -v1 * w1i * w0 * w1 * w2c * v2s;
    out.block(o[1], o[0], r, tm) = 2.0 * w0 * w1 * v1tJ;
    out.block(o[1], o[1], r, r) = 2.0 * w0 * w1;
    out.block(o[1], o[2], r, r) = w0p * w0;
    out.block(o[1], o[3], r, tm) = -2.0 * w0 * w1 * w2c * v2s;
    out.block(o[2], o[0], r, tm) = -2.0 * w2c * w0 * w1 * v1tJ;
    out.block(o[2], o[1], r, r) = w1i * w0p * w0 * w1;
    out.block(o[2], o[2], r, r) = -2.0 * w2c * w0;
    out.block(o[2], o[3], r, tm) = -2.0 * w1i * w0 * w1 * w2c * v2s;
    out.block(o[3], o[0], tm, tm) = -Jv2c * w0 * w1 * v1tJ;
    out.block(o[3], o[1], tm, r) = -Jv2c * w0 * w1;
    out.block(o[3], o[2], tm, r) = -Jv2c * w0;
    out.block(o[3], o[3], tm, tm) = -Jm * u2.conjugate() * Jm.inverse() + Jv2c * w0 * w1 * w2c * v2s;
    return out;
}

}  // namespace quatmod::doubling
