#include "quatmod/groups.hpp"

#include <stdexcept>

#include "quatmod/doubling.hpp"

namespace quatmod::groups {

using qalg::conjTranspose;
using qalg::matInverse;
using qalg::Quat;
using qalg::quatNorm;
using quatmod::rat;
using quatmod::Rational;
using qalg::reducedDet;

SkewHermitianForm standardForm(int m, int r, QuatAlgebra alg) {
    if (m < 0 || r < 0 || m + r == 0) throw std::invalid_argument("standardForm needs m, r >= 0, n > 0");
    int n = 2 * m + r;
    MatQuat phi(alg, n, n);
    for (int i = 0; i < m; ++i) {
        phi.at(i, m + r + i) = Quat::scalar(alg, -1);
        phi.at(m + r + i, i) = Quat::scalar(alg, 1);
    }
    for (int i = 0; i < r; ++i) phi.at(m + i, m + i) = Quat::zeta(alg);
    return SkewHermitianForm{m, r, alg, phi};
}

bool isGroupElement(const MatQuat& g, const SkewHermitianForm& form) {
    if (g.rows != g.cols || g.rows != form.n()) throw std::invalid_argument("element size does not match form");
    if (conjTranspose(g) * form.mat * g != form.mat) return false;
    return reducedDet(g) == 1;
}

GroupElement::GroupElement(SkewHermitianForm f, MatQuat g) : form(std::move(f)), mat(std::move(g)) {
    if (!isGroupElement(mat, form)) throw std::domain_error("matrix is not a group element of the given form");
}

GroupElement groupIdentity(const SkewHermitianForm& form) {
    return GroupElement(form, MatQuat::identity(form.alg, form.n()));
}

MatQuat groupInverse(const MatQuat& g, const SkewHermitianForm& form) {
    return matInverse(form.mat) * conjTranspose(g) * form.mat;
}

CongruenceLevel::CongruenceLevel(long N_) : N(N_) {
    if (N < 1) throw std::invalid_argument("level must be positive");
    long n = N;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        factorization.emplace_back(p, e);
    }
    if (n > 1) factorization.emplace_back(n, 1);
}

GroupElement siegelElement(const MatQuat& q, const MatQuat& sigma, const SkewHermitianForm& form) {
    if (form.r != 0) throw std::invalid_argument("siegelElement needs the split form (r = 0)");
    int m = form.m;
    if (q.rows != m || q.cols != m || sigma.rows != m || sigma.cols != m)
        throw std::invalid_argument("siegelElement block size mismatch");
    if (!qalg::isHermitian(sigma)) throw std::domain_error("sigma must be hermitian");
    if (reducedDet(q) == 0) throw std::domain_error("q must be invertible");
    MatQuat qhat = matInverse(conjTranspose(q));
    MatQuat g(form.alg, 2 * m, 2 * m);
    g.setBlock(0, 0, q);
    g.setBlock(0, m, sigma * qhat);
    g.setBlock(m, m, qhat);
    return GroupElement(form, g);
}

namespace {

// offsets of the (t, m-t, r, t, m-t) block decomposition
struct KlingenBlocks {
    int t1, m1, rr, t2, m2;
    KlingenBlocks(int t, int m, int r) {
        (void)r;
        t1 = 0;
        m1 = t;
        rr = m;
        t2 = m + r;
        m2 = m + r + t;
    }
};

bool blockVanishes(const MatQuat& x, int i0, int j0, int rows, int cols) {
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (!x.at(i0 + i, j0 + j).isZero()) return false;
    return true;
}

}  // namespace

bool klingenMember(const MatQuat& x, int t, const SkewHermitianForm& form) {
    int m = form.m, r = form.r, n = form.n();
    if (t < 0 || t > m) throw std::invalid_argument("klingen index out of range");
    if (x.rows != n || x.cols != n) throw std::invalid_argument("element size does not match form");
    KlingenBlocks b(t, m, r);
    int mt = m - t;
    // a2, g2, h2, h3, h4, l2, d3 vanish
    return blockVanishes(x, b.t1, b.m1, t, mt) && blockVanishes(x, b.rr, b.m1, r, mt) &&
           blockVanishes(x, b.t2, b.m1, t, mt) && blockVanishes(x, b.m2, b.t1, mt, t) &&
           blockVanishes(x, b.m2, b.m1, mt, mt) && blockVanishes(x, b.m2, b.rr, mt, r) &&
           blockVanishes(x, b.m2, b.t2, mt, t);
}

MatQuat klingenProject(const MatQuat& x, int t, const SkewHermitianForm& form) {
    if (!klingenMember(x, t, form)) throw std::domain_error("not a Klingen parabolic member");
    KlingenBlocks b(t, form.m, form.r);
    int k = 2 * t + form.r;
    MatQuat out(form.alg, k, k);
    const int idx[3] = {b.t1, b.rr, b.t2};
    const int sz[3] = {t, form.r, t};
    int oi = 0;
    for (int bi = 0; bi < 3; ++bi)
        for (int i = 0; i < sz[bi]; ++i, ++oi) {
            int oj = 0;
            for (int bj = 0; bj < 3; ++bj)
                for (int j = 0; j < sz[bj]; ++j, ++oj) out.at(oi, oj) = x.at(idx[bi] + i, idx[bj] + j);
        }
    return out;
}

MatQuat embedKlingen(const MatQuat& xi, int t, const SkewHermitianForm& form) {
    int m = form.m, r = form.r, n = form.n();
    if (t < 0 || t > m) throw std::invalid_argument("klingen index out of range");
    int k = 2 * t + r;
    if (xi.rows != k || xi.cols != k) throw std::invalid_argument("embedKlingen size mismatch");
    KlingenBlocks b(t, m, r);
    MatQuat out = MatQuat::identity(form.alg, n);
    const int idx[3] = {b.t1, b.rr, b.t2};
    const int sz[3] = {t, r, t};
    int si = 0;
    for (int bi = 0; bi < 3; ++bi) {
        for (int i = 0; i < sz[bi]; ++i) {
            int sj = 0;
            for (int bj = 0; bj < 3; ++bj) {
                for (int j = 0; j < sz[bj]; ++j) out.at(idx[bi] + i, idx[bj] + j) = xi.at(si + i, sj + j);
                sj += sz[bj];
            }
        }
        si += sz[bi];
    }
    return out;
}

MatQuat kappaElement(int t, int r, QuatAlgebra alg) {
    int k = 2 * t + r;
    MatQuat kap(alg, k, k);
    for (int i = 0; i < t; ++i) {
        kap.at(i, t + r + i) = Quat::scalar(alg, -1);
        kap.at(t + r + i, i) = Quat::scalar(alg, 1);
    }
    for (int i = 0; i < r; ++i) kap.at(t + i, t + i) = Quat::scalar(alg, 1);
    return kap;
}

namespace {

bool quatDivisible(const Quat& q, const quatmod::Integer& p, long e) {
    return divisibleAt(q.a, p, e) && divisibleAt(q.b, p, e) && divisibleAt(q.c, p, e) &&
           divisibleAt(q.d, p, e);
}

bool quatIntegralAt(const Quat& q, const quatmod::Integer& p) {
    return divisibleAt(q.a, p, 0) && divisibleAt(q.b, p, 0) && divisibleAt(q.c, p, 0) &&
           divisibleAt(q.d, p, 0);
}

}  // namespace

bool congruenceMember(const MatQuat& g, const SkewHermitianForm& form, const CongruenceLevel& level,
                      long p) {
    long e = 0;
    for (auto& [q, f] : level.factorization)
        if (q == p) e = f;
    if (e == 0) throw std::invalid_argument("p does not divide the level");
    quatmod::Integer pz(p);
    for (const auto& q : g.e)
        if (!quatIntegralAt(q, pz)) throw std::domain_error("congruence test needs p-integral coordinates");

    int m = form.m, r = form.r, n = form.n();
    if (g.rows != n || g.cols != n) throw std::invalid_argument("element size does not match form");
    const int off[3] = {0, m, m + r};
    const int sz[3] = {m, r, m};
    for (int bi = 0; bi < 3; ++bi)
        for (int bj = 0; bj <= bi; ++bj) {  // the strictly-upper "*" blocks are unconstrained
            for (int i = 0; i < sz[bi]; ++i)
                for (int j = 0; j < sz[bj]; ++j) {
                    Quat v = g.at(off[bi] + i, off[bj] + j);
                    if (bi == bj && i == j) v = v - Quat::scalar(form.alg, 1);
                    if (!quatDivisible(v, pz, e)) return false;
                }
        }
    return true;
}

bool congruenceMemberAll(const MatQuat& g, const SkewHermitianForm& form, const CongruenceLevel& level) {
    for (auto& [p, e] : level.factorization) {
        (void)e;
        if (!congruenceMember(g, form, level, p)) return false;
    }
    return true;
}

GroupElement cosetRep(int t, int m, int r, QuatAlgebra alg) {
    if (t < 0 || t > m) throw std::invalid_argument("coset index out of range");
    int n = 2 * m + r, N = 2 * n;
    int off[6] = {0, m, m + r, n, n + m, n + m + r};
    MatQuat tau = MatQuat::identity(alg, N);
    for (int i = 0; i < t; ++i) {
        tau.at(off[3] + i, off[2] + i) = Quat::scalar(alg, 1);  // e_t
        tau.at(off[5] + i, off[0] + i) = Quat::scalar(alg, 1);  // e_t*
    }
    SkewHermitianForm formN = standardForm(n, 0, alg);
    return GroupElement(formN, tau);
}

GroupElement modifiedCosetRep(int t, int m, int r, QuatAlgebra alg) {
    GroupElement tau = cosetRep(t, m, r, alg);
    SkewHermitianForm form = standardForm(m, r, alg);
    MatQuat kap = embedKlingen(kappaElement(t, r, alg), t, form);
    auto ctx = doubling::buildContext(m, r, alg);
    MatQuat tmod = tau.mat * doubling::rhoExactRaw(ctx, MatQuat::identity(alg, form.n()), kap);
    return GroupElement(tau.form, tmod);
}

bool vtCondition(const MatQuat& beta, const MatQuat& gamma, int t, const SkewHermitianForm& form) {
    MatQuat pb = klingenProject(beta, t, form);
    MatQuat pg = klingenProject(gamma, t, form);
    MatQuat kap = kappaElement(t, form.r, form.alg);
    return kap * pb == pg * kap;
}

bool vtConditionModified(const MatQuat& beta, const MatQuat& gamma, int t, const SkewHermitianForm& form) {
    return klingenProject(beta, t, form) == klingenProject(gamma, t, form);
}

MatQuat conjugateByTauM(const GroupElement& xi) {
    const SkewHermitianForm& form = xi.form;
    int m = form.m, r = form.r, n = form.n();
    QuatAlgebra alg = form.alg;
    auto ctx = doubling::buildContext(m, r, alg);
    GroupElement taut = modifiedCosetRep(m, m, r, alg);
    MatQuat conj = taut.mat * doubling::rhoExactRaw(ctx, xi.mat, MatQuat::identity(alg, n)) *
                   groupInverse(taut.mat, taut.form);

    auto blk = [&](int bi, int bj, int ri, int rj) { return xi.mat.block(bi, bj, ri, rj); };
    MatQuat a = blk(0, 0, m, m), b = blk(0, m, m, r), c = blk(0, m + r, m, m);
    MatQuat g = blk(m, 0, r, m), e = blk(m, m, r, r), f = blk(m, m + r, r, m);
    MatQuat h = blk(m + r, 0, m, m), l = blk(m + r, m, m, r), d = blk(m + r, m + r, m, m);

    Quat zeta = Quat::zeta(alg);
    Quat zetaInv = quatInverse(zeta);
    Rational half = rat(1, 2);
    MatQuat one_m = MatQuat::identity(alg, m);
    MatQuat one_r = MatQuat::identity(alg, r);

    auto rmul = [&](const MatQuat& x, const Quat& s) {
        MatQuat out = x;
        for (auto& q : out.e) q = q * s;
        return out;
    };

    // expected block rows of tau~_m rho(xi, 1) tau~_m^{-1}
    int N = 2 * n;
    MatQuat expected(alg, N, N);
    int off[6] = {0, m, m + r, n, n + m, n + m + r};
    auto put = [&](int bi, int bj, const MatQuat& x) {
        if (x.rows > 0 && x.cols > 0) expected.setBlock(off[bi], off[bj], x);
    };

    put(0, 0, a);
    put(0, 1, half * b);
    put(0, 2, -c);
    put(0, 3, c);
    put(0, 4, -rmul(b, zetaInv));

    put(1, 0, g);
    put(1, 1, half * (e + one_r));
    put(1, 2, -f);
    put(1, 3, f);
    put(1, 4, -rmul(e - one_r, zetaInv));

    put(2, 2, one_m);

    put(3, 0, h);
    put(3, 1, half * l);
    put(3, 2, one_m - d);
    put(3, 3, d);
    put(3, 4, -rmul(l, zetaInv));

    Quat mhz = rat(-1, 2) * zeta;  // left factor -zeta/2
    put(4, 0, mhz * g);
    put(4, 1, half * (mhz * (e - one_r)));
    put(4, 2, -(mhz * f));
    put(4, 3, mhz * f);
    put(4, 4, rmul(-(mhz * (e + one_r)), zetaInv));

    put(5, 0, a - one_m);
    put(5, 1, half * b);
    put(5, 2, -c);
    put(5, 3, c);
    put(5, 4, -rmul(b, zetaInv));
    put(5, 5, one_m);

    if (conj != expected)
        throw std::logic_error("tau_m conjugation does not match its closed-form block pattern");
    return conj;
}

namespace {

std::vector<Quat> normOneUnits(QuatAlgebra alg) {
    std::vector<Quat> units;
    for (long a = -1; a <= 1; ++a)
        for (long b = -1; b <= 1; ++b)
            for (long c = -1; c <= 1; ++c)
                for (long d = -1; d <= 1; ++d) {
                    Quat x(alg, rat(a), rat(b), rat(c), rat(d));
                    if (!x.isZero() && quatNorm(x) == 1) units.push_back(x);
                }
    return units;
}

MatQuat randomHermitian(Rng& rng, QuatAlgebra alg, int m, long scale) {
    MatQuat s(alg, m, m);
    for (int i = 0; i < m; ++i) {
        s.at(i, i) = Quat::scalar(alg, rat(scale * rng.integer(-2, 2)));
        for (int j = i + 1; j < m; ++j) {
            Quat q(alg, rat(scale * rng.integer(-2, 2)), rat(scale * rng.integer(-2, 2)),
                   rat(scale * rng.integer(-2, 2)), rat(scale * rng.integer(-2, 2)));
            s.at(i, j) = q;
            s.at(j, i) = conjugate(q);
        }
    }
    return s;
}

// [[1_m, b, c], [0, 1_r, f], [0, 0, 1_m]] with b = 2 zeta B, f = -2 tB and
// c = -2 zeta B tB + sigma0 solves the membership equations exactly.
MatQuat rUnipotent(Rng& rng, const SkewHermitianForm& form, long scale) {
    int m = form.m, r = form.r, n = form.n();
    QuatAlgebra alg = form.alg;
    Quat zeta = Quat::zeta(alg);
    MatQuat B(alg, m, r);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < r; ++j) B.at(i, j) = Quat::scalar(alg, rat(scale * rng.integer(-2, 2)));
    MatQuat b = rat(2) * (zeta * B);
    MatQuat f = rat(-2) * qalg::transposeOnly(B);
    MatQuat c = rat(-2) * (zeta * (B * qalg::transposeOnly(B))) + randomHermitian(rng, alg, m, scale);
    MatQuat u = MatQuat::identity(alg, n);
    u.setBlock(0, m, b);
    u.setBlock(0, m + r, c);
    u.setBlock(m, m + r, f);
    return u;
}

MatQuat hyperbolicSiegel(Rng& rng, const SkewHermitianForm& form, long scale, bool unitDiag) {
    int m = form.m, r = form.r, n = form.n();
    QuatAlgebra alg = form.alg;
    MatQuat q = MatQuat::identity(alg, m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            q.at(i, j) = Quat(alg, rat(scale * rng.integer(-2, 2)), rat(scale * rng.integer(-2, 2)),
                              rat(scale * rng.integer(-2, 2)), rat(scale * rng.integer(-2, 2)));
    if (unitDiag) {
        auto units = normOneUnits(alg);
        for (int i = 0; i < m; ++i) q.at(i, i) = units[size_t(rng.integer(0, long(units.size()) - 1))];
    }
    MatQuat sigma = randomHermitian(rng, alg, m, scale);
    MatQuat qhat = matInverse(conjTranspose(q));
    MatQuat g = MatQuat::identity(alg, n);
    g.setBlock(0, 0, q);
    g.setBlock(0, m + r, sigma * qhat);
    g.setBlock(m + r, m + r, qhat);
    return g;
}

}  // namespace

GroupElement randomGroupElementExact(uint64_t seed, const SkewHermitianForm& form, int factors) {
    if (form.r != 0) throw std::invalid_argument("exact random elements need the split form (r = 0)");
    Rng rng(seed);
    int m = form.m;
    MatQuat weyl(form.alg, 2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        weyl.at(i, m + i) = Quat::scalar(form.alg, -1);
        weyl.at(m + i, i) = Quat::scalar(form.alg, 1);
    }
    MatQuat g = MatQuat::identity(form.alg, 2 * m);
    for (int k = 0; k < factors; ++k) {
        switch (rng.integer(0, 2)) {
            case 0: g = g * hyperbolicSiegel(rng, form, 1, true); break;
            case 1: g = g * weyl; break;
            default: g = g * hyperbolicSiegel(rng, form, 1, false); break;
        }
    }
    return GroupElement(form, g);
}

GroupElement randomIntegralWord(uint64_t seed, const SkewHermitianForm& form, long level, int factors) {
    Rng rng(seed);
    int m = form.m, r = form.r;
    QuatAlgebra alg = form.alg;
    MatQuat kap = embedKlingen(kappaElement(m, r, alg), m, form);
    MatQuat kapInv = groupInverse(kap, form);
    MatQuat g = MatQuat::identity(alg, form.n());
    for (int k = 0; k < factors; ++k) {
        long maxPick = (level == 1) ? (r > 0 ? 2 : 1) : (r > 0 ? 1 : 0);
        long pick = rng.integer(0, maxPick);
        MatQuat factor = MatQuat::identity(alg, form.n());
        if (pick == 0) {
            factor = hyperbolicSiegel(rng, form, level, false);
        } else if (level == 1 && pick == maxPick) {
            factor = kap;
        } else {
            MatQuat u = rUnipotent(rng, form, level);
            factor = (rng.integer(0, 1) == 0) ? u : kap * u * kapInv;
        }
        g = g * factor;
    }
    return GroupElement(form, g);
}

}  // namespace quatmod::groups
