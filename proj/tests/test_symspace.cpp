#include "doctest.h"

#include "quatmod/rng.hpp"
#include "quatmod/symspace.hpp"

using namespace quatmod;
using namespace quatmod::symspace;
using qalg::Complex;
using qalg::MatC;

namespace {
const Complex kI(0.0, 1.0);

DomainPoint randomPoint(const RealizationData& re, Rng& rng, double scale = 0.4) {
    MatC g = randomGroupElementNumeric(re, rng, scale);
    auto [z, aut] = act(g, origin(re));
    (void)aut;
    return z;
}
}  // namespace

TEST_CASE("membership at the origin and simple failures") {
    for (auto [m, r] : {std::pair{1, 0}, {2, 0}, {1, 1}, {1, 2}}) {
        auto re = zRealization(m, r);
        CHECK(membership(origin(re)));
    }
    CHECK(membership(origin(hRealization(3))));
    CHECK(membership(origin(bRealization(3))));

    // 2i 1_n violates tz z + 1 = 0 in H
    DomainPoint bad{Realization::H, 0, 0, 2.0 * kI * MatC::Identity(3, 3)};
    CHECK_FALSE(membership(bad));
}

TEST_CASE("lie algebra dimension is n(2n-1)") {
    CHECK(lieBasis(hRealization(2)).size() == 6);
    CHECK(lieBasis(bRealization(2)).size() == 6);
    CHECK(lieBasis(zRealization(1, 0)).size() == 6);
    CHECK(lieBasis(zRealization(1, 1)).size() == 15);
}

TEST_CASE("numeric group elements satisfy the defining relations") {
    Rng rng(101);
    for (auto re : {zRealization(1, 1), zRealization(2, 0), hRealization(3), bRealization(2)}) {
        for (int iter = 0; iter < 5; ++iter) {
            MatC g = randomGroupElementNumeric(re, rng);
            CHECK((g.adjoint() * re.Hform * g - re.Hform).norm() < 1e-10);
            CHECK((g.transpose() * re.Kform * g - re.Kform).norm() < 1e-10);
        }
    }
}

TEST_CASE("action: identity, closure, cocycle") {
    Rng rng(7);
    for (auto re : {zRealization(1, 0), zRealization(1, 1), hRealization(2), bRealization(3)}) {
        DomainPoint z0 = origin(re);
        auto [zid, autid] = act(MatC::Identity(2 * re.n, 2 * re.n), z0);
        CHECK((zid.z - z0.z).norm() < 1e-14);
        CHECK((autid.lambda - MatC::Identity(re.n, re.n)).norm() < 1e-14);
        CHECK(std::abs(autid.j - 1.0) < 1e-14);

        for (int iter = 0; iter < 10; ++iter) {
            MatC g1 = randomGroupElementNumeric(re, rng);
            MatC g2 = randomGroupElementNumeric(re, rng);
            DomainPoint z = randomPoint(re, rng);
            CHECK(membership(z, Tolerances{1e-8, 1e-8, 1e-12}));
            auto [gz, a2] = act(g2, z);
            CHECK(membership(gz, Tolerances{1e-8, 1e-8, 1e-12}));
            auto [ggz, a1] = act(g1, gz);
            auto [prod, ap] = act(g1 * g2, z);
            CHECK((prod.z - ggz.z).norm() < 1e-8);
            CHECK((ap.lambda - a1.lambda * a2.lambda).norm() < 1e-8);
        }
    }
}

TEST_CASE("eta/delta values at the origin") {
    auto reZ = zRealization(1, 1);
    int n = reZ.n;
    auto p = etaDelta(origin(reZ), origin(reZ));
    CHECK((p.eta - 2.0 * MatC::Identity(n, n)).norm() < 1e-14);
    CHECK(std::abs(p.delta - std::pow(2.0, n)) < 1e-12);

    auto reH = hRealization(1);
    auto ph = etaDelta(origin(reH), origin(reH));
    CHECK(std::abs(ph.eta(0, 0) - 2.0) < 1e-14);

    auto reB = bRealization(2);
    auto pb = etaDelta(origin(reB), origin(reB));
    CHECK((pb.eta - (-kI) * MatC::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("eta transformation law and delta equivariance") {
    Rng rng(19);
    for (auto re : {zRealization(1, 1), hRealization(2), bRealization(2)}) {
        for (int iter = 0; iter < 15; ++iter) {
            MatC g = randomGroupElementNumeric(re, rng);
            DomainPoint z1 = randomPoint(re, rng), z2 = randomPoint(re, rng);
            auto [gz1, a1] = act(g, z1);
            auto [gz2, a2] = act(g, z2);
            MatC lhs = a1.lambda.adjoint() * etaDelta(gz1, gz2).eta * a2.lambda;
            CHECK((lhs - etaDelta(z1, z2).eta).norm() < 1e-8);

            auto dz = etaDelta(z1, z1);
            auto dgz = etaDelta(gz1, gz1);
            double rel = std::abs(std::norm(a1.j) * dgz.delta - dz.delta) / std::abs(dz.delta);
            CHECK(rel < 1e-8);
        }
    }
}

TEST_CASE("eta(z, z) is positive definite via the domain pairing") {
    Rng rng(23);
    for (auto re : {zRealization(1, 1), hRealization(2), bRealization(3)}) {
        for (int iter = 0; iter < 8; ++iter) {
            DomainPoint z = randomPoint(re, rng);
            MatC eta = etaPairing(re, z.z, z.z);
            CHECK(smallestEigenvalue(eta) > 1e-9);
            CHECK(leadingMinorsPositive(eta));
        }
    }
    // spec eta agrees with the pairing on Z and H; on B it differs by i
    Rng rng2(5);
    auto reZ = zRealization(1, 0);
    DomainPoint z = randomPoint(reZ, rng2);
    CHECK((etaPairing(reZ, z.z, z.z) - etaDelta(z, z).eta).norm() < 1e-12);
    auto reB = bRealization(2);
    DomainPoint w = randomPoint(reB, rng2);
    CHECK((etaPairing(reB, w.z, w.z) - kI * etaDelta(w, w).eta).norm() < 1e-12);
}

TEST_CASE("stabilizer of the origin gives unitary automorphy factor") {
    Rng rng(31);
    for (auto re : {zRealization(1, 1), hRealization(2), bRealization(2)}) {
        for (int iter = 0; iter < 8; ++iter) {
            MatC k = randomStabilizerElement(re, rng);
            DomainPoint z0 = origin(re);
            auto [kz, aut] = act(k, z0);
            CHECK((kz.z - z0.z).norm() < 1e-8);
            CHECK((aut.lambda.adjoint() * aut.lambda - MatC::Identity(re.n, re.n)).norm() < 1e-8);
        }
    }
}

TEST_CASE("cayley transform") {
    int n = 3;
    auto reH = hRealization(n);
    DomainPoint z0 = origin(reH);
    DomainPoint w = cayley(z0);
    CHECK(w.z.norm() < 1e-14);
    CHECK(membership(w));

    Rng rng(13);
    for (int iter = 0; iter < 20; ++iter) {
        DomainPoint z = randomPoint(reH, rng);
        DomainPoint img = cayley(z);
        CHECK((img.z.transpose() + img.z).norm() < 1e-9);
        CHECK(membership(img, Tolerances{1e-8, 1e-8, 1e-12}));
        DomainPoint back = cayleyInverse(img);
        CHECK((back.z - z.z).norm() < 1e-10);
    }
}

TEST_CASE("realization map: identity and the cayley R") {
    auto reH = hRealization(2);
    Rng rng(3);
    DomainPoint z = randomPoint(reH, rng);
    auto [same, mu] = realizationMap(MatC::Identity(4, 4), z, reH.u0, reH.u0, Realization::H);
    CHECK((same.z - z.z).norm() < 1e-13);
    CHECK((mu - MatC::Identity(2, 2)).norm() < 1e-13);

    // conjugation by the cayley R maps the H-group to the B-group and i 1_n to 0
    int n = 2;
    MatC R = cayleyR(n);
    auto [img, mu2] = realizationMap(R, origin(reH), reH.u0, MatC::Identity(n, n), Realization::B);
    CHECK(img.z.norm() < 1e-14);
    auto reB = bRealization(n);
    for (int iter = 0; iter < 8; ++iter) {
        MatC g = randomGroupElementNumeric(reH, rng);
        CHECK(inGroup(R * g * R.inverse(), reB, 1e-9));
    }
}

TEST_CASE("realization comparison identities") {
    int n = 2;
    auto reH = hRealization(n);
    auto reB = bRealization(n);
    MatC R = cayleyR(n);
    Rng rng(41);
    auto mapPoint = [&](const DomainPoint& z) {
        return realizationMap(R, z, reH.u0, reB.u0, Realization::B);
    };
    for (int iter = 0; iter < 15; ++iter) {
        DomainPoint z = randomPoint(reH, rng);
        DomainPoint z2 = randomPoint(reH, rng);
        MatC g = randomGroupElementNumeric(reH, rng);
        MatC gB = R * g * R.inverse();

        auto [rz, mu] = mapPoint(z);
        CHECK((rz.z - cayley(z).z).norm() < 1e-10);  // rho agrees with the cayley map

        // (1) rho(g z) = rho(g) rho(z)
        auto [gz, aut] = act(g, z);
        auto [rgz, muGz] = mapPoint(gz);
        auto [gBrz, autB] = act(gB, rz);
        CHECK((rgz.z - gBrz.z).norm() < 1e-8);

        // (2) lambda(rho(g), rho(z)) = mu(g z) lambda(g, z) mu(z)^{-1}
        CHECK((autB.lambda - muGz * aut.lambda * mu.inverse()).norm() < 1e-8);

        // (3) eta(rho(z1), rho(z2)) = mu(z1)^hat eta(z1, z2) mu(z2)^{-1}
        auto [rz2, mu2] = mapPoint(z2);
        MatC lhs = etaPairing(reB, rz.z, rz2.z);
        MatC rhs = mu.adjoint().inverse() * etaPairing(reH, z.z, z2.z) * mu2.inverse();
        CHECK((lhs - rhs).norm() < 1e-8);
    }
}

TEST_CASE("measure density and invariance under the action") {
    // n = 1 is degenerate: density = |delta|^0 = 1
    DomainPoint w1{Realization::B, 0, 0, MatC::Zero(1, 1)};
    CHECK(measureDensity(w1) == doctest::Approx(1.0));

    auto reB2 = bRealization(2);
    CHECK(measureDensity(origin(reB2)) == doctest::Approx(1.0));  // |det(-i 1_2)| = 1

    // invariance: density(gz) |det Jac|^2 = density(z), Jacobian by finite differences
    int n = 3;
    auto reB = bRealization(n);
    Rng rng(59);
    int dim = n * (n - 1) / 2;
    auto packed = [&](const MatC& z) {
        Eigen::VectorXcd v(dim);
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) v(k++) = z(i, j);
        return v;
    };
    auto unpacked = [&](const Eigen::VectorXcd& v) {
        MatC z = MatC::Zero(n, n);
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                z(i, j) = v(k);
                z(j, i) = -v(k);
                ++k;
            }
        return z;
    };
    for (int iter = 0; iter < 4; ++iter) {
        MatC g = randomGroupElementNumeric(reB, rng, 0.15);
        DomainPoint z = randomPoint(reB, rng, 0.2);
        auto [gz, aut] = act(g, z);
        const double h = 1e-6;
        Eigen::VectorXcd base = packed(z.z);
        MatC jac(dim, dim);
        for (int k = 0; k < dim; ++k) {
            Eigen::VectorXcd vp = base, vm = base;
            vp(k) += h;
            vm(k) -= h;
            DomainPoint zp{Realization::B, 0, 0, unpacked(vp)};
            DomainPoint zm{Realization::B, 0, 0, unpacked(vm)};
            jac.col(k) = (packed(act(g, zp).first.z) - packed(act(g, zm).first.z)) / (2 * h);
        }
        Complex detJac = jac.determinant();
        // the holomorphic jacobian of z -> gz is j(g, z)^{-(n-1)}
        CHECK(std::abs(detJac - std::pow(aut.j, -(n - 1))) < 1e-5);
        double lhs = measureDensity(gz) * std::norm(detJac);
        CHECK(std::abs(lhs - measureDensity(z)) < 1e-5 * measureDensity(z));
    }
}

TEST_CASE("boundary handling") {
    MatC z = MatC::Zero(2, 2);
    z(0, 1) = 1.0 - 1e-15;
    z(1, 0) = -(1.0 - 1e-15);
    DomainPoint nearBoundary{Realization::B, 0, 0, z};
    CHECK_THROWS_AS(measureDensity(nearBoundary), std::domain_error);
}
