#include <cmath>

#include "doctest.h"
#include "wdist/linalg.hpp"
#include "wdist/werner.hpp"

using namespace wdist;

namespace {

BoundTable tiny_table() {
    // hand-built certification table mirroring the d=3 values for n = 2, 3
    BoundTable t;
    BoundEntry two;
    two.d = 3;
    two.n = 2;
    two.certified_beta_bound = 0.25;
    two.source = BoundSource::TwoCopyQuarter;
    BoundEntry three;
    three.d = 3;
    three.n = 3;
    three.certified_beta_bound = 1.0 / 56;
    three.source = BoundSource::GeneralTilde;
    t.entries.push_back(two);
    t.entries.push_back(three);
    return t;
}

}  // namespace

TEST_SUITE("werner") {

TEST_CASE("projector traces and algebra") {
    for (int d : {2, 3, 4}) {
        const ProjectorSet ps = projector_set(d);
        const int nn = d * d;
        CHECK(ps.s.trace().real() == doctest::Approx(d * (d + 1) / 2.0).epsilon(1e-13));
        CHECK(ps.a.trace().real() == doctest::Approx(d * (d - 1) / 2.0).epsilon(1e-13));
        CHECK(ps.p.trace().real() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(ps.q.trace().real() == doctest::Approx(nn - 1.0).epsilon(1e-12));

        CHECK(frobenius_distance(ps.s * ps.s, ps.s) < 1e-12);
        CHECK(frobenius_distance(ps.a * ps.a, ps.a) < 1e-12);
        CHECK(frobenius_distance(ps.p * ps.p, ps.p) < 1e-12);
        CHECK((ps.s * ps.a).norm() < 1e-12);
        CHECK((ps.p * ps.q).norm() < 1e-12);
        CHECK(frobenius_distance(ps.s + ps.a, Matrix::Identity(nn, nn)) < 1e-12);
        CHECK(frobenius_distance(ps.p + ps.q, Matrix::Identity(nn, nn)) < 1e-12);
        CHECK(frobenius_distance(ps.pi, ps.s - ps.a) < 1e-12);
        CHECK(frobenius_distance(ps.pi * ps.pi, Matrix::Identity(nn, nn)) < 1e-12);
    }
    CHECK_THROWS_AS(projector_set(1), std::invalid_argument);
}

TEST_CASE("antisymmetric projector entries at d=2") {
    const ProjectorSet ps = projector_set(2);
    Matrix expect = Matrix::Zero(4, 4);
    expect(1, 1) = 0.5;
    expect(1, 2) = -0.5;
    expect(2, 1) = -0.5;
    expect(2, 2) = 0.5;
    CHECK(frobenius_distance(ps.a, expect) < 1e-14);
}

TEST_CASE("swap transposes into the entangled projector") {
    for (int d : {2, 3}) {
        const ProjectorSet ps = projector_set(d);
        CHECK(frobenius_distance(partial_transpose(ps.pi, BipartiteDims(d, d)),
                                 static_cast<double>(d) * ps.p) < 1e-12);
    }
}

TEST_CASE("max entangled vector builds p") {
    const Vector me = max_entangled(3);
    CHECK(std::abs(me.norm() - 1.0) < 1e-14);
    CHECK(std::abs(me(0).real() - 1.0 / std::sqrt(3.0)) < 1e-14);
    CHECK(std::abs(me(1)) < 1e-15);
    const ProjectorSet ps = projector_set(3);
    CHECK(frobenius_distance(ps.p, me * me.adjoint()) < 1e-13);
}

TEST_CASE("pair basis diagonalizes the swap") {
    for (int d : {2, 3}) {
        const PairBasis pb = pair_basis(d);
        CHECK(static_cast<int>(pb.phi_minus.size()) == d * (d - 1) / 2);
        CHECK(static_cast<int>(pb.phi_plus.size()) == d * (d - 1) / 2);
        CHECK(static_cast<int>(pb.chi.size()) == d);

        const Matrix cols = pb.columns();
        CHECK(frobenius_distance(cols.adjoint() * cols,
                                 Matrix::Identity(d * d, d * d)) < 1e-12);

        const ProjectorSet ps = projector_set(d);
        for (const Vector& v : pb.phi_minus) CHECK((ps.pi * v + v).norm() < 1e-12);
        for (const Vector& v : pb.phi_plus) CHECK((ps.pi * v - v).norm() < 1e-12);
        for (const Vector& v : pb.chi) CHECK((ps.pi * v - v).norm() < 1e-12);
    }
}

TEST_CASE("parameter maps at d=3") {
    CHECK(alpha_to_beta(3, 3.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(beta_to_alpha(3, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(beta_to_alpha(3, 0.5) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(lambda_of_alpha(3, 3.0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(beta_min_attainable(3) == doctest::Approx(-4.0).epsilon(1e-15));

    CHECK(alpha_to_beta(3, 1.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(alpha_to_beta(3, 0.0) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(lambda_of_alpha(3, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("parameter maps roundtrip and reject bad input") {
    for (int d : {3, 4, 5}) {
        for (double beta : {-1.3, -0.2, 0.0, 0.4, 1.1}) {
            const double alpha = beta_to_alpha(d, beta);
            CHECK(alpha_to_beta(d, alpha) == doctest::Approx(beta).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(alpha_to_beta(3, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(beta_to_alpha(3, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(beta_to_alpha(3, -4.5), std::invalid_argument);
    CHECK_THROWS_AS(lambda_of_alpha(3, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(state_from_alpha(1, 1.0), std::invalid_argument);
}

TEST_CASE("parameter maps at d=4") {
    CHECK(alpha_to_beta(4, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(beta_to_alpha(4, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(lambda_of_alpha(4, 3.0) == doctest::Approx(9.0 / 14).epsilon(1e-15));
}

TEST_CASE("standard state fields and operator") {
    const StandardState st = state_from_alpha(3, 3.0);
    CHECK(st.d == 3);
    CHECK(st.alpha == doctest::Approx(3.0));
    CHECK(st.beta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(st.lambda == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(st.n_alpha == doctest::Approx(15.0).epsilon(1e-15));
    CHECK(st.m_beta == doctest::Approx(7.5).epsilon(1e-15));

    const Matrix rho = rho_alpha(3, 3.0);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-14);
    CHECK(is_hermitian(rho));
    const Spectrum sp = hermitian_spectrum(rho);
    CHECK(sp.values(0) >= -1e-14);

    const ProjectorSet ps = projector_set(3);
    CHECK((rho * ps.a).trace().real() == doctest::Approx(st.lambda).epsilon(1e-13));

    const StandardState st2 = state_from_beta(3, 0.5);
    CHECK(st2.alpha == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(st2.lambda == doctest::Approx(0.6).epsilon(1e-13));
}

TEST_CASE("family commutes with the depolarized form") {
    // rho is a combination of s and a only, so its pair-basis off-diagonals vanish
    const Matrix rho = rho_alpha(3, 2.0);
    const ProjectorSet ps = projector_set(3);
    const double wa = (rho * ps.a).trace().real();
    const double ws = (rho * ps.s).trace().real();
    const Matrix rebuilt = wa * ps.a / ps.a.trace().real() + ws * ps.s / ps.s.trace().real();
    CHECK(frobenius_distance(rho, rebuilt) < 1e-13);
}

TEST_CASE("partial transpose of the family, dual route") {
    for (double beta : {-0.8, 0.0, 0.5, 1.4}) {
        const double alpha = beta_to_alpha(3, beta);
        const Matrix direct = rho_pt(3, beta);
        const Matrix routed = partial_transpose(rho_alpha(3, alpha), BipartiteDims(3, 3));
        CHECK(frobenius_distance(direct, routed) < 1e-14);
    }
}

TEST_CASE("partial transpose spectrum at beta=0.5") {
    const Spectrum sp = hermitian_spectrum(rho_pt(3, 0.5));
    int negatives = 0;
    for (int i = 0; i < sp.values.size(); ++i)
        if (sp.values(i) < -1e-12) ++negatives;
    CHECK(negatives == 1);
    CHECK(sp.values(0) == doctest::Approx(-1.0 / 15).epsilon(1e-13));
    for (int i = 1; i < sp.values.size(); ++i)
        CHECK(sp.values(i) == doctest::Approx(2.0 / 15).epsilon(1e-12));
}

TEST_CASE("region classification against a fixed bound table") {
    const BoundTable t = tiny_table();

    CHECK(classify_region(3, -0.1, t).region == Region::Separable);
    CHECK(classify_region(3, 0.0, t).region == Region::Separable);

    const RegionResult r1 = classify_region(3, 0.01, t);
    CHECK(r1.region == Region::CertifiedNUndistillable);
    CHECK(r1.certified_n == 3);
    CHECK(r1.bound_used == doctest::Approx(1.0 / 56).epsilon(1e-15));

    const RegionResult r2 = classify_region(3, 0.2, t);
    CHECK(r2.region == Region::CertifiedNUndistillable);
    CHECK(r2.certified_n == 2);
    CHECK(r2.bound_used == doctest::Approx(0.25).epsilon(1e-15));

    CHECK(classify_region(3, 0.3, t).region == Region::UndecidedBand);
    CHECK(classify_region(3, 0.5, t).region == Region::UndecidedBand);

    const RegionResult r3 = classify_region(3, 0.51, t);
    CHECK(r3.region == Region::OneDistillable);
    CHECK(r3.bound_used == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(classify_region(3, 2.0, t).region == Region::OneDistillable);

    CHECK_THROWS_AS(classify_region(3, 2.1, t), std::invalid_argument);
}

TEST_CASE("region strings") {
    const BoundTable t = tiny_table();
    CHECK(region_to_string(classify_region(3, -0.5, t)) == "Separable");
    CHECK(region_to_string(classify_region(3, 0.2, t)) ==
          "CertifiedNUndistillable(2)");
    CHECK(region_to_string(classify_region(3, 0.4, t)) == "UndecidedBand");
    CHECK(region_to_string(classify_region(3, 1.0, t)) == "OneDistillable");
}

}  // TEST_SUITE
