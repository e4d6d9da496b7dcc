#include <cmath>
#include <limits>

#include "doctest.h"
#include "wdist/distill.hpp"

using namespace wdist;

namespace {

Rank2Vector analytic_minimizer(double inv_sqrt2 = 1.0 / std::sqrt(2.0)) {
    // (|00> + |11>)/sqrt(2), the known single-copy minimizer at d=3
    Rank2Vector psi;
    psi.d = 3;
    psi.copies = 1;
    psi.a = inv_sqrt2;
    psi.b = inv_sqrt2;
    psi.e1 = Vector::Zero(3);
    psi.e2 = Vector::Zero(3);
    psi.f1 = Vector::Zero(3);
    psi.f2 = Vector::Zero(3);
    psi.e1(0) = 1.0;
    psi.e2(1) = 1.0;
    psi.f1(0) = 1.0;
    psi.f2(1) = 1.0;
    return psi;
}

// |e1> (x) I_B embedding for a single copy
Matrix embed(const Vector& e) {
    return kron(Matrix(e), Matrix::Identity(3, 3));
}

}  // namespace

TEST_SUITE("witness") {

TEST_CASE("analytic minimizer value and stationarity") {
    const Rank2Vector psi = analytic_minimizer();
    const BipartiteDims dims(3, 3, 1);
    const Matrix r = witness_operator(3, 0.6, 1);

    CHECK(witness_value(r, dims, psi) == doctest::Approx(-1.0 / 15).epsilon(1e-14));
    CHECK(stationarity_residual(r, dims, psi, -1.0 / 15) <= 1e-12);

    // quadratic form at other beta: (1 - 2 beta)/3
    for (double beta : {0.0, 0.25, 0.49, 1.3}) {
        CHECK(witness_value(witness_operator(3, beta, 1), dims, psi) ==
              doctest::Approx((1.0 - 2.0 * beta) / 3.0).epsilon(1e-13));
    }
}

TEST_CASE("stationarity residual rejects near-product vectors") {
    Rank2Vector psi = analytic_minimizer();
    psi.a = 1.0;
    psi.b = 0.0;
    const Matrix r = witness_operator(3, 0.6, 1);
    CHECK_THROWS_AS(stationarity_residual(r, BipartiteDims(3, 3, 1), psi, -1.0 / 15),
                    std::invalid_argument);
}

TEST_CASE("single-copy search finds the analytic minimum") {
    SearchConfig cfg;
    cfg.restarts = 40;
    cfg.seed = 1;
    const WitnessResult wr = witness_search(3, 0.6, 1, cfg);

    CHECK(wr.lambda_min == doctest::Approx(-1.0 / 15).epsilon(1e-9));
    CHECK(wr.converged);
    CHECK(wr.restarts_used == 40);
    CHECK(wr.stationarity <= 1e-7);
    CHECK(wr.normalized_lambda == doctest::Approx(wr.lambda_min / 7.4).epsilon(1e-12));

    REQUIRE(wr.best_vector.has_value());
    const Rank2Vector& best = *wr.best_vector;
    CHECK(std::abs(best.e1.norm() - 1.0) < 1e-8);
    CHECK(std::abs(best.e2.norm() - 1.0) < 1e-8);
    CHECK(std::abs((best.e1.adjoint() * best.e2).value()) < 1e-8);
    CHECK(std::abs(best.f1.norm() - 1.0) < 1e-8);
    CHECK(std::abs((best.f1.adjoint() * best.f2).value()) < 1e-8);
    CHECK(std::norm(best.a) + std::norm(best.b) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(std::abs(best.a) - 1.0 / std::sqrt(2.0)) < 1e-6);

    const Matrix r = witness_operator(3, 0.6, 1);
    CHECK(witness_value(r, BipartiteDims(3, 3, 1), best) ==
          doctest::Approx(wr.lambda_min).epsilon(1e-11));
}

TEST_CASE("search is deterministic in the seed") {
    SearchConfig cfg;
    cfg.restarts = 12;
    cfg.seed = 77;
    const WitnessResult a = witness_search(3, 0.8, 1, cfg);
    const WitnessResult b = witness_search(3, 0.8, 1, cfg);
    CHECK(a.lambda_min == b.lambda_min);
    REQUIRE(a.best_vector.has_value());
    REQUIRE(b.best_vector.has_value());
    CHECK(a.best_vector->a == b.best_vector->a);
    CHECK((a.best_vector->e1 - b.best_vector->e1).norm() == 0.0);

    cfg.seed = 78;
    const WitnessResult c = witness_search(3, 0.8, 1, cfg);
    CHECK(c.lambda_min == doctest::Approx(a.lambda_min).epsilon(1e-8));
}

TEST_CASE("more restarts never hurt") {
    SearchConfig few;
    few.restarts = 5;
    few.seed = 3;
    SearchConfig many;
    many.restarts = 50;
    many.seed = 3;
    const double lam_few = witness_search(3, 0.9, 1, few).lambda_min;
    const double lam_many = witness_search(3, 0.9, 1, many).lambda_min;
    CHECK(lam_many <= lam_few + 1e-15);
}

TEST_CASE("positive side of the threshold") {
    SearchConfig cfg;
    cfg.restarts = 40;
    cfg.seed = 6;
    const WitnessResult wr = witness_search(3, 0.49, 1, cfg);
    CHECK(wr.lambda_min == doctest::Approx(0.02 / 3.0).epsilon(1e-5));
    CHECK(wr.lambda_min > 0.0);
}

TEST_CASE("brute-force oracle brackets the single-copy search") {
    SearchConfig cfg;
    cfg.restarts = 40;
    cfg.seed = 4;
    const WitnessResult wr = witness_search(3, 0.6, 1, cfg);

    const Matrix r = witness_operator(3, 0.6, 1);
    SeededRng rng(99);
    const double brute = brute_force_witness(r, BipartiteDims(3, 3, 1), 2000, rng);
    CHECK(brute >= wr.lambda_min - 1e-9);
    CHECK(brute <= wr.lambda_min + 0.03);
    CHECK_THROWS_AS(brute_force_witness(r, BipartiteDims(3, 3, 1), 0, rng),
                    std::invalid_argument);
}

TEST_CASE("two-copy search at beta=0.7") {
    SearchConfig cfg;
    cfg.restarts = 30;
    cfg.seed = 8;
    const WitnessResult wr = witness_search(3, 0.7, 2, cfg);
    CHECK(wr.lambda_min <= -0.05);
    CHECK(wr.normalized_lambda ==
          doctest::Approx(wr.lambda_min / (7.3 * 7.3)).epsilon(1e-12));

    REQUIRE(wr.best_vector.has_value());
    const Matrix r = witness_operator(3, 0.7, 2);
    const BipartiteDims dims(3, 3, 2);
    CHECK(witness_value(r, dims, *wr.best_vector) ==
          doctest::Approx(wr.lambda_min).epsilon(1e-10));

    SeededRng rng(100);
    const double brute = brute_force_witness(r, dims, 3000, rng);
    CHECK(brute >= wr.lambda_min - 1e-9);
    CHECK(brute < 0.0);
}

TEST_CASE("two-copy search at the threshold stays nonnegative") {
    SearchConfig cfg;
    cfg.restarts = 15;
    cfg.seed = 12;
    const WitnessResult plain = witness_search(3, 0.5, 2, cfg);
    CHECK(plain.lambda_min >= -1e-8);

    cfg.symmetry_mode = true;
    const WitnessResult sym = witness_search(3, 0.5, 2, cfg);
    CHECK(sym.lambda_min >= -1e-8);
}

TEST_CASE("resolvent operator against its dense formula") {
    SeededRng rng(101);
    const Matrix r = witness_operator(3, 0.6, 1);
    const BipartiteDims dims(3, 3, 1);
    const Vector e1 = random_unit_vector(3, rng);
    const double lambda0 = -0.3;

    const Matrix e = embed(e1);
    const Matrix k = r * e;
    const Matrix r11 = e.adjoint() * r * e;
    const Matrix dense =
        r - k * (r11 - lambda0 * Matrix::Identity(3, 3)).inverse() * k.adjoint();
    CHECK(frobenius_distance(f_operator(r, dims, e1, lambda0), dense) < 1e-10);

    // lambda0 on the spectrum of <e1|r|e1> has no resolvent
    const Spectrum sp = hermitian_spectrum(r11);
    CHECK_THROWS_AS(f_operator(r, dims, e1, sp.values(0)), std::runtime_error);
}

TEST_CASE("frame objective equals the compressed resolvent minimum") {
    SeededRng rng(102);
    const Matrix r = witness_operator(3, 0.6, 1);
    const BipartiteDims dims(3, 3, 1);
    for (int t = 0; t < 5; ++t) {
        const Matrix u = haar_unitary(3, rng);
        const Vector e1 = u.col(0), e2 = u.col(1);
        const Matrix g =
            embed(e2).adjoint() * f_operator(r, dims, e1, 0.0) * embed(e2);
        const Spectrum sp = hermitian_spectrum(g);
        CHECK(frame_objective(r, dims, e1, e2) ==
              doctest::Approx(sp.values(0)).epsilon(1e-10));
    }
}

TEST_CASE("frame objective sign matches the fibre minimum") {
    SeededRng rng(103);
    const Matrix r = witness_operator(3, 0.7, 1);
    const BipartiteDims dims(3, 3, 1);
    for (int t = 0; t < 20; ++t) {
        const Matrix u = haar_unitary(3, rng);
        const Vector e1 = u.col(0), e2 = u.col(1);
        const Matrix w1 = embed(e1), w2 = embed(e2);

        Matrix h(6, 6);
        h.block(0, 0, 3, 3) = w1.adjoint() * r * w1;
        h.block(0, 3, 3, 3) = w1.adjoint() * r * w2;
        h.block(3, 0, 3, 3) = w2.adjoint() * r * w1;
        h.block(3, 3, 3, 3) = w2.adjoint() * r * w2;
        const double hmin = hermitian_spectrum(h).values(0);
        const double phi = frame_objective(r, dims, e1, e2);

        if (hmin < -1e-9) CHECK(phi < 0.0);
        if (hmin > 1e-9) CHECK(phi > 0.0);
    }
}

TEST_CASE("frame objective validates its frame") {
    const Matrix r = witness_operator(3, 0.6, 1);
    const BipartiteDims dims(3, 3, 1);
    Vector e1 = Vector::Zero(3), e2 = Vector::Zero(3);
    e1(0) = 2.0;
    e2(1) = 1.0;
    CHECK_THROWS_AS(frame_objective(r, dims, e1, e2), std::invalid_argument);
    e1(0) = 1.0;
    CHECK_THROWS_AS(frame_objective(r, dims, e1, e1), std::invalid_argument);
}

TEST_CASE("search rejects bad parameters") {
    SearchConfig cfg;
    cfg.restarts = 0;
    CHECK_THROWS_AS(witness_search(3, 0.5, 1, cfg), std::invalid_argument);
    cfg.restarts = 5;
    CHECK_THROWS_AS(witness_search(3, 0.5, 0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(witness_search(1, 0.5, 1, cfg), std::invalid_argument);
    CHECK_THROWS_AS(witness_search(3, 8.5, 1, cfg), std::invalid_argument);
    CHECK_THROWS_AS(witness_search(3, std::numeric_limits<double>::quiet_NaN(), 1, cfg),
                    std::invalid_argument);
}

}  // TEST_SUITE
