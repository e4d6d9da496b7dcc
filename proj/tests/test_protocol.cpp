#include <cmath>

#include "doctest.h"
#include "wdist/linalg.hpp"
#include "wdist/twirl.hpp"

using namespace wdist;

TEST_SUITE("protocol") {

TEST_CASE("protocol structure") {
    const MixingProtocol proto = build_depolarizing_protocol(3);
    CHECK(proto.d == 3);
    CHECK(!proto.events.empty());
    for (const MixingEvent& ev : proto.events) {
        REQUIRE(!ev.alternatives.empty());
        double total = 0.0;
        for (const UnitaryAlternative& alt : ev.alternatives) {
            CHECK(!alt.label.empty());
            CHECK(alt.probability > 0.0);
            CHECK(alt.probability <= 1.0 + 1e-15);
            total += alt.probability;
            CHECK(frobenius_distance(alt.u_alice.adjoint() * alt.u_alice,
                                     Matrix::Identity(3, 3)) < 1e-12);
            CHECK(frobenius_distance(alt.u_bob.adjoint() * alt.u_bob,
                                     Matrix::Identity(3, 3)) < 1e-12);
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(build_depolarizing_protocol(1), std::invalid_argument);
}

TEST_CASE("protocol builds are deterministic") {
    const MixingProtocol a = build_depolarizing_protocol(3);
    const MixingProtocol b = build_depolarizing_protocol(3);
    REQUIRE(a.events.size() == b.events.size());
    for (size_t i = 0; i < a.events.size(); ++i) {
        REQUIRE(a.events[i].alternatives.size() == b.events[i].alternatives.size());
        for (size_t k = 0; k < a.events[i].alternatives.size(); ++k) {
            CHECK(a.events[i].alternatives[k].label == b.events[i].alternatives[k].label);
            CHECK(frobenius_distance(a.events[i].alternatives[k].u_alice,
                                     b.events[i].alternatives[k].u_alice) == 0.0);
        }
    }
}

TEST_CASE("protocol reproduces depolarize at d=2") {
    SeededRng rng(30);
    const MixingProtocol proto = build_depolarizing_protocol(2);
    for (int t = 0; t < 3; ++t) {
        const Matrix x = random_density(4, rng);
        CHECK(frobenius_distance(apply_protocol(proto, x), depolarize(x, 2)) < 1e-10);
    }
}

TEST_CASE("protocol reproduces depolarize at d=3") {
    SeededRng rng(31);
    const MixingProtocol proto = build_depolarizing_protocol(3);
    for (int t = 0; t < 3; ++t) {
        const Matrix x = random_density(9, rng);
        CHECK(frobenius_distance(apply_protocol(proto, x), depolarize(x, 3)) < 1e-10);
    }
    CHECK_THROWS_AS(apply_protocol(proto, Matrix::Zero(4, 4)), std::invalid_argument);
}

TEST_CASE("protocol reproduces depolarize at d=4") {
    SeededRng rng(32);
    const MixingProtocol proto = build_depolarizing_protocol(4);
    const Matrix x = random_density(16, rng);
    CHECK(frobenius_distance(apply_protocol(proto, x), depolarize(x, 4)) < 1e-10);
}

TEST_CASE("protocol fixes the standard family") {
    const MixingProtocol proto = build_depolarizing_protocol(3);
    const Matrix rho = rho_alpha(3, 4.0);
    CHECK(frobenius_distance(apply_protocol(proto, rho), rho) < 1e-10);
}

TEST_CASE("every event conserves trace and antisymmetric weight") {
    SeededRng rng(33);
    const MixingProtocol proto = build_depolarizing_protocol(3);
    const ProjectorSet ps = projector_set(3);
    const Matrix x = random_density(9, rng);
    const double w0 = (ps.a * x).trace().real();

    int seen = 0;
    double max_weight_drift = 0.0, max_trace_drift = 0.0;
    apply_protocol(proto, x, [&](int idx, const Matrix& xk) {
        CHECK(idx == seen);
        ++seen;
        max_weight_drift =
            std::max(max_weight_drift, std::abs((ps.a * xk).trace().real() - w0));
        max_trace_drift = std::max(max_trace_drift, std::abs(xk.trace().real() - 1.0));
    });
    CHECK(seen == static_cast<int>(proto.events.size()));
    CHECK(max_weight_drift < 1e-12);
    CHECK(max_trace_drift < 1e-12);
}

}  // TEST_SUITE
