#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wdist/werner.hpp"

namespace wdist {

// Projection onto the (s, a) commutant family:
//   D(x) = a tr(a x)/tr(a) + s tr(s x)/tr(s)
// Idempotent, self-adjoint, trace preserving, keeps tr(a x) fixed.
Matrix depolarize(const Matrix& x, int d);

// E(x) = [D(x^{T_A})]^{T_A} = p tr(p x) + q tr(q x)/tr(q)
Matrix conjugate_depolarize(const Matrix& x, int d);

// Empirical mean of (U (x) U) x (U (x) U)^dagger over Haar samples;
// with conjugate set, U* (x) U instead. Converges to depolarize(x)
// (resp. its conjugate version) at the usual 1/sqrt(samples) rate.
Matrix haar_twirl_mc(const Matrix& x, int d, long samples, SeededRng& rng,
                     bool conjugate = false);

// One alternative of a mixing event: a bi-local unitary applied with the
// given probability. label is symbolic ("swap(0,1)", "fourier", ...).
struct UnitaryAlternative {
    std::string label;
    Matrix u_alice;
    Matrix u_bob;
    double probability;
};

struct MixingEvent {
    std::vector<UnitaryAlternative> alternatives;  // probabilities sum to 1
};

struct MixingProtocol {
    int d;
    std::vector<MixingEvent> events;
};

// Finite protocol realizing depolarize() exactly, as an ordered list of
// mixing events over a fixed generator set (local phases, transposition
// swaps, tail cycles, shifts, Fourier). Three stages:
//   1. kill all off-diagonals in the pair basis (phase mixings at p = 1/2,
//      then repeated sweeps of all transposition-pair swap mixings; one
//      sweep only contracts the remaining coherences for d >= 3, so the
//      sweep is iterated to a fixpoint),
//   2. equalize the antisymmetric diagonal (tail-cycle mixings, then
//      pairwise merges with swap probability (d-k)/(d-k+1)),
//   3. equalize the symmetric diagonal against the entangled direction
//      (shift mixings at 1/d each, Fourier at d/(d+1), then a repeat of
//      the stage-1 cleanup for the off-diagonals the Fourier introduces).
// Every event conserves tr(a x).
MixingProtocol build_depolarizing_protocol(int d);

Matrix apply_protocol(const MixingProtocol& p, const Matrix& x);

// Same, invoking on_event after each mixing event with the intermediate
// state, so invariants can be checked mid-run.
Matrix apply_protocol(const MixingProtocol& p, const Matrix& x,
                      const std::function<void(int, const Matrix&)>& on_event);

// Local filtering of an NPPT state onto the standard family, driven by a
// vector psi with <psi|x^{T_A}|psi> < 0. The filter is built from the
// Schmidt data of psi: Alice applies sum_i (1/c_i)|u_i><i| over the Schmidt
// support, Bob the full basis change sum_i |v_i><i|; the filtered state is
// normalized and depolarized. Postconditions checked at runtime (violations
// throw): tr(P_n out^{T_A}) < 0 on the support projector, and the output
// antisymmetric weight is >= 1/2 - 1e-10.
struct FilterOutcome {
    StandardState state;
    double lambda;  // measured tr(a out); state clamps alpha when this hits 1
    int schmidt_rank;
    std::vector<double> schmidt_coefficients;
    double pn_expectation;  // tr(P_n rho_s^{T_A}), negative by construction
};

FilterOutcome filter_to_standard(const Matrix& rho, const Vector& psi, int d);

}  // namespace wdist
