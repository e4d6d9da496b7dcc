#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wdist/twirl.hpp"

namespace wdist {

// Schmidt-rank-2 candidate witness over N copies,
//   |Psi> = a |e1>_A |f1>_B + b |e2>_A |f2>_B,
// with e1, e2 orthonormal in Alice's combined space (dimension d^N) and
// f1, f2 orthonormal in Bob's.
struct Rank2Vector {
    Complex a;
    Complex b;
    Vector e1, e2;  // Alice side
    Vector f1, f2;  // Bob side
    int d = 0;
    int copies = 1;

    BipartiteDims dims() const { return BipartiteDims(d, d, copies); }

    // full vector in the interleaved storage layout, dimension (d^2)^N
    Vector assemble() const;
};

Rank2Vector random_rank2(int d, int copies, SeededRng& rng);

// <Psi| r |Psi> for Hermitian r on N copies (interleaved layout)
double witness_value(const Matrix& r, const BipartiteDims& dims, const Rank2Vector& psi);

// the operator whose quadratic form is minimized: (q - beta p)^{(x) N}
Matrix witness_operator(int d, double beta, int copies);

// true iff beta > d/2 - 1
bool one_distillable(int d, double beta);

// Certified bound below which the family is N-undistillable:
//   N = 1  -> d/2 - 1
//   N = 2  -> (d - 2)/4
//   N >= 3 -> min(tilde_beta_N, tilde_beta_N^{1/N}),
//             tilde_beta_N = (d-2)^N / ((d+1)^N - (d-1)^N)
// d = 2 is rejected: NPPT and distillable coincide there.
BoundEntry certified_undistillable_bound(int d, int n);

BoundTable make_bound_table(int d, int n_max);

// Large-N estimate for the d=3 undistillability boundary,
//   beta_N ~ x* / (3^{N/3} N^{1/3}),  x* = 3 (1 - 3^{-1/3})^{1/3}.
// The finite-N constant is only known up to 1 - O(1/N), so the estimate is
// never certified. For N = 1 the exact certified value is 1/2.
struct AsymptoticBound {
    int n;
    double x_star;
    double beta_estimate;
    bool certified;  // always false
};

AsymptoticBound asymptotic_bound(int n);

// Sampled check of the d=3 floor inequality
//   <Psi|(q - beta p)^{(x) N}|Psi> >= 3^{-N} (1 - beta/beta_N)
// over random Rank2Vectors plus the minimizer found by a short search.
// beta_N is 1/2 for N = 1 (exact) and the asymptotic estimate otherwise.
struct FloorCheckReport {
    int n;
    double beta;
    double beta_n_used;
    long samples;
    double min_value;     // smallest quadratic form seen
    double floor_value;   // 3^{-N} (1 - beta/beta_N)
    double worst_margin;  // min_value - floor_value
};

FloorCheckReport floor_inequality_check(int n, double beta, long samples, SeededRng& rng);

// Sampled check of the d=3 structural relations, with p/q placed on the
// leading/trailing copies:
//   (i)   <Psi| p^{(x)k} (x) 1^{(x)N-k} |Psi> <= 2/3^k
//   (ii)  <Psi| q^{(x)N-k} (x) p^{(x)k} |Psi> <= 2/3^k
//   (iii) <Psi| q^{(x)N} |Psi> >= 1/3^N
struct RelationsReport {
    int n;
    int k;
    long samples;
    double max_p_partial;  // relation (i), largest value seen
    double max_qp;         // relation (ii)
    double min_q;          // relation (iii)
    double bound_p;        // 2/3^k
    double bound_q;        // 1/3^N
    bool ok;
};

RelationsReport structural_relations_check(int n, int k, long samples, SeededRng& rng);

// Parameter of the family after compressing both sides onto the canonical
// k-dimensional subspace: beta_k = (k/d)(beta_d + 1) - 1. Requires
// 2 <= k < d. NPPT is lost exactly when 0 < beta_d <= d/k - 1.
double reduce_dimension_beta(int d, int k, double beta_d);

// Antisymmetric weight of the depolarized N-copy state in dimension d^N:
// lambda_{d^N} = (1 - (1 - 2 lambda_d)^N) / 2
double lambda_many_copies(double lambda_d, int n);

// F(lambda0) = r - r|e1> (1/(<e1|r|e1> - lambda0)) <e1|r, returned on the
// full space in the interleaved layout. <e1|r|e1> is strictly positive for
// the family operators, so the resolvent exists for every lambda0 <= 0; a
// singular resolvent is reported by throwing, never regularized.
Matrix f_operator(const Matrix& r, const BipartiteDims& dims, const Vector& e1,
                  double lambda0);

// min eigenvalue of <e2|F(0)|e2> on Bob's space; nonnegative for every
// orthonormal frame (e1, e2) exactly when no negative witness exists.
double frame_objective(const Matrix& r, const BipartiteDims& dims,
                       const Vector& e1, const Vector& e2);

struct SearchConfig {
    int restarts = 100;
    int max_iters = 300;
    double tol = 1e-10;          // squared-gradient stopping threshold
    std::uint64_t seed = 0;
    bool symmetry_mode = false;  // N=2: seed e1 in the span of sum_i c_i|i,i>, c_i >= 0
};

struct WitnessResult {
    double lambda_min = 0.0;
    std::optional<Rank2Vector> best_vector;
    int restarts_used = 0;
    bool converged = false;
    double normalized_lambda = 0.0;  // lambda_min / M(beta)^N
    double stationarity = 0.0;       // residual of the best vector
    bool degenerate_minimum = false; // eigen-gap < 1e-9 at the optimum
};

// Multi-restart minimization of <Psi|r|Psi> over Schmidt-rank-2 vectors:
// projected descent on the Alice 2-frame (objective = frame_objective),
// followed by an alternating exact minimization over the rank-2 fibre.
// Restart i draws from SeededRng(seed, i); ties within 1e-12 resolve to the
// lowest restart index, so results are independent of execution order.
WitnessResult witness_search(int d, double beta, int copies, const SearchConfig& config);

// Independent upper-bound oracle for witness_search: draws random Alice
// 2-frames and minimizes exactly over (a, b, f1, f2) for each, which is a
// 2 d^N - dimensional eigenproblem. Returns the smallest value seen.
double brute_force_witness(const Matrix& r, const BipartiteDims& dims,
                           long samples, SeededRng& rng);

// Max norm-residual of the four stationarity equations
//   <e1|r|Psi> = lambda0 a |f1>      <f1|r|Psi> = lambda0 a |e1>
//   <e2|r|Psi> = lambda0 b |f2>      <f2|r|Psi> = lambda0 b |e2>
// Rejects near-product vectors (|a| or |b| below 1e-10).
double stationarity_residual(const Matrix& r, const BipartiteDims& dims,
                             const Rank2Vector& psi, double lambda0);

enum class ClaimKind { Certified, Evidence };

struct Claim {
    int n;
    ClaimKind kind;
    double bound_or_lambda;
    std::string source;
};

struct Certificate {
    int d;
    double beta;
    RegionResult region;
    std::vector<Claim> claims;
    std::optional<Rank2Vector> witness;
    SearchConfig config;
};

// Combines the analytic region, the certified bound table, and witness
// searches (run only for copy counts <= 3 that the table does not already
// certify at this beta). Searches contribute evidence claims; certified
// claims come exclusively from the bound table and thresholds.
Certificate certify(int d, double beta, int n_max, const SearchConfig& config);

// One row of the phase-diagram sweep emitted by the CLI.
struct SweepRow {
    double beta;
    double alpha;
    double lambda;
    RegionResult region;
    std::vector<double> certified_bounds;  // N = 1..3
    double lambda_min_search;
};

std::vector<SweepRow> run_sweep(int d, double beta_min, double beta_max, int steps,
                                int copies, const SearchConfig& config);

}  // namespace wdist
