#pragma once

#include <string>
#include <vector>

#include "wdist/bounds.hpp"
#include "wdist/linalg.hpp"

namespace wdist {

// Projectors on C^d (x) C^d:
//   pi  = swap operator
//   a   = (1 - pi)/2,  antisymmetric projector, trace d(d-1)/2
//   s   = (1 + pi)/2,  symmetric projector,     trace d(d+1)/2
//   p   = projector onto the maximally entangled vector
//   q   = 1 - p
struct ProjectorSet {
    int d;
    Matrix pi;
    Matrix a;
    Matrix s;
    Matrix p;
    Matrix q;
};

ProjectorSet projector_set(int d);

// (1/sqrt(d)) sum_i |i,i>
Vector max_entangled(int d);

// Orthonormal basis of C^d (x) C^d adapted to the swap:
//   phi_minus[i<j] = (|i,j> - |j,i>)/sqrt(2)   spans range(a)
//   phi_plus [i<j] = (|i,j> + |j,i>)/sqrt(2)
//   chi      [k]   = |k,k>                     together span range(s)
// Pairs are stored in lexicographic (i, j) order.
struct PairBasis {
    int d;
    std::vector<Vector> phi_minus;
    std::vector<Vector> phi_plus;
    std::vector<Vector> chi;

    // all d^2 vectors as columns, phi_minus first, then phi_plus, then chi
    Matrix columns() const;
};

PairBasis pair_basis(int d);

// One-parameter family rho = (s + alpha a) / N(alpha), parameterized
// internally by beta, the coordinate in which the distillability thresholds
// are expressed. alpha and lambda = tr(a rho) are derived views:
//   beta   = ((alpha - 1)(d - 1) - 2) / (alpha + 1), always < d - 1
//   lambda = (d - 1) alpha / ((d + 1) + (d - 1) alpha)
//   N(alpha) = tr(s) + alpha tr(a),  M(beta) = d^2 - 1 - beta
// alpha >= 0 keeps rho a state, so beta is restricted to [-(d+1), d-1).
struct StandardState {
    int d;
    double alpha;
    double beta;
    double lambda;
    double n_alpha;
    double m_beta;
};

double alpha_to_beta(int d, double alpha);
double beta_to_alpha(int d, double beta);
double lambda_of_alpha(int d, double alpha);
double beta_min_attainable(int d);  // beta at alpha = 0, equals -(d+1)

StandardState state_from_alpha(int d, double alpha);
StandardState state_from_beta(int d, double beta);

Matrix rho_alpha(int d, double alpha);

// (q - beta p) / M(beta); equals partial_transpose(rho_alpha) at the
// matching alpha. Spectrum: -beta/M on p (rank 1), 1/M on q.
Matrix rho_pt(int d, double beta);

enum class Region { Separable, OneDistillable, CertifiedNUndistillable, UndecidedBand };

struct RegionResult {
    Region region;
    int certified_n = 0;     // largest certified N when region is CertifiedNUndistillable
    double bound_used = 0.0;
};

// beta <= 0            -> Separable
// beta >  d/2 - 1      -> OneDistillable
// beta <= certified bound for some N >= 2 in the table
//                      -> CertifiedNUndistillable (largest such N)
// otherwise            -> UndecidedBand
RegionResult classify_region(int d, double beta, const BoundTable& known_bounds);

std::string region_to_string(const RegionResult& r);

}  // namespace wdist
