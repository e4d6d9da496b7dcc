#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace wdist {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Index convention, fixed once and shared by every tensor operation:
// a single copy of a d_A x d_B system uses |i,j> = |i>_A |j>_B -> i*d_B + j
// (Alice-major). With N copies the factors are ordered
// A1 B1 A2 B2 ... AN BN, copy 1 slowest, so an operator on N copies is the
// plain Kronecker power of the one-copy operator.
struct BipartiteDims {
    int d_a;
    int d_b;
    int copies;

    BipartiteDims(int da, int db, int n = 1);

    int pair_dim() const { return d_a * d_b; }
    int total_dim() const;
    int alice_dim() const;  // d_a^copies
    int bob_dim() const;    // d_b^copies
};

Matrix kron(const Matrix& a, const Matrix& b);

// n-fold Kronecker power; n == 0 is rejected
Matrix tensor_power(const Matrix& x, int n);

// Transposition of all Alice factors jointly:
// <i,k|X|j,l> becomes the coefficient of |j,k><i,l|.
Matrix partial_transpose(const Matrix& x, const BipartiteDims& dims);

// perm[g] = interleaved index for the grouped index g = a*bob_dim + b, where
// a and b pack the per-copy Alice/Bob digits copy-major. Used to move between
// the storage layout above and the (all-Alice | all-Bob) split.
std::vector<int> grouped_to_interleaved(const BipartiteDims& dims);

enum class Side { Alice, Bob, Both };

// V* X V on the chosen tensor factor(s); v must have orthonormal columns
// (checked against orth_tol). Single-copy operators only.
Matrix compress(const Matrix& x, const BipartiteDims& dims, const Matrix& v,
                Side side, double orth_tol = 1e-10);

struct Spectrum {
    RealVector values;  // ascending
    Matrix vectors;     // orthonormal columns, same order
};

// x must be Hermitian within herm_tol (max entrywise |x - x^dagger|)
Spectrum hermitian_spectrum(const Matrix& x, double herm_tol = 1e-10);

// Deterministic stream of random numbers. Identical (seed, stream) pairs
// reproduce identical draws on every platform: the generator is mt19937_64
// and normals are produced by an explicit Box-Muller transform rather than
// std::normal_distribution, whose output is implementation-defined.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    double uniform();           // [0, 1)
    double normal();            // standard normal
    Complex complex_normal();   // independent standard normal parts

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Exactly Haar-distributed: QR of a complex Ginibre matrix with the R
// diagonal rephased to be positive.
Matrix haar_unitary(int d, SeededRng& rng);

Matrix random_hermitian(int n, SeededRng& rng);
Matrix random_density(int n, SeededRng& rng);  // full rank a.s., trace 1
Vector random_unit_vector(int n, SeededRng& rng);

bool is_hermitian(const Matrix& x, double tol = 1e-12);
double frobenius_distance(const Matrix& a, const Matrix& b);

}  // namespace wdist
