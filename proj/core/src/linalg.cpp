#include "wdist/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wdist {

namespace {

long long ipow(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

BipartiteDims::BipartiteDims(int da, int db, int n) : d_a(da), d_b(db), copies(n) {
    if (da < 1 || db < 1 || n < 1)
        throw std::invalid_argument("BipartiteDims: dimensions and copies must be positive");
}

int BipartiteDims::total_dim() const {
    return static_cast<int>(ipow(static_cast<long long>(d_a) * d_b, copies));
}

int BipartiteDims::alice_dim() const { return static_cast<int>(ipow(d_a, copies)); }
int BipartiteDims::bob_dim() const { return static_cast<int>(ipow(d_b, copies)); }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix tensor_power(const Matrix& x, int n) {
    if (x.rows() != x.cols()) throw std::invalid_argument("tensor_power: matrix must be square");
    if (n < 1) throw std::invalid_argument("tensor_power: n must be >= 1");
    Matrix out = x;
    for (int i = 1; i < n; ++i) out = kron(out, x);
    return out;
}

Matrix partial_transpose(const Matrix& x, const BipartiteDims& dims) {
    const int n = dims.total_dim();
    if (x.rows() != n || x.cols() != n)
        throw std::invalid_argument("partial_transpose: dimension mismatch");

    // split every index into its packed Alice and Bob parts
    const int na = dims.alice_dim();
    const int nb = dims.bob_dim();
    std::vector<int> to_a(n), to_b(n);
    std::vector<int> from_ab(static_cast<size_t>(na) * nb);
    const int pair = dims.pair_dim();
    for (int t = 0; t < n; ++t) {
        int a = 0, b = 0;
        for (int c = 0; c < dims.copies; ++c) {
            const int digit = t / static_cast<int>(ipow(pair, dims.copies - 1 - c)) % pair;
            a = a * dims.d_a + digit / dims.d_b;
            b = b * dims.d_b + digit % dims.d_b;
        }
        to_a[t] = a;
        to_b[t] = b;
        from_ab[static_cast<size_t>(a) * nb + b] = t;
    }

    Matrix out(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const int rr = from_ab[static_cast<size_t>(to_a[c]) * nb + to_b[r]];
            const int cc = from_ab[static_cast<size_t>(to_a[r]) * nb + to_b[c]];
            out(rr, cc) = x(r, c);
        }
    }
    return out;
}

std::vector<int> grouped_to_interleaved(const BipartiteDims& dims) {
    const int na = dims.alice_dim();
    const int nb = dims.bob_dim();
    std::vector<int> perm(static_cast<size_t>(na) * nb);
    for (int a = 0; a < na; ++a) {
        for (int b = 0; b < nb; ++b) {
            int t = 0;
            for (int c = 0; c < dims.copies; ++c) {
                const int ad = a / static_cast<int>(ipow(dims.d_a, dims.copies - 1 - c)) % dims.d_a;
                const int bd = b / static_cast<int>(ipow(dims.d_b, dims.copies - 1 - c)) % dims.d_b;
                t = (t * dims.d_a + ad) * dims.d_b + bd;
            }
            perm[static_cast<size_t>(a) * nb + b] = t;
        }
    }
    return perm;
}

Matrix compress(const Matrix& x, const BipartiteDims& dims, const Matrix& v,
                Side side, double orth_tol) {
    if (dims.copies != 1)
        throw std::invalid_argument("compress: only single-copy operators are supported");
    if (x.rows() != dims.total_dim() || x.cols() != dims.total_dim())
        throw std::invalid_argument("compress: dimension mismatch");

    const Matrix gram = v.adjoint() * v;
    const double defect =
        (gram - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
    if (defect > orth_tol)
        throw std::invalid_argument("compress: isometry columns are not orthonormal");

    Matrix w;
    switch (side) {
        case Side::Alice:
            if (v.rows() != dims.d_a) throw std::invalid_argument("compress: isometry rows != d_a");
            w = kron(v, Matrix::Identity(dims.d_b, dims.d_b));
            break;
        case Side::Bob:
            if (v.rows() != dims.d_b) throw std::invalid_argument("compress: isometry rows != d_b");
            w = kron(Matrix::Identity(dims.d_a, dims.d_a), v);
            break;
        case Side::Both:
            if (dims.d_a != dims.d_b || v.rows() != dims.d_a)
                throw std::invalid_argument("compress: Both side needs d_a == d_b == isometry rows");
            w = kron(v, v);
            break;
    }
    return w.adjoint() * x * w;
}

Spectrum hermitian_spectrum(const Matrix& x, double herm_tol) {
    if (x.rows() != x.cols())
        throw std::invalid_argument("hermitian_spectrum: matrix must be square");
    if (!is_hermitian(x, herm_tol))
        throw std::invalid_argument("hermitian_spectrum: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Matrix> solver((x + x.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_spectrum: eigensolver failed to converge");
    return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<unsigned long long>(seed),
                      static_cast<unsigned long long>(stream)};
    gen_.seed(seq);
}

double SeededRng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double SeededRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller on pinned uniforms keeps streams identical across platforms
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

Complex SeededRng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

Matrix haar_unitary(int d, SeededRng& rng) {
    if (d < 1) throw std::invalid_argument("haar_unitary: d must be >= 1");
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();

    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        const double m = std::abs(rii);
        q.col(i) *= (m > 0.0) ? rii / m : Complex(1.0, 0.0);
    }
    return q;
}

Matrix random_hermitian(int n, SeededRng& rng) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
    return (g + g.adjoint()) / 2.0;
}

Matrix random_density(int n, SeededRng& rng) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

Vector random_unit_vector(int n, SeededRng& rng) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
    return v / v.norm();
}

bool is_hermitian(const Matrix& x, double tol) {
    if (x.rows() != x.cols()) return false;
    return (x - x.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
    return (a - b).norm();
}

}  // namespace wdist
