#include "wdist/distill.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace wdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// All search internals work in the grouped layout (Alice digits before Bob
// digits) so that Alice contractions are contiguous block operations.
struct Ctx {
    BipartiteDims dims;
    int na, nb, total;
    Matrix rg;      // operator, grouped layout
    double lam_lo;  // lower bound for the lambda0 bisection
};

Ctx make_ctx(const Matrix& r, const BipartiteDims& dims) {
    if (r.rows() != dims.total_dim() || r.cols() != dims.total_dim())
        throw std::invalid_argument("operator does not match the given dimensions");
    Ctx c{dims, dims.alice_dim(), dims.bob_dim(), dims.total_dim(), Matrix(), 0.0};
    const std::vector<int> perm = grouped_to_interleaved(dims);
    c.rg.resize(c.total, c.total);
    for (int i = 0; i < c.total; ++i)
        for (int j = 0; j < c.total; ++j) c.rg(i, j) = r(perm[i], perm[j]);
    c.lam_lo = -c.rg.norm();
    return c;
}

// R11 = <e1|R|e1>, R12 = <e1|R|e2>, R22 = <e2|R|e2>, all acting on Bob's space
void blocks(const Ctx& c, const Vector& e1, const Vector& e2, Matrix& r11, Matrix& r12,
            Matrix& r22) {
    r11 = Matrix::Zero(c.nb, c.nb);
    r12 = Matrix::Zero(c.nb, c.nb);
    r22 = Matrix::Zero(c.nb, c.nb);
    for (int a = 0; a < c.na; ++a) {
        for (int ap = 0; ap < c.na; ++ap) {
            const auto blk = c.rg.block(a * c.nb, ap * c.nb, c.nb, c.nb);
            r11.noalias() += std::conj(e1(a)) * e1(ap) * blk;
            r12.noalias() += std::conj(e1(a)) * e2(ap) * blk;
            r22.noalias() += std::conj(e2(a)) * e2(ap) * blk;
        }
    }
}

struct FrameEval {
    double phi;     // min eigenvalue of the Schur complement at lambda0 = 0
    Vector v;       // its Bob-side eigenvector
    Vector g1, g2;  // Wirtinger gradients of phi wrt conj(e1), conj(e2)
};

// R11 is positive definite on the open beta range but may turn singular at
// the closed endpoint beta = d-1; a tiny ridge keeps the descent usable
// there (final values never pass through this inverse)
Eigen::LLT<Matrix> chol_ridge(const Matrix& x) {
    Eigen::LLT<Matrix> llt(x);
    if (llt.info() == Eigen::Success) return llt;
    const double scale = std::max(1.0, std::abs(x.trace().real()));
    for (double ridge = 1e-14; ridge <= 1e-8; ridge *= 100.0) {
        llt.compute(x + ridge * scale * Matrix::Identity(x.rows(), x.cols()));
        if (llt.info() == Eigen::Success) return llt;
    }
    throw std::runtime_error("Cholesky failed on a PSD block");
}

FrameEval eval_frame(const Ctx& c, const Vector& e1, const Vector& e2) {
    Matrix r11, r12, r22;
    blocks(c, e1, e2, r11, r12, r22);
    Eigen::LLT<Matrix> llt = chol_ridge(r11);
    Matrix g = r22 - r12.adjoint() * llt.solve(r12);
    Eigen::SelfAdjointEigenSolver<Matrix> es((g + g.adjoint()) * 0.5);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("frame evaluation: eigensolver failed");

    FrameEval fe;
    fe.phi = es.eigenvalues()(0);
    fe.v = es.eigenvectors().col(0);

    const Vector y = r12 * fe.v;
    const Vector z = llt.solve(y);
    Vector w(c.total);
    for (int a = 0; a < c.na; ++a)
        for (int b = 0; b < c.nb; ++b) w(a * c.nb + b) = e2(a) * fe.v(b) - e1(a) * z(b);
    const Vector rw = c.rg * w;
    fe.g1 = Vector::Zero(c.na);
    fe.g2 = Vector::Zero(c.na);
    for (int a = 0; a < c.na; ++a) {
        Complex acc1 = 0.0, acc2 = 0.0;
        for (int b = 0; b < c.nb; ++b) {
            acc1 += rw(a * c.nb + b) * std::conj(z(b));
            acc2 += rw(a * c.nb + b) * std::conj(fe.v(b));
        }
        fe.g1(a) = -acc1;
        fe.g2(a) = acc2;
    }
    return fe;
}

// thin QR with the R diagonal rotated positive, so the map is continuous
Matrix retract(const Matrix& e) {
    Eigen::HouseholderQR<Matrix> qr(e);
    Matrix q = qr.householderQ() * Matrix::Identity(e.rows(), e.cols());
    for (int i = 0; i < e.cols(); ++i) {
        const Complex rii = qr.matrixQR()(i, i);
        const double m = std::abs(rii);
        if (m > 0.0) q.col(i) *= rii / m;
    }
    return q;
}

struct DescentOut {
    Vector e1, e2;
    double phi;
};

// Armijo backtracking along the projected gradient, QR retraction back to
// the Stiefel manifold of Alice 2-frames
DescentOut descend(const Ctx& c, Matrix e, int max_iters, double tol) {
    double tau = 0.5;
    FrameEval fe = eval_frame(c, e.col(0), e.col(1));
    for (int it = 0; it < max_iters; ++it) {
        Matrix gm(c.na, 2);
        gm.col(0) = fe.g1;
        gm.col(1) = fe.g2;
        const Matrix m = e.adjoint() * gm;
        const Matrix xi = gm - e * ((m + m.adjoint()) * 0.5);
        const double n2 = xi.squaredNorm();
        if (n2 < tol) break;
        bool accepted = false;
        while (tau > 1e-14) {
            Matrix trial = retract(e - tau * xi);
            FrameEval fe2 = eval_frame(c, trial.col(0), trial.col(1));
            if (fe2.phi <= fe.phi - 1e-4 * tau * n2) {
                e = std::move(trial);
                fe = std::move(fe2);
                tau = std::min(tau * 2.0, 1e3);
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if (!accepted) break;
    }
    return {e.col(0), e.col(1), fe.phi};
}

// Root of mu(lambda0) = min eig <e2|F(lambda0)|e2> - lambda0, which is
// strictly decreasing. A shift that lands inside the R11 spectrum means the
// root lies below it, so a failed factorization moves the upper end down.
double bisect_lambda0(const Ctx& c, const Vector& e1, const Vector& e2) {
    Matrix r11, r12, r22;
    blocks(c, e1, e2, r11, r12, r22);
    const Matrix id = Matrix::Identity(c.nb, c.nb);
    auto mu = [&](double lam0) {
        Eigen::LLT<Matrix> llt(Matrix(r11 - lam0 * id));
        if (llt.info() != Eigen::Success) throw std::runtime_error("singular resolvent");
        Matrix g = r22 - r12.adjoint() * llt.solve(r12);
        Eigen::SelfAdjointEigenSolver<Matrix> es((g + g.adjoint()) * 0.5,
                                                 Eigen::EigenvaluesOnly);
        return es.eigenvalues()(0) - lam0;
    };
    double lo = c.lam_lo - 1e-9;
    double hi = 0.0;
    try {
        if (mu(hi) >= 0.0) return 0.0;
    } catch (const std::runtime_error&) {
        // singular exactly at zero: the root is below, proceed
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        bool above;
        try {
            above = mu(mid) > 0.0;
        } catch (const std::runtime_error&) {
            above = false;
        }
        if (above)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Given the frame and the bisected lambda0, rebuild the full rank-2 vector:
// f2 is the kernel direction of the Schur complement and
// a f1 = b (lambda0 - R11)^{-1} R12 f2 fixes the first Schmidt branch.
Rank2Vector reconstruct(const Ctx& c, const Vector& e1, const Vector& e2, double lam0) {
    Matrix r11, r12, r22;
    blocks(c, e1, e2, r11, r12, r22);
    const Matrix id = Matrix::Identity(c.nb, c.nb);
    Eigen::LLT<Matrix> llt(Matrix(r11 - lam0 * id));
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("reconstruct: singular resolvent");
    Matrix g = r22 - r12.adjoint() * llt.solve(r12);
    Eigen::SelfAdjointEigenSolver<Matrix> es((g + g.adjoint()) * 0.5);

    Rank2Vector psi;
    psi.d = c.dims.d_a;
    psi.copies = c.dims.copies;
    psi.e1 = e1;
    psi.e2 = e2;
    psi.f2 = es.eigenvectors().col(0);
    const Vector gv = -llt.solve(r12 * psi.f2);
    const double rp = gv.norm();
    if (rp < 1e-300) {
        psi.a = 0.0;
        psi.b = 1.0;
        psi.f1 = Vector::Unit(c.nb, 0);
        if (std::abs(psi.f2(0)) > 0.5) psi.f1 = Vector::Unit(c.nb, c.nb - 1);
        psi.f1 -= psi.f2 * psi.f2.dot(psi.f1);
        psi.f1.normalize();
        return psi;
    }
    psi.a = rp / std::sqrt(1.0 + rp * rp);
    psi.b = 1.0 / std::sqrt(1.0 + rp * rp);
    psi.f1 = gv / rp;
    return psi;
}

struct PolishOut {
    Rank2Vector psi;
    double lambda = 0.0;
    double gap = kInf;
    bool converged = false;
};

// Alternating exact minimization: for a fixed Alice frame the optimum over
// (a, f1, b, f2) is the bottom eigenvector of the 2x2 block operator on
// Bob's doubled space; the SVD of the resulting coefficient matrix then
// re-frames Alice. Each step is exact, so lambda is monotone.
PolishOut polish(const Ctx& c, Vector e1, Vector e2, int max_iters) {
    PolishOut out;
    out.psi.d = c.dims.d_a;
    out.psi.copies = c.dims.copies;
    double lam_prev = kInf;
    Matrix r11, r12, r22;
    Matrix h(2 * c.nb, 2 * c.nb);
    for (int pit = 0; pit < max_iters; ++pit) {
        blocks(c, e1, e2, r11, r12, r22);
        h.block(0, 0, c.nb, c.nb) = r11;
        h.block(0, c.nb, c.nb, c.nb) = r12;
        h.block(c.nb, 0, c.nb, c.nb) = r12.adjoint();
        h.block(c.nb, c.nb, c.nb, c.nb) = r22;
        Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) * 0.5);
        if (es.info() != Eigen::Success) throw std::runtime_error("polish: eigensolver failed");
        out.lambda = es.eigenvalues()(0);
        out.gap = es.eigenvalues()(1) - out.lambda;
        const Vector v1 = es.eigenvectors().col(0).head(c.nb);
        const Vector v2 = es.eigenvectors().col(0).tail(c.nb);

        const Matrix cmat = e1 * v1.transpose() + e2 * v2.transpose();
        Eigen::JacobiSVD<Matrix> svd(cmat, Eigen::ComputeThinU | Eigen::ComputeThinV);
        e1 = svd.matrixU().col(0);
        e2 = svd.matrixU().col(1);
        out.psi.a = svd.singularValues()(0);
        out.psi.b = svd.singularValues()(1);
        out.psi.e1 = e1;
        out.psi.e2 = e2;
        out.psi.f1 = svd.matrixV().col(0).conjugate();
        out.psi.f2 = svd.matrixV().col(1).conjugate();
        if (std::abs(out.lambda - lam_prev) < 1e-15) {
            out.converged = true;
            break;
        }
        lam_prev = out.lambda;
    }
    return out;
}

// draw order is fixed: first Ginibre column, second column, orthonormalize
Matrix random_frame(int n, SeededRng& rng) {
    Matrix e(n, 2);
    for (int i = 0; i < n; ++i) e(i, 0) = rng.complex_normal();
    for (int i = 0; i < n; ++i) e(i, 1) = rng.complex_normal();
    e.col(0).normalize();
    e.col(1) -= e.col(0) * e.col(0).dot(e.col(1));
    e.col(1).normalize();
    return e;
}

Matrix symmetric_frame(int d, int na, SeededRng& rng) {
    Matrix e = Matrix::Zero(na, 2);
    for (int i = 0; i < d; ++i) e(i * d + i, 0) = std::abs(rng.normal());
    e.col(0).normalize();
    for (int i = 0; i < na; ++i) e(i, 1) = rng.complex_normal();
    e.col(1) -= e.col(0) * e.col(0).dot(e.col(1));
    e.col(1).normalize();
    return e;
}

}  // namespace

Matrix f_operator(const Matrix& r, const BipartiteDims& dims, const Vector& e1,
                  double lambda0) {
    if (e1.size() != dims.alice_dim())
        throw std::invalid_argument("f_operator: e1 does not match Alice dimension");
    if (std::abs(e1.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("f_operator: e1 must be a unit vector");
    const Ctx c = make_ctx(r, dims);

    Matrix k = Matrix::Zero(c.total, c.nb);
    for (int ap = 0; ap < c.na; ++ap)
        for (int bp = 0; bp < c.nb; ++bp) k.col(bp) += e1(ap) * c.rg.col(ap * c.nb + bp);
    Matrix r11 = Matrix::Zero(c.nb, c.nb);
    for (int a = 0; a < c.na; ++a)
        r11.noalias() += std::conj(e1(a)) * k.block(a * c.nb, 0, c.nb, c.nb);

    Eigen::SelfAdjointEigenSolver<Matrix> es((r11 + r11.adjoint()) * 0.5);
    const RealVector& w = es.eigenvalues();
    const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    for (int i = 0; i < c.nb; ++i)
        if (std::abs(w(i) - lambda0) <= 1e-12 * scale)
            throw std::runtime_error("f_operator: lambda0 hits the R11 spectrum");
    Matrix inv = es.eigenvectors() *
                 (w.array() - lambda0).inverse().matrix().asDiagonal() *
                 es.eigenvectors().adjoint();
    Matrix fg = c.rg - k * inv * k.adjoint();

    const std::vector<int> perm = grouped_to_interleaved(dims);
    Matrix f(c.total, c.total);
    for (int i = 0; i < c.total; ++i)
        for (int j = 0; j < c.total; ++j) f(perm[i], perm[j]) = fg(i, j);
    return f;
}

double frame_objective(const Matrix& r, const BipartiteDims& dims, const Vector& e1,
                       const Vector& e2) {
    if (e1.size() != dims.alice_dim() || e2.size() != dims.alice_dim())
        throw std::invalid_argument("frame_objective: frame does not match Alice dimension");
    if (std::abs(e1.norm() - 1.0) > 1e-8 || std::abs(e2.norm() - 1.0) > 1e-8 ||
        std::abs(e1.dot(e2)) > 1e-8)
        throw std::invalid_argument("frame_objective: (e1, e2) must be orthonormal");
    const Ctx c = make_ctx(r, dims);
    return eval_frame(c, e1, e2).phi;
}

double stationarity_residual(const Matrix& r, const BipartiteDims& dims,
                             const Rank2Vector& psi, double lambda0) {
    if (r.rows() != dims.total_dim() || r.cols() != dims.total_dim())
        throw std::invalid_argument("stationarity_residual: dimension mismatch");
    if (psi.d != dims.d_a || psi.copies != dims.copies)
        throw std::invalid_argument("stationarity_residual: vector does not match dims");
    if (std::abs(psi.a) < 1e-10 || std::abs(psi.b) < 1e-10)
        throw std::invalid_argument("stationarity_residual: near-product vector");

    const Vector rpsi = r * psi.assemble();
    const std::vector<int> perm = grouped_to_interleaved(dims);
    const int na = dims.alice_dim(), nb = dims.bob_dim();

    Vector w1 = Vector::Zero(nb), w2 = Vector::Zero(nb);
    Vector w3 = Vector::Zero(na), w4 = Vector::Zero(na);
    for (int a = 0; a < na; ++a) {
        for (int b = 0; b < nb; ++b) {
            const Complex val = rpsi(perm[static_cast<size_t>(a) * nb + b]);
            w1(b) += std::conj(psi.e1(a)) * val;
            w2(b) += std::conj(psi.e2(a)) * val;
            w3(a) += std::conj(psi.f1(b)) * val;
            w4(a) += std::conj(psi.f2(b)) * val;
        }
    }
    const double r1 = (w1 - lambda0 * psi.a * psi.f1).norm();
    const double r2 = (w2 - lambda0 * psi.b * psi.f2).norm();
    const double r3 = (w3 - lambda0 * psi.a * psi.e1).norm();
    const double r4 = (w4 - lambda0 * psi.b * psi.e2).norm();
    return std::max(std::max(r1, r2), std::max(r3, r4));
}

WitnessResult witness_search(int d, double beta, int copies, const SearchConfig& config) {
    if (d < 2) throw std::invalid_argument("witness_search: d must be >= 2");
    if (copies < 1) throw std::invalid_argument("witness_search: copies must be >= 1");
    // q - beta p is a valid witness operator beyond the open family range,
    // and the sweep grid closes at beta = d-1; only keep the normalization
    // factor M positive
    if (!std::isfinite(beta) || beta >= static_cast<double>(d) * d - 1.0)
        throw std::invalid_argument("witness_search: beta out of range");
    if (config.restarts < 1 || config.max_iters < 1)
        throw std::invalid_argument("witness_search: bad search configuration");

    const BipartiteDims dims(d, d, copies);
    const Matrix r = witness_operator(d, beta, copies);
    Ctx c = make_ctx(r, dims);
    // spectrum of (q - beta p)^{(x)N} is {(-beta)^k}; use the exact floor
    double floor = 0.0;
    for (int k = 0; k <= copies; ++k) floor = std::min(floor, std::pow(-beta, k));
    c.lam_lo = floor;

    double best_lam = kInf;
    PolishOut best;
    bool have_best = false;
    for (int rs = 0; rs < config.restarts; ++rs) {
        SeededRng rng(config.seed, static_cast<std::uint64_t>(rs));
        const Matrix e = (config.symmetry_mode && copies == 2)
                             ? symmetric_frame(d, c.na, rng)
                             : random_frame(c.na, rng);
        const DescentOut dout = descend(c, e, config.max_iters, config.tol);

        Vector e1 = dout.e1, e2 = dout.e2;
        if (dout.phi < -1e-12) {
            // negative value on this fibre: locate lambda0 and rebuild the
            // vector before the alternating refinement takes over
            const double lam0 = bisect_lambda0(c, e1, e2);
            const Rank2Vector rec = reconstruct(c, e1, e2, lam0);
            e1 = rec.e1;
            e2 = rec.e2;
        }
        PolishOut po = polish(c, std::move(e1), std::move(e2), 200);
        if (!have_best || po.lambda < best_lam - 1e-12) {
            best_lam = po.lambda;
            best = std::move(po);
            have_best = true;
        }
    }

    WitnessResult res;
    res.lambda_min = best_lam;
    res.best_vector = best.psi;
    res.restarts_used = config.restarts;
    res.normalized_lambda = best_lam / std::pow(d * d - 1.0 - beta, copies);
    res.degenerate_minimum = best.gap < 1e-9;
    if (std::abs(best.psi.a) >= 1e-10 && std::abs(best.psi.b) >= 1e-10)
        res.stationarity = stationarity_residual(r, dims, best.psi, best_lam);
    else
        res.stationarity = kInf;
    res.converged = best.converged && res.stationarity <= 1e-7;
    return res;
}

double brute_force_witness(const Matrix& r, const BipartiteDims& dims, long samples,
                           SeededRng& rng) {
    if (samples < 1) throw std::invalid_argument("brute_force_witness: samples must be >= 1");
    const Ctx c = make_ctx(r, dims);
    Matrix r11, r12, r22;
    Matrix h(2 * c.nb, 2 * c.nb);
    double best = kInf;
    for (long s = 0; s < samples; ++s) {
        const Matrix e = random_frame(c.na, rng);
        blocks(c, e.col(0), e.col(1), r11, r12, r22);
        h.block(0, 0, c.nb, c.nb) = r11;
        h.block(0, c.nb, c.nb, c.nb) = r12;
        h.block(c.nb, 0, c.nb, c.nb) = r12.adjoint();
        h.block(c.nb, c.nb, c.nb, c.nb) = r22;
        Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) * 0.5,
                                                 Eigen::EigenvaluesOnly);
        best = std::min(best, es.eigenvalues()(0));
    }
    return best;
}

}  // namespace wdist
