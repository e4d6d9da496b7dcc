#include "wdist/twirl.hpp"

#include <stdexcept>

namespace wdist {

Matrix depolarize(const Matrix& x, int d) {
    const int n = d * d;
    if (x.rows() != n || x.cols() != n)
        throw std::invalid_argument("depolarize: operator is not d*d x d*d");
    const ProjectorSet ps = projector_set(d);
    const double wa = (ps.a * x).trace().real();
    const double ws = (ps.s * x).trace().real();
    const double tra = d * (d - 1.0) / 2.0;
    const double trs = d * (d + 1.0) / 2.0;
    return ps.a * (wa / tra) + ps.s * (ws / trs);
}

Matrix conjugate_depolarize(const Matrix& x, int d) {
    const int n = d * d;
    if (x.rows() != n || x.cols() != n)
        throw std::invalid_argument("conjugate_depolarize: operator is not d*d x d*d");
    const ProjectorSet ps = projector_set(d);
    const double wp = (ps.p * x).trace().real();
    const double wq = (ps.q * x).trace().real();
    return ps.p * wp + ps.q * (wq / (n - 1.0));
}

Matrix haar_twirl_mc(const Matrix& x, int d, long samples, SeededRng& rng, bool conjugate) {
    const int n = d * d;
    if (x.rows() != n || x.cols() != n)
        throw std::invalid_argument("haar_twirl_mc: operator is not d*d x d*d");
    if (samples < 1) throw std::invalid_argument("haar_twirl_mc: samples must be >= 1");

    Matrix acc = Matrix::Zero(n, n);
    for (long s = 0; s < samples; ++s) {
        const Matrix u = haar_unitary(d, rng);
        const Matrix uu = conjugate ? kron(u.conjugate(), u) : kron(u, u);
        acc += uu * x * uu.adjoint();
    }
    return acc / static_cast<double>(samples);
}

}  // namespace wdist
