#include "wdist/twirl.hpp"

#include <cmath>
#include <stdexcept>

namespace wdist {

namespace {

constexpr double kRankTol = 1e-12;  // Schmidt coefficients below this count as zero

}

FilterOutcome filter_to_standard(const Matrix& rho, const Vector& psi, int d) {
    const int n = d * d;
    if (rho.rows() != n || rho.cols() != n || psi.size() != n)
        throw std::invalid_argument("filter_to_standard: dimension mismatch");

    const BipartiteDims dims(d, d, 1);
    const Matrix rho_ta = partial_transpose(rho, dims);
    const double witness = (psi.adjoint() * rho_ta * psi).value().real();
    if (witness >= 0.0)
        throw std::invalid_argument(
            "filter_to_standard: <psi|rho^{T_A}|psi> is not negative");

    // Schmidt data of psi from the SVD of its coefficient matrix:
    // psi = sum_k c_k |u_k> (x) |v_k>, u_k = U col k, v_k = conj(V) col k
    Matrix coeff(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) coeff(i, j) = psi(i * d + j);
    Eigen::JacobiSVD<Matrix> svd(coeff, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd c = svd.singularValues();

    int rank = 0;
    while (rank < d && c(rank) > kRankTol) ++rank;
    if (rank < 2)
        throw std::invalid_argument("filter_to_standard: psi must have Schmidt rank >= 2");

    // Alice filter: 1/c_i on the Schmidt support; Bob: full basis change
    Matrix a_op = Matrix::Zero(d, d);
    for (int i = 0; i < rank; ++i) a_op.col(i) = svd.matrixU().col(i) / c(i);
    const Matrix b_op = svd.matrixV().conjugate();

    const Matrix k_op = kron(a_op.adjoint(), b_op.adjoint());
    Matrix filtered = k_op * rho * k_op.adjoint();
    filtered /= filtered.trace().real();

    // support projector expectation before depolarizing
    Vector phi_n = Vector::Zero(n);
    for (int i = 0; i < rank; ++i) phi_n(i * d + i) = 1.0 / std::sqrt(static_cast<double>(rank));
    const Matrix filtered_ta = partial_transpose(filtered, dims);
    const double pn = (phi_n.adjoint() * filtered_ta * phi_n).value().real();
    if (pn >= 0.0)
        throw std::runtime_error(
            "filter_to_standard: filtered state lost its negative witness "
            "(tr(P_n rho_s^{T_A}) >= 0)");

    const ProjectorSet ps = projector_set(d);
    const Matrix out = depolarize(filtered, d);
    const double lambda = (ps.a * out).trace().real();
    if (lambda < 0.5 - 1e-10)
        throw std::runtime_error(
            "filter_to_standard: output antisymmetric weight fell below 1/2");

    FilterOutcome fo;
    fo.lambda = lambda;
    fo.schmidt_rank = rank;
    fo.schmidt_coefficients.assign(c.data(), c.data() + rank);
    fo.pn_expectation = pn;
    // recover the family member from its antisymmetric weight; a fully
    // antisymmetric output (lambda = 1) sits at the alpha -> infinity edge
    // of the family, so the coordinate is capped there
    double alpha = (1.0 - lambda > 1e-14)
                       ? lambda * (d + 1.0) / ((1.0 - lambda) * (d - 1.0))
                       : 1e14;
    fo.state = state_from_alpha(d, alpha);
    return fo;
}

}  // namespace wdist
