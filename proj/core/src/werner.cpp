#include "wdist/werner.hpp"

#include <cmath>
#include <stdexcept>

namespace wdist {

const BoundEntry* BoundTable::find(int d, int n) const {
    for (const auto& e : entries)
        if (e.d == d && e.n == n) return &e;
    return nullptr;
}

ProjectorSet projector_set(int d) {
    if (d < 2) throw std::invalid_argument("projector_set: d must be >= 2");
    const int n = d * d;
    ProjectorSet ps;
    ps.d = d;
    ps.pi = Matrix::Zero(n, n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) ps.pi(j * d + i, i * d + j) = 1.0;
    const Matrix id = Matrix::Identity(n, n);
    ps.a = (id - ps.pi) / 2.0;
    ps.s = (id + ps.pi) / 2.0;
    const Vector phi = max_entangled(d);
    ps.p = phi * phi.adjoint();
    ps.q = id - ps.p;
    return ps;
}

Vector max_entangled(int d) {
    if (d < 1) throw std::invalid_argument("max_entangled: d must be >= 1");
    Vector phi = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return phi;
}

PairBasis pair_basis(int d) {
    if (d < 2) throw std::invalid_argument("pair_basis: d must be >= 2");
    PairBasis b;
    b.d = d;
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            Vector vm = Vector::Zero(d * d), vp = Vector::Zero(d * d);
            vm(i * d + j) = s;
            vm(j * d + i) = -s;
            vp(i * d + j) = s;
            vp(j * d + i) = s;
            b.phi_minus.push_back(vm);
            b.phi_plus.push_back(vp);
        }
    }
    for (int k = 0; k < d; ++k) {
        Vector v = Vector::Zero(d * d);
        v(k * d + k) = 1.0;
        b.chi.push_back(v);
    }
    return b;
}

Matrix PairBasis::columns() const {
    const int n = d * d;
    Matrix m(n, n);
    int c = 0;
    for (const auto& v : phi_minus) m.col(c++) = v;
    for (const auto& v : phi_plus) m.col(c++) = v;
    for (const auto& v : chi) m.col(c++) = v;
    return m;
}

double alpha_to_beta(int d, double alpha) {
    if (alpha < 0) throw std::invalid_argument("alpha_to_beta: alpha must be >= 0");
    return ((alpha - 1.0) * (d - 1.0) - 2.0) / (alpha + 1.0);
}

double beta_to_alpha(int d, double beta) {
    if (beta >= d - 1.0)
        throw std::invalid_argument("beta_to_alpha: beta >= d-1 has no finite alpha");
    if (beta < beta_min_attainable(d))
        throw std::invalid_argument("beta_to_alpha: beta below the attainable range");
    return (beta + d + 1.0) / (d - 1.0 - beta);
}

double lambda_of_alpha(int d, double alpha) {
    if (alpha < 0) throw std::invalid_argument("lambda_of_alpha: alpha must be >= 0");
    return (d - 1.0) * alpha / ((d + 1.0) + (d - 1.0) * alpha);
}

double beta_min_attainable(int d) { return -(d + 1.0); }

StandardState state_from_alpha(int d, double alpha) {
    if (d < 2) throw std::invalid_argument("state_from_alpha: d must be >= 2");
    if (alpha < 0) throw std::invalid_argument("state_from_alpha: alpha must be >= 0");
    StandardState st;
    st.d = d;
    st.alpha = alpha;
    st.beta = alpha_to_beta(d, alpha);
    st.lambda = lambda_of_alpha(d, alpha);
    st.n_alpha = d * (d + 1.0) / 2.0 + alpha * d * (d - 1.0) / 2.0;
    st.m_beta = d * static_cast<double>(d) - 1.0 - st.beta;
    return st;
}

StandardState state_from_beta(int d, double beta) {
    return state_from_alpha(d, beta_to_alpha(d, beta));
}

Matrix rho_alpha(int d, double alpha) {
    if (alpha < 0) throw std::invalid_argument("rho_alpha: alpha must be >= 0");
    const ProjectorSet ps = projector_set(d);
    const double n_alpha = d * (d + 1.0) / 2.0 + alpha * d * (d - 1.0) / 2.0;
    return (ps.s + alpha * ps.a) / n_alpha;
}

Matrix rho_pt(int d, double beta) {
    if (beta >= d - 1.0) throw std::invalid_argument("rho_pt: beta must be < d-1");
    if (beta < beta_min_attainable(d))
        throw std::invalid_argument("rho_pt: beta below the attainable range");
    const ProjectorSet ps = projector_set(d);
    const double m_beta = d * static_cast<double>(d) - 1.0 - beta;
    return (ps.q - beta * ps.p) / m_beta;
}

RegionResult classify_region(int d, double beta, const BoundTable& known_bounds) {
    // beta = d-1 is the alpha -> infinity closure of the family
    if (beta > d - 1.0) throw std::invalid_argument("classify_region: beta must be <= d-1");
    if (beta <= 0.0) return {Region::Separable, 0, 0.0};
    if (beta > d / 2.0 - 1.0) return {Region::OneDistillable, 0, d / 2.0 - 1.0};

    // strongest certified claim = largest N (bounds shrink as N grows)
    int best_n = 0;
    double bound = 0.0;
    for (const auto& e : known_bounds.entries) {
        if (e.d != d || e.n < 2 || !e.certified) continue;
        if (beta <= e.certified_beta_bound && e.n > best_n) {
            best_n = e.n;
            bound = e.certified_beta_bound;
        }
    }
    if (best_n >= 2) return {Region::CertifiedNUndistillable, best_n, bound};
    return {Region::UndecidedBand, 0, 0.0};
}

std::string region_to_string(const RegionResult& r) {
    switch (r.region) {
        case Region::Separable:
            return "Separable";
        case Region::OneDistillable:
            return "OneDistillable";
        case Region::CertifiedNUndistillable:
            return "CertifiedNUndistillable(" + std::to_string(r.certified_n) + ")";
        case Region::UndecidedBand:
            return "UndecidedBand";
    }
    return "UndecidedBand";
}

}  // namespace wdist
