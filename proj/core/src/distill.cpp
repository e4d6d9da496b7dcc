#include "wdist/distill.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace wdist {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// y = (f_1 (x) f_2 (x) ... (x) f_N) x for per-copy factors on the pair space,
// applied as mode products so the full operator is never formed
Vector apply_copy_factors(const std::vector<const Matrix*>& factors, const Vector& x,
                          int pair_dim) {
    const int n = static_cast<int>(factors.size());
    Vector cur = x;
    Vector next(x.size());
    int left = 1;
    int right = static_cast<int>(x.size()) / pair_dim;
    for (int c = 0; c < n; ++c) {
        const Matrix& f = *factors[c];
        for (int l = 0; l < left; ++l) {
            for (int r = 0; r < right; ++r) {
                const int base = l * pair_dim * right + r;
                for (int i = 0; i < pair_dim; ++i) {
                    Complex acc = 0.0;
                    for (int j = 0; j < pair_dim; ++j) acc += f(i, j) * cur(base + j * right);
                    next(base + i * right) = acc;
                }
            }
        }
        std::swap(cur, next);
        left *= pair_dim;
        right /= pair_dim;
    }
    return cur;
}

// <Psi| O |Psi> for O given by per-copy factors
double rank2_expectation(const std::vector<const Matrix*>& factors, const Rank2Vector& psi) {
    const BipartiteDims dims = psi.dims();
    const std::vector<int> perm = grouped_to_interleaved(dims);
    const int nb = dims.bob_dim();

    auto term = [&](const Vector& e, const Vector& f) {
        Vector t(dims.total_dim());
        for (int a = 0; a < dims.alice_dim(); ++a)
            for (int b = 0; b < nb; ++b) t(perm[static_cast<size_t>(a) * nb + b]) = e(a) * f(b);
        return t;
    };

    const Vector t1 = term(psi.e1, psi.f1);
    const Vector t2 = term(psi.e2, psi.f2);
    const Vector w1 = apply_copy_factors(factors, t1, dims.pair_dim());
    const Vector w2 = apply_copy_factors(factors, t2, dims.pair_dim());

    const Complex a = psi.a, b = psi.b;
    Complex val = std::conj(a) * a * t1.dot(w1) + std::conj(a) * b * t1.dot(w2) +
                  std::conj(b) * a * t2.dot(w1) + std::conj(b) * b * t2.dot(w2);
    return val.real();
}

}  // namespace

Vector Rank2Vector::assemble() const {
    const BipartiteDims dm = dims();
    const std::vector<int> perm = grouped_to_interleaved(dm);
    const int nb = dm.bob_dim();
    Vector out = Vector::Zero(dm.total_dim());
    for (int ai = 0; ai < dm.alice_dim(); ++ai)
        for (int bi = 0; bi < nb; ++bi)
            out(perm[static_cast<size_t>(ai) * nb + bi]) =
                a * e1(ai) * f1(bi) + b * e2(ai) * f2(bi);
    return out;
}

Rank2Vector random_rank2(int d, int copies, SeededRng& rng) {
    const BipartiteDims dims(d, d, copies);
    const int na = dims.alice_dim();
    const int nb = dims.bob_dim();

    auto frame = [&rng](int n) {
        Vector g1(n), g2(n);
        for (int i = 0; i < n; ++i) g1(i) = rng.complex_normal();
        for (int i = 0; i < n; ++i) g2(i) = rng.complex_normal();
        g1.normalize();
        g2 -= g1 * g1.dot(g2);
        g2.normalize();
        return std::pair{g1, g2};
    };

    Rank2Vector psi;
    psi.d = d;
    psi.copies = copies;
    std::tie(psi.e1, psi.e2) = frame(na);
    std::tie(psi.f1, psi.f2) = frame(nb);
    // |a|^2 uniform on [0,1], relative phase uniform
    const double theta = std::acos(std::sqrt(rng.uniform()));
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    psi.a = std::cos(theta);
    psi.b = std::polar(std::sin(theta), phase);
    return psi;
}

double witness_value(const Matrix& r, const BipartiteDims& dims, const Rank2Vector& psi) {
    if (r.rows() != dims.total_dim() || r.cols() != dims.total_dim())
        throw std::invalid_argument("witness_value: dimension mismatch");
    if (psi.d != dims.d_a || psi.copies != dims.copies)
        throw std::invalid_argument("witness_value: vector does not match dims");
    const Vector full = psi.assemble();
    return (full.adjoint() * r * full).value().real();
}

Matrix witness_operator(int d, double beta, int copies) {
    const ProjectorSet ps = projector_set(d);
    return tensor_power(ps.q - beta * ps.p, copies);
}

bool one_distillable(int d, double beta) {
    if (beta >= d - 1.0) throw std::invalid_argument("one_distillable: beta must be < d-1");
    return beta > d / 2.0 - 1.0;
}

BoundEntry certified_undistillable_bound(int d, int n) {
    if (d == 2)
        throw std::invalid_argument(
            "certified_undistillable_bound: no undistillable NPPT range exists at d=2");
    if (d < 2 || n < 1) throw std::invalid_argument("certified_undistillable_bound: bad d or n");

    BoundEntry e;
    e.d = d;
    e.n = n;
    e.tilde_beta = std::pow(d - 2.0, n) / (std::pow(d + 1.0, n) - std::pow(d - 1.0, n));
    if (n == 1) {
        e.certified_beta_bound = d / 2.0 - 1.0;
        e.source = BoundSource::OneCopyThreshold;
    } else if (n == 2) {
        e.certified_beta_bound = (d - 2.0) / 4.0;
        e.source = BoundSource::TwoCopyQuarter;
    } else {
        e.certified_beta_bound = std::min(e.tilde_beta, std::pow(e.tilde_beta, 1.0 / n));
        e.source = BoundSource::GeneralTilde;
    }
    if (d == 3)
        for (int k = 0; k <= n; ++k)
            e.a_coefficients.push_back(2.0 * binomial(n, k) * std::pow(3.0, n - k));
    e.certified = true;
    return e;
}

BoundTable make_bound_table(int d, int n_max) {
    BoundTable t;
    if (d == 2) return t;
    for (int n = 1; n <= n_max; ++n) t.entries.push_back(certified_undistillable_bound(d, n));
    return t;
}

AsymptoticBound asymptotic_bound(int n) {
    if (n < 1) throw std::invalid_argument("asymptotic_bound: n must be >= 1");
    AsymptoticBound b;
    b.n = n;
    b.x_star = 3.0 * std::pow(1.0 - std::pow(3.0, -1.0 / 3.0), 1.0 / 3.0);
    b.beta_estimate = b.x_star / (std::pow(3.0, n / 3.0) * std::pow(n, 1.0 / 3.0));
    b.certified = false;
    return b;
}

FloorCheckReport floor_inequality_check(int n, double beta, long samples, SeededRng& rng) {
    if (n < 1 || beta < 0.0)
        throw std::invalid_argument("floor_inequality_check: need n >= 1 and beta >= 0");
    const int d = 3;
    const ProjectorSet ps = projector_set(d);
    const Matrix qbp = ps.q - beta * ps.p;
    std::vector<const Matrix*> factors(n, &qbp);

    FloorCheckReport rep;
    rep.n = n;
    rep.beta = beta;
    rep.beta_n_used = (n == 1) ? 0.5 : asymptotic_bound(n).beta_estimate;
    rep.samples = samples;
    rep.floor_value = std::pow(3.0, -n) * (1.0 - beta / rep.beta_n_used);

    double min_value = std::numeric_limits<double>::infinity();
    for (long s = 0; s < samples; ++s) {
        const Rank2Vector psi = random_rank2(d, n, rng);
        min_value = std::min(min_value, rank2_expectation(factors, psi));
    }
    // include the minimizer a short search finds, not just blind samples
    SearchConfig cfg;
    cfg.restarts = 24;
    cfg.max_iters = 200;
    cfg.seed = rng.seed() + 1;
    const WitnessResult wr = witness_search(d, beta, n, cfg);
    if (wr.best_vector) min_value = std::min(min_value, wr.lambda_min);

    rep.min_value = min_value;
    rep.worst_margin = min_value - rep.floor_value;
    return rep;
}

RelationsReport structural_relations_check(int n, int k, long samples, SeededRng& rng) {
    if (n < 1 || k < 0 || k > n)
        throw std::invalid_argument("structural_relations_check: need 0 <= k <= n");
    const int d = 3;
    const ProjectorSet ps = projector_set(d);
    const Matrix id = Matrix::Identity(d * d, d * d);

    std::vector<const Matrix*> f_p, f_qp, f_q;
    for (int c = 0; c < n; ++c) {
        f_p.push_back(c < k ? &ps.p : &id);          // p on the leading k copies
        f_qp.push_back(c < n - k ? &ps.q : &ps.p);   // q first, p on the trailing k
        f_q.push_back(&ps.q);
    }

    RelationsReport rep;
    rep.n = n;
    rep.k = k;
    rep.samples = samples;
    rep.bound_p = 2.0 / std::pow(3.0, k);
    rep.bound_q = 1.0 / std::pow(3.0, n);
    rep.max_p_partial = -std::numeric_limits<double>::infinity();
    rep.max_qp = -std::numeric_limits<double>::infinity();
    rep.min_q = std::numeric_limits<double>::infinity();

    for (long s = 0; s < samples; ++s) {
        const Rank2Vector psi = random_rank2(d, n, rng);
        rep.max_p_partial = std::max(rep.max_p_partial, rank2_expectation(f_p, psi));
        rep.max_qp = std::max(rep.max_qp, rank2_expectation(f_qp, psi));
        rep.min_q = std::min(rep.min_q, rank2_expectation(f_q, psi));
    }
    rep.ok = rep.max_p_partial <= rep.bound_p + 1e-12 && rep.max_qp <= rep.bound_p + 1e-12 &&
             rep.min_q >= rep.bound_q - 1e-12;
    return rep;
}

double reduce_dimension_beta(int d, int k, double beta_d) {
    if (k < 2 || k >= d)
        throw std::invalid_argument("reduce_dimension_beta: need 2 <= k < d");
    return (static_cast<double>(k) / d) * (beta_d + 1.0) - 1.0;
}

double lambda_many_copies(double lambda_d, int n) {
    if (lambda_d < 0.0 || lambda_d > 1.0)
        throw std::invalid_argument("lambda_many_copies: lambda must be in [0,1]");
    if (n < 1) throw std::invalid_argument("lambda_many_copies: n must be >= 1");
    return (1.0 - std::pow(1.0 - 2.0 * lambda_d, n)) / 2.0;
}

Certificate certify(int d, double beta, int n_max, const SearchConfig& config) {
    if (n_max < 1) throw std::invalid_argument("certify: n_max must be >= 1");
    Certificate cert;
    cert.d = d;
    cert.beta = beta;
    cert.config = config;

    const BoundTable table = make_bound_table(d, n_max);
    cert.region = classify_region(d, beta, table);

    for (int n = 1; n <= n_max; ++n) {
        const BoundEntry* entry = table.find(d, n);
        if (entry && beta <= entry->certified_beta_bound) {
            const char* src = entry->source == BoundSource::OneCopyThreshold ? "one_copy_threshold"
                              : entry->source == BoundSource::TwoCopyQuarter ? "two_copy_quarter"
                                                                             : "general_tilde";
            cert.claims.push_back({n, ClaimKind::Certified, entry->certified_beta_bound, src});
            continue;
        }
        if (n > 3) continue;  // searches are supported for up to three copies
        const WitnessResult wr = witness_search(d, beta, n, config);
        cert.claims.push_back({n, ClaimKind::Evidence, wr.lambda_min,
                               wr.converged ? "witness_search" : "witness_search (not converged)"});
        if (!cert.witness && wr.lambda_min < -1e-12 && wr.best_vector)
            cert.witness = wr.best_vector;
    }
    return cert;
}

std::vector<SweepRow> run_sweep(int d, double beta_min, double beta_max, int steps,
                                int copies, const SearchConfig& config) {
    if (steps < 2) throw std::invalid_argument("run_sweep: steps must be >= 2");
    if (beta_min == beta_max) throw std::invalid_argument("run_sweep: empty beta range");
    if (beta_max < beta_min) throw std::invalid_argument("run_sweep: beta_max < beta_min");

    const BoundTable table = make_bound_table(d, 3);
    std::vector<SweepRow> rows;
    rows.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double beta = beta_min + (beta_max - beta_min) * i / (steps - 1.0);
        SweepRow row;
        row.beta = beta;
        // the grid may close at beta = d-1, the alpha -> infinity limit
        if (beta < d - 1.0) {
            row.alpha = beta_to_alpha(d, beta);
            row.lambda = lambda_of_alpha(d, row.alpha);
        } else if (beta == d - 1.0) {
            row.alpha = std::numeric_limits<double>::infinity();
            row.lambda = 1.0;
        } else {
            throw std::invalid_argument("run_sweep: beta_max exceeds d-1");
        }
        row.region = classify_region(d, beta, table);
        for (const auto& e : table.entries) row.certified_bounds.push_back(e.certified_beta_bound);
        row.lambda_min_search = witness_search(d, beta, copies, config).lambda_min;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace wdist
