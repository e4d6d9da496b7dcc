#include "wdist/twirl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wdist {

namespace {

// generator set of the finite twirl protocol, all applied as U (x) U

Matrix phase_pi(int d, int l) {
    Matrix u = Matrix::Identity(d, d);
    u(l, l) = -1.0;
    return u;
}

Matrix phase_i(int d, int l) {
    Matrix u = Matrix::Identity(d, d);
    u(l, l) = Complex(0.0, 1.0);
    return u;
}

Matrix swap_pair(int d, int k, int l) {
    Matrix u = Matrix::Identity(d, d);
    u(k, k) = 0.0;
    u(l, l) = 0.0;
    u(k, l) = 1.0;
    u(l, k) = 1.0;
    return u;
}

// keep |0..i0-1| fixed, rotate the tail {i0..d-1} cyclically by r
Matrix tail_cycle(int d, int i0, int r) {
    Matrix u = Matrix::Zero(d, d);
    const int m = d - i0;
    for (int k = 0; k < i0; ++k) u(k, k) = 1.0;
    for (int k = 0; k < m; ++k) u(i0 + (k + r) % m, i0 + k) = 1.0;
    return u;
}

Matrix shift(int d, int l) {
    Matrix u = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) u((k + l) % d, k) = 1.0;
    return u;
}

Matrix fourier(int d) {
    Matrix u(d, d);
    const double w = 2.0 * std::numbers::pi / d;
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j)
            u(k, j) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), w * j * k);
    return u;
}

UnitaryAlternative alt(std::string label, Matrix u, double p) {
    return {std::move(label), u, u, p};
}

UnitaryAlternative identity_alt(int d, double p) {
    return alt("identity", Matrix::Identity(d, d), p);
}

// {u with probability p, identity with 1-p}
void push_mix(MixingProtocol& proto, std::string label, Matrix u, double p) {
    MixingEvent ev;
    ev.alternatives.push_back(alt(std::move(label), std::move(u), p));
    ev.alternatives.push_back(identity_alt(proto.d, 1.0 - p));
    proto.events.push_back(std::move(ev));
}

// stage 1: phase mixings remove coherences between the |i,j> and |j,i|
// levels, then transposition-swap mixings remove the remaining
// phi_minus/phi_plus coherences. One swap sweep only contracts those
// coherences for d >= 3 (the swaps feed pairs into each other), so the
// sweep is repeated; 30 rounds push the mass below 1e-13 for d <= 5.
constexpr int kSwapSweeps = 30;

void push_stage1(MixingProtocol& proto) {
    const int d = proto.d;
    for (int l = 0; l < d; ++l)
        push_mix(proto, "phase_pi(" + std::to_string(l) + ")", phase_pi(d, l), 0.5);
    for (int l = 0; l < d; ++l)
        push_mix(proto, "phase_i(" + std::to_string(l) + ")", phase_i(d, l), 0.5);
    for (int sweep = 0; sweep < kSwapSweeps; ++sweep)
        for (int k = 0; k < d; ++k)
            for (int l = k + 1; l < d; ++l)
                push_mix(proto,
                         "swap(" + std::to_string(k) + "," + std::to_string(l) + ")",
                         swap_pair(d, k, l), 0.5);
}

// uniform mixture of the tail cycles fixing |0..i0>, i.e. depolarization of
// the pair levels built on basis states above i0
void push_tail_depolarize(MixingProtocol& proto, int i0) {
    const int d = proto.d;
    const int m = d - (i0 + 1);
    if (m <= 1) return;
    MixingEvent ev;
    for (int r = 0; r < m; ++r)
        ev.alternatives.push_back(alt(
            "cycle(" + std::to_string(i0 + 1) + "," + std::to_string(r) + ")",
            tail_cycle(d, i0 + 1, r), 1.0 / m));
    proto.events.push_back(std::move(ev));
}

// merge the pair levels involving |k> into the already-equalized block
// above it; the swap probability (d-k-1)/(d-k) balances the level counts
void push_merge(MixingProtocol& proto, int k) {
    const int d = proto.d;
    const double m = d - (k + 1);
    push_mix(proto, "swap(" + std::to_string(k) + "," + std::to_string(k + 1) + ")",
             swap_pair(d, k, k + 1), m / (m + 1.0));
    for (int j = 0; j <= k; ++j) push_tail_depolarize(proto, j);
    for (int kk = d - 3; kk > k; --kk) push_merge(proto, kk);
}

void push_stage2(MixingProtocol& proto) {
    const int d = proto.d;
    for (int i0 = 0; i0 < d - 1; ++i0) push_tail_depolarize(proto, i0);
    for (int k = d - 3; k >= 0; --k) push_merge(proto, k);
}

void push_stage3(MixingProtocol& proto) {
    const int d = proto.d;
    MixingEvent shifts;
    for (int l = 1; l <= d; ++l)
        shifts.alternatives.push_back(
            alt(l == d ? std::string("identity") : "shift(" + std::to_string(l) + ")",
                shift(d, l % d), 1.0 / d));
    proto.events.push_back(std::move(shifts));
    push_mix(proto, "fourier", fourier(d), d / (d + 1.0));
    // the Fourier reintroduces pair-basis off-diagonals; clean them up again
    push_stage1(proto);
}

}  // namespace

MixingProtocol build_depolarizing_protocol(int d) {
    if (d < 2) throw std::invalid_argument("build_depolarizing_protocol: d must be >= 2");
    MixingProtocol proto;
    proto.d = d;
    push_stage1(proto);
    push_stage2(proto);
    push_stage3(proto);
    return proto;
}

Matrix apply_protocol(const MixingProtocol& p, const Matrix& x,
                      const std::function<void(int, const Matrix&)>& on_event) {
    const int n = p.d * p.d;
    if (x.rows() != n || x.cols() != n)
        throw std::invalid_argument("apply_protocol: dimension mismatch");

    Matrix state = x;
    for (size_t i = 0; i < p.events.size(); ++i) {
        Matrix next = Matrix::Zero(n, n);
        for (const auto& a : p.events[i].alternatives) {
            const Matrix uu = kron(a.u_alice, a.u_bob);
            next += a.probability * (uu * state * uu.adjoint());
        }
        state = std::move(next);
        if (on_event) on_event(static_cast<int>(i), state);
    }
    return state;
}

Matrix apply_protocol(const MixingProtocol& p, const Matrix& x) {
    return apply_protocol(p, x, nullptr);
}

}  // namespace wdist
