#pragma once

#include <vector>

namespace wdist {

enum class BoundSource {
    OneCopyThreshold,   // beta <= d/2 - 1
    TwoCopyQuarter,     // beta <= (d-2)/4
    GeneralTilde,       // beta <= min(tilde_beta_N, tilde_beta_N^{1/N})
    AsymptoticEstimate  // large-N estimate, never certified
};

struct BoundEntry {
    int d = 0;
    int n = 0;
    double certified_beta_bound = 0.0;
    BoundSource source = BoundSource::GeneralTilde;
    double tilde_beta = 0.0;
    // d=3 only: a_k = 2 C(n,k) 3^{n-k} for k = 0..n; the odd-k entries sum
    // to 4^n - 2^n = 1/tilde_beta_n
    std::vector<double> a_coefficients;
    bool certified = true;
};

struct BoundTable {
    std::vector<BoundEntry> entries;

    const BoundEntry* find(int d, int n) const;
};

}  // namespace wdist
