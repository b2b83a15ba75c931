#pragma once

#include <map>
#include <vector>

#include "xgev/grid.hpp"
#include "xgev/sequences.hpp"

namespace xgev {

// One member chi_N of an admissible cut-off family: a mollified ball
// indicator, equal to 1 on B_r(x0) and supported in B_2r(x0). Built as
//   chi_N = theta * (indicator of B_{3r/2} * phi_d * ... * phi_d),
// with k = floor((N/tau)^(1/sigma)) bump factors of support radius
// d = r/(4k) (so the widths sum to r/4) and theta a fixed bump of radius r/4.
struct CutoffSpec {
    std::array<double, 2> x0 = {0.0, 0.0};
    double r = 1.0;
    SequenceParams params{1.0, 2.0};
    int N = 1;
    GridSpec grid;

    int factor_count() const;   // k, at least 1
    double width() const;       // d = r / (4k)
    void validate() const;
};

SampledField build_cutoff(const CutoffSpec& spec);

struct CutoffSequence {
    std::vector<CutoffSpec> specs;
    std::vector<SampledField> fields;
};

CutoffSequence build_cutoff_sequence(const std::array<double, 2>& x0, double r,
                                     const SequenceParams& params,
                                     const std::vector<int>& Ns, const GridSpec& grid);

struct AdmissibilityReport {
    // Keyed by the flattened beta multi-index (b0 + 16*b1); value is the least
    // C with sup |D^(alpha+beta) chi_N| <= C^(|alpha|+1) * floor(N^(1/sigma))^|alpha|
    // over all tested N, alpha.
    std::map<int, double> c_beta;
    // Per-N witnesses for the stability check.
    std::map<int, std::map<int, double>> c_beta_per_N;
    bool pass = false;
    int alpha_cap = 0;  // effective |alpha| cap actually used
    struct Worst {
        int N = 0;
        MultiIndex alpha{0, 0};
        MultiIndex beta{0, 0};
    } worst;
};

inline int beta_key(const MultiIndex& b) { return b[0] + 16 * b[1]; }

// alpha_cap <= 0 selects the default policy min(floor((N/tau)^(1/sigma)), 12).
AdmissibilityReport verify_admissibility(const CutoffSequence& seq, int alpha_cap,
                                         int beta_max);

struct CutoffFourierReport {
    double A_beta = 0.0;
    bool pass = false;
    bool band_clipped = false;
    double band_max = 0.0;
};

// Least A with |chihat_N(xi)| <= A^(|alpha|+1) * floor(N^(1/sigma))^|alpha|
//                                * <xi>^(-|alpha|-|beta|) over the usable band.
CutoffFourierReport cutoff_fourier_decay(const CutoffSequence& seq, int alpha,
                                         int beta);

}  // namespace xgev
