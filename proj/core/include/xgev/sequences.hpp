#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace xgev {

// Parameters of the weight family M_p = p^(tau * p^sigma).
// sigma == 1 is Gevrey-comparison mode (M_p = p^(tau*p)); sigma > 1 is the
// extended regime this library is about.
struct SequenceParams {
    double tau;
    double sigma;

    void validate() const {
        if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
        if (!(sigma >= 1.0)) throw std::invalid_argument("sigma must be >= 1");
    }
};

// floor() with a small guard so expressions that are integers up to rounding
// (e.g. 8^(1/3)) do not land one below. Floors appear inside exponents, so an
// off-by-one changes bounds qualitatively.
std::int64_t guarded_floor(double x);

// ln M_p = tau * p^sigma * ln p; zero for p in {0, 1}. The weight itself is
// never materialized (it overflows for tiny p already).
double log_defining_sequence(const SequenceParams& params, std::int64_t p);

struct LogSequence {
    SequenceParams params;
    int p_max = 0;
    std::vector<double> values;  // values[p] = ln M_p, p = 0..p_max

    static LogSequence build(const SequenceParams& params, int p_max);
};

struct PropertyReport {
    bool m1_ok = false;               // log-convexity at every tested p
    double m2prime_constant = 0.0;    // max_p (ln M_{p+1} - ln M_p) / p^sigma
    double m2_constant = 0.0;         // best ln C for the rescaled splitting bound
    std::vector<double> m3prime_partial_sums;  // partial sums of M_{p-1}/M_p
    bool simple_inequality_ok = false;         // floor-power inequality, N <= p_max
};

PropertyReport verify_sequence_properties(const SequenceParams& params, int p_max);

// floor(N^(1/sigma))^floor((N/tau)^(1/sigma)) <= N^(N * tau^(-1/sigma) / sigma),
// checked in the log domain.
bool simple_floor_inequality(const SequenceParams& params, std::int64_t N);

// Ratio of floor(p^sigma)!^(tau/sigma) to its Stirling-form approximant
// (2*pi)^(tau/(2*sigma)) * p^(tau/2) * exp(-(tau/sigma) p^sigma) * M_p.
// Tends to 1 along p with integer p^sigma.
double stirling_compare(const SequenceParams& params, int p);

// Closed-form bound exp(((tau2-tau1)/(e*sigma)) * (k/h)^(sigma/(tau2-tau1)))
// dominating sup_n (k/h)^(n^sigma) * n^((tau1-tau2) n^sigma).
double embedding_constant(double tau1, double tau2, double sigma, double h, double k);

// Brute-force version of the dominated sup, for cross-checks.
double embedding_sup(double tau1, double tau2, double sigma, double h, double k,
                     int n_max = 100);

}  // namespace xgev
