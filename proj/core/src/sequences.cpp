#include "xgev/sequences.hpp"

#include <algorithm>
#include <cmath>

namespace xgev {

std::int64_t guarded_floor(double x) {
    double f = std::floor(x);
    if (x - f > 1.0 - 1e-12) f += 1.0;
    return static_cast<std::int64_t>(f);
}

double log_defining_sequence(const SequenceParams& params, std::int64_t p) {
    params.validate();
    if (p < 0) throw std::invalid_argument("p must be >= 0");
    if (p <= 1) return 0.0;
    double pd = static_cast<double>(p);
    return params.tau * std::pow(pd, params.sigma) * std::log(pd);
}

LogSequence LogSequence::build(const SequenceParams& params, int p_max) {
    params.validate();
    if (p_max < 1) throw std::invalid_argument("p_max must be >= 1");
    LogSequence s;
    s.params = params;
    s.p_max = p_max;
    s.values.resize(static_cast<size_t>(p_max) + 1);
    for (int p = 0; p <= p_max; ++p)
        s.values[static_cast<size_t>(p)] = log_defining_sequence(params, p);
    return s;
}

bool simple_floor_inequality(const SequenceParams& params, std::int64_t N) {
    double Nd = static_cast<double>(N);
    double base = static_cast<double>(guarded_floor(std::pow(Nd, 1.0 / params.sigma)));
    double expo = static_cast<double>(
        guarded_floor(std::pow(Nd / params.tau, 1.0 / params.sigma)));
    double lhs = (base >= 1.0) ? expo * std::log(base) : 0.0;
    double rhs = Nd * std::pow(params.tau, -1.0 / params.sigma) / params.sigma *
                 std::log(Nd);
    return lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs));
}

PropertyReport verify_sequence_properties(const SequenceParams& params, int p_max) {
    params.validate();
    if (p_max < 3) throw std::invalid_argument("p_max must be >= 3");

    LogSequence s = LogSequence::build(params, p_max + 1);
    const auto& v = s.values;
    PropertyReport rep;

    rep.m1_ok = true;
    for (int p = 1; p < p_max; ++p) {
        double lhs = v[p + 1] + v[p - 1];
        double rhs = 2.0 * v[p];
        if (lhs < rhs - 1e-9 * std::max(1.0, std::abs(rhs))) rep.m1_ok = false;
    }

    rep.m2prime_constant = 0.0;
    for (int p = 1; p <= p_max; ++p) {
        double c = (v[p + 1] - v[p]) / std::pow(static_cast<double>(p), params.sigma);
        rep.m2prime_constant = std::max(rep.m2prime_constant, c);
    }

    // Splitting bound: M_{p+q} <= C^(p^sigma + q^sigma) * Mr_p * Mr_q with the
    // rescaled parameter tau * 2^(sigma-1); report the measured best ln C.
    SequenceParams resc{params.tau * std::pow(2.0, params.sigma - 1.0), params.sigma};
    rep.m2_constant = 0.0;
    int half = p_max / 2;
    for (int p = 1; p <= half; ++p) {
        for (int q = 1; q <= half; ++q) {
            double gap = v[p + q] - log_defining_sequence(resc, p) -
                         log_defining_sequence(resc, q);
            double denom = std::pow(static_cast<double>(p), params.sigma) +
                           std::pow(static_cast<double>(q), params.sigma);
            rep.m2_constant = std::max(rep.m2_constant, gap / denom);
        }
    }

    rep.m3prime_partial_sums.resize(static_cast<size_t>(p_max));
    double acc = 0.0;
    for (int p = 1; p <= p_max; ++p) {
        acc += std::exp(v[p - 1] - v[p]);
        rep.m3prime_partial_sums[static_cast<size_t>(p - 1)] = acc;
    }

    rep.simple_inequality_ok = true;
    for (std::int64_t N = 1; N <= p_max; ++N)
        if (!simple_floor_inequality(params, N)) rep.simple_inequality_ok = false;

    return rep;
}

double stirling_compare(const SequenceParams& params, int p) {
    params.validate();
    if (p < 2) throw std::invalid_argument("p must be >= 2");
    if (!(params.sigma > 1.0))
        throw std::invalid_argument("stirling_compare requires sigma > 1");
    double pd = static_cast<double>(p);
    double ps = std::pow(pd, params.sigma);
    double lhs = params.tau / params.sigma *
                 std::lgamma(static_cast<double>(guarded_floor(ps)) + 1.0);
    double rhs = params.tau / (2.0 * params.sigma) * std::log(2.0 * M_PI) +
                 params.tau / 2.0 * std::log(pd) - params.tau / params.sigma * ps +
                 log_defining_sequence(params, p);
    return std::exp(lhs - rhs);
}

double embedding_constant(double tau1, double tau2, double sigma, double h, double k) {
    if (!(tau1 > 0.0 && tau2 > tau1))
        throw std::invalid_argument("need 0 < tau1 < tau2");
    if (!(sigma >= 1.0 && h > 0.0 && k > 0.0))
        throw std::invalid_argument("need sigma >= 1, h > 0, k > 0");
    double dt = tau2 - tau1;
    return std::exp(dt / (M_E * sigma) * std::pow(k / h, sigma / dt));
}

double embedding_sup(double tau1, double tau2, double sigma, double h, double k,
                     int n_max) {
    double best = 0.0;  // n = 0 term is (k/h)^0 * 1 = 1 below via n=1 anyway
    for (int n = 1; n <= n_max; ++n) {
        double ns = std::pow(static_cast<double>(n), sigma);
        double lg = ns * std::log(k / h) +
                    (tau1 - tau2) * ns * std::log(static_cast<double>(n));
        best = std::max(best, std::exp(lg));
    }
    return std::max(best, 1.0);
}

}  // namespace xgev
