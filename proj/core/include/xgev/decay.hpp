#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xgev/grid.hpp"
#include "xgev/sequences.hpp"

namespace xgev {

// The five Fourier-decay condition families. Each bounds ln|uhat_N(xi)| by
//   log_A + coeff(N)*log_h + fact_log(N) - power(N)*ln|xi|.
struct DecayCondition {
    enum class Family {
        FloorPower,      // A h^(N^t) floor(N^t)! / |xi|^floor(N^t)
        GevreyFactorial, // A h^N N!^t / |xi|^N
        RootFactorial,   // A h^N N!^(1/t) / |xi|^floor(N^(1/t))
        TauSigma,        // A h^N N!^(1/sigma) / |xi|^floor((N/tau)^(1/sigma))
        TauSigmaPrime,   // A h^N N!^(tau/sigma) / |xi|^floor(N^(1/sigma))
    };
    Family family;
    double t = 1.0;      // first three families
    double tau = 1.0;    // last two families
    double sigma = 2.0;

    void validate() const;
    double coeff(std::int64_t N) const;      // the h-exponent c(N)
    std::int64_t power(std::int64_t N) const;  // the |xi| power
    double fact_log(std::int64_t N) const;     // ln of the factorial factor

    static DecayCondition floor_power(double t);
    static DecayCondition gevrey(double t);
    static DecayCondition root_factorial(double t);
    static DecayCondition tau_sigma(double tau, double sigma);
    static DecayCondition tau_sigma_prime(double tau, double sigma);
    std::string name() const;
};

double rhs_log_bound(const DecayCondition& cond, std::int64_t N, double xi_norm,
                     double log_A, double log_h);

// Directional samples of ln|uhat_N| on a frequency band, grouped by N.
struct DecaySamples {
    struct Group {
        int N;
        std::vector<double> xi_norm;
        std::vector<double> log_mag;
    };
    std::vector<Group> groups;
    double xi_min = 0.0;
    double xi_max = 0.0;  // usable band edge (defaulted from the data if 0)
    bool enumeration_collision = false;
};

struct DecayFit {
    DecayCondition condition;
    double log_A = 0.0;
    double log_h = 0.0;
    double max_residual = 0.0;
    bool pass = false;
    // Diagnostics of the banded fit policy.
    int informative_count = 0;
    int boundary_hits = 0;
    std::int64_t coverage = 0;  // largest |xi| power among informative N
    bool undecided = false;     // too few informative N to judge
};

// Monotone re-indexing N -> a_N.
struct Enumeration {
    std::function<double(std::int64_t)> map;

    static Enumeration identity();
    static Enumeration power(double t);        // N -> N^t
    static Enumeration root(double t);         // N -> N^(1/t), rounded
    static Enumeration scale(double tau);      // N -> tau*N, rounded
    static Enumeration shift(std::int64_t c);  // N -> N + c
};

// Relabels groups via round-half-up; on collision keeps the entry with the
// larger original N and sets the collision flag.
DecaySamples apply_enumeration(const DecaySamples& samples, const Enumeration& e);

inline constexpr double kDefaultFitTol = 0.5;

// Banded fit of a decay condition. Two-stage: per-N reduction
//   g(N) = max_xi [log_mag + power(N)*ln xi] - fact_log(N)
// over the informative range power(N)*ln(xi_max) >= 2*fact_log(N), then a
// least-squares fit of g against {1, coeff(N), power terms, ln N} with a
// ln(N!) column clamped to nonpositive weight. Fails when the per-N argmax
// sticks to the band edge (decay too slow for the band) or the residual
// drifts beyond tol.
DecayFit fit_condition(const DecaySamples& samples, const DecayCondition& cond,
                       double tol = kDefaultFitTol);

struct ChainReport {
    bool consistent = false;
    std::vector<std::string> violations;
};

// The implication chain between families at matched parameters is a theorem;
// a violation in fit results indicates a policy bug, not new mathematics.
ChainReport check_implication_chain(const std::vector<DecayFit>& fits);

struct Ladder {
    std::vector<double> t_grid;
    std::vector<double> tau_grid;
    std::vector<double> sigma_grid;

    static Ladder standard();
};

struct ClassVerdict {
    enum class Kind { Analytic, Gevrey, Extended, Smooth, Unclassified };
    Kind kind = Kind::Unclassified;
    double t = 0.0;
    double tau = 0.0;
    double sigma = 0.0;
    std::string detail;
    std::map<std::string, bool> fits;  // per-condition verdicts, keyed by name
};

ClassVerdict classify_regularity(const DecaySamples& samples, const Ladder& ladder,
                                 double tol = kDefaultFitTol);

// Polynomial-decay detector used as the smoothness pre-check of the ladder:
// true when log_mag is affine in ln xi (within tol) over [xi_max/100, xi_max].
// Returns the fitted order s when detected.
std::optional<double> detect_polynomial_decay(const DecaySamples& samples,
                                              double tol = kDefaultFitTol);

struct MembershipNorm {
    double norm = 0.0;          // weight |alpha|^(tau*|alpha|^sigma)
    double norm_factorial = 0.0;  // variant weight floor(|alpha|^sigma)!^(tau/sigma)
    int alpha_used = 0;
    bool capped = false;
};

MembershipNorm membership_norm(const SampledField& phi,
                               const std::array<double, 2>& K_lo,
                               const std::array<double, 2>& K_hi,
                               const SequenceParams& params, double h, int alpha_max);

}  // namespace xgev
