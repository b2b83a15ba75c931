#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "xgev/grid.hpp"
#include "xgev/sequences.hpp"

namespace xgev {

// P(D) = sum_alpha a_alpha D^alpha with D = -i d/dx, so that
// D^alpha exp(-i x.xi) = (-xi)^alpha exp(-i x.xi).
struct ConstCoeffOperator {
    int dim = 1;
    std::map<MultiIndex, cplx> coeffs;

    int order() const;
    cplx symbol(const std::array<double, 2>& xi, bool principal_only = false) const;
    void validate() const;

    static ConstCoeffOperator from_terms(
        int dim, const std::vector<std::pair<MultiIndex, cplx>>& terms);
};

struct ConeSpec {
    std::array<double, 2> direction = {1.0, 0.0};  // unit vector
    double half_angle = 0.39269908169872414;       // pi/8
    double xi_min = 1.0;

    bool contains(const std::array<double, 2>& xi) const;
    void validate(int dim) const;
};

// Unit directions theta with |P_m(theta)| <= tol on a sphere grid (the two
// points {-1,+1} in 1-D). Empty means numerically elliptic.
std::vector<std::array<double, 2>> characteristic_set(const ConstCoeffOperator& P,
                                                      int sphere_resolution,
                                                      double tol);

// (min, max) of |P_m| over cone-intersected unit directions; min 0 -> error.
std::pair<double, double> cone_ellipticity_constants(const ConstCoeffOperator& P,
                                                     const ConeSpec& cone,
                                                     int resolution);

// The correction operators R_j, j = 1..m, collecting the non-principal part
// of exp(ix.xi) P^T(D) (exp(-ix.xi) w / P_m(xi)) = w - R(xi) w by xi-degree:
// each term contributes c * (-xi)^gamma / P_m(xi) * D^beta with
// |gamma| - m = -j independent of beta.
struct RFamily {
    struct Term {
        cplx c;
        MultiIndex gamma;
        MultiIndex beta;
    };
    int m = 0;
    int dim = 1;
    std::vector<std::vector<Term>> terms;  // terms[j-1] for R_j

    // Scalar multiplier of the D^beta part of one term at a given xi.
    cplx term_scalar(const Term& t, const std::array<double, 2>& xi,
                     const ConstCoeffOperator& P) const;
};

RFamily build_R_operators(const ConstCoeffOperator& P);

// Apply R_j at fixed xi to a field (spectral derivatives).
SampledField apply_R(const RFamily& R, int j, const ConstCoeffOperator& P,
                     const std::array<double, 2>& xi, const SampledField& w);

struct ParametrixConfig {
    SequenceParams params{1.0, 2.0};
    int N = 1;

    double tilde_tau() const;  // tau^(sigma/(sigma-1))
    // floor((N/tilde_tau)^(1/sigma)) - m; negative -> config error.
    int S_max(int m) const;
};

// w_N(., xi): sum over a = (a_1..a_m), S(a) <= S_max, of
// multinomial(|a|; a) R_1^{a_1} ... R_m^{a_m} chi.
SampledField parametrix_partial_sum(const ConstCoeffOperator& P,
                                    const SampledField& chi,
                                    const std::array<double, 2>& xi,
                                    const ParametrixConfig& cfg);

// Same sum built by the truncated Neumann iteration w <- chi + R(xi) w,
// tracking homogeneity degrees; must agree with the direct sum to 1e-8.
SampledField parametrix_neumann(const ConstCoeffOperator& P, const SampledField& chi,
                                const std::array<double, 2>& xi,
                                const ParametrixConfig& cfg);

// Error term e_N with (I - R) w_N = chi - e_N expanded exactly: the
// coefficient of R^a chi for S_max < S(a) <= S_max + m is the sum of
// multinomial(a - e_k) over k with a_k >= 1 and S(a - e_k) <= S_max.
SampledField error_term(const ConstCoeffOperator& P, const SampledField& chi,
                        const std::array<double, 2>& xi, const ParametrixConfig& cfg);

std::size_t error_term_count(const ConstCoeffOperator& P, const ParametrixConfig& cfg);

// sup |P^T(D)(e^{-ix.xi} w_N / P_m) + (e_N - chi) e^{-ix.xi}| / sup|chi|,
// evaluated via the exact conjugation P^T(D)(e^{-ix.xi} v) =
// e^{-ix.xi} P^T(D - xi) v so xi need not sit on the dual lattice.
double verify_fundamental_identity(const ConstCoeffOperator& P,
                                   const SampledField& chi,
                                   const std::array<double, 2>& xi,
                                   const ParametrixConfig& cfg);

struct MultinomialReport {
    std::vector<std::size_t> counts_per_S;  // index S = a_1 + 2 a_2 + ... + m a_m
    bool pascal_ok = false;
    bool bound_ok = false;  // multinomial(|a|; a) <= 2^S(a)
};

MultinomialReport multinomial_count(int m, int S_max);

// Truncated action sum_{|alpha| <= trunc} a_alpha d^alpha phi of an operator
// with coefficient decay |a_alpha| <= A L^(|alpha|^sigma) /
// |alpha|^(tau 2^(sigma-1) |alpha|^sigma).
SampledField apply_ultradiff_operator(
    const std::map<MultiIndex, cplx>& coeff_family, const SampledField& phi,
    int trunc, const SequenceParams& params, double A, double L);

}  // namespace xgev
