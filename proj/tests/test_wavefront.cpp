#include <doctest.h>

#include <cmath>

#include "xgev/synth.hpp"
#include "xgev/wavefront.hpp"

using namespace xgev;

namespace {

SampledField step_field(int n = 16384) {
    SignalProfile p;
    p.kind = SignalProfile::Kind::Step;
    p.position = 0.0;
    return synthesize(p, GridSpec::line(n, -4.0, 4.0)).field;
}

SampledField gaussian_field(int n = 16384) {
    SignalProfile p;
    p.kind = SignalProfile::Kind::Gaussian;
    p.width = 0.1;  // wide spectrum: keeps the decay fit above the noise floor
    return synthesize(p, GridSpec::line(n, -4.0, 4.0)).field;
}

WavefrontQuery basic_query(std::vector<std::array<double, 2>> pts,
                           double tau = 1.0, double sigma = 2.0) {
    WavefrontQuery q;
    q.points = std::move(pts);
    q.directions = {{1.0, 0.0}};
    q.params = {tau, sigma};
    q.r = 0.25;
    q.N_max = 40;
    return q;
}

}  // namespace

TEST_CASE("rescale exponent") {
    CHECK(admissible_rescale({1.0, 2.0}).tau == doctest::Approx(1.0));
    CHECK(admissible_rescale({2.0, 2.0}).tau == doctest::Approx(4.0));
    CHECK(admissible_rescale({4.0, 3.0}).tau ==
          doctest::Approx(std::pow(4.0, 1.5)));
    CHECK_THROWS_AS(admissible_rescale({1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("step singularity is located") {
    SampledField u = step_field();
    WavefrontQuery q = basic_query({{0.0, 0.0}, {1.0, 0.0}, {-1.5, 0.0}});
    WavefrontEstimate est = estimate_wavefront(u, q);
    CHECK(est.in_wf[0][0]);   // jump at 0
    CHECK(!est.in_wf[1][0]);  // flat region
    CHECK(!est.in_wf[2][0]);
    auto ss = singular_support(est);
    REQUIRE(ss.size() == 1);
    CHECK(ss[0][0] == doctest::Approx(0.0));
}

TEST_CASE("gaussian has empty wave front") {
    SampledField u = gaussian_field();
    WavefrontQuery q = basic_query({{0.0, 0.0}, {0.5, 0.0}});
    WavefrontEstimate est = estimate_wavefront(u, q);
    CHECK(est.empty());
}

TEST_CASE("gevrey endcap estimator agrees on smooth points") {
    // Narrow pulse: its spectrum spans the whole band, so the endcap fit sees
    // genuine decay rather than a noise-floor plateau.
    SignalProfile p;
    p.kind = SignalProfile::Kind::Gaussian;
    p.width = 0.05;
    SampledField u = synthesize(p, GridSpec::line(8192, -4.0, 4.0)).field;
    WavefrontQuery q = basic_query({{0.0, 0.0}});
    WavefrontEstimate est = estimate_wavefront_gevrey(u, q, 2.0);
    CHECK(!est.in_wf[0][0]);
}

TEST_CASE("query preconditions") {
    SampledField u = step_field(4096);
    WavefrontQuery q = basic_query({{4.9, 0.0}});  // within 2r of the boundary
    CHECK_THROWS_AS(estimate_wavefront(u, q), std::domain_error);
    WavefrontQuery q2 = basic_query({{0.0, 0.0}});
    q2.params.sigma = 1.0;  // rescale undefined
    CHECK_THROWS_AS(estimate_wavefront(u, q2), std::invalid_argument);
}

TEST_CASE("inclusion chain for D acting on a step") {
    SampledField u = step_field();
    ConstCoeffOperator P = ConstCoeffOperator::from_terms(1, {{{1, 0}, 1.0}});
    WavefrontQuery q = basic_query({{0.0, 0.0}, {1.0, 0.0}});
    InclusionReport rep = check_inclusion_theorem(u, P, q);
    CAPTURE(rep.violations);
    CHECK(rep.first_ok);
    CHECK(rep.second_ok);
    CHECK(rep.derivative_ok);
    CHECK(rep.chain_ok);
}

TEST_CASE("lattice monotonicity and chain") {
    SampledField u = step_field(8192);
    WavefrontQuery q = basic_query({{0.0, 0.0}, {1.0, 0.0}});
    WFLattice lat =
        lattice_wavefronts(u, {0.5, 1.0, 2.0}, {2.0, 3.0}, q, {1.5, 2.0});
    CHECK(lat.chain_ok);
    CHECK(lat.lemma_sigma_ok);
    // The four corner sets are nested: WF_{0,1} <= WF_{inf,1} <= WF_{0,inf}
    // <= WF_{inf,inf}.
    for (std::size_t p = 0; p < lat.wf_01.size(); ++p)
        for (std::size_t d = 0; d < lat.wf_01[p].size(); ++d) {
            if (lat.wf_01[p][d]) CHECK(lat.wf_inf1[p][d]);
            if (lat.wf_inf1[p][d]) CHECK(lat.wf_0inf[p][d]);
            if (lat.wf_0inf[p][d]) CHECK(lat.wf_infinf[p][d]);
        }
}
