#include <cmath>
#include <random>

#include "doctest.h"
#include "graphnls/analytic.hpp"
#include "graphnls/error.hpp"
#include "graphnls/functionals.hpp"
#include "graphnls/minimizer.hpp"
#include "graphnls/profiles.hpp"
#include "oracles.hpp"

using namespace graphnls;

namespace {

const ProblemParams ground{3, 1.0, -1.0, 1.0};

}  // namespace

TEST_CASE("energy gradient") {
    const Grid g(20.0, 1000);
    const auto zero = energy_gradient(GraphFunction(g, 3), ground);
    CHECK(l2_norm(zero) == 0.0);

    std::mt19937_64 rng(41);
    for (double mu : {0.5, 1.0, 2.0}) {
        const ProblemParams p{3, mu, -0.8, 1.0};
        for (int trial = 0; trial < 5; ++trial) {
            const auto psi = oracle::random_smooth(g, 3, rng);
            const auto eta = oracle::random_smooth(g, 3, rng);
            const double eps = 1e-5;
            const double fd = (energy(psi + cplx(eps) * eta, p.alpha, mu) - energy(psi - cplx(eps) * eta, p.alpha, mu)) /
                              (2.0 * eps);
            const double exact = inner(energy_gradient(psi, p), eta).real();
            CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("stationary residual of the sampled N-tail state") {
    // Interior rows are centred differences: O(h^2). The vertex row carries
    // an O(h) term proportional to the sum of third derivatives at 0.
    double prev_interior = 0.0, prev_vertex = 0.0;
    for (int cells : {1500, 3000, 6000}) {
        const Grid g(60.0, cells);  // long enough that the cut-off tail is below rounding
        const auto psi = analytic::stationary_state(ground, 0, 0.25, g);
        auto r = energy_gradient(psi, ground);
        r.axpy(0.25, psi);
        const double vertex = std::abs(r.vertex());
        r.set_vertex(0.0);
        r.clamp_boundary();
        const double interior = l2_norm(r);
        if (prev_interior > 0.0) {
            CHECK(std::log2(prev_interior / interior) == doctest::Approx(2.0).epsilon(0.05));
            CHECK(std::log2(prev_vertex / vertex) == doctest::Approx(1.0).epsilon(0.05));
        }
        prev_interior = interior;
        prev_vertex = vertex;
        const auto res = stationary_residual(psi, ground);
        CHECK(res.omega == doctest::Approx(0.25).epsilon(1e-3));
    }
}

TEST_CASE("flow config validation") {
    FlowConfig c;
    CHECK_NOTHROW(c.validate());
    c.step = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = {};
    c.max_iters = 0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = {};
    c.tol_residual = -1.0;
    CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("the exact stationary state is a fixed point of the flow") {
    const Grid g(30.0, 1500);
    const auto psi = analytic::stationary_state(ground, 0, g);
    // the sampled state is a fixed point only up to O(h^2); start from the
    // discrete one instead
    const auto discrete = minimize(ground, g, {}, psi);
    REQUIRE(discrete.status == FlowStatus::converged);
    const auto again = minimize(ground, g, {}, discrete.state);
    CHECK(again.iterations <= 20);
    CHECK(phase_aligned_l2_distance(again.state, discrete.state) < 1e-6);
    CHECK(again.classification.kind == Classification::Kind::convergent);
}

TEST_CASE("flows from three seed families agree") {
    const Grid g(30.0, 1500);
    const std::vector<GraphFunction> seeds{profiles::vertex_gaussian(g, 3, 1.0), profiles::edge_bump(g, 3, 2, 5.0, 1.5),
                                           profiles::flat(g, 3, 6.0)};
    std::vector<GraphFunction> finals;
    for (const auto& s : seeds) {
        const auto r = minimize(ground, g, {}, s);
        CHECK(r.classification.kind == Classification::Kind::convergent);
        CHECK(r.status == FlowStatus::converged);
        CHECK(std::abs(mass(r.state) - 1.0) <= 1e-10);
        CHECK(r.residual <= 1e-8);
        CHECK(r.omega == doctest::Approx(0.25).epsilon(1e-3));
        for (std::size_t i = 1; i < r.trail.size(); ++i) {
            CHECK(r.trail[i].energy <= r.trail[i - 1].energy + 10.0 * 1e-10 * std::abs(r.trail[i - 1].energy));
        }
        const auto cmp = compare_to_ntail(r, ground, g);
        CHECK(cmp.l2_gap < 1e-4);
        CHECK(std::abs(cmp.energy_gap) < 1e-5);
        finals.push_back(r.state);
    }
    for (std::size_t a = 0; a < finals.size(); ++a) {
        for (std::size_t b = a + 1; b < finals.size(); ++b) {
            CHECK(phase_aligned_l2_distance(finals[a], finals[b]) < 1e-3);
        }
    }
}

TEST_CASE("complex seeds converge to a phase of the same state") {
    const Grid g(30.0, 1500);
    std::mt19937_64 rng(42);
    const auto seed = oracle::random_smooth(g, 3, rng);
    const auto r = minimize(ground, g, {}, seed);
    CHECK(r.classification.kind == Classification::Kind::convergent);
    CHECK(compare_to_ntail(r, ground, g).l2_gap < 1e-4);
}

TEST_CASE("Kirchhoff flow stays above the line-soliton bound") {
    const ProblemParams k{3, 1.0, 0.0, 1.0};
    const Grid g(40.0, 2000);
    FlowConfig c;
    c.max_iters = 3000;
    const auto r = minimize(k, g, c, profiles::edge_bump(g, 3, 1, 10.0, 2.0));
    const double bound = analytic::kirchhoff_lower_bound(k);
    for (const auto& s : r.trail) {
        CHECK(s.energy > bound);
    }
    CHECK(r.trail.back().edge_fraction[0] > 0.99);
    CHECK(r.classification.kind != Classification::Kind::convergent);
    CHECK_THROWS_AS(compare_to_ntail(r, k, g), Error);
}

TEST_CASE("classification of synthetic trails") {
    const Grid g(40.0, 400);
    const ProblemParams p{3, 1.0, 0.0, 1.0};
    FlowSnapshot flat;
    flat.rho = 0.1;
    flat.sup_norm = 1e-6;
    flat.vertex_abs = 1e-6;
    flat.far_fraction = {0.3, 0.3, 0.3};
    flat.edge_fraction = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK(classify({flat, flat}, g, p).kind == Classification::Kind::vanishing);

    FlowSnapshot away = flat;
    away.sup_norm = 0.3;
    away.rho = 0.95;
    away.rho_center = {2, 33.0};
    away.far_fraction = {0.0, 0.97, 0.0};
    const auto c = classify({away, away}, g, p);
    CHECK(c.kind == Classification::Kind::runaway);
    CHECK(c.edge == 2);
    CHECK(c.to_string() == "runaway(2)");

    FlowSnapshot centred = flat;
    centred.sup_norm = 0.6;
    centred.vertex_abs = 0.5;
    centred.rho = 0.995;
    centred.rho_center = {1, 0.0};
    centred.step_distance = 1e-9;
    CHECK(classify({centred, centred}, g, p).kind == Classification::Kind::convergent);
    centred.step_distance = 1e-3;  // still moving
    CHECK(classify({centred, centred}, g, p).kind == Classification::Kind::undetermined);
    CHECK(classify({centred}, g, p).kind == Classification::Kind::undetermined);
}

TEST_CASE("comparison with the N-tail state") {
    const Grid g(40.0, 4000);
    FlowResult fake{analytic::stationary_state(ground, 0, g), 0.0, 0, {Classification::Kind::convergent, 0}};
    fake.state *= std::exp(cplx(0.0, 0.7));
    CHECK(compare_to_ntail(fake, ground, g).l2_gap < 1e-12);

    const ProblemParams q{5, 1.0, -2.0, 20.0};
    const Grid fine(20.0, 16000);
    FlowResult one{analytic::stationary_state(q, 1, fine), 0.0, 0, {Classification::Kind::convergent, 0}};
    const auto cmp = compare_to_ntail(one, q, fine);
    CHECK(cmp.l2_gap > 0.1);
    const double gap = analytic::stationary_energy(q, 1) - analytic::stationary_energy(q, 0);
    CHECK(cmp.energy_gap == doctest::Approx(gap).epsilon(1e-3));

    fake.classification = {};
    try {
        compare_to_ntail(fake, ground, g);
        FAIL("expected not-comparable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::not_comparable);
    }
}
