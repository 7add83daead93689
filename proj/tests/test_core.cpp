#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qfluid/core.hpp"
#include "qfluid/force.hpp"

using namespace qfluid;

TEST_CASE("grid positions") {
    const auto g = make_grid(0.0, 1.0, 160);
    CHECK(g.size() == 160);
    CHECK(g.position(159) == 159.0);
    CHECK(make_grid(0.0, 0.5, 160).position(10) == 5.0);
    CHECK(g.positions().size() == 160);
    CHECK(g.positions()[42] == g.position(42));
}

TEST_CASE("grid rejects bad spacing and too few points") {
    CHECK_THROWS_AS(make_grid(0.0, -1.0, 10), InvalidArgument);
    CHECK_THROWS_AS(make_grid(0.0, 0.0, 10), InvalidArgument);
    CHECK_THROWS_AS(make_grid(0.0, std::nan(""), 10), InvalidArgument);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 6), InvalidArgument);
    CHECK_NOTHROW(make_grid(0.0, 1.0, 7));
}

TEST_CASE("centred grid is symmetric") {
    const auto g = make_centered_grid(0.5, 11);
    CHECK(g.position(0) == -2.5);
    CHECK(g.position(5) == 0.0);
    CHECK(g.position(10) == 2.5);
}

TEST_CASE("physical parameter validation") {
    PhysicalParams p;
    CHECK_NOTHROW(p.validate());
    p.a = 0.0;
    p.kp = 0.0;
    CHECK_NOTHROW(p.validate());
    for (auto bad : {&PhysicalParams::D, &PhysicalParams::omega, &PhysicalParams::M}) {
        PhysicalParams q;
        q.*bad = 0.0;
        CHECK_THROWS_AS(q.validate(), InvalidArgument);
    }
    PhysicalParams q;
    q.kp = -1.0;
    CHECK_THROWS_AS(q.validate(), InvalidArgument);
    q = {};
    q.a = -1.0;
    CHECK_THROWS_AS(q.validate(), InvalidArgument);
    CHECK(PhysicalParams{}.equilibrium_sigma2() == doctest::Approx(16.0));
}

TEST_CASE("run config validation and enum parsing") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.steps = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = {};
    c.dt = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = {};
    c.rho_floor = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);

    for (auto e : {Estimator::gaussian_fit, Estimator::finite_difference, Estimator::oracle_exact,
                   Estimator::none}) {
        CHECK(parse_estimator(to_string(e)) == e);
    }
    for (auto m : {NoiseMode::none, NoiseMode::initial, NoiseMode::per_step}) {
        CHECK(parse_noise_mode(to_string(m)) == m);
    }
    for (auto s : {TimeSplit::kick_drift_kick, TimeSplit::forward}) {
        CHECK(parse_time_split(to_string(s)) == s);
    }
    CHECK_THROWS_AS(parse_estimator("spline"), InvalidArgument);
    CHECK_THROWS_AS(parse_noise_mode("always"), InvalidArgument);
}

TEST_CASE("coherent state at t0 = 0") {
    const PhysicalParams p;
    const auto g = make_centered_grid(1.0, 161);  // x = a lies on a grid point
    const auto s = init_coherent_state(p, g);
    std::size_t jmax = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (s.ln_rho[j] > s.ln_rho[jmax]) jmax = j;
    }
    CHECK(g.position(jmax) == doctest::Approx(p.a));
    CHECK(std::exp(s.ln_rho[jmax]) ==
          doctest::Approx(std::sqrt(p.omega / (2.0 * std::numbers::pi * p.D))).epsilon(1e-14));
    for (double v : s.V) CHECK(v == 0.0);
    CHECK(s.t == 0.0);
}

TEST_CASE("coherent state is log-quadratic with uniform velocity at any time") {
    const PhysicalParams p;
    const auto g = make_centered_grid(1.0, 160);
    for (double t0 : {0.0, 0.3, 1.7, 4.0}) {
        const auto s = init_coherent_state(p, g, t0);
        const double c = s.ln_rho[2] - 2.0 * s.ln_rho[1] + s.ln_rho[0];
        CHECK(c == doctest::Approx(-p.omega / p.D).epsilon(1e-10));
        for (std::size_t j = 1; j + 1 < g.size(); ++j) {
            const double cj = s.ln_rho[j + 1] - 2.0 * s.ln_rho[j] + s.ln_rho[j - 1];
            CHECK(std::abs(cj - c) < 1e-11);
        }
        for (double v : s.V) CHECK(v == s.V.front());
        CHECK(s.V.front() == doctest::Approx(-p.a * p.omega * std::sin(p.omega * t0)));
        CHECK(s.all_finite());
    }
}

TEST_CASE("mass") {
    const auto g = make_grid(0.0, 1.0, 100);
    FluidState u;
    u.ln_rho.assign(100, 0.0);
    u.V.assign(100, 0.0);
    CHECK(mass(u, g) == doctest::Approx(100.0));

    // Integral of the unit-normalized Gaussian: the riemann sum converges
    // spectrally, so a fine grid must reproduce M to 1e-6.
    PhysicalParams p;
    p.M = 1.0;
    const auto fine = make_centered_grid(0.25, 640);
    const auto s = init_coherent_state(p, fine);
    CHECK(std::abs(mass(s, fine) - 1.0) < 1e-6);

    auto doubled = s;
    for (double& l : doubled.ln_rho) l += std::log(2.0);
    CHECK(mass(doubled, fine) == doctest::Approx(2.0 * mass(s, fine)).epsilon(1e-14));

    p.M = 3.5;
    CHECK(std::abs(mass(init_coherent_state(p, fine), fine) - 3.5) < 1e-6 * 3.5);
}

TEST_CASE("mass is invariant under translation of the packet") {
    const auto g = make_centered_grid(1.0, 160);
    PhysicalParams p;
    const double m0 = mass(init_coherent_state(p, g), g);
    for (double a : {0.0, 3.3, 8.0, 20.25}) {
        p.a = a;
        const double m = mass(init_coherent_state(p, g), g);
        CHECK(std::abs(m / m0 - 1.0) < 1e-8);
    }
}

TEST_CASE("initial variance matches D / omega") {
    const PhysicalParams p;
    for (double dx : {1.0, 0.5}) {
        const auto g = make_centered_grid(dx, static_cast<std::size_t>(160 / dx));
        const Moments m = moments(init_coherent_state(p, g), g);
        CHECK(m.mean == doctest::Approx(p.a).epsilon(1e-9));
        CHECK(m.var == doctest::Approx(p.D / p.omega).epsilon(1e-6));
    }
}

TEST_CASE("density floor") {
    FluidState s;
    s.ln_rho = {-50.0, -1.0, 0.0};
    s.V = {0, 0, 0};
    apply_density_floor(s, -10.0);
    CHECK(s.ln_rho[0] == -10.0);
    CHECK(s.ln_rho[1] == -1.0);
}

TEST_CASE("default and refined scenarios") {
    const auto s = default_scenario();
    CHECK(s.grid.size() == 160);
    CHECK(s.grid.dx() == 1.0);
    CHECK(s.config.steps == 64);
    CHECK(s.config.dt * 64.0 == doctest::Approx(s.params.period()));
    CHECK(s.params.equilibrium_sigma2() == doctest::Approx(16.0));
    CHECK(s.params.a * s.params.omega * s.config.dt < s.grid.dx());
    CHECK(packet_fits(s.params, s.grid));

    const auto r = refined_scenario(2);
    CHECK(r.grid.dx() == 0.5);
    CHECK(r.grid.size() == 320);
    CHECK(r.config.dt == doctest::Approx(s.config.dt / 2.0));
    // same [-80, 80] domain, cell-centred
    CHECK(r.grid.position(0) == doctest::Approx(s.grid.position(0) - 0.25));
    CHECK_THROWS_AS(refined_scenario(0), InvalidArgument);

    PhysicalParams wide;
    wide.a = 70.0;
    CHECK_FALSE(packet_fits(wide, s.grid));
}
