#include <doctest.h>

#include <atomic>
#include <sstream>
#include <stdexcept>

#include "fixtures.hpp"
#include "msgate/experiments.hpp"
#include "msgate/units.hpp"

using namespace msgate;

TEST_SUITE("experiments") {

TEST_CASE("csv writer") {
    Table t;
    t.meta = {{"config_hash", "abc"}};
    t.columns = {"name", "x", "n", "missing"};
    t.rows = {{std::string("a"), 1.0 / 3.0, 7L, std::monostate{}}};
    const std::string csv = to_csv(t);
    CHECK(csv == "# config_hash: abc\nname,x,n,missing\na,0.333333333333,7,\n");
    CHECK(t.number(0, "x") == doctest::Approx(1.0 / 3.0));
    CHECK(t.text(0, "name") == "a");
    CHECK(std::isnan(t.number(0, "missing")));
    CHECK_THROWS(t.column_index("nope"));
}

TEST_CASE("parallel_for covers every index once and rethrows") {
    for (int workers : {1, 3}) {
        std::vector<std::atomic<int>> hits(100);
        parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits) CHECK(h == 1);
        CHECK_THROWS_AS(parallel_for(10, workers, [](std::size_t i) {
                            if (i == 4) throw std::runtime_error("boom");
                        }),
                        std::runtime_error);
    }
}

TEST_CASE("detuning sweep flags resonances") {
    DetuningSweepOptions o;
    o.delta0_min_hz = -10e3;
    o.delta0_max_hz = 10e3;
    o.steps = 5;
    o.workers = 2;
    const Table t = sweep_detuning(test::three_ion_config(), o);
    REQUIRE(t.rows.size() == 15);
    CHECK(t.columns == std::vector<std::string>{"pulse", "delta0_khz", "domega_khz", "eps_d", "eps_r", "eps_s",
                                                "fidelity", "flag"});
    int flagged = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.text(i, "flag") == "resonance") {
            ++flagged;
            CHECK(t.number(i, "delta0_khz") == 0.0);
        } else {
            CHECK(std::isfinite(t.number(i, "eps_s")));
            CHECK(t.number(i, "eps_s") == doctest::Approx(t.number(i, "eps_d") + t.number(i, "eps_r")));
        }
    }
    CHECK(flagged == 3);
    CHECK(t.text(0, "pulse") == "balanced_gaussian");
    CHECK(t.text(14, "pulse") == "square");
}

TEST_CASE("sweep output is identical for any worker count") {
    DetuningSweepOptions o;
    o.steps = 7;
    o.workers = 1;
    const std::string a = to_csv(sweep_detuning(test::three_ion_config(), o));
    o.workers = 4;
    CHECK(to_csv(sweep_detuning(test::three_ion_config(), o)) == a);
}

TEST_CASE("contour marks widths without a balance point") {
    ContourOptions o;
    o.z_min_s = 5e-6;
    o.z_max_s = 25e-6;
    o.z_steps = 3;
    o.domega_steps = 3;
    o.workers = 2;
    const Table t = contour(test::three_ion_config(), o);
    REQUIRE(t.rows.size() == 9);
    CHECK(t.text(0, "flag") == "no_balance");
    CHECK(t.text(8, "flag").empty());
    CHECK(t.number(7, "eps_s") < 1e-3);
    CHECK(t.number(7, "delta0_khz") == doctest::Approx(37.2).epsilon(0.03));
}

TEST_CASE("chain study over small chains") {
    ChainStudyOptions o;
    o.center_spacings_m = {3e-6};
    o.n_min = 2;
    o.n_max = 4;
    o.curve_step_hz = 5e3;
    o.with_sensitivity = false;
    const ChainStudy s = chain_study(SystemConfig{}, o);
    REQUIRE(s.summary.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(s.summary.text(i, "status") == "ok");
    CHECK(s.curves.rows.size() == 15);
    CHECK(s.summary.number(0, "split10_khz") > s.summary.number(2, "split10_khz"));
    CHECK_THROWS(chain_study(SystemConfig{}, ChainStudyOptions{{3e-6}, 1, 4}));
}

TEST_CASE("parity experiment") {
    const GateDesign d = design_gate(test::three_ion_config());
    const ParityResult r = parity_experiment(d, 64);
    CHECK(r.scan.rows.size() == 64);
    CHECK(r.fit.amplitude >= 1.0 - 1e-6);
    CHECK(r.estimate == doctest::Approx(r.exact).epsilon(1e-6));
    const ParityResult off = parity_experiment(d, 64, khz(10));
    CHECK(std::abs(off.estimate - off.exact) < 0.01);
}

}
