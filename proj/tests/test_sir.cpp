#include <catch2/catch_amalgamated.hpp>

#include "spreadnet/generators.hpp"
#include "spreadnet/rng.hpp"
#include "spreadnet/sir.hpp"

#include "oracles.hpp"

using namespace spreadnet;

TEST_CASE("no transmission: mu = 0 recovers exactly the seeds in one turn") {
    const DirectedGraph g = random_digraph(40, 200, 17);
    SirParams params;
    params.mu = 0.0;
    params.beta = 1.0;
    params.seed = 5;
    const SirOutcome out = run_sir(g, {3, 8, 20}, params);
    CHECK(out.turns == 1);
    CHECK(out.final_spread == 3.0 / 40.0);
    CHECK_FALSE(out.truncated);

    const SirSummary summary = run_many(g, {3, 8, 20}, params, 200);
    CHECK(summary.mean_final_spread == Catch::Approx(3.0 / 40.0).margin(1e-15));
    CHECK(summary.stddev_final_spread < 1e-15);
}

TEST_CASE("deterministic front: mu = 1, beta = 1 on a path") {
    const DirectedGraph g = oracle::path_graph(4);
    SirParams params;
    params.mu = 1.0;
    params.beta = 1.0;
    const SirOutcome out = run_sir(g, {0}, params);
    CHECK(out.turns == 4);
    CHECK(out.final_spread == 1.0);
    CHECK(out.trajectory == std::vector<double>{0.25, 0.5, 0.75, 1.0});
}

TEST_CASE("single-arc analytic mean") {
    // seed infects its one neighbor with probability mu before recovering,
    // so E[final fraction] = (1 + mu) / 2
    const DirectedGraph g = oracle::path_graph(2);
    SirParams params;
    params.mu = 0.3;
    params.beta = 1.0;
    params.seed = 424242;
    const std::uint64_t runs = 20000;
    const SirSummary summary = run_many(g, {0}, params, runs);
    const double sigma = 0.5 * std::sqrt(0.3 * 0.7 / static_cast<double>(runs));
    CHECK(std::abs(summary.mean_final_spread - 0.65) < 3.0 * sigma);
}

TEST_CASE("fixed seeds reproduce trajectories bit for bit") {
    const DirectedGraph g = scale_free_digraph(100, 300, 6);
    SirParams params;
    params.mu = 0.4;
    params.beta = 0.3;
    params.seed = 777;
    const SirOutcome a = run_sir(g, {0, 5}, params);
    const SirOutcome b = run_sir(g, {0, 5}, params);
    CHECK(a.trajectory == b.trajectory);
    CHECK(a.turns == b.turns);
}

TEST_CASE("run_many aggregates independent per-run streams") {
    const DirectedGraph g = scale_free_digraph(80, 240, 9);
    SirParams params;
    params.mu = 0.35;
    params.beta = 0.4;
    params.seed = 1234;

    SECTION("a single run summarizes to itself") {
        SirParams run0 = params;
        run0.seed = seed_combine(params.seed, 0);
        const SirOutcome single = run_sir(g, {1, 2}, run0);
        const SirSummary summary = run_many(g, {1, 2}, params, 1);
        CHECK(summary.mean_final_spread == single.final_spread);
        CHECK(summary.stddev_final_spread == 0.0);
        CHECK(summary.mean_trajectory == single.trajectory);
    }
    SECTION("the mean equals the run-order average of isolated reruns") {
        const std::uint64_t runs = 5;
        double sum = 0.0;
        for (std::uint64_t i = 0; i < runs; ++i) {
            SirParams run_params = params;
            run_params.seed = seed_combine(params.seed, i);
            sum += run_sir(g, {1, 2}, run_params).final_spread;
        }
        const SirSummary summary = run_many(g, {1, 2}, params, runs);
        CHECK(summary.mean_final_spread == sum / static_cast<double>(runs));
    }
    SECTION("mean trajectory pads shorter runs with their final value") {
        const std::uint64_t runs = 7;
        const SirSummary summary = run_many(g, {1, 2}, params, runs);
        std::size_t longest = 0;
        std::vector<SirOutcome> outcomes;
        for (std::uint64_t i = 0; i < runs; ++i) {
            SirParams run_params = params;
            run_params.seed = seed_combine(params.seed, i);
            outcomes.push_back(run_sir(g, {1, 2}, run_params));
            longest = std::max(longest, outcomes.back().trajectory.size());
        }
        REQUIRE(summary.mean_trajectory.size() == longest);
        for (std::size_t t = 0; t < longest; ++t) {
            double expected = 0.0;
            for (const SirOutcome& out : outcomes)
                expected += t < out.trajectory.size() ? out.trajectory[t] : out.final_spread;
            expected /= static_cast<double>(runs);
            CHECK(summary.mean_trajectory[t] == Catch::Approx(expected).margin(1e-15));
        }
    }
}

TEST_CASE("hitting the turn cap flags the outcome as truncated") {
    const DirectedGraph g = oracle::path_graph(3);
    SirParams params;
    params.mu = 1.0;
    params.beta = 1.0;
    params.max_turns = 1;
    const SirOutcome out = run_sir(g, {0}, params);
    CHECK(out.turns == 1);
    CHECK(out.truncated);  // node 1 is still infected
    CHECK(out.final_spread == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("parameter and spreader validation") {
    const DirectedGraph g = oracle::path_graph(3);
    SirParams params;
    params.mu = 0.5;
    params.beta = 0.5;
    CHECK_THROWS_AS(run_sir(g, {}, params), std::invalid_argument);
    CHECK_THROWS_AS(run_sir(g, {7}, params), std::out_of_range);
    SirParams bad = params;
    bad.mu = 1.5;
    CHECK_THROWS_AS(run_sir(g, {0}, bad), std::invalid_argument);
    bad = params;
    bad.beta = 0.0;
    CHECK_THROWS_AS(run_sir(g, {0}, bad), std::invalid_argument);
    CHECK_THROWS_AS(run_many(g, {0}, params, 0), std::invalid_argument);
}

TEST_CASE("monte carlo agrees with exhaustive enumeration on tiny graphs") {
    struct Setting {
        DirectedGraph g;
        std::vector<NodeId> spreaders;
        double mu, beta;
        std::uint64_t max_turns;
    };
    const std::vector<Setting> settings = {
        {oracle::path_graph(2), {0}, 0.3, 1.0, 5},
        {oracle::path_graph(3), {0}, 0.5, 1.0, 5},
        {oracle::star_graph(3), {0}, 0.2, 1.0, 3},
    };
    std::uint64_t seed = 90210;
    for (const Setting& s : settings) {
        const double exact =
            oracle::sir_exact_expected_final(s.g, s.spreaders, s.mu, s.beta, s.max_turns);
        SirParams params;
        params.mu = s.mu;
        params.beta = s.beta;
        params.max_turns = s.max_turns;
        params.seed = seed++;
        const std::uint64_t runs = 30000;
        const SirSummary summary = run_many(s.g, s.spreaders, params, runs, false);
        const double sigma = summary.stddev_final_spread / std::sqrt(static_cast<double>(runs));
        CHECK(std::abs(summary.mean_final_spread - exact) < 3.0 * sigma + 1e-9);
    }
}

TEST_CASE("hand-checkable enumeration values") {
    // single arc with beta = 1: E = (1 + mu) / 2
    CHECK(oracle::sir_exact_expected_final(oracle::path_graph(2), {0}, 0.3, 1.0, 5) ==
          Catch::Approx(0.65));
    // star with beta = 1: E = (1 + leaves * mu) / n
    CHECK(oracle::sir_exact_expected_final(oracle::star_graph(3), {0}, 0.2, 1.0, 3) ==
          Catch::Approx(0.4));
}

TEST_CASE("turn census conserves the population and moves one way") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const NodeId n = 5 + static_cast<NodeId>(rng.next_below(25));
        const std::uint64_t max_arcs = static_cast<std::uint64_t>(n) * (n - 1);
        const DirectedGraph g = random_digraph(n, 1 + rng.next_below(max_arcs / 2), rng.next());
        SirParams params;
        params.mu = rng.next_double();
        params.beta = 0.2 + 0.8 * rng.next_double();
        params.seed = rng.next();
        const std::vector<NodeId> spreaders = {static_cast<NodeId>(rng.next_below(n))};

        SirTurnLog log;
        const SirOutcome out = run_sir(g, spreaders, params, &log);
        REQUIRE(log.recovered.size() == out.turns);
        for (std::size_t t = 0; t < out.turns; ++t) {
            CHECK(log.susceptible[t] + log.infected[t] + log.recovered[t] == n);
            CHECK(out.trajectory[t] ==
                  static_cast<double>(log.recovered[t]) / static_cast<double>(n));
            if (t > 0) {
                CHECK(log.recovered[t] >= log.recovered[t - 1]);
                CHECK(log.susceptible[t] <= log.susceptible[t - 1]);
            }
        }
        if (!out.truncated) {
            CHECK(log.infected.back() == 0);
            CHECK(out.final_spread >= 1.0 / static_cast<double>(n));
        }
    }
}

TEST_CASE("undirected spreading via the symmetrized graph") {
    const DirectedGraph g = oracle::path_graph(3).symmetrized();
    SirParams params;
    params.mu = 1.0;
    params.beta = 1.0;
    const SirOutcome out = run_sir(g, {1}, params);  // middle node reaches both ends
    CHECK(out.turns == 2);
    CHECK(out.final_spread == 1.0);
}
