#include <catch2/catch_amalgamated.hpp>

#include "spreadnet/generators.hpp"
#include "spreadnet/voterank.hpp"

#include "oracles.hpp"

using namespace spreadnet;

TEST_CASE("reduction kernels") {
    SECTION("original suppresses only direct neighbors") {
        const ReductionKernel k = make_kernel(VoteVariant::original, oracle::cycle_graph(4));
        CHECK(k.horizon == 1);
        CHECK(k.f == 1.0);  // <k> = 1
        CHECK(k.delta(1) == 1.0);
        CHECK(k.delta(2) == 0.0);
    }
    SECTION("lred and xred at <k> = 2") {
        // two nodes, mutual arcs twice over: n=2, m=2... build 4 nodes, 8 arcs
        const DirectedGraph g = random_digraph(4, 8, 3);
        REQUIRE(static_cast<double>(g.arc_count()) / g.node_count() == 2.0);
        const ReductionKernel lred = make_kernel(VoteVariant::lred, g);
        const ReductionKernel xred = make_kernel(VoteVariant::xred, g);
        CHECK(lred.f == 0.5);
        CHECK(lred.horizon == 2);
        CHECK(lred.delta(1) == 0.5);
        CHECK(lred.delta(2) == 0.25);
        CHECK(xred.delta(1) == 0.5);
        CHECK(xred.delta(2) == 0.25);
        CHECK(lred.delta(3) == 0.0);  // beyond horizon
    }
    SECTION("653 nodes and 1416 arcs") {
        const DirectedGraph g = scale_free_digraph(653, 1416, 4);
        const ReductionKernel k = make_kernel(VoteVariant::lred, g);
        CHECK(k.f == Catch::Approx(0.46116).margin(1e-5));
        CHECK(k.horizon == 3);
    }
    SECTION("undirected mode uses the average total degree") {
        const ReductionKernel k =
            make_kernel(VoteVariant::original, oracle::path_graph(4), GraphMode::undirected);
        CHECK(k.avg_degree == 1.5);  // 2 * 3 / 4
    }
    SECTION("horizon override and validation") {
        const DirectedGraph g = oracle::cycle_graph(5);
        CHECK(make_kernel(VoteVariant::xred, g, GraphMode::directed, 7).horizon == 7);
        CHECK_THROWS_AS(make_kernel(VoteVariant::xred, g, GraphMode::directed, 0),
                        std::invalid_argument);
        CHECK_THROWS_AS(make_kernel(VoteVariant::original, DirectedGraph::from_arcs(3, {})),
                        std::invalid_argument);
    }
}

TEST_CASE("voting scores sum out-neighbor voting abilities") {
    SECTION("fresh star") {
        const DirectedGraph g = oracle::star_graph(4);
        const VoteState state = make_vote_state(g);
        CHECK(voting_score(g, state, 0) == 4.0);
        CHECK(voting_score(g, state, 1) == 0.0);
        CHECK(state.score == std::vector<double>{4, 0, 0, 0, 0});
    }
    SECTION("fresh path") {
        const DirectedGraph g = oracle::path_graph(3);
        const VoteState state = make_vote_state(g);
        CHECK(state.score == std::vector<double>{1, 1, 0});
    }
    SECTION("node whose out-neighbors are all elected scores zero") {
        const DirectedGraph g = oracle::cycle_graph(3);
        const ReductionKernel k = make_kernel(VoteVariant::original, g);
        VoteState state = make_vote_state(g);
        CHECK(elect_one(g, state, k) == 0);
        CHECK(elect_one(g, state, k) == 1);
        // node 2 is unelected; its only out-neighbor (node 0) is elected
        REQUIRE_FALSE(state.is_elected[2]);
        CHECK(voting_score(g, state, 2) == 0.0);
        CHECK(state.score[2] == 0.0);
    }
}

TEST_CASE("single elections") {
    SECTION("star center wins and the clamp floors leaf abilities at zero") {
        const DirectedGraph g = oracle::star_graph(4);  // <k> = 4/5, f = 1.25
        const ReductionKernel k = make_kernel(VoteVariant::original, g);
        VoteState state = make_vote_state(g);
        const NodeId winner = elect_one(g, state, k);
        CHECK(winner == 0);
        CHECK(state.va == std::vector<double>{0, 0, 0, 0, 0});
        CHECK(state.score == std::vector<double>{0, 0, 0, 0, 0});
    }
    SECTION("four-node path with the lred kernel, horizon from ceil(3/4)") {
        const DirectedGraph g = oracle::path_graph(4);  // <k> = 3/4
        const ReductionKernel k = make_kernel(VoteVariant::lred, g);
        REQUIRE(k.horizon == 1);
        VoteState state = make_vote_state(g);
        const NodeId winner = elect_one(g, state, k);
        CHECK(winner == 0);  // scores 1,1,1,0 -> tie broken to node 0
        CHECK(state.va[1] == 0.0);  // max(0, 1 - 4/3)
        CHECK(state.va[2] == 1.0);  // beyond the horizon
        CHECK(state.va[3] == 1.0);
    }
    SECTION("single node with a hand-built kernel") {
        const DirectedGraph g = DirectedGraph::from_arcs(1, {});
        ReductionKernel k;
        k.f = 1.0;
        k.horizon = 1;
        VoteState state = make_vote_state(g);
        CHECK(elect_one(g, state, k) == 0);
        CHECK_THROWS_AS(elect_one(g, state, k), std::logic_error);
    }
}

TEST_CASE("election runs") {
    SECTION("star: center first, then the smallest leaf by tie-break") {
        const Election e = run_election(oracle::star_graph(4), VoteVariant::original, 2);
        CHECK(e.spreaders == std::vector<NodeId>{0, 1});
        CHECK(e.round_scores == std::vector<double>{4.0, 0.0});
    }
    SECTION("count = n yields a full permutation") {
        const DirectedGraph g = random_digraph(30, 120, 50);
        const auto all = select_spreaders(g, VoteVariant::lred, 30);
        std::vector<NodeId> sorted = all;
        std::sort(sorted.begin(), sorted.end());
        std::vector<NodeId> expected(30);
        std::iota(expected.begin(), expected.end(), NodeId{0});
        CHECK(sorted == expected);
    }
    SECTION("count out of range") {
        const DirectedGraph g = oracle::cycle_graph(3);
        CHECK_THROWS_AS(run_election(g, VoteVariant::original, 0), std::invalid_argument);
        CHECK_THROWS_AS(run_election(g, VoteVariant::original, 4), std::invalid_argument);
    }
    SECTION("smaller selections are prefixes of larger ones") {
        const DirectedGraph g = random_digraph(60, 300, 8);
        for (VoteVariant variant : {VoteVariant::original, VoteVariant::lred, VoteVariant::xred}) {
            const auto longer = select_spreaders(g, variant, 20);
            const auto shorter = select_spreaders(g, variant, 12);
            CHECK(std::equal(shorter.begin(), shorter.end(), longer.begin()));
        }
    }
}

TEST_CASE("voting ability stays within [0, 1] and never increases") {
    const DirectedGraph g = random_digraph(50, 260, 31);
    const ReductionKernel k = make_kernel(VoteVariant::lred, g);
    VoteState state = make_vote_state(g);
    std::vector<double> previous = state.va;
    for (int round = 0; round < 50; ++round) {
        elect_one(g, state, k);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            CHECK(state.va[v] >= 0.0);
            CHECK(state.va[v] <= previous[v]);
        }
        previous = state.va;
    }
    for (NodeId v : state.elected) {
        CHECK(state.va[v] == 0.0);
        CHECK(state.score[v] == 0.0);
    }
    // every node elected exactly once
    std::vector<NodeId> sorted = state.elected;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("incremental scoring matches the full-rescore reference") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const NodeId n = static_cast<NodeId>(40 + 20 * seed);
        const DirectedGraph g = random_digraph(n, 5 * n, seed);
        const std::size_t count = n / 3;
        for (VoteVariant variant : {VoteVariant::original, VoteVariant::lred, VoteVariant::xred}) {
            CHECK(select_spreaders(g, variant, count) ==
                  oracle::voterank_full_rescore(g, variant, count));
        }
    }
}

TEST_CASE("with horizon 1 every variant degenerates to the original") {
    for (std::uint64_t seed = 100; seed < 104; ++seed) {
        const DirectedGraph g = random_digraph(45, 250, seed);
        const auto original = select_spreaders(g, VoteVariant::original, 45);
        CHECK(select_spreaders(g, VoteVariant::lred, 45, GraphMode::directed, 1) == original);
        CHECK(select_spreaders(g, VoteVariant::xred, 45, GraphMode::directed, 1) == original);
    }
}

TEST_CASE("spreader count from fraction rounds half up with a floor of one") {
    CHECK(spreader_count_from_fraction(653, 0.02) == 13);    // round(13.06)
    CHECK(spreader_count_from_fraction(653, 0.0001) == 1);   // clamped up
    CHECK(spreader_count_from_fraction(653, 0.023) == 15);   // round(15.019)
    CHECK(spreader_count_from_fraction(10, 0.25) == 3);      // round(2.5) half up
    CHECK(spreader_count_from_fraction(653, 1.0) == 653);
    CHECK_THROWS_AS(spreader_count_from_fraction(653, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(spreader_count_from_fraction(653, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(spreader_count_from_fraction(653, 1.01), std::invalid_argument);
}
