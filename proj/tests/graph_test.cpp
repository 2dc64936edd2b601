#include "causal/graph.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "causal/graph_parse.hpp"
#include "causal/projection.hpp"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"

using namespace causal;
using testsupport::load_smg;

TEST(Kin, AncestorsIncludeArgument) {
    Smg g = load_smg("fig2a.g");
    EXPECT_TRUE(set_equal(kin(Kin::Ancestors, {"Y"}, g), {"Y", "Z", "X", "W1", "W2"}));
}

TEST(Kin, RootVertexHasNoProperDescendants) {
    Smg g = load_smg("fig2a.g");
    EXPECT_TRUE(set_equal(kin(Kin::Descendants, {"Y"}, g), {"Y"}));
}

TEST(Kin, ParentsOnPrunedGraph) {
    Smg g = load_smg("fig1b.g");
    EXPECT_TRUE(set_equal(kin(Kin::Parents, {"Z1"}, g), {"Z1", "X", "Z2"}));
}

TEST(Kin, UnknownVertexIsAnError) {
    Smg g = load_smg("chain.g");
    EXPECT_THROW(kin(Kin::Parents, {"Q"}, g), graph_error);
}

TEST(Kin, AncestorDescendantAdjoint) {
    for (const auto& entry : testsupport::corpus()) {
        Smg g = load_smg(entry.file);
        for (const auto& a : g.vertices())
            for (const auto& b : g.vertices()) {
                bool a_anc_of_b = contains(kin(Kin::Ancestors, {b}, g), a);
                bool b_desc_of_a = contains(kin(Kin::Descendants, {a}, g), b);
                EXPECT_EQ(a_anc_of_b, b_desc_of_a);
            }
    }
}

TEST(Co, ReachesThroughAllEdgeKinds) {
    Smg g = mutilate(load_smg("fig2a.g"), {"X"});
    EXPECT_TRUE(set_equal(co({"Y"}, g), {"Y", "Z", "X"}));
}

TEST(Co, IsolatedVertex) {
    Smg g = Smg::Builder().vertex("V").build();
    EXPECT_TRUE(set_equal(co({"V"}, g), {"V"}));
}

TEST(Co, DetachedClusterAfterCutVertexMutilation) {
    Smg g = mutilate(load_smg("fig5a.g"), {"Z"});
    EXPECT_TRUE(set_equal(co({"X", "Z", "Y"}, g), {"X", "Z", "Y"}));
}

TEST(Co, MonotoneAndIdempotent) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 30; ++i) {
        Smg g = testsupport::random_smg(rng);
        VertexSet w{g.vertices().front()};
        VertexSet c = co(w, g);
        EXPECT_TRUE(is_subset(w, c));
        EXPECT_TRUE(set_equal(co(c, g), c));
    }
}

TEST(InducedSubgraph, MatchesRetentionRule) {
    Smg sub = induced_subgraph(load_smg("fig2a.g"), {"X", "Y", "Z"});
    EXPECT_TRUE(graphs_equal(sub, load_smg("fig2b.g")));
}

TEST(InducedSubgraph, FullVertexSetIsIdentity) {
    Smg g = load_smg("fig7a.g");
    EXPECT_TRUE(graphs_equal(induced_subgraph(g, g.vertices()), g));
}

TEST(InducedSubgraph, KeepsOnlyInternalEdges) {
    Smg sub = induced_subgraph(load_smg("fig7a.g"), {"X", "Y", "Z1", "Z2"});
    EXPECT_TRUE(sub.has_directed("X", "Z1"));
    EXPECT_TRUE(sub.has_directed("Z1", "Y"));
    EXPECT_TRUE(sub.has_directed("Z2", "X"));
    EXPECT_TRUE(sub.has_directed("Z2", "Z1"));
    EXPECT_TRUE(sub.has_bidirected("X", "Z2"));
    EXPECT_TRUE(sub.has_bidirected("X", "Y"));
    EXPECT_TRUE(sub.has_bidirected("Z2", "Y"));
    EXPECT_EQ(sub.directed().size(), 4u);
    EXPECT_EQ(sub.bidirected().size(), 3u);
}

TEST(Mutilate, IncomingRemovalCoversBidirected) {
    Smg g = mutilate(load_smg("fig2a.g"), {"X"});
    EXPECT_TRUE(g.has_directed("W1", "W2"));
    EXPECT_TRUE(g.has_bidirected("W1", "W2"));
    EXPECT_TRUE(g.has_directed("X", "Z"));
    EXPECT_TRUE(g.has_directed("Z", "Y"));
    EXPECT_EQ(g.directed().size(), 3u);
    EXPECT_EQ(g.bidirected().size(), 1u);
}

TEST(Mutilate, EmptySetsAreIdentity) {
    Smg g = load_smg("fig6a.g");
    EXPECT_TRUE(graphs_equal(mutilate(g, {}, {}), g));
}

TEST(Mutilate, OutgoingRemovalKeepsBidirected) {
    Smg g = Smg::Builder().edge("X", "Y").arc("X", "Y").build();
    Smg m = mutilate(g, {}, {"X"});
    EXPECT_TRUE(m.directed().empty());
    EXPECT_TRUE(m.has_bidirected("X", "Y"));
}

TEST(Mutilate, NoArrowheadIntoInterventionSet) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 30; ++i) {
        Smg g = testsupport::random_smg(rng);
        VertexSet bar{g.vertices()[rng() % g.size()]};
        Smg m = mutilate(g, bar);
        int b = m.index_of(bar[0]);
        EXPECT_TRUE(m.parents_of(b).empty());
        EXPECT_TRUE(m.bidirected_neighbors_of(b).empty());
    }
}

TEST(RootSet, SinksOnly) {
    EXPECT_TRUE(set_equal(root_set(load_smg("fig2a.g")), {"Y"}));
    Smg chain = Smg::Builder().edge("X", "Y").edge("Y", "Z").build();
    EXPECT_TRUE(set_equal(root_set(chain), {"Z"}));
    Smg edgeless = Smg::Builder().vertex("A").vertex("B").build();
    EXPECT_TRUE(set_equal(root_set(edgeless), {"A", "B"}));
}

TEST(TopologicalOrder, ChainIsUnique) {
    Smg g = load_smg("chain.g");
    EXPECT_EQ(topological_order(g), (std::vector<std::string>{"X", "Z", "Y"}));
}

TEST(TopologicalOrder, IntroGraphOrder) {
    Smg g = load_smg("fig1a.g");
    EXPECT_EQ(topological_order(g),
              (std::vector<std::string>{"W1", "Z2", "Z4", "W2", "Z3", "X", "Z1", "Y"}));
}

TEST(TopologicalOrder, TieBreakByInsertion) {
    Smg g = Smg::Builder().vertex("A").vertex("B").build();
    EXPECT_EQ(topological_order(g), (std::vector<std::string>{"A", "B"}));
}

TEST(TopologicalOrder, PermutationRespectingEdges) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        Smg g = testsupport::random_smg(rng);
        auto order = topological_order(g);
        EXPECT_TRUE(set_equal(order, g.vertices()));
        auto pos = [&](const std::string& v) {
            return std::find(order.begin(), order.end(), v) - order.begin();
        };
        for (const auto& [t, h] : g.directed())
            EXPECT_LT(pos(g.vertices()[t]), pos(g.vertices()[h]));
    }
}

TEST(GraphsEqual, ProjectionVersusSubgraph) {
    Smg fig4a = load_smg("fig4a.g");
    VertexSet keep{"X1", "X2", "Z", "Y"};
    EXPECT_FALSE(graphs_equal(induced_subgraph(fig4a, keep), latent_project_smg(fig4a, keep)));

    Smg fig2a = load_smg("fig2a.g");
    VertexSet keep2{"X", "Y", "Z"};
    EXPECT_TRUE(graphs_equal(induced_subgraph(fig2a, keep2), latent_project_smg(fig2a, keep2)));
}

TEST(GraphsEqual, Reflexive) {
    Smg g = load_smg("fig9a.g");
    EXPECT_TRUE(graphs_equal(g, g));
}

TEST(Builder, RejectsCyclesAndSelfLoops) {
    EXPECT_THROW(Smg::Builder().edge("A", "B").edge("B", "A").build(), graph_error);
    EXPECT_THROW(Smg::Builder().edge("A", "A"), graph_error);
    EXPECT_THROW(Smg::Builder().arc("A", "A"), graph_error);
}

TEST(ParseGraph, EdgeListRoundTrip) {
    auto g = std::get<Smg>(parse_graph_text("X -> Z\nZ -> Y\nX <-> Y\n"));
    EXPECT_TRUE(graphs_equal(g, load_smg("fig2b.g")));
    EXPECT_EQ(g.vertices(), (std::vector<std::string>{"X", "Z", "Y"}));
}

TEST(ParseGraph, CommentsAndLatentLine) {
    auto d = std::get<LatentDag>(parse_graph_text("# chain with hidden cause\nU -> X\nU -> Y\nlatent U\n"));
    EXPECT_TRUE(set_equal(d.observed(), {"X", "Y"}));
}

TEST(ParseGraph, Errors) {
    EXPECT_THROW(parse_graph_text(""), parse_error);
    EXPECT_THROW(parse_graph_text("# only a comment\n"), parse_error);
    EXPECT_THROW(parse_graph_text("A -> B\nB -> A\n"), parse_error);
    EXPECT_THROW(parse_graph_text("A -- B\n"), parse_error);
    EXPECT_THROW(parse_graph_text("1A -> B\n"), parse_error);
}

TEST(ParseGraph, DuplicateEdgeWarnsAndDedups) {
    std::ostringstream warn;
    auto g = std::get<Smg>(parse_graph_text("A -> B\nA -> B\nA <-> B\nB <-> A\n", warn));
    EXPECT_EQ(g.directed().size(), 1u);
    EXPECT_EQ(g.bidirected().size(), 1u);
    EXPECT_NE(warn.str().find("duplicate"), std::string::npos);
}
