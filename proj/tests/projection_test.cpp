#include "causal/projection.hpp"

#include <gtest/gtest.h>

#include <random>

#include "causal/separation.hpp"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"

using namespace causal;
using testsupport::load_latent_dag;
using testsupport::load_smg;

TEST(LatentProjectDag, IntroGraphExpandsToItsSmg) {
    LatentDag d = load_latent_dag("fig1a_dag.g");
    Smg projected = latent_project_dag(d, d.observed());
    EXPECT_TRUE(graphs_equal(projected, load_smg("fig1a.g")));
}

TEST(LatentProjectDag, NoLatentsIsIdentity) {
    LatentDag d;
    d.dag = Smg::Builder().edge("A", "B").edge("B", "C").build();
    d.latent.assign(3, 0);
    Smg p = latent_project_dag(d, d.observed());
    EXPECT_TRUE(graphs_equal(p, d.dag));
    EXPECT_TRUE(p.bidirected().empty());
}

TEST(LatentProjectDag, CanonicalConfounder) {
    LatentDag d;
    d.dag = Smg::Builder().edge("U", "X").edge("U", "Y").build();
    d.latent = {1, 0, 0};
    Smg p = latent_project_dag(d, {"X", "Y"});
    EXPECT_TRUE(p.directed().empty());
    EXPECT_TRUE(p.has_bidirected("X", "Y"));
}

TEST(LatentProjectDag, TargetMustBeObservedSet) {
    LatentDag d = load_latent_dag("fig1a_dag.g");
    EXPECT_THROW(latent_project_dag(d, {"X", "Y"}), graph_error);
}

TEST(LatentProjectSmg, AddsConfoundingArcThroughDroppedFork) {
    Smg p = latent_project_smg(load_smg("fig4a.g"), {"X1", "X2", "Z", "Y"});
    EXPECT_TRUE(graphs_equal(p, load_smg("fig4c.g")));
}

TEST(LatentProjectSmg, DroppedMediatorCreatesDirectedEdge) {
    Smg p = latent_project_smg(load_smg("fig7a.g"), {"X", "Y", "Z1", "Z2"});
    EXPECT_TRUE(graphs_equal(p, load_smg("fig7b.g")));
}

TEST(LatentProjectSmg, ProjectingOntoEverythingIsIdentity) {
    Smg g = load_smg("fig9a.g");
    EXPECT_TRUE(graphs_equal(latent_project_smg(g, g.vertices()), g));
}

TEST(LatentProjectSmg, NeverInventsVertices) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 40; ++i) {
        Smg g = testsupport::random_smg(rng);
        VertexSet keep;
        for (const auto& v : g.vertices())
            if (rng() & 1) keep.push_back(v);
        if (keep.empty()) keep.push_back(g.vertices().front());
        Smg p = latent_project_smg(g, keep);
        EXPECT_TRUE(set_equal(p.vertices(), keep));
    }
}

TEST(LatentProjectSmg, ProjectionIsStable) {
    std::mt19937_64 rng(18);
    for (int i = 0; i < 40; ++i) {
        Smg g = testsupport::random_smg(rng);
        VertexSet keep;
        for (const auto& v : g.vertices())
            if (rng() % 3) keep.push_back(v);
        if (keep.empty()) keep.push_back(g.vertices().front());
        Smg once = latent_project_smg(g, keep);
        Smg twice = latent_project_smg(once, keep);
        EXPECT_TRUE(graphs_equal(once, twice));
    }
}

// A projection keeps the conditional independence structure among retained
// vertices: d-separation verdicts among observed vertices agree between the
// full DAG and its latent projection.
TEST(LatentProjectDag, PreservesDSeparation) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 25; ++i) {
        LatentDag d = testsupport::random_latent_dag(rng);
        Smg full = d.dag;  // latents as ordinary vertices
        Smg proj = latent_project_dag(d, d.observed());
        VertexSet obs = d.observed();
        for (std::size_t a = 0; a < obs.size(); ++a)
            for (std::size_t b = a + 1; b < obs.size(); ++b) {
                VertexSet rest;
                for (std::size_t c = 0; c < obs.size(); ++c)
                    if (c != a && c != b) rest.push_back(obs[c]);
                for (std::size_t mask = 0; mask < (1u << rest.size()); ++mask) {
                    VertexSet z;
                    for (std::size_t c = 0; c < rest.size(); ++c)
                        if (mask & (1u << c)) z.push_back(rest[c]);
                    EXPECT_EQ(d_separated(full, {obs[a]}, {obs[b]}, z),
                              d_separated(proj, {obs[a]}, {obs[b]}, z));
                }
            }
    }
}
