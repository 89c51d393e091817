#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "isoprofile/reconstruction.hpp"

using namespace isoprofile;
using doctest::Approx;

namespace {

MedialAxisGraph graph_of(const Region& r, double rl_frac, double smax_frac)
{
    auto ma = std::make_shared<const MedialAxis>(compute_medial_axis(r));
    double inr = max_inscribed(*ma).radius;
    return discretize(ma, {0.5 / inr, rl_frac * inr, smax_frac * inr});
}

LinearizationParams lin_for(const Region& r) { return {0.005 * std::sqrt(area(r))}; }

std::vector<oracle::Ball> sample_balls(const MedialAxisGraph& g, const Subgraph& sub, double spacing)
{
    std::vector<oracle::Ball> balls;
    for (std::size_t n : sub.nodes) balls.push_back({g.nodes[n].position, g.nodes[n].radius});
    for (std::size_t ei : sub.edges) {
        const GraphEdge& e = g.edges[ei];
        const MASegment& s = g.axis->segments[e.segment];
        double len = s.arc_length(e.q_a, e.q_b);
        int k = std::max(2, static_cast<int>(std::ceil(len / spacing)) * 4);
        for (int i = 0; i <= k; ++i) {
            double q = e.q_a + (e.q_b - e.q_a) * i / k;
            balls.push_back({s.point_at(q), s.radius_at(q)});
        }
    }
    return balls;
}

Subgraph random_connected(const MedialAxisGraph& g, std::size_t steps, std::mt19937& rng)
{
    auto adj = g.adjacency();
    std::vector<std::size_t> nodes{g.inx_node};
    std::vector<std::size_t> edges;
    std::vector<bool> in(g.nodes.size(), false);
    in[g.inx_node] = true;
    for (std::size_t k = 0; k < steps; ++k) {
        std::vector<std::size_t> frontier;
        for (std::size_t n : nodes) {
            for (std::size_t e : adj[n]) {
                std::size_t other = g.edges[e].a == n ? g.edges[e].b : g.edges[e].a;
                if (!in[other]) frontier.push_back(e);
            }
        }
        if (frontier.empty()) break;
        std::size_t e = frontier[std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng)];
        std::size_t other = in[g.edges[e].a] ? g.edges[e].b : g.edges[e].a;
        in[other] = true;
        nodes.push_back(other);
        edges.push_back(e);
    }
    return make_subgraph(g, nodes, edges);
}

}  // namespace

TEST_CASE("stadium from a constant-radius edge")
{
    Region rect = fixtures::rectangle4x2();
    MedialAxisGraph g = graph_of(rect, 0.5, 0.5);
    LinearizationParams lin{0.002};
    bool found = false;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const GraphEdge& e = g.edges[i];
        const MASegment& s = g.axis->segments[e.segment];
        if (std::abs(s.r0 - s.r1) > 1e-5 || s.r0 < 0.9) continue;
        found = true;
        double len = s.arc_length(e.q_a, e.q_b);
        Region st = reconstruct_edge(rect, g, i, lin);
        CHECK(area(st) == Approx(2.0 * len + std::numbers::pi).epsilon(1e-4));
        CHECK(perimeter(st) == Approx(2.0 * len + 2.0 * std::numbers::pi).epsilon(1e-4));
    }
    CHECK(found);
}

TEST_CASE("zero-length piece is a single ball")
{
    MedialAxis ma = compute_medial_axis(fixtures::square2());
    LinearizationParams lin{0.002};
    for (std::size_t si = 0; si < ma.segments.size(); ++si) {
        const MASegment& s = ma.segments[si];
        double q = s.radius_at(s.q0) > s.radius_at(s.q1) ? s.q0 : s.q1;
        Region ball = reconstruct_piece(ma, si, q, q, lin);
        CHECK(area(ball) == Approx(std::numbers::pi).epsilon(1e-4));
    }
}

TEST_CASE("parabolic edge matches the dense ball union")
{
    Region l = fixtures::l_shape();
    MedialAxis ma = compute_medial_axis(l);
    LinearizationParams lin{0.001};
    int checked = 0;
    for (std::size_t si = 0; si < ma.segments.size(); ++si) {
        const MASegment& s = ma.segments[si];
        if (s.kind != SegmentKind::EdgeVert) continue;
        Region piece = reconstruct_piece(ma, si, s.q0, s.q1, lin);
        std::vector<oracle::Ball> balls;
        for (int i = 0; i < 10000; ++i) {
            double tau = i / 9999.0;
            balls.push_back({s.at(tau), s.radius(tau)});
        }
        oracle::Grid grid = oracle::grid_over(bounding_box(l), 0.002, 0.1);
        oracle::Mask ballmask = oracle::fill_balls(grid, balls);
        double union_area = oracle::mask_area(grid, ballmask);
        CHECK(area(piece) == Approx(union_area).epsilon(5e-3));
        CHECK(oracle::xor_area(grid, ballmask, oracle::fill_region(grid, piece)) <= 5e-3 * union_area);
        ++checked;
    }
    CHECK(checked >= 2);
}

TEST_CASE("single node and radius subgraphs on the square")
{
    Region sq = fixtures::square2();
    LinearizationParams lin{0.002};
    MedialAxisGraph g = graph_of(sq, 0.25, 0.02);
    Subgraph inx = make_subgraph(g, {g.inx_node}, {});
    CHECK(inx.connected);
    CHECK(area(limited_reconstruction(sq, g, inx, lin)) == Approx(std::numbers::pi).epsilon(1e-4));

    Region r = limited_reconstruction(sq, g, full_subgraph(g), lin);
    Region o = open(sq, 0.25, lin);
    CHECK(symmetric_difference_area(r, o) <= 1e-3 * area(sq));
    CHECK(area(r) == Approx(oracle::rounded_rect_area(2, 2, 0.25)).epsilon(1e-3));

    CHECK(limited_reconstruction(sq, g, Subgraph{}, lin).empty());
}

TEST_CASE("radius-rho reconstruction matches the opening")
{
    struct Case {
        Region r;
        double rho;
    };
    for (const Case& c : {Case{fixtures::square2(), 0.25}, Case{fixtures::dumbbell(), 0.3},
                          Case{fixtures::l_shape(), 0.2}, Case{fixtures::star(), 0.3}}) {
        MedialAxisGraph g = graph_of(c.r, 0.05, 0.02);
        CHECK(verify_prop_marecon(c.r, g, c.rho, lin_for(c.r)) <= 1e-3);
    }
    MedialAxisGraph g = graph_of(fixtures::dumbbell(), 0.05, 0.02);
    Region rec = radius_reconstruction(g, 0.3, lin_for(fixtures::dumbbell()));
    CHECK(connected_components(rec).size() == 2);
    CHECK_FALSE(radius_subgraph(g, 0.3).connected);
    CHECK_THROWS_AS(verify_prop_marecon(fixtures::dumbbell(), g, 0.01, lin_for(fixtures::dumbbell())), ParameterError);
}

TEST_CASE("full graph recovers the domain")
{
    for (const Region& r : {fixtures::square2(), fixtures::l_shape(), fixtures::star(), fixtures::dumbbell()}) {
        auto ma = std::make_shared<const MedialAxis>(compute_medial_axis(r));
        double inr = max_inscribed(*ma).radius;
        MedialAxisGraph g = discretize(ma, {0.5 / inr, 0.0, 0.02 * inr});
        Region rec = limited_reconstruction(r, g, full_subgraph(g), lin_for(r));
        CHECK(symmetric_difference_area(rec, r) <= 1e-3 * area(r));
    }
}

TEST_CASE("containment chain")
{
    Region r = fixtures::two_neck();
    LinearizationParams lin = lin_for(r);
    MedialAxisGraph g = graph_of(r, 0.05, 0.02);
    Region prev;
    for (double rho : {0.9, 0.5, 0.3, 0.1}) {
        Region cur = limited_reconstruction(r, g, radius_subgraph(g, rho), lin);
        CHECK(area(subtract(prev, cur)) <= 1e-9 * area(r));
        CHECK(area(subtract(cur, r)) <= 1e-6 * area(r));
        prev = cur;
    }
}

TEST_CASE("monotone in the subgraph")
{
    Region r = fixtures::star();
    MedialAxisGraph g = graph_of(r, 0.05, 0.02);
    std::mt19937 rng(11);
    Subgraph small = random_connected(g, 20, rng);
    std::vector<std::size_t> more_nodes = small.nodes;
    std::vector<std::size_t> more_edges = small.edges;
    Subgraph extra = random_connected(g, 60, rng);
    more_nodes.insert(more_nodes.end(), extra.nodes.begin(), extra.nodes.end());
    more_edges.insert(more_edges.end(), extra.edges.begin(), extra.edges.end());
    Subgraph big = make_subgraph(g, more_nodes, more_edges);
    LinearizationParams lin = lin_for(r);
    Region a = limited_reconstruction(r, g, small, lin);
    Region b = limited_reconstruction(r, g, big, lin);
    CHECK(area(subtract(a, b)) <= 1e-9 * area(r));
}

TEST_CASE("ball-union oracle on random subgraphs")
{
    std::mt19937 rng(5);
    for (const Region& r : {fixtures::l_shape(), fixtures::dumbbell(), fixtures::star()}) {
        MedialAxisGraph g = graph_of(r, 0.05, 0.02);
        LinearizationParams lin = lin_for(r);
        for (std::size_t steps : {5u, 40u, 200u}) {
            Subgraph sub = random_connected(g, steps, rng);
            Region rec = limited_reconstruction(r, g, sub, lin);
            double spacing = 0.02 * g.inr / 4.0;
            oracle::Grid grid = oracle::grid_over(bounding_box(r), std::sqrt(area(r)) / 600.0, 0.05);
            oracle::Mask balls = oracle::fill_balls(grid, sample_balls(g, sub, spacing));
            double ref = oracle::mask_area(grid, balls);
            CHECK(oracle::xor_area(grid, balls, oracle::fill_region(grid, rec)) <= 0.01 * ref);
        }
    }
}

TEST_CASE("free boundary consists of arcs centred on the subgraph")
{
    Region r = fixtures::l_shape();
    LinearizationParams lin{0.01};
    MedialAxisGraph g = graph_of(r, 0.05, 0.02);
    std::mt19937 rng(2);
    Subgraph sub = random_connected(g, 80, rng);
    Region rec = limited_reconstruction(r, g, sub, lin);
    std::vector<oracle::Ball> balls = sample_balls(g, sub, 0.005);
    int free_vertices = 0;
    for (const Polygon& poly : rec.polygons) {
        for (const Point& v : poly.outer) {
            if (oracle::boundary_distance(r, v) <= 1e-7) continue;
            ++free_vertices;
            double best = INFINITY;
            for (const oracle::Ball& b : balls) best = std::min(best, std::abs(distance(v, b.center) - b.radius));
            CHECK(best <= lin.d_x);
        }
    }
    CHECK(free_vertices > 0);
}
