#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "isoprofile/medial_axis.hpp"

using namespace isoprofile;
using doctest::Approx;

namespace {

std::shared_ptr<const MedialAxis> axis_of(const Region& r)
{
    return std::make_shared<const MedialAxis>(compute_medial_axis(r));
}

double eps_ma(const Region& r) { return 1e-6 * bounding_box(r).diagonal(); }

std::vector<Region> all_fixtures()
{
    return {fixtures::square2(), fixtures::rectangle4x2(), fixtures::l_shape(), fixtures::dumbbell(),
            fixtures::dumbbell_unequal(), fixtures::hourglass(), fixtures::two_neck(), fixtures::star(),
            fixtures::disk64(), fixtures::wedge(), fixtures::triangle()};
}

bool is_tree(const MedialAxisGraph& g)
{
    if (g.edges.size() + 1 != g.nodes.size()) return false;
    std::vector<std::size_t> parent(g.nodes.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const GraphEdge& e : g.edges) {
        std::size_t a = find(e.a);
        std::size_t b = find(e.b);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

}  // namespace

TEST_CASE("square: two diagonals meeting at the centre")
{
    MedialAxis ma = compute_medial_axis(fixtures::square2());
    InscribedCircle inb = max_inscribed(ma);
    CHECK(inb.radius == Approx(1.0));
    CHECK(inb.center.x == Approx(0.0).epsilon(1e-9));
    CHECK(inb.center.y == Approx(0.0).epsilon(1e-9));
    double total = 0.0;
    for (const MASegment& s : ma.segments) {
        CHECK(s.kind == SegmentKind::EdgeEdge);
        total += s.length();
    }
    CHECK(total == Approx(4.0 * std::sqrt(2.0)));
}

TEST_CASE("rectangle: central segment at radius one plus four bisectors")
{
    Region rect = fixtures::rectangle4x2();
    MedialAxis ma = compute_medial_axis(rect);
    CHECK(ma.perturbed);
    int central = 0;
    int corner = 0;
    for (const MASegment& s : ma.segments) {
        bool flat = std::abs(s.r0 - s.r1) < 1e-5;
        if (flat && s.r0 > 0.99) {
            ++central;
            CHECK(s.length() == Approx(2.0).epsilon(1e-5));
        } else {
            ++corner;
            CHECK(std::min(s.r0, s.r1) < 1e-5);
        }
        for (int k = 0; k <= 10; ++k) {
            double tau = k / 10.0;
            CHECK(s.radius(tau) == Approx(oracle::boundary_distance(rect, s.at(tau))).epsilon(1e-5));
        }
    }
    CHECK(central == 1);
    CHECK(corner == 4);
    InscribedCircle inb = max_inscribed(ma);
    CHECK(inb.radius == Approx(1.0).epsilon(1e-5));
    CHECK(std::abs(inb.center.y) < 1e-5);
    CHECK(std::abs(inb.center.x) <= 1.0 + 1e-5);
}

TEST_CASE("regular 64-gon collapses to the centre")
{
    MedialAxis ma = compute_medial_axis(fixtures::disk64());
    InscribedCircle inb = max_inscribed(ma);
    CHECK(inb.radius == Approx(std::cos(std::numbers::pi / 64)).epsilon(1e-7));
    CHECK(norm(inb.center) < 1e-6);
}

TEST_CASE("L-shape has parabolic segments around the reflex vertex")
{
    MedialAxis ma = compute_medial_axis(fixtures::l_shape());
    bool parabola = std::any_of(ma.segments.begin(), ma.segments.end(),
                                [](const MASegment& s) { return s.kind == SegmentKind::EdgeVert; });
    CHECK(parabola);
}

TEST_CASE("dumbbell: inscribed circle in a square")
{
    // The inscribed radius is 1 on a short plateau reaching toward the corridor
    // mouth, ending where the corner distance sqrt((2-x)^2 + 0.04) drops below 1.
    double plateau_end = 2.0 - std::sqrt(0.96);
    InscribedCircle a = max_inscribed(compute_medial_axis(fixtures::dumbbell()));
    CHECK(a.radius == Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(a.center.y - 1.0) < 1e-5);
    double from_left = a.center.x;
    double from_right = 5.0 - a.center.x;
    double off = std::min(from_left, from_right);
    CHECK(off >= 1.0 - 1e-5);
    CHECK(off <= plateau_end + 1e-5);

    InscribedCircle b = max_inscribed(compute_medial_axis(fixtures::dumbbell_unequal()));
    CHECK(b.radius == Approx(1.0));
    CHECK(b.center.x >= 1.0 - 1e-5);
    CHECK(b.center.x <= plateau_end + 1e-5);
    CHECK(b.center.y == Approx(1.0));
}

TEST_CASE("segment radii match boundary distance at random samples")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const Region& r : all_fixtures()) {
        MedialAxis ma = compute_medial_axis(r);
        Region boundary = make_region(ma.boundary);
        std::uniform_int_distribution<std::size_t> pick(0, ma.segments.size() - 1);
        for (int k = 0; k < 100; ++k) {
            const MASegment& s = ma.segments[pick(rng)];
            double tau = u(rng);
            CHECK(std::abs(s.radius(tau) - oracle::boundary_distance(boundary, s.at(tau))) <= eps_ma(r));
        }
        for (const MANode& n : ma.nodes) {
            CHECK(std::abs(n.radius - oracle::boundary_distance(boundary, n.position)) <= eps_ma(r));
        }
    }
}

TEST_CASE("footpoints lie at the radius on the governors")
{
    for (const Region& r : {fixtures::l_shape(), fixtures::star(), fixtures::hourglass()}) {
        MedialAxis ma = compute_medial_axis(r);
        for (const MASegment& s : ma.segments) {
            double q = s.natural(0.37);
            for (std::size_t g = 0; g < 2; ++g) {
                Point f = s.footpoint(q, g, ma.boundary);
                CHECK(distance(f, s.point_at(q)) == Approx(s.radius_at(q)).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("parabola arc length against numeric quadrature")
{
    MASegment s;
    s.kind = SegmentKind::EdgeVert;
    s.shape = 0.3;
    s.q0 = -0.4;
    s.q1 = 0.9;
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        Point a = s.at(static_cast<double>(i) / n);
        Point b = s.at(static_cast<double>(i + 1) / n);
        sum += distance(a, b);
    }
    CHECK(s.length() == Approx(sum).epsilon(1e-8));
}

TEST_CASE("structural errors")
{
    CHECK_THROWS_AS(compute_medial_axis(make_region({{0, 0}, {1, 1}, {1, 0}, {0, 1}})), StructuralError);
    Region holed = make_region({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{{1, 1}, {1, 2}, {2, 2}, {2, 1}}});
    CHECK_THROWS_AS(compute_medial_axis(holed), StructuralError);
    Region two = fixtures::unit_square();
    two.polygons.push_back(translate(fixtures::unit_square(), {3, 0}).polygons[0]);
    CHECK_THROWS_AS(compute_medial_axis(two), StructuralError);
}

TEST_CASE("collinear vertices are merged")
{
    MedialAxis ma = compute_medial_axis(make_region({{-1, -1}, {0, -1}, {1, -1}, {1, 1}, {-1, 1}}));
    CHECK(ma.boundary.size() == 4);
    CHECK(max_inscribed(ma).radius == Approx(1.0));
}

TEST_CASE("discretize: constant radius segment is split by arc length only")
{
    auto ma = axis_of(fixtures::rectangle4x2());
    MedialAxisGraph g = discretize(ma, {0.1, 0.5, 0.05});
    for (const GraphEdge& e : g.edges) {
        const MASegment& s = ma->segments[e.segment];
        if (std::abs(s.r0 - s.r1) < 1e-5) {
            CHECK(s.arc_length(e.q_a, e.q_b) <= 0.05 + 1e-12);
            CHECK(s.arc_length(e.q_a, e.q_b) > 0.04);
        }
    }
}

TEST_CASE("discretize: square diagonal inverse-radius spacing")
{
    auto ma = axis_of(fixtures::square2());
    MedialAxisGraph g = discretize(ma, {0.5, 0.1, 10.0});
    for (const GraphEdge& e : g.edges) {
        double ra = g.nodes[e.a].radius;
        double rb = g.nodes[e.b].radius;
        CHECK(std::abs(1.0 / ra - 1.0 / rb) <= 0.5 + 1e-12);
    }
    double rmin = 1e9;
    for (const GraphNode& n : g.nodes) rmin = std::min(rmin, n.radius);
    CHECK(rmin == Approx(0.1));
    // 1/r runs from 10 to 1 on each of four half-diagonals: 18 steps each.
    CHECK(g.edges.size() == 4 * 18);
}

TEST_CASE("discretize: r_l at inr gives the single node inx")
{
    auto ma = axis_of(fixtures::square2());
    MedialAxisGraph g = discretize(ma, {0.5, max_inscribed(*ma).radius, 0.02});
    CHECK(g.nodes.size() == 1);
    CHECK(g.edges.empty());
    CHECK(g.inr == Approx(1.0));
    CHECK_THROWS_AS(discretize(ma, {0.5, 1.5, 0.02}), ParameterError);
    CHECK_THROWS_AS(discretize(ma, {0.0, 0.1, 0.02}), ParameterError);
}

TEST_CASE("graph invariants on all fixtures")
{
    for (const Region& r : all_fixtures()) {
        auto ma = axis_of(r);
        double inr = max_inscribed(*ma).radius;
        DiscretizationParams p{0.5 / inr, 0.02 * inr, 0.02 * inr};
        MedialAxisGraph g = discretize(ma, p);
        Region boundary = make_region(ma->boundary);

        CHECK(is_tree(g));
        std::size_t at_max = 0;
        for (const GraphNode& n : g.nodes) {
            CHECK(n.radius >= p.r_l * (1 - 1e-12));
            CHECK(std::abs(n.radius - oracle::boundary_distance(boundary, n.position)) <= eps_ma(r));
            if (n.radius == g.inr) ++at_max;
        }
        CHECK(at_max == 1);
        for (const GraphEdge& e : g.edges) {
            CHECK(std::abs(1.0 / g.nodes[e.a].radius - 1.0 / g.nodes[e.b].radius) <= p.d_c * (1 + 1e-9));
            CHECK(ma->segments[e.segment].arc_length(e.q_a, e.q_b) <= p.s_max * (1 + 1e-9));
        }

        std::set<std::size_t> prev;
        for (double rho : {0.9, 0.6, 0.3, 0.1}) {
            std::set<std::size_t> cur;
            for (std::size_t i = 0; i < g.nodes.size(); ++i) {
                if (g.nodes[i].radius >= rho * inr) cur.insert(i);
            }
            CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            prev = cur;
        }
    }
}

TEST_CASE("random graph nodes have correct radii")
{
    auto ma = axis_of(fixtures::star());
    MedialAxisGraph g = discretize(ma, {0.5, 0.01, 0.005});
    Region boundary = make_region(ma->boundary);
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::size_t> pick(0, g.nodes.size() - 1);
    for (int k = 0; k < 1000; ++k) {
        const GraphNode& n = g.nodes[pick(rng)];
        CHECK(std::abs(n.radius - oracle::boundary_distance(boundary, n.position)) <= 1e-9);
    }
}

TEST_CASE("medial axis csv export")
{
    MedialAxis ma = compute_medial_axis(fixtures::l_shape());
    std::ostringstream out;
    write_medial_axis_csv(ma, out);
    std::string text = out.str();
    CHECK(text.rfind("segment,kind,x0,y0,r0,x1,y1,r1,length,governor0,governor1\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(ma.segments.size() + 1));
    CHECK(text.find("edge_vert") != std::string::npos);
}
