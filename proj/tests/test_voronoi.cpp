#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "proxivor/voronoi.hpp"

using namespace proxivor;
using namespace proxivor::geom;
using namespace proxivor::vor;

namespace {

Point2 pt(long long x, long long y) { return {rat(x), rat(y)}; }

Box box(long long x0, long long y0, long long x1, long long y1) {
    return {rat(x0), rat(y0), rat(x1), rat(y1)};
}

SiteSet square4() {
    return {{pt(0, 0), pt(4, 0), pt(0, 4), pt(4, 4)}, box(-1, -1, 5, 5)};
}

SiteSet collinear3() {
    return {{pt(0, 0), pt(2, 0), pt(4, 0)}, box(-1, -1, 5, 1)};
}

// Ten sites whose central region is a triangle: three edge neighbors, three
// regions meeting it at exactly one vertex each (four cocircular sites per
// vertex), and three regions disjoint from it.
//   center p = (0,0); triangle vertices (0,5), (4,-3), (-4,-3).
struct PocketLayout {
    SiteSet sites;
    int p = 0;
    std::vector<int> edge_neighbors{1, 2, 3};
    std::vector<int> vertex_neighbors{4, 5, 6};
    std::vector<int> far_regions{7, 8, 9};
};

PocketLayout pocket_layout() {
    PocketLayout l;
    l.sites.sites = {
        pt(0, 0),                           // p
        pt(4, 2),   pt(-4, 2),  pt(0, -6),  // reflections through the edges
        pt(0, 10),  pt(8, -6),  pt(-8, -6), // cocircular at the vertices
        pt(0, 16),  pt(12, -9), pt(-12, -9) // far
    };
    l.sites.box = box(-45, -35, 45, 30);
    return l;
}

SiteSet random_sites(std::mt19937_64& rng, int count) {
    Box b = box(-1000, -1000, 1000, 1000);
    std::uniform_int_distribution<int> num(-960, 960);
    std::uniform_int_distribution<int> den(1, 8);
    SiteSet s;
    s.box = b;
    while (static_cast<int>(s.sites.size()) < count) {
        Point2 p{rat(num(rng), den(rng)), rat(num(rng), den(rng))};
        bool dup = false;
        for (const Point2& q : s.sites) dup = dup || q == p;
        if (!dup) s.sites.push_back(p);
    }
    return s;
}

}  // namespace

TEST_CASE("site set validation") {
    CHECK_THROWS_AS(SiteSet({}, box(0, 0, 1, 1)).validate(), Error);
    CHECK_THROWS_AS(SiteSet({pt(0, 0), pt(0, 0)}, box(-1, -1, 1, 1)).validate(), Error);
    CHECK_THROWS_AS(SiteSet({pt(1, 0)}, box(-1, -1, 1, 1)).validate(), Error);
    CHECK_THROWS_AS(SiteSet({pt(5, 5)}, box(-1, -1, 1, 1)).validate(), Error);
    CHECK_NOTHROW(SiteSet({pt(0, 0)}, box(-1, -1, 1, 1)).validate());
}

TEST_CASE("region of a two-site set is the clipped half plane") {
    SiteSet s{{pt(0, 0), pt(2, 0)}, box(-1, -1, 3, 1)};
    ConvexRegion r = voronoi_region(0, s);
    CHECK(regions_equal(r, box_region(box(-1, -1, 1, 1))));
    int bis = 0;
    for (const EdgeTag& t : r.edge_tags) {
        if (t.kind == EdgeTag::Kind::Bisector) {
            ++bis;
            CHECK(t.site_a == 0);
            CHECK(t.site_b == 1);
        }
    }
    CHECK(bis == 1);
}

TEST_CASE("inactive bisector leaves the corner region square") {
    SiteSet s{{pt(0, 0), pt(4, 0), pt(0, 4), pt(4, 4)}, box(-1, -1, 5, 5)};
    ConvexRegion r = voronoi_region(0, s);
    CHECK(regions_equal(r, box_region(box(-1, -1, 2, 2))));
}

TEST_CASE("middle of three collinear sites owns a strip") {
    SiteSet s{{pt(0, 0), pt(2, 0), pt(4, 0)}, box(-1, -1, 5, 1)};
    ConvexRegion r = voronoi_region(1, s);
    CHECK(regions_equal(r, box_region(box(1, -1, 3, 1))));
}

TEST_CASE("single-site diagram covers the box") {
    VoronoiDiagram d = build_diagram({{pt(0, 0)}, box(-1, -1, 1, 1)});
    CHECK(d.regions.size() == 1);
    CHECK(regions_equal(d.regions[0], box_region(box(-1, -1, 1, 1))));
    CHECK(d.vertex_containment_ok);
}

TEST_CASE("four corner sites tessellate into congruent squares") {
    VoronoiDiagram d = build_diagram(square4());
    REQUIRE(d.regions.size() == 4);
    CHECK(regions_equal(d.regions[0], box_region(box(-1, -1, 2, 2))));
    CHECK(regions_equal(d.regions[1], box_region(box(2, -1, 5, 2))));
    CHECK(regions_equal(d.regions[2], box_region(box(-1, 2, 2, 5))));
    CHECK(regions_equal(d.regions[3], box_region(box(2, 2, 5, 5))));
    CHECK(d.vertex_containment_ok);

    Rational total = 0;
    for (const ConvexRegion& r : d.regions) total += r.area();
    CHECK(total == d.site_set.box.area());
}

TEST_CASE("square diagram classification: adjacency and the cocircular vertex") {
    VoronoiDiagram d = build_diagram(square4());
    CHECK(classify_pair(d, 0, 1) == ProximityClass::StronglyNear);
    CHECK(classify_pair(d, 0, 2) == ProximityClass::StronglyNear);
    CHECK(classify_pair(d, 1, 3) == ProximityClass::StronglyNear);
    CHECK(classify_pair(d, 2, 3) == ProximityClass::StronglyNear);
    CHECK(classify_pair(d, 0, 3) == ProximityClass::NearOnly);
    CHECK(classify_pair(d, 1, 2) == ProximityClass::NearOnly);

    ConvexRegion shared = intersect_convex(d.regions[0], d.regions[3]);
    REQUIRE(shared.kind == RegionKind::Point);
    CHECK(shared.vertices[0] == pt(2, 2));
}

TEST_CASE("outer collinear regions are far apart") {
    VoronoiDiagram d = build_diagram(collinear3());
    CHECK(classify_pair(d, 0, 2) == ProximityClass::Far);
    CHECK(classify_pair(d, 0, 1) == ProximityClass::StronglyNear);
    CHECK(classify_pair(d, 1, 2) == ProximityClass::StronglyNear);
}

TEST_CASE("pocket layout reproduces the edge/vertex/far split") {
    PocketLayout l = pocket_layout();
    VoronoiDiagram d = build_diagram(l.sites);
    REQUIRE(d.vertex_containment_ok);

    // Central region is the triangle (0,5), (4,-3), (-4,-3).
    ConvexRegion triangle = d.regions[0];
    REQUIRE(triangle.kind == RegionKind::Polygon);
    std::vector<Point2> expect{pt(-4, -3), pt(4, -3), pt(0, 5)};
    CHECK(triangle.vertices == expect);

    for (int e : l.edge_neighbors)
        CHECK(classify_pair(d, l.p, e) == ProximityClass::StronglyNear);
    for (int v : l.vertex_neighbors)
        CHECK(classify_pair(d, l.p, v) == ProximityClass::NearOnly);
    for (int f : l.far_regions)
        CHECK(classify_pair(d, l.p, f) == ProximityClass::Far);
}

TEST_CASE("classification matrix is symmetric with dashes on the diagonal") {
    std::mt19937_64 rng(3);
    VoronoiDiagram d = build_diagram(random_sites(rng, 9));
    Classification c = classify_all(d);
    for (int i = 0; i < c.n; ++i) {
        CHECK(c.at(i, i) == '-');
        for (int j = 0; j < c.n; ++j) {
            CHECK(c.at(i, j) == c.at(j, i));
        }
    }
}

TEST_CASE("strongly near pairs share a segment on the bisector boundary") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 12; ++t) {
        VoronoiDiagram d = build_diagram(random_sites(rng, 8));
        Classification c = classify_all(d);
        for (int i = 0; i < c.n; ++i) {
            for (int j = i + 1; j < c.n; ++j) {
                if (c.at(i, j) != 'S') continue;
                ConvexRegion x = intersect_convex(d.regions[i], d.regions[j]);
                REQUIRE(x.kind == RegionKind::Segment);
                HalfPlane h = bisector_halfplane(d.site_set.sites[i], d.site_set.sites[j]);
                CHECK(h.side(x.vertices[0]) == 0);
                CHECK(h.side(x.vertices[1]) == 0);
            }
        }
    }
}

TEST_CASE("region areas always sum to the box area") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 15; ++t) {
        std::uniform_int_distribution<int> cnt(1, 14);
        VoronoiDiagram d = build_diagram(random_sites(rng, cnt(rng)));
        Rational total = 0;
        for (const ConvexRegion& r : d.regions) total += r.area();
        CHECK(total == d.site_set.box.area());
    }
}

TEST_CASE("strong axioms hold on generated diagrams") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 8; ++t) {
        std::uniform_int_distribution<int> cnt(1, 12);
        VoronoiDiagram d = build_diagram(random_sites(rng, cnt(rng)));
        Classification c = classify_all(d);
        RegionAxiomReport r = check_strong_axioms_on_regions(d, c);
        CHECK(r.all_pass());
    }
}

TEST_CASE("strong axioms hold on the single-region diagram") {
    VoronoiDiagram d = build_diagram({{pt(0, 0)}, box(-1, -1, 1, 1)});
    Classification c = classify_all(d);
    CHECK(check_strong_axioms_on_regions(d, c).all_pass());
}

TEST_CASE("a symmetry-broken relation table fails N1 with a witness") {
    VoronoiDiagram d = build_diagram(square4());
    Classification c = classify_all(d);
    std::vector<std::vector<bool>> rel(4, std::vector<bool>(4, false));
    for (int i = 0; i < 4; ++i) {
        rel[i][i] = true;
        for (int j = 0; j < 4; ++j) {
            if (i != j && c.at(i, j) == 'S') rel[i][j] = true;
        }
    }
    rel[0][1] = false;  // break symmetry
    RegionAxiomReport r = check_strong_axioms_on_regions(d, c, &rel);
    bool n1_failed = false;
    for (const auto& chk : r.checks) {
        if (chk.axiom == "N1") {
            n1_failed = !chk.pass;
            CHECK(!chk.witness.empty());
        }
    }
    CHECK(n1_failed);
}

TEST_CASE("a relation that invents nearness fails N2") {
    VoronoiDiagram d = build_diagram(collinear3());
    Classification c = classify_all(d);
    std::vector<std::vector<bool>> rel(3, std::vector<bool>(3, true));
    RegionAxiomReport r = check_strong_axioms_on_regions(d, c, &rel);
    bool n2_failed = false;
    for (const auto& chk : r.checks) {
        if (chk.axiom == "N2") n2_failed = !chk.pass;
    }
    CHECK(n2_failed);  // regions 0 and 2 are disjoint
}

TEST_CASE("subbase membership via classification") {
    VoronoiDiagram d = build_diagram(square4());
    Classification c = classify_all(d);
    using Ref = SubbaseElementRef;
    CHECK(subbase_membership(d, c, 1, {Ref::Kind::HitStrong, 0}));
    CHECK_FALSE(subbase_membership(d, c, 3, {Ref::Kind::HitStrong, 0}));  // near only
    CHECK(subbase_membership(d, c, 0, {Ref::Kind::HitStrong, 0}));        // self

    VoronoiDiagram dc = build_diagram(collinear3());
    Classification cc = classify_all(dc);
    CHECK(subbase_membership(dc, cc, 2, {Ref::Kind::FarMiss, 0}));
    CHECK_FALSE(subbase_membership(dc, cc, 1, {Ref::Kind::FarMiss, 0}));
    CHECK_FALSE(subbase_membership(dc, cc, 0, {Ref::Kind::FarMiss, 0}));
}

TEST_CASE("smallest open set families on the pocket layout") {
    PocketLayout l = pocket_layout();
    VoronoiDiagram d = build_diagram(l.sites);
    Classification c = classify_all(d);
    Neighborhood nb = smallest_open_set(d, c, l.p);
    CHECK(nb.strongly_near == std::vector<int>{0, 1, 2, 3});  // self-inclusive
    CHECK(nb.near_only == l.vertex_neighbors);
    CHECK(nb.disjoint == l.far_regions);
}

TEST_CASE("smallest open set of a corner site in the square diagram") {
    VoronoiDiagram d = build_diagram(square4());
    Classification c = classify_all(d);
    Neighborhood nb = smallest_open_set(d, c, 0);
    CHECK(nb.strongly_near == std::vector<int>{0, 1, 2});
    CHECK(nb.near_only == std::vector<int>{3});
    CHECK(nb.disjoint.empty());
}

TEST_CASE("smallest open set of a lone site") {
    VoronoiDiagram d = build_diagram({{pt(0, 0)}, box(-1, -1, 1, 1)});
    Classification c = classify_all(d);
    Neighborhood nb = smallest_open_set(d, c, 0);
    CHECK(nb.strongly_near == std::vector<int>{0});
    CHECK(nb.disjoint.empty());
}

TEST_CASE("no other region satisfies all neighborhood factors") {
    VoronoiDiagram d = build_diagram(square4());
    Classification c = classify_all(d);
    CHECK(region_uniqueness_check(d, c).pass);

    // Two regions: the other one drops out on its own hit factor.
    VoronoiDiagram d2 = build_diagram({{pt(0, 0), pt(2, 0)}, box(-1, -1, 3, 1)});
    Classification c2 = classify_all(d2);
    CHECK(region_uniqueness_check(d2, c2).pass);

    std::mt19937_64 rng(23);
    for (int t = 0; t < 25; ++t) {
        std::uniform_int_distribution<int> cnt(2, 14);
        VoronoiDiagram dr = build_diagram(random_sites(rng, cnt(rng)));
        Classification cr = classify_all(dr);
        CHECK(region_uniqueness_check(dr, cr).pass);
    }
}

TEST_CASE("nearest-site oracle agrees with region membership") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 4; ++t) {
        std::uniform_int_distribution<int> cnt(2, 12);
        VoronoiDiagram d = build_diagram(random_sites(rng, cnt(rng)));
        OracleStats st = nearest_site_oracle(d, 2000, 77 + t);
        CHECK(st.samples >= 2000);
        CHECK(st.mismatches == 0);
    }
}

TEST_CASE("vertex containment flag reacts to a tight box") {
    // Circumcenter of these sites is (2, 2); a box cutting below it flips the flag.
    SiteSet inside{{pt(0, 0), pt(4, 0), pt(0, 4), pt(4, 4)}, box(-1, -1, 5, 5)};
    CHECK(build_diagram(inside).vertex_containment_ok);

    // Flat triangle: circumcenter (2, -15/8) falls below the box.
    SiteSet outside{{pt(1, 0), pt(3, 0), {rat(2), rat(1, 4)}}, box(0, -1, 4, 1)};
    VoronoiDiagram d = build_diagram(outside);
    CHECK_FALSE(d.vertex_containment_ok);
}

TEST_CASE("parallel build matches the serial one") {
    std::mt19937_64 rng(41);
    SiteSet s = random_sites(rng, 13);
    VoronoiDiagram d1 = build_diagram(s, 1);
    VoronoiDiagram d4 = build_diagram(s, 4);
    REQUIRE(d1.regions.size() == d4.regions.size());
    for (size_t i = 0; i < d1.regions.size(); ++i) {
        CHECK(regions_equal(d1.regions[i], d4.regions[i]));
    }
    Classification c1 = classify_all(d1, 1);
    Classification c4 = classify_all(d4, 4);
    CHECK(c1.cells == c4.cells);
}

TEST_CASE("classify_pair rejects bad indices") {
    VoronoiDiagram d = build_diagram(square4());
    CHECK_THROWS_AS(classify_pair(d, 0, 0), Error);
    CHECK_THROWS_AS(classify_pair(d, 0, 9), Error);
}
