#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "proxivor/manifold.hpp"

using namespace proxivor;
using namespace proxivor::geom;
using namespace proxivor::man;

namespace {

Point2 pt(long long x, long long y) { return {rat(x), rat(y)}; }

Box bx(long long x0, long long y0, long long x1, long long y1) {
    return {rat(x0), rat(y0), rat(x1), rat(y1)};
}

Chart square_chart(const std::string& id, long long x0, long long y0, long long x1,
                   long long y1, std::vector<std::string> labels = {}) {
    Chart c;
    c.id = id;
    c.kind = Chart::ImageKind::Pieces;
    c.pieces = {box_region(bx(x0, y0, x1, y1))};
    c.piece_labels = std::move(labels);
    return c;
}

Chart voronoi_chart(const std::string& id, std::vector<Point2> sites, Box box) {
    Chart c;
    c.id = id;
    c.kind = Chart::ImageKind::Voronoi;
    c.diagram = vor::build_diagram({std::move(sites), box});
    return c;
}

Chart interval_chart(const std::string& id, std::vector<desc::AngleInterval> ivs) {
    Chart c;
    c.id = id;
    c.kind = Chart::ImageKind::Intervals;
    c.intervals = std::move(ivs);
    return c;
}

desc::FeatureSpace rgb_space() {
    return {{"r", "g", "b"},
            ftop::FiniteTopology::from_opens(3, {0b000, 0b011, 0b111})};
}

}  // namespace

TEST_CASE("overlapping and disjoint squares") {
    Chart a = square_chart("U1", 0, 0, 2, 2);
    Chart b = square_chart("U2", 1, 1, 3, 3);
    Chart c = square_chart("U3", 5, 5, 6, 6);
    CHECK(charts_strongly_near(a, b));
    CHECK_FALSE(charts_strongly_near(a, c));

    // Sharing exactly a boundary edge still counts: the intersection is a segment.
    Chart d = square_chart("U4", 2, 0, 4, 2);
    CHECK(charts_strongly_near(a, d));
    CHECK_FALSE(chart_interiors_overlap(a, d));
    CHECK(chart_interiors_overlap(a, b));
}

TEST_CASE("dimension mismatch is rejected") {
    Chart a = square_chart("U1", 0, 0, 2, 2);
    Chart i = interval_chart("I1", {{rat(0), rat(1, 2), false, false}});
    CHECK_THROWS_AS(charts_strongly_near(a, i), Error);
}

TEST_CASE("interval charts intersect through endpoints") {
    Chart i1 = interval_chart("I1", {{rat(0), rat(1, 4), true, false}});
    Chart i2 = interval_chart("I2", {{rat(1, 4), rat(1, 2), false, false}});
    Chart i3 = interval_chart("I3", {{rat(3, 8), rat(1, 2), true, true}});
    CHECK(charts_strongly_near(i1, i2));
    CHECK_FALSE(chart_interiors_overlap(i1, i2));
    CHECK_FALSE(charts_strongly_near(i1, i3));

    auto w = chart_near_witness(i1, i2);
    REQUIRE(w.has_value());
    CHECK(w->region.kind == RegionKind::Point);
    CHECK(w->region.vertices[0].x == rat(1, 4));
}

TEST_CASE("witness present exactly when images intersect") {
    Chart a = square_chart("U1", 0, 0, 2, 2);
    Chart b = square_chart("U2", 1, 1, 3, 3);
    auto w = chart_near_witness(a, b);
    REQUIRE(w.has_value());
    CHECK(regions_equal(w->region, box_region(bx(1, 1, 2, 2))));

    CHECK_FALSE(chart_near_witness(a, square_chart("U3", 5, 5, 6, 6)).has_value());

    auto self = chart_near_witness(a, a);
    REQUIRE(self.has_value());
    CHECK(regions_equal(self->region, a.pieces[0]));
}

TEST_CASE("manifold axioms pass for the image relation") {
    Atlas atlas;
    atlas.charts = {square_chart("U1", 0, 0, 2, 2), square_chart("U2", 1, 0, 3, 2),
                    square_chart("U3", 6, 0, 8, 2)};
    ManifoldAxiomReport rep = check_manifold_strong_axioms(atlas);
    CHECK(rep.all_pass());

    Atlas single;
    single.charts = {square_chart("U1", 0, 0, 1, 1)};
    CHECK(check_manifold_strong_axioms(single).all_pass());
}

TEST_CASE("broken symmetry fails M1 with a witness") {
    Atlas atlas;
    atlas.charts = {square_chart("U1", 0, 0, 2, 2), square_chart("U2", 1, 0, 3, 2)};
    std::vector<std::vector<bool>> rel{{true, true}, {false, true}};
    ManifoldAxiomReport rep = check_manifold_strong_axioms(atlas, &rel);
    bool m1_failed = false;
    for (const auto& c : rep.checks) {
        if (c.axiom == "M1") {
            m1_failed = !c.pass;
            CHECK(!c.witness.empty());
        }
    }
    CHECK(m1_failed);
}

TEST_CASE("a relation missing an interior overlap fails M4") {
    Atlas atlas;
    atlas.charts = {square_chart("U1", 0, 0, 2, 2), square_chart("U2", 1, 0, 3, 2)};
    std::vector<std::vector<bool>> rel{{true, false}, {false, true}};
    ManifoldAxiomReport rep = check_manifold_strong_axioms(atlas, &rel);
    bool m4_failed = false;
    for (const auto& c : rep.checks) {
        if (c.axiom == "M4") m4_failed = !c.pass;
    }
    CHECK(m4_failed);
}

TEST_CASE("union-domain violations are refused") {
    Atlas atlas;
    atlas.charts = {square_chart("U1", 0, 0, 1, 2), square_chart("U2", 1, 0, 2, 2),
                    square_chart("U3", 0, 0, 2, 2)};  // U1 u U2 = U3
    CHECK_THROWS_AS(check_manifold_strong_axioms(atlas), Error);

    Atlas asserted;
    asserted.charts = {square_chart("U1", 0, 0, 2, 2)};
    asserted.union_domain_ok = false;
    CHECK_THROWS_AS(check_manifold_strong_axioms(asserted), Error);
}

TEST_CASE("splitting a strip diagram into overlapping windows keeps the shared edge") {
    Atlas m1, m2;
    m1.charts = {voronoi_chart("S1", {pt(0, 0), pt(2, 0)}, bx(-1, -1, 3, 1))};
    m2.charts = {voronoi_chart("S2", {pt(4, 0), pt(6, 0)}, bx(3, -1, 7, 1))};
    VorNearResult r = voronoi_manifolds_strongly_near(m1, m2);
    CHECK(r.near);
    // Witness is the shared edge on x = 3 between the middle regions.
    CHECK(r.region_a == 1);
    CHECK(r.region_b == 0);
    ConvexRegion shared = intersect_convex(m1.charts[0].convex_pieces()[1],
                                           m2.charts[0].convex_pieces()[0]);
    CHECK(shared.kind == RegionKind::Segment);
}

TEST_CASE("voronoi manifolds over disjoint boxes are not near; identical ones are") {
    Atlas m1, m2, m3;
    m1.charts = {voronoi_chart("S1", {pt(0, 0)}, bx(-1, -1, 1, 1))};
    m2.charts = {voronoi_chart("S2", {pt(10, 10)}, bx(9, 9, 11, 11))};
    CHECK_FALSE(voronoi_manifolds_strongly_near(m1, m2).near);

    m3.charts = {voronoi_chart("S3", {pt(0, 0)}, bx(-1, -1, 1, 1))};
    CHECK(voronoi_manifolds_strongly_near(m1, m3).near);
}

TEST_CASE("non-voronoi charts are rejected by the manifold relation") {
    Atlas m1, m2;
    m1.charts = {voronoi_chart("S1", {pt(0, 0)}, bx(-1, -1, 1, 1))};
    m2.charts = {square_chart("U1", 0, 0, 1, 1)};
    CHECK_THROWS_AS(voronoi_manifolds_strongly_near(m1, m2), Error);
}

TEST_CASE("sampled descriptive intersection") {
    desc::FeatureSpace fs = rgb_space();
    Chart a = square_chart("U1", 0, 0, 2, 2, {"r"});
    Chart b = square_chart("U2", 10, 0, 12, 2, {"r"});
    Chart c = square_chart("U3", 20, 0, 22, 2, {"g"});
    PlaneProbe probe = label_probe({&a, &b, &c}, fs);

    // Identical label sets: every sample belongs to the intersection.
    std::vector<Point2> sa = sample_points(a, rat(1));
    std::vector<Point2> both = descriptive_chart_intersection(a, b, probe, rat(1));
    std::vector<Point2> sb = sample_points(b, rat(1));
    CHECK(both.size() == sa.size() + sb.size());

    // Disjoint label sets: empty.
    CHECK(descriptive_chart_intersection(a, c, probe, rat(1)).empty());
}

TEST_CASE("disjoint tiles sharing one label intersect exactly on that label") {
    desc::FeatureSpace fs = rgb_space();
    Chart a = square_chart("U1", 0, 0, 2, 2, {"r", "g"});
    a.pieces.push_back(box_region(bx(4, 0, 6, 2)));
    Chart b = square_chart("U2", 10, 0, 12, 2, {"r", "b"});
    b.pieces.push_back(box_region(bx(14, 0, 16, 2)));
    PlaneProbe probe = label_probe({&a, &b}, fs);
    std::vector<Point2> common = descriptive_chart_intersection(a, b, probe, rat(1));
    CHECK_FALSE(common.empty());
    for (const Point2& p : common) {
        CHECK(probe(p) == 0);  // only the red-labeled samples qualify
    }
    // All red samples of both charts are present.
    size_t red = 0;
    for (const Point2& p : sample_points(a, rat(1))) red += probe(p) == 0;
    for (const Point2& p : sample_points(b, rat(1))) red += probe(p) == 0;
    CHECK(common.size() == red);
}

TEST_CASE("oversized atlases are rejected") {
    Atlas atlas;
    for (int i = 0; i < 13; ++i) {
        atlas.charts.push_back(
            square_chart("U" + std::to_string(i), 10 * i, 0, 10 * i + 1, 1));
    }
    CHECK_THROWS_AS(check_manifold_strong_axioms(atlas), Error);
}

TEST_CASE("atlas audits: nearness, the implication, and its failed converse") {
    desc::FeatureSpace fs = rgb_space();
    ftop::ProximityRelation strong = ftop::canonical_strong(fs.topology);

    // Two disjoint tiles per atlas, labeled r and b: descriptions are {r,b}
    // on both sides, whose interior is empty. The sampled descriptive
    // intersection is nonempty while the descriptions are not strongly near.
    Atlas a1, a2;
    Chart c1 = square_chart("U1", 0, 0, 2, 2, {"r", "b"});
    c1.pieces.push_back(box_region(bx(4, 0, 6, 2)));
    Chart c2 = square_chart("V1", 10, 0, 12, 2, {"r", "b"});
    c2.pieces.push_back(box_region(bx(14, 0, 16, 2)));
    a1.charts = {c1};
    a2.charts = {c2};
    PlaneProbe probe = label_probe({&c1, &c2}, fs);

    AtlasDescReport rep = atlases_descriptively_near(a1, a2, probe, fs, strong, rat(1));
    CHECK(rep.near);
    REQUIRE(rep.audits.size() == 1);
    CHECK(rep.audits[0].snd_atlases);
    CHECK_FALSE(rep.audits[0].snd);
    CHECK(rep.non_converse_witnesses.size() == 1);
}

TEST_CASE("matching descriptions across charts make atlases near") {
    desc::FeatureSpace fs = rgb_space();
    ftop::ProximityRelation strong = ftop::canonical_strong(fs.topology);
    Atlas a1, a2;
    Chart c1 = square_chart("U1", 0, 0, 2, 2, {"r"});
    Chart c2 = square_chart("U2", 0, 4, 2, 6, {"g"});
    Chart d1 = square_chart("V1", 10, 0, 12, 2, {"r"});
    a1.charts = {c1, c2};
    a2.charts = {d1};
    PlaneProbe probe = label_probe({&c1, &c2, &d1}, fs);
    AtlasDescReport rep = atlases_descriptively_near(a1, a2, probe, fs, strong, rat(1));
    CHECK(rep.near);
    for (const auto& audit : rep.audits) {
        if (audit.snd) CHECK(audit.snd_atlases);
    }

    // All-distinct labels: nothing shared anywhere.
    Atlas b1, b2;
    Chart e1 = square_chart("W1", 0, 0, 2, 2, {"r"});
    Chart e2 = square_chart("W2", 10, 0, 12, 2, {"g"});
    b1.charts = {e1};
    b2.charts = {e2};
    PlaneProbe probe2 = label_probe({&e1, &e2}, fs);
    AtlasDescReport rep2 =
        atlases_descriptively_near(b1, b2, probe2, fs, strong, rat(1));
    CHECK_FALSE(rep2.near);
}

TEST_CASE("implication audit over a random atlas corpus") {
    desc::FeatureSpace fs = rgb_space();
    ftop::ProximityRelation strong = ftop::canonical_strong(fs.topology);
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> coord(0, 40), span(1, 6), nch(1, 4), lab(0, 2);
    const char* names[3] = {"r", "g", "b"};

    std::vector<Atlas> corpus;
    for (int t = 0; t < 12; ++t) {
        Atlas atlas;
        int k = nch(rng);
        for (int c = 0; c < k; ++c) {
            long long x0 = coord(rng), y0 = coord(rng);
            Chart ch = square_chart("A" + std::to_string(t) + "C" + std::to_string(c),
                                    x0, y0, x0 + span(rng), y0 + span(rng),
                                    {names[lab(rng)]});
            atlas.charts.push_back(ch);
        }
        corpus.push_back(atlas);
    }

    for (size_t t = 0; t + 1 < corpus.size(); ++t) {
        std::vector<const Chart*> all;
        for (const Chart& c : corpus[t].charts) all.push_back(&c);
        for (const Chart& c : corpus[t + 1].charts) all.push_back(&c);
        PlaneProbe probe = label_probe(all, fs);
        AtlasDescReport rep = atlases_descriptively_near(corpus[t], corpus[t + 1],
                                                         probe, fs, strong, rat(2));
        for (const auto& audit : rep.audits) {
            if (audit.snd) CHECK(audit.snd_atlases);
        }
        // Geometric nearness always carries an identity witness.
        for (const Chart& ca : corpus[t].charts) {
            for (const Chart& cb : corpus[t + 1].charts) {
                if (charts_strongly_near(ca, cb)) {
                    CHECK(chart_near_witness(ca, cb).has_value());
                }
            }
        }
    }
}
