#pragma once

#include <optional>
#include <vector>

#include "proxivor/rational.hpp"

namespace proxivor::geom {

struct Point2 {
    Rational x;
    Rational y;

    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point2& o) const { return !(*this == o); }
    // Lexicographic, used for canonical vertex ordering.
    bool operator<(const Point2& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

// cross(o, a, b) = (a - o) x (b - o); > 0 means b lies left of ray o->a.
Rational cross(const Point2& o, const Point2& a, const Point2& b);

struct Box {
    Rational xmin, ymin, xmax, ymax;

    bool valid() const { return xmin < xmax && ymin < ymax; }
    bool contains(const Point2& p) const;
    bool contains_strict(const Point2& p) const;
    Rational area() const { return (xmax - xmin) * (ymax - ymin); }
};

enum class BoxSide { Bottom, Right, Top, Left };

const char* box_side_name(BoxSide s);

// Provenance of a polygon edge: which half-plane boundary it lies on.
struct EdgeTag {
    enum class Kind { Bisector, Box, Untagged };
    Kind kind = Kind::Untagged;
    int site_a = -1;  // Bisector only
    int site_b = -1;
    BoxSide side = BoxSide::Bottom;  // Box only

    static EdgeTag bisector(int a, int b) { return {Kind::Bisector, a, b, BoxSide::Bottom}; }
    static EdgeTag box(BoxSide s) { return {Kind::Box, -1, -1, s}; }
    static EdgeTag untagged() { return {}; }

    bool operator==(const EdgeTag& o) const;
};

// Closed half-plane a*x + b*y <= c with (a, b) != (0, 0).
struct HalfPlane {
    Rational a, b, c;

    // c - a*x - b*y: positive strictly inside, zero on the boundary.
    Rational eval(const Point2& p) const { return c - a * p.x - b * p.y; }
    int side(const Point2& p) const;
    bool contains(const Point2& p) const { return side(p) >= 0; }
};

struct TaggedHalfPlane {
    HalfPlane plane;
    EdgeTag tag;
};

// Perpendicular bisector half-plane of points at least as close to p as to q,
// expanded to the exact linear form 2(q-p).x <= |q|^2 - |p|^2.
HalfPlane bisector_halfplane(const Point2& p, const Point2& q);

// Intersection point of the two boundary lines; throws if parallel.
Point2 line_intersection(const HalfPlane& h1, const HalfPlane& h2);

enum class RegionKind { Polygon, Segment, Point, Empty };

const char* region_kind_name(RegionKind k);

// Intersection of finitely many closed half-planes with a bounding box.
// Polygon vertices are counterclockwise, starting at the lexicographically
// smallest, strictly convex, with one outgoing-edge tag per vertex when the
// region is tagged (edge i runs vertices[i] -> vertices[i+1 mod n]).
struct ConvexRegion {
    RegionKind kind = RegionKind::Empty;
    std::vector<Point2> vertices;
    std::vector<EdgeTag> edge_tags;  // size() == vertices.size() or empty

    static ConvexRegion empty();
    static ConvexRegion point(const Point2& p);
    static ConvexRegion segment(const Point2& p, const Point2& q);

    bool is_empty() const { return kind == RegionKind::Empty; }
    bool contains(const Point2& p) const;
    bool contains_strict_interior(const Point2& p) const;
    Rational area() const;
    // Axis-aligned bounds; nullopt for the empty region.
    std::optional<Box> bounds() const;
    // Structural validity per the kind invariants.
    bool check_invariants() const;
};

// Kind + vertex-list equality (canonical forms make this structural).
bool regions_equal(const ConvexRegion& a, const ConvexRegion& b);

Box region_of_box_bounds(const ConvexRegion& r);
ConvexRegion box_region(const Box& box);

ConvexRegion clip_region(const ConvexRegion& region, const HalfPlane& plane,
                         const EdgeTag& tag);

ConvexRegion intersect_halfplanes(const std::vector<TaggedHalfPlane>& planes,
                                  const Box& box);
ConvexRegion intersect_halfplanes(const std::vector<HalfPlane>& planes,
                                  const Box& box);

// Exact intersection; result is untagged and canonical.
ConvexRegion intersect_convex(const ConvexRegion& a, const ConvexRegion& b);

// Half-plane supported by directed edge u->v of a counterclockwise polygon
// (interior on the left).
HalfPlane edge_halfplane(const Point2& u, const Point2& v);

// Canonical untagged polygon from a vertex ring in either orientation;
// rejects rings that are not strictly convex.
ConvexRegion polygon_from_vertices(std::vector<Point2> vertices);

}  // namespace proxivor::geom
