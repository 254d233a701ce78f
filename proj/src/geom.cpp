#include "proxivor/geom.hpp"

#include <algorithm>
#include <cassert>

namespace proxivor::geom {

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool Box::contains(const Point2& p) const {
    return xmin <= p.x && p.x <= xmax && ymin <= p.y && p.y <= ymax;
}

bool Box::contains_strict(const Point2& p) const {
    return xmin < p.x && p.x < xmax && ymin < p.y && p.y < ymax;
}

const char* box_side_name(BoxSide s) {
    switch (s) {
        case BoxSide::Bottom: return "bottom";
        case BoxSide::Right: return "right";
        case BoxSide::Top: return "top";
        case BoxSide::Left: return "left";
    }
    return "?";
}

bool EdgeTag::operator==(const EdgeTag& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Bisector: return site_a == o.site_a && site_b == o.site_b;
        case Kind::Box: return side == o.side;
        case Kind::Untagged: return true;
    }
    return false;
}

int HalfPlane::side(const Point2& p) const {
    Rational v = eval(p);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

HalfPlane bisector_halfplane(const Point2& p, const Point2& q) {
    if (p == q) throw Error("coincident sites");
    Rational a = 2 * (q.x - p.x);
    Rational b = 2 * (q.y - p.y);
    Rational c = q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y;
    return {a, b, c};
}

Point2 line_intersection(const HalfPlane& h1, const HalfPlane& h2) {
    Rational det = h1.a * h2.b - h2.a * h1.b;
    if (det == 0) throw Error("parallel boundary lines");
    Rational x = (h1.c * h2.b - h2.c * h1.b) / det;
    Rational y = (h1.a * h2.c - h2.a * h1.c) / det;
    return {x, y};
}

const char* region_kind_name(RegionKind k) {
    switch (k) {
        case RegionKind::Polygon: return "polygon";
        case RegionKind::Segment: return "segment";
        case RegionKind::Point: return "point";
        case RegionKind::Empty: return "empty";
    }
    return "?";
}

ConvexRegion ConvexRegion::empty() { return {}; }

ConvexRegion ConvexRegion::point(const Point2& p) {
    ConvexRegion r;
    r.kind = RegionKind::Point;
    r.vertices = {p};
    return r;
}

ConvexRegion ConvexRegion::segment(const Point2& p, const Point2& q) {
    if (p == q) return point(p);
    ConvexRegion r;
    r.kind = RegionKind::Segment;
    r.vertices = p < q ? std::vector<Point2>{p, q} : std::vector<Point2>{q, p};
    return r;
}

namespace {

bool point_on_segment(const Point2& a, const Point2& b, const Point2& p) {
    if (cross(a, b, p) != 0) return false;
    // Projection parameter onto a->b must land in [0, |b-a|^2].
    Rational dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    if (dot < 0) return false;
    Rational len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
    return dot <= len2;
}

}  // namespace

bool ConvexRegion::contains(const Point2& p) const {
    switch (kind) {
        case RegionKind::Empty:
            return false;
        case RegionKind::Point:
            return vertices[0] == p;
        case RegionKind::Segment:
            return point_on_segment(vertices[0], vertices[1], p);
        case RegionKind::Polygon: {
            size_t n = vertices.size();
            for (size_t i = 0; i < n; ++i) {
                if (cross(vertices[i], vertices[(i + 1) % n], p) < 0) return false;
            }
            return true;
        }
    }
    return false;
}

bool ConvexRegion::contains_strict_interior(const Point2& p) const {
    if (kind != RegionKind::Polygon) return false;
    size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        if (cross(vertices[i], vertices[(i + 1) % n], p) <= 0) return false;
    }
    return true;
}

Rational ConvexRegion::area() const {
    if (kind != RegionKind::Polygon) return 0;
    Rational twice = 0;
    size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& u = vertices[i];
        const Point2& v = vertices[(i + 1) % n];
        twice += u.x * v.y - v.x * u.y;
    }
    return twice / 2;
}

std::optional<Box> ConvexRegion::bounds() const {
    if (kind == RegionKind::Empty) return std::nullopt;
    Box b{vertices[0].x, vertices[0].y, vertices[0].x, vertices[0].y};
    for (const Point2& p : vertices) {
        b.xmin = std::min(b.xmin, p.x);
        b.xmax = std::max(b.xmax, p.x);
        b.ymin = std::min(b.ymin, p.y);
        b.ymax = std::max(b.ymax, p.y);
    }
    return b;
}

bool ConvexRegion::check_invariants() const {
    switch (kind) {
        case RegionKind::Empty:
            return vertices.empty() && edge_tags.empty();
        case RegionKind::Point:
            return vertices.size() == 1;
        case RegionKind::Segment:
            return vertices.size() == 2 && vertices[0] < vertices[1];
        case RegionKind::Polygon: {
            size_t n = vertices.size();
            if (n < 3) return false;
            if (!edge_tags.empty() && edge_tags.size() != n) return false;
            // Strictly convex, counterclockwise, no repeats or collinear runs.
            for (size_t i = 0; i < n; ++i) {
                if (cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) <= 0)
                    return false;
            }
            for (size_t i = 1; i < n; ++i) {
                if (vertices[i] < vertices[0]) return false;
            }
            return true;
        }
    }
    return false;
}

bool regions_equal(const ConvexRegion& a, const ConvexRegion& b) {
    return a.kind == b.kind && a.vertices == b.vertices;
}

ConvexRegion box_region(const Box& box) {
    if (!box.valid()) throw Error("invalid box");
    ConvexRegion r;
    r.kind = RegionKind::Polygon;
    r.vertices = {{box.xmin, box.ymin}, {box.xmax, box.ymin},
                  {box.xmax, box.ymax}, {box.xmin, box.ymax}};
    r.edge_tags = {EdgeTag::box(BoxSide::Bottom), EdgeTag::box(BoxSide::Right),
                   EdgeTag::box(BoxSide::Top), EdgeTag::box(BoxSide::Left)};
    return r;
}

namespace {

struct Vert {
    Point2 p;
    EdgeTag tag;  // tag of the outgoing edge
};

Point2 crossing_point(const Point2& u, const Point2& v, const Rational& su,
                      const Rational& sv) {
    // eval is affine along the segment; zero at t = su / (su - sv).
    Rational t = su / (su - sv);
    return {u.x + t * (v.x - u.x), u.y + t * (v.y - u.y)};
}

// Turn an emitted vertex ring into a canonical region. Consecutive duplicate
// vertices collapse onto the entry whose successor differs (that entry's tag
// describes the surviving outgoing edge); collinear middles are removed with
// the first portion's tag kept.
ConvexRegion finalize_ring(std::vector<Vert> ring) {
    if (ring.empty()) return ConvexRegion::empty();

    std::vector<Vert> ded;
    size_t k = ring.size();
    for (size_t i = 0; i < k; ++i) {
        if (!(ring[i].p == ring[(i + 1) % k].p)) ded.push_back(ring[i]);
    }
    if (ded.empty()) return ConvexRegion::point(ring[0].p);
    if (ded.size() == 1) return ConvexRegion::point(ded[0].p);
    if (ded.size() == 2) return ConvexRegion::segment(ded[0].p, ded[1].p);

    bool collinear = true;
    for (size_t i = 2; i < ded.size(); ++i) {
        if (cross(ded[0].p, ded[1].p, ded[i].p) != 0) {
            collinear = false;
            break;
        }
    }
    if (collinear) {
        Point2 lo = ded[0].p, hi = ded[0].p;
        for (const Vert& v : ded) {
            if (v.p < lo) lo = v.p;
            if (hi < v.p) hi = v.p;
        }
        return ConvexRegion::segment(lo, hi);
    }

    // Drop collinear middle vertices until stable.
    bool changed = true;
    while (changed && ded.size() > 2) {
        changed = false;
        for (size_t i = 0; i < ded.size();) {
            size_t n = ded.size();
            const Point2& prev = ded[(i + n - 1) % n].p;
            const Point2& cur = ded[i].p;
            const Point2& next = ded[(i + 1) % n].p;
            if (cross(prev, cur, next) == 0) {
                ded.erase(ded.begin() + static_cast<long>(i));
                changed = true;
            } else {
                ++i;
            }
        }
    }
    if (ded.size() == 2) return ConvexRegion::segment(ded[0].p, ded[1].p);
    if (ded.size() < 2) return ded.empty() ? ConvexRegion::empty() : ConvexRegion::point(ded[0].p);

    size_t start = 0;
    for (size_t i = 1; i < ded.size(); ++i) {
        if (ded[i].p < ded[start].p) start = i;
    }
    std::rotate(ded.begin(), ded.begin() + static_cast<long>(start), ded.end());

    ConvexRegion out;
    out.kind = RegionKind::Polygon;
    for (const Vert& v : ded) {
        out.vertices.push_back(v.p);
        out.edge_tags.push_back(v.tag);
    }
    if (!out.check_invariants()) throw Error("internal: clip produced a non-convex ring");
    return out;
}

ConvexRegion clip_polygon(const ConvexRegion& poly, const HalfPlane& plane,
                          const EdgeTag& clip_tag) {
    size_t n = poly.vertices.size();
    std::vector<Rational> ev(n);
    bool any_out = false, all_out = true;
    for (size_t i = 0; i < n; ++i) {
        ev[i] = plane.eval(poly.vertices[i]);
        if (ev[i] < 0) any_out = true;
        if (ev[i] >= 0) all_out = false;
    }
    if (!any_out) return poly;
    if (all_out) return ConvexRegion::empty();

    auto tag_at = [&](size_t i) {
        return poly.edge_tags.empty() ? EdgeTag::untagged() : poly.edge_tags[i];
    };

    std::vector<Vert> ring;
    for (size_t i = 0; i < n; ++i) {
        size_t j = (i + 1) % n;
        const Point2& u = poly.vertices[i];
        const Point2& v = poly.vertices[j];
        const Rational& su = ev[i];
        const Rational& sv = ev[j];
        if (su >= 0) {
            ring.push_back({u, tag_at(i)});
            if (sv < 0) ring.push_back({crossing_point(u, v, su, sv), clip_tag});
        } else if (sv >= 0) {
            ring.push_back({crossing_point(u, v, su, sv), tag_at(i)});
        }
    }
    return finalize_ring(std::move(ring));
}

ConvexRegion clip_segment_region(const ConvexRegion& seg, const HalfPlane& plane) {
    const Point2& a = seg.vertices[0];
    const Point2& b = seg.vertices[1];
    Rational sa = plane.eval(a);
    Rational sb = plane.eval(b);
    if (sa >= 0 && sb >= 0) return seg;
    if (sa < 0 && sb < 0) return ConvexRegion::empty();
    Point2 i = crossing_point(a, b, sa, sb);
    return sa >= 0 ? ConvexRegion::segment(a, i) : ConvexRegion::segment(i, b);
}

}  // namespace

ConvexRegion clip_region(const ConvexRegion& region, const HalfPlane& plane,
                         const EdgeTag& tag) {
    if (plane.a == 0 && plane.b == 0) throw Error("degenerate half-plane");
    switch (region.kind) {
        case RegionKind::Empty:
            return region;
        case RegionKind::Point:
            return plane.contains(region.vertices[0]) ? region : ConvexRegion::empty();
        case RegionKind::Segment:
            return clip_segment_region(region, plane);
        case RegionKind::Polygon:
            return clip_polygon(region, plane, tag);
    }
    return ConvexRegion::empty();
}

ConvexRegion intersect_halfplanes(const std::vector<TaggedHalfPlane>& planes,
                                  const Box& box) {
    ConvexRegion region = box_region(box);
    for (const TaggedHalfPlane& tp : planes) {
        region = clip_region(region, tp.plane, tp.tag);
        if (region.is_empty()) break;
    }
    return region;
}

ConvexRegion intersect_halfplanes(const std::vector<HalfPlane>& planes,
                                  const Box& box) {
    std::vector<TaggedHalfPlane> tagged;
    tagged.reserve(planes.size());
    for (const HalfPlane& p : planes) tagged.push_back({p, EdgeTag::untagged()});
    return intersect_halfplanes(tagged, box);
}

HalfPlane edge_halfplane(const Point2& u, const Point2& v) {
    Rational dx = v.x - u.x;
    Rational dy = v.y - u.y;
    return {dy, -dx, dy * u.x - dx * u.y};
}

namespace {

ConvexRegion strip_tags(ConvexRegion r) {
    r.edge_tags.clear();
    return r;
}

bool bounds_disjoint(const ConvexRegion& a, const ConvexRegion& b) {
    auto ba = a.bounds();
    auto bb = b.bounds();
    if (!ba || !bb) return true;
    return ba->xmax < bb->xmin || bb->xmax < ba->xmin || ba->ymax < bb->ymin ||
           bb->ymax < ba->ymin;
}

ConvexRegion clip_by_polygon(const ConvexRegion& subject, const ConvexRegion& poly) {
    ConvexRegion r = subject;
    size_t n = poly.vertices.size();
    for (size_t i = 0; i < n && !r.is_empty(); ++i) {
        HalfPlane hp = edge_halfplane(poly.vertices[i], poly.vertices[(i + 1) % n]);
        r = clip_region(r, hp, EdgeTag::untagged());
    }
    return strip_tags(r);
}

ConvexRegion segment_segment(const ConvexRegion& s1, const ConvexRegion& s2) {
    const Point2& a = s1.vertices[0];
    const Point2& b = s1.vertices[1];
    const Point2& c = s2.vertices[0];
    const Point2& d = s2.vertices[1];
    Rational denom = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x);
    if (denom == 0) {
        if (cross(a, b, c) != 0) return ConvexRegion::empty();  // parallel, offset
        // Collinear: lexicographic order is monotone along the carrier line.
        Point2 lo = std::max(a, c);
        Point2 hi = std::min(b, d);
        if (hi < lo) return ConvexRegion::empty();
        return ConvexRegion::segment(lo, hi);
    }
    HalfPlane l1 = edge_halfplane(a, b);
    HalfPlane l2 = edge_halfplane(c, d);
    Point2 p = line_intersection(l1, l2);
    if (point_on_segment(a, b, p) && point_on_segment(c, d, p)) {
        return ConvexRegion::point(p);
    }
    return ConvexRegion::empty();
}

}  // namespace

ConvexRegion intersect_convex(const ConvexRegion& a, const ConvexRegion& b) {
    if (a.is_empty() || b.is_empty()) return ConvexRegion::empty();
    if (bounds_disjoint(a, b)) return ConvexRegion::empty();

    if (a.kind == RegionKind::Point)
        return b.contains(a.vertices[0]) ? a : ConvexRegion::empty();
    if (b.kind == RegionKind::Point)
        return a.contains(b.vertices[0]) ? b : ConvexRegion::empty();

    if (a.kind == RegionKind::Polygon && b.kind == RegionKind::Polygon)
        return clip_by_polygon(a, b);
    if (a.kind == RegionKind::Polygon) return clip_by_polygon(b, a);
    if (b.kind == RegionKind::Polygon) return clip_by_polygon(a, b);

    return segment_segment(a, b);
}

Box region_of_box_bounds(const ConvexRegion& r) {
    auto b = r.bounds();
    if (!b) throw Error("empty region has no bounds");
    return *b;
}

ConvexRegion polygon_from_vertices(std::vector<Point2> vertices) {
    if (vertices.size() < 3) throw Error("polygon needs at least three vertices");
    Rational twice = 0;
    size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& u = vertices[i];
        const Point2& v = vertices[(i + 1) % n];
        twice += u.x * v.y - v.x * u.y;
    }
    if (twice == 0) throw Error("degenerate polygon vertex ring");
    if (twice < 0) std::reverse(vertices.begin(), vertices.end());
    size_t start = 0;
    for (size_t i = 1; i < n; ++i) {
        if (vertices[i] < vertices[start]) start = i;
    }
    std::rotate(vertices.begin(), vertices.begin() + static_cast<long>(start),
                vertices.end());
    ConvexRegion out;
    out.kind = RegionKind::Polygon;
    out.vertices = std::move(vertices);
    if (!out.check_invariants()) throw Error("polygon vertex ring is not strictly convex");
    return out;
}

}  // namespace proxivor::geom
