#include "proxivor/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace proxivor::io {

using geom::Box;
using geom::ConvexRegion;
using geom::EdgeTag;
using geom::Point2;
using ftop::Mask;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("invalid JSON in " + path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

Rational rational_from_json(const json& v) {
    if (v.is_number_integer()) return Rational(Int(v.get<long long>()));
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw Error("expected a rational (integer or \"p/q\" string), got " + v.dump());
}

json rational_to_json(const Rational& r) { return rational_str(r); }

Point2 point_from_json(const json& v) {
    if (!v.is_array() || v.size() != 2) throw Error("expected a point [x, y]");
    return {rational_from_json(v[0]), rational_from_json(v[1])};
}

json point_to_json(const Point2& p) {
    return json::array({rational_to_json(p.x), rational_to_json(p.y)});
}

namespace {

Box box_from_json(const json& v) {
    if (!v.is_array() || v.size() != 4) {
        throw Error("expected a box [xmin, ymin, xmax, ymax]");
    }
    Box b{rational_from_json(v[0]), rational_from_json(v[1]), rational_from_json(v[2]),
          rational_from_json(v[3])};
    if (!b.valid()) throw Error("invalid box");
    return b;
}

json box_to_json(const Box& b) {
    return json::array({rational_to_json(b.xmin), rational_to_json(b.ymin),
                        rational_to_json(b.xmax), rational_to_json(b.ymax)});
}

geom::BoxSide box_side_from_name(const std::string& s) {
    if (s == "bottom") return geom::BoxSide::Bottom;
    if (s == "right") return geom::BoxSide::Right;
    if (s == "top") return geom::BoxSide::Top;
    if (s == "left") return geom::BoxSide::Left;
    throw Error("unknown box side \"" + s + "\"");
}

json edge_tag_to_json(const EdgeTag& t) {
    json out;
    switch (t.kind) {
        case EdgeTag::Kind::Bisector:
            out["type"] = "bisector";
            out["pair"] = json::array({t.site_a, t.site_b});
            break;
        case EdgeTag::Kind::Box:
            out["type"] = "box";
            out["side"] = geom::box_side_name(t.side);
            break;
        case EdgeTag::Kind::Untagged:
            out["type"] = "untagged";
            break;
    }
    return out;
}

EdgeTag edge_tag_from_json(const json& v) {
    std::string type = v.at("type").get<std::string>();
    if (type == "bisector") {
        const json& pair = v.at("pair");
        return EdgeTag::bisector(pair.at(0).get<int>(), pair.at(1).get<int>());
    }
    if (type == "box") return EdgeTag::box(box_side_from_name(v.at("side")));
    if (type == "untagged") return EdgeTag::untagged();
    throw Error("unknown edge tag type \"" + type + "\"");
}

}  // namespace

vor::SiteSet sites_from_json(const json& j) {
    vor::SiteSet s;
    s.box = box_from_json(j.at("box"));
    for (const json& p : j.at("sites")) s.sites.push_back(point_from_json(p));
    s.validate();
    return s;
}

json sites_to_json(const vor::SiteSet& s) {
    json out;
    out["box"] = box_to_json(s.box);
    json sites = json::array();
    for (const Point2& p : s.sites) sites.push_back(point_to_json(p));
    out["sites"] = sites;
    return out;
}

json diagram_to_json(const vor::VoronoiDiagram& d, const vor::Classification* cls) {
    json out = sites_to_json(d.site_set);
    out["vertex_containment_ok"] = d.vertex_containment_ok;
    json regions = json::array();
    for (const ConvexRegion& r : d.regions) {
        json jr;
        json verts = json::array();
        for (const Point2& p : r.vertices) verts.push_back(point_to_json(p));
        jr["vertices"] = verts;
        json edges = json::array();
        for (const EdgeTag& t : r.edge_tags) edges.push_back(edge_tag_to_json(t));
        jr["edges"] = edges;
        regions.push_back(jr);
    }
    out["regions"] = regions;
    if (cls) out["classification"] = cls->rows();
    return out;
}

DiagramDoc diagram_from_json(const json& j) {
    DiagramDoc doc;
    doc.diagram.site_set.box = box_from_json(j.at("box"));
    for (const json& p : j.at("sites")) {
        doc.diagram.site_set.sites.push_back(point_from_json(p));
    }
    doc.diagram.site_set.validate();
    doc.diagram.vertex_containment_ok = j.at("vertex_containment_ok").get<bool>();
    for (const json& jr : j.at("regions")) {
        ConvexRegion r;
        r.kind = geom::RegionKind::Polygon;
        for (const json& p : jr.at("vertices")) r.vertices.push_back(point_from_json(p));
        for (const json& e : jr.at("edges")) r.edge_tags.push_back(edge_tag_from_json(e));
        if (!r.check_invariants()) throw Error("region in file is not a canonical polygon");
        doc.diagram.regions.push_back(std::move(r));
    }
    if (doc.diagram.regions.size() != doc.diagram.site_set.sites.size()) {
        throw Error("region count does not match site count");
    }
    if (j.contains("classification")) {
        vor::Classification cls;
        cls.n = static_cast<int>(doc.diagram.regions.size());
        for (const json& row : j.at("classification")) {
            std::string s = row.get<std::string>();
            if (static_cast<int>(s.size()) != cls.n) throw Error("bad classification row");
            cls.cells.insert(cls.cells.end(), s.begin(), s.end());
        }
        if (static_cast<int>(cls.cells.size()) != cls.n * cls.n) {
            throw Error("bad classification matrix");
        }
        doc.classification = std::move(cls);
    }
    return doc;
}

json neighborhood_to_json(const vor::Neighborhood& nb) {
    json out;
    out["center"] = nb.center;
    out["strongly_near"] = nb.strongly_near;
    out["near_only"] = nb.near_only;
    out["disjoint"] = nb.disjoint;
    return out;
}

json region_axiom_report_to_json(const vor::RegionAxiomReport& rep) {
    json axioms = json::array();
    for (const vor::AxiomCheck& c : rep.checks) {
        json e;
        e["axiom"] = c.axiom;
        e["pass"] = c.pass;
        if (!c.pass) e["witness"] = c.witness;
        axioms.push_back(e);
    }
    json out;
    out["axioms"] = axioms;
    out["all_pass"] = rep.all_pass();
    return out;
}

json uniqueness_report_to_json(const vor::UniquenessReport& rep) {
    json out;
    out["pass"] = rep.pass;
    if (!rep.pass) {
        out["center"] = rep.center;
        out["other"] = rep.other;
        out["detail"] = rep.detail;
    }
    return out;
}

int NamedSpace::point_index(const std::string& name) const {
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i] == name) return static_cast<int>(i);
    }
    throw Error("unknown point \"" + name + "\"");
}

NamedSpace space_from_json(const json& j) {
    NamedSpace s;
    for (const json& p : j.at("points")) s.points.push_back(p.get<std::string>());
    if (s.points.empty() || s.points.size() > ftop::kMaxCarrier) {
        throw Error("point count out of range");
    }
    std::vector<Mask> opens;
    for (const json& o : j.at("opens")) opens.push_back(subset_from_json(o, s));
    s.topology = ftop::FiniteTopology::from_opens(static_cast<int>(s.points.size()),
                                                  std::move(opens));
    return s;
}

json space_to_json(const NamedSpace& s) {
    json out;
    out["points"] = s.points;
    json opens = json::array();
    for (Mask m : s.topology.opens) opens.push_back(subset_to_json(m, s));
    out["opens"] = opens;
    return out;
}

ftop::Mask subset_from_json(const json& arr, const NamedSpace& s) {
    if (!arr.is_array()) throw Error("expected a subset as an array of point names");
    Mask m = 0;
    for (const json& p : arr) m |= (1u << s.point_index(p.get<std::string>()));
    return m;
}

json subset_to_json(ftop::Mask m, const NamedSpace& s) {
    json out = json::array();
    for (size_t i = 0; i < s.points.size(); ++i) {
        if (m & (1u << i)) out.push_back(s.points[i]);
    }
    return out;
}

std::vector<ftop::Mask> family_from_json(const json& arr, const NamedSpace& s) {
    std::vector<Mask> out;
    for (const json& sub : arr) out.push_back(subset_from_json(sub, s));
    return out;
}

ftop::ProximityRelation builtin_relation_by_name(const std::string& name,
                                                 const NamedSpace& s, ftop::Role role,
                                                 bool x_clause) {
    using B = ftop::ProximityRelation::Builtin;
    if (name == "nonempty_intersection") {
        return ftop::ProximityRelation::builtin_relation(s.topology, role,
                                                         B::NonemptyIntersection);
    }
    if (name == "cl_cl") {
        return ftop::ProximityRelation::builtin_relation(s.topology, role,
                                                         B::ClClIntersection);
    }
    if (name == "interior_intersection") {
        return ftop::ProximityRelation::builtin_relation(
            s.topology, role, x_clause ? B::InteriorIntersection
                                       : B::InteriorIntersectionNoX);
    }
    throw Error("unknown relation \"" + name + "\"");
}

ftop::ProximityRelation relation_from_json(const json& j, const NamedSpace& s,
                                           ftop::Role role) {
    if (j.contains("builtin")) {
        bool x_clause = j.value("x_clause", true);
        return builtin_relation_by_name(j.at("builtin").get<std::string>(), s, role,
                                        x_clause);
    }
    if (j.contains("pairs")) {
        std::vector<std::pair<Mask, Mask>> pairs;
        for (const json& p : j.at("pairs")) {
            if (!p.is_array() || p.size() != 2) throw Error("relation pair must be [A, B]");
            pairs.push_back({subset_from_json(p[0], s), subset_from_json(p[1], s)});
        }
        return ftop::ProximityRelation::from_pairs(s.topology, role, pairs);
    }
    throw Error("relation needs \"builtin\" or \"pairs\"");
}

json axiom_report_to_json(const ftop::AxiomReport& rep, ftop::Role role) {
    json axioms = json::array();
    for (const ftop::AxiomCheck& c : rep.checks) {
        json e;
        e["axiom"] = c.axiom;
        e["pass"] = c.pass;
        if (!c.pass) e["witness"] = c.witness;
        axioms.push_back(e);
    }
    json out;
    out["axioms"] = axioms;
    out["all_pass"] = rep.axioms_pass();
    if (role == ftop::Role::Lodato) {
        if (rep.compatible) out["compatible"] = *rep.compatible;
        if (!rep.compatibility_witness.empty()) {
            out["compatibility_witness"] = rep.compatibility_witness;
        }
        if (rep.separated) out["separated"] = *rep.separated;
    }
    return out;
}

std::vector<desc::PaletteEntry> palette_from_json(const json& j) {
    const json& arr = j.is_array() ? j : j.at("palette");
    std::vector<desc::PaletteEntry> out;
    for (const json& e : arr) {
        desc::PaletteEntry entry;
        entry.name = e.at("name").get<std::string>();
        const json& rgb = e.at("rgb");
        if (!rgb.is_array() || rgb.size() != 3) throw Error("palette rgb must be [r,g,b]");
        for (int c = 0; c < 3; ++c) {
            int v = rgb[static_cast<size_t>(c)].get<int>();
            if (v < 0 || v > 255) throw Error("palette channel out of range");
            entry.rgb[static_cast<size_t>(c)] = static_cast<std::uint8_t>(v);
        }
        out.push_back(entry);
    }
    if (out.empty()) throw Error("empty palette");
    return out;
}

std::vector<std::vector<int>> segments_from_json(const json& j, int pixel_count) {
    if (!j.is_array()) throw Error("segments must be an array of pixel-index arrays");
    std::vector<std::vector<int>> out;
    for (const json& seg : j) {
        std::vector<int> part;
        for (const json& v : seg) {
            int idx = v.get<int>();
            if (idx < 0 || idx >= pixel_count) {
                throw Error("pixel index " + std::to_string(idx) + " out of range");
            }
            part.push_back(idx);
        }
        out.push_back(std::move(part));
    }
    return out;
}

desc::AngleInterval interval_from_json(const json& j) {
    desc::AngleInterval iv;
    iv.lo = rational_from_json(j.at("lo"));
    iv.hi = rational_from_json(j.at("hi"));
    iv.lo_open = j.value("lo_open", false);
    iv.hi_open = j.value("hi_open", false);
    return iv;
}

json interval_to_json(const desc::AngleInterval& iv) {
    json out;
    out["lo"] = rational_to_json(iv.lo);
    out["hi"] = rational_to_json(iv.hi);
    out["lo_open"] = iv.lo_open;
    out["hi_open"] = iv.hi_open;
    return out;
}

std::vector<desc::AngleInterval> intervals_from_json(const json& j,
                                                     desc::ChainMode* mode_out) {
    const json& arr = j.is_array() ? j : j.at("intervals");
    std::vector<desc::AngleInterval> out;
    for (const json& e : arr) out.push_back(interval_from_json(e));
    if (mode_out) {
        std::string mode = j.is_object() ? j.value("mode", "overlap") : "overlap";
        if (mode == "overlap") {
            *mode_out = desc::ChainMode::Overlap;
        } else if (mode == "interior_overlap") {
            *mode_out = desc::ChainMode::InteriorOverlap;
        } else {
            throw Error("unknown chain mode \"" + mode + "\"");
        }
    }
    return out;
}

man::Atlas atlas_from_json(const json& j) {
    man::Atlas atlas;
    atlas.union_domain_ok = j.value("union_domain_ok", true);
    for (const json& jc : j.at("charts")) {
        man::Chart chart;
        chart.id = jc.at("id").get<std::string>();
        const json& img = jc.at("image");
        std::string type = img.at("type").get<std::string>();
        if (type == "polygon") {
            chart.kind = man::Chart::ImageKind::Pieces;
            for (const json& piece : img.at("pieces")) {
                std::vector<Point2> verts;
                for (const json& p : piece) verts.push_back(point_from_json(p));
                chart.pieces.push_back(geom::polygon_from_vertices(std::move(verts)));
            }
        } else if (type == "voronoi") {
            chart.kind = man::Chart::ImageKind::Voronoi;
            vor::SiteSet s;
            s.box = box_from_json(img.at("box"));
            for (const json& p : img.at("sites")) s.sites.push_back(point_from_json(p));
            chart.diagram = vor::build_diagram(s);
        } else if (type == "intervals") {
            chart.kind = man::Chart::ImageKind::Intervals;
            for (const json& e : img.at("intervals")) {
                chart.intervals.push_back(interval_from_json(e));
            }
        } else {
            throw Error("unknown chart image type \"" + type + "\"");
        }
        if (img.contains("labels")) {
            for (const json& l : img.at("labels")) {
                chart.piece_labels.push_back(l.get<std::string>());
            }
        }
        chart.validate();
        atlas.charts.push_back(std::move(chart));
    }
    if (atlas.charts.empty()) throw Error("atlas needs at least one chart");
    return atlas;
}

json manifold_axiom_report_to_json(const man::ManifoldAxiomReport& rep) {
    json axioms = json::array();
    for (const vor::AxiomCheck& c : rep.checks) {
        json e;
        e["axiom"] = c.axiom;
        e["pass"] = c.pass;
        if (!c.pass) e["witness"] = c.witness;
        axioms.push_back(e);
    }
    json out;
    out["axioms"] = axioms;
    out["all_pass"] = rep.all_pass();
    return out;
}

json classification_graph_to_json(const vor::VoronoiDiagram& d,
                                  const vor::Classification& cls) {
    json nodes = json::array();
    for (const Point2& p : d.site_set.sites) nodes.push_back(point_to_json(p));
    json strong = json::array();
    json contact = json::array();
    for (int i = 0; i < cls.n; ++i) {
        for (int j = i + 1; j < cls.n; ++j) {
            if (cls.at(i, j) == 'S') strong.push_back(json::array({i, j}));
            if (cls.at(i, j) == 'N') contact.push_back(json::array({i, j}));
        }
    }
    json out;
    out["sites"] = nodes;
    out["strongly_near"] = strong;
    out["near_only"] = contact;
    return out;
}

namespace {

std::string fmt_coord(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
}

const char* kRegionFills[] = {"#c6dbef", "#fdd0a2", "#c7e9c0", "#dadaeb",
                              "#fee0d2", "#d9d9d9", "#fff7bc", "#e5f5e0"};

}  // namespace

std::string render_svg(const vor::VoronoiDiagram& d, const vor::Classification& cls) {
    const Box& box = d.site_set.box;
    double xmin = rational_to_double(box.xmin);
    double xmax = rational_to_double(box.xmax);
    double ymin = rational_to_double(box.ymin);
    double ymax = rational_to_double(box.ymax);
    double w = xmax - xmin;
    double h = ymax - ymin;
    double margin = 0.03 * std::max(w, h);
    double stroke = std::max(w, h) / 400.0;
    // Flip into screen orientation (y grows downward).
    auto sx = [&](const Rational& x) { return fmt_coord(rational_to_double(x)); };
    auto sy = [&](const Rational& y) {
        return fmt_coord(ymax + ymin - rational_to_double(y));
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
        << fmt_coord(xmin - margin) << " " << fmt_coord(ymin - margin) << " "
        << fmt_coord(w + 2 * margin) << " " << fmt_coord(h + 2 * margin) << "\">\n";
    svg << "<style>path.region{stroke:#555555;stroke-width:" << fmt_coord(stroke)
        << ";}line.strong{stroke:#d62728;stroke-width:" << fmt_coord(2.5 * stroke)
        << ";stroke-linecap:round;}circle.nearonly{fill:#1f77b4;}circle.site{fill:#111111;}"
        << "</style>\n";

    for (size_t i = 0; i < d.regions.size(); ++i) {
        const ConvexRegion& r = d.regions[i];
        svg << "<path class=\"region\" fill=\""
            << kRegionFills[i % (sizeof kRegionFills / sizeof *kRegionFills)] << "\" d=\"";
        for (size_t v = 0; v < r.vertices.size(); ++v) {
            svg << (v == 0 ? "M" : "L") << sx(r.vertices[v].x) << "," << sy(r.vertices[v].y);
        }
        svg << "Z\"/>\n";
    }

    for (int i = 0; i < cls.n; ++i) {
        for (int j = i + 1; j < cls.n; ++j) {
            if (cls.at(i, j) != 'S' && cls.at(i, j) != 'N') continue;
            ConvexRegion x = geom::intersect_convex(d.regions[static_cast<size_t>(i)],
                                                    d.regions[static_cast<size_t>(j)]);
            if (cls.at(i, j) == 'S' && x.kind == geom::RegionKind::Segment) {
                svg << "<line class=\"strong\" x1=\"" << sx(x.vertices[0].x) << "\" y1=\""
                    << sy(x.vertices[0].y) << "\" x2=\"" << sx(x.vertices[1].x)
                    << "\" y2=\"" << sy(x.vertices[1].y) << "\"/>\n";
            } else if (cls.at(i, j) == 'N' && x.kind == geom::RegionKind::Point) {
                svg << "<circle class=\"nearonly\" cx=\"" << sx(x.vertices[0].x)
                    << "\" cy=\"" << sy(x.vertices[0].y) << "\" r=\""
                    << fmt_coord(3 * stroke) << "\"/>\n";
            }
        }
    }

    for (const Point2& p : d.site_set.sites) {
        svg << "<circle class=\"site\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
            << "\" r=\"" << fmt_coord(2 * stroke) << "\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace proxivor::io
