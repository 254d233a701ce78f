#pragma once

#include <json.hpp>

#include "proxivor/descriptive.hpp"
#include "proxivor/finitetop.hpp"
#include "proxivor/manifold.hpp"
#include "proxivor/voronoi.hpp"

namespace proxivor::io {

using json = nlohmann::ordered_json;

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Rationals travel as "p/q" strings; plain JSON integers are accepted on
// input, floats are not.
Rational rational_from_json(const json& v);
json rational_to_json(const Rational& r);
geom::Point2 point_from_json(const json& v);
json point_to_json(const geom::Point2& p);

vor::SiteSet sites_from_json(const json& j);
json sites_to_json(const vor::SiteSet& s);

struct DiagramDoc {
    vor::VoronoiDiagram diagram;
    std::optional<vor::Classification> classification;
};

json diagram_to_json(const vor::VoronoiDiagram& d,
                     const vor::Classification* cls = nullptr);
DiagramDoc diagram_from_json(const json& j);

json neighborhood_to_json(const vor::Neighborhood& nb);
json region_axiom_report_to_json(const vor::RegionAxiomReport& rep);
json uniqueness_report_to_json(const vor::UniquenessReport& rep);

// Finite topology with named points.
struct NamedSpace {
    std::vector<std::string> points;
    ftop::FiniteTopology topology;

    int point_index(const std::string& name) const;
};

NamedSpace space_from_json(const json& j);
json space_to_json(const NamedSpace& s);
ftop::Mask subset_from_json(const json& arr, const NamedSpace& s);
json subset_to_json(ftop::Mask m, const NamedSpace& s);
std::vector<ftop::Mask> family_from_json(const json& arr, const NamedSpace& s);

// {"builtin": "nonempty_intersection"|"interior_intersection"|"cl_cl",
//  "x_clause": bool} or {"pairs": [[subset, subset], ...]}.
ftop::ProximityRelation relation_from_json(const json& j, const NamedSpace& s,
                                           ftop::Role role);
ftop::ProximityRelation builtin_relation_by_name(const std::string& name,
                                                 const NamedSpace& s, ftop::Role role,
                                                 bool x_clause);
json axiom_report_to_json(const ftop::AxiomReport& rep, ftop::Role role);

std::vector<desc::PaletteEntry> palette_from_json(const json& j);
std::vector<std::vector<int>> segments_from_json(const json& j, int pixel_count);
desc::AngleInterval interval_from_json(const json& j);
json interval_to_json(const desc::AngleInterval& iv);
std::vector<desc::AngleInterval> intervals_from_json(const json& j,
                                                     desc::ChainMode* mode_out);

man::Atlas atlas_from_json(const json& j);
json manifold_axiom_report_to_json(const man::ManifoldAxiomReport& rep);

// Proximity graph: strong edges and single-point contacts.
json classification_graph_to_json(const vor::VoronoiDiagram& d,
                                  const vor::Classification& cls);

// Regions as paths, strongly-near shared edges highlighted, single-point
// contacts marked. Coordinates are decimal approximations (1e-9), y flipped
// into screen orientation.
std::string render_svg(const vor::VoronoiDiagram& d, const vor::Classification& cls);

}  // namespace proxivor::io
