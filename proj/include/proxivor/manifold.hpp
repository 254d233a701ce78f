#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "proxivor/descriptive.hpp"
#include "proxivor/voronoi.hpp"

namespace proxivor::man {

using geom::ConvexRegion;
using geom::Point2;

// A chart represented by its image: a union of convex pieces, a Voronoi
// diagram, or a set of angle intervals (dimension one). Optional labels give
// each piece a feature value for the descriptive relations.
struct Chart {
    enum class ImageKind { Pieces, Voronoi, Intervals };

    std::string id;
    ImageKind kind = ImageKind::Pieces;
    std::vector<ConvexRegion> pieces;
    std::optional<vor::VoronoiDiagram> diagram;
    std::vector<desc::AngleInterval> intervals;
    std::vector<std::string> piece_labels;  // optional, parallel to the pieces

    int dimension() const { return kind == ImageKind::Intervals ? 1 : 2; }
    // Convex pieces of the image (diagram regions for Voronoi charts).
    const std::vector<ConvexRegion>& convex_pieces() const;
    void validate() const;
};

struct Atlas {
    std::vector<Chart> charts;
    // Caller-asserted hypothesis: no two chart domains union to another
    // chart's domain. A best-effort geometric probe backs it up.
    bool union_domain_ok = true;
};

// Nonempty intersection of the chart images, exact.
bool charts_strongly_near(const Chart& a, const Chart& b);

// Interiors of the images overlap (a full-dimensional common piece).
bool chart_interiors_overlap(const Chart& a, const Chart& b);

// Identity-map witness that two charts are near: the nonempty intersection
// piece. Absence of a witness is not a "far" verdict; the general relation
// is only semi-decided.
struct NearnessWitness {
    ConvexRegion region;  // interval images embed on the x axis
};

std::optional<NearnessWitness> chart_near_witness(const Chart& a, const Chart& b);

struct ManifoldAxiomReport {
    std::vector<vor::AxiomCheck> checks;  // M0..M4
    bool all_pass() const;
};

// M0-M4 for a relation on the atlas (default: charts_strongly_near), with
// union families evaluated through the images. Requires the union-domain
// hypothesis and at most 12 charts.
ManifoldAxiomReport check_manifold_strong_axioms(
    const Atlas& atlas, const std::vector<std::vector<bool>>* override_rel = nullptr);

struct VorNearResult {
    bool near = false;
    int chart_a = -1, chart_b = -1;
    int region_a = -1, region_b = -1;
};

// Two Voronoi-charted manifolds are strongly near when some cross-diagram
// region pair shares more than one point (a common edge or an overlap).
// Lexicographically first witness.
VorNearResult voronoi_manifolds_strongly_near(const Atlas& m1, const Atlas& m2);

// Description of a plane point.
using PlaneProbe = std::function<int(const Point2&)>;

// Probe that reads the label of the first containing piece across the given
// charts; throws when a queried point lies in none of them.
PlaneProbe label_probe(const std::vector<const Chart*>& charts,
                       const desc::FeatureSpace& fs);

// Deterministic sample set: a rational grid of the given pitch over each
// piece's bounding box, plus the piece vertices.
std::vector<Point2> sample_points(const Chart& chart, const Rational& pitch);

ftop::Mask described_samples(const std::vector<Point2>& samples,
                             const PlaneProbe& probe);

// Sampled descriptive intersection of two chart images: sample points of
// either image whose description belongs to both image description sets.
std::vector<Point2> descriptive_chart_intersection(const Chart& a, const Chart& b,
                                                   const PlaneProbe& probe,
                                                   const Rational& pitch);

struct AtlasDescReport {
    struct PairAudit {
        int i = -1, j = -1;
        bool snd = false;          // descriptions strongly near
        bool snd_atlases = false;  // sampled descriptive intersection nonempty
    };
    bool near = false;  // some pair with snd_atlases
    std::vector<PairAudit> audits;
    std::vector<std::pair<int, int>> non_converse_witnesses;  // snd_atlases && !snd
};

// Audits every cross-atlas chart pair. snd implying snd_atlases is an
// internal consistency requirement; a violation throws.
AtlasDescReport atlases_descriptively_near(const Atlas& a1, const Atlas& a2,
                                           const PlaneProbe& probe,
                                           const desc::FeatureSpace& fs,
                                           const ftop::ProximityRelation& strong,
                                           const Rational& pitch);

}  // namespace proxivor::man
