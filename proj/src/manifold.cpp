#include "proxivor/manifold.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <set>

namespace proxivor::man {

using desc::AngleInterval;
using geom::RegionKind;

const std::vector<ConvexRegion>& Chart::convex_pieces() const {
    if (kind == ImageKind::Voronoi) {
        if (!diagram) throw Error("voronoi chart without a diagram");
        return diagram->regions;
    }
    if (kind == ImageKind::Intervals) throw Error("interval chart has no convex pieces");
    return pieces;
}

void Chart::validate() const {
    switch (kind) {
        case ImageKind::Pieces:
            if (pieces.empty()) throw Error("chart " + id + " has an empty image");
            for (const ConvexRegion& r : pieces) {
                if (r.is_empty()) throw Error("chart " + id + " contains an empty piece");
            }
            break;
        case ImageKind::Voronoi:
            if (!diagram || diagram->regions.empty()) {
                throw Error("chart " + id + " has no diagram");
            }
            break;
        case ImageKind::Intervals:
            if (intervals.empty()) throw Error("chart " + id + " has an empty image");
            for (const AngleInterval& iv : intervals) {
                if (iv.empty()) throw Error("chart " + id + " contains an empty interval");
            }
            break;
    }
    if (!piece_labels.empty()) {
        size_t want = kind == ImageKind::Intervals ? intervals.size()
                                                   : convex_pieces().size();
        if (piece_labels.size() != want) {
            throw Error("chart " + id + " has mismatched labels");
        }
    }
}

namespace {

void require_same_dimension(const Chart& a, const Chart& b) {
    if (a.dimension() != b.dimension()) {
        throw Error("charts " + a.id + " and " + b.id + " have different dimensions");
    }
}

bool interval_images_meet(const Chart& a, const Chart& b, desc::ChainMode mode) {
    for (const AngleInterval& x : a.intervals) {
        for (const AngleInterval& y : b.intervals) {
            if (desc::intervals_intersect(x, y, mode)) return true;
        }
    }
    return false;
}

}  // namespace

bool charts_strongly_near(const Chart& a, const Chart& b) {
    require_same_dimension(a, b);
    if (a.dimension() == 1) {
        return interval_images_meet(a, b, desc::ChainMode::Overlap);
    }
    for (const ConvexRegion& x : a.convex_pieces()) {
        for (const ConvexRegion& y : b.convex_pieces()) {
            if (!geom::intersect_convex(x, y).is_empty()) return true;
        }
    }
    return false;
}

bool chart_interiors_overlap(const Chart& a, const Chart& b) {
    require_same_dimension(a, b);
    if (a.dimension() == 1) {
        return interval_images_meet(a, b, desc::ChainMode::InteriorOverlap);
    }
    for (const ConvexRegion& x : a.convex_pieces()) {
        for (const ConvexRegion& y : b.convex_pieces()) {
            if (geom::intersect_convex(x, y).kind == RegionKind::Polygon) return true;
        }
    }
    return false;
}

std::optional<NearnessWitness> chart_near_witness(const Chart& a, const Chart& b) {
    require_same_dimension(a, b);
    if (a.dimension() == 1) {
        for (const AngleInterval& x : a.intervals) {
            for (const AngleInterval& y : b.intervals) {
                if (!desc::intervals_intersect(x, y)) continue;
                Rational lo = std::max(x.lo, y.lo);
                Rational hi = std::min(x.hi, y.hi);
                Point2 p{lo, rat(0)};
                Point2 q{hi, rat(0)};
                return NearnessWitness{lo == hi ? ConvexRegion::point(p)
                                                : ConvexRegion::segment(p, q)};
            }
        }
        return std::nullopt;
    }
    for (const ConvexRegion& x : a.convex_pieces()) {
        for (const ConvexRegion& y : b.convex_pieces()) {
            ConvexRegion r = geom::intersect_convex(x, y);
            if (!r.is_empty()) return NearnessWitness{r};
        }
    }
    return std::nullopt;
}

bool ManifoldAxiomReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const vor::AxiomCheck& c) { return c.pass; });
}

namespace {

// Best-effort geometric probe of the union-domain hypothesis: flags the case
// where two single-piece images merge into a convex region equal to a third
// chart's single-piece image.
bool union_probe_violation(const Atlas& atlas) {
    size_t n = atlas.charts.size();
    auto single_piece = [&](size_t i) -> const ConvexRegion* {
        const Chart& c = atlas.charts[i];
        if (c.dimension() != 2) return nullptr;
        const auto& ps = c.convex_pieces();
        return ps.size() == 1 ? &ps[0] : nullptr;
    };
    for (size_t i = 0; i < n; ++i) {
        const ConvexRegion* a = single_piece(i);
        if (!a || a->kind != RegionKind::Polygon) continue;
        for (size_t j = i + 1; j < n; ++j) {
            const ConvexRegion* b = single_piece(j);
            if (!b || b->kind != RegionKind::Polygon) continue;
            ConvexRegion overlap = geom::intersect_convex(*a, *b);
            Rational union_area = a->area() + b->area() - overlap.area();
            for (size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const ConvexRegion* c = single_piece(k);
                if (!c || c->kind != RegionKind::Polygon) continue;
                if (c->area() != union_area) continue;
                bool covers = true;
                for (const Point2& v : a->vertices) covers = covers && c->contains(v);
                for (const Point2& v : b->vertices) covers = covers && c->contains(v);
                if (covers) return true;
            }
        }
    }
    return false;
}

}  // namespace

ManifoldAxiomReport check_manifold_strong_axioms(
    const Atlas& atlas, const std::vector<std::vector<bool>>* override_rel) {
    size_t n = atlas.charts.size();
    if (n == 0) throw Error("atlas needs at least one chart");
    if (n > 12) throw Error("atlas too large for exhaustive axiom checks");
    for (const Chart& c : atlas.charts) c.validate();
    if (!atlas.union_domain_ok || union_probe_violation(atlas)) {
        throw Error("atlas violates the union-domain hypothesis");
    }

    auto rel = [&](size_t i, size_t j) -> bool {
        if (override_rel) return (*override_rel)[i][j];
        return charts_strongly_near(atlas.charts[i], atlas.charts[j]);
    };

    ManifoldAxiomReport report;
    auto add = [&](const std::string& axiom, bool pass, const std::string& witness) {
        report.checks.push_back({axiom, pass, pass ? "" : witness});
    };
    auto ids = [&](size_t i, size_t j) {
        return atlas.charts[i].id + ", " + atlas.charts[j].id;
    };

    // M0: charts have nonempty images by construction, so nothing relates to
    // an empty domain; recorded definitionally.
    add("M0", true, "");

    {  // M1: symmetry
        bool ok = true;
        std::string w;
        for (size_t i = 0; i < n && ok; ++i) {
            for (size_t j = i; j < n && ok; ++j) {
                if (rel(i, j) != rel(j, i)) {
                    ok = false;
                    w = ids(i, j);
                }
            }
        }
        add("M1", ok, w);
    }

    {  // M2: related charts have intersecting images
        bool ok = true;
        std::string w;
        for (size_t i = 0; i < n && ok; ++i) {
            for (size_t j = 0; j < n && ok; ++j) {
                if (rel(i, j) && !charts_strongly_near(atlas.charts[i], atlas.charts[j])) {
                    ok = false;
                    w = ids(i, j);
                }
            }
        }
        add("M2", ok, w);
    }

    {  // M3: relation to one family member extends to the family union,
       // evaluated through the images.
        bool ok = true;
        std::string w;
        for (size_t i = 0; i < n && ok; ++i) {
            for (unsigned f = 1; f < (1u << n) && ok; ++f) {
                if (f & (1u << i)) continue;  // family of other domains
                bool hypothesis = false;
                bool union_hit = false;
                for (size_t h = 0; h < n; ++h) {
                    if (!(f & (1u << h))) continue;
                    if (rel(i, h)) hypothesis = true;
                    if (charts_strongly_near(atlas.charts[i], atlas.charts[h])) {
                        union_hit = true;
                    }
                }
                if (hypothesis && !union_hit) {
                    ok = false;
                    w = atlas.charts[i].id + " vs a family of " +
                        std::to_string(std::popcount(f));
                }
            }
        }
        add("M3", ok, w);
    }

    {  // M4: interior overlap of the images forces the relation
        bool ok = true;
        std::string w;
        for (size_t i = 0; i < n && ok; ++i) {
            for (size_t j = i; j < n && ok; ++j) {
                if (chart_interiors_overlap(atlas.charts[i], atlas.charts[j]) &&
                    !rel(i, j)) {
                    ok = false;
                    w = ids(i, j);
                }
            }
        }
        add("M4", ok, w);
    }

    return report;
}

VorNearResult voronoi_manifolds_strongly_near(const Atlas& m1, const Atlas& m2) {
    for (const Chart& c : m1.charts) {
        if (c.kind != Chart::ImageKind::Voronoi) {
            throw Error("chart " + c.id + " is not a voronoi chart");
        }
        c.validate();
    }
    for (const Chart& c : m2.charts) {
        if (c.kind != Chart::ImageKind::Voronoi) {
            throw Error("chart " + c.id + " is not a voronoi chart");
        }
        c.validate();
    }
    VorNearResult result;
    for (size_t a = 0; a < m1.charts.size(); ++a) {
        for (size_t b = 0; b < m2.charts.size(); ++b) {
            const auto& ra = m1.charts[a].convex_pieces();
            const auto& rb = m2.charts[b].convex_pieces();
            for (size_t i = 0; i < ra.size(); ++i) {
                for (size_t j = 0; j < rb.size(); ++j) {
                    RegionKind k = geom::intersect_convex(ra[i], rb[j]).kind;
                    if (k == RegionKind::Segment || k == RegionKind::Polygon) {
                        result.near = true;
                        result.chart_a = static_cast<int>(a);
                        result.chart_b = static_cast<int>(b);
                        result.region_a = static_cast<int>(i);
                        result.region_b = static_cast<int>(j);
                        return result;
                    }
                }
            }
        }
    }
    return result;
}

PlaneProbe label_probe(const std::vector<const Chart*>& charts,
                       const desc::FeatureSpace& fs) {
    struct LabeledPiece {
        ConvexRegion region;
        int label;
    };
    auto pieces = std::make_shared<std::vector<LabeledPiece>>();
    for (const Chart* c : charts) {
        if (c->piece_labels.empty()) {
            throw Error("chart " + c->id + " has no piece labels for a descriptive probe");
        }
        const auto& ps = c->convex_pieces();
        for (size_t i = 0; i < ps.size(); ++i) {
            pieces->push_back({ps[i], fs.label_index(c->piece_labels[i])});
        }
    }
    return [pieces](const Point2& p) -> int {
        for (const LabeledPiece& lp : *pieces) {
            if (lp.region.contains(p)) return lp.label;
        }
        throw Error("probe queried outside every chart image");
    };
}

std::vector<Point2> sample_points(const Chart& chart, const Rational& pitch) {
    if (chart.dimension() != 2) throw Error("sampling needs a planar chart image");
    if (pitch <= 0) throw Error("grid pitch must be positive");
    std::set<std::pair<Rational, Rational>> seen;
    std::vector<Point2> out;
    auto push = [&](const Point2& p) {
        if (seen.insert({p.x, p.y}).second) out.push_back(p);
    };
    for (const ConvexRegion& piece : chart.convex_pieces()) {
        for (const Point2& v : piece.vertices) push(v);
        auto b = piece.bounds();
        if (!b) continue;
        for (Rational x = b->xmin; x <= b->xmax; x += pitch) {
            for (Rational y = b->ymin; y <= b->ymax; y += pitch) {
                Point2 p{x, y};
                if (piece.contains(p)) push(p);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ftop::Mask described_samples(const std::vector<Point2>& samples,
                             const PlaneProbe& probe) {
    ftop::Mask m = 0;
    for (const Point2& p : samples) m |= (1u << probe(p));
    return m;
}

std::vector<Point2> descriptive_chart_intersection(const Chart& a, const Chart& b,
                                                   const PlaneProbe& probe,
                                                   const Rational& pitch) {
    std::vector<Point2> sa = sample_points(a, pitch);
    std::vector<Point2> sb = sample_points(b, pitch);
    ftop::Mask da = described_samples(sa, probe);
    ftop::Mask db = described_samples(sb, probe);
    ftop::Mask both = da & db;
    std::vector<Point2> all = sa;
    all.insert(all.end(), sb.begin(), sb.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<Point2> out;
    for (const Point2& p : all) {
        if (both & (1u << probe(p))) out.push_back(p);
    }
    return out;
}

AtlasDescReport atlases_descriptively_near(const Atlas& a1, const Atlas& a2,
                                           const PlaneProbe& probe,
                                           const desc::FeatureSpace& fs,
                                           const ftop::ProximityRelation& strong,
                                           const Rational& pitch) {
    (void)fs;
    AtlasDescReport report;
    for (size_t i = 0; i < a1.charts.size(); ++i) {
        for (size_t j = 0; j < a2.charts.size(); ++j) {
            const Chart& ci = a1.charts[i];
            const Chart& cj = a2.charts[j];
            ftop::Mask di = described_samples(sample_points(ci, pitch), probe);
            ftop::Mask dj = described_samples(sample_points(cj, pitch), probe);
            AtlasDescReport::PairAudit audit;
            audit.i = static_cast<int>(i);
            audit.j = static_cast<int>(j);
            audit.snd = strong.near(di, dj);
            audit.snd_atlases =
                !descriptive_chart_intersection(ci, cj, probe, pitch).empty();
            if (audit.snd && !audit.snd_atlases) {
                throw Error("internal: strongly near descriptions with empty "
                            "descriptive intersection (" + ci.id + ", " + cj.id + ")");
            }
            if (audit.snd_atlases && !audit.snd) {
                report.non_converse_witnesses.push_back(
                    {static_cast<int>(i), static_cast<int>(j)});
            }
            report.near = report.near || audit.snd_atlases;
            report.audits.push_back(audit);
        }
    }
    return report;
}

}  // namespace proxivor::man
