#include "proxivor/voronoi.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <thread>

namespace proxivor::vor {

using geom::EdgeTag;
using geom::HalfPlane;
using geom::RegionKind;
using geom::TaggedHalfPlane;

void SiteSet::validate() const {
    if (sites.empty()) throw Error("site set is empty");
    if (!box.valid()) throw Error("invalid box");
    for (size_t i = 0; i < sites.size(); ++i) {
        if (!box.contains_strict(sites[i])) {
            throw Error("site " + std::to_string(i) + " is not strictly inside the box");
        }
        for (size_t j = i + 1; j < sites.size(); ++j) {
            if (sites[i] == sites[j]) {
                throw Error("duplicate sites at indices " + std::to_string(i) + " and " +
                            std::to_string(j));
            }
        }
    }
}

const char* proximity_class_name(ProximityClass c) {
    switch (c) {
        case ProximityClass::StronglyNear: return "strongly_near";
        case ProximityClass::NearOnly: return "near_only";
        case ProximityClass::Far: return "far";
    }
    return "?";
}

char proximity_class_code(ProximityClass c) {
    switch (c) {
        case ProximityClass::StronglyNear: return 'S';
        case ProximityClass::NearOnly: return 'N';
        case ProximityClass::Far: return 'F';
    }
    return '?';
}

ConvexRegion voronoi_region(int p_index, const SiteSet& s) {
    s.validate();
    int n = static_cast<int>(s.sites.size());
    if (p_index < 0 || p_index >= n) throw Error("site index out of range");
    std::vector<TaggedHalfPlane> planes;
    planes.reserve(static_cast<size_t>(n) - 1);
    for (int q = 0; q < n; ++q) {
        if (q == p_index) continue;
        planes.push_back({geom::bisector_halfplane(s.sites[p_index], s.sites[q]),
                          EdgeTag::bisector(p_index, q)});
    }
    ConvexRegion r = geom::intersect_halfplanes(planes, s.box);
    if (r.kind != RegionKind::Polygon) {
        throw Error("internal: voronoi region degenerated");  // site is strictly interior
    }
    return r;
}

namespace {

Rational dist2(const Point2& a, const Point2& b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

// Every vertex of the unclipped diagram is the circumcenter of some site
// triple with no site strictly closer. Only circumcenters outside the open
// box need the empty-circle validation.
bool true_vertices_inside_box(const SiteSet& s) {
    int n = static_cast<int>(s.sites.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            HalfPlane hij = geom::bisector_halfplane(s.sites[i], s.sites[j]);
            for (int k = j + 1; k < n; ++k) {
                HalfPlane hik = geom::bisector_halfplane(s.sites[i], s.sites[k]);
                Rational det = hij.a * hik.b - hik.a * hij.b;
                if (det == 0) continue;  // collinear triple
                Point2 c = geom::line_intersection(hij, hik);
                if (s.box.contains_strict(c)) continue;
                Rational r2 = dist2(c, s.sites[i]);
                bool is_vertex = true;
                for (int m = 0; m < n && is_vertex; ++m) {
                    if (m == i || m == j || m == k) continue;
                    if (dist2(c, s.sites[m]) < r2) is_vertex = false;
                }
                if (is_vertex) return false;
            }
        }
    }
    return true;
}

void run_indexed(int count, int jobs, const std::function<void(int)>& work) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count < 2) {
        for (int i = 0; i < count; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    auto runner = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            work(i);
        }
    };
    std::vector<std::thread> pool;
    int t = std::min(jobs, count);
    pool.reserve(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) pool.emplace_back(runner);
    for (auto& th : pool) th.join();
}

}  // namespace

VoronoiDiagram build_diagram(const SiteSet& s, int jobs) {
    s.validate();
    VoronoiDiagram d;
    d.site_set = s;
    int n = static_cast<int>(s.sites.size());
    d.regions.resize(static_cast<size_t>(n));
    run_indexed(n, jobs, [&](int i) { d.regions[static_cast<size_t>(i)] = voronoi_region(i, s); });
    for (int i = 0; i < n; ++i) {
        if (!d.regions[static_cast<size_t>(i)].contains_strict_interior(s.sites[static_cast<size_t>(i)])) {
            throw Error("internal: site not interior to its region");
        }
    }
    d.vertex_containment_ok = true_vertices_inside_box(s);
    return d;
}

ProximityClass classify_pair(const VoronoiDiagram& d, int i, int j) {
    int n = d.size();
    if (i < 0 || i >= n || j < 0 || j >= n) throw Error("site index out of range");
    if (i == j) throw Error("classify_pair requires distinct indices");
    ConvexRegion x = geom::intersect_convex(d.regions[static_cast<size_t>(i)],
                                            d.regions[static_cast<size_t>(j)]);
    switch (x.kind) {
        case RegionKind::Segment: return ProximityClass::StronglyNear;
        case RegionKind::Point: return ProximityClass::NearOnly;
        case RegionKind::Empty: return ProximityClass::Far;
        case RegionKind::Polygon:
            throw Error("internal: region interiors overlap");
    }
    throw Error("internal: unreachable");
}

std::vector<std::string> Classification::rows() const {
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.emplace_back(cells.begin() + static_cast<long>(i) * n,
                         cells.begin() + static_cast<long>(i + 1) * n);
    }
    return out;
}

Classification classify_all(const VoronoiDiagram& d, int jobs) {
    Classification c;
    c.n = d.size();
    c.cells.assign(static_cast<size_t>(c.n) * c.n, '-');
    run_indexed(c.n, jobs, [&](int i) {
        for (int j = 0; j < c.n; ++j) {
            if (j == i) continue;
            if (j < i) {
                c.cells[static_cast<size_t>(i) * c.n + j] =
                    c.cells[static_cast<size_t>(j) * c.n + i];
                continue;
            }
            c.cells[static_cast<size_t>(i) * c.n + j] =
                proximity_class_code(classify_pair(d, i, j));
        }
    });
    // jobs > 1 can race the j < i mirroring; recompute deterministically.
    if (jobs > 1) {
        for (int i = 0; i < c.n; ++i) {
            for (int j = 0; j < i; ++j) {
                c.cells[static_cast<size_t>(i) * c.n + j] =
                    c.cells[static_cast<size_t>(j) * c.n + i];
            }
        }
    }
    return c;
}

bool RegionAxiomReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const AxiomCheck& c) { return c.pass; });
}

namespace {

struct PairContact {
    RegionKind kind = RegionKind::Empty;
    Point2 point;  // valid when kind == Point
};

std::string pair_str(int i, int j) {
    return "(V" + std::to_string(i) + ", V" + std::to_string(j) + ")";
}

// Does region a share more than one point with the union of the regions in
// family? True when a is itself a member, some member touches a along a
// segment, or two members touch a at distinct single points.
bool union_shares_segmentlike(int a, const std::vector<int>& family,
                              const std::vector<std::vector<PairContact>>& contact) {
    const Point2* first_point = nullptr;
    for (int m : family) {
        if (m == a) return true;
        const PairContact& pc = contact[static_cast<size_t>(a)][static_cast<size_t>(m)];
        if (pc.kind == RegionKind::Segment || pc.kind == RegionKind::Polygon) return true;
        if (pc.kind == RegionKind::Point) {
            if (first_point && !(*first_point == pc.point)) return true;
            first_point = &pc.point;
        }
    }
    return false;
}

}  // namespace

RegionAxiomReport check_strong_axioms_on_regions(
    const VoronoiDiagram& d, const Classification& cls,
    const std::vector<std::vector<bool>>* override_rel) {
    int n = d.size();
    auto rel = [&](int i, int j) -> bool {
        if (override_rel) return (*override_rel)[static_cast<size_t>(i)][static_cast<size_t>(j)];
        return i == j || cls.at(i, j) == 'S';
    };

    std::vector<std::vector<PairContact>> contact(
        static_cast<size_t>(n), std::vector<PairContact>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                contact[static_cast<size_t>(i)][static_cast<size_t>(j)].kind = RegionKind::Polygon;
                continue;
            }
            ConvexRegion x = geom::intersect_convex(d.regions[static_cast<size_t>(i)],
                                                    d.regions[static_cast<size_t>(j)]);
            PairContact pc;
            pc.kind = x.kind;
            if (x.kind == RegionKind::Point) pc.point = x.vertices[0];
            contact[static_cast<size_t>(i)][static_cast<size_t>(j)] = pc;
        }
    }

    RegionAxiomReport report;
    auto add = [&](const std::string& axiom, bool pass, const std::string& witness) {
        report.checks.push_back({axiom, pass, pass ? "" : witness});
    };

    // N0: the empty set is near nothing; the whole space is near every
    // nonempty region (the box contains each region, sharing all its points).
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < n && ok; ++i) {
            const ConvexRegion& r = d.regions[static_cast<size_t>(i)];
            if (geom::intersect_convex(geom::ConvexRegion::empty(), r).kind !=
                RegionKind::Empty) {
                ok = false;
                w = "empty set meets V" + std::to_string(i);
            }
            ConvexRegion whole = geom::box_region(d.site_set.box);
            if (geom::intersect_convex(whole, r).kind != RegionKind::Polygon) {
                ok = false;
                w = "whole space does not share a 2-d piece with V" + std::to_string(i);
            }
        }
        add("N0", ok, w);
    }

    // N1: symmetry.
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = 0; j < n && ok; ++j) {
                if (rel(i, j) != rel(j, i)) {
                    ok = false;
                    w = pair_str(i, j);
                }
            }
        }
        add("N1", ok, w);
    }

    // N2: related regions actually intersect.
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = 0; j < n && ok; ++j) {
                if (rel(i, j) &&
                    contact[static_cast<size_t>(i)][static_cast<size_t>(j)].kind ==
                        RegionKind::Empty) {
                    ok = false;
                    w = pair_str(i, j);
                }
            }
        }
        add("N2", ok, w);
    }

    // N3: relation to one member with nonempty interior extends to the
    // member's union family. Regions are polygons, so the interior guard is
    // always met. Exhaustive over subfamilies up to 12 regions; beyond that
    // singleton families suffice because the union evaluation is monotone in
    // the family.
    {
        bool ok = true;
        std::string w;
        if (n <= 12) {
            for (int a = 0; a < n && ok; ++a) {
                for (unsigned f = 1; f < (1u << n) && ok; ++f) {
                    std::vector<int> family;
                    bool hypothesis = false;
                    for (int m = 0; m < n; ++m) {
                        if (f & (1u << m)) {
                            family.push_back(m);
                            if (rel(a, m)) hypothesis = true;
                        }
                    }
                    if (hypothesis && !union_shares_segmentlike(a, family, contact)) {
                        ok = false;
                        w = "V" + std::to_string(a) + " vs family of size " +
                            std::to_string(family.size());
                    }
                }
            }
        } else {
            for (int a = 0; a < n && ok; ++a) {
                for (int m = 0; m < n && ok; ++m) {
                    if (rel(a, m) && !union_shares_segmentlike(a, {m}, contact)) {
                        ok = false;
                        w = pair_str(a, m);
                    }
                }
            }
        }
        add("N3", ok, w);
    }

    // N4: interior overlap forces the relation. Distinct regions have
    // disjoint interiors, so only the diagonal is non-vacuous.
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = 0; j < n && ok; ++j) {
                bool interiors_meet =
                    contact[static_cast<size_t>(i)][static_cast<size_t>(j)].kind ==
                    RegionKind::Polygon;
                if (interiors_meet && !rel(i, j)) {
                    ok = false;
                    w = pair_str(i, j);
                }
            }
        }
        add("N4", ok, w);
    }

    // N5: a point in the interior of a region is strongly near it (singleton
    // convention); each site witnesses its own region.
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < n && ok; ++i) {
            if (!d.regions[static_cast<size_t>(i)].contains_strict_interior(
                    d.site_set.sites[static_cast<size_t>(i)])) {
                ok = false;
                w = "site " + std::to_string(i);
            }
        }
        add("N5", ok, w);
    }

    // N6: singletons are strongly near exactly themselves; distinct sites are
    // distinct points.
    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = i + 1; j < n && ok; ++j) {
                if (d.site_set.sites[static_cast<size_t>(i)] ==
                    d.site_set.sites[static_cast<size_t>(j)]) {
                    ok = false;
                    w = pair_str(i, j);
                }
            }
        }
        add("N6", ok, w);
    }

    return report;
}

bool subbase_membership(const VoronoiDiagram& d, const Classification& cls, int q,
                        const SubbaseElementRef& elem) {
    int n = d.size();
    if (q < 0 || q >= n || elem.index < 0 || elem.index >= n) {
        throw Error("site index out of range");
    }
    if (elem.kind == SubbaseElementRef::Kind::HitStrong) {
        return q == elem.index || cls.at(q, elem.index) == 'S';
    }
    if (q == elem.index) return false;
    return cls.at(q, elem.index) == 'F';
}

Neighborhood smallest_open_set(const VoronoiDiagram& d, const Classification& cls,
                               int p) {
    int n = d.size();
    if (p < 0 || p >= n) throw Error("site index out of range");
    Neighborhood nb;
    nb.center = p;
    for (int q = 0; q < n; ++q) {
        if (q == p) {
            nb.strongly_near.push_back(q);
            continue;
        }
        switch (cls.at(q, p)) {
            case 'S': nb.strongly_near.push_back(q); break;
            case 'N': nb.near_only.push_back(q); break;
            case 'F': nb.disjoint.push_back(q); break;
            default: throw Error("internal: unclassified pair");
        }
    }
    return nb;
}

UniquenessReport region_uniqueness_check(const VoronoiDiagram& d,
                                         const Classification& cls) {
    int n = d.size();
    for (int p = 0; p < n; ++p) {
        Neighborhood nb = smallest_open_set(d, cls, p);
        for (int q = 0; q < n; ++q) {
            if (q == p) continue;
            bool in_all = true;
            for (int a : nb.strongly_near) {
                // q == a fails here: a region is never segment-classified
                // against itself, so it drops out on its own hit factor.
                if (q == a || cls.at(q, a) != 'S') {
                    in_all = false;
                    break;
                }
            }
            if (in_all) {
                for (int b : nb.disjoint) {
                    if (cls.at(q, b) != 'F') {
                        in_all = false;
                        break;
                    }
                }
            }
            if (in_all) {
                UniquenessReport r;
                r.pass = false;
                r.center = p;
                r.other = q;
                r.detail = "V" + std::to_string(q) +
                           " lies in every subbase factor of the smallest open set of V" +
                           std::to_string(p);
                return r;
            }
        }
    }
    return {};
}

namespace {

Int lcm_int(const Int& a, const Int& b) {
    return boost::multiprecision::lcm(a, b);
}

}  // namespace

OracleStats nearest_site_oracle(const VoronoiDiagram& d, int min_samples,
                                unsigned long long seed) {
    const SiteSet& s = d.site_set;
    int n = d.size();

    // Common denominator of every site and box coordinate.
    Int denom = 1;
    auto feed = [&](const Rational& r) {
        denom = lcm_int(denom, boost::multiprecision::denominator(r));
    };
    for (const Point2& p : s.sites) {
        feed(p.x);
        feed(p.y);
    }
    feed(s.box.xmin);
    feed(s.box.ymin);
    feed(s.box.xmax);
    feed(s.box.ymax);

    const Int grid = 64;  // sample coordinates live on a 1/(64*denom) lattice
    const Int scale = grid * denom;
    auto scaled = [&](const Rational& r) -> Int {
        return Int(boost::multiprecision::numerator(r) * (scale /
                   boost::multiprecision::denominator(r)));
    };

    std::vector<Int> sx(static_cast<size_t>(n)), sy(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        sx[static_cast<size_t>(i)] = scaled(s.sites[static_cast<size_t>(i)].x);
        sy[static_cast<size_t>(i)] = scaled(s.sites[static_cast<size_t>(i)].y);
    }

    // Integer edge constraints A*x + B*y <= C in lattice units per region.
    struct IntEdge {
        Int a, b, c;
    };
    std::vector<std::vector<IntEdge>> edges(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const ConvexRegion& r = d.regions[static_cast<size_t>(i)];
        size_t m = r.vertices.size();
        for (size_t e = 0; e < m; ++e) {
            geom::HalfPlane hp =
                geom::edge_halfplane(r.vertices[e], r.vertices[(e + 1) % m]);
            Int mul = lcm_int(boost::multiprecision::denominator(hp.a),
                              lcm_int(boost::multiprecision::denominator(hp.b),
                                      boost::multiprecision::denominator(hp.c)));
            Int a = Int(boost::multiprecision::numerator(hp.a) *
                        (mul / boost::multiprecision::denominator(hp.a)));
            Int b = Int(boost::multiprecision::numerator(hp.b) *
                        (mul / boost::multiprecision::denominator(hp.b)));
            Int c = Int(boost::multiprecision::numerator(hp.c) *
                        (mul / boost::multiprecision::denominator(hp.c)));
            edges[static_cast<size_t>(i)].push_back({a, b, c * scale});
        }
    }

    long long lox = scaled(s.box.xmin).convert_to<long long>();
    long long hix = scaled(s.box.xmax).convert_to<long long>();
    long long loy = scaled(s.box.ymin).convert_to<long long>();
    long long hiy = scaled(s.box.ymax).convert_to<long long>();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> dx(lox, hix), dy(loy, hiy);

    OracleStats stats;
    long long attempts_cap = static_cast<long long>(min_samples) * 50;
    for (long long attempt = 0; stats.samples < min_samples && attempt < attempts_cap;
         ++attempt) {
        Int px = dx(rng);
        Int py = dy(rng);
        int best = -1;
        bool tie = false;
        Int best_d2 = 0;
        for (int i = 0; i < n; ++i) {
            Int ddx = px - sx[static_cast<size_t>(i)];
            Int ddy = py - sy[static_cast<size_t>(i)];
            Int d2 = ddx * ddx + ddy * ddy;
            if (best < 0 || d2 < best_d2) {
                best = i;
                best_d2 = d2;
                tie = false;
            } else if (d2 == best_d2) {
                tie = true;
            }
        }
        if (tie) {
            ++stats.ties_skipped;
            continue;
        }
        ++stats.samples;
        for (const IntEdge& e : edges[static_cast<size_t>(best)]) {
            if (e.a * px + e.b * py > e.c) {
                ++stats.mismatches;
                break;
            }
        }
    }
    return stats;
}

}  // namespace proxivor::vor
