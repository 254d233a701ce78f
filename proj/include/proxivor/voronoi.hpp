#pragma once

#include <string>
#include <vector>

#include "proxivor/geom.hpp"

namespace proxivor::vor {

using geom::Box;
using geom::ConvexRegion;
using geom::Point2;

struct SiteSet {
    std::vector<Point2> sites;
    Box box;

    // Throws unless sites are pairwise distinct and strictly inside the box.
    void validate() const;
};

struct VoronoiDiagram {
    SiteSet site_set;
    std::vector<ConvexRegion> regions;  // one per site, same order
    // True when every vertex of the unclipped diagram lies strictly inside
    // the box; clipping then provably preserves all pair classifications.
    bool vertex_containment_ok = true;

    int size() const { return static_cast<int>(site_set.sites.size()); }
};

enum class ProximityClass { StronglyNear, NearOnly, Far };

const char* proximity_class_name(ProximityClass c);
char proximity_class_code(ProximityClass c);  // 'S' / 'N' / 'F'

ConvexRegion voronoi_region(int p_index, const SiteSet& s);

VoronoiDiagram build_diagram(const SiteSet& s, int jobs = 1);

ProximityClass classify_pair(const VoronoiDiagram& d, int i, int j);

// All-pairs classification, single-writer-then-frozen. Cell codes are
// 'S'/'N'/'F' off the diagonal and '-' on it (a region is never
// segment-classified against itself).
struct Classification {
    int n = 0;
    std::vector<char> cells;

    char at(int i, int j) const { return cells[static_cast<size_t>(i) * n + j]; }
    std::vector<std::string> rows() const;
};

Classification classify_all(const VoronoiDiagram& d, int jobs = 1);

struct AxiomCheck {
    std::string axiom;
    bool pass = true;
    std::string witness;
};

struct RegionAxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_pass() const;
};

// Verifies the strong-proximity axioms N0-N6 for the shares-more-than-one-
// point relation over the region family (reflexive on the diagonal). An
// override table, when given, replaces the region-pair relation and serves
// as a negative control; unions are always evaluated geometrically.
RegionAxiomReport check_strong_axioms_on_regions(
    const VoronoiDiagram& d, const Classification& cls,
    const std::vector<std::vector<bool>>* override_rel = nullptr);

struct SubbaseElementRef {
    enum class Kind { HitStrong, FarMiss };  // int(V_p)^ / V_s^+
    Kind kind;
    int index;
};

bool subbase_membership(const VoronoiDiagram& d, const Classification& cls, int q,
                        const SubbaseElementRef& elem);

// Factors of the smallest open set around V_p in the hit-and-miss topology:
// strongly-near family (self-inclusive) and disjoint family. The remaining
// sites share exactly one point with V_p.
struct Neighborhood {
    int center = -1;
    std::vector<int> strongly_near;
    std::vector<int> near_only;
    std::vector<int> disjoint;
};

Neighborhood smallest_open_set(const VoronoiDiagram& d, const Classification& cls,
                               int p);

struct UniquenessReport {
    bool pass = true;
    int center = -1;
    int other = -1;
    std::string detail;
};

// Confirms that no region other than V_p lies in every subbase factor of
// smallest_open_set(p). Membership of a candidate region is decided by the
// strict pair classification alone.
UniquenessReport region_uniqueness_check(const VoronoiDiagram& d,
                                         const Classification& cls);

struct OracleStats {
    long long samples = 0;
    long long mismatches = 0;
    long long ties_skipped = 0;
};

// Pseudo-random sample points off all bisectors: the region containing each
// point must be the region of its unique nearest site. Arithmetic is exact
// (integer-scaled).
OracleStats nearest_site_oracle(const VoronoiDiagram& d, int min_samples,
                                unsigned long long seed);

}  // namespace proxivor::vor
