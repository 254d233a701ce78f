#include "proxivor/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <random>

#include "proxivor/descriptive.hpp"
#include "proxivor/finitetop.hpp"
#include "proxivor/manifold.hpp"
#include "proxivor/voronoi.hpp"

namespace proxivor::selftest {

namespace {

using geom::Box;
using geom::ConvexRegion;
using geom::Point2;
using ftop::Mask;

Point2 pt(long long x, long long y) { return {rat(x), rat(y)}; }

struct Corpus {
    std::vector<vor::VoronoiDiagram> diagrams;
    std::vector<vor::Classification> classifications;
};

vor::SiteSet random_sites(std::mt19937_64& rng, int count) {
    vor::SiteSet s;
    s.box = {rat(-1000), rat(-1000), rat(1000), rat(1000)};
    std::uniform_int_distribution<int> num(-960, 960);
    std::uniform_int_distribution<int> den(1, 8);
    while (static_cast<int>(s.sites.size()) < count) {
        Point2 p{rat(num(rng), den(rng)), rat(num(rng), den(rng))};
        bool dup = false;
        for (const Point2& q : s.sites) dup = dup || q == p;
        if (!dup) s.sites.push_back(p);
    }
    return s;
}

Corpus build_corpus(std::uint64_t seed, int jobs) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count(3, 20);
    Corpus corpus;
    for (int i = 0; i < 200; ++i) {
        vor::VoronoiDiagram d = vor::build_diagram(random_sites(rng, count(rng)), jobs);
        corpus.classifications.push_back(vor::classify_all(d, jobs));
        corpus.diagrams.push_back(std::move(d));
    }
    return corpus;
}

// Color fixture shared by the first two criteria: pieces described as
// {g,r}, {r,g,b}, {r,b} over the topology {{}, {r,g}, {r,g,b}}.
struct ColorFixture {
    desc::FeatureSpace fs{{"r", "g", "b"},
                          ftop::FiniteTopology::from_opens(3, {0b000, 0b011, 0b111})};
    std::vector<int> a{0, 1}, b{2, 3, 4}, c{5, 6};
    desc::Probe probe = [](int p) {
        switch (p) {
            case 0: return 1;  // g
            case 1: return 0;  // r
            case 2: return 0;
            case 3: return 1;
            case 4: return 2;  // b
            case 5: return 0;
            default: return 2;
        }
    };
};

struct Runner {
    std::vector<CriterionResult> results;
    std::ostream& log;

    void run(int id, const std::string& name, double budget,
             const std::function<bool(std::string&)>& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        r.budget_seconds = budget;
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count();
        if (ok && r.seconds > budget) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
        }
        r.pass = ok;
        r.detail = detail;
        log << (r.pass ? "[PASS] " : "[FAIL] ") << "C" << r.id << " " << r.name << " ("
            << r.seconds << "s)" << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
        results.push_back(r);
    }
};

}  // namespace

std::uint64_t seed_from_env() {
    const char* env = std::getenv("PROXIVOR_SEED");
    if (!env || !*env) return 20250810ull;
    return std::strtoull(env, nullptr, 10);
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results) {
        if (!r.pass) return false;
    }
    return true;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream& log,
                                            int jobs) {
    Runner runner{{}, log};
    Corpus corpus;

    runner.run(1, "color descriptions: strongly near and not", 1.0,
               [&](std::string& detail) {
                   ColorFixture f;
                   auto strong = ftop::canonical_strong(f.fs.topology, false);
                   bool ab = desc::desc_strongly_near(f.a, f.b, f.probe, strong);
                   bool bc = desc::desc_strongly_near(f.b, f.c, f.probe, strong);
                   detail = std::string("A~B=") + (ab ? "true" : "false") + " B~C=" +
                            (bc ? "true" : "false");
                   return ab && !bc;
               });

    runner.run(2, "ordered decomposition is descriptively connected", 1.0,
               [&](std::string& detail) {
                   ColorFixture f;
                   auto strong = ftop::canonical_strong(f.fs.topology, false);
                   // Pieces colored {g}, {r,g,b}, {r}; order: singleton,
                   // all-colors, singleton.
                   std::vector<int> a{0}, c{2, 3, 4}, b{1};
                   desc::Probe probe = [](int p) {
                       switch (p) {
                           case 0: return 1;
                           case 1: return 0;
                           case 2: return 0;
                           case 3: return 1;
                           default: return 2;
                       }
                   };
                   desc::ConnectReport rep =
                       desc::desc_connected({a, c, b}, probe, f.fs, strong);
                   detail = rep.connected ? "chain holds" : rep.reason;
                   return rep.connected;
               });

    runner.run(3, "angle interval chains at shared endpoints", 1.0,
               [&](std::string& detail) {
                   desc::AngleInterval half_lo{rat(0), rat(1, 4), true, false};
                   desc::AngleInterval half_hi{rat(1, 4), rat(1, 2), false, false};
                   bool closed_true =
                       desc::interval_chain_connected({half_lo, half_hi});
                   desc::AngleInterval open_lo{rat(0), rat(1, 4), true, true};
                   desc::AngleInterval open_hi{rat(1, 4), rat(1, 2), true, true};
                   bool open_false =
                       !desc::interval_chain_connected({open_lo, open_hi});
                   detail = "shared endpoint counts, open endpoints do not";
                   return closed_true && open_false;
               });

    runner.run(4, "strong axioms on 200 generated diagrams", 60.0,
               [&](std::string& detail) {
                   corpus = build_corpus(seed, jobs);
                   int failures = 0;
                   for (size_t i = 0; i < corpus.diagrams.size(); ++i) {
                       vor::RegionAxiomReport rep = vor::check_strong_axioms_on_regions(
                           corpus.diagrams[i], corpus.classifications[i]);
                       if (!rep.all_pass()) ++failures;
                   }
                   detail = std::to_string(corpus.diagrams.size()) + " diagrams, " +
                            std::to_string(failures) + " failures";
                   return failures == 0;
               });

    runner.run(5, "neighborhood uniqueness on contained diagrams", 60.0,
               [&](std::string& detail) {
                   int contained = 0, failures = 0;
                   for (size_t i = 0; i < corpus.diagrams.size(); ++i) {
                       if (!corpus.diagrams[i].vertex_containment_ok) continue;
                       ++contained;
                       if (!vor::region_uniqueness_check(corpus.diagrams[i],
                                                         corpus.classifications[i])
                                .pass) {
                           ++failures;
                       }
                   }
                   detail = std::to_string(contained) + " contained diagrams, " +
                            std::to_string(failures) + " failures";
                   return contained > 0 && failures == 0;
               });

    runner.run(6, "cocircular square: adjacent edges, diagonal points", 1.0,
               [&](std::string& detail) {
                   vor::SiteSet s{{pt(0, 0), pt(4, 0), pt(0, 4), pt(4, 4)},
                                  {rat(-1), rat(-1), rat(5), rat(5)}};
                   vor::VoronoiDiagram d = vor::build_diagram(s);
                   using PC = vor::ProximityClass;
                   bool ok = vor::classify_pair(d, 0, 1) == PC::StronglyNear &&
                             vor::classify_pair(d, 0, 2) == PC::StronglyNear &&
                             vor::classify_pair(d, 1, 3) == PC::StronglyNear &&
                             vor::classify_pair(d, 2, 3) == PC::StronglyNear &&
                             vor::classify_pair(d, 0, 3) == PC::NearOnly &&
                             vor::classify_pair(d, 1, 2) == PC::NearOnly;
                   detail = "exact rational classification";
                   return ok;
               });

    runner.run(7, "nearest-site oracle over the corpus", 120.0,
               [&](std::string& detail) {
                   long long samples = 0, mismatches = 0;
                   for (size_t i = 0; i < corpus.diagrams.size(); ++i) {
                       vor::OracleStats st = vor::nearest_site_oracle(
                           corpus.diagrams[i], 10000, seed ^ (0x9e3779b9ull * (i + 1)));
                       samples += st.samples;
                       mismatches += st.mismatches;
                       if (st.samples < 10000) {
                           detail = "diagram " + std::to_string(i) + " undersampled";
                           return false;
                       }
                   }
                   detail = std::to_string(samples) + " samples, " +
                            std::to_string(mismatches) + " mismatches";
                   return mismatches == 0;
               });

    runner.run(8, "containment equivalence sweep on discrete carriers", 120.0,
               [&](std::string& detail) {
                   long long equivalent = 0, vacuous = 0, counterexamples = 0;
                   for (int n = 1; n <= 4; ++n) {
                       ftop::FiniteTopology t = ftop::FiniteTopology::discrete(n);
                       auto lod = ftop::lodato_nonempty_intersection(t);
                       auto str = ftop::canonical_strong(t);
                       ftop::LemmaSweepHarness harness(t, lod, str);
                       const std::vector<Mask>& ro = harness.regular_opens();
                       std::vector<std::vector<Mask>> lists;
                       for (size_t i = 0; i < ro.size(); ++i) {
                           lists.push_back({ro[i]});
                           for (size_t j = i; j < ro.size(); ++j) {
                               lists.push_back({ro[i], ro[j]});
                           }
                       }
                       Mask full = t.full();
                       for (const auto& ulist : lists) {
                           for (const auto& vlist : lists) {
                               for (Mask b = 1; b <= full; ++b) {
                                   for (Mask d = 1; d <= full; ++d) {
                                       ftop::LemmaVerdict v =
                                           harness.check(ulist, vlist, b, d);
                                       switch (v.status) {
                                           case ftop::LemmaVerdict::Status::Equivalent:
                                               ++equivalent;
                                               break;
                                           case ftop::LemmaVerdict::Status::
                                               HypothesesNotSatisfied:
                                               ++vacuous;
                                               break;
                                           default:
                                               ++counterexamples;
                                       }
                                   }
                               }
                           }
                       }
                   }
                   detail = std::to_string(equivalent) + " equivalent, " +
                            std::to_string(vacuous) + " vacuous-skipped, " +
                            std::to_string(counterexamples) + " counterexamples";
                   return counterexamples == 0 && equivalent > 0;
               });

    runner.run(9, "regular-set lattice over all four-point topologies", 30.0,
               [&](std::string& detail) {
                   std::vector<ftop::FiniteTopology> all = ftop::enumerate_topologies(4);
                   if (all.size() != 355) {
                       detail = "expected 355 topologies, got " +
                                std::to_string(all.size());
                       return false;
                   }
                   for (const ftop::FiniteTopology& t : all) {
                       std::vector<Mask> ro = ftop::regular_open_sets(t);
                       std::vector<Mask> rcl = ftop::regular_closed_sets(t);
                       size_t nonempty_ro = 0;
                       for (Mask a : ro) {
                           if (a == 0) continue;
                           ++nonempty_ro;
                           Mask f = t.closure(a);
                           bool in_rcl =
                               std::find(rcl.begin(), rcl.end(), f) != rcl.end();
                           if (!in_rcl || t.interior(f) != a) {
                               detail = "closure map misbehaves";
                               return false;
                           }
                       }
                       if (nonempty_ro != rcl.size()) {
                           detail = "regular families differ in size";
                           return false;
                       }
                       for (Mask f : rcl) {
                           if (t.closure(t.interior(f)) != f) {
                               detail = "interior map misbehaves";
                               return false;
                           }
                       }
                       for (Mask a = 0; a <= t.full(); ++a) {
                           Mask once = t.interior(t.closure(a));
                           if (t.interior(t.closure(once)) != once) {
                               detail = "interior-closure not idempotent";
                               return false;
                           }
                       }
                   }
                   detail = "355 topologies checked";
                   return true;
               });

    runner.run(10, "atlas audits: witnesses, implication, non-converse", 30.0,
               [&](std::string& detail) {
                   desc::FeatureSpace fs{
                       {"r", "g", "b"},
                       ftop::FiniteTopology::from_opens(3, {0b000, 0b011, 0b111})};
                   auto strong = ftop::canonical_strong(fs.topology);
                   std::mt19937_64 rng(seed ^ 0xa71a5ull);
                   std::uniform_int_distribution<int> coord(0, 40), span(2, 10),
                       nch(1, 6), lab(0, 2);
                   const char* names[3] = {"r", "g", "b"};

                   std::vector<man::Atlas> atlases;
                   for (int t = 0; t < 50; ++t) {
                       man::Atlas atlas;
                       int k = nch(rng);
                       for (int c = 0; c < k; ++c) {
                           long long x0 = coord(rng), y0 = coord(rng);
                           man::Chart ch;
                           ch.id = "A" + std::to_string(t) + "C" + std::to_string(c);
                           ch.kind = man::Chart::ImageKind::Pieces;
                           ch.pieces = {geom::box_region({rat(x0), rat(y0),
                                                          rat(x0 + span(rng)),
                                                          rat(y0 + span(rng))})};
                           ch.piece_labels = {names[lab(rng)]};
                           atlas.charts.push_back(ch);
                       }
                       atlases.push_back(std::move(atlas));
                   }

                   long long witness_checks = 0, audits = 0, non_converse = 0;
                   for (size_t t = 0; t + 1 < atlases.size(); ++t) {
                       const man::Atlas& a1 = atlases[t];
                       const man::Atlas& a2 = atlases[t + 1];
                       for (const man::Chart& ca : a1.charts) {
                           for (const man::Chart& cb : a2.charts) {
                               if (man::charts_strongly_near(ca, cb)) {
                                   ++witness_checks;
                                   if (!man::chart_near_witness(ca, cb)) {
                                       detail = "missing identity witness";
                                       return false;
                                   }
                               }
                           }
                       }
                       std::vector<const man::Chart*> all;
                       for (const man::Chart& c : a1.charts) all.push_back(&c);
                       for (const man::Chart& c : a2.charts) all.push_back(&c);
                       man::PlaneProbe probe = man::label_probe(all, fs);
                       // Throws on any snd => snd_atlases violation.
                       man::AtlasDescReport rep = man::atlases_descriptively_near(
                           a1, a2, probe, fs, strong, rat(2));
                       audits += static_cast<long long>(rep.audits.size());
                       non_converse +=
                           static_cast<long long>(rep.non_converse_witnesses.size());
                   }

                   // Stored non-converse fixture: both charts described as
                   // {r,b}, whose interior is empty.
                   man::Atlas f1, f2;
                   man::Chart c1;
                   c1.id = "F1";
                   c1.pieces = {geom::box_region({rat(0), rat(0), rat(2), rat(2)}),
                                geom::box_region({rat(4), rat(0), rat(6), rat(2)})};
                   c1.piece_labels = {"r", "b"};
                   man::Chart c2 = c1;
                   c2.id = "F2";
                   c2.pieces = {geom::box_region({rat(10), rat(0), rat(12), rat(2)}),
                                geom::box_region({rat(14), rat(0), rat(16), rat(2)})};
                   f1.charts = {c1};
                   f2.charts = {c2};
                   man::PlaneProbe fixture_probe = man::label_probe({&c1, &c2}, fs);
                   man::AtlasDescReport fixture = man::atlases_descriptively_near(
                       f1, f2, fixture_probe, fs, strong, rat(1));
                   if (fixture.non_converse_witnesses.empty() || !fixture.near) {
                       detail = "non-converse fixture did not witness";
                       return false;
                   }
                   non_converse +=
                       static_cast<long long>(fixture.non_converse_witnesses.size());

                   detail = std::to_string(witness_checks) + " witnesses, " +
                            std::to_string(audits) + " audits, " +
                            std::to_string(non_converse) + " non-converse";
                   return non_converse > 0;
               });

    runner.run(11, "overlapping voronoi charts share a region edge", 1.0,
               [&](std::string& detail) {
                   // One four-site strip diagram split into two windows that
                   // meet along the shared region edge at x = 3.
                   man::Atlas m1, m2;
                   man::Chart s1, s2;
                   s1.id = "S1";
                   s1.kind = man::Chart::ImageKind::Voronoi;
                   s1.diagram = vor::build_diagram(
                       {{pt(0, 0), pt(2, 0)}, {rat(-1), rat(-1), rat(3), rat(1)}});
                   s2.id = "S2";
                   s2.kind = man::Chart::ImageKind::Voronoi;
                   s2.diagram = vor::build_diagram(
                       {{pt(4, 0), pt(6, 0)}, {rat(3), rat(-1), rat(7), rat(1)}});
                   m1.charts = {s1};
                   m2.charts = {s2};
                   man::VorNearResult r = man::voronoi_manifolds_strongly_near(m1, m2);
                   if (!r.near) {
                       detail = "edge-sharing split not detected";
                       return false;
                   }
                   ConvexRegion shared = geom::intersect_convex(
                       s1.convex_pieces()[static_cast<size_t>(r.region_a)],
                       s2.convex_pieces()[static_cast<size_t>(r.region_b)]);
                   bool edge_pair = shared.kind == geom::RegionKind::Segment;

                   // Windows with two-dimensional overlap are detected too.
                   man::Atlas m3;
                   man::Chart s3;
                   s3.id = "S3";
                   s3.kind = man::Chart::ImageKind::Voronoi;
                   s3.diagram = vor::build_diagram(
                       {{pt(4, 0), pt(6, 0)}, {rat(5, 2), rat(-1), rat(7), rat(1)}});
                   m3.charts = {s3};
                   bool overlap_near = man::voronoi_manifolds_strongly_near(m1, m3).near;

                   detail = std::string("edge witness=") +
                            (edge_pair ? "segment" : "other") + ", overlap split near";
                   return r.near && edge_pair && overlap_near;
               });

    return runner.results;
}

}  // namespace proxivor::selftest
