#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "proxivor/finitetop.hpp"

using namespace proxivor;
using namespace proxivor::ftop;

namespace {

// Points 0=r, 1=g, 2=b with opens {}, {r,g}, {r,g,b}.
FiniteTopology rgb_topology() { return FiniteTopology::from_opens(3, {0b000, 0b011, 0b111}); }

constexpr Mask R = 0b001, G = 0b010, B = 0b100;

bool axiom_failed(const AxiomReport& rep, const std::string& name) {
    for (const AxiomCheck& c : rep.checks) {
        if (c.axiom == name) return !c.pass && !c.witness.empty();
    }
    return false;
}

}  // namespace

TEST_CASE("topology validation") {
    CHECK_THROWS_AS(FiniteTopology::from_opens(2, {0}), Error);  // missing X
    CHECK_NOTHROW(FiniteTopology::from_opens(2, {0, 1, 2, 3}));
    CHECK_NOTHROW(FiniteTopology::from_opens(2, {0, 3}));
    CHECK_THROWS_AS(FiniteTopology::from_opens(3, {0, 1, 2, 7}), Error);  // 1|2 missing
}

TEST_CASE("interior and closure on the rgb topology") {
    FiniteTopology t = rgb_topology();
    CHECK(t.interior(R | B) == 0);          // no open set inside {r,b}
    CHECK(t.interior(R | G) == (R | G));    // open
    CHECK(t.closure(R) == (R | G | B));     // closed sets are {}, {b}, X
    CHECK(t.closure(B) == B);
    CHECK(t.interior(R) == 0);
    CHECK(t.closure(R | G) == t.full());
}

TEST_CASE("proximal closure under different relations") {
    FiniteTopology d2 = FiniteTopology::discrete(2);
    ProximityRelation rel = lodato_nonempty_intersection(d2);
    CHECK(proximal_closure(0b01, rel) == 0b01);
    CHECK(proximal_closure(0b00, rel) == 0);

    FiniteTopology sier = FiniteTopology::sierpinski();
    ProximityRelation clcl = lodato_clcl(sier);
    // cl{0} = X meets cl{1} = {1}: point 0 is proximally close to {1}.
    CHECK(proximal_closure(0b10, clcl) == 0b11);
}

TEST_CASE("nonempty intersection is a compatible Lodato proximity on discrete spaces") {
    ProximityRelation rel = lodato_nonempty_intersection(FiniteTopology::discrete(3));
    AxiomReport rep = check_lodato(rel);
    CHECK(rep.axioms_pass());
    CHECK(rep.compatible.value());
    CHECK(rep.separated.value());
}

TEST_CASE("a relation with the empty set near X fails P1 with witness") {
    FiniteTopology d2 = FiniteTopology::discrete(2);
    std::vector<std::pair<Mask, Mask>> pairs;
    for (Mask a = 0; a < 4; ++a) {
        for (Mask b = 0; b < 4; ++b) {
            if (a & b) pairs.push_back({a, b});
        }
    }
    pairs.push_back({0, 3});  // empty near X
    pairs.push_back({3, 0});
    ProximityRelation rel = ProximityRelation::from_pairs(d2, Role::Lodato, pairs);
    AxiomReport rep = check_lodato(rel);
    CHECK(axiom_failed(rep, "P1"));
}

TEST_CASE("closure-intersection on the Sierpinski space passes P0-P4 but is incompatible") {
    ProximityRelation rel = lodato_clcl(FiniteTopology::sierpinski());
    AxiomReport rep = check_lodato(rel);
    CHECK(rep.axioms_pass());
    CHECK_FALSE(rep.compatible.value());
    CHECK_FALSE(rep.compatibility_witness.empty());
}

TEST_CASE("canonical strong relation on small topologies passes every axiom") {
    for (int n = 2; n <= 4; ++n) {
        for (const FiniteTopology& t : enumerate_topologies(n)) {
            ProximityRelation rel = canonical_strong(t);
            AxiomReport rep = check_strong(rel);
            CHECK(rep.axioms_pass());
        }
    }
}

TEST_CASE("an always-true relation fails N2 and N0") {
    FiniteTopology d2 = FiniteTopology::discrete(2);
    std::vector<std::pair<Mask, Mask>> pairs;
    for (Mask a = 0; a < 4; ++a)
        for (Mask b = 0; b < 4; ++b) pairs.push_back({a, b});
    ProximityRelation rel = ProximityRelation::from_pairs(d2, Role::Strong, pairs);
    AxiomReport rep = check_strong(rel);
    CHECK(axiom_failed(rep, "N2"));  // {0} near {1} but disjoint
    CHECK(axiom_failed(rep, "N0"));
}

TEST_CASE("an equality-only relation fails N4 on overlapping opens") {
    FiniteTopology d2 = FiniteTopology::discrete(2);
    std::vector<std::pair<Mask, Mask>> pairs;
    for (Mask a = 1; a < 4; ++a) pairs.push_back({a, a});
    ProximityRelation rel = ProximityRelation::from_pairs(d2, Role::Strong, pairs);
    AxiomReport rep = check_strong(rel);
    CHECK(axiom_failed(rep, "N4"));  // int{0} meets int{0,1}
}

TEST_CASE("canonical strong evaluations on the rgb topology") {
    FiniteTopology t = rgb_topology();
    ProximityRelation with_x = canonical_strong(t, true);
    ProximityRelation no_x = canonical_strong(t, false);

    CHECK(with_x.near(R | G, R | G | B));
    CHECK(no_x.near(R | G, R | G | B));  // interiors {r,g} and X meet

    // The whole-space clause is the only difference: X vs {r,b}.
    CHECK(with_x.near(R | G | B, R | B));
    CHECK_FALSE(no_x.near(R | G | B, R | B));  // int{r,b} is empty

    CHECK(with_x.near(G, G));  // singleton with itself
    CHECK_FALSE(with_x.near(G, B));
    CHECK_FALSE(with_x.near(0, R));
    CHECK(with_x.near(G, R | G));  // g inside int{r,g}
    CHECK_FALSE(no_x.near(B, R | B));  // b not inside int{r,b} = {}
}

TEST_CASE("regular sets of standard spaces") {
    FiniteTopology d3 = FiniteTopology::discrete(3);
    CHECK(regular_open_sets(d3).size() == 8);
    CHECK(regular_closed_sets(d3).size() == 7);
    CHECK(rcl_star(d3).size() == 7);

    FiniteTopology t = rgb_topology();
    CHECK(regular_open_sets(t) == std::vector<Mask>{0, 7});
    CHECK(regular_closed_sets(t) == std::vector<Mask>{7});
    CHECK(rcl_star(t) == std::vector<Mask>{1, 2, 4, 7});

    FiniteTopology sier = FiniteTopology::sierpinski();
    CHECK(regular_open_sets(sier) == std::vector<Mask>{0, 3});
}

TEST_CASE("strong inclusion on discrete spaces is subset containment") {
    FiniteTopology d3 = FiniteTopology::discrete(3);
    ProximityRelation rel = lodato_nonempty_intersection(d3);
    for (Mask a = 0; a < 8; ++a) {
        for (Mask b = 0; b < 8; ++b) {
            CHECK(strongly_included(a, b, rel) == ((a & ~b) == 0));
        }
    }
    // Empty set is strongly included everywhere; X in X.
    CHECK(strongly_included(0, 0b101, rel));
    CHECK(strongly_included(7, 7, rel));
}

TEST_CASE("regular weak R0 holds on discrete spaces and fails for a chatty relation") {
    FiniteTopology d3 = FiniteTopology::discrete(3);
    CHECK(is_regularly_weakly_r0(d3, lodato_nonempty_intersection(d3)).ok);

    FiniteTopology t = rgb_topology();
    // RO = {0, X}; the only nonempty difference is X itself and C = X works.
    ProximityRelation clcl = lodato_clcl(t);
    CHECK(is_regularly_weakly_r0(t, clcl).ok);

    // A relation where every nonempty pair is near leaves nothing strongly
    // included in a proper difference.
    std::vector<std::pair<Mask, Mask>> pairs;
    for (Mask a = 1; a < 8; ++a)
        for (Mask b = 1; b < 8; ++b) pairs.push_back({a, b});
    ProximityRelation chatty = ProximityRelation::from_pairs(d3, Role::Lodato, pairs);
    WeaklyR0Result r = is_regularly_weakly_r0(d3, chatty);
    CHECK_FALSE(r.ok);
    CHECK((r.a & ~r.b) != 0);
}

TEST_CASE("sigma closes families under finite unions") {
    CHECK(sigma({0}) == std::vector<Mask>{0});
    CHECK(sigma({0b001, 0b010}) == std::vector<Mask>{0b001, 0b010, 0b011});
    std::vector<Mask> chain{0b001, 0b011, 0b111};
    CHECK(sigma(chain) == chain);
}

TEST_CASE("subbase elements over a discrete space and the rgb topology") {
    FiniteTopology d3 = FiniteTopology::discrete(3);
    ProximityRelation lod = lodato_nonempty_intersection(d3);
    ProximityRelation str = canonical_strong(d3);
    std::vector<Mask> all_nonempty;
    for (Mask m = 1; m < 8; ++m) all_nonempty.push_back(m);
    std::vector<SubbaseElement> elems = subbase_elements(d3, lod, str, all_nonempty);
    int hits = 0;
    for (const SubbaseElement& e : elems) {
        if (e.kind == SubbaseElement::Kind::HitStrong) ++hits;
    }
    CHECK(hits == 7);

    FiniteTopology t = rgb_topology();
    ProximityRelation strt = canonical_strong(t);
    CHECK(hit_strong_members(t, strt, t.full()) == rcl_star(t));
    CHECK(hit_strong_members(t, strt, 0).empty());
}

TEST_CASE("subbase elements reject non-closed family members") {
    FiniteTopology t = rgb_topology();
    ProximityRelation lod = lodato_clcl(t);
    ProximityRelation str = canonical_strong(t);
    CHECK_THROWS_AS(subbase_elements(t, lod, str, {R | G}), Error);  // {r,g} is open, not closed
}

TEST_CASE("containment equivalence holds exhaustively on small discrete spaces") {
    for (int n = 2; n <= 3; ++n) {
        FiniteTopology t = FiniteTopology::discrete(n);
        ProximityRelation lod = lodato_nonempty_intersection(t);
        ProximityRelation str = canonical_strong(t);
        std::vector<Mask> ro = regular_open_sets(t);
        Mask full = t.full();
        long long equivalent = 0, vacuous = 0;
        for (Mask u1 : ro) {
            for (Mask v1 : ro) {
                for (Mask b = 1; b <= full; ++b) {
                    for (Mask d = 1; d <= full; ++d) {
                        LemmaVerdict v =
                            lemma_equivalence_check(t, lod, str, {u1}, {v1}, b, d);
                        REQUIRE(v.status != LemmaVerdict::Status::Counterexample);
                        if (v.status == LemmaVerdict::Status::Equivalent) {
                            ++equivalent;
                        } else {
                            ++vacuous;
                        }
                    }
                }
            }
        }
        CHECK(equivalent > 0);
        CHECK(vacuous > 0);  // e.g. a factor list containing the empty set
    }
}

TEST_CASE("identical factor lists make both containment sides true") {
    FiniteTopology t = FiniteTopology::discrete(3);
    ProximityRelation lod = lodato_nonempty_intersection(t);
    ProximityRelation str = canonical_strong(t);
    LemmaVerdict v = lemma_equivalence_check(t, lod, str, {0b011, 0b101}, {0b011, 0b101},
                                             0b100, 0b100);
    CHECK(v.status == LemmaVerdict::Status::Equivalent);
    CHECK(v.side_a);
    CHECK(v.side_b);
}

TEST_CASE("non-T1 carriers are rejected as hypothesis failures") {
    FiniteTopology sier = FiniteTopology::sierpinski();
    ProximityRelation lod = lodato_clcl(sier);
    ProximityRelation str = canonical_strong(sier);
    LemmaVerdict v = lemma_equivalence_check(sier, lod, str, {0b11}, {0b11}, 0b11, 0b11);
    CHECK(v.status == LemmaVerdict::Status::HypothesesNotSatisfied);

    CountabilityResult c = second_countability_condition_check(sier, lod, {0b10}, {0b10});
    CHECK(c.status == CountabilityResult::Status::HypothesesNotSatisfied);
}

TEST_CASE("second countability condition on discrete spaces") {
    FiniteTopology d3 = FiniteTopology::discrete(3);
    ProximityRelation lod = lodato_nonempty_intersection(d3);
    std::vector<Mask> all_nonempty;
    for (Mask m = 1; m < 8; ++m) all_nonempty.push_back(m);

    CountabilityResult ok = second_countability_condition_check(d3, lod, all_nonempty,
                                                                all_nonempty);
    CHECK(ok.status == CountabilityResult::Status::Holds);

    // Empty candidate family fails as soon as some pair is far.
    CountabilityResult fail = second_countability_condition_check(d3, lod, {0b001}, {});
    CHECK(fail.status == CountabilityResult::Status::Fails);
    CHECK(fail.witness_b == 0b001);

    // X in the family is never far from anything: vacuously fine.
    CountabilityResult vac = second_countability_condition_check(d3, lod, {0b111}, {});
    CHECK(vac.status == CountabilityResult::Status::Holds);
}

TEST_CASE("355 labeled topologies on four points; closure maps are inverse bijections") {
    std::vector<FiniteTopology> all = enumerate_topologies(4);
    CHECK(all.size() == 355);
    for (const FiniteTopology& t : all) {
        std::vector<Mask> ro = regular_open_sets(t);
        std::vector<Mask> rcl = regular_closed_sets(t);
        std::vector<Mask> ro_nonempty;
        for (Mask a : ro) {
            if (a != 0) ro_nonempty.push_back(a);
        }
        REQUIRE(ro_nonempty.size() == rcl.size());
        std::vector<Mask> images;
        for (Mask a : ro_nonempty) {
            Mask f = t.closure(a);
            CHECK(std::find(rcl.begin(), rcl.end(), f) != rcl.end());
            CHECK(t.interior(f) == a);  // o(c(A)) = A
            images.push_back(f);
        }
        std::sort(images.begin(), images.end());
        images.erase(std::unique(images.begin(), images.end()), images.end());
        CHECK(images.size() == rcl.size());  // c is onto RCL
        for (Mask f : rcl) {
            CHECK(t.closure(t.interior(f)) == f);  // c(o(F)) = F
        }
        for (Mask a = 0; a <= t.full(); ++a) {
            Mask once = t.interior(t.closure(a));
            CHECK(t.interior(t.closure(once)) == once);
        }
    }
}

TEST_CASE("sweep harness agrees with the direct lemma check") {
    FiniteTopology t = FiniteTopology::discrete(3);
    ProximityRelation lod = lodato_nonempty_intersection(t);
    ProximityRelation str = canonical_strong(t);
    LemmaSweepHarness harness(t, lod, str);
    Mask full = t.full();
    for (Mask u1 = 0; u1 <= full; ++u1) {
        for (Mask u2 = u1; u2 <= full; ++u2) {
            for (Mask b = 1; b <= full; ++b) {
                for (Mask d = 1; d <= full; ++d) {
                    LemmaVerdict direct =
                        lemma_equivalence_check(t, lod, str, {u1, u2}, {u2}, b, d);
                    LemmaVerdict fast = harness.check({u1, u2}, {u2}, b, d);
                    CHECK(direct.status == fast.status);
                    if (direct.status == LemmaVerdict::Status::Equivalent) {
                        CHECK(direct.side_a == fast.side_a);
                        CHECK(direct.side_b == fast.side_b);
                    }
                }
            }
        }
    }
}

TEST_CASE("sampled five-point instances stay equivalent") {
    FiniteTopology t = FiniteTopology::discrete(5);
    ProximityRelation lod = lodato_nonempty_intersection(t);
    ProximityRelation str = canonical_strong(t);
    LemmaSweepHarness harness(t, lod, str);
    std::mt19937_64 rng(101);
    Mask full = t.full();
    auto pick = [&](Mask lo) { return static_cast<Mask>(lo + rng() % (full - lo + 1)); };
    long long equivalent = 0;
    for (int i = 0; i < 200000; ++i) {
        std::vector<Mask> ulist{pick(0)};
        if (rng() & 1) ulist.push_back(pick(0));
        std::vector<Mask> vlist{pick(0)};
        if (rng() & 1) vlist.push_back(pick(0));
        LemmaVerdict v = harness.check(ulist, vlist, pick(1), pick(1));
        REQUIRE(v.status != LemmaVerdict::Status::Counterexample);
        if (v.status == LemmaVerdict::Status::Equivalent) ++equivalent;
    }
    CHECK(equivalent > 100000);
}

TEST_CASE("oversized carriers are rejected by the axiom checkers") {
    FiniteTopology big = FiniteTopology::discrete(13);
    ProximityRelation rel = lodato_nonempty_intersection(big);
    CHECK_THROWS_AS(check_strong(rel), Error);
    CHECK_THROWS_AS(check_lodato(rel), Error);
}
