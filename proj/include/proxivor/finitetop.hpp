#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxivor/rational.hpp"

namespace proxivor::ftop {

// Subsets of a carrier with at most 20 points, as bitmasks.
using Mask = std::uint32_t;

constexpr int kMaxCarrier = 20;
// Exhaustive axiom sweeps are exponential in the carrier size.
constexpr int kMaxAxiomCarrier = 12;

std::string mask_str(Mask m, int n);

struct FiniteTopology {
    int n = 0;
    std::vector<Mask> opens;          // sorted, unique
    std::vector<char> open_lookup;    // size 1 << n

    static FiniteTopology from_opens(int n, std::vector<Mask> opens);
    static FiniteTopology discrete(int n);
    static FiniteTopology indiscrete(int n);
    static FiniteTopology sierpinski();  // opens {}, {0}, {0,1}

    Mask full() const { return static_cast<Mask>((1u << n) - 1); }
    bool is_open(Mask m) const { return open_lookup[m] != 0; }
    bool is_closed(Mask m) const { return is_open(full() & ~m); }
    Mask interior(Mask a) const;
    Mask closure(Mask a) const;
    bool is_t1() const;
};

// All topologies on n labeled points (n <= 4; there are 355 on four).
std::vector<FiniteTopology> enumerate_topologies(int n);

enum class Role { Lodato, Strong };

// A total nearness relation on subset pairs: one of the built-in evaluators
// or an explicit table.
struct ProximityRelation {
    enum class Builtin {
        Custom,
        NonemptyIntersection,   // A & B != 0
        ClClIntersection,       // cl A & cl B != 0
        InteriorIntersection,   // canonical strong relation, whole-space clause on
        InteriorIntersectionNoX // same with the whole-space clause off
    };

    Role role = Role::Lodato;
    Builtin builtin = Builtin::Custom;
    FiniteTopology carrier;
    std::vector<char> table;       // Custom: index (A << n) | B
    std::vector<Mask> interiors;   // cached per subset
    std::vector<Mask> closures;

    bool near(Mask a, Mask b) const;
    bool far(Mask a, Mask b) const { return !near(a, b); }

    static ProximityRelation builtin_relation(const FiniteTopology& t, Role role,
                                              Builtin b);
    static ProximityRelation from_pairs(const FiniteTopology& t, Role role,
                                        const std::vector<std::pair<Mask, Mask>>& pairs);
};

// Canonical strong proximity from interior intersection, with the singleton
// conventions; x_clause controls whether the whole space is strongly near
// every nonempty set (the axiom-faithful reading).
ProximityRelation canonical_strong(const FiniteTopology& t, bool x_clause = true);
ProximityRelation lodato_nonempty_intersection(const FiniteTopology& t);
ProximityRelation lodato_clcl(const FiniteTopology& t);

Mask proximal_closure(Mask a, const ProximityRelation& rel);

struct AxiomCheck {
    std::string axiom;
    bool pass = true;
    std::string witness;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    // Lodato only: proximal closure coincides with topological closure.
    std::optional<bool> compatible;
    std::string compatibility_witness;
    // Lodato only: separation axiom P5.
    std::optional<bool> separated;

    bool axioms_pass() const;
};

AxiomReport check_lodato(const ProximityRelation& rel);
AxiomReport check_strong(const ProximityRelation& rel);

std::vector<Mask> regular_open_sets(const FiniteTopology& t);
std::vector<Mask> regular_closed_sets(const FiniteTopology& t);  // nonempty
std::vector<Mask> rcl_star(const FiniteTopology& t);             // RCL + singletons

// A <<_delta B: A is far from the complement of B.
bool strongly_included(Mask a, Mask b, const ProximityRelation& rel);

struct WeaklyR0Result {
    bool ok = true;
    Mask a = 0, b = 0;  // witness difference on failure
};

// Every nonempty difference of regular open sets proximally contains a
// nonempty regular closed set.
WeaklyR0Result is_regularly_weakly_r0(const FiniteTopology& t,
                                      const ProximityRelation& rel);

// Closure of a family under finite (pairwise) unions; keeps each member.
std::vector<Mask> sigma(const std::vector<Mask>& family);

struct SubbaseElement {
    enum class Kind { HitStrong, FarMiss };
    Kind kind;
    Mask parameter;             // the regular open V, or A with X\A in the family
    std::vector<Mask> members;  // elements of RCL*(X)
};

std::vector<Mask> hit_strong_members(const FiniteTopology& t,
                                     const ProximityRelation& strong, Mask v);
std::vector<Mask> far_miss_members(const FiniteTopology& t,
                                   const ProximityRelation& lodato, Mask a);

// One HitStrong element per nonempty regular open V; one FarMiss element per
// regular open A whose complement belongs to the (closed) family.
std::vector<SubbaseElement> subbase_elements(const FiniteTopology& t,
                                             const ProximityRelation& lodato,
                                             const ProximityRelation& strong,
                                             const std::vector<Mask>& bfamily);

struct LemmaVerdict {
    enum class Status { Equivalent, Counterexample, HypothesesNotSatisfied };
    Status status = Status::Equivalent;
    bool side_a = false;  // subbase-intersection containment
    bool side_b = false;  // pointwise containment condition
    std::string detail;
};

// Checks that the hyperspace containment of two finite subbase intersections
// agrees with the pointwise condition (complement containment plus a matching
// hit set for every target factor). Requires a T1, regularly weakly R0
// carrier; U/V regular open; B/D regular closed.
LemmaVerdict lemma_equivalence_check(const FiniteTopology& t,
                                     const ProximityRelation& lodato,
                                     const ProximityRelation& strong,
                                     const std::vector<Mask>& ulist,
                                     const std::vector<Mask>& vlist, Mask b, Mask d);

// Validates the lemma hypotheses once and precomputes per-factor membership
// bitsets over RCL*(X), so exhaustive instance sweeps stay cheap. Requires
// |RCL*(X)| <= 64.
class LemmaSweepHarness {
public:
    LemmaSweepHarness(const FiniteTopology& t, const ProximityRelation& lodato,
                      const ProximityRelation& strong);

    LemmaVerdict check(const std::vector<Mask>& ulist, const std::vector<Mask>& vlist,
                       Mask b, Mask d) const;

    const std::vector<Mask>& regular_opens() const { return ro_; }
    const std::vector<Mask>& rcl_star_elements() const { return rcl_star_; }

private:
    FiniteTopology t_;
    std::vector<Mask> ro_;
    std::vector<Mask> rcl_star_;
    std::vector<char> is_ro_;
    std::vector<char> is_rcl_;
    std::vector<std::uint64_t> hit_members_;   // per subset V
    std::vector<std::uint64_t> miss_members_;  // per subset B
};

struct CountabilityResult {
    enum class Status { Holds, Fails, HypothesesNotSatisfied };
    Status status = Status::Holds;
    Mask witness_b = 0;
    Mask witness_k = 0;
    std::string detail;
};

// For each B in the family and K in RCL*(X) far from B, some finite union D
// of the candidate subfamily must satisfy B <= D <<_delta X \ K.
CountabilityResult second_countability_condition_check(
    const FiniteTopology& t, const ProximityRelation& lodato,
    const std::vector<Mask>& bfamily, const std::vector<Mask>& bprime);

}  // namespace proxivor::ftop
