#include "proxivor/finitetop.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace proxivor::ftop {

namespace {

int popcount(Mask m) { return std::popcount(m); }
bool is_singleton(Mask m) { return popcount(m) == 1; }

std::string idx_str(int i) { return std::to_string(i); }

}  // namespace

std::string mask_str(Mask m, int n) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < n; ++i) {
        if (m & (1u << i)) {
            if (!first) out += ",";
            out += idx_str(i);
            first = false;
        }
    }
    return out + "}";
}

FiniteTopology FiniteTopology::from_opens(int n, std::vector<Mask> open_list) {
    if (n < 1 || n > kMaxCarrier) throw Error("carrier size out of range");
    FiniteTopology t;
    t.n = n;
    Mask full = static_cast<Mask>((1u << n) - 1);
    std::sort(open_list.begin(), open_list.end());
    open_list.erase(std::unique(open_list.begin(), open_list.end()), open_list.end());
    t.open_lookup.assign(1u << n, 0);
    for (Mask m : open_list) {
        if (m & ~full) throw Error("open set exceeds the carrier");
        t.open_lookup[m] = 1;
    }
    if (!t.open_lookup[0] || !t.open_lookup[full]) {
        throw Error("opens must contain the empty set and the whole carrier");
    }
    for (Mask a : open_list) {
        for (Mask b : open_list) {
            if (!t.open_lookup[a | b] || !t.open_lookup[a & b]) {
                throw Error("opens are not closed under union/intersection");
            }
        }
    }
    t.opens = std::move(open_list);
    return t;
}

FiniteTopology FiniteTopology::discrete(int n) {
    if (n < 1 || n > 16) throw Error("discrete carrier too large");
    std::vector<Mask> opens(1u << n);
    for (Mask m = 0; m < (1u << n); ++m) opens[m] = m;
    return from_opens(n, std::move(opens));
}

FiniteTopology FiniteTopology::indiscrete(int n) {
    return from_opens(n, {0, static_cast<Mask>((1u << n) - 1)});
}

FiniteTopology FiniteTopology::sierpinski() { return from_opens(2, {0, 1, 3}); }

Mask FiniteTopology::interior(Mask a) const {
    Mask out = 0;
    for (Mask o : opens) {
        if ((o & ~a) == 0) out |= o;
    }
    return out;
}

Mask FiniteTopology::closure(Mask a) const {
    return full() & ~interior(full() & ~a);
}

bool FiniteTopology::is_t1() const {
    for (int i = 0; i < n; ++i) {
        if (closure(1u << i) != (1u << i)) return false;
    }
    return true;
}

std::vector<FiniteTopology> enumerate_topologies(int n) {
    if (n < 1 || n > 4) throw Error("topology enumeration supported up to 4 points");
    Mask full = static_cast<Mask>((1u << n) - 1);
    std::vector<Mask> middles;
    for (Mask m = 1; m < full; ++m) middles.push_back(m);
    size_t k = middles.size();
    std::vector<FiniteTopology> out;
    for (std::uint64_t choice = 0; choice < (1ull << k); ++choice) {
        std::vector<Mask> opens{0, full};
        for (size_t i = 0; i < k; ++i) {
            if (choice & (1ull << i)) opens.push_back(middles[i]);
        }
        bool closed = true;
        for (size_t i = 0; i < opens.size() && closed; ++i) {
            for (size_t j = i + 1; j < opens.size() && closed; ++j) {
                Mask u = opens[i] | opens[j];
                Mask x = opens[i] & opens[j];
                closed = std::find(opens.begin(), opens.end(), u) != opens.end() &&
                         std::find(opens.begin(), opens.end(), x) != opens.end();
            }
        }
        if (closed) out.push_back(FiniteTopology::from_opens(n, opens));
    }
    return out;
}

namespace {

void fill_caches(ProximityRelation& rel) {
    if (rel.builtin == ProximityRelation::Builtin::Custom ||
        rel.builtin == ProximityRelation::Builtin::NonemptyIntersection) {
        return;  // evaluator never consults the caches
    }
    const FiniteTopology& t = rel.carrier;
    Mask full = t.full();
    rel.interiors.resize(static_cast<size_t>(full) + 1);
    rel.closures.resize(static_cast<size_t>(full) + 1);
    for (Mask m = 0; m <= full; ++m) {
        rel.interiors[m] = t.interior(m);
        rel.closures[m] = t.closure(m);
    }
}

}  // namespace

bool ProximityRelation::near(Mask a, Mask b) const {
    switch (builtin) {
        case Builtin::Custom:
            return table[(static_cast<size_t>(a) << carrier.n) | b] != 0;
        case Builtin::NonemptyIntersection:
            return (a & b) != 0;
        case Builtin::ClClIntersection:
            return (closures[a] & closures[b]) != 0;
        case Builtin::InteriorIntersection:
        case Builtin::InteriorIntersectionNoX: {
            if (a == 0 || b == 0) return false;
            if (builtin == Builtin::InteriorIntersection) {
                Mask full = carrier.full();
                if (a == full || b == full) return true;
            }
            bool sa = is_singleton(a);
            bool sb = is_singleton(b);
            if (!sa && !sb) return (interiors[a] & interiors[b]) != 0;
            if (sa && sb) return a == b;
            Mask point = sa ? a : b;
            Mask other = sa ? b : a;
            return (point & interiors[other]) != 0;
        }
    }
    return false;
}

ProximityRelation ProximityRelation::builtin_relation(const FiniteTopology& t,
                                                      Role role, Builtin b) {
    if (b == Builtin::Custom) throw Error("custom relations need an explicit table");
    ProximityRelation rel;
    rel.role = role;
    rel.builtin = b;
    rel.carrier = t;
    fill_caches(rel);
    return rel;
}

ProximityRelation ProximityRelation::from_pairs(
    const FiniteTopology& t, Role role,
    const std::vector<std::pair<Mask, Mask>>& pairs) {
    if (t.n > kMaxAxiomCarrier) throw Error("carrier too large for a relation table");
    ProximityRelation rel;
    rel.role = role;
    rel.builtin = Builtin::Custom;
    rel.carrier = t;
    rel.table.assign(1ull << (2 * t.n), 0);
    for (const auto& [a, b] : pairs) {
        if ((a & ~t.full()) || (b & ~t.full())) throw Error("relation pair exceeds carrier");
        rel.table[(static_cast<size_t>(a) << t.n) | b] = 1;
    }
    fill_caches(rel);
    return rel;
}

ProximityRelation canonical_strong(const FiniteTopology& t, bool x_clause) {
    return ProximityRelation::builtin_relation(
        t, Role::Strong,
        x_clause ? ProximityRelation::Builtin::InteriorIntersection
                 : ProximityRelation::Builtin::InteriorIntersectionNoX);
}

ProximityRelation lodato_nonempty_intersection(const FiniteTopology& t) {
    return ProximityRelation::builtin_relation(
        t, Role::Lodato, ProximityRelation::Builtin::NonemptyIntersection);
}

ProximityRelation lodato_clcl(const FiniteTopology& t) {
    return ProximityRelation::builtin_relation(
        t, Role::Lodato, ProximityRelation::Builtin::ClClIntersection);
}

Mask proximal_closure(Mask a, const ProximityRelation& rel) {
    Mask out = 0;
    for (int x = 0; x < rel.carrier.n; ++x) {
        if (rel.near(1u << x, a)) out |= (1u << x);
    }
    return out;
}

bool AxiomReport::axioms_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const AxiomCheck& c) { return c.pass; });
}

namespace {

std::string pair_witness(Mask a, Mask b, int n) {
    return mask_str(a, n) + ", " + mask_str(b, n);
}

std::string triple_witness(Mask a, Mask b, Mask c, int n) {
    return mask_str(a, n) + "; " + mask_str(b, n) + ", " + mask_str(c, n);
}

void require_axiom_carrier(const FiniteTopology& t) {
    if (t.n > kMaxAxiomCarrier) {
        throw Error("carrier too large for exhaustive axiom checks");
    }
}

}  // namespace

AxiomReport check_lodato(const ProximityRelation& rel) {
    require_axiom_carrier(rel.carrier);
    const FiniteTopology& t = rel.carrier;
    int n = t.n;
    Mask full = t.full();
    size_t subsets = static_cast<size_t>(full) + 1;
    AxiomReport report;
    auto add = [&](const std::string& axiom, bool pass, const std::string& witness) {
        report.checks.push_back({axiom, pass, pass ? "" : witness});
    };

    {  // P0: symmetry
        bool ok = true;
        std::string w;
        for (Mask a = 0; a <= full && ok; ++a) {
            for (Mask b = a; b <= full && ok; ++b) {
                if (rel.near(a, b) != rel.near(b, a)) {
                    ok = false;
                    w = pair_witness(a, b, n);
                }
            }
        }
        add("P0", ok, w);
    }

    {  // P1: near sets are nonempty
        bool ok = true;
        std::string w;
        for (Mask a = 0; a <= full && ok; ++a) {
            if (rel.near(a, 0) || rel.near(0, a)) {
                ok = false;
                w = pair_witness(a, 0, n);
            }
        }
        add("P1", ok, w);
    }

    {  // P2: intersecting sets are near
        bool ok = true;
        std::string w;
        for (Mask a = 0; a <= full && ok; ++a) {
            for (Mask b = 0; b <= full && ok; ++b) {
                if ((a & b) != 0 && !rel.near(a, b)) {
                    ok = false;
                    w = pair_witness(a, b, n);
                }
            }
        }
        add("P2", ok, w);
    }

    {  // P3: nearness distributes over unions. Equivalent formulation: the
       // far side of each row is the power set of its union.
        bool ok = true;
        std::string w;
        for (Mask a = 0; a <= full && ok; ++a) {
            Mask far_union = 0;
            for (Mask b = 0; b <= full; ++b) {
                if (!rel.near(a, b)) far_union |= b;
            }
            for (Mask b = 0; b <= full && ok; ++b) {
                bool predicted = (b & ~far_union) != 0;
                if (rel.near(a, b) == predicted) continue;
                ok = false;
                if (!rel.near(a, b)) {
                    w = pair_witness(a, b, n);  // unreachable by construction
                    continue;
                }
                // a is near b although b is covered by far sets; exhibit a
                // split of b into two far parts, or an upward-closure break.
                bool found = false;
                for (Mask s = b; s != 0 && !found; s = (s - 1) & b) {
                    Mask rest = b & ~s;
                    if (!rel.near(a, s) && !rel.near(a, rest)) {
                        w = triple_witness(a, s, rest, n);
                        found = true;
                    }
                }
                if (!found) {
                    // Some near subset must lose nearness inside a far cover.
                    for (Mask c = 0; c <= full && !found; ++c) {
                        if (!rel.near(a, c)) continue;
                        for (int j = 0; j < n && !found; ++j) {
                            Mask grown = c | (1u << j);
                            if (!rel.near(a, grown)) {
                                w = triple_witness(a, c, 1u << j, n);
                                found = true;
                            }
                        }
                    }
                    if (!found) w = pair_witness(a, b, n);
                }
            }
        }
        add("P3", ok, w);
    }

    {  // P4: near to B whose points are all near C implies near to C.
        bool ok = true;
        std::string w;
        std::vector<char> reach(subsets);
        for (Mask a = 0; a <= full && ok; ++a) {
            for (Mask s = 0; s <= full; ++s) reach[s] = rel.near(a, s) ? 1 : 0;
            for (int j = 0; j < n; ++j) {
                for (Mask s = 0; s <= full; ++s) {
                    if (s & (1u << j)) reach[s] = reach[s] | reach[s ^ (1u << j)];
                }
            }
            for (Mask c = 0; c <= full && ok; ++c) {
                Mask sc = 0;
                for (int x = 0; x < n; ++x) {
                    if (rel.near(1u << x, c)) sc |= (1u << x);
                }
                if (reach[sc] && !rel.near(a, c)) {
                    ok = false;
                    Mask b = 0;
                    for (Mask s = sc;; s = (s - 1) & sc) {
                        if (rel.near(a, s)) {
                            b = s;
                            break;
                        }
                        if (s == 0) break;
                    }
                    w = triple_witness(a, b, c, n);
                }
            }
        }
        add("P4", ok, w);
    }

    {  // P5 (separatedness), reported alongside the core axioms
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) {
            for (int y = 0; y < n && ok; ++y) {
                if (x != y && rel.near(1u << x, 1u << y)) ok = false;
            }
        }
        report.separated = ok;
    }

    {  // compatibility: proximal closure equals topological closure
        bool ok = true;
        for (Mask a = 0; a <= full; ++a) {
            if (proximal_closure(a, rel) != t.closure(a)) {
                ok = false;
                report.compatibility_witness = mask_str(a, n);
                break;
            }
        }
        report.compatible = ok;
    }

    return report;
}

AxiomReport check_strong(const ProximityRelation& rel) {
    require_axiom_carrier(rel.carrier);
    const FiniteTopology& t = rel.carrier;
    int n = t.n;
    Mask full = t.full();
    size_t subsets = static_cast<size_t>(full) + 1;
    std::vector<Mask> interior(subsets);
    for (Mask m = 0; m <= full; ++m) interior[m] = t.interior(m);

    AxiomReport report;
    auto add = [&](const std::string& axiom, bool pass, const std::string& witness) {
        report.checks.push_back({axiom, pass, pass ? "" : witness});
    };

    {  // N0: nothing is strongly near the empty set; the whole space is
       // strongly near every nonempty set.
        bool ok = true;
        std::string w;
        for (Mask a = 0; a <= full && ok; ++a) {
            if (rel.near(0, a) || rel.near(a, 0)) {
                ok = false;
                w = pair_witness(0, a, n);
            }
            if (a != 0 && (!rel.near(full, a) || !rel.near(a, full))) {
                ok = false;
                w = pair_witness(full, a, n);
            }
        }
        add("N0", ok, w);
    }

    {  // N1: symmetry
        bool ok = true;
        std::string w;
        for (Mask a = 0; a <= full && ok; ++a) {
            for (Mask b = a; b <= full && ok; ++b) {
                if (rel.near(a, b) != rel.near(b, a)) {
                    ok = false;
                    w = pair_witness(a, b, n);
                }
            }
        }
        add("N1", ok, w);
    }

    {  // N2: strongly near sets intersect
        bool ok = true;
        std::string w;
        for (Mask a = 0; a <= full && ok; ++a) {
            for (Mask b = a; b <= full && ok; ++b) {
                if (rel.near(a, b) && (a & b) == 0) {
                    ok = false;
                    w = pair_witness(a, b, n);
                }
            }
        }
        add("N2", ok, w);
    }

    {  // N3: nearness to a member with nonempty interior extends to every
       // union containing it. Checked per row via downward reachability.
        bool ok = true;
        std::string w;
        std::vector<char> reach(subsets);
        for (Mask a = 0; a <= full && ok; ++a) {
            for (Mask s = 0; s <= full; ++s) {
                reach[s] = (rel.near(a, s) && interior[s] != 0) ? 1 : 0;
            }
            for (int j = 0; j < n; ++j) {
                for (Mask s = 0; s <= full; ++s) {
                    if (s & (1u << j)) reach[s] = reach[s] | reach[s ^ (1u << j)];
                }
            }
            for (Mask u = 0; u <= full && ok; ++u) {
                if (!reach[u] || rel.near(a, u)) continue;
                ok = false;
                Mask b = 0;
                for (Mask s = u;; s = (s - 1) & u) {
                    if (rel.near(a, s) && interior[s] != 0) {
                        b = s;
                        break;
                    }
                    if (s == 0) break;
                }
                w = triple_witness(a, b, u, n);
            }
        }
        add("N3", ok, w);
    }

    {  // N4: interior overlap forces strong nearness
        bool ok = true;
        std::string w;
        for (Mask a = 0; a <= full && ok; ++a) {
            for (Mask b = a; b <= full && ok; ++b) {
                if ((interior[a] & interior[b]) != 0 && !rel.near(a, b)) {
                    ok = false;
                    w = pair_witness(a, b, n);
                }
            }
        }
        add("N4", ok, w);
    }

    {  // N5: interior points are strongly near the set
        bool ok = true;
        std::string w;
        for (Mask a = 0; a <= full && ok; ++a) {
            for (int x = 0; x < n && ok; ++x) {
                if ((interior[a] & (1u << x)) && !rel.near(1u << x, a)) {
                    ok = false;
                    w = pair_witness(1u << x, a, n);
                }
            }
        }
        add("N5", ok, w);
    }

    {  // N6: singletons are strongly near exactly themselves
        bool ok = true;
        std::string w;
        for (int x = 0; x < n && ok; ++x) {
            for (int y = 0; y < n && ok; ++y) {
                bool nearxy = rel.near(1u << x, 1u << y);
                if (nearxy != (x == y)) {
                    ok = false;
                    w = pair_witness(1u << x, 1u << y, n);
                }
            }
        }
        add("N6", ok, w);
    }

    return report;
}

std::vector<Mask> regular_open_sets(const FiniteTopology& t) {
    std::vector<Mask> out;
    for (Mask a = 0; a <= t.full(); ++a) {
        if (a == t.interior(t.closure(a))) out.push_back(a);
    }
    return out;
}

std::vector<Mask> regular_closed_sets(const FiniteTopology& t) {
    std::vector<Mask> out;
    for (Mask a = 1; a <= t.full(); ++a) {
        if (a == t.closure(t.interior(a))) out.push_back(a);
    }
    return out;
}

std::vector<Mask> rcl_star(const FiniteTopology& t) {
    std::vector<Mask> out = regular_closed_sets(t);
    for (int x = 0; x < t.n; ++x) out.push_back(1u << x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool strongly_included(Mask a, Mask b, const ProximityRelation& rel) {
    return !rel.near(a, rel.carrier.full() & ~b);
}

WeaklyR0Result is_regularly_weakly_r0(const FiniteTopology& t,
                                      const ProximityRelation& rel) {
    std::vector<Mask> ro = regular_open_sets(t);
    std::vector<Mask> rcl = regular_closed_sets(t);
    for (Mask a : ro) {
        for (Mask b : ro) {
            Mask diff = a & ~b;
            if (diff == 0) continue;
            bool witnessed = false;
            for (Mask c : rcl) {
                if (strongly_included(c, diff, rel)) {
                    witnessed = true;
                    break;
                }
            }
            if (!witnessed) return {false, a, b};
        }
    }
    return {};
}

std::vector<Mask> sigma(const std::vector<Mask>& family) {
    std::set<Mask> out(family.begin(), family.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Mask> cur(out.begin(), out.end());
        for (Mask a : cur) {
            for (Mask b : cur) {
                if (out.insert(a | b).second) grew = true;
            }
        }
    }
    return {out.begin(), out.end()};
}

std::vector<Mask> hit_strong_members(const FiniteTopology& t,
                                     const ProximityRelation& strong, Mask v) {
    std::vector<Mask> out;
    for (Mask e : rcl_star(t)) {
        if (strong.near(e, v)) out.push_back(e);
    }
    return out;
}

std::vector<Mask> far_miss_members(const FiniteTopology& t,
                                   const ProximityRelation& lodato, Mask a) {
    std::vector<Mask> out;
    Mask complement = t.full() & ~a;
    for (Mask e : rcl_star(t)) {
        if (!lodato.near(e, complement)) out.push_back(e);
    }
    return out;
}

std::vector<SubbaseElement> subbase_elements(const FiniteTopology& t,
                                             const ProximityRelation& lodato,
                                             const ProximityRelation& strong,
                                             const std::vector<Mask>& bfamily) {
    for (Mask b : bfamily) {
        if (!t.is_closed(b)) {
            throw Error("family member " + mask_str(b, t.n) + " is not closed");
        }
    }
    std::vector<SubbaseElement> out;
    for (Mask v : regular_open_sets(t)) {
        if (v == 0) continue;
        out.push_back({SubbaseElement::Kind::HitStrong, v, hit_strong_members(t, strong, v)});
    }
    for (Mask a : regular_open_sets(t)) {
        Mask complement = t.full() & ~a;
        if (std::find(bfamily.begin(), bfamily.end(), complement) == bfamily.end())
            continue;
        out.push_back({SubbaseElement::Kind::FarMiss, a, far_miss_members(t, lodato, a)});
    }
    return out;
}

namespace {

bool is_regular_open(const FiniteTopology& t, Mask a) {
    return a == t.interior(t.closure(a));
}

bool is_regular_closed_nonempty(const FiniteTopology& t, Mask a) {
    return a != 0 && a == t.closure(t.interior(a));
}

std::optional<std::string> lemma_hypothesis_failure(const FiniteTopology& t,
                                                    const ProximityRelation& lodato) {
    if (!t.is_t1()) return "carrier is not T1";
    if (!is_regularly_weakly_r0(t, lodato).ok) return "carrier is not regularly weakly R0";
    return std::nullopt;
}

}  // namespace

LemmaVerdict lemma_equivalence_check(const FiniteTopology& t,
                                     const ProximityRelation& lodato,
                                     const ProximityRelation& strong,
                                     const std::vector<Mask>& ulist,
                                     const std::vector<Mask>& vlist, Mask b, Mask d) {
    LemmaVerdict verdict;
    if (auto fail = lemma_hypothesis_failure(t, lodato)) {
        verdict.status = LemmaVerdict::Status::HypothesesNotSatisfied;
        verdict.detail = *fail;
        return verdict;
    }
    if (ulist.empty() || vlist.empty()) {
        verdict.status = LemmaVerdict::Status::HypothesesNotSatisfied;
        verdict.detail = "factor lists must be nonempty";
        return verdict;
    }
    for (Mask u : ulist) {
        if (!is_regular_open(t, u)) {
            verdict.status = LemmaVerdict::Status::HypothesesNotSatisfied;
            verdict.detail = mask_str(u, t.n) + " is not regular open";
            return verdict;
        }
    }
    for (Mask v : vlist) {
        if (!is_regular_open(t, v)) {
            verdict.status = LemmaVerdict::Status::HypothesesNotSatisfied;
            verdict.detail = mask_str(v, t.n) + " is not regular open";
            return verdict;
        }
    }
    if (!is_regular_closed_nonempty(t, b) || !is_regular_closed_nonempty(t, d)) {
        verdict.status = LemmaVerdict::Status::HypothesesNotSatisfied;
        verdict.detail = "B and D must be nonempty regular closed sets";
        return verdict;
    }

    Mask full = t.full();
    auto member_u = [&](Mask e) {
        for (Mask u : ulist) {
            if (!strong.near(e, u)) return false;
        }
        return !lodato.near(e, b);
    };
    auto member_v = [&](Mask e) {
        for (Mask v : vlist) {
            if (!strong.near(e, v)) return false;
        }
        return !lodato.near(e, d);
    };

    bool side_a = true;
    bool inhabited = false;
    for (Mask e : rcl_star(t)) {
        if (!member_u(e)) continue;
        inhabited = true;
        if (!member_v(e)) {
            side_a = false;
            break;
        }
    }
    if (!inhabited) {
        // The forward direction needs an inhabitant of the left intersection;
        // with an empty left side the containment is vacuous and carries no
        // information about the factors.
        verdict.status = LemmaVerdict::Status::HypothesesNotSatisfied;
        verdict.detail = "left subbase intersection is empty";
        return verdict;
    }

    bool side_b = (full & ~b & d) == 0;  // X\B contained in X\D
    if (side_b) {
        for (Mask v : vlist) {
            bool matched = false;
            for (Mask u : ulist) {
                if (((u & ~b) & ~(v & ~d) & full) == 0) {
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                side_b = false;
                break;
            }
        }
    }

    verdict.side_a = side_a;
    verdict.side_b = side_b;
    if (side_a != side_b) {
        verdict.status = LemmaVerdict::Status::Counterexample;
        verdict.detail = "containment=" + std::string(side_a ? "true" : "false") +
                         " pointwise=" + std::string(side_b ? "true" : "false");
    }
    return verdict;
}

LemmaSweepHarness::LemmaSweepHarness(const FiniteTopology& t,
                                     const ProximityRelation& lodato,
                                     const ProximityRelation& strong)
    : t_(t) {
    if (auto fail = lemma_hypothesis_failure(t, lodato)) throw Error(*fail);
    ro_ = regular_open_sets(t);
    rcl_star_ = rcl_star(t);
    if (rcl_star_.size() > 64) throw Error("carrier too large for a lemma sweep");
    Mask full = t.full();
    is_ro_.assign(static_cast<size_t>(full) + 1, 0);
    is_rcl_.assign(static_cast<size_t>(full) + 1, 0);
    for (Mask m : ro_) is_ro_[m] = 1;
    for (Mask m : regular_closed_sets(t)) is_rcl_[m] = 1;
    hit_members_.assign(static_cast<size_t>(full) + 1, 0);
    miss_members_.assign(static_cast<size_t>(full) + 1, 0);
    for (Mask v = 0; v <= full; ++v) {
        for (size_t e = 0; e < rcl_star_.size(); ++e) {
            if (strong.near(rcl_star_[e], v)) hit_members_[v] |= (1ull << e);
            if (!lodato.near(rcl_star_[e], v)) miss_members_[v] |= (1ull << e);
        }
    }
}

LemmaVerdict LemmaSweepHarness::check(const std::vector<Mask>& ulist,
                                      const std::vector<Mask>& vlist, Mask b,
                                      Mask d) const {
    LemmaVerdict verdict;
    if (ulist.empty() || vlist.empty()) {
        verdict.status = LemmaVerdict::Status::HypothesesNotSatisfied;
        verdict.detail = "factor lists must be nonempty";
        return verdict;
    }
    for (Mask u : ulist) {
        if (!is_ro_[u]) {
            verdict.status = LemmaVerdict::Status::HypothesesNotSatisfied;
            verdict.detail = mask_str(u, t_.n) + " is not regular open";
            return verdict;
        }
    }
    for (Mask v : vlist) {
        if (!is_ro_[v]) {
            verdict.status = LemmaVerdict::Status::HypothesesNotSatisfied;
            verdict.detail = mask_str(v, t_.n) + " is not regular open";
            return verdict;
        }
    }
    if (!is_rcl_[b] || !is_rcl_[d]) {
        verdict.status = LemmaVerdict::Status::HypothesesNotSatisfied;
        verdict.detail = "B and D must be nonempty regular closed sets";
        return verdict;
    }

    std::uint64_t umask = miss_members_[b];
    for (Mask u : ulist) umask &= hit_members_[u];
    if (umask == 0) {
        verdict.status = LemmaVerdict::Status::HypothesesNotSatisfied;
        verdict.detail = "left subbase intersection is empty";
        return verdict;
    }
    std::uint64_t vmask = miss_members_[d];
    for (Mask v : vlist) vmask &= hit_members_[v];

    Mask full = t_.full();
    verdict.side_a = (umask & ~vmask) == 0;
    bool side_b = (full & ~b & d) == 0;
    if (side_b) {
        for (Mask v : vlist) {
            bool matched = false;
            for (Mask u : ulist) {
                if (((u & ~b) & ~(v & ~d) & full) == 0) {
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                side_b = false;
                break;
            }
        }
    }
    verdict.side_b = side_b;
    if (verdict.side_a != verdict.side_b) {
        verdict.status = LemmaVerdict::Status::Counterexample;
        verdict.detail = "containment=" + std::string(verdict.side_a ? "true" : "false") +
                         " pointwise=" + std::string(verdict.side_b ? "true" : "false");
    }
    return verdict;
}

CountabilityResult second_countability_condition_check(
    const FiniteTopology& t, const ProximityRelation& lodato,
    const std::vector<Mask>& bfamily, const std::vector<Mask>& bprime) {
    CountabilityResult result;
    if (auto fail = lemma_hypothesis_failure(t, lodato)) {
        result.status = CountabilityResult::Status::HypothesesNotSatisfied;
        result.detail = *fail;
        return result;
    }
    for (Mask bp : bprime) {
        if (std::find(bfamily.begin(), bfamily.end(), bp) == bfamily.end()) {
            throw Error("candidate subfamily is not contained in the family");
        }
    }
    std::vector<Mask> unions = sigma(bprime);
    for (Mask b : bfamily) {
        for (Mask k : rcl_star(t)) {
            if (lodato.near(b, k)) continue;
            bool found = false;
            for (Mask dset : unions) {
                if ((b & ~dset) == 0 && !lodato.near(dset, k)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                result.status = CountabilityResult::Status::Fails;
                result.witness_b = b;
                result.witness_k = k;
                result.detail = "no finite union covers " + mask_str(b, t.n) +
                                " away from " + mask_str(k, t.n);
                return result;
            }
        }
    }
    return result;
}

}  // namespace proxivor::ftop
