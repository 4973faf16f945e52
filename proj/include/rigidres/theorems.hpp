#pragma once

// Exhaustive and randomized sweeps that machine-check the structural results
// on rigid ideals: Betti monotonicity in L(n), rigidity propagating up a Betti
// stratum, concentrated ⟺ lattice-linear for rigid lattices, resolution
// transfer between comparable rigid lattices, rigidity of acyclic face
// lattices, and agreement of the two Betti computations.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "betti.hpp"
#include "classify.hpp"
#include "ln.hpp"
#include "random.hpp"
#include "resolution.hpp"

namespace rigidres {

struct SweepReport {
    std::string name;
    std::size_t checked = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// L(n) with every member's Betti vector and flags, grouped into strata.
struct Atlas {
    unsigned n = 0;
    FieldSpec field;
    bool truncated = false;
    std::vector<LnKey> keys;
    Strata strata;

    struct Entry {
        BettiVector betti;
        bool rigid = false;
        bool concentrated = false;
    };
    std::map<LnKey, Entry> entries;
};

inline Atlas build_atlas(unsigned n, const FieldSpec& field, unsigned workers = 1,
                         std::size_t budget = kDefaultEnumerationBudget)
{
    Atlas atlas;
    atlas.n = n;
    atlas.field = field;
    auto e = enumerate_Ln(n, budget, workers);
    atlas.keys = std::move(e.keys);
    atlas.truncated = e.truncated;
    IntervalHomologyCache cache;
    atlas.strata = stratify(atlas.keys, field, workers, &cache);
    for (const auto& [beta, rec] : atlas.strata)
        for (const auto& m : rec.members)
            atlas.entries[m.key] = {beta, m.rigid, m.concentrated};
    return atlas;
}

namespace detail {

inline std::string key_string(const LnKey& key)
{
    std::string s = "[";
    for (std::size_t i = 0; i < key.masks.size(); ++i)
        s += (i ? "," : "") + support_string(key.masks[i]);
    return s + "]";
}

inline std::string vector_string(const BettiVector& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

inline bool betti_leq(const BettiVector& a, const BettiVector& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > (i < b.size() ? b[i] : 0))
            return false;
    return true;
}

} // namespace detail

/// P ≤ Q ⇒ β(P) ≤ β(Q) componentwise, over all comparable pairs.
inline SweepReport sweep_betti_monotonicity(const Atlas& atlas)
{
    SweepReport r{"betti-monotonicity"};
    for (const auto& p : atlas.keys)
        for (const auto& q : atlas.keys) {
            if (p == q || !leq_in_Ln(p, q))
                continue;
            ++r.checked;
            const auto& bp = atlas.entries.at(p).betti;
            const auto& bq = atlas.entries.at(q).betti;
            if (!detail::betti_leq(bp, bq))
                r.violations.push_back(detail::key_string(p) + " ≤ " + detail::key_string(q) + " but " +
                                       detail::vector_string(bp) + " ≰ " + detail::vector_string(bq));
        }
    return r;
}

/// Inside each stratum, members above a rigid member are rigid; checked on
/// cover edges (recomputing rigidity) and on all comparable pairs.
inline SweepReport sweep_rigid_up_closure(const Atlas& atlas)
{
    SweepReport r{"rigid-up-closure"};
    for (const auto& [beta, rec] : atlas.strata) {
        const auto cover_report = verify_rigid_up_closure(rec, atlas.field);
        r.checked += cover_report.checked;
        for (const auto& [lo, hi] : cover_report.violations)
            r.violations.push_back("cover " + detail::key_string(lo) + " ⋖ " + detail::key_string(hi));
        for (const auto& p : rec.members) {
            if (!p.rigid)
                continue;
            for (const auto& q : rec.members) {
                if (p.key == q.key || !leq_in_Ln(p.key, q.key))
                    continue;
                ++r.checked;
                if (!q.rigid)
                    r.violations.push_back(detail::key_string(p.key) + " < " + detail::key_string(q.key));
            }
        }
    }
    return r;
}

/// For rigid members: concentrated ⟺ lattice-linear. Unless `rigid_only`,
/// also checks lattice-linear ⇒ concentrated on the non-rigid members.
inline SweepReport sweep_concentrated_iff_lattice_linear(const Atlas& atlas, bool rigid_only = true,
                                                         unsigned workers = 1)
{
    SweepReport r{"concentrated-iff-lattice-linear"};
    std::vector<const LnKey*> todo;
    for (const auto& [key, entry] : atlas.entries)
        if (entry.rigid || !rigid_only)
            todo.push_back(&key);
    std::vector<std::string> outcome(todo.size());
    detail::parallel_for(todo.size(), workers, [&](std::size_t i) {
        const LnKey& key = *todo[i];
        const auto& entry = atlas.entries.at(key);
        const LcmLattice lcm = realize(key);
        const bool linear = lattice_linear_support(minimal_resolution(lcm.ideal(), atlas.field), lcm);
        const bool bad = entry.rigid ? (linear != entry.concentrated) : (linear && !entry.concentrated);
        if (bad)
            outcome[i] = detail::key_string(key) + (entry.rigid ? " rigid" : " non-rigid") +
                         ": concentrated=" + (entry.concentrated ? "yes" : "no") +
                         " lattice-linear=" + (linear ? "yes" : "no");
    });
    r.checked = todo.size();
    for (auto& s : outcome)
        if (!s.empty())
            r.violations.push_back(std::move(s));
    return r;
}

/// For every comparable pair P < Q in one stratum with P rigid: the transfer
/// down verifies and matches the signature of P's own minimal resolution
/// under the join-preserving map, and the lift up matches Q's.
inline SweepReport sweep_resolution_transfer(const Atlas& atlas, unsigned workers = 1)
{
    SweepReport r{"resolution-transfer"};
    struct Pair {
        const LnKey* p;
        const LnKey* q;
    };
    std::vector<Pair> pairs;
    std::vector<const LnKey*> involved;
    for (const auto& [beta, rec] : atlas.strata)
        for (const auto& p : rec.members) {
            if (!p.rigid)
                continue;
            for (const auto& q : rec.members)
                if (!(p.key == q.key) && leq_in_Ln(p.key, q.key))
                    pairs.push_back({&p.key, &q.key});
        }

    std::map<LnKey, std::size_t> slot;
    for (const auto& pr : pairs)
        for (const LnKey* k : {pr.p, pr.q})
            if (slot.emplace(*k, involved.size()).second)
                involved.push_back(k);
    struct Realized {
        std::optional<LcmLattice> lcm;
        std::optional<ResolutionSignature> sig;
    };
    std::vector<Realized> realized(involved.size());
    detail::parallel_for(involved.size(), workers, [&](std::size_t i) {
        realized[i].lcm.emplace(realize(*involved[i]));
        realized[i].sig = signature(minimal_resolution(realized[i].lcm->ideal(), atlas.field));
    });

    std::vector<std::string> outcome(pairs.size());
    detail::parallel_for(pairs.size(), workers, [&](std::size_t i) {
        const auto& [p_key, q_key] = pairs[i];
        const auto& p_real = realized[slot.at(*p_key)];
        const auto& q_real = realized[slot.at(*q_key)];
        const std::string where = detail::key_string(*p_key) + " < " + detail::key_string(*q_key);
        try {
            const auto down = transfer_resolution(*q_key, *p_key, atlas.field);
            if (!(signature(down) == *p_real.sig)) {
                outcome[i] = where + ": transferred signature differs from P's";
                return;
            }
            const auto f = join_preserving_map(FiniteAtomicLattice::from_key(*q_key),
                                               FiniteAtomicLattice::from_key(*p_key));
            if (!signatures_equal(*q_real.sig, *p_real.sig, label_map(*q_real.lcm, *p_real.lcm, f))) {
                outcome[i] = where + ": signatures differ under f";
                return;
            }
            const auto up = lift_resolution(*p_key, *q_key, atlas.field);
            if (!(signature(up) == *q_real.sig))
                outcome[i] = where + ": lifted signature differs from Q's";
        } catch (const std::exception& e) {
            outcome[i] = where + ": " + e.what();
        }
    });
    r.checked = pairs.size();
    for (auto& s : outcome)
        if (!s.empty())
            r.violations.push_back(std::move(s));
    return r;
}

/// For every cover Q = P ∪ {q} in L(n): β_{i,p} agrees in P and Q for all p
/// below q or incomparable to q.
inline SweepReport sweep_interval_identity(const Atlas& atlas)
{
    SweepReport r{"interval-identity"};
    IntervalHomologyCache cache;
    std::map<LnKey, BettiTable> tables;
    auto table_of = [&](const LnKey& key) -> const BettiTable& {
        auto it = tables.find(key);
        if (it == tables.end())
            it = tables.emplace(key, betti_table(FiniteAtomicLattice::from_key(key), atlas.field, &cache)).first;
        return it->second;
    };
    for (const auto& q_key : atlas.keys) {
        const auto q = FiniteAtomicLattice::from_key(q_key);
        for (const auto& p : down_covers(q)) {
            if (!atlas.entries.count(p.key()))
                continue;
            Mask added = 0;
            for (Mask m : q.elements())
                if (!p.contains(m))
                    added = m;
            const auto& tq = table_of(q_key);
            const auto& tp = table_of(p.key());
            for (Mask m : p.elements()) {
                if (is_subset(added, m))
                    continue;
                ++r.checked;
                for (std::size_t i = 0; i <= std::max(tp.max_degree(), tq.max_degree()); ++i)
                    if (tp.at(i, m) != tq.at(i, m)) {
                        r.violations.push_back(detail::key_string(p.key()) + " ⋖ " + detail::key_string(q_key) +
                                               ": β_" + std::to_string(i) + " changes at " + support_string(m));
                        break;
                    }
            }
        }
    }
    return r;
}

/// Seeded acyclic complexes whose augmented face posets are lattices must be rigid.
inline SweepReport sweep_face_rigidity(std::size_t count, std::uint64_t seed, const FieldSpec& field,
                                       unsigned max_vertices = 6)
{
    SweepReport r{"face-rigidity"};
    std::mt19937_64 rng(seed);
    while (r.checked < count) {
        const auto complex = random_acyclic_complex(rng, field, max_vertices);
        if (std::holds_alternative<NotALattice>(augmented_face_lattice(complex)))
            continue;
        ++r.checked;
        const auto report = face_lattice_rigidity_check(complex, field);
        if (report.violation()) {
            std::string facets;
            for (Mask f : complex.facets())
                facets += support_string(f);
            r.violations.push_back("acyclic complex " + facets + " has a non-rigid face lattice");
        }
    }
    return r;
}

/// Seeded random ideals: Betti numbers from interval homology, per multidegree, equal the basis
/// counts of the minimalized Taylor resolution, and both complexes verify.
inline SweepReport sweep_cross_validation(std::size_t count, std::uint64_t seed,
                                          const std::vector<FieldSpec>& fields, const RandomIdealShape& shape = {})
{
    SweepReport r{"cross-validation"};
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < count; ++k) {
        const MonomialIdeal ideal = random_ideal(rng, shape);
        const LcmLattice lattice = lcm_lattice(ideal);
        for (const auto& field : fields) {
            ++r.checked;
            const std::string where = ideal.to_string() + " over " + field.name();
            const auto taylor = taylor_complex(ideal, field);
            if (const auto rep = verify_resolution(taylor, ideal); !rep.ok) {
                r.violations.push_back(where + ": Taylor complex fails: " + rep.failure);
                continue;
            }
            const auto minimal = minimalize(taylor);
            if (const auto rep = verify_resolution(minimal, ideal); !rep.ok) {
                r.violations.push_back(where + ": minimalized complex fails: " + rep.failure);
                continue;
            }
            if (!minimal.is_minimal()) {
                r.violations.push_back(where + ": minimalized complex is not minimal");
                continue;
            }
            const auto table = betti_table(lattice, field);
            std::vector<std::size_t> ranks = minimal.ranks();
            if (ranks != table.totals()) {
                r.violations.push_back(where + ": totals " + detail::vector_string(table.totals()) +
                                       " vs ranks " + detail::vector_string(ranks));
                continue;
            }
            std::map<std::pair<std::size_t, Mask>, std::size_t> counted;
            for (std::size_t i = 0; i <= minimal.length(); ++i)
                for (const auto& m : minimal.basis(i))
                    ++counted[{i, lattice.element_of(m)}];
            if (counted != table.entries())
                r.violations.push_back(where + ": multigraded Betti numbers disagree");
        }
    }
    return r;
}

inline const std::vector<std::string>& sweep_names()
{
    static const std::vector<std::string> names{
        "betti-monotonicity", "rigid-up-closure", "concentrated-iff-lattice-linear", "resolution-transfer",
        "interval-identity",  "face-rigidity",    "cross-validation"};
    return names;
}

} // namespace rigidres
