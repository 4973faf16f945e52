#pragma once

// Navigation of L(n), the finite atomic lattices on n ordered atoms.
//
// P ≤ Q in L(n) iff there is a join-preserving map Q → P bijective on atoms.
// With support families this is S(P) ⊆ S(Q); the witness map sends σ ∈ Q to
// the smallest member of P containing it, and covers add exactly one element.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <cstddef>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "betti.hpp"
#include "classify.hpp"
#include "homology.hpp"
#include "lattice.hpp"
#include "resolution.hpp"

namespace rigidres {

using BettiVector = std::vector<std::size_t>;

inline void require_same_n(const FiniteAtomicLattice& p, const FiniteAtomicLattice& q)
{
    if (p.atom_count() != q.atom_count())
        throw std::invalid_argument("lattices have different atom counts (" + std::to_string(p.atom_count()) +
                                    " vs " + std::to_string(q.atom_count()) + ")");
}

inline bool leq_in_Ln(const FiniteAtomicLattice& p, const FiniteAtomicLattice& q)
{
    require_same_n(p, q);
    return std::all_of(p.elements().begin(), p.elements().end(), [&](Mask m) { return q.contains(m); });
}

inline bool leq_in_Ln(const LnKey& p, const LnKey& q)
{
    if (p.n != q.n)
        throw std::invalid_argument("keys have different atom counts");
    return std::includes(q.masks.begin(), q.masks.end(), p.masks.begin(), p.masks.end(), canonical_less);
}

/// f(a ∨ b) = f(a) ∨ f(b) for all a, b, and f fixes every atom.
inline bool is_join_preserving_on_atoms(const FiniteAtomicLattice& q, const FiniteAtomicLattice& p,
                                        const std::map<Mask, Mask>& f)
{
    for (unsigned i = 1; i <= q.atom_count(); ++i)
        if (f.at(FiniteAtomicLattice::atom(i)) != FiniteAtomicLattice::atom(i))
            return false;
    for (Mask a : q.elements())
        for (Mask b : q.elements())
            if (f.at(q.join(a, b)) != p.join(f.at(a), f.at(b)))
                return false;
    return true;
}

/// f : Q → P, σ ↦ smallest member of P containing σ. Requires P ≤ Q.
inline std::map<Mask, Mask> join_preserving_map(const FiniteAtomicLattice& q, const FiniteAtomicLattice& p)
{
    if (!leq_in_Ln(p, q))
        throw std::invalid_argument("no join-preserving map: the target is not below the source in L(n)");
    std::map<Mask, Mask> f;
    for (Mask m : q.elements())
        f.emplace(m, p.closure(m));
    assert(is_join_preserving_on_atoms(q, p, f));
    return f;
}

inline constexpr unsigned kMaxNavigableAtoms = 20;

/// Families P ∪ {σ} that are still intersection-closed.
inline std::vector<FiniteAtomicLattice> up_covers(const FiniteAtomicLattice& p)
{
    const unsigned n = p.atom_count();
    if (n > kMaxNavigableAtoms)
        throw std::length_error("up_covers enumerates 2^n candidates; n is too large");
    std::vector<FiniteAtomicLattice> out;
    for (Mask s = 0; s <= full_mask(n); ++s) {
        if (p.contains(s))
            continue;
        bool closed = true;
        for (Mask m : p.elements())
            if (const Mask x = s & m; x != s && !p.contains(x)) {
                closed = false;
                break;
            }
        if (closed) {
            auto family = p.elements();
            family.push_back(s);
            out.push_back(FiniteAtomicLattice::from_family(n, std::move(family)));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
    return out;
}

/// P ∖ {σ} for each meet-irreducible σ that is not 0̂, an atom, or 1̂.
inline std::vector<FiniteAtomicLattice> down_covers(const FiniteAtomicLattice& p)
{
    std::vector<FiniteAtomicLattice> out;
    for (Mask s : p.meet_irreducibles()) {
        if (s == 0 || p.is_atom(s) || s == p.top())
            continue;
        std::vector<Mask> family;
        for (Mask m : p.elements())
            if (m != s)
                family.push_back(m);
        out.push_back(FiniteAtomicLattice::from_family(p.atom_count(), std::move(family)));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
    return out;
}

struct Enumeration {
    std::vector<LnKey> keys; // canonical key order
    bool truncated = false;
};

inline constexpr unsigned kMaxEnumerableAtoms = 5;
inline constexpr std::size_t kDefaultEnumerationBudget = 1'000'000;

namespace detail {

/// Include/exclude search over the non-forced masks in canonical order. A mask
/// is included only if its intersections with the chosen family are present;
/// every such intersection is canonically smaller and so already decided.
class LnSearch {
public:
    explicit LnSearch(unsigned n) : n_(n), present_(std::size_t{1} << n, false)
    {
        for (Mask m = 0; m <= full_mask(n); ++m)
            if (std::popcount(m) >= 2 && std::popcount(m) < static_cast<int>(n))
                candidates_.push_back(m);
        std::sort(candidates_.begin(), candidates_.end(), canonical_less);
        family_.push_back(0);
        for (unsigned i = 0; i < n; ++i)
            family_.push_back(Mask{1} << i);
        if (n > 1)
            family_.push_back(full_mask(n));
        for (Mask m : family_)
            present_[m] = true;
    }

    std::size_t candidate_count() const { return candidates_.size(); }

    /// Applies fixed include/exclude decisions for the first candidates.
    bool apply_prefix(const std::vector<bool>& decisions)
    {
        for (std::size_t k = 0; k < decisions.size(); ++k)
            if (decisions[k]) {
                if (!can_include(candidates_[k]))
                    return false;
                include(candidates_[k]);
            }
        return true;
    }

    /// Emits members reachable from `start` in DFS order (exclude before include).
    void run(std::size_t start, std::size_t budget, std::vector<LnKey>& out, bool& truncated)
    {
        dfs(start, budget, out, truncated);
    }

private:
    bool can_include(Mask c) const
    {
        for (Mask m : family_)
            if (const Mask x = c & m; x != c && !present_[x])
                return false;
        return true;
    }

    void include(Mask c)
    {
        family_.push_back(c);
        present_[c] = true;
    }

    void exclude_last()
    {
        present_[family_.back()] = false;
        family_.pop_back();
    }

    void dfs(std::size_t k, std::size_t budget, std::vector<LnKey>& out, bool& truncated)
    {
        if (truncated)
            return;
        if (k == candidates_.size()) {
            if (out.size() >= budget) {
                truncated = true;
                return;
            }
            auto masks = family_;
            std::sort(masks.begin(), masks.end(), canonical_less);
            out.push_back(LnKey{n_, std::move(masks)});
            return;
        }
        dfs(k + 1, budget, out, truncated);
        if (can_include(candidates_[k])) {
            include(candidates_[k]);
            dfs(k + 1, budget, out, truncated);
            exclude_last();
        }
    }

    unsigned n_;
    std::vector<Mask> candidates_;
    std::vector<Mask> family_;
    std::vector<bool> present_;
};

/// Runs `work(index)` for index in [0, count) on up to `workers` threads.
template <typename Work>
void parallel_for(std::size_t count, unsigned workers, Work&& work)
{
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace detail

/// Every intersection-closed family on {1..n} containing ∅, the singletons and
/// [n], each exactly once. The first `budget` members in search order are kept;
/// the result is independent of the worker count.
inline Enumeration enumerate_Ln(unsigned n, std::size_t budget = kDefaultEnumerationBudget, unsigned workers = 1)
{
    if (n == 0 || n > kMaxEnumerableAtoms)
        throw std::invalid_argument("enumerate_Ln supports 1 ≤ n ≤ " + std::to_string(kMaxEnumerableAtoms));
    const std::size_t candidates = detail::LnSearch(n).candidate_count();
    // Split on the first few decisions; subtrees are concatenated in search order.
    std::size_t depth = 0;
    while (depth < candidates && depth < 6 && (std::size_t{1} << depth) < 4 * std::size_t{workers})
        ++depth;
    std::vector<std::vector<bool>> prefixes;
    for (std::size_t code = 0; code < (std::size_t{1} << depth); ++code) {
        std::vector<bool> decisions(depth);
        for (std::size_t k = 0; k < depth; ++k) // exclude-first order: bit of earliest decision is most significant
            decisions[k] = (code >> (depth - 1 - k)) & 1;
        prefixes.push_back(std::move(decisions));
    }
    std::vector<std::vector<LnKey>> parts(prefixes.size());
    std::vector<char> part_truncated(prefixes.size(), 0);
    detail::parallel_for(prefixes.size(), workers, [&](std::size_t idx) {
        detail::LnSearch search(n);
        if (!search.apply_prefix(prefixes[idx]))
            return;
        bool truncated = false;
        search.run(depth, budget, parts[idx], truncated);
        part_truncated[idx] = truncated;
    });
    Enumeration out;
    for (std::size_t idx = 0; idx < parts.size(); ++idx) {
        for (auto& key : parts[idx]) {
            if (out.keys.size() >= budget) {
                out.truncated = true;
                break;
            }
            out.keys.push_back(std::move(key));
        }
        if (part_truncated[idx] || out.truncated) {
            out.truncated = true;
            break;
        }
    }
    std::sort(out.keys.begin(), out.keys.end());
    return out;
}

struct MemberInfo {
    LnKey key;
    bool rigid = false;
    bool concentrated = false;
};

struct StratumRecord {
    FieldSpec field;
    BettiVector betti;
    std::vector<MemberInfo> members;                           // canonical key order
    std::vector<std::pair<std::size_t, std::size_t>> covers;   // (lower, upper) member indices

    std::optional<std::size_t> index_of(const LnKey& key) const
    {
        const auto it = std::lower_bound(members.begin(), members.end(), key,
                                         [](const MemberInfo& m, const LnKey& k) { return m.key < k; });
        if (it == members.end() || !(it->key == key))
            return std::nullopt;
        return static_cast<std::size_t>(it - members.begin());
    }
};

using Strata = std::map<BettiVector, StratumRecord>;

/// Groups lattices by total Betti vector and records covers inside each stratum.
inline Strata stratify(const std::vector<LnKey>& keys, const FieldSpec& field, unsigned workers = 1,
                       IntervalHomologyCache* cache = nullptr)
{
    IntervalHomologyCache local;
    if (!cache)
        cache = &local;
    std::vector<BettiVector> betti(keys.size());
    std::vector<MemberInfo> info(keys.size());
    detail::parallel_for(keys.size(), workers, [&](std::size_t i) {
        const auto table = betti_table(FiniteAtomicLattice::from_key(keys[i]), field, cache);
        betti[i] = table.totals();
        info[i] = MemberInfo{keys[i], is_rigid(table).rigid, is_concentrated(table).concentrated};
    });

    Strata strata;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        auto& rec = strata[betti[i]];
        rec.field = field;
        rec.betti = betti[i];
        rec.members.push_back(std::move(info[i]));
    }
    for (auto& [beta, rec] : strata) {
        std::sort(rec.members.begin(), rec.members.end(),
                  [](const MemberInfo& a, const MemberInfo& b) { return a.key < b.key; });
        for (std::size_t upper = 0; upper < rec.members.size(); ++upper) {
            const LnKey& q = rec.members[upper].key;
            for (std::size_t k = 0; k < q.masks.size(); ++k) {
                LnKey smaller{q.n, {}};
                for (std::size_t j = 0; j < q.masks.size(); ++j)
                    if (j != k)
                        smaller.masks.push_back(q.masks[j]);
                if (const auto lower = rec.index_of(smaller))
                    rec.covers.emplace_back(*lower, upper);
            }
        }
        std::sort(rec.covers.begin(), rec.covers.end());
    }
    return strata;
}

struct UpClosureReport {
    std::size_t checked = 0;
    std::vector<std::pair<LnKey, LnKey>> violations; // (rigid lower, non-rigid upper)
    bool ok() const { return violations.empty(); }
};

/// Within a stratum, every cover of a rigid member must be rigid.
inline UpClosureReport verify_rigid_up_closure(const StratumRecord& stratum, const FieldSpec& field)
{
    UpClosureReport report;
    for (const auto& [lo, hi] : stratum.covers) {
        const auto& lower = stratum.members[lo];
        if (!lower.rigid)
            continue;
        ++report.checked;
        const auto q = FiniteAtomicLattice::from_key(stratum.members[hi].key);
        if (!is_rigid(q, field).rigid)
            report.violations.emplace_back(lower.key, stratum.members[hi].key);
    }
    return report;
}

class TransferError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An lcm-lattice realizing `key` exactly (same supports, same atom order).
inline LcmLattice realize(const LnKey& key)
{
    const auto lattice = FiniteAtomicLattice::from_key(key);
    LcmLattice lcm = lcm_lattice(coordinatize(lattice));
    if (!(lcm.lattice() == lattice))
        throw std::logic_error("coordinatization did not reproduce the lattice");
    return lcm;
}

/// label_from(σ) ↦ label_to(f(σ)) for every element σ of `from`.
inline MultidegreeMap label_map(const LcmLattice& from, const LcmLattice& to, const std::map<Mask, Mask>& f)
{
    MultidegreeMap out;
    for (Mask m : from.lattice().elements())
        out.emplace(from.label(m), to.label(f.at(m)));
    return out;
}

/// Minimal resolution of Q pushed down to P along the join-preserving map.
/// Requires P ≤ Q, equal total Betti vectors and P rigid.
inline MultigradedFreeResolution transfer_resolution(const LnKey& q_key, const LnKey& p_key, const FieldSpec& field)
{
    if (q_key.n != p_key.n)
        throw TransferError("precondition failed: atom counts differ");
    if (!leq_in_Ln(p_key, q_key))
        throw TransferError("precondition failed: P ≤ Q does not hold");
    const auto q = FiniteAtomicLattice::from_key(q_key);
    const auto p = FiniteAtomicLattice::from_key(p_key);
    const auto p_table = betti_table(p, field);
    if (p_table.totals() != betti_table(q, field).totals())
        throw TransferError("precondition failed: P and Q lie in different Betti strata");
    if (!is_rigid(p_table).rigid)
        throw TransferError("precondition failed: P is not rigid");

    const LcmLattice q_lcm = realize(q_key);
    const LcmLattice p_lcm = realize(p_key);
    const auto f = join_preserving_map(q, p);
    const auto moved = relabel(minimal_resolution(q_lcm.ideal(), field), label_map(q_lcm, p_lcm, f), p_lcm);

    const auto report = verify_resolution(moved, p_lcm.ideal());
    if (!report.ok)
        throw std::logic_error("transferred complex is not a resolution of P: " + report.failure);
    if (!moved.is_minimal())
        throw std::logic_error("transferred resolution is not minimal");
    return moved;
}

/// The reverse transfer: the minimal resolution of P lifted to Q by inverting
/// f on Q's Betti elements, degree by degree. Same preconditions.
inline MultigradedFreeResolution lift_resolution(const LnKey& p_key, const LnKey& q_key, const FieldSpec& field)
{
    if (q_key.n != p_key.n || !leq_in_Ln(p_key, q_key))
        throw TransferError("precondition failed: P ≤ Q does not hold");
    const auto q = FiniteAtomicLattice::from_key(q_key);
    const auto p = FiniteAtomicLattice::from_key(p_key);
    const auto p_table = betti_table(p, field);
    const auto q_table = betti_table(q, field);
    if (p_table.totals() != q_table.totals())
        throw TransferError("precondition failed: P and Q lie in different Betti strata");
    if (!is_rigid(p_table).rigid)
        throw TransferError("precondition failed: P is not rigid");

    const LcmLattice q_lcm = realize(q_key);
    const LcmLattice p_lcm = realize(p_key);
    const auto f = join_preserving_map(q, p);
    std::vector<MultidegreeMap> inverse(q_table.totals().size());
    for (const auto& [key, value] : q_table.entries()) {
        const auto [it, fresh] = inverse[key.first].emplace(p_lcm.label(f.at(key.second)), q_lcm.label(key.second));
        if (!fresh && !(it->second == q_lcm.label(key.second)))
            throw TransferError("join-preserving map is not injective on Betti elements of degree " +
                                std::to_string(key.first));
    }
    const auto lifted = relabel_by_degree(minimal_resolution(p_lcm.ideal(), field), inverse, q_lcm);
    const auto report = verify_resolution(lifted, q_lcm.ideal());
    if (!report.ok)
        throw std::logic_error("lifted complex is not a resolution of Q: " + report.failure);
    return lifted;
}

/// Searches Q's down-set inside its stratum for a concentrated rigid member.
/// Breadth-first from Q, so Q itself is returned when it qualifies.
inline std::optional<LnKey> find_concentrated_below(const LnKey& q_key, const FieldSpec& field)
{
    const auto q = FiniteAtomicLattice::from_key(q_key);
    const auto q_table = betti_table(q, field);
    if (!is_rigid(q_table).rigid)
        throw TransferError("precondition failed: Q is not rigid");
    const BettiVector beta = q_table.totals();

    IntervalHomologyCache cache;
    std::deque<FiniteAtomicLattice> queue{q};
    std::set<LnKey> seen{q_key};
    while (!queue.empty()) {
        const FiniteAtomicLattice current = std::move(queue.front());
        queue.pop_front();
        const auto table = betti_table(current, field, &cache);
        if (is_rigid(table).rigid && is_concentrated(table).concentrated)
            return current.key();
        for (auto& lower : down_covers(current)) {
            if (!seen.insert(lower.key()).second)
                continue;
            if (betti_table(lower, field, &cache).totals() == beta)
                queue.push_back(std::move(lower));
        }
    }
    return std::nullopt;
}

struct FaceRigidityReport {
    ReducedHomologyDims homology;
    bool acyclic = false;
    bool rigid = false;
    /// Acyclic but not rigid: would contradict the face-lattice rigidity result.
    bool violation() const { return acyclic && !rigid; }
};

inline FaceRigidityReport face_lattice_rigidity_check(const SimplicialComplexRep& complex, const FieldSpec& field)
{
    auto lattice = augmented_face_lattice(complex);
    if (const auto* bad = std::get_if<NotALattice>(&lattice))
        throw std::invalid_argument("precondition failed: augmented face poset is not a lattice: " + bad->reason);
    FaceRigidityReport report;
    report.homology = reduced_homology_dims(complex, field);
    report.acyclic = report.homology.acyclic();
    report.rigid = is_rigid(std::get<FiniteAtomicLattice>(lattice), field).rigid;
    return report;
}

} // namespace rigidres
