#pragma once

// Multigraded Betti numbers of a finite atomic lattice:
//   β_{i,σ} = dim H̃_{i-2}(Δ(0̂, σ); k)   for σ ≠ 0̂,   β_{0,0̂} = 1.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "field.hpp"
#include "homology.hpp"
#include "lattice.hpp"

namespace rigidres {

/// Memo of open-interval homology keyed by (field, interval family).
/// Safe for concurrent use.
class IntervalHomologyCache {
public:
    ReducedHomologyDims get(const MaskPoset& interval, const FieldSpec& field)
    {
        Key key{field.characteristic(), interval.elements};
        {
            std::lock_guard lock(mutex_);
            const auto it = memo_.find(key);
            if (it != memo_.end())
                return it->second;
        }
        ReducedHomologyDims dims = poset_homology(interval, field);
        std::lock_guard lock(mutex_);
        memo_.emplace(std::move(key), dims);
        return dims;
    }

    std::size_t size() const
    {
        std::lock_guard lock(mutex_);
        return memo_.size();
    }

private:
    using Key = std::pair<std::uint64_t, std::vector<Mask>>;
    mutable std::mutex mutex_;
    std::map<Key, ReducedHomologyDims> memo_;
};

class BettiTable {
public:
    BettiTable(std::shared_ptr<const FiniteAtomicLattice> lattice, FieldSpec field,
               std::map<std::pair<std::size_t, Mask>, std::size_t> entries)
        : lattice_(std::move(lattice)), field_(field), entries_(std::move(entries))
    {
    }

    const FiniteAtomicLattice& lattice() const { return *lattice_; }
    const std::shared_ptr<const FiniteAtomicLattice>& lattice_ptr() const { return lattice_; }
    const FieldSpec& field() const { return field_; }

    /// Nonzero entries only, keyed by (homological degree, element).
    const std::map<std::pair<std::size_t, Mask>, std::size_t>& entries() const { return entries_; }

    std::size_t at(std::size_t i, Mask element) const
    {
        const auto it = entries_.find({i, element});
        return it == entries_.end() ? 0 : it->second;
    }

    bool contributes(Mask element) const
    {
        for (const auto& [k, v] : entries_)
            if (k.second == element)
                return true;
        return false;
    }

    /// Elements σ with β_{i,σ} ≠ 0, canonical order.
    std::vector<Mask> betti_elements(std::size_t i) const
    {
        std::vector<Mask> out;
        for (const auto& [k, v] : entries_)
            if (k.first == i)
                out.push_back(k.second);
        std::sort(out.begin(), out.end(), canonical_less);
        return out;
    }

    /// (β_0, ..., β_t) without trailing zeros.
    std::vector<std::size_t> totals() const
    {
        std::vector<std::size_t> t;
        for (const auto& [k, v] : entries_) {
            if (t.size() <= k.first)
                t.resize(k.first + 1, 0);
            t[k.first] += v;
        }
        while (!t.empty() && t.back() == 0)
            t.pop_back();
        return t;
    }

    std::size_t max_degree() const { return totals().empty() ? 0 : totals().size() - 1; }

private:
    std::shared_ptr<const FiniteAtomicLattice> lattice_;
    FieldSpec field_;
    std::map<std::pair<std::size_t, Mask>, std::size_t> entries_;
};

inline BettiTable betti_table(std::shared_ptr<const FiniteAtomicLattice> lattice, const FieldSpec& field,
                              IntervalHomologyCache* cache = nullptr)
{
    std::map<std::pair<std::size_t, Mask>, std::size_t> entries;
    entries[{0, 0}] = 1;
    for (Mask element : lattice->elements()) {
        if (element == 0)
            continue;
        const MaskPoset interval = lattice->open_interval(element);
        const ReducedHomologyDims dims = cache ? cache->get(interval, field) : poset_homology(interval, field);
        for (std::size_t idx = 0; idx < dims.dims.size(); ++idx)
            if (dims.dims[idx] != 0)
                entries[{idx + 1, element}] = dims.dims[idx]; // H̃_{j} with j = idx - 1 gives i = j + 2
    }
    return BettiTable(std::move(lattice), field, std::move(entries));
}

inline BettiTable betti_table(const FiniteAtomicLattice& lattice, const FieldSpec& field,
                              IntervalHomologyCache* cache = nullptr)
{
    return betti_table(std::make_shared<const FiniteAtomicLattice>(lattice), field, cache);
}

inline BettiTable betti_table(const LcmLattice& lattice, const FieldSpec& field,
                              IntervalHomologyCache* cache = nullptr)
{
    return betti_table(lattice.lattice(), field, cache);
}

} // namespace rigidres
