#pragma once

// Finite atomic lattices stored as intersection-closed families of atom
// supports. Atom i (1-based in user-facing formats) is bit i-1 of a Mask.
//
// In an atomic lattice the atoms below p ∧ q are exactly the atoms below both,
// so supports of meets are intersections and the family is closed under ∩.
// The join of two members is the smallest member containing their union.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "monomial.hpp"

namespace rigidres {

using Mask = std::uint64_t;
inline constexpr unsigned kMaxAtoms = 63;

class InvalidLattice : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Canonical element order: popcount, then numeric mask value.
inline bool canonical_less(Mask a, Mask b)
{
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
}

inline bool is_subset(Mask a, Mask b) { return (a & b) == a; }
inline bool is_proper_subset(Mask a, Mask b) { return a != b && (a & b) == a; }
inline bool comparable(Mask a, Mask b) { return is_subset(a, b) || is_subset(b, a); }

inline Mask full_mask(unsigned n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// 1-based atom list of a support, e.g. {1,3,5}.
inline std::vector<unsigned> atoms_of(Mask m)
{
    std::vector<unsigned> out;
    for (unsigned i = 0; m; ++i, m >>= 1)
        if (m & 1)
            out.push_back(i + 1);
    return out;
}

inline Mask mask_of(const std::vector<unsigned>& atoms)
{
    Mask m = 0;
    for (unsigned a : atoms) {
        if (a == 0 || a > kMaxAtoms)
            throw InvalidLattice("atom index " + std::to_string(a) + " out of range");
        m |= Mask{1} << (a - 1);
    }
    return m;
}

inline std::string support_string(Mask m)
{
    std::string s = "{";
    bool first = true;
    for (unsigned a : atoms_of(m)) {
        s += (first ? "" : ",") + std::to_string(a);
        first = false;
    }
    return s + "}";
}

/// A finite subfamily of masks ordered by inclusion (an induced subposet).
struct MaskPoset {
    std::vector<Mask> elements; // canonical order, which is a linear extension

    std::size_t size() const { return elements.size(); }
    bool empty() const { return elements.empty(); }
    bool contains(Mask m) const { return std::binary_search(elements.begin(), elements.end(), m, canonical_less); }

    static MaskPoset from(std::vector<Mask> masks)
    {
        std::sort(masks.begin(), masks.end(), canonical_less);
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
        return MaskPoset{std::move(masks)};
    }

    /// Elements strictly between 0 (exclusive) and `top` (exclusive).
    MaskPoset open_interval_below(Mask top) const
    {
        MaskPoset out;
        for (Mask m : elements)
            if (m != 0 && is_proper_subset(m, top))
                out.elements.push_back(m);
        return out;
    }

    friend bool operator==(const MaskPoset&, const MaskPoset&) = default;
};

/// Canonical encoding of a member of L(n).
struct LnKey {
    unsigned n = 0;
    std::vector<Mask> masks; // canonical order

    friend bool operator==(const LnKey&, const LnKey&) = default;
    friend auto operator<=>(const LnKey& a, const LnKey& b)
    {
        if (a.n != b.n)
            return a.n <=> b.n;
        return a.masks <=> b.masks;
    }
};

struct LnKeyHash {
    std::size_t operator()(const LnKey& k) const noexcept
    {
        std::size_t h = k.n * 0x9e3779b97f4a7c15ULL;
        for (Mask m : k.masks)
            h ^= m + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

struct NotALattice {
    std::string reason;
};

class FiniteAtomicLattice {
public:
    /// Validates and builds; throws InvalidLattice on failure.
    static FiniteAtomicLattice from_family(unsigned n, std::vector<Mask> family)
    {
        auto r = try_from_family(n, std::move(family));
        if (auto* bad = std::get_if<NotALattice>(&r))
            throw InvalidLattice(bad->reason);
        return std::get<FiniteAtomicLattice>(std::move(r));
    }

    static std::variant<FiniteAtomicLattice, NotALattice> try_from_family(unsigned n, std::vector<Mask> family)
    {
        if (n == 0 || n > kMaxAtoms)
            return NotALattice{"atom count " + std::to_string(n) + " outside 1.." + std::to_string(kMaxAtoms)};
        const Mask top = full_mask(n);
        std::sort(family.begin(), family.end(), canonical_less);
        family.erase(std::unique(family.begin(), family.end()), family.end());
        for (Mask m : family)
            if (m & ~top)
                return NotALattice{"element " + support_string(m) + " uses atoms beyond " + std::to_string(n)};
        auto has = [&](Mask m) { return std::binary_search(family.begin(), family.end(), m, canonical_less); };
        if (!has(0))
            return NotALattice{"missing bottom element {}"};
        if (!has(top))
            return NotALattice{"missing top element " + support_string(top)};
        for (unsigned i = 0; i < n; ++i)
            if (!has(Mask{1} << i))
                return NotALattice{"missing atom {" + std::to_string(i + 1) + "}"};
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = i + 1; j < family.size(); ++j)
                if (!has(family[i] & family[j]))
                    return NotALattice{"not intersection-closed: " + support_string(family[i]) + " ∩ " +
                                       support_string(family[j]) + " = " +
                                       support_string(family[i] & family[j]) + " is missing"};
        return FiniteAtomicLattice(n, std::move(family));
    }

    static FiniteAtomicLattice from_key(const LnKey& key) { return from_family(key.n, key.masks); }

    /// Boolean lattice on n atoms.
    static FiniteAtomicLattice boolean(unsigned n)
    {
        if (n > 20)
            throw InvalidLattice("Boolean lattice too large");
        std::vector<Mask> all;
        for (Mask m = 0; m <= full_mask(n); ++m)
            all.push_back(m);
        return from_family(n, std::move(all));
    }

    unsigned atom_count() const { return n_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<Mask>& elements() const { return elements_; }
    Mask bottom() const { return 0; }
    Mask top() const { return full_mask(n_); }
    static Mask atom(unsigned i) { return Mask{1} << (i - 1); }
    bool is_atom(Mask m) const { return std::popcount(m) == 1; }

    bool contains(Mask m) const { return index_.count(m) != 0; }

    std::size_t index_of(Mask m) const
    {
        const auto it = index_.find(m);
        if (it == index_.end())
            throw InvalidLattice("element " + support_string(m) + " is not in the lattice");
        return it->second;
    }

    /// Smallest member containing `s` (s need not be a member).
    Mask closure(Mask s) const
    {
        for (Mask m : elements_)
            if (is_subset(s, m))
                return m;
        throw InvalidLattice("no member contains " + support_string(s));
    }

    Mask join(Mask a, Mask b) const
    {
        index_of(a);
        index_of(b);
        return closure(a | b);
    }

    Mask meet(Mask a, Mask b) const
    {
        index_of(a);
        index_of(b);
        return a & b;
    }

    bool leq(Mask a, Mask b) const { return is_subset(a, b); }

    const std::vector<std::size_t>& upper_covers(std::size_t idx) const { return upper_[idx]; }
    const std::vector<std::size_t>& lower_covers(std::size_t idx) const { return lower_[idx]; }

    /// All (upper, lower) pairs with lower covered by upper.
    std::vector<std::pair<Mask, Mask>> covers() const
    {
        std::vector<std::pair<Mask, Mask>> out;
        for (std::size_t i = 0; i < elements_.size(); ++i)
            for (std::size_t lo : lower_[i])
                out.emplace_back(elements_[i], elements_[lo]);
        return out;
    }

    bool covers(Mask upper, Mask lower) const
    {
        const auto& lows = lower_[index_of(upper)];
        const std::size_t li = index_of(lower);
        return std::find(lows.begin(), lows.end(), li) != lows.end();
    }

    /// Elements other than the top with exactly one upper cover.
    std::vector<Mask> meet_irreducibles() const
    {
        std::vector<Mask> out;
        for (std::size_t i = 0; i < elements_.size(); ++i)
            if (elements_[i] != top() && upper_[i].size() == 1)
                out.push_back(elements_[i]);
        return out;
    }

    MaskPoset open_interval(Mask top_element) const
    {
        index_of(top_element);
        MaskPoset out;
        for (Mask m : elements_)
            if (m != 0 && is_proper_subset(m, top_element))
                out.elements.push_back(m);
        return out;
    }

    MaskPoset as_poset() const { return MaskPoset{elements_}; }

    LnKey key() const { return LnKey{n_, elements_}; }

    friend bool operator==(const FiniteAtomicLattice& a, const FiniteAtomicLattice& b)
    {
        return a.n_ == b.n_ && a.elements_ == b.elements_;
    }

private:
    FiniteAtomicLattice(unsigned n, std::vector<Mask> sorted) : n_(n), elements_(std::move(sorted))
    {
        const std::size_t size = elements_.size();
        for (std::size_t i = 0; i < size; ++i)
            index_.emplace(elements_[i], i);
        upper_.resize(size);
        lower_.resize(size);
        // Lower covers of x: maximal members among proper subsets of x.
        std::vector<std::size_t> below;
        for (std::size_t i = 0; i < size; ++i) {
            below.clear();
            for (std::size_t j = 0; j < i; ++j)
                if (is_proper_subset(elements_[j], elements_[i]))
                    below.push_back(j);
            for (std::size_t a = 0; a < below.size(); ++a) {
                bool maximal = true;
                for (std::size_t b = a + 1; b < below.size() && maximal; ++b)
                    if (is_proper_subset(elements_[below[a]], elements_[below[b]]))
                        maximal = false;
                if (maximal) {
                    lower_[i].push_back(below[a]);
                    upper_[below[a]].push_back(i);
                }
            }
        }
    }

    unsigned n_ = 0;
    std::vector<Mask> elements_;
    std::unordered_map<Mask, std::size_t> index_;
    std::vector<std::vector<std::size_t>> upper_;
    std::vector<std::vector<std::size_t>> lower_;
};

/// LCM(M): lattice of lcms of subsets of the generators, labeled by monomial.
class LcmLattice {
public:
    LcmLattice(FiniteAtomicLattice lattice, MonomialIdeal ideal, std::vector<Monomial> labels)
        : lattice_(std::move(lattice)), ideal_(std::move(ideal)), labels_(std::move(labels))
    {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (!by_label_.emplace(labels_[i], lattice_.elements()[i]).second)
                throw InvalidLattice("lcm labels are not injective");
    }

    const FiniteAtomicLattice& lattice() const { return lattice_; }
    const MonomialIdeal& ideal() const { return ideal_; }
    const RingPtr& ring() const { return ideal_.ring(); }

    const Monomial& label(Mask m) const { return labels_[lattice_.index_of(m)]; }
    const std::vector<Monomial>& labels() const { return labels_; }

    bool has_label(const Monomial& m) const { return by_label_.count(m) != 0; }

    Mask element_of(const Monomial& m) const
    {
        const auto it = by_label_.find(m);
        if (it == by_label_.end())
            throw InvalidLattice("multidegree " + m.to_string() + " is not an element of the lcm-lattice");
        return it->second;
    }

private:
    FiniteAtomicLattice lattice_;
    MonomialIdeal ideal_;
    std::vector<Monomial> labels_;
    std::map<Monomial, Mask> by_label_;
};

/// Requires a minimally generated ideal with at most 63 generators.
inline LcmLattice lcm_lattice(const MonomialIdeal& ideal)
{
    const auto& gens = ideal.generators();
    const std::size_t n = gens.size();
    if (n > kMaxAtoms)
        throw InvalidLattice("too many generators for the bitmask encoding");
    if (!ideal.is_minimally_generated())
        throw std::invalid_argument("lcm_lattice needs a minimally generated ideal; run minimalize_generators first");

    std::map<Monomial, Mask> supports;
    const Monomial one(ideal.ring());
    supports.emplace(one, 0);
    for (const auto& g : gens) {
        std::vector<Monomial> found;
        for (const auto& [m, unused] : supports) {
            Monomial l = lcm(m, g);
            if (!supports.count(l))
                found.push_back(std::move(l));
        }
        for (auto& l : found)
            supports.emplace(std::move(l), 0);
    }
    std::vector<Mask> family;
    std::vector<std::pair<Mask, Monomial>> labelled;
    for (auto& [m, support] : supports) {
        for (std::size_t i = 0; i < n; ++i)
            if (divides(gens[i], m))
                support |= Mask{1} << i;
        family.push_back(support);
        labelled.emplace_back(support, m);
    }
    auto lattice = FiniteAtomicLattice::from_family(static_cast<unsigned>(n), family);
    std::vector<Monomial> labels(lattice.size());
    for (auto& [support, m] : labelled)
        labels[lattice.index_of(support)] = m;
    return LcmLattice(std::move(lattice), ideal, std::move(labels));
}

/// Ideal realizing L: one variable per meet-irreducible m, and atom i gets
/// the product of the variables whose meet-irreducible does not contain i.
inline MonomialIdeal coordinatize(const FiniteAtomicLattice& lattice)
{
    const auto irreducibles = lattice.meet_irreducibles();
    std::vector<std::string> names;
    for (std::size_t k = 0; k < irreducibles.size(); ++k)
        names.push_back("x" + std::to_string(k + 1));
    const RingPtr ring = make_ring(std::move(names));
    std::vector<Monomial> gens;
    for (unsigned i = 0; i < lattice.atom_count(); ++i) {
        std::vector<Exponent> e(irreducibles.size(), 0);
        for (std::size_t k = 0; k < irreducibles.size(); ++k)
            if (!(irreducibles[k] & (Mask{1} << i)))
                e[k] = 1;
        gens.emplace_back(ring, std::move(e));
    }
    return MonomialIdeal(ring, std::move(gens));
}

/// A simplicial complex given by its facets (vertex i is bit i-1).
class SimplicialComplexRep {
public:
    SimplicialComplexRep(unsigned vertex_count, std::vector<Mask> facets)
        : v_(vertex_count), facets_(std::move(facets))
    {
        if (v_ == 0 || v_ > kMaxAtoms)
            throw std::invalid_argument("vertex count out of range");
        Mask covered = 0;
        for (std::size_t i = 0; i < facets_.size(); ++i) {
            if (facets_[i] == 0 || (facets_[i] & ~full_mask(v_)))
                throw std::invalid_argument("facet " + support_string(facets_[i]) + " is empty or out of range");
            covered |= facets_[i];
            for (std::size_t j = 0; j < facets_.size(); ++j)
                if (i != j && is_subset(facets_[i], facets_[j]))
                    throw std::invalid_argument("facets " + support_string(facets_[i]) + " and " +
                                                support_string(facets_[j]) + " are comparable");
        }
        if (covered != full_mask(v_))
            throw std::invalid_argument("some vertex lies in no facet");
        std::sort(facets_.begin(), facets_.end(), canonical_less);
    }

    /// Keeps only the inclusion-maximal sets; convenient for generated input.
    static SimplicialComplexRep from_faces(unsigned vertex_count, std::vector<Mask> faces)
    {
        std::vector<Mask> facets;
        for (Mask f : faces) {
            bool maximal = f != 0;
            for (Mask g : faces)
                if (is_proper_subset(f, g))
                    maximal = false;
            if (maximal && std::find(facets.begin(), facets.end(), f) == facets.end())
                facets.push_back(f);
        }
        return SimplicialComplexRep(vertex_count, std::move(facets));
    }

    unsigned vertex_count() const { return v_; }
    const std::vector<Mask>& facets() const { return facets_; }

    /// All nonempty faces, canonical order.
    std::vector<Mask> faces() const
    {
        std::vector<Mask> out;
        for (Mask f : facets_)
            for (Mask s = f;; s = (s - 1) & f) {
                if (s)
                    out.push_back(s);
                if (!s)
                    break;
            }
        std::sort(out.begin(), out.end(), canonical_less);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    unsigned v_;
    std::vector<Mask> facets_;
};

/// Cells (as vertex supports) plus an empty bottom and a full top; a lattice
/// only if the family is intersection-closed and contains every vertex.
inline std::variant<FiniteAtomicLattice, NotALattice> augmented_cell_lattice(unsigned vertex_count,
                                                                            std::vector<Mask> cells)
{
    cells.push_back(0);
    cells.push_back(full_mask(vertex_count));
    return FiniteAtomicLattice::try_from_family(vertex_count, std::move(cells));
}

inline std::variant<FiniteAtomicLattice, NotALattice> augmented_face_lattice(const SimplicialComplexRep& complex)
{
    return augmented_cell_lattice(complex.vertex_count(), complex.faces());
}

} // namespace rigidres
