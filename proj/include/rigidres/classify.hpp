#pragma once

// Rigidity, concentration, lattice-linearity and the Betti subposet.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "betti.hpp"
#include "lattice.hpp"
#include "resolution.hpp"

namespace rigidres {

struct RigidityReport {
    enum class Violation { None, R1, R2 };

    bool rigid = true;
    Violation violation = Violation::None;
    std::size_t degree = 0;  // homological degree of the witness
    Mask first = 0;          // R1: element with β > 1; R2: the smaller element
    Mask second = 0;         // R2: the larger element
    std::size_t value = 0;   // R1: the offending Betti number
};

/// (R1) every β_{i,σ} ∈ {0,1}; (R2) per degree i, Betti elements pairwise incomparable.
inline RigidityReport is_rigid(const BettiTable& table)
{
    RigidityReport report;
    for (const auto& [key, value] : table.entries())
        if (value > 1)
            return {false, RigidityReport::Violation::R1, key.first, key.second, 0, value};
    for (std::size_t i = 0; i <= table.max_degree(); ++i) {
        const auto elems = table.betti_elements(i);
        for (std::size_t a = 0; a < elems.size(); ++a)
            for (std::size_t b = a + 1; b < elems.size(); ++b)
                if (comparable(elems[a], elems[b])) {
                    const bool a_lower = is_subset(elems[a], elems[b]);
                    return {false, RigidityReport::Violation::R2, i, a_lower ? elems[a] : elems[b],
                            a_lower ? elems[b] : elems[a], 1};
                }
    }
    return report;
}

inline RigidityReport is_rigid(const FiniteAtomicLattice& lattice, const FieldSpec& field)
{
    return is_rigid(betti_table(lattice, field));
}

struct ConcentrationReport {
    bool concentrated = true;
    std::optional<Mask> non_contributor; // σ with all β_{i,σ} = 0 ...
    std::optional<Mask> contributor;     // ... and a contributing τ it fails against
};

/// DownClosed: no non-contributing element lies below a contributing one, so
/// the contributing elements form an order ideal. Strict: every non-contributing
/// element lies strictly above every contributing one.
enum class ConcentrationRule { DownClosed, Strict };

/// 0̂ contributes through β_{0,0̂} = 1.
inline ConcentrationReport is_concentrated(const BettiTable& table,
                                           ConcentrationRule rule = ConcentrationRule::DownClosed)
{
    std::vector<Mask> contributing, silent;
    for (Mask m : table.lattice().elements())
        (table.contributes(m) ? contributing : silent).push_back(m);
    for (Mask s : silent)
        for (Mask c : contributing) {
            const bool bad = rule == ConcentrationRule::Strict ? !is_proper_subset(c, s) : is_proper_subset(s, c);
            if (bad)
                return {false, s, c};
        }
    return {};
}

inline ConcentrationReport is_concentrated(const FiniteAtomicLattice& lattice, const FieldSpec& field,
                                           ConcentrationRule rule = ConcentrationRule::DownClosed)
{
    return is_concentrated(betti_table(lattice, field), rule);
}

/// Induced subposet on 0̂ and every element carrying a nonzero Betti number.
inline MaskPoset betti_subposet(const BettiTable& table)
{
    MaskPoset out;
    for (Mask m : table.lattice().elements())
        if (m == 0 || table.contributes(m))
            out.elements.push_back(m);
    return out;
}

inline MaskPoset betti_subposet(const FiniteAtomicLattice& lattice, const FieldSpec& field)
{
    return betti_subposet(betti_table(lattice, field));
}

struct LatticeLinearityReport {
    bool lattice_linear = false;
    bool certificate_only = false; // ideal not rigid: the verdict concerns one basis only
};

/// Minimal resolution by Taylor minimalization, then the cover-support test.
inline LatticeLinearityReport is_lattice_linear(const MonomialIdeal& ideal, const FieldSpec& field)
{
    const LcmLattice lattice = lcm_lattice(ideal);
    const auto res = minimal_resolution(ideal, field);
    LatticeLinearityReport report;
    report.lattice_linear = lattice_linear_support(res, lattice);
    report.certificate_only = !is_rigid(betti_table(lattice, field)).rigid;
    return report;
}

struct InvarianceReport {
    bool invariant = true;
    std::optional<Mask> witness;
    std::optional<ReducedHomologyDims> in_lattice;
    std::optional<ReducedHomologyDims> in_subposet;
};

/// For each nonzero q of the Betti subposet, H̃ of (0̂, q) is the same whether
/// the interval is taken in the lattice or in the Betti subposet.
inline InvarianceReport interval_homology_invariance(const BettiTable& table)
{
    const MaskPoset sub = betti_subposet(table);
    for (Mask q : sub.elements) {
        if (q == 0)
            continue;
        const MaskPoset full_interval = table.lattice().open_interval(q);
        const MaskPoset sub_interval = sub.open_interval_below(q);
        if (full_interval == sub_interval)
            continue;
        auto a = poset_homology(full_interval, table.field());
        auto b = poset_homology(sub_interval, table.field());
        if (!(a == b))
            return {false, q, std::move(a), std::move(b)};
    }
    return {};
}

inline InvarianceReport interval_homology_invariance(const FiniteAtomicLattice& lattice, const FieldSpec& field)
{
    return interval_homology_invariance(betti_table(lattice, field));
}

} // namespace rigidres
