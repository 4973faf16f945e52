#pragma once

// Multigraded free resolutions of R/M stored as basis multidegrees plus
// scalar differential matrices. The ring coefficient of entry D_i[r][c] is the
// stored scalar times mdeg(c)/mdeg(r); homogeneity makes the monomial implicit.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "monomial.hpp"

namespace rigidres {

class ResolutionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MultigradedFreeResolution {
public:
    /// bases[i] is the basis of F_i; differentials[i - 1] is D_i : F_i → F_{i-1}.
    MultigradedFreeResolution(FieldSpec field, RingPtr ring, std::vector<std::vector<Monomial>> bases,
                              std::vector<ScalarMatrix> differentials)
        : field_(field), ring_(std::move(ring)), bases_(std::move(bases)), diffs_(std::move(differentials))
    {
        if (bases_.empty())
            throw ResolutionError("a resolution needs a degree-0 basis");
        if (diffs_.size() + 1 != bases_.size())
            throw ResolutionError("need one differential per positive homological degree");
        for (std::size_t i = 1; i < bases_.size(); ++i) {
            const auto& d = diffs_[i - 1];
            if (!(d.field() == field_))
                throw FieldMismatch("differential D_" + std::to_string(i) + " over " + d.field().name());
            if (d.rows() != bases_[i - 1].size() || d.cols() != bases_[i].size())
                throw ResolutionError("differential D_" + std::to_string(i) + " has the wrong shape");
        }
        for (const auto& basis : bases_)
            for (const auto& m : basis)
                if (!same_ring(m.ring(), ring_))
                    throw AmbientMismatch("basis multidegree " + m.to_string() + " is not in the resolution's ring");
        trim();
    }

    const FieldSpec& field() const { return field_; }
    const RingPtr& ring() const { return ring_; }

    /// Largest homological degree with a nonzero module.
    std::size_t length() const { return bases_.size() - 1; }
    std::size_t rank(std::size_t i) const { return i < bases_.size() ? bases_[i].size() : 0; }

    std::vector<std::size_t> ranks() const
    {
        std::vector<std::size_t> r;
        for (const auto& b : bases_)
            r.push_back(b.size());
        return r;
    }

    const std::vector<Monomial>& basis(std::size_t i) const { return bases_.at(i); }
    const std::vector<std::vector<Monomial>>& bases() const { return bases_; }

    /// D_i for 1 ≤ i ≤ length().
    const ScalarMatrix& differential(std::size_t i) const
    {
        if (i == 0 || i > diffs_.size())
            throw std::out_of_range("no differential D_" + std::to_string(i));
        return diffs_[i - 1];
    }
    const std::vector<ScalarMatrix>& differentials() const { return diffs_; }

    /// No nonzero entry joins two basis elements of equal multidegree.
    bool is_minimal() const
    {
        for (std::size_t i = 1; i < bases_.size(); ++i) {
            const auto& d = diffs_[i - 1];
            for (std::size_t r = 0; r < d.rows(); ++r)
                for (std::size_t c = 0; c < d.cols(); ++c)
                    if (!d(r, c).is_zero() && bases_[i - 1][r] == bases_[i][c])
                        return false;
        }
        return true;
    }

private:
    void trim()
    {
        while (bases_.size() > 1 && bases_.back().empty()) {
            bases_.pop_back();
            diffs_.pop_back();
        }
    }

    FieldSpec field_;
    RingPtr ring_;
    std::vector<std::vector<Monomial>> bases_;
    std::vector<ScalarMatrix> diffs_;
};

inline constexpr std::size_t kMaxTaylorGenerators = 20;

/// Taylor resolution: degree i has one basis element per i-subset T of the
/// generators, of multidegree lcm(T); the entry from T to T∖{t} is (-1)^pos(t).
inline MultigradedFreeResolution taylor_complex(const MonomialIdeal& ideal, const FieldSpec& field)
{
    const std::size_t n = ideal.size();
    if (n > kMaxTaylorGenerators)
        throw std::length_error("Taylor complex on " + std::to_string(n) + " generators exceeds the limit of " +
                                std::to_string(kMaxTaylorGenerators));
    std::vector<std::vector<Mask>> subsets(n + 1);
    for (Mask s = 0; s < (Mask{1} << n); ++s)
        subsets[static_cast<std::size_t>(std::popcount(s))].push_back(s);

    std::vector<std::vector<Monomial>> bases(n + 1);
    std::vector<std::map<Mask, std::size_t>> index(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        for (Mask s : subsets[i]) {
            Monomial m(ideal.ring());
            for (std::size_t k = 0; k < n; ++k)
                if (s & (Mask{1} << k))
                    m = lcm(m, ideal[k]);
            index[i].emplace(s, bases[i].size());
            bases[i].push_back(std::move(m));
        }

    std::vector<ScalarMatrix> diffs;
    for (std::size_t i = 1; i <= n; ++i) {
        ScalarMatrix d(field, subsets[i - 1].size(), subsets[i].size());
        for (std::size_t c = 0; c < subsets[i].size(); ++c) {
            const Mask s = subsets[i][c];
            int pos = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (!(s & (Mask{1} << k)))
                    continue;
                d(index[i - 1].at(s & ~(Mask{1} << k)), c) = Scalar(field, pos % 2 == 0 ? 1 : -1);
                ++pos;
            }
        }
        diffs.push_back(std::move(d));
    }
    return MultigradedFreeResolution(field, ideal.ring(), std::move(bases), std::move(diffs));
}

/// How minimalize picks the next unit entry to cancel.
struct PivotSchedule {
    enum class Rule { Canonical, Random };
    Rule rule = Rule::Canonical;
    std::uint64_t seed = 0;

    static PivotSchedule canonical() { return {}; }
    static PivotSchedule random(std::uint64_t seed) { return {Rule::Random, seed}; }
};

namespace detail {

struct Pivot {
    std::size_t degree; // homological degree of the column
    std::size_t row;
    std::size_t col;
};

inline std::vector<std::size_t> canonical_order(const std::vector<Monomial>& basis)
{
    std::vector<std::size_t> order(basis.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return basis[a] < basis[b]; });
    return order;
}

inline std::vector<std::size_t> all_but(std::size_t size, std::size_t skip)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < size; ++k)
        if (k != skip)
            out.push_back(k);
    return out;
}

} // namespace detail

/// Cancels unit entries between equal multidegrees until none remain.
/// Homology is preserved by each cancellation.
inline MultigradedFreeResolution minimalize(const MultigradedFreeResolution& input,
                                            PivotSchedule schedule = PivotSchedule::canonical())
{
    const FieldSpec field = input.field();
    std::vector<std::vector<Monomial>> bases = input.bases();
    std::vector<ScalarMatrix> diffs = input.differentials();
    std::mt19937_64 rng(schedule.seed);

    auto find_pivot = [&]() -> std::optional<detail::Pivot> {
        if (schedule.rule == PivotSchedule::Rule::Random) {
            std::vector<detail::Pivot> eligible;
            for (std::size_t i = 1; i < bases.size(); ++i) {
                const auto& d = diffs[i - 1];
                for (std::size_t c = 0; c < d.cols(); ++c)
                    for (std::size_t r = 0; r < d.rows(); ++r)
                        if (!d(r, c).is_zero() && bases[i - 1][r] == bases[i][c])
                            eligible.push_back({i, r, c});
            }
            if (eligible.empty())
                return std::nullopt;
            std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
            return eligible[pick(rng)];
        }
        for (std::size_t i = bases.size() - 1; i >= 1; --i) {
            const auto& d = diffs[i - 1];
            const auto cols = detail::canonical_order(bases[i]);
            const auto rows = detail::canonical_order(bases[i - 1]);
            for (std::size_t c : cols)
                for (std::size_t r : rows)
                    if (bases[i - 1][r] == bases[i][c] && !d(r, c).is_zero())
                        return detail::Pivot{i, r, c};
        }
        return std::nullopt;
    };

    while (auto pivot = find_pivot()) {
        const std::size_t i = pivot->degree, r = pivot->row, c = pivot->col;
        ScalarMatrix& d = diffs[i - 1];
        const Scalar unit_inv = d(r, c).inverse();
        // D_i ← D_i − D_i[:, c] · D_i[r, :] / u, then drop row r and column c.
        for (std::size_t rr = 0; rr < d.rows(); ++rr) {
            if (rr == r || d(rr, c).is_zero())
                continue;
            const Scalar factor = d(rr, c) * unit_inv;
            for (std::size_t cc = 0; cc < d.cols(); ++cc)
                if (cc != c && !d(r, cc).is_zero())
                    d(rr, cc) -= factor * d(r, cc);
        }
        d = d.submatrix(detail::all_but(d.rows(), r), detail::all_but(d.cols(), c));
        if (i < diffs.size()) {
            ScalarMatrix& up = diffs[i];
            std::vector<std::size_t> cols(up.cols());
            std::iota(cols.begin(), cols.end(), std::size_t{0});
            up = up.submatrix(detail::all_but(up.rows(), c), cols);
        }
        if (i >= 2) {
            ScalarMatrix& down = diffs[i - 2];
            std::vector<std::size_t> rows(down.rows());
            std::iota(rows.begin(), rows.end(), std::size_t{0});
            down = down.submatrix(rows, detail::all_but(down.cols(), r));
        }
        bases[i].erase(bases[i].begin() + static_cast<std::ptrdiff_t>(c));
        bases[i - 1].erase(bases[i - 1].begin() + static_cast<std::ptrdiff_t>(r));
    }
    return MultigradedFreeResolution(field, input.ring(), std::move(bases), std::move(diffs));
}

/// Replaces basis vector e by s·e for the given nonzero scalars
/// (scales[i][k] for basis element k of F_i).
inline MultigradedFreeResolution rescale_basis(const MultigradedFreeResolution& res,
                                               const std::vector<std::vector<Scalar>>& scales)
{
    std::vector<ScalarMatrix> diffs = res.differentials();
    for (std::size_t i = 1; i <= res.length(); ++i) {
        ScalarMatrix& d = diffs[i - 1];
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (std::size_t c = 0; c < d.cols(); ++c)
                if (!d(r, c).is_zero())
                    d(r, c) = d(r, c) * scales.at(i)[c] / scales.at(i - 1)[r];
    }
    return MultigradedFreeResolution(res.field(), res.ring(), res.bases(), std::move(diffs));
}

/// Reorders each basis; perms[i][k] is the old index of new basis element k.
inline MultigradedFreeResolution reorder_basis(const MultigradedFreeResolution& res,
                                               const std::vector<std::vector<std::size_t>>& perms)
{
    std::vector<std::vector<Monomial>> bases(res.length() + 1);
    for (std::size_t i = 0; i <= res.length(); ++i)
        for (std::size_t k : perms.at(i))
            bases[i].push_back(res.basis(i).at(k));
    std::vector<ScalarMatrix> diffs;
    for (std::size_t i = 1; i <= res.length(); ++i)
        diffs.push_back(res.differential(i).submatrix(perms.at(i - 1), perms.at(i)));
    return MultigradedFreeResolution(res.field(), res.ring(), std::move(bases), std::move(diffs));
}

struct VerificationReport {
    bool ok = true;
    std::string failure;              // empty when ok
    std::optional<Monomial> witness;  // offending multidegree
    std::optional<std::size_t> degree; // offending homological degree

    explicit operator bool() const { return ok; }
};

namespace detail {

inline VerificationReport fail(std::string what, std::optional<Monomial> witness = std::nullopt,
                               std::optional<std::size_t> degree = std::nullopt)
{
    return VerificationReport{false, std::move(what), std::move(witness), degree};
}

} // namespace detail

/// Checks homogeneity, D∘D = 0, and exactness of every multigraded strand
/// at the elements of LCM(I). Every basis multidegree must be an lcm of generators.
inline VerificationReport verify_resolution(const MultigradedFreeResolution& res, const MonomialIdeal& ideal)
{
    if (!same_ring(res.ring(), ideal.ring()))
        return detail::fail("resolution and ideal live in different rings");
    const MonomialIdeal minimal = minimalize_generators(ideal);
    const LcmLattice lattice = lcm_lattice(minimal);

    if (res.rank(0) != 1 || !res.basis(0).front().is_one())
        return detail::fail("F_0 must be a single basis element of multidegree 1", std::nullopt, 0);

    for (std::size_t i = 0; i <= res.length(); ++i)
        for (const auto& m : res.basis(i))
            if (!lattice.has_label(m))
                return detail::fail("basis multidegree " + m.to_string() + " in degree " + std::to_string(i) +
                                        " is not an element of the lcm-lattice",
                                    m, i);

    for (std::size_t i = 1; i <= res.length(); ++i) {
        const auto& d = res.differential(i);
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (std::size_t c = 0; c < d.cols(); ++c)
                if (!d(r, c).is_zero() && !divides(res.basis(i - 1)[r], res.basis(i)[c]))
                    return detail::fail("entry of D_" + std::to_string(i) + " is not homogeneous",
                                        res.basis(i)[c], i);
    }

    for (std::size_t i = 1; i < res.length(); ++i) {
        const ScalarMatrix prod = multiply(res.differential(i), res.differential(i + 1));
        for (std::size_t r = 0; r < prod.rows(); ++r)
            for (std::size_t c = 0; c < prod.cols(); ++c)
                if (!prod(r, c).is_zero())
                    return detail::fail("D_" + std::to_string(i) + " ∘ D_" + std::to_string(i + 1) + " ≠ 0",
                                        res.basis(i + 1)[c], i + 1);
    }

    for (Mask element : lattice.lattice().elements()) {
        const Monomial& b = lattice.label(element);
        // strand: basis elements whose multidegree divides b
        std::vector<std::vector<std::size_t>> strand(res.length() + 1);
        for (std::size_t i = 0; i <= res.length(); ++i)
            for (std::size_t k = 0; k < res.rank(i); ++k)
                if (divides(res.basis(i)[k], b))
                    strand[i].push_back(k);
        std::vector<std::size_t> rank(res.length() + 2, 0);
        for (std::size_t i = 1; i <= res.length(); ++i)
            rank[i] = exact_rank(res.differential(i).submatrix(strand[i - 1], strand[i]));
        for (std::size_t i = 0; i <= res.length(); ++i) {
            const std::size_t homology = strand[i].size() - rank[i] - rank[i + 1];
            const std::size_t expected = (i == 0 && element == 0) ? 1 : 0;
            if (homology != expected)
                return detail::fail("strand at " + b.to_string() + " has homology of dimension " +
                                        std::to_string(homology) + " in degree " + std::to_string(i),
                                    b, i);
        }
    }
    return {};
}

/// Every nonzero entry joins a multidegree to one it covers in LCM(M).
inline bool lattice_linear_support(const MultigradedFreeResolution& res, const LcmLattice& lattice)
{
    for (std::size_t i = 1; i <= res.length(); ++i) {
        const auto& d = res.differential(i);
        for (std::size_t c = 0; c < d.cols(); ++c) {
            const Mask upper = lattice.element_of(res.basis(i)[c]);
            for (std::size_t r = 0; r < d.rows(); ++r) {
                if (d(r, c).is_zero())
                    continue;
                if (!lattice.lattice().covers(upper, lattice.element_of(res.basis(i - 1)[r])))
                    return false;
            }
        }
    }
    return true;
}

/// Basis multidegrees and nonzero-entry pattern per degree; invariant under
/// rescaling and reordering of the bases.
struct ResolutionSignature {
    std::vector<std::vector<Monomial>> multidegrees;                    // sorted multisets
    std::vector<std::vector<std::pair<Monomial, Monomial>>> entries;    // entries[i - 1] for D_i: (row, col)

    friend bool operator==(const ResolutionSignature&, const ResolutionSignature&) = default;
};

inline ResolutionSignature signature(const MultigradedFreeResolution& res)
{
    ResolutionSignature sig;
    for (std::size_t i = 0; i <= res.length(); ++i) {
        auto degs = res.basis(i);
        std::sort(degs.begin(), degs.end());
        sig.multidegrees.push_back(std::move(degs));
    }
    for (std::size_t i = 1; i <= res.length(); ++i) {
        std::vector<std::pair<Monomial, Monomial>> pairs;
        const auto& d = res.differential(i);
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (std::size_t c = 0; c < d.cols(); ++c)
                if (!d(r, c).is_zero())
                    pairs.emplace_back(res.basis(i - 1)[r], res.basis(i)[c]);
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        sig.entries.push_back(std::move(pairs));
    }
    return sig;
}

using MultidegreeMap = std::map<Monomial, Monomial>;

inline const Monomial& apply_map(const MultidegreeMap& phi, const Monomial& m)
{
    const auto it = phi.find(m);
    if (it == phi.end())
        throw ResolutionError("multidegree map undefined on " + m.to_string());
    return it->second;
}

/// Pushes `sig` through phi (re-sorting) and compares with `target`.
inline bool signatures_equal(const ResolutionSignature& sig, const ResolutionSignature& target,
                             const MultidegreeMap& phi)
{
    ResolutionSignature mapped;
    for (const auto& degs : sig.multidegrees) {
        std::vector<Monomial> out;
        for (const auto& m : degs)
            out.push_back(apply_map(phi, m));
        std::sort(out.begin(), out.end());
        mapped.multidegrees.push_back(std::move(out));
    }
    for (const auto& pairs : sig.entries) {
        std::vector<std::pair<Monomial, Monomial>> out;
        for (const auto& [r, c] : pairs)
            out.emplace_back(apply_map(phi, r), apply_map(phi, c));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        mapped.entries.push_back(std::move(out));
    }
    return mapped == target;
}

inline bool signatures_equal(const ResolutionSignature& a, const ResolutionSignature& b) { return a == b; }

/// Replaces each basis multidegree b of F_i by f_i(b) in the target lattice's
/// ring; throws if the maps break divisibility along a nonzero entry.
inline MultigradedFreeResolution relabel_by_degree(const MultigradedFreeResolution& res,
                                                   const std::vector<MultidegreeMap>& maps, const LcmLattice& target)
{
    if (maps.size() < res.length() + 1)
        throw ResolutionError("need one multidegree map per homological degree");
    std::vector<std::vector<Monomial>> bases;
    for (std::size_t i = 0; i <= res.length(); ++i) {
        std::vector<Monomial> out;
        for (const auto& m : res.basis(i)) {
            const Monomial& image = apply_map(maps[i], m);
            if (!target.has_label(image))
                throw ResolutionError("image " + image.to_string() + " of " + m.to_string() +
                                      " is not an element of the target lattice");
            out.push_back(image);
        }
        bases.push_back(std::move(out));
    }
    for (std::size_t i = 1; i <= res.length(); ++i) {
        const auto& d = res.differential(i);
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (std::size_t c = 0; c < d.cols(); ++c)
                if (!d(r, c).is_zero() && !divides(bases[i - 1][r], bases[i][c]))
                    throw ResolutionError("relabeling is not order-preserving: " + bases[i - 1][r].to_string() +
                                          " does not divide " + bases[i][c].to_string());
    }
    return MultigradedFreeResolution(res.field(), target.ring(), std::move(bases), res.differentials());
}

inline MultigradedFreeResolution relabel(const MultigradedFreeResolution& res, const MultidegreeMap& f,
                                         const LcmLattice& target)
{
    return relabel_by_degree(res, std::vector<MultidegreeMap>(res.length() + 1, f), target);
}

/// Minimal free resolution of R/M via Taylor minimalization.
inline MultigradedFreeResolution minimal_resolution(const MonomialIdeal& ideal, const FieldSpec& field,
                                                    PivotSchedule schedule = PivotSchedule::canonical())
{
    return minimalize(taylor_complex(ideal, field), schedule);
}

} // namespace rigidres
