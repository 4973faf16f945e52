#pragma once

// Order complexes and reduced simplicial homology over a field.
//
// Faces are enumerated explicitly; the complexes met here come from intervals
// of small lattices. The reduced convention includes the empty face, so the
// empty complex has H̃_{-1} = 1.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "lattice.hpp"
#include "matrix.hpp"

namespace rigidres {

inline constexpr std::size_t kMaxFaces = std::size_t{1} << 22;

class ComplexTooLarge : public std::length_error {
public:
    using std::length_error::length_error;
};

using Face = std::vector<std::uint32_t>; // ascending vertex indices

/// Nonempty faces grouped by dimension, each group sorted lexicographically.
struct FaceList {
    std::size_t vertex_count = 0;
    std::vector<std::vector<Face>> by_dim;

    int dimension() const { return static_cast<int>(by_dim.size()) - 1; }

    std::size_t count(int dim) const
    {
        if (dim == -1)
            return 1;
        if (dim < -1 || dim > dimension())
            return 0;
        return by_dim[static_cast<std::size_t>(dim)].size();
    }

    std::size_t total() const
    {
        std::size_t t = 0;
        for (const auto& g : by_dim)
            t += g.size();
        return t;
    }
};

/// Order complex of an inclusion-ordered family: faces are chains.
struct OrderComplex {
    std::vector<Mask> vertices; // poset elements, canonical order
    FaceList faces;
};

inline OrderComplex order_complex(const MaskPoset& poset)
{
    OrderComplex out;
    out.vertices = poset.elements;
    out.faces.vertex_count = poset.size();
    const auto& el = poset.elements;
    const std::size_t n = el.size();

    // above[i]: later elements strictly containing element i
    std::vector<std::vector<std::uint32_t>> above(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (is_proper_subset(el[i], el[j]))
                above[i].push_back(static_cast<std::uint32_t>(j));

    std::size_t produced = 0;
    Face chain;
    auto extend = [&](auto&& self, std::uint32_t last) -> void {
        const std::size_t dim = chain.size() - 1;
        if (out.faces.by_dim.size() <= dim)
            out.faces.by_dim.resize(dim + 1);
        out.faces.by_dim[dim].push_back(chain);
        if (++produced > kMaxFaces)
            throw ComplexTooLarge("order complex exceeds " + std::to_string(kMaxFaces) + " faces");
        for (std::uint32_t next : above[last]) {
            chain.push_back(next);
            self(self, next);
            chain.pop_back();
        }
    };
    for (std::uint32_t v = 0; v < n; ++v) {
        chain.assign(1, v);
        extend(extend, v);
    }
    for (auto& group : out.faces.by_dim)
        std::sort(group.begin(), group.end());
    return out;
}

inline FaceList face_list(const SimplicialComplexRep& complex)
{
    FaceList out;
    out.vertex_count = complex.vertex_count();
    const auto faces = complex.faces();
    if (faces.size() > kMaxFaces)
        throw ComplexTooLarge("complex exceeds " + std::to_string(kMaxFaces) + " faces");
    for (Mask f : faces) {
        Face face;
        for (unsigned a : atoms_of(f))
            face.push_back(a - 1);
        const std::size_t dim = face.size() - 1;
        if (out.by_dim.size() <= dim)
            out.by_dim.resize(dim + 1);
        out.by_dim[dim].push_back(std::move(face));
    }
    for (auto& group : out.by_dim)
        std::sort(group.begin(), group.end());
    return out;
}

/// Boundary ∂_dim : C_dim → C_{dim-1} as an integer matrix (rows = (dim-1)-faces).
/// ∂_0 is the augmentation onto the empty face.
inline std::vector<std::vector<long long>> boundary_matrix(const FaceList& faces, int dim)
{
    if (dim < 0 || dim > faces.dimension())
        return {};
    const auto& cols = faces.by_dim[static_cast<std::size_t>(dim)];
    if (dim == 0)
        return {std::vector<long long>(cols.size(), 1)};
    const auto& rows = faces.by_dim[static_cast<std::size_t>(dim - 1)];
    std::vector<std::vector<long long>> m(rows.size(), std::vector<long long>(cols.size(), 0));
    Face facet;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Face& face = cols[c];
        for (std::size_t k = 0; k < face.size(); ++k) {
            facet.assign(face.begin(), face.end());
            facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(k));
            const auto it = std::lower_bound(rows.begin(), rows.end(), facet);
            if (it == rows.end() || *it != facet)
                throw std::logic_error("face list is not closed under taking faces");
            m[static_cast<std::size_t>(it - rows.begin())][c] = (k % 2 == 0) ? 1 : -1;
        }
    }
    return m;
}

namespace detail {

/// Rows of ∂_dim in sparse form; same entries as boundary_matrix.
inline std::vector<SparseRow> sparse_boundary(const FaceList& faces, int dim)
{
    const auto& cols = faces.by_dim[static_cast<std::size_t>(dim)];
    if (dim == 0) {
        SparseRow ones;
        for (std::size_t c = 0; c < cols.size(); ++c)
            ones.emplace_back(c, 1);
        return {std::move(ones)};
    }
    const auto& rows = faces.by_dim[static_cast<std::size_t>(dim - 1)];
    std::vector<SparseRow> m(rows.size());
    Face facet;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Face& face = cols[c];
        for (std::size_t k = 0; k < face.size(); ++k) {
            facet.assign(face.begin(), face.end());
            facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(k));
            const auto it = std::lower_bound(rows.begin(), rows.end(), facet);
            if (it == rows.end() || *it != facet)
                throw std::logic_error("face list is not closed under taking faces");
            m[static_cast<std::size_t>(it - rows.begin())].emplace_back(c, (k % 2 == 0) ? 1 : -1);
        }
    }
    return m; // columns visited in increasing order, so rows are sorted
}

} // namespace detail

struct ReducedHomologyDims {
    FieldSpec field;
    std::vector<std::size_t> dims; // dims[j + 1] = dim H̃_j, j ≥ -1

    std::size_t at(int j) const
    {
        const int idx = j + 1;
        if (idx < 0 || idx >= static_cast<int>(dims.size()))
            return 0;
        return dims[static_cast<std::size_t>(idx)];
    }

    bool acyclic() const
    {
        return std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0; });
    }

    /// Σ (-1)^j dim H̃_j.
    long long euler_characteristic() const
    {
        long long chi = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            const int j = static_cast<int>(i) - 1;
            chi += (j % 2 == 0 ? 1 : -1) * static_cast<long long>(dims[i]);
        }
        return chi;
    }

    friend bool operator==(const ReducedHomologyDims& a, const ReducedHomologyDims& b)
    {
        const std::size_t n = std::max(a.dims.size(), b.dims.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a.at(static_cast<int>(i) - 1) != b.at(static_cast<int>(i) - 1))
                return false;
        return true;
    }
};

/// Reduced Euler characteristic from face counts, empty face included.
inline long long reduced_euler_characteristic(const FaceList& faces)
{
    long long chi = -1;
    for (int j = 0; j <= faces.dimension(); ++j)
        chi += (j % 2 == 0 ? 1 : -1) * static_cast<long long>(faces.count(j));
    return chi;
}

inline ReducedHomologyDims reduced_homology_dims(const FaceList& faces, const FieldSpec& field)
{
    const int top = faces.dimension();
    // rank[j] = rank ∂_j for j = 0..top; ∂_{-1} and ∂_{top+1} vanish.
    std::vector<std::size_t> rank(static_cast<std::size_t>(top + 2), 0);
    for (int j = 0; j <= top; ++j)
        rank[static_cast<std::size_t>(j)] = sparse_integer_rank(detail::sparse_boundary(faces, j), faces.count(j), field);

    ReducedHomologyDims out{field, {}};
    for (int j = -1; j <= top; ++j) {
        const std::size_t cycles = faces.count(j) - (j >= 0 ? rank[static_cast<std::size_t>(j)] : 0);
        const std::size_t bounds = rank[static_cast<std::size_t>(j + 1)];
        out.dims.push_back(cycles - bounds);
    }
    return out;
}

inline ReducedHomologyDims reduced_homology_dims(const OrderComplex& complex, const FieldSpec& field)
{
    return reduced_homology_dims(complex.faces, field);
}

inline ReducedHomologyDims reduced_homology_dims(const SimplicialComplexRep& complex, const FieldSpec& field)
{
    return reduced_homology_dims(face_list(complex), field);
}

/// H̃ of the order complex of an inclusion-ordered family.
inline ReducedHomologyDims poset_homology(const MaskPoset& poset, const FieldSpec& field)
{
    return reduced_homology_dims(order_complex(poset), field);
}

} // namespace rigidres
