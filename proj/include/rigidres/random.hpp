#pragma once

// Seeded generators for sweep inputs: small monomial ideals and acyclic
// simplicial complexes.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "homology.hpp"
#include "lattice.hpp"
#include "monomial.hpp"

namespace rigidres {

struct RandomIdealShape {
    std::size_t max_generators = 5;
    std::size_t max_variables = 4;
    Exponent max_exponent = 3;
};

/// Minimally generated ideal drawn uniformly over exponent vectors; the unit
/// monomial is never drawn.
inline MonomialIdeal random_ideal(std::mt19937_64& rng, const RandomIdealShape& shape = {})
{
    std::uniform_int_distribution<std::size_t> vars_dist(1, shape.max_variables);
    std::uniform_int_distribution<std::size_t> gens_dist(1, shape.max_generators);
    std::uniform_int_distribution<Exponent> exp_dist(0, shape.max_exponent);
    const std::size_t d = vars_dist(rng);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i)
        names.push_back(std::string(1, static_cast<char>('a' + i)));
    const RingPtr ring = make_ring(std::move(names));
    const std::size_t count = gens_dist(rng);
    std::vector<Monomial> gens;
    while (gens.size() < count) {
        std::vector<Exponent> e(d);
        for (auto& x : e)
            x = exp_dist(rng);
        Monomial m(ring, std::move(e));
        if (!m.is_one())
            gens.push_back(std::move(m));
    }
    return minimalize_generators(MonomialIdeal(ring, std::move(gens)));
}

/// Random complex on at most `max_vertices` vertices, every vertex used.
inline SimplicialComplexRep random_complex(std::mt19937_64& rng, unsigned max_vertices = 6)
{
    std::uniform_int_distribution<unsigned> v_dist(1, max_vertices);
    const unsigned v = v_dist(rng);
    std::uniform_int_distribution<Mask> face_dist(1, full_mask(v));
    std::uniform_int_distribution<unsigned> count_dist(1, v + 1);
    std::vector<Mask> faces;
    for (unsigned k = count_dist(rng); k > 0; --k)
        faces.push_back(face_dist(rng));
    // Compress away unused vertices.
    Mask used = 0;
    for (Mask f : faces)
        used |= f;
    std::vector<Mask> compressed;
    for (Mask f : faces) {
        Mask g = 0;
        unsigned bit = 0;
        for (unsigned i = 0; i < v; ++i) {
            if (!(used & (Mask{1} << i)))
                continue;
            if (f & (Mask{1} << i))
                g |= Mask{1} << bit;
            ++bit;
        }
        compressed.push_back(g);
    }
    return SimplicialComplexRep::from_faces(static_cast<unsigned>(std::popcount(used)), std::move(compressed));
}

/// Rejection-samples random_complex until the complex is acyclic over `field`.
inline SimplicialComplexRep random_acyclic_complex(std::mt19937_64& rng, const FieldSpec& field,
                                                   unsigned max_vertices = 6, std::size_t max_attempts = 100000)
{
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        auto complex = random_complex(rng, max_vertices);
        if (reduced_homology_dims(complex, field).acyclic())
            return complex;
    }
    throw std::runtime_error("no acyclic complex found within the attempt limit");
}

} // namespace rigidres
