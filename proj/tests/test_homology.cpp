#include <gtest/gtest.h>

#include <random>

#include <rigidres/homology.hpp>
#include <rigidres/ln.hpp>
#include <rigidres/random.hpp>

#include "oracles.hpp"
#include "corpus.hpp"

using namespace rigidres;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);

std::vector<std::size_t> dims(const SimplicialComplexRep& c, const FieldSpec& f)
{
    auto d = reduced_homology_dims(c, f).dims;
    while (!d.empty() && d.back() == 0)
        d.pop_back();
    return d;
}

std::vector<unsigned> facets_of(const SimplicialComplexRep& c)
{
    std::vector<unsigned> out;
    for (Mask m : c.facets())
        out.push_back(static_cast<unsigned>(m));
    return out;
}

} // namespace

TEST(Homology, EmptyComplexHasReducedMinusOneHomology)
{
    const auto h = poset_homology(MaskPoset{}, Q);
    EXPECT_EQ(h.at(-1), 1u);
    EXPECT_FALSE(h.acyclic());
    EXPECT_EQ(h.euler_characteristic(), -1);
}

TEST(Homology, SmallComplexes)
{
    // dims[j + 1] = H̃_j
    EXPECT_EQ(dims(SimplicialComplexRep(1, {0b1}), Q), std::vector<std::size_t>{});
    EXPECT_EQ(dims(SimplicialComplexRep(2, {0b01, 0b10}), Q), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(dims(SimplicialComplexRep(3, {0b011, 0b110, 0b101}), Q), (std::vector<std::size_t>{0, 0, 1}));
    // boundary of the tetrahedron
    EXPECT_EQ(dims(SimplicialComplexRep(4, {0b0111, 0b1011, 0b1101, 0b1110}), Q),
              (std::vector<std::size_t>{0, 0, 0, 1}));
    // two triangles glued along an edge
    EXPECT_TRUE(reduced_homology_dims(SimplicialComplexRep(4, {0b0111, 0b1110}), Q).acyclic());
}

TEST(Homology, ProjectivePlaneDependsOnCharacteristic)
{
    const auto rp2 = corpus::rp2();
    EXPECT_TRUE(reduced_homology_dims(rp2, Q).acyclic());
    EXPECT_TRUE(reduced_homology_dims(rp2, F3).acyclic());
    const auto h2 = reduced_homology_dims(rp2, F2);
    EXPECT_EQ(h2.at(1), 1u);
    EXPECT_EQ(h2.at(2), 1u);
    EXPECT_TRUE(oracle::has_torsion(facets_of(rp2)));
}

TEST(Homology, TorusIsTorsionFree)
{
    // 7-vertex torus
    std::vector<Mask> facets;
    for (unsigned i = 0; i < 7; ++i) {
        facets.push_back(mask_of({i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1}));
        facets.push_back(mask_of({i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1}));
    }
    const SimplicialComplexRep torus(7, facets);
    EXPECT_FALSE(oracle::has_torsion(facets_of(torus)));
    for (const auto& f : {Q, F2, F3}) {
        const auto h = reduced_homology_dims(torus, f);
        EXPECT_EQ(h.at(0), 0u);
        EXPECT_EQ(h.at(1), 2u);
        EXPECT_EQ(h.at(2), 1u);
    }
}

TEST(Homology, BooleanProperPartIsASphere)
{
    for (unsigned n = 2; n <= 5; ++n) {
        const auto b = FiniteAtomicLattice::boolean(n);
        const auto h = poset_homology(b.open_interval(b.top()), Q);
        for (int j = -1; j <= static_cast<int>(n); ++j)
            EXPECT_EQ(h.at(j), j == static_cast<int>(n) - 2 ? 1u : 0u) << "n=" << n << " j=" << j;
    }
    const auto b3 = FiniteAtomicLattice::boolean(3);
    const auto oc = order_complex(b3.open_interval(b3.top()));
    EXPECT_EQ(oc.faces.count(0), 6u);
    EXPECT_EQ(oc.faces.count(1), 6u);
    EXPECT_EQ(oc.faces.count(2), 0u);
}

TEST(Homology, EulerCharacteristicMatchesFaceCounts)
{
    std::mt19937_64 rng(8);
    for (int k = 0; k < 200; ++k) {
        const auto c = random_complex(rng, 7);
        const FaceList faces = face_list(c);
        for (const auto& f : {Q, F2, F3})
            EXPECT_EQ(reduced_homology_dims(faces, f).euler_characteristic(), reduced_euler_characteristic(faces));
    }
}

TEST(Homology, BoundaryRanksAgreeWithRationalOracle)
{
    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k) {
        const auto c = random_complex(rng, 6);
        const FaceList faces = face_list(c);
        for (int d = 0; d <= faces.dimension(); ++d) {
            const auto m = boundary_matrix(faces, d);
            const std::size_t q = oracle::rational_rank(m);
            EXPECT_EQ(integer_rank(m, Q), q);
            EXPECT_LE(integer_rank(m, F2), q);
        }
        // ∂∂ = 0
        for (int d = 1; d <= faces.dimension(); ++d) {
            const auto a = boundary_matrix(faces, d - 1), b = boundary_matrix(faces, d);
            for (std::size_t r = 0; r < a.size(); ++r)
                for (std::size_t col = 0; col < b.front().size(); ++col) {
                    long long s = 0;
                    for (std::size_t mid = 0; mid < b.size(); ++mid)
                        s += a[r][mid] * b[mid][col];
                    ASSERT_EQ(s, 0);
                }
        }
    }
}

TEST(Homology, TorsionFreeComplexesAreFieldIndependent)
{
    std::mt19937_64 rng(10);
    std::size_t torsion_free = 0;
    for (int k = 0; k < 200; ++k) {
        const auto c = random_complex(rng, 6);
        if (oracle::has_torsion(facets_of(c)))
            continue;
        ++torsion_free;
        const auto q = reduced_homology_dims(c, Q);
        EXPECT_EQ(q, reduced_homology_dims(c, F2));
        EXPECT_EQ(q, reduced_homology_dims(c, F3));
    }
    EXPECT_GT(torsion_free, 100u);
}

TEST(Homology, ConesAreAcyclic)
{
    // Half-open intervals [0̂, σ) and (0̂, σ] have an extreme element.
    for (const auto& key : enumerate_Ln(4).keys) {
        const auto l = FiniteAtomicLattice::from_key(key);
        for (Mask s : l.elements()) {
            if (s == 0)
                continue;
            std::vector<Mask> with_min{0}, with_max{s};
            for (Mask t : l.open_interval(s).elements) {
                with_min.push_back(t);
                with_max.push_back(t);
            }
            ASSERT_TRUE(poset_homology(MaskPoset::from(with_min), Q).acyclic());
            ASSERT_TRUE(poset_homology(MaskPoset::from(with_max), F2).acyclic());
        }
    }
}

TEST(Homology, OversizedOrderComplexIsRejected)
{
    const auto b = FiniteAtomicLattice::boolean(11);
    EXPECT_THROW(order_complex(b.open_interval(b.top())), ComplexTooLarge);
}
