#include <gtest/gtest.h>

#include <set>

#include <rigidres/theorems.hpp>

#include "oracles.hpp"
#include "corpus.hpp"

using namespace rigidres;

namespace {

const FieldSpec Q = FieldSpec::rationals();

const Atlas& atlas4()
{
    static const Atlas a = build_atlas(4, Q, 2);
    return a;
}

} // namespace

TEST(Enumeration, CountsMatchBruteForceOracle)
{
    for (unsigned n = 1; n <= 4; ++n) {
        const auto e = enumerate_Ln(n);
        EXPECT_FALSE(e.truncated);
        EXPECT_EQ(e.keys.size(), oracle::count_Ln(n)) << "n=" << n;
    }
    // frozen after the oracle run
    EXPECT_EQ(enumerate_Ln(3).keys.size(), 8u);
    EXPECT_EQ(enumerate_Ln(4).keys.size(), 545u);
}

TEST(Enumeration, FullL5MatchesBruteForceOracle)
{
    const auto e = enumerate_Ln(5, kDefaultEnumerationBudget, 2);
    EXPECT_FALSE(e.truncated);
    EXPECT_EQ(e.keys.size(), oracle::count_Ln(5));
    EXPECT_EQ(e.keys.size(), 702525u);
}

TEST(Enumeration, MembersAreDistinctSortedLattices)
{
    const auto keys = enumerate_Ln(4).keys;
    EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
    EXPECT_EQ(std::set<LnKey>(keys.begin(), keys.end()).size(), keys.size());
    for (const auto& k : keys)
        EXPECT_EQ(FiniteAtomicLattice::from_key(k).key(), k);
}

TEST(Enumeration, DeterministicAcrossWorkersAndBudgeted)
{
    EXPECT_EQ(enumerate_Ln(4, kDefaultEnumerationBudget, 1).keys, enumerate_Ln(4, kDefaultEnumerationBudget, 4).keys);
    const auto small = enumerate_Ln(5, 1000, 1);
    EXPECT_TRUE(small.truncated);
    EXPECT_EQ(small.keys.size(), 1000u);
    EXPECT_EQ(enumerate_Ln(5, 1000, 3).keys, small.keys);
    EXPECT_THROW(enumerate_Ln(6), std::invalid_argument);
}

TEST(Order, JoinPreservingMapWitnessesInclusion)
{
    const auto keys = enumerate_Ln(4).keys;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < keys.size(); a += 7)
        for (const auto& qk : keys) {
            const auto& pk = keys[a];
            if (!leq_in_Ln(pk, qk))
                continue;
            ++pairs;
            const auto p = FiniteAtomicLattice::from_key(pk), q = FiniteAtomicLattice::from_key(qk);
            const auto f = join_preserving_map(q, p);
            ASSERT_TRUE(is_join_preserving_on_atoms(q, p, f));
            for (Mask x : q.elements())
                for (Mask y : q.elements())
                    ASSERT_EQ(f.at(q.join(x, y)), p.join(f.at(x), f.at(y)));
            for (unsigned i = 1; i <= 4; ++i)
                ASSERT_EQ(f.at(FiniteAtomicLattice::atom(i)), FiniteAtomicLattice::atom(i));
        }
    EXPECT_GT(pairs, 100u);
}

TEST(Order, CoversAgreeWithTheOrderRelation)
{
    const auto keys = enumerate_Ln(4).keys;
    std::set<std::pair<LnKey, LnKey>> up, down;
    for (const auto& k : keys) {
        const auto l = FiniteAtomicLattice::from_key(k);
        for (const auto& u : up_covers(l)) {
            EXPECT_EQ(u.size(), l.size() + 1);
            up.emplace(k, u.key());
        }
        for (const auto& d : down_covers(l))
            down.emplace(d.key(), k);
    }
    EXPECT_EQ(up, down);
    std::set<std::pair<LnKey, LnKey>> brute;
    for (const auto& p : keys)
        for (const auto& q : keys) {
            if (p == q || !leq_in_Ln(p, q))
                continue;
            bool cover = true;
            for (const auto& r : keys)
                if (!(r == p) && !(r == q) && leq_in_Ln(p, r) && leq_in_Ln(r, q)) {
                    cover = false;
                    break;
                }
            if (cover)
                brute.emplace(p, q);
        }
    EXPECT_EQ(up, brute);
}

TEST(Strata, SizesOfL3AndL4)
{
    const auto s3 = stratify(enumerate_Ln(3).keys, Q);
    ASSERT_EQ(s3.size(), 2u);
    EXPECT_EQ(s3.at({1, 3, 2}).members.size(), 7u);
    EXPECT_EQ(s3.at({1, 3, 3, 1}).members.size(), 1u);

    const auto& s4 = atlas4().strata;
    std::map<BettiVector, std::size_t> sizes;
    for (const auto& [beta, rec] : s4)
        sizes[beta] = rec.members.size();
    const std::map<BettiVector, std::size_t> expected{
        {{1, 4, 3}, 208}, {{1, 4, 4, 1}, 221}, {{1, 4, 5, 2}, 100}, {{1, 4, 6, 3}, 15}, {{1, 4, 6, 4, 1}, 1}};
    EXPECT_EQ(sizes, expected);
    for (const auto& [beta, rec] : s4) {
        EXPECT_EQ(rec.field, Q);
        for (const auto& [lo, hi] : rec.covers) {
            const auto up = up_covers(FiniteAtomicLattice::from_key(rec.members[lo].key));
            EXPECT_TRUE(std::any_of(up.begin(), up.end(), [&](const auto& u) { return u.key() == rec.members[hi].key; }));
        }
    }
}

TEST(Strata, DeterministicAcrossWorkers)
{
    const auto keys = enumerate_Ln(4).keys;
    const auto a = stratify(keys, Q, 1), b = stratify(keys, Q, 4);
    ASSERT_EQ(a.size(), b.size());
    for (const auto& [beta, rec] : a) {
        const auto& other = b.at(beta);
        ASSERT_EQ(rec.members.size(), other.members.size());
        for (std::size_t i = 0; i < rec.members.size(); ++i)
            EXPECT_EQ(rec.members[i].key, other.members[i].key);
        EXPECT_EQ(rec.covers, other.covers);
    }
}

TEST(Sweeps, AllStructuralChecksHoldOnL3AndL4)
{
    for (unsigned n : {3u, 4u}) {
        const Atlas a = n == 4 ? atlas4() : build_atlas(3, Q);
        for (const auto& r : {sweep_betti_monotonicity(a), sweep_rigid_up_closure(a),
                              sweep_concentrated_iff_lattice_linear(a, false), sweep_resolution_transfer(a),
                              sweep_interval_identity(a)}) {
            EXPECT_TRUE(r.ok()) << r.name << " n=" << n << ": " << r.violations.front();
            if (n == 4)
                EXPECT_GT(r.checked, 0u) << r.name;
        }
    }
}

TEST(Sweeps, StrictConcentrationWouldBreakTheEquivalence)
{
    std::size_t disagreements = 0;
    for (const auto& [key, entry] : atlas4().entries) {
        if (!entry.rigid)
            continue;
        const auto t = betti_table(FiniteAtomicLattice::from_key(key), Q);
        disagreements += is_concentrated(t, ConcentrationRule::Strict).concentrated != entry.concentrated;
    }
    EXPECT_EQ(disagreements, 112u);
}

TEST(Transfer, PreconditionsAreEnforced)
{
    const auto& strata = atlas4().strata;
    const auto& low = strata.at({1, 4, 3});
    const auto bottom = FiniteAtomicLattice::from_family(4, {0, 1, 2, 4, 8, 15}).key();
    const auto boolean = FiniteAtomicLattice::boolean(4).key();
    // different strata
    EXPECT_THROW(transfer_resolution(boolean, bottom, Q), TransferError);
    // not comparable
    EXPECT_THROW(transfer_resolution(low.members.front().key, boolean, Q), TransferError);
    // P not rigid: the bottom of L(4) has β_{2,1̂} = 3
    for (const auto& m : low.members)
        if (!(m.key == bottom) && leq_in_Ln(bottom, m.key)) {
            EXPECT_THROW(transfer_resolution(m.key, bottom, Q), TransferError);
            break;
        }
}

TEST(Transfer, IdentityTransferIsTheMinimalResolution)
{
    for (const auto& m : atlas4().strata.at({1, 4, 4, 1}).members) {
        if (!m.rigid)
            continue;
        const auto direct = minimal_resolution(realize(m.key).ideal(), Q);
        EXPECT_EQ(signature(transfer_resolution(m.key, m.key, Q)), signature(direct));
        EXPECT_EQ(signature(lift_resolution(m.key, m.key, Q)), signature(direct));
    }
}

TEST(Transfer, DispersedRigidMembersResolveThroughConcentratedOnesBelow)
{
    const auto& stratum = atlas4().strata.at({1, 4, 4, 1});
    std::size_t found = 0;
    for (const auto& m : stratum.members) {
        if (!m.rigid)
            continue;
        const auto below = find_concentrated_below(m.key, Q);
        if (m.concentrated) {
            ASSERT_TRUE(below.has_value());
            EXPECT_EQ(*below, m.key);
            continue;
        }
        if (!below)
            continue;
        ++found;
        EXPECT_TRUE(leq_in_Ln(*below, m.key));
        const auto p = FiniteAtomicLattice::from_key(*below);
        EXPECT_TRUE(is_rigid(p, Q).rigid);
        EXPECT_TRUE(is_concentrated(p, Q).concentrated);
        const auto moved = transfer_resolution(m.key, *below, Q);
        EXPECT_TRUE(verify_resolution(moved, realize(*below).ideal()).ok);
        EXPECT_TRUE(lattice_linear_support(moved, realize(*below)));
    }
    EXPECT_GT(found, 0u);
}

TEST(Transfer, DispersedIdealHasNothingBelow)
{
    const auto key = lcm_lattice(corpus::dispersed_rigid()).lattice().key();
    EXPECT_FALSE(find_concentrated_below(key, Q).has_value());
    EXPECT_THROW(find_concentrated_below(lcm_lattice(corpus::N()).lattice().key(), Q), TransferError);
}

TEST(FaceRigidity, SmallComplexes)
{
    const auto triangle = face_lattice_rigidity_check(SimplicialComplexRep(3, {0b111}), Q);
    EXPECT_TRUE(triangle.acyclic);
    EXPECT_TRUE(triangle.rigid);
    const auto glued = face_lattice_rigidity_check(SimplicialComplexRep(4, {0b0111, 0b1110}), Q);
    EXPECT_TRUE(glued.acyclic);
    EXPECT_TRUE(glued.rigid);
    const auto hollow = face_lattice_rigidity_check(SimplicialComplexRep(3, {0b011, 0b110, 0b101}), Q);
    EXPECT_FALSE(hollow.acyclic);
    EXPECT_FALSE(hollow.violation());
    const auto rp2q = face_lattice_rigidity_check(corpus::rp2(), Q);
    EXPECT_TRUE(rp2q.acyclic && rp2q.rigid);
    const auto rp2f2 = face_lattice_rigidity_check(corpus::rp2(), FieldSpec::prime(2));
    EXPECT_FALSE(rp2f2.acyclic);
    EXPECT_FALSE(rp2f2.rigid);
}

TEST(FaceRigidity, SeededSweep)
{
    for (const auto& f : {Q, FieldSpec::prime(2)}) {
        const auto r = sweep_face_rigidity(30, 99, f);
        EXPECT_EQ(r.checked, 30u);
        EXPECT_TRUE(r.ok());
    }
}

TEST(CrossValidation, SeededSweep)
{
    const auto r = sweep_cross_validation(40, 7, {Q, FieldSpec::prime(2), FieldSpec::prime(3)});
    EXPECT_EQ(r.checked, 120u);
    EXPECT_TRUE(r.ok()) << r.violations.front();
}
