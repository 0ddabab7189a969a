#include "helpers.hpp"

#include <catch_amalgamated.hpp>

using namespace latact;
using namespace latact::testing;

namespace {
IntegerMatrix im(std::initializer_list<std::initializer_list<long long>> rows) {
    IntegerMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long long x : r) m(i, j++) = Integer(x);
        ++i;
    }
    return m;
}

CechCocycle two_chart_cocycle(const IntegerMatrix& value) {
    CechCocycle c;
    c.n = 2;
    c.charts = {"U", "V"};
    c.edges[{"U", "V"}] = value;
    return c;
}
} // namespace

TEST_CASE("monodromy validation") {
    MonodromyData m;
    m.n = 2;
    m.images["g"] = im({{2, 0}, {0, 1}});
    REQUIRE_FALSE(validate_monodromy(m).ok());

    MonodromyData fixture = one_corner_torus().monodromy;
    REQUIRE(validate_monodromy(fixture).ok());

    // break the surface relation
    fixture.images["gamma1"] = IntegerMatrix::identity(2);
    ValidationReport rep = validate_monodromy(fixture);
    REQUIRE_FALSE(rep.ok());
    REQUIRE(rep.issues[0].code == "relation-broken");
}

TEST_CASE("word evaluation order matches the twisted coboundary convention") {
    MonodromyData m = one_corner_torus().monodromy;
    Word w{{"alpha1", false}, {"beta1", false}, {"alpha1", true}, {"beta1", true}, {"gamma1", false}};
    REQUIRE(m.evaluate(w).is_identity());
    REQUIRE(m.evaluate({{"gamma1", true}}) == im({{0, -1}, {1, 3}}));
}

TEST_CASE("local standardness is triviality of the representation") {
    MonodromyData trivial;
    trivial.n = 2;
    trivial.images["x"] = IntegerMatrix::identity(2);
    REQUIRE(is_locally_standard(trivial));
    REQUIRE_FALSE(is_locally_standard(one_corner_torus().monodromy));
}

TEST_CASE("holonomy from a cocycle") {
    SECTION("identity cocycle gives the trivial representation") {
        MonodromyData m = holonomy_from_cocycle(two_chart_cocycle(IntegerMatrix::identity(2)));
        REQUIRE(is_locally_standard(m));
    }
    SECTION("any two-chart cocycle is a coboundary") {
        MonodromyData m = holonomy_from_cocycle(two_chart_cocycle(random_gl2()));
        REQUIRE(is_locally_standard(m));
    }
    SECTION("coboundary cocycles trivialize after gauge fixing") {
        for (int trial = 0; trial < 20; ++trial) {
            // rho_ab = rho_a rho_b^{-1} on a random triangle-closed graph
            std::vector<IntegerMatrix> rho{random_gl2(), random_gl2(), random_gl2()};
            CechCocycle c;
            c.n = 2;
            c.charts = {"a", "b", "c"};
            auto val = [&](int i, int j) { return rho[i] * inverse_unimodular(rho[j]); };
            c.edges[{"a", "b"}] = val(0, 1);
            c.edges[{"b", "c"}] = val(1, 2);
            c.edges[{"a", "c"}] = val(0, 2);
            c.triangles.push_back({"a", "b", "c"});
            MonodromyData m = holonomy_from_cocycle(c);
            REQUIRE(is_locally_standard(m));
        }
    }
    SECTION("standardness verdict is gauge invariant") {
        for (int trial = 0; trial < 20; ++trial) {
            // start from a nontrivial loop value and apply a random coboundary
            IntegerMatrix loop = random_gl2();
            std::vector<IntegerMatrix> gauge{random_gl2(), random_gl2(), random_gl2()};
            CechCocycle c;
            c.n = 2;
            c.charts = {"a", "b", "c"};
            // graph a-b-c-a with no triangles: one independent loop
            c.edges[{"a", "b"}] = gauge[0] * inverse_unimodular(gauge[1]);
            c.edges[{"b", "c"}] = gauge[1] * inverse_unimodular(gauge[2]);
            c.edges[{"c", "a"}] = gauge[2] * loop * inverse_unimodular(gauge[0]);
            MonodromyData m = holonomy_from_cocycle(c);
            REQUIRE(is_locally_standard(m) == loop.is_identity());
        }
    }
    SECTION("an explicit spanning tree selects the gauge") {
        CechCocycle c;
        c.n = 2;
        c.charts = {"a", "b", "c"};
        IntegerMatrix loop = im({{1, 2}, {0, 1}});
        c.edges[{"a", "b"}] = im({{1, 0}, {-1, 1}});
        c.edges[{"b", "c"}] = im({{0, -1}, {1, 0}});
        c.edges[{"c", "a"}] = inverse_unimodular(c.edges[{"b", "c"}]) *
                              inverse_unimodular(c.edges[{"a", "b"}]) * loop;
        MonodromyData m = holonomy_from_cocycle(c, {{"a", "b"}, {"b", "c"}});
        REQUIRE(m.images.size() == 1);  // the one non-tree edge
        // the gauge-fixed non-tree value is conjugate to the loop holonomy
        const IntegerMatrix& g = m.images.begin()->second;
        REQUIRE_FALSE(g.is_identity());
        REQUIRE(g(0, 0) + g(1, 1) == loop(0, 0) + loop(1, 1));
        REQUIRE(determinant(g) == determinant(loop));
    }
    SECTION("cocycle violations are rejected") {
        CechCocycle c;
        c.n = 2;
        c.charts = {"a", "b", "c"};
        c.edges[{"a", "b"}] = im({{1, 1}, {0, 1}});
        c.edges[{"b", "c"}] = IntegerMatrix::identity(2);
        c.edges[{"a", "c"}] = IntegerMatrix::identity(2);
        c.triangles.push_back({"a", "b", "c"});
        REQUIRE_THROWS_AS(holonomy_from_cocycle(c), MathError);
    }
    SECTION("disconnected graphs are rejected") {
        CechCocycle c;
        c.n = 2;
        c.charts = {"a", "b"};
        REQUIRE_THROWS_AS(holonomy_from_cocycle(c), MathError);
    }
}

TEST_CASE("characteristic validation accepts the corner fixture") {
    PairFixture f = one_corner_torus();
    ValidationReport rep = validate_characteristic(f.base, f.monodromy, f.characteristic);
    CAPTURE(rep.summary());
    REQUIRE(rep.ok());
    // derived stabilizers
    REQUIRE(stabilizer(f.characteristic, "F") == Sublattice::zero(2));
    REQUIRE(stabilizer(f.characteristic, "a1") == Sublattice::zero(2));
    Sublattice edge = stabilizer(f.characteristic, "s1_0");
    REQUIRE(edge == Sublattice::span(2, {{Integer(0), Integer(1)}}));
    Sublattice corner = stabilizer(f.characteristic, "c1_0");
    REQUIRE(corner == Sublattice::full(2));
    REQUIRE_THROWS_AS(stabilizer(f.characteristic, "nope"), InputError);
}

TEST_CASE("characteristic validation rejects non-primitive vectors") {
    PairFixture f = polygon_fixture(triangle_fan());
    f.characteristic.facet_vectors["f1_0"] = {Integer(2), Integer(0)};
    ValidationReport rep = validate_characteristic(f.base, f.monodromy, f.characteristic);
    REQUIRE_FALSE(rep.ok());
    REQUIRE(rep.issues[0].code == "not-primitive");
}

TEST_CASE("characteristic validation rejects rank-deficient corners") {
    // square base with every facet carrying (1,0): corners see one direction
    PairFixture f = polygon_fixture({{Integer(1), Integer(0)},
                                     {Integer(1), Integer(0)},
                                     {Integer(1), Integer(0)},
                                     {Integer(1), Integer(0)}});
    ValidationReport rep = validate_characteristic(f.base, f.monodromy, f.characteristic);
    REQUIRE_FALSE(rep.ok());
    bool niceness = false;
    for (const auto& i : rep.issues) niceness |= (i.code == "niceness-broken" || i.code == "stabilizer-rank");
    REQUIRE(niceness);
}

TEST_CASE("characteristic validation rejects non-unimodular corners") {
    // adjacent facets (1,0) and (1,2): corner lattice has index 2
    PairFixture f = polygon_fixture({{Integer(1), Integer(0)},
                                     {Integer(1), Integer(2)},
                                     {Integer(-1), Integer(-1)}});
    ValidationReport rep = validate_characteristic(f.base, f.monodromy, f.characteristic);
    REQUIRE_FALSE(rep.ok());
    bool unimodular = false;
    for (const auto& i : rep.issues) unimodular |= i.code == "not-unimodular";
    REQUIRE(unimodular);
}

TEST_CASE("missing and dangling facet vectors are reported") {
    PairFixture f = polygon_fixture(triangle_fan());
    f.characteristic.facet_vectors.erase("f1_1");
    f.characteristic.facet_vectors["ghost"] = {Integer(1), Integer(0)};
    ValidationReport rep = validate_characteristic(f.base, f.monodromy, f.characteristic);
    bool missing = false, dangling = false;
    for (const auto& i : rep.issues) {
        missing |= i.code == "missing-facet-vector";
        dangling |= i.code == "dangling-id";
    }
    REQUIRE(missing);
    REQUIRE(dangling);
}

TEST_CASE("fiber dimension equals stratum dimension") {
    // n - rank(stabilizer) = k for every cell, on assorted fixtures
    for (auto& f : random_valid_fixtures(8)) {
        ValidationReport rep = validate_characteristic(f.base, f.monodromy, f.characteristic);
        CAPTURE(f.name, rep.summary());
        REQUIRE(rep.ok());
        for (const auto& c : f.base.cells) {
            Sublattice s = stabilizer(f.characteristic, c.id);
            REQUIRE(static_cast<int>(f.monodromy.n - s.rank()) == c.stratum_dim);
        }
    }
}

TEST_CASE("validation verdict is invariant under global frame changes") {
    // >= 50 fixtures: valid ones stay valid, broken ones stay broken
    int checked = 0;
    for (int trial = 0; trial < 13; ++trial) {
        std::vector<PairFixture> pool;
        pool.push_back(one_corner_torus());
        pool.push_back(polygon_fixture(random_fan()));
        pool.push_back(annulus_fixture());
        PairFixture bad = polygon_fixture({{Integer(1), Integer(0)},
                                           {Integer(1), Integer(2)},
                                           {Integer(-1), Integer(-1)}});
        pool.push_back(bad);
        for (auto& f : pool) {
            CharacteristicData chf = f.characteristic;
            bool verdict = validate_characteristic(f.base, f.monodromy, chf).ok();
            PairFixture moved = conjugate(f, random_gl2());
            CharacteristicData chm = moved.characteristic;
            bool moved_verdict = validate_characteristic(moved.base, moved.monodromy, chm).ok();
            REQUIRE(moved_verdict == verdict);
            ++checked;
        }
    }
    REQUIRE(checked >= 50);
}
