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

AffineAtlas single_chart() {
    AffineAtlas a;
    a.n = 2;
    a.charts = {"U"};
    return a;
}
} // namespace

TEST_CASE("affine atlas validation") {
    SECTION("single chart with no transitions is valid") { REQUIRE(validate_affine_atlas(single_chart()).ok()); }

    SECTION("the boundary gluing of the corner fixture is a valid transition") {
        // xi -> (xi_2, 7 - xi_1): linear [[0,1],[-1,0]], translation (0,7)
        AffineAtlas a;
        a.n = 2;
        a.charts = {"U1", "U2"};
        a.transitions.push_back({"U1", "U2", im({{0, 1}, {-1, 0}}), {Rational(0), Rational(7)}});
        REQUIRE(validate_affine_atlas(a).ok());
    }

    SECTION("non-unimodular linear part is rejected") {
        AffineAtlas a;
        a.n = 2;
        a.charts = {"U1", "U2"};
        a.transitions.push_back({"U1", "U2", im({{2, 0}, {0, 1}}), {Rational(0), Rational(0)}});
        ValidationReport rep = validate_affine_atlas(a);
        REQUIRE_FALSE(rep.ok());
        REQUIRE(rep.issues[0].code == "not-unimodular");
    }

    SECTION("cocycle condition on triangles, linear and translation parts") {
        AffineAtlas a;
        a.n = 2;
        a.charts = {"A", "B", "C"};
        IntegerMatrix ab = im({{1, 1}, {0, 1}}), bc = im({{0, 1}, {-1, 0}});
        // store transitions as maps B->A, C->B, C->A
        a.transitions.push_back({"B", "A", ab, {Rational(1), Rational(0)}});
        a.transitions.push_back({"C", "B", bc, {Rational(0), Rational(2)}});
        // c_ac = A_ab c_bc + c_ab = ab*(0,2) + (1,0) = (3, 2)
        a.transitions.push_back({"C", "A", ab * bc, {Rational(3), Rational(2)}});
        a.triangles.push_back({"A", "B", "C"});
        REQUIRE(validate_affine_atlas(a).ok());

        a.transitions[2].translation[0] = Rational(4);
        ValidationReport rep = validate_affine_atlas(a);
        REQUIRE_FALSE(rep.ok());
        REQUIRE(rep.issues[0].code == "cocycle-broken");
    }
}

TEST_CASE("normal propagation across transitions") {
    SECTION("identity transitions leave normals alone") {
        AffineAtlas a;
        a.n = 2;
        a.charts = {"U", "V"};
        a.transitions.push_back({"U", "V", IntegerMatrix::identity(2), {Rational(0), Rational(0)}});
        a.facet_seeds["f"] = {"U", {Integer(3), Integer(1)}};
        CharacteristicData ch = induced_normals(a);
        REQUIRE(ch.facet_vectors.at("f") == std::vector<Integer>{3, 1});
    }

    SECTION("normals move by the inverse transpose") {
        AffineAtlas a;
        a.n = 2;
        a.charts = {"V", "W"};
        // map W -> V has linear part A; u_V = A^{-T} u_W = (0,-1)
        a.transitions.push_back({"W", "V", im({{0, 1}, {-1, 0}}), {Rational(0), Rational(0)}});
        a.facet_seeds["f"] = {"W", {Integer(1), Integer(0)}};
        CharacteristicData ch = induced_normals(a);  // root chart is "V"
        REQUIRE(ch.facet_vectors.at("f") == std::vector<Integer>{0, -1});
    }

    SECTION("reading the seed back in the reverse direction transposes") {
        AffineAtlas a;
        a.n = 2;
        a.charts = {"U", "V"};
        a.transitions.push_back({"U", "V", im({{0, 1}, {-1, 0}}), {Rational(0), Rational(0)}});
        a.facet_seeds["f"] = {"V", {Integer(1), Integer(0)}};
        CharacteristicData ch = induced_normals(a);
        // root chart is "U": u_U = (A^{-1})^{-T} u_V = A^T u_V = (0,1)
        REQUIRE(ch.facet_vectors.at("f") == std::vector<Integer>{0, 1});
    }

    SECTION("conflicting propagation is detected") {
        AffineAtlas a;
        a.n = 2;
        a.charts = {"U", "V"};
        a.transitions.push_back({"U", "V", IntegerMatrix::identity(2), {Rational(0), Rational(0)}});
        a.transitions.push_back({"V", "U", im({{1, 1}, {0, 1}}), {Rational(0), Rational(0)}});
        a.facet_seeds["f"] = {"U", {Integer(1), Integer(1)}};
        REQUIRE_THROWS_AS(induced_normals(a), InconsistentPropagation);
    }

    SECTION("declared corners are checked for unimodularity") {
        AffineAtlas a = single_chart();
        a.facet_seeds["f1"] = {"U", {Integer(1), Integer(0)}};
        a.facet_seeds["f2"] = {"U", {Integer(1), Integer(2)}};
        a.corners.push_back({"f1", "f2"});
        REQUIRE_THROWS_AS(induced_normals(a), UnimodularityFailure);
        a.facet_seeds["f2"] = {"U", {Integer(1), Integer(1)}};
        REQUIRE_NOTHROW(induced_normals(a));
    }
}

TEST_CASE("identity atlas is compatible with trivial monodromy") {
    AffineAtlas a;
    a.n = 2;
    a.charts = {"U", "V"};
    a.transitions.push_back({"U", "V", IntegerMatrix::identity(2), {Rational(0), Rational(0)}});
    CechCocycle c;
    c.n = 2;
    c.charts = {"U", "V"};
    c.edges[{"V", "U"}] = IntegerMatrix::identity(2);
    REQUIRE(compatibility_check(a, c));
}

TEST_CASE("compatibility with a monodromy cocycle") {
    AffineAtlas a;
    a.n = 2;
    a.charts = {"U", "V"};
    IntegerMatrix rho = im({{1, 0}, {-1, 1}});
    a.transitions.push_back({"V", "U", im({{1, 1}, {0, 1}}), {Rational(0), Rational(0)}});  // A = rho^{-T}

    CechCocycle c;
    c.n = 2;
    c.charts = {"U", "V"};
    c.edges[{"U", "V"}] = rho;
    REQUIRE(compatibility_check(a, c));

    AffineAtlas bad = a;
    bad.transitions[0].linear = IntegerMatrix::identity(2);
    REQUIRE_FALSE(compatibility_check(bad, c));

    CechCocycle empty;
    empty.n = 2;
    empty.charts = {"U", "V"};
    REQUIRE_THROWS_AS(compatibility_check(a, empty), InputError);
}

TEST_CASE("compatible atlases induce characteristic data that validates") {
    // the bridge property on the polygon fixture: take the affine atlas of a
    // fan with identity transitions; its induced normals validate against the
    // trivial monodromy
    auto fan = triangle_fan();
    AffineAtlas a = single_chart();
    for (std::size_t i = 0; i < fan.size(); ++i) a.facet_seeds["f1_" + std::to_string(i)] = {"U", fan[i]};
    a.corners.push_back({"f1_0", "f1_1"});
    a.corners.push_back({"f1_1", "f1_2"});
    a.corners.push_back({"f1_2", "f1_0"});
    CharacteristicData ch = induced_normals(a);

    PairFixture f = polygon_fixture(fan);
    CharacteristicData fromAffine;
    fromAffine.facet_vectors = ch.facet_vectors;
    REQUIRE(validate_characteristic(f.base, f.monodromy, fromAffine).ok());
}
