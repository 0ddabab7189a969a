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
} // namespace

TEST_CASE("smith normal form on pinned examples") {
    SECTION("identity") {
        auto s = smith_normal_form(IntegerMatrix::identity(2));
        REQUIRE(s.elementary_divisors == std::vector<Integer>{1, 1});
        REQUIRE(s.left * IntegerMatrix::identity(2) * s.right == s.diagonal);
    }
    SECTION("diag(2,1) reorders to (1,2)") {
        auto s = smith_normal_form(im({{2, 0}, {0, 1}}));
        REQUIRE(s.elementary_divisors == std::vector<Integer>{1, 2});
    }
    SECTION("the 2x5 twisted coboundary matrix is surjective") {
        IntegerMatrix d = im({{-1, 1, -2, 2, 3}, {-1, 1, -1, 1, 1}});
        auto s = smith_normal_form(d);
        REQUIRE(s.elementary_divisors == std::vector<Integer>{1, 1});
        REQUIRE(kernel_columns(d).cols() == 3);
    }
    SECTION("zero matrix") {
        auto s = smith_normal_form(IntegerMatrix(2, 2));
        REQUIRE(s.elementary_divisors == std::vector<Integer>{0, 0});
    }
}

TEST_CASE("smith normal form properties on random matrices") {
    // >= 500 random matrices up to 6x6 with entries in [-9, 9]
    int checked = 0;
    for (int trial = 0; trial < 520; ++trial) {
        std::size_t r = 1 + static_cast<std::size_t>(random_int(0, 5).convert_to<long long>());
        std::size_t c = 1 + static_cast<std::size_t>(random_int(0, 5).convert_to<long long>());
        IntegerMatrix a = random_matrix(r, c);
        auto s = smith_normal_form(a);
        REQUIRE(s.left * a * s.right == s.diagonal);
        REQUIRE(abs_int(determinant(s.left)) == 1);
        REQUIRE(abs_int(determinant(s.right)) == 1);
        for (std::size_t i = 0; i < s.diagonal.rows(); ++i)
            for (std::size_t j = 0; j < s.diagonal.cols(); ++j)
                if (i != j) REQUIRE(s.diagonal(i, j) == 0);
        for (std::size_t i = 0; i + 1 < s.elementary_divisors.size(); ++i) {
            const Integer &a0 = s.elementary_divisors[i], &a1 = s.elementary_divisors[i + 1];
            REQUIRE(a0 >= 0);
            if (a0 != 0 && a1 != 0) REQUIRE(a1 % a0 == 0);
            if (a0 == 0) REQUIRE(a1 == 0);
        }
        ++checked;
    }
    REQUIRE(checked >= 500);
}

TEST_CASE("hermite columns are canonical") {
    for (int trial = 0; trial < 60; ++trial) {
        IntegerMatrix a = random_matrix(3, 3, -6, 6);
        IntegerMatrix u = random_gl2(6);
        // extend u to GL_3 by a trivial block
        IntegerMatrix u3 = IntegerMatrix::identity(3);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) u3(i, j) = u(i, j);
        REQUIRE(hermite_columns(a) == hermite_columns(a * u3));
    }
}

TEST_CASE("kernel lattice examples") {
    SECTION("zero map has full kernel") {
        Sublattice k = kernel_lattice(IntegerMatrix(2, 2));
        REQUIRE(k.rank() == 2);
        REQUIRE(k == Sublattice::full(2));
    }
    SECTION("2a + 3b = 0 over Z") {
        Sublattice k = kernel_lattice(im({{2, 3}}));
        REQUIRE(k.rank() == 1);
        REQUIRE(k.generators().column(0) == std::vector<Integer>{3, -2});
    }
    SECTION("kernel is saturated") {
        for (int trial = 0; trial < 40; ++trial) {
            IntegerMatrix a = random_matrix(2, 4, -5, 5);
            Sublattice k = kernel_lattice(a);
            REQUIRE(is_direct_summand(k));
            for (std::size_t j = 0; j < k.rank(); ++j) {
                auto v = k.generators().column(j);
                auto av = a.apply(v);
                for (const auto& x : av) REQUIRE(x == 0);
            }
        }
    }
}

TEST_CASE("sublattice membership") {
    Sublattice s = Sublattice::span(2, {{Integer(2), Integer(0)}, {Integer(0), Integer(3)}});
    REQUIRE(s.contains({Integer(2), Integer(3)}));
    REQUIRE(s.contains({Integer(-4), Integer(9)}));
    REQUIRE_FALSE(s.contains({Integer(1), Integer(0)}));
    REQUIRE(Sublattice::zero(2).contains({Integer(0), Integer(0)}));
}

TEST_CASE("direct summand test") {
    REQUIRE(is_direct_summand(Sublattice::span(2, {{Integer(0), Integer(1)}, {Integer(1), Integer(0)}})));
    REQUIRE_FALSE(is_direct_summand(Sublattice::span(2, {{Integer(2), Integer(0)}, {Integer(0), Integer(1)}})));
    REQUIRE(is_direct_summand(Sublattice::full(5)));
    REQUIRE(is_direct_summand(Sublattice::zero(3)));
}

TEST_CASE("direct summand verdict is frame independent") {
    for (int trial = 0; trial < 60; ++trial) {
        IntegerMatrix gens = random_matrix(2, 2, -4, 4);
        Sublattice s(2, gens);
        bool verdict = is_direct_summand(s);
        IntegerMatrix g = random_gl2();
        Sublattice moved(2, g * gens);
        REQUIRE(is_direct_summand(moved) == verdict);
    }
}

TEST_CASE("annihilator examples") {
    SECTION("{0} + Z annihilates to Z + {0}") {
        Sublattice s = Sublattice::span(2, {{Integer(0), Integer(1)}});
        Sublattice a = annihilator(s);
        REQUIRE(a.rank() == 1);
        REQUIRE(a.generators().column(0) == std::vector<Integer>{1, 0});
    }
    SECTION("zero sublattice annihilates to everything") {
        REQUIRE(annihilator(Sublattice::zero(3)) == Sublattice::full(3));
    }
    SECTION("span{(2,3)}") {
        Sublattice a = annihilator(Sublattice::span(2, {{Integer(2), Integer(3)}}));
        REQUIRE(a.generators().column(0) == std::vector<Integer>{3, -2});
    }
}

TEST_CASE("annihilator of annihilator is saturation") {
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t n = 2 + static_cast<std::size_t>(random_int(0, 2).convert_to<long long>());
        IntegerMatrix gens = random_matrix(n, 2, -5, 5);
        Sublattice s(n, gens);
        REQUIRE(annihilator(annihilator(s)) == saturation(s));
        REQUIRE(saturation(s).rank() == s.rank());
        REQUIRE(is_direct_summand(saturation(s)));
    }
}

TEST_CASE("exterior power dual representation") {
    SECTION("q = 0 is trivial") {
        IntegerMatrix r = exterior_power_dual_rep(random_gl2(), 0);
        REQUIRE(r == IntegerMatrix::identity(1));
    }
    SECTION("q = n is the inverse determinant") {
        for (int trial = 0; trial < 20; ++trial) {
            IntegerMatrix g = random_sl2();
            REQUIRE(exterior_power_dual_rep(g, 2) == IntegerMatrix::identity(1));
        }
    }
    SECTION("pinned transpose-inverse") {
        IntegerMatrix g = im({{1, 0}, {-1, 1}});
        REQUIRE(exterior_power_dual_rep(g, 1) == im({{1, 1}, {0, 1}}));
    }
    SECTION("rejects singular matrices") {
        REQUIRE_THROWS_AS(exterior_power_dual_rep(im({{2, 0}, {0, 1}}), 1), MathError);
    }
    SECTION("multiplicative on random pairs") {
        for (int trial = 0; trial < 40; ++trial) {
            IntegerMatrix g = random_gl2(), h = random_gl2();
            for (std::size_t q = 0; q <= 2; ++q)
                REQUIRE(exterior_power_dual_rep(g * h, q) ==
                        exterior_power_dual_rep(g, q) * exterior_power_dual_rep(h, q));
        }
    }
}

TEST_CASE("subquotient groups") {
    SECTION("free quotient") {
        IntegerMatrix k = IntegerMatrix::identity(3);
        IntegerMatrix image(3, 1);
        image(0, 0) = 1;
        FGAbelianGroup g = subquotient(k, image);
        REQUIRE(g == FGAbelianGroup::free(2));
    }
    SECTION("torsion quotient") {
        IntegerMatrix k = IntegerMatrix::identity(2);
        IntegerMatrix image(2, 2);
        image(0, 0) = 2;
        image(1, 1) = 6;
        FGAbelianGroup g = subquotient(k, image);
        REQUIRE(g.free_rank == 0);
        REQUIRE(g.torsion == std::vector<Integer>{2, 6});
        REQUIRE(g.str() == "Z/2 + Z/6");
    }
    SECTION("rendering") {
        REQUIRE(FGAbelianGroup{}.str() == "0");
        REQUIRE(FGAbelianGroup::free(1).str() == "Z");
        REQUIRE(FGAbelianGroup::free(3).str() == "Z^3");
    }
}
