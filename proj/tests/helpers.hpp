#pragma once

#include "latact/latact.hpp"

#include <random>
#include <vector>

namespace latact::testing {

// Deterministic RNG for every randomized suite.
inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed1234);
    return gen;
}

inline Integer random_int(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return Integer(d(rng()));
}

inline IntegerMatrix random_matrix(std::size_t rows, std::size_t cols, int lo = -9, int hi = 9) {
    IntegerMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_int(lo, hi);
    return m;
}

// Random SL_2(Z) element as a word of bounded length in S, T.
inline IntegerMatrix random_sl2(int max_len = 8) {
    static const IntegerMatrix S{{Integer(0), Integer(-1)}, {Integer(1), Integer(0)}};
    static const IntegerMatrix T{{Integer(1), Integer(1)}, {Integer(0), Integer(1)}};
    static const IntegerMatrix Si = inverse_unimodular(S);
    static const IntegerMatrix Ti = inverse_unimodular(T);
    std::uniform_int_distribution<int> len(1, max_len), pick(0, 3);
    IntegerMatrix m = IntegerMatrix::identity(2);
    int L = len(rng());
    for (int i = 0; i < L; ++i) {
        switch (pick(rng())) {
            case 0: m = m * S; break;
            case 1: m = m * Si; break;
            case 2: m = m * T; break;
            default: m = m * Ti; break;
        }
    }
    return m;
}

// Random GL_2(Z) element (det +1 or -1).
inline IntegerMatrix random_gl2(int max_len = 8) {
    IntegerMatrix m = random_sl2(max_len);
    if (random_int(0, 1) == 1) {
        IntegerMatrix flip{{Integer(0), Integer(1)}, {Integer(1), Integer(0)}};
        m = m * flip;
    }
    return m;
}

inline RationalMatrix random_invertible_rational(std::size_t n) {
    for (;;) {
        RationalMatrix p(n, n);
        std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p(i, j) = Rational(num(rng()), den(rng()));
        try {
            inverse(p);
            return p;
        } catch (const MathError&) {
        }
    }
}

struct PairFixture {
    BaseComplex base;
    MonodromyData monodromy;
    CharacteristicData characteristic;
    std::string name;
};

// The one-corner genus-one fixture with the nontrivial monodromy.
inline PairFixture one_corner_torus() {
    PairFixture f;
    f.name = "one_corner_torus";
    f.base = build_surface_base(1, {1});
    f.monodromy.n = 2;
    f.monodromy.images["alpha1"] = IntegerMatrix{{Integer(1), Integer(0)}, {Integer(-1), Integer(1)}};
    f.monodromy.images["beta1"] = IntegerMatrix{{Integer(1), Integer(-1)}, {Integer(0), Integer(1)}};
    f.monodromy.images["gamma1"] = IntegerMatrix{{Integer(3), Integer(1)}, {Integer(-1), Integer(0)}};
    f.monodromy.relations = f.base.relation_words;
    f.characteristic.facet_vectors["f1_0"] = {Integer(0), Integer(1)};
    return f;
}

// Polygon base over a unimodular fan (trivial monodromy).
inline PairFixture polygon_fixture(const std::vector<std::vector<Integer>>& fan) {
    PairFixture f;
    f.name = "polygon";
    f.base = build_surface_base(0, {static_cast<int>(fan.size())});
    f.monodromy.n = 2;
    f.monodromy.images["gamma1"] = IntegerMatrix::identity(2);
    f.monodromy.relations = f.base.relation_words;
    for (std::size_t i = 0; i < fan.size(); ++i)
        f.characteristic.facet_vectors["f1_" + std::to_string(i)] = fan[i];
    return f;
}

inline std::vector<std::vector<Integer>> triangle_fan() {
    return {{Integer(1), Integer(0)}, {Integer(0), Integer(1)}, {Integer(-1), Integer(-1)}};
}

inline std::vector<std::vector<Integer>> square_fan(int twist = 0) {
    return {{Integer(1), Integer(0)},
            {Integer(0), Integer(1)},
            {Integer(-1), Integer(twist)},
            {Integer(0), Integer(-1)}};
}

// Random valid fan: a standard fan with random blow-up insertions
// (v_i, v_{i+1}) -> (v_i, v_i + v_{i+1}, v_{i+1}) keeps all consecutive
// determinants equal to one.
inline std::vector<std::vector<Integer>> random_fan() {
    std::vector<std::vector<Integer>> fan =
        random_int(0, 1) == 0 ? triangle_fan() : square_fan(static_cast<int>(random_int(-3, 3).convert_to<long long>()));
    int inserts = static_cast<int>(random_int(0, 3).convert_to<long long>());
    for (int k = 0; k < inserts; ++k) {
        std::size_t i = static_cast<std::size_t>(random_int(0, static_cast<int>(fan.size()) - 1).convert_to<long long>());
        std::size_t j = (i + 1) % fan.size();
        std::vector<Integer> mid{fan[i][0] + fan[j][0], fan[i][1] + fan[j][1]};
        fan.insert(fan.begin() + static_cast<long>(i) + 1, mid);
    }
    return fan;
}

inline PairFixture annulus_fixture() {
    PairFixture f;
    f.name = "annulus";
    f.base = build_surface_base(0, {0, 0});
    f.monodromy.n = 2;
    f.monodromy.images["gamma1"] = IntegerMatrix::identity(2);
    f.monodromy.images["gamma2"] = IntegerMatrix::identity(2);
    f.monodromy.relations = f.base.relation_words;
    f.characteristic.facet_vectors["f1_0"] = {Integer(0), Integer(1)};
    f.characteristic.facet_vectors["f2_0"] = {Integer(0), Integer(1)};
    return f;
}

inline PairFixture closed_torus_fixture(const IntegerMatrix& a, const IntegerMatrix& b) {
    PairFixture f;
    f.name = "closed_torus";
    f.base = build_surface_base(1, {});
    f.monodromy.n = 2;
    f.monodromy.images["alpha1"] = a;
    f.monodromy.images["beta1"] = b;
    f.monodromy.relations = f.base.relation_words;
    return f;
}

// Global frame change: v -> g v on facet vectors, rho -> g rho g^{-1} on
// monodromy images. Validation verdicts must not see the difference.
inline PairFixture conjugate(const PairFixture& f, const IntegerMatrix& g) {
    PairFixture out = f;
    IntegerMatrix gi = inverse_unimodular(g);
    for (auto& [k, img] : out.monodromy.images) img = g * img * gi;
    for (auto& [k, v] : out.characteristic.facet_vectors) v = g.apply(v);
    out.characteristic.cell_stabilizers.clear();
    return out;
}

// A pool of >= 20 randomized valid fixtures over small surface bases.
inline std::vector<PairFixture> random_valid_fixtures(std::size_t count) {
    std::vector<PairFixture> out;
    std::size_t i = 0;
    while (out.size() < count) {
        PairFixture f;
        switch (i % 4) {
            case 0: f = conjugate(one_corner_torus(), random_gl2()); break;
            case 1: f = polygon_fixture(random_fan()); break;
            case 2: f = conjugate(annulus_fixture(), random_gl2()); break;
            default: {
                IntegerMatrix m = random_sl2(4);
                f = closed_torus_fixture(m, m * m);  // commuting pair keeps the relation
                break;
            }
        }
        f = conjugate(f, random_gl2());
        out.push_back(std::move(f));
        ++i;
    }
    return out;
}

} // namespace latact::testing
