#include <catch2/catch_amalgamated.hpp>

#include "dakernel/pseudofield.hpp"

using namespace dak;

namespace {

Pseudofield conjugation_gf9() {
    // GF(9) x GF(9) with s(a,b) = (frob b, frob a): the finite analogue of
    // complex conjugation on C x C
    Field f9 = Field::gf(3, 2, {1, 0, 1});
    Group z2 = Group::cyclic(2);
    return Pseudofield::product(f9, z2, 2, {{0, 1}, {1, 0}}, {{0, 0}, {1, 1}});
}

Pseudofield order4_gf9() {
    // GF(9) x GF(9) with s(a,b) = (b, frob a): an order-4 action
    Field f9 = Field::gf(3, 2, {1, 0, 1});
    Group z4 = Group::cyclic(4);
    std::map<int, std::vector<int>> perm{{1, {1, 0}}};
    std::map<int, std::vector<int>> autos{{1, {0, 1}}};
    return Pseudofield::product_from_generators(f9, z4, 2, perm, autos);
}

} // namespace

TEST_CASE("fun translation action over Z/2") {
    Field f3 = Field::gf(3);
    Pseudofield A = Pseudofield::fun_of(f3, Group::cyclic(2));
    auto a = A.from_coords({f3.from_int(1), f3.from_int(2)});
    auto sa = A.sigma_act(1, a);
    CHECK(A.to_string(sa) == "(2,1)");
    CHECK(A.sigma_act(0, a) == a);
}

TEST_CASE("fun over the trivial group is the field itself") {
    Field f5 = Field::gf(5);
    Pseudofield A = Pseudofield::fun_of(f5, Group::cyclic(1));
    CHECK(A.factors() == 1);
    auto a = A.from_coords({f5.from_int(3)});
    CHECK(A.sigma_act(0, a) == a);
}

TEST_CASE("fun translation action over Z/4") {
    Field f2 = Field::gf(2);
    Pseudofield A = Pseudofield::fun_of(f2, Group::cyclic(4));
    auto a = A.from_coords(
        {f2.from_int(1), f2.from_int(0), f2.from_int(1), f2.from_int(1)});
    // s.(a0,a1,a2,a3) = (a3,a0,a1,a2)
    CHECK(A.to_string(A.sigma_act(1, a)) == "(1,1,0,1)");
}

TEST_CASE("gamma evaluation") {
    Field f5 = Field::gf(5);
    Group z2 = Group::cyclic(2);
    Pseudofield A = Pseudofield::fun_of(f5, z2);
    auto a = A.from_coords({f5.from_int(2), f5.from_int(3)});
    CHECK(f5.eq(A.gamma_eval(0, a), f5.from_int(2)));
    CHECK(f5.eq(A.gamma_eval(1, a), f5.from_int(3)));

    // gamma_tau(sigma f) = gamma_{sigma^-1 tau}(f), exhaustively
    Group z4 = Group::cyclic(4);
    Field f3 = Field::gf(3);
    Pseudofield B = Pseudofield::fun_of(f3, z4);
    for (int64_t code = 0; code < B.elem_count(); ++code) {
        auto f = B.elem_from_code(code);
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t)
                REQUIRE(f3.eq(B.gamma_eval(t, B.sigma_act(s, f)),
                              B.gamma_eval(z4.compose(z4.inverse(s), t), f)));
    }

    Pseudofield C = conjugation_gf9();
    auto c = C.one();
    CHECK_THROWS_WITH(C.gamma_eval(0, c),
                      Catch::Matchers::ContainsSubstring("taylor_normalize"));
}

TEST_CASE("product pseudofield validation") {
    Field f9 = Field::gf(3, 2, {1, 0, 1});
    Group z2 = Group::cyclic(2);
    SECTION("intransitive actions are rejected") {
        CHECK_THROWS_WITH(
            Pseudofield::product(f9, z2, 2, {{0, 1}, {0, 1}}, {{0, 0}, {0, 0}}),
            Catch::Matchers::ContainsSubstring("not a simple difference ring"));
    }
    SECTION("non-homomorphic perms are rejected") {
        // s has order 2 but the permutation below has order 3 on factors
        Group z2b = Group::cyclic(2);
        CHECK_THROWS(Pseudofield::product(f9, z2b, 3,
                                          {{0, 1, 2}, {1, 2, 0}},
                                          {{0, 0, 0}, {0, 0, 0}}));
    }
    SECTION("cocycle violations are rejected") {
        // s^2 = e but frobenius twists add up to frob^2 = id only if paired;
        // a single twist on a fixed factor breaks the cocycle rule
        CHECK_THROWS_WITH(
            Pseudofield::product(f9, z2, 2, {{0, 1}, {1, 0}}, {{0, 0}, {1, 0}}),
            Catch::Matchers::ContainsSubstring("cocycle"));
    }
}

TEST_CASE("conjugation pseudofield action") {
    Pseudofield A = conjugation_gf9();
    const Field& K = A.base();
    FieldElem w = K.generator();
    auto a = A.from_coords({w, K.zero()});
    // s.(w, 0) = (0, w^3)
    auto sa = A.sigma_act(1, a);
    CHECK(K.eq(sa.coords[0], K.zero()));
    CHECK(K.eq(sa.coords[1], K.pow(w, 3)));
}

TEST_CASE("sigma_act is a left action, exhaustively") {
    std::vector<Pseudofield> cases;
    cases.push_back(Pseudofield::fun_of(Field::gf(3), Group::cyclic(2)));
    cases.push_back(Pseudofield::fun_of(Field::gf(2), Group::cyclic(4)));
    cases.push_back(conjugation_gf9());
    cases.push_back(order4_gf9());
    for (auto& A : cases) {
        int n = A.grp().order();
        for (int64_t code = 0; code < A.elem_count(); ++code) {
            auto a = A.elem_from_code(code);
            for (int s = 0; s < n; ++s) {
                for (int t = 0; t < n; ++t) {
                    auto lhs = A.sigma_act(s, A.sigma_act(t, a));
                    auto rhs = A.sigma_act(A.grp().compose(s, t), a);
                    REQUIRE(lhs == rhs);
                }
                // the action is a ring automorphism
                auto b = A.elem_from_code((code * 7 + 3) % A.elem_count());
                REQUIRE(A.sigma_act(s, A.mul(a, b)) ==
                        A.mul(A.sigma_act(s, a), A.sigma_act(s, b)));
            }
        }
    }
}

TEST_CASE("pseudo-inverse identities") {
    Field f5 = Field::gf(5);
    Pseudofield A = Pseudofield::fun_of(f5, Group::cyclic(2));

    auto a = A.from_coords({f5.from_int(2), f5.zero()});
    auto pi = A.pseudo_inverse(a);
    CHECK(A.to_string(pi.e) == "(1,0)");
    CHECK(A.to_string(pi.astar) == "(3,0)");

    CHECK(A.is_zero(A.pseudo_inverse(A.zero()).e));
    CHECK(A.pseudo_inverse(A.one()).astar == A.one());

    // exhaustive identities a = ea, a* = ea*, e = aa*, (a*)* = ea
    for (int64_t code = 0; code < A.elem_count(); ++code) {
        auto x = A.elem_from_code(code);
        auto p = A.pseudo_inverse(x);
        REQUIRE(A.mul(p.e, x) == x);
        REQUIRE(A.mul(p.e, p.astar) == p.astar);
        REQUIRE(A.mul(x, p.astar) == p.e);
        REQUIRE(A.mul(p.e, p.e) == p.e);
        auto pp = A.pseudo_inverse(p.astar);
        REQUIRE(pp.astar == A.mul(p.e, x));
    }
}

TEST_CASE("taylor normalization of Fun(K) is the identity") {
    Field f3 = Field::gf(3);
    Group z2 = Group::cyclic(2);
    Pseudofield A = Pseudofield::fun_of(f3, z2);
    TaylorTable t = A.taylor_normalize(0);
    CHECK(t.isomorphism);
    for (int tau = 0; tau < 2; ++tau) {
        CHECK(t.entry[tau].first == tau);
        CHECK(t.entry[tau].second == 0);
    }
}

TEST_CASE("taylor normalization of the conjugation pseudofield") {
    Pseudofield A = conjugation_gf9();
    const Field& K = A.base();
    TaylorTable t = A.taylor_normalize(0);
    CHECK(t.isomorphism); // m = |Sigma| = 2

    // the presentation K[x]/(x^2-1), x -> (1,-1), carries a+bx to the
    // coordinates (a+b, a-b); the normalization must send that pair to
    // (a+b, frob(a) - frob(b))
    for (int64_t ca = 0; ca < 9; ++ca)
        for (int64_t cb = 0; cb < 9; ++cb) {
            FieldElem a = K.from_code(ca), b = K.from_code(cb);
            auto elem = A.from_coords({K.add(a, b), K.sub(a, b)});
            auto img = A.taylor_apply(t, elem);
            REQUIRE(K.eq(img[0], K.add(a, b)));
            REQUIRE(K.eq(img[1], K.sub(K.frobenius(a, 1), K.frobenius(b, 1))));
        }
}

TEST_CASE("taylor normalization of the order-4 action") {
    Pseudofield A = order4_gf9();
    const Field& K = A.base();
    TaylorTable t = A.taylor_normalize(0);
    CHECK_FALSE(t.isomorphism); // m = 2 < |Sigma| = 4: an embedding

    // (a,b) -> (a, frob b, frob a, b)
    for (int64_t ca = 0; ca < 9; ca += 2)
        for (int64_t cb = 0; cb < 9; ++cb) {
            FieldElem a = K.from_code(ca), b = K.from_code(cb);
            auto img = A.taylor_apply(t, A.from_coords({a, b}));
            REQUIRE(K.eq(img[0], a));
            REQUIRE(K.eq(img[1], K.frobenius(b, 1)));
            REQUIRE(K.eq(img[2], K.frobenius(a, 1)));
            REQUIRE(K.eq(img[3], b));
        }
}

TEST_CASE("taylor normalization of a quotient action") {
    // Z/4 acting through its Z/2 quotient: trivial twists, swap permutation;
    // the image repeats coordinates and is a proper embedding
    Field f3 = Field::gf(3);
    Group z4 = Group::cyclic(4);
    std::map<int, std::vector<int>> perm{{1, {1, 0}}};
    Pseudofield A = Pseudofield::product_from_generators(f3, z4, 2, perm, {});
    TaylorTable t = A.taylor_normalize(0);
    CHECK_FALSE(t.isomorphism);
    for (int64_t ca = 0; ca < 3; ++ca)
        for (int64_t cb = 0; cb < 3; ++cb) {
            auto img = A.taylor_apply(t, A.from_coords({f3.from_code(ca), f3.from_code(cb)}));
            REQUIRE(f3.eq(img[0], f3.from_code(ca)));
            REQUIRE(f3.eq(img[1], f3.from_code(cb)));
            REQUIRE(f3.eq(img[2], f3.from_code(ca)));
            REQUIRE(f3.eq(img[3], f3.from_code(cb)));
        }
}

TEST_CASE("taylor normalization is a difference embedding") {
    // Phi(sigma a) = sigma Phi(a) and Phi is injective and multiplicative
    for (auto& A : {conjugation_gf9(), order4_gf9()}) {
        Pseudofield fun = Pseudofield::fun_of(A.base(), A.grp());
        TaylorTable t = A.taylor_normalize(0);
        auto Phi = [&](const PseudofieldElem& a) {
            return fun.from_coords(A.taylor_apply(t, a));
        };
        std::vector<PseudofieldElem> seen;
        for (int64_t code = 0; code < A.elem_count(); ++code) {
            auto a = A.elem_from_code(code);
            auto img = Phi(a);
            for (auto& other : seen) REQUIRE(!(other == img));
            seen.push_back(img);
            for (int s = 0; s < A.grp().order(); ++s)
                REQUIRE(Phi(A.sigma_act(s, a)) == fun.sigma_act(s, img));
            auto b = A.elem_from_code((code + 5) % A.elem_count());
            REQUIRE(Phi(A.mul(a, b)) == fun.mul(img, Phi(b)));
            REQUIRE(Phi(A.add(a, b)) == fun.add(img, Phi(b)));
        }
    }
}
