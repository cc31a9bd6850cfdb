#include <catch2/catch_amalgamated.hpp>

#include "dakernel/diffpoly.hpp"
#include "dakernel/session.hpp"

using namespace dak;

namespace {

DiffRing ring_z2_gf2(int n = 1) {
    return DiffRing(Pseudofield::fun_of(Field::gf(2), Group::cyclic(2)), n,
                    n == 1 ? std::vector<std::string>{"y"}
                           : std::vector<std::string>{});
}

} // namespace

TEST_CASE("difference ring shape") {
    DiffRing R = ring_z2_gf2();
    CHECK(R.nvars() == 1);
    CHECK(R.grp().order() == 2);

    DiffRing R2(Pseudofield::fun_of(Field::gf(2), Group::cyclic(2)), 2);
    CHECK(R2.var_name(0) == "y1");
    CHECK(R2.var_name(1) == "y2");

    DiffRing R0(Pseudofield::fun_of(Field::gf(2), Group::cyclic(2)), 0);
    CHECK(R0.nvars() == 0);
    auto c = dp_one(R0);
    CHECK(dp_to_string(c) == "1");
}

TEST_CASE("symmetric polynomials are fixed by the action") {
    DiffRing R = ring_z2_gf2();
    // y + s(y) - 1
    DiffPoly f = dp_sub(dp_add(dp_var(R, 0, 0), dp_var(R, 0, 1)), dp_one(R));
    CHECK(dp_eq(act_poly(1, f), f));
    CHECK(is_sigma_constant(f));
    CHECK(dp_eq(act_poly(0, f), f));
}

TEST_CASE("action moves coefficients and shifts") {
    DiffRing R = ring_z2_gf2();
    const Pseudofield& A = R.coeffs();
    const Field& K = A.base();
    // (1,0) * y
    DiffPoly f = dp_mul_scalar(dp_var(R, 0, 0),
                               A.from_coords({K.one(), K.zero()}));
    DiffPoly sf = act_poly(1, f);
    // expected (0,1) * s(y)
    DiffPoly expect = dp_mul_scalar(dp_var(R, 0, 1),
                                    A.from_coords({K.zero(), K.one()}));
    CHECK(dp_eq(sf, expect));
    CHECK_FALSE(is_sigma_constant(f));
}

TEST_CASE("act_poly is a ring homomorphism and an action") {
    Field f3 = Field::gf(3);
    Group z4 = Group::cyclic(4);
    DiffRing R(Pseudofield::fun_of(f3, z4), 1, {"y"});
    const Pseudofield& A = R.coeffs();

    // a handful of structured polynomials
    std::vector<DiffPoly> polys;
    polys.push_back(dp_add(dp_var(R, 0, 0), dp_var(R, 0, 2)));
    polys.push_back(dp_mul(dp_var(R, 0, 1), dp_var(R, 0, 3)));
    polys.push_back(dp_add(dp_pow(dp_var(R, 0, 0), 2),
                           dp_mul_scalar(dp_one(R), A.elem_from_code(5))));
    polys.push_back(dp_mul_scalar(dp_var(R, 0, 1), A.elem_from_code(40)));
    for (auto& f : polys)
        for (auto& g : polys) {
            for (int s = 0; s < 4; ++s) {
                REQUIRE(dp_eq(act_poly(s, dp_mul(f, g)),
                              dp_mul(act_poly(s, f), act_poly(s, g))));
                REQUIRE(dp_eq(act_poly(s, dp_add(f, g)),
                              dp_add(act_poly(s, f), act_poly(s, g))));
                for (int t = 0; t < 4; ++t)
                    REQUIRE(dp_eq(act_poly(z4.compose(s, t), f),
                                  act_poly(s, act_poly(t, f))));
            }
        }
}

TEST_CASE("evaluation of the two-point system") {
    DiffRing R = ring_z2_gf2();
    const Pseudofield& A = R.coeffs();
    const Field& K = A.base();
    auto pt = A.from_coords({K.one(), K.zero()}); // the point (1,0)

    DiffPoly f1 = dp_mul(dp_var(R, 0, 0), dp_var(R, 0, 1)); // y*s(y)
    DiffPoly f2 = dp_sub(dp_add(dp_var(R, 0, 0), dp_var(R, 0, 1)), dp_one(R));

    CHECK(A.is_zero(eval_poly(f1, {pt})));
    CHECK(A.is_zero(eval_poly(f2, {pt})));

    // identity substitution
    Field f5 = Field::gf(5);
    Pseudofield A5 = Pseudofield::fun_of(f5, Group::cyclic(2));
    DiffRing R5(A5, 1, {"y"});
    auto p5 = A5.from_coords({f5.from_int(2), f5.from_int(3)});
    CHECK(eval_poly(dp_var(R5, 0, 0), {p5}) == p5);
}

TEST_CASE("evaluation is a difference homomorphism") {
    // eval(sigma f, a) = sigma(eval(f, a)), exhaustively over Fun(GF(2)),
    // Z/2 and Z/3, degree <= 2
    for (int order : {2, 3}) {
        Field f2 = Field::gf(2);
        Group g = Group::cyclic(order);
        Pseudofield A = Pseudofield::fun_of(f2, g);
        DiffRing R(A, 1, {"y"});
        std::vector<DiffPoly> polys;
        for (int sh1 = 0; sh1 < order; ++sh1)
            for (int sh2 = 0; sh2 < order; ++sh2) {
                polys.push_back(dp_mul(dp_var(R, 0, sh1), dp_var(R, 0, sh2)));
                polys.push_back(dp_add(dp_var(R, 0, sh1),
                                       dp_mul_scalar(dp_var(R, 0, sh2),
                                                     A.elem_from_code(1))));
            }
        for (auto& f : polys)
            for (int64_t code = 0; code < A.elem_count(); ++code) {
                auto a = A.elem_from_code(code);
                for (int s = 0; s < order; ++s)
                    REQUIRE(eval_poly(act_poly(s, f), {a}) ==
                            A.sigma_act(s, eval_poly(f, {a})));
            }
    }
}

TEST_CASE("evaluation is a ring homomorphism in the polynomial") {
    Field f5 = Field::gf(5);
    Pseudofield A = Pseudofield::fun_of(f5, Group::cyclic(2));
    DiffRing R(A, 2, {"u", "v"});
    auto a1 = A.from_coords({f5.from_int(2), f5.from_int(3)});
    auto a2 = A.from_coords({f5.from_int(4), f5.from_int(1)});
    std::vector<PseudofieldElem> pt{a1, a2};

    DiffPoly f = dp_add(dp_mul(dp_var(R, 0, 0), dp_var(R, 1, 1)),
                        dp_scalar(R, f5.from_int(2)));
    DiffPoly g = dp_sub(dp_pow(dp_var(R, 1, 0), 2), dp_var(R, 0, 1));
    CHECK(eval_poly(dp_mul(f, g), pt) ==
          A.mul(eval_poly(f, pt), eval_poly(g, pt)));
    CHECK(eval_poly(dp_add(f, g), pt) ==
          A.add(eval_poly(f, pt), eval_poly(g, pt)));
}

TEST_CASE("printing and reparsing difference polynomials") {
    Field f5 = Field::gf(5);
    Pseudofield A = Pseudofield::fun_of(f5, Group::cyclic(2));
    DiffRing R(A, 2, {"x", "z"});
    DiffPoly f = dp_add(
        dp_mul(dp_var(R, 0, 0), dp_pow(dp_var(R, 1, 1), 2)),
        dp_mul_scalar(dp_var(R, 0, 1), A.from_coords({f5.from_int(2), f5.from_int(3)})));
    std::string s = dp_to_string(f);
    DiffPoly g = parse::parse_diff_poly(R, s);
    CHECK(dp_eq(f, g));
    CHECK(dp_to_string(g) == s);

    CHECK(dp_to_string(dp_zero(R)) == "0");
    CHECK(dp_to_string(dp_one(R)) == "1");
}
