#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "dakernel/variety.hpp"
#include "oracles.hpp"

using namespace dak;

namespace {

struct Setup {
    Field K;
    Group G;
    Pseudofield A;
    DiffRing R;

    explicit Setup(int64_t q = 2, int order = 2, int n = 1)
        : K(Field::gf(q)), G(Group::cyclic(order)), A(Pseudofield::fun_of(K, G)),
          R(A, n, n == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{}) {}

    DiffPoly x(int shift = 0, int var = 0) const { return dp_var(R, var, shift); }
};

std::set<std::string> point_strings(const PointSet& V) {
    std::set<std::string> out;
    for (auto& p : V.points) {
        std::string s;
        for (auto& c : p) s += V.ring.coeffs().to_string(c);
        out.insert(s);
    }
    return out;
}

} // namespace

TEST_CASE("solving the two worked systems") {
    SECTION("x*s(x) = 0, x + s(x) = 1 over small prime fields") {
        for (int64_t q : {2, 3, 5}) {
            Setup s(q, 2, 1);
            DiffIdeal a(s.R, {dp_mul(s.x(0), s.x(1)),
                              dp_sub(dp_add(s.x(0), s.x(1)), dp_one(s.R))});
            PointSet V = solve_points(a);
            auto pts = point_strings(V);
            REQUIRE(pts.size() == 2);
            CHECK(pts.count("(1,0)") == 1);
            CHECK(pts.count("(0,1)") == 1);
        }
    }
    SECTION("x + s(x) = 0, x^2 = 4 over Fun(GF(5))") {
        Setup s(5, 2, 1);
        DiffIdeal a(s.R, {dp_add(s.x(0), s.x(1)),
                          dp_sub(dp_pow(s.x(0), 2), dp_scalar(s.R, s.K.from_int(4)))});
        PointSet V = solve_points(a);
        auto pts = point_strings(V);
        REQUIRE(pts.size() == 2);
        CHECK(pts.count("(2,3)") == 1);
        CHECK(pts.count("(3,2)") == 1);
    }
    SECTION("the unit ideal has no zeros") {
        Setup s;
        CHECK(solve_points(DiffIdeal(s.R, {dp_one(s.R)})).points.empty());
    }
    SECTION("candidate cap") {
        Setup big(5, 4, 3);
        DiffIdeal zero(big.R, {});
        CHECK_THROWS_WITH(solve_points(zero, 2),
                          Catch::Matchers::ContainsSubstring("10^6"));
    }
}

TEST_CASE("solve equals the transfer of brute-force adjoint zeros") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        int64_t q = trial % 2 ? 3 : 2;
        int order = trial % 3 == 2 ? 4 : 2;
        Setup s(q, order, 1);
        std::vector<DiffPoly> gens;
        for (int g = 0; g < 2; ++g) {
            DiffPoly f = dp_constant(s.R, s.A.elem_from_code(rng() % s.A.elem_count()));
            for (int t = 0; t < 2; ++t)
                f = dp_add(f, dp_mul(dp_var(s.R, 0, rng() % order),
                                     dp_var(s.R, 0, rng() % order)));
            gens.push_back(f);
        }
        DiffIdeal a(s.R, gens);
        PointSet V = solve_points(a);

        const Ideal& J = to_adjoint(a);
        auto zeros = oracle::brute_zeros(J.ring(), J.gens());
        std::set<std::string> transferred;
        for (auto& z : zeros) {
            auto back = transfer_point_back(s.R, AdjPoint{z});
            std::string str;
            for (auto& c : back) str += s.A.to_string(c);
            transferred.insert(str);
        }
        REQUIRE(point_strings(V) == transferred);
    }
}

TEST_CASE("ideal of a point set") {
    Setup s;
    const Pseudofield& A = s.A;
    auto mk = [&](int a, int b) {
        return A.from_coords({s.K.from_int(a), s.K.from_int(b)});
    };
    SECTION("two points give the worked adjoint") {
        PointSet X{s.R, {{mk(1, 0)}, {mk(0, 1)}}};
        DiffIdeal I = ideal_of_points(X);
        auto gb = groebner_basis(to_adjoint(I));
        REQUIRE(gb.size() == 2);
        const Ring& adj = to_adjoint(I).ring();
        CHECK(adj.to_string(gb[0]) == "x@e + x@s + 1");
        CHECK(adj.to_string(gb[1]) == "x@s^2 + x@s");
    }
    SECTION("a single point gives a pseudomaximal ideal") {
        PointSet X{s.R, {{mk(1, 0)}}};
        DiffIdeal I = ideal_of_points(X);
        CHECK(is_pseudomaximal(I));
        DiffPoly gen = dp_sub(s.x(0), dp_constant(s.R, mk(1, 0)));
        CHECK(diff_ideal_eq(I, DiffIdeal(s.R, {gen})));
    }
    SECTION("the empty set gives the unit ideal") {
        PointSet X{s.R, {}};
        CHECK(is_unit_ideal(to_adjoint(ideal_of_points(X))));
    }
}

TEST_CASE("nullstellensatz check") {
    SECTION("two-point system holds at degree 1") {
        Setup s;
        DiffIdeal a(s.R, {dp_mul(s.x(0), s.x(1)),
                          dp_sub(dp_add(s.x(0), s.x(1)), dp_one(s.R))});
        NssReport rep = nullstellensatz_check(a, 1);
        CHECK(rep.status == NssReport::Status::holds);
        CHECK(rep.closure_degree == 2);
        CHECK(rep.points_found == 2);
    }
    SECTION("[x^2] over Fun(GF(3)) holds with radical [x]") {
        Setup s(3, 2, 1);
        DiffIdeal a(s.R, {dp_pow(s.x(0), 2)});
        NssReport rep = nullstellensatz_check(a, 1);
        CHECK(rep.status == NssReport::Status::holds);
        REQUIRE(rep.lhs.size() == 2);
        CHECK(rep.lhs[0] == "x@s");
        CHECK(rep.lhs[1] == "x@e");
    }
    SECTION("irrational roots are inconclusive until the extension grows") {
        Setup s(3, 2, 1);
        DiffIdeal a(s.R, {dp_sub(s.x(0), s.x(1)),
                          dp_add(dp_pow(s.x(0), 2), dp_one(s.R))});
        NssReport r1 = nullstellensatz_check(a, 1);
        CHECK(r1.status == NssReport::Status::inconclusive);
        CHECK(r1.points_found == 0);
        CHECK(r1.closure_degree == 2);
        NssReport r2 = nullstellensatz_check(a, 2);
        CHECK(r2.status == NssReport::Status::holds);
        CHECK(r2.points_found == 2);
    }
    SECTION("the radical is always contained in I(V)") {
        // even when inconclusive, every radical generator vanishes on V
        Setup s(3, 2, 1);
        DiffIdeal a(s.R, {dp_sub(s.x(0), s.x(1)),
                          dp_add(dp_pow(s.x(0), 2), dp_one(s.R))});
        Ideal rad = zero_dim_radical(to_adjoint(a));
        PointSet V = solve_points(a, 1);
        for (auto& g : rad.gens())
            for (auto& p : V.points) {
                auto adj = transfer_point(s.R, p);
                CHECK(s.K.is_zero(oracle::eval_at(rad.ring(), g, adj.coords)));
            }
        CHECK(V.points.empty()); // and indeed no rational points here
    }
    SECTION("positive-dimensional systems are rejected") {
        Setup s2(2, 2, 2);
        DiffIdeal a(s2.R, {dp_var(s2.R, 0, 0)});
        CHECK_THROWS_WITH(nullstellensatz_check(a, 1),
                          Catch::Matchers::ContainsSubstring("zero-dimensional"));
    }
    SECTION("the unit ideal holds vacuously") {
        Setup s;
        NssReport rep = nullstellensatz_check(DiffIdeal(s.R, {dp_one(s.R)}), 1);
        CHECK(rep.status == NssReport::Status::holds);
        CHECK(rep.closure_degree == 0);
        CHECK(rep.points_found == 0);
    }
}

TEST_CASE("solving over an extension of an extension field") {
    // base GF(9): x^2 = w+1 has no roots there (w+1 generates GF(9)*), but
    // two roots over GF(81); the GF(9) -> GF(81) embedding carries the
    // coefficients across
    Field K = Field::gf(3, 2, {1, 0, 1});
    Pseudofield A = Pseudofield::fun_of(K, Group::cyclic(2));
    DiffRing R(A, 1, {"x"});
    DiffPoly c = dp_scalar(R, K.add(K.generator(), K.one()));
    DiffIdeal a(R, {dp_sub(dp_var(R, 0, 0), dp_var(R, 0, 1)),
                    dp_sub(dp_pow(dp_var(R, 0, 0), 2), c)});
    CHECK(solve_points(a, 1).points.empty());
    PointSet V = solve_points(a, 2);
    REQUIRE(V.points.size() == 2);
    // verify the roots against the embedded constant
    const Field& L = V.ring.coeffs().base();
    auto hom = K.embed_into(L);
    FieldElem target = hom.map(K.add(K.generator(), K.one()));
    for (auto& p : V.points) {
        FieldElem r = p[0].coords[0];
        REQUIRE(L.eq(L.mul(r, r), target));
        REQUIRE(L.eq(p[0].coords[0], p[0].coords[1])); // fixed by sigma
    }
    NssReport rep = nullstellensatz_check(a, 2);
    CHECK(rep.status == NssReport::Status::holds);
}

TEST_CASE("solving over a large extension without packed tables") {
    // GF(2^11) has 2048 elements, past the lookup-table limit; the decode
    // path must still produce exact results
    Field K = Field::gf_auto(2, 11);
    REQUIRE_FALSE(PackedField(K).has_tables());
    Pseudofield A = Pseudofield::fun_of(K, Group::cyclic(1));
    DiffRing R(A, 1, {"x"});
    // x^2 + x = x(x+1): exactly the two roots 0 and 1
    DiffIdeal a(R, {dp_add(dp_pow(dp_var(R, 0, 0), 2), dp_var(R, 0, 0))});
    PointSet V = solve_points(a);
    REQUIRE(V.points.size() == 2);
}

TEST_CASE("V turns ideal lattice operations into set operations") {
    Setup s(3, 2, 1);
    auto pt = [&](int a, int b) {
        return s.A.from_coords({s.K.from_int(a), s.K.from_int(b)});
    };
    DiffIdeal Ia = ideal_of_points({s.R, {{pt(1, 0)}, {pt(0, 1)}}});
    DiffIdeal Ib = ideal_of_points({s.R, {{pt(0, 1)}, {pt(2, 2)}}});

    // V(a cap b) = V(a) union V(b)
    ComponentIdeal ca = component_ideal(s.R, closure_gens(Ia.gens()));
    ComponentIdeal cb = component_ideal(s.R, closure_gens(Ib.gens()));
    ComponentIdeal meet = intersect_components(ca, cb);
    REQUIRE(is_difference_componentwise(meet));
    DiffIdeal Iab = from_adjoint(s.R, meet.slots[0]);
    auto vab = point_strings(solve_points(Iab));
    CHECK(vab == std::set<std::string>{"(1,0)", "(0,1)", "(2,2)"});

    // V(a + b) = V(a) cap V(b)
    std::vector<DiffPoly> sum = Ia.gens();
    for (auto& g : Ib.gens()) sum.push_back(g);
    auto vsum = point_strings(solve_points(DiffIdeal(s.R, sum)));
    CHECK(vsum == std::set<std::string>{"(0,1)"});
}

TEST_CASE("basic open sets intersect through orbit products") {
    // pointwise form of the X_s cap X_t law: s and t are both nonzero at a
    // point exactly when some product sigma(s)tau(t) is
    Setup s(3, 2, 1);
    std::mt19937 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        auto rand_poly = [&]() {
            DiffPoly f = dp_constant(s.R, s.A.elem_from_code(rng() % 9));
            for (int t = 0; t < 2; ++t)
                if (rng() % 2)
                    f = dp_add(f, dp_mul(dp_var(s.R, 0, rng() % 2),
                                         dp_constant(s.R, s.A.elem_from_code(rng() % 9))));
            return f;
        };
        DiffPoly sp = rand_poly(), tp = rand_poly();
        auto products = open_basis_intersection(sp, tp);
        for (int64_t code = 0; code < s.A.elem_count(); ++code) {
            auto a = s.A.elem_from_code(code);
            bool both = !s.A.is_zero(eval_poly(sp, {a})) &&
                        !s.A.is_zero(eval_poly(tp, {a}));
            bool some_product = false;
            for (auto& p : products)
                if (!s.A.is_zero(eval_poly(p, {a}))) { some_product = true; break; }
            REQUIRE(both == some_product);
        }
    }
}

TEST_CASE("gluing regular functions") {
    SECTION("the trivial-group textbook cover gives d = u exactly") {
        Field K = Field::gf(5);
        Pseudofield A = Pseudofield::fun_of(K, Group::cyclic(1));
        DiffRing R(A, 1, {"u"});
        DiffPoly u = dp_var(R, 0, 0);
        DiffIdeal X(R, {}); // the affine line
        std::vector<RegularPatch> patches = {
            {u, dp_pow(u, 2)},
            {dp_sub(dp_one(R), u), dp_sub(u, dp_pow(u, 2))},
        };
        DiffPoly d = glue_regular(patches, X);
        CHECK(dp_eq(d, u));
    }
    SECTION("a single unit patch returns its numerator") {
        Setup s;
        DiffIdeal X(s.R, {dp_mul(s.x(0), s.x(1))});
        DiffPoly h = dp_add(s.x(0), s.x(1));
        DiffPoly d = glue_regular({{dp_one(s.R), h}}, X);
        CHECK(diff_ideal_contains(X, dp_sub(d, h)));
    }
    SECTION("constant invertible denominators divide out") {
        Field K = Field::gf(5);
        Pseudofield A = Pseudofield::fun_of(K, Group::cyclic(2));
        DiffRing R(A, 1, {"x"});
        DiffIdeal X(R, {});
        DiffPoly c = dp_scalar(R, K.from_int(2)); // sigma-constant unit
        DiffPoly h = dp_mul(dp_var(R, 0, 0), dp_var(R, 0, 1));
        DiffPoly d = glue_regular({{c, h}}, X);
        // d = h * 2^-1 = 3h
        CHECK(dp_eq(d, dp_mul_scalar(h, A.constant(K.from_int(3)))));
    }
    SECTION("Z/2 covers glue to the target section") {
        Setup s;
        DiffIdeal X(s.R, {dp_mul(s.x(0), s.x(1)),
                          dp_sub(dp_add(s.x(0), s.x(1)), dp_one(s.R))});
        // target section f, patches h_i = f*g_i
        DiffPoly f = dp_add(dp_pow(s.x(0), 2), s.x(1));
        DiffPoly g1 = dp_add(s.x(0), s.x(1)); // = 1 on X
        DiffPoly g2 = dp_one(s.R);
        std::vector<RegularPatch> patches = {{g1, dp_mul(f, g1)}, {g2, dp_mul(f, g2)}};
        DiffPoly d = glue_regular(patches, X);
        CHECK(diff_ideal_contains(X, dp_sub(d, f)));
        for (auto& p : patches)
            CHECK(diff_ideal_contains(X, dp_sub(dp_mul(d, p.g), p.h)));
    }
    SECTION("error paths") {
        Setup s;
        DiffIdeal affine(s.R, {});
        // non-sigma-constant denominator
        CHECK_THROWS_WITH(glue_regular({{s.x(0), s.x(0)}}, affine),
                          Catch::Matchers::ContainsSubstring("sigma-constant"));
        // no cover: y*s(y) vanishes at the origin
        DiffPoly g = dp_mul(s.x(0), s.x(1));
        CHECK_THROWS_WITH(glue_regular({{g, g}}, affine),
                          Catch::Matchers::ContainsSubstring("do not cover"));
        // incompatible patches
        CHECK_THROWS_WITH(
            glue_regular({{dp_one(s.R), s.x(0)},
                          {dp_one(s.R), dp_add(s.x(0), dp_one(s.R))}},
                         affine),
            Catch::Matchers::ContainsSubstring("incompatible"));
    }
}

TEST_CASE("pseudoregular fractions normalize to regular ones") {
    Field K = Field::gf(5);
    Group Z2 = Group::cyclic(2);
    Pseudofield A = Pseudofield::fun_of(K, Z2);
    DiffRing R(A, 1, {"x"});

    SECTION("the constant example") {
        DiffPoly g = dp_constant(R, A.from_coords({K.from_int(2), K.zero()}));
        DiffPoly h = dp_one(R);
        auto x0 = A.from_coords({K.one(), K.one()});
        RegularizedFraction rf = pseudoregular_to_regular(h, g, {x0});
        CHECK(A.to_string(rf.e) == "(1,0)");
        // g' = (2,1), g0 = (2,1)*(1,2) = (2,2), h0 = (1,0)*(1,2) = (1,0)
        CHECK(dp_eq(rf.g0, dp_constant(R, A.from_coords({K.from_int(2), K.from_int(2)}))));
        CHECK(dp_eq(rf.h0, dp_constant(R, A.from_coords({K.one(), K.zero()}))));
        // h0 * g0^-1 = (3,0) = e * h * g^*
        auto pi = A.pseudo_inverse(A.from_coords({K.from_int(2), K.zero()}));
        CHECK(A.to_string(pi.astar) == "(3,0)");
    }
    SECTION("invertible g keeps the classical fraction") {
        DiffPoly g = dp_scalar(R, K.from_int(2));
        DiffPoly h = dp_var(R, 0, 0);
        auto x0 = A.from_coords({K.zero(), K.zero()});
        RegularizedFraction rf = pseudoregular_to_regular(h, g, {x0});
        CHECK(A.is_constant(rf.e));
        CHECK(K.eq(rf.e.coords[0], K.one()));
        CHECK(is_sigma_constant(rf.g0));
    }
    SECTION("vanishing g at the base point is an error") {
        DiffPoly g = dp_var(R, 0, 0);
        auto origin = A.zero();
        CHECK_THROWS_WITH(pseudoregular_to_regular(g, g, {origin}),
                          Catch::Matchers::ContainsSubstring("vanishes"));
    }
    SECTION("identity at every admissible point, randomized") {
        std::mt19937 rng(41);
        int checked = 0;
        for (int trial = 0; trial < 30; ++trial) {
            auto rand_poly = [&]() {
                DiffPoly f = dp_constant(R, A.elem_from_code(rng() % 25));
                for (int t = 0; t < 2; ++t)
                    if (rng() % 2)
                        f = dp_add(f, dp_mul(dp_var(R, 0, rng() % 2),
                                             dp_constant(R, A.elem_from_code(rng() % 25))));
                return f;
            };
            DiffPoly h = rand_poly(), g = rand_poly();
            auto x0 = A.elem_from_code(rng() % 25);
            PseudofieldElem gx = eval_poly(g, {x0});
            if (A.is_zero(gx)) continue;
            RegularizedFraction rf = pseudoregular_to_regular(h, g, {x0});
            REQUIRE(is_sigma_constant(rf.g0));
            for (int64_t code = 0; code < 25; ++code) {
                auto y = A.elem_from_code(code);
                auto g0y = eval_poly(rf.g0, {y});
                REQUIRE(A.is_constant(g0y));
                if (K.is_zero(g0y.coords[0])) continue; // outside X_{g0}
                auto lhs = A.mul(eval_poly(rf.h0, {y}),
                                 A.constant(K.inv(g0y.coords[0])));
                auto gy = eval_poly(g, {y});
                auto rhs = A.mul(rf.e, A.mul(eval_poly(h, {y}),
                                             A.pseudo_inverse(gy).astar));
                REQUIRE(lhs == rhs);
                ++checked;
            }
        }
        CHECK(checked > 100);
    }
}
