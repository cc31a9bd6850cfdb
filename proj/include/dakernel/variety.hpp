#pragma once

/// Pseudovarieties at desk scale: exhaustive V(E) over Fun(GF(q^d)),
/// vanishing ideals of finite point sets, a three-valued difference
/// Nullstellensatz check, regular-function gluing from a unit certificate,
/// and the pseudoregular -> regular normalization.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dakernel/adjoint.hpp"
#include "dakernel/common.hpp"
#include "dakernel/diffideal.hpp"
#include "dakernel/diffpoly.hpp"
#include "dakernel/groebner.hpp"

namespace dak {

/// A finite set of points of A^n, with the ring they live in (which may be
/// an extension ring of the one a system was posed over).
struct PointSet {
    DiffRing ring;
    std::vector<std::vector<PseudofieldElem>> points;
};

namespace detail {

inline int64_t ipow_checked(int64_t b, int e, int64_t cap) {
    int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > cap) return cap + 1;
    }
    return r;
}

/// The same difference ring with coefficients extended to GF(q^d).
struct ExtensionContext {
    DiffRing ring;     // over Fun(L)
    FieldHom hom;    // K -> L
};

inline ExtensionContext extension_context(const DiffRing& R, int d) {
    require_fun_base(R);
    const Field& K = R.coeffs().base();
    if (!K.is_finite()) throw error("extension search needs a finite base field");
    Field L = K.extension(d);
    FieldHom hom = K.embed_into(L);
    Pseudofield funL = Pseudofield::fun_of(L, R.grp());
    std::vector<std::string> names;
    for (int i = 0; i < R.nvars(); ++i) names.push_back(R.var_name(i));
    return {DiffRing(funL, R.nvars(), names), hom};
}

inline DiffPoly map_coeffs(const DiffRing& dst, const FieldHom& hom,
                           const DiffPoly& f) {
    const Pseudofield& B = dst.coeffs();
    DiffPoly out = dp_zero(dst);
    for (auto& [m, c] : f.terms) {
        std::vector<FieldElem> coords;
        coords.reserve(c.coords.size());
        for (auto& x : c.coords) coords.push_back(hom.map(x));
        dp_add_term(out, m, B.from_coords(std::move(coords)));
    }
    return out;
}

// Compiled form of a difference polynomial over Fun(L) for packed
// evaluation: per term, the coefficient codes and the variable factors.
struct CompiledPoly {
    struct Factor {
        int var;
        int shift;
        int exp;
    };
    struct CTerm {
        std::vector<int64_t> coeff; // per Fun coordinate
        std::vector<Factor> factors;
    };
    std::vector<CTerm> terms;
};

inline CompiledPoly compile_poly(const DiffPoly& f) {
    CompiledPoly out;
    const Field& L = f.ring.coeffs().base();
    for (auto& [m, c] : f.terms) {
        CompiledPoly::CTerm t;
        for (auto& x : c.coords) t.coeff.push_back(L.code(x));
        for (auto& [dv, e] : m.factors) t.factors.push_back({dv.var, dv.shift, e});
        out.terms.push_back(std::move(t));
    }
    return out;
}

} // namespace detail

/// All common zeros of the ideal's generators in Fun(GF(q^d))^n, by
/// exhaustive evaluation. The candidate count (q^d)^(n|Sigma|) is capped at
/// 10^6. Points are returned in ascending coordinate-code order.
inline PointSet solve_points(const DiffIdeal& a, int ext_degree = 1) {
    static constexpr int64_t kCandidateCap = 1000000;
    const DiffRing& R = a.ring();
    require_fun_base(R);
    auto ext = detail::extension_context(R, ext_degree);
    const DiffRing& RL = ext.ring;
    const Pseudofield& A = RL.coeffs();
    const Field& L = A.base();
    const Group& G = RL.grp();
    int n = RL.nvars(), m = G.order();
    int64_t total = detail::ipow_checked(L.size(), n * m, kCandidateCap);
    if (total > kCandidateCap)
        throw error("candidate point count exceeds 10^6; "
                    "use a smaller field, extension degree, or system");

    std::vector<DiffPoly> gens;
    for (auto& g : a.gens())
        if (!g.is_zero()) gens.push_back(detail::map_coeffs(RL, ext.hom, g));

    PointSet out{RL, {}};
    if (n == 0) {
        bool ok = true;
        for (auto& g : gens)
            if (!g.is_zero()) ok = false;
        if (ok) out.points.push_back({});
        return out;
    }

    int64_t q = L.size();
    std::vector<int64_t> digits(n * m, 0); // digit (i*m + c) = code of a_i(c)
    // group translation table: tau^-1 composed with c
    std::vector<std::vector<int>> shift_src(m, std::vector<int>(m));
    for (int t = 0; t < m; ++t)
        for (int c = 0; c < m; ++c) shift_src[t][c] = G.compose(G.inverse(t), c);

    PackedField P(L);
    std::vector<detail::CompiledPoly> compiled;
    compiled.reserve(gens.size());
    for (auto& g : gens) compiled.push_back(detail::compile_poly(g));
    const int64_t zero_code = L.code(L.zero());

    for (int64_t count = 0; count < total; ++count) {
        bool zero = true;
        for (auto& cp : compiled) {
            for (int c = 0; c < m && zero; ++c) {
                int64_t acc = zero_code;
                for (auto& t : cp.terms) {
                    int64_t v = t.coeff[c];
                    if (v == zero_code) continue;
                    for (auto& f : t.factors) {
                        int64_t base = digits[f.var * m + shift_src[f.shift][c]];
                        for (int e = 0; e < f.exp && v != zero_code; ++e)
                            v = P.mul(v, base);
                        if (v == zero_code) break;
                    }
                    acc = P.add(acc, v);
                }
                if (acc != zero_code) zero = false;
            }
            if (!zero) break;
        }
        if (zero) {
            std::vector<PseudofieldElem> pt(n);
            for (int i = 0; i < n; ++i) {
                std::vector<FieldElem> coords(m);
                for (int c = 0; c < m; ++c) coords[c] = L.from_code(digits[i * m + c]);
                pt[i] = A.from_coords(std::move(coords));
            }
            out.points.push_back(std::move(pt));
        }
        // odometer, least-significant digit first
        int k = 0;
        while (k < n * m && ++digits[k] == q) digits[k++] = 0;
    }

    std::sort(out.points.begin(), out.points.end(),
              [&](const auto& x, const auto& y) {
                  for (int i = 0; i < n; ++i)
                      for (int c = 0; c < m; ++c) {
                          int64_t cx = L.code(x[i].coords[c]);
                          int64_t cy = L.code(y[i].coords[c]);
                          if (cx != cy) return cx < cy;
                      }
                  return false;
              });
    return out;
}

/// I(X) for a finite point set: the difference ideal whose adjoint is the
/// vanishing ideal of the transferred points.
inline DiffIdeal ideal_of_points(const PointSet& X) {
    const DiffRing& R = X.ring;
    require_fun_base(R);
    Ring adj = adjoint_ring(R);
    std::vector<std::vector<FieldElem>> pts;
    pts.reserve(X.points.size());
    for (auto& p : X.points) pts.push_back(transfer_point(R, p).coords);
    Ideal J(adj, vanishing_ideal(adj, pts));
    return from_adjoint(R, J);
}

/// Three-valued Nullstellensatz check: compare {a} against I(V(a)) over
/// GF(q^d). When some closure point is not rational over the extension the
/// status is `inconclusive` rather than a false negative.
struct NssReport {
    enum class Status { holds, fails, inconclusive };
    Status status = Status::inconclusive;
    std::vector<std::string> lhs; // reduced basis of {a}, over K
    std::vector<std::string> rhs; // reduced basis of I(V(a)), over GF(q^d)
    int64_t closure_degree = 0;   // dim_K of the radical quotient
    int64_t points_found = 0;
    std::string detail;
};

inline NssReport nullstellensatz_check(const DiffIdeal& a, int ext_degree = 1) {
    const DiffRing& R = a.ring();
    require_fun_base(R);
    const Ideal& J = to_adjoint(a);
    if (!is_zero_dimensional(J))
        throw error("nullstellensatz check needs a zero-dimensional system");

    NssReport rep;
    Ideal rad = zero_dim_radical(J);
    auto rad_gb = groebner_basis(rad);
    for (auto& p : rad_gb) rep.lhs.push_back(rad.ring().to_string(p));
    rep.closure_degree = is_unit_ideal(rad) ? 0
                                            : static_cast<int64_t>(staircase(rad).size());

    PointSet V = solve_points(a, ext_degree);
    rep.points_found = static_cast<int64_t>(V.points.size());

    // I(V) over the extension
    Ring adjL = adjoint_ring(V.ring);
    std::vector<std::vector<FieldElem>> pts;
    for (auto& p : V.points) pts.push_back(transfer_point(V.ring, p).coords);
    auto rhs_gb = vanishing_ideal(adjL, pts);
    for (auto& p : rhs_gb) rep.rhs.push_back(adjL.to_string(p));

    if (rep.points_found < rep.closure_degree) {
        rep.status = NssReport::Status::inconclusive;
        rep.detail = "only " + std::to_string(rep.points_found) + " of " +
                     std::to_string(rep.closure_degree) +
                     " closure points are rational over the extension; "
                     "increase --ext";
        return rep;
    }

    // compare the radical extended to L against I(V)
    const Field& K = R.coeffs().base();
    FieldHom hom = K.embed_into(adjL.field());
    std::vector<Poly> lhs_ext;
    for (auto& p : rad_gb) {
        Poly q;
        for (auto& t : p.terms) q = adjL.add(q, adjL.monomial(t.e, hom.map(t.c)));
        lhs_ext.push_back(std::move(q));
    }
    bool equal = lhs_ext.size() == rhs_gb.size();
    for (size_t i = 0; equal && i < lhs_ext.size(); ++i)
        equal = adjL.eq(lhs_ext[i], rhs_gb[i]);
    rep.status = equal ? NssReport::Status::holds : NssReport::Status::fails;
    if (!equal) rep.detail = "radical and vanishing ideal differ";
    return rep;
}

/// A patch h/g of a regular function; g must be sigma-constant.
struct RegularPatch {
    DiffPoly g;
    DiffPoly h;
};

/// Glue patches of a regular function on V(X) into one polynomial d with
/// d*g_i = h_i mod X for every patch. The cofactors come from the unit
/// certificate of (g_1,...,g_m) + X and are lifted sigma-constantly.
inline DiffPoly glue_regular(const std::vector<RegularPatch>& patches,
                             const DiffIdeal& X) {
    if (patches.empty()) throw error("no patches to glue");
    const DiffRing& R = X.ring();
    for (size_t i = 0; i < patches.size(); ++i)
        if (!is_sigma_constant(patches[i].g))
            throw error("patch " + std::to_string(i + 1) +
                        " has a non-sigma-constant denominator");
    for (size_t i = 0; i < patches.size(); ++i)
        for (size_t j = i + 1; j < patches.size(); ++j) {
            DiffPoly cross = dp_sub(dp_mul(patches[i].h, patches[j].g),
                                    dp_mul(patches[j].h, patches[i].g));
            if (!diff_ideal_contains(X, cross))
                throw error("incompatible patches " + std::to_string(i + 1) +
                            " and " + std::to_string(j + 1));
        }

    const Ideal& J = to_adjoint(X);
    const Ring& adj = J.ring();
    std::vector<Poly> gens;
    for (auto& p : patches) gens.push_back(component_e(adj, p.g));
    size_t npatches = gens.size();
    for (auto& f : J.gens()) gens.push_back(f);
    auto cert = certificate_of_one(adj, gens);
    if (!cert) throw error("patches do not cover X");

    DiffPoly d = dp_zero(R);
    for (size_t i = 0; i < npatches; ++i) {
        if ((*cert)[i].is_zero()) continue;
        d = dp_add(d, dp_mul(constant_lift(R, (*cert)[i]), patches[i].h));
    }
    for (size_t i = 0; i < npatches; ++i) {
        DiffPoly check = dp_sub(dp_mul(d, patches[i].g), patches[i].h);
        if (!diff_ideal_contains(X, check))
            throw error("glued section fails patch " + std::to_string(i + 1) +
                        " (internal)");
    }
    return d;
}

/// Result of normalizing a pseudoregular fraction h * g^* at a point.
struct RegularizedFraction {
    DiffPoly h0;
    DiffPoly g0; // sigma-constant
    PseudofieldElem e; // idempotent of g at the base point
};

/// Thm-style normalization: e = idempotent of g(x), g' = (1-e) + e*g,
/// h0 = e*h*prod_{s != id} s(g'), g0 = prod_s s(g'). On every point y of
/// X_{g0}, h0(y)*g0(y)^{-1} = e*h(y)*g(y)^*.
inline RegularizedFraction pseudoregular_to_regular(
    const DiffPoly& h, const DiffPoly& g, const std::vector<PseudofieldElem>& x) {
    const DiffRing& R = h.ring;
    if (!R.same(g.ring)) throw error("h and g from different rings");
    const Pseudofield& A = R.coeffs();
    PseudofieldElem gx = eval_poly(g, x);
    if (A.is_zero(gx)) throw error("g vanishes at the base point");
    PseudofieldElem e = A.pseudo_inverse(gx).e;
    DiffPoly gprime = dp_add(dp_constant(R, A.sub(A.one(), e)), dp_mul_scalar(g, e));
    DiffPoly g0 = dp_one(R);
    DiffPoly tail = dp_one(R);
    for (int s = 0; s < R.grp().order(); ++s) {
        DiffPoly sg = act_poly(s, gprime);
        g0 = dp_mul(g0, sg);
        if (s != 0) tail = dp_mul(tail, sg);
    }
    DiffPoly h0 = dp_mul(dp_mul_scalar(h, e), tail);
    return {std::move(h0), std::move(g0), std::move(e)};
}

} // namespace dak
