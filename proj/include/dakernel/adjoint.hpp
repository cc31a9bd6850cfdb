#pragma once

/// The bridge between difference ideals over Fun(K){y_1..y_n} and ordinary
/// ideals in K[Sigma Y]: the idempotent cut e.(-) realized as the identity
/// component of sigma-shifted polynomials, its inverse substitution, the
/// point transfer with the tau^-1 convention, and Taylor homomorphisms.

#include <string>
#include <vector>

#include "dakernel/common.hpp"
#include "dakernel/diffpoly.hpp"
#include "dakernel/groebner.hpp"

namespace dak {

/// Adjoint coordinates: a vector in K^(n*m) indexed by (i, tau) at i*m + tau.
/// Entry (i, tau) of the transfer of a point a is a_i(tau^-1); this inverse
/// is fixed by the commuting square of the equivalence and is the
/// classic off-by-inverse trap, so both directions live here.
struct AdjPoint {
    std::vector<FieldElem> coords;
};

inline void require_fun_base(const DiffRing& R) {
    if (!R.coeffs().is_fun())
        throw error("adjoint operations need a Fun(K) coefficient pseudofield; "
                    "apply taylor_normalize first");
}

/// The ordinary polynomial ring K[y_i@tau].
inline Ring adjoint_ring(const DiffRing& R) {
    require_fun_base(R);
    const Group& G = R.grp();
    std::vector<std::string> names;
    for (int i = 0; i < R.nvars(); ++i)
        for (int t = 0; t < G.order(); ++t)
            names.push_back(R.var_name(i) + "@" + G.name(t));
    return Ring(R.coeffs().base(), names);
}

/// Same ring with coefficients extended into L via an embedding.
inline Ring adjoint_ring_over(const DiffRing& R, const Field& L) {
    require_fun_base(R);
    const Group& G = R.grp();
    std::vector<std::string> names;
    for (int i = 0; i < R.nvars(); ++i)
        for (int t = 0; t < G.order(); ++t)
            names.push_back(R.var_name(i) + "@" + G.name(t));
    return Ring(L, names);
}

inline int adjoint_var_index(const DiffRing& R, int var, int shift) {
    return var * R.grp().order() + shift;
}

/// gamma_e on coefficients, tau(y_i) -> y_i@tau on variables.
inline Poly component_e(const Ring& adj, const DiffPoly& f) {
    require_fun_base(f.ring);
    int m = f.ring.grp().order();
    Poly out;
    for (auto& [mono, c] : f.terms) {
        FieldElem ce = c.coords[0];
        if (adj.field().is_zero(ce)) continue;
        Expvec e(adj.nvars(), 0);
        for (auto& [dv, exp] : mono.factors) e[dv.var * m + dv.shift] += exp;
        out = adj.add(out, adj.monomial(std::move(e), ce));
    }
    return out;
}

/// component_e with coefficients pushed through a field embedding K -> L.
inline Poly component_e_over(const Ring& adjL, const DiffPoly& f,
                             const FieldHom& hom) {
    require_fun_base(f.ring);
    int m = f.ring.grp().order();
    Poly out;
    for (auto& [mono, c] : f.terms) {
        FieldElem ce = hom.map(c.coords[0]);
        if (adjL.field().is_zero(ce)) continue;
        Expvec e(adjL.nvars(), 0);
        for (auto& [dv, exp] : mono.factors) e[dv.var * m + dv.shift] += exp;
        out = adjL.add(out, adjL.monomial(std::move(e), ce));
    }
    return out;
}

/// Generators of the adjoint ideal e.[gens]: component_e of every shift.
inline std::vector<Poly> adjoint_generators(const Ring& adj, const DiffRing& R,
                                            const std::vector<DiffPoly>& gens) {
    std::vector<Poly> out;
    for (auto& f : gens)
        for (int s = 0; s < R.grp().order(); ++s) {
            Poly p = component_e(adj, act_poly(s, f));
            if (!p.is_zero()) out.push_back(std::move(p));
        }
    return out;
}

/// Plain substitution y_i@tau -> tau(y_i) with constant coefficients.
inline DiffPoly subst_lift(const DiffRing& R, const Poly& g) {
    require_fun_base(R);
    int m = R.grp().order();
    DiffPoly out = dp_zero(R);
    for (auto& t : g.terms) {
        DiffMono mono;
        for (int v = 0; v < static_cast<int>(t.e.size()); ++v)
            if (t.e[v] > 0) mono.factors.push_back({{v / m, v % m}, t.e[v]});
        dp_add_term(out, mono, R.coeffs().constant(t.c));
    }
    return out;
}

/// Generator of the difference ideal Fun(J): the identity indicator times
/// the substituted polynomial.
inline DiffPoly from_adjoint_generator(const DiffRing& R, const Poly& g) {
    return dp_mul_scalar(subst_lift(R, g), R.coeffs().identity_indicator());
}

/// The sigma-constant element of Fun(K){y} whose every adjoint slot equals
/// c: sum over tau of tau(e_id . subst(c)).
inline DiffPoly constant_lift(const DiffRing& R, const Poly& c) {
    DiffPoly base = from_adjoint_generator(R, c);
    DiffPoly out = dp_zero(R);
    for (int t = 0; t < R.grp().order(); ++t) out = dp_add(out, act_poly(t, base));
    return out;
}

inline AdjPoint transfer_point(const DiffRing& R,
                               const std::vector<PseudofieldElem>& a) {
    require_fun_base(R);
    const Group& G = R.grp();
    int m = G.order();
    if (static_cast<int>(a.size()) != R.nvars()) throw error("point dimension mismatch");
    AdjPoint p;
    p.coords.resize(R.nvars() * m);
    for (int i = 0; i < R.nvars(); ++i)
        for (int t = 0; t < m; ++t)
            p.coords[i * m + t] = a[i].coords[G.inverse(t)];
    return p;
}

inline std::vector<PseudofieldElem> transfer_point_back(const DiffRing& R,
                                                        const AdjPoint& p) {
    require_fun_base(R);
    const Group& G = R.grp();
    int m = G.order();
    std::vector<PseudofieldElem> a(R.nvars());
    for (int i = 0; i < R.nvars(); ++i) {
        std::vector<FieldElem> coords(m);
        for (int g = 0; g < m; ++g) coords[g] = p.coords[i * m + G.inverse(g)];
        a[i] = R.coeffs().from_coords(std::move(coords));
    }
    return a;
}

/// The Taylor homomorphism Phi_sigma: A -> Fun(K) over phi = frobenius^exp
/// after projection to a factor, with its target ring attached.
struct TaylorHom {
    Pseudofield src;
    Pseudofield fun; // Fun(K) over the same group
    TaylorTable table;
    int phi_factor = 0;
    int phi_exp = 0;
    int sigma = 0;

    PseudofieldElem apply(const PseudofieldElem& a) const {
        return fun.from_coords(src.taylor_apply(table, a));
    }

    FieldElem phi(const PseudofieldElem& a) const {
        return src.base().frobenius(a.coords.at(phi_factor), phi_exp);
    }
};

inline TaylorHom taylor_hom(const Pseudofield& A, int phi_factor, int phi_exp,
                            int sigma) {
    TaylorHom h;
    h.src = A;
    h.fun = A.is_fun() ? A : Pseudofield::fun_of(A.base(), A.grp());
    h.table = A.taylor_table(phi_factor, phi_exp, sigma);
    h.phi_factor = phi_factor;
    h.phi_exp = phi_exp;
    h.sigma = sigma;
    // post-construction check on a generating set: gamma_sigma . Phi = phi
    // and equivariance against every group element
    const Field& K = A.base();
    std::vector<PseudofieldElem> gens;
    for (int i = 0; i < A.factors(); ++i) {
        gens.push_back(A.indicator(i));
        if (K.is_finite() && K.k() > 1)
            gens.push_back(A.mul(A.indicator(i), A.constant(K.generator())));
    }
    for (auto& a : gens) {
        PseudofieldElem img = h.apply(a);
        if (h.fun.gamma_eval(sigma, img) != h.phi(a))
            throw error("taylor homomorphism fails gamma compatibility (internal)");
        for (int nu = 0; nu < A.grp().order(); ++nu) {
            PseudofieldElem lhs = h.apply(A.sigma_act(nu, a));
            PseudofieldElem rhs = h.fun.sigma_act(nu, img);
            if (lhs != rhs)
                throw error("taylor homomorphism fails equivariance (internal)");
        }
    }
    return h;
}

} // namespace dak
