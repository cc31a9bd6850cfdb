#pragma once

/// Pseudofields as finite products K^m with a transitive action of a finite
/// group. The action data is explicit: for each group element a permutation
/// of the factor indices plus a Frobenius exponent per destination factor,
///
///     (sigma . a)_i = frob(a[perm(sigma)^-1(i)], autos(sigma)[i]).
///
/// Fun(K) is the special case m = |Sigma| with perm = left translation and
/// trivial twists, acting by (sigma . a)(tau) = a(sigma^-1 tau).

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dakernel/coeff.hpp"
#include "dakernel/common.hpp"
#include "dakernel/group.hpp"

namespace dak {

struct PseudofieldElem {
    const void* owner = nullptr;
    std::vector<FieldElem> coords;

    bool operator==(const PseudofieldElem& o) const {
        return owner == o.owner && coords == o.coords;
    }
    bool operator!=(const PseudofieldElem& o) const { return !(*this == o); }
};

/// Idempotent support e and pseudo-inverse a* of an element, satisfying
/// a = e*a, a* = e*a*, e = a*a* exactly.
struct PseudoInversePair {
    PseudofieldElem e;
    PseudofieldElem astar;
};

/// Result of Taylor normalization: for each group element tau, which factor
/// index and Frobenius exponent realizes Phi(a)(tau). `isomorphism` is true
/// exactly when the map is onto Fun(K) (trivial stabilizer, m = |Sigma|).
struct TaylorTable {
    Group grp;
    std::vector<std::pair<int, int>> entry; // tau -> (factor, frobenius exp)
    bool isomorphism = false;
};

class Pseudofield {
public:
    Pseudofield() = default;

    /// Fun(K): functions Sigma -> K with the translation action.
    static Pseudofield fun_of(const Field& K, const Group& S) {
        int m = S.order();
        std::vector<std::vector<int>> perm(m, std::vector<int>(m));
        for (int g = 0; g < m; ++g)
            for (int j = 0; j < m; ++j) perm[g][j] = S.compose(g, j);
        std::vector<std::vector<int>> autos(m, std::vector<int>(m, 0));
        return Pseudofield(K, S, m, std::move(perm), std::move(autos), true);
    }

    /// General product pseudofield from action data for every group element.
    /// perm[g] is the image permutation of factor indices, autos[g][i] the
    /// Frobenius exponent applied at destination factor i.
    static Pseudofield product(const Field& K, const Group& S, int m,
                               std::vector<std::vector<int>> perm,
                               std::vector<std::vector<int>> autos) {
        return Pseudofield(K, S, m, std::move(perm), std::move(autos), false);
    }

    /// Product pseudofield with data given only on a generating set; the
    /// rest is derived by composing along the group multiplication.
    static Pseudofield product_from_generators(
        const Field& K, const Group& S, int m,
        const std::map<int, std::vector<int>>& gen_perm,
        const std::map<int, std::vector<int>>& gen_autos) {
        int n = S.order();
        std::vector<std::vector<int>> perm(n), autos(n);
        std::vector<bool> known(n, false);
        perm[0].resize(m);
        for (int j = 0; j < m; ++j) perm[0][j] = j;
        autos[0].assign(m, 0);
        known[0] = true;
        for (auto& [g, pm] : gen_perm) {
            if (g < 0 || g >= n) throw error("pseudofield action on unknown group element");
            perm[g] = pm;
            auto it = gen_autos.find(g);
            autos[g] = it == gen_autos.end() ? std::vector<int>(m, 0) : it->second;
            if ((int)perm[g].size() != m || (int)autos[g].size() != m)
                throw error("pseudofield action data has wrong arity");
            known[g] = true;
        }
        // close under composition: data(g.h) from data(g), data(h)
        bool progress = true;
        while (progress) {
            progress = false;
            for (int g = 0; g < n; ++g)
                for (int h = 0; h < n; ++h) {
                    if (!known[g] || !known[h]) continue;
                    int gh = S.compose(g, h);
                    if (known[gh]) continue;
                    perm[gh].resize(m);
                    autos[gh].resize(m);
                    for (int j = 0; j < m; ++j) perm[gh][j] = perm[g][perm[h][j]];
                    std::vector<int> perm_g_inv(m);
                    for (int j = 0; j < m; ++j) perm_g_inv[perm[g][j]] = j;
                    for (int i = 0; i < m; ++i)
                        autos[gh][i] = autos[g][i] + autos[h][perm_g_inv[i]];
                    known[gh] = true;
                    progress = true;
                }
        }
        for (int g = 0; g < n; ++g)
            if (!known[g])
                throw error("pseudofield action underdetermined: no data for " +
                            S.name(g));
        return product(K, S, m, std::move(perm), std::move(autos));
    }

    bool valid() const { return d_ != nullptr; }
    const Field& base() const { return d_->base; }
    const Group& grp() const { return d_->grp; }
    int factors() const { return d_->m; }
    bool is_fun() const { return d_->fun; }
    bool same(const Pseudofield& o) const { return d_ == o.d_; }
    const void* tag() const { return d_.get(); }

    PseudofieldElem zero() const { return constant(d_->base.zero()); }
    PseudofieldElem one() const { return constant(d_->base.one()); }

    /// The constant tuple (c, c, ..., c); the embedding of K-invariants.
    PseudofieldElem constant(const FieldElem& c) const {
        PseudofieldElem e;
        e.owner = d_.get();
        e.coords.assign(d_->m, c);
        return e;
    }

    PseudofieldElem from_coords(std::vector<FieldElem> coords) const {
        if ((int)coords.size() != d_->m)
            throw error("pseudofield element needs exactly " +
                        std::to_string(d_->m) + " coordinates");
        PseudofieldElem e;
        e.owner = d_.get();
        e.coords = std::move(coords);
        return e;
    }

    /// Indicator of factor i (1 in coordinate i, 0 elsewhere).
    PseudofieldElem indicator(int i) const {
        auto e = zero();
        e.coords.at(i) = d_->base.one();
        return e;
    }

    /// Indicator of the identity factor of a Fun(K) pseudofield.
    PseudofieldElem identity_indicator() const {
        require_fun();
        return indicator(0);
    }

    bool is_zero(const PseudofieldElem& a) const {
        check(a);
        for (auto& c : a.coords)
            if (!d_->base.is_zero(c)) return false;
        return true;
    }

    PseudofieldElem add(const PseudofieldElem& a, const PseudofieldElem& b) const {
        return zip(a, b, [&](const FieldElem& x, const FieldElem& y) {
            return d_->base.add(x, y);
        });
    }
    PseudofieldElem sub(const PseudofieldElem& a, const PseudofieldElem& b) const {
        return zip(a, b, [&](const FieldElem& x, const FieldElem& y) {
            return d_->base.sub(x, y);
        });
    }
    PseudofieldElem mul(const PseudofieldElem& a, const PseudofieldElem& b) const {
        return zip(a, b, [&](const FieldElem& x, const FieldElem& y) {
            return d_->base.mul(x, y);
        });
    }
    PseudofieldElem neg(const PseudofieldElem& a) const { return sub(zero(), a); }

    PseudofieldElem pow(const PseudofieldElem& a, int e) const {
        check(a);
        auto r = one();
        for (int i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }

    /// The group action.
    PseudofieldElem sigma_act(int sigma, const PseudofieldElem& a) const {
        check(a);
        const auto& pm = d_->perm[sigma];
        const auto& tw = d_->autos[sigma];
        std::vector<int> pm_inv(d_->m);
        for (int j = 0; j < d_->m; ++j) pm_inv[pm[j]] = j;
        PseudofieldElem r;
        r.owner = d_.get();
        r.coords.resize(d_->m);
        for (int i = 0; i < d_->m; ++i)
            r.coords[i] = d_->base.frobenius(a.coords[pm_inv[i]], tw[i]);
        return r;
    }

    PseudofieldElem sigma_act(const GroupElem& s, const PseudofieldElem& a) const {
        if (!s.grp.same(d_->grp)) throw error("group element from another group");
        return sigma_act(s.index, a);
    }

    /// Evaluation a(sigma) of a function in Fun(K).
    FieldElem gamma_eval(int sigma, const PseudofieldElem& a) const {
        check(a);
        if (!d_->fun)
            throw error("gamma_eval is defined on Fun(K) only; "
                        "use taylor_normalize to pass to Fun coordinates");
        return a.coords.at(sigma);
    }

    /// Support idempotent and pseudo-inverse, coordinatewise.
    PseudoInversePair pseudo_inverse(const PseudofieldElem& a) const {
        check(a);
        PseudoInversePair r;
        r.e.owner = d_.get();
        r.astar.owner = d_.get();
        for (auto& c : a.coords) {
            if (d_->base.is_zero(c)) {
                r.e.coords.push_back(d_->base.zero());
                r.astar.coords.push_back(d_->base.zero());
            } else {
                r.e.coords.push_back(d_->base.one());
                r.astar.coords.push_back(d_->base.inv(c));
            }
        }
        return r;
    }

    /// The normalizing Taylor map into Fun(K) through the projection onto
    /// factor i: Phi(a)(tau) = proj_i(tau^-1 . a).
    TaylorTable taylor_normalize(int i = 0) const {
        if (i < 0 || i >= d_->m) throw error("factor index out of range");
        return taylor_table(i, 0, 0);
    }

    /// Taylor homomorphism Phi_sigma: A -> Fun(K) over the ring map
    /// phi = frob^phi_exp . proj_{phi_factor}, given by
    /// Phi_sigma(a)(tau) = phi(sigma tau^-1 . a).
    TaylorTable taylor_table(int phi_factor, int phi_exp, int sigma) const {
        TaylorTable t;
        t.grp = d_->grp;
        int n = d_->grp.order();
        t.entry.resize(n);
        for (int tau = 0; tau < n; ++tau) {
            int g = d_->grp.compose(sigma, d_->grp.inverse(tau));
            // (g . a)_i = frob(a[perm(g)^-1(i)], autos(g)[i])
            const auto& pm = d_->perm[g];
            std::vector<int> pm_inv(d_->m);
            for (int j = 0; j < d_->m; ++j) pm_inv[pm[j]] = j;
            int factor = pm_inv[phi_factor];
            int exp = d_->autos[g][phi_factor] + phi_exp;
            if (d_->base.is_finite()) exp %= d_->base.k();
            t.entry[tau] = {factor, exp};
        }
        t.isomorphism = (d_->m == n);
        return t;
    }

    /// Apply a Taylor table to an element; lands in Fun(K) coordinates.
    std::vector<FieldElem> taylor_apply(const TaylorTable& t,
                                        const PseudofieldElem& a) const {
        check(a);
        std::vector<FieldElem> out;
        out.reserve(t.entry.size());
        for (auto& [factor, exp] : t.entry)
            out.push_back(d_->base.frobenius(a.coords[factor], exp));
        return out;
    }

    /// Total number of elements (finite base fields only).
    int64_t elem_count() const {
        int64_t q = d_->base.size();
        if (q == 0) throw error("pseudofield over the rationals is infinite");
        int64_t r = 1;
        for (int i = 0; i < d_->m; ++i) r *= q;
        return r;
    }

    PseudofieldElem elem_from_code(int64_t c) const {
        int64_t q = d_->base.size();
        PseudofieldElem e;
        e.owner = d_.get();
        e.coords.resize(d_->m);
        for (int i = 0; i < d_->m; ++i) {
            e.coords[i] = d_->base.from_code(c % q);
            c /= q;
        }
        return e;
    }

    std::string to_string(const PseudofieldElem& a) const {
        check(a);
        std::string s = "(";
        for (int i = 0; i < d_->m; ++i) {
            if (i) s += ",";
            s += d_->base.to_string(a.coords[i]);
        }
        return s + ")";
    }

    /// True when every coordinate equals the first (a constant function).
    bool is_constant(const PseudofieldElem& a) const {
        check(a);
        for (int i = 1; i < d_->m; ++i)
            if (a.coords[i] != a.coords[0]) return false;
        return true;
    }

private:
    struct Data {
        Field base;
        Group grp;
        int m = 0;
        std::vector<std::vector<int>> perm;
        std::vector<std::vector<int>> autos;
        bool fun = false;
    };

    Pseudofield(const Field& K, const Group& S, int m,
                std::vector<std::vector<int>> perm,
                std::vector<std::vector<int>> autos, bool fun) {
        auto d = std::make_shared<Data>();
        d->base = K;
        d->grp = S;
        d->m = m;
        d->perm = std::move(perm);
        d->autos = std::move(autos);
        d->fun = fun;
        validate(*d);
        d_ = std::move(d);
    }

    static void validate(const Data& d) {
        int n = d.grp.order(), m = d.m;
        if (m < 1) throw error("pseudofield needs at least one factor");
        if ((int)d.perm.size() != n || (int)d.autos.size() != n)
            throw error("action data must cover every group element");
        if (d.base.is_rationals()) {
            for (auto& tw : d.autos)
                for (int e : tw)
                    if (e != 0)
                        throw error("nontrivial factor automorphisms require a finite field");
        }
        for (int g = 0; g < n; ++g) {
            if ((int)d.perm[g].size() != m || (int)d.autos[g].size() != m)
                throw error("action data has wrong arity for " + d.grp.name(g));
            std::vector<bool> seen(m, false);
            for (int j = 0; j < m; ++j) {
                int v = d.perm[g][j];
                if (v < 0 || v >= m || seen[v])
                    throw error("perm for " + d.grp.name(g) + " is not a permutation");
                seen[v] = true;
            }
        }
        for (int j = 0; j < m; ++j)
            if (d.perm[0][j] != j || d.autos[0][j] != 0)
                throw error("identity must act trivially");
        // perm is a homomorphism and the twists satisfy the cocycle rule
        // autos(gh)[i] = autos(g)[i] + autos(h)[perm(g)^-1(i)]  (mod k).
        int k = d.base.is_finite() ? d.base.k() : 1;
        for (int g = 0; g < n; ++g) {
            std::vector<int> g_inv(m);
            for (int j = 0; j < m; ++j) g_inv[d.perm[g][j]] = j;
            for (int h = 0; h < n; ++h) {
                int gh = d.grp.compose(g, h);
                for (int j = 0; j < m; ++j)
                    if (d.perm[gh][j] != d.perm[g][d.perm[h][j]])
                        throw error("perm is not a homomorphism on (" +
                                    d.grp.name(g) + "," + d.grp.name(h) + ")");
                for (int i = 0; i < m; ++i) {
                    int lhs = d.autos[gh][i] % k;
                    int rhs = (d.autos[g][i] + d.autos[h][g_inv[i]]) % k;
                    if (lhs != rhs)
                        throw error("automorphism cocycle fails on (" +
                                    d.grp.name(g) + "," + d.grp.name(h) + ")");
                }
            }
        }
        // transitivity on factor indices makes the ring simple
        if (static_cast<int>(permutation_orbit(d.perm, 0).size()) != m)
            throw error("action is intransitive: not a simple difference ring");
    }

    template <typename F>
    PseudofieldElem zip(const PseudofieldElem& a, const PseudofieldElem& b, F f) const {
        check(a);
        check(b);
        PseudofieldElem r;
        r.owner = d_.get();
        r.coords.reserve(d_->m);
        for (int i = 0; i < d_->m; ++i) r.coords.push_back(f(a.coords[i], b.coords[i]));
        return r;
    }

    void check(const PseudofieldElem& a) const {
        if (a.owner != d_.get())
            throw error("element belongs to another pseudofield");
    }

    void require_fun() const {
        if (!d_->fun) throw error("operation requires a Fun(K) pseudofield");
    }

    std::shared_ptr<const Data> d_;
};

inline PseudofieldElem sigma_act(const Pseudofield& A, const GroupElem& s,
                                 const PseudofieldElem& a) {
    return A.sigma_act(s, a);
}

inline PseudoInversePair pseudo_inverse(const Pseudofield& A,
                                        const PseudofieldElem& a) {
    return A.pseudo_inverse(a);
}

} // namespace dak
