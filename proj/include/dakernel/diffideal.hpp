#pragma once

/// Difference ideals over Fun(K){y}: sigma-closure, the component-tuple view
/// of ordinary ideals of A{y}, a_Sigma, the radical difference ideal, and
/// pseudoprime / pseudomaximal tests through the adjoint equivalence.
///
/// A ComponentIdeal stores, for each tau, the slot ideal in identity-local
/// coordinates (the tau-component transported back along tau). Under that
/// convention a difference ideal has all slots equal and sigma-images are
/// pure slot translations.

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "dakernel/adjoint.hpp"
#include "dakernel/common.hpp"
#include "dakernel/diffpoly.hpp"
#include "dakernel/groebner.hpp"

namespace dak {

/// The difference ideal [gens]; canonically represented by its adjoint,
/// which is computed once and cached.
class DiffIdeal {
public:
    DiffIdeal() = default;
    DiffIdeal(DiffRing ring, std::vector<DiffPoly> gens)
        : ring_(std::move(ring)), gens_(std::move(gens)),
          cache_(std::make_shared<Cache>()) {}

    /// Wrap a difference ideal whose adjoint is already known.
    DiffIdeal(DiffRing ring, std::vector<DiffPoly> gens, Ideal adjoint)
        : DiffIdeal(std::move(ring), std::move(gens)) {
        cache_->adj = std::make_shared<Ideal>(std::move(adjoint));
    }

    const DiffRing& ring() const { return ring_; }
    const std::vector<DiffPoly>& gens() const { return gens_; }

    const Ideal& adjoint() const {
        {
            std::lock_guard<std::mutex> lock(cache_->m);
            if (cache_->adj) return *cache_->adj;
        }
        Ring adj = adjoint_ring(ring_);
        auto I = std::make_shared<Ideal>(adj, adjoint_generators(adj, ring_, gens_));
        std::lock_guard<std::mutex> lock(cache_->m);
        if (!cache_->adj) cache_->adj = std::move(I);
        return *cache_->adj;
    }

private:
    struct Cache {
        std::mutex m;
        std::shared_ptr<Ideal> adj;
    };
    DiffRing ring_;
    std::vector<DiffPoly> gens_;
    std::shared_ptr<Cache> cache_;
};

inline DiffIdeal make_diff_ideal(const DiffRing& R, std::vector<DiffPoly> gens) {
    for (auto& g : gens)
        if (!g.ring.same(R)) throw error("generator from another ring");
    return DiffIdeal(R, std::move(gens));
}

/// The sigma-orbit of the generators with duplicates removed; generates [E]
/// as an ordinary ideal.
inline std::vector<DiffPoly> closure_gens(const std::vector<DiffPoly>& E) {
    std::vector<DiffPoly> out;
    for (auto& f : E) {
        if (f.is_zero()) continue;
        for (int s = 0; s < f.ring.grp().order(); ++s) {
            DiffPoly g = act_poly(s, f);
            bool dup = false;
            for (auto& h : out)
                if (dp_eq(g, h)) { dup = true; break; }
            if (!dup) out.push_back(std::move(g));
        }
    }
    return out;
}

/// e.(-): the adjoint ideal of a difference ideal.
inline const Ideal& to_adjoint(const DiffIdeal& a) { return a.adjoint(); }

/// Fun direction: the difference ideal generated by e_id * subst(g).
/// to_adjoint(from_adjoint(J)) = J holds exactly.
inline DiffIdeal from_adjoint(const DiffRing& R, const Ideal& J) {
    std::vector<DiffPoly> gens;
    for (auto& g : J.gens())
        if (!g.is_zero()) gens.push_back(from_adjoint_generator(R, g));
    return DiffIdeal(R, std::move(gens), J);
}

/// Membership in the difference ideal: every shift's identity component
/// reduces to zero against the adjoint.
inline bool diff_ideal_contains(const DiffIdeal& a, const DiffPoly& f) {
    const Ideal& J = to_adjoint(a);
    for (int s = 0; s < a.ring().grp().order(); ++s)
        if (!normal_form(component_e(J.ring(), act_poly(s, f)), J).is_zero())
            return false;
    return true;
}

/// Difference-ideal equality is adjoint equality (reduced bases).
inline bool diff_ideal_eq(const DiffIdeal& a, const DiffIdeal& b) {
    return ideal_eq(to_adjoint(a), to_adjoint(b));
}

/// Ordinary (not necessarily difference) ideals of Fun(K){y} as slot
/// tuples; slot tau is kept in identity-local coordinates.
struct ComponentIdeal {
    DiffRing ring;
    std::vector<Ideal> slots;
};

/// Component view of the ordinary ideal generated by the given polynomials:
/// slot tau is generated by component_e(tau^-1 . f).
inline ComponentIdeal component_ideal(const DiffRing& R,
                                      const std::vector<DiffPoly>& gens) {
    Ring adj = adjoint_ring(R);
    const Group& G = R.grp();
    ComponentIdeal out{R, {}};
    for (int t = 0; t < G.order(); ++t) {
        std::vector<Poly> slot;
        for (auto& f : gens) {
            Poly p = component_e(adj, act_poly(G.inverse(t), f));
            if (!p.is_zero()) slot.push_back(std::move(p));
        }
        out.slots.emplace_back(adj, std::move(slot));
    }
    return out;
}

/// Component view with explicit slot generators (identity-local).
inline ComponentIdeal component_ideal_from_slots(const DiffRing& R,
                                                 std::vector<Ideal> slots) {
    if (static_cast<int>(slots.size()) != R.grp().order())
        throw error("one slot per group element required");
    return {R, std::move(slots)};
}

/// The image a^sigma: slot tau comes from slot sigma^-1 tau.
inline ComponentIdeal sigma_image_ideal(const ComponentIdeal& a, int sigma) {
    const Group& G = a.ring.grp();
    ComponentIdeal out{a.ring, {}};
    out.slots.reserve(a.slots.size());
    for (int t = 0; t < G.order(); ++t)
        out.slots.push_back(a.slots[G.compose(G.inverse(sigma), t)]);
    return out;
}

inline bool component_ideal_eq(const ComponentIdeal& a, const ComponentIdeal& b) {
    for (size_t t = 0; t < a.slots.size(); ++t)
        if (!ideal_eq(a.slots[t], b.slots[t])) return false;
    return true;
}

/// True when the tuple is the component view of a difference ideal.
inline bool is_difference_componentwise(const ComponentIdeal& a) {
    for (size_t t = 1; t < a.slots.size(); ++t)
        if (!ideal_eq(a.slots[0], a.slots[t])) return false;
    return true;
}

/// a_Sigma: the largest difference ideal inside a, as the intersection of
/// all slot translations.
inline DiffIdeal underscore_sigma(const ComponentIdeal& a) {
    Ideal meet = a.slots.at(0);
    for (size_t t = 1; t < a.slots.size(); ++t)
        meet = intersect_ideals(meet, a.slots[t]);
    meet = Ideal(meet.ring(), groebner_basis(meet));
    return from_adjoint(a.ring, meet);
}

/// Slotwise intersection of ordinary ideals.
inline ComponentIdeal intersect_components(const ComponentIdeal& a,
                                           const ComponentIdeal& b) {
    ComponentIdeal out{a.ring, {}};
    for (size_t t = 0; t < a.slots.size(); ++t)
        out.slots.push_back(intersect_ideals(a.slots[t], b.slots[t]));
    return out;
}

/// {E} = r([E]), through the adjoint Seidenberg radical. Requires the
/// adjoint to be zero-dimensional.
inline DiffIdeal diff_radical(const DiffRing& R, const std::vector<DiffPoly>& E) {
    DiffIdeal a(R, E);
    const Ideal& J = to_adjoint(a);
    if (!is_zero_dimensional(J))
        throw error("difference radical needs a zero-dimensional adjoint; "
                    "use radical_membership for single elements");
    Ideal rad = zero_dim_radical(J);
    rad = Ideal(rad.ring(), groebner_basis(rad));
    return from_adjoint(R, rad);
}

inline DiffIdeal diff_radical(const DiffIdeal& a) {
    return diff_radical(a.ring(), a.gens());
}

namespace detail {

// Zero-dimensional field test for R/J. Dimension-1 quotients are K itself;
// quotients with nilpotents are never fields; the rest is decided by
// enumeration over finite base fields (capped at 4096 elements).
inline bool quotient_is_field(const Ideal& J) {
    QuotientRing Q(J);
    const Field& K = J.ring().field();
    if (Q.dim() == 1) return true;
    if (!ideal_eq(zero_dim_radical(J), J)) return false;
    if (!K.is_finite())
        throw error("field test over the rationals is supported only for "
                    "linear or non-reduced quotients at desk scale");
    int64_t count = Q.count();
    if (count > 4096)
        throw error("quotient with " + std::to_string(count) +
                    " elements exceeds the enumeration cap 4096");
    for (int64_t c = 1; c < count; ++c)
        if (!Q.invertible(Q.element(c))) return false;
    return true;
}

} // namespace detail

/// Pseudoprimality through the adjoint: the adjoint ideal is prime. Only
/// zero-dimensional adjoints (or the zero ideal) are decidable here.
inline bool is_pseudoprime(const DiffIdeal& q) {
    const Ideal& J = to_adjoint(q);
    if (is_unit_ideal(J)) return false; // not proper
    if (is_zero_ideal(J)) return true;  // polynomial ring is a domain
    if (!is_zero_dimensional(J))
        throw error("pseudoprime test needs a zero-dimensional adjoint "
                    "(no minimal-prime decomposition at desk scale)");
    // prime = radical + no zero divisors in the finite quotient
    Ideal rad = zero_dim_radical(J);
    if (!ideal_eq(rad, J)) return false;
    return detail::quotient_is_field(J);
}

/// Pseudoprimality with a caller-supplied minimal-prime decomposition of
/// the adjoint (each entry trusted prime, their intersection the radical):
/// the adjoint is prime exactly when the decomposition is a single ideal
/// equal to it.
inline bool is_pseudoprime(const DiffIdeal& q, const std::vector<Ideal>& minimal_primes) {
    const Ideal& J = to_adjoint(q);
    if (is_unit_ideal(J)) return false;
    if (minimal_primes.empty()) throw error("empty minimal-prime decomposition");
    for (auto& p : minimal_primes)
        for (auto& g : J.gens())
            if (!ideal_contains(p, g))
                throw error("supplied ideal does not contain the adjoint");
    Ideal meet = minimal_primes[0];
    for (size_t i = 1; i < minimal_primes.size(); ++i)
        meet = intersect_ideals(meet, minimal_primes[i]);
    if (!ideal_eq(meet, J))
        throw error("supplied decomposition does not intersect to the adjoint "
                    "(the ideal must be radical)");
    return minimal_primes.size() == 1;
}

/// Pseudomaximality: the adjoint quotient is a field.
inline bool is_pseudomaximal(const DiffIdeal& m) {
    const Ideal& J = to_adjoint(m);
    if (is_unit_ideal(J)) return false;
    if (!is_zero_dimensional(J)) return false; // positive dimension
    return detail::quotient_is_field(J);
}

/// The basic-open intersection X_s cap X_t as the union over the products
/// sigma(s)tau(t), deduplicated.
inline std::vector<DiffPoly> open_basis_intersection(const DiffPoly& s,
                                                     const DiffPoly& t) {
    if (!s.ring.same(t.ring)) throw error("polynomials from different rings");
    int n = s.ring.grp().order();
    std::vector<DiffPoly> out;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            DiffPoly p = dp_mul(act_poly(a, s), act_poly(b, t));
            bool dup = false;
            for (auto& h : out)
                if (dp_eq(p, h)) { dup = true; break; }
            if (!dup) out.push_back(std::move(p));
        }
    return out;
}

} // namespace dak
