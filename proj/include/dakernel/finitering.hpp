#pragma once

/// Brute-force laboratory: difference rings with at most 81 elements given
/// by explicit tables, exhaustive ideal enumeration, pseudospectra computed
/// from the definitions, and a property report that checks the pseudoprime
/// calculus directly.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dakernel/coeff.hpp"
#include "dakernel/common.hpp"
#include "dakernel/group.hpp"

namespace dak {

class FiniteDiffRing {
public:
    static constexpr int kMaxSize = 81;

    /// GF(q)^m with the factor permutation generated by `gen_perm`
    /// (image list); the group is cyclic of the permutation's order.
    static FiniteDiffRing product(const Field& K, int m, std::vector<int> gen_perm,
                                  std::string name = {}) {
        if (!K.is_finite()) throw error("finite ring needs a finite field");
        int64_t size = 1;
        for (int i = 0; i < m; ++i) {
            size *= K.size();
            if (size > kMaxSize) throw error("finite ring exceeds 81 elements");
        }
        if (static_cast<int>(gen_perm.size()) != m)
            throw error("permutation arity mismatch");
        // order of the permutation
        int order = 1;
        {
            std::vector<int> p(m);
            for (int i = 0; i < m; ++i) p[i] = i;
            while (true) {
                std::vector<int> np(m);
                for (int i = 0; i < m; ++i) np[i] = gen_perm[p[i]];
                p = np;
                bool id = true;
                for (int i = 0; i < m; ++i) id &= (p[i] == i);
                if (id) break;
                ++order;
                if (order > Group::kMaxOrder) throw error("permutation order too large");
            }
        }
        FiniteDiffRing R;
        R.grp_ = Group::cyclic(order);
        R.size_ = size;
        R.name_ = name.empty()
                      ? "gf" + std::to_string(K.size()) + "^" + std::to_string(m)
                      : std::move(name);
        int64_t q = K.size();
        auto digits = [&](int64_t e) {
            std::vector<int64_t> d(m);
            for (int i = 0; i < m; ++i) { d[i] = e % q; e /= q; }
            return d;
        };
        auto undigits = [&](const std::vector<int64_t>& d) {
            int64_t e = 0;
            for (int i = m - 1; i >= 0; --i) e = e * q + d[i];
            return e;
        };
        R.add_.resize(size * size);
        R.mul_.resize(size * size);
        for (int64_t a = 0; a < size; ++a) {
            auto da = digits(a);
            for (int64_t b = 0; b < size; ++b) {
                auto db = digits(b);
                std::vector<int64_t> s(m), p(m);
                for (int i = 0; i < m; ++i) {
                    s[i] = K.code(K.add(K.from_code(da[i]), K.from_code(db[i])));
                    p[i] = K.code(K.mul(K.from_code(da[i]), K.from_code(db[i])));
                }
                R.add_[a * size + b] = static_cast<int>(undigits(s));
                R.mul_[a * size + b] = static_cast<int>(undigits(p));
            }
        }
        std::vector<int64_t> ones(m, K.code(K.one()));
        R.one_ = static_cast<int>(undigits(ones));
        // sigma(x)_i = x_{perm^-1(i)}; build per-element action by iterating
        std::vector<int> perm_inv(m);
        for (int i = 0; i < m; ++i) perm_inv[gen_perm[i]] = i;
        R.action_.assign(order, std::vector<int>(size));
        for (int64_t a = 0; a < size; ++a) R.action_[0][a] = static_cast<int>(a);
        for (int g = 1; g < order; ++g)
            for (int64_t a = 0; a < size; ++a) {
                auto d = digits(R.action_[g - 1][a]);
                std::vector<int64_t> nd(m);
                for (int i = 0; i < m; ++i) nd[i] = d[perm_inv[i]];
                R.action_[g][a] = static_cast<int>(undigits(nd));
            }
        // element names
        R.names_.resize(size);
        for (int64_t a = 0; a < size; ++a) {
            auto d = digits(a);
            std::string s = "(";
            for (int i = 0; i < m; ++i) {
                if (i) s += ",";
                s += K.to_string(K.from_code(d[i]));
            }
            R.names_[a] = s + ")";
        }
        R.validate();
        return R;
    }

    /// GF(q)[x]/(f) with the action x -> u*x; the group is cyclic of the
    /// multiplicative order of u. f is monic of degree >= 1, not
    /// necessarily irreducible.
    static FiniteDiffRing quotient(const Field& K, gfpoly::Poly f, const FieldElem& u,
                                   std::string name = {}) {
        if (!K.is_finite()) throw error("finite ring needs a finite field");
        if (K.k() != 1) throw error("quotient rings are built over prime fields");
        gfpoly::trim(f);
        int r = gfpoly::deg(f);
        if (r < 1) throw error("modulus must have degree >= 1");
        f = gfpoly::monic(f, K.p());
        int64_t size = 1;
        for (int i = 0; i < r; ++i) {
            size *= K.size();
            if (size > kMaxSize) throw error("finite ring exceeds 81 elements");
        }
        if (K.is_zero(u)) throw error("action scalar must be a unit");
        // order of u in GF(q)*
        int order = 1;
        {
            FieldElem p = u;
            while (!K.is_one(p)) {
                p = K.mul(p, u);
                ++order;
                if (order > Group::kMaxOrder) throw error("action order too large");
            }
        }
        FiniteDiffRing R;
        R.grp_ = Group::cyclic(order);
        R.size_ = size;
        R.name_ = name.empty() ? "gf" + std::to_string(K.size()) + "[x]/(" +
                                     gfpoly::to_string(f, "x") + ")"
                               : std::move(name);
        int64_t q = K.size();
        auto decode = [&](int64_t e) {
            gfpoly::Poly c(r, 0);
            for (int i = 0; i < r; ++i) { c[i] = e % q; e /= q; }
            gfpoly::trim(c);
            return c;
        };
        auto encode = [&](gfpoly::Poly c) {
            c.resize(r, 0);
            int64_t e = 0;
            for (int i = r - 1; i >= 0; --i) e = e * q + c[i];
            return e;
        };
        R.add_.resize(size * size);
        R.mul_.resize(size * size);
        for (int64_t a = 0; a < size; ++a) {
            auto pa = decode(a);
            for (int64_t b = 0; b < size; ++b) {
                auto pb = decode(b);
                R.add_[a * size + b] =
                    static_cast<int>(encode(gfpoly::add(pa, pb, K.p())));
                R.mul_[a * size + b] = static_cast<int>(
                    encode(gfpoly::mod(gfpoly::mul(pa, pb, K.p()), f, K.p())));
            }
        }
        R.one_ = static_cast<int>(encode({1}));
        // sigma(sum c_j x^j) = sum c_j u^j x^j
        R.action_.assign(order, std::vector<int>(size));
        for (int64_t a = 0; a < size; ++a) R.action_[0][a] = static_cast<int>(a);
        for (int g = 1; g < order; ++g)
            for (int64_t a = 0; a < size; ++a) {
                auto c = decode(R.action_[g - 1][a]);
                FieldElem upow = K.one();
                for (size_t j = 1; j < c.size(); ++j) {
                    upow = K.mul(upow, u);
                    c[j] = K.code(K.mul(K.from_code(c[j]), upow));
                }
                R.action_[g][a] = static_cast<int>(encode(std::move(c)));
            }
        R.names_.resize(size);
        for (int64_t a = 0; a < size; ++a)
            R.names_[a] = gfpoly::to_string(decode(a), "x");
        R.validate();
        return R;
    }

    int size() const { return static_cast<int>(size_); }
    const Group& grp() const { return grp_; }
    const std::string& name() const { return name_; }
    int zero() const { return 0; }
    int one() const { return one_; }
    int add(int a, int b) const { return add_[a * size_ + b]; }
    int mul(int a, int b) const { return mul_[a * size_ + b]; }
    int act(int sigma, int a) const { return action_[sigma][a]; }
    const std::string& elem_name(int a) const { return names_[a]; }

    using IdealMask = std::vector<char>;

    bool ideal_contains(const IdealMask& I, int a) const { return I[a] != 0; }

    /// Smallest ideal containing a subset that is already closed under
    /// multiplication by ring elements: close under addition.
    IdealMask additive_closure(IdealMask S) const {
        S[0] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int a = 0; a < size(); ++a) {
                if (!S[a]) continue;
                for (int b = 0; b < size(); ++b) {
                    if (!S[b]) continue;
                    int s = add(a, b);
                    if (!S[s]) { S[s] = 1; grew = true; }
                }
            }
        }
        return S;
    }

    IdealMask principal_ideal(int a) const {
        IdealMask S(size(), 0);
        for (int r = 0; r < size(); ++r) S[mul(r, a)] = 1;
        return additive_closure(std::move(S));
    }

    /// Ideal generated by a set of elements.
    IdealMask ideal_generated(const std::vector<int>& gens) const {
        IdealMask S(size(), 0);
        for (int a : gens)
            for (int r = 0; r < size(); ++r) S[mul(r, a)] = 1;
        return additive_closure(std::move(S));
    }

    IdealMask ideal_sum(const IdealMask& I, const IdealMask& J) const {
        IdealMask S(size(), 0);
        for (int a = 0; a < size(); ++a)
            if (I[a])
                for (int b = 0; b < size(); ++b)
                    if (J[b]) S[add(a, b)] = 1;
        return S; // already an ideal
    }

    IdealMask ideal_intersect(const IdealMask& I, const IdealMask& J) const {
        IdealMask S(size(), 0);
        for (int a = 0; a < size(); ++a) S[a] = I[a] && J[a];
        return S;
    }

    IdealMask ideal_product(const IdealMask& I, const IdealMask& J) const {
        IdealMask S(size(), 0);
        for (int a = 0; a < size(); ++a)
            if (I[a])
                for (int b = 0; b < size(); ++b)
                    if (J[b]) S[mul(a, b)] = 1;
        return additive_closure(std::move(S));
    }

    IdealMask sigma_image(const IdealMask& I, int sigma) const {
        IdealMask S(size(), 0);
        for (int a = 0; a < size(); ++a)
            if (I[a]) S[act(sigma, a)] = 1;
        return S;
    }

    bool is_difference_ideal(const IdealMask& I) const {
        for (int g = 1; g < grp_.order(); ++g)
            if (sigma_image(I, g) != I) return false;
        return true;
    }

    /// a_Sigma = intersection of all sigma-images.
    IdealMask underscore_sigma(const IdealMask& I) const {
        IdealMask S = I;
        for (int g = 1; g < grp_.order(); ++g)
            S = ideal_intersect(S, sigma_image(I, g));
        return S;
    }

    IdealMask radical(const IdealMask& I) const {
        IdealMask S(size(), 0);
        for (int a = 0; a < size(); ++a) {
            int p = a;
            for (int t = 0; t < size() + 1; ++t) {
                if (I[p]) { S[a] = 1; break; }
                p = mul(p, a);
            }
        }
        return S;
    }

    /// I : s^infinity.
    IdealMask colon_power(const IdealMask& I, int s) const {
        IdealMask S(size(), 0);
        for (int a = 0; a < size(); ++a) {
            int p = one_;
            for (int t = 0; t < size() + 1; ++t) {
                if (I[mul(a, p)]) { S[a] = 1; break; }
                p = mul(p, s);
            }
        }
        return S;
    }

    bool ideal_subset(const IdealMask& I, const IdealMask& J) const {
        for (int a = 0; a < size(); ++a)
            if (I[a] && !J[a]) return false;
        return true;
    }

    bool is_unit_mask(const IdealMask& I) const { return I[one_] != 0; }

    bool is_prime(const IdealMask& I) const {
        if (is_unit_mask(I)) return false;
        for (int a = 0; a < size(); ++a) {
            if (I[a]) continue;
            for (int b = 0; b < size(); ++b) {
                if (I[b]) continue;
                if (I[mul(a, b)]) return false;
            }
        }
        return true;
    }

    std::string ideal_to_string(const IdealMask& I) const {
        std::string s = "{";
        bool first = true;
        for (int a = 0; a < size(); ++a) {
            if (!I[a]) continue;
            if (!first) s += ",";
            s += elem_name(a);
            first = false;
        }
        return s + "}";
    }

private:
    void validate() const {
        if (size_ < 1 || size_ > kMaxSize)
            throw error("finite ring size out of range");
        for (int g = 0; g < grp_.order(); ++g) {
            const auto& act = action_[g];
            if (act[one_] != one_)
                throw error(name_ + ": action of " + grp_.name(g) +
                            " does not fix 1");
            for (int a = 0; a < size(); ++a)
                for (int b = 0; b < size(); ++b) {
                    if (act[add(a, b)] != add(act[a], act[b]) ||
                        act[mul(a, b)] != mul(act[a], act[b]))
                        throw error(name_ + ": action of " + grp_.name(g) +
                                    " is not a ring automorphism, witness (" +
                                    elem_name(a) + "," + elem_name(b) + ")");
                }
        }
        // action is a group homomorphism
        for (int g = 0; g < grp_.order(); ++g)
            for (int h = 0; h < grp_.order(); ++h)
                for (int a = 0; a < size(); ++a)
                    if (action_[grp_.compose(g, h)][a] != action_[g][action_[h][a]])
                        throw error(name_ + ": action is not a group action");
    }

    Group grp_;
    int64_t size_ = 0;
    int one_ = 0;
    std::string name_;
    std::vector<int> add_, mul_;
    std::vector<std::vector<int>> action_;
    std::vector<std::string> names_;
};

inline FiniteDiffRing make_finite_ring_product(const Field& K, int m,
                                               std::vector<int> gen_perm,
                                               std::string name = {}) {
    return FiniteDiffRing::product(K, m, std::move(gen_perm), std::move(name));
}

inline FiniteDiffRing make_finite_ring_quotient(const Field& K, gfpoly::Poly f,
                                                const FieldElem& u,
                                                std::string name = {}) {
    return FiniteDiffRing::quotient(K, std::move(f), u, std::move(name));
}

struct EnumeratedIdeals {
    std::vector<FiniteDiffRing::IdealMask> all;
    std::vector<FiniteDiffRing::IdealMask> difference;
};

/// All ideals, by closing sums of principal ideals to a fixed point.
inline EnumeratedIdeals enumerate_ideals(const FiniteDiffRing& R) {
    std::set<FiniteDiffRing::IdealMask> pool;
    for (int a = 0; a < R.size(); ++a) pool.insert(R.principal_ideal(a));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<FiniteDiffRing::IdealMask> cur(pool.begin(), pool.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                auto s = R.ideal_sum(cur[i], cur[j]);
                if (pool.insert(std::move(s)).second) grew = true;
            }
    }
    EnumeratedIdeals out;
    out.all.assign(pool.begin(), pool.end());
    for (auto& I : out.all)
        if (R.is_difference_ideal(I)) out.difference.push_back(I);
    return out;
}

/// PSpec = pi(Spec): the distinct a_Sigma of the prime ideals.
inline std::vector<FiniteDiffRing::IdealMask> pseudo_spectrum(const FiniteDiffRing& R) {
    auto e = enumerate_ideals(R);
    std::set<FiniteDiffRing::IdealMask> out;
    for (auto& I : e.all)
        if (R.is_prime(I)) out.insert(R.underscore_sigma(I));
    return {out.begin(), out.end()};
}

struct PropReportItem {
    std::string item;
    bool pass = true;
    std::string witness;
};

struct PropReport {
    std::string ring;
    std::vector<PropReportItem> items;
    bool all_pass() const {
        for (auto& i : items)
            if (!i.pass) return false;
        return true;
    }
};

/// Direct verification of the pseudoprime-ideal calculus on a small ring:
/// radicality, sigma-associated intersections, saturation stability and
/// dichotomy, the product dichotomy, minimal primes, pi mapping Max into
/// PMax, and the V(a cap b) union law over the pseudospectrum.
inline PropReport verify_pseudoprime_props(const FiniteDiffRing& R) {
    PropReport rep;
    rep.ring = R.name();
    auto e = enumerate_ideals(R);
    std::vector<FiniteDiffRing::IdealMask> primes;
    for (auto& I : e.all)
        if (R.is_prime(I)) primes.push_back(I);
    auto pspec = pseudo_spectrum(R);

    auto item = [&](const std::string& name, bool pass, const std::string& wit) {
        rep.items.push_back({name, pass, pass ? "" : wit});
    };

    // (1) pseudoprime ideals are radical
    {
        bool ok = true;
        std::string wit;
        for (auto& q : pspec)
            if (R.radical(q) != q) {
                ok = false;
                wit = R.ideal_to_string(q);
                break;
            }
        item("pseudoprime-radical", ok, wit);
    }

    // (2) q = intersection of p^sigma for every sigma-associated prime p
    {
        bool ok = true;
        std::string wit;
        for (auto& q : pspec) {
            for (auto& p : primes) {
                if (R.underscore_sigma(p) != q) continue;
                FiniteDiffRing::IdealMask meet = p;
                for (int g = 1; g < R.grp().order(); ++g)
                    meet = R.ideal_intersect(meet, R.sigma_image(p, g));
                if (meet != q) {
                    ok = false;
                    wit = R.ideal_to_string(p);
                }
            }
        }
        item("sigma-associated-intersection", ok, wit);
    }

    // (3) (q : s^inf)_Sigma = q for every s outside q
    {
        bool ok = true;
        std::string wit;
        for (auto& q : pspec)
            for (int s = 0; s < R.size() && ok; ++s) {
                if (q[s]) continue;
                if (R.underscore_sigma(R.colon_power(q, s)) != q) {
                    ok = false;
                    wit = R.ideal_to_string(q) + " at s=" + R.elem_name(s);
                }
            }
        item("saturation-stability", ok, wit);
    }

    // (4) equal saturations force equal pseudoprimes (or s in both)
    {
        bool ok = true;
        std::string wit;
        for (auto& q1 : pspec)
            for (auto& q2 : pspec)
                for (int s = 0; s < R.size() && ok; ++s) {
                    if (R.colon_power(q1, s) != R.colon_power(q2, s)) continue;
                    if ((q1[s] && q2[s]) || q1 == q2) continue;
                    ok = false;
                    wit = R.ideal_to_string(q1) + " vs " + R.ideal_to_string(q2) +
                          " at s=" + R.elem_name(s);
                }
        item("saturation-dichotomy", ok, wit);
    }

    // (5) ab in q forces a in q or b in q, for difference ideals a, b
    {
        bool ok = true;
        std::string wit;
        for (auto& q : pspec)
            for (auto& a : e.difference)
                for (auto& b : e.difference) {
                    if (!ok) break;
                    if (!R.ideal_subset(R.ideal_product(a, b), q)) continue;
                    if (R.ideal_subset(a, q) || R.ideal_subset(b, q)) continue;
                    ok = false;
                    wit = R.ideal_to_string(a) + " * " + R.ideal_to_string(b);
                }
        item("product-dichotomy", ok, wit);
    }

    // (5b) each element of pi(Spec) satisfies the definition: it is maximal
    //      among difference ideals avoiding the complement of an associated
    //      prime (a multiplicatively closed set)
    {
        bool ok = true;
        std::string wit;
        for (auto& q : pspec) {
            const FiniteDiffRing::IdealMask* assoc = nullptr;
            for (auto& p : primes)
                if (R.underscore_sigma(p) == q) { assoc = &p; break; }
            if (!assoc) {
                ok = false;
                wit = R.ideal_to_string(q) + " has no associated prime";
                break;
            }
            // no strictly larger difference ideal stays inside the prime
            for (auto& d : e.difference)
                if (d != q && R.ideal_subset(q, d) && R.ideal_subset(d, *assoc)) {
                    ok = false;
                    wit = R.ideal_to_string(d) + " over " + R.ideal_to_string(q);
                }
        }
        item("pseudoprime-definition", ok, wit);
    }

    // (6) every minimal prime over q is sigma-associated with q
    {
        bool ok = true;
        std::string wit;
        for (auto& q : pspec)
            for (auto& p : primes) {
                if (!ok) break;
                if (!R.ideal_subset(q, p)) continue;
                bool minimal = true;
                for (auto& p2 : primes)
                    if (p2 != p && R.ideal_subset(q, p2) && R.ideal_subset(p2, p))
                        minimal = false;
                if (!minimal) continue;
                if (R.underscore_sigma(p) != q) {
                    ok = false;
                    wit = R.ideal_to_string(p) + " over " + R.ideal_to_string(q);
                }
            }
        item("minimal-primes-associated", ok, wit);
    }

    // (7) pi maps Max into PMax
    {
        // maximal ideals
        std::vector<FiniteDiffRing::IdealMask> maxes;
        for (auto& p : e.all) {
            if (R.is_unit_mask(p)) continue;
            bool maximal = true;
            for (auto& p2 : e.all)
                if (!R.is_unit_mask(p2) && p2 != p && R.ideal_subset(p, p2))
                    maximal = false;
            if (maximal && R.is_prime(p)) maxes.push_back(p);
        }
        std::vector<FiniteDiffRing::IdealMask> pmax;
        for (auto& d : e.difference) {
            if (R.is_unit_mask(d)) continue;
            bool maximal = true;
            for (auto& d2 : e.difference)
                if (!R.is_unit_mask(d2) && d2 != d && R.ideal_subset(d, d2))
                    maximal = false;
            if (maximal) pmax.push_back(d);
        }
        bool ok = true;
        std::string wit;
        for (auto& mx : maxes) {
            auto q = R.underscore_sigma(mx);
            if (std::find(pmax.begin(), pmax.end(), q) == pmax.end()) {
                ok = false;
                wit = R.ideal_to_string(mx);
            }
        }
        item("max-to-pmax", ok, wit);
    }

    // (8) V(a cap b) = V(ab) = V(a) union V(b) on the pseudospectrum;
    //     V(0) = everything, V(1) = nothing
    {
        auto V = [&](const FiniteDiffRing::IdealMask& a) {
            std::vector<char> v;
            for (auto& q : pspec) v.push_back(R.ideal_subset(a, q) ? 1 : 0);
            return v;
        };
        bool ok = true;
        std::string wit;
        FiniteDiffRing::IdealMask zero(R.size(), 0);
        zero[0] = 1;
        FiniteDiffRing::IdealMask unit(R.size(), 1);
        for (char c : V(zero))
            if (!c) ok = false;
        for (char c : V(unit))
            if (c) ok = false;
        for (auto& a : e.difference)
            for (auto& b : e.difference) {
                if (!ok) break;
                auto va = V(a), vb = V(b);
                auto vmeet = V(R.ideal_intersect(a, b));
                auto vprod = V(R.ideal_product(a, b));
                for (size_t i = 0; i < va.size(); ++i) {
                    char expect = va[i] || vb[i];
                    if (vmeet[i] != expect || vprod[i] != expect) {
                        ok = false;
                        wit = R.ideal_to_string(a) + " , " + R.ideal_to_string(b);
                        break;
                    }
                }
            }
        item("v-union-law", ok, wit);
    }

    return rep;
}

/// The built-in ring catalogue exercised by the verification suite.
inline std::vector<FiniteDiffRing> builtin_catalogue() {
    std::vector<FiniteDiffRing> rings;
    Field f2 = Field::gf(2), f3 = Field::gf(3), f5 = Field::gf(5);
    rings.push_back(FiniteDiffRing::product(f3, 2, {1, 0}, "gf3xgf3-swap"));
    rings.push_back(FiniteDiffRing::product(f2, 2, {1, 0}, "gf2xgf2-swap"));
    rings.push_back(FiniteDiffRing::product(f2, 4, {1, 2, 3, 0}, "gf2^4-cycle"));
    rings.push_back(FiniteDiffRing::quotient(f2, {0, 0, 1}, f2.one(), "gf2[x]/(x^2)-trivial"));
    rings.push_back(FiniteDiffRing::quotient(f5, {0, 0, 1}, f5.from_int(-1), "gf5[x]/(x^2)-neg"));
    rings.push_back(FiniteDiffRing::quotient(f3, {1, 0, 1}, f3.from_int(-1), "gf9-conjugation"));
    rings.push_back(FiniteDiffRing::quotient(f3, {-1, 0, 1}, f3.from_int(-1), "gf3[x]/(x^2-1)-neg"));
    return rings;
}

} // namespace dak
