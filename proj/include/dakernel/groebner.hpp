#pragma once

/// Classical Groebner machinery over an exact field: Buchberger with the
/// normal selection strategy and criteria 1 and 2, reduced bases, block-order
/// elimination, intersection and saturation, radical membership, the
/// Seidenberg zero-dimensional radical, staircase Krull dimension, vanishing
/// ideals of finite point sets, and finite quotient-ring enumeration.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dakernel/coeff.hpp"
#include "dakernel/common.hpp"

namespace dak {

using Expvec = std::vector<int>;

inline int total_degree(const Expvec& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

inline bool exp_divides(const Expvec& a, const Expvec& b) {
    // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Expvec exp_mul(const Expvec& a, const Expvec& b) {
    Expvec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Expvec exp_div(const Expvec& a, const Expvec& b) {
    Expvec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Expvec exp_lcm(const Expvec& a, const Expvec& b) {
    Expvec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

// Graded reverse lexicographic comparison; returns -1, 0, 1.
inline int grevlex_cmp(const Expvec& a, const Expvec& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
}

/// Monomial orders: grevlex, lex, and block orders for elimination. A block
/// order compares the masked variables grevlex-first, so masked variables
/// are eliminated by taking basis elements free of them.
struct MonomialOrder {
    enum class Kind { grevlex, lex, block };
    Kind kind = Kind::grevlex;
    std::vector<char> mask; // block: 1 = first (eliminated) block

    static MonomialOrder grevlex() { return {}; }
    static MonomialOrder lex() { return {Kind::lex, {}}; }
    static MonomialOrder block(std::vector<char> first_block) {
        return {Kind::block, std::move(first_block)};
    }

    int cmp(const Expvec& a, const Expvec& b) const {
        switch (kind) {
        case Kind::grevlex:
            return grevlex_cmp(a, b);
        case Kind::lex:
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
            return 0;
        case Kind::block: {
            int da = 0, db = 0;
            for (size_t i = 0; i < a.size(); ++i)
                if (mask[i]) { da += a[i]; db += b[i]; }
            if (da != db) return da < db ? -1 : 1;
            for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
                if (mask[i] && a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
            return grevlex_cmp(a, b);
        }
        }
        return 0;
    }

    std::string key() const {
        std::string s = kind == Kind::grevlex ? "g" : kind == Kind::lex ? "l" : "b";
        for (char c : mask) s += c ? '1' : '0';
        return s;
    }
};

struct Term {
    Expvec e;
    FieldElem c;
};

/// A polynomial: terms sorted descending in grevlex (the storage order is
/// fixed and independent of the order used by a particular computation).
struct Poly {
    std::vector<Term> terms;
    bool is_zero() const { return terms.empty(); }
};

class Ring {
public:
    Ring() = default;
    Ring(Field field, std::vector<std::string> vars) {
        auto d = std::make_shared<Data>();
        d->field = std::move(field);
        d->vars = std::move(vars);
        d_ = std::move(d);
    }

    const Field& field() const { return d_->field; }
    int nvars() const { return static_cast<int>(d_->vars.size()); }
    const std::string& var_name(int i) const { return d_->vars.at(i); }
    const std::vector<std::string>& var_names() const { return d_->vars; }
    int var_index(const std::string& name) const {
        for (int i = 0; i < nvars(); ++i)
            if (d_->vars[i] == name) return i;
        return -1;
    }
    /// Structural identity: same field object, same variable list. Two
    /// independently built adjoint rings over one field compare equal.
    bool same(const Ring& o) const {
        return d_ == o.d_ ||
               (d_ && o.d_ && d_->field.same(o.d_->field) && d_->vars == o.d_->vars);
    }
    bool valid() const { return d_ != nullptr; }

    Poly zero() const { return {}; }

    Poly constant(const FieldElem& c) const {
        if (field().is_zero(c)) return {};
        Poly p;
        p.terms.push_back({Expvec(nvars(), 0), c});
        return p;
    }

    Poly monomial(Expvec e, const FieldElem& c) const {
        if (field().is_zero(c)) return {};
        Poly p;
        p.terms.push_back({std::move(e), c});
        return p;
    }

    Poly variable(int i) const {
        Expvec e(nvars(), 0);
        e.at(i) = 1;
        return monomial(std::move(e), field().one());
    }

    Poly add(const Poly& a, const Poly& b) const {
        Poly r;
        size_t i = 0, j = 0;
        while (i < a.terms.size() || j < b.terms.size()) {
            if (i == a.terms.size()) { r.terms.push_back(b.terms[j++]); continue; }
            if (j == b.terms.size()) { r.terms.push_back(a.terms[i++]); continue; }
            int c = grevlex_cmp(a.terms[i].e, b.terms[j].e);
            if (c > 0) r.terms.push_back(a.terms[i++]);
            else if (c < 0) r.terms.push_back(b.terms[j++]);
            else {
                FieldElem s = field().add(a.terms[i].c, b.terms[j].c);
                if (!field().is_zero(s)) r.terms.push_back({a.terms[i].e, s});
                ++i; ++j;
            }
        }
        return r;
    }

    Poly neg(const Poly& a) const {
        Poly r = a;
        for (auto& t : r.terms) t.c = field().neg(t.c);
        return r;
    }

    Poly sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

    Poly mul_term(const Poly& a, const Expvec& e, const FieldElem& c) const {
        if (field().is_zero(c)) return {};
        Poly r;
        r.terms.reserve(a.terms.size());
        for (auto& t : a.terms) {
            FieldElem p = field().mul(t.c, c);
            if (!field().is_zero(p)) r.terms.push_back({exp_mul(t.e, e), p});
        }
        return r;
    }

    Poly mul(const Poly& a, const Poly& b) const {
        struct Desc {
            bool operator()(const Expvec& x, const Expvec& y) const {
                return grevlex_cmp(x, y) > 0;
            }
        };
        std::map<Expvec, FieldElem, Desc> acc;
        for (auto& s : a.terms)
            for (auto& t : b.terms) {
                Expvec e = exp_mul(s.e, t.e);
                FieldElem c = field().mul(s.c, t.c);
                auto it = acc.find(e);
                if (it == acc.end()) acc.emplace(std::move(e), std::move(c));
                else it->second = field().add(it->second, c);
            }
        Poly r;
        for (auto& [e, c] : acc)
            if (!field().is_zero(c)) r.terms.push_back({e, c});
        return r;
    }

    Poly mul_scalar(const Poly& a, const FieldElem& c) const {
        return mul_term(a, Expvec(nvars(), 0), c);
    }

    Poly pow(const Poly& a, int e) const {
        Poly r = constant(field().one());
        for (int i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }

    Poly monic(const Poly& a) const {
        if (a.is_zero()) return a;
        return mul_scalar(a, field().inv(a.terms.front().c));
    }

    bool eq(const Poly& a, const Poly& b) const { return sub(a, b).is_zero(); }

    // Leading term under an arbitrary order (scan; storage is grevlex).
    const Term& leading_term(const Poly& a, const MonomialOrder& ord) const {
        if (a.is_zero()) throw error("leading term of zero polynomial");
        if (ord.kind == MonomialOrder::Kind::grevlex) return a.terms.front();
        size_t best = 0;
        for (size_t i = 1; i < a.terms.size(); ++i)
            if (ord.cmp(a.terms[i].e, a.terms[best].e) > 0) best = i;
        return a.terms[best];
    }

    std::string to_string(const Poly& a) const {
        if (a.is_zero()) return "0";
        std::string s;
        for (auto& t : a.terms) {
            if (!s.empty()) s += " + ";
            std::string cs = field().to_string(t.c);
            bool unit = cs == "1";
            bool has_var = total_degree(t.e) > 0;
            std::string ms;
            for (int i = 0; i < nvars(); ++i) {
                if (t.e[i] == 0) continue;
                if (!ms.empty()) ms += "*";
                ms += var_name(i);
                if (t.e[i] > 1) ms += "^" + std::to_string(t.e[i]);
            }
            if (!has_var) s += cs.find_first_of("+-") != std::string::npos &&
                                   cs.find_first_of("+-", 1) != std::string::npos
                               ? "(" + cs + ")" : cs;
            else if (unit) s += ms;
            else if (cs.find('+') != std::string::npos ||
                     cs.find('-', 1) != std::string::npos)
                s += "(" + cs + ")*" + ms;
            else s += cs + "*" + ms;
        }
        return s;
    }

private:
    struct Data {
        Field field;
        std::vector<std::string> vars;
    };
    std::shared_ptr<const Data> d_;
};

/// One element of a Groebner basis together with its representation in
/// terms of the input generators (tracked only when requested).
struct GBElem {
    Poly p;
    std::vector<Poly> rep;
};

struct GroebnerBasis {
    std::vector<GBElem> elems;
    std::vector<Poly> polys() const {
        std::vector<Poly> r;
        r.reserve(elems.size());
        for (auto& e : elems) r.push_back(e.p);
        return r;
    }
};

namespace detail {

// Full reduction of f by basis; optionally tracks f = sum q_i b_i + r with
// the q_i accumulated into `rep` through the representations of the basis.
inline Poly reduce_full(const Ring& R, Poly f, const std::vector<GBElem>& basis,
                        const MonomialOrder& ord, bool track,
                        std::vector<Poly>* rep, size_t ngens) {
    const Field& K = R.field();
    Poly remainder;
    while (!f.is_zero()) {
        const Term& lt = R.leading_term(f, ord);
        bool reduced = false;
        for (const auto& b : basis) {
            if (b.p.is_zero()) continue;
            const Term& bl = R.leading_term(b.p, ord);
            if (!exp_divides(bl.e, lt.e)) continue;
            Expvec q = exp_div(lt.e, bl.e);
            FieldElem c = K.mul(lt.c, K.inv(bl.c));
            f = R.sub(f, R.mul_term(b.p, q, c));
            if (track && rep) {
                for (size_t g = 0; g < ngens; ++g) {
                    Poly adj = R.mul_term(g < b.rep.size() ? b.rep[g] : Poly{}, q, c);
                    (*rep)[g] = R.add((*rep)[g], adj);
                }
            }
            reduced = true;
            break;
        }
        if (!reduced) {
            // move the leading term to the remainder
            Poly lt_poly = R.monomial(lt.e, lt.c);
            remainder = R.add(remainder, lt_poly);
            f = R.sub(f, lt_poly);
        }
    }
    return remainder;
}

} // namespace detail

/// Buchberger with normal selection (least lcm degree, ties by age) and
/// criteria 1 and 2, followed by autoreduction. The result is the unique
/// reduced basis: monic, tail-reduced, sorted by leading monomial ascending.
/// With track_rep, every basis element carries exact cofactors over `gens`.
inline GroebnerBasis buchberger(const Ring& R, const std::vector<Poly>& gens,
                                const MonomialOrder& ord, bool track_rep = false) {
    const Field& K = R.field();
    size_t ngens = gens.size();
    std::vector<GBElem> basis;
    for (size_t i = 0; i < ngens; ++i) {
        if (gens[i].is_zero()) continue;
        GBElem e;
        e.p = gens[i];
        if (track_rep) {
            e.rep.assign(ngens, Poly{});
            e.rep[i] = R.constant(K.one());
        }
        basis.push_back(std::move(e));
    }

    struct Pair {
        size_t i, j;
        int deg;
        size_t age;
    };
    std::vector<Pair> pairs;
    std::set<std::pair<size_t, size_t>> pending;
    size_t age_counter = 0;
    auto push_pairs = [&](size_t j) {
        for (size_t i = 0; i < j; ++i) {
            Expvec l = exp_lcm(basis[i].p.terms.empty() ? Expvec{} : R.leading_term(basis[i].p, ord).e,
                               R.leading_term(basis[j].p, ord).e);
            pairs.push_back({i, j, total_degree(l), age_counter++});
            pending.insert({i, j});
        }
    };
    for (size_t j = 0; j < basis.size(); ++j) push_pairs(j);

    while (!pairs.empty()) {
        size_t best = 0;
        for (size_t k = 1; k < pairs.size(); ++k)
            if (pairs[k].deg < pairs[best].deg ||
                (pairs[k].deg == pairs[best].deg && pairs[k].age < pairs[best].age))
                best = k;
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + best);
        pending.erase({pr.i, pr.j});

        const Term& li = R.leading_term(basis[pr.i].p, ord);
        const Term& lj = R.leading_term(basis[pr.j].p, ord);
        Expvec l = exp_lcm(li.e, lj.e);
        // criterion 1: coprime leading monomials
        if (total_degree(l) == total_degree(li.e) + total_degree(lj.e)) continue;
        // criterion 2: some k with LM(k) | lcm and both pairs already treated
        bool skip = false;
        for (size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!exp_divides(R.leading_term(basis[k].p, ord).e, l)) continue;
            auto key1 = std::minmax(pr.i, k), key2 = std::minmax(pr.j, k);
            if (!pending.count({key1.first, key1.second}) &&
                !pending.count({key2.first, key2.second}))
                skip = true;
        }
        if (skip) continue;

        // s-polynomial
        Expvec qi = exp_div(l, li.e), qj = exp_div(l, lj.e);
        Poly s = R.sub(R.mul_term(basis[pr.i].p, qi, K.inv(li.c)),
                       R.mul_term(basis[pr.j].p, qj, K.inv(lj.c)));
        std::vector<Poly> rep;
        if (track_rep) {
            rep.assign(ngens, Poly{});
            Poly r = detail::reduce_full(R, s, basis, ord, true, &rep, ngens);
            // s = sum rep_g gen_g + r, so the remainder's cofactors are the
            // s-poly's own contribution minus what the reduction consumed
            for (size_t g = 0; g < ngens; ++g) {
                Poly from_i = R.mul_term(basis[pr.i].rep[g], qi, K.inv(li.c));
                Poly from_j = R.mul_term(basis[pr.j].rep[g], qj, K.inv(lj.c));
                rep[g] = R.sub(R.sub(from_i, from_j), rep[g]);
            }
            if (!r.is_zero()) {
                GBElem e;
                e.p = std::move(r);
                e.rep = std::move(rep);
                basis.push_back(std::move(e));
                push_pairs(basis.size() - 1);
            }
        } else {
            s = detail::reduce_full(R, s, basis, ord, false, nullptr, 0);
            if (!s.is_zero()) {
                GBElem e;
                e.p = std::move(s);
                basis.push_back(std::move(e));
                push_pairs(basis.size() - 1);
            }
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by
    // another's
    std::vector<GBElem> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        const Expvec& li = R.leading_term(basis[i].p, ord).e;
        bool drop = false;
        for (size_t j = 0; j < basis.size() && !drop; ++j) {
            if (i == j) continue;
            const Expvec& lj = R.leading_term(basis[j].p, ord).e;
            if (exp_divides(lj, li) && (li != lj || j < i)) drop = true;
        }
        if (!drop) minimal.push_back(basis[i]);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const GBElem& a, const GBElem& b) {
        return ord.cmp(R.leading_term(a.p, ord).e, R.leading_term(b.p, ord).e) < 0;
    });
    // tail-reduce and normalize
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<GBElem> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        std::vector<Poly> rep;
        if (track_rep) rep.assign(ngens, Poly{});
        Poly r = detail::reduce_full(R, minimal[i].p, others, ord, track_rep,
                                     track_rep ? &rep : nullptr, ngens);
        if (track_rep)
            for (size_t g = 0; g < ngens; ++g)
                minimal[i].rep[g] = R.sub(minimal[i].rep[g], rep[g]);
        minimal[i].p = std::move(r);
        FieldElem lc = R.leading_term(minimal[i].p, ord).c;
        if (!K.is_one(lc)) {
            FieldElem s = K.inv(lc);
            minimal[i].p = R.mul_scalar(minimal[i].p, s);
            if (track_rep)
                for (auto& rp : minimal[i].rep) rp = R.mul_scalar(rp, s);
        }
    }
    GroebnerBasis out;
    out.elems = std::move(minimal);
    return out;
}

/// An ideal with a write-once Groebner cache per monomial order.
class Ideal {
public:
    Ideal() = default;
    Ideal(Ring ring, std::vector<Poly> gens)
        : ring_(std::move(ring)), gens_(std::move(gens)),
          cache_(std::make_shared<Cache>()) {}

    const Ring& ring() const { return ring_; }
    const std::vector<Poly>& gens() const { return gens_; }

    const std::vector<Poly>& basis(const MonomialOrder& ord) const {
        std::string key = ord.key();
        {
            std::lock_guard<std::mutex> lock(cache_->m);
            auto it = cache_->gb.find(key);
            if (it != cache_->gb.end()) return *it->second;
        }
        auto gb = std::make_shared<std::vector<Poly>>(
            buchberger(ring_, gens_, ord).polys());
        std::lock_guard<std::mutex> lock(cache_->m);
        auto [it, inserted] = cache_->gb.emplace(key, std::move(gb));
        return *it->second;
    }

private:
    struct Cache {
        std::mutex m;
        std::map<std::string, std::shared_ptr<const std::vector<Poly>>> gb;
    };
    Ring ring_;
    std::vector<Poly> gens_;
    std::shared_ptr<Cache> cache_;
};

inline std::vector<Poly> groebner_basis(const Ideal& I,
                                        const MonomialOrder& ord = MonomialOrder::grevlex()) {
    return I.basis(ord);
}

inline Poly normal_form(const Poly& f, const Ideal& I,
                        const MonomialOrder& ord = MonomialOrder::grevlex()) {
    const auto& gb = I.basis(ord);
    std::vector<GBElem> basis;
    basis.reserve(gb.size());
    for (auto& p : gb) basis.push_back({p, {}});
    return detail::reduce_full(I.ring(), f, basis, ord, false, nullptr, 0);
}

inline bool ideal_contains(const Ideal& I, const Poly& f) {
    return normal_form(f, I).is_zero();
}

inline bool is_unit_ideal(const Ideal& I) {
    const auto& gb = I.basis(MonomialOrder::grevlex());
    return gb.size() == 1 && total_degree(gb[0].terms.front().e) == 0;
}

inline bool is_zero_ideal(const Ideal& I) {
    return I.basis(MonomialOrder::grevlex()).empty();
}

inline bool ideal_eq(const Ideal& I, const Ideal& J) {
    const auto& a = I.basis(MonomialOrder::grevlex());
    const auto& b = J.basis(MonomialOrder::grevlex());
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!I.ring().eq(a[i], b[i])) return false;
    return true;
}

/// I with the masked variables eliminated: the contraction to the subring
/// generated by the remaining variables (represented in the same ring).
inline Ideal eliminate(const Ideal& I, const std::vector<char>& remove_mask) {
    bool any = false;
    for (char c : remove_mask) any |= (c != 0);
    if (!any) return I;
    auto gb = buchberger(I.ring(), I.gens(), MonomialOrder::block(remove_mask)).polys();
    std::vector<Poly> keep;
    for (auto& p : gb) {
        bool uses = false;
        for (auto& t : p.terms)
            for (int i = 0; i < I.ring().nvars() && !uses; ++i)
                if (remove_mask[i] && t.e[i] > 0) uses = true;
        if (!uses) keep.push_back(p);
    }
    return Ideal(I.ring(), std::move(keep));
}

namespace detail {

// Transport I into a ring with one extra (last) variable.
inline Ring extended_ring(const Ring& R, const std::string& extra) {
    auto names = R.var_names();
    std::string nm = extra;
    while (R.var_index(nm) >= 0) nm += "_";
    names.push_back(nm);
    return Ring(R.field(), names);
}

inline Poly inject(const Poly& p) {
    Poly r;
    r.terms.reserve(p.terms.size());
    for (auto& t : p.terms) {
        Expvec e = t.e;
        e.push_back(0);
        r.terms.push_back({std::move(e), t.c});
    }
    return r;
}

inline Poly project(const Poly& p) {
    Poly r;
    r.terms.reserve(p.terms.size());
    for (auto& t : p.terms) {
        Expvec e(t.e.begin(), t.e.end() - 1);
        r.terms.push_back({std::move(e), t.c});
    }
    return r;
}

} // namespace detail

/// I intersect J via the t*I + (1-t)*J elimination construction.
inline Ideal intersect_ideals(const Ideal& I, const Ideal& J) {
    if (!I.ring().same(J.ring())) throw error("ideal intersection needs one ring");
    const Ring& R = I.ring();
    Ring E = detail::extended_ring(R, "t");
    int tn = E.nvars() - 1;
    Poly t = E.variable(tn);
    Poly one_minus_t = E.sub(E.constant(E.field().one()), t);
    std::vector<Poly> gens;
    for (auto& g : I.gens()) gens.push_back(E.mul(t, detail::inject(g)));
    for (auto& g : J.gens()) gens.push_back(E.mul(one_minus_t, detail::inject(g)));
    std::vector<char> mask(E.nvars(), 0);
    mask[tn] = 1;
    Ideal ext(E, std::move(gens));
    auto kept = eliminate(ext, mask).gens();
    std::vector<Poly> out;
    for (auto& p : kept) out.push_back(detail::project(p));
    return Ideal(R, std::move(out));
}

inline Ideal sum_ideals(const Ideal& I, const Ideal& J) {
    if (!I.ring().same(J.ring())) throw error("ideal sum needs one ring");
    auto gens = I.gens();
    for (auto& g : J.gens()) gens.push_back(g);
    return Ideal(I.ring(), std::move(gens));
}

inline Ideal product_ideals(const Ideal& I, const Ideal& J) {
    if (!I.ring().same(J.ring())) throw error("ideal product needs one ring");
    std::vector<Poly> gens;
    for (auto& a : I.gens())
        for (auto& b : J.gens()) gens.push_back(I.ring().mul(a, b));
    return Ideal(I.ring(), std::move(gens));
}

/// Saturation I : f^infinity via the Rabinowitsch variable.
inline Ideal saturate(const Ideal& I, const Poly& f) {
    if (f.is_zero()) throw error("saturation by zero");
    const Ring& R = I.ring();
    Ring E = detail::extended_ring(R, "t");
    int tn = E.nvars() - 1;
    std::vector<Poly> gens;
    for (auto& g : I.gens()) gens.push_back(detail::inject(g));
    gens.push_back(E.sub(E.constant(E.field().one()),
                         E.mul(E.variable(tn), detail::inject(f))));
    std::vector<char> mask(E.nvars(), 0);
    mask[tn] = 1;
    auto kept = eliminate(Ideal(E, std::move(gens)), mask).gens();
    std::vector<Poly> out;
    for (auto& p : kept) out.push_back(detail::project(p));
    return Ideal(R, std::move(out));
}

/// f in sqrt(I), by the Rabinowitsch trick.
inline bool radical_membership(const Poly& f, const Ideal& I) {
    if (f.is_zero()) return true;
    const Ring& R = I.ring();
    Ring E = detail::extended_ring(R, "t");
    int tn = E.nvars() - 1;
    std::vector<Poly> gens;
    for (auto& g : I.gens()) gens.push_back(detail::inject(g));
    gens.push_back(E.sub(E.constant(E.field().one()),
                         E.mul(E.variable(tn), detail::inject(f))));
    return is_unit_ideal(Ideal(E, std::move(gens)));
}

/// Krull dimension of R/I via maximal sets of variables independent modulo
/// the leading-term ideal. Unit ideal has dimension -1 by convention.
inline int krull_dimension(const Ideal& I) {
    if (is_unit_ideal(I)) return -1;
    const auto& gb = I.basis(MonomialOrder::grevlex());
    int n = I.ring().nvars();
    if (n > 24) throw error("too many variables for staircase dimension");
    std::vector<Expvec> lms;
    for (auto& p : gb) lms.push_back(p.terms.front().e);
    int best = 0;
    for (uint32_t s = 0; s < (1u << n); ++s) {
        int size = __builtin_popcount(s);
        if (size <= best) continue;
        bool independent = true;
        for (auto& lm : lms) {
            bool inside = true;
            for (int i = 0; i < n && inside; ++i)
                if (lm[i] > 0 && !(s & (1u << i))) inside = false;
            if (inside) { independent = false; break; }
        }
        if (independent) best = size;
    }
    return best;
}

inline bool is_zero_dimensional(const Ideal& I) {
    if (is_unit_ideal(I)) return true; // empty variety
    const auto& gb = I.basis(MonomialOrder::grevlex());
    int n = I.ring().nvars();
    std::vector<bool> covered(n, false);
    for (auto& p : gb) {
        const Expvec& e = p.terms.front().e;
        int var = -1, nz = 0;
        for (int i = 0; i < n; ++i)
            if (e[i] > 0) { var = i; ++nz; }
        if (nz == 1) covered[var] = true;
    }
    for (int i = 0; i < n; ++i)
        if (!covered[i]) return false;
    return true;
}

/// Monomials outside the leading-term ideal, ascending in grevlex. The
/// K-basis of R/I for zero-dimensional I.
inline std::vector<Expvec> staircase(const Ideal& I) {
    if (is_unit_ideal(I)) return {};
    if (!is_zero_dimensional(I)) throw error("staircase requires a zero-dimensional ideal");
    const auto& gb = I.basis(MonomialOrder::grevlex());
    int n = I.ring().nvars();
    std::vector<Expvec> lms;
    for (auto& p : gb) lms.push_back(p.terms.front().e);
    std::vector<int> bound(n, 1);
    for (auto& lm : lms) {
        int var = -1, nz = 0;
        for (int i = 0; i < n; ++i)
            if (lm[i] > 0) { var = i; ++nz; }
        if (nz == 1) bound[var] = lm[var];
    }
    std::vector<Expvec> out;
    Expvec cur(n, 0);
    while (true) {
        bool divisible = false;
        for (auto& lm : lms)
            if (exp_divides(lm, cur)) { divisible = true; break; }
        if (!divisible) out.push_back(cur);
        int i = 0;
        while (i < n) {
            if (++cur[i] < bound[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    std::sort(out.begin(), out.end(),
              [](const Expvec& a, const Expvec& b) { return grevlex_cmp(a, b) < 0; });
    return out;
}

namespace detail {

// Univariate polynomials over a Field, little-endian, for minimal
// polynomials and squarefree parts.
using Upoly = std::vector<FieldElem>;

inline void utrim(const Field& K, Upoly& a) {
    while (!a.empty() && K.is_zero(a.back())) a.pop_back();
}

inline Upoly umod(const Field& K, Upoly a, const Upoly& b) {
    utrim(K, a);
    FieldElem lcinv = K.inv(b.back());
    while (a.size() >= b.size() && !a.empty()) {
        FieldElem c = K.mul(a.back(), lcinv);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[i + shift] = K.sub(a[i + shift], K.mul(c, b[i]));
        utrim(K, a);
    }
    return a;
}

inline Upoly udiv(const Field& K, Upoly a, const Upoly& b) {
    utrim(K, a);
    FieldElem lcinv = K.inv(b.back());
    Upoly q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, K.zero());
    while (a.size() >= b.size() && !a.empty()) {
        FieldElem c = K.mul(a.back(), lcinv);
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[i + shift] = K.sub(a[i + shift], K.mul(c, b[i]));
        utrim(K, a);
    }
    return q;
}

inline Upoly umonic(const Field& K, Upoly a) {
    utrim(K, a);
    if (a.empty()) return a;
    FieldElem c = K.inv(a.back());
    for (auto& x : a) x = K.mul(x, c);
    return a;
}

inline Upoly ugcd(const Field& K, Upoly a, Upoly b) {
    utrim(K, a);
    utrim(K, b);
    while (!b.empty()) {
        Upoly r = umod(K, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return umonic(K, std::move(a));
}

inline Upoly uderiv(const Field& K, const Upoly& a) {
    Upoly r;
    for (size_t i = 1; i < a.size(); ++i)
        r.push_back(K.mul(K.from_int(static_cast<int64_t>(i)), a[i]));
    utrim(K, r);
    return r;
}

inline Upoly umul(const Field& K, const Upoly& a, const Upoly& b) {
    if (a.empty() || b.empty()) return {};
    Upoly r(a.size() + b.size() - 1, K.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    return r;
}

// Product of the distinct irreducible factors of a monic polynomial over a
// perfect field (GF(q) or Q).
inline Upoly squarefree_part(const Field& K, Upoly g) {
    g = umonic(K, std::move(g));
    if (g.size() <= 1) return {K.one()};
    Upoly d = uderiv(K, g);
    if (d.empty()) {
        // char p, g = h(x^p); take the p-th root coefficientwise
        int64_t p = K.p();
        Upoly h;
        for (size_t i = 0; i < g.size(); i += static_cast<size_t>(p))
            h.push_back(K.frobenius(g[i], K.k() - 1));
        return squarefree_part(K, std::move(h));
    }
    Upoly gcd = ugcd(K, g, d);
    if (gcd.size() <= 1) return g;
    Upoly w = udiv(K, g, gcd);
    Upoly r = squarefree_part(K, gcd);
    Upoly overlap = ugcd(K, w, r);
    return umonic(K, umul(K, w, udiv(K, r, overlap)));
}

} // namespace detail

/// Coordinates of NF(f) on the staircase basis.
inline std::vector<FieldElem> nf_coordinates(const Poly& f, const Ideal& I,
                                             const std::vector<Expvec>& basis) {
    Poly r = normal_form(f, I);
    const Field& K = I.ring().field();
    std::vector<FieldElem> v(basis.size(), K.zero());
    for (auto& t : r.terms) {
        auto it = std::lower_bound(basis.begin(), basis.end(), t.e,
                                   [](const Expvec& a, const Expvec& b) {
                                       return grevlex_cmp(a, b) < 0;
                                   });
        if (it == basis.end() || *it != t.e)
            throw error("normal form leaves the staircase (internal)");
        v[it - basis.begin()] = t.c;
    }
    return v;
}

/// Minimal polynomial of variable i in R/I (zero-dimensional I), monic,
/// as a univariate coefficient vector.
inline detail::Upoly minimal_polynomial(const Ideal& I, int var,
                                        const std::vector<Expvec>& basis) {
    const Ring& R = I.ring();
    const Field& K = R.field();
    size_t D = basis.size();
    if (D == 0) return {K.one()}; // unit ideal
    // reduced rows with their polynomial combination in powers of x_var
    std::vector<std::vector<FieldElem>> rows;
    std::vector<size_t> pivots;
    std::vector<detail::Upoly> combos;
    Poly xp = R.constant(K.one());
    Poly x = R.variable(var);
    for (size_t deg = 0; deg <= D; ++deg) {
        std::vector<FieldElem> v = nf_coordinates(xp, I, basis);
        detail::Upoly combo(deg + 1, K.zero());
        combo[deg] = K.one();
        for (size_t r = 0; r < rows.size(); ++r) {
            FieldElem c = v[pivots[r]];
            if (K.is_zero(c)) continue;
            for (size_t j = 0; j < D; ++j) v[j] = K.sub(v[j], K.mul(c, rows[r][j]));
            for (size_t j = 0; j < combos[r].size(); ++j) {
                if (j >= combo.size()) combo.resize(j + 1, K.zero());
                combo[j] = K.sub(combo[j], K.mul(c, combos[r][j]));
            }
        }
        bool zero = true;
        size_t piv = 0;
        for (size_t j = 0; j < D; ++j)
            if (!K.is_zero(v[j])) { zero = false; piv = j; break; }
        if (zero) return detail::umonic(K, std::move(combo));
        FieldElem inv = K.inv(v[piv]);
        for (auto& c : v) c = K.mul(c, inv);
        for (auto& c : combo) c = K.mul(c, inv);
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        combos.push_back(std::move(combo));
        xp = R.mul(xp, x);
    }
    throw error("minimal polynomial not found (internal)");
}

/// Radical of a zero-dimensional ideal over a perfect field: adjoin the
/// squarefree part of the minimal polynomial of every variable.
inline Ideal zero_dim_radical(const Ideal& I) {
    if (is_unit_ideal(I)) return I;
    if (!is_zero_dimensional(I))
        throw error("zero_dim_radical requires a zero-dimensional ideal; "
                    "use radical_membership for single elements");
    const Ring& R = I.ring();
    const Field& K = R.field();
    auto basis = staircase(I);
    std::vector<Poly> gens = I.basis(MonomialOrder::grevlex());
    bool changed = false;
    for (int i = 0; i < R.nvars(); ++i) {
        auto m = minimal_polynomial(I, i, basis);
        auto r = detail::squarefree_part(K, m);
        if (r.size() != m.size()) {
            Poly univ;
            for (size_t j = 0; j < r.size(); ++j) {
                Expvec e(R.nvars(), 0);
                e[i] = static_cast<int>(j);
                univ = R.add(univ, R.monomial(e, r[j]));
            }
            gens.push_back(univ);
            changed = true;
        }
    }
    if (!changed) return Ideal(R, I.basis(MonomialOrder::grevlex()));
    return Ideal(R, buchberger(R, gens, MonomialOrder::grevlex()).polys());
}

/// Unit certificate: cofactors c_i with 1 = sum c_i gens_i, or nullopt when
/// 1 is not in the ideal.
inline std::optional<std::vector<Poly>> certificate_of_one(
    const Ring& R, const std::vector<Poly>& gens) {
    auto gb = buchberger(R, gens, MonomialOrder::grevlex(), true);
    for (auto& e : gb.elems) {
        if (e.p.terms.size() == 1 && total_degree(e.p.terms.front().e) == 0) {
            FieldElem inv = R.field().inv(e.p.terms.front().c);
            std::vector<Poly> cof;
            cof.reserve(gens.size());
            for (size_t g = 0; g < gens.size(); ++g)
                cof.push_back(R.mul_scalar(g < e.rep.size() ? e.rep[g] : Poly{}, inv));
            return cof;
        }
    }
    return std::nullopt;
}

/// Reduced Groebner basis of the vanishing ideal of a finite point set
/// (Buchberger-Moeller). Points are coordinate vectors over the ring field.
inline std::vector<Poly> vanishing_ideal(const Ring& R,
                                         const std::vector<std::vector<FieldElem>>& pts) {
    const Field& K = R.field();
    int n = R.nvars();
    if (pts.empty()) return {R.constant(K.one())};
    auto eval_mono = [&](const Expvec& e, const std::vector<FieldElem>& p) {
        FieldElem v = K.one();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < e[i]; ++j) v = K.mul(v, p[i]);
        return v;
    };
    struct Row {
        Poly q;
        std::vector<FieldElem> r;
        size_t pivot;
    };
    std::vector<Row> B;
    std::vector<Poly> G;
    std::vector<Expvec> glms;
    std::set<Expvec, bool (*)(const Expvec&, const Expvec&)> L(
        [](const Expvec& a, const Expvec& b) { return grevlex_cmp(a, b) < 0; });
    L.insert(Expvec(n, 0));
    while (!L.empty()) {
        Expvec t = *L.begin();
        L.erase(L.begin());
        bool multiple = false;
        for (auto& lm : glms)
            if (exp_divides(lm, t)) { multiple = true; break; }
        if (multiple) continue;
        Poly q = R.monomial(t, K.one());
        std::vector<FieldElem> r;
        r.reserve(pts.size());
        for (auto& p : pts) r.push_back(eval_mono(t, p));
        for (auto& row : B) {
            FieldElem c = r[row.pivot];
            if (K.is_zero(c)) continue;
            for (size_t j = 0; j < r.size(); ++j)
                r[j] = K.sub(r[j], K.mul(c, row.r[j]));
            q = R.sub(q, R.mul_scalar(row.q, c));
        }
        bool zero = true;
        size_t piv = 0;
        for (size_t j = 0; j < r.size(); ++j)
            if (!K.is_zero(r[j])) { zero = false; piv = j; break; }
        if (zero) {
            G.push_back(q);
            glms.push_back(t);
        } else {
            FieldElem inv = K.inv(r[piv]);
            for (auto& c : r) c = K.mul(c, inv);
            q = R.mul_scalar(q, inv);
            B.push_back({std::move(q), std::move(r), piv});
            for (int i = 0; i < n; ++i) {
                Expvec m = t;
                ++m[i];
                L.insert(std::move(m));
            }
        }
    }
    // make monic on the defining monomial and sort like a reduced basis
    std::vector<Poly> out;
    for (auto& g : G) out.push_back(R.monic(g));
    std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) {
        return grevlex_cmp(a.terms.front().e, b.terms.front().e) < 0;
    });
    return out;
}

/// Finite quotient ring R/I for zero-dimensional I over GF(q), with basis
/// product tables for exhaustive element enumeration.
class QuotientRing {
public:
    QuotientRing(Ideal I) : I_(std::move(I)), basis_(staircase(I_)) {
        const Ring& R = I_.ring();
        const Field& K = R.field();
        size_t D = basis_.size();
        table_.resize(D * D);
        for (size_t i = 0; i < D; ++i)
            for (size_t j = i; j < D; ++j) {
                Poly prod = R.monomial(exp_mul(basis_[i], basis_[j]), K.one());
                auto v = nf_coordinates(prod, I_, basis_);
                table_[i * D + j] = v;
                table_[j * D + i] = std::move(v);
            }
    }

    const Ideal& ideal() const { return I_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<Expvec>& basis() const { return basis_; }

    /// Number of elements over GF(q); throws over the rationals.
    int64_t count() const {
        const Field& K = I_.ring().field();
        if (!K.is_finite()) throw error("quotient over the rationals is infinite");
        int64_t c = 1;
        for (size_t i = 0; i < dim(); ++i) {
            c *= K.size();
            if (c > (int64_t(1) << 40)) throw error("quotient too large to enumerate");
        }
        return c;
    }

    std::vector<FieldElem> element(int64_t code) const {
        const Field& K = I_.ring().field();
        std::vector<FieldElem> v(dim());
        for (size_t i = 0; i < dim(); ++i) {
            v[i] = K.from_code(code % K.size());
            code /= K.size();
        }
        return v;
    }

    std::vector<FieldElem> mul(const std::vector<FieldElem>& a,
                               const std::vector<FieldElem>& b) const {
        const Field& K = I_.ring().field();
        size_t D = dim();
        std::vector<FieldElem> r(D, K.zero());
        for (size_t i = 0; i < D; ++i) {
            if (K.is_zero(a[i])) continue;
            for (size_t j = 0; j < D; ++j) {
                if (K.is_zero(b[j])) continue;
                FieldElem c = K.mul(a[i], b[j]);
                const auto& row = table_[i * D + j];
                for (size_t k = 0; k < D; ++k)
                    r[k] = K.add(r[k], K.mul(c, row[k]));
            }
        }
        return r;
    }

    /// Invertibility of an element via the rank of its multiplication map.
    bool invertible(const std::vector<FieldElem>& a) const {
        const Field& K = I_.ring().field();
        size_t D = dim();
        // columns: a * basis_j
        std::vector<std::vector<FieldElem>> M(D, std::vector<FieldElem>(D, K.zero()));
        for (size_t j = 0; j < D; ++j)
            for (size_t i = 0; i < D; ++i) {
                if (K.is_zero(a[i])) continue;
                const auto& row = table_[i * D + j];
                for (size_t k = 0; k < D; ++k)
                    M[k][j] = K.add(M[k][j], K.mul(a[i], row[k]));
            }
        // Gaussian elimination
        size_t rank = 0;
        for (size_t col = 0; col < D && rank < D; ++col) {
            size_t piv = rank;
            while (piv < D && K.is_zero(M[piv][col])) ++piv;
            if (piv == D) continue;
            std::swap(M[piv], M[rank]);
            FieldElem inv = K.inv(M[rank][col]);
            for (size_t j = 0; j < D; ++j) M[rank][j] = K.mul(M[rank][j], inv);
            for (size_t r = 0; r < D; ++r) {
                if (r == rank || K.is_zero(M[r][col])) continue;
                FieldElem c = M[r][col];
                for (size_t j = 0; j < D; ++j)
                    M[r][j] = K.sub(M[r][j], K.mul(c, M[rank][j]));
            }
            ++rank;
        }
        return rank == D;
    }

private:
    Ideal I_;
    std::vector<Expvec> basis_;
    std::vector<std::vector<FieldElem>> table_;
};

} // namespace dak
