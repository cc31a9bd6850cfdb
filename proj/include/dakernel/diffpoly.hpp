#pragma once

/// The difference polynomial ring A{y_1,...,y_n} = A[Sigma Y] over a
/// pseudofield A. A variable is a pair (i, tau) standing for tau(y_i); the
/// group acts on coefficients through the pseudofield action and on
/// variables by left translation of the shift.

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dakernel/common.hpp"
#include "dakernel/group.hpp"
#include "dakernel/pseudofield.hpp"

namespace dak {

/// tau(y_i), encoded for sorting as var-major, shift-minor.
struct DiffVar {
    int var = 0;   // 0-based variable index
    int shift = 0; // group element index

    bool operator==(const DiffVar& o) const { return var == o.var && shift == o.shift; }
    bool operator<(const DiffVar& o) const {
        return var != o.var ? var < o.var : shift < o.shift;
    }
};

/// Monomial: strictly increasing DiffVars with positive exponents.
struct DiffMono {
    std::vector<std::pair<DiffVar, int>> factors;

    bool operator==(const DiffMono& o) const { return factors == o.factors; }
    bool operator<(const DiffMono& o) const {
        // graded, then lexicographic on the factor list; only used as a
        // deterministic container key
        int da = 0, db = 0;
        for (auto& [v, e] : factors) da += e;
        for (auto& [v, e] : o.factors) db += e;
        if (da != db) return da < db;
        return factors < o.factors;
    }
    int degree() const {
        int d = 0;
        for (auto& [v, e] : factors) d += e;
        return d;
    }
};

class DiffRing {
public:
    DiffRing() = default;
    DiffRing(Pseudofield A, int n, std::vector<std::string> names = {}) {
        if (n < 0) throw error("variable count must be >= 0");
        auto d = std::make_shared<Data>();
        d->A = std::move(A);
        d->n = n;
        if (names.empty())
            for (int i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
        if (static_cast<int>(names.size()) != n)
            throw error("need one name per difference variable");
        d->names = std::move(names);
        d_ = std::move(d);
    }

    const Pseudofield& coeffs() const { return d_->A; }
    const Group& grp() const { return d_->A.grp(); }
    int nvars() const { return d_->n; }
    const std::string& var_name(int i) const { return d_->names.at(i); }
    int var_index(const std::string& s) const {
        for (int i = 0; i < d_->n; ++i)
            if (d_->names[i] == s) return i;
        return -1;
    }
    bool same(const DiffRing& o) const { return d_ == o.d_; }
    bool valid() const { return d_ != nullptr; }

private:
    struct Data {
        Pseudofield A;
        int n = 0;
        std::vector<std::string> names;
    };
    std::shared_ptr<const Data> d_;
};

inline DiffRing make_diff_ring(const Pseudofield& A, int n) { return DiffRing(A, n); }

/// A difference polynomial; terms keyed by monomial with nonzero
/// pseudofield coefficients, in a fixed deterministic order.
struct DiffPoly {
    DiffRing ring;
    std::map<DiffMono, PseudofieldElem> terms;

    bool is_zero() const { return terms.empty(); }
};

inline DiffPoly dp_zero(const DiffRing& R) { return {R, {}}; }

inline DiffPoly dp_constant(const DiffRing& R, const PseudofieldElem& c) {
    DiffPoly p{R, {}};
    if (!R.coeffs().is_zero(c)) p.terms.emplace(DiffMono{}, c);
    return p;
}

inline DiffPoly dp_scalar(const DiffRing& R, const FieldElem& c) {
    return dp_constant(R, R.coeffs().constant(c));
}

inline DiffPoly dp_one(const DiffRing& R) { return dp_constant(R, R.coeffs().one()); }

inline DiffPoly dp_var(const DiffRing& R, int var, int shift = 0) {
    if (var < 0 || var >= R.nvars()) throw error("difference variable out of range");
    if (shift < 0 || shift >= R.grp().order()) throw error("shift out of range");
    DiffPoly p{R, {}};
    DiffMono m;
    m.factors.push_back({{var, shift}, 1});
    p.terms.emplace(std::move(m), R.coeffs().one());
    return p;
}

inline void dp_add_term(DiffPoly& p, const DiffMono& m, const PseudofieldElem& c) {
    const Pseudofield& A = p.ring.coeffs();
    auto it = p.terms.find(m);
    if (it == p.terms.end()) {
        if (!A.is_zero(c)) p.terms.emplace(m, c);
    } else {
        it->second = A.add(it->second, c);
        if (A.is_zero(it->second)) p.terms.erase(it);
    }
}

inline DiffPoly dp_add(const DiffPoly& a, const DiffPoly& b) {
    if (!a.ring.same(b.ring)) throw error("difference polynomials from different rings");
    DiffPoly r = a;
    for (auto& [m, c] : b.terms) dp_add_term(r, m, c);
    return r;
}

inline DiffPoly dp_neg(const DiffPoly& a) {
    DiffPoly r = a;
    for (auto& [m, c] : r.terms) c = a.ring.coeffs().neg(c);
    return r;
}

inline DiffPoly dp_sub(const DiffPoly& a, const DiffPoly& b) {
    return dp_add(a, dp_neg(b));
}

inline DiffMono mono_mul(const DiffMono& a, const DiffMono& b) {
    DiffMono r;
    size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (i == a.factors.size()) { r.factors.push_back(b.factors[j++]); continue; }
        if (j == b.factors.size()) { r.factors.push_back(a.factors[i++]); continue; }
        if (a.factors[i].first == b.factors[j].first) {
            r.factors.push_back({a.factors[i].first,
                                 a.factors[i].second + b.factors[j].second});
            ++i; ++j;
        } else if (a.factors[i].first < b.factors[j].first) {
            r.factors.push_back(a.factors[i++]);
        } else {
            r.factors.push_back(b.factors[j++]);
        }
    }
    return r;
}

inline DiffPoly dp_mul(const DiffPoly& a, const DiffPoly& b) {
    if (!a.ring.same(b.ring)) throw error("difference polynomials from different rings");
    const Pseudofield& A = a.ring.coeffs();
    DiffPoly r{a.ring, {}};
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms)
            dp_add_term(r, mono_mul(ma, mb), A.mul(ca, cb));
    return r;
}

inline DiffPoly dp_mul_scalar(const DiffPoly& a, const PseudofieldElem& c) {
    const Pseudofield& A = a.ring.coeffs();
    DiffPoly r{a.ring, {}};
    for (auto& [m, cc] : a.terms) {
        PseudofieldElem p = A.mul(cc, c);
        if (!A.is_zero(p)) r.terms.emplace(m, p);
    }
    return r;
}

inline DiffPoly dp_pow(const DiffPoly& a, int e) {
    if (e < 0) throw error("negative polynomial power");
    DiffPoly r = dp_one(a.ring);
    for (int i = 0; i < e; ++i) r = dp_mul(r, a);
    return r;
}

inline bool dp_eq(const DiffPoly& a, const DiffPoly& b) {
    return dp_sub(a, b).is_zero();
}

/// The action of sigma: coefficients through the pseudofield, variables by
/// tau(y_i) -> (sigma tau)(y_i).
inline DiffPoly act_poly(int sigma, const DiffPoly& f) {
    const Pseudofield& A = f.ring.coeffs();
    const Group& G = f.ring.grp();
    DiffPoly r{f.ring, {}};
    for (auto& [m, c] : f.terms) {
        DiffMono im;
        im.factors.reserve(m.factors.size());
        for (auto& [v, e] : m.factors)
            im.factors.push_back({{v.var, G.compose(sigma, v.shift)}, e});
        std::sort(im.factors.begin(), im.factors.end(),
                  [](auto& x, auto& y) { return x.first < y.first; });
        dp_add_term(r, im, A.sigma_act(sigma, c));
    }
    return r;
}

inline DiffPoly act_poly(const GroupElem& s, const DiffPoly& f) {
    if (!s.grp.same(f.ring.grp())) throw error("group element from another group");
    return act_poly(s.index, f);
}

inline bool is_sigma_constant(const DiffPoly& f) {
    for (int s = 1; s < f.ring.grp().order(); ++s)
        if (!dp_eq(act_poly(s, f), f)) return false;
    return true;
}

/// Evaluation at a point of A^n: the substitution difference homomorphism
/// y_i -> a_i, so tau(y_i) evaluates to tau . a_i.
inline PseudofieldElem eval_poly(const DiffPoly& f,
                                 const std::vector<PseudofieldElem>& a) {
    const Pseudofield& A = f.ring.coeffs();
    if (static_cast<int>(a.size()) != f.ring.nvars())
        throw error("point dimension mismatch");
    int m = A.grp().order();
    // shifted coordinates tau . a_i, computed once
    std::vector<std::vector<PseudofieldElem>> shifted(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        shifted[i].reserve(m);
        for (int t = 0; t < m; ++t) shifted[i].push_back(A.sigma_act(t, a[i]));
    }
    PseudofieldElem out = A.zero();
    for (auto& [mono, c] : f.terms) {
        PseudofieldElem v = c;
        for (auto& [dv, e] : mono.factors)
            for (int k = 0; k < e; ++k) v = A.mul(v, shifted[dv.var][dv.shift]);
        out = A.add(out, v);
    }
    return out;
}

/// Canonical text form; parses back under the session grammar.
inline std::string dp_to_string(const DiffPoly& f) {
    if (f.is_zero()) return "0";
    const Pseudofield& A = f.ring.coeffs();
    const Group& G = f.ring.grp();
    std::string s;
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!s.empty()) s += " + ";
        std::string cs;
        bool is_one = false;
        if (A.is_constant(c)) {
            cs = A.base().to_string(c.coords[0]);
            if (cs == "1") is_one = true;
            if (cs.find_first_of("+-") != std::string::npos &&
                cs.find_first_of("+-", 1) != std::string::npos)
                cs = "(" + cs + ")";
            else if (cs.find('w') != std::string::npos || cs.find('/') != std::string::npos)
                cs = "(" + cs + ")";
        } else {
            cs = A.to_string(c);
        }
        std::string ms;
        for (auto& [v, e] : m.factors) {
            if (!ms.empty()) ms += "*";
            std::string vs = f.ring.var_name(v.var);
            if (v.shift != 0) vs = G.name(v.shift) + "(" + vs + ")";
            ms += vs;
            if (e > 1) ms += "^" + std::to_string(e);
        }
        if (ms.empty()) s += cs;
        else if (is_one) s += ms;
        else s += cs + "*" + ms;
    }
    return s;
}

} // namespace dak
