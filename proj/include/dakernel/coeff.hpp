#pragma once

/// Exact coefficient fields: the rationals, GF(p), and GF(p^k) presented by
/// an irreducible modulus over GF(p), with the Frobenius x -> x^p as the
/// distinguished automorphism of the finite fields. All arithmetic is exact;
/// there is no floating point anywhere in the kernel.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dakernel/common.hpp"

namespace dak {

using Rational = boost::multiprecision::cpp_rational;

namespace gfpoly {

// Little-endian coefficient vectors over GF(p). Used for extension-field
// residues and for modulus bookkeeping.
using Poly = std::vector<int64_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly add(const Poly& a, const Poly& b, int64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int64_t v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = v % p;
    }
    trim(r);
    return r;
}

inline Poly sub(const Poly& a, const Poly& b, int64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int64_t v = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        r[i] = ((v % p) + p) % p;
    }
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

inline int64_t inv_mod(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr != 0) {
        int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw error("not invertible mod p");
    return ((t % p) + p) % p;
}

// Remainder of a modulo b; b need not be monic.
inline Poly mod(Poly a, const Poly& b, int64_t p) {
    if (b.empty()) throw error("division by zero polynomial");
    int64_t lcinv = inv_mod(b.back(), p);
    while (deg(a) >= deg(b)) {
        int64_t c = (a.back() * lcinv) % p;
        int shift = deg(a) - deg(b);
        for (size_t i = 0; i < b.size(); ++i) {
            int64_t v = a[i + shift] - c * b[i];
            a[i + shift] = ((v % p) + p) % p;
        }
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline bool divides(const Poly& b, const Poly& a, int64_t p) {
    return mod(a, b, p).empty();
}

inline Poly monic(Poly a, int64_t p) {
    if (a.empty()) return a;
    int64_t c = inv_mod(a.back(), p);
    for (auto& x : a) x = (x * c) % p;
    return a;
}

inline Poly gcd(Poly a, Poly b, int64_t p) {
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

inline Poly derivative(const Poly& a, int64_t p) {
    Poly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back((int64_t(i) % p) * a[i] % p);
    trim(r);
    return r;
}

inline std::string to_string(const Poly& a, const std::string& var) {
    std::string s;
    for (int i = deg(a); i >= 0; --i) {
        if (a[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || a[i] != 1) s += std::to_string(a[i]);
        if (i >= 1) {
            s += var;
            if (i >= 2) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

} // namespace gfpoly

/// A field element. Plain data; all operations live on the owning Field.
/// Rationals use `rat`, finite fields use `cf` (length k, entries in [0,p)).
struct FieldElem {
    const void* owner = nullptr;
    Rational rat;
    std::vector<int64_t> cf;

    bool operator==(const FieldElem& o) const {
        return owner == o.owner && rat == o.rat && cf == o.cf;
    }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
};

struct FieldHom;

class Field {
public:
    static constexpr int64_t kMaxSize = 1 << 20;

    Field() = default;

    static Field rationals() {
        auto d = std::make_shared<Data>();
        d->kind = Kind::rationals;
        return Field(std::move(d));
    }

    static Field gf(int64_t p) {
        check_prime(p);
        auto d = std::make_shared<Data>();
        d->kind = Kind::finite;
        d->p = p;
        d->k = 1;
        d->q = p;
        d->modulus = {0, 1}; // the residue x, unused for k = 1
        return Field(std::move(d));
    }

    /// GF(p^k) presented by a monic irreducible modulus of degree k over
    /// GF(p). The modulus is verified irreducible by brute-force trial
    /// division; a reducible modulus raises an error naming a factor.
    static Field gf(int64_t p, int k, gfpoly::Poly modulus) {
        check_prime(p);
        if (k < 1) throw error("extension degree must be >= 1");
        if (k == 1) return gf(p);
        int64_t q = 1;
        for (int i = 0; i < k; ++i) {
            q *= p;
            if (q > kMaxSize) throw error("field size p^k exceeds 2^20");
        }
        for (auto& c : modulus) c = ((c % p) + p) % p;
        gfpoly::trim(modulus);
        if (gfpoly::deg(modulus) != k)
            throw error("modulus degree does not match extension degree");
        modulus = gfpoly::monic(modulus, p);
        if (auto f = find_factor(modulus, p); !f.empty())
            throw error("modulus " + gfpoly::to_string(modulus, "w") +
                        " is reducible: factor " + gfpoly::to_string(f, "w"));
        auto d = std::make_shared<Data>();
        d->kind = Kind::finite;
        d->p = p;
        d->k = k;
        d->q = q;
        d->modulus = std::move(modulus);
        return Field(std::move(d));
    }

    /// GF(p^k) with a deterministic modulus: the candidate x^k + (base-p
    /// digits of a counter) of least counter value that is irreducible.
    static Field gf_auto(int64_t p, int k) {
        if (k == 1) return gf(p);
        check_prime(p);
        for (int64_t counter = 0;; ++counter) {
            gfpoly::Poly f(k + 1, 0);
            f[k] = 1;
            int64_t c = counter;
            for (int i = 0; i < k && c > 0; ++i) { f[i] = c % p; c /= p; }
            if (c > 0) throw error("no irreducible modulus found"); // unreachable
            if (find_factor(f, p).empty()) return gf(p, k, f);
        }
    }

    bool valid() const { return d_ != nullptr; }
    bool is_rationals() const { return d_->kind == Kind::rationals; }
    bool is_finite() const { return d_->kind == Kind::finite; }
    int64_t p() const { return d_->p; }
    int k() const { return d_->k; }
    /// Number of elements; 0 for the rationals.
    int64_t size() const { return is_finite() ? d_->q : 0; }
    const gfpoly::Poly& modulus() const { return d_->modulus; }
    bool same(const Field& o) const { return d_ == o.d_; }

    FieldElem zero() const { return from_int(0); }
    FieldElem one() const { return from_int(1); }

    FieldElem from_int(int64_t v) const {
        FieldElem e;
        e.owner = d_.get();
        if (is_rationals()) {
            e.rat = v;
        } else {
            e.cf.assign(d_->k, 0);
            e.cf[0] = ((v % d_->p) + d_->p) % d_->p;
        }
        return e;
    }

    FieldElem from_rational(const Rational& r) const {
        if (!is_rationals()) throw error("rational literal in a finite field");
        FieldElem e;
        e.owner = d_.get();
        e.rat = r;
        return e;
    }

    /// Element with the given residue coefficients (little-endian in w).
    FieldElem from_coeffs(gfpoly::Poly c) const {
        require_finite();
        for (auto& x : c) x = ((x % d_->p) + d_->p) % d_->p;
        c = gfpoly::mod(std::move(c), d_->modulus, d_->p);
        c.resize(d_->k, 0);
        FieldElem e;
        e.owner = d_.get();
        e.cf = std::move(c);
        return e;
    }

    /// The canonical generator w of GF(p^k); equals 0 for k = 1 fields.
    FieldElem generator() const {
        require_finite();
        gfpoly::Poly c(d_->k, 0);
        if (d_->k > 1) c[1] = 1;
        FieldElem e;
        e.owner = d_.get();
        e.cf = std::move(c);
        return e;
    }

    bool is_zero(const FieldElem& a) const {
        check(a);
        if (is_rationals()) return a.rat == 0;
        for (auto c : a.cf)
            if (c != 0) return false;
        return true;
    }

    bool is_one(const FieldElem& a) const { return eq(a, one()); }
    bool eq(const FieldElem& a, const FieldElem& b) const {
        check(a);
        check(b);
        return a == b;
    }

    FieldElem add(const FieldElem& a, const FieldElem& b) const {
        check(a); check(b);
        FieldElem e;
        e.owner = d_.get();
        if (is_rationals()) { e.rat = a.rat + b.rat; return e; }
        e.cf.resize(d_->k);
        for (int i = 0; i < d_->k; ++i) e.cf[i] = (a.cf[i] + b.cf[i]) % d_->p;
        return e;
    }

    FieldElem sub(const FieldElem& a, const FieldElem& b) const {
        check(a); check(b);
        FieldElem e;
        e.owner = d_.get();
        if (is_rationals()) { e.rat = a.rat - b.rat; return e; }
        e.cf.resize(d_->k);
        for (int i = 0; i < d_->k; ++i)
            e.cf[i] = ((a.cf[i] - b.cf[i]) % d_->p + d_->p) % d_->p;
        return e;
    }

    FieldElem neg(const FieldElem& a) const { return sub(zero(), a); }

    FieldElem mul(const FieldElem& a, const FieldElem& b) const {
        check(a); check(b);
        FieldElem e;
        e.owner = d_.get();
        if (is_rationals()) { e.rat = a.rat * b.rat; return e; }
        if (d_->k == 1) {
            e.cf = {a.cf[0] * b.cf[0] % d_->p};
            return e;
        }
        auto prod = gfpoly::mul(a.cf, b.cf, d_->p);
        prod = gfpoly::mod(std::move(prod), d_->modulus, d_->p);
        prod.resize(d_->k, 0);
        e.cf = std::move(prod);
        return e;
    }

    /// Multiplicative inverse; division by zero raises an error.
    FieldElem inv(const FieldElem& a) const {
        check(a);
        if (is_zero(a)) throw error("division by zero");
        FieldElem e;
        e.owner = d_.get();
        if (is_rationals()) { e.rat = 1 / a.rat; return e; }
        if (d_->k == 1) {
            e.cf = {gfpoly::inv_mod(a.cf[0], d_->p)};
            return e;
        }
        // extended Euclid in GF(p)[x] against the modulus
        gfpoly::Poly r0 = d_->modulus, r1 = a.cf, t0 = {}, t1 = {1};
        gfpoly::trim(r1);
        while (!r1.empty()) {
            // r0 = q*r1 + r2
            gfpoly::Poly q;
            {
                gfpoly::Poly a0 = r0;
                int64_t lcinv = gfpoly::inv_mod(r1.back(), d_->p);
                q.assign(std::max<size_t>(1, a0.size()), 0);
                while (gfpoly::deg(a0) >= gfpoly::deg(r1)) {
                    int64_t c = a0.back() * lcinv % d_->p;
                    int shift = gfpoly::deg(a0) - gfpoly::deg(r1);
                    q[shift] = c;
                    for (size_t i = 0; i < r1.size(); ++i) {
                        int64_t v = a0[i + shift] - c * r1[i];
                        a0[i + shift] = ((v % d_->p) + d_->p) % d_->p;
                    }
                    gfpoly::trim(a0);
                    if (a0.empty()) break;
                }
                gfpoly::trim(q);
                r0 = std::move(a0);
            }
            std::swap(r0, r1);
            auto nt = gfpoly::sub(t0, gfpoly::mul(q, t1, d_->p), d_->p);
            t0 = std::move(t1);
            t1 = std::move(nt);
        }
        // r0 is the gcd (a unit since modulus is irreducible)
        int64_t c = gfpoly::inv_mod(r0.empty() ? 1 : r0.back(), d_->p);
        for (auto& x : t0) x = x * c % d_->p;
        t0.resize(d_->k, 0);
        e.cf = std::move(t0);
        return e;
    }

    FieldElem pow(const FieldElem& a, int64_t e) const {
        check(a);
        if (e < 0) return pow(inv(a), -e);
        FieldElem r = one(), b = a;
        while (e > 0) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    /// a^(p^j) on finite fields; the identity on the rationals and (as the
    /// map, not just pointwise) on prime fields.
    FieldElem frobenius(const FieldElem& a, int j) const {
        check(a);
        if (j < 0) throw error("frobenius exponent must be >= 0");
        if (is_rationals() || d_->k == 1) return a;
        j %= d_->k;
        int64_t e = 1;
        for (int i = 0; i < j; ++i) e *= d_->p;
        return pow(a, e);
    }

    /// Dense integer code in [0, q) for enumeration; finite fields only.
    int64_t code(const FieldElem& a) const {
        require_finite();
        check(a);
        int64_t c = 0;
        for (int i = d_->k - 1; i >= 0; --i) c = c * d_->p + a.cf[i];
        return c;
    }

    FieldElem from_code(int64_t c) const {
        require_finite();
        if (c < 0 || c >= d_->q) throw error("field element code out of range");
        FieldElem e;
        e.owner = d_.get();
        e.cf.resize(d_->k);
        for (int i = 0; i < d_->k; ++i) { e.cf[i] = c % d_->p; c /= d_->p; }
        return e;
    }

    std::string to_string(const FieldElem& a) const {
        check(a);
        if (is_rationals()) return a.rat.str();
        if (d_->k == 1) return std::to_string(a.cf[0]);
        return gfpoly::to_string(a.cf, "w");
    }

    /// GF(p^(k*d)) with a deterministic modulus.
    Field extension(int d) const {
        require_finite();
        if (d < 1) throw error("extension degree must be >= 1");
        if (d == 1) return *this;
        return gf_auto(d_->p, d_->k * d);
    }

    /// Embedding of this field into L = GF(p^(k*d)): sends the generator w
    /// to the least root (in code order) of the modulus inside L.
    FieldHom embed_into(const Field& L) const;

    const void* tag() const { return d_.get(); }

private:
    enum class Kind { rationals, finite };

    struct Data {
        Kind kind = Kind::rationals;
        int64_t p = 0;
        int k = 0;
        int64_t q = 0;
        gfpoly::Poly modulus;
    };

    explicit Field(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

    static void check_prime(int64_t p) {
        if (p < 2) throw error("characteristic must be a prime >= 2");
        if (p >= kMaxSize) throw error("characteristic exceeds 2^20");
        for (int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0)
                throw error(std::to_string(p) + " = " + std::to_string(d) +
                            "*" + std::to_string(p / d) + " is not prime");
    }

    // Smallest monic factor of degree in [1, deg/2], or empty if irreducible.
    static gfpoly::Poly find_factor(const gfpoly::Poly& f, int64_t p) {
        int n = gfpoly::deg(f);
        for (int d = 1; 2 * d <= n; ++d) {
            int64_t count = 1;
            for (int i = 0; i < d; ++i) count *= p;
            for (int64_t c = 0; c < count; ++c) {
                gfpoly::Poly g(d + 1, 0);
                g[d] = 1;
                int64_t v = c;
                for (int i = 0; i < d; ++i) { g[i] = v % p; v /= p; }
                if (gfpoly::divides(g, f, p)) return g;
            }
        }
        return {};
    }

    void require_finite() const {
        if (!is_finite()) throw error("operation requires a finite field");
    }

    void check(const FieldElem& a) const {
        if (a.owner != d_.get()) throw error("field element belongs to another field");
    }

    std::shared_ptr<const Data> d_;
};

/// An embedding of one finite field into an extension.
struct FieldHom {
    Field src, dst;
    FieldElem root; // image of the generator of src

    FieldElem map(const FieldElem& a) const {
        if (src.is_rationals() || dst.is_rationals())
            throw error("field embedding requires finite fields");
        FieldElem r = dst.zero();
        for (int i = src.k() - 1; i >= 0; --i)
            r = dst.add(dst.mul(r, root), dst.from_int(a.cf[i]));
        return r;
    }
};

inline FieldHom Field::embed_into(const Field& L) const {
    require_finite();
    if (!L.is_finite() || L.p() != d_->p || L.k() % d_->k != 0)
        throw error("no embedding: target is not an extension");
    if (d_->k == 1) return FieldHom{*this, L, L.zero()};
    if (L.same(*this)) return FieldHom{*this, L, generator()};
    for (int64_t c = 0; c < L.size(); ++c) {
        FieldElem x = L.from_code(c);
        // evaluate the modulus at x inside L
        FieldElem v = L.zero();
        for (int i = d_->k; i >= 0; --i)
            v = L.add(L.mul(v, x), L.from_int(d_->modulus[i]));
        if (L.is_zero(v)) return FieldHom{*this, L, x};
    }
    throw error("embedding root not found"); // impossible for true extensions
}

inline FieldElem field_inverse(const Field& f, const FieldElem& a) { return f.inv(a); }
inline FieldElem frobenius(const Field& f, const FieldElem& a, int j) {
    return f.frobenius(a, j);
}

/// Code-level arithmetic with lookup tables for enumeration-heavy loops.
/// Tables are built only for fields of size <= 1024.
class PackedField {
public:
    static constexpr int64_t kTableLimit = 1024;

    explicit PackedField(const Field& f) : f_(f), q_(f.size()) {
        if (!f.is_finite()) throw error("packed arithmetic requires a finite field");
        tables_ = q_ <= kTableLimit;
        if (tables_) {
            std::vector<FieldElem> elems(q_);
            for (int64_t i = 0; i < q_; ++i) elems[i] = f.from_code(i);
            addt_.resize(q_ * q_);
            mult_.resize(q_ * q_);
            for (int64_t a = 0; a < q_; ++a)
                for (int64_t b = 0; b < q_; ++b) {
                    addt_[a * q_ + b] = (int32_t)f.code(f.add(elems[a], elems[b]));
                    mult_[a * q_ + b] = (int32_t)f.code(f.mul(elems[a], elems[b]));
                }
            frob1_.resize(q_);
            negt_.resize(q_);
            for (int64_t a = 0; a < q_; ++a) {
                frob1_[a] = (int32_t)f.code(f.frobenius(elems[a], 1));
                negt_[a] = (int32_t)f.code(f.neg(elems[a]));
            }
        }
    }

    const Field& field() const { return f_; }
    int64_t size() const { return q_; }
    bool has_tables() const { return tables_; }

    int64_t add(int64_t a, int64_t b) const {
        if (tables_) return addt_[a * q_ + b];
        return f_.code(f_.add(f_.from_code(a), f_.from_code(b)));
    }
    int64_t mul(int64_t a, int64_t b) const {
        if (tables_) return mult_[a * q_ + b];
        return f_.code(f_.mul(f_.from_code(a), f_.from_code(b)));
    }
    int64_t neg(int64_t a) const {
        if (tables_) return negt_[a];
        return f_.code(f_.neg(f_.from_code(a)));
    }
    int64_t frob(int64_t a, int j) const {
        if (!tables_) return f_.code(f_.frobenius(f_.from_code(a), j));
        j %= f_.k();
        for (int i = 0; i < j; ++i) a = frob1_[a];
        return a;
    }
    int64_t pow(int64_t a, int e) const {
        int64_t r = f_.code(f_.one());
        for (int i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }

private:
    Field f_;
    int64_t q_;
    bool tables_;
    std::vector<int32_t> addt_, mult_, frob1_, negt_;
};

} // namespace dak
