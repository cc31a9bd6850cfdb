#pragma once

/// Finite groups given by Cayley tables. Element 0 is always the identity;
/// every construction validates the Latin-square and associativity laws.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dakernel/common.hpp"

namespace dak {

class Group {
public:
    static constexpr int kMaxOrder = 64;

    Group() = default;

    /// Cyclic group of order n with elements named e, s, s2, ..., s{n-1}.
    static Group cyclic(int n) {
        if (n < 1) throw error("cyclic group order must be >= 1");
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
        std::vector<std::string> names(n);
        for (int i = 0; i < n; ++i)
            names[i] = i == 0 ? "e" : (i == 1 ? "s" : "s" + std::to_string(i));
        return Group(std::move(t), std::move(names));
    }

    /// Group from an explicit Cayley table (table[i][j] = i*j). Index 0 must
    /// be the identity. Elements are named e, g1, g2, ... unless names given.
    static Group cayley(std::vector<std::vector<int>> table,
                        std::vector<std::string> names = {}) {
        int n = static_cast<int>(table.size());
        if (names.empty()) {
            names.resize(n);
            for (int i = 0; i < n; ++i)
                names[i] = i == 0 ? "e" : "g" + std::to_string(i);
        }
        return Group(std::move(table), std::move(names));
    }

    /// Direct product; element (a,b) has index a*|H| + b.
    static Group direct_product(const Group& g, const Group& h) {
        int n = g.order(), m = h.order();
        std::vector<std::vector<int>> t(n * m, std::vector<int>(n * m));
        std::vector<std::string> names(n * m);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < m; ++b) {
                names[a * m + b] = "(" + g.name(a) + "," + h.name(b) + ")";
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < m; ++d)
                        t[a * m + b][c * m + d] =
                            g.compose(a, c) * m + h.compose(b, d);
            }
        return Group(std::move(t), std::move(names));
    }

    int order() const { return d_->order; }
    const std::string& name(int i) const { return d_->names.at(i); }

    int compose(int g, int h) const {
        check_index(g);
        check_index(h);
        return d_->table[g][h];
    }

    int inverse(int g) const {
        check_index(g);
        return d_->inv[g];
    }

    int power(int g, int k) const {
        check_index(g);
        int r = 0;
        if (k < 0) { g = inverse(g); k = -k; }
        for (int i = 0; i < k; ++i) r = compose(r, g);
        return r;
    }

    /// The order of a single element.
    int element_order(int g) const {
        int r = g, n = 1;
        while (r != 0) { r = compose(r, g); ++n; }
        return n;
    }

    /// Index of the element with the given name, or -1.
    int element_by_name(const std::string& s) const {
        for (int i = 0; i < order(); ++i)
            if (d_->names[i] == s) return i;
        return -1;
    }

    bool same(const Group& o) const { return d_ == o.d_; }
    bool valid() const { return d_ != nullptr; }

private:
    struct Data {
        int order = 0;
        std::vector<std::vector<int>> table;
        std::vector<std::string> names;
        std::vector<int> inv;
    };

    Group(std::vector<std::vector<int>> table, std::vector<std::string> names) {
        auto d = std::make_shared<Data>();
        d->order = static_cast<int>(table.size());
        d->table = std::move(table);
        d->names = std::move(names);
        validate(*d);
        d->inv.assign(d->order, -1);
        for (int g = 0; g < d->order; ++g)
            for (int h = 0; h < d->order; ++h)
                if (d->table[g][h] == 0) d->inv[g] = h;
        d_ = std::move(d);
    }

    static void validate(const Data& d) {
        int n = d.order;
        if (n < 1) throw error("group must have at least one element");
        if (n > kMaxOrder)
            throw error("group order " + std::to_string(n) + " exceeds cap " +
                        std::to_string(kMaxOrder));
        if (static_cast<int>(d.names.size()) != n)
            throw error("group needs exactly one name per element");
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(d.table[i].size()) != n)
                throw error("Cayley table is not square");
            for (int j = 0; j < n; ++j) {
                int v = d.table[i][j];
                if (v < 0 || v >= n)
                    throw error("Cayley table entry out of range at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
        for (int j = 0; j < n; ++j) {
            if (d.table[0][j] != j)
                throw error("element 0 is not a left identity at column " +
                            std::to_string(j));
            if (d.table[j][0] != j)
                throw error("element 0 is not a right identity at row " +
                            std::to_string(j));
        }
        // Latin square: each row and column is a permutation.
        for (int i = 0; i < n; ++i) {
            std::vector<bool> row(n, false), col(n, false);
            for (int j = 0; j < n; ++j) {
                if (row[d.table[i][j]])
                    throw error("row " + std::to_string(i) +
                                " repeats element " + std::to_string(d.table[i][j]));
                row[d.table[i][j]] = true;
                if (col[d.table[j][i]])
                    throw error("column " + std::to_string(i) +
                                " repeats element " + std::to_string(d.table[j][i]));
                col[d.table[j][i]] = true;
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (d.table[d.table[a][b]][c] != d.table[a][d.table[b][c]])
                        throw error("associativity fails on triple (" +
                                    std::to_string(a) + "," + std::to_string(b) +
                                    "," + std::to_string(c) + ")");
    }

    void check_index(int g) const {
        if (!d_) throw error("uninitialized group");
        if (g < 0 || g >= d_->order)
            throw error("group element index " + std::to_string(g) +
                        " out of range");
    }

    std::shared_ptr<const Data> d_;
};

/// An element tied to its parent group.
struct GroupElem {
    Group grp;
    int index = 0;

    GroupElem() = default;
    GroupElem(Group g, int i) : grp(std::move(g)), index(i) {}
    bool is_identity() const { return index == 0; }
};

inline GroupElem identity(const Group& g) { return {g, 0}; }

inline GroupElem compose(const GroupElem& g, const GroupElem& h) {
    if (!g.grp.same(h.grp)) throw error("group elements have different parents");
    return {g.grp, g.grp.compose(g.index, h.index)};
}

inline GroupElem inverse(const GroupElem& g) {
    return {g.grp, g.grp.inverse(g.index)};
}

/// Orbit of a point under the permutation action generated by the given
/// image lists, in discovery order.
inline std::vector<int> permutation_orbit(const std::vector<std::vector<int>>& perms,
                                          int start) {
    std::vector<int> orbit{start};
    std::vector<bool> seen(perms.empty() ? size_t(start + 1) : perms[0].size(), false);
    if (start >= static_cast<int>(seen.size())) seen.resize(start + 1, false);
    seen[start] = true;
    for (size_t i = 0; i < orbit.size(); ++i)
        for (auto& p : perms) {
            int next = p.at(orbit[i]);
            if (!seen[next]) {
                seen[next] = true;
                orbit.push_back(next);
            }
        }
    return orbit;
}

/// The cyclic subgroup generated by g, as indices e, g, g^2, ...
inline std::vector<int> cyclic_orbit(const Group& G, int g) {
    std::vector<int> out{0};
    int cur = g;
    while (cur != 0) {
        out.push_back(cur);
        cur = G.compose(cur, g);
    }
    return out;
}

} // namespace dak
