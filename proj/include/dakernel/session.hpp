#pragma once

/// Batch session files and command execution. A session declares one group,
/// one field, optionally a pseudofield, difference variables, and a list of
/// equations. Statements are separated by newlines or by " / " (a slash
/// surrounded by whitespace, so rational literals like 2/3 stay intact).
///
///   group cyclic 2
///   field gf 5
///   vars x
///   eq x + s(x)
///   eq x^2 - 4
///
/// Commands run against the session's equation ideal and print one
/// deterministic JSON report each.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dakernel/adjoint.hpp"
#include "dakernel/coeff.hpp"
#include "dakernel/common.hpp"
#include "dakernel/diffideal.hpp"
#include "dakernel/diffpoly.hpp"
#include "dakernel/finitering.hpp"
#include "dakernel/group.hpp"
#include "dakernel/groebner.hpp"
#include "dakernel/pseudofield.hpp"
#include "dakernel/variety.hpp"

namespace dak {

using json = nlohmann::ordered_json;

struct Session {
    Group group;
    Field field;
    Pseudofield pf;
    DiffRing ring;
    std::vector<DiffPoly> equations;
    std::map<std::string, std::vector<DiffPoly>> named_ideals;

    bool has_group = false, has_field = false, has_pf = false, has_ring = false;

    DiffIdeal ideal() const {
        if (!has_ring) throw error("session declares no variables");
        return DiffIdeal(ring, equations);
    }
};

namespace parse {

// ---- integer polynomial literals (moduli, lab ring specs) ----------------

inline gfpoly::Poly parse_intpoly(const std::string& s, char var) {
    gfpoly::Poly out;
    size_t i = 0;
    auto skip = [&] { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; };
    auto add_term = [&](int64_t c, int e) {
        if (static_cast<int>(out.size()) <= e) out.resize(e + 1, 0);
        out[e] += c;
    };
    skip();
    bool first = true;
    while (i < s.size()) {
        int64_t sign = 1;
        skip();
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw error("expected + or - in polynomial literal: " + s);
        }
        first = false;
        skip();
        int64_t coeff = 1;
        bool saw_coeff = false;
        if (i < s.size() && std::isdigit((unsigned char)s[i])) {
            coeff = 0;
            while (i < s.size() && std::isdigit((unsigned char)s[i]))
                coeff = coeff * 10 + (s[i++] - '0');
            saw_coeff = true;
        }
        skip();
        if (i < s.size() && s[i] == '*') { ++i; skip(); }
        int exp = 0;
        if (i < s.size() && s[i] == var) {
            ++i;
            exp = 1;
            skip();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip();
                if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
                    throw error("expected exponent in polynomial literal: " + s);
                exp = 0;
                while (i < s.size() && std::isdigit((unsigned char)s[i]))
                    exp = exp * 10 + (s[i++] - '0');
            }
        } else if (!saw_coeff) {
            throw error("expected coefficient or '" + std::string(1, var) +
                        "' in polynomial literal: " + s);
        }
        add_term(sign * coeff, exp);
        skip();
    }
    if (out.empty()) throw error("empty polynomial literal");
    return out;
}

// ---- expression tokenizer -------------------------------------------------

struct Token {
    enum class Kind { number, name, op, end } kind = Kind::end;
    std::string text;
    int64_t value = 0;
    int column = 0;
};

class Lexer {
public:
    Lexer(const std::string& s, int line) : s_(s), line_(line) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }
    bool at(const std::string& op) const {
        return tok_.kind == Token::Kind::op && tok_.text == op;
    }
    void expect(const std::string& op) {
        if (!at(op)) fail("expected '" + op + "'");
        advance();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(msg, line_, tok_.column + 1);
    }
    int line() const { return line_; }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
        tok_ = {};
        tok_.column = static_cast<int>(i_);
        if (i_ >= s_.size()) { tok_.kind = Token::Kind::end; return; }
        char c = s_[i_];
        if (std::isdigit((unsigned char)c)) {
            int64_t v = 0;
            while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_]))
                v = v * 10 + (s_[i_++] - '0');
            tok_.kind = Token::Kind::number;
            tok_.value = v;
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_' ||
                    s_[i_] == '@'))
                ++i_;
            tok_.kind = Token::Kind::name;
            tok_.text = s_.substr(start, i_ - start);
            return;
        }
        tok_.kind = Token::Kind::op;
        tok_.text = std::string(1, c);
        ++i_;
    }

    const std::string& s_;
    size_t i_ = 0;
    int line_;
    Token tok_;
};

// ---- difference polynomial expressions ------------------------------------

class DiffExprParser {
public:
    DiffExprParser(const DiffRing& R, Lexer& lex) : R_(R), lex_(lex) {}

    DiffPoly parse() {
        DiffPoly p = expr();
        if (lex_.peek().kind != Token::Kind::end) lex_.fail("trailing input");
        return p;
    }

private:
    const Pseudofield& A() const { return R_.coeffs(); }
    const Field& K() const { return A().base(); }

    DiffPoly expr() {
        bool negate = false;
        if (lex_.at("-")) { lex_.take(); negate = true; }
        DiffPoly p = term();
        if (negate) p = dp_neg(p);
        while (lex_.at("+") || lex_.at("-")) {
            bool minus = lex_.take().text == "-";
            DiffPoly q = term();
            p = minus ? dp_sub(p, q) : dp_add(p, q);
        }
        return p;
    }

    DiffPoly term() {
        DiffPoly p = factor();
        while (lex_.at("*") || lex_.at("/")) {
            bool div = lex_.take().text == "/";
            DiffPoly q = factor();
            if (div) {
                FieldElem c = scalar_of(q);
                if (K().is_zero(c)) lex_.fail("division by zero");
                p = dp_mul_scalar(p, A().constant(K().inv(c)));
            } else {
                p = dp_mul(p, q);
            }
        }
        return p;
    }

    DiffPoly factor() {
        DiffPoly p = atom();
        while (lex_.at("^")) {
            lex_.take();
            bool neg = false;
            if (lex_.at("-")) { lex_.take(); neg = true; }
            if (lex_.peek().kind != Token::Kind::number) lex_.fail("expected exponent");
            int e = static_cast<int>(lex_.take().value);
            if (neg) lex_.fail("negative exponents are not supported");
            p = dp_pow(p, e);
        }
        return p;
    }

    DiffPoly atom() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::number) {
            int64_t v = lex_.take().value;
            return dp_scalar(R_, K().from_int(v));
        }
        if (t.kind == Token::Kind::name) {
            std::string name = lex_.take().text;
            if (name == "w" && K().is_finite() && K().k() > 1 && !lex_.at("("))
                return dp_scalar(R_, K().generator());
            int var = R_.var_index(name);
            if (var >= 0) return dp_var(R_, var, 0);
            int g = R_.grp().element_by_name(name);
            if (g >= 0 && lex_.at("(")) {
                lex_.expect("(");
                DiffPoly inner = expr();
                lex_.expect(")");
                return act_poly(g, inner);
            }
            lex_.fail("undeclared variable '" + name + "'");
        }
        if (t.text == "(") {
            lex_.take();
            DiffPoly first = expr();
            if (lex_.at(",")) {
                // a coordinate tuple (c_1, ..., c_m)
                std::vector<FieldElem> coords;
                coords.push_back(scalar_of(first));
                while (lex_.at(",")) {
                    lex_.take();
                    coords.push_back(scalar_of(expr()));
                }
                lex_.expect(")");
                if (static_cast<int>(coords.size()) != A().factors())
                    lex_.fail("tuple needs " + std::to_string(A().factors()) +
                              " coordinates");
                return dp_constant(R_, A().from_coords(std::move(coords)));
            }
            lex_.expect(")");
            return first;
        }
        lex_.fail("unexpected token '" + t.text + "'");
    }

    FieldElem scalar_of(const DiffPoly& p) {
        if (p.is_zero()) return K().zero();
        if (p.terms.size() != 1 || !p.terms.begin()->first.factors.empty())
            lex_.fail("expected a scalar constant");
        const PseudofieldElem& c = p.terms.begin()->second;
        if (!A().is_constant(c)) lex_.fail("expected a scalar constant");
        return c.coords[0];
    }

    const DiffRing& R_;
    Lexer& lex_;
};

inline DiffPoly parse_diff_poly(const DiffRing& R, const std::string& text,
                                int line = 0) {
    Lexer lex(text, line);
    return DiffExprParser(R, lex).parse();
}

// ---- adjoint (ordinary) polynomial expressions -----------------------------

class AdjExprParser {
public:
    AdjExprParser(const Ring& R, Lexer& lex) : R_(R), lex_(lex) {}

    Poly parse() {
        Poly p = expr();
        if (lex_.peek().kind != Token::Kind::end) lex_.fail("trailing input");
        return p;
    }

private:
    const Field& K() const { return R_.field(); }

    Poly expr() {
        bool negate = false;
        if (lex_.at("-")) { lex_.take(); negate = true; }
        Poly p = term();
        if (negate) p = R_.neg(p);
        while (lex_.at("+") || lex_.at("-")) {
            bool minus = lex_.take().text == "-";
            Poly q = term();
            p = minus ? R_.sub(p, q) : R_.add(p, q);
        }
        return p;
    }

    Poly term() {
        Poly p = factor();
        while (lex_.at("*") || lex_.at("/")) {
            bool div = lex_.take().text == "/";
            Poly q = factor();
            if (div) {
                if (q.terms.size() != 1 || total_degree(q.terms.front().e) != 0)
                    lex_.fail("expected a scalar divisor");
                p = R_.mul_scalar(p, K().inv(q.terms.front().c));
            } else {
                p = R_.mul(p, q);
            }
        }
        return p;
    }

    Poly factor() {
        Poly p = atom();
        while (lex_.at("^")) {
            lex_.take();
            if (lex_.peek().kind != Token::Kind::number) lex_.fail("expected exponent");
            p = R_.pow(p, static_cast<int>(lex_.take().value));
        }
        return p;
    }

    Poly atom() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::number)
            return R_.constant(K().from_int(lex_.take().value));
        if (t.kind == Token::Kind::name) {
            std::string name = lex_.take().text;
            if (name == "w" && K().is_finite() && K().k() > 1)
                return R_.constant(K().generator());
            int var = R_.var_index(name);
            if (var < 0) lex_.fail("unknown variable '" + name + "'");
            return R_.variable(var);
        }
        if (t.text == "(") {
            lex_.take();
            Poly p = expr();
            lex_.expect(")");
            return p;
        }
        lex_.fail("unexpected token '" + t.text + "'");
    }

    const Ring& R_;
    Lexer& lex_;
};

inline Poly parse_adjoint_poly(const Ring& R, const std::string& text, int line = 0) {
    Lexer lex(text, line);
    return AdjExprParser(R, lex).parse();
}

/// A field element literal: integer, fraction, or polynomial in w.
inline FieldElem parse_field_elem(const Field& K, const std::string& text, int line = 0) {
    Ring scratch(K, {});
    Poly p = parse_adjoint_poly(scratch, text, line);
    if (p.is_zero()) return K.zero();
    return p.terms.front().c;
}

// ---- statement splitting ---------------------------------------------------

struct Statement {
    std::string text;
    int line;
};

inline std::vector<Statement> split_statements(const std::string& text) {
    std::vector<Statement> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        // split on " / " (slash with whitespace on both sides)
        std::vector<std::string> parts;
        size_t start = 0;
        for (size_t i = 0; i + 1 < line.size(); ++i) {
            if (line[i] != '/') continue;
            bool ws_before = i > 0 && std::isspace((unsigned char)line[i - 1]);
            bool ws_after = std::isspace((unsigned char)line[i + 1]);
            if (ws_before && ws_after) {
                parts.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        parts.push_back(line.substr(start));
        for (auto& p : parts) {
            size_t b = p.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            size_t e = p.find_last_not_of(" \t\r");
            out.push_back({p.substr(b, e - b + 1), lineno});
        }
    }
    return out;
}

inline std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

} // namespace parse

// ---- session parsing --------------------------------------------------------

namespace detail {

inline void finish_pseudofield(Session& s, int line) {
    if (s.has_pf) return;
    if (!s.has_group) throw parse_error("no group declared", line, 1);
    if (!s.has_field) throw parse_error("no field declared", line, 1);
    s.pf = Pseudofield::fun_of(s.field, s.group);
    s.has_pf = true;
}

// perm cycles like "(0 1)(2 3)" -> image list
inline std::vector<int> parse_cycles(const std::string& text, int m, int line) {
    std::vector<int> img(m);
    for (int i = 0; i < m; ++i) img[i] = i;
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    skip();
    while (i < text.size()) {
        if (text[i] != '(') throw parse_error("expected '(' in permutation", line, 1);
        ++i;
        std::vector<int> cyc;
        skip();
        while (i < text.size() && text[i] != ')') {
            if (!std::isdigit((unsigned char)text[i]))
                throw parse_error("expected factor index in permutation", line, 1);
            int v = 0;
            while (i < text.size() && std::isdigit((unsigned char)text[i]))
                v = v * 10 + (text[i++] - '0');
            if (v < 0 || v >= m)
                throw parse_error("factor index out of range in permutation", line, 1);
            cyc.push_back(v);
            skip();
            if (i < text.size() && text[i] == ',') { ++i; skip(); }
        }
        if (i >= text.size()) throw parse_error("unterminated cycle", line, 1);
        ++i; // ')'
        for (size_t k = 0; k < cyc.size(); ++k)
            img[cyc[k]] = cyc[(k + 1) % cyc.size()];
        skip();
    }
    return img;
}

inline int parse_auto_word(const std::string& w, int line) {
    if (w == "id") return 0;
    if (w == "frob") return 1;
    if (w.rfind("frob", 0) == 0) {
        try {
            return std::stoi(w.substr(4));
        } catch (...) {
        }
    }
    throw parse_error("unknown automorphism '" + w + "' (use id, frob, frobN)",
                      line, 1);
}

inline void parse_pseudofield_product(Session& s, const std::string& rest, int line) {
    // m=2 perm s=(0 1) autos s=frob,frob
    int m = -1;
    std::map<int, std::vector<int>> perms;
    std::map<int, std::vector<int>> autos;
    size_t i = 0;
    auto skip = [&] { while (i < rest.size() && std::isspace((unsigned char)rest[i])) ++i; };
    auto word = [&] {
        skip();
        size_t start = i;
        while (i < rest.size() && !std::isspace((unsigned char)rest[i]) &&
               rest[i] != '=')
            ++i;
        return rest.substr(start, i - start);
    };
    while (true) {
        skip();
        if (i >= rest.size()) break;
        std::string w = word();
        if (w.rfind("m", 0) == 0 && i < rest.size() && rest[i] == '=') {
            ++i;
            skip();
            m = 0;
            while (i < rest.size() && std::isdigit((unsigned char)rest[i]))
                m = m * 10 + (rest[i++] - '0');
        } else if (w == "perm" || w == "autos") {
            std::string elem = word();
            if (i >= rest.size() || rest[i] != '=')
                throw parse_error("expected '=' after element name", line, 1);
            ++i;
            int g = s.group.element_by_name(elem);
            if (g < 0)
                throw parse_error("unknown group element '" + elem + "'", line, 1);
            if (w == "perm") {
                skip();
                size_t start = i;
                // consume a run of parenthesized cycles
                while (i < rest.size() && rest[i] == '(') {
                    while (i < rest.size() && rest[i] != ')') ++i;
                    if (i < rest.size()) ++i;
                    size_t save = i;
                    while (save < rest.size() && std::isspace((unsigned char)rest[save]))
                        ++save;
                    if (save >= rest.size() || rest[save] != '(') break;
                    i = save;
                }
                if (m <= 0) throw parse_error("declare m= before perm", line, 1);
                perms[g] = parse_cycles(rest.substr(start, i - start), m, line);
            } else {
                skip();
                size_t start = i;
                while (i < rest.size() && !std::isspace((unsigned char)rest[i])) ++i;
                std::string list = rest.substr(start, i - start);
                std::vector<int> exps;
                std::string cur;
                for (char c : list + ",") {
                    if (c == ',') {
                        if (!cur.empty()) exps.push_back(parse_auto_word(cur, line));
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
                autos[g] = std::move(exps);
            }
        } else {
            throw parse_error("unexpected '" + w + "' in pseudofield declaration",
                              line, 1);
        }
    }
    if (m <= 0) throw parse_error("pseudofield product needs m=<count>", line, 1);
    for (auto& [g, ex] : autos)
        if (static_cast<int>(ex.size()) != m)
            throw parse_error("autos list needs one entry per factor", line, 1);
    s.pf = Pseudofield::product_from_generators(s.field, s.group, m, perms, autos);
    s.has_pf = true;
}

} // namespace detail

/// Parse a session file. `base_dir` resolves relative paths (Cayley tables).
inline Session parse_session(const std::string& text, const std::string& base_dir = ".") {
    Session s;
    for (auto& st : parse::split_statements(text)) {
        auto ws = parse::words(st.text);
        if (ws.empty()) continue;
        const std::string& kw = ws[0];
        try {
            if (kw == "group") {
                if (s.has_group) throw error("only one group per session");
                if (ws.size() >= 3 && ws[1] == "cyclic") {
                    s.group = Group::cyclic(std::stoi(ws[2]));
                } else if (ws.size() >= 3 && ws[1] == "cayley") {
                    std::ifstream in(base_dir + "/" + ws[2]);
                    if (!in) throw error("cannot open Cayley table file " + ws[2]);
                    std::vector<std::vector<int>> rows;
                    std::string line;
                    while (std::getline(in, line)) {
                        std::istringstream ls(line);
                        std::vector<int> row;
                        int v;
                        while (ls >> v) row.push_back(v);
                        if (!row.empty()) rows.push_back(std::move(row));
                    }
                    s.group = Group::cayley(std::move(rows));
                } else {
                    throw error("usage: group cyclic <n> | group cayley <file>");
                }
                s.has_group = true;
            } else if (kw == "field") {
                if (s.has_field) throw error("only one field per session");
                if (ws.size() >= 2 && (ws[1] == "q" || ws[1] == "Q")) {
                    s.field = Field::rationals();
                } else if (ws.size() >= 3 && ws[1] == "gf") {
                    std::string spec = ws[2];
                    auto caret = spec.find('^');
                    int64_t p = std::stoll(spec.substr(0, caret));
                    int k = caret == std::string::npos
                                ? 1
                                : std::stoi(spec.substr(caret + 1));
                    if (ws.size() >= 5 && ws[3] == "modulus") {
                        std::string mod;
                        for (size_t i = 4; i < ws.size(); ++i) mod += ws[i];
                        s.field = Field::gf(p, k, parse::parse_intpoly(mod, 'w'));
                    } else if (k > 1) {
                        s.field = Field::gf_auto(p, k);
                    } else {
                        s.field = Field::gf(p);
                    }
                } else {
                    throw error("usage: field gf <p>[^k] [modulus <poly in w>] | field q");
                }
                s.has_field = true;
            } else if (kw == "pseudofield") {
                if (!s.has_group || !s.has_field)
                    throw error("declare group and field before the pseudofield");
                if (ws.size() >= 2 && ws[1] == "fun") {
                    s.pf = Pseudofield::fun_of(s.field, s.group);
                    s.has_pf = true;
                } else if (ws.size() >= 2 && ws[1] == "product") {
                    auto pos = st.text.find("product");
                    detail::parse_pseudofield_product(
                        s, st.text.substr(pos + 7), st.line);
                } else {
                    throw error("usage: pseudofield fun | pseudofield product ...");
                }
            } else if (kw == "vars") {
                if (s.has_ring) throw error("variables already declared");
                detail::finish_pseudofield(s, st.line);
                std::vector<std::string> names(ws.begin() + 1, ws.end());
                if (names.empty()) throw error("vars needs at least one name");
                for (auto& n : names) {
                    if (s.group.element_by_name(n) >= 0 || n == "w")
                        throw error("variable name '" + n + "' is reserved");
                }
                s.ring = DiffRing(s.pf, static_cast<int>(names.size()), names);
                s.has_ring = true;
            } else if (kw == "eq") {
                if (!s.has_ring) throw error("declare vars before equations");
                std::string rest = st.text.substr(2);
                s.equations.push_back(parse::parse_diff_poly(s.ring, rest, st.line));
            } else if (kw == "ideal") {
                if (!s.has_ring) throw error("declare vars before ideals");
                if (ws.size() < 3 || ws[2] != "=")
                    throw error("usage: ideal <name> = <expr>");
                auto eqpos = st.text.find('=');
                s.named_ideals[ws[1]].push_back(
                    parse::parse_diff_poly(s.ring, st.text.substr(eqpos + 1), st.line));
            } else {
                throw error("unknown declaration '" + kw + "'");
            }
        } catch (const parse_error&) {
            throw;
        } catch (const error& e) {
            throw parse_error(e.what(), st.line, 1);
        }
    }
    return s;
}

// ---- command execution --------------------------------------------------------

struct Command {
    std::string verb;
    std::vector<std::string> args;
    int ext = 1;
    std::string sigma = "e";
    int factor = 0;
    int phi_frob = 0;
};

namespace detail {

inline json field_value(const Field& K, const FieldElem& a) {
    if (K.is_finite() && K.k() == 1) return json(K.code(a));
    return json(K.to_string(a));
}

inline json point_json(const DiffRing& R, const std::vector<PseudofieldElem>& pt) {
    const Field& K = R.coeffs().base();
    json jp = json::array();
    for (auto& coord : pt) {
        json jc = json::array();
        for (auto& x : coord.coords) jc.push_back(field_value(K, x));
        jp.push_back(jc);
    }
    return jp;
}

inline json ideal_strings(const Ideal& I) {
    json out = json::array();
    for (auto& p : groebner_basis(I)) out.push_back(I.ring().to_string(p));
    return out;
}

inline json diff_gens_strings(const std::vector<DiffPoly>& gens) {
    std::vector<std::string> strs;
    for (auto& g : gens) strs.push_back(dp_to_string(g));
    std::sort(strs.begin(), strs.end());
    json out = json::array();
    for (auto& s : strs) out.push_back(s);
    return out;
}

inline FiniteDiffRing lab_ring_from_spec(const std::vector<std::string>& args) {
    if (args.empty()) throw error("lab verify needs a ring spec");
    if (args[0] == "product") {
        // product <q>[^k] <m> <perm image list, comma separated>
        if (args.size() < 4) throw error("usage: lab verify product <q> <m> <perm>");
        auto caret = args[1].find('^');
        int64_t p = std::stoll(args[1].substr(0, caret));
        int k = caret == std::string::npos ? 1 : std::stoi(args[1].substr(caret + 1));
        Field K = k == 1 ? Field::gf(p) : Field::gf_auto(p, k);
        int m = std::stoi(args[2]);
        std::vector<int> img;
        std::string cur;
        for (char c : args[3] + ",") {
            if (c == ',') {
                if (!cur.empty()) img.push_back(std::stoi(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        return FiniteDiffRing::product(K, m, img);
    }
    if (args[0] == "quotient") {
        // quotient <p> <f in x> <u>
        if (args.size() < 4) throw error("usage: lab verify quotient <p> <f> <u>");
        int64_t p = std::stoll(args[1]);
        Field K = Field::gf(p);
        gfpoly::Poly f = parse::parse_intpoly(args[2], 'x');
        FieldElem u = K.from_int(std::stoll(args[3]));
        return FiniteDiffRing::quotient(K, f, u);
    }
    throw error("unknown lab ring spec '" + args[0] + "' (use all, product, quotient)");
}

inline json prop_report_json(const PropReport& rep) {
    json jr;
    jr["ring"] = rep.ring;
    jr["pass"] = rep.all_pass();
    json items = json::array();
    for (auto& it : rep.items) {
        json ji;
        ji["item"] = it.item;
        ji["pass"] = it.pass;
        if (!it.pass) ji["witness"] = it.witness;
        items.push_back(ji);
    }
    jr["items"] = items;
    return jr;
}

} // namespace detail

/// Run one command against a session; returns the JSON report. Library
/// errors escape as dak::error for the caller to map onto exit codes.
inline json execute(const Session& s, const Command& cmd,
                    const std::string& base_dir = ".") {
    json out;
    out["command"] = cmd.verb;

    auto require_ring = [&]() -> const DiffRing& {
        if (!s.has_ring) throw error("session declares no variables");
        return s.ring;
    };

    if (cmd.verb == "solve") {
        PointSet V = solve_points(s.ideal(), cmd.ext);
        out["status"] = "ok";
        out["extension"] = cmd.ext;
        json pts = json::array();
        for (auto& p : V.points) pts.push_back(detail::point_json(V.ring, p));
        out["result"] = pts;
    } else if (cmd.verb == "adjoint") {
        DiffIdeal a = s.ideal();
        const Ideal& J = to_adjoint(a);
        out["status"] = "ok";
        json vars = json::array();
        for (auto& v : J.ring().var_names()) vars.push_back(v);
        out["variables"] = vars;
        out["result"] = detail::ideal_strings(J);
    } else if (cmd.verb == "from-adjoint") {
        if (cmd.args.empty()) throw error("from-adjoint needs generators");
        const DiffRing& R = require_ring();
        Ring adj = adjoint_ring(R);
        std::vector<Poly> gens;
        std::string joined;
        for (auto& a : cmd.args) joined += (joined.empty() ? "" : " ") + a;
        std::string cur;
        for (char c : joined + ";") {
            if (c == ';') {
                if (cur.find_first_not_of(" \t") != std::string::npos)
                    gens.push_back(parse::parse_adjoint_poly(adj, cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        DiffIdeal D = from_adjoint(R, Ideal(adj, gens));
        out["status"] = "ok";
        out["result"] = detail::diff_gens_strings(D.gens());
        out["adjoint"] = detail::ideal_strings(to_adjoint(D));
    } else if (cmd.verb == "dim") {
        out["status"] = "ok";
        out["result"] = krull_dimension(to_adjoint(s.ideal()));
    } else if (cmd.verb == "pseudoprime") {
        out["status"] = "ok";
        out["result"] = is_pseudoprime(s.ideal());
    } else if (cmd.verb == "pseudomaximal") {
        out["status"] = "ok";
        out["result"] = is_pseudomaximal(s.ideal());
    } else if (cmd.verb == "radical") {
        DiffIdeal rad = diff_radical(s.ideal());
        out["status"] = "ok";
        out["result"] = detail::diff_gens_strings(rad.gens());
        out["adjoint"] = detail::ideal_strings(to_adjoint(rad));
    } else if (cmd.verb == "nss-check") {
        NssReport rep = nullstellensatz_check(s.ideal(), cmd.ext);
        out["status"] = "ok";
        out["result"] =
            rep.status == NssReport::Status::holds
                ? "holds"
                : rep.status == NssReport::Status::fails ? "fails" : "inconclusive";
        out["lhs"] = rep.lhs;
        out["rhs"] = rep.rhs;
        out["closure_degree"] = rep.closure_degree;
        out["points_found"] = rep.points_found;
        if (!rep.detail.empty()) out["detail"] = rep.detail;
    } else if (cmd.verb == "glue") {
        if (cmd.args.empty()) throw error("glue needs a patch file");
        const DiffRing& R = require_ring();
        std::ifstream in(base_dir + "/" + cmd.args[0]);
        if (!in) throw error("cannot open patch file " + cmd.args[0]);
        std::vector<RegularPatch> patches;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line = line.substr(0, hash);
            auto ws = parse::words(line);
            if (ws.empty()) continue;
            if (ws[0] != "patch") throw error("patch file lines start with 'patch'");
            auto semi = line.find(';');
            if (semi == std::string::npos)
                throw error("patch line needs '<g> ; <h>'");
            std::string g = line.substr(line.find("patch") + 5,
                                        semi - line.find("patch") - 5);
            std::string h = line.substr(semi + 1);
            patches.push_back({parse::parse_diff_poly(R, g, lineno),
                               parse::parse_diff_poly(R, h, lineno)});
        }
        DiffPoly d = glue_regular(patches, s.ideal());
        out["status"] = "ok";
        out["result"] = dp_to_string(d);
    } else if (cmd.verb == "ideal-of-points") {
        if (cmd.args.empty()) throw error("ideal-of-points needs a points file");
        const DiffRing& R = require_ring();
        std::ifstream in(base_dir + "/" + cmd.args[0]);
        if (!in) throw error("cannot open points file " + cmd.args[0]);
        PointSet X{R, {}};
        const Pseudofield& A = R.coeffs();
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line = line.substr(0, hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            // n whitespace-separated coordinate tuples
            std::vector<PseudofieldElem> pt;
            size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && std::isspace((unsigned char)line[i])) ++i;
                if (i >= line.size()) break;
                if (line[i] != '(')
                    throw parse_error("expected '(' in point", lineno, (int)i + 1);
                size_t close = line.find(')', i);
                if (close == std::string::npos)
                    throw parse_error("unterminated tuple", lineno, (int)i + 1);
                std::string tuple = line.substr(i + 1, close - i - 1);
                std::vector<FieldElem> coords;
                std::string cur;
                for (char c : tuple + ",") {
                    if (c == ',') {
                        coords.push_back(parse::parse_field_elem(A.base(), cur, lineno));
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
                if (static_cast<int>(coords.size()) != A.factors())
                    throw parse_error("tuple arity mismatch", lineno, (int)i + 1);
                pt.push_back(A.from_coords(std::move(coords)));
                i = close + 1;
            }
            if (static_cast<int>(pt.size()) != R.nvars())
                throw parse_error("point needs one tuple per variable", lineno, 1);
            X.points.push_back(std::move(pt));
        }
        DiffIdeal I = ideal_of_points(X);
        out["status"] = "ok";
        out["result"] = detail::diff_gens_strings(I.gens());
        out["adjoint"] = detail::ideal_strings(to_adjoint(I));
    } else if (cmd.verb == "taylor") {
        if (!s.has_pf) throw error("session declares no pseudofield");
        int sigma = s.group.element_by_name(cmd.sigma);
        if (sigma < 0) throw error("unknown group element '" + cmd.sigma + "'");
        TaylorHom hom = taylor_hom(s.pf, cmd.factor, cmd.phi_frob, sigma);
        out["status"] = "ok";
        json table;
        for (int t = 0; t < s.group.order(); ++t) {
            json entry;
            entry["factor"] = hom.table.entry[t].first;
            entry["frobenius"] = hom.table.entry[t].second;
            table[s.group.name(t)] = entry;
        }
        out["result"] = table;
        out["isomorphism"] = hom.table.isomorphism;
    } else if (cmd.verb == "sigma-ideal") {
        auto gens = closure_gens(s.equations);
        out["status"] = "ok";
        out["result"] = detail::diff_gens_strings(gens);
    } else if (cmd.verb == "lab") {
        if (cmd.args.empty() || cmd.args[0] != "verify")
            throw error("usage: lab verify <all | product ... | quotient ...>");
        std::vector<std::string> rest(cmd.args.begin() + 1, cmd.args.end());
        json reports = json::array();
        bool all_pass = true;
        if (!rest.empty() && rest[0] == "all") {
            for (auto& ring : builtin_catalogue()) {
                auto rep = verify_pseudoprime_props(ring);
                all_pass &= rep.all_pass();
                reports.push_back(detail::prop_report_json(rep));
            }
        } else {
            auto ring = detail::lab_ring_from_spec(rest);
            auto rep = verify_pseudoprime_props(ring);
            all_pass &= rep.all_pass();
            reports.push_back(detail::prop_report_json(rep));
        }
        out["status"] = "ok";
        out["pass"] = all_pass;
        out["result"] = reports;
    } else {
        throw error("unknown command '" + cmd.verb + "'");
    }
    return out;
}

} // namespace dak
