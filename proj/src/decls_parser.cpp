#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gerbecalc/errors.hpp"
#include "gerbecalc/gluing.hpp"

namespace gerbecalc {

namespace {

// ----------------------------------------------------------------- tokens --

struct Token {
    enum Kind { kIdent, kInt, kSym, kEnd } kind = kEnd;
    std::string text;
    long long value = 0;
    int line = 0;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::vector<Token>> tokenize(const std::string& text) {
    std::vector<std::vector<Token>> lines;
    std::vector<Token> cur;
    int line = 1;
    std::size_t i = 0;
    auto flush = [&]() {
        if (!cur.empty()) {
            cur.push_back(Token{Token::kEnd, "", 0, line});
            lines.push_back(cur);
            cur.clear();
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            flush();
            ++line;
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            cur.push_back(Token{Token::kIdent, text.substr(i, j - i), 0, line});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            long long v = 0;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                v = v * 10 + (text[j] - '0');
                if (v > 1000000) fail(line, "integer literal too large");
                ++j;
            }
            cur.push_back(Token{Token::kInt, text.substr(i, j - i), v, line});
            i = j;
        } else if (std::strchr("(),*^=@-", c) != nullptr) {
            cur.push_back(Token{Token::kSym, std::string(1, c), 0, line});
            ++i;
        } else {
            fail(line, std::string("unexpected character '") + c + "'");
        }
    }
    flush();
    return lines;
}

struct Cursor {
    const std::vector<Token>* toks;
    std::size_t pos = 0;

    const Token& peek() const { return (*toks)[pos]; }
    int line() const { return peek().line; }
    bool at_end() const { return peek().kind == Token::kEnd; }
    const Token& take() { return (*toks)[pos++]; }

    bool take_sym(char c) {
        if (peek().kind == Token::kSym && peek().text[0] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect_sym(char c) {
        if (!take_sym(c))
            fail(line(), std::string("expected '") + c + "' before '" + peek().text + "'");
    }
    std::string expect_ident(const char* what) {
        if (peek().kind != Token::kIdent) fail(line(), std::string("expected ") + what);
        return take().text;
    }
    long long expect_int(const char* what) {
        if (peek().kind != Token::kInt) fail(line(), std::string("expected ") + what);
        return take().value;
    }
    void expect_end() {
        if (!at_end()) fail(line(), "unexpected trailing input '" + peek().text + "'");
    }
};

// ------------------------------------------------------------ expressions --

struct Atom {
    bool is_delta = false;
    std::string family;
    std::vector<std::string> args;
    int line = 0;
};

struct Factor {
    Atom atom;
    long long exp = 1;
};

using Expr = std::vector<Factor>;

std::vector<std::string> parse_var_args(Cursor& cur) {
    cur.expect_sym('(');
    std::vector<std::string> args;
    args.push_back(cur.expect_ident("an index variable"));
    while (cur.take_sym(',')) args.push_back(cur.expect_ident("an index variable"));
    cur.expect_sym(')');
    return args;
}

Atom parse_atom(Cursor& cur) {
    Atom a;
    a.line = cur.line();
    std::string head = cur.expect_ident("a generator or delta(...)");
    if (head == "delta") {
        cur.expect_sym('(');
        a.is_delta = true;
        a.family = cur.expect_ident("a generator inside delta(...)");
        if (a.family == "delta") fail(a.line, "nested delta is not a known relation shape");
        a.args = parse_var_args(cur);
        cur.expect_sym(')');
    } else {
        a.family = head;
        a.args = parse_var_args(cur);
    }
    return a;
}

long long parse_exponent(Cursor& cur) {
    if (!cur.take_sym('^')) return 1;
    bool neg = cur.take_sym('-');
    long long e = cur.expect_int("an exponent");
    if (e == 0) fail(cur.line(), "zero exponents are not allowed");
    return neg ? -e : e;
}

bool expr_boundary(const Cursor& cur) {
    return cur.at_end() || (cur.peek().kind == Token::kSym && cur.peek().text == "=");
}

Expr parse_expr(Cursor& cur) {
    if (cur.peek().kind == Token::kInt) {
        if (cur.take().value != 1) fail(cur.line(), "the only numeric factor is the unit 1");
        if (!expr_boundary(cur)) fail(cur.line(), "the unit 1 cannot be multiplied");
        return {};
    }
    Expr e;
    e.push_back(Factor{parse_atom(cur), 1});
    e.back().exp = parse_exponent(cur);
    while (cur.take_sym('*')) {
        e.push_back(Factor{parse_atom(cur), 1});
        e.back().exp = parse_exponent(cur);
    }
    return e;
}

// ------------------------------------------------------- roles & matching --

enum class Role { L, T, E, S, F, U };

int role_arity(Role r) {
    switch (r) {
        case Role::L:
        case Role::T: return 1;
        case Role::E:
        case Role::S: return 2;
        default: return 3;
    }
}

const char* role_word(Role r) {
    switch (r) {
        case Role::L: return "line-bundle family";
        case Role::T: return "gerbe-section family";
        case Role::E: return "pair bundle family";
        case Role::S: return "pair section family";
        case Role::F: return "triple bundle family";
        default: return "triple section family";
    }
}

bool role_signed(Role r) { return r != Role::L && r != Role::T; }

struct CanonAtom {
    Role role;
    bool is_delta;
    std::vector<int> args;

    auto operator<=>(const CanonAtom&) const = default;
};

using CanonExpr = std::map<CanonAtom, long long>;

void canon_add(CanonExpr& m, CanonAtom a, long long e) {
    auto it = m.find(a);
    if (it == m.end()) {
        m.emplace(std::move(a), e);
    } else {
        it->second += e;
        if (it->second == 0) m.erase(it);
    }
}

/// Canonicalizes one atom: looks up the family role, maps index variables to
/// positions, sorts antisymmetric and alternating index tuples, and returns
/// the sign it absorbed.
int canonicalize(const Atom& atom, const std::map<std::string, Role>& roles,
                 const std::map<std::string, int>& var_pos, CanonAtom& out) {
    auto rit = roles.find(atom.family);
    if (rit == roles.end()) fail(atom.line, "unknown family '" + atom.family + "'");
    Role role = rit->second;
    if (static_cast<int>(atom.args.size()) != role_arity(role))
        fail(atom.line, "'" + atom.family + "' takes " +
                            std::to_string(role_arity(role)) + " indices");
    std::vector<int> pos;
    for (const auto& v : atom.args) {
        auto vit = var_pos.find(v);
        if (vit == var_pos.end()) fail(atom.line, "unknown index variable '" + v + "'");
        pos.push_back(vit->second);
    }
    int sign = 1;
    if (role_signed(role)) {
        for (std::size_t a = 0; a + 1 < pos.size(); ++a)
            for (std::size_t b = 0; b + 1 < pos.size() - a; ++b)
                if (pos[b] > pos[b + 1]) {
                    std::swap(pos[b], pos[b + 1]);
                    sign = -sign;
                }
        for (std::size_t a = 0; a + 1 < pos.size(); ++a)
            if (pos[a] == pos[a + 1])
                fail(atom.line, "'" + atom.family + "' with a repeated index is trivial");
    } else if (pos.size() > 1) {
        fail(atom.line, "internal role arity mismatch");
    }
    out = CanonAtom{role, atom.is_delta, std::move(pos)};
    return sign;
}

CanonExpr canonicalize_expr(const Expr& e, const std::map<std::string, Role>& roles,
                            const std::map<std::string, int>& var_pos) {
    CanonExpr m;
    for (const auto& f : e) {
        CanonAtom a{Role::L, false, {}};
        int sign = canonicalize(f.atom, roles, var_pos, a);
        canon_add(m, std::move(a), sign * f.exp);
    }
    return m;
}

CanonExpr negate(const CanonExpr& m) {
    CanonExpr r;
    for (const auto& [a, e] : m) r.emplace(a, -e);
    return r;
}

struct Schema {
    const char* name;
    int vars;
    CanonExpr pattern;
};

CanonExpr make_pattern(std::initializer_list<std::pair<CanonAtom, long long>> items) {
    CanonExpr m;
    for (const auto& [a, e] : items) canon_add(m, a, e);
    return m;
}

const std::vector<Schema>& schemas() {
    static const std::vector<Schema> all = [] {
        std::vector<Schema> v;
        v.push_back({"f-definition", 3,
                     make_pattern({{{Role::F, false, {0, 1, 2}}, 1},
                                   {{Role::E, false, {0, 1}}, -1},
                                   {{Role::E, false, {1, 2}}, -1},
                                   {{Role::E, false, {0, 2}}, 1}})});
        v.push_back({"t-gerbe", 1, make_pattern({{{Role::T, true, {0}}, 1}})});
        v.push_back({"s-pseudo", 2,
                     make_pattern({{{Role::S, true, {0, 1}}, 1},
                                   {{Role::T, false, {1}}, -1},
                                   {{Role::T, false, {0}}, 1}})});
        v.push_back({"s-cocycle", 3,
                     make_pattern({{{Role::S, false, {0, 1}}, 1},
                                   {{Role::S, false, {1, 2}}, 1},
                                   {{Role::S, false, {0, 2}}, -1}})});
        v.push_back({"u-cocycle", 4,
                     make_pattern({{{Role::U, false, {1, 2, 3}}, 1},
                                   {{Role::U, false, {0, 2, 3}}, -1},
                                   {{Role::U, false, {0, 1, 3}}, 1},
                                   {{Role::U, false, {0, 1, 2}}, -1}})});
        return v;
    }();
    return all;
}

// -------------------------------------------------------------- the parser --

struct Parser {
    std::optional<int> charts;
    bool version_seen = false;
    std::map<std::string, Role> roles;
    std::set<Role> declared;
    GluingData gd;

    Parser() {
        gd.rel_t_gerbe = gd.rel_s_pseudo = gd.rel_s_cocycle = gd.rel_u_cocycle = false;
    }

    void require_preamble(int line, const char* what) const {
        if (!version_seen) fail(line, std::string(what) + " must follow the version line");
        if (!charts) fail(line, std::string(what) + " must follow the charts line");
    }

    void declare(int line, const std::string& name, Role role,
                 const std::vector<std::string>& vars) {
        std::set<std::string> seen(vars.begin(), vars.end());
        if (seen.size() != vars.size()) fail(line, "repeated index variable in the head");
        if (roles.count(name)) fail(line, "family '" + name + "' declared twice");
        if (declared.count(role))
            fail(line, std::string("a ") + role_word(role) + " is already declared");
        roles.emplace(name, role);
        declared.insert(role);
    }

    struct Flags {
        bool antisym = false, invisible = false, alternating = false;
    };

    Flags parse_flags(Cursor& cur, bool stop_at_in) const {
        Flags f;
        while (!cur.at_end()) {
            if (stop_at_in && cur.peek().kind == Token::kIdent && cur.peek().text == "in")
                break;
            std::string w = cur.expect_ident("a flag");
            bool* slot = w == "antisym"      ? &f.antisym
                         : w == "invisible"  ? &f.invisible
                         : w == "alternating" ? &f.alternating
                                              : nullptr;
            if (slot == nullptr) fail(cur.line(), "unknown flag '" + w + "'");
            if (*slot) fail(cur.line(), "duplicate flag '" + w + "'");
            *slot = true;
        }
        return f;
    }

    static std::map<std::string, int> positions(const std::vector<std::string>& vars) {
        std::map<std::string, int> m;
        for (std::size_t p = 0; p < vars.size(); ++p)
            m.emplace(vars[p], static_cast<int>(p));
        return m;
    }

    void handle_gen(Cursor& cur) {
        int line = cur.line();
        std::string name = cur.expect_ident("a family name");
        std::vector<std::string> vars = parse_var_args(cur);
        cur.expect_sym('@');
        long long level = cur.expect_int("a level");
        Flags f = parse_flags(cur, false);
        Role role;
        if (vars.size() == 1 && level == 1 && !f.antisym && !f.invisible && !f.alternating)
            role = Role::L;
        else if (vars.size() == 2 && level == 0 && f.antisym && !f.invisible &&
                 !f.alternating)
            role = Role::E;
        else if (vars.size() == 3 && level == 0 && !f.antisym && f.invisible &&
                 f.alternating)
            role = Role::F;
        else
            fail(line, "no bundle family has this arity, level and flag shape");
        declare(line, name, role, vars);
    }

    void handle_sec(Cursor& cur) {
        int line = cur.line();
        std::string name = cur.expect_ident("a family name");
        std::vector<std::string> vars = parse_var_args(cur);
        cur.expect_sym('@');
        long long level = cur.expect_int("a level");
        Flags f = parse_flags(cur, true);
        Role role;
        if (vars.size() == 1 && level == 2 && !f.antisym && !f.invisible && !f.alternating)
            role = Role::T;
        else if (vars.size() == 2 && level == 1 && f.antisym && !f.invisible &&
                 !f.alternating)
            role = Role::S;
        else if (vars.size() == 3 && level == 0 && !f.antisym && f.invisible &&
                 f.alternating)
            role = Role::U;
        else
            fail(line, "no section family has this arity, level and flag shape");
        if (!(cur.peek().kind == Token::kIdent && cur.take().text == "in"))
            fail(line, "a section family needs 'in <home bundle>'");
        Expr home = parse_expr(cur);
        cur.expect_end();
        declare(line, name, role, vars);
        CanonExpr got = canonicalize_expr(home, roles, positions(vars));
        CanonExpr expect;
        if (role == Role::T) {
            expect = make_pattern({{{Role::L, true, {0}}, 1}});
        } else if (role == Role::S) {
            expect = make_pattern({{{Role::E, true, {0, 1}}, -1},
                                   {{Role::L, false, {1}}, 1},
                                   {{Role::L, false, {0}}, -1}});
        } else {
            expect = make_pattern({{{Role::F, false, {0, 1, 2}}, 1}});
        }
        if (got != expect)
            fail(line, "the declared home of '" + name +
                           "' does not match its family's shape");
    }

    void handle_rel(Cursor& cur) {
        int line = cur.line();
        Expr lhs = parse_expr(cur);
        cur.expect_sym('=');
        Expr rhs = parse_expr(cur);
        cur.expect_end();
        Expr combined = lhs;
        for (Factor f : rhs) {
            f.exp = -f.exp;
            combined.push_back(std::move(f));
        }
        if (combined.empty()) fail(line, "an empty relation is not a known shape");
        std::vector<std::string> vars;
        for (const auto& f : combined)
            for (const auto& v : f.atom.args)
                if (std::find(vars.begin(), vars.end(), v) == vars.end())
                    vars.push_back(v);
        for (const auto& s : schemas()) {
            if (static_cast<int>(vars.size()) != s.vars) continue;
            std::vector<int> perm(vars.size());
            for (std::size_t p = 0; p < perm.size(); ++p) perm[p] = static_cast<int>(p);
            do {
                std::map<std::string, int> var_pos;
                for (std::size_t p = 0; p < vars.size(); ++p)
                    var_pos.emplace(vars[p], perm[p]);
                CanonExpr got = canonicalize_expr(combined, roles, var_pos);
                if (got == s.pattern || got == negate(s.pattern)) {
                    apply_schema(s.name);
                    return;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        fail(line, "the relation does not match any known shape");
    }

    void apply_schema(const std::string& name) {
        if (name == "t-gerbe") gd.rel_t_gerbe = true;
        else if (name == "s-pseudo") gd.rel_s_pseudo = true;
        else if (name == "s-cocycle") gd.rel_s_cocycle = true;
        else if (name == "u-cocycle") gd.rel_u_cocycle = true;
        // The f-definition is structural and always in force.
    }

    int chart_index(Cursor& cur) {
        long long v = cur.expect_int("a chart index");
        if (v >= *charts)
            fail(cur.line(), "chart index " + std::to_string(v) + " is out of range");
        return static_cast<int>(v);
    }

    void handle_trivial(Cursor& cur) {
        int line = cur.line();
        std::string name = cur.expect_ident("a family name");
        auto rit = roles.find(name);
        if (rit == roles.end()) fail(line, "unknown family '" + name + "'");
        Role role = rit->second;
        cur.expect_sym('(');
        std::vector<int> idx;
        idx.push_back(chart_index(cur));
        while (cur.take_sym(',')) idx.push_back(chart_index(cur));
        cur.expect_sym(')');
        cur.expect_end();
        if (static_cast<int>(idx.size()) != role_arity(role))
            fail(line, "'" + name + "' takes " + std::to_string(role_arity(role)) +
                           " indices");
        std::sort(idx.begin(), idx.end());
        if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
            fail(line, "a repeated chart index is structurally trivial already");
        switch (role) {
            case Role::L: gd.trivial_L.insert(idx[0]); break;
            case Role::T: gd.trivial_t.insert(idx[0]); break;
            case Role::E: gd.trivial_E.insert({idx[0], idx[1]}); break;
            case Role::S: gd.trivial_s.insert({idx[0], idx[1]}); break;
            case Role::U: gd.trivial_u.insert({idx[0], idx[1], idx[2]}); break;
            case Role::F:
                fail(line, "the triple bundle is trivial exactly when its pairs are");
        }
    }

    void handle_connection(Cursor& cur) {
        if (gd.has_connection) fail(cur.line(), "duplicate connection declaration");
        gd.has_connection = true;
        cur.expect_end();
    }

    void handle_bform(Cursor& cur) {
        int line = cur.line();
        if (!gd.has_connection) fail(line, "bform needs a connection declaration first");
        cur.expect_sym('(');
        int c = chart_index(cur);
        cur.expect_sym(')');
        if (cur.expect_ident("'zero'") != "zero") fail(line, "expected 'zero'");
        cur.expect_end();
        gd.zero_B.insert(c);
    }

    void handle_omega(Cursor& cur) {
        int line = cur.line();
        if (!gd.has_connection) fail(line, "omega needs a connection declaration first");
        cur.expect_sym('(');
        int a = chart_index(cur);
        cur.expect_sym(',');
        int b = chart_index(cur);
        cur.expect_sym(')');
        if (cur.expect_ident("'zero'") != "zero") fail(line, "expected 'zero'");
        cur.expect_end();
        if (a == b) fail(line, "the error form on a repeated chart is zero already");
        gd.zero_omega.insert({std::min(a, b), std::max(a, b)});
    }

    void run(const std::string& text) {
        for (const auto& line_toks : tokenize(text)) {
            Cursor cur{&line_toks, 0};
            std::string head = cur.expect_ident("a directive");
            if (head == "version") {
                if (version_seen) fail(cur.line(), "duplicate version line");
                if (cur.expect_int("a version number") != 1)
                    fail(cur.line(), "only version 1 is understood");
                cur.expect_end();
                version_seen = true;
                continue;
            }
            if (!version_seen) fail(cur.line(), "the file must start with 'version 1'");
            if (head == "charts") {
                if (charts) fail(cur.line(), "duplicate charts line");
                long long n = cur.expect_int("a chart count");
                if (n < 2) fail(cur.line(), "need at least two charts");
                cur.expect_end();
                charts = static_cast<int>(n);
                gd.charts = static_cast<int>(n);
                continue;
            }
            require_preamble(cur.line(), ("'" + head + "'").c_str());
            if (head == "gen") {
                handle_gen(cur);
                cur.expect_end();
            } else if (head == "sec") {
                handle_sec(cur);
            } else if (head == "rel") {
                handle_rel(cur);
            } else if (head == "trivial") {
                handle_trivial(cur);
            } else if (head == "connection") {
                handle_connection(cur);
            } else if (head == "bform") {
                handle_bform(cur);
            } else if (head == "omega") {
                handle_omega(cur);
            } else {
                fail(cur.line(), "unknown directive '" + head + "'");
            }
        }
        if (!version_seen) throw ParseError("the file must start with 'version 1'");
        if (!charts) throw ParseError("missing charts declaration");
    }
};

}  // namespace

GluingData parse_gluing_decls(const std::string& text) {
    Parser p;
    p.run(text);
    return p.gd;
}

std::string render_gluing_decls(const GluingData& gd) {
    std::string out;
    out += "version 1\n";
    out += "charts " + std::to_string(gd.charts) + "\n";
    out += "\n";
    out += "gen L(i) @1\n";
    out += "gen E(i,j) @0 antisym\n";
    out += "gen F(i,j,k) @0 invisible alternating\n";
    out += "\n";
    out += "sec t(i) @2 in delta(L(i))\n";
    out += "sec s(i,j) @1 antisym in delta(E(i,j))^-1 * L(j) * L(i)^-1\n";
    out += "sec u(i,j,k) @0 invisible alternating in F(i,j,k)\n";
    out += "\n";
    out += "rel F(i,j,k) = E(i,j) * E(j,k) * E(k,i)\n";
    if (gd.rel_t_gerbe) out += "rel delta(t(i)) = 1\n";
    if (gd.rel_s_pseudo) out += "rel delta(s(i,j)) = t(j) * t(i)^-1\n";
    if (gd.rel_s_cocycle) out += "rel s(i,j) * s(j,k) * s(k,i) = 1\n";
    if (gd.rel_u_cocycle)
        out += "rel u(j,k,l) * u(i,k,l)^-1 * u(i,j,l) * u(i,j,k)^-1 = 1\n";
    std::string triv;
    for (int c : gd.trivial_L) triv += "trivial L(" + std::to_string(c) + ")\n";
    for (int c : gd.trivial_t) triv += "trivial t(" + std::to_string(c) + ")\n";
    for (const auto& [a, b] : gd.trivial_E)
        triv += "trivial E(" + std::to_string(a) + "," + std::to_string(b) + ")\n";
    for (const auto& [a, b] : gd.trivial_s)
        triv += "trivial s(" + std::to_string(a) + "," + std::to_string(b) + ")\n";
    for (const auto& t : gd.trivial_u)
        triv += "trivial u(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                std::to_string(t[2]) + ")\n";
    if (!triv.empty()) out += "\n" + triv;
    if (gd.has_connection) {
        out += "\nconnection\n";
        for (int c : gd.zero_B) out += "bform(" + std::to_string(c) + ") zero\n";
        for (const auto& [a, b] : gd.zero_omega)
            out += "omega(" + std::to_string(a) + "," + std::to_string(b) + ") zero\n";
    }
    return out;
}

}  // namespace gerbecalc
