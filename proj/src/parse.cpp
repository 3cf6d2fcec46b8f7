#include "rpg/parse.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <vector>

namespace rpg {

namespace {

struct Sexp {
    bool atom = false;
    std::string text;        // atom payload
    std::vector<Sexp> items; // list payload
    int line = 1;
    int col = 1;
};

struct Reader {
    const std::string& src;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Reader(const std::string& s) : src(s) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }

    int peek() const { return pos < src.size() ? static_cast<unsigned char>(src[pos]) : -1; }

    void advance() {
        if (pos >= src.size()) return;
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_space() {
        for (;;) {
            int c = peek();
            if (c == ';') {
                while (peek() != -1 && peek() != '\n') advance();
            } else if (c != -1 && std::isspace(c)) {
                advance();
            } else {
                return;
            }
        }
    }

    Sexp read() {
        skip_space();
        int c = peek();
        if (c == -1) fail("unexpected end of input");
        Sexp e;
        e.line = line;
        e.col = col;
        if (c == '(') {
            advance();
            for (;;) {
                skip_space();
                c = peek();
                if (c == -1) fail("unclosed '('");
                if (c == ')') {
                    advance();
                    return e;
                }
                e.items.push_back(read());
            }
        }
        if (c == ')') fail("unexpected ')'");
        e.atom = true;
        while (c != -1 && !std::isspace(c) && c != '(' && c != ')' && c != ';') {
            e.text += static_cast<char>(c);
            advance();
            c = peek();
        }
        return e;
    }
};

bool valid_name(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

[[noreturn]] void fail_at(const Sexp& e, const std::string& msg) {
    throw ParseError(e.line, e.col, msg);
}

const std::string& head(const Sexp& e) {
    static const std::string empty;
    if (e.atom || e.items.empty() || !e.items[0].atom) return empty;
    return e.items[0].text;
}

std::string expect_name(const Sexp& e) {
    if (!e.atom || !valid_name(e.text)) fail_at(e, "expected a name");
    return e.text;
}

Mult parse_mult(const Sexp& e) {
    if (!e.atom) fail_at(e, "expected a multiplicity");
    if (e.text == "w") return Mult::omega();
    if (e.text.empty() || !std::all_of(e.text.begin(), e.text.end(), [](unsigned char c) {
            return std::isdigit(c);
        }))
        fail_at(e, "expected a natural number or 'w'");
    std::uint64_t n = 0;
    for (char c : e.text) {
        n = n * 10 + static_cast<std::uint64_t>(c - '0');
        if (n > (1ull << 40)) fail_at(e, "multiplicity out of range");
    }
    if (n == 0) fail_at(e, "zero multiplicity");
    return Mult::finite(n);
}

// scope: all names bound by enclosing levels, outermost first.
PresPtr parse_graph(const Sexp& e, const std::vector<std::string>& scope) {
    if (head(e) != "graph") fail_at(e, "expected (graph ...)");
    std::size_t i = 1;
    if (i >= e.items.size() || head(e.items[i]) != "vertices")
        fail_at(e, "expected (vertices ...)");

    std::set<std::string> outer(scope.begin(), scope.end());
    FinitePart part;
    for (std::size_t j = 1; j < e.items[i].items.size(); ++j) {
        const Sexp& v = e.items[i].items[j];
        std::string name = expect_name(v);
        if (outer.count(name) ||
            std::find(part.vertices.begin(), part.vertices.end(), name) != part.vertices.end())
            fail_at(v, "duplicate vertex name " + name);
        part.vertices.push_back(name);
    }
    ++i;

    std::set<std::string> local(part.vertices.begin(), part.vertices.end());
    if (i < e.items.size() && head(e.items[i]) == "edges") {
        for (std::size_t j = 1; j < e.items[i].items.size(); ++j) {
            const Sexp& pr = e.items[i].items[j];
            if (pr.atom || pr.items.size() != 2) fail_at(pr, "expected an edge pair (a b)");
            std::string a = expect_name(pr.items[0]);
            std::string b = expect_name(pr.items[1]);
            if (a == b) fail_at(pr, "self-loop on " + a);
            bool la = local.count(a) > 0;
            bool lb = local.count(b) > 0;
            if (!la && !outer.count(a)) fail_at(pr.items[0], "unbound name " + a);
            if (!lb && !outer.count(b)) fail_at(pr.items[1], "unbound name " + b);
            if (la && lb)
                part.internal_edges.emplace_back(a, b);
            else if (la)
                part.boundary_edges.emplace_back(a, b);
            else if (lb)
                part.boundary_edges.emplace_back(b, a);
            else
                fail_at(pr, "edge between two enclosing-scope names " + a + " " + b);
        }
        ++i;
    }

    std::vector<std::string> inner = scope;
    std::vector<std::string> sorted = part.vertices;
    std::sort(sorted.begin(), sorted.end());
    inner.insert(inner.end(), sorted.begin(), sorted.end());

    std::vector<ComponentClass> classes;
    for (; i < e.items.size(); ++i) {
        const Sexp& ce = e.items[i];
        if (head(ce) != "class") fail_at(ce, "expected (class ...)");
        if (ce.items.size() != 3 || head(ce.items[1]) != "mult" || ce.items[1].items.size() != 2)
            fail_at(ce, "expected (class (mult n) (graph ...))");
        Mult m = parse_mult(ce.items[1].items[1]);
        classes.push_back(ComponentClass{m, parse_graph(ce.items[2], inner)});
    }

    return make_pres(std::move(part), std::move(classes), scope);
}

} // namespace

GraphTuple parse_tuple(const std::string& text) {
    Reader r(text);
    Sexp e = r.read();
    r.skip_space();
    if (r.peek() != -1) r.fail("trailing input after expression");

    if (head(e) == "graph") return make_tuple(parse_graph(e, {}), {});

    if (head(e) != "tuple") fail_at(e, "expected (tuple ...) or (graph ...)");
    if (e.items.size() != 3 || head(e.items[1]) != "x")
        fail_at(e, "expected (tuple (x ...) (graph ...))");
    std::vector<std::string> x;
    for (std::size_t j = 1; j < e.items[1].items.size(); ++j)
        x.push_back(expect_name(e.items[1].items[j]));
    PresPtr p = parse_graph(e.items[2], {});
    for (const auto& v : x)
        if (!p->part.has_vertex(v)) fail_at(e.items[1], "x vertex not in the top finite part: " + v);
    return make_tuple(std::move(p), std::move(x));
}

namespace {

void write_pres(std::ostringstream& os, const Presentation& p, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    os << "(graph (vertices";
    for (const auto& v : p.part.vertices) os << ' ' << v;
    os << ')';
    if (!p.part.internal_edges.empty() || !p.part.boundary_edges.empty()) {
        os << " (edges";
        for (const auto& [u, v] : p.part.internal_edges) os << " (" << u << ' ' << v << ')';
        for (const auto& [l, b] : p.part.boundary_edges) os << " (" << l << ' ' << b << ')';
        os << ')';
    }
    for (const auto& c : p.classes) {
        os << '\n' << pad << "  (class (mult " << c.mult.str() << ") ";
        write_pres(os, *c.child, indent + 1);
        os << ')';
    }
    os << ')';
}

} // namespace

std::string serialize_pres(const Presentation& p) {
    std::ostringstream os;
    write_pres(os, p, 0);
    os << '\n';
    return os.str();
}

std::string serialize_tuple(const GraphTuple& t) {
    std::ostringstream os;
    os << "(tuple (x";
    for (const auto& v : t.x) os << ' ' << v;
    os << ")\n  ";
    write_pres(os, *t.pres, 1);
    os << ")\n";
    return os.str();
}

} // namespace rpg
