#include "sctkit/formats.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sctkit {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

BaFile parse_ba(std::string_view text) {
    struct Decl {
        int line = 0;
        std::vector<std::string> items;
    };
    std::map<std::string, Decl> lists;
    std::vector<std::pair<int, std::vector<std::string>>> trans;
    Headers headers;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        std::string_view body = trim(line);
        if (body.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (body.front() == '#') {
            std::string_view c = trim(body.substr(1));
            std::size_t colon = c.find(':');
            if (colon != std::string_view::npos && colon > 0 && c.substr(0, colon).find(' ') == std::string_view::npos)
                headers.emplace_back(std::string(c.substr(0, colon)), std::string(trim(c.substr(colon + 1))));
            if (end == text.size()) break;
            continue;
        }
        std::size_t hash = body.find('#');
        if (hash != std::string_view::npos) body = trim(body.substr(0, hash));
        std::size_t colon = body.find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, "expected `key: values`");
        std::string key(trim(body.substr(0, colon)));
        auto items = split_ws(body.substr(colon + 1));
        if (key == "trans") {
            if (items.size() != 3) throw ParseError(line_no, "trans expects `state symbol state`");
            trans.emplace_back(line_no, std::move(items));
        } else if (key == "alphabet" || key == "states" || key == "initial" || key == "accepting") {
            if (lists.count(key)) throw ParseError(line_no, "duplicate `" + key + "` section");
            std::set<std::string> seen;
            for (const auto& it : items)
                if (!seen.insert(it).second) throw ParseError(line_no, "duplicate identifier `" + it + "`");
            lists[key] = {line_no, std::move(items)};
        } else {
            throw ParseError(line_no, "unknown key `" + key + "`");
        }
        if (end == text.size()) break;
    }
    for (const char* k : {"alphabet", "states", "initial", "accepting"})
        if (!lists.count(k)) throw ParseError(line_no, std::string("missing `") + k + "` section");

    BuchiAutomaton b(lists["alphabet"].items, lists["states"].items);
    for (const char* k : {"initial", "accepting"}) {
        const Decl& d = lists[k];
        for (const auto& q : d.items) {
            int id = b.state_id(q);
            if (id < 0) throw ParseError(d.line, "undeclared state `" + q + "`");
            if (std::string(k) == "initial")
                b.set_initial(id);
            else
                b.set_accepting(id);
        }
    }
    for (const auto& [ln, t] : trans) {
        int q = b.state_id(t[0]), a = b.symbol_id(t[1]), r = b.state_id(t[2]);
        if (q < 0) throw ParseError(ln, "undeclared state `" + t[0] + "`");
        if (a < 0) throw ParseError(ln, "undeclared symbol `" + t[1] + "`");
        if (r < 0) throw ParseError(ln, "undeclared state `" + t[2] + "`");
        if (b.has_transition(q, a, r)) throw ParseError(ln, "duplicate transition");
        b.add_transition(q, a, r);
    }
    return {std::move(b), std::move(headers)};
}

std::string render_ba(const BuchiAutomaton& b, const Headers& headers) {
    std::ostringstream out;
    for (const auto& [k, v] : headers) out << "# " << k << ": " << v << "\n";
    auto sorted = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    auto line = [&](const char* key, const std::vector<std::string>& items) {
        out << key << ":";
        for (const auto& s : sorted(items)) out << " " << s;
        out << "\n";
    };
    std::vector<std::string> init, acc;
    b.initial().for_each([&](std::size_t q) { init.push_back(b.state_name(static_cast<int>(q))); });
    b.accepting().for_each([&](std::size_t q) { acc.push_back(b.state_name(static_cast<int>(q))); });
    line("alphabet", b.alphabet());
    line("states", b.states());
    line("initial", init);
    line("accepting", acc);
    std::vector<std::string> edges;
    for (std::size_t q = 0; q < b.num_states(); ++q)
        for (std::size_t a = 0; a < b.num_symbols(); ++a)
            b.post(static_cast<int>(q), static_cast<int>(a)).for_each([&](std::size_t r) {
                edges.push_back("trans: " + b.state_name(static_cast<int>(q)) + " " + b.symbol_name(static_cast<int>(a)) + " " +
                                b.state_name(static_cast<int>(r)));
            });
    for (const auto& e : sorted(edges)) out << e << "\n";
    return out.str();
}

bool has_header(const Headers& headers, const std::string& key, const std::string& value) {
    for (const auto& [k, v] : headers)
        if (k == key && v == value) return true;
    return false;
}

namespace {

struct Token {
    enum Kind { Ident, Op, Punct, End } kind;
    std::string text;
    int line;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\''; };
    auto op_char = [](char c) { return c == '<' || c == '>' || c == '=' || c == '-' || c == '!'; };
    while (i < s.size()) {
        char c = s[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
        } else if (ident_char(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            out.push_back({Token::Ident, std::string(s.substr(i, j - i)), line});
            i = j;
        } else if (op_char(c)) {
            std::size_t j = i;
            while (j < s.size() && op_char(s[j])) ++j;
            out.push_back({Token::Op, std::string(s.substr(i, j - i)), line});
            i = j;
        } else if (c == '(' || c == ')' || c == '{' || c == '}' || c == ':' || c == ';' || c == ',') {
            out.push_back({Token::Punct, std::string(1, c), line});
            ++i;
        } else {
            throw ParseError(line, std::string("unexpected character `") + c + "`");
        }
    }
    out.push_back({Token::End, "", line});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    const Token& peek() const { return toks_[pos_]; }
    bool at_end() const { return peek().kind == Token::End; }
    int line() const { return peek().line; }
    Token take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    bool accept(Token::Kind k, const char* text) {
        if (peek().kind == k && peek().text == text) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(Token::Kind k, const char* text) {
        if (!accept(k, text)) throw ParseError(line(), std::string("expected `") + text + "`, found `" + peek().text + "`");
    }
    std::string ident(const char* what) {
        if (peek().kind != Token::Ident) throw ParseError(line(), std::string("expected ") + what + ", found `" + peek().text + "`");
        return take().text;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

bool plain_name(const std::string& s) { return s.find('.') == std::string::npos && s.find('\'') == std::string::npos; }

struct Skeleton {
    std::vector<std::string> functions;
    std::vector<std::vector<std::string>> params;
    struct Call {
        std::string id;
        int source, target, line;
        struct Arc {
            std::string u, rel, v;
            int line;
        };
        std::vector<Arc> arcs;
    };
    std::vector<Call> calls;
};

// fun f(x y)  /  call c: f -> g { u rel v ; ... }
Skeleton parse_skeleton(std::string_view text) {
    Parser p(text);
    Skeleton sk;
    std::set<std::string> call_ids;
    while (!p.at_end()) {
        int ln = p.line();
        std::string kw = p.ident("`fun` or `call`");
        if (kw == "fun") {
            std::string name = p.ident("function name");
            if (!plain_name(name)) throw ParseError(ln, "invalid function name `" + name + "`");
            for (const auto& f : sk.functions)
                if (f == name) throw ParseError(ln, "duplicate function `" + name + "`");
            p.expect(Token::Punct, "(");
            std::vector<std::string> ps;
            while (!p.accept(Token::Punct, ")")) {
                if (p.accept(Token::Punct, ",")) continue;
                std::string x = p.ident("parameter");
                if (!plain_name(x)) throw ParseError(ln, "invalid parameter name `" + x + "`");
                if (std::find(ps.begin(), ps.end(), x) != ps.end()) throw ParseError(ln, "duplicate parameter `" + x + "`");
                ps.push_back(x);
            }
            sk.functions.push_back(name);
            sk.params.push_back(ps);
        } else if (kw == "call") {
            Skeleton::Call c;
            c.line = ln;
            c.id = p.ident("call id");
            if (!call_ids.insert(c.id).second) throw ParseError(ln, "duplicate call `" + c.id + "`");
            p.expect(Token::Punct, ":");
            auto fid = [&](const std::string& n) {
                for (std::size_t i = 0; i < sk.functions.size(); ++i)
                    if (sk.functions[i] == n) return static_cast<int>(i);
                throw ParseError(ln, "undeclared function `" + n + "`");
            };
            c.source = fid(p.ident("caller"));
            p.expect(Token::Op, "->");
            c.target = fid(p.ident("callee"));
            p.expect(Token::Punct, "{");
            while (!p.accept(Token::Punct, "}")) {
                if (p.accept(Token::Punct, ";")) continue;
                int al = p.line();
                std::string u = p.ident("parameter");
                if (p.peek().kind != Token::Op) throw ParseError(al, "expected a relation after `" + u + "`");
                std::string rel = p.take().text;
                std::string v = p.ident("parameter");
                c.arcs.push_back({u, rel, v, al});
            }
            sk.calls.push_back(std::move(c));
        } else {
            throw ParseError(ln, "unknown declaration `" + kw + "`");
        }
    }
    return sk;
}

int param_index(const std::vector<std::string>& ps, const std::string& x) {
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (ps[i] == x) return static_cast<int>(i);
    return -1;
}

}  // namespace

SctProblem parse_sct(std::string_view text) {
    Skeleton sk = parse_skeleton(text);
    SctProblem p;
    for (std::size_t f = 0; f < sk.functions.size(); ++f) p.add_function(sk.functions[f], sk.params[f]);
    for (const auto& c : sk.calls) {
        int id = p.add_call(c.id, c.source, c.target);
        auto& g = p.scgs[static_cast<std::size_t>(id)].graph;
        for (const auto& a : c.arcs) {
            int label;
            if (a.rel == ">")
                label = 1;
            else if (a.rel == ">=")
                label = 0;
            else
                throw ParseError(a.line, "unknown relation `" + a.rel + "`");
            int x = param_index(p.params[static_cast<std::size_t>(c.source)], a.u);
            int y = param_index(p.params[static_cast<std::size_t>(c.target)], a.v);
            if (x < 0) throw ParseError(a.line, "`" + a.u + "` is not a parameter of " + p.functions[static_cast<std::size_t>(c.source)]);
            if (y < 0) throw ParseError(a.line, "`" + a.v + "` is not a parameter of " + p.functions[static_cast<std::size_t>(c.target)]);
            int old = g.label(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
            if (old >= 0)
                throw ParseError(a.line, old == label ? "duplicate arc" : "arc carries both `>` and `>=`");
            g.set_arc(static_cast<std::size_t>(x), static_cast<std::size_t>(y), label);
        }
    }
    return p;
}

std::string render_sct(const SctProblem& p) {
    std::ostringstream out;
    for (std::size_t f = 0; f < p.functions.size(); ++f) {
        out << "fun " << p.functions[f] << "(";
        for (std::size_t i = 0; i < p.params[f].size(); ++i) out << (i ? " " : "") << p.params[f][i];
        out << ")\n";
    }
    for (std::size_t c = 0; c < p.calls.size(); ++c) {
        const auto& call = p.calls[c];
        out << "call " << call.id << ": " << p.functions[static_cast<std::size_t>(call.source)] << " -> "
            << p.functions[static_cast<std::size_t>(call.target)] << " {";
        bool first = true;
        for (auto [x, label, y] : p.scgs[c].graph.arcs()) {
            out << (first ? " " : " ; ") << p.params[static_cast<std::size_t>(call.source)][static_cast<std::size_t>(x)]
                << (label ? " > " : " >= ") << p.params[static_cast<std::size_t>(call.target)][static_cast<std::size_t>(y)];
            first = false;
        }
        out << (first ? "}\n" : " }\n");
    }
    return out.str();
}

MonotonicityConstraintSystem parse_mcs(std::string_view text) {
    Skeleton sk = parse_skeleton(text);
    MonotonicityConstraintSystem m;
    m.functions = sk.functions;
    m.params = sk.params;
    for (const auto& c : sk.calls) {
        m.calls.push_back({c.id, c.source, c.target});
        MonotonicityConstraint mc;
        const auto& src = sk.params[static_cast<std::size_t>(c.source)];
        const auto& dst = sk.params[static_cast<std::size_t>(c.target)];
        mc.source_arity = static_cast<int>(src.size());
        mc.target_arity = static_cast<int>(dst.size());
        const std::string& fs = sk.functions[static_cast<std::size_t>(c.source)];
        const std::string& ft = sk.functions[static_cast<std::size_t>(c.target)];
        // f.x is the caller's copy unless f is only the callee; a trailing '
        // always selects the callee's copy.
        auto resolve = [&](std::string name, int ln) {
            bool primed = !name.empty() && name.back() == '\'';
            if (primed) name.pop_back();
            std::size_t dot = name.find('.');
            if (dot != std::string::npos) {
                std::string f = name.substr(0, dot), x = name.substr(dot + 1);
                int side;
                if (primed) {
                    if (f != ft) throw ParseError(ln, "`" + name + "'` does not name a callee parameter");
                    side = 1;
                } else if (f == fs) {
                    side = 0;
                } else if (f == ft) {
                    side = 1;
                } else {
                    throw ParseError(ln, "`" + f + "` is neither caller nor callee of call " + c.id);
                }
                int i = param_index(side ? dst : src, x);
                if (i < 0) throw ParseError(ln, "`" + x + "` is not a parameter of " + f);
                return McsNode{side, i};
            }
            if (primed) {
                int i = param_index(dst, name);
                if (i < 0) throw ParseError(ln, "`" + name + "` is not a parameter of " + ft);
                return McsNode{1, i};
            }
            int a = param_index(src, name), b = param_index(dst, name);
            if (a >= 0 && b >= 0) throw ParseError(ln, "ambiguous name `" + name + "`; qualify it");
            if (a < 0 && b < 0) throw ParseError(ln, "unknown parameter `" + name + "`");
            return a >= 0 ? McsNode{0, a} : McsNode{1, b};
        };
        for (const auto& a : c.arcs) {
            Rel rel;
            if (a.rel == ">")
                rel = Rel::Gt;
            else if (a.rel == ">=")
                rel = Rel::Ge;
            else if (a.rel == "=")
                rel = Rel::Eq;
            else
                throw ParseError(a.line, "unknown relation `" + a.rel + "`");
            mc.edges.push_back({resolve(a.u, a.line), rel, resolve(a.v, a.line)});
        }
        m.constraints.push_back(std::move(mc));
    }
    return m;
}

std::string render_mcs(const MonotonicityConstraintSystem& m) {
    std::ostringstream out;
    for (std::size_t f = 0; f < m.functions.size(); ++f) {
        out << "fun " << m.functions[f] << "(";
        for (std::size_t i = 0; i < m.params[f].size(); ++i) out << (i ? " " : "") << m.params[f][i];
        out << ")\n";
    }
    for (std::size_t c = 0; c < m.calls.size(); ++c) {
        const auto& call = m.calls[c];
        const auto& fs = m.functions[static_cast<std::size_t>(call.source)];
        const auto& ft = m.functions[static_cast<std::size_t>(call.target)];
        auto name = [&](const McsNode& n) {
            if (n.side == 0) return fs + "." + m.params[static_cast<std::size_t>(call.source)][static_cast<std::size_t>(n.param)];
            return ft + "." + m.params[static_cast<std::size_t>(call.target)][static_cast<std::size_t>(n.param)] + (fs == ft ? "'" : "");
        };
        out << "call " << call.id << ": " << fs << " -> " << ft << " {";
        bool first = true;
        for (const auto& e : m.constraints[c].edges) {
            out << (first ? " " : " ; ") << name(e.u) << " " << rel_symbol(e.rel) << " " << name(e.v);
            first = false;
        }
        out << (first ? "}\n" : " }\n");
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace sctkit
