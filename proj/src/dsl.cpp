#include "kunz/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace kunz {

namespace {

const MonomialOrder& grev() {
    static const MonomialOrder o = MonomialOrder::grevlex();
    return o;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

enum class Tok {
    Name,
    Int,
    Eq,
    LBracket,
    RBracket,
    Slash,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    Comma,
    Semi,
    Arrow,
    Plus,
    Minus,
    Star,
    Caret,
    End
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::uint64_t value = 0;
    Span span;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        Span s{line, col};
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            std::uint64_t v = 0;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                v = v * 10 + static_cast<std::uint64_t>(text[j] - '0');
                if (v > (1ull << 62)) throw ParseError("integer literal too large", s);
                ++j;
            }
            out.push_back({Tok::Int, text.substr(i, j - i), v, s});
            col += j - i;
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '_' || text[j] == '\''))
                ++j;
            out.push_back({Tok::Name, text.substr(i, j - i), 0, s});
            col += j - i;
            i = j;
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", 0, s});
            i += 2;
            col += 2;
            continue;
        }
        Tok k;
        switch (c) {
        case '=': k = Tok::Eq; break;
        case '[': k = Tok::LBracket; break;
        case ']': k = Tok::RBracket; break;
        case '/': k = Tok::Slash; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case ':': k = Tok::Colon; break;
        case ',': k = Tok::Comma; break;
        case ';': k = Tok::Semi; break;
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '^': k = Tok::Caret; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", s);
        }
        out.push_back({k, std::string(1, c), 0, s});
        ++i;
        ++col;
    }
    out.push_back({Tok::End, "", 0, Span{line, col}});
    return out;
}

struct Parser {
    explicit Parser(std::vector<Token> tokens) : ts(std::move(tokens)) {}

    std::vector<Token> ts;
    std::size_t pos = 0;
    bool seen_prime = false;
    std::uint32_t p = 0;
    std::map<std::string, std::vector<std::string>> ring_ambients;
    std::set<std::string> map_names;
    std::set<std::string> all_names;
    SourceFile file;

    const Token& peek(std::size_t ahead = 0) const {
        return ts[std::min(pos + ahead, ts.size() - 1)];
    }
    Token eat() { return ts[pos++]; }
    bool at(Tok k) const { return peek().kind == k; }
    Token expect(Tok k, const std::string& what) {
        if (!at(k)) throw ParseError("expected " + what, peek().span);
        return eat();
    }
    std::string expect_name(const std::string& what) { return expect(Tok::Name, what).text; }

    void declare(const std::string& name, Span s) {
        if (!all_names.insert(name).second)
            throw ParseError("name '" + name + "' is already declared", s);
    }

    const std::vector<std::string>& ambient_of(const std::string& ring, Span s) const {
        auto it = ring_ambients.find(ring);
        if (it == ring_ambients.end())
            throw ParseError("unknown ring '" + ring + "'", s);
        return it->second;
    }

    // expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
    // factor := atom ('^' INT)? ; atom := INT | VAR | '(' expr ')' | '-' factor
    Poly parse_poly(const PolyRing& ring, const std::map<std::string, std::size_t>& vars) {
        Poly acc = parse_poly_term(ring, vars);
        while (at(Tok::Plus) || at(Tok::Minus)) {
            bool minus = eat().kind == Tok::Minus;
            Poly rhs = parse_poly_term(ring, vars);
            acc = minus ? ring.sub(acc, rhs, grev()) : ring.add(acc, rhs, grev());
        }
        return acc;
    }

    Poly parse_poly_term(const PolyRing& ring, const std::map<std::string, std::size_t>& vars) {
        Poly acc = parse_poly_factor(ring, vars);
        while (at(Tok::Star)) {
            eat();
            acc = ring.mul(acc, parse_poly_factor(ring, vars), grev());
        }
        return acc;
    }

    Poly parse_poly_factor(const PolyRing& ring, const std::map<std::string, std::size_t>& vars) {
        Poly base = parse_poly_atom(ring, vars);
        if (at(Tok::Caret)) {
            eat();
            Token e = expect(Tok::Int, "a non-negative integer exponent");
            return ring.pow(base, e.value, grev());
        }
        return base;
    }

    Poly parse_poly_atom(const PolyRing& ring, const std::map<std::string, std::size_t>& vars) {
        if (at(Tok::Int)) {
            Token t = eat();
            return ring.constant(static_cast<std::int64_t>(t.value));
        }
        if (at(Tok::Minus)) {
            eat();
            return ring.neg(parse_poly_factor(ring, vars));
        }
        if (at(Tok::LParen)) {
            eat();
            Poly inner = parse_poly(ring, vars);
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (at(Tok::Name)) {
            Token t = eat();
            auto it = vars.find(t.text);
            if (it == vars.end())
                throw ParseError("unknown variable '" + t.text + "'", t.span);
            return ring.variable(it->second);
        }
        throw ParseError("expected a polynomial", peek().span);
    }

    void parse_prime() {
        Span s = eat().span; // 'prime'
        if (seen_prime) throw ParseError("duplicate prime declaration", s);
        Token t = expect(Tok::Int, "a prime number");
        if (!is_prime(t.value) || t.value >= 65536)
            throw ParseError("'" + t.text + "' is not a usable prime", t.span);
        seen_prime = true;
        p = static_cast<std::uint32_t>(t.value);
        file.statements.push_back(PrimeDecl{p, s});
    }

    void parse_ring() {
        Span s = eat().span; // 'ring'
        if (!seen_prime) throw ParseError("a prime declaration must come first", s);
        Token name = expect(Tok::Name, "a ring name");
        declare(name.text, name.span);
        expect(Tok::Eq, "'='");
        std::string base;
        if (at(Tok::Name)) base = eat().text;
        std::vector<std::string> ambient;
        if (!base.empty()) ambient = ambient_of(base, s);
        expect(Tok::LBracket, "'['");
        std::vector<std::string> vars;
        std::set<std::string> amb_set(ambient.begin(), ambient.end());
        while (!at(Tok::RBracket)) {
            Token v = expect(Tok::Name, "a variable name");
            if (!amb_set.insert(v.text).second)
                throw ParseError("variable '" + v.text + "' is already in scope", v.span);
            vars.push_back(v.text);
            ambient.push_back(v.text);
            if (at(Tok::Comma)) eat();
        }
        expect(Tok::RBracket, "']'");

        std::vector<Poly> relations;
        if (at(Tok::Slash)) {
            eat();
            expect(Tok::LParen, "'('");
            PolyRing amb(PrimeField(p), ambient);
            std::map<std::string, std::size_t> lookup;
            for (std::size_t i = 0; i < ambient.size(); ++i) lookup[ambient[i]] = i;
            while (!at(Tok::RParen)) {
                relations.push_back(parse_poly(amb, lookup));
                if (at(Tok::Comma)) eat();
            }
            expect(Tok::RParen, "')'");
        }
        ring_ambients[name.text] = ambient;
        file.statements.push_back(
            RingDecl{name.text, base, std::move(vars), std::move(relations), std::move(ambient), s});
    }

    void parse_invert() {
        Span s = eat().span; // 'invert'
        Token var = expect(Tok::Name, "a variable name");
        Token kw = expect(Tok::Name, "'in'");
        if (kw.text != "in") throw ParseError("expected 'in'", kw.span);
        Token ring = expect(Tok::Name, "a ring name");
        auto it = ring_ambients.find(ring.text);
        if (it == ring_ambients.end())
            throw ParseError("unknown ring '" + ring.text + "'", ring.span);
        std::vector<std::string>& ambient = it->second;
        if (std::find(ambient.begin(), ambient.end(), var.text) == ambient.end())
            throw ParseError("variable '" + var.text + "' is not in ring '" + ring.text + "'",
                             var.span);
        std::string inv = var.text + "_inv";
        while (std::find(ambient.begin(), ambient.end(), inv) != ambient.end()) inv += "'";
        ambient.push_back(inv);
        file.statements.push_back(InvertDecl{var.text, ring.text, s});
    }

    void parse_map() {
        Span s = eat().span; // 'map'
        Token name = expect(Tok::Name, "a map name");
        declare(name.text, name.span);
        expect(Tok::Colon, "':'");
        Token src = expect(Tok::Name, "a source ring");
        const std::vector<std::string> src_amb = ambient_of(src.text, src.span);
        expect(Tok::Arrow, "'->'");
        Token dst = expect(Tok::Name, "a target ring");
        const std::vector<std::string> dst_amb = ambient_of(dst.text, dst.span);
        expect(Tok::LBrace, "'{'");

        PolyRing target_ring(PrimeField(p), dst_amb);
        std::map<std::string, std::size_t> dst_lookup;
        for (std::size_t i = 0; i < dst_amb.size(); ++i) dst_lookup[dst_amb[i]] = i;
        std::map<std::string, Poly> given;
        while (!at(Tok::RBrace)) {
            Token v = expect(Tok::Name, "a source variable");
            if (std::find(src_amb.begin(), src_amb.end(), v.text) == src_amb.end())
                throw ParseError("'" + v.text + "' is not a variable of ring '" + src.text + "'",
                                 v.span);
            if (given.count(v.text))
                throw ParseError("variable '" + v.text + "' is assigned twice", v.span);
            expect(Tok::Arrow, "'->'");
            given.emplace(v.text, parse_poly(target_ring, dst_lookup));
            if (at(Tok::Comma) || at(Tok::Semi)) eat();
        }
        Token close = expect(Tok::RBrace, "'}'");
        if (given.size() != src_amb.size())
            throw ParseError("map '" + name.text + "' must assign every source variable (" +
                                 std::to_string(src_amb.size()) + " expected, " +
                                 std::to_string(given.size()) + " given)",
                             close.span);
        std::vector<std::pair<std::string, Poly>> images;
        for (const std::string& v : src_amb) images.emplace_back(v, given.at(v));
        map_names.insert(name.text);
        file.statements.push_back(
            MapDecl{name.text, src.text, dst.text, std::move(images), dst_amb, s});
    }

    void parse_check() {
        Span s = eat().span; // 'check'
        Token kind = expect(Tok::Name, "a check kind");
        static const std::set<std::string> kinds = {"omega", "frobenius", "kunz", "classify",
                                                    "lifts"};
        if (!kinds.count(kind.text))
            throw ParseError("unknown check kind '" + kind.text + "'", kind.span);
        Token target = expect(Tok::Name, "a map name");
        if (!map_names.count(target.text))
            throw ParseError("unknown map '" + target.text + "'", target.span);

        std::vector<std::pair<std::string, std::string>> options;
        while (at(Tok::Name) && peek(1).kind == Tok::Eq) {
            Token key = eat();
            eat(); // '='
            if (!at(Tok::Name) && !at(Tok::Int))
                throw ParseError("expected an option value", peek().span);
            Token val = eat();
            // Hyphenated values (ext=p-line): join runs of Name/Int parts
            // around '-' with no intervening whitespace.  Any join demotes
            // the value to a plain name, so e=1-2 stays an invalid integer.
            auto adjacent = [](const Token& a, const Token& b) {
                return b.span.line == a.span.line && b.span.col == a.span.col + a.text.size();
            };
            Token prev = val;
            while (at(Tok::Minus) && adjacent(prev, peek()) &&
                   (peek(1).kind == Tok::Name || peek(1).kind == Tok::Int) &&
                   adjacent(peek(), peek(1))) {
                eat(); // '-'
                prev = eat();
                val.text += "-" + prev.text;
                val.kind = Tok::Name;
            }
            for (const auto& [k, v] : options)
                if (k == key.text)
                    throw ParseError("option '" + key.text + "' given twice", key.span);
            validate_option(kind, key, val);
            options.emplace_back(key.text, val.text);
        }
        std::sort(options.begin(), options.end());
        file.statements.push_back(CheckDirective{kind.text, target.text, std::move(options), s});
    }

    void validate_option(const Token& kind, const Token& key, const Token& val) {
        if (kind.text == "frobenius") {
            if (key.text == "e") {
                if (val.kind != Tok::Int || val.value < 1 || val.value > 6)
                    throw ParseError("option e must be an integer in 1..6", val.span);
                return;
            }
            if (key.text == "mode") {
                if (val.text != "surjective" && val.text != "injective" && val.text != "iso")
                    throw ParseError("mode must be surjective, injective, or iso", val.span);
                return;
            }
            throw ParseError("frobenius checks accept only e= and mode=", key.span);
        }
        if (kind.text == "lifts") {
            if (key.text == "ext") return;
            throw ParseError("lifts checks accept only ext=", key.span);
        }
        throw ParseError("'" + kind.text + "' checks take no options", key.span);
    }

    SourceFile run() {
        while (!at(Tok::End)) {
            if (!at(Tok::Name))
                throw ParseError("expected a statement keyword", peek().span);
            const std::string& kw = peek().text;
            if (kw == "prime") parse_prime();
            else if (kw == "ring") parse_ring();
            else if (kw == "invert") parse_invert();
            else if (kw == "map") parse_map();
            else if (kw == "check") parse_check();
            else throw ParseError("unknown statement '" + kw + "'", peek().span);
        }
        return std::move(file);
    }
};

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

} // namespace

SourceFile parse(const std::string& text) { return Parser(lex(text)).run(); }

std::string print(const SourceFile& file) {
    std::uint32_t p = 0;
    for (const Statement& st : file.statements)
        if (const auto* d = std::get_if<PrimeDecl>(&st)) {
            p = d->p;
            break;
        }
    std::ostringstream os;
    for (const Statement& st : file.statements) {
        if (const auto* d = std::get_if<PrimeDecl>(&st)) {
            os << "prime " << d->p << "\n";
        } else if (const auto* d = std::get_if<RingDecl>(&st)) {
            os << "ring " << d->name << " = " << d->base << "[" << join(d->vars, ", ") << "]";
            if (!d->relations.empty()) {
                PolyRing amb(PrimeField(p), d->ambient);
                std::vector<std::string> rs;
                for (const Poly& r : d->relations) rs.push_back(amb.to_string(r));
                os << " / (" << join(rs, ", ") << ")";
            }
            os << "\n";
        } else if (const auto* d = std::get_if<InvertDecl>(&st)) {
            os << "invert " << d->var << " in " << d->ring << "\n";
        } else if (const auto* d = std::get_if<MapDecl>(&st)) {
            PolyRing amb(PrimeField(p), d->target_ambient);
            os << "map " << d->name << " : " << d->source << " -> " << d->target << " {";
            std::vector<std::string> clauses;
            for (const auto& [v, img] : d->images) clauses.push_back(v + " -> " + amb.to_string(img));
            if (!clauses.empty()) os << " " << join(clauses, ", ");
            os << " }\n";
        } else if (const auto* d = std::get_if<CheckDirective>(&st)) {
            os << "check " << d->kind << " " << d->target;
            for (const auto& [k, v] : d->options) os << " " << k << "=" << v;
            os << "\n";
        }
    }
    return os.str();
}

Elaboration elaborate(const SourceFile& file, Budget& budget) {
    Elaboration el;
    for (const Statement& st : file.statements) {
        if (const auto* d = std::get_if<PrimeDecl>(&st)) {
            el.p = d->p;
        } else if (const auto* d = std::get_if<RingDecl>(&st)) {
            PrimeField f(el.p);
            RingPtr r = d->base.empty() ? make_ring(f, d->ambient, d->relations)
                                        : extend_ring(el.rings.at(d->base), d->vars, d->relations);
            el.rings[d->name] = std::move(r);
            el.ring_order.push_back(d->name);
        } else if (const auto* d = std::get_if<InvertDecl>(&st)) {
            const RingPtr& r = el.rings.at(d->ring);
            const PolyRing& amb = r->ambient();
            std::size_t iu = 0;
            while (amb.var_names()[iu] != d->var) ++iu;
            std::string inv = d->var + "_inv";
            std::vector<std::string> names = amb.var_names();
            while (std::find(names.begin(), names.end(), inv) != names.end()) inv += "'";
            names.push_back(inv);
            PolyRing na(amb.field(), names);
            std::vector<std::size_t> keep(amb.nvars());
            for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
            std::vector<Poly> rels;
            for (const Poly& rel : r->relations()) rels.push_back(amb.embed(rel, keep, na, grev()));
            rels.push_back(na.sub(na.mul(na.variable(iu), na.variable(names.size() - 1), grev()),
                                  na.one(), grev()));
            std::vector<Poly> base_images;
            for (const Poly& b : r->base_images()) base_images.push_back(amb.embed(b, keep, na, grev()));
            std::vector<std::size_t> fiber = r->fiber_vars();
            fiber.push_back(names.size() - 1);
            el.rings[d->ring] = std::make_shared<RingPresentation>(
                std::move(na), std::move(rels), r->base(), std::move(base_images), std::move(fiber));
        } else if (const auto* d = std::get_if<MapDecl>(&st)) {
            const RingPtr& src = el.rings.at(d->source);
            const RingPtr& dst = el.rings.at(d->target);
            std::vector<Poly> images;
            for (const auto& [v, img] : d->images) images.push_back(img);
            try {
                el.maps[d->name] = check_map(src, dst, std::move(images), budget, d->name);
            } catch (const NotWellDefined& e) {
                throw ParseError(e.what(), d->span);
            }
            el.map_order.push_back(d->name);
        } else if (const auto* d = std::get_if<CheckDirective>(&st)) {
            el.checks.push_back(*d);
        }
    }
    return el;
}

Elaboration load_source(const std::string& text, Budget& budget) {
    return elaborate(parse(text), budget);
}

} // namespace kunz
