#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "kunz/algebra.hpp"

namespace kunz {

// 1-based position of a token in the source text.
struct Span {
    std::size_t line = 1;
    std::size_t col = 1;
};

// Syntax or semantic failure in a .kz source; the span points inside the
// offending token (or the statement that failed elaboration).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, Span span)
        : Error(msg + " (line " + std::to_string(span.line) + ", col " +
                std::to_string(span.col) + ")"),
          span(span) {}
    Span span;
};

// Statements.  Polynomials are normalized at parse time (parsed into grevlex
// normal order over the ring's ambient), which is what makes the canonical
// printer a retraction: parse after print is the identity.
struct PrimeDecl {
    std::uint32_t p = 0;
    Span span;
};

struct RingDecl {
    std::string name;
    std::string base; // empty means the prime field
    std::vector<std::string> vars;
    std::vector<Poly> relations;     // over the full ambient (base vars first)
    std::vector<std::string> ambient; // resolved ambient variable names
    Span span;
};

struct InvertDecl {
    std::string var;
    std::string ring;
    Span span;
};

struct MapDecl {
    std::string name;
    std::string source;
    std::string target;
    std::vector<std::pair<std::string, Poly>> images; // source var -> target poly,
                                                      // canonicalized to source order
    std::vector<std::string> target_ambient;          // for rendering the images
    Span span;
};

struct CheckDirective {
    std::string kind;   // omega | frobenius | kunz | classify | lifts
    std::string target; // map name
    std::vector<std::pair<std::string, std::string>> options;
    Span span;
};

using Statement = std::variant<PrimeDecl, RingDecl, InvertDecl, MapDecl, CheckDirective>;

struct SourceFile {
    std::vector<Statement> statements;
};

// Parses a .kz text: syntax, name resolution, option validation, and
// parse-time polynomial normalization.  Well-definedness of maps is deferred
// to elaborate (it needs normal forms).
SourceFile parse(const std::string& text);

// Canonical form; defines the golden normal form.  parse(print(f)) == f.
std::string print(const SourceFile& file);

struct Elaboration {
    std::uint32_t p = 0;
    std::map<std::string, RingPtr> rings;
    std::vector<std::string> ring_order;
    std::map<std::string, AlgebraMap> maps;
    std::vector<std::string> map_order;
    std::vector<CheckDirective> checks;
};

// Builds the presented rings and maps.  Map well-definedness failures are
// rethrown as ParseError at the map's span.
Elaboration elaborate(const SourceFile& file, Budget& budget);

// parse + elaborate.
Elaboration load_source(const std::string& text, Budget& budget);

} // namespace kunz
