// dimcalc/parser.hpp - s-expression construction language
#pragma once

#include <string>
#include <vector>

#include "dimcalc/core.hpp"

namespace dimcalc {

struct Span {
    int line = 1;
    int col = 1;
};

enum class QueryKind {
    Invariants,
    Dim,
    VDim,
    Jaffard,
    TensorDim,
    TensorVDim,
    TensorJaffard,
    Alphas,
    RawThm19,
};

const char* query_kind_name(QueryKind k);

struct Definition {
    std::string name;
    ExprPtr expr;
    Span span;
};

/// A query over resolved terms. Definitions are by-value, so `args` hold the
/// substituted construction trees; `display` keeps the source spelling.
struct Query {
    QueryKind kind;
    std::vector<ExprPtr> args;
    std::string display;
    Span span;
};

struct SourceProgram {
    std::vector<Definition> defs;
    std::vector<Query> queries;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, Span span) : std::runtime_error(what), span_(span) {}
    Span span() const { return span_; }

private:
    Span span_;
};

/// Grammar:
///   program  := (def NAME expr)* query*
///   expr     := NAME | (k) | (field NAT)
///             | (af :tdeg NAT :dim NAT [:maximal (:ht NAT :res-tdeg NAT [:unique])])
///             | (poly expr NAT)            with NAT >= 1
///             | (pullback :T expr :D expr)
///   query    := (invariants expr) | (dim expr) | (vdim expr) | (jaffard expr)
///             | (tensor-dim expr expr) | (tensor-vdim expr expr)
///             | (tensor-jaffard expr expr) | (alphas expr expr)
///             | (raw-thm19 expr expr)
/// Whitespace-insensitive; `;` starts a line comment. Names must be defined
/// before use and may not be redefined.
SourceProgram parse(const std::string& text);

/// Canonical rendering; parse(render_program(p)) is structurally equal to p.
std::string render_program(const SourceProgram& p);

bool structurally_equal(const SourceProgram& a, const SourceProgram& b);

}  // namespace dimcalc
