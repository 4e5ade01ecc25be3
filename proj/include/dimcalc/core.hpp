// dimcalc/core.hpp - algebra term language, dimension values, validation
#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dimcalc {

/// Three-valued certification status. Unknown is never silently coerced.
enum class TriState { Yes, No, Unknown };

const char* to_string(TriState t);

/// Data of a distinguished maximal ideal M: its height, the transcendence
/// degree of the residue field T/M over k, and whether M is the unique
/// maximal ideal of its ring.
struct MaximalIdealData {
    int height = 0;
    int residue_tdeg = 0;
    bool is_unique_maximal = false;

    friend bool operator==(const MaximalIdealData&, const MaximalIdealData&) = default;
};

/// An exact natural number or a closed integer interval [lo, hi].
/// Exact(n) and Interval(n, n) are the same value; arithmetic is
/// componentwise on the bounds.
struct DimValue {
    int lo = 0;
    int hi = 0;

    static DimValue exact(int n) { return {n, n}; }
    static DimValue interval(int lo, int hi);

    bool is_exact() const { return lo == hi; }

    /// Exact accessor; only meaningful when is_exact().
    int value() const { return lo; }

    friend DimValue operator+(DimValue a, DimValue b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend DimValue operator+(DimValue a, int n) { return {a.lo + n, a.hi + n}; }
    friend DimValue operator+(int n, DimValue a) { return a + n; }
    friend bool operator==(const DimValue&, const DimValue&) = default;

    std::string str() const;
};

DimValue dim_max(DimValue a, DimValue b);
DimValue dim_min(DimValue a, DimValue b);

// --------------------------------------------------------------------------
// Algebra terms
// --------------------------------------------------------------------------

struct AlgebraExpr;
using ExprPtr = std::shared_ptr<const AlgebraExpr>;

/// The ground field k itself. Distinct from FieldLeaf{0}: an algebraic
/// extension of k has tdeg 0 but k (x) K' = K' holds only for k.
struct BaseK {
    friend bool operator==(const BaseK&, const BaseK&) = default;
};

/// An extension field of k of the given finite transcendence degree.
struct FieldLeaf {
    int tdeg = 0;
    friend bool operator==(const FieldLeaf&, const FieldLeaf&) = default;
};

/// A declared AF-domain: ht(p) + t.d.(A/p) = t.d.(A) for every prime p.
/// The declaration is an axiom; the engine propagates it, never verifies it.
struct AFLeaf {
    int tdeg = 0;
    int dim = 0;
    std::optional<MaximalIdealData> maximal;
    friend bool operator==(const AFLeaf&, const AFLeaf&) = default;
};

/// base[X1..Xn], n >= 1.
struct PolyExt {
    ExprPtr base;
    int vars = 1;
    friend bool operator==(const PolyExt& a, const PolyExt& b);
};

/// R = phi^-1(D) for phi: T -> K = T/M the residue map at the distinguished
/// maximal ideal M of T, with D a (declared-proper) subring of K.
struct Pullback {
    ExprPtr t;
    ExprPtr d;
    friend bool operator==(const Pullback& a, const Pullback& b);
};

struct AlgebraExpr {
    std::variant<BaseK, FieldLeaf, AFLeaf, PolyExt, Pullback> node;
    friend bool operator==(const AlgebraExpr& a, const AlgebraExpr& b) { return a.node == b.node; }
};

inline bool operator==(const PolyExt& a, const PolyExt& b) {
    return a.vars == b.vars && *a.base == *b.base;
}
inline bool operator==(const Pullback& a, const Pullback& b) {
    return *a.t == *b.t && *a.d == *b.d;
}

ExprPtr make_k();
ExprPtr make_field(int tdeg);
ExprPtr make_af(int tdeg, int dim, std::optional<MaximalIdealData> maximal = std::nullopt);
/// Collapses nested polynomial extensions: base[m][n] = base[m+n].
ExprPtr make_poly(ExprPtr base, int vars);
ExprPtr make_pullback(ExprPtr t, ExprPtr d);

template <class T>
const T* as(const ExprPtr& e) {
    return std::get_if<T>(&e->node);
}

/// Transcendence degree over k. Total on all terms.
int tdeg_of(const ExprPtr& e);

/// True when the term denotes a field (BaseK, FieldLeaf, zero-dimensional
/// AF leaf). Polynomial extensions and pullbacks never are.
bool is_field_expr(const ExprPtr& e);

/// The distinguished maximal ideal a term exposes, if any. Fields and
/// polynomial extensions expose none; a pullback inherits one along
/// ht p = ht M + ht q when its D component is a field or exposes one.
std::optional<MaximalIdealData> distinguished_maximal(const ExprPtr& e);

/// Canonical s-expression rendering of a term.
std::string to_sexpr(const ExprPtr& e);

// --------------------------------------------------------------------------
// Structural validation
// --------------------------------------------------------------------------

struct Violation {
    std::string path;     // e.g. "$.T.D"
    std::string message;
};

/// Pure and total; empty result iff every structural invariant holds
/// recursively. Violations carry a path into the term.
std::vector<Violation> validate(const ExprPtr& e);

// --------------------------------------------------------------------------
// Errors
// --------------------------------------------------------------------------

enum class ErrorKind {
    UnsupportedAlgebraClass,
    HypothesisNotMet,
    PreconditionViolated,
};

class EngineError : public std::runtime_error {
public:
    EngineError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Cross-checked formulas disagreed; always a bug, never user error.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dimcalc
