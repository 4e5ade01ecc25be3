#include "dimcalc/core.hpp"

#include <sstream>

namespace dimcalc {

const char* to_string(TriState t) {
    switch (t) {
        case TriState::Yes: return "yes";
        case TriState::No: return "no";
        default: return "unknown";
    }
}

DimValue DimValue::interval(int lo, int hi) {
    if (lo > hi) throw InternalError("DimValue interval with lo > hi");
    return {lo, hi};
}

std::string DimValue::str() const {
    if (is_exact()) return std::to_string(lo);
    return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

DimValue dim_max(DimValue a, DimValue b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

DimValue dim_min(DimValue a, DimValue b) {
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

ExprPtr make_k() { return std::make_shared<AlgebraExpr>(AlgebraExpr{BaseK{}}); }

ExprPtr make_field(int tdeg) {
    return std::make_shared<AlgebraExpr>(AlgebraExpr{FieldLeaf{tdeg}});
}

ExprPtr make_af(int tdeg, int dim, std::optional<MaximalIdealData> maximal) {
    return std::make_shared<AlgebraExpr>(AlgebraExpr{AFLeaf{tdeg, dim, maximal}});
}

ExprPtr make_poly(ExprPtr base, int vars) {
    if (const auto* inner = as<PolyExt>(base)) {
        // base[m][n] = base[m+n]
        return make_poly(inner->base, inner->vars + vars);
    }
    return std::make_shared<AlgebraExpr>(AlgebraExpr{PolyExt{std::move(base), vars}});
}

ExprPtr make_pullback(ExprPtr t, ExprPtr d) {
    return std::make_shared<AlgebraExpr>(AlgebraExpr{Pullback{std::move(t), std::move(d)}});
}

int tdeg_of(const ExprPtr& e) {
    if (as<BaseK>(e)) return 0;
    if (const auto* f = as<FieldLeaf>(e)) return f->tdeg;
    if (const auto* a = as<AFLeaf>(e)) return a->tdeg;
    if (const auto* p = as<PolyExt>(e)) return tdeg_of(p->base) + p->vars;
    return tdeg_of(as<Pullback>(e)->t);
}

bool is_field_expr(const ExprPtr& e) {
    if (as<BaseK>(e) || as<FieldLeaf>(e)) return true;
    if (const auto* a = as<AFLeaf>(e)) return a->dim == 0;
    return false;
}

std::optional<MaximalIdealData> distinguished_maximal(const ExprPtr& e) {
    if (const auto* a = as<AFLeaf>(e)) return a->maximal;
    const auto* pb = as<Pullback>(e);
    if (!pb) return std::nullopt;
    auto mt = distinguished_maximal(pb->t);
    if (!mt) return std::nullopt;
    if (is_field_expr(pb->d)) {
        // R/M = D is a field, so the conductor M itself is the maximal.
        return MaximalIdealData{mt->height, tdeg_of(pb->d), mt->is_unique_maximal};
    }
    auto md = distinguished_maximal(pb->d);
    if (!md) return std::nullopt;
    return MaximalIdealData{mt->height + md->height, md->residue_tdeg,
                            mt->is_unique_maximal && md->is_unique_maximal};
}

std::string to_sexpr(const ExprPtr& e) {
    std::ostringstream out;
    if (as<BaseK>(e)) {
        out << "(k)";
    } else if (const auto* f = as<FieldLeaf>(e)) {
        out << "(field " << f->tdeg << ")";
    } else if (const auto* a = as<AFLeaf>(e)) {
        out << "(af :tdeg " << a->tdeg << " :dim " << a->dim;
        if (a->maximal) {
            out << " :maximal (:ht " << a->maximal->height << " :res-tdeg "
                << a->maximal->residue_tdeg;
            if (a->maximal->is_unique_maximal) out << " :unique";
            out << ")";
        }
        out << ")";
    } else if (const auto* p = as<PolyExt>(e)) {
        out << "(poly " << to_sexpr(p->base) << " " << p->vars << ")";
    } else {
        const auto* pb = as<Pullback>(e);
        out << "(pullback :T " << to_sexpr(pb->t) << " :D " << to_sexpr(pb->d) << ")";
    }
    return out.str();
}

namespace {

void validate_rec(const ExprPtr& e, const std::string& path, std::vector<Violation>& out) {
    auto flag = [&](const std::string& msg) { out.push_back({path, msg}); };

    if (const auto* f = as<FieldLeaf>(e)) {
        if (f->tdeg < 0) flag("transcendence degree must be >= 0");
        return;
    }
    if (const auto* a = as<AFLeaf>(e)) {
        if (a->tdeg < 0) flag("transcendence degree must be >= 0");
        if (a->dim < 0) flag("dimension must be >= 0");
        if (a->dim > a->tdeg)
            flag("AF-domain has dim " + std::to_string(a->dim) + " > tdeg " +
                 std::to_string(a->tdeg) + " (the AF identity forces dim <= tdeg)");
        if (a->maximal) {
            const auto& m = *a->maximal;
            if (a->dim == 0) flag("a field exposes no distinguished maximal ideal");
            if (m.height < 1 && a->dim >= 1)
                flag("a proper maximal ideal of a non-field has height >= 1");
            if (m.residue_tdeg < 0) flag("residue transcendence degree must be >= 0");
            if (m.height > a->dim)
                flag("maximal ideal height " + std::to_string(m.height) + " exceeds dim " +
                     std::to_string(a->dim));
            if (m.height + m.residue_tdeg != a->tdeg)
                flag("AF identity violated at M: ht " + std::to_string(m.height) +
                     " + res-tdeg " + std::to_string(m.residue_tdeg) + " != tdeg " +
                     std::to_string(a->tdeg));
        }
        return;
    }
    if (const auto* p = as<PolyExt>(e)) {
        if (p->vars < 1) flag("polynomial extension needs at least one variable");
        validate_rec(p->base, path + ".base", out);
        return;
    }
    if (const auto* pb = as<Pullback>(e)) {
        validate_rec(pb->t, path + ".T", out);
        validate_rec(pb->d, path + ".D", out);
        auto mt = distinguished_maximal(pb->t);
        if (!mt) {
            flag("pullback T must expose a distinguished maximal ideal");
        } else {
            if (mt->height < 1)
                flag("pullback T must not be a field (its maximal ideal has height 0)");
            int s = tdeg_of(pb->d);
            if (s > mt->residue_tdeg)
                flag("tdeg(D) = " + std::to_string(s) + " exceeds the residue tdeg r = " +
                     std::to_string(mt->residue_tdeg) + " of T at M");
        }
        return;
    }
    // BaseK: nothing to check.
}

}  // namespace

std::vector<Violation> validate(const ExprPtr& e) {
    std::vector<Violation> out;
    validate_rec(e, "$", out);
    return out;
}

}  // namespace dimcalc
