#include "dimcalc/invariants.hpp"

namespace dimcalc {

namespace {

InvariantBundle field_bundle(int tdeg) {
    InvariantBundle b;
    b.tdeg = tdeg;
    b.krull_dim = DimValue::exact(0);
    b.valuative_dim = DimValue::exact(0);
    b.is_af = TriState::Yes;
    b.is_jaffard = TriState::Yes;
    b.is_field = true;
    return b;
}

TriState jaffard_from(const DimValue& dim, const DimValue& vdim, TriState af) {
    if (dim.is_exact() && vdim.is_exact()) {
        if (dim == vdim) return TriState::Yes;
        if (af == TriState::Yes)
            throw InternalError("AF-certified algebra with dim != dim_v");
        return TriState::No;
    }
    if (af == TriState::Yes) return TriState::Yes;
    return TriState::Unknown;
}

// t.d.(K:D) of a pullback, from the residue tdeg of T at M and tdeg(D).
int residue_gap(const Pullback& pb) {
    auto mt = distinguished_maximal(pb.t);
    return mt->residue_tdeg - tdeg_of(pb.d);
}

InvariantBundle analyze_poly(const PolyExt& p);
InvariantBundle analyze_pullback(const Pullback& pb);

}  // namespace

namespace {

// dim <= dim_v <= t.d. holds throughout class C (valuations trivial on k
// have rank at most the transcendence degree); certified intervals must not
// leave that envelope.
InvariantBundle clamp_to_class(InvariantBundle b) {
    b.valuative_dim.hi = std::min(b.valuative_dim.hi, b.tdeg);
    b.krull_dim.hi = std::min(b.krull_dim.hi, b.valuative_dim.hi);
    if (b.krull_dim.lo > b.krull_dim.hi || b.valuative_dim.lo > b.valuative_dim.hi)
        throw InternalError("certified bounds crossed the class-C envelope");
    return b;
}

InvariantBundle analyze_unclamped(const ExprPtr& e) {
    if (as<BaseK>(e)) return field_bundle(0);
    if (const auto* f = as<FieldLeaf>(e)) return field_bundle(f->tdeg);
    if (const auto* a = as<AFLeaf>(e)) {
        InvariantBundle b;
        b.tdeg = a->tdeg;
        b.krull_dim = DimValue::exact(a->dim);
        b.valuative_dim = DimValue::exact(a->dim);  // AF => Jaffard
        b.is_af = TriState::Yes;
        b.is_jaffard = TriState::Yes;
        b.is_field = a->dim == 0;
        b.maximal = a->maximal;
        return b;
    }
    if (const auto* p = as<PolyExt>(e)) return analyze_poly(*p);
    return analyze_pullback(*as<Pullback>(e));
}

InvariantBundle analyze_poly(const PolyExt& p) {
    const InvariantBundle base = analyze(p.base);
    const int n = p.vars;

    InvariantBundle b;
    b.tdeg = base.tdeg + n;
    b.valuative_dim = base.valuative_dim + n;

    // AF status: AF is stable under polynomial extension, and a pullback
    // issued from AF-domains becomes AF after adjoining r - s variables.
    b.is_af = TriState::Unknown;
    if (base.is_af == TriState::Yes) {
        b.is_af = TriState::Yes;
    } else if (const auto* pb = as<Pullback>(p.base)) {
        if (af_status(pb->t) == TriState::Yes && af_status(pb->d) == TriState::Yes &&
            n >= residue_gap(*pb)) {
            b.is_af = TriState::Yes;
        }
    }

    // Krull dimension, most precise certified branch first.
    if ((base.is_af == TriState::Yes || base.is_jaffard == TriState::Yes) &&
        base.krull_dim.is_exact()) {
        b.krull_dim = base.krull_dim + n;
    } else if (b.is_af == TriState::Yes && b.valuative_dim.is_exact()) {
        // The extension itself is AF, hence Jaffard: dim = dim_v.
        b.krull_dim = b.valuative_dim;
    } else if (const auto* pb = as<Pullback>(p.base);
               pb && af_status(pb->t) == TriState::Yes) {
        auto mt = distinguished_maximal(pb->t);
        DimValue dim_t = krull_dim(pb->t);
        if (dim_t.is_exact() && mt->height == dim_t.value()) {
            // dim R[n] = dim D[n] + ht M + min(n, r - s); equality needs T
            // locally Jaffard with ht M = dim T.
            DimValue dim_dn = krull_dim(make_poly(pb->d, n));
            b.krull_dim = dim_dn + mt->height + std::min(n, residue_gap(*pb));
        } else {
            b.krull_dim = DimValue{base.krull_dim.lo + n, base.valuative_dim.hi + n};
        }
    } else {
        b.krull_dim = DimValue{base.krull_dim.lo + n, base.valuative_dim.hi + n};
    }

    b.is_jaffard = jaffard_from(b.krull_dim, b.valuative_dim, b.is_af);
    return b;
}

InvariantBundle analyze_pullback(const Pullback& pb) {
    const InvariantBundle bt = analyze(pb.t);
    const InvariantBundle bd = analyze(pb.d);
    if (!bt.maximal)
        throw InternalError("pullback T without a distinguished maximal ideal (unvalidated term)");
    const MaximalIdealData mt = *bt.maximal;
    const int ht_m = mt.height;
    const int gap = mt.residue_tdeg - bd.tdeg;  // t.d.(K:D) = r - s

    InvariantBundle b;
    b.tdeg = bt.tdeg;

    if (bd.is_field) {
        b.maximal = MaximalIdealData{ht_m, bd.tdeg, mt.is_unique_maximal};
    } else if (bd.maximal) {
        b.maximal = MaximalIdealData{ht_m + bd.maximal->height, bd.maximal->residue_tdeg,
                                     mt.is_unique_maximal && bd.maximal->is_unique_maximal};
    }

    // dim R = max(dim T, dim D + dim T_M), with dim T_M = ht M.
    b.krull_dim = dim_max(bt.krull_dim, bd.krull_dim + ht_m);

    // dim_v R = max(dim_v T, dim_v D + dim_v T_M + t.d.(K:D)). A localization
    // of an AF-domain at a height-h prime is a local Jaffard domain of
    // dimension h; without AF certification only [ht M, dim_v T] is known.
    DimValue vdim_tm = bt.is_af == TriState::Yes
                           ? DimValue::exact(ht_m)
                           : DimValue{ht_m, std::max(ht_m, bt.valuative_dim.hi)};
    b.valuative_dim = dim_max(bt.valuative_dim, bd.valuative_dim + vdim_tm + gap);

    // R is AF iff T and D are AF and t.d.(K:D) = 0.
    if (bt.is_af == TriState::Yes && bd.is_af == TriState::Yes) {
        b.is_af = gap == 0 ? TriState::Yes : TriState::No;
    } else {
        b.is_af = TriState::Unknown;
    }

    b.is_jaffard = jaffard_from(b.krull_dim, b.valuative_dim, b.is_af);
    return b;
}

}  // namespace

InvariantBundle analyze(const ExprPtr& e) { return clamp_to_class(analyze_unclamped(e)); }

DimValue krull_dim(const ExprPtr& e) { return analyze(e).krull_dim; }
DimValue valuative_dim(const ExprPtr& e) { return analyze(e).valuative_dim; }
TriState af_status(const ExprPtr& e) { return analyze(e).is_af; }
TriState jaffard_status(const ExprPtr& e) { return analyze(e).is_jaffard; }
std::optional<MaximalIdealData> maximal_data(const ExprPtr& e) { return analyze(e).maximal; }

int ht_m_poly(const ExprPtr& pullback_expr, int n) {
    const auto* pb = as<Pullback>(pullback_expr);
    if (!pb)
        throw EngineError(ErrorKind::HypothesisNotMet, "ht M[n] needs a pullback argument");
    if (af_status(pb->t) != TriState::Yes)
        throw EngineError(ErrorKind::HypothesisNotMet,
                          "ht M[n] formula needs an AF-certified T (T_M locally Jaffard)");
    auto mt = distinguished_maximal(pb->t);
    return mt->height + std::min(n, residue_gap(*pb));
}

}  // namespace dimcalc
