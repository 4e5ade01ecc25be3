#include "dimcalc/tensor.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace dimcalc {

const char* rule_id_string(RuleId r) {
    switch (r) {
        case RuleId::F1Sharp: return "F1-Sharp";
        case RuleId::F2Wadsworth: return "F2-Wadsworth";
        case RuleId::F3OneAF: return "F3-OneAF";
        case RuleId::F4Thm19: return "F4-Thm1.9";
        case RuleId::F5Thm32: return "F5-Thm3.2";
        case RuleId::F6Cor33: return "F6-Cor3.3";
        case RuleId::FBBounds: return "FB-Bounds";
        case RuleId::V1Thm23: return "V1-Thm2.3";
        case RuleId::V2UpperBound: return "V2-UpperBound";
        case RuleId::V3AFRing: return "V3-AFRing";
        case RuleId::J1Thm31: return "J1-Thm3.1";
        case RuleId::J2DimCompare: return "J2-DimCompare";
        case RuleId::DField: return "D-field";
        case RuleId::DAF: return "D-AF";
        case RuleId::DPullback: return "D-pullback";
        case RuleId::DZero: return "D-zero";
    }
    return "?";
}

const char* rule_display_name(RuleId r) {
    switch (r) {
        case RuleId::F1Sharp: return "Sharp";
        case RuleId::F2Wadsworth: return "Wadsworth";
        case RuleId::F3OneAF: return "one-AF";
        case RuleId::F4Thm19: return "Thm 1.9";
        case RuleId::F5Thm32: return "Thm 3.2";
        case RuleId::F6Cor33: return "Cor 3.3";
        case RuleId::FBBounds: return "bounds";
        case RuleId::V1Thm23: return "Thm 2.3";
        case RuleId::V2UpperBound: return "upper bound";
        case RuleId::V3AFRing: return "AF ring";
        case RuleId::J1Thm31: return "Thm 3.1";
        case RuleId::J2DimCompare: return "dim comparison";
        case RuleId::DField: return "field";
        case RuleId::DAF: return "AF";
        case RuleId::DPullback: return "pullback";
        case RuleId::DZero: return "dim";
    }
    return "?";
}

namespace {

std::string fmt(const char* text, int a) {
    std::ostringstream out;
    out << text << a;
    return out.str();
}

// The five invariants of a pullback that the theorems consume, plus the
// certification statuses needed for hypothesis checks.
struct PullbackStats {
    ExprPtr t;
    ExprPtr d;
    int ht_m = 0;
    int r = 0;       // t.d.(K)
    int s = 0;       // t.d.(D)
    int tdeg = 0;    // t.d.(T) = t.d.(R)
    bool unique_m = false;
    TriState af_t = TriState::Unknown;
    TriState af_d = TriState::Unknown;
    TriState jaffard_d = TriState::Unknown;
    DimValue dim_t;
    DimValue dim_d;

    int gap() const { return r - s; }
    bool ht_eq_dim_t() const { return dim_t.is_exact() && dim_t.value() == ht_m; }
    bool thm19_eligible() const {
        return af_t == TriState::Yes && af_d == TriState::Yes && ht_eq_dim_t();
    }
};

std::optional<PullbackStats> pullback_stats(const ExprPtr& e) {
    const auto* pb = as<Pullback>(e);
    if (!pb) return std::nullopt;
    auto mt = distinguished_maximal(pb->t);
    if (!mt) return std::nullopt;
    PullbackStats st;
    st.t = pb->t;
    st.d = pb->d;
    st.ht_m = mt->height;
    st.r = mt->residue_tdeg;
    st.s = tdeg_of(pb->d);
    st.tdeg = tdeg_of(pb->t);
    st.unique_m = mt->is_unique_maximal;
    InvariantBundle bt = analyze(pb->t);
    InvariantBundle bd = analyze(pb->d);
    st.af_t = bt.is_af;
    st.af_d = bd.is_af;
    st.jaffard_d = bd.is_jaffard;
    st.dim_t = bt.krull_dim;
    st.dim_d = bd.krull_dim;
    return st;
}

DerivationTrace rejected(RuleId rule, std::vector<HypothesisCheck> checks,
                         DimValue info = DimValue::exact(0)) {
    DerivationTrace t;
    t.rule = rule;
    t.value = info;
    t.applied = false;
    t.checks = std::move(checks);
    return t;
}

}  // namespace

// --------------------------------------------------------------------------
// D(s, d, A)
// --------------------------------------------------------------------------

bool compute_d_supported(int s, const ExprPtr& a) {
    if (s == 0) return true;
    if (af_status(a) == TriState::Yes) return true;
    auto st = pullback_stats(a);
    return st && st->thm19_eligible();
}

DimResult compute_d(int s, int d, const ExprPtr& a) {
    if (d < 0 || d > s)
        throw EngineError(ErrorKind::PreconditionViolated, "D(s, d, A) needs 0 <= d <= s");

    DerivationTrace tr;
    if (s == 0) {
        // Delta(0, 0, p) = ht p, so D(0, 0, A) = dim A.
        tr.rule = RuleId::DZero;
        tr.value = krull_dim(a);
        tr.checks.push_back({"s = 0: Delta(0, d, p) reduces to ht p", true});
        return {tr.value, tr};
    }

    InvariantBundle bundle = analyze(a);
    if (bundle.is_af == TriState::Yes) {
        // ht p[s] = ht p and t.d.(A/p) = t.d.(A) - ht p collapse the maximum
        // to the prime of maximal height.
        if (!bundle.krull_dim.is_exact())
            throw InternalError("AF-certified algebra without exact dimension");
        int dim = bundle.krull_dim.value();
        tr.rule = bundle.is_field ? RuleId::DField : RuleId::DAF;
        tr.value = DimValue::exact(std::min(s + dim, d + bundle.tdeg));
        tr.checks.push_back(bundle.is_field
                                ? HypothesisCheck{"A is a field: its only prime is (0)", true}
                                : HypothesisCheck{"A is AF-certified: ht p[s] = ht p and "
                                                  "t.d.(A/p) = t.d.(A) - ht p",
                                                  true});
        tr.checks.push_back({fmt("value = min(s + dim A, d + t.d.(A)) = ", tr.value.value()),
                             true});
        return {tr.value, tr};
    }

    auto st = pullback_stats(a);
    if (st && st->thm19_eligible()) {
        int dim_t = st->dim_t.value();
        int dim_d = st->dim_d.value();
        // Primes containing M, maximized at the height-dim(D) prime below q.
        int branch_m = dim_t + std::min(s, st->gap()) + std::min(s + dim_d, d + st->s);
        // Primes avoiding M have height up to dim T - 1; without a unique
        // maximal ideal another maximal of full height may avoid M.
        int h_lo = dim_t - 1;
        int h_hi = st->unique_m ? dim_t - 1 : dim_t;
        DimValue branch_out{std::min(s + h_lo, d + st->tdeg), std::min(s + h_hi, d + st->tdeg)};
        tr.rule = RuleId::DPullback;
        tr.value = dim_max(DimValue::exact(branch_m), branch_out);
        tr.checks.push_back({"T is AF-certified", true});
        tr.checks.push_back({"D is AF-certified", true});
        tr.checks.push_back({"ht M = dim T", true});
        tr.checks.push_back({fmt("primes containing M contribute ", branch_m), true});
        tr.checks.push_back(
            {"primes avoiding M contribute " + branch_out.str() +
                 (st->unique_m ? " (M unique: heights stop at dim T - 1)"
                               : " (M not unique: outer height taken as an interval)"),
             true});
        return {tr.value, tr};
    }

    throw EngineError(ErrorKind::UnsupportedAlgebraClass,
                      "D(s, d, A) is only evaluated for AF-certified algebras and "
                      "eligible pullbacks");
}

// --------------------------------------------------------------------------
// Krull dimension rules
// --------------------------------------------------------------------------

namespace {

using Outcome = std::optional<DimResult>;

// k (x) A = A; formally F3 with D(0, 0, A) = dim A.
Outcome try_identity(const ExprPtr& a, const ExprPtr& b) {
    const ExprPtr* other = nullptr;
    if (as<BaseK>(a)) other = &b;
    else if (as<BaseK>(b)) other = &a;
    if (!other) return std::nullopt;
    DimResult inner = compute_d(0, 0, *other);
    DerivationTrace tr;
    tr.rule = RuleId::F3OneAF;
    tr.value = inner.value;
    tr.checks.push_back({"one factor is the ground field k: k (x) A = A", true});
    tr.children.push_back(inner.trace);
    return DimResult{inner.value, tr};
}

Outcome try_f1(const ExprPtr& a, const ExprPtr& b, DerivationTrace* record) {
    bool fa = is_field_expr(a), fb = is_field_expr(b);
    if (!fa || !fb) {
        if (record)
            *record = rejected(RuleId::F1Sharp, {{"both factors are fields", false}});
        return std::nullopt;
    }
    int t1 = tdeg_of(a), t2 = tdeg_of(b);
    DerivationTrace tr;
    tr.rule = RuleId::F1Sharp;
    tr.value = DimValue::exact(std::min(t1, t2));
    tr.checks.push_back({"both factors are fields", true});
    tr.checks.push_back({fmt("min(t.d. K, t.d. L) = ", tr.value.value()), true});
    return DimResult{tr.value, tr};
}

Outcome try_f2(const ExprPtr& a, const ExprPtr& b, DerivationTrace* record) {
    InvariantBundle b1 = analyze(a), b2 = analyze(b);
    bool ok1 = b1.is_af == TriState::Yes, ok2 = b2.is_af == TriState::Yes;
    if (!ok1 || !ok2) {
        if (record) {
            std::vector<HypothesisCheck> checks{{"first factor AF-certified", ok1},
                                                {"second factor AF-certified", ok2}};
            DimValue raw = DimValue::exact(0);
            if (b1.krull_dim.is_exact() && b2.krull_dim.is_exact()) {
                raw = DimValue::exact(std::min(b1.krull_dim.value() + b2.tdeg,
                                               b2.krull_dim.value() + b1.tdeg));
                checks.push_back({"raw value min(dim A1 + t.d. A2, dim A2 + t.d. A1) = " +
                                      raw.str() + " (not certified)",
                                  true});
            }
            *record = rejected(RuleId::F2Wadsworth, std::move(checks), raw);
        }
        return std::nullopt;
    }
    DerivationTrace tr;
    tr.rule = RuleId::F2Wadsworth;
    tr.value = DimValue::exact(
        std::min(b1.krull_dim.value() + b2.tdeg, b2.krull_dim.value() + b1.tdeg));
    tr.checks.push_back({"first factor AF-certified", true});
    tr.checks.push_back({"second factor AF-certified", true});
    tr.checks.push_back(
        {fmt("min(dim A1 + t.d. A2, dim A2 + t.d. A1) = ", tr.value.value()), true});
    return DimResult{tr.value, tr};
}

Outcome try_f3(const ExprPtr& a, const ExprPtr& b, DerivationTrace* record) {
    struct Side {
        const ExprPtr* af;
        const ExprPtr* other;
        const char* label;
    };
    std::vector<Side> sides;
    if (af_status(a) == TriState::Yes) sides.push_back({&a, &b, "first"});
    if (af_status(b) == TriState::Yes) sides.push_back({&b, &a, "second"});
    if (sides.empty()) {
        if (record)
            *record = rejected(RuleId::F3OneAF, {{"one factor AF-certified", false}});
        return std::nullopt;
    }
    for (const Side& side : sides) {
        InvariantBundle baf = analyze(*side.af);
        if (!compute_d_supported(baf.tdeg, *side.other)) continue;
        DimResult inner = compute_d(baf.tdeg, baf.krull_dim.value(), *side.other);
        DerivationTrace tr;
        tr.rule = RuleId::F3OneAF;
        tr.value = inner.value;
        tr.checks.push_back(
            {std::string(side.label) + " factor is AF-certified: dim = D(t.d. A, dim A, other)",
             true});
        tr.children.push_back(inner.trace);
        return DimResult{inner.value, tr};
    }
    if (record)
        *record = rejected(RuleId::F3OneAF,
                           {{"one factor AF-certified", true},
                            {"D(s, d, .) supports the other factor", false}});
    return std::nullopt;
}

DimResult dispatch_krull(const ExprPtr& a, const ExprPtr& b);

Outcome try_f6(const ExprPtr& a, const ExprPtr& b, DerivationTrace* record) {
    auto fail = [&](std::vector<HypothesisCheck> checks) -> Outcome {
        if (record) *record = rejected(RuleId::F6Cor33, std::move(checks));
        return std::nullopt;
    };
    if (!(*a == *b)) return fail({{"R1 and R2 are the same construction", false}});
    auto st = pullback_stats(a);
    if (!st) return fail({{"argument is a pullback", false}});
    if (st->af_t != TriState::Yes) return fail({{"T AF-certified", false}});
    if (!st->ht_eq_dim_t()) return fail({{"ht M = dim T", false}});
    if (st->jaffard_d != TriState::Yes) return fail({{"D Jaffard-certified", false}});

    int t = st->tdeg;
    int ht_contrib = ht_m_poly(a, t);
    DimResult rec = dispatch_krull(st->d, a);
    DimValue recursive = rec.value + ht_contrib;

    DerivationTrace tr;
    tr.rule = RuleId::F6Cor33;
    tr.checks.push_back({"R1 and R2 are the same construction", true});
    tr.checks.push_back({"T AF-certified", true});
    tr.checks.push_back({"ht M = dim T", true});
    tr.checks.push_back({"D Jaffard-certified", true});
    tr.checks.push_back({"recursive path: ht M[t] + dim(D (x) R) = " +
                             std::to_string(ht_contrib) + " + " + rec.value.str() + " = " +
                             recursive.str(),
                         true});
    tr.children.push_back(rec.trace);

    if (st->gap() <= st->s) {
        DimValue vdim = valuative_dim(a);
        if (!vdim.is_exact())
            throw InternalError("F6 shortcut requires an exact dim_v R");
        int shortcut = t + vdim.value();
        if (shortcut < recursive.lo || shortcut > recursive.hi)
            throw InternalError("F6 path disagreement: recursive " + recursive.str() +
                                " vs shortcut " + std::to_string(shortcut));
        tr.checks.push_back({"t.d.(K:D) <= t.d.(D): shortcut t + dim_v R = " +
                                 std::to_string(t) + " + " + std::to_string(vdim.value()) +
                                 " = " + std::to_string(shortcut) + ", paths agree",
                             true});
        tr.value = DimValue::exact(shortcut);
    } else {
        tr.checks.push_back({"t.d.(D) < t.d.(K:D): recursive path only", true});
        tr.value = recursive;
    }
    return DimResult{tr.value, tr};
}

Outcome try_f4(const ExprPtr& a, const ExprPtr& b, DerivationTrace* record) {
    auto s1 = pullback_stats(a);
    auto s2 = pullback_stats(b);
    auto fail = [&](std::vector<HypothesisCheck> checks) -> Outcome {
        if (record) *record = rejected(RuleId::F4Thm19, std::move(checks));
        return std::nullopt;
    };
    if (!s1 || !s2) return fail({{"both factors are pullbacks", false}});
    std::vector<HypothesisCheck> checks;
    bool ok = true;
    auto need = [&](bool cond, const std::string& text) {
        checks.push_back({text, cond});
        ok = ok && cond;
    };
    need(s1->af_t == TriState::Yes, "T1 AF-certified");
    need(s1->af_d == TriState::Yes, "D1 AF-certified");
    need(s1->ht_eq_dim_t(), "ht M1 = dim T1");
    need(s2->af_t == TriState::Yes, "T2 AF-certified");
    need(s2->af_d == TriState::Yes, "D2 AF-certified");
    need(s2->ht_eq_dim_t(), "ht M2 = dim T2");
    if (!ok) return fail(std::move(checks));

    int ht1 = ht_m_poly(a, s2->tdeg);
    int ht2 = ht_m_poly(b, s1->tdeg);
    DimResult d1 = compute_d(s1->s, s1->dim_d.value(), b);
    DimResult d2 = compute_d(s2->s, s2->dim_d.value(), a);
    DimValue o1 = d1.value + ht1;
    DimValue o2 = d2.value + ht2;

    DerivationTrace tr;
    tr.rule = RuleId::F4Thm19;
    tr.value = dim_max(o1, o2);
    tr.checks = std::move(checks);
    tr.checks.push_back({"orientation 1: ht M1[t2] + D(s1, dim D1, R2) = " +
                             std::to_string(ht1) + " + " + d1.value.str() + " = " + o1.str(),
                         true});
    tr.checks.push_back({"orientation 2: ht M2[t1] + D(s2, dim D2, R1) = " +
                             std::to_string(ht2) + " + " + d2.value.str() + " = " + o2.str(),
                         true});
    tr.children.push_back(d1.trace);
    tr.children.push_back(d2.trace);
    return DimResult{tr.value, tr};
}

Outcome try_f5(const ExprPtr& a, const ExprPtr& b, DerivationTrace* record) {
    auto s1 = pullback_stats(a);
    auto s2 = pullback_stats(b);
    auto fail = [&](std::vector<HypothesisCheck> checks) -> Outcome {
        if (record) *record = rejected(RuleId::F5Thm32, std::move(checks));
        return std::nullopt;
    };
    if (!s1 || !s2) return fail({{"both factors are pullbacks", false}});
    std::vector<HypothesisCheck> checks;
    bool ok = true;
    auto need = [&](bool cond, const std::string& text) {
        checks.push_back({text, cond});
        ok = ok && cond;
    };
    need(s1->af_t == TriState::Yes, "T1 AF-certified");
    need(s1->ht_eq_dim_t(), "ht M1 = dim T1");
    need(s2->af_t == TriState::Yes, "T2 AF-certified");
    need(s2->ht_eq_dim_t(), "ht M2 = dim T2");
    need(s1->s <= s2->gap() || s2->s <= s1->gap(),
         "t.d.(D1) <= t.d.(K2:D2) or t.d.(D2) <= t.d.(K1:D1)");
    if (!ok) return fail(std::move(checks));

    int ht1 = ht_m_poly(a, s2->tdeg);
    int ht2 = ht_m_poly(b, s1->tdeg);
    DimResult r1 = dispatch_krull(s1->d, b);
    DimResult r2 = dispatch_krull(a, s2->d);
    DimValue b1 = r1.value + ht1;
    DimValue b2 = r2.value + ht2;

    DerivationTrace tr;
    tr.rule = RuleId::F5Thm32;
    tr.value = dim_max(b1, b2);
    tr.checks = std::move(checks);
    tr.checks.push_back({"branch 1: ht M1[t2] + dim(D1 (x) R2) = " + std::to_string(ht1) +
                             " + " + r1.value.str() + " = " + b1.str(),
                         true});
    tr.checks.push_back({"branch 2: ht M2[t1] + dim(R1 (x) D2) = " + std::to_string(ht2) +
                             " + " + r2.value.str() + " = " + b2.str(),
                         true});
    tr.children.push_back(r1.trace);
    tr.children.push_back(r2.trace);
    return DimResult{tr.value, tr};
}

// Certified interval: the valuative upper bound over the best computable
// lower bounds.
DimResult eval_fb(const ExprPtr& a, const ExprPtr& b) {
    InvariantBundle b1 = analyze(a), b2 = analyze(b);
    int hi = std::min(b1.valuative_dim.hi + b2.tdeg, b2.valuative_dim.hi + b1.tdeg);

    DerivationTrace tr;
    tr.rule = RuleId::FBBounds;
    tr.checks.push_back(
        {fmt("upper: min(dim_v A1 + t.d. A2, dim_v A2 + t.d. A1) = ", hi), true});

    int lo = std::max(b1.krull_dim.lo, b2.krull_dim.lo);
    tr.checks.push_back(
        {fmt("lower: flat base change embeds both factors, max(dim A1, dim A2) = ", lo), true});

    // One-sided chain bound through the conductor: dim >= ht M1[t2] + dim(D1 (x) A2).
    auto chain_bound = [&](const ExprPtr& side, const ExprPtr& other, const char* label) {
        auto st = pullback_stats(side);
        if (!st || st->af_t != TriState::Yes) return;
        int ht = ht_m_poly(side, tdeg_of(other));
        DimResult rec = dispatch_krull(st->d, other);
        int cand = ht + rec.value.lo;
        tr.checks.push_back({std::string("lower: ") + label + ": ht M[t] + dim(D (x) other) >= " +
                                 std::to_string(ht) + " + " + std::to_string(rec.value.lo) +
                                 " = " + std::to_string(cand),
                             true});
        tr.children.push_back(rec.trace);
        lo = std::max(lo, cand);
    };
    chain_bound(a, b, "first factor");
    chain_bound(b, a, "second factor");

    // alpha bounds, valid under the full Thm 1.9 hypotheses (alpha3 only under
    // the transcendence-degree trichotomy that makes it dominated).
    auto s1 = pullback_stats(a);
    auto s2 = pullback_stats(b);
    if (s1 && s2 && s1->thm19_eligible() && s2->thm19_eligible()) {
        auto alphas = alpha_values(a, b);
        lo = std::max({lo, alphas[0].lo, alphas[1].lo});
        if (s1->s <= s2->gap() || s2->s <= s1->gap()) lo = std::max(lo, alphas[2].lo);
        tr.checks.push_back({fmt("lower: alpha bounds raise the floor to ", lo), true});
    }

    if (lo > hi)
        throw InternalError("fallback bounds crossed: lo " + std::to_string(lo) + " > hi " +
                            std::to_string(hi));
    tr.value = DimValue{lo, hi};
    return {tr.value, tr};
}

DimResult dispatch_krull(const ExprPtr& a, const ExprPtr& b) {
    if (Outcome o = try_identity(a, b)) return *o;

    std::vector<DerivationTrace> rejections;
    auto record = [&]() -> DerivationTrace* {
        rejections.emplace_back();
        return &rejections.back();
    };
    auto finish = [&](DimResult res) {
        res.trace.children.insert(res.trace.children.begin(), rejections.begin(),
                                  rejections.end());
        return res;
    };

    if (Outcome o = try_f1(a, b, record())) { rejections.pop_back(); return finish(*o); }
    if (Outcome o = try_f2(a, b, record())) { rejections.pop_back(); return finish(*o); }
    if (Outcome o = try_f3(a, b, record())) { rejections.pop_back(); return finish(*o); }
    if (Outcome o = try_f6(a, b, record())) { rejections.pop_back(); return finish(*o); }
    if (Outcome o = try_f4(a, b, record())) { rejections.pop_back(); return finish(*o); }
    if (Outcome o = try_f5(a, b, record())) { rejections.pop_back(); return finish(*o); }
    return finish(eval_fb(a, b));
}

}  // namespace

DimResult tensor_krull_dim(const ExprPtr& a, const ExprPtr& b) { return dispatch_krull(a, b); }

std::vector<RuleEvaluation> applicable_krull_rules(const ExprPtr& a, const ExprPtr& b) {
    std::vector<RuleEvaluation> out;
    if (Outcome o = try_f1(a, b, nullptr)) out.push_back({RuleId::F1Sharp, o->value});
    if (Outcome o = try_f2(a, b, nullptr)) out.push_back({RuleId::F2Wadsworth, o->value});
    if (Outcome o = try_f3(a, b, nullptr)) out.push_back({RuleId::F3OneAF, o->value});
    if (Outcome o = try_f6(a, b, nullptr)) out.push_back({RuleId::F6Cor33, o->value});
    if (Outcome o = try_f4(a, b, nullptr)) out.push_back({RuleId::F4Thm19, o->value});
    if (Outcome o = try_f5(a, b, nullptr)) out.push_back({RuleId::F5Thm32, o->value});
    out.push_back({RuleId::FBBounds, eval_fb(a, b).value});
    return out;
}

// --------------------------------------------------------------------------
// Valuative dimension
// --------------------------------------------------------------------------

DimResult tensor_valuative_dim(const ExprPtr& a, const ExprPtr& b) {
    InvariantBundle b1 = analyze(a), b2 = analyze(b);

    if (b1.is_af == TriState::Yes && b2.is_af == TriState::Yes) {
        DimResult kr = tensor_krull_dim(a, b);
        DerivationTrace tr;
        tr.rule = RuleId::V3AFRing;
        tr.value = kr.value;
        tr.checks.push_back(
            {"both factors AF-certified: the tensor product is an AF-ring, hence Jaffard",
             true});
        tr.children.push_back(kr.trace);
        return {tr.value, tr};
    }

    auto s1 = pullback_stats(a);
    auto s2 = pullback_stats(b);
    if (s1 && s2 && s1->thm19_eligible() && s2->thm19_eligible()) {
        DimValue v1 = valuative_dim(a);
        DimValue v2 = valuative_dim(b);
        if (!v1.is_exact() || !v2.is_exact())
            throw InternalError("eligible pullback without exact dim_v");
        int value = std::min(v1.value() + s2->tdeg, v2.value() + s1->tdeg);
        int closed = (s1->tdeg - s1->s) + (s2->tdeg - s2->s) +
                     std::min(s1->s + s2->dim_d.value(), s1->dim_d.value() + s2->s);
        if (value != closed)
            throw InternalError("Thm 2.3 closed form mismatch: " + std::to_string(value) +
                                " vs " + std::to_string(closed));
        DerivationTrace tr;
        tr.rule = RuleId::V1Thm23;
        tr.value = DimValue::exact(value);
        tr.checks.push_back({"T1, D1, T2, D2 AF-certified with ht M_i = dim T_i", true});
        tr.checks.push_back(
            {fmt("min(dim_v R1 + t.d. R2, dim_v R2 + t.d. R1) = ", value), true});
        tr.checks.push_back(
            {fmt("closed form t1-s1 + t2-s2 + min(s1 + dim D2, dim D1 + s2) agrees: ", closed),
             true});
        return {tr.value, tr};
    }

    DimResult kr = tensor_krull_dim(a, b);
    int hi = std::min(b1.valuative_dim.hi + b2.tdeg, b2.valuative_dim.hi + b1.tdeg);
    if (kr.value.lo > hi)
        throw InternalError("valuative bounds crossed");
    DerivationTrace tr;
    tr.rule = RuleId::V2UpperBound;
    tr.value = DimValue{kr.value.lo, hi};
    tr.checks.push_back(
        {fmt("upper: min(dim_v A1 + t.d. A2, dim_v A2 + t.d. A1) = ", hi), true});
    tr.checks.push_back({fmt("lower: dim of the tensor product >= ", kr.value.lo), true});
    tr.children.push_back(kr.trace);
    return {tr.value, tr};
}

// --------------------------------------------------------------------------
// Jaffard status
// --------------------------------------------------------------------------

TriResult tensor_jaffard(const ExprPtr& a, const ExprPtr& b) {
    auto s1 = pullback_stats(a);
    auto s2 = pullback_stats(b);
    if (s1 && s2 && s1->thm19_eligible() && s2->thm19_eligible() && s1->unique_m &&
        s2->unique_m) {
        bool first = s1->gap() <= s2->tdeg && s2->gap() <= s1->s;
        bool second = s1->gap() <= s2->s && s2->gap() <= s1->tdeg;
        DerivationTrace tr;
        tr.rule = RuleId::J1Thm31;
        tr.checks.push_back(
            {"T1, D1, T2, D2 AF-certified, M_i unique with ht M_i = dim T_i", true});
        std::ostringstream crit;
        crit << "criterion (r1-s1 <= t2 and r2-s2 <= s1) or (r1-s1 <= s2 and r2-s2 <= t1): "
             << (first || second ? "holds" : "fails") << " with r1-s1 = " << s1->gap()
             << ", r2-s2 = " << s2->gap();
        tr.checks.push_back({crit.str(), true});
        TriState ans = (first || second) ? TriState::Yes : TriState::No;
        tr.value = DimValue::exact(ans == TriState::Yes ? 1 : 0);
        return {ans, tr};
    }

    DimResult kr = tensor_krull_dim(a, b);
    DimResult vd = tensor_valuative_dim(a, b);
    DerivationTrace tr;
    tr.rule = RuleId::J2DimCompare;
    tr.children.push_back(kr.trace);
    tr.children.push_back(vd.trace);
    if (kr.value.is_exact() && vd.value.is_exact()) {
        bool eq = kr.value == vd.value;
        tr.checks.push_back({"dim = " + kr.value.str() + " and dim_v = " + vd.value.str() +
                                 (eq ? ": equal" : ": different"),
                             true});
        tr.value = DimValue::exact(eq ? 1 : 0);
        return {eq ? TriState::Yes : TriState::No, tr};
    }
    tr.checks.push_back({"dim " + kr.value.str() + " or dim_v " + vd.value.str() +
                             " not exactly certified: status unknown",
                         true});
    return {TriState::Unknown, tr};
}

// --------------------------------------------------------------------------
// Auxiliary quantities
// --------------------------------------------------------------------------

std::array<DimValue, 3> alpha_values(const ExprPtr& a, const ExprPtr& b) {
    auto s1 = pullback_stats(a);
    auto s2 = pullback_stats(b);
    if (!s1 || !s2)
        throw EngineError(ErrorKind::HypothesisNotMet, "alpha values need a pullback pair");
    if (!s1->dim_t.is_exact() || !s1->dim_d.is_exact() || !s2->dim_t.is_exact() ||
        !s2->dim_d.is_exact())
        throw EngineError(ErrorKind::HypothesisNotMet,
                          "alpha values need exact dim T_i and dim D_i");
    int d1 = s1->dim_t.value(), d2 = s2->dim_t.value();
    int dd1 = s1->dim_d.value(), dd2 = s2->dim_d.value();
    int t1 = s1->tdeg, t2 = s2->tdeg;
    int mixed = std::min(s1->s + dd2, dd1 + s2->s);
    int a1 = d1 + std::min(t2, s1->gap()) + d2 + std::min(s1->s, s2->gap()) + mixed;
    int a2 = d2 + std::min(t1, s2->gap()) + d1 + std::min(s2->s, s1->gap()) + mixed;
    int a3 = d1 + d2 + std::min(s1->r, s2->r) + mixed;
    return {DimValue::exact(a1), DimValue::exact(a2), DimValue::exact(a3)};
}

std::array<DimValue, 3> lemma18_bounds(const ExprPtr& a, const ExprPtr& b) {
    auto s1 = pullback_stats(a);
    auto s2 = pullback_stats(b);
    if (!s1 || !s2 || !s1->thm19_eligible() || !s2->thm19_eligible())
        throw EngineError(ErrorKind::HypothesisNotMet,
                          "residue tensor bounds need T_i, D_i AF-certified with "
                          "ht M_i = dim T_i");
    int mixed = std::min(s1->s + s2->dim_d.value(), s1->dim_d.value() + s2->s);
    int bound_a = s2->dim_t.value() + std::min(s1->s, s2->gap()) + mixed;
    int bound_b = s1->dim_t.value() + std::min(s2->s, s1->gap()) + mixed;
    return {DimValue::exact(bound_a), DimValue::exact(bound_b), DimValue::exact(mixed)};
}

DimValue raw_theorem19(const ExprPtr& a, const ExprPtr& b) {
    auto s1 = pullback_stats(a);
    auto s2 = pullback_stats(b);
    if (!s1 || !s2)
        throw EngineError(ErrorKind::HypothesisNotMet, "raw formula needs a pullback pair");
    if (!s1->dim_d.is_exact() || !s2->dim_d.is_exact())
        throw EngineError(ErrorKind::UnsupportedAlgebraClass,
                          "raw formula needs exact dim D_i");
    DimValue o1 = compute_d(s1->s, s1->dim_d.value(), b).value + ht_m_poly(a, s2->tdeg);
    DimValue o2 = compute_d(s2->s, s2->dim_d.value(), a).value + ht_m_poly(b, s1->tdeg);
    return dim_max(o1, o2);
}

}  // namespace dimcalc
