#include "dimcalc/suites.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "dimcalc/invariants.hpp"
#include "dimcalc/tensor.hpp"
#include "json.hpp"

namespace dimcalc {

namespace {

// The five invariants read off a pullback directly, independent of the
// engine's internal bookkeeping.
struct RawStats {
    int d_t, d_d, t, r, s, ht;
    bool unique;
    bool af_t, af_d;
};

std::optional<RawStats> raw_stats(const ExprPtr& e) {
    const auto* pb = as<Pullback>(e);
    if (!pb) return std::nullopt;
    auto mt = distinguished_maximal(pb->t);
    if (!mt) return std::nullopt;
    InvariantBundle bt = analyze(pb->t);
    InvariantBundle bd = analyze(pb->d);
    if (!bt.krull_dim.is_exact() || !bd.krull_dim.is_exact()) return std::nullopt;
    return RawStats{bt.krull_dim.value(),
                    bd.krull_dim.value(),
                    bt.tdeg,
                    mt->residue_tdeg,
                    bd.tdeg,
                    mt->height,
                    mt->is_unique_maximal,
                    bt.is_af == TriState::Yes,
                    bd.is_af == TriState::Yes};
}

bool thm19_eligible(const RawStats& st) { return st.af_t && st.af_d && st.ht == st.d_t; }

std::optional<DimValue> rule_value(const std::vector<RuleEvaluation>& rules, RuleId id) {
    for (const auto& r : rules)
        if (r.rule == id) return r.value;
    return std::nullopt;
}

bool leq_boundwise(DimValue a, DimValue b) { return a.lo <= b.lo && a.hi <= b.hi; }

bool trace_integrity(const DerivationTrace& t) {
    if (t.applied) {
        for (const auto& c : t.checks)
            if (!c.passed) return false;
    }
    for (const auto& c : t.children)
        if (!trace_integrity(c)) return false;
    return true;
}

// ---- properties; each returns true when the pair passes -------------------

bool p1_dim_below_vdim(const ExprPtr& a, const ExprPtr& b) {
    DimValue kr = tensor_krull_dim(a, b).value;
    DimValue vd = tensor_valuative_dim(a, b).value;
    return leq_boundwise(kr, vd);
}

bool p2_symmetry(const ExprPtr& a, const ExprPtr& b) {
    if (!(tensor_krull_dim(a, b).value == tensor_krull_dim(b, a).value)) return false;
    if (!(tensor_valuative_dim(a, b).value == tensor_valuative_dim(b, a).value)) return false;
    return tensor_jaffard(a, b).value == tensor_jaffard(b, a).value;
}

// Lower bounds of the main formula: alpha_1 = ht M1[t2] + bound (a),
// alpha_2 = ht M2[t1] + bound (b); alpha_3 is dominated only under the
// transcendence-degree trichotomy.
bool p3_alpha_dominance(const ExprPtr& a, const ExprPtr& b, bool* applicable) {
    auto s1 = raw_stats(a);
    auto s2 = raw_stats(b);
    *applicable = s1 && s2 && thm19_eligible(*s1) && thm19_eligible(*s2);
    if (!*applicable) return true;
    auto rules = applicable_krull_rules(a, b);
    auto f4 = rule_value(rules, RuleId::F4Thm19);
    if (!f4) return false;
    auto alphas = alpha_values(a, b);
    auto bounds = lemma18_bounds(a, b);
    int ht1 = ht_m_poly(a, s2->t);
    int ht2 = ht_m_poly(b, s1->t);
    if (alphas[0].value() != ht1 + bounds[0].value()) return false;
    if (alphas[1].value() != ht2 + bounds[1].value()) return false;
    if (f4->lo < alphas[0].value() || f4->lo < alphas[1].value()) return false;
    bool trichotomy = s1->s <= s2->r - s2->s || s2->s <= s1->r - s1->s;
    if (trichotomy && f4->lo < alphas[2].value()) return false;
    return true;
}

// The hypotheses of the exact valuative rule may hold even when dispatch
// resolves earlier (AF pairs go through the AF-ring rule); the closed form
// must agree either way.
bool p4_closed_form(const ExprPtr& a, const ExprPtr& b, bool* applicable) {
    auto s1 = raw_stats(a);
    auto s2 = raw_stats(b);
    *applicable = s1 && s2 && thm19_eligible(*s1) && thm19_eligible(*s2);
    if (!*applicable) return true;
    DimValue va = valuative_dim(a);
    DimValue vb = valuative_dim(b);
    if (!va.is_exact() || !vb.is_exact()) return false;
    int direct = std::min(va.value() + s2->t, vb.value() + s1->t);
    int closed = (s1->t - s1->s) + (s2->t - s2->s) +
                 std::min(s1->s + s2->d_d, s1->d_d + s2->s);
    if (direct != closed) return false;
    DimResult vd = tensor_valuative_dim(a, b);
    return vd.value == DimValue::exact(direct);
}

bool p5_jaffard_agreement(const ExprPtr& a, const ExprPtr& b, bool* applicable) {
    TriResult j = tensor_jaffard(a, b);
    *applicable = j.trace.rule == RuleId::J1Thm31;
    if (!*applicable) return true;
    auto s1 = raw_stats(a);
    auto s2 = raw_stats(b);
    if (!s1 || !s2) return false;
    auto rules = applicable_krull_rules(a, b);
    auto f4 = rule_value(rules, RuleId::F4Thm19);
    if (!f4 || !f4->is_exact()) return false;
    DimValue va = valuative_dim(a);
    DimValue vb = valuative_dim(b);
    if (!va.is_exact() || !vb.is_exact()) return false;
    int v1 = std::min(va.value() + s2->t, vb.value() + s1->t);
    bool dims_equal = f4->value() == v1;
    return (j.value == TriState::Yes) == dims_equal && j.value != TriState::Unknown;
}

bool p6_rule_concordance(const ExprPtr& a, const ExprPtr& b, bool* f2_and_f4) {
    auto rules = applicable_krull_rules(a, b);
    auto f2 = rule_value(rules, RuleId::F2Wadsworth);
    auto f4 = rule_value(rules, RuleId::F4Thm19);
    *f2_and_f4 = f2 && f4;
    if (*f2_and_f4 && !(*f2 == *f4)) return false;
    // All exact rules must agree; every interval must contain every exact
    // value and overlap every other interval.
    for (size_t i = 0; i < rules.size(); ++i) {
        for (size_t j = i + 1; j < rules.size(); ++j) {
            DimValue x = rules[i].value, y = rules[j].value;
            if (x.is_exact() && y.is_exact() && !(x == y)) return false;
            if (std::max(x.lo, y.lo) > std::min(x.hi, y.hi)) return false;
        }
    }
    return true;
}

bool p7_compute_d(const ExprPtr& a, bool* supported) {
    *supported = compute_d_supported(1, a);
    DimValue dim = krull_dim(a);
    if (!(compute_d(0, 0, a).value == dim)) return false;
    if (!*supported) return true;
    for (int s = 1; s <= 4; ++s) {
        DimValue prev = compute_d(s, 0, a).value;
        for (int d = 1; d <= s; ++d) {
            DimValue cur = compute_d(s, d, a).value;
            if (cur.lo < prev.lo || cur.hi < prev.hi) return false;
            prev = cur;
        }
    }
    return true;
}

bool p9_trace_integrity(const ExprPtr& a, const ExprPtr& b) {
    return trace_integrity(tensor_krull_dim(a, b).trace) &&
           trace_integrity(tensor_valuative_dim(a, b).trace) &&
           trace_integrity(tensor_jaffard(a, b).trace);
}

std::string render_pair(const ExprPtr& a, const ExprPtr& b) {
    return to_sexpr(a) + "  |  " + to_sexpr(b);
}

}  // namespace

bool SuiteReport::all_passed() const {
    for (const auto& p : properties)
        if (p.failures > 0) return false;
    return true;
}

SuiteReport run_suites(const GeneratorConfig& config) {
    SuiteReport report;
    report.config = config;

    GeneratorConfig gen_config = config;
    gen_config.count = config.count * 2;
    TermGenerator gen(gen_config);
    std::vector<ExprPtr> terms = gen.generate();

    auto prop = [](const char* name) {
        PropertyResult r;
        r.name = name;
        return r;
    };
    PropertyResult p1 = prop("P1 dim <= dim_v (bound-wise)");
    PropertyResult p2 = prop("P2 symmetry under argument swap");
    PropertyResult p3 = prop("P3 alpha / residue-bound dominance");
    PropertyResult p4 = prop("P4 Thm 2.3 closed form");
    PropertyResult p5 = prop("P5 Jaffard three-formula agreement");
    PropertyResult p6 = prop("P6 overlapping-rule concordance");
    PropertyResult p7 = prop("P7 D(s, d, A) monotone in d; D(0, 0, A) = dim A");
    PropertyResult p9 = prop("P8 trace integrity");

    auto check_pair = [&](PropertyResult& res, const PairPredicate& passes, const ExprPtr& a,
                          const ExprPtr& b) {
        ++res.checked;
        if (passes(a, b)) return;
        ++res.failures;
        if (res.counterexample.empty()) {
            auto [sa, sb] = shrink_pair(passes, a, b);
            res.counterexample = render_pair(sa, sb);
        }
    };

    for (int i = 0; i + 1 < static_cast<int>(terms.size()); i += 2) {
        const ExprPtr& a = terms[i];
        const ExprPtr& b = terms[i + 1];
        ++report.eligible.pairs;

        check_pair(p1, p1_dim_below_vdim, a, b);
        check_pair(p2, p2_symmetry, a, b);

        bool applicable = false;
        check_pair(p3, [&](const ExprPtr& x, const ExprPtr& y) {
            bool app = false;
            return p3_alpha_dominance(x, y, &app);
        }, a, b);
        p3_alpha_dominance(a, b, &applicable);
        if (applicable) ++report.eligible.f4;

        check_pair(p4, [&](const ExprPtr& x, const ExprPtr& y) {
            bool app = false;
            return p4_closed_form(x, y, &app);
        }, a, b);
        p4_closed_form(a, b, &applicable);
        if (applicable) ++report.eligible.v1;

        check_pair(p5, [&](const ExprPtr& x, const ExprPtr& y) {
            bool app = false;
            return p5_jaffard_agreement(x, y, &app);
        }, a, b);
        p5_jaffard_agreement(a, b, &applicable);
        if (applicable) ++report.eligible.j1;

        check_pair(p6, [&](const ExprPtr& x, const ExprPtr& y) {
            bool both = false;
            return p6_rule_concordance(x, y, &both);
        }, a, b);
        bool both = false;
        p6_rule_concordance(a, b, &both);
        if (both) ++report.eligible.f2_and_f4;

        check_pair(p9, p9_trace_integrity, a, b);
    }

    for (const ExprPtr& term : terms) {
        ++p7.checked;
        bool supported = false;
        if (!p7_compute_d(term, &supported)) {
            ++p7.failures;
            if (p7.counterexample.empty()) p7.counterexample = to_sexpr(term);
        }
        if (supported) ++report.eligible.d_supported;
    }

    report.properties = {p1, p2, p3, p4, p5, p6, p7, p9};
    return report;
}

std::string render_text(const SuiteReport& report) {
    std::ostringstream out;
    out << "property suite: seed=" << report.config.seed << " pairs=" << report.eligible.pairs
        << " depth<=" << report.config.max_depth << " tdeg<=" << report.config.max_tdeg << "\n";
    for (const auto& p : report.properties) {
        out << "  " << (p.failures == 0 ? "[PASS] " : "[FAIL] ") << p.name << ": " << p.checked
            << " checked, " << p.failures << " failed\n";
        if (!p.counterexample.empty())
            out << "         shrunk counterexample: " << p.counterexample << "\n";
    }
    out << "  eligible: Thm1.9=" << report.eligible.f4 << " Thm2.3=" << report.eligible.v1
        << " Thm3.1=" << report.eligible.j1 << " F2&F4=" << report.eligible.f2_and_f4
        << " D-supported=" << report.eligible.d_supported << "\n";
    out << (report.all_passed() ? "ALL PASSED" : "FAILURES FOUND") << "\n";
    return out.str();
}

std::string render_json(const SuiteReport& report) {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : report.properties) {
        nlohmann::json item{{"name", p.name}, {"checked", p.checked}, {"failures", p.failures}};
        if (!p.counterexample.empty()) item["counterexample"] = p.counterexample;
        props.push_back(item);
    }
    nlohmann::json doc{
        {"config",
         {{"seed", report.config.seed},
          {"count", report.config.count},
          {"maxDepth", report.config.max_depth},
          {"maxTdeg", report.config.max_tdeg},
          {"maxDim", report.config.max_dim}}},
        {"properties", props},
        {"eligible",
         {{"pairs", report.eligible.pairs},
          {"thm19", report.eligible.f4},
          {"thm23", report.eligible.v1},
          {"thm31", report.eligible.j1},
          {"wadsworthAndThm19", report.eligible.f2_and_f4},
          {"dSupported", report.eligible.d_supported}}},
        {"passed", report.all_passed()}};
    return doc.dump(2);
}

}  // namespace dimcalc
