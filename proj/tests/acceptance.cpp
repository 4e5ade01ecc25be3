// Acceptance suite: runs every acceptance criterion at its stated tolerance
// (all integer-exact) and prints one pass/fail line per criterion.
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "dimcalc/generator.hpp"
#include "dimcalc/suites.hpp"
#include "dimcalc/tensor.hpp"
#include "golden_terms.hpp"

using namespace dimcalc;

namespace {

int g_failed_criteria = 0;

struct Criterion {
    std::string label;
    std::ostringstream detail;
    bool ok = true;

    explicit Criterion(std::string text) : label(std::move(text)) {}

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            detail << "\n         failed: " << what;
        }
    }

    ~Criterion() {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << label << detail.str() << "\n";
        if (!ok) ++g_failed_criteria;
    }
};

bool trace_has_check(const DerivationTrace& t, const std::string& needle) {
    for (const auto& c : t.checks)
        if (c.condition.find(needle) != std::string::npos) return true;
    for (const auto& c : t.children)
        if (trace_has_check(c, needle)) return true;
    return false;
}

const DerivationTrace* find_node(const DerivationTrace& t, RuleId rule, bool applied) {
    if (t.rule == rule && t.applied == applied) return &t;
    for (const auto& c : t.children)
        if (const auto* hit = find_node(c, rule, applied)) return hit;
    return nullptr;
}

void criterion_1() {
    Criterion c("criterion 1: AF pullback self-tensor (Wadsworth 4 vs raw 3)");
    auto r = golden::af_pullback();
    c.expect(validate(r).empty(), "construction validates");
    c.expect(af_status(r) == TriState::Yes, "afStatus(R) = yes");
    DimResult kr = tensor_krull_dim(r, r);
    c.expect(kr.value == DimValue::exact(4), "tensor dim = 4, got " + kr.value.str());
    c.expect(kr.trace.rule == RuleId::F2Wadsworth, "dispatched via F2");
    c.expect(raw_theorem19(r, r) == DimValue::exact(3), "raw formula value 3");
}

void criterion_2() {
    Criterion c("criterion 2: eligible pullback pair (main formula 4, Wadsworth raw 3)");
    auto r1 = golden::loc_pullback_r1();
    auto r2 = golden::loc_pullback_r2();
    c.expect(krull_dim(r1) == DimValue::exact(1), "dim R1 = 1");
    c.expect(krull_dim(r2) == DimValue::exact(1), "dim R2 = 1");
    c.expect(valuative_dim(r1) == DimValue::exact(2), "dim_v R1 = 2");
    c.expect(valuative_dim(r2) == DimValue::exact(2), "dim_v R2 = 2");
    c.expect(af_status(r1) == TriState::No, "afStatus R1 = no");
    c.expect(af_status(r2) == TriState::No, "afStatus R2 = no");
    DimResult kr = tensor_krull_dim(r1, r2);
    c.expect(kr.value == DimValue::exact(4), "tensor dim = 4, got " + kr.value.str());
    c.expect(kr.trace.rule == RuleId::F4Thm19, "dispatched via F4");
    const DerivationTrace* rej = find_node(kr.trace, RuleId::F2Wadsworth, false);
    c.expect(rej != nullptr, "rejected F2 record present in trace");
    if (rej) {
        c.expect(rej->value == DimValue::exact(3), "raw Wadsworth value 3 reported");
        c.expect(trace_has_check(*rej, "raw value"), "raw value annotated");
    }
}

void criterion_3() {
    Criterion c("criterion 3: nested tower (dims 2/4, tensor dims 3 and 5 via F5)");
    auto r1 = golden::tower_r1();
    auto r2 = golden::tower_r2();
    c.expect(krull_dim(r2) == DimValue::exact(2), "dim R2 = 2");
    c.expect(valuative_dim(r2) == DimValue::exact(4), "dim_v R2 = 4");
    DimResult self_base = tensor_krull_dim(r1, r1);
    c.expect(self_base.value == DimValue::exact(3), "dim(R1 (x) R1) = 3");
    DimResult kr = tensor_krull_dim(r1, r2);
    c.expect(kr.value == DimValue::exact(5), "dim(R1 (x) R2) = 5, got " + kr.value.str());
    c.expect(kr.trace.rule == RuleId::F5Thm32, "dispatched via F5");
    c.expect(trace_has_check(kr.trace, "2 + 2 = 4"), "trace shows branch 2 + 2");
    c.expect(trace_has_check(kr.trace, "2 + 3 = 5"), "trace shows branch 2 + 3");
}

void criterion_4() {
    Criterion c("criterion 4: self-tensor rule with agreeing paths (dim = dim_v = 5)");
    auto r = golden::self_tensor_r();
    DimResult kr = tensor_krull_dim(r, r);
    DimResult vd = tensor_valuative_dim(r, r);
    c.expect(kr.value == DimValue::exact(5), "tensor dim = 5, got " + kr.value.str());
    c.expect(vd.value == DimValue::exact(5), "tensor dim_v = 5, got " + vd.value.str());
    c.expect(kr.trace.rule == RuleId::F6Cor33, "dispatched via F6");
    c.expect(trace_has_check(kr.trace, "recursive path"), "recursive path recorded");
    c.expect(trace_has_check(kr.trace, "paths agree"), "shortcut path agrees");
}

void criterion_5() {
    Criterion c("criterion 5: field grid and one-AF route agreement");
    for (int t1 = 0; t1 <= 5; ++t1) {
        for (int t2 = 0; t2 <= 5; ++t2) {
            DimResult kr = tensor_krull_dim(make_field(t1), make_field(t2));
            if (!(kr.value == DimValue::exact(std::min(t1, t2))) ||
                kr.trace.rule != RuleId::F1Sharp) {
                c.expect(false, "field pair (" + std::to_string(t1) + ", " +
                                    std::to_string(t2) + ")");
                return;
            }
        }
    }
    std::uint64_t state = 12345;
    auto next = [&state](int lo, int hi) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return lo + static_cast<int>((state >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
    };
    for (int i = 0; i < 200; ++i) {
        int t1 = next(0, 8), t2 = next(0, 8);
        auto a = make_af(t1, next(0, t1));
        auto b = make_af(t2, next(0, t2));
        DimResult direct = tensor_krull_dim(a, b);
        DimResult via_d1 = compute_d(tdeg_of(a), krull_dim(a).value(), b);
        DimResult via_d2 = compute_d(tdeg_of(b), krull_dim(b).value(), a);
        if (!(direct.value == via_d1.value) || !(direct.value == via_d2.value)) {
            c.expect(false, "AF pair " + to_sexpr(a) + " / " + to_sexpr(b));
            return;
        }
    }
}

SuiteReport run_acceptance_suites() {
    GeneratorConfig config{3, 8, 8, 20240809, 1000};
    return run_suites(config);
}

void criterion_6(const SuiteReport& report) {
    Criterion c("criterion 6: property suites P1-P7 on 1000 seeded pairs");
    c.expect(report.eligible.pairs >= 1000, "at least 1000 pairs checked");
    for (const auto& p : report.properties) {
        if (p.failures != 0)
            c.expect(false, p.name + " failed, counterexample: " + p.counterexample);
    }
}

void criterion_7(const SuiteReport& report) {
    Criterion c("criterion 7: closed-form and three-formula agreement on eligible pairs");
    c.expect(report.eligible.v1 >= 20,
             "Thm 2.3-eligible pairs occurred (got " + std::to_string(report.eligible.v1) + ")");
    c.expect(report.eligible.j1 >= 20,
             "Thm 3.1-eligible pairs occurred (got " + std::to_string(report.eligible.j1) + ")");
    c.expect(report.eligible.f2_and_f4 >= 10,
             "Wadsworth/main-formula overlaps occurred (got " +
                 std::to_string(report.eligible.f2_and_f4) + ")");
    for (const auto& p : report.properties) {
        if (p.name.rfind("P4", 0) == 0 || p.name.rfind("P5", 0) == 0)
            c.expect(p.failures == 0, p.name);
    }
}

void criterion_8() {
    Criterion c("criterion 8: open-problem guard returns an interval");
    auto r1 = golden::loc_pullback_r1();
    auto partner = golden::open_problem_partner();
    c.expect(validate(partner).empty(), "partner validates");
    DimResult kr = tensor_krull_dim(r1, partner);
    c.expect(kr.trace.rule == RuleId::FBBounds, "fallback rule used");
    c.expect(!kr.value.is_exact(), "value is a proper interval, got " + kr.value.str());
    c.expect(kr.value.lo < kr.value.hi, "strict bounds");
    DimResult rev = tensor_krull_dim(partner, r1);
    c.expect(!rev.value.is_exact(), "reversed orientation also an interval");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    SuiteReport report = run_acceptance_suites();
    criterion_6(report);
    criterion_7(report);
    criterion_8();

    if (g_failed_criteria == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failed_criteria << " criteria failed\n";
    return 1;
}
