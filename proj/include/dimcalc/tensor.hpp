// dimcalc/tensor.hpp - tensor-product dimension rules with derivation traces
#pragma once

#include <array>
#include <string>
#include <vector>

#include "dimcalc/core.hpp"
#include "dimcalc/invariants.hpp"

namespace dimcalc {

enum class RuleId {
    F1Sharp,        // dim(K (x) L) = min(t.d. K, t.d. L) for fields
    F2Wadsworth,    // both AF: min(dim A1 + t.d. A2, dim A2 + t.d. A1)
    F3OneAF,        // one AF factor: D(t.d. A, dim A, other)
    F4Thm19,        // eligible pullback pair: max over orientations
    F5Thm32,        // T_i AF only, recursive over D_i under a tdeg condition
    F6Cor33,        // R (x) R special case
    FBBounds,       // certified interval fallback
    V1Thm23,        // valuative dim of eligible pullback pair
    V2UpperBound,   // certified valuative interval
    V3AFRing,       // AF (x) AF is an AF-ring, dim_v = dim
    J1Thm31,        // Jaffard criterion on transcendence degrees
    J2DimCompare,   // Jaffard by exact dim = dim_v comparison
    DField,
    DAF,
    DPullback,
    DZero,
};

/// Stable identifier, e.g. "F4-Thm1.9" (used in machine output).
const char* rule_id_string(RuleId r);
/// Short human label, e.g. "Thm 1.9".
const char* rule_display_name(RuleId r);

struct HypothesisCheck {
    std::string condition;
    bool passed = true;
};

/// Audit trail of rule application. Nodes with applied = false are
/// rejected-rule records kept to explain dispatch; only they may carry
/// failed checks. `value` on a rejected record is informational (e.g. the
/// raw value of the rejected formula) and is not certified.
struct DerivationTrace {
    RuleId rule{};
    DimValue value{};
    bool applied = true;
    std::vector<HypothesisCheck> checks;
    std::vector<DerivationTrace> children;
};

struct DimResult {
    DimValue value;
    DerivationTrace trace;
};

struct TriResult {
    TriState value;
    DerivationTrace trace;
};

/// Wadsworth's D(s, d, A) = max over primes p of ht p[s] + min(s, d + t.d.(A/p)),
/// evaluated on the supported algebra classes. Requires 0 <= d <= s.
/// Throws EngineError{UnsupportedAlgebraClass} outside the supported classes
/// and EngineError{PreconditionViolated} when d > s.
DimResult compute_d(int s, int d, const ExprPtr& a);

/// True when compute_d(s, d, a) will not throw UnsupportedAlgebraClass.
bool compute_d_supported(int s, const ExprPtr& a);

DimResult tensor_krull_dim(const ExprPtr& a, const ExprPtr& b);
DimResult tensor_valuative_dim(const ExprPtr& a, const ExprPtr& b);
TriResult tensor_jaffard(const ExprPtr& a, const ExprPtr& b);

/// alpha_1, alpha_2, alpha_3 for a pullback pair whose five invariants
/// (dim T_i, dim D_i, t_i, r_i, s_i) are all exact.
std::array<DimValue, 3> alpha_values(const ExprPtr& a, const ExprPtr& b);

/// The two lower bounds and the exact value of the residue tensor dims:
/// (a) dim((R1/M1) (x) R2), (b) dim(R1 (x) (R2/M2)), (c) dim((R1/M1) (x) (R2/M2)).
/// Needs T_i, D_i AF-certified with ht M_i = dim T_i.
std::array<DimValue, 3> lemma18_bounds(const ExprPtr& a, const ExprPtr& b);

/// The F4 right-hand side evaluated without the ht M = dim T hypothesis
/// checks; demonstrates how the formula fails outside its hypotheses.
DimValue raw_theorem19(const ExprPtr& a, const ExprPtr& b);

struct RuleEvaluation {
    RuleId rule;
    DimValue value;
};

/// Evaluates every applicable Krull-dimension rule independently of dispatch
/// order; used by the consistency suite to cross-check overlapping rules.
std::vector<RuleEvaluation> applicable_krull_rules(const ExprPtr& a, const ExprPtr& b);

}  // namespace dimcalc
