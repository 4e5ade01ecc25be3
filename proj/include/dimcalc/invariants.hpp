// dimcalc/invariants.hpp - invariant inference over algebra terms
#pragma once

#include <optional>

#include "dimcalc/core.hpp"

namespace dimcalc {

/// Everything the engine knows about one algebra: transcendence degree,
/// certified Krull/valuative dimension bounds, AF/Jaffard status, and the
/// distinguished maximal ideal when one exists.
struct InvariantBundle {
    int tdeg = 0;
    DimValue krull_dim = DimValue::exact(0);
    DimValue valuative_dim = DimValue::exact(0);
    TriState is_af = TriState::Unknown;
    TriState is_jaffard = TriState::Unknown;
    bool is_domain = true;
    bool is_field = false;
    std::optional<MaximalIdealData> maximal;
};

/// Infers the full bundle bottom-up. Precondition: validate(e) is empty.
InvariantBundle analyze(const ExprPtr& e);

DimValue krull_dim(const ExprPtr& e);
DimValue valuative_dim(const ExprPtr& e);
TriState af_status(const ExprPtr& e);
TriState jaffard_status(const ExprPtr& e);
std::optional<MaximalIdealData> maximal_data(const ExprPtr& e);

/// ht M[n] = ht M + min(n, r - s) for a pullback whose T is AF-certified
/// (T_M is then locally Jaffard, which the formula needs).
/// Throws EngineError{HypothesisNotMet} otherwise.
int ht_m_poly(const ExprPtr& pullback_expr, int n);

}  // namespace dimcalc
