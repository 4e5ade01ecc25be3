// dimcalc/generator.hpp - random valid constructions, with shrinking
#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "dimcalc/core.hpp"

namespace dimcalc {

struct GeneratorConfig {
    int max_depth = 3;   // pullback/poly nesting bound, >= 1
    int max_tdeg = 8;    // per-leaf transcendence degree bound
    int max_dim = 8;     // per-leaf dimension bound
    std::uint64_t seed = 42;
    int count = 1000;
};

/// Deterministic stream of valid terms: same seed, same sequence. Every
/// emitted term passes validate(); AF leaves satisfy the AF identity by
/// construction; all constructors and both maximal-uniqueness flags occur.
class TermGenerator {
public:
    explicit TermGenerator(const GeneratorConfig& config);

    ExprPtr next();
    std::vector<ExprPtr> generate();  // config.count terms

private:
    GeneratorConfig config_;
    std::uint64_t state_;

    std::uint64_t bits();
    int pick(int lo, int hi);
    bool chance(int percent);

    ExprPtr gen_expr(int depth);
    ExprPtr gen_leaf();
    ExprPtr gen_af_leaf(bool require_maximal, int tdeg_cap);
    ExprPtr gen_with_maximal(int depth);
    ExprPtr gen_d(int residue_cap, int depth);
};

/// Structure-reducing candidates: lower degrees, fewer variables, subterms.
/// Every candidate is itself valid.
std::vector<ExprPtr> shrink_candidates(const ExprPtr& e);

using PairPredicate = std::function<bool(const ExprPtr&, const ExprPtr&)>;

/// Greedily shrinks a failing pair until no candidate still fails.
/// `passes` returns true when the property holds.
std::pair<ExprPtr, ExprPtr> shrink_pair(const PairPredicate& passes, ExprPtr a, ExprPtr b);

}  // namespace dimcalc
