#include "dimcalc/generator.hpp"

#include <algorithm>

namespace dimcalc {

TermGenerator::TermGenerator(const GeneratorConfig& config)
    : config_(config), state_(config.seed ? config.seed : 0x9e3779b97f4a7c15ull) {}

// splitmix64: stable across platforms, unlike the standard distributions.
std::uint64_t TermGenerator::bits() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

int TermGenerator::pick(int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<int>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool TermGenerator::chance(int percent) { return pick(1, 100) <= percent; }

ExprPtr TermGenerator::gen_af_leaf(bool require_maximal, int tdeg_cap) {
    int cap = std::min(tdeg_cap, config_.max_tdeg);
    if (require_maximal && cap < 1) cap = 1;
    int tdeg = pick(require_maximal ? 1 : 0, cap);
    int dim = pick(require_maximal ? 1 : 0, std::min(tdeg, config_.max_dim));
    if (require_maximal && dim < 1) dim = 1;
    bool with_maximal = require_maximal || (dim >= 1 && chance(60));
    std::optional<MaximalIdealData> maximal;
    if (with_maximal && dim >= 1) {
        // ht = dim often, so that theorem-eligible pullbacks are common.
        int ht = chance(60) ? dim : pick(1, dim);
        maximal = MaximalIdealData{ht, tdeg - ht, chance(50)};
    }
    return make_af(tdeg, dim, maximal);
}

ExprPtr TermGenerator::gen_leaf() {
    int roll = pick(1, 100);
    if (roll <= 10) return make_k();
    if (roll <= 40) return make_field(pick(0, config_.max_tdeg));
    return gen_af_leaf(false, config_.max_tdeg);
}

// Terms usable as a pullback T: they expose a distinguished maximal ideal
// with height >= 1.
ExprPtr TermGenerator::gen_with_maximal(int depth) {
    if (depth >= 1 && chance(30)) {
        ExprPtr t = gen_with_maximal(depth - 1);
        int r = distinguished_maximal(t)->residue_tdeg;
        // D must itself carry a maximal ideal (or be a field) so the tower
        // keeps exposing one.
        ExprPtr d;
        if (r >= 1 && chance(40)) {
            for (int attempt = 0; attempt < 8 && !d; ++attempt) {
                ExprPtr candidate = gen_af_leaf(true, r);
                if (tdeg_of(candidate) <= r) d = candidate;
            }
        }
        if (!d) d = chance(30) ? make_k() : make_field(pick(0, r));
        return make_pullback(t, d);
    }
    return gen_af_leaf(true, config_.max_tdeg);
}

ExprPtr TermGenerator::gen_d(int residue_cap, int depth) {
    int roll = pick(1, 100);
    if (roll <= 15) return make_k();
    if (roll <= 45) {
        // tdeg(D) = r fairly often: those pullbacks are AF when T and D are.
        int s = chance(40) ? residue_cap : pick(0, residue_cap);
        return make_field(s);
    }
    if (roll <= 75 || depth < 1) {
        for (int attempt = 0; attempt < 8; ++attempt) {
            ExprPtr candidate = gen_af_leaf(false, residue_cap);
            if (tdeg_of(candidate) <= residue_cap) return candidate;
        }
        return make_field(pick(0, residue_cap));
    }
    for (int attempt = 0; attempt < 8; ++attempt) {
        ExprPtr candidate = gen_expr(depth);
        if (tdeg_of(candidate) <= residue_cap) return candidate;
    }
    return make_field(pick(0, residue_cap));
}

ExprPtr TermGenerator::gen_expr(int depth) {
    if (depth <= 0) return gen_leaf();
    int roll = pick(1, 100);
    if (roll <= 40) return gen_leaf();
    if (roll <= 60) return make_poly(gen_expr(depth - 1), pick(1, 3));
    ExprPtr t = gen_with_maximal(depth - 1);
    int r = distinguished_maximal(t)->residue_tdeg;
    return make_pullback(t, gen_d(r, depth - 1));
}

ExprPtr TermGenerator::next() { return gen_expr(config_.max_depth); }

std::vector<ExprPtr> TermGenerator::generate() {
    std::vector<ExprPtr> out;
    out.reserve(config_.count);
    for (int i = 0; i < config_.count; ++i) out.push_back(next());
    return out;
}

// --------------------------------------------------------------------------
// Shrinking
// --------------------------------------------------------------------------

namespace {

void push_valid(std::vector<ExprPtr>& out, ExprPtr e) {
    if (validate(e).empty()) out.push_back(std::move(e));
}

}  // namespace

std::vector<ExprPtr> shrink_candidates(const ExprPtr& e) {
    std::vector<ExprPtr> out;
    if (const auto* f = as<FieldLeaf>(e)) {
        if (f->tdeg > 0) push_valid(out, make_field(f->tdeg - 1));
        return out;
    }
    if (const auto* a = as<AFLeaf>(e)) {
        if (a->maximal) {
            push_valid(out, make_af(a->tdeg, a->dim, std::nullopt));
            const auto& m = *a->maximal;
            if (m.residue_tdeg > 0)
                push_valid(out, make_af(a->tdeg - 1, a->dim,
                                        MaximalIdealData{m.height, m.residue_tdeg - 1,
                                                         m.is_unique_maximal}));
            if (m.height > 1 && a->dim > 1)
                push_valid(out, make_af(a->tdeg - 1, a->dim - 1,
                                        MaximalIdealData{m.height - 1, m.residue_tdeg,
                                                         m.is_unique_maximal}));
            if (!m.is_unique_maximal)
                push_valid(out, make_af(a->tdeg, a->dim,
                                        MaximalIdealData{m.height, m.residue_tdeg, true}));
        } else {
            if (a->dim > 0) push_valid(out, make_af(a->tdeg, a->dim - 1, std::nullopt));
            if (a->tdeg > a->dim) push_valid(out, make_af(a->tdeg - 1, a->dim, std::nullopt));
        }
        return out;
    }
    if (const auto* p = as<PolyExt>(e)) {
        push_valid(out, p->base);
        if (p->vars > 1) push_valid(out, make_poly(p->base, p->vars - 1));
        for (auto& base : shrink_candidates(p->base)) push_valid(out, make_poly(base, p->vars));
        return out;
    }
    if (const auto* pb = as<Pullback>(e)) {
        push_valid(out, pb->t);
        push_valid(out, pb->d);
        for (auto& d : shrink_candidates(pb->d)) push_valid(out, make_pullback(pb->t, d));
        for (auto& t : shrink_candidates(pb->t)) push_valid(out, make_pullback(t, pb->d));
        return out;
    }
    return out;
}

std::pair<ExprPtr, ExprPtr> shrink_pair(const PairPredicate& passes, ExprPtr a, ExprPtr b) {
    const int max_steps = 500;
    for (int step = 0; step < max_steps; ++step) {
        bool reduced = false;
        for (const auto& cand : shrink_candidates(a)) {
            if (!passes(cand, b)) {
                a = cand;
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            for (const auto& cand : shrink_candidates(b)) {
                if (!passes(a, cand)) {
                    b = cand;
                    reduced = true;
                    break;
                }
            }
        }
        if (!reduced) break;
    }
    return {a, b};
}

}  // namespace dimcalc
