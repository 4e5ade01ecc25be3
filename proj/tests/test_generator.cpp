#include <set>

#include "doctest.h"
#include "dimcalc/generator.hpp"
#include "dimcalc/suites.hpp"
#include "golden_terms.hpp"

using namespace dimcalc;

namespace {

int pullback_depth(const ExprPtr& e) {
    if (const auto* p = as<PolyExt>(e)) return 1 + pullback_depth(p->base);
    if (const auto* pb = as<Pullback>(e))
        return 1 + std::max(pullback_depth(pb->t), pullback_depth(pb->d));
    return 0;
}

int node_count(const ExprPtr& e) {
    if (const auto* p = as<PolyExt>(e)) return 1 + node_count(p->base);
    if (const auto* pb = as<Pullback>(e)) return 1 + node_count(pb->t) + node_count(pb->d);
    return 1;
}

bool contains_pullback(const ExprPtr& e) {
    if (as<Pullback>(e)) return true;
    if (const auto* p = as<PolyExt>(e)) return contains_pullback(p->base);
    return false;
}

}  // namespace

TEST_CASE("same seed, same sequence") {
    GeneratorConfig config{3, 8, 8, 42, 100};
    TermGenerator g1(config), g2(config);
    auto a = g1.generate();
    auto b = g2.generate();
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(to_sexpr(a[i]) == to_sexpr(b[i]));

    TermGenerator g3({3, 8, 8, 43, 100});
    auto c = g3.generate();
    bool any_difference = false;
    for (size_t i = 0; i < a.size(); ++i) any_difference |= !(*a[i] == *c[i]);
    CHECK(any_difference);
}

TEST_CASE("every generated term validates") {
    TermGenerator gen({3, 8, 8, 7, 500});
    for (const auto& term : gen.generate()) {
        auto violations = validate(term);
        if (!violations.empty()) {
            CAPTURE(to_sexpr(term));
            CAPTURE(violations[0].message);
        }
        CHECK(violations.empty());
    }
}

TEST_CASE("generator covers all constructors and both uniqueness flags") {
    TermGenerator gen({3, 8, 8, 11, 800});
    bool base_k = false, field = false, af = false, poly = false, pullback = false;
    bool unique_seen = false, non_unique_seen = false;
    std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& e) {
        if (as<BaseK>(e)) base_k = true;
        else if (as<FieldLeaf>(e)) field = true;
        else if (const auto* a = as<AFLeaf>(e)) {
            af = true;
            if (a->maximal) (a->maximal->is_unique_maximal ? unique_seen : non_unique_seen) = true;
        } else if (const auto* p = as<PolyExt>(e)) {
            poly = true;
            walk(p->base);
        } else if (const auto* pb = as<Pullback>(e)) {
            pullback = true;
            walk(pb->t);
            walk(pb->d);
        }
    };
    for (const auto& term : gen.generate()) walk(term);
    CHECK(base_k);
    CHECK(field);
    CHECK(af);
    CHECK(poly);
    CHECK(pullback);
    CHECK(unique_seen);
    CHECK(non_unique_seen);
}

TEST_CASE("depth-1 configuration stays shallow") {
    TermGenerator gen({1, 5, 5, 13, 300});
    for (const auto& term : gen.generate()) CHECK(pullback_depth(term) <= 1);
}

TEST_CASE("depth-2 generation reaches nested-pullback towers") {
    // witness: such towers are constructible and valid
    REQUIRE(validate(golden::tower_r2()).empty());
    REQUIRE(pullback_depth(golden::tower_r2()) == 2);

    TermGenerator gen({2, 8, 8, 3, 4000});
    bool found = false;
    for (const auto& term : gen.generate()) {
        if (const auto* pb = as<Pullback>(term)) {
            if (as<Pullback>(pb->d)) found = true;
        }
        if (found) break;
    }
    CHECK(found);
}

TEST_CASE("shrinking keeps the failure and reduces the term") {
    // plant a failure: the predicate passes iff no pullback occurs
    PairPredicate passes = [](const ExprPtr& a, const ExprPtr& b) {
        return !contains_pullback(a) && !contains_pullback(b);
    };
    auto big_a = make_poly(golden::tower_r2(), 2);
    auto big_b = golden::loc_pullback_r1();
    auto [sa, sb] = shrink_pair(passes, big_a, big_b);
    CHECK(!passes(sa, sb));
    CHECK(node_count(sa) + node_count(sb) < node_count(big_a) + node_count(big_b));
    CHECK(validate(sa).empty());
    CHECK(validate(sb).empty());
    // minimal: a bare pullback of leaves on one side, a leaf on the other
    CHECK(node_count(sa) + node_count(sb) <= 5);
}

TEST_CASE("property suites pass on a small seeded run") {
    GeneratorConfig config{3, 8, 8, 2024, 150};
    SuiteReport report = run_suites(config);
    for (const auto& p : report.properties) {
        CAPTURE(p.name);
        CAPTURE(p.counterexample);
        CHECK(p.failures == 0);
    }
    CHECK(report.all_passed());
    CHECK(report.eligible.pairs == 150);
}
