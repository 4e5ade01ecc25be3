#include "doctest.h"
#include "dimcalc/generator.hpp"
#include "dimcalc/parser.hpp"

using namespace dimcalc;

TEST_CASE("definitions and queries parse with by-value substitution") {
    auto program = parse(
        "(def R1 (pullback :T (af :tdeg 3 :dim 1 :maximal (:ht 1 :res-tdeg 2 :unique)) "
        ":D (field 1))) (tensor-dim R1 R1)");
    REQUIRE(program.defs.size() == 1);
    REQUIRE(program.queries.size() == 1);
    CHECK(program.defs[0].name == "R1");
    CHECK(program.queries[0].kind == QueryKind::TensorDim);
    REQUIRE(program.queries[0].args.size() == 2);
    CHECK(*program.queries[0].args[0] == *program.defs[0].expr);
    CHECK(*program.queries[0].args[0] == *program.queries[0].args[1]);
    CHECK(program.queries[0].display == "(tensor-dim R1 R1)");
}

TEST_CASE("simple queries parse") {
    auto program = parse("(dim (k))");
    REQUIRE(program.queries.size() == 1);
    CHECK(program.queries[0].kind == QueryKind::Dim);
    CHECK(as<BaseK>(program.queries[0].args[0]) != nullptr);
}

TEST_CASE("zero-variable polynomial extension is a syntax error") {
    CHECK_THROWS_AS(parse("(dim (poly (field 2) 0))"), ParseError);
}

TEST_CASE("errors carry spans and expectations") {
    try {
        parse("(dim (k))\n(vdim unknownName)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.span().line == 2);
        CHECK(std::string(e.what()).find("unbound name") != std::string::npos);
    }

    try {
        parse("(def R (k)) (def R (field 1)) (dim R)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("already defined") != std::string::npos);
    }

    CHECK_THROWS_AS(parse("(dim (k)) (def R (k))"), ParseError);  // defs precede queries
    CHECK_THROWS_AS(parse("(dim (gadget 3))"), ParseError);
    CHECK_THROWS_AS(parse("(frobnicate (k))"), ParseError);
    CHECK_THROWS_AS(parse("(dim (af :tdeg 2))"), ParseError);
    CHECK_THROWS_AS(parse("(dim (field 12345678901))"), ParseError);
}

TEST_CASE("comments and whitespace are ignored") {
    auto program = parse("; header comment\n(def R (field 2)) ; trailing\n\t(dim\nR)");
    REQUIRE(program.queries.size() == 1);
    CHECK(program.queries[0].display == "(dim R)");
}

TEST_CASE("rendered programs reparse to structurally equal programs") {
    auto original = parse(
        "(def R1 (pullback :T (af :tdeg 2 :dim 1 :maximal (:ht 1 :res-tdeg 1 :unique)) "
        ":D (k)))\n"
        "(def R2 (pullback :T (af :tdeg 4 :dim 1 :maximal (:ht 1 :res-tdeg 3 :unique)) "
        ":D R1))\n"
        "(invariants R2) (tensor-dim R1 R2) (jaffard (poly R1 2))");
    auto reparsed = parse(render_program(original));
    CHECK(structurally_equal(original, reparsed));

    // generated terms round-trip through the surface syntax
    TermGenerator gen({3, 8, 8, 99, 150});
    for (const auto& term : gen.generate()) {
        SourceProgram p;
        p.queries.push_back({QueryKind::Dim, {term}, "", {}});
        auto back = parse(render_program(p));
        REQUIRE(back.queries.size() == 1);
        CHECK(*back.queries[0].args[0] == *term);
    }
}
