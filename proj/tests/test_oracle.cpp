#include "support/fixtures.hpp"
#include "support/gen.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace lamb;

TEST_CASE("the oracle reproduces the worked verdicts", "[oracle]") {
    Model m = fixtures::figM();
    Model n = fixtures::figN();
    CHECK(oracle_mc(m, 0, parse_formula("<<1,2>> X !p")));
    CHECK(oracle_mc(m, 0, parse_formula("@beta <<1,2>> G #beta")));
    CHECK(oracle_mc(m, 0, parse_formula("[#alpha -a,a-> #alpha] <<1>> X #alpha")));
    CHECK_FALSE(oracle_mc(n, 0, parse_formula("[#alpha -a,a-> #alpha] <<1>> X #alpha")));
    CHECK_FALSE(oracle_mc(m, 0, parse_formula("@gamma q")));
}

TEST_CASE("the oracle refuses big models", "[oracle]") {
    gen::ModelOptions opt;
    opt.maxStates = 7;
    gen::Rng rng(41);
    Model big = gen::randomModel(rng, opt);
    while (big.states().size() <= 6) big = gen::randomModel(rng, opt);
    CHECK_THROWS_AS(oracle_mc(big, 0, f_true()), Error);
}

TEST_CASE("strategy enumeration is counted exactly", "[oracle]") {
    Model m = fixtures::figM(); // 2 states, 2 actions
    {
        Oracle o;
        o.check(m, 0, f_coal_x({1}, f_false())); // false: all strategies visited
        CHECK(o.strategiesEnumerated() == 4);    // 2^(2*1)
    }
    {
        Oracle o;
        o.check(m, 0, f_coal_x({1, 2}, f_false()));
        CHECK(o.strategiesEnumerated() == 16); // 2^(2*2)
    }
    {
        Oracle o;
        o.check(m, 0, f_coal_x({}, f_false()));
        CHECK(o.strategiesEnumerated() == 1);
    }
}

TEST_CASE("checker and oracle agree on a random corpus", "[oracle][property]") {
    gen::Rng rng(42);
    for (int i = 0; i < 150; ++i) {
        Model m = gen::randomModel(rng);
        Formula f = gen::randomFormula(rng, 3);
        Checker checker;
        Oracle oracle;
        for (StateId s : m.states()) {
            bool fast = checker.mc(m, s, f);
            bool slow = oracle.check(m, s, f);
            if (fast != slow) {
                CAPTURE(print_model(m), print_formula(f), s);
                REQUIRE(fast == slow);
            }
        }
    }
}

TEST_CASE("qbf evaluation by expansion", "[qbf]") {
    Qbf iff;
    iff.prefix = {{Quant::Forall, 1}, {Quant::Exists, 2}};
    iff.matrix = f_iff(f_prop("x1"), f_prop("x2"));
    CHECK(eval_qbf(iff));

    Qbf contradiction;
    contradiction.prefix = {{Quant::Exists, 1}};
    contradiction.matrix = f_and(f_prop("x1"), f_not(f_prop("x1")));
    CHECK_FALSE(eval_qbf(contradiction));

    Qbf taut;
    taut.prefix = {{Quant::Forall, 1}};
    taut.matrix = f_or(f_prop("x1"), f_not(f_prop("x1")));
    CHECK(eval_qbf(taut));

    Qbf free;
    free.prefix = {{Quant::Forall, 1}};
    free.matrix = f_prop("x2");
    CHECK_THROWS_AS(eval_qbf(free), Error);
}

TEST_CASE("both encodings decide the simple instances", "[qbf]") {
    Checker checker;
    auto verdict = [&checker](const std::pair<PointedModel, Formula>& enc) {
        return Checker{}.mc(enc.first.model, enc.first.point, enc.second);
    };

    Qbf exists;
    exists.prefix = {{Quant::Exists, 1}};
    exists.matrix = f_prop("x1");
    CHECK(verdict(qbf_to_alamb_union(exists)));
    CHECK(verdict(qbf_to_slamb_union(exists)));

    Qbf forall;
    forall.prefix = {{Quant::Forall, 1}};
    forall.matrix = f_prop("x1");
    CHECK_FALSE(verdict(qbf_to_alamb_union(forall)));
    CHECK_FALSE(verdict(qbf_to_slamb_union(forall)));

    Qbf negated;
    negated.prefix = {{Quant::Exists, 1}};
    negated.matrix = f_not(f_prop("x1"));
    CHECK(verdict(qbf_to_alamb_union(negated)));
    CHECK(verdict(qbf_to_slamb_union(negated)));
}

TEST_CASE("quantifier order is preserved by the encodings", "[qbf]") {
    // forall x1 exists x2 (x1 <-> x2) is true; swapping the prefix breaks it.
    Qbf good;
    good.prefix = {{Quant::Forall, 1}, {Quant::Exists, 2}};
    good.matrix = f_iff(f_prop("x1"), f_prop("x2"));
    Qbf bad;
    bad.prefix = {{Quant::Exists, 2}, {Quant::Forall, 1}};
    bad.matrix = good.matrix;

    for (auto encode : {qbf_to_alamb_union, qbf_to_slamb_union}) {
        auto g = encode(good);
        auto b = encode(bad);
        CHECK(Checker{}.mc(g.first.model, g.first.point, g.second));
        CHECK_FALSE(Checker{}.mc(b.first.model, b.first.point, b.second));
    }
    CHECK(eval_qbf(good));
    CHECK_FALSE(eval_qbf(bad));
}

TEST_CASE("encodings agree with expansion on random instances", "[qbf][property]") {
    gen::Rng rng(43);
    for (int i = 0; i < 40; ++i) {
        Qbf q = gen::randomQbf(rng, 5);
        bool expected = eval_qbf(q);
        auto arrow = qbf_to_alamb_union(q);
        auto subst = qbf_to_slamb_union(q);
        bool withArrows = Checker{}.mc(arrow.first.model, arrow.first.point, arrow.second);
        bool withSubsts = Checker{}.mc(subst.first.model, subst.first.point, subst.second);
        if (withArrows != expected || withSubsts != expected) {
            CAPTURE(print_formula(q.matrix), q.prefix.size());
            REQUIRE(withArrows == expected);
            REQUIRE(withSubsts == expected);
        }
        CHECK(classify_fragment(arrow.second) == Fragment::LAMB_UNION);
        CHECK(classify_fragment(subst.second) == Fragment::LAMB_UNION);
    }
}

TEST_CASE("qdimacs parsing", "[qbf]") {
    Qbf q = parse_qdimacs("c example\np cnf 2 2\na 1 0\ne 2 0\n1 2 0\n-1 -2 0\n");
    REQUIRE(q.prefix.size() == 2);
    CHECK(q.prefix[0] == std::pair{Quant::Forall, 1});
    CHECK(q.prefix[1] == std::pair{Quant::Exists, 2});
    CHECK(eval_qbf(q)); // pick x2 = !x1

    CHECK_THROWS_AS(parse_qdimacs("p cnf 1 1\n1 0\n"), Error);        // free variable
    CHECK_THROWS_AS(parse_qdimacs("a 1 0\n"), Error);                 // missing header
    CHECK_THROWS_AS(parse_qdimacs("p cnf 1 1\ne 1 0\ne 1 0\n"), Error); // double quantification
}

TEST_CASE("brute-force satisfiability", "[qbf]") {
    CnfInstance sat;
    sat.variables = 3;
    sat.addClause({1, 2, 3});
    CHECK(brute_sat(sat));

    CnfInstance unsat;
    unsat.variables = 1;
    unsat.addClause({1});
    unsat.addClause({-1});
    CHECK_FALSE(brute_sat(unsat));

    CnfInstance big;
    big.variables = 21;
    CHECK_THROWS_AS(brute_sat(big), Error);
}
