import math
import random

import pytest

from kgsynth.dsl import FLASHFILL, PrimitiveSpec, type_of
from kgsynth.errors import EmptyGrammar, NotDerivable
from kgsynth.grammar import (
    NonTerminal,
    WeightedGrammar,
    compile_grammar,
    derivation,
    log_probability,
    sample,
    uniform_weights,
)
from kgsynth.heap_search import brute_force_enumerate
from kgsynth.program import INPUT, OUTPUT, Constant, KgPath, Primitive, Variable, apply, parse_sexpr
from kgsynth.types import STRING, arrow

from oracles import well_typed_programs

CONCAT_ONLY = {"concat": FLASHFILL["concat"]}


def derivable(grammar):
    return {p for p, _ in brute_force_enumerate(uniform_weights(grammar))}


def test_depth_two_has_only_the_variable():
    g = compile_grammar({"concat": PrimitiveSpec("concat", arrow(STRING, STRING, STRING), None)},
                        arity=1, max_depth=2)
    assert derivable(g) == {Variable(0)}


def test_depth_three_adds_one_concat():
    g = compile_grammar(CONCAT_ONLY, arity=1, max_depth=3)
    assert {p.sexpr for p in derivable(g)} == {"(var 0)", "(concat (var 0) (var 0))"}


def test_no_leaves_is_an_empty_grammar():
    with pytest.raises(EmptyGrammar):
        compile_grammar({}, arity=0)


def test_trimmed_and_idempotent():
    g1 = compile_grammar(arity=1, constants_in=[" "], max_depth=5)
    g2 = compile_grammar(arity=1, constants_in=[" "], max_depth=5)
    assert g1 == g2 and g1.dump() == g2.dump()
    reachable = {g1.start}
    stack = [g1.start]
    while stack:
        for rule in g1.rules[stack.pop()]:
            for c in rule.children:
                if c not in reachable:
                    reachable.add(c)
                    stack.append(c)
    assert reachable == set(g1.rules)
    for nt, rules in g1.rules.items():
        assert rules, nt
        if nt.depth == 1:
            assert all(not r.children for r in rules)


def test_grammar_dump_golden(golden):
    g = compile_grammar(CONCAT_ONLY, arity=1, constants_out=["!"], max_depth=3)
    assert g.dump() == (golden / "grammar_concat_depth3.txt").read_text(encoding="utf-8")


SUBSETS = [
    (["concat"], 2, [], [], [], 4),
    (["concat_if"], 1, [], ["x"], [], 4),
    (["match", "$", "."], 1, [], [], [], 4),
    (["split_fst", "not_chars"], 1, [" "], [], [], 4),
    (["match", "not_chars_end", "compose", "."], 1, [","], [], [], 4),
    (["concat", "not_chars"], 1, ["a"], ["b"], ["R"], 4),
    (["split_snd", "compose", "$"], 1, [], [], [], 4),
]


@pytest.mark.parametrize("names,arity,cin,cout,paths,depth", SUBSETS)
def test_derivable_set_equals_well_typed_set(names, arity, cin, cout, paths, depth):
    dsl = {n: FLASHFILL[n] for n in names}
    g = compile_grammar(dsl, arity, cin, cout, paths, depth)
    leaves = [Variable(i) for i in range(arity)]
    leaves += [Constant(c, INPUT) for c in cin] + [Constant(c, OUTPUT) for c in cout]
    leaves += [Primitive(n) for n in names] + [KgPath(p) for p in paths]
    assert g.count_programs() <= 5000
    assert derivable(g) == well_typed_programs(leaves, arity, depth, dsl)


def test_sampled_programs_are_well_typed():
    g = compile_grammar(arity=2, constants_in=[" "], constants_out=["-"], kg_paths=["R/S"], max_depth=6)
    w = uniform_weights(g)
    rng = random.Random(3)
    for _ in range(1000):
        p = sample(w, rng)
        assert type_of(p, 2) == STRING
        assert p.depth <= 6
        derivation(g, p)


def test_uniform_weights():
    g = compile_grammar(arity=1, constants_in=[" "], max_depth=4)
    w = uniform_weights(g)
    for nt in g.rules:
        probs = w.probabilities(nt)
        assert math.fsum(probs) == pytest.approx(1.0, abs=1e-9)
        assert len(set(probs)) == 1


def test_four_rules_get_a_quarter_each():
    dsl = {n: PrimitiveSpec(n, STRING, None, n) for n in "abcd"}
    g = compile_grammar(dsl, arity=0, max_depth=1)
    assert uniform_weights(g).probabilities(g.start) == pytest.approx([0.25] * 4)


def two_leaf_grammar(p_first):
    dsl = {n: PrimitiveSpec(n, STRING, None, n) for n in "ab"}
    g = compile_grammar(dsl, arity=0, max_depth=1)
    return WeightedGrammar.from_weights(g, {g.start: [p_first, 1 - p_first]})


def test_sampling_is_seeded():
    g = compile_grammar(arity=1, constants_in=[" "], max_depth=6)
    w = uniform_weights(g)
    assert [sample(w, random.Random(42)) for _ in range(5)] == [sample(w, random.Random(42)) for _ in range(5)]


def test_single_derivation_grammar():
    g = compile_grammar(CONCAT_ONLY, arity=1, max_depth=2)
    w = uniform_weights(g)
    assert sample(w, random.Random(0)) == Variable(0)
    assert log_probability(w, Variable(0)) == 0.0


def test_sampling_frequency_follows_rule_probabilities():
    w = two_leaf_grammar(0.9)
    rng = random.Random(5)
    n = 10_000
    first = sum(sample(w, rng) == Primitive("a") for _ in range(n))
    # three standard deviations of Binomial(10000, 0.9) is 90
    assert 0.88 <= first / n <= 0.92


def test_log_probability_is_product_of_rules():
    dsl = {"f": PrimitiveSpec("f", arrow(STRING, STRING), None), "a": PrimitiveSpec("a", STRING, None, "a")}
    g = compile_grammar(dsl, arity=0, max_depth=2)
    w = WeightedGrammar.from_weights(g, {nt: [1.0] * len(rs) for nt, rs in g.rules.items()})
    assert log_probability(w, apply(Primitive("f"), Primitive("a"))) == pytest.approx(math.log(0.5))


def test_probability_bounded_by_rule_probabilities():
    g = compile_grammar(arity=1, constants_in=[" "], max_depth=5)
    w = uniform_weights(g)
    rng = random.Random(9)
    for _ in range(200):
        p = sample(w, rng)
        lp = log_probability(w, p)
        steps = derivation(g, p)
        assert lp == pytest.approx(sum(w.log_probs[nt][i] for nt, i in steps))
        assert math.exp(lp) <= max(math.exp(w.log_probs[nt][i]) for nt, i in steps) + 1e-12


def test_not_derivable():
    g = compile_grammar(CONCAT_ONLY, arity=1, max_depth=3)
    with pytest.raises(NotDerivable):
        log_probability(uniform_weights(g), parse_sexpr("(concat (var 0) (concat (var 0) (var 0)))"))
    with pytest.raises(NotDerivable):
        derivation(g, Variable(1))


def test_weights_must_be_positive():
    g = compile_grammar(CONCAT_ONLY, arity=1, max_depth=3)
    with pytest.raises(ValueError):
        WeightedGrammar.from_weights(g, {nt: [0.0] * len(rs) for nt, rs in g.rules.items()})


def test_nonterminal_rendering():
    assert str(NonTerminal(STRING, 3)) == "NT(STRING,3)"
