import itertools
import math
import random
import time

import pytest

from kgsynth.dsl import PrimitiveSpec
from kgsynth.errors import TooLarge
from kgsynth.grammar import WeightedGrammar, compile_grammar, uniform_weights
from kgsynth.heap_search import brute_force_enumerate, heap_search, verify
from kgsynth.program import Constant, KgPath, Primitive, Variable, apply, parse_sexpr
from kgsynth.task import make_task
from kgsynth.types import STRING, arrow

from oracles import random_weighted_grammar


def leaf(name, t=STRING):
    return PrimitiveSpec(name, t, None, name)


def fab_grammar():
    """S -> f(S) 0.5 | a 0.3 | b 0.2 at every depth, without renormalizing at depth 1."""
    dsl = {"f": PrimitiveSpec("f", arrow(STRING, STRING), None), "a": leaf("a"), "b": leaf("b")}
    g = compile_grammar(dsl, arity=0, max_depth=4)
    probs = {"f": 0.5, "a": 0.3, "b": 0.2}
    return WeightedGrammar(g, {nt: [math.log(probs[r.key]) for r in rs] for nt, rs in g.rules.items()})


def test_two_leaves_in_probability_order():
    dsl = {"a": leaf("a"), "b": leaf("b")}
    g = compile_grammar(dsl, arity=0, max_depth=1)
    w = WeightedGrammar.from_weights(g, {g.start: [0.6, 0.4]})
    assert [p.sexpr for p, _ in heap_search(w)] == ["a", "b"]


def test_recursive_grammar_prefix():
    stream = list(itertools.islice(heap_search(fab_grammar()), 5))
    assert [p.sexpr for p, _ in stream] == ["a", "b", "(f a)", "(f b)", "(f (f a))"]
    assert [math.exp(lp) for _, lp in stream] == pytest.approx([0.3, 0.2, 0.15, 0.1, 0.075])


def test_recursive_grammar_matches_oracle():
    w = fab_grammar()
    assert list(heap_search(w)) == brute_force_enumerate(w)


def test_uniform_ties_follow_sexpr_order():
    dsl = {"c": leaf("c"), "a": leaf("a"), "b": leaf("b")}
    g = compile_grammar(dsl, arity=0, max_depth=1)
    stream = list(heap_search(uniform_weights(g)))
    assert [p.sexpr for p, _ in stream] == ["a", "b", "c"]
    assert all(math.exp(lp) == pytest.approx(1 / 3) for _, lp in stream)


def test_single_derivation_oracle():
    g = compile_grammar({"a": leaf("a")}, arity=0, max_depth=3)
    assert brute_force_enumerate(uniform_weights(g)) == [(Primitive("a"), 0.0)]


def test_oracle_refuses_huge_grammars():
    g = compile_grammar(arity=1, constants_in=[" ", ","], max_depth=6)
    with pytest.raises(TooLarge):
        brute_force_enumerate(uniform_weights(g))


def test_empty_grammar_gives_empty_oracle():
    g = compile_grammar({"a": leaf("a")}, arity=0, max_depth=1)
    empty = WeightedGrammar.__new__(WeightedGrammar)
    empty.grammar = type(g)(g.start, {}, 0)
    empty.log_probs, empty.scores = {}, {}
    assert brute_force_enumerate(empty) == []


def test_lazy_on_a_large_grammar():
    g = compile_grammar(arity=1, constants_in=[" ", ",", ", "], constants_out=["-"], max_depth=6)
    assert g.count_programs() > 1_000_000
    start = time.perf_counter()
    first = list(itertools.islice(heap_search(uniform_weights(g)), 10))
    assert time.perf_counter() - start < 1.0
    assert len(first) == 10


@pytest.mark.parametrize("seed", range(10))
def test_order_matches_oracle_on_random_grammars(seed):
    w = random_weighted_grammar(random.Random(seed))
    stream = list(heap_search(w))
    assert stream == brute_force_enumerate(w)
    assert len({p for p, _ in stream}) == len(stream) == w.grammar.count_programs()
    assert all(a[1] >= b[1] for a, b in zip(stream, stream[1:]))


def test_verify():
    task = make_task("currency", [(("17", "United States"), "17 USD"), (("42", "France"), "42 EUR")])
    program = parse_sexpr('(concat (concat (var 0) (cst_out " ")) (kg_path "CurrencyOf" (var 1)))')
    env = {"CurrencyOf": {"United States": "USD", "France": "EUR"}.__getitem__}
    assert verify(program, task, env)
    assert not verify(Constant("x"), task, env)
    assert not verify(parse_sexpr('(match (var 0) (not_chars (cst_in "1")))'),
                      make_task("t", [("1", "1"), ("2", "2")]))
    assert not verify(apply(KgPath("Missing"), Variable(1)), task, env)
