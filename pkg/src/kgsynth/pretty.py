"""Python-like rendering of synthesized programs."""

from __future__ import annotations

import json
import string

from .program import Constant, KgPath, Primitive, Program, Variable, arity_of, spine

_VAR_NAMES = "xyzuvw"


def _var_name(i: int) -> str:
    return _VAR_NAMES[i] if i < len(_VAR_NAMES) else f"x{i}"


def _quote(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def _operands(program: Program) -> list[Program]:
    head, args = spine(program)
    if isinstance(head, Primitive) and head.name == "concat" and len(args) == 2:
        return _operands(args[0]) + _operands(args[1])
    return [program]


def _pattern(program: Program) -> str | None:
    """Regex text for a regex subtree built only from constants, else None."""
    head, args = spine(program)
    if not isinstance(head, Primitive):
        return None
    if head.name in ("$", ".") and not args:
        return head.name
    if head.name in ("not_chars", "not_chars_end") and len(args) == 1 and isinstance(args[0], Constant):
        chars = "".join(sorted(set(args[0].text)))
        return f"[^{chars}]+" + ("$" if head.name == "not_chars_end" else "")
    if head.name == "compose" and len(args) == 2:
        left, right = _pattern(args[0]), _pattern(args[1])
        if left is not None and right is not None:
            return left + right
    return None


def _expr(program: Program) -> str:
    head, args = spine(program)
    if isinstance(head, Variable):
        return _var_name(head.index)
    if isinstance(head, Constant):
        return _quote(head.text)
    if isinstance(head, KgPath):
        rels = ", ".join(_quote(r) for r in head.relations)
        if len(args) == 1:
            return f"label(follow_edges_from({_expr(args[0])}, {rels}))"
        return f"(lambda e: label(follow_edges_from(e, {rels})))"
    pattern = _pattern(program)
    if pattern is not None:
        return _quote(pattern)
    if head.name == "concat" and len(args) == 2:
        return f"({_expr(args[0])} + {_expr(args[1])})"
    if not args:
        return head.name
    return f"{head.name}({', '.join(_expr(a) for a in args)})"


def pretty_print(program: Program) -> str:
    arity = max(arity_of(program), 1)
    params = [_var_name(i) for i in range(arity)]
    lines = [f"def f({', '.join(p + ': str' for p in params)}) -> str:"]
    operands = _operands(program)
    if len(operands) == 1:
        lines.append(f"    return {_expr(program)}")
        return "\n".join(lines) + "\n"
    names = [c for c in string.ascii_lowercase if c not in params]
    if len(operands) > len(names):
        names += [f"t{i}" for i in range(len(operands) - len(names))]
    for name, operand in zip(names, operands):
        lines.append(f"    {name} = {_expr(operand)}")
    lines.append(f"    return {' + '.join(names[:len(operands)])}")
    return "\n".join(lines) + "\n"
