"""Safe arithmetic-expression parsing for the text file formats.

Expressions use ``+ - * / ^`` (``**`` also accepted), integer literals and
identifiers.  They are parsed with :mod:`ast` and folded over any ring whose
elements support the arithmetic operators; identifiers are resolved by a
caller-supplied callback.
"""

from __future__ import annotations

import ast
from fractions import Fraction

from .errors import InputError

__all__ = ["evaluate", "identifiers", "parse_polynomial", "read_lines"]


def _tree(text: str, source=None, line=None) -> ast.expr:
    if not text.strip():
        raise InputError("empty expression", line=line, source=source)
    try:
        return ast.parse(text.replace("^", "**").strip(), mode="eval").body
    except SyntaxError as exc:
        raise InputError(f"cannot parse {text.strip()!r}: {exc.msg}", line=line, source=source) from None


def identifiers(text: str) -> list[str]:
    """Identifiers appearing in an expression, in order of first appearance."""
    seen = []
    for node in ast.walk(_tree(text)):
        if isinstance(node, ast.Name) and node.id not in seen:
            seen.append(node.id)
    return seen


def evaluate(text: str, symbol, *, source=None, line=None):
    """Fold the expression ``text``; ``symbol(name)`` maps identifiers to ring elements.

    Numeric literals become :class:`~fractions.Fraction`, so the ring must
    accept them as operands.
    """

    def fail(msg):
        raise InputError(msg, line=line, source=source)

    def walk(node):
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                fail(f"unsupported literal {node.value!r}")
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            try:
                return symbol(node.id)
            except KeyError:
                fail(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                base = walk(node.left)
                exp = walk(node.right)
                if not isinstance(exp, Fraction) or exp.denominator != 1 or exp < 0:
                    fail("exponents must be nonnegative integer literals")
                return base ** int(exp)
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                try:
                    return left / right
                except ZeroDivisionError:
                    fail("division by zero")
                except TypeError:
                    fail("unsupported division")
        fail(f"unsupported syntax: {ast.dump(node)[:40]}")

    return walk(_tree(text, source, line))


def parse_polynomial(text: str, vars, *, source=None, line=None):
    """Parse into a MultiPoly (or RatFunc if a division by a non-constant occurs)."""
    from .poly import MultiPoly, RatFunc

    vars = tuple(vars)
    gens = {v: MultiPoly.variable(vars, v) for v in vars}

    def symbol(name):
        return gens[name]

    value = evaluate(text, symbol, source=source, line=line)
    if isinstance(value, Fraction):
        return MultiPoly.constant(vars, value)
    if isinstance(value, RatFunc) and value.is_polynomial():
        return value.num
    return value


def read_lines(text: str):
    """Yield ``(line_number, content)`` for non-blank lines, ``#`` comments stripped."""
    for i, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield i, content
