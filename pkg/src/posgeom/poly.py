"""Exact multivariate polynomials and rational functions over the rationals.

A :class:`MultiPoly` lives over an ordered tuple of variable names (its
variable table) and stores a sparse map from exponent vectors to nonzero
:class:`fractions.Fraction` coefficients.  Terms are printed in degree
reverse lexicographic order, highest term first, with the variable table
order fixing ``vars[0] > vars[1] > ...``.

Multivariate gcds (needed to keep :class:`RatFunc` reduced), exact division
and large products are delegated to FLINT's sparse polynomials through
python-flint; the representation and everything else is plain Python.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational

import flint
from flint.utils.flint_exceptions import DomainError as _FlintDomainError

from .errors import InputError, VariableMismatchError

__all__ = [
    "MultiPoly",
    "RatFunc",
    "as_fraction",
    "format_fraction",
    "term_key",
    "poly_gcd",
    "flint_context",
    "to_flint",
    "from_flint",
]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, gmpy/sympy rationals or ``"p/q"`` strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise InputError(f"not a rational number: {value!r}") from None
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def term_key(exp):
    """Sort key realising degree reverse lexicographic order (larger = higher)."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _is_scalar(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms=None, *, _trusted=False):
        self.vars = tuple(vars)
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        n = len(self.vars)
        if len(set(self.vars)) != n:
            raise InputError(f"duplicate variable names in {self.vars}")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match {n} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, vars) -> MultiPoly:
        return cls(vars, {}, _trusted=True)

    @classmethod
    def constant(cls, vars, c) -> MultiPoly:
        vars = tuple(vars)
        c = as_fraction(c)
        return cls(vars, {(0,) * len(vars): c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, vars) -> MultiPoly:
        return cls.constant(vars, 1)

    @classmethod
    def variable(cls, vars, name) -> MultiPoly:
        vars = tuple(vars)
        try:
            i = vars.index(name)
        except ValueError:
            raise VariableMismatchError(f"{name!r} not in variable table {vars}") from None
        exp = [0] * len(vars)
        exp[i] = 1
        return cls(vars, {tuple(exp): Fraction(1)}, _trusted=True)

    @classmethod
    def linear(cls, vars, coeffs, constant=0) -> MultiPoly:
        """Build ``sum coeffs[i]*vars[i] + constant``."""
        vars = tuple(vars)
        n = len(vars)
        terms = {}
        for i, c in enumerate(coeffs):
            c = as_fraction(c)
            if c:
                exp = [0] * n
                exp[i] = 1
                terms[tuple(exp)] = c
        constant = as_fraction(constant)
        if constant:
            terms[(0,) * n] = constant
        return cls(vars, terms, _trusted=True)

    @classmethod
    def parse(cls, text: str, vars) -> MultiPoly:
        """Parse an expression such as ``"2*x^2 - x*y + 1/3"``."""
        from .parsing import parse_polynomial

        result = parse_polynomial(text, vars)
        if isinstance(result, RatFunc):
            if not result.is_polynomial():
                raise InputError(f"not a polynomial: {text!r}")
            return result.num
        return result

    # basic predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, RatFunc):
            return other == self
        if _is_scalar(other):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise VariableMismatchError(
                    f"variable tables differ: {self.vars} vs {other.vars}"
                )
            return other
        if _is_scalar(other):
            return MultiPoly.constant(self.vars, other)
        return None

    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for exp, c in o.terms.items():
            s = terms.get(exp, 0) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return MultiPoly(self.vars, terms, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        if _is_scalar(other):
            c = as_fraction(other)
            if not c:
                return MultiPoly.zero(self.vars)
            return MultiPoly(self.vars, {e: c * v for e, v in self.terms.items()}, _trusted=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(self.terms) * len(o.terms) > _FLINT_CUTOFF:
            return from_flint(self.vars, to_flint(self) * to_flint(o))
        if len(self.terms) < len(o.terms):
            a, b = self.terms, o.terms
        else:
            a, b = o.terms, self.terms
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return MultiPoly(self.vars, {e: c for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            c = as_fraction(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self * (1 / c)
        if isinstance(other, (MultiPoly, RatFunc)):
            return RatFunc(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return RatFunc(MultiPoly.constant(self.vars, other), self)
        return NotImplemented

    # structure ----------------------------------------------------------
    def sorted_terms(self):
        """Terms as ``(exponent, coefficient)`` pairs, highest first."""
        return sorted(self.terms.items(), key=lambda t: term_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda t: term_key(t[0]))

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, name) -> int:
        i = self._index(name)
        return max((e[i] for e in self.terms), default=-1)

    def homogeneity(self, subset=None):
        """Common total degree of all terms in ``subset`` (default: all vars).

        Returns ``None`` if the terms have different degrees or the polynomial
        is zero.
        """
        idx = range(len(self.vars)) if subset is None else [self._index(v) for v in subset]
        degrees = {sum(e[i] for i in idx) for e in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def used_vars(self) -> tuple:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(v for i, v in enumerate(self.vars) if i in used)

    def _index(self, name) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise VariableMismatchError(f"{name!r} not in variable table {self.vars}") from None

    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> MultiPoly:
        """Integer primitive part with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self * (1 / c)

    def embed(self, vars) -> MultiPoly:
        """Re-express over a variable table containing every used variable."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        if len(pos) != len(vars):
            raise InputError(f"duplicate variable names in {vars}")
        mapping = []
        for i, v in enumerate(self.vars):
            mapping.append(pos.get(v))
        n = len(vars)
        terms = {}
        for e, c in self.terms.items():
            out = [0] * n
            for i, x in enumerate(e):
                if x:
                    j = mapping[i]
                    if j is None:
                        raise VariableMismatchError(
                            f"variable {self.vars[i]!r} is used but missing from {vars}"
                        )
                    out[j] = x
            terms[tuple(out)] = c
        return MultiPoly(vars, terms, _trusted=True)

    # calculus and evaluation -------------------------------------------
    def diff(self, name) -> MultiPoly:
        i = self._index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = c * e[i]
        return MultiPoly(self.vars, terms, _trusted=True)

    def evaluate(self, values) -> Fraction:
        """Evaluate at a point given as a mapping name -> rational."""
        if not self.terms:
            return Fraction(0)
        n = len(self.vars)
        top = [max(e[i] for e in self.terms) for i in range(n)]
        point = []
        for i, v in enumerate(self.vars):
            if v in values:
                point.append(as_fraction(values[v]))
            elif top[i]:
                raise VariableMismatchError(f"missing value for variable {v!r}")
            else:
                point.append(Fraction(0))
        # integer arithmetic over the common denominator prod d_i^top_i * lcm(coeff dens)
        cden = 1
        for c in self.terms.values():
            cden = lcm(cden, c.denominator)
        pw = [
            [x.numerator**k * x.denominator ** (t - k) for k in range(t + 1)]
            for x, t in zip(point, top)
        ]
        total = 0
        for e, c in self.terms.items():
            t = c.numerator * (cden // c.denominator)
            for i, k in enumerate(e):
                if top[i]:
                    t *= pw[i][k]
            total += t
        den = cden
        for x, t in zip(point, top):
            den *= x.denominator**t
        return Fraction(total, den)

    def substitute(self, bindings, vars=None) -> MultiPoly:
        """Simultaneous substitution ``var -> image``.

        Images may be rationals or MultiPolys (over any variable table).  The
        result lives over ``vars`` if given; otherwise over this table
        extended by the new variables appearing in the images.
        """
        images = {}
        new_vars = list(self.vars)
        for name, img in bindings.items():
            self._index(name)
            if isinstance(img, MultiPoly):
                for v in img.vars:
                    if v not in new_vars:
                        new_vars.append(v)
            images[name] = img
        target = tuple(vars) if vars is not None else tuple(new_vars)
        gens = []
        for v in self.vars:
            img = images.get(v)
            if img is None:
                gens.append(MultiPoly.variable(target, v) if v in target else None)
            elif isinstance(img, MultiPoly):
                gens.append(img.embed(target))
            else:
                gens.append(MultiPoly.constant(target, img))
        powers = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                if gens[i] is None:
                    raise VariableMismatchError(
                        f"variable {self.vars[i]!r} survives substitution but is not in {target}"
                    )
                powers[key] = gens[i] ** k
            return powers[key]

        result = MultiPoly.zero(target)
        for e, c in self.terms.items():
            t = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            result = result + t
        return result

    # division -----------------------------------------------------------
    def exquo(self, other: MultiPoly) -> MultiPoly:
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if len(self.terms) > _FLINT_CUTOFF:
            try:
                return from_flint(self.vars, to_flint(self) / to_flint(other))
            except _FlintDomainError:
                raise ArithmeticError("polynomial does not divide exactly") from None
        lexp, lc = other.leading_term()
        rem = dict(self.terms)
        # min-heap on (-degree, reversed exponent) pops the grevlex-largest term
        heap = [(-sum(e), e[::-1], e) for e in rem]
        heapq.heapify(heap)
        quot = {}
        while heap:
            _, _, e = heapq.heappop(heap)
            c = rem.pop(e, None)
            if c is None:
                continue
            shift = tuple(a - b for a, b in zip(e, lexp))
            if any(s < 0 for s in shift):
                raise ArithmeticError("polynomial does not divide exactly")
            q = c / lc
            quot[shift] = q
            for oe, oc in other.terms.items():
                if oe == lexp:
                    continue
                te = tuple(a + b for a, b in zip(oe, shift))
                old = rem.get(te)
                v = (old or 0) - q * oc
                if v:
                    if old is None:
                        heapq.heappush(heap, (-sum(te), te[::-1], te))
                    rem[te] = v
                elif old is not None:
                    del rem[te]
        return MultiPoly(self.vars, quot, _trusted=True)

    def divides(self, other: MultiPoly) -> bool:
        try:
            other.exquo(self)
        except ArithmeticError:
            return False
        return True

    # serialization ------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, exp) if k
            )
            a = abs(c)
            if not mono:
                body = format_fraction(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_fraction(a)}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, vars={self.vars!r})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                [list(e), [c.numerator, c.denominator]] for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> MultiPoly:
        try:
            vars = tuple(obj["vars"])
            terms = {}
            for exp, (num, den) in obj["terms"]:
                terms[tuple(exp)] = Fraction(int(num), int(den))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from None
        return cls(vars, terms)


# ---------------------------------------------------------------------------
# FLINT bridge

_FLINT_CUTOFF = 64


@lru_cache(maxsize=256)
def flint_context(vars):
    return flint.fmpq_mpoly_ctx.get(vars, "degrevlex")


def to_flint(p: MultiPoly):
    ctx = flint_context(p.vars)
    return ctx.from_dict({e: flint.fmpq(c.numerator, c.denominator) for e, c in p.terms.items()})


def from_flint(vars, q) -> MultiPoly:
    return MultiPoly(
        vars,
        {tuple(map(int, e)): Fraction(int(c.p), int(c.q)) for e, c in q.to_dict().items()},
        _trusted=True,
    )


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to a primitive integer polynomial."""
    if a.vars != b.vars:
        raise VariableMismatchError(f"variable tables differ: {a.vars} vs {b.vars}")
    if a.is_zero():
        return b.primitive()
    if b.is_zero() or a.is_constant() or b.is_constant():
        return a.primitive() if b.is_zero() else MultiPoly.one(a.vars)
    return from_flint(a.vars, to_flint(a).gcd(to_flint(b))).primitive()


def _cofactors(a: MultiPoly, b: MultiPoly):
    """Return ``(a/g, b/g)`` for ``g = gcd(a, b)``."""
    fa, fb = to_flint(a), to_flint(b)
    g = fa.gcd(fb)
    return from_flint(a.vars, fa / g), from_flint(a.vars, fb / g)


class RatFunc:
    """Reduced quotient of two MultiPolys over the same variable table.

    The denominator is kept as a primitive integer polynomial with positive
    leading coefficient, which makes the representation canonical.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, coprime=False, _reduced=False):
        """``coprime=True`` promises ``gcd(num, den) = 1`` and skips the gcd."""
        if not isinstance(num, MultiPoly):
            if isinstance(den, MultiPoly):
                num = MultiPoly.constant(den.vars, num)
            else:
                raise TypeError("RatFunc needs at least one MultiPoly to fix the variables")
        if den is None:
            den = MultiPoly.one(num.vars)
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.constant(num.vars, den)
        if num.vars != den.vars:
            raise VariableMismatchError(f"variable tables differ: {num.vars} vs {den.vars}")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._hash = None
        if _reduced:
            self.num, self.den = num, den
            return
        if num.is_zero():
            self.num, self.den = num, MultiPoly.one(num.vars)
            return
        if den.is_constant():
            self.num, self.den = num * (1 / den.constant_value()), MultiPoly.one(num.vars)
            return
        if not coprime and not num.is_constant():
            num, den = _cofactors(num, den)
        scale = den.content()
        if den.leading_coefficient() < 0:
            scale = -scale
        self.num = num * (1 / scale)
        self.den = den * (1 / scale)

    @property
    def vars(self):
        return self.num.vars

    @classmethod
    def from_poly(cls, p: MultiPoly) -> RatFunc:
        return cls(p, MultiPoly.one(p.vars), _reduced=True)

    @classmethod
    def constant(cls, vars, c) -> RatFunc:
        return cls.from_poly(MultiPoly.constant(vars, c))

    @classmethod
    def parse(cls, text: str, vars) -> RatFunc:
        from .parsing import parse_polynomial

        result = parse_polynomial(text, vars)
        return result if isinstance(result, RatFunc) else cls.from_poly(result)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.constant_value()

    def as_poly(self) -> MultiPoly:
        if not self.is_polynomial():
            raise ValueError("rational function is not a polynomial")
        return self.num

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, MultiPoly):
            return self.is_polynomial() and self.num == other
        if _is_scalar(other):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def _coerce(self, other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                raise VariableMismatchError(
                    f"variable tables differ: {self.vars} vs {other.vars}"
                )
            return other
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise VariableMismatchError(
                    f"variable tables differ: {self.vars} vs {other.vars}"
                )
            return RatFunc.from_poly(other)
        if _is_scalar(other):
            return RatFunc.constant(self.vars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            c = as_fraction(other)
            return RatFunc(self.num * c, self.den, _reduced=True) if c else RatFunc.constant(self.vars, 0)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_polynomial() and o.is_polynomial():
            return RatFunc(self.num * o.num, _reduced=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ValueError("exponent must be an integer")
        if k < 0:
            return RatFunc.constant(self.vars, 1) / (self ** (-k))
        return RatFunc(self.num**k, self.den**k, _reduced=True)

    def diff(self, name) -> RatFunc:
        if self.is_polynomial():
            return RatFunc(self.num.diff(name), self.den, _reduced=True)
        n, d = self.num, self.den
        return RatFunc(n.diff(name) * d - n * d.diff(name), d * d)

    def evaluate(self, values) -> Fraction:
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.evaluate(values) / d

    def substitute(self, bindings, vars=None) -> RatFunc:
        num = self.num.substitute(bindings, vars)
        den = self.den.substitute(bindings, num.vars)
        return RatFunc(num, den)

    def embed(self, vars) -> RatFunc:
        return RatFunc(self.num.embed(vars), self.den.embed(vars), _reduced=True)

    def homogeneity(self, subset=None):
        """Degree of homogeneity (may be negative) or ``None``."""
        if self.num.is_zero():
            return None
        a = self.num.homogeneity(subset)
        b = self.den.homogeneity(subset)
        if a is None or b is None:
            return None
        return a - b

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        num = str(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den) > 1 or not self.den.is_constant():
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc({str(self)!r}, vars={self.vars!r})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj) -> RatFunc:
        try:
            return cls(MultiPoly.from_json(obj["num"]), MultiPoly.from_json(obj["den"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed rational function JSON: {exc}") from None
