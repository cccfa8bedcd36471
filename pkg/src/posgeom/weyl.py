"""Weyl algebra arithmetic, left Groebner bases in the rational Weyl algebra,
holonomic rank, connection matrices and GKZ systems.

An element is a finite sum ``sum_a c_a(x) d^a`` kept in normal order (all
coefficients to the left).  Coefficients are :class:`RatFunc` over the table
``x1..xn`` followed by any parameters (symbolic exponents, GKZ ``kappa``),
which are treated as constants.  In ``"D"`` mode every coefficient must be a
polynomial; ``"R"`` mode allows rational functions.

Products use the Leibniz rule ``d^a c = sum_{g <= a} C(a, g) (d^g . c) d^(a-g)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .errors import InfiniteRankError, InputError
from .parsing import evaluate, read_lines
from .poly import MultiPoly, RatFunc, _is_scalar, as_fraction

__all__ = [
    "WeylAlgebra",
    "WeylElement",
    "SymbolicMonomial",
    "LeftIdeal",
    "GroebnerData",
    "GKZSystem",
    "term_order",
    "groebner",
    "normal_form",
    "holonomic_rank",
    "standard_monomials",
    "connection_matrices",
    "integrability_defect",
    "gkz_system",
    "annihilator_check",
    "parse_operator",
    "parse_operators",
    "d_monomial_str",
]


def term_order(name: str):
    """Sort key on d-exponents, larger = higher, with ``d1 > d2 > ...``."""
    if name == "degrevlex":
        return lambda e: (sum(e), tuple(-x for x in reversed(e)))
    if name == "lex":
        return lambda e: tuple(e)
    raise ValueError(f"unknown term order {name!r}; use 'degrevlex' or 'lex'")


class WeylAlgebra:
    """``n``-th Weyl algebra with coefficient variables ``x1..xn`` plus ``params``."""

    def __init__(self, n: int, params=()):
        if n < 1:
            raise ValueError("need at least one variable")
        self.n = n
        self.x_names = tuple(f"x{i}" for i in range(1, n + 1))
        self.params = tuple(params)
        clash = set(self.x_names) & set(self.params)
        if clash:
            raise ValueError(f"parameter names clash with variables: {sorted(clash)}")
        self.vars = self.x_names + self.params
        self._diff_cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, WeylAlgebra) and (self.n, self.params) == (other.n, other.params)

    def __hash__(self):
        return hash((self.n, self.params))

    def __repr__(self):
        return f"WeylAlgebra({self.n}, params={self.params!r})"

    # constructors -------------------------------------------------------
    def coefficient(self, c) -> RatFunc:
        if isinstance(c, RatFunc):
            if c.vars != self.vars:
                raise ValueError(f"coefficient lives over {c.vars}, expected {self.vars}")
            return c
        if isinstance(c, MultiPoly):
            return RatFunc.from_poly(c.embed(self.vars) if c.vars != self.vars else c)
        return RatFunc.constant(self.vars, as_fraction(c))

    def element(self, terms, mode="D") -> WeylElement:
        return WeylElement(self, {tuple(e): self.coefficient(c) for e, c in terms.items()}, mode)

    def zero(self, mode="D") -> WeylElement:
        return WeylElement(self, {}, mode)

    def one(self, mode="D") -> WeylElement:
        return self.scalar(1, mode)

    def scalar(self, c, mode="D") -> WeylElement:
        return self.element({(0,) * self.n: c}, mode)

    def x(self, i: int, mode="D") -> WeylElement:
        """Multiplication by ``x_i`` (1-based)."""
        return self.element({(0,) * self.n: MultiPoly.variable(self.vars, self.x_names[i - 1])}, mode)

    def param(self, name: str, mode="D") -> WeylElement:
        return self.element({(0,) * self.n: MultiPoly.variable(self.vars, name)}, mode)

    def d(self, i: int, mode="D") -> WeylElement:
        """The derivation ``d_i`` (1-based)."""
        e = [0] * self.n
        e[i - 1] = 1
        return self.element({tuple(e): 1}, mode)

    def d_monomial(self, exp, mode="R") -> WeylElement:
        return self.element({tuple(exp): 1}, mode)

    def theta(self, i: int, mode="D") -> WeylElement:
        """Euler operator ``x_i d_i``."""
        return self.x(i, mode) * self.d(i, mode)

    # coefficient calculus ----------------------------------------------
    def diff_coefficient(self, c: RatFunc, exp) -> RatFunc:
        """``d^exp . c`` for a coefficient ``c`` (cached)."""
        if not any(exp):
            return c
        key = (c, exp)
        hit = self._diff_cache.get(key)
        if hit is not None:
            return hit
        i = next(k for k, a in enumerate(exp) if a)
        lower = list(exp)
        lower[i] -= 1
        out = self.diff_coefficient(c, tuple(lower)).diff(self.x_names[i])
        if len(self._diff_cache) > 200000:
            self._diff_cache.clear()
        self._diff_cache[key] = out
        return out


def _check_mode(mode):
    if mode not in ("D", "R"):
        raise ValueError("mode must be 'D' or 'R'")


class WeylElement:
    """Normally ordered element ``sum c_a(x) d^a`` of a :class:`WeylAlgebra`."""

    __slots__ = ("alg", "terms", "mode")

    def __init__(self, alg: WeylAlgebra, terms: dict, mode: str = "D"):
        _check_mode(mode)
        self.alg = alg
        self.mode = mode
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        if mode == "D":
            for c in self.terms.values():
                if not c.is_polynomial():
                    raise ValueError("D-mode elements need polynomial coefficients; use mode 'R'")

    def _same(self, other: WeylElement):
        if not isinstance(other, WeylElement):
            return None
        if other.alg != self.alg:
            raise ValueError("elements belong to different Weyl algebras")
        if other.mode != self.mode:
            raise ValueError(f"mode mismatch: {self.mode} vs {other.mode}")
        return other

    def _lift(self, other):
        if isinstance(other, WeylElement):
            return self._same(other)
        if _is_scalar(other) or isinstance(other, (MultiPoly, RatFunc)):
            mode = self.mode
            if isinstance(other, RatFunc) and not other.is_polynomial():
                mode = "R"
                if self.mode == "D":
                    raise ValueError("mode mismatch: rational coefficient in D mode")
            return self.alg.scalar(other, mode)
        return None

    def to_rational(self) -> WeylElement:
        return WeylElement(self.alg, self.terms, "R")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.alg == other.alg and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return WeylElement(self.alg, out, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.alg, {e: -c for e, c in self.terms.items()}, self.mode)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c: RatFunc) -> WeylElement:
        """Left multiplication by a coefficient."""
        return WeylElement(self.alg, {e: c * v for e, v in self.terms.items()}, self.mode)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        alg = self.alg
        out: dict = {}
        for a, ca in self.terms.items():
            for b, cb in o.terms.items():
                for g in product(*(range(k + 1) for k in a)):
                    mult = 1
                    for ak, gk in zip(a, g):
                        mult *= math.comb(ak, gk)
                    dc = alg.diff_coefficient(cb, g)
                    if dc.is_zero():
                        continue
                    e = tuple(ak - gk + bk for ak, gk, bk in zip(a, g, b))
                    term = ca * dc * mult
                    out[e] = out[e] + term if e in out else term
        return WeylElement(alg, out, self.mode)

    def __rmul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self

    def __truediv__(self, other):
        """Right division by a coefficient (a d-free element); result is in R mode."""
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if set(o.terms) - {(0,) * self.alg.n} or o.is_zero():
            raise ValueError("can only divide by a nonzero coefficient")
        inv = WeylElement(self.alg, {(0,) * self.alg.n: 1 / o.terms[(0,) * self.alg.n]}, "R")
        return self.to_rational() * inv

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.alg.one(self.mode)
        for _ in range(k):
            out = out * self
        return out

    def leading(self, order="degrevlex"):
        """``(exponent, coefficient)`` of the highest term."""
        key = term_order(order)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, order="degrevlex") -> WeylElement:
        _, c = self.leading(order)
        inv = 1 / c
        return WeylElement(self.alg, {e: v * inv for e, v in self.terms.items()}, "R")

    def sorted_terms(self, order="degrevlex"):
        key = term_order(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def format(self, order="degrevlex") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                f"d{i + 1}" if k == 1 else f"d{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                text = str(c)
            elif c == 1:
                text = mono
            elif c == -1:
                text = "-" + mono
            else:
                cs = str(c)
                if c.is_constant() or (c.is_polynomial() and len(c.num) == 1):
                    text = f"{cs}*{mono}"
                else:
                    text = f"({cs})*{mono}"
            pieces.append(text)
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"WeylElement({self.format()!r})"

    # action on functions -----------------------------------------------
    def apply(self, f):
        """``self . f`` for a MultiPoly, RatFunc or :class:`SymbolicMonomial`."""
        alg = self.alg
        if isinstance(f, SymbolicMonomial):
            return f._apply(self)
        if isinstance(f, MultiPoly):
            f = RatFunc.from_poly(f)
        if not isinstance(f, RatFunc):
            raise TypeError(f"cannot apply an operator to {type(f).__name__}")
        if f.vars != alg.vars:
            raise ValueError(f"target lives over {f.vars}, expected {alg.vars}")
        out = RatFunc.constant(alg.vars, 0)
        for e, c in self.terms.items():
            out = out + c * alg.diff_coefficient(f, e)
        return out


@dataclass(frozen=True)
class SymbolicMonomial:
    """The function ``x^nu * factor`` with exponents ``nu`` that may be symbolic.

    ``nu`` entries are RatFuncs over the algebra's table (usually parameters
    or constants); ``factor`` is a RatFunc.  Derivatives stay in this class:
    ``d_i . (x^nu R) = x^nu (nu_i R / x_i + d_i R)``.
    """

    alg: WeylAlgebra
    nu: tuple
    factor: RatFunc

    @classmethod
    def make(cls, alg: WeylAlgebra, nu, factor=1) -> SymbolicMonomial:
        coeffs = []
        for v in nu:
            if isinstance(v, str):
                coeffs.append(RatFunc.from_poly(MultiPoly.variable(alg.vars, v)))
            else:
                coeffs.append(alg.coefficient(v))
        if len(coeffs) != alg.n:
            raise ValueError(f"need {alg.n} exponents")
        return cls(alg, tuple(coeffs), alg.coefficient(factor))

    def _d(self, i: int, r: RatFunc) -> RatFunc:
        x = RatFunc.from_poly(MultiPoly.variable(self.alg.vars, self.alg.x_names[i]))
        return self.nu[i] * r / x + r.diff(self.alg.x_names[i])

    def _apply(self, op: WeylElement) -> SymbolicMonomial:
        total = RatFunc.constant(self.alg.vars, 0)
        cache = {(0,) * self.alg.n: self.factor}

        def deriv(e):
            if e not in cache:
                i = next(k for k, a in enumerate(e) if a)
                lower = list(e)
                lower[i] -= 1
                cache[e] = self._d(i, deriv(tuple(lower)))
            return cache[e]

        for e, c in op.terms.items():
            total = total + c * deriv(e)
        return SymbolicMonomial(self.alg, self.nu, total)

    def is_zero(self) -> bool:
        return self.factor.is_zero()


# ---------------------------------------------------------------------------
# left ideals and Groebner bases


@dataclass(frozen=True)
class LeftIdeal:
    generators: tuple
    mode: str = "D"

    def __post_init__(self):
        _check_mode(self.mode)
        if not self.generators:
            raise ValueError("a left ideal needs at least one generator")
        object.__setattr__(self, "generators", tuple(self.generators))

    @property
    def alg(self) -> WeylAlgebra:
        return self.generators[0].alg


@dataclass(frozen=True)
class GroebnerData:
    """Reduced left Groebner basis in R_n with its staircase.

    ``standard_monomials`` is sorted ascending in ``order`` and is ``None``
    when the staircase is infinite.
    """

    basis: tuple
    order: str
    standard_monomials: tuple | None
    leading_monomials: tuple = field(default=())

    @property
    def rank(self):
        return math.inf if self.standard_monomials is None else len(self.standard_monomials)


def d_monomial_str(e) -> str:
    """``d1^2*d3`` style text for a d-exponent (``1`` for the zero exponent)."""
    parts = [f"d{i + 1}" if k == 1 else f"d{i + 1}^{k}" for i, k in enumerate(e) if k]
    return "*".join(parts) or "1"


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reducer(basis, e):
    for g, (lm, _) in basis:
        if _divides(lm, e):
            return g, lm
    return None


def normal_form(f: WeylElement, basis, order="degrevlex") -> WeylElement:
    """Fully reduce ``f`` modulo the left ideal generated by ``basis`` (R mode)."""
    f = f.to_rational()
    alg = f.alg
    key = term_order(order)
    lead = [(g.to_rational(), g.leading(order)) for g in basis if not g.is_zero()]
    result: dict = {}
    while f.terms:
        e = max(f.terms, key=key)
        c = f.terms[e]
        red = _reducer(lead, e)
        if red is None:
            result[e] = c
            rest = dict(f.terms)
            del rest[e]
            f = WeylElement(alg, rest, "R")
            continue
        g, lm = red
        shift = tuple(a - b for a, b in zip(e, lm))
        lc = g.terms[lm]
        f = f - (alg.d_monomial(shift) * g).scale(c / lc)
    return WeylElement(alg, result, "R")


def _spoly(f, g, order):
    alg = f.alg
    (a, ca), (b, cb) = f.leading(order), g.leading(order)
    lcm = tuple(max(x, y) for x, y in zip(a, b))
    left = (alg.d_monomial(tuple(l - x for l, x in zip(lcm, a))) * f).scale(1 / ca)
    right = (alg.d_monomial(tuple(l - y for l, y in zip(lcm, b))) * g).scale(1 / cb)
    return left - right


def groebner(ideal: LeftIdeal, order="degrevlex") -> GroebnerData:
    """Reduced left Groebner basis of ``R_n I`` by Buchberger's algorithm.

    Pairs are processed by the normal strategy (smallest lcm first, ties by
    generator index) and the final basis is auto-reduced and monic.
    """
    key = term_order(order)
    basis = []
    for g in ideal.generators:
        g = normal_form(g, basis, order) if basis else g.to_rational()
        if not g.is_zero():
            basis.append(g.monic(order))
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]

    def lcm_key(p):
        a, b = basis[p[0]].leading(order)[0], basis[p[1]].leading(order)[0]
        return (key(tuple(max(x, y) for x, y in zip(a, b))), p)

    while pairs:
        pairs.sort(key=lcm_key)
        i, j = pairs.pop(0)
        h = normal_form(_spoly(basis[i], basis[j], order), basis, order)
        if h.is_zero():
            continue
        basis.append(h.monic(order))
        k = len(basis) - 1
        pairs.extend((m, k) for m in range(k))

    # auto-reduce: drop redundant leading monomials, then inter-reduce
    lms = [g.leading(order)[0] for g in basis]
    keep = []
    for i, lm in enumerate(lms):
        redundant = any(
            _divides(lms[j], lm) and (lms[j] != lm or j < i) for j in range(len(basis)) if j != i
        )
        if not redundant:
            keep.append(basis[i])
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        lm, lc = g.leading(order)
        tail = WeylElement(g.alg, {e: c for e, c in g.terms.items() if e != lm}, "R")
        tail = normal_form(tail, others, order)
        reduced.append((g.alg.d_monomial(lm) + tail.scale(1 / lc)).monic(order))
    reduced.sort(key=lambda g: key(g.leading(order)[0]))
    leads = tuple(g.leading(order)[0] for g in reduced)
    return GroebnerData(tuple(reduced), order, _staircase(leads, ideal.alg.n, key), leads)


def _staircase(leads, n, key):
    bounds = []
    for i in range(n):
        pure = [lm[i] for lm in leads if all(x == 0 for k, x in enumerate(lm) if k != i) and lm[i]]
        if not pure:
            return None
        bounds.append(min(pure))
    out = [
        e for e in product(*(range(b) for b in bounds))
        if not any(_divides(lm, e) for lm in leads)
    ]
    return tuple(sorted(out, key=key))


def standard_monomials(ideal: LeftIdeal, order="degrevlex"):
    return groebner(ideal, order).standard_monomials


def holonomic_rank(ideal: LeftIdeal, order="degrevlex"):
    """Number of standard monomials, or ``math.inf``."""
    return groebner(ideal, order).rank


def connection_matrices(ideal: LeftIdeal, order="degrevlex", data: GroebnerData | None = None):
    """Matrices ``M_i`` with ``d_i . F = M_i F`` for ``F = (s_j . f)_j``.

    Rows and columns follow the standard monomials in ascending order.
    """
    data = data or groebner(ideal, order)
    if data.standard_monomials is None:
        raise InfiniteRankError("holonomic rank is infinite; no connection matrices")
    alg = ideal.alg
    std = data.standard_monomials
    index = {s: k for k, s in enumerate(std)}
    zero = RatFunc.constant(alg.vars, 0)
    mats = []
    for i in range(alg.n):
        rows = []
        for s in std:
            e = list(s)
            e[i] += 1
            nf = normal_form(alg.d_monomial(tuple(e)), data.basis, order)
            row = [zero] * len(std)
            for m, c in nf.terms.items():
                row[index[m]] = c
            rows.append(row)
        mats.append(rows)
    return mats


def _matmul(a, b, zero):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def integrability_defect(alg: WeylAlgebra, mats):
    """``d_j M_i - d_i M_j + M_i M_j - M_j M_i`` for all ``i < j`` (all zero when flat)."""
    zero = RatFunc.constant(alg.vars, 0)
    out = {}
    for i, j in combinations(range(len(mats)), 2):
        mi, mj = mats[i], mats[j]
        a, b = _matmul(mi, mj, zero), _matmul(mj, mi, zero)
        n = len(mi)
        out[(i + 1, j + 1)] = [
            [
                mi[r][c].diff(alg.x_names[j]) - mj[r][c].diff(alg.x_names[i]) + a[r][c] - b[r][c]
                for c in range(n)
            ]
            for r in range(n)
        ]
    return out


def annihilator_check(ideal: LeftIdeal, f) -> bool:
    """True iff every generator annihilates ``f`` exactly."""
    for g in ideal.generators:
        if not g.apply(f).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# GKZ systems


@dataclass(frozen=True)
class GKZSystem:
    """``H_A(kappa)``: toric binomials up to ``degree_bound`` plus Euler operators."""

    A: tuple
    kappa: tuple
    binomials: tuple
    euler: tuple
    degree_bound: int
    truncated: bool = True
    exponents: tuple = ()

    def binomial_strings(self) -> list[str]:
        """Binomials written ``d^u - d^v`` with ``u`` the lex-larger exponent."""
        return [f"{d_monomial_str(u)} - {d_monomial_str(v)}" for u, v in self.exponents]

    @property
    def ideal(self) -> LeftIdeal:
        return LeftIdeal(self.binomials + self.euler, "D")


def _monomials_upto(n, bound):
    out = []

    def rec(prefix, left):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for k in range(left + 1):
            rec(prefix + [k], left - k)

    rec([], bound)
    return out


def gkz_system(A, kappa, degree_bound: int = 2) -> GKZSystem:
    """Build the GKZ system of an integer matrix ``A`` (k x n).

    ``kappa`` has length k; entries are rationals or symbol names (which
    become parameters of the algebra).  The toric part is a minimal set of
    binomials ``d^u - d^v`` with ``A u = A v`` and ``|u|, |v| <= degree_bound``:
    candidates are scanned by degree and kept only if ``u`` and ``v`` are not
    already connected by moves from earlier binomials inside their fiber.
    """
    A = tuple(tuple(int(x) for x in row) for row in A)
    if not A or not A[0]:
        raise InputError("A must be a nonempty matrix")
    k, n = len(A), len(A[0])
    if any(len(row) != n for row in A):
        raise InputError("A must be rectangular")
    for j in range(n):
        if all(A[i][j] == 0 for i in range(k)):
            raise InputError(f"column {j + 1} of A is zero")
    kappa = tuple(kappa)
    if len(kappa) != k:
        raise InputError(f"kappa needs {k} entries (one per row of A), got {len(kappa)}")
    if degree_bound < 1:
        raise InputError("degree bound must be at least 1")
    params = tuple(c for c in kappa if isinstance(c, str))
    alg = WeylAlgebra(n, params)

    fibers: dict = {}
    for w in _monomials_upto(n, degree_bound):
        if any(w):
            b = tuple(sum(A[i][j] * w[j] for j in range(n)) for i in range(k))
            fibers.setdefault(b, []).append(w)
    parent = {}

    def find(w):
        while parent.get(w, w) != w:
            w = parent[w]
        return w

    candidates = []
    for members in fibers.values():
        for u, v in combinations(members, 2):
            if u < v:
                u, v = v, u
            candidates.append((max(sum(u), sum(v)), tuple(-x for x in u), tuple(-x for x in v), u, v))
    candidates.sort()
    moves = []
    for *_, u, v in candidates:
        if find(u) == find(v):
            continue
        moves.append((u, v))
        for members in fibers.values():
            for w in members:
                for a, b in ((u, v), (v, u)):
                    if _divides(a, w):
                        w2 = tuple(x - y + z for x, y, z in zip(w, a, b))
                        if sum(w2) <= degree_bound:
                            ra, rb = find(w), find(w2)
                            if ra != rb:
                                parent[ra] = rb

    binomials = tuple(alg.d_monomial(u, "D") - alg.d_monomial(v, "D") for u, v in moves)
    euler = []
    for i in range(k):
        op = alg.zero("D")
        for j in range(n):
            if A[i][j]:
                op = op + alg.theta(j + 1) * A[i][j]
        c = kappa[i]
        op = op - (alg.param(c) if isinstance(c, str) else alg.scalar(as_fraction(c)))
        euler.append(op)
    return GKZSystem(A, kappa, binomials, tuple(euler), degree_bound, True, tuple(moves))


# ---------------------------------------------------------------------------
# text syntax


def _scan_names(text):
    from .parsing import identifiers

    return identifiers(text)


def _classify(name):
    if len(name) > 1 and name[0] in "xdt" and name[1:].isdigit():
        return name[0], int(name[1:])
    return "p", name


def operator_shape(texts):
    """Infer ``(n, params)`` from the tokens used in operator expressions."""
    n = 0
    params = []
    for text in texts:
        for name in _scan_names(text):
            kind, val = _classify(name)
            if kind == "p":
                if name not in params:
                    params.append(name)
            else:
                n = max(n, val)
    return max(n, 1), tuple(params)


def parse_operator(text: str, alg: WeylAlgebra, *, mode="D", source=None, line=None) -> WeylElement:
    """Parse ``x2^2*d2^2 + (x1+2*x2)*d2``; ``ti`` stands for ``xi*di``.

    Products are Weyl products in the order written; division is allowed by
    coefficients only and yields an R-mode element.
    """

    def symbol(name):
        kind, val = _classify(name)
        if kind == "p":
            if name not in alg.params:
                raise KeyError(name)
            return alg.param(name, mode)
        if val < 1 or val > alg.n:
            raise KeyError(name)
        return {"x": alg.x, "d": alg.d, "t": alg.theta}[kind](val, mode)

    value = evaluate(text, symbol, source=source, line=line)
    if isinstance(value, Fraction):
        value = alg.scalar(value, mode)
    if mode == "D" and value.mode == "R":
        if all(c.is_polynomial() for c in value.terms.values()):
            value = WeylElement(alg, value.terms, "D")
    return value


def parse_operators(text: str, *, params=(), source=None):
    """Parse an operator file: one operator per line, optionally ``name = expr``.

    Returns ``(algebra, [(name, element)])``; the number of variables is the
    largest index used and every other identifier becomes a parameter.
    """
    entries = []
    for lineno, content in read_lines(text):
        name = None
        if "=" in content:
            name, _, content = content.partition("=")
            name = name.strip()
            if not name.isidentifier():
                raise InputError(f"bad operator name {name!r}", line=lineno, source=source)
        entries.append((lineno, name, content.strip()))
    if not entries:
        raise InputError("no operators found", source=source)
    n, found = operator_shape(e[2] for e in entries)
    alg = WeylAlgebra(n, tuple(dict.fromkeys(tuple(params) + found)))
    out = []
    for k, (lineno, name, expr) in enumerate(entries):
        el = parse_operator(expr, alg, mode="D", source=source, line=lineno)
        if any(not c.is_polynomial() for c in el.terms.values()):
            el = el.to_rational()
        out.append((name or f"P{k + 1}", el))
    return alg, out
