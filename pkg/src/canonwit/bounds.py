"""Exact evaluation of the explicit bound functions.

All arithmetic is on Python integers. The recursions explode quickly, so
every evaluation runs under a bit budget (``max_bits``); when a value is
certifiably larger than the budget a :class:`~canonwit.errors.BoundOverflow`
is raised carrying a proven lower bound ``2 ** log2_lower`` instead.

Path length counts vertices throughout.

The two modes of :func:`thm_main2_Y`:

* corrected (default): ``Y(1, q) = Y(s, 1) = 1`` and ``Y(2, q) = Y(s, 2) = 2``
  for ``s, q >= 2``;
* literal: only ``Y(1, q) = Y(s, 1) = 1``, which makes every value 1.

Both set ``degenerate-base-case`` whenever the recursion (rather than a
trivially valid base) produced the value.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from math import comb

from .errors import BoundOverflow, MalformedInputError

__all__ = [
    "DEGENERATE",
    "HEURISTIC_F",
    "RAMSEY_UPPER",
    "DEFAULT_MAX_BITS",
    "BoundValue",
    "pigeonhole_P",
    "ramsey_upper_R",
    "lemma_grid_C",
    "thm_main2_Y",
    "thm_main_Z",
    "dense_b",
    "dense_c",
    "lemma_dense_D",
    "thm_prefinal_X",
    "default_grid_minor_f",
    "evaluate",
]

DEGENERATE = "degenerate-base-case"
HEURISTIC_F = "heuristic-f"
RAMSEY_UPPER = "ramsey-upper-bound"

DEFAULT_MAX_BITS = 1 << 22

# C(2, 4) = P(2 ** 49, 4); used in the overflow certificate for Y(s >= 4, q >= 4)
_C_2_4 = 3 * 2 ** 49 + 1


@dataclass(frozen=True)
class BoundValue:
    value: int
    provenance: str
    flags: frozenset[str] = field(default_factory=frozenset)

    def __int__(self) -> int:
        return self.value


def _positive(**kwargs: int) -> None:
    for name, v in kwargs.items():
        if not isinstance(v, int) or v < 1:
            raise MalformedInputError(f"{name} must be a positive integer, got {v!r}")


def _pow(base: int, exp: int, what: str, max_bits: int) -> int:
    if base <= 1 or exp == 0:
        return base ** exp
    lower = (base.bit_length() - 1) * exp
    if lower > max_bits:
        raise BoundOverflow(what, lower, max_bits)
    return base ** exp


def pigeonhole_P(r: int, m: int) -> BoundValue:
    """Least n such that any r-colouring of an n-set has m same-coloured elements."""
    _positive(r=r, m=m)
    return BoundValue(r * (m - 1) + 1, f"P({r},{m})")


def _binom_upper(a: int, b: int, what: str, max_bits: int) -> int:
    """Two-colour Ramsey bound R(a, b) <= binom(a + b - 2, a - 1)."""
    n, k = a + b - 2, a - 1
    k = min(k, n - k)
    if k > 0:
        # binom(n, k) >= (n / k) ** k >= 2 ** (k * floor(log2(n / k)))
        lower = k * ((n // k).bit_length() - 1)
        if lower > max_bits:
            raise BoundOverflow(what, lower, max_bits)
    return comb(n, k)


def ramsey_upper_R(r_colors: int, m: int, *, max_bits: int = DEFAULT_MAX_BITS) -> BoundValue:
    """Upper bound on the edge-colouring Ramsey number ``R(2, r_colors, m)``.

    Two colours: ``binom(2m - 2, m - 1)``. More colours merge the last two
    into one: ``R_r(m) <= R_2(m, R_{r-1}(m))``.
    """
    _positive(r_colors=r_colors, m=m)
    what = f"R({r_colors},{m})"
    if r_colors == 1:
        return BoundValue(m, what)
    value = m
    for _ in range(r_colors - 1):
        value = _binom_upper(m, value, what, max_bits)
    return BoundValue(value, what, frozenset({RAMSEY_UPPER}))


def lemma_grid_C(p: int, q: int, *, max_bits: int = DEFAULT_MAX_BITS) -> BoundValue:
    """``r = P(p^q, q)``, ``C(p, q) = P(p^r, q)``."""
    _positive(p=p, q=q)
    what = f"C({p},{q})"
    r = pigeonhole_P(_pow(p, q, what, max_bits), q).value
    return BoundValue(pigeonhole_P(_pow(p, r, what, max_bits), q).value, what)


class _YEvaluator:
    def __init__(self, literal: bool, max_bits: int):
        self.literal = literal
        self.max_bits = max_bits
        self.memo: dict[tuple[int, int], int] = {}

    def base(self, s: int, q: int) -> int | None:
        if s == 1 or q == 1:
            return 1
        if not self.literal and (s == 2 or q == 2):
            return 2
        return None

    @property
    def first_q(self) -> int:
        return 1 if self.literal else 2

    def row_constant(self, s: int) -> int | None:
        """Value of ``Y(s, q)`` if it is the same for every ``q >= 2``.

        Row 1 is constant; in corrected mode so is row 2. A later row is
        constant exactly when the row below it is constant 1, because then
        every recursion step multiplies by 1.
        """
        if self.literal:
            # row 1 is all ones, so by induction every row is
            return 1
        # corrected row 2 is constant 2, so row 3 already grows with q
        return {1: 1, 2: 2}.get(s)

    def log2_lower(self, s: int, q: int) -> int:
        """Certified lower bound on log2 Y(s, q) in corrected mode."""
        if self.literal or s == 1 or q == 1:
            return 0
        if s == 2 or q == 2:
            return 1
        if s == 3:
            return q - 1
        if q == 3:
            # Y(s, 3) = Y(s, 2) * Y(s - 1, C(2, 3)) and C(2, 3) = 262145
            return 1 + (262144 if s == 4 else _C_2_4 - 1)
        # Y(s, q) >= Y(s - 1, C(Y(s, 3), 4)) >= Y(3, C(2, 4))
        return _C_2_4 - 1

    def __call__(self, s: int, q: int) -> int:
        lower = self.log2_lower(s, q)
        if lower > self.max_bits:
            raise BoundOverflow(f"Y({s},{q})", lower, self.max_bits)
        memo = self.memo
        stack = [(s, q)]
        while stack:
            key = stack[-1]
            if key in memo:
                stack.pop()
                continue
            s_, q_ = key
            b = self.base(s_, q_)
            if b is not None:
                memo[key] = b
                stack.pop()
                continue
            lower = self.log2_lower(s_, q_)
            if lower > self.max_bits:
                raise BoundOverflow(f"Y({s_},{q_})", lower, self.max_bits)
            k_const = self.row_constant(s_ - 1)
            if k_const is not None:
                q0 = self.first_q
                start = self.base(s_, q0)
                memo[key] = start * _pow(k_const, q_ - q0, f"Y({s_},{q_})", self.max_bits)
                stack.pop()
                continue
            t = memo.get((s_, q_ - 1))
            if t is None:
                stack.append((s_, q_ - 1))
                continue
            c = lemma_grid_C(t, q_, max_bits=self.max_bits).value
            k = memo.get((s_ - 1, c))
            if k is None:
                lower = self.log2_lower(s_ - 1, c)
                if lower > self.max_bits:
                    raise BoundOverflow(f"Y({s_},{q_})", lower, self.max_bits)
                stack.append((s_ - 1, c))
                continue
            value = t * k
            if value.bit_length() > self.max_bits + 1:
                raise BoundOverflow(f"Y({s_},{q_})", value.bit_length() - 1, self.max_bits)
            memo[key] = value
            stack.pop()
        return memo[(s, q)]


def thm_main2_Y(s: int, q: int, *, literal: bool = False, max_bits: int = DEFAULT_MAX_BITS) -> BoundValue:
    """Path-vertex threshold forcing an induced ``P_s`` or a
    ``K_{floor(q/2), ceil(q/2)}`` subgraph.

    ``Y(s, q) = t * k`` with ``t = Y(s, q - 1)`` and ``k = Y(s - 1, C(t, q))``.
    """
    _positive(s=s, q=q)
    value = _YEvaluator(literal, max_bits)(s, q)
    flags = frozenset() if s == 1 or q == 1 else frozenset({DEGENERATE})
    mode = "literal" if literal else "corrected"
    return BoundValue(value, f"Y({s},{q}) {mode}", flags)


def thm_main_Z(s: int, t: int, q: int, *, literal: bool = False,
               max_bits: int = DEFAULT_MAX_BITS) -> BoundValue:
    """Path-vertex threshold forcing an induced ``P_s``, ``K_t`` or ``K_{q,q}``.

    ``Z = Y(s, 2 R(max(t, q)))``: a biclique with sides of ``R(max(t, q))``
    vertices has on each side a clique ``K_t`` or an independent ``q``-set.
    """
    _positive(s=s, t=t, q=q)
    what = f"Z({s},{t},{q})"
    if s == 1 or t == 1:
        return BoundValue(1, what)
    r = ramsey_upper_R(2, max(t, q), max_bits=max_bits)
    try:
        y = thm_main2_Y(s, 2 * r.value, literal=literal, max_bits=max_bits)
    except BoundOverflow as exc:
        raise BoundOverflow(what, exc.log2_lower, max_bits) from exc
    return BoundValue(y.value, what, r.flags | y.flags)


def dense_b(s: int, q: int) -> int:
    _positive(s=s, q=q)
    return 2 * (q - 1) * s ** q + 2 * s * q + 4


def dense_c(s: int, q: int, *, max_bits: int = DEFAULT_MAX_BITS) -> BoundValue:
    """``c = R(2, 2, max(b, 2q))`` as an upper bound."""
    return ramsey_upper_R(2, max(dense_b(s, q), 2 * q), max_bits=max_bits)


def lemma_dense_D(s: int, q: int, ell: int, *, literal: bool = False,
                  max_bits: int = DEFAULT_MAX_BITS) -> BoundValue:
    """``D(s, q, ell) = Z(ell * c^2, 2q, q)``."""
    _positive(s=s, q=q, ell=ell)
    what = f"D({s},{q},{ell})"
    try:
        c = dense_c(s, q, max_bits=max_bits)
        z = thm_main_Z(ell * c.value ** 2, 2 * q, q, literal=literal, max_bits=max_bits)
    except BoundOverflow as exc:
        raise BoundOverflow(what, exc.log2_lower, max_bits) from exc
    return BoundValue(z.value, what, c.flags | z.flags)


def default_grid_minor_f(k: int, exponent: int = 10, constant: int = 1) -> int:
    """Placeholder for the grid-minor function: ``constant * k ** exponent``."""
    return constant * k ** exponent


def thm_prefinal_X(s: int, q: int, f: Callable[[int], int] | None = None, *,
                   f_exponent: int = 10, literal: bool = False,
                   max_bits: int = DEFAULT_MAX_BITS) -> BoundValue:
    """``X(s, q) = f(D(s, q, s + 5) + 2)``; the default ``f`` is flagged."""
    _positive(s=s, q=q)
    flags = set()
    if f is None:
        flags.add(HEURISTIC_F)
        exponent = f_exponent

        def f(k: int) -> int:
            return default_grid_minor_f(k, exponent)
    try:
        d = lemma_dense_D(s, q, s + 5, literal=literal, max_bits=max_bits)
    except BoundOverflow as exc:
        lower = exc.log2_lower * f_exponent if HEURISTIC_F in flags else 0
        raise BoundOverflow(f"X({s},{q})", lower, max_bits) from exc
    value = f(d.value + 2)
    return BoundValue(value, f"X({s},{q})", d.flags | frozenset(flags))


_ARITY = {"P": 2, "R": 2, "C": 2, "Y": 2, "Z": 3, "b": 2, "c": 2, "D": 3, "X": 2}


def evaluate(fn: str, args: list[int], *, literal: bool = False, f_exponent: int = 10,
             max_bits: int = DEFAULT_MAX_BITS) -> BoundValue:
    """Dispatch by single-letter name, as used by the command line."""
    if fn not in _ARITY:
        raise MalformedInputError(f"unknown bound function {fn!r}")
    if len(args) != _ARITY[fn]:
        raise MalformedInputError(f"{fn} takes {_ARITY[fn]} arguments, got {len(args)}")
    kw = {"max_bits": max_bits}
    if fn == "P":
        return pigeonhole_P(*args)
    if fn == "R":
        return ramsey_upper_R(*args, **kw)
    if fn == "C":
        return lemma_grid_C(*args, **kw)
    if fn == "Y":
        return thm_main2_Y(*args, literal=literal, **kw)
    if fn == "Z":
        return thm_main_Z(*args, literal=literal, **kw)
    if fn == "b":
        return BoundValue(dense_b(*args), f"b({args[0]},{args[1]})")
    if fn == "c":
        return dense_c(*args, **kw)
    if fn == "D":
        return lemma_dense_D(*args, literal=literal, **kw)
    exp = f_exponent

    def f(k: int) -> int:
        return default_grid_minor_f(k, exp)
    value = thm_prefinal_X(*args, f=None if f_exponent == 10 else f, f_exponent=f_exponent,
                           literal=literal, **kw)
    if f_exponent != 10:
        value = BoundValue(value.value, value.provenance, value.flags | {HEURISTIC_F})
    return value
