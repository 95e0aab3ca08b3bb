"""Finite and windowed models of the AL-monoid signature.

A model exposes ``elements()``, ``zero``, the four binary operations
``plus``, ``join``, ``meet``, ``star`` and an optional ``unity``.  The order
is never stored; ``leq`` derives it from ``meet``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence

OPS = ("plus", "join", "meet", "star")
SYMBOLS = {"plus": "+", "join": "|", "meet": "^", "star": "d"}

Table = tuple[tuple[int, ...], ...]


class AlgebraError(Exception):
    pass


class MalformedTable(AlgebraError):
    pass


class OutOfWindow(AlgebraError):
    """An exact integer result fell outside the window [-B, B]."""

    def __init__(self, value: int, bound: int):
        super().__init__(f"Int({value}) lies outside the window [-{bound}, {bound}]")
        self.value = value
        self.bound = bound


class NoUnity(AlgebraError):
    pass


class SizeLimit(AlgebraError):
    pass


def _freeze(table: Sequence[Sequence[int]]) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


@dataclass(frozen=True)
class CheckReport:
    """Pass/fail verdict of a law scan; ``law`` and ``witness`` name the first violation."""

    holds: bool
    law: Optional[str] = None
    witness: Optional[tuple] = None
    violations: tuple = ()

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "law": self.law,
            "witness": list(self.witness) if self.witness is not None else None,
            "violations": [list(v) for v in self.violations],
        }


@dataclass(frozen=True)
class FiniteAlgebra:
    """Carrier ``range(size)`` with total operation tables (row = left operand).

    ``star`` may be None for DRl input that has not had its metric derived yet.
    """

    size: int
    zero: int
    plus_table: Table
    join_table: Table
    meet_table: Table
    star_table: Optional[Table]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.size
        if n < 1:
            raise MalformedTable("size must be positive")
        if not 0 <= self.zero < n:
            raise MalformedTable(f"zero {self.zero} out of range")
        for op in OPS:
            t = getattr(self, op + "_table")
            if t is None and op == "star":
                continue
            t = _freeze(t)
            object.__setattr__(self, op + "_table", t)
            if len(t) != n or any(len(row) != n for row in t):
                raise MalformedTable(f"{op} table is not {n}x{n}")
            for i, row in enumerate(t):
                for j, v in enumerate(row):
                    if not 0 <= v < n:
                        raise MalformedTable(f"{op}({i},{j}) = {v} out of range")

    @classmethod
    def from_tables(cls, plus, join, meet, star, zero=0, name=""):
        return cls(len(plus), zero, _freeze(plus), _freeze(join), _freeze(meet),
                   None if star is None else _freeze(star), name)

    def elements(self) -> range:
        return range(self.size)

    def plus(self, a: int, b: int) -> int:
        return self.plus_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def star(self, a: int, b: int) -> int:
        if self.star_table is None:
            raise AlgebraError(f"{self.name or 'algebra'} has no star table")
        return self.star_table[a][b]

    def leq(self, a: int, b: int) -> bool:
        return self.meet_table[a][b] == a

    def table(self, op: str) -> Optional[Table]:
        return getattr(self, op + "_table")

    def with_tables(self, **tables) -> "FiniteAlgebra":
        """Copy with some tables (or ``zero``/``name``) replaced."""
        kw = {
            "size": self.size, "zero": self.zero, "name": self.name,
            "plus_table": self.plus_table, "join_table": self.join_table,
            "meet_table": self.meet_table, "star_table": self.star_table,
        }
        for k, v in tables.items():
            if k in OPS:
                kw[k + "_table"] = None if v is None else _freeze(v)
            else:
                kw[k] = v
        return FiniteAlgebra(**kw)

    def patched(self, op: str, a: int, b: int, value: int) -> "FiniteAlgebra":
        rows = [list(r) for r in self.table(op)]
        rows[a][b] = value
        return self.with_tables(**{op: rows})

    @cached_property
    def unity(self) -> Optional[int]:
        cands = unity_candidates(self)
        return cands[0] if cands else None

    def __repr__(self):
        return f"FiniteAlgebra({self.name or '?'}, size={self.size}, zero={self.zero})"


def unity_candidates(A) -> list:
    """Elements u with a + (a*u) = u + u for every a, in domain order."""
    if getattr(A, "star_table", True) is None:
        return []
    out = []
    for u in A.elements():
        uu = A.plus(u, u)
        if all(A.plus(a, A.star(a, u)) == uu for a in A.elements()):
            out.append(u)
    return out


# --- windowed models ------------------------------------------------------

class Symbol:
    """Adjoined non-integer element of a windowed model."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (_symbol, (self.name,))


def _symbol(name):
    return U if name == "U" else V


U = Symbol("U")
V = Symbol("V")

PLAIN_INT = "PlainInt"
INT_WITH_TOP = "IntWithTop"
INT_WITH_TOP_BOTTOM = "IntWithTopBottom"


@dataclass(frozen=True)
class WindowedAlgebra:
    """Integer-based model evaluated on the window ``[-bound, bound]``.

    Integers are plain ``int``; the adjoined elements are ``U`` and ``V``.
    For IntWithTop, U is the top.  For IntWithTopBottom, U < every integer < V.
    Any integer result with absolute value above ``bound`` raises OutOfWindow.
    """

    kind: str
    bound: int
    unity = None

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("window bound must be >= 1")
        if self.kind not in (PLAIN_INT, INT_WITH_TOP, INT_WITH_TOP_BOTTOM):
            raise ValueError(f"unknown windowed kind {self.kind!r}")

    @property
    def name(self) -> str:
        return {PLAIN_INT: "int", INT_WITH_TOP: "intu", INT_WITH_TOP_BOTTOM: "intuv"}[self.kind] + f":{self.bound}"

    @property
    def zero(self) -> int:
        return 0

    @property
    def symbols(self) -> tuple:
        return {PLAIN_INT: (), INT_WITH_TOP: (U,), INT_WITH_TOP_BOTTOM: (U, V)}[self.kind]

    def elements(self) -> list:
        return list(range(-self.bound, self.bound + 1)) + list(self.symbols)

    def contains(self, x) -> bool:
        if isinstance(x, Symbol):
            return x in self.symbols
        return isinstance(x, int) and -self.bound <= x <= self.bound

    def widened(self, bound: int) -> "WindowedAlgebra":
        return WindowedAlgebra(self.kind, bound)

    def _w(self, k: int) -> int:
        if -self.bound <= k <= self.bound:
            return k
        raise OutOfWindow(k, self.bound)

    def _rank(self, x) -> tuple:
        # total order key: U first as bottom, V last as top (IntWithTop: U top)
        if x is U:
            return (1, 0) if self.kind == INT_WITH_TOP else (-1, 0)
        if x is V:
            return (1, 0)
        return (0, x)

    def plus(self, a, b):
        ia, ib = not isinstance(a, Symbol), not isinstance(b, Symbol)
        if ia and ib:
            return self._w(a + b)
        if self.kind == INT_WITH_TOP:
            return U
        # IntWithTopBottom: u absorbs everything, v absorbs integers
        if a is U or b is U:
            return U
        return V

    def join(self, a, b):
        return a if self._rank(a) >= self._rank(b) else b

    def meet(self, a, b):
        return a if self._rank(a) <= self._rank(b) else b

    def star(self, a, b):
        ia, ib = not isinstance(a, Symbol), not isinstance(b, Symbol)
        if ia and ib:
            return self._w(abs(a - b))
        if a is b:
            return 0
        if self.kind == INT_WITH_TOP:
            return U
        return V

    def leq(self, a, b) -> bool:
        return self.meet(a, b) == a


Model = FiniteAlgebra | WindowedAlgebra


def leq(A, a, b) -> bool:
    """a <= b in the order induced by the lattice reduct (meet(a, b) == a)."""
    return A.meet(a, b) == a


def is_finite(A) -> bool:
    return isinstance(A, FiniteAlgebra)


def format_element(A, x) -> str:
    if isinstance(A, WindowedAlgebra):
        return repr(x) if isinstance(x, Symbol) else f"Int({x})"
    return str(x)


def element_to_json(x):
    return x.name if isinstance(x, Symbol) else x


def element_from_json(A, x):
    if isinstance(x, str):
        sym = {"U": U, "V": V}.get(x)
        if sym is None or (isinstance(A, WindowedAlgebra) and sym not in A.symbols):
            raise ValueError(f"unknown element {x!r}")
        return sym
    return int(x)


# --- validation -----------------------------------------------------------

def _law_scan(A: FiniteAlgebra) -> Iterator[tuple[str, tuple]]:
    """Yield (law, witness) for every violated FiniteAlgebra invariant."""
    E = A.elements()
    P, J, M = A.plus_table, A.join_table, A.meet_table
    z = A.zero
    for name, T in (("join", J), ("meet", M)):
        for a in E:
            if T[a][a] != a:
                yield f"{name}-idempotent", (a,)
        for a, b in itertools.product(E, E):
            if T[a][b] != T[b][a]:
                yield f"{name}-commutative", (a, b)
        for a, b, c in itertools.product(E, E, E):
            if T[T[a][b]][c] != T[a][T[b][c]]:
                yield f"{name}-associative", (a, b, c)
    for a, b in itertools.product(E, E):
        if J[a][M[a][b]] != a:
            yield "absorption-join-meet", (a, b)
        if M[a][J[a][b]] != a:
            yield "absorption-meet-join", (a, b)
    for a in E:
        if P[z][a] != a or P[a][z] != a:
            yield "plus-identity", (a,)
    for a, b in itertools.product(E, E):
        if P[a][b] != P[b][a]:
            yield "plus-commutative", (a, b)
    for a, b, c in itertools.product(E, E, E):
        if P[P[a][b]][c] != P[a][P[b][c]]:
            yield "plus-associative", (a, b, c)
    for a, x, y in itertools.product(E, E, E):
        if M[x][y] == x and M[P[a][x]][P[a][y]] != P[a][x]:
            yield "translation-compatibility", (a, x, y)


def validate_algebra(A: FiniteAlgebra, fast: bool = False) -> CheckReport:
    """Check that A is a commutative lattice-ordered monoid (AX1).

    The first violation found (laws scanned lattice first, then monoid, then
    monotonicity) is reported as ``law``/``witness``; ``violations`` lists one
    witness per violated law.
    """
    if not isinstance(A, FiniteAlgebra):
        raise TypeError("validate_algebra needs a FiniteAlgebra")
    seen: dict[str, tuple] = {}
    for law, wit in _law_scan(A):
        if law not in seen:
            seen[law] = wit
            if fast:
                break
    if not seen:
        return CheckReport(True)
    law, wit = next(iter(seen.items()))
    return CheckReport(False, law, wit, tuple((k,) + v for k, v in seen.items()))


# --- generators -----------------------------------------------------------

def _tabulate(n, f):
    return tuple(tuple(f(a, b) for b in range(n)) for a in range(n))


def trivial_algebra() -> FiniteAlgebra:
    z = ((0,),)
    return FiniteAlgebra(1, 0, z, z, z, z, "one")


def make_boolean(k: int) -> FiniteAlgebra:
    """Boolean algebra of subsets of a k-set as bitmasks; + is join, star is symmetric difference."""
    if not 0 <= k <= 4:
        raise ValueError("make_boolean supports 0 <= k <= 4")
    n = 1 << k
    return FiniteAlgebra(
        n, 0,
        _tabulate(n, lambda a, b: a | b),
        _tabulate(n, lambda a, b: a | b),
        _tabulate(n, lambda a, b: a & b),
        _tabulate(n, lambda a, b: a ^ b),
        f"boolean:{k}",
    )


def make_mv_chain(n: int) -> FiniteAlgebra:
    """Chain 0 < ... < n-1 with truncated addition and star = |a - b|."""
    if n < 2:
        raise ValueError("make_mv_chain needs n >= 2")
    top = n - 1
    return FiniteAlgebra(
        n, 0,
        _tabulate(n, lambda a, b: min(a + b, top)),
        _tabulate(n, max),
        _tabulate(n, min),
        _tabulate(n, lambda a, b: abs(a - b)),
        f"mv:{n}",
    )


def make_godel_chain(n: int) -> FiniteAlgebra:
    """Chain 0 < ... < n-1 with + = join and star(a, b) = max(a, b) for a != b."""
    if n < 2:
        raise ValueError("make_godel_chain needs n >= 2")
    return FiniteAlgebra(
        n, 0,
        _tabulate(n, max),
        _tabulate(n, max),
        _tabulate(n, min),
        _tabulate(n, lambda a, b: 0 if a == b else max(a, b)),
        f"godel:{n}",
    )


def make_int_window(B: int) -> WindowedAlgebra:
    return WindowedAlgebra(PLAIN_INT, B)


def make_int_with_top(B: int) -> WindowedAlgebra:
    return WindowedAlgebra(INT_WITH_TOP, B)


def make_int_with_top_bottom(B: int) -> WindowedAlgebra:
    return WindowedAlgebra(INT_WITH_TOP_BOTTOM, B)


BUILTIN_ALIASES = {
    "intwithtop": "intu",
    "intwithtopbottom": "intuv",
    "plainint": "int",
    "b2": "boolean:1",
}


def builtin(uri: str):
    """Resolve a built-in model URI such as ``boolean:2``, ``mv:3`` or ``intu:20``."""
    uri = BUILTIN_ALIASES.get(uri.lower(), uri)
    kind, _, arg = uri.partition(":")
    kind = BUILTIN_ALIASES.get(kind, kind)
    if kind == "one":
        return trivial_algebra()
    windowed = {"int": make_int_window, "intu": make_int_with_top, "intuv": make_int_with_top_bottom}
    finite = {"boolean": make_boolean, "mv": make_mv_chain, "godel": make_godel_chain}
    if kind in windowed:
        return windowed[kind](int(arg) if arg else 20)
    if kind in finite and arg:
        return finite[kind](int(arg))
    raise ValueError(f"unknown built-in model {uri!r}")
