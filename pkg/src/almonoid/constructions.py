"""Products, generated subalgebras, quotients, homomorphisms, and the
metric derived from a DRl residual."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (OPS, AlgebraError, CheckReport, FiniteAlgebra, SizeLimit, WindowedAlgebra,
                      _tabulate)
from .congruence import classes, is_congruence, normalize

DEFAULT_PRODUCT_CAP = 64


class IncompatiblePartition(AlgebraError):
    def __init__(self, witness):
        super().__init__(f"partition is not a congruence: {witness}")
        self.witness = witness


class NotDRl(AlgebraError):
    def __init__(self, pair, axiom="DRL2"):
        super().__init__(f"not a DRl-semigroup: {axiom} fails at {pair}")
        self.pair = pair
        self.axiom = axiom


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple

    def __call__(self, x):
        return self.map[x]


def product(A: FiniteAlgebra, B: FiniteAlgebra, cap: int = DEFAULT_PRODUCT_CAP) -> FiniteAlgebra:
    """Direct product; the pair (i, j) is element i * |B| + j."""
    m, k = A.size, B.size
    n = m * k
    if n > cap:
        raise SizeLimit(f"product of sizes {m} and {k} exceeds cap {cap}")
    tables = {}
    for op in OPS:
        TA, TB = A.table(op), B.table(op)
        tables[op] = _tabulate(n, lambda p, q: TA[p // k][q // k] * k + TB[p % k][q % k])
    return FiniteAlgebra(n, A.zero * k + B.zero, tables["plus"], tables["join"], tables["meet"],
                         tables["star"], f"({A.name} x {B.name})")


def projections(P: FiniteAlgebra, A: FiniteAlgebra, B: FiniteAlgebra):
    k = B.size
    return (Homomorphism(P, A, tuple(p // k for p in P.elements())),
            Homomorphism(P, B, tuple(p % k for p in P.elements())))


def closure(A: FiniteAlgebra, seed) -> list[int]:
    """Smallest subset containing seed and 0 closed under all four operations."""
    S = set(seed) | {A.zero}
    frontier = list(S)
    tables = [A.table(op) for op in OPS]
    while frontier:
        new = set()
        for x in frontier:
            for y in list(S):
                for T in tables:
                    for v in (T[x][y], T[y][x]):
                        if v not in S:
                            new.add(v)
        S |= new
        frontier = list(new)
    return sorted(S)


def induced(A: FiniteAlgebra, subset, name: str = "") -> tuple[FiniteAlgebra, tuple]:
    """Restriction of A to a closed subset, relabelled 0..k-1 in index order."""
    elems = sorted(subset)
    pos = {x: i for i, x in enumerate(elems)}
    k = len(elems)
    tables = {}
    for op in OPS:
        T = A.table(op)
        try:
            tables[op] = _tabulate(k, lambda i, j: pos[T[elems[i]][elems[j]]])
        except KeyError:
            raise AlgebraError(f"subset is not closed under {op}") from None
    sub = FiniteAlgebra(k, pos[A.zero], tables["plus"], tables["join"], tables["meet"], tables["star"],
                        name or f"sub({A.name})")
    return sub, tuple(elems)


def subalgebra(A: FiniteAlgebra, seed) -> tuple[FiniteAlgebra, Homomorphism]:
    """Subalgebra generated by seed, with its embedding into A."""
    seed = list(seed)
    if not seed:
        raise ValueError("seed must be nonempty")
    sub, elems = induced(A, closure(A, seed), f"sub({A.name},{','.join(map(str, sorted(set(seed))))})")
    return sub, Homomorphism(sub, A, elems)


def congruence_quotient(A: FiniteAlgebra, partition) -> tuple[FiniteAlgebra, Homomorphism]:
    """A / theta with the canonical epimorphism; each class is represented by its least element."""
    theta = normalize(partition)
    ok, wit = is_congruence(A, theta)
    if not ok:
        raise IncompatiblePartition(wit)
    reps = [cls[0] for cls in classes(theta)]
    k = len(reps)
    tables = {op: _tabulate(k, lambda i, j, T=A.table(op): theta[T[reps[i]][reps[j]]]) for op in OPS}
    Q = FiniteAlgebra(k, theta[A.zero], tables["plus"], tables["join"], tables["meet"], tables["star"],
                      f"{A.name}/{list(map(list, classes(theta)))}")
    return Q, Homomorphism(A, Q, theta)


def check_homomorphism(h: Homomorphism) -> CheckReport:
    """Preservation of 0 and of +, |, ^, d; witness (law, a, b)."""
    S, T, f = h.source, h.target, h.map
    if len(f) != S.size or any(not 0 <= v < T.size for v in f):
        raise ValueError("map must send every source element into the target")
    if f[S.zero] != T.zero:
        return CheckReport(False, "preserves-zero", (S.zero,))
    for op in OPS:
        TS, TT = S.table(op), T.table(op)
        for a in S.elements():
            for b in S.elements():
                if f[TS[a][b]] != TT[f[a]][f[b]]:
                    return CheckReport(False, f"preserves-{op}", (a, b))
    return CheckReport(True)


def drl_to_al(A, verify: bool = True) -> FiniteAlgebra:
    """Replace star by (a - b) | (b - a) where a - b is the least x with x + b >= a.

    Raises NotDRl when the residual does not exist or the DRl axioms fail.
    With ``verify`` the result is re-checked as an AL-monoid.
    """
    from .profiles import check_al_monoid, check_drl

    rep = check_drl(A)
    if not rep.holds:
        bad = [k for k, r in rep.axioms.items() if r.fails] or [
            k for k, r in rep.axioms.items() if not r.holds]
        label = bad[0]
        wit = rep.axioms[label].witness
        raise NotDRl(None if wit is None else (wit.get("a"), wit.get("b")), label)
    if isinstance(A, WindowedAlgebra):
        raise AlgebraError("a windowed model cannot be tabulated")
    res = rep.extra["residual"]
    n = A.size
    star = _tabulate(n, lambda a, b: A.join(res[(a, b)], res[(b, a)]))
    out = A.with_tables(star=star, name=A.name)
    if verify:
        al = check_al_monoid(out)
        if not al.holds:
            raise AlgebraError(f"derived metric is not an AL-monoid: {al.failed()}")
    return out
