"""Congruences of finite models: enumeration, principal congruences,
permutability, distributivity, and the Pixley-term identities."""
from __future__ import annotations

import itertools
from typing import Optional

from .algebra import OPS, CheckReport, FiniteAlgebra, SizeLimit, SYMBOLS
from .catalog import CATALOG, PIXLEY
from .terms import check_claim

Congruence = tuple  # class id per element, ids in first-occurrence order

DEFAULT_MAX_SIZE = 8


def normalize(ids) -> Congruence:
    remap: dict = {}
    return tuple(remap.setdefault(c, len(remap)) for c in ids)


def from_classes(n: int, classes) -> Congruence:
    ids = [None] * n
    for k, cls in enumerate(classes):
        for x in cls:
            if ids[x] is not None:
                raise ValueError(f"element {x} appears in two classes")
            ids[x] = k
    if None in ids:
        raise ValueError("partition does not cover the carrier")
    return normalize(ids)


def classes(theta: Congruence) -> list[list[int]]:
    out: dict = {}
    for x, c in enumerate(theta):
        out.setdefault(c, []).append(x)
    return [out[c] for c in sorted(out)]


def identity(n: int) -> Congruence:
    return tuple(range(n))


def full(n: int) -> Congruence:
    return (0,) * n


def _tables(A: FiniteAlgebra):
    return [(op, A.table(op)) for op in OPS]


def is_congruence(A: FiniteAlgebra, partition) -> tuple[bool, Optional[tuple]]:
    """Compatibility with +, |, ^, d.  Witness is (op symbol, a, b, c, d) with
    a ~ b, c ~ d but op(a, c) and op(b, d) in different classes."""
    theta = normalize(partition)
    if len(theta) != A.size:
        raise ValueError("partition must cover the carrier")
    E = A.elements()
    for op, T in _tables(A):
        for a, b in itertools.product(E, E):
            if theta[a] != theta[b]:
                continue
            for c in E:
                if theta[T[a][c]] != theta[T[b][c]]:
                    return False, (SYMBOLS[op], a, b, c, c)
                if theta[T[c][a]] != theta[T[c][b]]:
                    return False, (SYMBOLS[op], c, c, a, b)
    return True, None


def all_congruences(A: FiniteAlgebra, max_size: int = DEFAULT_MAX_SIZE) -> list[Congruence]:
    """Every congruence, finest first, then by class-id tuple.

    Restricted-growth strings are built element by element; a prefix is cut as
    soon as some operation maps two related assigned elements into different
    assigned classes.
    """
    n = A.size
    if n > max_size:
        raise SizeLimit(f"all_congruences: size {n} exceeds bound {max_size}")
    tables = [T for _, T in _tables(A)]
    ids = [0] * n
    found = []

    def consistent(k):
        # pairs (a, b) with a ~ b where max(a, b, c) == k, and results assigned
        for T in tables:
            for a in range(k + 1):
                for b in range(a, k + 1):
                    if ids[a] != ids[b]:
                        continue
                    for c in range(k + 1):
                        if k not in (a, b, c):
                            continue
                        for x, y in ((T[a][c], T[b][c]), (T[c][a], T[c][b])):
                            if x <= k and y <= k and ids[x] != ids[y]:
                                return False
        return True

    def rec(k, nclasses):
        if k >= n:
            theta = tuple(ids)
            if is_congruence(A, theta)[0]:
                found.append(theta)
            return
        for c in range(nclasses + 1):
            ids[k] = c
            if consistent(k):
                rec(k + 1, max(nclasses, c + 1))

    rec(1, 1)
    found.sort(key=lambda t: (-len(set(t)), t))
    return found


def generated_congruence(A: FiniteAlgebra, pairs) -> Congruence:
    """Smallest congruence containing every pair, by compatibility closure."""
    n = A.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[max(rx, ry)] = min(rx, ry)
        return True

    for a, b in pairs:
        union(a, b)
    tables = [T for _, T in _tables(A)]
    changed = True
    while changed:
        changed = False
        for x in range(n):
            rx = find(x)
            if rx == x:
                continue
            for T in tables:
                for c in range(n):
                    changed |= union(T[x][c], T[rx][c])
                    changed |= union(T[c][x], T[c][rx])
    return normalize(find(x) for x in range(n))


def principal_congruence(A: FiniteAlgebra, a: int, b: int) -> Congruence:
    return generated_congruence(A, [(a, b)])


def refines(theta: Congruence, phi: Congruence) -> bool:
    """theta <= phi in Con(A): every theta-class lies inside a phi-class."""
    return all(phi[x] == phi[y] for x in range(len(theta)) for y in range(len(theta))
               if theta[x] == theta[y])


def con_meet(theta: Congruence, phi: Congruence) -> Congruence:
    return normalize(zip(theta, phi))


def con_join(A: FiniteAlgebra, theta: Congruence, phi: Congruence) -> Congruence:
    pairs = [(x, y) for rel in (theta, phi) for cls in classes(rel) for x, y in zip(cls, cls[1:])]
    return generated_congruence(A, pairs)


def compose(theta: Congruence, phi: Congruence) -> set:
    """Pairs (a, c) with a theta b and b phi c for some b."""
    n = len(theta)
    return {(a, c) for a in range(n) for c in range(n)
            if any(theta[a] == theta[b] and phi[b] == phi[c] for b in range(n))}


def check_con_permutable(A: FiniteAlgebra, congruences=None, max_size: int = DEFAULT_MAX_SIZE) -> CheckReport:
    cons = congruences if congruences is not None else all_congruences(A, max_size)
    for theta, phi in itertools.combinations(cons, 2):
        tp, pt = compose(theta, phi), compose(phi, theta)
        if tp != pt:
            a, c = min(tp ^ pt)
            first, second = (theta, phi) if (a, c) in tp else (phi, theta)
            return CheckReport(False, "permutability", (first, second, a, c))
    return CheckReport(True)


def check_con_distributive(A: FiniteAlgebra, congruences=None, max_size: int = DEFAULT_MAX_SIZE) -> CheckReport:
    """theta ^ (phi v psi) = (theta ^ phi) v (theta ^ psi) over all triples of Con(A)."""
    cons = congruences if congruences is not None else all_congruences(A, max_size)
    join = {}

    def j(x, y):
        key = (x, y) if x <= y else (y, x)
        if key not in join:
            join[key] = con_join(A, x, y)
        return join[key]

    for theta, phi, psi in itertools.product(cons, repeat=3):
        lhs = con_meet(theta, j(phi, psi))
        rhs = j(con_meet(theta, phi), con_meet(theta, psi))
        if lhs != rhs:
            return CheckReport(False, "distributivity", (theta, phi, psi))
    return CheckReport(True)


def pixley_check(A, domain=None) -> list:
    """Reports for m(x,y,y)=x, m(y,y,x)=x and m(x,y,x)=x with the catalog's m."""
    return [check_claim(A, CATALOG[cid], domain) for cid in PIXLEY]
