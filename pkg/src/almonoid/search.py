"""Exhaustive search for small models up to isomorphism.

Lattices come first (natural labelling: 0 is the bottom, n-1 the top), then
for every choice of zero a commutative monoid table, then the star table.  The
two table stages are small constraint problems whose constraints are the
ground instances of the profile's claims; an instance is re-evaluated only
when a table cell it is waiting on gets assigned (watch lists).
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterator, Optional, Union

from .algebra import FiniteAlgebra, SizeLimit, builtin, _tabulate
from .catalog import AX1_LAWS, get_claim
from .profiles import PROFILE_NAMES, _AXIOMS, _claim, check_profile
from .terms import Claim, App, check_claim, claim_predicates, subterms
from .textformat import format_algebra

MAX_SEARCH_SIZE = 6
MAX_CANONICAL_SIZE = 8


@dataclass(frozen=True)
class SearchSpec:
    size: int
    satisfy: str = "al-monoid"
    violate: Optional[str] = None
    limit: Optional[int] = None
    canonical: bool = True

    def __post_init__(self):
        if not 1 <= self.size <= MAX_SEARCH_SIZE:
            raise SizeLimit(f"search size must be in 1..{MAX_SEARCH_SIZE}, got {self.size}")
        if self.satisfy not in PROFILE_NAMES:
            raise KeyError(f"unknown profile {self.satisfy!r}")
        if self.violate is not None and self.violate not in _labels(self.satisfy):
            get_claim(self.violate)
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be positive")


def _labels(profile):
    return dict(_AXIOMS.get(profile, ()))


def searchable_profiles() -> list[str]:
    return [p for p in PROFILE_NAMES if p in _AXIOMS and _structural(p)]


def _structural(profile) -> bool:
    ids = {c for _, cs in _AXIOMS[profile] for c in cs}
    lat = {"JOIN_IDEM", "JOIN_COMM", "JOIN_ASSOC", "MEET_IDEM", "MEET_COMM", "MEET_ASSOC",
           "ABSORB_JM", "ABSORB_MJ", "PLUS_ID", "PLUS_COMM", "PLUS_ASSOC", "PLUS_MONO"}
    return lat <= ids


# --- canonical form -------------------------------------------------------

def _linear_extensions(n, below):
    """Permutations p (old -> new) with a < b in the order implying p[a] < p[b]."""
    p = [None] * n
    placed = [False] * n

    def rec(k):
        if k == n:
            yield tuple(p)
            return
        for x in range(n):
            if not placed[x] and all(placed[y] for y in below[x]):
                placed[x] = True
                p[x] = k
                yield from rec(k + 1)
                placed[x] = False

    yield from rec(0)


def _serialize(A: FiniteAlgebra, p) -> bytes:
    n = A.size
    q = [0] * n
    for old, new in enumerate(p):
        q[new] = old
    out = [n, p[A.zero]]
    for T in (A.plus_table, A.join_table, A.meet_table, A.star_table):
        if T is None:
            continue
        out.extend(p[T[q[i]][q[j]]] for i in range(n) for j in range(n))
    return bytes(out)


def canonical_form(A: FiniteAlgebra) -> bytes:
    """Least table serialization over all relabellings; equal keys iff isomorphic.

    Isomorphisms preserve the order, so only relabellings that are linear
    extensions of it need to be tried.
    """
    n = A.size
    if n > MAX_CANONICAL_SIZE:
        raise SizeLimit(f"canonical_form: size {n} exceeds {MAX_CANONICAL_SIZE}")
    below = [[y for y in range(n) if y != x and A.leq(y, x)] for x in range(n)]
    return min(_serialize(A, p) for p in _linear_extensions(n, below))


def relabel(A: FiniteAlgebra, p) -> FiniteAlgebra:
    """Copy of A with element x renamed p[x]."""
    n = A.size
    q = [0] * n
    for old, new in enumerate(p):
        q[new] = old

    def tab(T):
        return None if T is None else _tabulate(n, lambda i, j: p[T[q[i]][q[j]]])

    return FiniteAlgebra(n, p[A.zero], tab(A.plus_table), tab(A.join_table), tab(A.meet_table),
                         tab(A.star_table), A.name)


# --- lattices -------------------------------------------------------------

def _meet_table(n, leq):
    def glb(a, b):
        lower = [x for x in range(n) if leq[x][a] and leq[x][b]]
        best = [x for x in lower if all(leq[y][x] for y in lower)]
        return best[0] if best else None

    return [[glb(a, b) for b in range(n)] for a in range(n)]


@lru_cache(maxsize=None)
def lattices(n: int) -> tuple:
    """Lattices on n elements up to isomorphism, as (join, meet) tables.

    Element 0 is the bottom, n-1 the top, and x <= y implies x <= y as integers.
    """
    if n == 1:
        return (((((0,),), ((0,),))),)
    mid = list(range(1, n - 1))
    pairs = list(itertools.combinations(mid, 2))
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        leq = [[x == y or x == 0 or y == n - 1 for y in range(n)] for x in range(n)]
        for k, (x, y) in enumerate(pairs):
            if mask >> k & 1:
                leq[x][y] = True
        if any(leq[x][y] and leq[y][z] and not leq[x][z]
               for x in mid for y in mid for z in mid):
            continue
        meet = _meet_table(n, leq)
        geq = [[leq[y][x] for y in range(n)] for x in range(n)]
        join = _meet_table(n, geq)
        if any(v is None for row in meet + join for v in row):
            continue
        key = min(tuple(leq[p[x]][p[y]] for x in range(n) for y in range(n))
                  for p in ((0,) + perm + (n - 1,) for perm in itertools.permutations(mid)))
        if key in seen:
            continue
        seen.add(key)
        out.append((tuple(map(tuple, join)), tuple(map(tuple, meet))))
    return tuple(out)


# --- constraint propagation ----------------------------------------------

class _Unknown(Exception):
    def __init__(self, cell):
        self.cell = cell


class _Partial:
    """Model whose plus/star tables may contain holes; reading a hole raises _Unknown."""

    unity = None

    def __init__(self, n, zero, join, meet, plus, star):
        self.size, self.zero = n, zero
        self.J, self.M, self.P, self.S = join, meet, plus, star

    def join(self, a, b):
        return self.J[a][b]

    def meet(self, a, b):
        return self.M[a][b]

    def plus(self, a, b):
        v = self.P[a][b]
        if v is None:
            raise _Unknown(("plus", a, b) if a <= b else ("plus", b, a))
        return v

    def star(self, a, b):
        v = self.S[a][b]
        if v is None:
            raise _Unknown(("star", a, b))
        return v


def _instances(model, claims, n):
    out = []
    for c in claims:
        hyps, concl = claim_predicates(model, c)
        for args in itertools.product(range(n), repeat=len(c.vars)):
            out.append((hyps, concl, args))
    return out


def _holds(inst):
    hyps, concl, args = inst
    for h in hyps:
        if not h(*args):
            return True
    return concl(*args)


def _solve(cells, n, instances, setter) -> Iterator[None]:
    """Backtracking over cells (values 0..n-1) in order; yields at each solution."""
    watch = {c: [] for c in cells}
    for inst in instances:
        try:
            if not _holds(inst):
                return
        except _Unknown as u:
            watch[u.cell].append(inst)

    def assign(cell):
        moved = []
        pending = watch[cell]
        watch[cell] = []
        for inst in pending:
            try:
                ok = _holds(inst)
            except _Unknown as u:
                watch[u.cell].append(inst)
                moved.append(u.cell)
                continue
            if not ok:
                return False, pending, moved
        return True, pending, moved

    def undo(cell, pending, moved):
        for c in reversed(moved):
            watch[c].pop()
        watch[cell] = pending

    def rec(k):
        if k == len(cells):
            yield
            return
        cell = cells[k]
        for v in range(n):
            setter(cell, v)
            ok, pending, moved = assign(cell)
            if ok:
                yield from rec(k + 1)
            undo(cell, pending, moved)
        setter(cell, None)

    yield from rec(0)


def _uses_star(c: Claim) -> bool:
    terms = [r.lhs for r in c.hypotheses + (c.conclusion,)] + [r.rhs for r in c.hypotheses + (c.conclusion,)]
    return any(isinstance(s, App) and s.op == "d" for t in terms for s in subterms(t))


def _stage_claims(spec: SearchSpec):
    """(plus-stage claims, star-stage claims, claims the model must violate)."""
    if not _structural(spec.satisfy):
        raise ValueError(f"profile {spec.satisfy!r} cannot be searched lattice-first; "
                         f"use one of {', '.join(searchable_profiles())}")
    labels = _labels(spec.satisfy)
    skip = set(AX1_LAWS) - {"PLUS_ASSOC", "PLUS_MONO"}
    keep = []
    for label, ids in labels.items():
        if label == spec.violate:
            continue
        keep.extend(i for i in ids if i not in skip and i not in keep)
    if "AX1" in labels or "MONOID" in labels:
        keep = [i for i in ("PLUS_ASSOC", "PLUS_MONO") if i not in keep] + keep
    claims = [_claim(i) for i in keep if not _claim(i).uses_unity()]
    plus_stage = [c for c in claims if not _uses_star(c)]
    star_stage = [c for c in claims if _uses_star(c)]
    if spec.violate is None:
        bad = []
    elif spec.violate in labels:
        bad = [_claim(i) for i in labels[spec.violate]]
    else:
        bad = [get_claim(spec.violate)]
    return plus_stage, star_stage, bad


def _unit_models(spec: SearchSpec, li: int, zero: int):
    """Models on lattice li with the given zero, in search order, locally deduplicated."""
    n = spec.size
    join, meet = lattices(n)[li]
    plus_claims, star_claims, bad = _stage_claims(spec)
    P = [[None] * n for _ in range(n)]
    for x in range(n):
        P[zero][x] = P[x][zero] = x
    S = [[None] * n for _ in range(n)]
    model = _Partial(n, zero, join, meet, P, S)

    def set_plus(cell, v):
        _, a, b = cell
        P[a][b] = P[b][a] = v

    def set_star(cell, v):
        S[cell[1]][cell[2]] = v

    plus_cells = [("plus", a, b) for a in range(n) for b in range(a, n) if zero not in (a, b)]
    star_cells = [("star", a, b) for a in range(n) for b in range(n)]
    plus_inst = _instances(model, plus_claims, n)
    star_inst = _instances(model, star_claims, n)
    seen = set()
    out = []
    for _ in _solve(plus_cells, n, plus_inst, set_plus):
        for _ in _solve(star_cells, n, star_inst, set_star):
            A = FiniteAlgebra(n, zero, [row[:] for row in P], join, meet, [row[:] for row in S])
            if bad and not any(check_claim(A, c).fails for c in bad):
                continue
            key = canonical_form(A)
            if spec.canonical:
                if key in seen:
                    continue
                seen.add(key)
            out.append((key, A))
            if spec.limit is not None and not spec.canonical and len(out) >= spec.limit:
                return out
    return out


def _unit_task(args):
    return _unit_models(*args)


def enumerate_models(spec: SearchSpec, jobs: int = 1) -> Iterator[FiniteAlgebra]:
    """Every model of spec.size satisfying spec.satisfy (and failing spec.violate).

    Output order depends only on the spec, never on jobs.  Models are named
    "<profile>:<size>#<k>" in emission order.
    """
    n = spec.size
    units = [(spec, li, z) for li in range(len(lattices(n))) for z in range(n)]
    if jobs > 1 and len(units) > 1:
        pool = ProcessPoolExecutor(max_workers=jobs)
        results = pool.map(_unit_task, units)
    else:
        pool = None
        results = map(_unit_task, units)
    seen = set()
    count = 0
    try:
        for batch in results:
            for key, A in batch:
                if spec.canonical:
                    if key in seen:
                        continue
                    seen.add(key)
                count += 1
                yield A.with_tables(name=f"{spec.satisfy}:{n}#{count}")
                if spec.limit is not None and count >= spec.limit:
                    return
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)


@lru_cache(maxsize=None)
def models(size: int, satisfy: str = "al-monoid") -> tuple:
    """Cached canonical enumeration, for repeated use in scans."""
    return tuple(enumerate_models(SearchSpec(size, satisfy)))


def count_models(size: int, satisfy: str = "al-monoid", jobs: int = 1) -> int:
    return sum(1 for _ in enumerate_models(SearchSpec(size, satisfy), jobs))


def find_counterexample(claim: Union[str, Claim], spec: SearchSpec, jobs: int = 1):
    """First model (sizes 1..spec.size, search order) satisfying spec.satisfy on which
    claim fails, as (model, ClaimReport); None if there is none within the bound.

    When claim names an axiom label of the profile, that axiom is dropped from
    the constraints, so the search looks for a model of the remaining axioms.
    """
    if isinstance(claim, str):
        labels = _labels(spec.satisfy)
        if claim in labels:
            violate = claim
            claims = [_claim(i) for i in labels[claim]]
        else:
            violate = None
            claims = [get_claim(claim)]
    else:
        violate, claims = None, [claim]
    for k in range(1, spec.size + 1):
        sub = replace(spec, size=k, violate=violate or spec.violate, limit=None)
        for A in enumerate_models(sub, jobs):
            for c in claims:
                r = check_claim(A, c)
                if r.fails:
                    return A, r
    return None


# --- independence ---------------------------------------------------------

def _ax2_at_vu():
    from .algebra import U, V, format_element

    A = builtin("intuv:20")
    f = lambda x: format_element(A, x)
    m = A.meet(V, U)
    s = A.star(V, m)
    lhs = A.plus(s, m)
    steps = (f"V d (V ^ U) + (V ^ U) = V d {f(m)} + {f(m)} = {f(s)} + {f(m)} = {f(lhs)}"
             f" {'=' if lhs == A.join(V, U) else '!='} {f(A.join(V, U))} = V | U")
    return {"a": "V", "b": "U", "computation": steps, "violated": lhs != A.join(V, U)}


def independence_report(bound: int = 5, jobs: int = 1) -> dict:
    """Evidence that AX2 and AX4 are not consequences of the other axioms.

    Direction "not-AX2" uses the integers with a top and a bottom; direction
    "not-AX4" searches finite models of the remaining axioms up to ``bound``.
    """
    W = builtin("intuv:20")
    rep = check_profile(W, "al-monoid")
    others = {k: r.verdict for k, r in rep.axioms.items() if k != "AX2"}
    at_vu = _ax2_at_vu()
    ax2 = rep.axioms["AX2"]
    ok2 = ax2.fails and at_vu["violated"] and not any(v == "Fails" for v in others.values())
    d2 = {
        "direction": "not-AX2",
        "model": W.name,
        "verdict": "independent" if ok2 else "not shown",
        "other_axioms": others,
        "AX2": ax2.to_dict(),
        "explicit": at_vu,
    }

    found = find_counterexample("AX4", SearchSpec(bound, "al-monoid"), jobs)
    if found:
        A, r = found
        d4 = {"direction": "not-AX4", "verdict": "independent", "name": A.name, "model": format_algebra(A),
              "AX4": r.to_dict(), "bound": bound}
    else:
        d4 = {"direction": "not-AX4", "verdict": "no finite witness", "model": None,
              "bound": bound, "note": f"no model of the other axioms violates AX4 up to size {bound}"}

    B2 = builtin("boolean:2")
    b2 = check_profile(B2, "al-monoid")
    sanity = {"direction": "sanity", "model": B2.name,
              "verdict": "ok" if b2.holds else "unexpected failure",
              "failed": b2.failed()}
    return {"directions": [d2, d4, sanity]}
