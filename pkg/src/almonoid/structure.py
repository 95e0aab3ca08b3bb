"""Invertible, idempotent and complemented elements, unity, isometries and
the positive cone.

Scans run over ``A.elements()``; on windowed models any evaluation leaving the
window is skipped, so results there are relative to the window.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (AlgebraError, CheckReport, FiniteAlgebra, NoUnity, OutOfWindow, element_to_json,
                      unity_candidates)
from .constructions import induced
from .terms import ClaimReport, HOLDS, FAILS


class NotClosed(AlgebraError):
    def __init__(self, witness):
        super().__init__(f"positive cone is not closed: {witness}")
        self.witness = witness


AMBIGUOUS_UNITY = "AmbiguousUnity"


@dataclass
class StructureReport:
    name: str
    elements: list = field(default_factory=list)
    items: dict = field(default_factory=dict)  # label -> CheckReport
    data: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.items.values())

    def failed(self) -> list[str]:
        return [k for k, r in self.items.items() if not r.holds]

    def to_dict(self) -> dict:
        def js(v):
            if isinstance(v, dict):
                return [[element_to_json(k), js(x)] for k, x in v.items()]
            if isinstance(v, (list, tuple)):
                return [js(x) for x in v]
            return element_to_json(v)

        return {
            "name": self.name,
            "holds": self.holds,
            "elements": [element_to_json(x) for x in self.elements],
            "items": {k: {"holds": r.holds, "witness": None if r.witness is None else js(r.witness)}
                      for k, r in self.items.items()},
            "data": {k: js(v) for k, v in self.data.items()},
            "notes": list(self.notes),
        }


class _Items:
    """Collects first witness per item; items never violated hold."""

    def __init__(self, labels):
        self.wit = {k: None for k in labels}

    def fail(self, label, witness):
        if self.wit[label] is None:
            self.wit[label] = witness

    def reports(self):
        return {k: CheckReport(w is None, None if w is None else k, w) for k, w in self.wit.items()}


def _try(f, *args):
    try:
        return f(*args)
    except OutOfWindow:
        return None


def _inverse_map(A) -> dict:
    E = list(A.elements())
    z = A.zero
    inv = {}
    for a in E:
        for y in E:
            if _try(A.plus, a, y) == z and _try(A.plus, y, a) == z:
                inv[a] = y
                break
    return inv


def invertibles(A) -> StructureReport:
    """Elements x with x + y = y + x = 0, their inverses, and the unit-group items."""
    E = list(A.elements())
    inv = _inverse_map(A)
    units = [a for a in E if a in inv]
    z = A.zero
    it = _Items(["inverse", "involution", "closed-plus", "closed-join", "closed-meet",
                 "inverse-is-zero-star", "meet-zero", "meet-any", "join-zero", "meet-pair"])

    def unit(x):
        return x is not None and x in inv

    def in_domain(x):
        return x is not None and (not hasattr(A, "contains") or A.contains(x))

    for a in units:
        y = inv[a]
        if A.plus(a, y) != z:
            it.fail("inverse", (a,))
        if inv.get(y) != a and not (unit(y) and A.plus(y, a) == z):
            it.fail("involution", (a,))
        s = _try(A.star, z, a)
        if s is not None and s != y:
            it.fail("inverse-is-zero-star", (a, y))
        j0 = A.join(a, z)
        if not unit(j0):
            it.fail("join-zero", (a,))
        for b in E:
            m = A.meet(a, b)
            if not unit(m):
                it.fail("meet-any", (a, b))
        for b in units:
            for label, op in (("closed-plus", A.plus), ("closed-join", A.join), ("closed-meet", A.meet)):
                v = _try(op, a, b)
                if in_domain(v) and not unit(v):
                    it.fail(label, (a, b))
            if not unit(A.meet(a, b)):
                it.fail("meet-pair", (a, b))
    for a in E:
        if not unit(A.meet(a, z)):
            it.fail("meet-zero", (a,))
    rep = StructureReport("invertibles", units, it.reports(), {"inverse": {a: inv[a] for a in units}})
    return rep


def invertible_formulas_check(A) -> StructureReport:
    """On invertible a, b: a*(a^b) = (a-b)|0, a*b = (a-b)|(b-a), a*0 >= a|0 >= a,
    and cancellation by invertible x."""
    E = list(A.elements())
    inv = _inverse_map(A)
    units = [a for a in E if a in inv]
    z = A.zero
    it = _Items(["residual-meet", "residual-star", "star-zero-bound", "cancellation"])
    checked = skipped = 0
    for a, b in itertools.product(units, units):
        try:
            amb = A.plus(a, inv[b])
            bma = A.plus(b, inv[a])
            lhs1, rhs1 = A.star(a, A.meet(a, b)), A.join(amb, z)
            lhs2, rhs2 = A.star(a, b), A.join(amb, bma)
        except OutOfWindow:
            skipped += 1
            continue
        checked += 1
        if lhs1 != rhs1:
            it.fail("residual-meet", (a, b))
        if lhs2 != rhs2:
            it.fail("residual-star", (a, b))
    for a in units:
        s = _try(A.star, a, z)
        if s is not None and not (A.leq(A.join(a, z), s) and A.leq(a, A.join(a, z))):
            it.fail("star-zero-bound", (a,))
    for x in units:
        for a, b in itertools.product(E, E):
            ax, bx = _try(A.plus, a, x), _try(A.plus, b, x)
            if ax is not None and ax == bx and a != b:
                it.fail("cancellation", (a, b, x))
    rep = StructureReport("invertible-formulas", units, it.reports(),
                          {"checked": checked, "skipped": skipped})
    if units == [z]:
        rep.notes.append("vacuous: only 0 is invertible")
    return rep


def idempotents(A) -> StructureReport:
    E = list(A.elements())
    idem = [a for a in E if _try(A.plus, a, a) == a]
    s = set(idem)
    z = A.zero
    it = _Items(["nonnegative", "meet-idempotent", "join-is-plus", "join-plus-idempotent",
                 "plus-decomposition"])
    for a in idem:
        if not A.leq(z, a):
            it.fail("nonnegative", (a,))
    for a, b in itertools.product(idem, idem):
        j, m, p = A.join(a, b), A.meet(a, b), _try(A.plus, a, b)
        if m not in s:
            it.fail("meet-idempotent", (a, b))
        if p != j:
            it.fail("join-is-plus", (a, b))
        if j not in s or p not in s:
            it.fail("join-plus-idempotent", (a, b))
        if p != _try(A.plus, j, m):
            it.fail("plus-decomposition", (a, b))
    return StructureReport("idempotents", idem, it.reports())


def find_unity(A) -> tuple[Optional[object], StructureReport]:
    """Element u with a + (a*u) = u + u for all a; lowest index wins if several."""
    cands = unity_candidates(A) if isinstance(A, FiniteAlgebra) else []
    rep = StructureReport("unity", cands)
    if not cands:
        rep.notes.append("no unity")
        return None, rep
    u = cands[0]
    if len(cands) > 1:
        rep.notes.append(AMBIGUOUS_UNITY)
    it = _Items(["idempotent", "cone-below-unity"])
    if A.plus(u, u) != u:
        it.fail("idempotent", (u,))
    for a in A.elements():
        if A.leq(A.zero, a) and not A.leq(a, u):
            it.fail("cone-below-unity", (a,))
    rep.items = it.reports()
    rep.data["unity"] = u
    return u, rep


def _boolean_laws(A, S, comp, one, it):
    z = A.zero
    J, M = A.join, A.meet
    for a in S:
        if J(a, comp[a]) != one:
            it.fail("boolean-laws", ("complement-join", a))
        if M(a, comp[a]) != z:
            it.fail("boolean-laws", ("complement-meet", a))
        if comp[a] not in comp:
            it.fail("closed", ("complement", a))
    for a, b in itertools.product(S, S):
        if J(a, b) not in comp or M(a, b) not in comp:
            it.fail("closed", ("lattice", a, b))
        if J(a, b) != J(b, a):
            it.fail("boolean-laws", ("join-commutative", a, b))
        if M(a, b) != M(b, a):
            it.fail("boolean-laws", ("meet-commutative", a, b))
        if J(a, M(a, b)) != a:
            it.fail("boolean-laws", ("absorption-join", a, b))
        if M(a, J(a, b)) != a:
            it.fail("boolean-laws", ("absorption-meet", a, b))
    for a, b, c in itertools.product(S, S, S):
        if J(J(a, b), c) != J(a, J(b, c)):
            it.fail("boolean-laws", ("join-associative", a, b, c))
        if M(M(a, b), c) != M(a, M(b, c)):
            it.fail("boolean-laws", ("meet-associative", a, b, c))
        if M(a, J(b, c)) != J(M(a, b), M(a, c)):
            it.fail("boolean-laws", ("meet-distributive", a, b, c))
        if J(a, M(b, c)) != M(J(a, b), J(a, c)):
            it.fail("boolean-laws", ("join-distributive", a, b, c))


def complemented(A: FiniteAlgebra) -> StructureReport:
    """Elements with a complement w.r.t. 0 and the unity, checked to form a Boolean algebra."""
    one, _ = find_unity(A)
    if one is None:
        raise NoUnity(f"{A.name or 'algebra'} has no unity")
    E = list(A.elements())
    z = A.zero
    comps = {a: [b for b in E if A.meet(a, b) == z and A.join(a, b) == one] for a in E}
    S = [a for a in E if comps[a]]
    comp = {a: comps[a][0] for a in S}
    it = _Items(["unique-complement", "complement-is-star-unity", "idempotent", "contains-bounds",
                 "closed", "boolean-laws"])
    for a in S:
        if len(comps[a]) > 1:
            it.fail("unique-complement", (a, comps[a]))
        if comp[a] != A.star(a, one):
            it.fail("complement-is-star-unity", (a,))
        if A.plus(a, a) != a:
            it.fail("idempotent", (a,))
    if z not in comp or one not in comp:
        it.fail("contains-bounds", (z, one))
    _boolean_laws(A, S, comp, one, it)
    return StructureReport("complemented", S, it.reports(), {"complement": comp, "unity": one})


def is_isometry(A: FiniteAlgebra, mapping) -> tuple[bool, Optional[tuple]]:
    """Bijection with f(x)*f(y) = x*y; witness ('not-bijective', x, y) or ('distance', x, y)."""
    f = list(mapping)
    if len(f) != A.size:
        raise ValueError("map must be total")
    seen = {}
    for x, fx in enumerate(f):
        if fx in seen:
            return False, ("not-bijective", seen[fx], x)
        seen[fx] = x
    for x, y in itertools.product(A.elements(), A.elements()):
        if A.star(f[x], f[y]) != A.star(x, y):
            return False, ("distance", x, y)
    return True, None


def translation_isometry_scan(A: FiniteAlgebra) -> StructureReport:
    """For each a: is x -> a + x an isometry, and does that match invertibility of a?"""
    inv = _inverse_map(A)
    isos = []
    mismatches = []
    for a in A.elements():
        iso, _ = is_isometry(A, [A.plus(a, x) for x in A.elements()])
        if iso:
            isos.append(a)
        if iso != (a in inv):
            mismatches.append(a)
    it = {"isometry-iff-invertible": CheckReport(not mismatches, None if not mismatches else
                                                 "isometry-iff-invertible",
                                                 tuple(mismatches) or None)}
    return StructureReport("translation-isometries", isos, it,
                           {"invertible": sorted(inv), "mismatches": mismatches})


def star_translation_scan(A: FiniteAlgebra) -> StructureReport:
    """If every x -> a*x is an isometry, the whole algebra should be Boolean."""
    premise_wit = None
    for a in A.elements():
        iso, wit = is_isometry(A, [A.star(a, x) for x in A.elements()])
        if not iso:
            premise_wit = (a,) + wit
            break
    rep = StructureReport("star-isometries")
    rep.data["premise"] = premise_wit is None
    if premise_wit is not None:
        rep.data["premise_witness"] = premise_wit
        rep.notes.append("premise fails; implication holds vacuously")
        return rep
    try:
        comp = complemented(A)
    except NoUnity:
        rep.items["conclusion"] = CheckReport(False, "conclusion", ("no unity",))
        return rep
    everything = len(comp.elements) == A.size
    ok = everything and comp.holds
    rep.elements = comp.elements
    rep.items["conclusion"] = CheckReport(ok, None if ok else "conclusion",
                                          None if ok else tuple(comp.failed()) or ("not all complemented",))
    return rep


def positive_cone(A: FiniteAlgebra):
    """{a : a >= 0} as an algebra, with its DRl report and the check a - b = a*(a^b).

    Returns (cone, ProfileReport); report.extra["embedding"] maps cone indices into A.
    """
    from .profiles import check_drl

    cone = [a for a in A.elements() if A.leq(A.zero, a)]
    cs = set(cone)
    for op in ("plus", "join", "meet", "star"):
        f = getattr(A, op)
        for a, b in itertools.product(cone, cone):
            if f(a, b) not in cs:
                raise NotClosed((op, a, b))
    C, emb = induced(A, cone, f"cone({A.name})")
    rep = check_drl(C)
    rep.extra["embedding"] = emb
    res = rep.extra.get("residual", {})
    wit = None
    checked = 0
    for a, b in itertools.product(C.elements(), C.elements()):
        if (a, b) not in res:
            continue
        checked += 1
        if res[(a, b)] != C.star(a, C.meet(a, b)):
            wit = {"a": emb[a], "b": emb[b]}
            break
    full = checked == C.size ** 2
    verdict = FAILS if wit else (HOLDS if full else "Inconclusive")
    rep.axioms["RESIDUAL_IS_STAR"] = ClaimReport("RESIDUAL_IS_STAR", verdict, wit, checked,
                                                C.size ** 2 - checked)
    return C, rep
