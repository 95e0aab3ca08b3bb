"""Membership checks for each axiom system, with a per-axiom breakdown."""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Optional

from .algebra import FiniteAlgebra, OutOfWindow, WindowedAlgebra, element_to_json, validate_algebra
from .catalog import AX1_LAWS, CATALOG, CONTRACTIONS, LAWS
from .terms import FAILS, HOLDS, INCONCLUSIVE, ClaimReport, check_claim

PROFILE_NAMES = ("autometrized", "lattice-ordered", "representable", "semilattice-ordered",
                 "drl", "al-monoid", "al-monoid-eq")

LATTICE = ("JOIN_IDEM", "JOIN_COMM", "JOIN_ASSOC", "MEET_IDEM", "MEET_COMM", "MEET_ASSOC",
           "ABSORB_JM", "ABSORB_MJ")
MONOID = ("PLUS_ID", "PLUS_COMM", "PLUS_ASSOC")
METRIC = ("MET_POS", "MET_ZERO", "MET_INDISC", "MET_SYM", "MET_TRI")

# label -> claim ids; a label holds iff all of its claims hold
_AXIOMS = {
    "autometrized": [("PLUS_COMM", ("PLUS_COMM",)), ("ORD_REFL", ("ORD_REFL",)),
                     ("ORD_ANTISYM", ("ORD_ANTISYM",))] + [(m, (m,)) for m in METRIC],
    "lattice-ordered": [("LATTICE", LATTICE), ("MONOID", MONOID), ("PLUS_MONO", ("PLUS_MONO",))]
    + [(m, (m,)) for m in METRIC],
    "semilattice-ordered": [("MONOID", MONOID),
                            ("MEET_SEMILATTICE", ("MEET_IDEM", "MEET_COMM", "MEET_ASSOC")),
                            ("PLUS_MEET_DIST", ("PLUS_MEET_DIST",))] + [(m, (m,)) for m in METRIC],
    "al-monoid": [("AX1", AX1_LAWS), ("AX2", ("AX2",))] + [(c, (c,)) for c in CONTRACTIONS]
    + [("AX4", ("AX4",))],
    "al-monoid-eq": [("AX1", AX1_LAWS)] + [(c, (c,)) for c in CONTRACTIONS]
    + [("AX4", ("AX4",)), ("T1_1", ("T1_1",)), ("T1_2", ("T1_2",)), ("T1_3", ("T1_3",))],
}
_AXIOMS["representable"] = _AXIOMS["lattice-ordered"] + [("SEMIREG", ("SEMIREG",))] + [
    (c, (c,)) for c in CONTRACTIONS]


def _claim(cid):
    return CATALOG.get(cid) or LAWS[cid]


def profile_axioms(profile: str) -> dict:
    """label -> tuple of claims for a claim-based profile."""
    if profile not in _AXIOMS:
        raise KeyError(f"unknown or non-equational profile {profile!r}")
    return {label: tuple(_claim(c) for c in ids) for label, ids in _AXIOMS[profile]}


@dataclass
class ProfileReport:
    profile: str
    axioms: dict = field(default_factory=dict)  # label -> ClaimReport
    extra: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        vs = [r.verdict for r in self.axioms.values()]
        if all(v == HOLDS for v in vs):
            return HOLDS
        return FAILS if FAILS in vs else INCONCLUSIVE

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def fails(self) -> bool:
        return self.verdict == FAILS

    def failed(self) -> list[str]:
        return [k for k, r in self.axioms.items() if r.fails]

    def to_dict(self) -> dict:
        d = {"profile": self.profile, "verdict": self.verdict,
             "axioms": [r.to_dict() for r in self.axioms.values()]}
        if "residual" in self.extra:
            d["residual"] = [[element_to_json(a), element_to_json(b), element_to_json(x)]
                             for (a, b), x in self.extra["residual"].items()]
        return d


def _combine(label: str, reports) -> ClaimReport:
    checked = sum(r.checked for r in reports)
    skipped = sum(r.skipped for r in reports)
    for r in reports:
        if r.fails:
            return ClaimReport(label, FAILS, r.witness, checked, skipped, r.id if r.id != label else None)
    verdict = HOLDS if all(r.holds for r in reports) else INCONCLUSIVE
    return ClaimReport(label, verdict, None, checked, skipped)


def _ax1_finite(A: FiniteAlgebra) -> ClaimReport:
    rep = validate_algebra(A)
    n = A.size
    if rep.holds:
        return ClaimReport("AX1", HOLDS, None, n ** 3, 0)
    wit = dict(zip("abc", rep.witness)) if rep.law != "translation-compatibility" else dict(
        zip(("a", "x", "y"), rep.witness))
    return ClaimReport("AX1", FAILS, wit, 0, 0, rep.law)


def check_profile(A, profile: str, fast: bool = False, domain=None, jobs: int = 1) -> ProfileReport:
    if profile == "drl":
        return check_drl(A)
    report = ProfileReport(profile)
    for label, claims in profile_axioms(profile).items():
        if label == "AX1" and isinstance(A, FiniteAlgebra) and domain is None:
            r = _ax1_finite(A)
        else:
            r = _combine(label, [check_claim(A, c, domain, jobs) for c in claims])
        report.axioms[label] = r
        if fast and r.fails:
            break
    return report


def check_autometrized(A, **kw) -> ProfileReport:
    return check_profile(A, "autometrized", **kw)


def check_lattice_ordered(A, **kw) -> ProfileReport:
    return check_profile(A, "lattice-ordered", **kw)


def check_representable(A, **kw) -> ProfileReport:
    return check_profile(A, "representable", **kw)


def check_semilattice_ordered(A, **kw) -> ProfileReport:
    return check_profile(A, "semilattice-ordered", **kw)


def check_al_monoid(A, **kw) -> ProfileReport:
    return check_profile(A, "al-monoid", **kw)


def check_al_monoid_equational(A, **kw) -> ProfileReport:
    return check_profile(A, "al-monoid-eq", **kw)


# --- DRl-semigroups -------------------------------------------------------

def _candidates(A):
    """Candidate residuals and the model used to evaluate x + b.

    Windowed models search x over [-(2B+1), 2B+1]: every integer residual
    a - b of window elements lies in [-2B, 2B], so a least candidate at the
    lower probe edge means the candidate set has no least element.
    """
    if isinstance(A, WindowedAlgebra):
        B = A.bound
        wide = A.widened(3 * B + 2)
        cands = list(range(-(2 * B + 1), 2 * B + 2)) + list(A.symbols)
        return cands, wide, -(2 * B + 1)
    return list(A.elements()), A, None


def residual(A, a, b) -> tuple[Optional[object], str]:
    """Least x with x + b >= a.  Returns (x, status) with status Holds/Fails/Inconclusive."""
    cands, M, edge = _candidates(A)
    S = []
    unknown = False
    for x in cands:
        try:
            if M.leq(a, M.plus(x, b)):
                S.append(x)
        except OutOfWindow:
            unknown = True
    if not S:
        return None, (INCONCLUSIVE if unknown else FAILS)
    # S has a least element iff the meet of S lies in S
    m = functools.reduce(M.meet, S)
    if m not in S:
        return None, (INCONCLUSIVE if unknown else FAILS)
    if edge is not None and m == edge:
        return None, FAILS
    return m, (INCONCLUSIVE if unknown else HOLDS)


def check_drl(A, fast: bool = False) -> ProfileReport:
    """DRl-semigroup axioms on (A, +, |, ^, 0); the star table is ignored.

    DRL2 asks for a least x with x + b >= a for every pair; that residual
    a - b is then used for DRL3 ((a-b) | 0) + b <= a | b and DRL4 0 <= a - a.
    """
    report = ProfileReport("drl")
    if isinstance(A, FiniteAlgebra):
        ax1 = _ax1_finite(A)
    else:
        ax1 = _combine("AX1", [check_claim(A, _claim(c)) for c in LATTICE + MONOID + ("PLUS_MONO",)])
    report.axioms["DRL1"] = ClaimReport("DRL1", ax1.verdict, ax1.witness, ax1.checked, ax1.skipped,
                                       ax1.reason)
    if fast and ax1.fails:
        return report
    E = list(A.elements())
    res = {}
    checked = skipped = 0
    fail2 = None
    for a in E:
        for b in E:
            x, status = residual(A, a, b)
            if status == FAILS and fail2 is None:
                fail2 = {"a": a, "b": b}
            if status == HOLDS:
                res[(a, b)] = x
                checked += 1
            elif status == INCONCLUSIVE:
                skipped += 1
            else:
                checked += 1
    if fail2 is not None:
        report.axioms["DRL2"] = ClaimReport("DRL2", FAILS, fail2, checked, skipped, "no least element")
    else:
        report.axioms["DRL2"] = ClaimReport("DRL2", HOLDS if not skipped else INCONCLUSIVE, None,
                                           checked, skipped)
    report.extra["residual"] = res
    if fast and fail2 is not None:
        return report
    M = _candidates(A)[1]
    for label in ("DRL3", "DRL4"):
        pairs = [(a, b) for a in E for b in E] if label == "DRL3" else [(a, a) for a in E]
        checked = skipped = 0
        wit = None
        for a, b in pairs:
            if (a, b) not in res:
                skipped += 1
                continue
            x = res[(a, b)]
            try:
                if label == "DRL3":
                    ok = M.leq(M.plus(M.join(x, M.zero), b), M.join(a, b))
                else:
                    ok = M.leq(M.zero, x)
            except OutOfWindow:
                skipped += 1
                continue
            checked += 1
            if not ok:
                wit = {"a": a, "b": b}
                break
        verdict = FAILS if wit else (HOLDS if skipped == 0 else INCONCLUSIVE)
        report.axioms[label] = ClaimReport(label, verdict, wit, checked, skipped)
    return report


def get_profile_checker(name: str):
    if name not in PROFILE_NAMES:
        raise KeyError(f"unknown profile {name!r}; expected one of {', '.join(PROFILE_NAMES)}")
    return lambda A, **kw: check_profile(A, name, **kw)
