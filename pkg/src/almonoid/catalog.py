"""Built-in claim catalog and the axiom/law claims used by the profiles."""
from __future__ import annotations

from .terms import ClaimReport, check_claim, parse_claim

PIXLEY_M = "((({x} d {y}) d {z}) ^ (({z} d {y}) d {x}) ^ ({x} | {z}))"


def _m(x, y, z):
    return PIXLEY_M.format(x=x, y=y, z=z)


# (id, DSL body, anchor)
_CATALOG_SRC = [
    ("AX2", "forall a b : (a d (a ^ b)) + b = a | b", "distance to the meet restores the join"),
    ("AX4", "forall a b : (a d (a | b)) ^ (b d (a | b)) = 0", "distances to a common upper bound meet in 0"),
    ("CONTR_plus", "forall a x y : (a + x) d (a + y) <= x d y", "x -> a+x is a contraction"),
    ("CONTR_join", "forall a x y : (a | x) d (a | y) <= x d y", "x -> a|x is a contraction"),
    ("CONTR_meet", "forall a x y : (a ^ x) d (a ^ y) <= x d y", "x -> a^x is a contraction"),
    ("CONTR_star", "forall a x y : (a d x) d (a d y) <= x d y", "x -> a*x is a contraction"),
    ("T1_1", "forall x y : y <= x + (y d x)", "equational basis"),
    ("T1_2", "forall x y z : x d y <= (x | z) d y", "equational basis"),
    ("T1_3", "forall x y : (x + y) d y <= x", "equational basis"),
    ("L1", "forall a b c : a <= b ==> a d c <= b d c", "monotonicity of a*c"),
    ("L2_1", "forall a b : a d (a ^ b) = (a | b) d b", ""),
    ("L2_2", "forall a : 0 <= a ==> a d 0 = a", "semiregularity"),
    ("L2_3", "forall a b : 0 <= a d b", ""),
    ("L2_4", "forall a : a d a = 0", ""),
    ("L2_5", "forall a b : a d b = b d a", ""),
    ("L2_6", "forall a b : a d b = 0 ==> a = b", ""),
    ("L2_7", "forall a b c : a d c <= (a d b) + (b d c)", "triangle inequality"),
    ("T23_1", "forall a b : b <= a ==> a = (a d b) + b", ""),
    ("T23_2", "forall a b : a | b = (a d b) + (a ^ b)", ""),
    ("T23_3", "forall a b : a d b = (a | b) d (a ^ b)", ""),
    ("T23_4", "forall a b : a d b = (a d (a ^ b)) + ((a ^ b) d b)", ""),
    ("T23_4v", "forall a b : a d b = (a d (a | b)) + ((a | b) d b)", ""),
    ("L2_8", "forall x y : y + x = 0 ==> y = 0 d x", "inverse via star"),
    ("L6", "forall a b c : (a | b) d c = (a d c) | (b d c)", ""),
    ("L9", "forall a b c : a d (b ^ c) <= (a d b) | (a d c)", ""),
    ("STARFACT", "forall a b : (a d (a ^ b)) d (b d (a ^ b)) = a d b", ""),
    ("SYMDIFF", "forall a b : (a | b) d (a ^ b) = (a d b) | (b d a)", ""),
    ("L10", "forall a b c : a d (b + c) = (a d c) d b", ""),
    ("UNITY", "forall a : a + (a d 1) = 1 + 1", "unity"),
    ("CPL2", "forall a : a ^ (a d 1) = 0", "complement meets to 0"),
    ("CPL3", "forall a : a + (a d 1) = 1", "complement adds to 1"),
    ("Tl_pixley_xyy", f"forall x y : {_m('x', 'y', 'y')} = x", "Pixley m(x,y,y)=x"),
    ("Tl_pixley_yyx", f"forall x y : {_m('y', 'y', 'x')} = x", "Pixley m(y,y,x)=x"),
    ("Tl_pixley_xyx", f"forall x y : {_m('x', 'y', 'x')} = x", "Pixley m(x,y,x)=x"),
]

# Laws of a commutative lattice-ordered monoid, plus order and metric laws used by profiles.
_LAW_SRC = [
    ("JOIN_IDEM", "forall a : a | a = a"),
    ("JOIN_COMM", "forall a b : a | b = b | a"),
    ("JOIN_ASSOC", "forall a b c : (a | b) | c = a | (b | c)"),
    ("MEET_IDEM", "forall a : a ^ a = a"),
    ("MEET_COMM", "forall a b : a ^ b = b ^ a"),
    ("MEET_ASSOC", "forall a b c : (a ^ b) ^ c = a ^ (b ^ c)"),
    ("ABSORB_JM", "forall a b : a | (a ^ b) = a"),
    ("ABSORB_MJ", "forall a b : a ^ (a | b) = a"),
    ("PLUS_ID", "forall a : a + 0 = a"),
    ("PLUS_COMM", "forall a b : a + b = b + a"),
    ("PLUS_ASSOC", "forall a b c : (a + b) + c = a + (b + c)"),
    ("PLUS_MONO", "forall a x y : x <= y ==> a + x <= a + y"),
    ("PLUS_MEET_DIST", "forall a b c : a + (b ^ c) = (a + b) ^ (a + c)"),
    ("ORD_REFL", "forall a : a <= a"),
    ("ORD_ANTISYM", "forall a b : a <= b & b <= a ==> a = b"),
    ("MET_POS", "forall a b : 0 <= a d b"),
    ("MET_ZERO", "forall a : a d a = 0"),
    ("MET_INDISC", "forall a b : a d b = 0 ==> a = b"),
    ("MET_SYM", "forall a b : a d b = b d a"),
    ("MET_TRI", "forall a b c : a d b <= (a d c) + (c d b)"),
    ("SEMIREG", "forall a : 0 <= a ==> a d 0 = a"),
]


def _build(src):
    out = {}
    for cid, body, *rest in src:
        c = parse_claim(f"claim {cid} : {body}")
        if rest and rest[0]:
            c = type(c)(c.id, c.vars, c.hypotheses, c.conclusion, rest[0])
        out[cid] = c
    return out


CATALOG = _build(_CATALOG_SRC)
LAWS = _build(_LAW_SRC)

AX1_LAWS = ("JOIN_IDEM", "JOIN_COMM", "JOIN_ASSOC", "MEET_IDEM", "MEET_COMM", "MEET_ASSOC",
            "ABSORB_JM", "ABSORB_MJ", "PLUS_ID", "PLUS_COMM", "PLUS_ASSOC", "PLUS_MONO")
CONTRACTIONS = ("CONTR_plus", "CONTR_join", "CONTR_meet", "CONTR_star")
PIXLEY = ("Tl_pixley_xyy", "Tl_pixley_yyx", "Tl_pixley_xyx")

# Claims reported by catalog group name, e.g. "Tl_pixley" covers all three identities.
GROUPS = {"Tl_pixley": PIXLEY, "CONTR": CONTRACTIONS}


def get_claim(cid: str):
    """Look up a catalog or law claim by id (case-insensitive)."""
    for table in (CATALOG, LAWS):
        if cid in table:
            return table[cid]
    low = cid.lower()
    for table in (CATALOG, LAWS):
        for k, c in table.items():
            if k.lower() == low:
                return c
    raise KeyError(f"unknown claim {cid!r}")


def run_catalog(A, domain=None, jobs: int = 1) -> list[ClaimReport]:
    """Check every catalog claim on A, in catalog order."""
    return [check_claim(A, c, domain, jobs) for c in CATALOG.values()]


def failing_ids(reports) -> list[str]:
    return [r.id for r in reports if r.fails]
