"""Terms over the signature {+, |, ^, d, 0, 1}, the claims DSL, and the claim checker.

DSL::

    claim l1 : forall a b c : (a ^ b) = a ==> (a d c) <= (b d c)

``+`` plus, ``|`` join, ``^`` meet, ``d`` star.  An unparenthesized chain may
use one operator only and associates to the left.  ``s <= t`` is evaluated
as ``(s ^ t) = s``.
"""
from __future__ import annotations

import itertools
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from .algebra import NoUnity, OutOfWindow, element_to_json, format_element

OP_NAMES = {"+": "plus", "|": "join", "^": "meet", "d": "star"}
_OP_FUNC = {"+": "P", "|": "J", "^": "M", "d": "S"}

HOLDS = "Holds"
FAILS = "Fails"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: str  # "0" or "1"


@dataclass(frozen=True)
class App:
    op: str  # one of + | ^ d
    left: "Term"
    right: "Term"


Term = Union[Var, Const, App]
ZERO = Const("0")
ONE = Const("1")


@dataclass(frozen=True)
class Relation:
    lhs: Term
    op: str  # "=" or "<="
    rhs: Term


@dataclass(frozen=True)
class Claim:
    id: str
    vars: tuple
    hypotheses: tuple
    conclusion: Relation
    description: str = field(default="", compare=False)

    def relations(self):
        return self.hypotheses + (self.conclusion,)

    def uses_unity(self) -> bool:
        return any(ONE in subterms(t) for r in self.relations() for t in (r.lhs, r.rhs))

    def __str__(self):
        return format_claim(self)


def subterms(t: Term):
    yield t
    if isinstance(t, App):
        yield from subterms(t.left)
        yield from subterms(t.right)


def term_vars(t: Term) -> set:
    return {s.name for s in subterms(t) if isinstance(s, Var)}


# --- parsing --------------------------------------------------------------

class ClaimSyntaxError(SyntaxError):
    def __init__(self, msg, line, col, text=None):
        super().__init__(f"{msg} (line {line}, column {col})")
        self.msg = msg
        self.lineno = line
        self.offset = col
        self.text = text


class UnboundVariable(ClaimSyntaxError):
    pass


_TOKEN = re.compile(r"\s*(?:(==>)|(<=)|([=&:()+|^])|([A-Za-z_][A-Za-z0-9_]*)|([0-9]+))")
_KEYWORDS = {"claim", "forall"}


@dataclass
class _Tok:
    kind: str  # 'sym', 'ident', 'num', 'eof'
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    # column bookkeeping per line keeps error locations exact for multi-line claims
    for lineno, line in enumerate(text.splitlines() or [""], 1):
        code = line.split("#", 1)[0]
        pos = 0
        while pos < len(code):
            if code[pos:].strip() == "":
                break
            m = _TOKEN.match(code, pos)
            if not m or m.end() == pos:
                col = pos + len(code[pos:]) - len(code[pos:].lstrip()) + 1
                raise ClaimSyntaxError(f"unexpected character {code[col - 1]!r}", lineno, col, line)
            start = m.start(m.lastindex) + 1
            s = m.group(m.lastindex)
            kind = {1: "sym", 2: "sym", 3: "sym", 4: "ident", 5: "num"}[m.lastindex]
            toks.append(_Tok(kind, s, lineno, start))
            pos = m.end()
    last = toks[-1] if toks else _Tok("eof", "", 1, 1)
    toks.append(_Tok("eof", "", last.line, last.col + len(last.text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.declared: set = set()

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None, cls=ClaimSyntaxError):
        tok = tok or self.tok
        lines = self.text.splitlines()
        src = lines[tok.line - 1] if 0 < tok.line <= len(lines) else None
        raise cls(msg, tok.line, tok.col, src)

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def expect(self, text, kind="sym"):
        if self.tok.kind != kind or self.tok.text != text:
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def claim(self) -> Claim:
        self.expect("claim", "ident")
        if self.tok.kind != "ident" or self.tok.text in _KEYWORDS:
            self.error("expected claim identifier")
        cid = self.advance().text
        self.expect(":")
        self.expect("forall", "ident")
        names = []
        while self.tok.kind == "ident":
            t = self.advance()
            if t.text in _KEYWORDS or t.text == "d":
                self.error(f"{t.text!r} cannot be a variable name", t)
            if t.text in names:
                self.error(f"variable {t.text!r} declared twice", t)
            names.append(t.text)
        if not names:
            self.error("forall needs at least one variable")
        self.declared = set(names)
        self.expect(":")
        rels = [self.relation()]
        hyps: list = []
        while self.tok.kind == "sym" and self.tok.text == "&":
            self.advance()
            rels.append(self.relation())
        if self.tok.kind == "sym" and self.tok.text == "==>":
            self.advance()
            hyps = rels
            concl = self.relation()
        else:
            if len(rels) > 1:
                self.error("'&' is only allowed between hypotheses")
            concl = rels[0]
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r} after claim")
        return Claim(cid, tuple(names), tuple(hyps), concl)

    def relation(self) -> Relation:
        lhs = self.term()
        if self.tok.kind == "sym" and self.tok.text in ("=", "<="):
            op = self.advance().text
        else:
            self.error(f"expected '=' or '<=', found {self.tok.text or 'end of input'!r}")
        return Relation(lhs, op, self.term())

    def _is_op(self):
        t = self.tok
        return (t.kind == "sym" and t.text in "+|^" and t.text != "") or (t.kind == "ident" and t.text == "d")

    def term(self) -> Term:
        t = self.atom()
        if not self._is_op():
            return t
        op = self.tok.text
        while self._is_op():
            if self.tok.text != op:
                self.error(f"mixed operators {op!r} and {self.tok.text!r} need parentheses")
            self.advance()
            t = App(op, t, self.atom())
        return t

    def atom(self) -> Term:
        t = self.tok
        if t.kind == "sym" and t.text == "(":
            self.advance()
            inner = self.term()
            self.expect(")")
            return inner
        if t.kind == "num":
            if t.text not in ("0", "1"):
                self.error(f"only the constants 0 and 1 exist, found {t.text!r}")
            self.advance()
            return ZERO if t.text == "0" else ONE
        if t.kind == "ident" and t.text not in _KEYWORDS and t.text != "d":
            if t.text not in self.declared:
                self.error(f"variable {t.text!r} is not declared in forall", t, UnboundVariable)
            self.advance()
            return Var(t.text)
        self.error(f"expected a term, found {t.text or 'end of input'!r}")


def parse_claim(text: str) -> Claim:
    return _Parser(text).claim()


def parse_claims(text: str) -> list[Claim]:
    """Parse a claims file: each claim starts at a line beginning with ``claim``."""
    groups: list[tuple[int, list[str]]] = []
    for no, line in enumerate(text.splitlines(), 1):
        code = line.split("#", 1)[0]
        if not code.strip():
            continue
        if code.split()[0] == "claim" or not groups:
            groups.append((no, [code]))
        else:
            groups[-1][1].append(code)
    out = []
    for start, lines in groups:
        try:
            out.append(parse_claim("\n".join(lines)))
        except ClaimSyntaxError as e:
            raise type(e)(e.msg, e.lineno + start - 1, e.offset, e.text) from None
    return out


def parse_term(text: str, variables) -> Term:
    p = _Parser(text)
    p.declared = set(variables)
    t = p.term()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r} after term")
    return t


# --- printing -------------------------------------------------------------

def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return t.value

    def side(s, right):
        txt = format_term(s)
        if isinstance(s, App) and (s.op != t.op or right):
            return f"({txt})"
        return txt

    return f"{side(t.left, False)} {t.op} {side(t.right, True)}"


def format_relation(r: Relation) -> str:
    return f"{format_term(r.lhs)} {r.op} {format_term(r.rhs)}"


def format_claim(c: Claim) -> str:
    body = format_relation(c.conclusion)
    if c.hypotheses:
        body = " & ".join(format_relation(h) for h in c.hypotheses) + " ==> " + body
    return f"claim {c.id} : forall {' '.join(c.vars)} : {body}"


# --- evaluation -----------------------------------------------------------

def eval_term(A, t: Term, env: dict):
    """Evaluate t bottom-up in model A; OutOfWindow / NoUnity propagate."""
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Const):
        if t.value == "0":
            return A.zero
        if A.unity is None:
            raise NoUnity(f"{getattr(A, 'name', 'model')} has no unity")
        return A.unity
    op = getattr(A, OP_NAMES[t.op])
    return op(eval_term(A, t.left, env), eval_term(A, t.right, env))


def eval_relation(A, r: Relation, env: dict) -> bool:
    lhs = eval_term(A, r.lhs, env)
    rhs = eval_term(A, r.rhs, env)
    if r.op == "=":
        return lhs == rhs
    return A.meet(lhs, rhs) == lhs


def _term_src(t: Term, names: dict) -> str:
    if isinstance(t, Var):
        return names[t.name]
    if isinstance(t, Const):
        return "Z" if t.value == "0" else "ONE"
    return f"{_OP_FUNC[t.op]}({_term_src(t.left, names)}, {_term_src(t.right, names)})"


def _relation_src(r: Relation, names: dict) -> str:
    lhs, rhs = _term_src(r.lhs, names), _term_src(r.rhs, names)
    if r.op == "=":
        return f"({lhs}) == ({rhs})"
    return f"M((_t := {lhs}), {rhs}) == _t"


_CODE_CACHE: dict = {}


def _compiled(rel: Relation, vars_: tuple):
    key = (rel, vars_)
    code = _CODE_CACHE.get(key)
    if code is None:
        names = {v: f"v{i}" for i, v in enumerate(vars_)}
        src = f"lambda {', '.join(names.values())}: {_relation_src(rel, names)}"
        code = _CODE_CACHE[key] = compile(src, f"<relation {format_relation(rel)}>", "eval")
    return code


def relation_function(A, rel: Relation, vars_: tuple):
    """Compile rel into a fast positional predicate bound to the operations of A."""
    ns = {"P": A.plus, "J": A.join, "M": A.meet, "S": A.star, "Z": A.zero, "ONE": A.unity}
    return eval(_compiled(rel, vars_), ns)


def claim_predicates(A, c: Claim):
    return ([relation_function(A, h, c.vars) for h in c.hypotheses],
            relation_function(A, c.conclusion, c.vars))


# --- checking -------------------------------------------------------------

@dataclass
class ClaimReport:
    id: str
    verdict: str
    witness: Optional[dict] = None
    checked: int = 0
    skipped: int = 0
    reason: Optional[str] = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def fails(self) -> bool:
        return self.verdict == FAILS

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "verdict": self.verdict,
            "witness": None if self.witness is None
            else {k: element_to_json(v) for k, v in self.witness.items()},
            "checked": self.checked,
            "skipped": self.skipped,
        }
        if self.reason:
            d["reason"] = self.reason
        return d

    @classmethod
    def from_dict(cls, d: dict, A=None) -> "ClaimReport":
        from .algebra import element_from_json

        wit = d.get("witness")
        if wit is not None:
            wit = {k: element_from_json(A, v) for k, v in wit.items()}
        return cls(d["id"], d["verdict"], wit, d["checked"], d["skipped"], d.get("reason"))

    def describe(self, A=None) -> str:
        s = f"{self.id}: {self.verdict} (checked {self.checked}, skipped {self.skipped})"
        if self.witness is not None:
            fmt = (lambda x: format_element(A, x)) if A is not None else str
            s += " witness " + ", ".join(f"{k}={fmt(v)}" for k, v in self.witness.items())
        if self.reason:
            s += f" [{self.reason}]"
        return s


def _scan(A, c: Claim, domain, first_values):
    """Scan assignments whose first variable ranges over first_values.

    Returns (checked, skipped, witness-tuple or None); stops at the first violation.
    """
    hyps, concl = claim_predicates(A, c)
    checked = skipped = 0
    rest = [domain] * (len(c.vars) - 1)
    for head in first_values:
        for tail in itertools.product(*rest):
            args = (head,) + tail
            if hyps:
                vacuous = blocked = False
                for h in hyps:
                    try:
                        if not h(*args):
                            vacuous = True
                            break
                    except OutOfWindow:
                        blocked = True
                if vacuous:
                    checked += 1
                    continue
                if blocked:
                    skipped += 1
                    continue
            try:
                ok = concl(*args)
            except OutOfWindow:
                skipped += 1
                continue
            checked += 1
            if not ok:
                return checked, skipped, args
    return checked, skipped, None


def _scan_task(payload):
    return _scan(*payload)


def merge_reports(cid: str, vars_: tuple, parts) -> ClaimReport:
    """Merge per-chunk scan results given in deterministic chunk order."""
    checked = skipped = 0
    for ch, sk, wit in parts:
        checked += ch
        skipped += sk
        if wit is not None:
            return ClaimReport(cid, FAILS, dict(zip(vars_, wit)), checked, skipped)
    verdict = HOLDS if skipped == 0 else INCONCLUSIVE
    return ClaimReport(cid, verdict, None, checked, skipped)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("ALMONOID_JOBS", "1")))
    except ValueError:
        return 1


def check_claim(A, c: Claim, domain=None, jobs: int = 1) -> ClaimReport:
    """Exhaustively check c over all assignments from domain (default: every element of A).

    Assignments are enumerated lexicographically in domain order.  The scan
    stops at the first violation; counts then cover everything up to it.
    """
    domain = list(A.elements() if domain is None else domain)
    if not domain:
        raise ValueError("domain must be nonempty")
    total = len(domain) ** len(c.vars)
    if c.uses_unity() and A.unity is None:
        return ClaimReport(c.id, INCONCLUSIVE, None, 0, total, "NoUnity")
    if jobs <= 1 or len(domain) < 2:
        parts = [_scan(A, c, domain, domain)]
    else:
        chunks = [[x] for x in domain]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_scan_task, [(A, c, domain, ch) for ch in chunks]))
    return merge_reports(c.id, c.vars, parts)


def is_violation(A, c: Claim, witness: dict) -> bool:
    """True iff every hypothesis holds and the conclusion fails at witness."""
    return all(eval_relation(A, h, witness) for h in c.hypotheses) and not eval_relation(
        A, c.conclusion, witness)
