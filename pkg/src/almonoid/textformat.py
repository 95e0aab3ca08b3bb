"""Read and write the plain-text algebra format.

::

    # comment
    size 2
    zero 0
    plus
    0 1
    1 1
    join
    ...
    meet
    ...
    star            (or the single line ``star derived``)
    ...

Several algebras in one stream are separated by ``---`` lines.
"""
from __future__ import annotations

from pathlib import Path

from .algebra import OPS, FiniteAlgebra, MalformedTable


class AlgebraParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, s


def parse_algebra(text: str, name: str = "") -> FiniteAlgebra:
    lines = list(_content_lines(text))
    pos = 0

    def take(what):
        nonlocal pos
        if pos >= len(lines):
            raise AlgebraParseError(f"unexpected end of input, expected {what}")
        item = lines[pos]
        pos += 1
        return item

    def header(key):
        no, s = take(f"'{key} <int>'")
        parts = s.split()
        if len(parts) != 2 or parts[0] != key:
            raise AlgebraParseError(f"expected '{key} <int>', got {s!r}", no)
        try:
            return int(parts[1])
        except ValueError:
            raise AlgebraParseError(f"bad integer {parts[1]!r}", no) from None

    n = header("size")
    if n < 1:
        raise AlgebraParseError("size must be positive")
    zero = header("zero")
    tables = {}
    derive_star = False
    for op in OPS:
        no, s = take(f"'{op}'")
        if op == "star" and s.split() == ["star", "derived"]:
            derive_star = True
            break
        if s != op:
            raise AlgebraParseError(f"expected block keyword {op!r}, got {s!r}", no)
        rows = []
        for _ in range(n):
            no, s = take(f"row of {op} table")
            try:
                row = [int(tok) for tok in s.split()]
            except ValueError:
                raise AlgebraParseError(f"non-integer entry in {op} row", no) from None
            if len(row) != n:
                raise AlgebraParseError(f"{op} row has {len(row)} entries, expected {n}", no)
            if any(not 0 <= v < n for v in row):
                raise AlgebraParseError(f"{op} row has an entry outside [0,{n})", no)
            rows.append(row)
        tables[op] = rows
    if pos != len(lines):
        raise AlgebraParseError("trailing content after star block", lines[pos][0])
    try:
        A = FiniteAlgebra.from_tables(
            tables["plus"], tables["join"], tables["meet"], tables.get("star"), zero, name
        )
    except MalformedTable as e:
        raise AlgebraParseError(str(e)) from None
    if derive_star:
        from .constructions import drl_to_al

        A = drl_to_al(A)
    return A


def format_algebra(A: FiniteAlgebra, comment: str | None = None) -> str:
    out = []
    if comment:
        out += [f"# {c}" for c in comment.splitlines()]
    out += [f"size {A.size}", f"zero {A.zero}"]
    for op in OPS:
        t = A.table(op)
        if t is None:
            out.append("star derived")
            continue
        out.append(op)
        out += [" ".join(str(v) for v in row) for row in t]
    return "\n".join(out) + "\n"


def parse_algebras(text: str) -> list[FiniteAlgebra]:
    chunks, cur = [], []
    for line in text.splitlines():
        if line.strip() == "---":
            chunks.append("\n".join(cur))
            cur = []
        else:
            cur.append(line)
    chunks.append("\n".join(cur))
    return [parse_algebra(c) for c in chunks if list(_content_lines(c))]


def format_algebras(algebras) -> str:
    return "---\n".join(format_algebra(A, A.name or None) for A in algebras)


def load_algebra(path) -> FiniteAlgebra:
    p = Path(path)
    return parse_algebra(p.read_text(), name=p.stem)
