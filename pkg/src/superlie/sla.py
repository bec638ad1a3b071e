"""Reader and writer for ``.sla`` multiplication-table files.

Grammar (UTF-8, one statement per line, ``#`` starts a comment)::

    algebra NAME
    even x1 x2 ...
    odd y1 y2 ...
    generators x1 y1            # optional generator marks
    [a,b] = c1*g1 + c2*g2       # coefficients p/q, "1*" may be omitted
    expect KEY = VALUE          # golden values checked by `superlie check`

Only one orientation of each bracket may appear; the other follows from the
sign rule.  Brackets that are not listed are zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .algebra import SuperAlgebra
from .errors import DuplicateBracket, ParityMismatch, ParseError, UnknownLabel

LABEL = r"[A-Za-z_][A-Za-z0-9_']*"
_BRACKET_RE = re.compile(rf"^\[\s*({LABEL})\s*,\s*({LABEL})\s*\]\s*=\s*(.*)$")
_TERM_RE = re.compile(
    rf"\s*([+-])?\s*(?:(\(\s*-?\d+(?:\s*/\s*\d+)?\s*\)|\d+(?:\s*/\s*\d+)?)\s*\*\s*)?({LABEL})\s*"
)
_EXPECT_RE = re.compile(r"^expect\s+([A-Za-z_][\w.]*)\s*=\s*(.*)$")


@dataclass
class AlgebraFile:
    path: str | None
    algebra: SuperAlgebra
    expectations: dict[str, str] = field(default_factory=dict)


def parse_expression(text: str) -> dict[str, Fraction]:
    """Parse ``c1*g1 + c2*g2 - g3`` into ``{label: coefficient}``."""
    text = text.strip()
    if text in ("", "0"):
        if text == "":
            raise ValueError("empty right-hand side")
        return {}
    out: dict[str, Fraction] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse term at {text[pos:]!r}")
        sgn, coeff, label = m.groups()
        if sgn is None and not first:
            raise ValueError(f"missing '+' or '-' before {label!r}")
        c = Fraction(coeff.strip("() ").replace(" ", "")) if coeff else Fraction(1)
        if sgn == "-":
            c = -c
        out[label] = out.get(label, Fraction(0)) + c
        pos = m.end()
        first = False
    return out


def parse_text(text: str, path: str | None = None) -> AlgebraFile:
    name = None
    even: list[str] | None = None
    odd: list[str] | None = None
    marks: list[str] | None = None
    raw_brackets: list[tuple[int, str, str, dict[str, Fraction]]] = []
    expectations: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(None, 1)[0]
        rest = line[len(head):].strip()
        if head == "algebra":
            if not rest:
                raise ParseError("algebra needs a name", lineno, path)
            name = rest
        elif head in ("even", "odd", "generators"):
            labels = rest.split()
            for lab in labels:
                if not re.fullmatch(LABEL, lab):
                    raise ParseError(f"bad label {lab!r}", lineno, path)
            if head == "even":
                even = labels
            elif head == "odd":
                odd = labels
            else:
                marks = labels
        elif head == "expect":
            m = _EXPECT_RE.match(line)
            if not m:
                raise ParseError("expected 'expect KEY = VALUE'", lineno, path)
            expectations[m.group(1)] = m.group(2).strip()
        elif line.startswith("["):
            m = _BRACKET_RE.match(line)
            if not m:
                raise ParseError(f"cannot parse bracket line {line!r}", lineno, path)
            a, b, rhs = m.groups()
            try:
                coords = parse_expression(rhs)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, path) from None
            raw_brackets.append((lineno, a, b, coords))
        else:
            raise ParseError(f"unknown statement {head!r}", lineno, path)
    if name is None:
        raise ParseError("missing 'algebra NAME' line", None, path)
    even = even or []
    odd = odd or []
    labels = set(even) | set(odd)
    if len(labels) != len(even) + len(odd):
        raise ParseError("duplicate basis label", None, path)
    nev = len(even)
    index = {lab: i for i, lab in enumerate(even + odd)}
    seen: dict[frozenset, int] = {}
    brackets = {}
    for lineno, a, b, coords in raw_brackets:
        for lab in (a, b, *coords):
            if lab not in labels:
                raise UnknownLabel(f"unknown label {lab!r}", lineno, path)
        key = frozenset((a, b))
        if key in seen:
            raise DuplicateBracket(f"bracket [{a},{b}] already given on line {seen[key]}", lineno, path)
        seen[key] = lineno
        target = (int(index[a] >= nev) + int(index[b] >= nev)) % 2
        for lab, c in coords.items():
            if c and int(index[lab] >= nev) != target:
                raise ParityMismatch(
                    f"[{a},{b}] must be {'odd' if target else 'even'} but contains {lab}", lineno, path
                )
        if a == b and index[a] < nev and any(coords.values()):
            raise ParseError(f"[{a},{a}] must vanish for an even element", lineno, path)
        brackets[(a, b)] = coords
    algebra = SuperAlgebra.from_brackets(name, even, odd, brackets, marks)
    return AlgebraFile(path, algebra, expectations)


def parse(path) -> AlgebraFile:
    p = Path(path)
    return parse_text(p.read_text(encoding="utf-8"), str(p))



def load_bundled(name: str) -> SuperAlgebra:
    """One of the tables shipped in ``superlie/corpus``, by file stem (``"n1"``)."""
    path = resources.files("superlie") / "corpus" / f"{name}.sla"
    if not path.is_file():
        raise FileNotFoundError(f"no bundled table named {name!r}")
    return parse(Path(str(path))).algebra

def _format_coeff(c: Fraction, label: str) -> str:
    if c == 1:
        return label
    if c == -1:
        return f"-{label}"
    return f"{c}*{label}"


def format_expression(a: SuperAlgebra, coords: dict[int, Fraction]) -> str:
    parts = []
    for k, c in sorted(coords.items()):
        term = _format_coeff(c, a.labels[k])
        if parts:
            parts.append(f"- {term[1:]}" if term.startswith("-") else f"+ {term}")
        else:
            parts.append(term)
    return " ".join(parts) if parts else "0"


def serialize(a: SuperAlgebra, expectations: dict[str, str] | None = None, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"algebra {a.name}")
    lines.append("even " + " ".join(a.even) if a.even else "even")
    lines.append("odd " + " ".join(a.odd) if a.odd else "odd")
    if a.generator_marks:
        lines.append("generators " + " ".join(a.generator_marks))
    for (i, j), coords in a.table.items():
        if i < a.n <= j:
            # mixed brackets read better as [odd, even]; the mirror flips the sign
            i, j = j, i
            coords = {k: -c for k, c in coords.items()}
        lines.append(f"[{a.labels[i]},{a.labels[j]}] = {format_expression(a, coords)}")
    for key, value in (expectations or {}).items():
        lines.append(f"expect {key} = {value}")
    return "\n".join(lines) + "\n"


def write(path, a: SuperAlgebra, expectations: dict[str, str] | None = None, comment: str | None = None) -> None:
    Path(path).write_text(serialize(a, expectations, comment), encoding="utf-8")
