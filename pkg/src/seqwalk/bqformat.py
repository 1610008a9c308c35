"""The ``.bq`` input format: parser with line diagnostics and a writer.

Grammar, one directive per line, ``#`` starts a comment::

    quiver <name>
    points <id> <id> ...
    arrow <name> <source> <target>
    rel <expr>            # e.g.  2*a1*a2 - 1/3*b1*b2
    truncate <N>          # optional, default: longest branch + 2
    field <p>             # optional, default: 0 (exact rationals)

Relation expressions are sums of terms; a term is an optional scalar followed
by ``*``-separated arrow names.  Every branch must be a composable path of
length at least two, and all branches of one relation must be parallel.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import MixedEndpoints, ParseError, RelationBranchTooShort
from .quiver import Arrow, BoundQuiver, RelationExpr

_SCALAR_CHARS = set("0123456789/")


def _parse_relation_expr(text: str, line: int) -> RelationExpr:
    s = text.strip()
    if not s:
        raise ParseError("empty relation expression", line=line)
    terms = []
    for piece in re.split(r"(?=[+-])", s):
        piece = piece.strip()
        if not piece:
            continue
        sign = 1
        if piece[0] in "+-":
            sign = -1 if piece[0] == "-" else 1
            piece = piece[1:].strip()
            if not piece:
                raise ParseError("dangling sign in relation", line=line)
        factors = [f.strip() for f in piece.split("*")]
        if any(not f for f in factors):
            raise ParseError(f"empty factor in term {piece!r}", line=line)
        coeff = Fraction(sign)
        names = factors
        if set(factors[0]) <= _SCALAR_CHARS:
            try:
                coeff = Fraction(factors[0]) * sign
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad scalar {factors[0]!r}", line=line) from None
            names = factors[1:]
        if not names:
            raise ParseError(f"term {piece!r} has no arrows", line=line)
        terms.append((coeff, tuple(names)))
    if not terms:
        raise ParseError("empty relation expression", line=line)
    return RelationExpr(tuple(terms))


def parse(text: str, name: str = "quiver") -> BoundQuiver:
    """Parse ``.bq`` text into a validated bound quiver."""
    quiver_name = name
    points: list[str] = []
    arrows: list[Arrow] = []
    relations: list[tuple[int, RelationExpr]] = []
    truncate = None
    field_char = 0
    seen_points = set()
    seen_arrows = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.split("#", 1)[0].strip()
        if not stmt:
            continue
        parts = stmt.split()
        head, rest = parts[0], parts[1:]
        if head == "quiver":
            if len(rest) != 1:
                raise ParseError("quiver directive takes one name", line=lineno)
            quiver_name = rest[0]
        elif head == "points":
            if not rest:
                raise ParseError("points directive needs identifiers", line=lineno)
            for p in rest:
                if p in seen_points:
                    raise ParseError(f"duplicate point {p!r}", line=lineno)
                seen_points.add(p)
                points.append(p)
        elif head == "arrow":
            if len(rest) != 3:
                raise ParseError("arrow directive needs name, source, target", line=lineno)
            nm, src, tgt = rest
            if nm in seen_arrows:
                raise ParseError(f"duplicate arrow {nm!r}", line=lineno)
            if src not in seen_points or tgt not in seen_points:
                raise ParseError(f"arrow {nm!r} references undeclared point", line=lineno)
            seen_arrows.add(nm)
            arrows.append(Arrow(nm, src, tgt))
        elif head == "rel":
            rel = _parse_relation_expr(stmt[3:].strip(), lineno)
            _check_relation(rel, arrows, lineno)
            relations.append((lineno, rel))
        elif head == "truncate":
            if len(rest) != 1 or not rest[0].isdigit():
                raise ParseError("truncate directive needs one integer", line=lineno)
            truncate = int(rest[0])
        elif head == "field":
            if len(rest) != 1 or not rest[0].isdigit():
                raise ParseError("field directive needs one integer", line=lineno)
            field_char = int(rest[0])
        else:
            raise ParseError(f"unknown directive {head!r}", line=lineno)
    if not points:
        raise ParseError("no points declared", line=1)
    longest = max(
        (len(br) for _, rel in relations for _, br in rel.terms), default=0
    )
    if truncate is None:
        truncate = max(2, longest + 2)
    try:
        return BoundQuiver(
            quiver_name,
            points,
            arrows,
            [rel for _, rel in relations],
            truncation=truncate,
            field_char=field_char,
        )
    except (RelationBranchTooShort, MixedEndpoints, ValueError) as exc:
        raise ParseError(str(exc)) from None


def _check_relation(rel: RelationExpr, arrows: list[Arrow], lineno: int) -> None:
    byname = {a.name: a for a in arrows}
    endpoints = None
    for _, branch in rel.terms:
        if len(branch) < 2:
            raise ParseError(
                f"relation branch {'*'.join(branch)} shorter than two", line=lineno
            )
        prev = None
        for name in branch:
            if name not in byname:
                raise ParseError(f"unknown arrow {name!r} in relation", line=lineno)
            arr = byname[name]
            if prev is not None and prev.target != arr.source:
                raise ParseError(
                    f"branch {'*'.join(branch)} does not compose", line=lineno
                )
            prev = arr
        ends = (byname[branch[0]].source, byname[branch[-1]].target)
        if endpoints is None:
            endpoints = ends
        elif endpoints != ends:
            raise ParseError("relation branches are not parallel", line=lineno)


def parse_file(path) -> BoundQuiver:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def _render_fraction(c: Fraction) -> str:
    return str(c)


def emit(q: BoundQuiver, explicit_truncate: bool = True) -> str:
    """Write a bound quiver back out in the input format (round-trippable)."""
    lines = [f"quiver {q.name}"]
    lines.append("points " + " ".join(q.points))
    for a in q.arrows:
        lines.append(f"arrow {a.name} {a.source} {a.target}")
    for rel in q.relations:
        parts = []
        for i, (coeff, branch) in enumerate(rel.terms):
            neg = coeff < 0
            mag = -coeff if neg else coeff
            body = "*".join(branch)
            if mag != 1:
                body = f"{_render_fraction(mag)}*{body}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        lines.append("rel " + " ".join(parts))
    if explicit_truncate:
        lines.append(f"truncate {q.truncation}")
    if q.field_char:
        lines.append(f"field {q.field_char}")
    return "\n".join(lines) + "\n"


def parse_module_spec(text: str):
    """Parse a module address: simple:x | proj:x | inj:x | string:<walk tokens>."""
    if ":" not in text:
        raise ParseError(f"module spec {text!r} needs kind:argument")
    kind, arg = text.split(":", 1)
    kind = kind.strip()
    arg = arg.strip()
    if kind not in ("simple", "proj", "inj", "string"):
        raise ParseError(f"unknown module kind {kind!r}")
    if not arg:
        raise ParseError("empty module argument")
    return kind, arg
