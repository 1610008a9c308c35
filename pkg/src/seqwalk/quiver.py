"""Quivers, paths, and walks.

A :class:`BoundQuiver` is a finite directed multigraph with named arrows, a
list of relation expressions, a truncation bound and a ground field
characteristic.  Paths are directed; walks mix arrows and formal inverses.
Walk letters are ``(arrow index, sign)`` pairs with sign +1 for the arrow and
-1 for its inverse.  All values are immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import MixedEndpoints, ParseError, RelationBranchTooShort


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A directed path: a source point and a composable arrow index tuple.

    The empty tuple is the trivial path at ``source``.
    """

    source: str
    arrows: tuple[int, ...]
    target: str

    def __len__(self):
        return len(self.arrows)


@dataclass(frozen=True)
class Walk:
    """A nontrivial walk: a nonempty tuple of (arrow index, sign) letters."""

    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("walks must be nontrivial; use Path for trivial paths")

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class RelationExpr:
    """A parsed relation: coefficient and arrow-name tuple per branch."""

    terms: tuple[tuple[Fraction, tuple[str, ...]], ...]


_NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


class BoundQuiver:
    """A bound quiver: points, arrows, relation generators, truncation bound.

    Instances are immutable by convention; every derived structure treats the
    quiver as read-only.  Points and arrows keep their declaration order,
    which fixes all downstream enumeration orders.
    """

    def __init__(self, name, points, arrows, relations=(), truncation=2, field_char=0):
        self.name = str(name)
        self.points = tuple(str(p) for p in points)
        self.arrows = tuple(arrows)
        self.relations = tuple(relations)
        self.truncation = int(truncation)
        self.field_char = int(field_char)
        self._validate()
        self.point_index = {p: i for i, p in enumerate(self.points)}
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        self.out_arrows = {p: [] for p in self.points}
        self.in_arrows = {p: [] for p in self.points}
        for i, a in enumerate(self.arrows):
            self.out_arrows[a.source].append(i)
            self.in_arrows[a.target].append(i)

    def _validate(self):
        if not self.points:
            raise ValueError("quiver needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate point identifiers")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        pointset = set(self.points)
        for a in self.arrows:
            if a.source not in pointset or a.target not in pointset:
                raise ValueError(f"arrow {a.name} has undeclared endpoint")
            if not _NAME_RE.match(a.name):
                raise ValueError(f"bad arrow name {a.name!r}")
        if self.truncation < 2:
            raise ValueError("truncation bound must be at least 2")
        for rel in self.relations:
            self._validate_relation(rel)

    def _validate_relation(self, rel: RelationExpr):
        if not rel.terms:
            raise ValueError("empty relation")
        endpoints = None
        byname = {a.name: a for a in self.arrows}
        for coeff, branch in rel.terms:
            if coeff == 0:
                raise ValueError("zero coefficient in relation")
            if len(branch) < 2:
                raise RelationBranchTooShort(
                    f"relation branch {'*'.join(branch) or '(empty)'} shorter than two"
                )
            prev = None
            for name in branch:
                if name not in byname:
                    raise ValueError(f"unknown arrow {name!r} in relation")
                arr = byname[name]
                if prev is not None and prev.target != arr.source:
                    raise ValueError(f"branch {'*'.join(branch)} does not compose")
                prev = arr
            ends = (byname[branch[0]].source, byname[branch[-1]].target)
            if endpoints is None:
                endpoints = ends
            elif endpoints != ends:
                raise MixedEndpoints(
                    f"relation branches are not parallel: {endpoints} vs {ends}"
                )

    def __eq__(self, other):
        return (
            isinstance(other, BoundQuiver)
            and self.name == other.name
            and self.points == other.points
            and self.arrows == other.arrows
            and self.relations == other.relations
            and self.truncation == other.truncation
            and self.field_char == other.field_char
        )

    def __repr__(self):
        return (
            f"BoundQuiver({self.name!r}, {len(self.points)} points, "
            f"{len(self.arrows)} arrows, {len(self.relations)} relations)"
        )

    # -- paths ------------------------------------------------------------

    def trivial_path(self, point: str) -> Path:
        if point not in self.point_index:
            raise ValueError(f"unknown point {point!r}")
        return Path(point, (), point)

    def path(self, arrow_names) -> Path:
        """Path from a sequence of composable arrow names."""
        idxs = []
        for name in arrow_names:
            if name not in self.arrow_index:
                raise ValueError(f"unknown arrow {name!r}")
            idxs.append(self.arrow_index[name])
        if not idxs:
            raise ValueError("use trivial_path for the empty path")
        return self.path_from_indices(tuple(idxs))

    def path_from_indices(self, idxs: tuple[int, ...]) -> Path:
        arrows = self.arrows
        for a, b in zip(idxs, idxs[1:]):
            if arrows[a].target != arrows[b].source:
                raise ValueError("arrows do not compose")
        return Path(arrows[idxs[0]].source, tuple(idxs), arrows[idxs[-1]].target)

    def path_points(self, p: Path) -> list[str]:
        pts = [p.source]
        for i in p.arrows:
            pts.append(self.arrows[i].target)
        return pts

    def path_name(self, p: Path) -> str:
        if not p.arrows:
            return f"e_{p.source}"
        return "*".join(self.arrows[i].name for i in p.arrows)

    # -- walks ------------------------------------------------------------

    def letter_source(self, letter) -> str:
        idx, sign = letter
        a = self.arrows[idx]
        return a.source if sign > 0 else a.target

    def letter_target(self, letter) -> str:
        idx, sign = letter
        a = self.arrows[idx]
        return a.target if sign > 0 else a.source

    def walk(self, letters) -> Walk:
        letters = tuple((int(i), int(s)) for i, s in letters)
        for ltr in letters:
            if not 0 <= ltr[0] < len(self.arrows) or ltr[1] not in (1, -1):
                raise ValueError(f"bad letter {ltr}")
        for a, b in zip(letters, letters[1:]):
            if self.letter_target(a) != self.letter_source(b):
                raise ValueError("walk letters do not compose")
        return Walk(letters)

    def walk_from_tokens(self, tokens) -> Walk:
        """Build a walk from tokens like ``a1 a2 ~b2 ~b1`` (string or list)."""
        if isinstance(tokens, str):
            tokens = tokens.split()
        letters = []
        for tok in tokens:
            sign = 1
            name = tok
            if tok.startswith("~"):
                sign = -1
                name = tok[1:]
            if name not in self.arrow_index:
                raise ParseError(f"unknown arrow {name!r} in walk")
            letters.append((self.arrow_index[name], sign))
        if not letters:
            raise ParseError("empty walk")
        try:
            return self.walk(letters)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def walk_tokens(self, w) -> list[str]:
        letters = w.letters if isinstance(w, Walk) else tuple(w)
        return [
            ("" if s > 0 else "~") + self.arrows[i].name for i, s in letters
        ]

    def opposite(self) -> "BoundQuiver":
        """The opposite quiver: arrows and relation branches reversed."""
        arrows = tuple(Arrow(a.name, a.target, a.source) for a in self.arrows)
        relations = tuple(
            RelationExpr(tuple((c, tuple(reversed(br))) for c, br in rel.terms))
            for rel in self.relations
        )
        return BoundQuiver(
            self.name + "_op", self.points, arrows, relations,
            self.truncation, self.field_char,
        )

    def with_truncation(self, n: int) -> "BoundQuiver":
        return BoundQuiver(
            self.name, self.points, self.arrows, self.relations, n, self.field_char
        )


# -- walk predicates (pure functions on letters) ---------------------------


def _letters(w) -> tuple[tuple[int, int], ...]:
    return w.letters if isinstance(w, Walk) else tuple(w)


def is_reduced(w) -> bool:
    """No immediate cancellation: never the same arrow with flipped signs."""
    letters = _letters(w)
    for (i1, s1), (i2, s2) in zip(letters, letters[1:]):
        if i1 == i2 and s1 == -s2:
            return False
    return True


def is_zigzag(w) -> bool:
    """Signs strictly alternate along the walk."""
    letters = _letters(w)
    return all(s1 != s2 for (_, s1), (_, s2) in zip(letters, letters[1:]))


def inverse(w):
    """Formal inverse: reversed letters with flipped signs."""
    letters = tuple((i, -s) for i, s in reversed(_letters(w)))
    return Walk(letters) if isinstance(w, Walk) else letters


def same_direction(u, v) -> bool:
    """Both all-forward or both all-inverse."""
    lu, lv = _letters(u), _letters(v)
    if not lu or not lv:
        return False
    su = {s for _, s in lu}
    sv = {s for _, s in lv}
    return len(su) == 1 and su == sv


def walk_source(q: BoundQuiver, w) -> str:
    return q.letter_source(_letters(w)[0])


def walk_target(q: BoundQuiver, w) -> str:
    return q.letter_target(_letters(w)[-1])


def walk_points(q: BoundQuiver, w) -> list[str]:
    """The visited points in order, with multiplicity (length + 1 entries)."""
    letters = _letters(w)
    pts = [q.letter_source(letters[0])]
    for ltr in letters:
        pts.append(q.letter_target(ltr))
    return pts


def walk_arrow_set(w) -> set[int]:
    return {i for i, _ in _letters(w)}


def directed_runs(w) -> list[tuple[int, int, int]]:
    """Maximal constant-sign letter intervals as (start, end, sign), inclusive."""
    letters = _letters(w)
    runs = []
    start = 0
    for i in range(1, len(letters)):
        if letters[i][1] != letters[start][1]:
            runs.append((start, i - 1, letters[start][1]))
            start = i
    runs.append((start, len(letters) - 1, letters[start][1]))
    return runs


def run_path(q: BoundQuiver, letters, start: int, end: int) -> Path:
    """Underlying forward path of the constant-sign interval [start, end]."""
    seg = letters[start : end + 1]
    sign = seg[0][1]
    idxs = tuple(i for i, _ in seg) if sign > 0 else tuple(i for i, _ in reversed(seg))
    return q.path_from_indices(idxs)


def directed_subpaths(q: BoundQuiver, w) -> list[Path]:
    """All directed subpaths of the walk or of its inverse.

    Every contiguous sub-run of every maximal constant-sign run, reported as
    the underlying forward path.  Deduplicated, ordered by (length, position
    of first occurrence).
    """
    letters = _letters(w)
    seen: dict[Path, tuple[int, int]] = {}
    for rs, re_, _sign in directed_runs(letters):
        for a in range(rs, re_ + 1):
            for b in range(a, re_ + 1):
                p = run_path(q, letters, a, b)
                key = (len(p), a)
                if p not in seen or key < seen[p]:
                    seen[p] = key
    return [p for p, _ in sorted(seen.items(), key=lambda kv: kv[1])]
