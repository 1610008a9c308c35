"""Exact linear algebra in the truncated path algebra.

The quotient is computed inside the truncation at length ``N + g_max`` where
``N`` is the quiver's truncation bound and ``g_max`` the longest relation
branch.  The span of all two-sided products of the relation generators,
truncated at that length, is exactly the image of the ideal there.  For an
admissible ideal (every path of length ``N`` falls into that span), reading
the span off below length ``N`` yields the ideal intersected with the short
paths, hence the quotient algebra.  Membership, top relations and structure
constants all come from canonical reduced row echelon spans per
(source, target) block, so every representative choice is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EndpointMismatch,
    MixedEndpoints,
    NotAdmissible,
    NotInIdeal,
    PathExplosion,
    TooManyTerms,
)
from .fields import Field
from .linalg import RowSpan
from .quiver import BoundQuiver, Path


def path_key(p: Path) -> tuple:
    return (len(p.arrows), p.arrows)


@dataclass(frozen=True)
class LinComb:
    """A linear combination of parallel paths with nonzero coefficients.

    Terms are kept sorted by (length, arrow indices), so equal combinations
    compare equal.  The zero combination has no terms but remembers its
    endpoints.
    """

    source: str
    target: str
    terms: tuple[tuple[Path, object], ...]

    @staticmethod
    def make(field: Field, items, source=None, target=None) -> "LinComb":
        acc: dict[Path, object] = {}
        for path, coeff in items:
            if source is None:
                source, target = path.source, path.target
            elif (path.source, path.target) != (source, target):
                raise MixedEndpoints(
                    f"path {path.source}->{path.target} does not match "
                    f"block {source}->{target}"
                )
            acc[path] = field.add(acc.get(path, field.zero), coeff)
        terms = tuple(
            (p, c) for p, c in sorted(acc.items(), key=lambda kv: path_key(kv[0]))
            if not field.is_zero(c)
        )
        if source is None:
            raise ValueError("cannot infer endpoints of an empty combination")
        return LinComb(source, target, terms)

    @staticmethod
    def from_path(field: Field, p: Path, coeff=None) -> "LinComb":
        return LinComb(p.source, p.target, ((p, coeff if coeff is not None else field.one),))

    @staticmethod
    def zero(source: str, target: str) -> "LinComb":
        return LinComb(source, target, ())

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def paths(self) -> tuple[Path, ...]:
        return tuple(p for p, _ in self.terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1


class TruncatedAlgebra:
    """The bound quiver algebra, truncated and row-reduced per block.

    Build with :meth:`build`; check :attr:`is_admissible` before trusting the
    quotient data.  All public views (bases, top relations, normal forms) are
    deterministic in the quiver's declaration order.
    """

    DEFAULT_PATH_CAP = 200_000

    def __init__(self, quiver: BoundQuiver, path_cap: int = DEFAULT_PATH_CAP):
        self.quiver = quiver
        self.field = Field(quiver.field_char)
        self.N = quiver.truncation
        self.g_max = max(
            (len(br) for rel in quiver.relations for _, br in rel.terms), default=0
        )
        self.T = self.N + self.g_max
        self._path_cap = path_cap
        self._enumerate_paths()
        self._generators = self._coerce_relations()
        self._build_spans()
        self.is_admissible = self._check_admissible()
        self._quotient_data()
        self._top_cache = None
        self._opposite_cache = None
        self._mult_cache: dict[tuple, LinComb] = {}

    @staticmethod
    def build(quiver: BoundQuiver, path_cap: int = DEFAULT_PATH_CAP) -> "TruncatedAlgebra":
        return TruncatedAlgebra(quiver, path_cap=path_cap)

    # -- construction -------------------------------------------------------

    def _enumerate_paths(self):
        q = self.quiver
        self.paths_by_block: dict[tuple[str, str], list[Path]] = {
            (x, y): [] for x in q.points for y in q.points
        }
        count = 0
        frontier = [q.trivial_path(x) for x in q.points]
        for p in frontier:
            self.paths_by_block[(p.source, p.target)].append(p)
        count = len(frontier)
        for _ in range(self.T):
            nxt = []
            for p in frontier:
                for ai in q.out_arrows[p.target]:
                    np = Path(p.source, p.arrows + (ai,), q.arrows[ai].target)
                    nxt.append(np)
                    self.paths_by_block[(np.source, np.target)].append(np)
            count += len(nxt)
            if count > self._path_cap:
                raise PathExplosion(
                    f"more than {self._path_cap} paths up to length {self.T}"
                )
            if not nxt:
                break
            frontier = nxt
        # coordinate order: longest first, then arrow indices; this makes the
        # rows supported on any "length <= m" tail block detectable by pivot
        self.coords: dict[tuple[str, str], list[Path]] = {}
        self.coord_index: dict[tuple[str, str], dict[Path, int]] = {}
        for block, paths in self.paths_by_block.items():
            ordered = sorted(paths, key=lambda p: (-len(p.arrows), p.arrows))
            self.coords[block] = ordered
            self.coord_index[block] = {p: i for i, p in enumerate(ordered)}

    def _coerce_relations(self) -> list[LinComb]:
        q, f = self.quiver, self.field
        gens = []
        for rel in q.relations:
            items = [(q.path(branch), f.coerce(c)) for c, branch in rel.terms]
            gens.append(LinComb.make(f, items))
        return gens

    def _vectorize(self, e: LinComb) -> list:
        block = (e.source, e.target)
        idx = self.coord_index[block]
        vec = [self.field.zero] * len(self.coords[block])
        for p, c in e.terms:
            if p not in idx:
                raise EndpointMismatch(f"path of length {len(p)} beyond truncation {self.T}")
            vec[idx[p]] = c
        return vec

    def _devectorize(self, block, vec) -> LinComb:
        items = [
            (p, c)
            for p, c in zip(self.coords[block], vec)
            if not self.field.is_zero(c)
        ]
        return LinComb.make(self.field, items, source=block[0], target=block[1])

    def _build_spans(self):
        """Spans of the truncated ideal and of its one-sided padded part.

        The ideal span is closed off from the generators by repeatedly
        multiplying newly independent vectors by single arrows on both sides
        (truncating overlong paths).  The padded span is then one more round
        of single-arrow multiplications applied to the final ideal rows,
        which spans all strictly padded products by linearity.
        """
        f, q = self.field, self.quiver
        self.ideal_span: dict[tuple, RowSpan] = {}
        self.j_span: dict[tuple, RowSpan] = {}
        for block, ordered in self.coords.items():
            self.ideal_span[block] = RowSpan(f, len(ordered))
            self.j_span[block] = RowSpan(f, len(ordered))
        queue: list[tuple[tuple, list]] = []
        for g in self._generators:
            block = (g.source, g.target)
            vec = self._vectorize(g)
            if self.ideal_span[block].add(vec[:]):
                queue.append((block, vec))
        while queue:
            block, vec = queue.pop()
            for nblock, nvec in self._arrow_shifts(block, vec):
                if self.ideal_span[nblock].add(nvec[:]):
                    queue.append((nblock, nvec))
        for block, span in self.ideal_span.items():
            for row in span.rows:
                for nblock, nvec in self._arrow_shifts(block, row):
                    self.j_span[nblock].add(nvec)

    def _arrow_shifts(self, block, vec):
        """All single-arrow left and right multiples of a block vector."""
        f, q = self.field, self.quiver
        x, y = block
        ordered = self.coords[block]
        out = []
        for ai in q.in_arrows[x]:
            arr = q.arrows[ai]
            nblock = (arr.source, y)
            idx = self.coord_index[nblock]
            nvec = [f.zero] * len(self.coords[nblock])
            any_term = False
            for p, c in zip(ordered, vec):
                if f.is_zero(c) or len(p) + 1 > self.T:
                    continue
                np = Path(arr.source, (ai,) + p.arrows, p.target)
                nvec[idx[np]] = c
                any_term = True
            if any_term:
                out.append((nblock, nvec))
        for ai in q.out_arrows[y]:
            arr = q.arrows[ai]
            nblock = (x, arr.target)
            idx = self.coord_index[nblock]
            nvec = [f.zero] * len(self.coords[nblock])
            any_term = False
            for p, c in zip(ordered, vec):
                if f.is_zero(c) or len(p) + 1 > self.T:
                    continue
                np = Path(p.source, p.arrows + (ai,), arr.target)
                nvec[idx[np]] = c
                any_term = True
            if any_term:
                out.append((nblock, nvec))
        return out

    def _check_admissible(self) -> bool:
        for block, ordered in self.coords.items():
            span = self.ideal_span[block]
            for i, p in enumerate(ordered):
                if len(p) == self.N:
                    vec = [self.field.zero] * len(ordered)
                    vec[i] = self.field.one
                    if not span.contains(vec):
                        return False
        return True

    def _first_coord_of_len_below(self, block, bound: int) -> int:
        """Index of the first coordinate with path length < bound."""
        ordered = self.coords[block]
        for i, p in enumerate(ordered):
            if len(p) < bound:
                return i
        return len(ordered)

    def _quotient_data(self):
        """Quotient bases: short paths not pivotal in the short part of the span."""
        self.basis: dict[tuple, list[Path]] = {}
        self.basis_index: dict[tuple, dict[Path, int]] = {}
        for block, ordered in self.coords.items():
            cut = self._first_coord_of_len_below(block, self.N)
            pivots = {
                p for p in self.ideal_span[block].pivots if p >= cut
            }
            qb = [p for i, p in enumerate(ordered) if i >= cut and i not in pivots]
            qb.sort(key=path_key)
            self.basis[block] = qb
            self.basis_index[block] = {p: i for i, p in enumerate(qb)}

    # -- queries -------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return sum(len(b) for b in self.basis.values())

    @property
    def generators(self) -> tuple[LinComb, ...]:
        return tuple(self._generators)

    def block_dimension(self, x: str, y: str) -> int:
        return len(self.basis[(x, y)])

    def verify_admissible(self) -> bool:
        return self.is_admissible

    def _require_admissible(self):
        if not self.is_admissible:
            raise NotAdmissible(
                f"ideal is not admissible at truncation {self.N}"
            )

    def contains(self, e: LinComb) -> bool:
        """Ideal membership for combinations supported below the truncation."""
        if e.is_zero:
            return True
        return self.ideal_span[(e.source, e.target)].contains(self._vectorize(e))

    def path_in_ideal(self, p: Path) -> bool:
        if len(p) >= self.N:
            return True
        return self.contains(LinComb.from_path(self.field, p))

    def normal_form(self, e: LinComb) -> LinComb:
        """Canonical representative of ``e``'s class in the quotient."""
        f = self.field
        short = LinComb.make(
            f,
            [(p, c) for p, c in e.terms if len(p) < self.N],
            source=e.source,
            target=e.target,
        )
        if short.is_zero:
            return short
        block = (e.source, e.target)
        vec = self.ideal_span[block].reduce(self._vectorize(short))
        return self._devectorize(block, vec)

    def multiply_paths(self, p: Path, s: Path) -> LinComb:
        """Product of two quotient classes given by paths (normal form)."""
        if p.target != s.source:
            raise EndpointMismatch(f"{p.target} != {s.source}")
        key = (p, s)
        cached = self._mult_cache.get(key)
        if cached is not None:
            return cached
        if len(p) + len(s) >= self.N:
            out = LinComb.zero(p.source, s.target)
        else:
            joined = Path(p.source, p.arrows + s.arrows, s.target)
            out = self.normal_form(LinComb.from_path(self.field, joined))
        self._mult_cache[key] = out
        return out

    def right_multiplication_matrix(self, x: str, y: str, arrow_idx: int):
        """Matrix of ``- * arrow`` from basis (x, y) to basis (x, z), rows = target."""
        arr = self.quiver.arrows[arrow_idx]
        if arr.source != y:
            raise EndpointMismatch(f"arrow {arr.name} does not start at {y}")
        z = arr.target
        src_basis = self.basis[(x, y)]
        tgt_index = self.basis_index[(x, z)]
        f = self.field
        mat = [[f.zero] * len(src_basis) for _ in range(len(tgt_index))]
        step = Path(y, (arrow_idx,), z)
        for j, p in enumerate(src_basis):
            prod = self.multiply_paths(p, step)
            for pp, c in prod.terms:
                mat[tgt_index[pp]][j] = c
        return mat

    # -- top relations ---------------------------------------------------------

    def top_relations(self) -> tuple[LinComb, ...]:
        """Canonical representatives of the minimal generators of the ideal.

        Per block, the span of padded products (the ideal) is compared with
        the span of the strictly padded ones; echelon representatives of the
        complement, restricted to lengths at most ``N``, are returned in
        block order.
        """
        self._require_admissible()
        if self._top_cache is not None:
            return self._top_cache
        out = []
        for x in self.quiver.points:
            for y in self.quiver.points:
                block = (x, y)
                ordered = self.coords[block]
                cut = self._first_coord_of_len_below(block, self.N + 1)
                i_rows = [
                    row
                    for row, piv in zip(
                        self.ideal_span[block].rows, self.ideal_span[block].pivots
                    )
                    if piv >= cut
                ]
                j_rows = [
                    row
                    for row, piv in zip(
                        self.j_span[block].rows, self.j_span[block].pivots
                    )
                    if piv >= cut
                ]
                work = RowSpan(self.field, len(ordered))
                for row in j_rows:
                    work.add(row[:])
                taken = []
                for row in i_rows:
                    red = work.reduce(row)
                    if any(not self.field.is_zero(c) for c in red):
                        taken.append(red)
                        work.add(red)
                canon = RowSpan(self.field, len(ordered))
                for row in taken:
                    canon.add(row)
                for row in canon.rows:
                    out.append(self._devectorize(block, row))
        self._top_cache = tuple(out)
        return self._top_cache

    def is_monomial_relation(self, r: LinComb) -> bool:
        if r.is_zero:
            raise ValueError("zero is not a relation")
        return r.is_monomial

    def is_minimal_relation(self, r: LinComb, term_cap: int = 16) -> bool:
        """No nonempty proper subset of the terms sums into the ideal."""
        if not self.contains(r):
            raise NotInIdeal("element is not in the ideal")
        m = len(r.terms)
        if m < 2:
            raise ValueError("minimality needs at least two terms")
        if m > term_cap:
            raise TooManyTerms(f"{m} terms exceeds cap {term_cap}")
        terms = list(r.terms)
        for mask in range(1, (1 << m) - 1):
            subset = [terms[i] for i in range(m) if mask >> i & 1]
            sub = LinComb.make(self.field, subset, source=r.source, target=r.target)
            if self.contains(sub):
                return False
        return True

    def render(self, e: LinComb) -> str:
        """Canonical string like ``a1*a2 + 2/3*b1*b2 - c*d``."""
        if e.is_zero:
            return "0"
        f = self.field
        parts = []
        for i, (p, c) in enumerate(e.terms):
            mono = self.quiver.path_name(p)
            neg = f.char == 0 and c < 0
            mag = -c if neg else c
            text = mono if mag == f.one else f"{f.render(mag)}*{mono}"
            if i == 0:
                parts.append(("-" if neg else "") + text)
            else:
                parts.append(("- " if neg else "+ ") + text)
        return " ".join(parts)

    def opposite(self) -> "TruncatedAlgebra":
        if self._opposite_cache is None:
            self._opposite_cache = TruncatedAlgebra(
                self.quiver.opposite(), path_cap=self._path_cap
            )
        return self._opposite_cache

    def reverse_path(self, p: Path) -> Path:
        """The same path seen in the opposite quiver."""
        return Path(p.target, tuple(reversed(p.arrows)), p.source)


def build_auto(quiver: BoundQuiver, n_cap: int = 12, explicit: bool = False,
               path_cap: int = TruncatedAlgebra.DEFAULT_PATH_CAP) -> TruncatedAlgebra:
    """Build the algebra, raising the truncation until admissibility holds.

    With ``explicit=True`` the quiver's own bound is used as-is and failure is
    an error.  Otherwise bounds from the quiver's value up to ``n_cap`` are
    tried in order.
    """
    first = TruncatedAlgebra.build(quiver, path_cap=path_cap)
    if first.is_admissible:
        return first
    if explicit:
        raise NotAdmissible(
            f"ideal is not admissible at the requested truncation {quiver.truncation}"
        )
    for n in range(quiver.truncation + 1, n_cap + 1):
        alg = TruncatedAlgebra.build(quiver.with_truncation(n), path_cap=path_cap)
        if alg.is_admissible:
            return alg
    raise NotAdmissible(f"ideal is not admissible for any truncation up to {n_cap}")
