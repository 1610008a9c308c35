"""Reductions: full subcategories, arrow cutting, and the standard reduction.

A reduction first drops points (passing to ``eAe`` for an idempotent ``e``)
and then drops arrows by factoring out the two-sided ideal they generate.
The arrow cut is verified semantically: the complement spanned by the
untouched basis elements must be closed under multiplication, which makes
the quotient split off and the section an algebra map.  The standard
reduction applies this recipe to a sequential walk certificate, collapsing
the interior into a zigzag of arrow classes and cutting the stray arrows
between its points (arrow classes used by the reduced relations are never
cut; the certificate's relations must survive into the quotient).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LinComb, TruncatedAlgebra
from .detector import SequentialWalkCertificate, _path_letters
from .errors import CutNotConsistent, EmptyPointSet, SegmentResidueZero
from .linalg import RowSpan, kernel_basis, mat_transpose, unit_vector
from .quiver import Arrow, BoundQuiver, Path, RelationExpr, Walk, run_path


@dataclass(frozen=True)
class BasisElement:
    source: str
    target: str
    degree: int
    rep: LinComb

    @property
    def is_idempotent(self) -> bool:
        return (
            self.source == self.target
            and self.rep.is_monomial
            and len(self.rep.paths[0]) == 0
        )


class BasedAlgebra:
    """An algebra given by structure constants over an explicit basis.

    Degree-0 elements are the orthogonal point idempotents; the span of the
    positive-degree elements is the radical.  Every element carries a
    representative in the ambient truncated algebra.
    """

    def __init__(self, ambient: TruncatedAlgebra, points, elements, products):
        self.ambient = ambient
        self.field = ambient.field
        self.points = tuple(points)
        self.elements: tuple[BasisElement, ...] = tuple(elements)
        self.products: dict[tuple[int, int], dict[int, object]] = products
        self.blocks: dict[tuple[str, str], list[int]] = {
            (x, y): [] for x in self.points for y in self.points
        }
        for i, el in enumerate(self.elements):
            self.blocks[(el.source, el.target)].append(i)
        self._radical_cache = None

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def block(self, x: str, y: str) -> list[int]:
        return self.blocks.get((x, y), [])

    def product(self, i: int, j: int) -> dict[int, object]:
        return self.products.get((i, j), {})

    def multiply_vectors(self, block_a, vec_a, block_b, vec_b):
        """Product of two block vectors as (block, vector), or None."""
        if block_a[1] != block_b[0]:
            return None
        f = self.field
        out_block = (block_a[0], block_b[1])
        out_idxs = self.block(*out_block)
        pos = {e: k for k, e in enumerate(out_idxs)}
        out = [f.zero] * len(out_idxs)
        for pa, ca in zip(self.block(*block_a), vec_a):
            if f.is_zero(ca):
                continue
            for pb, cb in zip(self.block(*block_b), vec_b):
                if f.is_zero(cb):
                    continue
                scale = f.mul(ca, cb)
                for k, c in self.product(pa, pb).items():
                    out[pos[k]] = f.add(out[pos[k]], f.mul(scale, c))
        return out_block, out

    # -- radical filtration --------------------------------------------------

    def radical_spans(self) -> list[dict]:
        """Per-block spans of rad, rad^2, ... until the zero power.

        Cached; callers must treat the returned spans as read-only.
        """
        if self._radical_cache is not None:
            return self._radical_cache
        f = self.field
        first: dict[tuple[str, str], RowSpan] = {}
        for block, idxs in self.blocks.items():
            if not idxs:
                continue
            span = RowSpan(f, len(idxs))
            for k, i in enumerate(idxs):
                if not self.elements[i].is_idempotent:
                    span.add(unit_vector(f, len(idxs), k))
            if span.rank:
                first[block] = span
        levels = [first]
        while levels[-1]:
            prev, base = levels[-1], levels[0]
            nxt: dict[tuple[str, str], RowSpan] = {}
            for block_a, span_a in prev.items():
                for block_b, span_b in base.items():
                    if block_a[1] != block_b[0]:
                        continue
                    for ra in span_a.rows:
                        for rb in span_b.rows:
                            res = self.multiply_vectors(block_a, ra, block_b, rb)
                            if res is None:
                                continue
                            ob, ov = res
                            if all(f.is_zero(c) for c in ov):
                                continue
                            tgt = nxt.setdefault(
                                ob, RowSpan(f, len(self.block(*ob)))
                            )
                            tgt.add(ov)
            nxt = {blk: sp for blk, sp in nxt.items() if sp.rank}
            if not nxt:
                break
            levels.append(nxt)
        self._radical_cache = levels
        return levels

    def assign_degrees(self) -> "BasedAlgebra":
        """Recompute basis degrees from the radical filtration."""
        levels = self.radical_spans()
        f = self.field
        new_elements = []
        for i, el in enumerate(self.elements):
            block = (el.source, el.target)
            idxs = self.block(*block)
            vec = unit_vector(f, len(idxs), idxs.index(i))
            degree = 0
            for d, level in enumerate(levels, start=1):
                span = level.get(block)
                if span is not None and span.contains(vec):
                    degree = d
                else:
                    break
            new_elements.append(BasisElement(el.source, el.target, degree, el.rep))
        return BasedAlgebra(self.ambient, self.points, new_elements, self.products)

    @property
    def radical_nilpotency(self) -> int:
        """Smallest n with rad^n = 0."""
        return max((el.degree for el in self.elements), default=0) + 1

    def verify(self) -> bool:
        """Idempotents orthogonal and complete, product associative,
        positive-degree span nilpotent (by construction of degrees)."""
        f = self.field
        idems = [i for i, el in enumerate(self.elements) if el.degree == 0]
        if sorted(self.elements[i].source for i in idems) != sorted(self.points):
            return False
        if not all(self.elements[i].is_idempotent for i in idems):
            return False
        for i in idems:
            for j in idems:
                prod = {k: v for k, v in self.product(i, j).items()
                        if not f.is_zero(v)}
                if prod != ({i: f.one} if i == j else {}):
                    return False
        n = len(self.elements)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self._fold(self.product(i, j), k, False) != \
                            self._fold(self.product(j, k), i, True):
                        return False
        return True

    def _fold(self, partial: dict[int, object], other: int, prefix: bool):
        f = self.field
        acc: dict[int, object] = {}
        for m, c in partial.items():
            table = self.product(other, m) if prefix else self.product(m, other)
            for t, c2 in table.items():
                acc[t] = f.add(acc.get(t, f.zero), f.mul(c, c2))
        return {k: v for k, v in acc.items() if not f.is_zero(v)}


def full_subcategory(a: TruncatedAlgebra, pts) -> BasedAlgebra:
    """The algebra ``eAe`` for ``e`` the sum of the chosen point idempotents."""
    a._require_admissible()
    chosen = set(pts)
    order = [p for p in a.quiver.points if p in chosen]
    if not order:
        raise EmptyPointSet("full subcategory needs at least one point")
    f = a.field
    elements, paths = [], []
    for x in order:
        for y in order:
            for p in a.basis[(x, y)]:
                elements.append(
                    BasisElement(x, y, 0 if len(p) == 0 else 1,
                                 LinComb.from_path(f, p))
                )
                paths.append(p)
    index = {p: i for i, p in enumerate(paths)}
    products: dict[tuple[int, int], dict[int, object]] = {}
    for i, p in enumerate(paths):
        for j, s in enumerate(paths):
            if p.target != s.source:
                continue
            prod = a.multiply_paths(p, s)
            entry = {index[pp]: c for pp, c in prod.terms if pp in index}
            if len(entry) != len(prod.terms):
                # a product escaping the chosen blocks cannot happen: the
                # quotient basis of a block is closed under normal forms
                raise AssertionError("product left the subcategory blocks")
            if entry:
                products[(i, j)] = entry
    return BasedAlgebra(a, order, elements, products).assign_degrees()


@dataclass(frozen=True)
class QuiverArrow:
    """One arrow of the ordinary quiver of a based algebra."""

    name: str
    source: str
    target: str
    vector: tuple  # coordinates in the source-target block
    seeded: bool


@dataclass(frozen=True)
class AlgebraQuiver:
    arrows: tuple[QuiverArrow, ...]

    def names(self) -> tuple[str, ...]:
        return tuple(arr.name for arr in self.arrows)

    def between(self, points) -> list[QuiverArrow]:
        pts = set(points)
        return [a for a in self.arrows if a.source in pts and a.target in pts]


def quiver_of(b: BasedAlgebra, seeds=()) -> AlgebraQuiver:
    """Arrows of the ordinary quiver: a basis of rad/rad^2 per block.

    ``seeds`` is a list of (block, vector, preferred name or None) triples
    seated first, in order; a seed vanishing modulo rad^2 and the earlier
    seeds raises SegmentResidueZero.  The completion takes the basis elements
    themselves in basis order, so representatives are reproducible.
    """
    f = b.field
    levels = b.radical_spans()
    rad2 = levels[1] if len(levels) > 1 else {}
    work: dict[tuple[str, str], RowSpan] = {}
    for block, idxs in b.blocks.items():
        if not idxs:
            continue
        span = RowSpan(f, len(idxs))
        r2 = rad2.get(block)
        if r2 is not None:
            for row in r2.rows:
                span.add(row[:])
        work[block] = span
    taken: set[str] = set()
    arrows: list[QuiverArrow] = []

    def fresh(name: str) -> str:
        while name in taken:
            name += "x"
        taken.add(name)
        return name

    for block, vec, preferred in seeds:
        if not work[block].add(list(vec)):
            raise SegmentResidueZero(
                f"segment class in block {block[0]}->{block[1]} is not an arrow"
            )
        name = preferred or _ambient_arrow_name(b, block, vec) \
            or f"z{block[0]}_{block[1]}"
        arrows.append(QuiverArrow(fresh(name), block[0], block[1],
                                  tuple(vec), True))
    for x in b.points:
        for y in b.points:
            block = (x, y)
            idxs = b.block(x, y)
            if not idxs or block not in work:
                continue
            span = work[block]
            for pos, i in enumerate(idxs):
                if b.elements[i].is_idempotent:
                    continue
                vec = unit_vector(f, len(idxs), pos)
                if not span.add(vec):
                    continue
                name = _ambient_arrow_name(b, block, vec) or f"z{x}_{y}"
                arrows.append(QuiverArrow(fresh(name), x, y, tuple(vec), False))
    return AlgebraQuiver(tuple(arrows))


def _ambient_arrow_name(b: BasedAlgebra, block, vec):
    """Original arrow name when the class is a single ambient arrow, else None."""
    f = b.field
    nonzero = [(i, c) for i, c in zip(b.block(*block), vec) if not f.is_zero(c)]
    if len(nonzero) != 1 or nonzero[0][1] != f.one:
        return None
    rep = b.elements[nonzero[0][0]].rep
    if rep.is_monomial and len(rep.paths[0]) == 1:
        return b.ambient.quiver.arrows[rep.paths[0].arrows[0]].name
    return None


def is_consistent_cut(q: BoundQuiver, relation: LinComb, cut_names) -> bool:
    """Whenever some branch meets the cut set, every branch must."""
    cut = set(cut_names)
    hits = [
        any(q.arrows[i].name in cut for i in br.arrows) for br in relation.paths
    ]
    return all(hits) or not any(hits)


def cut_arrows(b: BasedAlgebra, quiver: AlgebraQuiver, cut_names) -> BasedAlgebra:
    """Quotient by the two-sided ideal of the named arrows, split-verified."""
    return _cut_arrows_full(b, quiver, cut_names)[0]


def _cut_arrows_full(b: BasedAlgebra, quiver: AlgebraQuiver, cut_names):
    """The cut quotient plus a projector of block vectors onto kept coordinates."""
    f = b.field
    wanted = set(cut_names)
    cut = [arr for arr in quiver.arrows if arr.name in wanted]
    if len(cut) != len(wanted):
        missing = wanted - {arr.name for arr in quiver.arrows}
        raise ValueError(f"unknown arrows in cut: {sorted(missing)}")
    espan: dict[tuple[str, str], RowSpan] = {
        block: RowSpan(f, len(idxs)) for block, idxs in b.blocks.items() if idxs
    }
    queue = []
    for arr in cut:
        block = (arr.source, arr.target)
        vec = list(arr.vector)
        if espan[block].add(vec[:]):
            queue.append((block, vec))
    while queue:
        block, vec = queue.pop()
        for other_block, idxs in b.blocks.items():
            if not idxs:
                continue
            for pos in range(len(idxs)):
                unit = unit_vector(f, len(idxs), pos)
                if other_block[0] == block[1]:
                    res = b.multiply_vectors(block, vec, other_block, unit)
                    if res is not None:
                        ob, ov = res
                        if any(not f.is_zero(c) for c in ov) \
                                and espan[ob].add(ov[:]):
                            queue.append((ob, ov))
                if other_block[1] == block[0]:
                    res = b.multiply_vectors(other_block, unit, block, vec)
                    if res is not None:
                        ob, ov = res
                        if any(not f.is_zero(c) for c in ov) \
                                and espan[ob].add(ov[:]):
                            queue.append((ob, ov))
    keep: list[int] = []
    for block, idxs in b.blocks.items():
        pivots = set(espan[block].pivots) if block in espan else set()
        for pos, i in enumerate(idxs):
            if pos not in pivots:
                keep.append(i)
    keep.sort()
    keep_set = set(keep)
    for i in keep:
        for j in keep:
            for k, c in b.product(i, j).items():
                if k not in keep_set and not f.is_zero(c):
                    raise CutNotConsistent(
                        "complement is not closed under multiplication"
                    )
    renum = {i: n for n, i in enumerate(keep)}
    elements = [b.elements[i] for i in keep]
    products = {}
    for (i, j), entry in b.products.items():
        if i in keep_set and j in keep_set:
            slim = {renum[k]: c for k, c in entry.items() if k in keep_set}
            if slim:
                products[(renum[i], renum[j])] = slim
    quotient = BasedAlgebra(b.ambient, b.points, elements, products)

    def project(block, vec):
        """Class of a block vector in the quotient, over the kept coordinates."""
        red = espan[block].reduce(list(vec)) if block in espan else list(vec)
        idxs = b.block(*block)
        return [red[pos] for pos in range(len(idxs)) if idxs[pos] in keep_set]

    return quotient.assign_degrees(), project


def express_modulo(field, gens: list[list], modspan: RowSpan, target: list):
    """Coefficients of ``target`` over ``gens`` modulo a span, or None.

    Solves target = sum c_k gens[k]  (mod modspan) by augmenting each
    generator with an indicator coordinate.
    """
    width = len(target)
    aug = RowSpan(field, width + len(gens))
    for k, g in enumerate(gens):
        aug.add(list(g) + unit_vector(field, len(gens), k))
    for row in modspan.rows:
        aug.add(list(row) + [field.zero] * len(gens))
    red = aug.reduce(list(target) + [field.zero] * len(gens))
    if any(not field.is_zero(c) for c in red[:width]):
        return None
    return [field.neg(c) for c in red[width:]]


# -- presentation ------------------------------------------------------------


def present_as_bound_quiver(b: BasedAlgebra, quiver: AlgebraQuiver | None = None,
                            name: str | None = None) -> BoundQuiver:
    """Present the based algebra by its quiver and a minimal relation set.

    Relations are a canonical generating set of the kernel of path evaluation
    (paths up to the radical nilpotency); one-sided multiples of the kernel
    are quotiented away, echelon representatives are returned.
    """
    if quiver is None:
        quiver = quiver_of(b)
    f = b.field
    nil = b.radical_nilpotency
    arrows = [Arrow(arr.name, arr.source, arr.target) for arr in quiver.arrows]
    arrow_data = [((arr.source, arr.target), list(arr.vector))
                  for arr in quiver.arrows]
    out_by_point: dict[str, list[int]] = {p: [] for p in b.points}
    for i, arr in enumerate(arrows):
        out_by_point[arr.source].append(i)

    evals: dict[tuple[int, ...], tuple] = {}
    by_block: dict[tuple[str, str], list[tuple[int, ...]]] = {}
    frontier = []
    for i in range(len(arrows)):
        block, vec = arrow_data[i]
        evals[(i,)] = (block, vec)
        by_block.setdefault(block, []).append((i,))
        frontier.append(((i,), block, vec))
    for _ in range(max(0, nil - 1)):
        nxt = []
        for pid, block, vec in frontier:
            for j in out_by_point[block[1]]:
                jblock, jvec = arrow_data[j]
                res = b.multiply_vectors(block, vec, jblock, jvec)
                if res is None:
                    continue
                ob, ov = res
                npid = pid + (j,)
                evals[npid] = (ob, ov)
                by_block.setdefault(ob, []).append(npid)
                nxt.append((npid, ob, ov))
        frontier = nxt
        if not frontier:
            break

    relations: list[RelationExpr] = []
    for x in b.points:
        for y in b.points:
            block = (x, y)
            paths = [p for p in by_block.get(block, []) if len(p) >= 2]
            if not paths:
                continue
            paths.sort(key=lambda p: (-len(p), p))
            pindex = {p: i for i, p in enumerate(paths)}
            width = len(paths)
            blockdim = len(b.block(x, y))
            rows = [evals[p][1] for p in paths]
            ev_matrix = mat_transpose(f, rows, width, blockdim)
            kernel = kernel_basis(f, ev_matrix, width)
            if not kernel:
                continue
            kspan = RowSpan(f, width)
            for row in kernel:
                kspan.add(row)
            jspan = RowSpan(f, width)
            for row in kspan.rows:
                for j in range(len(arrows)):
                    if arrows[j].target == x:
                        jspan.add(_pad_row(f, paths, pindex, row, j, nil, True))
                    if arrows[j].source == y:
                        jspan.add(_pad_row(f, paths, pindex, row, j, nil, False))
            taken = []
            for row in kspan.rows:
                red = jspan.reduce(row)
                if any(not f.is_zero(c) for c in red):
                    taken.append(red)
                    jspan.add(red)
            canon = RowSpan(f, width)
            for row in taken:
                canon.add(row)
            for row in canon.rows:
                terms = []
                for p, c in zip(paths, row):
                    if f.is_zero(c):
                        continue
                    branch = tuple(arrows[i].name for i in p)
                    coeff = Fraction(c) if f.char == 0 else Fraction(int(c))
                    terms.append((coeff, branch))
                relations.append(RelationExpr(tuple(terms)))
    return BoundQuiver(
        name or (b.ambient.quiver.name + "_red"),
        b.points,
        arrows,
        relations,
        truncation=max(2, nil + 1),
        field_char=f.char,
    )


def _pad_row(field, paths, pindex, row, j, nil, prefix: bool):
    """Row vector for arrow * kernel element (or the other side), truncated.

    Dropped overlong terms are one-sided multiples of length-``nil`` paths,
    which evaluate to zero and already lie in the padded span.
    """
    out = [field.zero] * len(paths)
    for p, c in zip(paths, row):
        if field.is_zero(c):
            continue
        np = ((j,) + p) if prefix else (p + (j,))
        if len(np) <= nil and np in pindex:
            out[pindex[np]] = field.add(out[pindex[np]], c)
    return out


# -- the standard reduction ---------------------------------------------------


@dataclass
class ReductionResult:
    """Everything the standard reduction produces, for pipelines and reports."""

    retained_points: tuple[str, ...]
    eAe: BasedAlgebra
    eAe_quiver: AlgebraQuiver
    cut_names: tuple[str, ...]
    algebra: BasedAlgebra  # B
    quiver: AlgebraQuiver  # quiver of B
    presentation: BoundQuiver
    w_letters: tuple[tuple[str, int], ...]  # arrow-name letters of w''
    base_point: str  # start of w'' (its only point when empty)

    def w_walk(self) -> Walk | None:
        if not self.w_letters:
            return None
        idx = self.presentation.arrow_index
        return self.presentation.walk(
            [(idx[nm], s) for nm, s in self.w_letters]
        )

    def w_tokens(self) -> list[str]:
        return [("" if s > 0 else "~") + nm for nm, s in self.w_letters]


def _walk_interior_points(q, letters) -> list[str]:
    pts = [q.letter_source(letters[0])]
    for ltr in letters:
        pts.append(q.letter_target(ltr))
    return pts


def standard_reduction(a: TruncatedAlgebra,
                       cert: SequentialWalkCertificate) -> ReductionResult:
    """Drop points, collapse the interior to a zigzag, cut stray arrows.

    Retained points: the endpoints of the two relations, the second point of
    every branch, and the sources and sinks of the interior.  Each maximal
    interior segment between consecutive retained points becomes one arrow
    class of ``eAe`` (seated first among the quiver arrows).  The cut takes
    every arrow joining two zigzag points that is neither a zigzag letter nor
    used by a reduced relation branch.
    """
    a._require_admissible()
    q = a.quiver
    tops = a.top_relations()
    rho, sigma = tops[cert.rho_index], tops[cert.sigma_index]
    u_path = rho.paths[cert.u_branch]
    v_path = sigma.paths[cert.v_branch]

    retained: set[str] = {rho.source, rho.target, sigma.source, sigma.target}
    for rel in (rho, sigma):
        for br in rel.paths:
            retained.add(q.path_points(br)[1])
    w_letters = cert.w_prime
    if w_letters:
        wp = _walk_interior_points(q, w_letters)
        retained.add(wp[0])
        retained.add(wp[-1])
        for i in range(1, len(w_letters)):
            if w_letters[i - 1][1] != w_letters[i][1]:
                retained.add(wp[i])
    pts = tuple(p for p in q.points if p in retained)

    eAe = full_subcategory(a, pts)

    # collapse the interior: one arrow class per segment between retained points
    seeds = []
    seg_keys: list[tuple] = []
    seg_signs: list[int] = []
    base_point = q.letter_target(_path_letters(u_path, cert.orientation)[-1])
    if w_letters:
        wp = _walk_interior_points(q, w_letters)
        marks = [i for i, pt in enumerate(wp) if pt in retained]
        assert marks[0] == 0 and marks[-1] == len(wp) - 1
        seen: dict[tuple, int] = {}
        for lo, hi in zip(marks, marks[1:]):
            seg = run_path(q, w_letters, lo, hi - 1)
            sign = w_letters[lo][1]
            block = (seg.source, seg.target)
            vec = _class_vector(a, eAe, seg)
            key = (block, tuple(vec))
            if key not in seen:
                seen[key] = len(seeds)
                seeds.append((block, tuple(vec), None))
            seg_keys.append(key)
            seg_signs.append(sign)
        base_point = wp[0]

    eAe_quiver = quiver_of(eAe, seeds)
    seeded_arrows = [arr for arr in eAe_quiver.arrows if arr.seeded]
    seg_arrow_names = []
    key_to_name = {}
    k = 0
    for key in dict.fromkeys(seg_keys):
        key_to_name[key] = seeded_arrows[k].name
        k += 1
    for key in seg_keys:
        seg_arrow_names.append(key_to_name[key])
    w_named = tuple(
        (nm, sgn) for nm, sgn in zip(seg_arrow_names, seg_signs)
    )

    # protected arrows: classes used by the reduced relation branches
    protected: set[str] = set()
    levels = eAe.radical_spans()
    rad2 = levels[1] if len(levels) > 1 else {}
    for rel in (rho, sigma):
        for br in rel.paths:
            for chunk in _branch_chunks(q, br, retained):
                block = (chunk.source, chunk.target)
                vec = _class_vector(a, eAe, chunk)
                gens = [list(arr.vector) for arr in eAe_quiver.arrows
                        if (arr.source, arr.target) == block]
                names = [arr.name for arr in eAe_quiver.arrows
                         if (arr.source, arr.target) == block]
                mod = rad2.get(block) or RowSpan(eAe.field, len(vec))
                coeffs = express_modulo(eAe.field, gens, mod, list(vec))
                if coeffs is None:
                    continue
                for nm, c in zip(names, coeffs):
                    if not eAe.field.is_zero(c):
                        protected.add(nm)

    if w_named:
        w_points = set()
        w_points.add(base_point)
        for nm, _sgn in w_named:
            arr = next(x for x in eAe_quiver.arrows if x.name == nm)
            w_points.add(arr.source)
            w_points.add(arr.target)
        zig_names = {nm for nm, _ in w_named}
    else:
        w_points = {base_point}
        zig_names = set()
    cut_names = tuple(
        arr.name
        for arr in eAe_quiver.arrows
        if arr.source in w_points and arr.target in w_points
        and arr.name not in zig_names and arr.name not in protected
    )

    b, project = _cut_arrows_full(eAe, eAe_quiver, cut_names)

    # carry the surviving arrows (names and all) into the quotient's quiver
    b_seeds = []
    for arr in eAe_quiver.arrows:
        if arr.name in cut_names:
            continue
        vec = project((arr.source, arr.target), arr.vector)
        if all(eAe.field.is_zero(c) for c in vec):
            raise SegmentResidueZero(
                f"arrow {arr.name} dies in the cut quotient"
            )
        b_seeds.append(((arr.source, arr.target), tuple(vec), arr.name))
    b_quiver = quiver_of(b, b_seeds)
    presentation = present_as_bound_quiver(
        b, b_quiver, name=a.quiver.name + "_red"
    )
    return ReductionResult(
        retained_points=pts,
        eAe=eAe,
        eAe_quiver=eAe_quiver,
        cut_names=cut_names,
        algebra=b,
        quiver=b_quiver,
        presentation=presentation,
        w_letters=w_named,
        base_point=base_point,
    )


def _class_vector(a: TruncatedAlgebra, based: BasedAlgebra, p: Path):
    """Coordinates of a path class over the based algebra's block basis."""
    nf = a.normal_form(LinComb.from_path(a.field, p))
    block = (p.source, p.target)
    pos = {based.elements[i].rep.paths[0]: k
           for k, i in enumerate(based.block(*block))}
    vec = [a.field.zero] * len(pos)
    for pp, c in nf.terms:
        vec[pos[pp]] = c
    return vec


def _branch_chunks(q, br: Path, retained: set[str]):
    """Split a branch path at its retained interior points."""
    pts = q.path_points(br)
    marks = [0]
    for i in range(1, len(pts) - 1):
        if pts[i] in retained:
            marks.append(i)
    marks.append(len(pts) - 1)
    out = []
    for lo, hi in zip(marks, marks[1:]):
        out.append(q.path_from_indices(br.arrows[lo:hi]))
    return out
