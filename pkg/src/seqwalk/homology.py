"""Representations of a bound quiver and their homological invariants.

Modules are right modules with paths composed left to right: the matrix of an
arrow maps the fiber at its source to the fiber at its target, and a path
acts by applying its arrows in order.  Projective covers are built from tops,
so syzygies are minimal and multiplicities in minimal resolutions compute
extension groups between simples.  Injective-side invariants go through the
explicitly materialized opposite algebra; no dual calculus is maintained.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import LinComb, TruncatedAlgebra
from .detector import (
    DetectorConfig,
    SequentialWalkCertificate,
    check_sequential,
    detect_sequential_walks,
)
from .errors import (
    BoundExceeded,
    InternalInconsistency,
    NotAString,
    PreconditionUnmet,
    ZeroModule,
)
from .linalg import RowSpan, kernel_basis, mat_vec, mat_zero, solve_in_span
from .quiver import Path, Walk

Letters = tuple[tuple[int, int], ...]


class Representation:
    """A finite-dimensional right module: fiber dimensions and arrow matrices.

    ``mats[i]`` maps the fiber at the source of arrow ``i`` to the fiber at
    its target (rows indexed by the target fiber).
    """

    def __init__(self, algebra: TruncatedAlgebra, dims: dict, mats: dict,
                 check: bool = True):
        self.algebra = algebra
        q = algebra.quiver
        self.dims = {p: int(dims.get(p, 0)) for p in q.points}
        self.mats = {}
        f = algebra.field
        for i, arr in enumerate(q.arrows):
            rows, cols = self.dims[arr.target], self.dims[arr.source]
            m = mats.get(i)
            if m is None:
                m = mat_zero(f, rows, cols)
            self.mats[i] = m
        if check:
            bad = self.failing_generator()
            if bad is not None:
                raise NotAString(
                    f"relation {algebra.render(bad)} does not annihilate"
                )

    # -- basics -------------------------------------------------------------

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_vector(self) -> dict:
        return dict(self.dims)

    def support(self) -> list[str]:
        return [p for p in self.algebra.quiver.points if self.dims[p] > 0]

    def evaluate_path(self, p: Path):
        """Matrix of the path's action (source fiber to target fiber)."""
        f = self.algebra.field
        n = self.dims[p.source]
        vecs = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]
        # apply arrows in order to the identity, column by column
        cols = [[row[j] for row in vecs] for j in range(n)]
        for ai in p.arrows:
            cols = [mat_vec(f, self.mats[ai], c) for c in cols]
        rows = self.dims[p.target]
        return [[cols[j][i] for j in range(n)] for i in range(rows)]

    def evaluate(self, e: LinComb):
        f = self.algebra.field
        rows, cols = self.dims[e.target], self.dims[e.source]
        out = mat_zero(f, rows, cols)
        for p, c in e.terms:
            m = self.evaluate_path(p)
            for i in range(rows):
                for j in range(cols):
                    out[i][j] = f.add(out[i][j], f.mul(c, m[i][j]))
        return out

    def failing_generator(self):
        f = self.algebra.field
        for g in self.algebra.generators:
            m = self.evaluate(g)
            if any(not f.is_zero(c) for row in m for c in row):
                return g
        return None


def zero_module(a: TruncatedAlgebra) -> Representation:
    return Representation(a, {}, {}, check=False)


def simple(a: TruncatedAlgebra, x: str) -> Representation:
    if x not in a.quiver.point_index:
        raise ValueError(f"unknown point {x!r}")
    return Representation(a, {x: 1}, {}, check=False)


def projective(a: TruncatedAlgebra, x: str) -> Representation:
    """The right module on the quotient-basis paths leaving ``x``."""
    a._require_admissible()
    q, f = a.quiver, a.field
    dims = {y: len(a.basis[(x, y)]) for y in q.points}
    mats = {}
    for i, arr in enumerate(q.arrows):
        mats[i] = a.right_multiplication_matrix(x, arr.source, i)
    return Representation(a, dims, mats, check=False)


def dual(m: Representation) -> Representation:
    """The linear dual as a module over the opposite algebra."""
    op = m.algebra.opposite()
    f = m.algebra.field
    mats = {}
    for i, arr in enumerate(m.algebra.quiver.arrows):
        mat = m.mats[i]
        rows = m.dims[arr.target]
        cols = m.dims[arr.source]
        mats[i] = [[mat[r][c] for r in range(rows)] for c in range(cols)]
    return Representation(op, dict(m.dims), mats, check=False)


def injective(a: TruncatedAlgebra, x: str) -> Representation:
    return dual(projective(a.opposite(), x))


def string_module(a: TruncatedAlgebra, letters, base_point: str | None = None
                  ) -> Representation:
    """The walk module: one basis vector per point occurrence, identities
    along the letters.  Verifies that every relation generator annihilates;
    an empty letter tuple with a base point yields the simple there."""
    if isinstance(letters, Walk):
        letters = letters.letters
    letters = tuple(letters)
    q, f = a.quiver, a.field
    if not letters:
        if base_point is None:
            raise ValueError("empty walk needs a base point")
        rep = simple(a, base_point)
        bad = rep.failing_generator()
        if bad is not None:
            raise NotAString(f"relation {a.render(bad)} does not annihilate")
        return rep
    from .quiver import walk_points

    occ_points = walk_points(q, letters)
    occ_index: dict[int, tuple[str, int]] = {}
    dims: dict[str, int] = {p: 0 for p in q.points}
    slot = {}
    for occ, pt in enumerate(occ_points):
        slot[occ] = (pt, dims[pt])
        dims[pt] += 1
    mats = {
        i: mat_zero(f, dims[arr.target], dims[arr.source])
        for i, arr in enumerate(q.arrows)
    }
    for k, (ai, sign) in enumerate(letters):
        lo, hi = k, k + 1  # occurrences joined by this letter
        if sign > 0:
            src_occ, tgt_occ = lo, hi
        else:
            src_occ, tgt_occ = hi, lo
        _pt, srow = slot[src_occ]
        _pt2, trow = slot[tgt_occ]
        mats[ai][trow][srow] = f.one
    return Representation(a, dims, mats)  # construction-time verification


def from_spec(a: TruncatedAlgebra, kind: str, arg: str) -> Representation:
    if kind == "simple":
        return simple(a, arg)
    if kind == "proj":
        return projective(a, arg)
    if kind == "inj":
        return injective(a, arg)
    if kind == "string":
        return string_module(a, a.quiver.walk_from_tokens(arg))
    raise ValueError(f"unknown module kind {kind!r}")


# -- submodules, quotients, filtrations --------------------------------------


def _fiber_spans(m: Representation, vectors: dict) -> dict:
    f = m.algebra.field
    spans = {}
    for p in m.algebra.quiver.points:
        span = RowSpan(f, m.dims[p])
        for v in vectors.get(p, ()):
            span.add(list(v))
        spans[p] = span
    return spans


def sub_representation(m: Representation, spans: dict) -> Representation:
    """The submodule spanned fiber-wise (must be closed under the action)."""
    a, f = m.algebra, m.algebra.field
    dims = {p: spans[p].rank for p in a.quiver.points}
    mats = {}
    for i, arr in enumerate(a.quiver.arrows):
        src, tgt = spans[arr.source], spans[arr.target]
        cols = []
        for row in src.rows:
            img = mat_vec(f, m.mats[i], row)
            coeffs = solve_in_span(f, tgt.rows, tgt.pivots, img)
            if coeffs is None:
                raise ValueError("fibers are not action-closed")
            cols.append(coeffs)
        mats[i] = [[cols[j][r] for j in range(len(cols))]
                   for r in range(dims[arr.target])]
    return Representation(a, dims, mats, check=False)


def quotient_representation(m: Representation, spans: dict) -> Representation:
    a, f = m.algebra, m.algebra.field
    coords = {}
    for p in a.quiver.points:
        pivots = set(spans[p].pivots)
        coords[p] = [i for i in range(m.dims[p]) if i not in pivots]
    dims = {p: len(coords[p]) for p in a.quiver.points}
    mats = {}
    for i, arr in enumerate(a.quiver.arrows):
        cols = []
        for c in coords[arr.source]:
            v = [f.zero] * m.dims[arr.source]
            v[c] = f.one
            img = spans[arr.target].reduce(mat_vec(f, m.mats[i], v))
            cols.append([img[t] for t in coords[arr.target]])
        mats[i] = [[cols[j][r] for j in range(len(cols))]
                   for r in range(dims[arr.target])]
    return Representation(a, dims, mats, check=False)


def radical_spans(m: Representation) -> dict:
    """Fiber spans of M rad: sums of arrow images."""
    a, f = m.algebra, m.algebra.field
    vectors: dict[str, list] = {p: [] for p in a.quiver.points}
    for i, arr in enumerate(a.quiver.arrows):
        for j in range(m.dims[arr.source]):
            v = [f.zero] * m.dims[arr.source]
            v[j] = f.one
            img = mat_vec(f, m.mats[i], v)
            if any(not f.is_zero(c) for c in img):
                vectors[arr.target].append(img)
    return _fiber_spans(m, vectors)


def radical(m: Representation) -> Representation:
    return sub_representation(m, radical_spans(m))


def top(m: Representation) -> Representation:
    return quotient_representation(m, radical_spans(m))


def socle_spans(m: Representation) -> dict:
    a, f = m.algebra, m.algebra.field
    spans = {}
    for p in a.quiver.points:
        stacked = []
        for i in a.quiver.out_arrows[p]:
            stacked.extend(m.mats[i])
        if stacked:
            basis = kernel_basis(f, stacked, m.dims[p])
        else:
            basis = [
                [f.one if i == j else f.zero for j in range(m.dims[p])]
                for i in range(m.dims[p])
            ]
        span = RowSpan(f, m.dims[p])
        for v in basis:
            span.add(v)
        spans[p] = span
    return spans


def socle_series(m: Representation) -> list[Representation]:
    """Ascending chain of socles; the last term is all of the module."""
    a, f = m.algebra, m.algebra.field
    chain = []
    current = {p: RowSpan(f, m.dims[p]) for p in a.quiver.points}
    while sum(s.rank for s in current.values()) < m.total_dim:
        quot = quotient_representation(m, current)
        qsoc = socle_spans(quot)
        coords = {
            p: [i for i in range(m.dims[p]) if i not in set(current[p].pivots)]
            for p in a.quiver.points
        }
        new = {p: current[p].copy() for p in a.quiver.points}
        for p in a.quiver.points:
            for row in qsoc[p].rows:
                lift = [f.zero] * m.dims[p]
                for c, val in zip(coords[p], row):
                    lift[c] = val
                new[p].add(lift)
        if sum(s.rank for s in new.values()) == \
                sum(s.rank for s in current.values()):
            raise InternalInconsistency("socle series stalled")
        current = new
        chain.append(sub_representation(m, current))
    return chain


def loewy_length(m: Representation) -> int:
    return len(socle_series(m))


def is_uniserial(m: Representation) -> bool:
    """Exactly one composition factor per radical layer."""
    if m.is_zero:
        return False
    a, f = m.algebra, m.algebra.field
    layers = m
    remaining = m.total_dim
    current = m
    while remaining > 0:
        rad_sp = radical_spans(current)
        rad_dim = sum(sp.rank for sp in rad_sp.values())
        if remaining - rad_dim != 1:
            return False
        current = sub_representation(current, rad_sp)
        remaining = rad_dim
    return True


# -- covers and dimensions ----------------------------------------------------


def direct_sum(a: TruncatedAlgebra, reps: list[Representation]) -> Representation:
    f = a.field
    dims = {p: sum(r.dims[p] for r in reps) for p in a.quiver.points}
    mats = {}
    for i, arr in enumerate(a.quiver.arrows):
        rows, cols = dims[arr.target], dims[arr.source]
        m = mat_zero(f, rows, cols)
        roff = coff = 0
        for r in reps:
            for rr in range(r.dims[arr.target]):
                for cc in range(r.dims[arr.source]):
                    m[roff + rr][coff + cc] = r.mats[i][rr][cc]
            roff += r.dims[arr.target]
            coff += r.dims[arr.source]
        mats[i] = m
    return Representation(a, dims, mats, check=False)


@dataclass
class Cover:
    projective: Representation
    summand_points: tuple[str, ...]
    maps: dict  # point -> matrix from cover fiber to module fiber
    kernel: Representation


def projective_cover(m: Representation) -> Cover:
    """Minimal cover built from a lifted basis of the top."""
    if m.is_zero:
        raise ZeroModule("zero module has no projective cover")
    a, f = m.algebra, m.algebra.field
    rad_sp = radical_spans(m)
    gens: list[tuple[str, list]] = []
    for z in a.quiver.points:
        pivots = set(rad_sp[z].pivots)
        for c in range(m.dims[z]):
            if c not in pivots:
                lift = [f.zero] * m.dims[z]
                lift[c] = f.one
                gens.append((z, lift))
    summands = [projective(a, z) for z, _ in gens]
    P = direct_sum(a, summands)
    maps = {}
    kern_vectors: dict[str, list] = {p: [] for p in a.quiver.points}
    for y in a.quiver.points:
        cols = []
        for (z, lift) in gens:
            for p in a.basis[(z, y)]:
                vec = lift
                for ai in p.arrows:
                    vec = mat_vec(f, m.mats[ai], vec)
                cols.append(vec)
        mat = [[cols[j][r] for j in range(len(cols))] for r in range(m.dims[y])]
        maps[y] = mat
        for v in kernel_basis(f, mat, len(cols)):
            kern_vectors[y].append(v)
    spans = _fiber_spans(P, kern_vectors)
    kernel = sub_representation(P, spans)
    return Cover(
        projective=P,
        summand_points=tuple(z for z, _ in gens),
        maps=maps,
        kernel=kernel,
    )


def syzygy(m: Representation) -> Representation:
    return projective_cover(m).kernel


def proj_dim(m: Representation, bound: int | None = None):
    """Projective dimension, or BoundExceeded past the syzygy budget."""
    if m.is_zero:
        return 0
    limit = bound if bound is not None else max(1, m.algebra.dimension)
    current = m
    for d in range(limit + 1):
        kernel = projective_cover(current).kernel
        if kernel.is_zero:
            return d
        current = kernel
    return BoundExceeded(limit)


def inj_dim(m: Representation, bound: int | None = None):
    """Injective dimension via the opposite algebra."""
    return proj_dim(dual(m), bound)


def ext_simple_dims(a: TruncatedAlgebra, x: str, i_max: int) -> list[dict]:
    """Table row i: dim Ext^i(S_x, S_y) for all y, from a minimal resolution."""
    a._require_admissible()
    table = []
    current = simple(a, x)
    for i in range(i_max + 1):
        if current.is_zero:
            table.append({})
            current = zero_module(a)
            continue
        cover = projective_cover(current)
        counts: dict[str, int] = {}
        for z in cover.summand_points:
            counts[z] = counts.get(z, 0) + 1
        table.append(counts)
        current = cover.kernel
    return table


def global_dimension(a: TruncatedAlgebra, bound: int | None = None):
    a._require_admissible()
    worst = 0
    for x in a.quiver.points:
        d = proj_dim(simple(a, x), bound)
        if isinstance(d, BoundExceeded):
            return d
        worst = max(worst, d)
    return worst


# -- structural predicates ----------------------------------------------------


def is_nakayama(a: TruncatedAlgebra) -> bool:
    q = a.quiver
    return all(len(q.out_arrows[p]) <= 1 for p in q.points) and \
        all(len(q.in_arrows[p]) <= 1 for p in q.points)


def is_monomial(a: TruncatedAlgebra) -> bool:
    return all(g.is_monomial for g in a.generators)


def is_tree(a: TruncatedAlgebra) -> bool:
    """Underlying undirected graph connected and acyclic."""
    q = a.quiver
    if len(q.arrows) != len(q.points) - 1:
        return False
    adj: dict[str, list[str]] = {p: [] for p in q.points}
    for arr in q.arrows:
        adj[arr.source].append(arr.target)
        adj[arr.target].append(arr.source)
    seen = {q.points[0]}
    stack = [q.points[0]]
    while stack:
        p = stack.pop()
        for nb in adj[p]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(q.points)


def interval_modules(a: TruncatedAlgebra) -> list[tuple[str, Representation]]:
    """All uniserial modules of a Nakayama algebra, as labeled strings."""
    if not is_nakayama(a):
        raise PreconditionUnmet("interval enumeration needs a Nakayama quiver")
    out = []
    for x in a.quiver.points:
        for y in a.quiver.points:
            for p in a.basis[(x, y)]:
                if len(p) == 0:
                    out.append((f"simple:{x}", simple(a, x)))
                else:
                    tokens = " ".join(
                        a.quiver.arrows[i].name for i in p.arrows
                    )
                    out.append((f"string:{tokens}",
                                string_module(a, a.quiver.walk(
                                    [(i, 1) for i in p.arrows]))))
    return out


def support_starts_top_relation(a: TruncatedAlgebra, m: Representation) -> str:
    """A support point that is the source of a top relation; needs pd >= 2."""
    d = proj_dim(m)
    if isinstance(d, BoundExceeded) or d < 2:
        raise PreconditionUnmet(f"projective dimension {d} is below two")
    starts = {rel.source for rel in a.top_relations()}
    for p in m.support():
        if p in starts:
            return p
    raise InternalInconsistency(
        "no support point starts a top relation despite pd >= 2"
    )


def sequential_walk_from_uniserial(a: TruncatedAlgebra, m: Representation
                                   ) -> SequentialWalkCertificate:
    """Read a sequential walk off a uniserial module with pd and id above one
    over a monomial algebra of global dimension two."""
    a._require_admissible()
    if not is_monomial(a):
        raise PreconditionUnmet("monomial presentation required")
    g = global_dimension(a)
    if g != 2:
        raise PreconditionUnmet(f"global dimension {g} is not two")
    if not is_uniserial(m):
        raise PreconditionUnmet("module is not uniserial")
    pdm, idm = proj_dim(m), inj_dim(m)
    for val in (pdm, idm):
        if not isinstance(val, BoundExceeded) and val < 2:
            raise PreconditionUnmet("projective or injective dimension below two")
    # walk down the support line
    f = a.field
    line = []
    rad_sp = radical_spans(m)
    tops_here = [p for p in m.support()
                 if rad_sp[p].rank < m.dims[p]]
    z = tops_here[0]
    line.append(z)
    arrows_line = []
    while True:
        nxt = None
        for i in a.quiver.out_arrows[z]:
            mat = m.mats[i]
            if any(not f.is_zero(c) for row in mat for c in row):
                nxt = i
                break
        if nxt is None:
            break
        arrows_line.append(nxt)
        z = a.quiver.arrows[nxt].target
        line.append(z)
    tops = a.top_relations()
    enders = [(k, t) for t in range(len(tops))
              for k, pt in enumerate(line) if tops[t].target == pt]
    starters = [(k, t) for t in range(len(tops))
                for k, pt in enumerate(line) if tops[t].source == pt]
    for i, rho_t in sorted(enders):
        for j, sig_t in sorted(starters):
            if i > j:
                continue
            w_prime = tuple((ai, 1) for ai in arrows_line[i:j])
            res = check_sequential(a, rho_t, 0, sig_t, 0, w_prime, "forward")
            if res.ok:
                return SequentialWalkCertificate(
                    rho_index=rho_t, u_branch=0, sigma_index=sig_t, v_branch=0,
                    w_prime=w_prime, orientation="forward",
                    full_letters=tuple((ai, 1) for ai in tops[rho_t].paths[0].arrows)
                    + w_prime
                    + tuple((ai, 1) for ai in tops[sig_t].paths[0].arrows),
                )
    raise InternalInconsistency(
        "uniserial module met the hypotheses but produced no sequential walk"
    )


# -- the end-to-end obstruction report ----------------------------------------


@dataclass
class CertificateWitness:
    certificate: SequentialWalkCertificate
    json: dict
    retained_points: tuple[str, ...]
    cut: tuple[str, ...]
    b_arrow_count: int
    b_relations: tuple[str, ...]
    w_tokens: tuple[str, ...]
    module_dims: dict
    pd: object
    id: object
    verified: bool


@dataclass
class Report:
    name: str
    dimension: int
    truncation: int
    gldim: object
    top_relations: tuple[str, ...]
    bound: int
    certificates: list[CertificateWitness]
    verdict: str
    inconsistencies: list[str] = field(default_factory=list)


def _exceeds_one(value) -> bool:
    return isinstance(value, BoundExceeded) or value > 1


def shod_obstruction_report(a: TruncatedAlgebra,
                            cfg: DetectorConfig | None = None) -> Report:
    """Detect walks, reduce each, and verify the string module both ways.

    The verdict is NOT_SHOD only when a fully machine-checked chain exists;
    with no walk up to the bound it is INCONCLUSIVE, never "shod".  A
    certificate whose module fails either dimension check is recorded as an
    inconsistency rather than silently dropped.
    """
    from .reduction import standard_reduction

    cfg = cfg or DetectorConfig()
    a._require_admissible()
    certs = detect_sequential_walks(a, cfg)
    witnesses = []
    inconsistencies = []
    tops = a.top_relations()
    for cert in certs:
        red = standard_reduction(a, cert)
        rebuilt = TruncatedAlgebra.build(red.presentation)
        if not rebuilt.is_admissible:
            inconsistencies.append(
                f"reduction of {cert!r} is not admissible"
            )
            continue
        if red.w_letters:
            idx = rebuilt.quiver.arrow_index
            letters = tuple((idx[nm], s) for nm, s in red.w_letters)
            module = string_module(rebuilt, letters)
        else:
            module = string_module(rebuilt, (), base_point=red.base_point)
        pd_val = proj_dim(module)
        id_val = inj_dim(module)
        ok = _exceeds_one(pd_val) and _exceeds_one(id_val)
        witnesses.append(CertificateWitness(
            certificate=cert,
            json=cert.to_json(a),
            retained_points=red.retained_points,
            cut=red.cut_names,
            b_arrow_count=len(red.quiver.arrows),
            b_relations=tuple(
                rebuilt.render(t) for t in rebuilt.top_relations()
            ),
            w_tokens=tuple(red.w_tokens()),
            module_dims=module.dim_vector(),
            pd=pd_val,
            id=id_val,
            verified=ok,
        ))
        if not ok:
            inconsistencies.append(
                f"certificate {' '.join(a.quiver.walk_tokens(cert.full_letters))}"
                f" gave pd={pd_val}, id={id_val}"
            )
    gd = global_dimension(a)
    verdict = "NOT_SHOD" if any(w.verified for w in witnesses) else "INCONCLUSIVE"
    return Report(
        name=a.quiver.name,
        dimension=a.dimension,
        truncation=a.N,
        gldim=gd,
        top_relations=tuple(a.render(t) for t in tops),
        bound=cfg.walk_bound(a),
        certificates=witnesses,
        verdict=verdict,
        inconsistencies=inconsistencies,
    )
