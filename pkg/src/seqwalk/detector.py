"""Sequential walks and their relatives: detection and certificate checking.

A sequential walk is a reduced walk ``u w' v`` whose ends ``u`` and ``v`` are
branches of top relations traversed in the same direction, with an interior
``w'`` that keeps the two relations independent.  The conditions implemented
by :func:`check_sequential` are:

``(a)``  the whole walk is reduced, ``u`` and ``v`` point the same way, and
         each is a branch of a top relation (either may be inverted, both
         together);

``(b1)`` every directed subpath of the whole walk that lies in the ideal
         covers the ``u`` occurrence or the ``v`` occurrence; in particular
         no directed subpath of ``w'`` lies in the ideal, and no relation
         straddles a junction;

``(b2)`` no directed subpath of ``w'`` is a branch of a top relation that
         has a branch meeting some branch of the chosen relations away from
         their four endpoints (``strict_subpaths`` widens "is a branch" to
         "is a contiguous subpath of a branch");

``(b3)`` the two junction points of ``w'`` are not interior points of any
         branch of the chosen relations;

``(b4)`` no two distinct branches of one top relation occur among the
         directed subpaths of ``w'`` (several parallel branch classes cannot
         all collapse to arrows of the reduced algebra);

``(c)``  ``w'`` uses no arrow occurring in any branch of the chosen
         relations.

The interior may be empty, in which case the two relations meet head to
tail.  Detection is exhaustive up to a configurable interior length, so an
empty result means "none up to the bound", never a proof of absence.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .algebra import LinComb, TruncatedAlgebra
from .errors import (
    NotAdmissible,
    NotMonomialAlgebra,
    NotStringAlgebra,
    RelationNotTop,
)
from .quiver import (
    Arrow,
    BoundQuiver,
    Path,
    Walk,
    directed_runs,
    directed_subpaths,
    inverse,
    is_reduced,
    run_path,
)

Letters = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class DetectorConfig:
    """Search bounds and switches for the detectors.

    ``max_walk_len`` bounds the interior letter count, ``max_band_len`` the
    band letter count; None means ``max(8, 2 * arrow count)``.
    ``strict_subpaths`` switches condition (b2) to the wider reading that
    also forbids proper subpaths of qualifying branches.
    """

    max_walk_len: int | None = None
    max_band_len: int | None = None
    strict_subpaths: bool = False
    threads: int = 1

    def walk_bound(self, a: TruncatedAlgebra) -> int:
        if self.max_walk_len is not None:
            return self.max_walk_len
        return max(8, 2 * len(a.quiver.arrows))

    def band_bound(self, a: TruncatedAlgebra) -> int:
        if self.max_band_len is not None:
            return self.max_band_len
        return max(8, 2 * len(a.quiver.arrows))


@dataclass(frozen=True)
class SequentialWalkCertificate:
    """One verified decomposition ``u w' v`` with its relation bookkeeping."""

    rho_index: int
    u_branch: int
    sigma_index: int
    v_branch: int
    w_prime: Letters
    orientation: str  # "forward" | "inverse"
    full_letters: Letters

    @property
    def full_walk(self) -> Walk:
        return Walk(self.full_letters)

    def interior_walk(self) -> Walk | None:
        return Walk(self.w_prime) if self.w_prime else None

    def to_json(self, a: TruncatedAlgebra) -> dict:
        tops = a.top_relations()
        rho = tops[self.rho_index]
        sigma = tops[self.sigma_index]
        lu = len(rho.paths[self.u_branch])
        lv = len(sigma.paths[self.v_branch])
        q = a.quiver
        return {
            "rho": a.render(rho),
            "u": q.walk_tokens(self.full_letters[:lu]),
            "w_prime": q.walk_tokens(self.w_prime),
            "v": q.walk_tokens(self.full_letters[lu + len(self.w_prime):]),
            "sigma": a.render(sigma),
            "orientation": self.orientation,
        }


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    failures: tuple[str, ...] = ()
    reason: str | None = None

    def __bool__(self):
        return self.ok


def _path_letters(p: Path, orientation: str) -> Letters:
    if orientation == "forward":
        return tuple((i, 1) for i in p.arrows)
    return tuple((i, -1) for i in reversed(p.arrows))


class _Checker:
    """Shared state for one detection run: tops, memoized ideal membership."""

    def __init__(self, a: TruncatedAlgebra, strict_subpaths: bool = False):
        a._require_admissible()
        self.a = a
        self.q = a.quiver
        self.tops = a.top_relations()
        self.strict = strict_subpaths
        self._ideal_memo: dict[Path, bool] = {}
        self._forbidden_cache: dict[tuple[int, int], frozenset[Path]] = {}

    def in_ideal(self, p: Path) -> bool:
        if len(p) < 2:
            return False
        hit = self._ideal_memo.get(p)
        if hit is None:
            hit = self.a.path_in_ideal(p)
            self._ideal_memo[p] = hit
        return hit

    def branch_arrow_set(self, rho_i: int, sigma_i: int) -> set[int]:
        out: set[int] = set()
        for rel in (self.tops[rho_i], self.tops[sigma_i]):
            for br in rel.paths:
                out.update(br.arrows)
        return out

    def branch_interiors(self, rho_i: int, sigma_i: int) -> set[str]:
        out: set[str] = set()
        for rel in (self.tops[rho_i], self.tops[sigma_i]):
            for br in rel.paths:
                out.update(self.q.path_points(br)[1:-1])
        return out

    def forbidden_subpaths(self, rho_i: int, sigma_i: int) -> frozenset[Path]:
        """Branches (or their subpaths, in strict mode) of qualifying tops."""
        key = (rho_i, sigma_i)
        cached = self._forbidden_cache.get(key)
        if cached is not None:
            return cached
        rho, sigma = self.tops[rho_i], self.tops[sigma_i]
        endpoints = {rho.source, rho.target, sigma.source, sigma.target}
        own_points: set[str] = set()
        for rel in (rho, sigma):
            for br in rel.paths:
                own_points.update(self.q.path_points(br))
        meet = own_points - endpoints
        forbidden: set[Path] = set()
        for tau in self.tops:
            qualifies = any(
                pt in meet for br in tau.paths for pt in self.q.path_points(br)
            )
            if not qualifies:
                continue
            for br in tau.paths:
                if self.strict:
                    n = len(br.arrows)
                    for s in range(n):
                        for e in range(s + 1, n + 1):
                            forbidden.add(
                                self.q.path_from_indices(br.arrows[s:e])
                            )
                else:
                    forbidden.add(br)
        out = frozenset(forbidden)
        self._forbidden_cache[key] = out
        return out

    # -- the full condition check -----------------------------------------

    def check(self, rho_i, u_bi, sigma_i, v_bi, w_prime: Letters,
              orientation: str) -> CheckResult:
        tops, q = self.tops, self.q
        if not (0 <= rho_i < len(tops)) or not (0 <= sigma_i < len(tops)):
            raise RelationNotTop("relation index out of range")
        rho, sigma = tops[rho_i], tops[sigma_i]
        if not (0 <= u_bi < len(rho.paths)) or not (0 <= v_bi < len(sigma.paths)):
            raise RelationNotTop("branch index out of range")
        if orientation not in ("forward", "inverse"):
            raise ValueError(f"bad orientation {orientation!r}")
        u_path, v_path = rho.paths[u_bi], sigma.paths[v_bi]
        u = _path_letters(u_path, orientation)
        v = _path_letters(v_path, orientation)
        letters = u + tuple(w_prime) + v
        for s, t in zip(letters, letters[1:]):
            if q.letter_target(s) != q.letter_source(t):
                raise ValueError("walk pieces do not compose")

        failures = []
        reasons = []

        if not is_reduced(letters):
            failures.append("a")
            reasons.append("(a): walk is not reduced")

        lu, lw = len(u), len(w_prime)
        u_lo, u_hi = 0, lu - 1
        v_lo, v_hi = lu + lw, lu + lw + len(v) - 1
        bad = self._ideal_interval(letters, u_lo, u_hi, v_lo, v_hi)
        if bad is not None:
            failures.append("b1")
            reasons.append(
                f"(b1): directed subpath {q.path_name(bad)} lies in the ideal "
                "outside the chosen branches"
            )

        if w_prime:
            forbidden = self.forbidden_subpaths(rho_i, sigma_i)
            hit = next(
                (p for p in directed_subpaths(q, w_prime) if p in forbidden), None
            )
            if hit is not None:
                failures.append("b2")
                reasons.append(
                    f"(b2): interior subpath {q.path_name(hit)} sits inside a "
                    "top relation meeting the chosen branches away from their "
                    "endpoints"
                )

        if w_prime:
            subs = set(directed_subpaths(q, w_prime))
            for tau in tops:
                hits = [br for br in tau.paths if br in subs]
                if len(hits) >= 2:
                    failures.append("b4")
                    reasons.append(
                        f"(b4): interior contains {len(hits)} branches of "
                        f"the top relation {self.a.render(tau)}"
                    )
                    break

        x = q.letter_target(u[-1])
        y = q.letter_source(v[0])
        interiors = self.branch_interiors(rho_i, sigma_i)
        if x in interiors or y in interiors:
            at = x if x in interiors else y
            failures.append("b3")
            reasons.append(
                f"(b3): junction point {at} is interior to a branch of the "
                "chosen relations"
            )

        if w_prime:
            shared = {i for i, _ in w_prime} & self.branch_arrow_set(rho_i, sigma_i)
            if shared:
                name = q.arrows[min(shared)].name
                failures.append("c")
                reasons.append(f"(c): interior reuses branch arrow {name}")

        return CheckResult(
            ok=not failures,
            failures=tuple(failures),
            reason="; ".join(reasons) if reasons else None,
        )

    def _ideal_interval(self, letters, u_lo, u_hi, v_lo, v_hi):
        """First directed subpath in the ideal not covering u or v, else None."""
        for rs, re_, _sign in directed_runs(letters):
            for s in range(rs, re_ + 1):
                for e in range(s + 1, re_ + 1):
                    covers = (s <= u_lo and e >= u_hi) or (s <= v_lo and e >= v_hi)
                    if covers:
                        continue
                    p = run_path(self.q, letters, s, e)
                    if self.in_ideal(p):
                        return p
        return None


def check_sequential(a: TruncatedAlgebra, rho_index: int, u_branch: int,
                     sigma_index: int, v_branch: int, w_prime,
                     orientation: str = "forward",
                     cfg: DetectorConfig | None = None) -> CheckResult:
    """Evaluate all sequential-walk conditions on one candidate decomposition."""
    cfg = cfg or DetectorConfig()
    letters = tuple(w_prime.letters) if isinstance(w_prime, Walk) else tuple(w_prime)
    checker = _Checker(a, strict_subpaths=cfg.strict_subpaths)
    return checker.check(rho_index, u_branch, sigma_index, v_branch, letters,
                         orientation)


def _undirected_distances(q: BoundQuiver, goal: str) -> dict[str, int]:
    adj: dict[str, set[str]] = {p: set() for p in q.points}
    for a in q.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    dist = {goal: 0}
    queue = deque([goal])
    while queue:
        p = queue.popleft()
        for nb in adj[p]:
            if nb not in dist:
                dist[nb] = dist[p] + 1
                queue.append(nb)
    return dist


def _incident_letters(q: BoundQuiver, point: str) -> list[tuple[int, int]]:
    out = [(i, 1) for i in q.out_arrows[point]]
    out += [(i, -1) for i in q.in_arrows[point]]
    out.sort()
    return out


class _WalkSearch:
    """Depth-first enumeration of interiors for one (rho, sigma) candidate."""

    def __init__(self, checker: _Checker, cfg: DetectorConfig, mode: str,
                 rho_i: int, u_bi: int, sigma_i: int, v_bi: int,
                 orientation: str):
        self.ck = checker
        self.q = checker.q
        self.cfg = cfg
        self.mode = mode  # "walk" | "pair"
        self.rho_i, self.u_bi = rho_i, u_bi
        self.sigma_i, self.v_bi = sigma_i, v_bi
        self.orientation = orientation
        rho, sigma = checker.tops[rho_i], checker.tops[sigma_i]
        self.u = _path_letters(rho.paths[u_bi], orientation)
        self.v = _path_letters(sigma.paths[v_bi], orientation)
        self.start = checker.q.letter_target(self.u[-1])
        self.goal = checker.q.letter_source(self.v[0])
        self.found: list[SequentialWalkCertificate] = []

    def run(self, bound: int) -> list[SequentialWalkCertificate]:
        ck, q = self.ck, self.q
        if self.mode == "walk":
            interiors = ck.branch_interiors(self.rho_i, self.sigma_i)
            if self.start in interiors or self.goal in interiors:
                return []
            self.blocked_arrows = ck.branch_arrow_set(self.rho_i, self.sigma_i)
            self.forbidden = ck.forbidden_subpaths(self.rho_i, self.sigma_i)
        else:
            self.blocked_arrows = set()
            self.forbidden = frozenset()
        self.dist = _undirected_distances(q, self.goal)
        if self.dist.get(self.start, bound + 1) > bound:
            return []
        self._dfs(self.start, [], bound)
        return self.found

    def _emit(self, letters: list[tuple[int, int]]):
        w_prime = tuple(letters)
        if self.mode == "walk":
            result = self.ck.check(self.rho_i, self.u_bi, self.sigma_i,
                                   self.v_bi, w_prime, self.orientation)
        else:
            result = self._check_pair(w_prime)
        if result.ok:
            self.found.append(SequentialWalkCertificate(
                rho_index=self.rho_i, u_branch=self.u_bi,
                sigma_index=self.sigma_i, v_branch=self.v_bi,
                w_prime=w_prime, orientation=self.orientation,
                full_letters=self.u + w_prime + self.v,
            ))

    def _check_pair(self, w_prime: Letters) -> CheckResult:
        letters = self.u + w_prime + self.v
        if not is_reduced(letters):
            return CheckResult(False, ("a",), "(a): walk is not reduced")
        for p in directed_subpaths(self.q, w_prime) if w_prime else ():
            if self.ck.in_ideal(p):
                return CheckResult(
                    False, ("b1",),
                    f"(b1): interior subpath {self.q.path_name(p)} is a relation",
                )
        return CheckResult(True)

    def _dfs(self, point: str, letters: list, bound: int):
        if point == self.goal:
            self._emit(letters)
        remaining = bound - len(letters)
        if remaining <= 0:
            return
        prev = letters[-1] if letters else self.u[-1]
        for ltr in _incident_letters(self.q, point):
            if ltr[0] == prev[0] and ltr[1] == -prev[1]:
                continue  # immediate cancellation
            if self.mode == "walk" and ltr[0] in self.blocked_arrows:
                continue  # (c) can never recover
            nxt = self.q.letter_target(ltr)
            if self.dist.get(nxt, bound + 1) > remaining - 1:
                continue
            if not self._new_subpaths_ok(letters, ltr):
                continue
            letters.append(ltr)
            self._dfs(nxt, letters, bound)
            letters.pop()

    def _new_subpaths_ok(self, letters: list, ltr) -> bool:
        """Incremental (b1)/(b2) pruning for intervals ending at the new letter."""
        combined = list(self.u) + letters + [ltr]
        new_idx = len(combined) - 1
        sign = ltr[1]
        run_start = new_idx
        while run_start > 0 and combined[run_start - 1][1] == sign:
            run_start -= 1
        lu = len(self.u)
        for s in range(run_start, new_idx):
            p = run_path(self.q, combined, s, new_idx)
            if self.mode == "walk":
                # an ideal member is only allowed when it covers all of u
                if s != 0 and self.ck.in_ideal(p):
                    return False
                if s >= lu and p in self.forbidden:
                    return False
            else:
                if s >= lu and self.ck.in_ideal(p):
                    return False
        return True


def _candidate_grid(tops, monomial_only: bool):
    for rho_i, rho in enumerate(tops):
        for sigma_i, sigma in enumerate(tops):
            if monomial_only and (not rho.is_monomial or not sigma.is_monomial):
                continue
            for orientation in ("forward", "inverse"):
                for u_bi in range(len(rho.paths)):
                    for v_bi in range(len(sigma.paths)):
                        yield rho_i, u_bi, sigma_i, v_bi, orientation


def _sort_key(cert: SequentialWalkCertificate):
    return (
        cert.rho_index,
        cert.sigma_index,
        len(cert.w_prime),
        cert.w_prime,
        cert.orientation != "forward",
        cert.u_branch,
        cert.v_branch,
    )


def _detect(a: TruncatedAlgebra, cfg: DetectorConfig, mode: str):
    checker = _Checker(a, strict_subpaths=cfg.strict_subpaths)
    bound = cfg.walk_bound(a)
    monomial_only = mode == "pair"
    if monomial_only and any(not g.is_monomial for g in a.generators):
        raise NotMonomialAlgebra("sequential pairs need a monomial presentation")
    tasks = list(_candidate_grid(checker.tops, monomial_only))

    def work(task):
        rho_i, u_bi, sigma_i, v_bi, orientation = task
        search = _WalkSearch(checker, cfg, mode, rho_i, u_bi, sigma_i, v_bi,
                             orientation)
        return search.run(bound)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            chunks = list(pool.map(work, tasks))
    else:
        chunks = [work(t) for t in tasks]
    found = [c for chunk in chunks for c in chunk]
    found.sort(key=_sort_key)
    return found


def detect_sequential_walks(a: TruncatedAlgebra,
                            cfg: DetectorConfig | None = None):
    """All sequential walks with interior length up to the configured bound."""
    return _detect(a, cfg or DetectorConfig(), "walk")


def detect_sequential_pairs(a: TruncatedAlgebra,
                            cfg: DetectorConfig | None = None):
    """Reduced walks joining two same-direction monomial relations whose
    interior contains no relation (junction overlaps are not excluded)."""
    return _detect(a, cfg or DetectorConfig(), "pair")


# -- string algebras, bands, intertwined double zeros -----------------------


def is_monomial_algebra(a: TruncatedAlgebra) -> bool:
    return all(g.is_monomial for g in a.generators)


def is_string_algebra(a: TruncatedAlgebra) -> bool:
    """Monomial, at most two arrows in and out per point, and at most one
    composable continuation outside the ideal on each side of each arrow."""
    a._require_admissible()
    if not is_monomial_algebra(a):
        return False
    q = a.quiver
    for p in q.points:
        if len(q.out_arrows[p]) > 2 or len(q.in_arrows[p]) > 2:
            return False
    for i, arr in enumerate(q.arrows):
        succ = [
            j for j in q.out_arrows[arr.target]
            if not a.path_in_ideal(q.path_from_indices((i, j)))
        ]
        pred = [
            j for j in q.in_arrows[arr.source]
            if not a.path_in_ideal(q.path_from_indices((j, i)))
        ]
        if len(succ) > 1 or len(pred) > 1:
            return False
    return True


def _rotations(letters: Letters):
    n = len(letters)
    for k in range(n):
        yield letters[k:] + letters[:k]


def _is_proper_power(letters: Letters) -> bool:
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and letters == letters[:d] * (n // d):
            return True
    return False


def find_bands(a: TruncatedAlgebra, cfg: DetectorConfig | None = None):
    """Primitive cyclic reduced walks using both directions, every rotation of
    whose square is reduced and relation-free; one representative per
    rotation/inversion class."""
    cfg = cfg or DetectorConfig()
    if not is_string_algebra(a):
        raise NotStringAlgebra("band search needs a string algebra")
    checker = _Checker(a)
    q = a.quiver
    bound = cfg.band_bound(a)
    canon: set[Letters] = set()

    def doubled_ok(letters: Letters) -> bool:
        dd = letters + letters
        if not is_reduced(dd):
            return False
        for rs, re_, _sign in directed_runs(dd):
            for s in range(rs, re_ + 1):
                for e in range(s + 1, re_ + 1):
                    if e - s + 1 > len(letters):
                        continue
                    if checker.in_ideal(run_path(q, dd, s, e)):
                        return False
        return True

    def consider(letters: Letters):
        signs = {s for _, s in letters}
        if len(signs) != 2 or _is_proper_power(letters):
            return
        if not doubled_ok(letters):
            return
        variants = list(_rotations(letters)) + list(_rotations(inverse(letters)))
        canon.add(min(variants))

    def dfs(start: str, point: str, letters: list):
        if letters and point == start and len(letters) >= 2:
            consider(tuple(letters))
        if len(letters) >= bound:
            return
        for ltr in _incident_letters(q, point):
            if letters and ltr[0] == letters[-1][0] and ltr[1] == -letters[-1][1]:
                continue
            combined = letters + [ltr]
            new_idx = len(combined) - 1
            run_start = new_idx
            while run_start > 0 and combined[run_start - 1][1] == ltr[1]:
                run_start -= 1
            if any(
                checker.in_ideal(run_path(q, combined, s, new_idx))
                for s in range(run_start, new_idx)
            ):
                continue
            letters.append(ltr)
            dfs(start, q.letter_target(ltr), letters)
            letters.pop()

    for start in q.points:
        dfs(start, start, [])
    walks = [Walk(c) for c in sorted(canon, key=lambda c: (len(c), c))]
    return walks


@dataclass(frozen=True)
class IntertwinedCertificate:
    """A double zero with a band pinched between the two relations."""

    rho_index: int
    sigma_index: int
    w1: Letters
    band: Letters
    w3: Letters
    orientation: str
    full_letters: Letters

    @property
    def interior(self) -> Letters:
        return self.w1 + self.band + self.w3

    def as_walk_candidate(self):
        return (self.rho_index, 0, self.sigma_index, 0, self.interior,
                self.orientation)

    def pumped(self, n: int) -> Letters:
        """Interior with the band repeated ``n`` times."""
        return self.w1 + self.band * n + self.w3


def detect_intertwined_double_zero(a: TruncatedAlgebra,
                                   cfg: DetectorConfig | None = None):
    """Walks ``rho1 w1 (band) w3 rho2`` whose stripped interior (both
    relations shaved by one arrow on the far sides) is relation-free."""
    cfg = cfg or DetectorConfig()
    if not is_string_algebra(a):
        raise NotStringAlgebra("intertwined double zeros need a string algebra")
    checker = _Checker(a)
    q = a.quiver
    bands = find_bands(a, cfg)
    segments: set[Letters] = set()
    for b in bands:
        for rot in _rotations(b.letters):
            segments.add(rot)
        for rot in _rotations(inverse(b.letters)):
            segments.add(rot)
    if not segments:
        return []
    bound = cfg.walk_bound(a)
    tops = checker.tops
    out = []
    grid = [
        (r, s, o)
        for r in range(len(tops))
        for s in range(len(tops))
        for o in ("forward", "inverse")
    ]
    for rho_i, sigma_i, orientation in grid:
        rho, sigma = tops[rho_i], tops[sigma_i]
        if not rho.is_monomial or not sigma.is_monomial:
            continue
        u = _path_letters(rho.paths[0], orientation)
        v = _path_letters(sigma.paths[0], orientation)
        start, goal = q.letter_target(u[-1]), q.letter_source(v[0])
        dist = _undirected_distances(q, goal)

        def stripped_ok(interior: Letters) -> bool:
            letters = u + interior + v
            if orientation == "inverse":
                letters = inverse(letters)
            stripped = letters[1:-1]
            for rs, re_, _sign in directed_runs(stripped):
                for s in range(rs, re_ + 1):
                    for e in range(s + 1, re_ + 1):
                        if checker.in_ideal(run_path(q, stripped, s, e)):
                            return False
            return True

        def band_split(interior: Letters):
            for ln in sorted({len(seg) for seg in segments}):
                for s in range(0, len(interior) - ln + 1):
                    chunk = interior[s : s + ln]
                    if chunk in segments:
                        return interior[:s], chunk, interior[s + ln :]
            return None

        def dfs(point, letters):
            if point == goal:
                interior = tuple(letters)
                full = u + interior + v
                if is_reduced(full) and stripped_ok(interior):
                    split = band_split(interior)
                    if split is not None:
                        out.append(IntertwinedCertificate(
                            rho_index=rho_i, sigma_index=sigma_i,
                            w1=split[0], band=split[1], w3=split[2],
                            orientation=orientation, full_letters=full,
                        ))
            if len(letters) >= bound:
                return
            prev = letters[-1] if letters else u[-1]
            for ltr in _incident_letters(q, point):
                if ltr[0] == prev[0] and ltr[1] == -prev[1]:
                    continue
                nxt = q.letter_target(ltr)
                if dist.get(nxt, bound + 1) > bound - len(letters) - 1:
                    continue
                letters.append(ltr)
                dfs(nxt, letters)
                letters.pop()

        if dist.get(start, bound + 1) <= bound:
            dfs(start, [])
    out.sort(key=lambda c: (c.rho_index, c.sigma_index, len(c.interior),
                            c.interior, c.orientation != "forward"))
    return out


# -- relation extension and its walks ---------------------------------------


@dataclass(frozen=True)
class RelationExtension:
    """The quiver with one new arrow per top relation, target to source."""

    quiver: BoundQuiver
    new_arrow_names: tuple[str, ...]
    old_arrow_names: tuple[str, ...]


def relation_extension_quiver(a: TruncatedAlgebra) -> RelationExtension:
    a._require_admissible()
    q = a.quiver
    taken = {arr.name for arr in q.arrows}
    arrows = list(q.arrows)
    new_names = []
    for i, rel in enumerate(a.top_relations()):
        name = f"new{i}"
        while name in taken:
            name += "_"
        taken.add(name)
        new_names.append(name)
        arrows.append(Arrow(name, rel.target, rel.source))
    ext = BoundQuiver(q.name + "_ext", q.points, arrows, (), 2, q.field_char)
    return RelationExtension(
        quiver=ext,
        new_arrow_names=tuple(new_names),
        old_arrow_names=tuple(arr.name for arr in q.arrows),
    )


@dataclass(frozen=True)
class CSequentialWalkCertificate:
    """New arrow, old-arrow interior, new arrow; sequential for every branch pair."""

    rho_index: int
    sigma_index: int
    w_prime: Letters
    branch_certificates: tuple[SequentialWalkCertificate, ...]

    def to_json(self, a: TruncatedAlgebra, ext: RelationExtension) -> dict:
        tops = a.top_relations()
        return {
            "alpha": ext.new_arrow_names[self.rho_index],
            "rho": a.render(tops[self.rho_index]),
            "w_prime": a.quiver.walk_tokens(self.w_prime),
            "beta": ext.new_arrow_names[self.sigma_index],
            "sigma": a.render(tops[self.sigma_index]),
        }


def detect_c_sequential_walks(a: TruncatedAlgebra,
                              cfg: DetectorConfig | None = None):
    """Walks through two new arrows of the relation extension whose old-arrow
    interior makes every branch pair a sequential walk in the base quiver."""
    cfg = cfg or DetectorConfig()
    checker = _Checker(a, strict_subpaths=cfg.strict_subpaths)
    q = a.quiver
    tops = checker.tops
    bound = cfg.walk_bound(a)
    out = []
    for rho_i in range(len(tops)):
        for sigma_i in range(len(tops)):
            rho, sigma = tops[rho_i], tops[sigma_i]
            start, goal = rho.source, sigma.target
            dist = _undirected_distances(q, goal)
            if dist.get(start, bound + 1) > bound:
                continue
            blocked = checker.branch_arrow_set(rho_i, sigma_i)

            def consider(w_prime: Letters):
                certs = []
                for u_bi in range(len(rho.paths)):
                    for v_bi in range(len(sigma.paths)):
                        res = checker.check(rho_i, u_bi, sigma_i, v_bi,
                                            w_prime, "inverse")
                        if not res.ok:
                            return
                        certs.append(SequentialWalkCertificate(
                            rho_index=rho_i, u_branch=u_bi,
                            sigma_index=sigma_i, v_branch=v_bi,
                            w_prime=w_prime, orientation="inverse",
                            full_letters=_path_letters(rho.paths[u_bi], "inverse")
                            + w_prime
                            + _path_letters(sigma.paths[v_bi], "inverse"),
                        ))
                out.append(CSequentialWalkCertificate(
                    rho_index=rho_i, sigma_index=sigma_i, w_prime=w_prime,
                    branch_certificates=tuple(certs),
                ))

            def dfs(point, letters):
                if point == goal:
                    consider(tuple(letters))
                if len(letters) >= bound:
                    return
                for ltr in _incident_letters(q, point):
                    if letters and ltr[0] == letters[-1][0] \
                            and ltr[1] == -letters[-1][1]:
                        continue
                    if ltr[0] in blocked:
                        continue
                    nxt = q.letter_target(ltr)
                    if dist.get(nxt, bound + 1) > bound - len(letters) - 1:
                        continue
                    letters.append(ltr)
                    dfs(nxt, letters)
                    letters.pop()

            dfs(start, [])
    out.sort(key=lambda c: (c.rho_index, c.sigma_index, len(c.w_prime), c.w_prime))
    return out
