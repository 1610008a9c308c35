"""Seeded random bound-quiver families for the property suites.

Generation lives in the test tree on purpose: the shipped package never
produces random inputs.  All draws go through `random.Random` with fixed
seeds, so every suite sees the same corpus on every run.
"""

from __future__ import annotations

import random

from seqwalk.algebra import TruncatedAlgebra, build_auto
from seqwalk.errors import NotAdmissible, PathExplosion
from seqwalk.homology import global_dimension, is_tree
from seqwalk.quiver import Arrow, BoundQuiver, RelationExpr
from fractions import Fraction


def _random_quiver(rng: random.Random, max_points=6, max_arrows=8):
    n = rng.randint(2, max_points)
    points = [str(i + 1) for i in range(n)]
    n_arrows = rng.randint(n - 1, max_arrows)
    arrows = []
    for k in range(n_arrows):
        src = rng.choice(points)
        tgt = rng.choice(points)
        arrows.append(Arrow(f"r{k}", src, tgt))
    return points, arrows


def _random_paths(rng, points, arrows, count, length_range=(2, 3)):
    byname = {a.name: a for a in arrows}
    out_of = {p: [a for a in arrows if a.source == p] for p in points}
    found = []
    for _ in range(count * 6):
        if len(found) >= count:
            break
        length = rng.randint(*length_range)
        start = rng.choice(points)
        path = []
        pt = start
        for _ in range(length):
            options = out_of[pt]
            if not options:
                break
            arr = rng.choice(options)
            path.append(arr.name)
            pt = arr.target
        if len(path) == length and tuple(path) not in found:
            found.append(tuple(path))
    return found


def _free_path_bound(arrows, branches, cap=8):
    """Longest relation-free path length, or None when it reaches ``cap``.

    Walks the automaton of (endpoint, recent arrows) states; a monomial ideal
    is admissible exactly at one more than this bound.
    """
    window = max((len(br) for br in branches), default=2) - 1
    branch_set = {br for br in branches}

    def blocked(recent, nxt):
        seq = recent + (nxt,)
        for ln in range(2, len(seq) + 1):
            if seq[-ln:] in branch_set:
                return True
        return False

    by_source: dict[str, list] = {}
    for a in arrows:
        by_source.setdefault(a.source, []).append(a)
    best = 0
    stack = [(a.target, (a.name,), 1) for a in arrows]
    while stack:
        point, recent, length = stack.pop()
        best = max(best, length)
        if length >= cap:
            return None
        for a in by_source.get(point, ()):
            if not blocked(recent, a.name):
                stack.append((a.target, (recent + (a.name,))[-window:], length + 1))
    return best


def monomial_corpus(count=200, seed=20260810):
    """Admissible random monomial algebras, at most 6 points and 8 arrows."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        points, arrows = _random_quiver(rng)
        branches = _random_paths(rng, points, arrows, rng.randint(1, 4))
        if not branches:
            continue
        bound = _free_path_bound(arrows, [tuple(b) for b in branches])
        if bound is None:
            continue
        relations = [RelationExpr(((Fraction(1), br),)) for br in branches]
        try:
            quiver = BoundQuiver(
                f"mono{len(out)}", points, arrows, relations,
                truncation=max(2, bound + 1),
            )
            alg = build_auto(quiver, n_cap=max(2, bound + 1),
                             explicit=True, path_cap=2_500)
        except (NotAdmissible, PathExplosion, ValueError):
            continue
        out.append(alg)
    return out


def nakayama_gldim2_corpus(count=50, seed=31415926):
    """Linear Nakayama algebras of global dimension exactly two."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, 7)
        points = [str(i + 1) for i in range(n)]
        arrows = [Arrow(f"s{i}", str(i + 1), str(i + 2)) for i in range(n - 1)]
        k = rng.randint(1, max(1, n - 2))
        rels = set()
        for _ in range(k):
            length = rng.randint(2, min(3, n - 1))
            start = rng.randint(0, n - 1 - length)
            rels.add(tuple(f"s{start + j}" for j in range(length)))
        relations = [RelationExpr(((Fraction(1), br),)) for br in sorted(rels)]
        try:
            quiver = BoundQuiver(
                f"naka{len(out)}", points, arrows, relations, truncation=5
            )
            alg = build_auto(quiver, n_cap=9)
        except (NotAdmissible, ValueError):
            continue
        if global_dimension(alg) == 2:
            out.append(alg)
    return out


def tree_monomial_gldim2_corpus(count=50, seed=27182818):
    """Tree-shaped monomial algebras of global dimension exactly two."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(4, 8)
        points = [str(i + 1) for i in range(n)]
        arrows = []
        for i in range(1, n):
            other = rng.randint(0, i - 1)
            if rng.random() < 0.5:
                arrows.append(Arrow(f"t{i}", points[other], points[i]))
            else:
                arrows.append(Arrow(f"t{i}", points[i], points[other]))
        branches = _random_paths(rng, points, arrows, rng.randint(1, 3))
        if not branches:
            continue
        relations = [RelationExpr(((Fraction(1), br),))
                     for br in sorted(set(branches))]
        try:
            quiver = BoundQuiver(
                f"tree{len(out)}", points, arrows, relations, truncation=5
            )
            alg = build_auto(quiver, n_cap=9)
        except (NotAdmissible, ValueError):
            continue
        if not is_tree(alg):
            continue
        if global_dimension(alg) == 2:
            out.append(alg)
    return out
