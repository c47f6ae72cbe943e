"""Dimension vectors, reflections, skeleton representations and chamber cones.

Dimension vectors and stability parameters are plain mappings from vertex id
to an integer or a Fraction. A cone lives in the hyperplane
Theta_d = {theta : theta . d = 0}; it is stored by its irredundant strict
inequalities (primitive integer covectors) and the primitive integer extreme
rays of its closure, both sorted, so equal cones compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence

from .cyclotomic import CycNum
from .errors import AsymmetricQuiver, DimensionMismatch, EmptyChamber, LoopAtVertex
from .matrix import Matrix, add, is_zero, matmul, scale, zeros
from .qp import QP, Quiver, cyclic_derivative, mutate

__all__ = [
    "DimVector",
    "StabilityParam",
    "SkeletonRep",
    "Cone",
    "pairing",
    "bilinear_form",
    "reflect_dim",
    "reflect_theta",
    "skeleton_subreps",
    "make_cone",
    "chamber_from_cover",
    "reflection_cone",
    "cone_equal",
    "cones_adjacent",
    "verify_skeleton_relations",
    "AsymmetricQuiver",
    "DimensionMismatch",
    "EmptyChamber",
    "LoopAtVertex",
]

DimVector = Mapping[str, int]
StabilityParam = Mapping[str, Fraction]


def pairing(theta: StabilityParam, alpha: DimVector) -> Fraction:
    return sum((Fraction(theta.get(v, 0)) * alpha[v] for v in alpha), Fraction(0))


# ---------------------------------------------------------------------------
# bilinear form and reflections


def _check_symmetric(q: Quiver) -> None:
    ids = q.vertex_ids()
    for i, j in combinations(ids, 2):
        if q.count(i, j) != q.count(j, i):
            raise AsymmetricQuiver(f"{q.count(i, j)} arrows {i}->{j} but {q.count(j, i)} back")


def _form_entry(q: Quiver, i: str, j: str) -> int:
    return 2 if i == j else -q.count(i, j)


def bilinear_form(q: Quiver, alpha: DimVector, beta: DimVector) -> int:
    """(e_i, e_i) = 2 and (e_i, e_j) = -#(i -> j); loops are ignored."""
    _check_symmetric(q)
    ids = q.vertex_ids()
    return sum(alpha.get(i, 0) * beta.get(j, 0) * _form_entry(q, i, j) for i in ids for j in ids)


def _check_reflectable(q: Quiver, i: str) -> None:
    if q.loops_at(i):
        raise LoopAtVertex(f"vertex {i} carries a loop")
    _check_symmetric(q)


def reflect_dim(q: Quiver, i: str, alpha: DimVector) -> dict[str, int]:
    """s_i(alpha) = alpha - (alpha, e_i) e_i."""
    _check_reflectable(q, i)
    out = {v: alpha.get(v, 0) for v in q.vertex_ids()}
    out[i] -= sum(out[j] * _form_entry(q, j, i) for j in out)
    return out


def reflect_theta(q: Quiver, i: str, theta: StabilityParam) -> dict[str, Fraction]:
    """s_i(theta) = theta - theta_i sum_j (e_i, e_j) e_j^*."""
    _check_reflectable(q, i)
    ti = Fraction(theta.get(i, 0))
    return {j: Fraction(theta.get(j, 0)) - ti * _form_entry(q, i, j) for j in q.vertex_ids()}


# ---------------------------------------------------------------------------
# skeletons


@dataclass(frozen=True)
class SkeletonRep:
    """A representation at the origin of a chart, given by 0/scalar matrices.

    Matrices are dim(tail) x dim(head) (row vectors, paths left to right);
    the nonzero entry (r, s) of arrow a is a link from dot (tail, r) to dot
    (head, s).
    """

    chart: str
    dims: tuple[tuple[str, int], ...]
    maps: tuple[tuple[str, str, str, Matrix], ...]  # (arrow, tail, head, matrix)

    @classmethod
    def build(cls, chart: str, quiver: Quiver, maps: Mapping[str, Sequence[Sequence]]) -> "SkeletonRep":
        dims = quiver.dims()
        out = []
        for aid in sorted(maps):
            a = quiver.arrow(aid)
            m = tuple(tuple(CycNum.coerce(x) for x in row) for row in maps[aid])
            if len(m) != dims[a.tail] or any(len(r) != dims[a.head] for r in m):
                raise DimensionMismatch(f"{chart}: arrow {aid} needs a {dims[a.tail]}x{dims[a.head]} matrix")
            if not is_zero(m):
                out.append((aid, a.tail, a.head, m))
        return cls(chart, tuple(dims.items()), tuple(out))

    def dim_vector(self) -> dict[str, int]:
        return dict(self.dims)

    @property
    def dots(self) -> list[tuple[str, int]]:
        return [(v, s) for v, d in self.dims for s in range(d)]

    @property
    def links(self) -> list[tuple[tuple[str, int], tuple[str, int], str, CycNum]]:
        out = []
        for aid, t, h, m in self.maps:
            for r, row in enumerate(m):
                for s, x in enumerate(row):
                    if not x.is_zero():
                        out.append(((t, r), (h, s), aid, x))
        return out

    def matrix(self, aid: str) -> Optional[Matrix]:
        for a, _t, _h, m in self.maps:
            if a == aid:
                return m
        return None

    def relabel(self, chart: str, vertices: Mapping[str, str], arrows: Mapping[str, str]) -> "SkeletonRep":
        # keep the original vertex order so ambient spaces stay aligned
        new_dims = {vertices.get(v, v): d for v, d in self.dims}
        dims = tuple((v, new_dims[v]) for v, _ in self.dims)
        maps = tuple(
            sorted((arrows.get(a, a), vertices.get(t, t), vertices.get(h, h), m) for a, t, h, m in self.maps)
        )
        return SkeletonRep(chart, dims, maps)


def skeleton_subreps(sk: SkeletonRep) -> set[tuple[tuple[str, int], ...]]:
    """Dimension vectors of dot sets closed under outgoing links (proper, nonempty).

    Each vector is returned as a sorted tuple of (vertex, count) pairs over all
    vertices so it is hashable; use dict() to get a mapping.
    """
    dots = sk.dots
    pos = {d: k for k, d in enumerate(dots)}
    succ = [0] * len(dots)
    for src, dst, _a, _x in sk.links:
        succ[pos[src]] |= 1 << pos[dst]
    # reachability closure of every dot
    closure = []
    for k in range(len(dots)):
        seen, stack = 1 << k, [k]
        while stack:
            x = stack.pop()
            nxt = succ[x] & ~seen
            seen |= nxt
            stack.extend(b for b in range(len(dots)) if nxt >> b & 1)
        closure.append(seen)
    # closed sets are exactly the unions of principal closures
    closed = {0}
    for c in closure:
        closed |= {s | c for s in closed}
    full = (1 << len(dots)) - 1
    vertices = [v for v, _ in sk.dims]
    out = set()
    for s in closed:
        if s in (0, full):
            continue
        counts = dict.fromkeys(vertices, 0)
        for k, (v, _slot) in enumerate(dots):
            if s >> k & 1:
                counts[v] += 1
        out.add(tuple(sorted(counts.items())))
    return out


def verify_skeleton_relations(qp: QP, sk: SkeletonRep) -> bool:
    """True iff every cyclic derivative of W vanishes on the skeleton."""
    q = qp.quiver
    dims = q.dims()
    if dict(sk.dims) != dims:
        raise DimensionMismatch(f"{sk.chart}: dimensions {dict(sk.dims)} differ from {dims}")
    mats: dict[str, Matrix] = {}
    for a in q.arrows:
        m = sk.matrix(a.id)
        mats[a.id] = m if m is not None else zeros(dims[a.tail], dims[a.head])
    for aid, _t, _h, _m in sk.maps:
        if aid not in mats:
            raise DimensionMismatch(f"{sk.chart}: arrow {aid} is not in the quiver")
    for a in q.arrows:
        total = zeros(dims[a.head], dims[a.tail])
        for path, c in cyclic_derivative(qp.potential, a.id).items():
            prod = mats[path[0]]
            for x in path[1:]:
                prod = matmul(prod, mats[x])
            total = add(total, scale(c, prod))
        if not is_zero(total):
            return False
    return True


# ---------------------------------------------------------------------------
# exact cones


def _primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def _rank(rows: Sequence[Sequence], ncols: int) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def _double_description(rows: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {x in Q^n : row . x >= 0 for all rows}."""
    basis: list[int] = []
    for k, r in enumerate(rows):
        if _rank([rows[b] for b in basis] + [r], n) > len(basis):
            basis.append(k)
        if len(basis) == n:
            break
    if len(basis) < n:
        raise EmptyChamber("inequalities do not cut out a pointed cone")
    b = [[Fraction(x) for x in rows[k]] for k in basis]
    # columns of the inverse of b are the rays of the initial simplicial cone
    rays = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        rays.append(_primitive(_solve(b, e)))
    done = [rows[k] for k in basis]
    for k, a in enumerate(rows):
        if k in basis:
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        zer = [r for r, v in zip(rays, vals) if v == 0]
        neg = [r for r, v in zip(rays, vals) if v < 0]
        new = pos + zer
        for p in pos:
            for q in neg:
                tight = [h for h in done if _dot(h, p) == 0 and _dot(h, q) == 0]
                if len(tight) < n - 2 or _rank(tight, n) != n - 2:
                    continue
                ap, aq = _dot(a, p), _dot(a, q)
                new.append(_primitive([ap * y - aq * x for x, y in zip(p, q)]))
        done.append(a)
        rays = sorted(set(new))
    return rays


@dataclass(frozen=True)
class Cone:
    ambient: tuple[str, ...]
    equalities: tuple[tuple[int, ...], ...]
    strict: tuple[tuple[int, ...], ...]
    rays: tuple[tuple[int, ...], ...]

    @property
    def facets(self) -> int:
        return len(self.strict)

    def contains(self, theta: StabilityParam) -> bool:
        vec = [Fraction(theta.get(v, 0)) for v in self.ambient]
        return all(_dot(e, vec) == 0 for e in self.equalities) and all(_dot(s, vec) > 0 for s in self.strict)

    def interior_point(self) -> dict[str, Fraction]:
        return {v: Fraction(sum(r[k] for r in self.rays)) for k, v in enumerate(self.ambient)}

    def inequalities(self) -> list[str]:
        return [format_covector(self.ambient, s) + " > 0" for s in self.strict]

    def to_dict(self) -> dict:
        return {
            "ambient": list(self.ambient),
            "equalities": [list(e) for e in self.equalities],
            "strict": [list(s) for s in self.strict],
            "rays": [list(r) for r in self.rays],
        }


def format_covector(ambient: Sequence[str], cov: Sequence[int]) -> str:
    parts = []
    for v, c in zip(ambient, cov):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        parts.append(f"{sign} {mag}theta[{v}]")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def make_cone(ambient: Sequence[str], d: DimVector, covectors: Iterable[Mapping[str, Fraction]]) -> Cone:
    """The cone {theta in Theta_d : theta(alpha) > 0 for every covector alpha}."""
    ambient = tuple(ambient)
    dvec = [Fraction(d.get(v, 0)) for v in ambient]
    p = next(k for k, x in enumerate(dvec) if x != 0)
    free = [k for k in range(len(ambient)) if k != p]
    n = len(free)
    reduced = set()
    for cov in covectors:
        full = [Fraction(cov.get(v, 0)) for v in ambient]
        red = [full[k] - full[p] * dvec[k] / dvec[p] for k in free]
        if all(x == 0 for x in red):
            raise EmptyChamber("a strict inequality is identically zero on Theta_d")
        reduced.add(_primitive(red))
    rows = sorted(reduced)
    if not rows:
        raise EmptyChamber("no inequalities")
    red_rays = _double_description(rows, n)
    for r in rows:
        if all(_dot(r, ray) == 0 for ray in red_rays):
            raise EmptyChamber("strict inequalities have no common solution")
    facets = []
    for r in rows:
        tight = [ray for ray in red_rays if _dot(r, ray) == 0]
        if tight and _rank(tight, n) == n - 1:
            facets.append(r)

    def lift(red: Sequence, covector: bool) -> tuple[int, ...]:
        full = [Fraction(0)] * len(ambient)
        for k, x in zip(free, red):
            full[k] = Fraction(x)
        if not covector:
            full[p] = -sum(dvec[k] * full[k] for k in free) / dvec[p]
        return _primitive(full)

    return Cone(
        ambient,
        (_primitive(dvec),),
        tuple(sorted(lift(f, True) for f in facets)),
        tuple(sorted(lift(r, False) for r in red_rays)),
    )


def cone_equal(a: Cone, b: Cone) -> bool:
    if a.ambient != b.ambient:
        return False
    if _rank(list(a.equalities) + list(b.equalities), len(a.ambient)) != _rank(a.equalities, len(a.ambient)):
        return False
    if _rank(a.equalities, len(a.ambient)) != _rank(b.equalities, len(b.ambient)):
        return False
    return set(a.rays) == set(b.rays)


def cones_adjacent(a: Cone, b: Cone) -> bool:
    """True iff the closures share a wall of codimension one in Theta_d."""

    def wall_inside(x: Cone, y: Cone) -> bool:
        for h in x.strict:
            neg = tuple(-c for c in h)
            if neg not in y.strict:
                continue
            on_wall = [r for r in x.rays if _dot(h, r) == 0]
            mid = [sum(r[k] for r in on_wall) for k in range(len(x.ambient))]
            if all(_dot(s, mid) > 0 for s in y.strict if s != neg):
                return True
        return False

    return wall_inside(a, b) or wall_inside(b, a)


def chamber_from_cover(skeletons: Sequence[SkeletonRep], d: DimVector) -> Cone:
    """Intersection over the charts of {theta(N) > 0 : N a proper subrep of the skeleton}."""
    ambient = [v for v, _ in skeletons[0].dims]
    covectors = []
    for sk in skeletons:
        if dict(sk.dims) != dict(d):
            raise DimensionMismatch(f"{sk.chart}: dimensions {dict(sk.dims)} differ from {dict(d)}")
        covectors.extend(dict(n) for n in skeleton_subreps(sk))
    return make_cone(ambient, d, covectors)


def reflection_cone(qp: QP, word: Sequence[str], d: Optional[DimVector] = None) -> Cone:
    """{theta in Theta_d : theta(w^-1 e_i) > 0, i nontrivial} for w = s_{i1}...s_{im}.

    The k-th reflection is taken in the quiver obtained after the first k-1
    mutations of the word.
    """
    d = dict(d) if d is not None else qp.quiver.dims()
    stages = [qp]
    for k in word[:-1] if word else ():
        stages.append(mutate(stages[-1], k))
    ids = qp.quiver.vertex_ids()
    covectors = []
    for i in ids:
        if i == qp.trivial:
            continue
        alpha = {v: int(v == i) for v in ids}
        for stage, k in zip(reversed(stages), reversed(list(word))):
            alpha = reflect_dim(stage.quiver, k, alpha)
        covectors.append(alpha)
    return make_cone(ids, d, covectors)
