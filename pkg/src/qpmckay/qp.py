"""Quivers with potential: cyclic derivatives, gradings, reduction, mutation.

Paths compose left to right: the word (a, b) means "a then b", so
head(a) == tail(b). A potential maps canonical cycles (the lexicographically
least rotation of the arrow-id tuple) to nonzero CycNum coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .cyclotomic import CycNum
from .errors import Infeasible, LoopAtVertex, ReductionFailed

__all__ = [
    "Vertex",
    "Arrow",
    "Quiver",
    "Potential",
    "QP",
    "canonical_rotation",
    "cyclic_derivative",
    "find_grading",
    "reduce",
    "premutate",
    "mutate",
    "adjacency_signature",
    "qp_to_json",
    "qp_from_json",
    "qp_to_dot",
    "Infeasible",
    "LoopAtVertex",
    "ReductionFailed",
]

Path = tuple[str, ...]


@dataclass(frozen=True)
class Vertex:
    id: str
    label: str
    dim: int


@dataclass(frozen=True)
class Arrow:
    id: str
    name: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        ids = {v.id for v in self.vertices}
        seen = set()
        for a in self.arrows:
            if a.tail not in ids or a.head not in ids:
                raise ValueError(f"arrow {a.id} has an unknown endpoint")
            if a.id in seen:
                raise ValueError(f"duplicate arrow id {a.id}")
            seen.add(a.id)

    def arrow(self, aid: str) -> Arrow:
        return self._arrow_map()[aid]

    def _arrow_map(self) -> dict[str, Arrow]:
        cache = self.__dict__.get("_amap")
        if cache is None:
            cache = {a.id: a for a in self.arrows}
            object.__setattr__(self, "_amap", cache)
        return cache

    def has_arrow(self, aid: str) -> bool:
        return aid in self._arrow_map()

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def vertex_ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    def dims(self) -> dict[str, int]:
        return {v.id: v.dim for v in self.vertices}

    def loops_at(self, vid: str) -> int:
        return sum(1 for a in self.arrows if a.tail == vid and a.head == vid)

    def count(self, i: str, j: str) -> int:
        return sum(1 for a in self.arrows if a.tail == i and a.head == j)


# ---------------------------------------------------------------------------
# potentials


def canonical_rotation(cycle: Iterable[str]) -> Path:
    c = tuple(cycle)
    if not c:
        return c
    return min(c[i:] + c[:i] for i in range(len(c)))


class Potential:
    """Immutable formal sum of cycles, keyed by canonical rotation."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Path, CycNum] | Iterable[tuple[Path, CycNum]] = ()):
        acc: dict[Path, CycNum] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for cyc, coeff in items:
            key = canonical_rotation(cyc)
            acc[key] = acc.get(key, CycNum(0)) + CycNum.coerce(coeff)
        self._terms = {k: v for k, v in sorted(acc.items()) if not v.is_zero()}

    def items(self):
        return self._terms.items()

    def cycles(self) -> list[Path]:
        return list(self._terms)

    def coeff(self, cycle: Iterable[str]) -> CycNum:
        return self._terms.get(canonical_rotation(cycle), CycNum(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Potential) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def arrows_used(self) -> set[str]:
        return {a for c in self._terms for a in c}

    def scaled(self, c) -> "Potential":
        c = CycNum.coerce(c)
        return Potential({k: v * c for k, v in self._terms.items()})

    def __add__(self, other: "Potential") -> "Potential":
        return Potential(list(self._terms.items()) + list(other._terms.items()))

    def __repr__(self) -> str:
        return f"Potential({format_potential(self)})"


def format_potential(w: Potential, sep: str = "*") -> str:
    if not len(w):
        return "0"
    parts = []
    for cyc, c in w.items():
        word = sep.join(cyc)
        parts.append(f"({c}){sep}{word}")
    return " + ".join(parts)


@dataclass(frozen=True)
class QP:
    quiver: Quiver
    potential: Potential
    grading: Optional[Mapping[str, Fraction]] = field(default=None, compare=False)
    hom_degree: Optional[Fraction] = field(default=None, compare=False)
    trivial: str = "0"

    def with_grading(self, grading, d) -> "QP":
        return replace(self, grading=dict(grading), hom_degree=Fraction(d))


# ---------------------------------------------------------------------------
# cyclic derivative and substitution


def cyclic_derivative(w: Potential, a: str) -> dict[Path, CycNum]:
    out: dict[Path, CycNum] = {}
    for cyc, c in w.items():
        n = len(cyc)
        for i, x in enumerate(cyc):
            if x == a:
                path = cyc[i + 1 :] + cyc[:i]
                out[path] = out.get(path, CycNum(0)) + c
    return {p: c for p, c in sorted(out.items()) if not c.is_zero()}


def _substitute(w: Potential, y: str, expr: Mapping[Path, CycNum]) -> Potential:
    """Replace every occurrence of arrow y by the linear combination expr."""
    out: list[tuple[Path, CycNum]] = []
    for cyc, c in w.items():
        partial: list[tuple[Path, CycNum]] = [((), c)]
        for x in cyc:
            if x == y:
                partial = [(p + q, k * e) for p, k in partial for q, e in expr.items()]
            else:
                partial = [(p + (x,), k) for p, k in partial]
        out.extend(partial)
    return Potential(out)


# ---------------------------------------------------------------------------
# gradings


def find_grading(qp: QP, target=3) -> QP:
    """Nonnegative rational arrow degrees making every term homogeneous of degree target.

    Solved exactly: the homogeneity equations are put in reduced row echelon
    form and the free degrees are chosen to maximize the smallest degree
    (an LP, solved by scipy and then made exact by back-substitution).
    """
    d = Fraction(target)
    arrows = [a.id for a in qp.quiver.arrows]
    pos = {a: i for i, a in enumerate(arrows)}
    rows = []
    for cyc, _ in qp.potential.items():
        r = [Fraction(0)] * len(arrows)
        for x in cyc:
            r[pos[x]] += 1
        rows.append(r + [d])
    grading = _solve_grading(rows, len(arrows), d)
    if grading is None:
        raise Infeasible("no nonnegative grading exists")
    return qp.with_grading({a: grading[i] for i, a in enumerate(arrows)}, d)


def _rref(rows: list[list[Fraction]], ncols: int):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        f = rows[r][c]
        rows[r] = [x / f for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                g = rows[i][c]
                rows[i] = [x - g * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], rows[r:], pivots


def _solve_grading(rows, n, d):
    if not rows:
        return [d / 2] * n if n else []
    red, rest, pivots = _rref(rows, n)
    if any(r[n] != 0 for r in rest):
        return None
    free = [c for c in range(n) if c not in pivots]

    def complete(free_vals):
        x = [Fraction(0)] * n
        for c, v in zip(free, free_vals):
            x[c] = v
        for r, pc in zip(red, pivots):
            x[pc] = r[n] - sum(r[c] * x[c] for c in free)
        return x

    if not free:
        x = complete([])
        return x if all(v >= 0 for v in x) else None
    # maximize t subject to x >= t, x <= d, expressed in the free variables
    from scipy.optimize import linprog

    k = len(free)
    a_ub, b_ub = [], []
    for c in range(n):
        # x_c = const_c - sum coef_c,f * y_f
        if c in free:
            coef = [Fraction(int(f == c)) for f in free]
            const = Fraction(0)
        else:
            r = red[pivots.index(c)]
            coef = [-r[f] for f in free]
            const = r[n]
        # t - x_c <= 0  ->  t - const - coef.y <= 0
        a_ub.append([float(-v) for v in coef] + [1.0])
        b_ub.append(float(const))
        # x_c <= d
        a_ub.append([float(v) for v in coef] + [0.0])
        b_ub.append(float(d - const))
    res = linprog(
        c=[0.0] * k + [-1.0],
        A_ub=a_ub,
        b_ub=b_ub,
        bounds=[(None, None)] * k + [(None, float(d))],
        method="highs",
    )
    if res.status != 0 or res.x[-1] < -1e-9:
        return None
    for den in (1, 2, 3, 4, 6, 12, 60, 1000):
        vals = [Fraction(v).limit_denominator(den) for v in res.x[:k]]
        x = complete(vals)
        if all(v >= 0 for v in x):
            return x
    return None


# ---------------------------------------------------------------------------
# reduction


def _two_cycle_terms(qp: QP):
    for cyc, c in qp.potential.items():
        if len(cyc) == 2 and cyc[0] != cyc[1]:
            yield cyc, c


def reduce(qp: QP) -> QP:
    """Remove the trivial part: eliminate every 2-cycle term and its arrows."""
    if qp.grading is None:
        qp = find_grading(qp, 3)
    grading = dict(qp.grading)
    w = qp.potential
    removed: list[str] = []
    limit = len(qp.quiver.arrows) + 1
    for _ in range(limit):
        terms = list(_two_cycle_terms(QP(qp.quiver, w)))
        if not terms:
            break
        # pick the pair whose larger-degree partner has the largest degree
        def key(item):
            (p, q), _c = item
            hi = max((grading[p], p), (grading[q], q))
            return (-hi[0], hi[1])

        (p, q), c = min(terms, key=key)
        x, y = (p, q) if (grading[p], p) >= (grading[q], q) else (q, p)
        # W = c x y + (rest); dW/dx = c y + R, so y := -c^-1 R
        dx = cyclic_derivative(w, x)
        if dx.get((y,), CycNum(0)) != c:
            raise ReductionFailed(f"2-cycle {x}{y} does not split off cleanly")
        rest = {path: k for path, k in dx.items() if path != (y,)}
        inv = c.inverse()
        expr = {path: -k * inv for path, k in rest.items()}
        if any(y in path for path in expr):
            raise ReductionFailed(f"substitution for {y} contains {y}")
        w = _substitute(w, y, expr)
        if x in w.arrows_used() or y in w.arrows_used():
            raise ReductionFailed(f"arrows {x}, {y} survive the substitution")
        removed.extend([x, y])
    else:
        if list(_two_cycle_terms(QP(qp.quiver, w))):
            raise ReductionFailed("reduction did not terminate")
    gone = set(removed)
    quiver = Quiver(qp.quiver.vertices, tuple(a for a in qp.quiver.arrows if a.id not in gone))
    new = QP(quiver, w, trivial=qp.trivial)
    return find_grading(new, qp.hom_degree or 3) if len(w) else new


def eliminated_arrows(before: QP, after: QP) -> list[str]:
    keep = {a.id for a in after.quiver.arrows}
    return [a.id for a in before.quiver.arrows if a.id not in keep]


# ---------------------------------------------------------------------------
# mutation


def _star(name: str) -> str:
    return name + "*"


def _composite(a: str, b: str) -> str:
    return f"[{a}{b}]"


def premutate(qp: QP, k: str) -> QP:
    q = qp.quiver
    if q.loops_at(k):
        raise LoopAtVertex(f"vertex {k} carries a loop")
    incoming = [a for a in q.arrows if a.head == k]
    outgoing = [b for b in q.arrows if b.tail == k]
    keep = [a for a in q.arrows if a.head != k and a.tail != k]
    new_arrows = list(keep)
    composites = {}
    for a in incoming:
        for b in outgoing:
            cid = _composite(a.id, b.id)
            composites[(a.id, b.id)] = cid
            new_arrows.append(Arrow(cid, cid, a.tail, b.head))
    for a in incoming:
        new_arrows.append(Arrow(_star(a.id), _star(a.name), k, a.tail))
    for b in outgoing:
        new_arrows.append(Arrow(_star(b.id), _star(b.name), b.head, k))
    # [W]: replace each passage a b through k by the composite
    out: list[tuple[Path, CycNum]] = []
    for cyc, c in qp.potential.items():
        arrows = [q.arrow(x) for x in cyc]
        if all(x.head != k for x in arrows):
            out.append((cyc, c))
            continue
        # rotate so the word starts with an arrow whose tail is not k
        start = next(i for i, x in enumerate(arrows) if x.tail != k)
        rot = cyc[start:] + cyc[:start]
        word: list[str] = []
        i = 0
        while i < len(rot):
            x = q.arrow(rot[i])
            if x.head == k:
                word.append(composites[(rot[i], rot[i + 1])])
                i += 2
            else:
                word.append(rot[i])
                i += 1
        out.append((tuple(word), c))
    # Delta = sum [ab] b* a*
    for (a, b), cid in composites.items():
        out.append(((cid, _star(b), _star(a)), CycNum(1)))
    dims = q.dims()
    new_dim = sum(dims[a.tail] for a in incoming) - dims[k]
    vertices = tuple(replace(v, dim=new_dim) if v.id == k else v for v in q.vertices)
    return QP(Quiver(vertices, tuple(sorted(new_arrows, key=lambda a: a.id))), Potential(out), trivial=qp.trivial)


def mutate(qp: QP, k: str) -> QP:
    pre = premutate(qp, k)
    return reduce(find_grading(pre, qp.hom_degree or 3))


def adjacency_signature(q: Quiver | QP) -> tuple[tuple[int, ...], ...]:
    if isinstance(q, QP):
        q = q.quiver
    ids = q.vertex_ids()
    pos = {v: i for i, v in enumerate(ids)}
    m = [[0] * len(ids) for _ in ids]
    for a in q.arrows:
        m[pos[a.tail]][pos[a.head]] += 1
    return tuple(tuple(r) for r in m)


# ---------------------------------------------------------------------------
# JSON


def qp_to_dict(qp: QP) -> dict:
    field_n = 1
    for _, c in qp.potential.items():
        field_n = _lcm(field_n, c.conductor)
    return {
        "field": field_n,
        "vertices": [{"id": v.id, "label": v.label, "dim": v.dim} for v in qp.quiver.vertices],
        "arrows": [
            {"id": a.id, "name": a.name, "tail": a.tail, "head": a.head} for a in qp.quiver.arrows
        ],
        "potential": [{"coeff": c.to_json(), "cycle": list(cyc)} for cyc, c in qp.potential.items()],
    }


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def qp_to_json(qp: QP) -> str:
    return json.dumps(qp_to_dict(qp), ensure_ascii=False, separators=(",", ":"))


def qp_from_dict(obj: dict, trivial: str = "0") -> QP:
    vertices = tuple(Vertex(str(v["id"]), str(v["label"]), int(v["dim"])) for v in obj["vertices"])
    arrows = tuple(
        Arrow(str(a["id"]), str(a["name"]), str(a["tail"]), str(a["head"])) for a in obj["arrows"]
    )
    quiver = Quiver(vertices, arrows)
    terms = [(tuple(t["cycle"]), CycNum.from_json(t["coeff"])) for t in obj["potential"]]
    for cyc, _ in terms:
        _check_cycle(quiver, cyc)
    return QP(quiver, Potential(terms), trivial=trivial)


def qp_from_json(text: str, trivial: str = "0") -> QP:
    return qp_from_dict(json.loads(text), trivial)


def _check_cycle(q: Quiver, cyc: Path) -> None:
    if not cyc:
        raise ValueError("empty cycle")
    for x, y in zip(cyc, cyc[1:] + cyc[:1]):
        if q.arrow(x).head != q.arrow(y).tail:
            raise ValueError(f"cycle {cyc} is not closed")


def qp_to_dot(qp: QP) -> str:
    """The quiver as a DOT digraph; vertices are labelled with their dimension."""
    lines = ["digraph quiver {"]
    for v in qp.quiver.vertices:
        lines.append(f'  "{v.id}" [label="{v.label} ({v.dim})"];')
    for a in qp.quiver.arrows:
        lines.append(f'  "{a.tail}" -> "{a.head}" [label="{a.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
