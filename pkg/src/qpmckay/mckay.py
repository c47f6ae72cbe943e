"""McKay quivers and their potentials from explicit equivariant maps.

An arrow a: i -> j is realized by a (dim V_i) x (dim V_j) matrix whose
entries are linear forms in v1, v2, v3. Vectors are rows and paths compose
left to right as matrix products, so equivariance reads

    rho_i(g) M = g(M) rho_j(g),   g(v_k) = sum_l g[k][l] v_l.

For a closed path p = (a, b, c) the antisymmetrizer contracts the three
linear-form factors of Ma Mb Mc into a scalar matrix c_p Id, and the
potential is W = 1/3 sum over all closed 3-paths of c_p dim(V at the base) p,
collected up to rotation (c_p dim is rotation invariant by the trace).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Sequence

from . import matrix as mx
from .cyclotomic import CycNum, root_of_unity
from .errors import NotScalar
from .grouprep import GroupModel, GroupSpec, build_group, icosahedral_constants, tensor_multiplicity
from .qp import QP, Arrow, Potential, Quiver, Vertex, canonical_rotation

__all__ = [
    "LinForm",
    "EquivariantMap",
    "build_mckay_quiver",
    "equivariant_maps",
    "is_equivariant",
    "cycle_constant",
    "build_potential",
    "mckay_qp",
    "NotScalar",
]


class LinForm:
    """A linear form c1 v1 + c2 v2 + c3 v3 with CycNum coefficients."""

    __slots__ = ("c",)

    def __init__(self, c1=0, c2=0, c3=0):
        self.c = (CycNum.coerce(c1), CycNum.coerce(c2), CycNum.coerce(c3))

    def __add__(self, o):
        if isinstance(o, int) and o == 0:
            return self
        return LinForm(*(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return LinForm(*(-x for x in self.c))

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, k):
        k = CycNum.coerce(k)
        return LinForm(*(k * x for x in self.c))

    __rmul__ = __mul__

    def __eq__(self, o):
        if isinstance(o, int) and o == 0:
            return self.is_zero()
        return isinstance(o, LinForm) and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.c)

    def act(self, g) -> "LinForm":
        # g(v_k) = sum_l g[k][l] v_l, so the coefficient of v_l is sum_k g[k][l] c_k
        return LinForm(*(sum((g[k][l] * self.c[k] for k in range(3)), CycNum(0)) for l in range(3)))

    def __repr__(self):
        terms = [f"({x})v{i + 1}" for i, x in enumerate(self.c) if not x.is_zero()]
        return " + ".join(terms) or "0"


ZERO_FORM = LinForm()
v1, v2, v3 = LinForm(1, 0, 0), LinForm(0, 1, 0), LinForm(0, 0, 1)

FormMatrix = tuple[tuple[LinForm, ...], ...]


def _fm(rows: Sequence[Sequence]) -> FormMatrix:
    return tuple(tuple(ZERO_FORM if (isinstance(x, int) and x == 0) else x for x in r) for r in rows)


def _col(*xs) -> FormMatrix:
    return _fm([[x] for x in xs])


def _row(*xs) -> FormMatrix:
    return _fm([list(xs)])


def _diag(*xs) -> FormMatrix:
    n = len(xs)
    return _fm([[xs[i] if i == j else 0 for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class EquivariantMap:
    arrow: str
    tail: str
    head: str
    entries: FormMatrix  # dim V_tail x dim V_head


# ---------------------------------------------------------------------------
# fixture data: arrows (name, tail, head) and their maps, per family


def _cyclic_maps(order: int) -> list[EquivariantMap]:
    out = []
    for i in range(order):
        j = (i + 1) % order
        out.append(EquivariantMap(f"a{i}", str(i), str(j), _fm([[v2]])))
        out.append(EquivariantMap(f"b{i}", str(j), str(i), _fm([[v1]])))
        out.append(EquivariantMap(f"c{i}", str(i), str(i), _fm([[v3]])))
    return out


def _dihedral_maps(n: int) -> list[EquivariantMap]:
    m = n // 2
    out = [
        EquivariantMap("a", "0", "0'", _fm([[v3]])),
        EquivariantMap("A", "0'", "0", _fm([[v3]])),
        EquivariantMap("c", "0", "1", _row(v2, v1)),
        EquivariantMap("C", "1", "0", _col(v1, v2)),
        EquivariantMap("d0", "0'", "1", _row(v2, -v1)),
        EquivariantMap("D0", "1", "0'", _col(v1, -v2)),
    ]
    last = m - 1 if n % 2 == 0 else m  # last 2-dimensional vertex
    for i in range(1, last):
        out.append(EquivariantMap(f"d{i}", str(i), str(i + 1), _diag(v2, v1)))
        out.append(EquivariantMap(f"D{i}", str(i + 1), str(i), _diag(v1, v2)))
    for i in range(1, last + 1):
        out.append(EquivariantMap(f"u{i}", str(i), str(i), _diag(v3, -v3)))
    if n % 2:
        out.append(EquivariantMap("v", str(m), str(m), _fm([[0, v2], [v1, 0]])))
    else:
        k, mm, mp = str(m - 1), str(m), f"{m}'"
        out += [
            # the tabulated (-v1, -v2) and (-v2, -v1) are not equivariant; one sign flips
            EquivariantMap("b'", mp, k, _row(-v1, v2)),
            EquivariantMap("B'", k, mp, _col(-v2, v1)),
            EquivariantMap("c'", mm, k, _row(v1, v2)),
            EquivariantMap("C'", k, mm, _col(v2, v1)),
            EquivariantMap("a'", mm, mp, _fm([[v3]])),
            EquivariantMap("A'", mp, mm, _fm([[v3]])),
        ]
    return out


def _tetrahedral_maps() -> list[EquivariantMap]:
    w = root_of_unity(3, 1)
    w2 = w * w
    return [
        EquivariantMap("a", "0", "3", _row(v1, v2, v3)),
        EquivariantMap("A", "3", "0", _col(v1, v2, v3)),
        # with the character-table labelling, V1 carries the omega^2-twisted maps
        EquivariantMap("b", "1", "3", _row(v1, w2 * v2, w * v3)),
        EquivariantMap("B", "3", "1", _col(v1, w * v2, w2 * v3)),
        EquivariantMap("c", "2", "3", _row(v1, w * v2, w2 * v3)),
        EquivariantMap("C", "3", "2", _col(v1, w2 * v2, w * v3)),
        EquivariantMap("u", "3", "3", _fm([[0, 0, v2], [v3, 0, 0], [0, v1, 0]])),
        EquivariantMap("v", "3", "3", _fm([[0, v3, 0], [0, 0, v1], [v2, 0, 0]])),
    ]


def _octahedral_maps() -> list[EquivariantMap]:
    w = root_of_unity(3, 1)
    w2 = w * w
    sym = _fm([[0, v3, v2], [v3, 0, v1], [v2, v1, 0]])
    alt = _fm([[0, -v3, v2], [v3, 0, -v1], [-v2, v1, 0]])
    return [
        EquivariantMap("a", "0", "3", _row(v1, v2, v3)),
        EquivariantMap("A", "3", "0", _col(v1, v2, v3)),
        # entry (3,2) of b and C corrected so that the maps are equivariant
        EquivariantMap("b", "3", "2", _fm([[v1, w * v1], [w * v2, v2], [w2 * v3, w2 * v3]])),
        EquivariantMap("B", "2", "3", _fm([[v1, w2 * v2, w * v3], [w2 * v1, v2, w * v3]])),
        EquivariantMap("c", "2", "4", _fm([[v1, w2 * v2, w * v3], [-w2 * v1, -v2, -w * v3]])),
        EquivariantMap("C", "4", "2", _fm([[v1, -w * v1], [w * v2, -v2], [w2 * v3, -w2 * v3]])),
        EquivariantMap("d", "3", "4", sym),
        EquivariantMap("D", "4", "3", sym),
        EquivariantMap("e", "4", "1", _col(v1, v2, v3)),
        EquivariantMap("E", "1", "4", _row(v1, v2, v3)),
        EquivariantMap("u", "3", "3", alt),
        EquivariantMap("v", "4", "4", alt),
    ]


def _icosahedral_maps() -> list[EquivariantMap]:
    # vertex 3 is the 4-dimensional irrep and 4 the 5-dimensional one; e: 3 -> 4
    # and E: 4 -> 3 follow the quiver picture and the displayed potential
    return [
        EquivariantMap("a", "0", "1", _row(2 * v1, v3, v2)),
        EquivariantMap("A", "1", "0", _col(v1, v2, v3)),
        EquivariantMap("u", "1", "1", _fm([[0, v3, -v2], [2 * v2, -2 * v1, 0], [-2 * v3, 0, 2 * v1]])),
        EquivariantMap(
            "b", "1", "4",
            _fm([[-2 * v1, 3 * v3, 0, 0, 3 * v2], [v2, 6 * v1, 6 * v3, 0, 0], [v3, 0, 0, 6 * v2, 6 * v1]]),
        ),
        EquivariantMap(
            "B", "4", "1",
            _fm([[-4 * v1, v3, v2], [v2, v1, 0], [0, v2, 0], [0, 0, v3], [v3, 0, v1]]),
        ),
        EquivariantMap(
            "v", "4", "4",
            _fm(
                [
                    [0, 6 * v3, 0, 0, -6 * v2],
                    [v2, 2 * v1, -2 * v3, 0, 0],
                    [0, -2 * v2, 4 * v1, 0, 0],
                    [0, 0, 0, -4 * v1, 2 * v3],
                    [-v3, 0, 0, 2 * v2, -2 * v1],
                ]
            ),
        ),
        EquivariantMap(
            "c", "4", "2",
            _fm([[6 * v1, 0, 0], [v2, v3, 0], [0, v1, v3], [0, v2, v1], [v3, 0, v2]]),
        ),
        EquivariantMap(
            "C", "2", "4",
            _fm([[v1, v3, 0, 0, v2], [0, 2 * v2, 2 * v1, 2 * v3, 0], [0, 0, 2 * v2, 2 * v1, 2 * v3]]),
        ),
        EquivariantMap(
            "d", "2", "3",
            # entry (2,2) corrected from -v1 for equivariance
            _fm([[v3, 0, 0, v2], [-v2, -2 * v1, v3, 0], [0, v2, -2 * v1, -v3]]),
        ),
        EquivariantMap(
            "D", "3", "2",
            # entry (1,1) corrected from -v2 for equivariance
            _fm([[-2 * v2, v3, 0], [0, 2 * v1, -v3], [0, -v2, 2 * v1], [-2 * v3, 0, v2]]),
        ),
        EquivariantMap(
            "E", "4", "3",
            _fm(
                [
                    [6 * v3, 0, 0, -6 * v2],
                    [-4 * v1, 2 * v3, 0, 0],
                    [v2, 2 * v1, 3 * v3, 0],
                    [0, -3 * v2, -2 * v1, -v3],
                    [0, 0, -2 * v2, 4 * v1],
                ]
            ),
        ),
        EquivariantMap(
            "e", "3", "4",
            _fm(
                [
                    [v2, -4 * v1, v3, 0, 0],
                    [0, 2 * v2, 2 * v1, -3 * v3, 0],
                    [0, 0, 3 * v2, -2 * v1, -2 * v3],
                    [-v3, 0, 0, -v2, 4 * v1],
                ]
            ),
        ),
        EquivariantMap(
            "w", "3", "3",
            _fm([[v1, v3, 0, 0], [v2, -v1, 0, 0], [0, 0, v1, -v3], [0, 0, -v2, -v1]]),
        ),
    ]


def equivariant_maps(spec: GroupSpec) -> list[EquivariantMap]:
    if spec.family == "Cyclic":
        return _cyclic_maps(spec.param)
    if spec.family == "Dihedral":
        return _dihedral_maps(spec.param)
    if spec.family == "Tetrahedral":
        return _tetrahedral_maps()
    if spec.family == "Octahedral":
        return _octahedral_maps()
    return _icosahedral_maps()


# ---------------------------------------------------------------------------


def _form_matmul_left(a, m: FormMatrix) -> FormMatrix:
    """Scalar matrix times form matrix."""
    rows, inner = len(a), len(m)
    cols = len(m[0])
    out = []
    for i in range(rows):
        r = []
        for j in range(cols):
            acc = ZERO_FORM
            for k in range(inner):
                if not a[i][k].is_zero():
                    acc = acc + m[k][j] * a[i][k]
            r.append(acc)
        out.append(tuple(r))
    return tuple(out)


def _form_matmul_right(m: FormMatrix, b) -> FormMatrix:
    rows, inner = len(m), len(b)
    cols = len(b[0])
    out = []
    for i in range(rows):
        r = []
        for j in range(cols):
            acc = ZERO_FORM
            for k in range(inner):
                if not b[k][j].is_zero():
                    acc = acc + m[i][k] * b[k][j]
            r.append(acc)
        out.append(tuple(r))
    return tuple(out)


def is_equivariant(model: GroupModel, phi: EquivariantMap) -> bool:
    for gname, g in model.generators.items():
        rt = model.irrep(phi.tail).matrices[gname]
        rh = model.irrep(phi.head).matrices[gname]
        lhs = _form_matmul_left(rt, phi.entries)
        gm = tuple(tuple(x.act(g) for x in r) for r in phi.entries)
        rhs = _form_matmul_right(gm, rh)
        if lhs != rhs:
            return False
    return True


_PERM_SIGN = {}
for _p in permutations(range(3)):
    _inv = sum(1 for i in range(3) for j in range(i + 1, 3) if _p[i] > _p[j])
    _PERM_SIGN[_p] = -1 if _inv % 2 else 1


def _alt(x: LinForm, y: LinForm, z: LinForm) -> CycNum:
    tot = CycNum(0)
    for (i, j, k), sgn in _PERM_SIGN.items():
        a, b, c = x.c[i], y.c[j], z.c[k]
        if a.is_zero() or b.is_zero() or c.is_zero():
            continue
        tot = tot + (a * b * c) * sgn
    return tot


def cycle_constant(path: Sequence[str], maps: dict[str, EquivariantMap]) -> CycNum:
    a, b, c = (maps[x] for x in path)
    if not (a.head == b.tail and b.head == c.tail and c.head == a.tail):
        raise ValueError(f"{path} is not a closed path")
    ma, mb, mc = a.entries, b.entries, c.entries
    n = len(ma)
    res = [[CycNum(0)] * n for _ in range(n)]
    for r, u in product(range(n), range(n)):
        tot = CycNum(0)
        for s in range(len(mb)):
            x = ma[r][s]
            if x.is_zero():
                continue
            for t in range(len(mc)):
                y, z = mb[s][t], mc[t][u]
                if y.is_zero() or z.is_zero():
                    continue
                tot = tot + _alt(x, y, z)
        res[r][u] = tot
    scalar = res[0][0]
    for r, u in product(range(n), range(n)):
        if res[r][u] != (scalar if r == u else 0):
            raise NotScalar(f"cycle {path} does not contract to a scalar")
    return scalar


# ---------------------------------------------------------------------------


def build_mckay_quiver(model: GroupModel) -> Quiver:
    return _mckay_quiver(model.spec)


@lru_cache(maxsize=None)
def _mckay_quiver(spec: GroupSpec) -> Quiver:
    model = build_group(spec)
    labels = model.labels()
    vertices = tuple(Vertex(l, l, model.irrep(l).dim) for l in labels)
    maps = equivariant_maps(model.spec)
    arrows = tuple(sorted((Arrow(m.arrow, m.arrow, m.tail, m.head) for m in maps), key=lambda a: a.id))
    quiver = Quiver(vertices, arrows)
    for i in labels:
        for j in labels:
            if quiver.count(i, j) != tensor_multiplicity(model, i, j):
                raise AssertionError(f"{model.spec}: arrow count {i}->{j} disagrees with a_ij")
    return quiver


def closed_three_paths(q: Quiver) -> list[tuple[str, str, str]]:
    """All cycle orbits of length 3, each at its canonical rotation."""
    out_by_tail: dict[str, list[Arrow]] = {}
    for a in q.arrows:
        out_by_tail.setdefault(a.tail, []).append(a)
    seen = set()
    for a in q.arrows:
        for b in out_by_tail.get(a.head, []):
            for c in out_by_tail.get(b.head, []):
                if c.head == a.tail:
                    seen.add(canonical_rotation((a.id, b.id, c.id)))
    return sorted(seen)


def build_potential(model: GroupModel, maps: Sequence[EquivariantMap] | None = None) -> Potential:
    quiver = build_mckay_quiver(model)
    maps = maps if maps is not None else equivariant_maps(model.spec)
    by_name = {m.arrow: m for m in maps}
    dims = quiver.dims()
    terms = []
    for p in closed_three_paths(quiver):
        cp = cycle_constant(p, by_name)
        if not cp.is_zero():
            rotations = len({p[i:] + p[:i] for i in range(3)})
            terms.append((p, cp * dims[quiver.arrow(p[0]).tail] * Fraction(rotations, 3)))
    return Potential(terms)


@lru_cache(maxsize=None)
def mckay_qp(spec: GroupSpec) -> QP:
    from .qp import find_grading

    model = build_group(spec)
    qp = QP(build_mckay_quiver(model), build_potential(model))
    return find_grading(qp, 3)
