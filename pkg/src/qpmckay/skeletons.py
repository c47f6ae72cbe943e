"""Skeleton fixtures: the representation at the origin of every chart.

Charts of the crepant resolutions of C^3/G are affine spaces C^3 whose origin
is a representation of the McKay quiver with relations. The data below is the
matrix form of the skeleton diagrams (dots and links), parameterized by m and
the chart index. Arrow matrices are dim(tail) x dim(head); unlisted arrows are
zero.

Dihedral arrows: a: 0->0', A: 0'->0, c: 0->1, C: 1->0, d0: 0'->1, D0: 1->0',
d_k: k->k+1, D_k: k+1->k, loops u_k at k (and v at m when n is odd). For n
even the tail end has C': (m-1)->m, c': m->(m-1), B': (m-1)->m', b': m'->(m-1),
a': m->m', A': m'->m.
"""

from __future__ import annotations

from functools import lru_cache

from .cyclotomic import root_of_unity
from .grouprep import GroupSpec
from .mckay import mckay_qp
from .stability import SkeletonRep

__all__ = [
    "dihedral_odd_chart",
    "dihedral_even_chart",
    "tetrahedral_chart",
    "cyclic3_charts",
    "mirror_skeleton",
    "MIRROR_ARROWS",
]

I2 = [[1, 0], [0, 1]]
E11 = [[1, 0], [0, 0]]
E22 = [[0, 0], [0, 1]]
NIL = [[0, 1], [0, 0]]
DIAG_SPLIT = [[1, 0], [1, 0]]


def _row(*xs):
    return [list(xs)]


def _col(*xs):
    return [[x] for x in xs]


def _diag_tail(maps: dict, start: int, stop: int) -> None:
    # d_k = diag(1,0), D_k = diag(0,1) for start <= k <= stop
    for k in range(start, stop + 1):
        maps[f"d{k}"] = E11
        maps[f"D{k}"] = E22


@lru_cache(maxsize=None)
def _quiver(family: str, n: int):
    return mckay_qp(GroupSpec(family, n)).quiver


# ---------------------------------------------------------------------------
# D2n, n = 2m+1


def dihedral_odd_chart(n: int, kind: str, i: int) -> SkeletonRep:
    """kind in {"U", "U'", "U''"}; charts U'_1..U'_{m+1}, U_2..U_{m+2}, U''_1..U''_m."""
    if n % 2 == 0:
        raise ValueError("dihedral_odd_chart needs odd n")
    m = n // 2
    last = m - 1  # highest d_k index
    maps: dict = {}
    if kind == "U'" and i == 1:
        maps.update(c=_row(1, 0), D0=_col(0, 1), v=NIL)
        _diag_tail(maps, 1, last)
    elif kind == "U" and i == 2:
        maps.update(a=[[1]], c=_row(1, 0), v=NIL)
        _diag_tail(maps, 1, last)
    elif kind == "U" and 3 <= i <= m + 1:
        maps.update(a=[[1]], d0=_row(0, 1), c=_row(1, 0), v=NIL)
        for k in range(1, i - 2):
            maps[f"d{k}"] = I2
        maps[f"d{i - 2}"] = E11
        _diag_tail(maps, i - 1, last)
        for k in range(1, i - 1):
            maps[f"u{k}"] = NIL
    elif kind == "U" and i == m + 2:
        maps.update(a=[[1]], d0=_row(0, 1), c=_row(1, 0))
        for k in range(1, last + 1):
            maps[f"d{k}"] = I2
        for k in range(1, m + 1):
            maps[f"u{k}"] = NIL
    elif kind == "U''" and i == 1:
        maps.update(d0=_row(1, 0), c=_row(1, 0), v=NIL)
        _diag_tail(maps, 1, last)
    elif kind == "U'" and 2 <= i <= m + 1:
        maps.update(d0=_row(0, 1), c=_row(1, 0), v=NIL)
        for k in range(1, i - 1):
            maps[f"d{k}"] = I2
        _diag_tail(maps, i - 1, last)
    elif kind == "U''" and 2 <= i <= m:
        maps.update(d0=_row(0, 1), c=_row(1, 0), v=NIL)
        for k in range(1, i - 1):
            maps[f"d{k}"] = I2
        maps[f"d{i - 1}"] = DIAG_SPLIT
        _diag_tail(maps, i, last)
    else:
        raise ValueError(f"no chart {kind}{i} for D2n, n={n}")
    return SkeletonRep.build(f"{kind}{i}", _quiver("Dihedral", n), maps)


# ---------------------------------------------------------------------------
# D2n, n = 2m


def _tail_maps(maps: dict) -> None:
    maps.update({"C'": _col(1, 0), "c'": _row(0, 1), "B'": _col(1, 0), "b'": _row(0, -1)})


def dihedral_even_chart(n: int, kind: str, i: int) -> SkeletonRep:
    """kind in {"U", "U'", "U''", "V'", "V''"} with the index ranges of the covers."""
    if n % 2:
        raise ValueError("dihedral_even_chart needs even n")
    m = n // 2
    last = m - 2  # highest d_k index
    maps: dict = {}

    def identities(upto: int) -> None:
        for k in range(1, upto + 1):
            maps[f"d{k}"] = I2

    def nilpotent_loops(upto: int) -> None:
        for k in range(1, upto + 1):
            maps[f"u{k}"] = NIL

    if kind == "U'" and i == 1:
        maps.update(c=_row(1, 0), D0=_col(0, 1))
        _diag_tail(maps, 1, last)
        _tail_maps(maps)
    elif kind == "U" and i == 2:
        maps.update(a=[[1]], c=_row(1, 0))
        _diag_tail(maps, 1, last)
        _tail_maps(maps)
    elif kind == "U" and 3 <= i <= m:
        maps.update(a=[[1]], d0=_row(0, 1), c=_row(1, 0))
        identities(i - 3)
        maps[f"d{i - 2}"] = E11
        _diag_tail(maps, i - 1, last)
        _tail_maps(maps)
        nilpotent_loops(i - 2)
    elif kind == "U" and i == m + 1:
        maps.update(a=[[1]], d0=_row(0, 1), c=_row(1, 0))
        identities(last)
        maps.update({"C'": _col(1, 0), "B'": _col(1, 0)})
        nilpotent_loops(m - 1)
    elif kind == "V'" and i == m + 2:
        maps.update(a=[[1]], d0=_row(0, 1), c=_row(1, 0))
        identities(last)
        # the link A' carries -1 so that B'A' + u C' = 0
        maps.update({"C'": _col(0, 1), "B'": _col(1, 0), "A'": [[-1]]})
        nilpotent_loops(m - 1)
    elif kind == "V''" and i == m + 3:
        maps.update(a=[[1]], d0=_row(0, 1), c=_row(1, 0))
        identities(last)
        # the link a' carries -1 so that C'a' + u B' = 0
        maps.update({"C'": _col(1, 0), "B'": _col(0, 1), "a'": [[-1]]})
        nilpotent_loops(m - 1)
    elif kind == "U'" and 2 <= i <= m:
        maps.update(d0=_row(0, 1), c=_row(1, 0))
        identities(i - 2)
        _diag_tail(maps, i - 1, last)
        _tail_maps(maps)
    elif kind == "U'" and i == m + 1:
        maps.update(d0=_row(0, 1), c=_row(1, 0))
        identities(last)
        maps.update({"C'": _col(1, 1), "B'": _col(1, 0)})
    elif kind == "U''" and i == 1:
        maps.update(d0=_row(1, 0), c=_row(1, 0))
        _diag_tail(maps, 1, last)
        _tail_maps(maps)
    elif kind == "U''" and 2 <= i <= m - 1:
        maps.update(d0=_row(0, 1), c=_row(1, 0))
        identities(i - 2)
        maps[f"d{i - 1}"] = DIAG_SPLIT
        _diag_tail(maps, i, last)
        _tail_maps(maps)
    elif kind == "U''" and i == m:
        maps.update(d0=_row(0, 1), c=_row(1, 0))
        identities(last)
        maps.update({"C'": _col(1, 0), "B'": _col(1, 1)})
    elif kind == "V'" and i == 2:
        maps.update(a=[[1]], D0=_col(0, 1), c=_row(1, 0))
        _diag_tail(maps, 1, last)
        maps.update({"c'": _row(0, 1), "B'": _col(1, 0)})
    elif kind == "V'" and 3 <= i <= m:
        maps.update(a=[[1]], d0=_row(0, 1), c=_row(1, 0))
        identities(i - 3)
        maps[f"d{i - 2}"] = E11
        maps[f"D{i - 2}"] = E22
        _diag_tail(maps, i - 1, last)
        maps.update({"c'": _row(0, 1), "B'": _col(1, 0)})
        nilpotent_loops(i - 2)
    elif kind == "V'" and i == m + 1:
        maps.update(a=[[1]], d0=_row(0, 1), c=_row(1, 0))
        identities(last)
        maps.update({"c'": _row(0, 1), "B'": _col(1, 0)})
        nilpotent_loops(m - 1)
    elif kind == "V''" and i == 3:
        maps.update(a=[[1]], c=_row(1, 0))
        _diag_tail(maps, 1, last)
        maps.update({"c'": _row(0, 1), "B'": _col(1, 0), "a'": [[1]]})
    elif kind == "V''" and 4 <= i <= m + 1:
        maps.update(a=[[1]], d0=_row(0, 1), c=_row(1, 0))
        identities(i - 4)
        maps[f"d{i - 3}"] = E11
        _diag_tail(maps, i - 2, last)
        maps.update({"c'": _row(0, 1), "B'": _col(1, 0), "a'": [[1]]})
        nilpotent_loops(i - 3)
    elif kind == "V''" and i == m + 2:
        maps.update(a=[[1]], d0=_row(0, 1), c=_row(1, 0))
        identities(last)
        maps.update({"B'": _col(1, 0), "a'": [[1]]})
        nilpotent_loops(m - 1)
    else:
        raise ValueError(f"no chart {kind}{i} for D2n, n={n}")
    return SkeletonRep.build(f"{kind}{i}", _quiver("Dihedral", n), maps)


MIRROR_ARROWS = {"c'": "b'", "b'": "c'", "C'": "B'", "B'": "C'", "a'": "A'", "A'": "a'"}


def mirror_skeleton(sk: SkeletonRep, m: int) -> SkeletonRep:
    """Image under the quiver automorphism exchanging m and m'."""
    top, prime = str(m), f"{m}'"
    return sk.relabel(sk.chart + "~", {top: prime, prime: top}, MIRROR_ARROWS)


# ---------------------------------------------------------------------------
# tetrahedral group; vertices 0, 1, 2 (one-dimensional) and 3


def _tetra_nil(x):
    return [[0, 1, 0], [0, 0, x], [0, 0, 0]]


def tetrahedral_chart(name: str) -> SkeletonRep:
    """Charts U0..U3, U'0..U'3, U''1, U''2.

    The u/v entries are the complex conjugates of the reference diagram values because
    the synthesized potential is the Galois conjugate of the displayed one.
    """
    w = root_of_unity(3, 1)
    w2 = w * w
    # reference value omega -> our omega^2 and vice versa
    fw, fw2 = w2, w
    table = {
        "U0": ((0, 0, 1), (1, 0, 0), None, (0, 0, 1), fw, fw2),
        "U1": ((0, 0, 1), (1, 0, 0), None, (1, 0, 0), fw, fw2),
        "U2": (None, (1, 0, 0), (0, 0, 1), (1, 0, 0), fw2, fw),
        "U3": (None, (0, 0, 1), (0, 0, 1), (1, 0, 0), fw2, fw),
        "U'0": ((0, 0, 1), (1, 0, 0), (0, 1, 0), None, fw, fw2),
        "U'1": ((0, 0, 1), (1, 0, 0), (0, 0, 1), None, fw, fw2),
        "U'2": ((0, 0, 1), None, (0, 0, 1), (1, 0, 0), fw2, fw),
        "U'3": ((0, 1, 0), None, (0, 0, 1), (1, 0, 0), fw2, fw),
        "U''1": ((0, 0, 1), None, (0, 1, 1), None, 0, 0),
        "U''2": ((0, 0, 1), None, (1, 0, 1), None, "row3", "row3"),
    }
    if name not in table:
        raise ValueError(f"no tetrahedral chart {name}")
    b, B, c, C, x, y = table[name]
    maps: dict = {"a": _row(1, 0, 0)}
    if b:
        maps["b"] = _row(*b)
    if B:
        maps["B"] = _col(*B)
    if c:
        maps["c"] = _row(*c)
    if C:
        maps["C"] = _col(*C)
    if x == "row3":
        maps["u"] = [[0, 1, 0], [0, 0, 0], [0, fw2, 0]]
        maps["v"] = [[0, 1, 0], [0, 0, 0], [0, fw, 0]]
    else:
        maps["u"] = _tetra_nil(x)
        maps["v"] = _tetra_nil(y)
    return SkeletonRep.build(name, _quiver("Tetrahedral", 0), maps)


# ---------------------------------------------------------------------------
# Z/3 acting with weights (1, 2, 0)


def cyclic3_charts() -> list[SkeletonRep]:
    """U1: 0->1->2, U2: 0->1 and 0->2, U3: 0->2->1."""
    q = _quiver("Cyclic", 3)
    one = [[1]]
    return [
        SkeletonRep.build("U1", q, {"a0": one, "a1": one}),
        SkeletonRep.build("U2", q, {"a0": one, "b2": one}),
        SkeletonRep.build("U3", q, {"b2": one, "b1": one}),
    ]
