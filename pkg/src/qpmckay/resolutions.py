"""Crepant resolutions indexed by mutation words.

Every node of a mutation class is reached by a word of mutations. For D2n
the word is an interleaving of a left chain (0', 1, 2, ...) and, for n even, a
right chain (m or m', m-1, ...); for the tetrahedral group the words reach
X_0, X_1, X_2, X_12 and X_123. This module maps a word to its resolution, the
open cover by charts (as skeletons), and the stated chamber inequalities.

Stability coordinates follow the order theta_0 (trivial), theta_1 (0'),
theta_{k+1} (vertex k) and, for n even, theta_{m+1} (m), theta_{m+2} (m').
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .grouprep import GroupSpec
from .skeletons import (
    cyclic3_charts,
    dihedral_even_chart,
    dihedral_odd_chart,
    mirror_skeleton,
    tetrahedral_chart,
)
from .stability import Cone, SkeletonRep, chamber_from_cover, make_cone

__all__ = [
    "Resolution",
    "resolution_of_word",
    "all_resolutions",
    "cover_skeletons",
    "skeleton_chamber",
    "stated_covectors",
    "stated_chamber",
    "theta_order",
]


@dataclass(frozen=True)
class Resolution:
    """family letter, name, parameters (i, j) and, for D even, the side m or m'."""

    spec: GroupSpec
    name: str
    i: int = -1
    j: int = -1
    mirrored: bool = False


def theta_order(spec: GroupSpec) -> list[str]:
    if spec.family == "Dihedral":
        m = spec.param // 2
        if spec.param % 2:
            return ["0", "0'"] + [str(k) for k in range(1, m + 1)]
        return ["0", "0'"] + [str(k) for k in range(1, m)] + [str(m), f"{m}'"]
    if spec.family == "Tetrahedral":
        return ["0", "1", "2", "3"]
    if spec.family == "Cyclic":
        return [str(k) for k in range(spec.param)]
    raise ValueError(f"no resolutions recorded for {spec.family}")


def _dihedral_name(spec: GroupSpec, i: int, j: int, mirrored: bool) -> str:
    left = "X_" + ("0..%d" % i if i >= 0 else "")
    if spec.param % 2:
        return left if i >= 0 else "G-Hilb"
    m = spec.param // 2
    if i < 0 and j < 0:
        return "G-Hilb"
    top = f"{m}'" if mirrored else str(m)
    right = f"^{top}..{m - j}" if j >= 0 else ""
    return (left if i >= 0 else "X") + right


def resolution_of_word(spec: GroupSpec, word: Sequence[str]) -> Resolution:
    word = list(word)
    letters = set(word)
    if len(letters) != len(word):
        raise ValueError(f"word {word} repeats a vertex")
    if spec.family == "Tetrahedral":
        if not letters <= {"1", "2", "3"}:
            raise ValueError(f"word {word} is not a tetrahedral mutation word")
        key = "".join(sorted(letters)) or "0"
        if key not in ("0", "1", "2", "12", "123"):
            raise ValueError(f"word {word} does not reach a resolution")
        return Resolution(spec, "X_" + key)
    if spec.family == "Cyclic":
        if word:
            raise ValueError("the cyclic McKay QP admits no mutations")
        return Resolution(spec, "G-Hilb")
    if spec.family != "Dihedral":
        raise ValueError(f"no resolutions recorded for {spec.family}")
    n, m = spec.param, spec.param // 2
    rest = set(letters)
    i = -1
    if "0'" in rest:
        rest.discard("0'")
        i = 0
        while str(i + 1) in rest and (n % 2 or i + 1 < m):
            i += 1
            rest.discard(str(i))
    j, mirrored = -1, False
    if n % 2 == 0:
        tops = rest & {str(m), f"{m}'"}
        if len(tops) > 1:
            raise ValueError(f"word {word} mutates both {m} and {m}'")
        if tops:
            mirrored = tops == {f"{m}'"}
            rest -= tops
            j = 0
            while str(m - j - 1) in rest and m - j - 1 >= 1:
                j += 1
                rest.discard(str(m - j))
    if rest:
        raise ValueError(f"word {word} does not reach a resolution")
    limit = m - 1 if n % 2 else m - 2
    if n % 2 and i > limit or n % 2 == 0 and i + j > limit:
        raise ValueError(f"word {word} does not reach a resolution")
    return Resolution(spec, _dihedral_name(spec, i, j, mirrored), i, j, mirrored)


def all_resolutions(spec: GroupSpec, mirrors: bool = False) -> list[Resolution]:
    """The resolutions listed in the classification (one per m <-> m' pair unless mirrors)."""
    if spec.family == "Tetrahedral":
        return [Resolution(spec, "X_" + k) for k in ("0", "1", "2", "12", "123")]
    if spec.family == "Cyclic":
        return [Resolution(spec, "G-Hilb")]
    n, m = spec.param, spec.param // 2
    if n % 2:
        return [Resolution(spec, _dihedral_name(spec, i, -1, False), i) for i in range(-1, m)]
    out = []
    for i in range(-1, m):
        for j in range(-1, m):
            if i + j <= m - 2:
                out.append(Resolution(spec, _dihedral_name(spec, i, j, False), i, j))
                if mirrors and j >= 0:
                    out.append(Resolution(spec, _dihedral_name(spec, i, j, True), i, j, True))
    return out


def cover_charts(res: Resolution) -> list[tuple[str, int]]:
    spec = res.spec
    if spec.family == "Tetrahedral":
        return {
            "X_0": [("U", 0), ("U", 1), ("U", 2), ("U", 3)],
            # the cover flopping E_2 (U'_2, U'_3) cuts out theta_1 < 0, so it is
            # the resolution reached by mutating at vertex 1, and vice versa
            "X_1": [("U", 0), ("U", 1), ("U'", 2), ("U'", 3)],
            "X_2": [("U'", 0), ("U'", 1), ("U", 2), ("U", 3)],
            "X_12": [("U'", 0), ("U'", 1), ("U'", 2), ("U'", 3)],
            "X_123": [("U'", 0), ("U''", 1), ("U''", 2), ("U'", 3)],
        }[res.name]
    if spec.family == "Cyclic":
        return [("U", 1), ("U", 2), ("U", 3)]
    m, i, j = spec.param // 2, res.i, res.j
    left = [("U''", k) for k in range(1, i + 2)] + [("U'", i + 2)]
    if spec.param % 2:
        return left + [("U", k) for k in range(i + 3, m + 3)]
    return (
        left
        + [("U", k) for k in range(i + 3, m - j + 1)]
        + [("V'", m - j + 1)]
        + [("V''", k) for k in range(m - j + 2, m + 4)]
    )


def cover_skeletons(res: Resolution) -> list[SkeletonRep]:
    spec = res.spec
    charts = cover_charts(res)
    if spec.family == "Tetrahedral":
        return [tetrahedral_chart(f"{k}{i}") for k, i in charts]
    if spec.family == "Cyclic":
        return cyclic3_charts() if spec.param == 3 else []
    if spec.param % 2:
        return [dihedral_odd_chart(spec.param, k, i) for k, i in charts]
    sks = [dihedral_even_chart(spec.param, k, i) for k, i in charts]
    if res.mirrored:
        sks = [mirror_skeleton(sk, spec.param // 2) for sk in sks]
    return sks


def skeleton_chamber(res: Resolution) -> Cone:
    sks = cover_skeletons(res)
    return chamber_from_cover(sks, sks[0].dim_vector())


def _partial(order: Sequence[str], lo: int, hi: int) -> dict[str, int]:
    return {order[k]: 1 for k in range(lo, hi + 1)}


def _neg(cov: dict[str, int]) -> dict[str, int]:
    return {v: -c for v, c in cov.items()}


def stated_covectors(res: Resolution) -> list[dict[str, int]]:
    """Covectors alpha with theta(alpha) > 0 defining the stated chamber of res."""
    spec = res.spec
    order = theta_order(spec)
    if spec.family == "Tetrahedral":
        t = lambda *ks: {str(k): 1 for k in ks}  # noqa: E731
        return {
            "X_0": [t(1), t(2), t(3)],
            "X_1": [_neg(t(1)), t(2), t(1, 3)],
            "X_2": [t(1), _neg(t(2)), t(2, 3)],
            "X_12": [_neg(t(1)), _neg(t(2)), t(1, 2, 3)],
            "X_123": [t(1, 3), t(2, 3), _neg(t(1, 2, 3))],
        }[res.name]
    if spec.family == "Cyclic":
        return [{v: 1} for v in order[1:]]
    m, i, j = spec.param // 2, res.i, res.j
    s = lambda lo, hi: _partial(order, lo, hi)  # noqa: E731
    out: list[dict[str, int]] = []
    # left chain: sum_1^1 .. sum_1^{i+1} < 0 and sum_1^{i+2} > 0
    out += [_neg(s(1, k)) for k in range(1, i + 2)]
    out.append(s(1, i + 2))
    if spec.param % 2:
        out += [s(k, k) for k in range(2, m + 2)]
        return out
    out += [s(k, k) for k in range(2, m + 3) if k != m + 1]
    out.append(s(1, m + 1))
    sm = s(1, m)
    sm[order[m + 2]] = 1
    out.append(sm)
    out.append(s(m + 1, m + 2))
    # right chain: sum_{m+1-k}^{m+1} < 0 for k = 0..j and sum_{m-j}^{m+1} > 0
    out += [_neg(s(m + 1 - k, m + 1)) for k in range(0, j + 1)]
    out.append(s(m - j, m + 1))
    if res.mirrored:
        swap = {order[m + 1]: order[m + 2], order[m + 2]: order[m + 1]}
        out = [{swap.get(v, v): c for v, c in cov.items()} for cov in out]
    return out


def stated_chamber(res: Resolution) -> Cone:
    spec = res.spec
    from .mckay import mckay_qp

    q = mckay_qp(spec).quiver
    return make_cone(q.vertex_ids(), q.dims(), stated_covectors(res))
