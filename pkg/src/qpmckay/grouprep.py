"""The polyhedral subgroups of SO(3): elements, classes, irreps, characters.

Groups are generated from explicit 3x3 generator matrices. Every irreducible
representation is given by its generator images and extended along the Cayley
graph, with the homomorphism property checked on every edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import matrix as mx
from .cyclotomic import CycNum, root_of_unity
from .errors import NonIntegerMultiplicity, UnsupportedParam
from .matrix import Matrix

__all__ = [
    "GroupSpec",
    "GroupModel",
    "IrrepModel",
    "build_group",
    "character_table",
    "tensor_multiplicity",
    "FAMILIES",
    "MAX_PARAM",
]

MAX_PARAM = 20

FAMILIES = {
    "C": "Cyclic",
    "D": "Dihedral",
    "T": "Tetrahedral",
    "O": "Octahedral",
    "I": "Icosahedral",
}
ORDERS = {"Tetrahedral": 12, "Octahedral": 24, "Icosahedral": 60}


@dataclass(frozen=True)
class GroupSpec:
    family: str
    param: int = 0

    def __post_init__(self):
        fam = FAMILIES.get(self.family, self.family)
        if fam not in FAMILIES.values():
            raise UnsupportedParam(f"unknown family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if fam in ("Cyclic", "Dihedral"):
            if not 2 <= self.param <= MAX_PARAM:
                raise UnsupportedParam(f"{fam} needs 2 <= n <= {MAX_PARAM}, got {self.param}")
        else:
            object.__setattr__(self, "param", 0)

    @property
    def letter(self) -> str:
        return next(k for k, v in FAMILIES.items() if v == self.family)

    @property
    def order(self) -> int:
        if self.family == "Cyclic":
            return self.param
        if self.family == "Dihedral":
            return 2 * self.param
        return ORDERS[self.family]

    def __str__(self) -> str:
        return f"{self.letter}{self.param}" if self.param else self.letter


@dataclass(frozen=True)
class IrrepModel:
    label: str
    dim: int
    matrices: dict  # generator name -> Matrix


@dataclass(frozen=True)
class ConjClass:
    name: str  # word of the representative, e.g. "tau*sigma"
    rep: int  # element index
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class GroupModel:
    spec: GroupSpec
    generators: dict  # name -> Matrix (natural representation)
    elements: list  # natural 3x3 matrices
    classes: list  # ConjClass in the fixed column order
    irreps: list  # IrrepModel
    images: dict = field(repr=False)  # label -> list of matrices, aligned with elements
    char_table: tuple = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    def labels(self) -> list[str]:
        return [r.label for r in self.irreps]

    def irrep(self, label: str) -> IrrepModel:
        for r in self.irreps:
            if r.label == label:
                return r
        raise KeyError(label)

    def natural_character(self) -> list[CycNum]:
        return [mx.trace(self.elements[c.rep]) for c in self.classes]


# ---------------------------------------------------------------------------
# generator and irrep data per family


def _diag(*xs) -> Matrix:
    n = len(xs)
    return mx.mat([[xs[i] if i == j else 0 for j in range(n)] for i in range(n)])


def _cyclic_data(order: int):
    e = lambda k: root_of_unity(order, k)
    gens = {"sigma": _diag(e(1), e(-1), 1)}
    irreps = [(str(j), {"sigma": mx.mat([[e(j)]])}) for j in range(order)]
    classes = [("1" if i == 0 else ("sigma" if i == 1 else f"sigma^{i}"), ["sigma"] * i) for i in range(order)]
    return gens, irreps, classes


def _dihedral_data(n: int):
    e = lambda k: root_of_unity(n, k)
    gens = {
        "sigma": _diag(e(1), e(n - 1), 1),
        "tau": mx.mat([[0, 1, 0], [1, 0, 0], [0, 0, -1]]),
    }
    one = lambda x: mx.mat([[x]])
    irreps = [
        ("0", {"sigma": one(1), "tau": one(1)}),
        ("0'", {"sigma": one(1), "tau": one(-1)}),
    ]
    m = n // 2
    top = m - 1 if n % 2 == 0 else m
    for j in range(1, top + 1):
        irreps.append((str(j), {"sigma": _diag(e(j), e(-j)), "tau": mx.mat([[0, 1], [1, 0]])}))
    if n % 2 == 0:
        irreps.append((str(m), {"sigma": one(-1), "tau": one(1)}))
        irreps.append((f"{m}'", {"sigma": one(-1), "tau": one(-1)}))
        classes = [("1", []), ("-1", ["sigma"] * m), ("tau", ["tau"]), ("tau*sigma", ["tau", "sigma"])]
    else:
        classes = [("1", []), ("tau", ["tau"])]
    for i in range(1, top + 1):
        classes.append(("sigma" if i == 1 else f"sigma^{i}", ["sigma"] * i))
    return gens, irreps, classes


def _tetrahedral_data():
    w = root_of_unity(3, 1)
    sigma = mx.mat([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
    tau = mx.mat([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    one = lambda x: mx.mat([[x]])
    irreps = [
        ("0", {"sigma": one(1), "tau": one(1)}),
        ("1", {"sigma": one(1), "tau": one(w)}),
        ("2", {"sigma": one(1), "tau": one(w * w)}),
        ("3", {"sigma": sigma, "tau": tau}),
    ]
    classes = [("1", []), ("sigma", ["sigma"]), ("tau", ["tau"]), ("tau^2", ["tau", "tau"])]
    return {"sigma": sigma, "tau": tau}, irreps, classes


def _octahedral_data():
    w = root_of_unity(3, 1)
    sigma = mx.mat([[0, -1, 0], [1, 0, 0], [0, 0, 1]])
    tau = mx.mat([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    one = lambda x: mx.mat([[x]])
    irreps = [
        ("0", {"sigma": one(1), "tau": one(1)}),
        ("1", {"sigma": one(-1), "tau": one(1)}),
        ("2", {"sigma": mx.mat([[0, 1], [1, 0]]), "tau": _diag(w, w * w)}),
        ("3", {"sigma": sigma, "tau": tau}),
        ("4", {"sigma": mx.scale(-1, sigma), "tau": tau}),
    ]
    classes = [
        ("1", []),
        ("sigma^2", ["sigma", "sigma"]),
        ("tau", ["tau"]),
        ("sigma", ["sigma"]),
        ("sigma*tau*sigma^2", ["sigma", "tau", "sigma", "sigma"]),
    ]
    return {"sigma": sigma, "tau": tau}, irreps, classes


def icosahedral_constants():
    """epsilon, s, t and sqrt(5) = t - s inside Q(zeta_5)."""
    e = lambda k: root_of_unity(5, k)
    s = e(2) + e(3)
    t = e(1) + e(4)
    return e, s, t, t - s


def _icosahedral_data():
    e, s, t, r5 = icosahedral_constants()
    inv_r5 = r5.inverse()
    sigma = _diag(1, e(1), e(4))
    tau = mx.scale(inv_r5, mx.mat([[1, 1, 1], [2, s, t], [2, t, s]]))
    # The second 3-dimensional irrep is the Galois twist z -> z^2 of the natural
    # one; its sigma-image is sigma^2 as displayed, but the twist also sends
    # sqrt(5) to -sqrt(5), so the tau-image is the twisted tau.
    sigma2 = mx.galois(sigma, 2)
    tau2 = mx.galois(tau, 2)
    v3s = _diag(e(1), e(2), e(3), e(4))
    v3t = mx.scale(
        inv_r5,
        mx.mat([[1, t, -s, -1], [t, -1, 1, -s], [-s, 1, -1, t], [-1, -s, t, 1]]),
    )
    v4s = _diag(1, e(1), e(2), e(3), e(4))
    v4t = mx.scale(
        Fraction(1, 5),
        mx.mat(
            [
                [-1, -6, -6, -6, -6],
                [-1, 1 - t, 2 * s, 2 * t, 1 - s],
                [-1, 2 * s, 1 - s, 1 - t, 2 * t],
                [-1, 2 * t, 1 - t, 1 - s, 2 * s],
                [-1, 1 - s, 2 * t, 2 * s, 1 - t],
            ]
        ),
    )
    one = mx.mat([[1]])
    irreps = [
        ("0", {"sigma": one, "tau": one}),
        ("1", {"sigma": sigma, "tau": tau}),
        ("2", {"sigma": sigma2, "tau": tau2}),
        ("3", {"sigma": v3s, "tau": v3t}),
        ("4", {"sigma": v4s, "tau": v4t}),
    ]
    classes = [
        ("1", []),
        ("sigma*tau", ["sigma", "tau"]),
        ("tau", ["tau"]),
        ("sigma", ["sigma"]),
        ("sigma^2", ["sigma", "sigma"]),
    ]
    return {"sigma": sigma, "tau": tau}, irreps, classes


def _family_data(spec: GroupSpec):
    if spec.family == "Cyclic":
        return _cyclic_data(spec.param)
    if spec.family == "Dihedral":
        return _dihedral_data(spec.param)
    if spec.family == "Tetrahedral":
        return _tetrahedral_data()
    if spec.family == "Octahedral":
        return _octahedral_data()
    return _icosahedral_data()


# ---------------------------------------------------------------------------


class HomomorphismError(AssertionError):
    pass


@lru_cache(maxsize=None)
def build_group(spec: GroupSpec) -> GroupModel:
    gens, irrep_data, class_words = _family_data(spec)
    gen_names = list(gens)
    ident = mx.identity(3)
    elements = [ident]
    index = {ident: 0}
    images = {lab: [mx.identity(len(m[gen_names[0]]))] for lab, m in irrep_data}
    right = {g: [] for g in gen_names}  # right[g][i] = index of elements[i] * g
    i = 0
    while i < len(elements):
        cur = elements[i]
        for g in gen_names:
            nxt = mx.matmul(cur, gens[g])
            j = index.get(nxt)
            if j is None:
                j = len(elements)
                index[nxt] = j
                elements.append(nxt)
                for lab, mats in irrep_data:
                    images[lab].append(mx.matmul(images[lab][i], mats[g]))
            else:
                for lab, mats in irrep_data:
                    if mx.matmul(images[lab][i], mats[g]) != images[lab][j]:
                        raise HomomorphismError(f"irrep {lab} is not a homomorphism on {spec}")
            right[g].append(j)
        i += 1
        if len(elements) > 10 * spec.order:
            raise HomomorphismError("generators do not close up")
    if len(elements) != spec.order:
        raise HomomorphismError(f"{spec}: expected order {spec.order}, got {len(elements)}")
    # left multiplication by generators, then conjugation orbits g -> s^-1 g s
    left = {g: [index[mx.matmul(gens[g], x)] for x in elements] for g in gen_names}
    conj_perms = []
    for g in gen_names:
        inv_left = [0] * len(elements)
        for k, v in enumerate(left[g]):
            inv_left[v] = k
        conj_perms.append([right[g][inv_left[k]] for k in range(len(elements))])
    seen: dict[int, int] = {}
    orbits: list[list[int]] = []
    for start in range(len(elements)):
        if start in seen:
            continue
        orb = [start]
        seen[start] = len(orbits)
        for x in orb:
            for p in conj_perms:
                y = p[x]
                if y not in seen:
                    seen[y] = len(orbits)
                    orb.append(y)
        orbits.append(sorted(orb))

    def word_index(word):
        m = ident
        for g in word:
            m = mx.matmul(m, gens[g])
        return index[m]

    classes = []
    for name, word in class_words:
        rep = word_index(word)
        classes.append(ConjClass(name, rep, tuple(orbits[seen[rep]])))
    if len({c.members for c in classes}) != len(orbits) or len(classes) != len(orbits):
        raise HomomorphismError(f"{spec}: class words do not match the {len(orbits)} classes")
    irreps = [IrrepModel(lab, len(m[gen_names[0]]), dict(m)) for lab, m in irrep_data]
    model = GroupModel(spec, dict(gens), elements, classes, irreps, images)
    model.char_table = tuple(
        tuple(mx.trace(images[r.label][c.rep]) for c in classes) for r in irreps
    )
    return model


def character_table(model: GroupModel) -> tuple[tuple[CycNum, ...], ...]:
    return model.char_table


def _inner(model: GroupModel, chi: list[CycNum], psi: list[CycNum]) -> Fraction:
    tot = CycNum(0)
    for c, x, y in zip(model.classes, chi, psi):
        tot = tot + (x * y.conj()) * c.size
    val = tot * Fraction(1, model.order)
    return val


def tensor_multiplicity(model: GroupModel, i: str, j: str) -> int:
    """a_ij = dim Hom(V_i, V (x) V_j) via the character inner product."""
    labels = model.labels()
    chi_v = model.natural_character()
    ci = model.char_table[labels.index(i)]
    cj = model.char_table[labels.index(j)]
    prod = [a * b for a, b in zip(chi_v, ci)]
    val = _inner(model, prod, list(cj))
    if not val.is_rational() or val.to_fraction().denominator != 1 or val.to_fraction() < 0:
        raise NonIntegerMultiplicity(f"a[{i},{j}] = {val}")
    return int(val.to_fraction())


def row_inner(model: GroupModel, i: int, j: int) -> CycNum:
    """Sum over classes of |c| chi_i(c) conj(chi_j(c)); equals |G| delta_ij."""
    tot = CycNum(0)
    for c, x, y in zip(model.classes, model.char_table[i], model.char_table[j]):
        tot = tot + (x * y.conj()) * c.size
    return tot


def column_inner(model: GroupModel, a: int, b: int) -> CycNum:
    """Sum over irreps of chi(c_a) conj(chi(c_b)); equals |G|/|c_a| delta_ab."""
    tot = CycNum(0)
    for row in model.char_table:
        tot = tot + row[a] * row[b].conj()
    return tot


def invariant_forms(model: GroupModel) -> list[list[list[CycNum]]]:
    """Basis of symmetric bilinear forms B with g^T B g = B for the generators."""
    idx = [(i, j) for i in range(3) for j in range(i, 3)]

    def sym(vec):
        b = [[CycNum(0)] * 3 for _ in range(3)]
        for (i, j), x in zip(idx, vec):
            b[i][j] = x
            b[j][i] = x
        return b

    rows = []
    for g in model.generators.values():
        gt = mx.transpose(g)
        cols = []
        for k in range(len(idx)):
            e = [CycNum(0)] * len(idx)
            e[k] = CycNum(1)
            b = mx.mat(sym(e))
            diff = mx.add(mx.matmul(mx.matmul(gt, b), g), mx.scale(-1, b))
            cols.append([diff[i][j] for i, j in idx])
        for r in range(len(idx)):
            rows.append([cols[k][r] for k in range(len(idx))])
    return [sym(v) for v in mx.nullspace(rows, len(idx))]
