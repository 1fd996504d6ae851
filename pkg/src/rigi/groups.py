"""Symmetry groups of planar forced-symmetric frameworks.

Supported groups: the translation lattice Z^2, a single translation Z, the
rotation groups Z/kZ, a reflection (Z/2Z), and the crystallographic groups
Gamma_k = Z^2 x| Z/kZ for k in {2, 3, 4, 6}. Elements carry exact integer
coordinates: a translation pair and a rotation residue.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from .linalg import integer_rank

Vec = Tuple[int, int]
IntMatrix = Tuple[Tuple[int, int], Tuple[int, int]]


class GroupError(ValueError):
    pass


class TagMismatchError(GroupError):
    pass


class InvalidSubgroupError(GroupError):
    pass


KINDS = ("Z2", "Z", "cyclic", "reflection", "gamma")
GAMMA_ORDERS = (2, 3, 4, 6)

# generator of Z/kZ acting on Z^2
ROTATION_MATRICES = {
    2: ((-1, 0), (0, -1)),
    3: ((0, -1), (1, -1)),
    4: ((0, -1), (1, 0)),
    6: ((0, -1), (1, 1)),
}


@dataclass(frozen=True)
class GroupTag:
    kind: str
    k: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GroupError(f"unknown group kind {self.kind!r}")
        if self.kind == "gamma" and self.k not in GAMMA_ORDERS:
            raise GroupError(f"Gamma_k needs k in {GAMMA_ORDERS}, got {self.k}")
        if self.kind == "cyclic" and self.k < 2:
            raise GroupError(f"Z/kZ needs k >= 2, got {self.k}")
        if self.kind == "reflection":
            object.__setattr__(self, "k", 2)
        if self.kind in ("Z2", "Z"):
            object.__setattr__(self, "k", 0)

    @property
    def name(self) -> str:
        if self.kind == "cyclic":
            return f"Z/{self.k}"
        if self.kind == "gamma":
            return f"Gamma{self.k}"
        return self.kind

    @classmethod
    def parse(cls, name: str) -> "GroupTag":
        if name in ("Z2", "Z", "reflection"):
            return cls(name)
        if name.startswith("Z/"):
            return cls("cyclic", int(name[2:]))
        if name.startswith("Gamma"):
            return cls("gamma", int(name[5:]))
        raise GroupError(f"cannot parse group tag {name!r}")

    @property
    def order(self) -> int:
        """Order of the rotation part (1 for pure translation groups)."""
        return self.k if self.kind in ("cyclic", "reflection", "gamma") else 1

    @property
    def has_translations(self) -> bool:
        return self.kind in ("Z2", "Z", "gamma")

    @property
    def is_abelian(self) -> bool:
        return self.kind != "gamma"

    def to_json(self) -> dict:
        return {"kind": self.kind, "k": self.k}

    @classmethod
    def from_json(cls, obj: dict) -> "GroupTag":
        return cls(obj["kind"], int(obj.get("k", 0)))

    def __str__(self) -> str:
        return self.name


Z2 = GroupTag("Z2")
Z = GroupTag("Z")
REFLECTION = GroupTag("reflection")


def cyclic(k: int) -> GroupTag:
    return GroupTag("cyclic", k)


def gamma(k: int) -> GroupTag:
    return GroupTag("gamma", k)


def _mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


@lru_cache(maxsize=None)
def rotation_power(k: int, j: int) -> IntMatrix:
    """M_k ** j for the Gamma_k rotation generator."""
    j %= k
    out: IntMatrix = ((1, 0), (0, 1))
    for _ in range(j):
        out = _mat_mul(ROTATION_MATRICES[k], out)
    return out


def _apply(m: IntMatrix, t: Vec) -> Vec:
    return (m[0][0] * t[0] + m[0][1] * t[1], m[1][0] * t[0] + m[1][1] * t[1])


@dataclass(frozen=True)
class GroupElement:
    tag: GroupTag
    t: Vec = (0, 0)
    r: int = 0

    def __post_init__(self):
        kind = self.tag.kind
        t = (int(self.t[0]), int(self.t[1]))
        r = int(self.r)
        if kind in ("Z2", "Z"):
            if r != 0:
                raise GroupError(f"{self.tag} elements have no rotation part")
            if kind == "Z" and t[1] != 0:
                raise GroupError("Z elements have second coordinate 0")
        elif kind in ("cyclic", "reflection"):
            if t != (0, 0):
                raise GroupError(f"{self.tag} elements have no translation part")
        r %= self.tag.order
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "r", r)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    @property
    def is_identity(self) -> bool:
        return self.r == 0 and self.t == (0, 0)

    @property
    def is_rotation_free(self) -> bool:
        return self.r == 0

    def to_json(self) -> dict:
        return {"r": self.r, "t": [self.t[0], self.t[1]], "tag": self.tag.name}

    @classmethod
    def from_json(cls, obj: dict, tag: GroupTag | None = None) -> "GroupElement":
        etag = GroupTag.parse(obj["tag"])
        if tag is not None and etag != tag:
            raise TagMismatchError(f"color tag {etag} does not match graph tag {tag}")
        t = obj.get("t", [0, 0])
        return cls(etag, (t[0], t[1]), obj.get("r", 0))

    def __repr__(self) -> str:
        if self.tag.kind in ("Z2", "Z"):
            return f"{self.tag}{self.t}"
        if self.tag.kind in ("cyclic", "reflection"):
            return f"{self.tag}[{self.r}]"
        return f"{self.tag}(t={self.t}, r={self.r})"


def identity(tag: GroupTag) -> GroupElement:
    return GroupElement(tag)


def element(tag: GroupTag, value) -> GroupElement:
    """Convenience constructor: int for Z / rotation groups, pair for Z2, (pair, r) for Gamma."""
    kind = tag.kind
    if kind == "Z2":
        return GroupElement(tag, tuple(value))
    if kind == "Z":
        return GroupElement(tag, (int(value), 0))
    if kind in ("cyclic", "reflection"):
        return GroupElement(tag, (0, 0), int(value))
    t, r = value
    return GroupElement(tag, tuple(t), r)


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    """Group product a*b. Gamma_k uses (t1, r1)(t2, r2) = (t1 + M^r1 t2, r1 + r2)."""
    if a.tag != b.tag:
        raise TagMismatchError(f"cannot compose {a.tag} with {b.tag}")
    tag = a.tag
    if tag.kind == "gamma":
        mt = _apply(rotation_power(tag.k, a.r), b.t)
        return GroupElement(tag, (a.t[0] + mt[0], a.t[1] + mt[1]), a.r + b.r)
    return GroupElement(tag, (a.t[0] + b.t[0], a.t[1] + b.t[1]), a.r + b.r)


def invert(a: GroupElement) -> GroupElement:
    tag = a.tag
    if tag.kind == "gamma":
        mt = _apply(rotation_power(tag.k, -a.r), a.t)
        return GroupElement(tag, (-mt[0], -mt[1]), -a.r)
    return GroupElement(tag, (-a.t[0], -a.t[1]), -a.r)


def power(a: GroupElement, e: int) -> GroupElement:
    base = a if e >= 0 else invert(a)
    out = identity(a.tag)
    for _ in range(abs(e)):
        out = compose(out, base)
    return out


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    return compose(compose(a, b), compose(invert(a), invert(b)))


def conjugate(g: GroupElement, x: GroupElement) -> GroupElement:
    """g x g^-1"""
    return compose(compose(g, x), invert(g))


def lattice_rank(vectors: Iterable[Sequence[int]]) -> int:
    """Rank of the subgroup of Z^2 generated by integer pairs."""
    return integer_rank([list(v) for v in vectors])


def lattice_index(vectors: Iterable[Sequence[int]]) -> int:
    """Index in Z^2 of a rank-2 lattice: gcd of the 2x2 minors (0 if rank < 2)."""
    from math import gcd

    vs = [tuple(v) for v in vectors]
    g = 0
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            g = gcd(g, vs[i][0] * vs[j][1] - vs[i][1] * vs[j][0])
    return g


@dataclass(frozen=True)
class SubgroupDescription:
    """A finitely generated subgroup, given by a generator list."""

    tag: GroupTag
    generators: Tuple[GroupElement, ...] = field(default_factory=tuple)

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.tag != self.tag:
                raise TagMismatchError(f"generator {g!r} not in {self.tag}")
        object.__setattr__(self, "generators", gens)

    @property
    def is_trivial(self) -> bool:
        return all(g.is_identity for g in self.generators)

    @property
    def has_rotation(self) -> bool:
        return any(g.r != 0 for g in self.generators)

    @property
    def translation_rank(self) -> int:
        return lattice_rank(g.t for g in translation_subgroup(self).generators)

    def to_json(self) -> dict:
        return {"generators": [g.to_json() for g in self.generators], "tag": self.tag.name}


def _schreier_translations(sub: SubgroupDescription) -> List[GroupElement]:
    """Generators of the rotation-free part via Reidemeister-Schreier.

    Cosets of the kernel of the rotation map are indexed by the rotation
    residues reachable from the generators; the transversal is built by
    breadth-first search.
    """
    tag = sub.tag
    gens = [g for g in sub.generators if not g.is_identity]
    reps = {0: identity(tag)}
    queue = [0]
    while queue:
        h = queue.pop(0)
        for x in gens:
            h2 = (h + x.r) % tag.order
            if h2 not in reps:
                reps[h2] = compose(reps[h], x)
                queue.append(h2)
    out: List[GroupElement] = []
    seen = set()
    for h in sorted(reps):
        for x in gens:
            s = compose(compose(reps[h], x), invert(reps[(h + x.r) % tag.order]))
            if not s.is_identity and s not in seen:
                seen.add(s)
                out.append(s)
    return out


def _gamma2_translations(sub: SubgroupDescription) -> List[GroupElement]:
    """Order-2 rotations: r_1 r_j are translations and, with the t_j, generate the lattice part."""
    rots = [g for g in sub.generators if g.r != 0]
    trans = [g for g in sub.generators if g.r == 0 and not g.is_identity]
    if not rots:
        return trans
    prods = [compose(rots[0], rj) for rj in rots[1:]]
    return [g for g in prods if not g.is_identity] + trans


def translation_subgroup(sub: SubgroupDescription) -> SubgroupDescription:
    """Generators for the translation subgroup (rotation-free elements) of `sub`."""
    tag = sub.tag
    if tag.kind in ("Z2", "Z"):
        return sub
    if tag.kind in ("cyclic", "reflection"):
        return SubgroupDescription(tag, ())
    if tag.k == 2:
        return SubgroupDescription(tag, tuple(_gamma2_translations(sub)))
    return SubgroupDescription(tag, tuple(_schreier_translations(sub)))


def has_translations_by_commutators(sub: SubgroupDescription) -> bool:
    """Whether a Gamma_k subgroup contains a non-trivial translation.

    If some generator is a translation the answer is immediate. Otherwise
    all generators are rotations and the group is free of translations
    exactly when it is cyclic, i.e. when r_1 commutes with every r_j.
    """
    if sub.tag.kind != "gamma":
        raise GroupError("commutator test applies to Gamma_k only")
    gens = [g for g in sub.generators if not g.is_identity]
    if any(g.r == 0 for g in gens):
        return True
    if not gens:
        return False
    r1 = gens[0]
    return any(not commutator(r1, rj).is_identity for rj in gens[1:])


def teich_restricted(tag: GroupTag, lam: SubgroupDescription) -> int:
    """Dimension of the restricted Teichmueller space of a translation subgroup."""
    if lam.tag != tag:
        raise TagMismatchError(f"subgroup of {lam.tag} given for {tag}")
    if any(g.r != 0 for g in lam.generators):
        raise InvalidSubgroupError("translation subgroup has a rotation generator")
    if tag.kind in ("cyclic", "reflection"):
        return 0
    rank = lattice_rank(g.t for g in lam.generators)
    if tag.kind == "Z":
        return rank
    if tag.kind == "Z2" or tag.k == 2:
        return max(2 * rank - 1, 0)
    return 1 if rank > 0 else 0


def cent_dim(sub: SubgroupDescription) -> int:
    """Dimension of the centralizer in Euc(2) of a represented subgroup."""
    if sub.is_trivial:
        return 3
    kind = sub.tag.kind
    if kind in ("Z2", "Z"):
        return 2
    if kind in ("cyclic", "reflection"):
        return 1
    rot = sub.has_rotation
    trans = bool(translation_subgroup(sub).generators)
    if rot and trans:
        return 0
    return 1 if rot else 2


# full-group values used by the global edge count
def teich_full(tag: GroupTag) -> int:
    if tag.kind == "Z2":
        return 3
    if tag.kind == "Z":
        return 1
    if tag.kind == "gamma":
        return 3 if tag.k == 2 else 1
    return 0


def cent_full(tag: GroupTag) -> int:
    if tag.kind in ("Z2", "Z"):
        return 2
    if tag.kind in ("cyclic", "reflection"):
        return 1
    return 0
