"""Periodic rigidity matrices and a randomized generic-rank oracle.

Realizations are sampled over GF(p) with p = 2**61 - 1. The lattice matrix
L = [[a, b], [c, d]] maps a color (g1, g2) to the translation L.(g1, g2), so
its columns (a, c) and (b, d) are the images of the two lattice generators.
Lattice columns of the rigidity matrix are ordered (a, b, c, d).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .graph import ColoredGraph, Edge, add_loops
from .groups import GroupElement
from .linalg import PRIME, det_mod, integer_rank, inv_mod, interpolate_mod, mat_vec_mod, nullspace_mod, rank_mod, roots_mod

VARIANTS = ("periodic", "fixed-lattice", "cylinder", "unit-area", "fixed-angle")
TRIVIAL_DIM = {"periodic": 3, "fixed-lattice": 2, "cylinder": 3, "unit-area": 3, "fixed-angle": 3}
LATTICE_COLS = {"periodic": (0, 1, 2, 3), "fixed-lattice": (), "cylinder": (0, 2), "unit-area": (0, 1, 2, 3), "fixed-angle": (0, 1, 2, 3)}
EXTRA_ROW = ("unit-area", "fixed-angle")

Pair = Tuple[int, int]
Lattice = Tuple[Pair, Pair]


class VariantError(ValueError):
    pass


class KernelExtractionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Realization:
    points: Tuple[Pair, ...]
    lattice: Lattice
    modulus: Optional[int] = PRIME  # None means plain integers

    def reduce(self, x: int) -> int:
        return x % self.modulus if self.modulus else x

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.lattice
        return self.reduce(a * d - b * c)

    def transformed(self, A: Lattice) -> "Realization":
        """Image under the linear map A: points A.p_i, lattice A.L."""
        (p, q), (r, s) = A
        pts = tuple((self.reduce(p * x + q * y), self.reduce(r * x + s * y)) for x, y in self.points)
        (a, b), (c, d) = self.lattice
        lat = (
            (self.reduce(p * a + q * c), self.reduce(p * b + q * d)),
            (self.reduce(r * a + s * c), self.reduce(r * b + s * d)),
        )
        return Realization(pts, lat, self.modulus)


def edge_vector(real: Realization, edge: Edge) -> Pair:
    """eta = p_v - p_u + L.gamma"""
    (a, b), (c, d) = real.lattice
    g1, g2 = edge.color.t
    pu, pv = real.points[edge.u], real.points[edge.v]
    return (
        real.reduce(pv[0] - pu[0] + a * g1 + b * g2),
        real.reduce(pv[1] - pu[1] + c * g1 + d * g2),
    )


def fixed_angle_row(lattice: Lattice, reduce=lambda x: x) -> List[int]:
    """Gradient of the angle between the lattice columns, with positive factors cleared.

    The angle's cosine is (ab + cd) / (|l1| |l2|); its gradient in (a, b, c, d)
    is a positive multiple of det(L) times the returned entries.
    """
    (a, b), (c, d) = lattice
    n1 = a * a + c * c
    n2 = b * b + d * d
    det = a * d - b * c
    return [reduce(det * x) for x in (-c * n2, d * n1, a * n2, -b * n1)]


def unit_area_row(lattice: Lattice, reduce=lambda x: x) -> List[int]:
    (a, b), (c, d) = lattice
    return [reduce(x) for x in (d, -c, -b, a)]


def matrix_shape(g: ColoredGraph, variant: str) -> Tuple[int, int]:
    rows = g.m + (1 if variant in EXTRA_ROW else 0)
    return rows, 2 * g.n + len(LATTICE_COLS[variant])


def _check_variant(g: ColoredGraph, variant: str) -> None:
    if variant not in VARIANTS:
        raise VariantError(f"unknown variant {variant!r}")
    if g.tag.kind == "Z2":
        return
    if g.tag.kind == "Z" and variant == "cylinder":
        return
    raise VariantError(f"variant {variant} is not defined for {g.tag}-colored graphs")


def build_matrix(g: ColoredGraph, real: Realization, variant: str = "periodic") -> List[List[int]]:
    _check_variant(g, variant)
    lat_cols = LATTICE_COLS[variant]
    base = 2 * g.n
    rows = []
    for e in g.edges:
        row = [0] * (base + len(lat_cols))
        ex, ey = edge_vector(real, e)
        row[2 * e.u] -= ex
        row[2 * e.u + 1] -= ey
        row[2 * e.v] += ex
        row[2 * e.v + 1] += ey
        g1, g2 = e.color.t
        full = (g1 * ex, g2 * ex, g1 * ey, g2 * ey)
        for j, col in enumerate(lat_cols):
            row[base + j] = full[col]
        rows.append([real.reduce(x) for x in row])
    if variant == "unit-area":
        rows.append([0] * base + unit_area_row(real.lattice, real.reduce))
    elif variant == "fixed-angle":
        rows.append([0] * base + fixed_angle_row(real.lattice, real.reduce))
    return rows


def matrix_rank(rows: Sequence[Sequence[int]], modulus: Optional[int]) -> int:
    if not rows:
        return 0
    return rank_mod(rows, modulus) if modulus else integer_rank(rows)


# -- sampling -------------------------------------------------------------------


def _lattice_ok(lat: Lattice, reduce) -> bool:
    (a, b), (c, d) = lat
    return reduce(a * d - b * c) != 0 and reduce(a * a + c * c) != 0 and reduce(b * b + d * d) != 0


def sample_realization(n: int, rng: np.random.Generator, modulus: Optional[int] = PRIME, bound: int = 10 ** 6) -> Realization:
    """Uniform field elements (or integers in [-bound, bound] when modulus is None)."""

    def draw(k):
        if modulus:
            return [int(x) for x in rng.integers(0, modulus, size=k, dtype=np.int64)]
        return [int(x) for x in rng.integers(-bound, bound + 1, size=k)]

    reduce = (lambda x: x % modulus) if modulus else (lambda x: x)
    flat = draw(2 * n)
    pts = tuple((flat[2 * i], flat[2 * i + 1]) for i in range(n))
    while True:
        a, b, c, d = draw(4)
        lat = ((a, b), (c, d))
        if _lattice_ok(lat, reduce):
            return Realization(pts, lat, modulus)


def trial_rngs(seed: int, trials: int) -> List[np.random.Generator]:
    """One independent generator per trial, split deterministically from the master seed."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


@dataclass
class OracleResult:
    variant: str
    rows: int
    cols: int
    rank: int
    trials: int
    trivial: int
    modulus: Optional[int]
    seed: int
    trial_ranks: List[int] = field(default_factory=list)

    @property
    def corank(self) -> int:
        return self.cols - self.rank

    @property
    def dof(self) -> int:
        return self.corank - self.trivial

    @property
    def rigid(self) -> bool:
        return self.dof == 0

    @property
    def verdict(self) -> str:
        return "rigid" if self.rigid else "flexible"

    def to_json(self) -> dict:
        return {
            "cols": self.cols,
            "corank": self.corank,
            "dof": self.dof,
            "modulus": self.modulus,
            "rank": self.rank,
            "rows": self.rows,
            "seed": self.seed,
            "trial_ranks": list(self.trial_ranks),
            "trials": self.trials,
            "variant": self.variant,
            "verdict": self.verdict,
        }


def generic_corank(
    g: ColoredGraph,
    variant: str = "periodic",
    trials: int = 3,
    seed: int = 0,
    rational: bool = False,
) -> OracleResult:
    """Generic rank as the maximum over independent random realizations.

    With `rational` the realization uses integer coordinates and the rank is
    computed exactly over Q (slow cross-check).
    """
    _check_variant(g, variant)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    modulus = None if rational else PRIME
    rows, cols = matrix_shape(g, variant)
    ranks = []
    for rng in trial_rngs(seed, trials):
        real = sample_realization(g.n, rng, modulus)
        ranks.append(matrix_rank(build_matrix(g, real, variant), modulus))
    return OracleResult(variant, rows, cols, max(ranks), trials, TRIVIAL_DIM[variant], modulus, seed, ranks)


def is_rigid(g: ColoredGraph, variant: str = "periodic", trials: int = 3, seed: int = 0) -> bool:
    return generic_corank(g, variant, trials, seed).rigid


# -- lattice fixing -------------------------------------------------------------


def independent_loop_color(g: ColoredGraph, rng: np.random.Generator, bound: int = 1000) -> Pair:
    """A random nonzero color not parallel to any rank-1 subgraph's rho-image."""
    from .sparsity import rank1_directions

    dirs = rank1_directions(g)
    while True:
        x, y = (int(v) for v in rng.integers(-bound, bound + 1, size=2))
        if (x or y) and all(x * dy - y * dx for dx, dy in dirs):
            return (x, y)


def lattice_fixing_test(g: ColoredGraph, trials: int = 3, seed: int = 0) -> bool:
    """Whether a generic realization fixes the lattice.

    A loop with a suitably independent color adds a row that only involves
    lattice columns; it is dependent exactly when every infinitesimal
    motion leaves the lattice unchanged.
    """
    if g.tag.kind != "Z2":
        raise VariantError("lattice fixing is defined for Z2-colored graphs")
    if g.n == 0:
        raise ValueError("graph has no vertices")
    rng = np.random.default_rng(np.random.SeedSequence([seed, 1]))
    eta = independent_loop_color(g, rng)
    before = generic_corank(g, "periodic", trials, seed)
    after = generic_corank(add_loops(g, 0, [eta]), "periodic", trials, seed)
    return before.corank == after.corank


# -- affine transport -----------------------------------------------------------


def random_matrix(rng: np.random.Generator, modulus: int = PRIME) -> Lattice:
    while True:
        a, b, c, d = (int(x) for x in rng.integers(0, modulus, size=4, dtype=np.int64))
        if (a * d - b * c) % modulus:
            return ((a, b), (c, d))


def affine_invariance_check(
    g: ColoredGraph,
    A: Optional[Lattice] = None,
    variant: str = "periodic",
    seed: int = 0,
) -> bool:
    """Corank at (p, L) equals corank at (A.p, A.L) for one sampled realization."""
    rng = np.random.default_rng(seed)
    if A is None:
        A = random_matrix(rng)
    (p, q), (r, s) = A
    if (p * s - q * r) % PRIME == 0:
        raise ValueError("A is singular")
    real = sample_realization(g.n, rng)
    before = matrix_rank(build_matrix(g, real, variant), PRIME)
    after = matrix_rank(build_matrix(g, real.transformed(A), variant), PRIME)
    return before == after


def adjugate_transpose(A: Lattice, modulus: int = PRIME) -> Lattice:
    """A* = det(A)^-1 [[d, -c], [-b, a]], the inverse transpose."""
    (a, b), (c, d) = A
    inv = inv_mod(a * d - b * c, modulus)
    return ((d * inv % modulus, -c * inv % modulus), (-b * inv % modulus, a * inv % modulus))


def lhs_form(M: Lattice, A: Lattice, modulus: int = PRIME) -> int:
    """lambda (d^2 + b^2 - a^2 - c^2) - (mu + nu)(ab + cd) for M = [[lambda, mu], [nu, -lambda]]."""
    (lam, mu), (nu, _) = M
    (a, b), (c, d) = A
    return (lam * (d * d + b * b - a * a - c * c) - (mu + nu) * (a * b + c * d)) % modulus


@dataclass
class AreaMotion:
    """A non-trivial motion at L = identity whose lattice part is trace-free."""

    realization: Realization
    velocities: Tuple[Pair, ...]
    M: Lattice

    def transported(self, A: Lattice) -> Tuple[Realization, Tuple[Pair, ...], Lattice]:
        P = PRIME
        S = adjugate_transpose(A)
        (s0, s1), (s2, s3) = S
        vel = tuple(((s0 * x + s1 * y) % P, (s2 * x + s3 * y) % P) for x, y in self.velocities)
        (m0, m1), (m2, m3) = self.M
        Mt = (((s0 * m0 + s1 * m2) % P, (s0 * m1 + s1 * m3) % P), ((s2 * m0 + s3 * m2) % P, (s2 * m1 + s3 * m3) % P))
        return self.realization.transformed(A), vel, Mt


def _motion_vector(vel: Sequence[Pair], M: Lattice) -> List[int]:
    out = [c for v in vel for c in v]
    (a, b), (c, d) = M
    return out + [a, b, c, d]


def _area_matrix_minor(g: ColoredGraph, real: Realization) -> List[List[int]]:
    """Unit-area matrix with the columns of vertex 0 and lattice entry b removed."""
    rows = build_matrix(g, real, "unit-area")
    drop = {0, 1, 2 * g.n + 1}
    return [[x for j, x in enumerate(r) if j not in drop] for r in rows]


def _motion_from_minor_kernel(g: ColoredGraph, real: Realization, vec: Sequence[int]) -> Tuple[Tuple[Pair, ...], Lattice]:
    full = [0, 0] + list(vec[: 2 * g.n - 2]) + [vec[2 * g.n - 2], 0, vec[2 * g.n - 1], vec[2 * g.n]]
    vel = tuple((full[2 * i], full[2 * i + 1]) for i in range(g.n))
    a, b, c, d = full[2 * g.n:]
    return vel, ((a, b), (c, d))


def _is_rotation_like(M: Lattice) -> bool:
    (lam, mu), (nu, _) = M
    return lam % PRIME == 0 and (mu + nu) % PRIME == 0


def area_preserving_motion(g: ColoredGraph, seed: int = 0, attempts: int = 8) -> AreaMotion:
    """Find p (with L = identity) admitting a non-trivial area-preserving motion.

    The unit-area matrix with the columns of vertex 0 and of entry b removed
    is square for a unit-area-Laman graph. Its determinant, as a polynomial
    in a single coordinate, is interpolated and its roots over GF(p) give
    special positions where such a motion exists.
    """
    P = PRIME
    if g.tag.kind != "Z2" or g.m != 2 * g.n:
        raise KernelExtractionError("needs a Z2-colored graph with m = 2n")
    identity: Lattice = ((1, 0), (0, 1))
    if generic_corank(g, "unit-area", 3, seed).corank > 3:
        raise KernelExtractionError("graph is not unit-area rigid")
    rng = np.random.default_rng(np.random.SeedSequence([seed, 2]))
    for _ in range(attempts):
        real = Realization(sample_realization(g.n, rng).points, identity)
        # L = identity may already carry a trace-free flex
        if matrix_rank(build_matrix(g, real, "unit-area"), P) == 2 * g.n:
            motion = _extract(g, real)
            if motion is not None:
                return motion
        for coord in range(2, 2 * g.n):
            v, axis = divmod(coord, 2)

            def at(x, v=v, axis=axis):
                pts = list(real.points)
                pt = list(pts[v])
                pt[axis] = x
                pts[v] = (pt[0], pt[1])
                return Realization(tuple(pts), identity)

            xs = [int(x) for x in rng.integers(0, P, size=2 * g.n + 3, dtype=np.int64)]
            ys = [det_mod(_area_matrix_minor(g, at(x)), P) for x in xs]
            coeffs = interpolate_mod(xs, ys, P)
            if len(coeffs) <= 1:
                continue
            for root in roots_mod(coeffs, P):
                special = at(root)
                if matrix_rank(build_matrix(g, special, "periodic"), P) != 2 * g.n:
                    continue
                motion = _extract(g, special)
                if motion is not None:
                    return motion
    raise KernelExtractionError("no special position with an area-preserving flex was found")


def _extract(g: ColoredGraph, real: Realization) -> Optional[AreaMotion]:
    minor = _area_matrix_minor(g, real)
    kernel = nullspace_mod(minor, 2 * g.n + 1, PRIME)
    if len(kernel) != 1:
        return None
    vel, M = _motion_from_minor_kernel(g, real, kernel[0])
    if _is_rotation_like(M):
        return None
    return AreaMotion(real, vel, M)


@dataclass
class AreaBreakResult:
    lhs: int
    area_value: int
    in_kernel: bool
    consistent: bool  # area_value * det(A) == lhs

    @property
    def breaks(self) -> bool:
        return self.lhs != 0

    def to_json(self) -> dict:
        return {"area_value": self.area_value, "breaks": self.breaks, "consistent": self.consistent,
                "in_kernel": self.in_kernel, "lhs": self.lhs}


def transport_area_motion(motion: AreaMotion, A: Lattice, g: ColoredGraph) -> AreaBreakResult:
    P = PRIME
    (a, b), (c, d) = A
    det = (a * d - b * c) % P
    if det == 0:
        raise ValueError("A is singular")
    real2, vel2, M2 = motion.transported(A)
    vec = _motion_vector(vel2, M2)
    in_kernel = not any(mat_vec_mod(build_matrix(g, real2, "periodic"), vec, P))
    area = sum(x * y for x, y in zip(unit_area_row(real2.lattice), vec[2 * g.n:])) % P
    lhs = lhs_form(motion.M, A)
    return AreaBreakResult(lhs, area, in_kernel, area * det % P == lhs)


def area_row_breaks_under_affine(g: ColoredGraph, A: Optional[Lattice] = None, seed: int = 0) -> bool:
    """Whether an area-preserving flex at L = identity stops preserving area after the map A."""
    motion = area_preserving_motion(g, seed)
    if A is None:
        A = random_matrix(np.random.default_rng(np.random.SeedSequence([seed, 3])))
    res = transport_area_motion(motion, A, g)
    if not (res.in_kernel and res.consistent):
        raise KernelExtractionError("transported motion failed its consistency checks")
    return res.breaks
