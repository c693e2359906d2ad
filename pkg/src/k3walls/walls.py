"""Enumeration of the rank-two wall lattices meeting the movable cone.

Candidate lattices come from the families (a,a) in {-2, 0} with
0 <= (a,v) <= v^2/2, saturated and deduplicated by their orthogonal line.
The movable sector is bootstrapped: an ample-side anchor ray is computed
from a large-volume charge, the nearest divisorial wall on each side of it
bounds the sector, and a positive-cone null ray closes any side without a
divisorial wall.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .intmath import (
    coords_in_basis,
    cross3,
    det2,
    kernel_basis_int,
    lex_sign,
    primitive_vector,
    vec_content,
    xgcd,
)
from .lattice import K3Config, MukaiVector, pairing, square
from .nsgeom import NSBasis, lambda_basis, orthogonal_line_generator, pairing_row
from .solvers import GramForm2, classes_in_rank2, solve_square_with_pairing
from .stability import _charge_parts, numerical_wall

DEFAULT_WINDOW_FACTOR = 16


@dataclass(frozen=True)
class WallLattice:
    """Saturated rank-two sublattice containing v, with normalized generator.

    For the degenerate boundary lattice (discriminant zero) the normalized
    representative is the primitive isotropic class spanning the radical,
    which together with v need not generate the whole lattice.
    """

    v: MukaiVector
    a: MukaiVector
    u: MukaiVector  # basis completion: (v, u) is a basis of the lattice
    gram: GramForm2  # Gram matrix in the basis (v, a)
    line: MukaiVector  # primitive generator of the orthogonal line
    ray: tuple[int, int]  # wall-line coords in the NS basis, inside Pos
    degenerate: bool
    square_normalized: bool  # a^2 landed in {-2, 0}

    def member(self, p: int, q: int) -> MukaiVector:
        return p * self.v + q * self.a


def saturated_basis(v: MukaiVector, a: MukaiVector):
    """Basis of the saturation of Zv + Za inside the ambient rank-three lattice."""
    normal = cross3(v.as_tuple(), a.as_tuple())
    if not any(normal):
        raise ValueError("v and a are proportional")
    b1, b2 = kernel_basis_int(primitive_vector(normal))
    return MukaiVector(*b1), MukaiVector(*b2)


def complete_basis(v: MukaiVector, b1: MukaiVector, b2: MukaiVector) -> MukaiVector:
    """u with (v, u) a basis of the lattice spanned by (b1, b2)."""
    co = coords_in_basis(b1.as_tuple(), b2.as_tuple(), v.as_tuple())
    if co is None or co[0].denominator != 1 or co[1].denominator != 1:
        raise ValueError("v does not lie in the lattice")
    m1, m2 = int(co[0]), int(co[1])
    x, y, g = xgcd(m1, m2)
    if g != 1:
        raise ValueError("v is not primitive in the lattice")
    # det((m1, m2), (-y, x)) = m1*x + m2*y = 1
    return -y * b1 + x * b2


def _radical_generator(cfg: K3Config, b1: MukaiVector, b2: MukaiVector) -> MukaiVector:
    """Primitive isotropic generator of the radical of a degenerate lattice."""
    g11 = square(cfg, b1)
    g12 = pairing(cfg, b1, b2)
    g22 = square(cfg, b2)
    # integer kernel of [[g11, g12], [g12, g22]]
    if g11 == 0 and g12 == 0:
        x, y = 1, 0
    elif g12 == 0 and g22 == 0:
        x, y = 0, 1
    else:
        if g11 != 0 or g12 != 0:
            x, y = -g12, g11
        else:
            x, y = g22, -g12
        if x == 0 and y == 0:
            raise ValueError("lattice is not degenerate")
        g = gcd(x, y)
        x, y = x // g, y // g
    rad = x * b1 + y * b2
    if square(cfg, rad) != 0:
        raise ValueError("lattice is not degenerate")
    return MukaiVector(*lex_sign(rad.as_tuple()))


def _normalize_in_basis(cfg: K3Config, v: MukaiVector, u: MukaiVector):
    """Representative +-u + kv with pairing in [0, v^2/2] and minimal square."""
    vsq = square(cfg, v)
    m = pairing(cfg, u, v)
    m0 = m % vsq
    base = u + ((m0 - m) // vsq) * v  # pairing m0 in [0, vsq)
    cands = []
    if 2 * m0 < vsq:
        cands.append(base)
        if m0 == 0:
            cands.append(-base)
    elif 2 * m0 > vsq:
        cands.append(v - base)
    else:
        cands.extend([base, v - base])

    def pref(x: MukaiVector):
        sq = square(cfg, x)
        order = {-2: 0, 0: 1}.get(sq, 2)
        return (order, abs(sq), sq, x.as_tuple())

    a = min(cands, key=pref)
    if pairing(cfg, a, v) == 0:
        a = MukaiVector(*lex_sign(a.as_tuple()))
    return a, square(cfg, a) in (-2, 0)


def normalize_representative(cfg: K3Config, v: MukaiVector, a: MukaiVector) -> MukaiVector:
    """Normalized generator of the saturated lattice spanned by v and a."""
    b1, b2 = saturated_basis(v, a)
    g11 = square(cfg, b1)
    g12 = pairing(cfg, b1, b2)
    g22 = square(cfg, b2)
    if g11 * g22 - g12 * g12 == 0:
        return _radical_generator(cfg, b1, b2)
    u = complete_basis(v, b1, b2)
    return _normalize_in_basis(cfg, v, u)[0]


def build_wall(cfg: K3Config, v: MukaiVector, a_seed: MukaiVector) -> WallLattice:
    """Saturate, normalize and package the lattice spanned by v and a_seed."""
    b1, b2 = saturated_basis(v, a_seed)
    u = complete_basis(v, b1, b2)
    disc = square(cfg, b1) * square(cfg, b2) - pairing(cfg, b1, b2) ** 2
    if disc > 0:
        raise ValueError("lattice is positive definite, not a wall")
    if disc == 0:
        a = _radical_generator(cfg, b1, b2)
        norm_ok = True
        degenerate = True
    else:
        a, norm_ok = _normalize_in_basis(cfg, v, u)
        degenerate = False
    gram = GramForm2(square(cfg, v), pairing(cfg, v, a), square(cfg, a))
    line = orthogonal_line_generator(cfg, v, a)
    return WallLattice(v, a, u, gram, line, (0, 0), degenerate, norm_ok)


def _is_divisorial_lattice(cfg: K3Config, wall: WallLattice) -> bool:
    if wall.degenerate:
        return False
    g = wall.gram
    if classes_in_rank2(g, -2, 0):
        return True
    return bool(classes_in_rank2(g, 0, 1) or classes_in_rank2(g, 0, 2))


def _is_hc_lattice(cfg: K3Config, wall: WallLattice) -> bool:
    return not wall.degenerate and bool(classes_in_rank2(wall.gram, 0, 1))


class SectorError(ValueError):
    pass


@dataclass(frozen=True)
class MovableCone:
    """Closed sector of the positive cone between the two boundary rays.

    Rays are primitive integer coordinate pairs in the NS basis, sign-fixed
    into the positive-cone component of the anchor.  start is the
    divisorial (Hilbert-Chow side) boundary whenever one exists.
    """

    basis: NSBasis
    gram: tuple[int, int, int]
    anchor: tuple[int, int]
    start: tuple[int, int]
    end: tuple[int, int]
    start_kind: str
    end_kind: str

    def q(self, x, y) -> tuple:
        g11, g12, g22 = self.gram
        return g11 * x[0] * y[0] + g12 * (x[0] * y[1] + x[1] * y[0]) + g22 * x[1] * y[1]

    def orient(self, ray: tuple[int, int]) -> tuple[int, int]:
        """Sign-fix a positive-or-null ray into the anchor's component."""
        val = self.q(ray, self.anchor)
        if val == 0:
            raise SectorError(f"ray {ray} is orthogonal to the anchor")
        return ray if val > 0 else (-ray[0], -ray[1])

    def contains_line(self, ray: tuple[int, int]) -> bool:
        u = self.orient(ray)
        d1 = det2(self.start, u)
        d2 = det2(u, self.end)
        whole = det2(self.start, self.end)
        if whole > 0:
            return d1 >= 0 and d2 >= 0
        return d1 <= 0 and d2 <= 0

    def position(self, ray: tuple[int, int]) -> Fraction:
        """Exact sort parameter in [0, +inf]: 0 at start, growing toward end."""
        u = self.orient(ray)
        sol = coords_in_basis(
            (self.start[0], self.start[1], 0), (self.end[0], self.end[1], 0),
            (u[0], u[1], 0),
        )
        if sol is None:
            raise SectorError(f"ray {ray} outside the sector plane")
        x, y = sol
        if x < 0 or y < 0:
            raise SectorError(f"ray {ray} lies outside the sector")
        if x == 0:
            return Fraction(10**30)  # the end ray itself
        return y / x


def _gieseker_anchor(
    cfg: K3Config, v: MukaiVector, basis: NSBasis, seeds: list[MukaiVector]
) -> tuple[int, int]:
    """Primitive NS ray of a large-volume charge, beyond every candidate wall."""
    v_eff = MukaiVector(*lex_sign(v.as_tuple()))
    if v_eff.r != 0:
        b0 = Fraction(v_eff.c, v_eff.r) - 1
    else:
        b0 = Fraction(0)
    for _ in range(32):
        vertical_hit = False
        top = Fraction(4)
        for a in seeds:
            wall = numerical_wall(cfg, v_eff, a)
            if wall.shape == "vertical" and wall.line_b == b0:
                vertical_hit = True
                break
            if wall.alpha != 0:
                t2 = -(wall.alpha * b0 * b0 + wall.beta * b0 + wall.gamma) / wall.alpha
                if t2 > top:
                    top = t2
        if not vertical_hit:
            break
        b0 -= 1
    else:
        raise SectorError("no vertical line avoids every candidate wall")
    t2 = top + 1
    rv, mv = _charge_parts(cfg, v_eff, b0, t2)
    e = cfg.h2
    # w = Im(-conj(charge form)/Z(v)) direction: mv*A - rv*B with
    # A = Re exp((b+it)H), B = Im exp((b+it)H)/t
    A = (Fraction(1), b0, Fraction(e, 2) * (b0 * b0 - t2))
    B = (Fraction(0), Fraction(1), e * b0)
    w = tuple(mv * A[i] - rv * B[i] for i in range(3))
    den = 1
    for x in w:
        den = den * x.denominator // gcd(den, x.denominator)
    w_int = tuple(int(x * den) for x in w)
    row = pairing_row(cfg, v)
    assert sum(row[i] * w_int[i] for i in range(3)) == 0
    co = coords_in_basis(basis.e1.as_tuple(), basis.e2.as_tuple(), w_int)
    assert co is not None
    den = co[0].denominator * co[1].denominator // gcd(
        co[0].denominator, co[1].denominator
    )
    ray = (int(co[0] * den), int(co[1] * den))
    g = gcd(ray[0], ray[1])
    return (ray[0] // g, ray[1] // g)


def _null_rays(gram: tuple[int, int, int]) -> list[tuple[int, int]]:
    """Primitive rational null rays of the NS form, if any (one per line)."""
    from .intmath import sqrt_exact

    g11, g12, g22 = gram
    raw: list[tuple[int, int]] = []
    if g11 == 0 and g22 == 0:
        raw = [(1, 0), (0, 1)]
    elif g11 == 0:
        raw = [(1, 0), (-g22, 2 * g12)] if g12 else [(1, 0)]
    else:
        disc = g12 * g12 - g11 * g22
        root = sqrt_exact(disc)
        if root is None:
            return []
        if root == 0:
            raw = [(-g12, g11)]
        else:
            raw = [(-g12 + root, g11), (-g12 - root, g11)]
    uniq: list[tuple[int, int]] = []
    for x, y in raw:
        g = gcd(x, y)
        if g == 0:
            continue
        ray = lex_sign((x // g, y // g))
        if ray not in uniq:
            uniq.append(ray)
    return uniq


def _ray_coords(basis: NSBasis, line: MukaiVector) -> tuple[int, int]:
    co = coords_in_basis(basis.e1.as_tuple(), basis.e2.as_tuple(), line.as_tuple())
    if co is None or co[0].denominator != 1 or co[1].denominator != 1:
        raise SectorError(f"wall line {line} is not integral in the NS basis")
    return lex_sign((int(co[0]), int(co[1])))


def movable_cone(
    cfg: K3Config, v: MukaiVector, candidates: list[WallLattice], basis: NSBasis
) -> MovableCone:
    anchor = _gieseker_anchor(cfg, v, basis, [w.a for w in candidates])
    gram = basis.gram(cfg)

    def qform(x, y):
        g11, g12, g22 = gram
        return g11 * x[0] * y[0] + g12 * (x[0] * y[1] + x[1] * y[0]) + g22 * x[1] * y[1]

    assert qform(anchor, anchor) > 0

    def orient(ray):
        val = qform(ray, anchor)
        if val == 0:
            raise SectorError(f"ray {ray} orthogonal to anchor")
        return ray if val > 0 else (-ray[0], -ray[1])

    div_rays = []
    for w in candidates:
        if _is_divisorial_lattice(cfg, w):
            div_rays.append((orient(_ray_coords(basis, w.line)), _is_hc_lattice(cfg, w)))

    def side(ray):
        d = det2(anchor, ray)
        if d == 0:
            raise SectorError("divisorial ray equals the anchor ray")
        return 1 if d > 0 else -1

    def closer(r1, r2):
        # both on the same side of the anchor: smaller angle from anchor first
        d = det2(r1, r2)
        if d == 0:
            return r1
        same = side(r1)
        return r1 if (d > 0) == (same > 0) else r2

    best = {1: None, -1: None}
    for ray, is_hc in div_rays:
        sd = side(ray)
        cur = best[sd]
        if cur is None or closer(ray, cur[0]) == ray:
            best[sd] = (ray, is_hc)

    nulls = [orient(n) for n in _null_rays(gram)]
    bounds = {}
    for sd in (1, -1):
        if best[sd] is not None:
            bounds[sd] = (best[sd][0], "divisorial", best[sd][1])
        else:
            pick = [n for n in nulls if side(n) == sd]
            if not pick:
                raise SectorError(
                    "no divisorial wall and no rational null ray on one side; "
                    "the movable sector cannot be bounded exactly"
                )
            bounds[sd] = (pick[0], "null", False)

    plus, minus = bounds[1], bounds[-1]
    # start at a divisorial boundary, preferring the Hilbert-Chow type
    ordered = sorted(
        [plus, minus],
        key=lambda b: (b[1] != "divisorial", not b[2], b[0]),
    )
    start, end = ordered[0], ordered[1]
    return MovableCone(
        basis, gram, anchor, start[0], end[0], start[1], end[1]
    )


@dataclass(frozen=True)
class EnumerationResult:
    walls: tuple[WallLattice, ...]
    cone: MovableCone
    window: int
    stable: bool


def default_window(cfg: K3Config, v: MukaiVector) -> int:
    return max(32, DEFAULT_WINDOW_FACTOR * square(cfg, v))


def _candidate_walls(cfg: K3Config, v: MukaiVector, window: int):
    vsq = square(cfg, v)
    found: dict[tuple[int, int, int], WallLattice] = {}
    for d in (-2, 0):
        for m in range(0, vsq // 2 + 1):
            for a in solve_square_with_pairing(cfg, v, d, m, window):
                if not any(cross3(v.as_tuple(), a.as_tuple())):
                    continue
                wall = build_wall(cfg, v, a)
                found.setdefault(wall.line.as_tuple(), wall)
    return found


def enumerate_result(
    cfg: K3Config,
    v: MukaiVector,
    sector: str = "mov",
    window: int | None = None,
) -> EnumerationResult:
    if vec_content(v.as_tuple()) != 1:
        raise ValueError(f"v = {v} must be primitive")
    if square(cfg, v) <= 0:
        raise ValueError("v must have positive square")
    if window is None:
        window = default_window(cfg, v)
    basis = lambda_basis(cfg, v)

    def run(win: int):
        cands = _candidate_walls(cfg, v, win)
        cone = movable_cone(cfg, v, list(cands.values()), basis)
        if sector == "mov":
            kept = {
                key: w
                for key, w in cands.items()
                if cone.contains_line(_ray_coords(basis, w.line))
            }
        elif sector == "positive":
            kept = cands
        else:
            raise ValueError(f"unknown sector {sector!r}")
        return kept, cone

    kept, cone = run(window)
    kept2, _ = run(2 * window)
    stable = set(kept) == set(kept2)

    walls = []
    for key, w in kept.items():
        raw_ray = _ray_coords(basis, w.line)
        inside = cone.contains_line(raw_ray)
        ray = cone.orient(raw_ray) if inside else raw_ray
        walls.append(
            WallLattice(w.v, w.a, w.u, w.gram, w.line, ray, w.degenerate,
                        w.square_normalized)
        )

    def sort_key(w: WallLattice):
        if cone.contains_line(w.ray):
            return (0, cone.position(w.ray), w.a.as_tuple())
        return (1, Fraction(0), w.a.as_tuple())

    walls.sort(key=sort_key)
    return EnumerationResult(tuple(walls), cone, window, stable)


def enumerate_walls(
    cfg: K3Config,
    v: MukaiVector,
    sector: str = "mov",
    window: int | None = None,
) -> list[WallLattice]:
    """Complete, duplicate-free wall lattices whose line meets the sector."""
    return list(enumerate_result(cfg, v, sector, window).walls)
