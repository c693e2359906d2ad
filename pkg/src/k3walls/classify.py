"""Wall taxonomy: divisorial / flopping / fake, total semistability,
effective decompositions and exceptional-locus bundle data.

Divisorial subtypes are decided by class-existence tests inside the wall
lattice; effectivity of spherical classes is a phase-positivity test at an
exact rational point on the numerical wall, taken on the wall's generic
arc (see _select_arc).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import K3Config, MukaiVector, pairing, square
from .solvers import (
    classes_in_rank2,
    decomposition_solutions,
    lattice_points_in_parallelogram,
    spherical_classes,
)
from .stability import AlignmentFunctional, alignment_candidates
from .walls import WallLattice

SPHERICAL_SEARCH_BOUND = 24

DIVISORIAL_BN = "brill_noether"
DIVISORIAL_HC = "hilbert_chow"
DIVISORIAL_LGU = "li_gieseker_uhlenbeck"


@dataclass(frozen=True)
class Certificate:
    cls: MukaiVector
    role: str


@dataclass(frozen=True)
class WallVerdict:
    kind: str  # "divisorial" | "flopping" | "fake" | "lagrangian"
    subtype: str | None  # divisorial subtype or flop trigger
    totally_semistable: bool
    certificates: tuple[Certificate, ...]
    phase_point: tuple[Fraction, Fraction] | None  # (b, t^2) used for phases
    proxy_flag: bool = False  # semistability verdict relied on the phase proxy
    arc_sensitive: bool = False  # other arcs of the wall disagree on (b')

    @property
    def is_flopping(self) -> bool:
        return self.kind == "flopping"


@dataclass(frozen=True)
class BundleDescriptor:
    """Numerical shape of a flop's exceptional locus for a split v = a + b.

    Generically a P^r-bundle over the product of the two moduli factors;
    factors of dimension zero are single points (rigid spherical classes).
    """

    a: MukaiVector
    b: MukaiVector
    fiber_dim: int
    base_dims: tuple[int, int]
    total_dim: int
    codim: int

    def describe(self) -> str:
        factors = []
        for cls, dim in ((self.a, self.base_dims[0]), (self.b, self.base_dims[1])):
            if dim > 0:
                factors.append(f"M{cls}({dim}-dim)")
        base = " x ".join(factors) if factors else "a point"
        return f"P^{self.fiber_dim}-bundle over {base}"


def bundle_descriptor(cfg: K3Config, v: MukaiVector, a: MukaiVector) -> BundleDescriptor:
    b = v - a
    r = pairing(cfg, b, a) - 1
    if r < 1:
        raise ValueError(f"fiber dimension {r} < 1: not a flop cell")
    da, db = square(cfg, a) + 2, square(cfg, b) + 2
    total = da + db + r
    return BundleDescriptor(a, b, r, (da, db), total, r)


def phase_functional(cfg: K3Config, wall: WallLattice) -> AlignmentFunctional | None:
    """Wall point used for all phase decisions about this wall."""
    func, _, _ = _select_arc(cfg, wall)
    return func


def _spherical_trigger(
    cfg: K3Config, wall: WallLattice, func: AlignmentFunctional
) -> MukaiVector | None:
    """An effective spherical class pairing negatively with v at func, if any."""
    v = wall.v
    for s in _spherical_members(cfg, wall):
        for cand in (s, -s):
            if pairing(cfg, cand, v) < 0 and func.phi(cand) > 0:
                return cand
    return None


def _select_arc(cfg: K3Config, wall: WallLattice):
    """Choose the arc of the numerical wall that carries the verdict.

    Arcs where some spherical class of negative pairing turns effective are
    sub-strata where this wall meets the walls of those classes; the
    verdict belongs to the generic arc, so trigger-free arcs win, then arcs
    making both the representative and its complement effective.

    Returns (functional, trigger at that arc, arcs disagree on triggers).
    """
    if wall.degenerate:
        return None, None, False
    cands = alignment_candidates(cfg, wall.v, wall.a, SPHERICAL_SEARCH_BOUND)
    best = None
    best_key = None
    triggers_seen = set()
    for func in cands:
        trig = _spherical_trigger(cfg, wall, func)
        triggers_seen.add(trig is not None)
        ph = func.phi(wall.a)
        key = (trig is None, 0 < ph < 1, ph > 0)
        if best_key is None or key > best_key:
            best, best_key = (func, trig), key
    if best is None:
        return None, None, False
    return best[0], best[1], len(triggers_seen) > 1


def _spherical_members(cfg: K3Config, wall: WallLattice) -> list[MukaiVector]:
    out = []
    for p, q in spherical_classes(wall.gram, SPHERICAL_SEARCH_BOUND):
        s = wall.member(p, q)
        if square(cfg, s) != -2:
            raise AssertionError("spherical search returned a non-spherical class")
        out.append(s)
    return out


def classify(cfg: K3Config, wall: WallLattice) -> WallVerdict:
    v = wall.v
    vsq = square(cfg, v)
    if wall.degenerate:
        cert = Certificate(wall.a, "isotropic_fibration")
        return WallVerdict("lagrangian", None, False, (cert,), None)

    gram = wall.gram
    certs: list[Certificate] = []

    bn = classes_in_rank2(gram, -2, 0)
    hc = classes_in_rank2(gram, 0, 1)
    lgu = classes_in_rank2(gram, 0, 2)
    for pq in bn:
        certs.append(Certificate(wall.member(*pq), "spherical_orthogonal"))
    for pq in hc:
        certs.append(Certificate(wall.member(*pq), "isotropic_pairing_one"))
    for pq in lgu:
        certs.append(Certificate(wall.member(*pq), "isotropic_pairing_two"))

    func, trigger, arc_sensitive = _select_arc(cfg, wall)
    point = (func.b, func.t2) if func is not None else None

    if hc:
        tss, proxy = True, False
        certs.append(Certificate(wall.member(*hc[0]), "semistability_isotropic"))
    elif trigger is not None:
        tss, proxy = True, True
        certs.append(Certificate(trigger, "semistability_spherical"))
    else:
        tss, proxy = False, False

    if hc or lgu or bn:
        subtype = DIVISORIAL_HC if hc else (DIVISORIAL_LGU if lgu else DIVISORIAL_BN)
        return WallVerdict(
            "divisorial", subtype, tss, tuple(certs), point, proxy, arc_sensitive
        )

    flop_sphericals = []
    for k in range(1, vsq // 2 + 1):
        for pq in classes_in_rank2(gram, -2, k):
            flop_sphericals.append(wall.member(*pq))
    if flop_sphericals:
        flop_sphericals.sort(key=lambda s: (pairing(cfg, s, v), s.as_tuple()))
        for s in flop_sphericals:
            certs.append(Certificate(s, "spherical_flop"))
        return WallVerdict(
            "flopping", "spherical", tss, tuple(certs), point, proxy, arc_sensitive
        )

    positive_pairs = _positive_two_term(cfg, wall)
    if positive_pairs:
        for a, b in positive_pairs:
            certs.append(Certificate(a, "positive_part"))
            certs.append(Certificate(b, "positive_part"))
        return WallVerdict(
            "flopping", "positive_sum", tss, tuple(certs), point, proxy, arc_sensitive
        )

    return WallVerdict("fake", None, tss, tuple(certs), point, proxy, arc_sensitive)


def _positive_two_term(cfg: K3Config, wall: WallLattice):
    """Unordered splittings v = a + b with both parts of nonnegative square."""
    v = wall.v
    vsq = square(cfg, v)
    out = []
    seen = set()
    for x, y in decomposition_solutions(cfg, v, wall.a):
        a = wall.member(y, x)  # solutions are (x, y) with a = x*a_i + y*v
        if square(cfg, a) < 0:
            continue
        b = v - a
        if square(cfg, b) < 0 or pairing(cfg, a, v) <= 0 or pairing(cfg, b, v) <= 0:
            continue
        key = tuple(sorted((a.as_tuple(), b.as_tuple())))
        if key not in seen:
            seen.add(key)
            out.append((a, b) if pairing(cfg, a, v) <= pairing(cfg, b, v) else (b, a))
    out.sort(key=lambda ab: (ab[0].as_tuple(), ab[1].as_tuple()))
    return out


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[MukaiVector, ...]
    phases: tuple[Fraction, ...]
    refinable: bool


def effective_decompositions(
    cfg: K3Config, wall: WallLattice, v: MukaiVector | None = None
) -> list[Decomposition]:
    """Splittings v = sum of effective parts inside the wall lattice.

    A part is admissible when it is positive (square >= 0, positive pairing
    with v) or a spherical class of positive phase; every part must carry
    phase in (0, 1).  Splittings refinable inside the lattice are flagged
    via the vertex parallelogram test.
    """
    v = wall.v if v is None else v
    if wall.degenerate:
        return []
    func = phase_functional(cfg, wall)
    if func is None:
        return []
    atoms = _effective_atoms(cfg, wall, func)
    results: list[Decomposition] = []
    seen: set[tuple] = set()

    def admissible(u: MukaiVector, ph: Fraction) -> bool:
        if not 0 < ph < 1:
            return False
        usq = square(cfg, u)
        return usq == -2 or (usq >= 0 and pairing(cfg, u, v) > 0)

    def record(parts: tuple[MukaiVector, ...]):
        key = tuple(sorted(p.as_tuple() for p in parts))
        if key in seen:
            return
        seen.add(key)
        phases = tuple(func.phi(p) for p in parts)
        refinable = False
        if len(parts) == 2:
            coords = [_coords_in_wall(cfg, wall, p) for p in parts]
            if None not in coords:
                pts = lattice_points_in_parallelogram(
                    wall.gram, coords[0], (coords[0][0] + coords[1][0],
                                           coords[0][1] + coords[1][1])
                )
                refinable = bool(pts)
        results.append(Decomposition(parts, phases, refinable))

    max_parts = _max_parts(atoms, func)

    def extend(start: int, total: MukaiVector, phase: Fraction, chosen):
        # close the split with the complement, which need not sit in the window
        if chosen:
            last = v - total
            if not last.is_zero and admissible(last, 1 - phase):
                record(tuple(chosen) + (last,))
        if len(chosen) + 1 >= max_parts:
            return
        for i in range(start, len(atoms)):
            u, ph = atoms[i]
            if phase + ph >= 1:
                continue
            extend(i, total + u, phase + ph, chosen + [u])

    extend(0, MukaiVector(0, 0, 0), Fraction(0), [])
    results.sort(key=lambda d: (len(d.parts), tuple(p.as_tuple() for p in d.parts)))
    return results


def _coords_in_wall(cfg: K3Config, wall: WallLattice, x: MukaiVector):
    from .intmath import coords_in_basis

    co = coords_in_basis(wall.v.as_tuple(), wall.a.as_tuple(), x.as_tuple())
    if co is None or co[0].denominator != 1 or co[1].denominator != 1:
        return None
    return (int(co[0]), int(co[1]))


def _effective_atoms(cfg, wall: WallLattice, func: AlignmentFunctional):
    """(class, phase) pairs usable as split parts, phases inside (0, 1)."""
    v = wall.v
    atoms = []
    seen = set()
    for x, y in decomposition_solutions(cfg, v, wall.a):
        u = wall.member(y, x)
        if u.as_tuple() in seen:
            continue
        usq = square(cfg, u)
        ph = func.phi(u)
        if not 0 < ph < 1:
            continue
        if usq == -2 or (usq >= 0 and pairing(cfg, u, v) > 0):
            seen.add(u.as_tuple())
            atoms.append((u, ph))
    # spherical classes of either sign count once their phase is positive
    for s in _spherical_members(cfg, wall):
        for cand in (s, -s):
            ph = func.phi(cand)
            if 0 < ph < 1 and cand.as_tuple() not in seen:
                seen.add(cand.as_tuple())
                atoms.append((cand, ph))
    atoms.sort(key=lambda pair: pair[0].as_tuple())
    return atoms


def _max_parts(atoms, func: AlignmentFunctional) -> int:
    phases = [ph for _, ph in atoms if ph > 0]
    if not phases:
        return 1
    return min(8, int(Fraction(1) / min(phases)) + 1)


def two_term_decompositions(cfg: K3Config, wall: WallLattice):
    """The two-part effective splittings, as (a, b) with a the smaller square."""
    out = []
    for dec in effective_decompositions(cfg, wall):
        if len(dec.parts) == 2:
            a, b = dec.parts
            if (square(cfg, a), a.as_tuple()) > (square(cfg, b), b.as_tuple()):
                a, b = b, a
            out.append((a, b, dec))
    return out


def flop_cells(cfg: K3Config, wall: WallLattice):
    """Two-part splittings carrying an actual bundle cell (fiber dim >= 1).

    Splittings with (v-a, a) <= 1 admit no one-parameter extension family
    and contribute no exceptional cell, so they are listed by
    effective_decompositions but excluded here.
    """
    out = []
    for a, b, dec in two_term_decompositions(cfg, wall):
        if pairing(cfg, b, a) - 1 >= 1:
            out.append((a, b, dec))
    return out
