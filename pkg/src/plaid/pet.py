"""Oriented tiles and the polytope exchange dynamics.

Doubling the classifying torus in the T direction (lattice generated by
(4, 2P, 2P), (0,2,0), (0,0,2)) splits every unordered connector label into
the two ways of directing it: on the middle half of the T-circle a cell is
read (row symbol, col symbol), on the outer half in the reverse order.  An
ordered label (A, B) stands for the connector entering the square through
edge A and leaving through edge B.

Grouping the twelve directed labels by exit edge gives the four moving
regions of a polytope exchange transformation; each region translates by the
image of the matching unit step of the plane, so the exchange is conjugate to
"follow the connector to the next square".  Orbits of images of tile centers
are therefore finite, and accumulating the regions' unit vectors along an
orbit redraws the plaid polygon through the starting center.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Set, Tuple

from .params import Param, PlaidError, Rat, RatLike, sym_reduce
from .classifier import (
    ClassifyingPoint,
    _zone_spec,
    canon_frac,
    fiber_label,
    ordered_label_scaled,
    xi_raw_scaled,
    _center_indices,
)


class NonPeriodicOrbit(PlaidError):
    """An orbit exceeded the perimeter bound without closing (bug detector)."""


class BadOffset(PlaidError):
    """Some window center came within eps of a partition wall."""

    def __init__(self, msg, suggestion=None):
        super().__init__(msg)
        self.suggestion = suggestion


ORIENTED_LABELS = ("EMPTY",) + tuple(
    a + b for a in "NSEW" for b in "NSEW" if a != b)

_VEC = {"N": (0, 1), "S": (0, -1), "E": (1, 0), "W": (-1, 0)}


@dataclass(frozen=True)
class PetRegion:
    name: str  # 'S↓', 'W←', 'N↑', 'E→', 'hold'
    vector: Tuple[int, int]


_REGIONS = {
    "N": PetRegion("N↑", (0, 1)),
    "S": PetRegion("S↓", (0, -1)),
    "E": PetRegion("E→", (1, 0)),
    "W": PetRegion("W←", (-1, 0)),
    "hold": PetRegion("hold", (0, 0)),
}


@dataclass(frozen=True)
class CoverPoint:
    """Canonical representative in [-2, 2) x [-1, 1)^2 of the double cover."""

    That: Rat
    U1: Rat
    U2: Rat

    def as_tuple(self):
        return (self.That, self.U1, self.U2)


def canon_cover_scaled(param: Param, t: int, u1: int, u2: int
                       ) -> Tuple[int, int, int]:
    w = param.omega
    ts = sym_reduce(t, 4 * w)
    k = (t - ts) // (4 * w)
    if k:
        d = 4 * param.p * k
        u1 -= d
        u2 -= d
    return ts, sym_reduce(u1, 2 * w), sym_reduce(u2, 2 * w)


def xi_hat_scaled(param: Param, a: int, b: int) -> Tuple[int, int, int]:
    return canon_cover_scaled(param, *xi_raw_scaled(param, a, b))


def xi_hat(param: Param, center) -> CoverPoint:
    a, b = _center_indices(center)
    t, u1, u2 = xi_hat_scaled(param, a, b)
    w = param.omega
    return CoverPoint(Fraction(t, w), Fraction(u1, w), Fraction(u2, w))


def lift_label(param: Param, t_hat: RatLike, base_label: str,
               transit_direction: Optional[str] = None) -> str:
    """Spell an unordered connector as a directed one at cover coordinate
    t_hat: the transit order itself on the middle half [-1, 1), reversed on
    the outer half.  transit_direction is the ordered spelling the middle
    half would use; it defaults to the label's canonical spelling."""
    if base_label == "EMPTY":
        return "EMPTY"
    order = transit_direction or base_label
    if set(order) != set(base_label) or len(order) != 2:
        raise PlaidError(f"transit {order!r} does not spell {base_label!r}")
    t_hat = Fraction(t_hat)
    if not -2 <= t_hat < 2:
        raise PlaidError(f"t_hat={t_hat} outside [-2, 2)")
    return order if -1 <= t_hat < 1 else order[::-1]


def oriented_label_scaled(param: Param, t: int, u1: int, u2: int) -> str:
    """Directed label at a canonical scaled cover point."""
    w = param.omega
    if t >= w:
        rt, ru1, ru2 = t - 2 * w, u1 - 2 * param.p, u2 - 2 * param.p
    elif t < -w:
        rt, ru1, ru2 = t + 2 * w, u1 + 2 * param.p, u2 + 2 * param.p
    else:
        rt, ru1, ru2 = t, u1, u2
    r, c, diag = ordered_label_scaled(
        param, rt, sym_reduce(ru1, 2 * w), sym_reduce(ru2, 2 * w))
    if diag is not None:
        return "EMPTY"
    return r + c if -w <= t < w else c + r


def oriented_label(param: Param, point: CoverPoint) -> str:
    w = param.omega
    t, u1, u2 = (point.That * w, point.U1 * w, point.U2 * w)
    for v in (t, u1, u2):
        if v.denominator != 1:
            raise PlaidError(f"{point} is not on the discrete grid")
    return oriented_label_scaled(param, int(t), int(u1), int(u2))


def pet_region(param: Param, point: CoverPoint) -> PetRegion:
    """Region of the forward partition: grouped by the edge the connector
    points into (its second letter)."""
    lab = oriented_label(param, point)
    return _REGIONS["hold"] if lab == "EMPTY" else _REGIONS[lab[1]]


def pet_region_out(param: Param, point: CoverPoint) -> PetRegion:
    """Region of the backward partition (edge the connector points out of)."""
    lab = oriented_label(param, point)
    return _REGIONS["hold"] if lab == "EMPTY" else _REGIONS[lab[0]]


def _translation_scaled(param: Param, direction: str) -> Tuple[int, int, int]:
    w, p = param.omega, param.p
    return {
        "N": (2 * w, 0, 4 * p),
        "S": (-2 * w, 0, -4 * p),
        "E": (4 * p, 4 * p, 4 * p),
        "W": (-4 * p, -4 * p, -4 * p),
    }[direction]


def _step_scaled(param: Param, z: Tuple[int, int, int], direction: str
                 ) -> Tuple[int, int, int]:
    d = _translation_scaled(param, direction)
    return canon_cover_scaled(param, z[0] + d[0], z[1] + d[1], z[2] + d[2])


def _cover_from_scaled(param: Param, z: Tuple[int, int, int]) -> CoverPoint:
    w = param.omega
    return CoverPoint(Fraction(z[0], w), Fraction(z[1], w), Fraction(z[2], w))


def _cover_to_scaled(param: Param, point: CoverPoint) -> Tuple[int, int, int]:
    w = param.omega
    vals = (point.That * w, point.U1 * w, point.U2 * w)
    if any(v.denominator != 1 for v in vals):
        raise PlaidError(f"{point} is not on the discrete grid")
    return tuple(int(v) for v in vals)


def pet_step(param: Param, point: CoverPoint) -> CoverPoint:
    """One application of the exchange: translate by the fiberwise map of the
    point's forward region (identity on hold)."""
    lab = oriented_label(param, point)
    if lab == "EMPTY":
        return point
    z = _cover_to_scaled(param, point)
    return _cover_from_scaled(param, _step_scaled(param, z, lab[1]))


def pet_back(param: Param, point: CoverPoint) -> CoverPoint:
    """Inverse exchange, driven by the backward partition."""
    lab = oriented_label(param, point)
    if lab == "EMPTY":
        return point
    z = _cover_to_scaled(param, point)
    return _cover_from_scaled(param, _step_scaled(param, z, lab[0]))


@dataclass(frozen=True)
class PetOrbit:
    start: CoverPoint
    states: Tuple[CoverPoint, ...]
    labels: Tuple[str, ...]
    vectors: Tuple[Tuple[int, int], ...]


def special_orbit(param: Param, center) -> PetOrbit:
    """The orbit of the image of a tile center, iterated to first return.

    Hold points have orbits of length one.  Iteration is capped at 4*omega^2,
    past any polygon's perimeter; exceeding the cap means the model is broken.
    """
    a, b = _center_indices(center)
    w = param.omega
    z0 = xi_hat_scaled(param, a, b)
    states = [_cover_from_scaled(param, z0)]
    labels = []
    vectors = []
    lab = oriented_label_scaled(param, *z0)
    if lab == "EMPTY":
        return PetOrbit(states[0], tuple(states), ("EMPTY",), ((0, 0),))
    z = z0
    for _ in range(4 * w * w):
        lab = oriented_label_scaled(param, *z)
        labels.append(lab)
        vectors.append(_VEC[lab[1]])
        z = _step_scaled(param, z, lab[1])
        if z == z0:
            return PetOrbit(states[0], tuple(states), tuple(labels),
                            tuple(vectors))
        states.append(_cover_from_scaled(param, z))
    raise NonPeriodicOrbit(f"orbit of {center} did not close in {4 * w * w}")


def vector_polygon(param: Param, center):
    """Accumulate the orbit's vectors into the plaid polygon through the
    center; None for hold centers."""
    from .grid import PlaidPolygon

    orbit = special_orbit(param, center)
    if orbit.labels == ("EMPTY",):
        return None
    a, b = _center_indices(center)
    cx, cy = 2 * a + 1, 2 * b + 1
    centers = []
    for v in orbit.vectors:
        centers.append((cx, cy))
        cx += 2 * v[0]
        cy += 2 * v[1]
    if (cx, cy) != (2 * a + 1, 2 * b + 1):
        raise PlaidError(f"vector path through {center} does not close")
    return PlaidPolygon.from_centers(centers)


def cover_bijection(param: Param) -> Dict[str, object]:
    """The doubled map is injective on the 2*omega^3 center classes."""
    w = param.omega
    seen = set()
    for a in range(w * w):
        for b in range(2 * w):
            seen.add(xi_hat_scaled(param, a, b))
    return {"ok": len(seen) == 2 * w ** 3, "classes": len(seen),
            "expected": 2 * w ** 3}


# ---------------------------------------------------------------------------
# Oriented coherence (the mesh equations)
# ---------------------------------------------------------------------------

_MESH_CASES = (
    ("S", "into", "N", "out"),
    ("S", "out", "N", "into"),
    ("N", "into", "S", "out"),
    ("N", "out", "S", "into"),
    ("E", "into", "W", "out"),
    ("E", "out", "W", "into"),
    ("W", "into", "E", "out"),
    ("W", "out", "E", "into"),
)


def _member(lab: str, edge: str, mode: str) -> bool:
    if lab == "EMPTY":
        return False
    return (lab[1] == edge) if mode == "into" else (lab[0] == edge)


def _zone_half(param: Param, t: int) -> Tuple[int, int]:
    """(zone 1..3, half 0 middle / 1 outer) of a scaled cover fiber; zone is
    None on zone boundaries."""
    w = param.omega
    if -w <= t < w:
        half, tt = 0, t
    else:
        half, tt = 1, t - 2 * w if t >= w else t + 2 * w
    t1, t2 = 2 * param.p - w, w - 2 * param.p
    if tt == t1 or tt == t2 or tt == -w:
        return (0, half)  # on a triangle edge, not interior
    zone = 1 if tt < t1 else (2 if tt < t2 else 3)
    return (zone, half)


def check_mesh(params: Sequence[Param]) -> Dict[str, object]:
    """Fiberwise equality of the eight region-matching equations on every
    populated fiber of every given parameter, sampled at the discrete grid,
    plus the triad-coverage condition over the parameter list (three points,
    not all at one parameter, interior to each of the six base triangles)."""
    failures = []
    coverage: Dict[Tuple[int, int], Set[Tuple[str, int]]] = {}
    for param in params:
        w = param.omega
        # by the bijection, every odd fiber of the cover is populated
        fibers = [t for t in range(-2 * w + 1, 2 * w, 2)]
        evens = [u for u in range(-w + 1, w) if u % 2 == 0]
        for t in fibers:
            zone, half = _zone_half(param, t)
            if zone:
                coverage.setdefault((zone, half), set()).add((str(param), t))
            labs = {}
            for u1 in evens:
                for u2 in evens:
                    labs[(u1, u2)] = oriented_label_scaled(param, t, u1, u2)
            for edge_from, mode_from, edge_to, mode_to in _MESH_CASES:
                # the matching neighbour always sits across the named edge
                d = edge_from
                for (u1, u2), lab in labs.items():
                    znext = _step_scaled(param, (t, u1, u2), d)
                    lab2 = oriented_label_scaled(param, *znext)
                    if _member(lab, edge_from, mode_from) != _member(
                            lab2, edge_to, mode_to):
                        failures.append({
                            "param": str(param), "fiber": t,
                            "cell": (u1, u2),
                            "case": f"{mode_from}-{edge_from}->"
                                    f"{mode_to}-{edge_to}"})
    triads_ok = True
    detail = {}
    for zone in (1, 2, 3):
        for half in (0, 1):
            pts = coverage.get((zone, half), set())
            names = {nm for nm, _ in pts}
            detail[f"zone{zone}-half{half}"] = len(pts)
            if len(pts) < 3 or len(names) < 2:
                triads_ok = False
    return {"ok": not failures and triads_ok, "failures": failures[:10],
            "failure_count": len(failures), "triads_ok": triads_ok,
            "triad_detail": detail}


# ---------------------------------------------------------------------------
# Irrational parameters through exact approximants
# ---------------------------------------------------------------------------

def _circ2(x: Rat) -> Rat:
    """Distance from 0 on the circle of circumference 2."""
    x = abs(x) % 2
    return min(x, 2 - x)


def wall_distance(P: Rat, point: ClassifyingPoint) -> Rat:
    """Distance from the point to the nearest partition wall: the two
    zone-boundary fibers in T, and in the fiber the checkerboard cuts and
    the seam, of whichever zones apply."""
    T, U1, U2 = point.as_tuple()
    dist = min(_circ2(T - (-1 + P)), _circ2(T - (1 - P)))
    if T == -1 + P:
        zones = (1, 2)
    elif T == 1 - P:
        zones = (2, 3)
    else:
        zones = (zone_of_value(P, T),)
    for z in zones:
        cuts = _zone_spec(P, z, T).u
        for u in (U1, U2):
            dist = min(dist, _circ2(u - 1))
            for c in cuts:
                dist = min(dist, _circ2(u - c))
    return dist


def zone_of_value(P: Rat, T: Rat) -> int:
    if T < -1 + P:
        return 1
    if T < 1 - P:
        return 2
    return 3


def irrational_tiling(P: RatLike, offset: Sequence[RatLike],
                      window: Tuple[int, int, int, int],
                      eps: Rat = Fraction(1, 2 ** 40)) -> Dict[str, object]:
    """Tile a finite window with the offset classifying map at an arbitrary
    exact parameter P in (0,1).

    The offset V shifts (T, U1, U2).  Every window center must stay at least
    eps away from all partition walls (the good-offset check); otherwise
    BadOffset is raised with a suggested perturbation.  Returns the labels,
    the minimum wall distance met, and the coherence verdict of the window.
    """
    P = Fraction(P)
    if not 0 < P < 1:
        raise PlaidError(f"P={P} outside (0, 1)")
    v0, v1, v2 = (Fraction(v) for v in offset)
    x0, y0, x1, y1 = window
    labels: Dict[Tuple[int, int], str] = {}
    min_dist: Optional[Rat] = None
    worst = None
    for n in range(x0, x1):
        x = Fraction(2 * n + 1, 2)
        base = 2 * P * x
        for m in range(y0, y1):
            y = Fraction(2 * m + 1, 2)
            pt = canon_frac(P, base + 2 * y + v0, base + v1,
                            base + 2 * P * y + v2)
            d = wall_distance(P, pt)
            if min_dist is None or d < min_dist:
                min_dist, worst = d, (n, m)
            if d < eps:
                bump = Fraction(1, 2 ** 21 + 17)
                raise BadOffset(
                    f"center ({n}+1/2, {m}+1/2) is {d} from a wall (< {eps})",
                    suggestion=(v0 + bump, v1 + 2 * bump, v2 + 3 * bump))
            labels[(n, m)] = fiber_label(P, pt)[0]
    mismatches = []
    for (n, m), lab in labels.items():
        e = set() if lab == "EMPTY" else set(lab)
        right = labels.get((n + 1, m))
        if right is not None:
            er = set() if right == "EMPTY" else set(right)
            if ("E" in e) != ("W" in er):
                mismatches.append(((n, m), (n + 1, m)))
        up = labels.get((n, m + 1))
        if up is not None:
            eu = set() if up == "EMPTY" else set(up)
            if ("N" in e) != ("S" in eu):
                mismatches.append(((n, m), (n, m + 1)))
    return {
        "ok": not mismatches,
        "min_wall_distance": min_dist,
        "closest_center": worst,
        "labels": labels,
        "mismatches": mismatches,
    }
