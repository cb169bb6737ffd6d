"""The grid description of the model.

Four line families cut the plane: horizontal and vertical integer lines, and
two families of parallel lines with slopes -P and -Q (P = 2p/omega,
Q = 2q/omega, P + Q = 2) through the integer points of the y-axis.

Every line carries an integer invariant, omega times the value of its family's
adapted function, taken mod 2*omega in the symmetric branch.  Horizontal and
vertical lines get even invariants ("capacity"), diagonal lines odd ones
("mass").  An intersection of a capacity line with a mass line is *light* when
the two invariants share a strict sign and the mass is smaller in magnitude;
otherwise it is *dark*.  A unit segment is *good* when it holds exactly one
light point, where a light point at the midpoint of a horizontal unit segment
counts twice and a light point at an integer corner belongs to both horizontal
segments touching it.  Squares with exactly two good edges chain into closed
lattice loops, the plaid polygons.

Everything here is exact: sweeps run on plain integers scaled by omega, and
the Fraction-valued functions are the reference surface they are tested
against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .params import (
    InvalidParameter,
    Param,
    PlaidError,
    Rat,
    RatLike,
    normalize_open,
    sym_reduce,
)


class IncoherentInput(PlaidError):
    """A region failed the 0-or-2 good-edge rule, so tracing is impossible."""


# ---------------------------------------------------------------------------
# Lines and their invariants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridLine:
    """family 'H'/'V'/'P'/'Q'; intercept is the y-coordinate (H), the
    x-coordinate (V), or the y-intercept (P, Q)."""

    family: str
    intercept: int


@dataclass(frozen=True)
class LineInvariants:
    magnitude: int
    sign: int  # +1, -1, or 0 (block boundaries and the mass-omega class)


def f_H(param: Param, point: Tuple[RatLike, RatLike]) -> Rat:
    return normalize_open(2 * param.bigP * Fraction(point[1]))


def f_V(param: Param, point: Tuple[RatLike, RatLike]) -> Rat:
    return normalize_open(2 * param.bigP * Fraction(point[0]))


def f_P(param: Param, point: Tuple[RatLike, RatLike]) -> Rat:
    x, y = Fraction(point[0]), Fraction(point[1])
    return normalize_open(param.bigP * y + param.bigP ** 2 * x + 1)


def f_Q(param: Param, point: Tuple[RatLike, RatLike]) -> Rat:
    x, y = Fraction(point[0]), Fraction(point[1])
    return normalize_open(param.bigP * y + param.bigP * param.bigQ * x + 1)


def capacity_scaled(param: Param, c: int) -> int:
    """omega * F for a horizontal line y=c or vertical line x=c; even,
    in (-omega, omega)."""
    return sym_reduce(4 * param.p * c, 2 * param.omega)


def mass_scaled(param: Param, b: int) -> int:
    """omega * F for the slope -P and slope -Q lines with y-intercept b.

    Returns 0 for the mass-omega class (F in the odd-integer class mod 2);
    such lines are never light, and 0 makes every sign test fail.
    """
    t = sym_reduce(2 * param.p * b + param.omega, 2 * param.omega)
    return 0 if t == -param.omega else t


def line_invariants(param: Param, line: GridLine) -> LineInvariants:
    """Magnitude |omega*F| and sign of F for the line."""
    if line.family in ("H", "V"):
        t = capacity_scaled(param, line.intercept)
        return LineInvariants(abs(t), 0 if t == 0 else (1 if t > 0 else -1))
    if line.family in ("P", "Q"):
        t = mass_scaled(param, line.intercept)
        if t == 0:
            return LineInvariants(param.omega, 0)
        return LineInvariants(abs(t), 1 if t > 0 else -1)
    raise InvalidParameter(f"unknown line family {line.family!r}")


def anchor_lines(param: Param, k: int) -> Dict[str, Set[int]]:
    """Positions mod omega of the four capacity-2k lines, via the tune.

    The capacity-2k lines sit at x (and y) congruent to +-k*alpha mod omega.
    """
    if not 0 <= k <= (param.omega - 1) // 2:
        raise InvalidParameter(f"k={k} outside 0..{(param.omega - 1) // 2}")
    pos = {(k * param.alpha) % param.omega, (-k * param.alpha) % param.omega}
    return {"x": pos, "y": set(pos)}


def anchor_mass_intercepts(param: Param, k: int) -> Set[int]:
    """y-intercepts mod omega of the mass-k diagonal lines, k odd < omega."""
    if k % 2 == 0 or not 1 <= k < param.omega:
        raise InvalidParameter(f"mass {k} must be odd in [1, omega)")
    return {(k * param.alpha) % param.omega, (-k * param.alpha) % param.omega}


# ---------------------------------------------------------------------------
# Intersection points on unit segments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitSegment:
    """axis 'h': [x, x+1] x {y};  axis 'v': {x} x [y, y+1]."""

    axis: str
    x: int
    y: int


@dataclass(frozen=True)
class IntersectionPoint:
    location: Tuple[Rat, Rat]
    host: GridLine
    crossing: GridLine
    brightness: str  # 'light' | 'dark'
    ptype: str  # 'P' | 'Q' | 'both'
    multiplicity: int


def _light(cap: int, mass: int) -> bool:
    if cap == 0 or mass == 0:
        return False
    return (cap > 0) == (mass > 0) and abs(mass) < abs(cap)


def _h_candidates(param: Param, seg: UnitSegment) -> List[Tuple[Fraction, str, int]]:
    """(x position, family, intercept) of diagonal crossings on a closed
    horizontal unit segment."""
    w, p, q, m = param.omega, param.p, param.q, seg.y
    out = []
    for fam, s in (("P", p), ("Q", q)):
        # x = (b - m) * w / 2s in [seg.x, seg.x + 1]
        lo_num, hi_num = 2 * s * seg.x, 2 * s * (seg.x + 1)
        b0 = -((-lo_num) // w)
        b = b0
        while b * w <= hi_num:
            out.append((Fraction(b * w, 2 * s), fam, m + b))
            b += 1
    return out


def segment_points(param: Param, seg: UnitSegment) -> List[IntersectionPoint]:
    """The intersection points on a closed unit segment, two per segment
    counting multiplicity.

    A point lying on both diagonal families is one point of type 'both'; it
    has multiplicity 2 exactly when it is the midpoint of a horizontal
    segment.  Brightness is checked for consistency whenever two lines meet
    at the same point.
    """
    w = param.omega
    if seg.axis == "h":
        host = GridLine("H", seg.y)
        cap = capacity_scaled(param, seg.y)
        by_pos: Dict[Fraction, List[Tuple[str, int]]] = {}
        for pos, fam, b in _h_candidates(param, seg):
            by_pos.setdefault(pos, []).append((fam, b))
        pts = []
        for pos in sorted(by_pos):
            hits = by_pos[pos]
            lights = {_light(cap, mass_scaled(param, b)) for _, b in hits}
            if len(lights) != 1:
                raise PlaidError(
                    f"inconsistent brightness at {pos},{seg.y} for {param}"
                )
            light = lights.pop()
            both = len(hits) == 2
            midpoint = both and pos == Fraction(2 * seg.x + 1, 2)
            fam0, b0 = sorted(hits)[0]
            pts.append(
                IntersectionPoint(
                    location=(pos, Fraction(seg.y)),
                    host=host,
                    crossing=GridLine(fam0, b0),
                    brightness="light" if light else "dark",
                    ptype="both" if both else hits[0][0],
                    multiplicity=2 if midpoint else 1,
                )
            )
        return pts

    if seg.axis == "v":
        host = GridLine("V", seg.x)
        cap = capacity_scaled(param, seg.x)
        by_pos: Dict[Fraction, List[Tuple[str, int]]] = {}
        for fam, s in (("P", param.p), ("Q", param.q)):
            # y = b - 2s*x/w in [seg.y, seg.y + 1]
            num = 2 * s * seg.x
            b0 = -((-(seg.y * w + num)) // w)
            b = b0
            while b * w - num <= (seg.y + 1) * w:
                by_pos.setdefault(Fraction(b * w - num, w), []).append((fam, b))
                b += 1
        pts = []
        for pos in sorted(by_pos):
            hits = by_pos[pos]
            lights = {_light(cap, mass_scaled(param, b)) for _, b in hits}
            if len(lights) != 1:
                raise PlaidError(
                    f"inconsistent brightness at {seg.x},{pos} for {param}"
                )
            light = lights.pop()
            fam0, b0 = sorted(hits)[0]
            pts.append(
                IntersectionPoint(
                    location=(Fraction(seg.x), pos),
                    host=host,
                    crossing=GridLine(fam0, b0),
                    brightness="light" if light else "dark",
                    ptype="both" if len(hits) == 2 else hits[0][0],
                    multiplicity=1,
                )
            )
        return pts

    raise InvalidParameter(f"segment axis must be 'h' or 'v', got {seg.axis!r}")


def light_count(param: Param, seg: UnitSegment) -> int:
    """Multiplicity-weighted number of light points on the closed segment."""
    return sum(pt.multiplicity for pt in segment_points(param, seg)
               if pt.brightness == "light")


def good_edges(param: Param, sw_corner: Tuple[int, int]) -> Set[str]:
    """Edges of the unit square with the given SW corner holding exactly one
    light point."""
    n, m = sw_corner
    out = set()
    if light_count(param, UnitSegment("h", n, m)) == 1:
        out.add("S")
    if light_count(param, UnitSegment("h", n, m + 1)) == 1:
        out.add("N")
    if light_count(param, UnitSegment("v", n, m)) == 1:
        out.add("W")
    if light_count(param, UnitSegment("v", n + 1, m)) == 1:
        out.add("E")
    return out


# ---------------------------------------------------------------------------
# Fast per-block sweeps (plain integers)
# ---------------------------------------------------------------------------

class BlockGrid:
    """Light counts for every unit edge of one omega x omega block.

    Blocks are indexed by their southwest corner in units of omega; the
    invariance lattice <(omega^2, 0), (0, omega)> makes every block a copy of
    block (bi mod omega, 0).  hl[m*w + n] counts light points (with
    multiplicity, corners shared) on the horizontal edge
    [bi*w + n, bi*w + n + 1] x {m}; vl[n*w + m] the vertical edge
    {bi*w + n} x [m, m + 1].
    """

    def __init__(self, param: Param, bi: int):
        w, p, q = param.omega, param.p, param.q
        self.param = param
        self.bi = bi = bi % w
        self.hl = bytearray((w + 1) * w)
        self.vl = bytearray((w + 1) * w)
        self._caps_h = [capacity_scaled(param, m) for m in range(w)]
        self._mass = [mass_scaled(param, b) for b in range(w)]
        self._light_res = {}
        for m in range(w):
            cap = self._caps_h[m]
            if cap == 0:
                continue
            pos = cap > 0
            self._light_res[m] = [
                r for r in range(w)
                if self._mass[r] != 0 and (self._mass[r] > 0) == pos
                and abs(self._mass[r]) < abs(cap)
            ]
        self._fill()

    def _fill(self):
        param, bi = self.param, self.bi
        w, p, q = param.omega, param.p, param.q
        hl, vl = self.hl, self.vl
        edge_p = [(r * w) // (2 * p) for r in range(2 * p + 1)]
        mid_p = [(r * w) % (2 * p) == p for r in range(2 * p + 1)]
        edge_q = [(r * w) // (2 * q) for r in range(2 * q + 1)]
        mid_q = [(r * w) % (2 * q) == q for r in range(2 * q + 1)]
        for m in range(w):
            res = self._light_res.get(m)
            if not res:
                continue
            base_p = (m + 2 * p * bi) % w
            base_q = (m + 2 * q * bi) % w
            row = m * w
            for rho in res:
                # corners (r = 0 and r = 2p) belong to both segments touching
                # them; this block sees its left corner on edge 0 and its
                # right corner on edge w-1.  The crossing windows are longer
                # than w for the steep family, so step residues by w.
                r = (rho - base_p) % w
                while r <= 2 * p:
                    if r == 0:
                        hl[row] += 1
                    elif r == 2 * p:
                        hl[row + w - 1] += 1
                    else:
                        hl[row + edge_p[r]] += 2 if mid_p[r] else 1
                    r += w
                # corner and midpoint crossings are already counted through
                # the slope -P family
                r = (rho - base_q) % w
                while r <= 2 * q:
                    if 0 < r < 2 * q and not mid_q[r]:
                        hl[row + edge_q[r]] += 1
                    r += w
        # vertical lines: capacity depends on n alone
        for n in range(1, w):
            cap = capacity_scaled(param, n)
            if cap == 0:
                continue
            pos = cap > 0
            res = [
                r for r in range(w)
                if self._mass[r] != 0 and (self._mass[r] > 0) == pos
                and abs(self._mass[r]) < abs(cap)
            ]
            x_abs = bi * w + n
            col = n * w
            for s in (p, q):
                num = 2 * s * x_abs
                lo = -((-num) // w)
                for rho in res:
                    b = lo + (rho - lo) % w
                    vl[col + (b * w - num) // w] += 1

    def good_count(self, n: int, m: int) -> int:
        w = self.param.omega
        hl, vl = self.hl, self.vl
        return (
            (hl[m * w + n] == 1)
            + (hl[(m + 1) * w + n] == 1)
            + (vl[n * w + m] == 1)
            + (vl[(n + 1) * w + m] == 1)
        )

    def good_edge_set(self, n: int, m: int) -> Set[str]:
        w = self.param.omega
        out = set()
        if self.hl[m * w + n] == 1:
            out.add("S")
        if self.hl[(m + 1) * w + n] == 1:
            out.add("N")
        if self.vl[n * w + m] == 1:
            out.add("W")
        if self.vl[(n + 1) * w + m] == 1:
            out.add("E")
        return out

    def incoherent_squares(self) -> List[Tuple[int, int]]:
        w = self.param.omega
        hl, vl = self.hl, self.vl
        bad = []
        for m in range(w):
            srow = (m) * w
            nrow = (m + 1) * w
            for n in range(w):
                g = ((hl[srow + n] == 1) + (hl[nrow + n] == 1)
                     + (vl[n * w + m] == 1) + (vl[(n + 1) * w + m] == 1))
                if g != 0 and g != 2:
                    bad.append((self.bi * w + n, m))
        return bad


@dataclass
class CoherenceReport:
    ok: bool
    bad_squares: List[Tuple[int, int]] = field(default_factory=list)


def check_coherence(param: Param, region: Optional[Tuple[int, int, int, int]] = None
                    ) -> CoherenceReport:
    """0-or-2 good edges for every unit square.

    With region=None the full fundamental domain [0, omega^2] x [0, omega] is
    swept blockwise with integer arithmetic.  An explicit region
    (x0, y0, x1, y1) is checked square by square through the reference path.
    Failures are returned as data, never raised.
    """
    bad: List[Tuple[int, int]] = []
    if region is None:
        for bi in range(param.omega):
            bad.extend(BlockGrid(param, bi).incoherent_squares())
    else:
        x0, y0, x1, y1 = region
        for n in range(x0, x1):
            for m in range(y0, y1):
                if len(good_edges(param, (n, m))) not in (0, 2):
                    bad.append((n, m))
    return CoherenceReport(ok=not bad, bad_squares=bad)


def closed_point_counts(param: Param, bi: int) -> Tuple[List[int], List[int]]:
    """Multiplicity-weighted intersection-point counts on every closed unit
    segment of a block (the two-points-per-segment census).

    Returns (h_counts, v_counts) indexed like BlockGrid's arrays.
    """
    w, p, q = param.omega, param.p, param.q
    bi %= w
    hc = [0] * ((w + 1) * w)
    vc = [0] * ((w + 1) * w)
    edge_p = [(r * w) // (2 * p) for r in range(2 * p + 1)]
    mid_p = [(r * w) % (2 * p) == p for r in range(2 * p + 1)]
    edge_q = [(r * w) // (2 * q) for r in range(2 * q + 1)]
    mid_q = [(r * w) % (2 * q) == q for r in range(2 * q + 1)]
    for m in range(w + 1):
        row = m * w
        for r in range(2 * p + 1):
            if r == 0:
                hc[row] += 1
            elif r == 2 * p:
                hc[row + w - 1] += 1
            else:
                hc[row + edge_p[r]] += 2 if mid_p[r] else 1
        for r in range(1, 2 * q):
            if not mid_q[r]:
                hc[row + edge_q[r]] += 1
    for n in range(w + 1):
        x_abs = bi * w + n
        col = n * w
        if x_abs % w == 0:
            # corners at every integer height, shared by both touching edges
            for m in range(w):
                vc[col + m] += 2
            continue
        for s in (p, q):
            num = 2 * s * x_abs
            lo = -((-num) // w)
            for b in range(lo, lo + w):
                vc[col + (b * w - num) // w] += 1
    return hc, vc


def light_points_on_line(param: Param, line: GridLine, block: Tuple[int, int]
                         ) -> List[Tuple[Fraction, int]]:
    """Light points (coordinate along the line, multiplicity) on the closed
    intersection of the line with the given block."""
    w, p, q = param.omega, param.p, param.q
    bi, bj = block
    out: Dict[Fraction, int] = {}
    if line.family == "H":
        m = line.intercept
        cap = capacity_scaled(param, m)
        for s in (p, q):
            for b in range(m + 2 * s * bi, m + 2 * s * (bi + 1) + 1):
                if _light(cap, mass_scaled(param, b)):
                    x = Fraction((b - m) * w, 2 * s)
                    if x not in out:
                        out[x] = 2 if x % 1 == Fraction(1, 2) else 1
    elif line.family == "V":
        x = line.intercept
        cap = capacity_scaled(param, x)
        for s in (p, q):
            num = 2 * s * x
            lo = -((-(bj * w * w + num)) // w)
            for b in range(lo, lo + w + 1):
                if b * w - num > (bj + 1) * w * w:
                    break
                if _light(cap, mass_scaled(param, b)):
                    y = Fraction(b * w - num, w)
                    out.setdefault(y, 1)
    else:
        raise InvalidParameter("light census applies to H and V lines")
    return sorted(out.items())


# ---------------------------------------------------------------------------
# Plaid polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlaidPolygon:
    """A closed embedded loop of tile centers, stored in canonical form:
    first vertex lexicographically least, second vertex the smaller of its
    two neighbours.  Coordinates are doubled to stay integral."""

    verts2: Tuple[Tuple[int, int], ...]

    @staticmethod
    def from_centers(centers: Sequence[Tuple[int, int]]) -> "PlaidPolygon":
        n = len(centers)
        i0 = min(range(n), key=lambda i: centers[i])
        nxt, prv = centers[(i0 + 1) % n], centers[(i0 - 1) % n]
        if nxt <= prv:
            ordered = [centers[(i0 + k) % n] for k in range(n)]
        else:
            ordered = [centers[(i0 - k) % n] for k in range(n)]
        return PlaidPolygon(tuple(ordered))

    @property
    def vertices(self) -> Tuple[Tuple[Rat, Rat], ...]:
        return tuple((Fraction(x, 2), Fraction(y, 2)) for x, y in self.verts2)

    def __len__(self) -> int:
        return len(self.verts2)

    def x_diameter2(self) -> int:
        xs = [v[0] for v in self.verts2]
        return max(xs) - min(xs)

    def diameter2(self) -> int:
        xs = [v[0] for v in self.verts2]
        ys = [v[1] for v in self.verts2]
        return max(max(xs) - min(xs), max(ys) - min(ys))

    def translated2(self, dx2: int, dy2: int) -> "PlaidPolygon":
        return PlaidPolygon.from_centers([(x + dx2, y + dy2) for x, y in self.verts2])

    def reflected_y2(self, axis2: int) -> "PlaidPolygon":
        """Reflection across the horizontal line y = axis2/2."""
        return PlaidPolygon.from_centers(
            [(x, 2 * axis2 - y) for x, y in self.verts2])


_STEP = {"N": (0, 1), "S": (0, -1), "E": (1, 0), "W": (-1, 0)}
_OPP = {"N": "S", "S": "N", "E": "W", "W": "E"}


def trace_polygons(param: Param, block: Tuple[int, int] = (0, 0),
                   grid: Optional[BlockGrid] = None) -> List[PlaidPolygon]:
    """All plaid polygons of one block, canonical, in the block's true
    coordinates.  Raises IncoherentInput if any square breaks the 0-or-2
    rule."""
    w = param.omega
    bi, bj = block
    if grid is None:
        grid = BlockGrid(param, bi)
    edges: Dict[Tuple[int, int], Set[str]] = {}
    for n in range(w):
        for m in range(w):
            es = grid.good_edge_set(n, m)
            if len(es) not in (0, 2):
                raise IncoherentInput(f"square {(bi * w + n, bj * w + m)} has "
                                      f"{len(es)} good edges")
            if es:
                edges[(n, m)] = es
    polys = []
    seen: Set[Tuple[int, int]] = set()
    for start in sorted(edges):
        if start in seen:
            continue
        centers = []
        sq = start
        exit_edge = sorted(edges[sq])[0]
        while True:
            seen.add(sq)
            centers.append((2 * (bi * w + sq[0]) + 1, 2 * (bj * w + sq[1]) + 1))
            dx, dy = _STEP[exit_edge]
            sq = (sq[0] + dx, sq[1] + dy)
            if not (0 <= sq[0] < w and 0 <= sq[1] < w):
                raise PlaidError(f"polygon escaped block at {sq}")
            entry = _OPP[exit_edge]
            here = edges.get(sq)
            if here is None or entry not in here:
                raise PlaidError(f"connector mismatch entering {sq}")
            (exit_edge,) = here - {entry}
            if sq == start:
                break
        if len(set(centers)) != len(centers):
            raise PlaidError("polygon is not embedded")
        polys.append(PlaidPolygon.from_centers(centers))
    return sorted(polys, key=lambda pg: pg.verts2)


# ---------------------------------------------------------------------------
# Particles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Particle:
    """A cycle of intersection points linked by remote adjacency
    (block j -> block j+a).  Vertical particles have omega instances of one
    type; horizontal particles have 2p type-P instances then 2q type-Q
    instances, passing twice through one block corner and one midpoint."""

    orientation: str
    instances: Tuple[IntersectionPoint, ...]
    types: Tuple[str, ...]

    @property
    def brightness(self) -> str:
        return self.instances[0].brightness


def _brightness_at_h(param: Param, m: int, b: int) -> str:
    return "light" if _light(capacity_scaled(param, m), mass_scaled(param, b)) \
        else "dark"


def horizontal_particle(param: Param, y0: int, j0: int) -> Particle:
    """The horizontal particle through the block corner (j0*omega, y0)."""
    w, p, q, a = param.omega, param.p, param.q, param.adj
    host = GridLine("H", y0)
    cap = capacity_scaled(param, y0)
    pts: List[IntersectionPoint] = []
    types: List[str] = []

    def record(j: int, fam: str, r: int):
        if fam == "P":
            x = Fraction((2 * p * j + r) * w, 2 * p)
            b = y0 + 2 * p * j + r
        else:
            x = Fraction((2 * q * j + r) * w, 2 * q)
            b = y0 + 2 * q * j + r
        corner = x % w == 0
        mid = x % 1 == Fraction(1, 2)
        crossing = GridLine(fam, b)
        if corner or mid:
            # both-type point: intercepts of the two crossings through x,
            # which must agree on brightness
            b_p = y0 + 2 * p * x / w
            b_q = y0 + 2 * q * x / w
            if b_p.denominator != 1 or b_q.denominator != 1:
                raise PlaidError(f"double point at x={x} is not integral")
            b_p, b_q = int(b_p), int(b_q)
            if _light(cap, mass_scaled(param, b_p)) != _light(cap, mass_scaled(param, b_q)):
                raise PlaidError(f"brightness mismatch at double point x={x}")
            crossing = GridLine("P", b_p)
        pts.append(IntersectionPoint(
            location=(x % (w * w), Fraction(y0)),
            host=host,
            crossing=crossing,
            brightness="light" if _light(cap, mass_scaled(param, b)) else "dark",
            ptype="both" if corner or mid else fam,
            multiplicity=2 if mid else 1,
        ))
        types.append(fam)

    j = j0 % w
    for r in range(2 * p):
        record(j, "P", r)
        j = (j + a) % w
    # right-edge corner, reached with r = 2q in the Q parametrisation
    for r in range(2 * q, 0, -1):
        record(j, "Q", r)
        j = (j + a) % w
    if j != j0 % w:
        raise PlaidError("horizontal particle failed to close")
    bset = {pt.brightness for pt in pts}
    if len(bset) != 1:
        raise PlaidError("particle brightness not constant")
    return Particle("horizontal", tuple(pts), tuple(types))


def vertical_particle(param: Param, x0: int, ptype: str, j0: int) -> Particle:
    """The vertical particle of the given type through the lines x = x0 + j*w,
    starting at the instance with y in [0, 1) on the line of block j0."""
    w, p, q, a = param.omega, param.p, param.q, param.adj
    s = p if ptype == "P" else q
    pts: List[IntersectionPoint] = []
    j = j0 % w
    num0 = 2 * s * x0
    lo = -((-num0) // w)
    yn = lo * w - num0  # scaled y of the block-j0 instance, in [0, w)
    cap = capacity_scaled(param, x0)
    for _ in range(w):
        x_abs = x0 + j * w
        b = (yn + 2 * s * x_abs) // w
        if b * w != yn + 2 * s * x_abs:
            raise PlaidError("vertical particle left the line family")
        pts.append(IntersectionPoint(
            location=(Fraction(x_abs), Fraction(yn, w)),
            host=GridLine("V", x_abs),
            crossing=GridLine(ptype, b),
            brightness="light" if _light(cap, mass_scaled(param, b)) else "dark",
            ptype=ptype,
            multiplicity=1,
        ))
        j = (j + a) % w
        yn = (yn + w) % (w * w) if ptype == "P" else (yn - w) % (w * w)
    bset = {pt.brightness for pt in pts}
    if len(bset) != 1:
        raise PlaidError("particle brightness not constant")
    return Particle("vertical", tuple(pts), tuple([ptype] * w))


def trace_particle(param: Param, start: IntersectionPoint) -> Particle:
    """Trace the particle through a given intersection point."""
    w = param.omega
    if start.host.family == "H":
        x, y0 = start.location
        if x % w == 0:
            return horizontal_particle(param, int(y0) % w, int(x) // w % w)
        for j0 in range(w):
            part = horizontal_particle(param, int(y0) % w, j0)
            if any(pt.location[0] % (w * w) == x % (w * w)
                   for pt in part.instances):
                return part
        raise PlaidError(f"no horizontal particle through {start.location}")
    if start.host.family == "V":
        x0_abs = start.host.intercept
        x0, j0 = x0_abs % w, (x0_abs // w) % w
        ptype = start.ptype if start.ptype in ("P", "Q") else "P"
        part = vertical_particle(param, x0, ptype, j0)
        if not any(pt.location[1] == start.location[1] % w
                   and pt.location[0] % (w * w) == x0_abs % (w * w)
                   for pt in part.instances):
            for j in range(w):
                part = vertical_particle(param, x0, ptype, j)
                if any(pt.location[1] == start.location[1] % w
                       and pt.location[0] % (w * w) == x0_abs % (w * w)
                       for pt in part.instances):
                    break
        return part
    raise InvalidParameter("particle hosts are H or V lines")
