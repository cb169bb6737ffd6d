"""The tile description of the model.

Tile centers map into a flat 3-torus (coordinates T, U1, U2) through an
affine map; the torus carries a partition into seven labelled regions, and
the label of the image is the connector drawn in the tile.  Fibers over fixed
T carry a 4x4 checkerboard whose cut positions and symbol matrix change over
three T-zones.

The conventions, fixed once here and validated against the grid model:

* matrix rows run top to bottom in the fiber's U2 direction (row 1 covers
  U2 in [u3, 1]), columns left to right in U1;
* a non-special cell is labelled by (row symbol, col symbol), special cells
  assign the empty tile and keep their symbol as a diagnostic;
* canonical torus representatives live in [-1, 1)^3, reducing U1, U2 mod 2
  first, then T with the skew generator (2, P, P), then U1, U2 again.

Images of tile centers land on fibers whose T is an odd multiple of 1/omega,
including the two zone-boundary fibers; there the checkerboards of both
adjacent zones agree cell by cell, and labels are computed from both sides
and compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .params import Param, PlaidError, Rat, RatLike, sym_reduce
from .grid import Particle

class OnWall(PlaidError):
    """A queried point lies exactly on a partition wall.  Impossible for tile
    centers; reaching this from one is a bug detector."""


class BoundaryFiber(PlaidError):
    """T sits exactly over a zone boundary, where the checkerboard data of
    two zones both apply."""


CONNECTOR_LABELS = ("EMPTY", "NS", "NE", "NW", "SE", "SW", "EW")

_ORDER = "NSEW"


def unordered_label(a: str, b: str) -> str:
    return a + b if _ORDER.index(a) < _ORDER.index(b) else b + a


def label_edges(label: str) -> Set[str]:
    return set() if label == "EMPTY" else set(label)


# (row symbols top->bottom, col symbols left->right, special col per row)
_ZONES = {
    1: ("WNES", "NESW", (3, 0, 1, 2)),
    2: ("NEWS", "NWES", (0, 2, 1, 3)),
    3: ("NWSE", "ENWS", (1, 2, 3, 0)),
}


@dataclass(frozen=True)
class CheckerboardSpec:
    """Cut positions u1 <= u2 <= u3 in [-1, 1] and the symbol matrix."""

    u: Tuple[Rat, Rat, Rat]
    rows: str
    cols: str
    specials: Tuple[int, int, int, int]

    def matrix(self) -> List[List[str]]:
        m = [["0"] * 4 for _ in range(4)]
        for r, c in enumerate(self.specials):
            m[r][c] = self.rows[r]
        return m

    def validate(self) -> None:
        """The four special rectangles must be squares."""
        u1, u2, u3 = self.u
        if not (-1 <= u1 <= u2 <= u3 <= 1):
            raise PlaidError(f"cuts out of order: {self.u}")
        widths = (u1 + 1, u2 - u1, u3 - u2, 1 - u3)
        heights = (1 - u3, u3 - u2, u2 - u1, u1 + 1)  # rows top to bottom
        for r, c in enumerate(self.specials):
            if widths[c] != heights[r]:
                raise PlaidError(
                    f"special cell ({r + 1},{c + 1}) is {widths[c]} x {heights[r]}")


@dataclass(frozen=True)
class ZoneData:
    zone: int
    spec: CheckerboardSpec


def _zone_spec(P: Rat, zone: int, T: Rat) -> CheckerboardSpec:
    rows, cols, spec = _ZONES[zone]
    if zone == 1:
        u = (T, 1 - P, 2 - P + T)
    elif zone == 2:
        u = (-1 + P, T, 1 - P)
    else:
        u = (-2 + P + T, -1 + P, T)
    return CheckerboardSpec(u, rows, cols, spec)


def zone_of(param_or_P, T: RatLike) -> ZoneData:
    """Zone and checkerboard data of the fiber over T.

    Raises BoundaryFiber at T = -1+P and T = 1-P exactly; both neighbouring
    zones apply there (and agree), so callers that can see those fibers must
    resolve them explicitly.
    """
    P = param_or_P.bigP if isinstance(param_or_P, Param) else Fraction(param_or_P)
    T = Fraction(T)
    if not -1 <= T <= 1:
        raise PlaidError(f"T={T} outside [-1, 1]")
    if T == -1 + P or T == 1 - P:
        raise BoundaryFiber(f"T={T} lies over a zone boundary")
    if T < -1 + P:
        z = 1
    elif T < 1 - P:
        z = 2
    else:
        z = 3
    return ZoneData(z, _zone_spec(P, z, T))


def _band(coord: Rat, u: Sequence[Rat]) -> int:
    """0..3, increasing with coord; exact hits on a cut are walls."""
    if coord == -1 or coord == 1:
        raise OnWall(f"{coord} on the fiber seam")
    k = 0
    for ui in u:
        if coord == ui:
            raise OnWall(f"{coord} on cut {ui}")
        if coord > ui:
            k += 1
    return k


def checkerboard_label(spec: CheckerboardSpec, u1coord: RatLike, u2coord: RatLike
                       ) -> Tuple[str, Optional[str]]:
    """(connector label, diagnostic symbol) of the cell containing the point.

    Pair cells return (pair, None); the four special cells assign the empty
    tile and return ('EMPTY', their symbol).  Points on any cut line (or the
    fiber seam) raise OnWall.
    """
    col = _band(Fraction(u1coord), spec.u)
    row = 3 - _band(Fraction(u2coord), spec.u)
    if spec.specials[row] == col:
        return "EMPTY", spec.rows[row]
    return unordered_label(spec.rows[row], spec.cols[col]), None


def ordered_cell(spec: CheckerboardSpec, u1coord: Rat, u2coord: Rat
                 ) -> Optional[Tuple[str, str]]:
    """(row symbol, col symbol) of the containing cell, None if special."""
    col = _band(u1coord, spec.u)
    row = 3 - _band(u2coord, spec.u)
    if spec.specials[row] == col:
        return None
    return spec.rows[row], spec.cols[col]


# ---------------------------------------------------------------------------
# The classifying map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassifyingPoint:
    """Canonical representative in [-1, 1)^3 of a point of the fiber torus."""

    T: Rat
    U1: Rat
    U2: Rat

    def as_tuple(self) -> Tuple[Rat, Rat, Rat]:
        return (self.T, self.U1, self.U2)


def canon_frac(P: Rat, T: Rat, U1: Rat, U2: Rat) -> ClassifyingPoint:
    """Canonical reduction modulo the lattice <(2,P,P), (0,2,0), (0,0,2)>."""
    U1 -= 2 * ((U1 + 1) // 2)
    U2 -= 2 * ((U2 + 1) // 2)
    k = (T + 1) // 2
    T -= 2 * k
    if k:
        U1 -= k * P
        U2 -= k * P
        U1 -= 2 * ((U1 + 1) // 2)
        U2 -= 2 * ((U2 + 1) // 2)
    return ClassifyingPoint(T, U1, U2)


def xi_raw_scaled(param: Param, a: int, b: int) -> Tuple[int, int, int]:
    """omega * (2Px + 2y, 2Px, 2Px + 2Py) at the center ((2a+1)/2, (2b+1)/2)."""
    p, w = param.p, param.omega
    s = 2 * p * (2 * a + 1)
    return s + w * (2 * b + 1), s, s + 2 * p * (2 * b + 1)


def canon_scaled(param: Param, t: int, u1: int, u2: int) -> Tuple[int, int, int]:
    """Canonical reduction, all coordinates scaled by omega."""
    w2 = 2 * param.omega
    ts = sym_reduce(t, w2)
    k = (t - ts) // w2
    if k:
        d = 2 * param.p * k
        return ts, sym_reduce(u1 - d, w2), sym_reduce(u2 - d, w2)
    return ts, sym_reduce(u1, w2), sym_reduce(u2, w2)


def _center_indices(center: Tuple[RatLike, RatLike]) -> Tuple[int, int]:
    x, y = Fraction(center[0]), Fraction(center[1])
    if x.denominator != 2 or y.denominator != 2:
        raise PlaidError(f"{center} is not a tile center")
    return (x.numerator - 1) // 2, (y.numerator - 1) // 2


def xi(param: Param, center: Tuple[RatLike, RatLike]) -> ClassifyingPoint:
    """The classifying map at a tile center, canonical form."""
    a, b = _center_indices(center)
    t, u1, u2 = canon_scaled(param, *xi_raw_scaled(param, a, b))
    w = param.omega
    return ClassifyingPoint(Fraction(t, w), Fraction(u1, w), Fraction(u2, w))


def xi_local(param: Param, point: Tuple[RatLike, RatLike]) -> ClassifyingPoint:
    """The fiber coordinates through the local branch formulas, canonically
    reduced.  Agrees with xi on tile centers."""
    from .params import mod2_reduce

    x, y = Fraction(point[0]), Fraction(point[1])
    if (2 * y).denominator != 1 or (2 * y).numerator % 2 == 0:
        raise PlaidError("local formulas apply at half-integer y")
    P, Q = param.bigP, param.bigQ
    T = mod2_reduce(2 * P * x + 1)
    bb = P * T / 2
    U1 = mod2_reduce(P * Q * x + bb - P * y)
    U2 = mod2_reduce(P * Q * x + bb + P * y)
    return canon_frac(P, T, U1, U2)


# ---------------------------------------------------------------------------
# Tile assignment
# ---------------------------------------------------------------------------

def _label_scaled_onesided(param: Param, zone: int, t: int, u1: int, u2: int
                           ) -> Tuple[str, str, Optional[str]]:
    """(row symbol, col symbol, diagnostic) with scaled integer cuts.
    Diagnostic is the special symbol when the cell is special, with row/col
    set to '' in that case."""
    w, p2 = param.omega, 2 * param.p
    rows, cols, spec = _ZONES[zone]
    if zone == 1:
        u = (t, w - p2, 2 * w - p2 + t)
    elif zone == 2:
        u = (p2 - w, t, w - p2)
    else:
        u = (p2 - 2 * w + t, p2 - w, t)
    col = 0
    for ui in u:
        if u1 == ui or u1 == -w:
            raise OnWall(f"scaled U1={u1} on a wall")
        if u1 > ui:
            col += 1
    band = 0
    for ui in u:
        if u2 == ui or u2 == -w:
            raise OnWall(f"scaled U2={u2} on a wall")
        if u2 > ui:
            band += 1
    row = 3 - band
    if spec[row] == col:
        return "", "", rows[row]
    return rows[row], cols[col], None


def ordered_label_scaled(param: Param, t: int, u1: int, u2: int
                         ) -> Tuple[str, str, Optional[str]]:
    """Cell data at a canonical scaled point of the base torus, resolving
    zone-boundary fibers by evaluating both zones and insisting they agree."""
    w = param.omega
    t1, t2 = 2 * param.p - w, w - 2 * param.p
    if t == t1:
        zones = (1, 2)
    elif t == t2:
        zones = (2, 3)
    elif t < t1:
        zones = (1,)
    elif t < t2:
        zones = (2,)
    else:
        zones = (3,)
    got = [_label_scaled_onesided(param, z, t, u1, u2) for z in zones]
    if len(got) == 2 and got[0] != got[1]:
        raise PlaidError(
            f"zone disagreement at scaled ({t},{u1},{u2}): {got[0]} vs {got[1]}")
    return got[0]


def tile_label_scaled(param: Param, a: int, b: int) -> str:
    t, u1, u2 = canon_scaled(param, *xi_raw_scaled(param, a, b))
    r, c, diag = ordered_label_scaled(param, t, u1, u2)
    return "EMPTY" if diag is not None else unordered_label(r, c)


def tile_of(param: Param, center: Tuple[RatLike, RatLike]) -> str:
    """The connector label assigned to a tile center (one of the 7)."""
    a, b = _center_indices(center)
    return tile_label_scaled(param, a, b)


def fiber_label(P: Rat, point: ClassifyingPoint) -> Tuple[str, Optional[str]]:
    """Connector label at an arbitrary torus point (Fraction arithmetic),
    resolving zone-boundary fibers by two-sided agreement.  Raises OnWall on
    any in-fiber wall."""
    T, U1, U2 = point.as_tuple()
    if T == -1 + P or T == 1 - P:
        zones = (1, 2) if T == -1 + P else (2, 3)
        got = []
        for z in zones:
            got.append(checkerboard_label(_zone_spec(P, z, T), U1, U2))
        if got[0] != got[1]:
            raise PlaidError(f"zone disagreement at {point}")
        return got[0]
    zd = zone_of(P, T)
    return checkerboard_label(zd.spec, U1, U2)


# ---------------------------------------------------------------------------
# Verification surfaces
# ---------------------------------------------------------------------------

def verify_bijection(param: Param) -> Dict[str, object]:
    """The canonical images of the omega^3 center classes are pairwise
    distinct and fill the discrete grid (odd/omega, even/omega, even/omega)."""
    w = param.omega
    seen = set()
    for a in range(w * w):
        for b in range(w):
            t, u1, u2 = canon_scaled(param, *xi_raw_scaled(param, a, b))
            if t % 2 == 0 or u1 % 2 or u2 % 2:
                return {"ok": False, "reason": f"parity at {(a, b)}"}
            seen.add((t, u1, u2))
    ok = len(seen) == w ** 3
    return {"ok": ok, "classes": len(seen), "expected": w ** 3}


_ROT = {"N": "S", "S": "N", "E": "W", "W": "E", "EMPTY": "EMPTY"}
_FLIP = {"N": "S", "S": "N", "E": "E", "W": "W", "EMPTY": "EMPTY"}


def _permute_label(label: str, table) -> str:
    if label == "EMPTY":
        return "EMPTY"
    return unordered_label(table[label[0]], table[label[1]])


def symmetry_conjugacies(param: Param) -> Dict[str, object]:
    """Exact conjugacy of the classifying map with the two reflection
    symmetries, and the induced label permutations, over all center classes.

    Rotation through the origin: Xi(-c) = -Xi(c) and labels swap N<->S,
    E<->W.  Reflection in the x-axis: Xi(x,-y) = swap(U1,U2) of Xi(x,y) and
    labels swap N<->S only.
    """
    w = param.omega
    for a in range(w * w):
        for b in range(w):
            t, u1, u2 = canon_scaled(param, *xi_raw_scaled(param, a, b))
            # rotation: the center -(c) has indices (-a-1, -b-1)
            tr, ur1, ur2 = canon_scaled(param, *xi_raw_scaled(param, -a - 1, -b - 1))
            er = canon_scaled(param, -t, -u1, -u2)
            if (tr, ur1, ur2) != er:
                return {"ok": False, "case": "rotation-map", "at": (a, b)}
            # x-axis reflection: (x, -y) has indices (a, -b-1)
            tf, uf1, uf2 = canon_scaled(param, *xi_raw_scaled(param, a, -b - 1))
            ef = canon_scaled(param, t, u2, u1)
            if (tf, uf1, uf2) != ef:
                return {"ok": False, "case": "reflection-map", "at": (a, b)}
            lab = tile_label_scaled(param, a, b)
            if tile_label_scaled(param, -a - 1, -b - 1) != _permute_label(lab, _ROT):
                return {"ok": False, "case": "rotation-label", "at": (a, b)}
            if tile_label_scaled(param, a, -b - 1) != _permute_label(lab, _FLIP):
                return {"ok": False, "case": "reflection-label", "at": (a, b)}
    return {"ok": True, "classes": w ** 3}


def _canon_diff(param: Param, ca, cb) -> Tuple[int, int, int]:
    ta, ua1, ua2 = xi_raw_scaled(param, *ca)
    tb, ub1, ub2 = xi_raw_scaled(param, *cb)
    return canon_scaled(param, tb - ta, ub1 - ua1, ub2 - ua2)


def _indices_of_center(x: Fraction, y: Fraction) -> Tuple[int, int]:
    return ( (2 * x).numerator - 1) // 2, ((2 * y).numerator - 1) // 2


def particle_image_geometry(param: Param, particle: Particle) -> Dict[str, object]:
    """Geometry of the classifying images of a particle's edge squares.

    Vertical particles: all images share one fiber, with U1 (type P) or U2
    (type Q) constant.  Horizontal particles: the type-P portion stays out of
    the open middle T-zone and steps diagonally (equal U1 and U2 increments);
    the type-Q portion steps parallel to the T-axis (zero U increments), and
    its fibers over the closed middle zone are hit twice, others once.
    """
    w, p, q = param.omega, param.p, param.q
    t1, t2 = 2 * p - w, w - 2 * p

    def img(pt):
        x, y = pt.location
        if particle.orientation == "vertical":
            cx, cy = x + Fraction(1, 2), (y.numerator // y.denominator) + Fraction(1, 2)
        else:
            cx, cy = (x.numerator // x.denominator) + Fraction(1, 2), y + Fraction(1, 2)
        a, b = _indices_of_center(cx, cy)
        return canon_scaled(param, *xi_raw_scaled(param, a, b))

    images = [img(pt) for pt in particle.instances]
    if particle.orientation == "vertical":
        fib = {t for t, _, _ in images}
        if len(fib) != 1:
            return {"ok": False, "case": "fiber", "fibers": sorted(fib)}
        if particle.types[0] == "P":
            const = {u1 for _, u1, _ in images}
        else:
            const = {u2 for _, _, u2 in images}
        return {"ok": len(const) == 1, "case": "vertical", "const": sorted(const)}

    p_imgs = [im for im, ty in zip(images, particle.types) if ty == "P"]
    q_imgs = [im for im, ty in zip(images, particle.types) if ty == "Q"]
    for t, _, _ in p_imgs:
        if t1 < t < t2:
            return {"ok": False, "case": "P-middle-zone", "t": t}

    def step_class(d: int) -> Tuple[int, int, int]:
        # image shift for a horizontal center step of d units
        return canon_scaled(param, 4 * p * d, 4 * p * d, 4 * p * d)

    a_adj = param.adj
    p_steps = {step_class(a_adj * w + w // (2 * p)),
               step_class(a_adj * w + w // (2 * p) + 1)}
    q_steps = {step_class(a_adj * w), step_class(a_adj * w - 1)}
    for a, b in zip(p_imgs, p_imgs[1:]):
        d = canon_scaled(param, b[0] - a[0], b[1] - a[1], b[2] - a[2])
        if d not in p_steps:
            return {"ok": False, "case": "P-diagonal-step", "diff": d}
    for a, b in zip(q_imgs, q_imgs[1:]):
        d = canon_scaled(param, b[0] - a[0], b[1] - a[1], b[2] - a[2])
        if d not in q_steps:
            return {"ok": False, "case": "Q-axis-step", "diff": d}
    counts: Dict[int, int] = {}
    for t, _, _ in q_imgs:
        counts[t] = counts.get(t, 0) + 1
    for t, n in counts.items():
        # the middle-zone fibers are crossed twice, closed on the left
        # boundary and open on the right
        want = 2 if t1 <= t < t2 else 1
        if n != want:
            return {"ok": False, "case": "Q-fiber-count", "t": t, "count": n}
    return {"ok": True, "case": "horizontal",
            "p_fibers": len({t for t, _, _ in p_imgs}),
            "q_fibers": len(counts)}
