"""Machine checks for every theorem the model makes decidable at one
parameter, shared by the CLI and the acceptance tests.

Each suite function takes a parameter and returns a JSON-friendly record with
an "ok" field; sweeps run them over all even rationals up to a bound.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .params import Param, even_rationals, make_param
from .grid import (
    BlockGrid,
    capacity_scaled,
    check_coherence,
    closed_point_counts,
    horizontal_particle,
    mass_scaled,
    trace_polygons,
    vertical_particle,
)
from .classifier import (
    label_edges,
    particle_image_geometry,
    symmetry_conjugacies,
    tile_label_scaled,
    verify_bijection,
)
from .pet import (
    BadOffset,
    check_mesh,
    cover_bijection,
    irrational_tiling,
    special_orbit,
    vector_polygon,
)
from .analysis import empty_rectangles, verify_first


def suite_coherence(param: Param) -> dict:
    rep = check_coherence(param)
    return {"ok": rep.ok, "bad_squares": rep.bad_squares[:5]}


def suite_two_points(param: Param) -> dict:
    w = param.omega
    for bi in range(w):
        hc, vc = closed_point_counts(param, bi)
        if set(hc) != {2} or set(vc) != {2}:
            bad = [i for i, v in enumerate(hc) if v != 2][:3]
            return {"ok": False, "block": bi, "h_bad": bad,
                    "v_bad": [i for i, v in enumerate(vc) if v != 2][:3]}
    return {"ok": True, "segments": 2 * w * w * (w + 1) * w}


def _light_h_census(param: Param, m: int, bi: int) -> int:
    w, p, q = param.omega, param.p, param.q
    cap = capacity_scaled(param, m)
    if cap == 0:
        pos = None
    else:
        pos = cap > 0
    total = 0
    for s, primary in ((p, True), (q, False)):
        s2 = 2 * s
        for b in range(m + s2 * bi, m + s2 * (bi + 1) + 1):
            t = mass_scaled(param, b)
            if pos is None or t == 0 or (t > 0) != pos or abs(t) >= abs(cap):
                continue
            r = b - m - s2 * bi
            if r % s2 == 0:
                if primary:
                    total += 1  # block corner, one point shared by families
            elif (r * w) % s2 == s:
                if primary:
                    total += 2  # midpoint, counted twice
            else:
                total += 1
    return total


def _light_v_census(param: Param, x_rel: int, bi: int) -> int:
    w, p, q = param.omega, param.p, param.q
    cap = capacity_scaled(param, x_rel)
    if cap == 0:
        return 0
    pos = cap > 0
    x_abs = bi * w + x_rel
    total = 0
    for s in (p, q):
        num = 2 * s * x_abs
        lo = -((-num) // w)
        for b in range(lo, lo + w + 1):
            if b * w - num > w * w:
                break
            t = mass_scaled(param, b)
            if t != 0 and (t > 0) == pos and abs(t) < abs(cap):
                total += 1
    return total


def suite_hier(param: Param) -> dict:
    """Every capacity-k line carries exactly k light points in every block."""
    w = param.omega
    for bi in range(w):
        for m in range(w):
            want = abs(capacity_scaled(param, m))
            got = _light_h_census(param, m, bi)
            if got != want:
                return {"ok": False, "line": ("H", m), "block": bi,
                        "got": got, "want": want}
            got = _light_v_census(param, m, bi)
            if got != abs(capacity_scaled(param, m)):
                return {"ok": False, "line": ("V", bi * w + m), "block": bi,
                        "got": got, "want": want}
    return {"ok": True, "lines_checked": 2 * w * w}


def suite_bijection(param: Param) -> dict:
    r = verify_bijection(param)
    r2 = cover_bijection(param)
    return {"ok": r["ok"] and r2["ok"], "classes": r["classes"],
            "cover_classes": r2["classes"]}


def suite_isomorphism(param: Param) -> dict:
    w = param.omega
    mismatches = []
    for bi in range(w):
        grid = BlockGrid(param, bi)
        for n in range(w):
            a = bi * w + n
            for m in range(w):
                lab = tile_label_scaled(param, a, m)
                if label_edges(lab) != grid.good_edge_set(n, m):
                    mismatches.append(((a, m), lab,
                                       sorted(grid.good_edge_set(n, m))))
                    if len(mismatches) > 4:
                        return {"ok": False, "mismatches": mismatches}
    return {"ok": not mismatches, "squares": w ** 3,
            "mismatches": mismatches}


def suite_pet_equivalence(param: Param) -> dict:
    """Vector dynamics redraw every traced polygon, orbit lengths sum to the
    connector count, and the exchange is conjugate to connector-following
    with an exact inverse."""
    from .pet import (
        _VEC,
        _step_scaled,
        oriented_label_scaled,
        xi_hat_scaled,
    )

    w = param.omega
    back = {"N": "S", "S": "N", "E": "W", "W": "E"}
    for a in range(w * w):
        for b in range(2 * w):
            z = xi_hat_scaled(param, a, b)
            lab = oriented_label_scaled(param, *z)
            if lab == "EMPTY":
                continue
            v = _VEC[lab[1]]
            znext = _step_scaled(param, z, lab[1])
            if znext != xi_hat_scaled(param, a + v[0], b + v[1]):
                return {"ok": False, "reason": "conjugacy", "at": (a, b)}
            lab2 = oriented_label_scaled(param, *znext)
            if _step_scaled(param, znext, lab2[0]) != z or \
                    lab2[0] != back[lab[1]]:
                return {"ok": False, "reason": "inverse", "at": (a, b)}
    orbit_total = 0
    nonempty = 0
    for bi in range(w):
        grid = BlockGrid(param, bi)
        traced = sorted(pg.verts2 for pg in trace_polygons(param, (bi, 0), grid))
        seen = set()
        vec = []
        for n in range(w):
            for m in range(w):
                if not grid.good_edge_set(n, m):
                    continue
                nonempty += 1
                if (n, m) in seen:
                    continue
                a = bi * w + n
                center = (Fraction(2 * a + 1, 2), Fraction(2 * m + 1, 2))
                pg = vector_polygon(param, center)
                if pg is None:
                    return {"ok": False, "reason": "hold at nonempty square",
                            "square": (a, m)}
                orb = special_orbit(param, center)
                orbit_total += len(orb.vectors)
                vec.append(pg.verts2)
                for vx, vy in pg.verts2:
                    seen.add(((vx - 1) // 2 - bi * w, (vy - 1) // 2))
        if sorted(vec) != traced:
            return {"ok": False, "block": bi, "reason": "polygon sets differ",
                    "traced": len(traced), "vector": len(vec)}
    return {"ok": orbit_total == nonempty, "orbit_steps": orbit_total,
            "connector_squares": nonempty}


def suite_mesh(param: Param) -> dict:
    r = check_mesh([param])
    return {"ok": r["failure_count"] == 0,
            "failure_count": r["failure_count"],
            "failures": r["failures"][:3]}


def suite_first(param: Param) -> dict:
    r = verify_first(param)
    return {k: (str(v) if isinstance(v, Fraction) else v)
            for k, v in r.items()}


def suite_empty_rect(param: Param) -> dict:
    from .analysis import block_light_cache

    w = param.omega
    for bi in range(w):
        cache = block_light_cache(param, (bi, 0))
        for K in range(0, w, 2):
            r = empty_rectangles(param, (bi, 0), K, cache)
            if not r["ok"]:
                return {"ok": False, "block": bi, "K": K,
                        "empty": len(r["empty"]),
                        "census": r["light_census"],
                        "bound": r["census_bound"]}
    return {"ok": True, "blocks": w, "K_values": list(range(0, w, 2))}


def _grid_symmetries(param: Param) -> dict:
    """Reflection laws of the light set, checked on all residue classes.

    Rotation through the origin preserves brightness and type on both hosts;
    reflection in the x-axis preserves brightness, keeps the type of
    horizontally hosted points and swaps it for vertically hosted ones.
    """
    w = param.omega

    def light(cap, t):
        return cap != 0 and t != 0 and (cap > 0) == (t > 0) and abs(t) < abs(cap)

    for c in range(w):
        for b in range(w):
            cap_h = capacity_scaled(param, c)
            # rotation: (H c, crossing b) -> (H -c, crossing -b)
            if light(cap_h, mass_scaled(param, b)) != light(
                    capacity_scaled(param, -c), mass_scaled(param, -b)):
                return {"ok": False, "case": "rotation-H", "at": (c, b)}
            # x-reflection, horizontal host: crossing intercept b - 2c
            if light(cap_h, mass_scaled(param, b)) != light(
                    capacity_scaled(param, -c), mass_scaled(param, b - 2 * c)):
                return {"ok": False, "case": "reflect-H", "at": (c, b)}
            # x-reflection, vertical host x=c: type P line b maps to the
            # type Q line 2c - b through the mirror point
            if light(cap_h, mass_scaled(param, b)) != light(
                    cap_h, mass_scaled(param, 2 * c - b)):
                return {"ok": False, "case": "reflect-V", "at": (c, b)}
    return {"ok": True, "classes": w * w}


def suite_symmetry(param: Param) -> dict:
    g = _grid_symmetries(param)
    if not g["ok"]:
        return g
    c = symmetry_conjugacies(param)
    if not c["ok"]:
        return c
    return {"ok": True, "grid_classes": g["classes"],
            "center_classes": c["classes"]}


def suite_particle_geometry(param: Param) -> dict:
    w = param.omega
    checked = 0
    for y0 in range(w):
        for j0 in range(w):
            part = horizontal_particle(param, y0, j0)
            if len(part.instances) != 2 * w:
                return {"ok": False, "case": "h-length", "at": (y0, j0)}
            r = particle_image_geometry(param, part)
            if not r["ok"]:
                r["at"] = ("h", y0, j0)
                return r
            checked += 1
    for x0 in range(w):
        for ty in "PQ":
            for j0 in range(w):
                part = vertical_particle(param, x0, ty, j0)
                if len(part.instances) != w:
                    return {"ok": False, "case": "v-length", "at": (x0, ty, j0)}
                r = particle_image_geometry(param, part)
                if not r["ok"]:
                    r["at"] = ("v", x0, ty, j0)
                    return r
                checked += 1
    return {"ok": True, "particles": checked}


SUITES: Dict[str, Callable[[Param], dict]] = {
    "coherence": suite_coherence,
    "isomorphism": suite_isomorphism,
    "bijection": suite_bijection,
    "hier": suite_hier,
    "two-points": suite_two_points,
    "symmetry": suite_symmetry,
    "mesh": suite_mesh,
    "pet-equivalence": suite_pet_equivalence,
    "first": suite_first,
    "empty-rect": suite_empty_rect,
    "particle-geometry": suite_particle_geometry,
}

DEFAULT_BOUNDS = {
    "coherence": 40,
    "isomorphism": 25,
    "two-points": 40,
    "hier": 30,
    "bijection": 25,
    "pet-equivalence": 20,
    "first": 40,
    "empty-rect": 30,
    "symmetry": 25,
    "particle-geometry": 20,
}

MESH_WITNESSES = ((3, 8), (4, 11))
MESH_EXTRAS = ((1, 2), (2, 5), (2, 7))


def _run_one(job) -> dict:
    suite, p, q = job
    param = make_param(p, q)
    record = SUITES[suite](param)
    record.update({"suite": suite, "param": str(param), "omega": param.omega})
    return record


def run_suite(suite: str, max_omega: Optional[int] = None,
              params: Optional[Sequence[Param]] = None,
              jobs: int = 1) -> List[dict]:
    """Run one suite over a parameter sweep; records sorted by (omega, p)."""
    if suite not in SUITES:
        raise KeyError(suite)
    if params is None:
        if suite == "mesh" and max_omega is None:
            params = [make_param(*pq) for pq in MESH_WITNESSES + MESH_EXTRAS]
        else:
            params = even_rationals(max_omega or DEFAULT_BOUNDS.get(suite, 20))
    jobs_list = [(suite, prm.p, prm.q) for prm in params]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_one, jobs_list))
    else:
        records = [_run_one(j) for j in jobs_list]
    records.sort(key=lambda r: (r["omega"], int(r["param"].split("/")[0])))
    if suite == "mesh":
        tri = check_mesh([make_param(*pq) for pq in MESH_WITNESSES])
        records.append({"suite": "mesh", "param": "3/8+4/11", "omega": 0,
                        "ok": tri["triads_ok"] and tri["failure_count"] == 0,
                        "triad_detail": tri["triad_detail"]})
    return records


def suite_golden(golden_dir: str) -> List[dict]:
    """Re-trace every polygon document in the golden corpus and compare
    byte for byte."""
    import os

    from .grid import trace_polygons as _trace
    from .serialize import emit, parse_polygon_document, polygon_document

    records = []
    names = sorted(n for n in os.listdir(golden_dir)
                   if n.startswith("polygons_") and n.endswith(".json"))
    for name in names:
        with open(os.path.join(golden_dir, name)) as fh:
            text = fh.read()
        doc = parse_polygon_document(text)
        param = make_param(*doc["param"])
        blocks = [tuple(b) for b in doc["blocks"]]
        polys = {b: _trace(param, b) for b in blocks}
        fresh = emit(polygon_document(param, blocks, polys))
        records.append({"suite": "golden", "param": str(param),
                        "omega": param.omega, "file": name,
                        "ok": fresh == text})
    return records


def suite_irrational() -> List[dict]:
    """The geometric-limit procedure at parameters built from convergents of
    sqrt(5) - 2, on a 100 x 100 window, plus the zero-offset rejection."""
    records = []
    seed = (Fraction(1, 2 ** 20 + 7), Fraction(1, 2 ** 20 + 33),
            Fraction(1, 2 ** 20 + 37))
    for h, k in ((4, 17), (17, 72), (72, 305)):
        A = Fraction(h, k)
        P = 2 * A / (1 + A)
        try:
            irrational_tiling(P, (0, 0, 0), (0, 0, 2, 2))
            rejected = False
        except BadOffset:
            rejected = True
        r = irrational_tiling(P, seed, (0, 0, 100, 100))
        records.append({
            "suite": "irrational", "param": f"P={P}", "omega": 0,
            "ok": rejected and r["ok"],
            "zero_offset_rejected": rejected,
            "coherent": r["ok"],
            "min_wall_distance": str(r["min_wall_distance"]),
        })
    return records
