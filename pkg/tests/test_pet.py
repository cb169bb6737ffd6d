from fractions import Fraction as F

import pytest

from plaid.params import even_rationals, make_param
from plaid.grid import BlockGrid, trace_polygons
from plaid.pet import (
    BadOffset,
    CoverPoint,
    NonPeriodicOrbit,
    canon_cover_scaled,
    check_mesh,
    cover_bijection,
    irrational_tiling,
    lift_label,
    oriented_label,
    oriented_label_scaled,
    pet_back,
    pet_region,
    pet_region_out,
    pet_step,
    special_orbit,
    vector_polygon,
    wall_distance,
    xi_hat,
    xi_hat_scaled,
    _VEC,
    _step_scaled,
)
from plaid.classifier import tile_of, unordered_label


class TestLiftLabel:
    def test_middle_half_keeps_order(self, p25):
        assert lift_label(p25, 0, "NW") == "NW"

    def test_outer_half_reverses(self, p25):
        assert lift_label(p25, F(3, 2), "NW") == "WN"
        assert lift_label(p25, F(-3, 2), "NW", "WN") == "NW"

    def test_empty(self, p25):
        assert lift_label(p25, F(3, 2), "EMPTY") == "EMPTY"

    def test_validates(self, p25):
        with pytest.raises(Exception):
            lift_label(p25, 0, "NW", "NE")


class TestOrientedLabels:
    def test_hand_cases_1_2(self, p12):
        cases = {
            (F(1, 2), F(1, 2)): "EN",
            (F(1, 2), F(3, 2)): "SN",
            (F(1, 2), F(5, 2)): "SE",
            (F(3, 2), F(5, 2)): "WE",
            (F(5, 2), F(3, 2)): "NS",
            (F(5, 2), F(1, 2)): "NW",
        }
        for c, want in cases.items():
            assert oriented_label(p12, xi_hat(p12, c)) == want, c

    def test_projects_to_unoriented(self, p25):
        w = p25.omega
        for a in range(w * w):
            for b in range(2 * w):
                lab = oriented_label_scaled(p25, *xi_hat_scaled(p25, a, b))
                c = (F(2 * a + 1, 2), F(2 * b + 1, 2))
                want = tile_of(p25, c)
                got = "EMPTY" if lab == "EMPTY" else unordered_label(*lab)
                assert got == want, c

    def test_deck_transformation_reverses(self, p25):
        # translating a center by (0, omega) flips the cover half and
        # reverses the arrow
        w = p25.omega
        for a in range(0, w * w, 5):
            for b in range(w):
                lab = oriented_label_scaled(p25, *xi_hat_scaled(p25, a, b))
                flipped = oriented_label_scaled(
                    p25, *xi_hat_scaled(p25, a, b + w))
                assert flipped == (lab if lab == "EMPTY" else lab[::-1])


class TestPetStep:
    def test_south_translation_formula(self, p25):
        # the southward map sends (T, U1, U2) to (T-2, U1, U2-2P)
        z = xi_hat(p25, (F(1, 2), F(3, 2)))
        w = p25.omega
        stepped = canon_cover_scaled(
            p25, int(z.That * w) - 2 * w, int(z.U1 * w),
            int(z.U2 * w) - 4 * p25.p)
        assert xi_hat(p25, (F(1, 2), F(1, 2))) == CoverPoint(
            *[F(v, w) for v in stepped])

    @pytest.mark.parametrize("pq", [(1, 2), (2, 5), (3, 8)])
    def test_conjugacy_exhaustive(self, pq):
        prm = make_param(*pq)
        w = prm.omega
        for a in range(w * w):
            for b in range(2 * w):
                z = xi_hat_scaled(prm, a, b)
                lab = oriented_label_scaled(prm, *z)
                if lab == "EMPTY":
                    continue
                v = _VEC[lab[1]]
                assert _step_scaled(prm, z, lab[1]) == \
                    xi_hat_scaled(prm, a + v[0], b + v[1]), (pq, a, b)

    def test_hold_is_identity(self, p25):
        z = xi_hat(p25, (F(3, 2), F(3, 2)))  # empty tile at (2,5)
        assert oriented_label(p25, z) == "EMPTY"
        assert pet_step(p25, z) == z
        assert pet_region(p25, z).name == "hold"
        assert pet_region(p25, z).vector == (0, 0)

    def test_back_inverts_step(self, p25):
        w = p25.omega
        for a in range(0, w * w, 3):
            for b in range(2 * w):
                z = xi_hat(p25, (F(2 * a + 1, 2), F(2 * b + 1, 2)))
                assert pet_back(p25, pet_step(p25, z)) == z

    def test_regions_and_vectors(self, p12):
        z = xi_hat(p12, (F(1, 2), F(1, 2)))  # label EN: out of E, into N
        r = pet_region(p12, z)
        assert r.name == "N↑" and r.vector == (0, 1)
        r = pet_region_out(p12, z)
        assert r.name == "E→" and r.vector == (1, 0)

    def test_es_label_is_south_region(self, p25):
        # any point labelled ES points into its south edge
        w = p25.omega
        found = 0
        for a in range(w * w):
            for b in range(2 * w):
                z = xi_hat(p25, (F(2 * a + 1, 2), F(2 * b + 1, 2)))
                if oriented_label(p25, z) == "ES":
                    r = pet_region(p25, z)
                    assert r.name == "S↓" and r.vector == (0, -1)
                    found += 1
        assert found > 0


class TestOrbits:
    def test_orbit_length_equals_perimeter(self, p25):
        orbit = special_orbit(p25, (F(1, 2), F(1, 2)))
        assert len(orbit.vectors) == 26  # the big symmetric polygon

    def test_hold_orbit(self, p25):
        orbit = special_orbit(p25, (F(3, 2), F(3, 2)))
        assert len(orbit.states) == 1 and orbit.labels == ("EMPTY",)
        assert vector_polygon(p25, (F(3, 2), F(3, 2))) is None

    def test_vector_polygon_matches_trace(self, p12):
        ring = vector_polygon(p12, (F(1, 2), F(1, 2)))
        traced = trace_polygons(p12, (0, 0))
        assert ring.verts2 == traced[0].verts2

    @pytest.mark.parametrize("pq", [(1, 2), (2, 5), (4, 11)])
    def test_full_equivalence(self, pq):
        from plaid.verify import suite_pet_equivalence

        rec = suite_pet_equivalence(make_param(*pq))
        assert rec["ok"], rec


class TestCoverBijection:
    def test_counts(self, p25, p12):
        assert cover_bijection(p12) == {"ok": True, "classes": 54,
                                        "expected": 54}
        assert cover_bijection(p25)["ok"]


class TestMesh:
    def test_witness_pair(self):
        r = check_mesh([make_param(3, 8), make_param(4, 11)])
        assert r["ok"], r
        assert r["triads_ok"]
        assert all(v >= 3 for v in r["triad_detail"].values())

    def test_extra_parameters(self):
        r = check_mesh([make_param(1, 2), make_param(2, 5), make_param(2, 7)])
        assert r["failure_count"] == 0


class TestIrrational:
    def test_zero_offset_rejected(self):
        A = F(4, 17)
        P = 2 * A / (1 + A)
        with pytest.raises(BadOffset) as err:
            irrational_tiling(P, (0, 0, 0), (0, 0, 4, 4))
        assert err.value.suggestion is not None
        # the first center maps onto the zone boundary fiber exactly
        from plaid.classifier import canon_frac
        pt = canon_frac(P, 2 * P * F(1, 2) + 1, 2 * P * F(1, 2),
                        2 * P * F(1, 2) + P)
        assert pt.as_tuple() == (-1 + P, F(0), P)
        assert wall_distance(P, pt) == 0

    def test_good_offset_coherent(self):
        A = F(4, 17)
        P = 2 * A / (1 + A)
        V = (F(1, 2 ** 20 + 7), F(1, 2 ** 20 + 33), F(1, 2 ** 20 + 37))
        r = irrational_tiling(P, V, (0, 0, 21, 21))
        assert r["ok"]
        assert r["min_wall_distance"] >= F(1, 2 ** 40)

    def test_rational_zero_offset_degenerates_to_tiles(self, p25):
        # on a window clear of the boundary-fiber columns the offset-free
        # run reproduces the tile assignment exactly
        r = irrational_tiling(p25.bigP, (0, 0, 0), (1, 0, 4, 3))
        for (n, m), lab in r["labels"].items():
            assert lab == tile_of(p25, (F(2 * n + 1, 2), F(2 * m + 1, 2)))
        assert r["ok"]

    def test_eps_threshold(self):
        A = F(4, 17)
        P = 2 * A / (1 + A)
        V = (F(1, 2 ** 20 + 7), F(1, 2 ** 20 + 33), F(1, 2 ** 20 + 37))
        with pytest.raises(BadOffset):
            irrational_tiling(P, V, (0, 0, 5, 5), eps=F(1, 2))
