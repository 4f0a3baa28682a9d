"""Tile codes, cover refinement, and the quarter enumeration."""

import numpy as np
import pytest

from conftest import batch_contains, pullback_samples, tile_boundary_samples
from juliadim.cdisc import ParamEnclosure
from juliadim.tiles import (
    CoverConfig,
    TileCode,
    TileError,
    _quadrant_signs,
    distance_bounds,
    initial_covers,
    level_covers,
    quarter_bounds,
    quarter_rep,
    quarter_tiles,
    refine,
)


class TestTileCode:
    def test_bits_and_halfplane(self):
        c = TileCode(3, 0b101)
        assert c.bits == "101"
        assert c.is_upper
        assert not TileCode(3, 0b011).is_upper

    def test_parent_image_child(self):
        c = TileCode(3, 0b101)
        assert c.parent() == TileCode(2, 0b10)
        assert c.image() == TileCode(2, 0b01)
        assert c.child(1) == TileCode(4, 0b1101)
        assert c.child(0) == TileCode(4, 0b0101)

    def test_validation(self):
        with pytest.raises(TileError):
            TileCode(0, 0)
        with pytest.raises(TileError):
            TileCode(2, 4)

    def test_level2_quadrants(self):
        # level-2 codes run clockwise from the fourth quadrant
        assert not TileCode(2, 0).is_upper  # Q4
        assert not TileCode(2, 1).is_upper  # Q3
        assert TileCode(2, 2).is_upper      # Q2
        assert TileCode(2, 3).is_upper      # Q1


class TestQuarterRep:
    @pytest.mark.parametrize("level", [3, 4, 5, 8])
    def test_range_and_idempotence(self, level):
        quarter = 1 << (level - 2)
        for idx in range(1 << level):
            rep = quarter_rep(idx, level)
            assert 0 <= rep < quarter
            assert quarter_rep(rep, level) == rep

    @pytest.mark.parametrize("level", [3, 4, 5])
    def test_symmetry_classes(self, level):
        # negation flips the top bit, conjugation flips every bit; both must
        # preserve the representative
        half = 1 << (level - 1)
        full = (1 << level) - 1
        for idx in range(1 << level):
            rep = quarter_rep(idx, level)
            assert quarter_rep(idx ^ half, level) == rep
            assert quarter_rep(idx ^ full, level) == rep

    def test_quadrant_signs(self):
        assert _quadrant_signs(parent_upper=False, bit=0) == (1, -1)
        assert _quadrant_signs(parent_upper=False, bit=1) == (-1, 1)
        assert _quadrant_signs(parent_upper=True, bit=1) == (1, 1)
        assert _quadrant_signs(parent_upper=True, bit=0) == (-1, -1)


class TestInitialCovers:
    def test_counts_and_kinds(self, param_i1):
        lower, upper = initial_covers(39, param_i1)
        assert len(lower.batch) == 40 and len(upper.batch) == 40
        assert lower.code == TileCode(1, 0) and upper.code == TileCode(1, 1)

    @pytest.mark.parametrize("n_discs", [3, 39, 199])
    def test_boundary_coverage(self, n_discs, param_i1):
        lower, upper = initial_covers(n_discs, param_i1)
        for cover, is_up in ((lower, False), (upper, True)):
            for z in tile_boundary_samples(400, is_up):
                assert batch_contains(cover.batch, z, slack=1e-9)

    def test_too_few_discs(self, param_i1):
        with pytest.raises(TileError):
            initial_covers(2, param_i1)


class TestRefinement:
    def test_preimage_containment_oracle(self, param_i1):
        """Pulled-back boundary samples stay inside every refined cover."""
        rng = np.random.default_rng(5)
        for _ in range(6):
            bits = [int(b) for b in rng.integers(0, 2, size=5)]
            root, rest = bits[0], bits[1:]
            cover = initial_covers(39, param_i1)[root]
            samples = tile_boundary_samples(60, upper=bool(root))
            c = float(rng.uniform(param_i1.lo, param_i1.hi))
            for bit in rest:
                qx, qy = _quadrant_signs(cover.code.is_upper, bit)
                samples = pullback_samples(samples, c, qx, qy)
                cover = refine(cover, bit, 0.01)
                assert samples, "pullback lost every sample"
                for z in samples:
                    assert batch_contains(cover.batch, z, slack=1e-9)

    def test_bad_bit(self, param_i1):
        cover = initial_covers(39, param_i1)[0]
        with pytest.raises(TileError):
            refine(cover, 2, 0.01)

    def test_distance_bounds_sane(self, param_i1):
        cover = initial_covers(39, param_i1)[0]
        for bit in (0, 1, 0):
            cover = refine(cover, bit, 0.01)
            db = distance_bounds(cover)
            assert 0.0 < db.lo_s <= db.hi_s
            assert db.hi_s <= 2.3


class TestQuarterEnumeration:
    @pytest.mark.parametrize("k", [2, 3, 4, 8])
    def test_shapes(self, k, param_i1, default_cfg):
        lo, hi = quarter_bounds(k, param_i1, default_cfg)
        assert len(lo) == len(hi) == 1 << (k - 2)
        assert np.all(lo > 0.0)
        assert np.all(lo <= hi)
        assert np.all(hi <= 2.3)

    def test_matches_direct_refinement(self, param_i1, default_cfg):
        # the fourth-quadrant tile 0b0010 at level 4, refined by hand
        lo, hi = quarter_bounds(4, param_i1, default_cfg)
        cover = initial_covers(39, param_i1)[0]
        # each refine appends its bit as the new most significant one, so
        # root 0 followed by bits 1, 0, 0 yields code 0010
        for bit in (1, 0, 0):
            cover = refine(cover, bit, default_cfg.split_tol)
        assert cover.code.index == 0b0010
        db = distance_bounds(cover)
        assert db.lo_s == lo[0b0010 & 3]
        assert db.hi_s == hi[0b0010 & 3]

    def test_worker_count_determinism(self, param_i1):
        ref = quarter_bounds(8, param_i1, CoverConfig(threads=1))
        for threads in (2, 4):
            got = quarter_bounds(8, param_i1, CoverConfig(threads=threads))
            assert np.array_equal(ref[0], got[0])
            assert np.array_equal(ref[1], got[1])

    def test_quarter_tiles_stream(self, param_i1, default_cfg):
        tiles = list(quarter_tiles(4, param_i1, default_cfg))
        assert len(tiles) == 4
        assert [t[0].index for t in tiles] == [0, 1, 2, 3]

    def test_level_covers(self, param_i1, default_cfg):
        covers = level_covers(3, param_i1, default_cfg)
        assert len(covers) == 8
        assert [c.code.index for c in covers] == list(range(8))

    def test_symmetry_of_bounds(self, param_i1, default_cfg):
        """Distance bounds of any tile match its quarter representative."""
        k = 5
        lo, hi = quarter_bounds(k, param_i1, default_cfg)
        covers = level_covers(k, param_i1, default_cfg)
        for cover in covers:
            db = distance_bounds(cover)
            rep = quarter_rep(cover.code.index, k)
            assert db.lo_s == pytest.approx(lo[rep], rel=1e-9)
            assert db.hi_s == pytest.approx(hi[rep], rel=1e-9)


class TestCoverConfig:
    def test_validation(self):
        with pytest.raises(TileError):
            CoverConfig(n_discs=1)
        with pytest.raises(TileError):
            CoverConfig(split_tol=0.0)
        with pytest.raises(TileError):
            CoverConfig(threads=0)
