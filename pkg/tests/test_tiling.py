import json

import pytest

from hexmds import tiling as tl
from hexmds.geom import region_separation


@pytest.fixture(scope="module")
def reports():
    return {name: tl.certified(f()) for name, f in
            [("septa", tl.default_septa), ("supercell", tl.default_supercell), ("dupercell", tl.default_dupercell)]}


def test_septa_tile_of_examples():
    t = tl.default_septa()
    tiles, k = tl.tile_of([(0, 0), (2, 1), (1, 0), (4, 2)], t)
    assert tiles.tolist() == [[0, 0], [1, 0], [0, 0], [2, 0]]
    assert [t.offsets[i] for i in k] == [(0, 0), (0, 0), (1, 0), (0, 0)]


def test_septa_colors():
    t = tl.default_septa()
    assert t.color(0, 0) == 0
    assert t.color(1, 0) == t.color(-1, 0)
    assert t.color(0, 0) != t.color(1, 0)
    assert t.color_count == 4


def test_supercell_shape_and_examples():
    t = tl.default_supercell()
    assert t.size == 15
    assert {lab: t.labels.count(lab) for lab in ("G1", "G2", "G3")} == {"G1": 3, "G2": 9, "G3": 3}
    tiles, k = tl.tile_of([(7, 1), (5, 0), (4, 0)], t)
    assert tiles[0].tolist() == [1, 0] and t.offsets[k[0]] == (2, 1)
    assert tiles[1].tolist() != tiles[2].tolist()
    g1 = [o for o, lab in zip(t.offsets, t.labels) if lab == "G1"]
    g3 = [o for o, lab in zip(t.offsets, t.labels) if lab == "G3"]
    assert region_separation(g1, g3) == pytest.approx(2.0, abs=1e-12)


def test_supercell_three_colouring_found():
    t = tl.default_supercell()
    assert t.color_count == 3
    assert t.basis == ((5, 0), (2, 3))


def test_dupercell_shape():
    t = tl.default_dupercell()
    u = {o for o, lab in zip(t.offsets, t.labels) if lab == "U_R"}
    s = {o for o, lab in zip(t.offsets, t.labels) if lab == "S_R"}
    assert len(u) == len(s) == 18
    assert not u & s
    assert tl.mu_column(t) == 6


def test_ten_column_block_is_too_narrow():
    rows = [0, 1, 2]
    widths = {c: tl.column_chain(0, rows).distance(tl.column_chain(c, rows)) for c in (10, 11, 12)}
    assert widths[10] == pytest.approx(7.858116822750855, abs=1e-9)
    assert widths[10] < 8 < widths[11] < widths[12]


def test_default_reports_pass(reports):
    for name, rep in reports.items():
        assert rep.passed, (name, rep.violations)


def test_septa_same_colour_separation(reports):
    c = reports["septa"].check("same_color_separation")
    assert c.measured == pytest.approx(2.0, abs=1e-9)
    assert c.detail["interior_min"] > 2.0


def test_supercell_side_regions(reports):
    c = reports["supercell"].check("side_region_separation")
    assert c.measured == pytest.approx(2.0, abs=1e-9)
    assert reports["supercell"].check("same_color_separation").passed


def test_dupercell_chains(reports):
    rep = reports["dupercell"]
    assert rep.check("chain_width").measured > 8
    assert rep.check("band_width").measured == pytest.approx(2.0, abs=1e-9)
    assert rep.check("strip_separation").measured >= 2 - 1e-9
    assert rep.check("band_separation").measured >= 2 - 1e-9


def test_cell_diameter_and_partition(reports):
    for rep in reports.values():
        assert rep.check("cell_diameter").measured <= 1 + 1e-9
        assert rep.check("partition").passed


def test_monochrome_septa_fails():
    t = tl.default_septa().with_colors(1, ((0,),))
    rep = tl.validate_tiling(t, samples=100)
    assert not rep.passed
    assert "same_color_separation" in rep.violations
    with pytest.raises(tl.TilingError):
        rep.raise_for_violations()


def test_patch_too_small():
    with pytest.raises(ValueError):
        tl.validate_tiling(tl.default_septa(), patch=3)


def test_broken_partition_is_reported():
    t = tl.default_septa()
    bad = tl.TilingDescriptor("septa", ((2, 1), (-1, 3)), ((0, 0), (1, 0), (2, 0), (0, 1), (0, -1), (1, -1), (-1, 1)),
                              ("C",) * 7, 4, t.color_table)
    rep = tl.validate_tiling(bad, samples=10)
    assert not rep.passed and rep.violations == ["partition"]


def test_descriptor_round_trip():
    for t in (tl.default_septa(), tl.default_supercell(), tl.default_dupercell()):
        again = tl.TilingDescriptor.loads(t.dumps())
        assert again == t
        assert json.loads(again.dumps()) == json.loads(t.dumps())


def test_descriptor_rejects_wrong_index():
    with pytest.raises(tl.TilingError):
        tl.TilingDescriptor("x", ((2, 0), (0, 2)), ((0, 0),), ("C",), 1, ((0,),))
    with pytest.raises(tl.TilingError):
        tl.TilingDescriptor.from_dict({"kind": "x"})


def test_tile_expansion_inverts_tile_of():
    for t in (tl.default_septa(), tl.default_supercell(), tl.default_dupercell()):
        for ij in [(0, 0), (3, -2), (-1, 4)]:
            tiles, k = tl.tile_of(t.cells(*ij), t)
            assert (tiles == ij).all()
            assert k.tolist() == list(range(t.size))


def test_same_colour_tiles_never_share_a_disk():
    # every same-coloured pair in a patch is at least a disk diameter apart
    t = tl.default_septa()
    tiles = [(i, j) for i in range(-2, 3) for j in range(-2, 3)]
    for a in tiles:
        for b in tiles:
            if a < b and t.color(*a) == t.color(*b):
                assert region_separation(t.cells(*a), t.cells(*b)) >= 2 - 1e-9
