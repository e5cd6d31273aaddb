import xml.etree.ElementTree as ET

import numpy as np

from hexmds import tiling as tl
from hexmds.cover import exact_mds
from hexmds.io import gen_uniform
from hexmds.svg import SCALE, render_svg

NS = "{http://www.w3.org/2000/svg}"


def test_parses_and_is_deterministic():
    inst = gen_uniform(25, 5, 5, 4)
    a = render_svg(inst.points, [0, 3], tl.default_septa(), bbox=inst.bbox, title="demo & co")
    b = render_svg(inst.points, [3, 0], tl.default_septa(), bbox=inst.bbox, title="demo & co")
    assert a == b
    root = ET.fromstring(a.encode())
    assert root.tag == NS + "svg"
    assert len(root.find(f"{NS}g[@id='points']")) == 25


def test_exact_solution_draws_one_disk():
    pts = np.array([(0.0, 0.0), (0.9, 0.0), (1.8, 0.0)])
    sol = exact_mds(pts)
    root = ET.fromstring(render_svg(pts, sol.chosen).encode())
    disks = list(root.find(f"{NS}g[@id='disks']"))
    assert len(disks) == 1 and float(disks[0].get("r")) == SCALE


def test_tiling_colors_cells():
    svg = render_svg(np.array([(0.0, 0.0), (4.0, 3.0)]), (), tl.default_supercell())
    root = ET.fromstring(svg.encode())
    fills = {p.get("fill") for p in root.find(f"{NS}g[@id='cells']")}
    assert "none" not in fills and len(fills) == 3


def test_empty_instance_renders():
    root = ET.fromstring(render_svg(np.zeros((0, 2))).encode())
    assert len(root.find(f"{NS}g[@id='points']")) == 0
