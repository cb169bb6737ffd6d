import pytest

from plaid.params import make_param
from plaid.svgout import RenderConfig, render_svg


def test_deterministic(p25):
    cfg = RenderConfig(window=(0, 0, 7, 7), scale=20,
                       layers=("grid-lines", "light-points", "polygons"))
    a = render_svg(p25, cfg)
    b = render_svg(p25, cfg)
    assert a == b
    assert a.startswith("<svg ") and a.rstrip().endswith("</svg>")


def test_polygon_layer_counts(p12):
    cfg = RenderConfig(window=(0, 0, 3, 3), scale=10, layers=("polygons",))
    svg = render_svg(p12, cfg)
    assert svg.count("<polygon ") == 1  # the single ring of the first block


def test_polygon_layer_counts_2_5(p25):
    cfg = RenderConfig(window=(0, 0, 7, 7), scale=10, layers=("polygons",))
    svg = render_svg(p25, cfg)
    assert svg.count("<polygon ") == 3  # the first-block picture


def test_light_point_sizes(p25):
    # the doubled midpoints (block 0 has them at x = 7/2) are drawn larger
    cfg = RenderConfig(window=(0, 0, 7, 7), scale=10,
                       layers=("light-points",))
    svg = render_svg(p25, cfg)
    assert 'r="4"' in svg and 'r="2"' in svg


def test_orientation_arrows(p12):
    cfg = RenderConfig(window=(0, 0, 3, 3), scale=10,
                       layers=("orientation-arrows",))
    svg = render_svg(p12, cfg)
    assert svg.count("<circle ") == 8  # one arrowhead per ring square


def test_config_validation():
    with pytest.raises(Exception):
        RenderConfig(window=(0, 0, 0, 7))
    with pytest.raises(Exception):
        RenderConfig(window=(0, 0, 7, 7), scale=0)
    with pytest.raises(Exception):
        RenderConfig(window=(0, 0, 7, 7), layers=("nope",))


def test_integer_pixel_coordinates(p25):
    svg = render_svg(p25, RenderConfig(window=(0, 0, 7, 7), scale=24,
                                       layers=("polygons",)))
    import re

    for m in re.finditer(r'points="([^"]*)"', svg):
        for pair in m.group(1).split():
            x, y = pair.split(",")
            int(x), int(y)
