import xml.etree.ElementTree as ET

import numpy as np
import pytest

from pinproj import Embedding, PlotSpec, color_map, render_panels, render_scatter

SVG_NS = "{http://www.w3.org/2000/svg}"


def circles(svg):
    return ET.fromstring(svg).findall(f".//{SVG_NS}circle")


def legend_entries(svg):
    return ET.fromstring(svg).findall(f".//{SVG_NS}rect")[1:]  # first is background


def test_single_point_centers_in_viewport():
    e = Embedding(np.zeros((1, 2)))  # one point at (0, 0): degenerate bbox
    spec = PlotSpec(width=400, height=300)
    svg = render_scatter(e, None, spec)
    cs = circles(svg)
    assert len(cs) == 1
    assert float(cs[0].get("cx")) == pytest.approx(200.0)
    assert float(cs[0].get("cy")) == pytest.approx(150.0)


def test_circle_count_and_wellformed_xml():
    rng = np.random.default_rng(0)
    e = Embedding(rng.uniform(0, 1, size=(37, 2)))
    svg = render_scatter(e, None)
    assert len(circles(svg)) == 37


def test_orientation_y_up():
    e = Embedding(np.array([[0.0, 0.0], [1.0, 1.0]]))
    svg = render_scatter(e, None)
    c0, c1 = circles(svg)
    assert float(c1.get("cx")) > float(c0.get("cx"))
    assert float(c1.get("cy")) < float(c0.get("cy"))  # screen y runs down


def test_value_order_preserved_per_axis():
    xs = np.array([0.0, 0.3, 0.3, 0.9])
    e = Embedding(np.column_stack([xs, xs[::-1]]))
    cs = circles(render_scatter(e, None))
    px = [float(c.get("cx")) for c in cs]
    assert px[0] < px[1] == px[2] < px[3]  # equal data -> equal pixels


def test_legend_matches_labels_and_colors():
    e = Embedding(np.array([[0.0, 0.0], [1.0, 0.5], [0.5, 1.0]]))
    labels = ("red-team", "blue-team", "red-team")
    svg = render_scatter(e, labels)
    cmap = color_map(labels)
    assert len(cmap) == 2
    swatches = legend_entries(svg)
    assert len(swatches) == 2
    assert {s.get("fill") for s in swatches} == set(cmap.values())
    point_fills = {c.get("fill") for c in circles(svg)}
    assert point_fills == set(cmap.values())


def test_color_map_deterministic_by_sorted_order():
    a = color_map(["b", "a", "c"])
    b = color_map(["c", "b", "a", "a"])
    assert a == b
    assert list(a) == ["a", "b", "c"]


def test_deterministic_output():
    rng = np.random.default_rng(1)
    coords = rng.uniform(0, 1, size=(20, 2))
    labels = tuple("xy"[i % 2] for i in range(20))
    one = render_scatter(Embedding(coords.copy()), labels)
    two = render_scatter(Embedding(coords.copy()), labels)
    assert one == two


def test_rejects_wrong_dims():
    with pytest.raises(ValueError, match="2-D"):
        render_scatter(Embedding(np.zeros((4, 3))), None)
    with pytest.raises(ValueError, match="3-D"):
        render_panels(Embedding(np.zeros((4, 2))), None)


def test_label_length_checked():
    with pytest.raises(ValueError, match="labels"):
        render_scatter(Embedding(np.zeros((4, 2))), ["a"])


def test_labels_escaped_in_legend():
    e = Embedding(np.array([[0.0, 0.0], [1.0, 1.0]]))
    svg = render_scatter(e, ("a<b&c", "a<b&c"))
    ET.fromstring(svg)  # must stay well-formed
    assert "a<b&c" not in svg


def test_panels_render_three_views():
    rng = np.random.default_rng(2)
    e = Embedding(rng.uniform(0, 1, size=(15, 3)))
    labels = tuple("pq"[i % 2] for i in range(15))
    svg = render_panels(e, labels)
    assert len(circles(svg)) == 45
    root = ET.fromstring(svg)
    assert len(root.findall(f"{SVG_NS}g")) == 3
    # legend only once, colors everywhere
    assert len(legend_entries(svg)) == 2


def test_spec_validation():
    with pytest.raises(ValueError):
        PlotSpec(width=0)
    with pytest.raises(ValueError):
        PlotSpec(point_radius=-1)
