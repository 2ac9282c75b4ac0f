import io
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from casimir_oscillator import SimConfig, verlet_integrate
from casimir_oscillator.io import (
    ParseError,
    parse_config,
    read_trajectory_csv,
    svg_polyline,
    sweep_spec_from_config,
    trajectory_csv,
)


def test_trajectory_csv_round_trip_is_exact():
    tr = verlet_integrate(SimConfig.for_periods(1.3e-9, periods=1))
    text = trajectory_csv(tr)
    assert text.splitlines()[0] == "tau,u,v,energy"
    back = read_trajectory_csv(io.StringIO(text))
    for name in ("times", "u", "v", "energy"):
        assert np.array_equal(getattr(back, name), getattr(tr, name))


@pytest.mark.parametrize(
    "text, line",
    [
        ("tau,u,v\n0,0,0\n", 1),
        ("tau,u,v,energy\n0,0,0,0\n1,0,zero,0\n", 3),
        ("tau,u,v,energy\n0,0,0,0\n1,0,0\n", 3),
    ],
)
def test_malformed_csv_reports_line(text, line):
    with pytest.raises(ParseError, match=f"line {line}"):
        read_trajectory_csv(io.StringIO(text))


def test_csv_needs_increasing_time():
    with pytest.raises(ParseError):
        read_trajectory_csv(io.StringIO("tau,u,v,energy\n0,0,0,0\n0,0,0,0\n"))


def test_parse_config():
    cfg = parse_config("# device\nk = 1.0\narea = 1e-12  # tiny\nx0=1e-6\npreset = paper\nsimulate = true\n")
    assert cfg == {"k": 1.0, "area": 1e-12, "x0": 1e-6, "preset": "paper", "simulate": True}


def test_parse_config_errors():
    with pytest.raises(ParseError):
        parse_config("k = 1\nthis line has no separator\n")
    with pytest.raises(ParseError):
        parse_config("[bogus]\nx = 1\n")


def test_sweep_spec_from_config():
    text = """
area = 1e-10
x0 = 1e-6
simulate = false

[axis k]
min = 1e-8
max = 1e-4
count = 9
spacing = log
"""
    spec = sweep_spec_from_config(parse_config(text))
    assert spec.axes[0].name == "k" and spec.axes[0].count == 9 and spec.axes[0].spacing == "log"
    assert spec.fixed == {"area": 1e-10, "x0": 1e-6}
    with pytest.raises(ParseError):
        sweep_spec_from_config(parse_config("k = 1\n"))
    with pytest.raises(ParseError):
        sweep_spec_from_config(parse_config("area = 1\nx0 = 1\n[axis k]\nmin = 1\n"))


def test_svg_is_well_formed():
    t = np.linspace(0, 10, 50)
    svg = svg_polyline(t, np.cos(t), xlabel="t/t*", ylabel="(x - x0)/x0")
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    poly = [el for el in root.iter() if el.tag.endswith("polyline")]
    assert len(poly) == 1 and len(poly[0].get("points").split()) == 50
    ET.fromstring(svg_polyline([0, 1], [0, 0]))  # flat data does not divide by zero
