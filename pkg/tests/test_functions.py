import json
import math

import numpy as np
import pytest

from qpdf.errors import WrongExponent
from qpdf.functions import (
    const1,
    cosine,
    format_quaternion,
    function_to_json,
    lemma_exp2,
    load_function,
    parse_character,
    parse_element,
    parse_unit,
    resolve_function,
)
from qpdf.group import FiniteGroup, ZWindow
from qpdf.quat import I1, I2, I3, ImaginaryUnit, axes_close

Z4 = FiniteGroup((4,))


def test_parse_unit():
    assert parse_unit("i1") == I1 and parse_unit("-i3") == -I3 and parse_unit(" I2 ") == I2
    assert axes_close(parse_unit("0/1/1"), ImaginaryUnit.from_vector([0, 1, 1]))
    with pytest.raises(ValueError):
        parse_unit("1/2")


def test_parse_element():
    G = FiniteGroup((2, 4))
    assert parse_element(G, "1/3") == (1, 3)
    with pytest.raises(ValueError):
        parse_element(G, "1/5")


def test_builtins():
    assert np.all(const1(Z4).values[:, 0] == 1)
    W = ZWindow(3)
    np.testing.assert_allclose(cosine(W).values[:, 0], np.cos(np.arange(-3, 4)))
    with pytest.raises(ValueError):
        cosine(Z4)


def test_lemma_function():
    phi = lemma_exp2(Z4)
    assert phi((0,)).real == 1.0
    assert phi((1,)).isclose(I2 * 0.5) and phi((3,)).isclose(I2 * -0.5) and phi((2,)).norm2() == 0
    with pytest.raises(WrongExponent):
        lemma_exp2(FiniteGroup((2, 2)))
    with pytest.raises(WrongExponent):
        lemma_exp2(Z4, a=(2,))
    with pytest.raises(ValueError):
        lemma_exp2(Z4, J=-I1)


def test_parse_character():
    c = parse_character(Z4, "k=1,axis=i2")
    assert c.index == (1,) and c.axis == I2
    c = parse_character(ZWindow(5), "theta=1.0,axis=i3")
    assert math.isclose(c.index, 1.0)
    for bad in ("axis=i2", "theta=1"):
        with pytest.raises(ValueError):
            parse_character(Z4, bad)
    with pytest.raises(ValueError):
        parse_character(ZWindow(5), "k=1")


def test_file_round_trip(tmp_path):
    phi = lemma_exp2(FiniteGroup((2, 3)))
    path = tmp_path / "phi.json"
    path.write_text(json.dumps(function_to_json(phi)))
    back = load_function(None, path)
    assert back.group == phi.group and back.sup_distance(phi) == 0.0
    assert resolve_function(f"file:{path}", None).sup_distance(phi) == 0.0
    with pytest.raises(ValueError):
        load_function(Z4, path)


def test_missing_values_are_zero(tmp_path):
    path = tmp_path / "sparse.json"
    path.write_text(json.dumps({"group": "Z4", "values": [[[0], [1, 0, 0, 0]]]}))
    phi = load_function(None, path)
    assert phi((0,)).real == 1.0 and not phi.values[1:].any()


def test_resolve_function():
    assert resolve_function("lemma-exp2:a=2,J=i3", FiniteGroup((5,)))((2,)).isclose(I3 * 0.5)
    assert resolve_function("char:k=1,axis=i1", Z4)((1,)).isclose(I1)
    with pytest.raises(ValueError):
        resolve_function("nope", Z4)
    with pytest.raises(ValueError):
        resolve_function("const1", None)


def test_format_quaternion_has_no_negative_zero():
    assert format_quaternion([-0.0, 1e-12, -1.0, 0.5]) == "+0 +0i1 -1i2 +0.5i3"
