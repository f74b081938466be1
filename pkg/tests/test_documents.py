# tests/test_documents.py

import json
import re
from fractions import Fraction

import pytest

from isolab.errors import InputError
from isolab.services import seminorms as sn
from isolab.services.isocrystal import hodge_polygon
from isolab.services.padic_core import (
    INF,
    CyclotomicElement,
    NewtonPolygon,
    PadicScalar,
    UnramifiedElement,
    cyclotomic_field,
    unramified_field,
)
from isolab.services.polygon_svg import render_svg, write_svg
from isolab.services.witt import WittVector
from isolab.storage.cache import StructurePolynomialCache
from isolab.utils import serialization, validators


def test_rationals_are_written_exactly():
    assert serialization.format_rational(Fraction(6, 4)) == "3/2"
    assert serialization.format_rational(-3) == "-3"
    assert serialization.format_rational(INF) == "inf"
    assert serialization.dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'
    print("[TEST] Rational formatting passed.")


def test_csv_text_layout():
    text = serialization.csv_text("demo v1", ["x", "y"], [["1", "a,b"]])
    assert text == '# demo v1\nx,y\n1,"a,b"\n'
    print("[TEST] CSV layout passed.")


def test_isocrystal_document_round_trip():
    """The JSON view of an isocrystal is accepted back by the validators."""
    D = validators.build_isocrystal({"p": 3, "phi": [[0, 3], [1, 0]]}, 8)
    assert D.prec == 8
    again = validators.build_isocrystal(D.to_json(), 10)
    assert again.newton_slopes() == [Fraction(1, 2), Fraction(1, 2)]

    D4 = validators.build_isocrystal({"p": 2, "s": 2, "phi": [[[0, 1], 0], [0, 2]]}, 10)
    assert D4.s == 2
    print("[TEST] Isocrystal documents passed.")


def test_scalar_documents_round_trip():
    """Scalars travel as {"p", "val", "unit", "prec"}, with "h" or "level" over extensions."""
    x = PadicScalar.from_rational(3, Fraction(18, 5), 10)
    document = serialization.scalar_to_json(x)
    assert document["val"] == 2 and document["prec"] == 10 and "h" not in document
    assert validators.scalar_from_json(document) == x
    zero = serialization.scalar_to_json(PadicScalar.zero(2, 6))
    assert zero == {"p": 2, "val": "inf", "unit": "0", "prec": 6}
    assert validators.scalar_from_json(zero).is_zero()

    Q4 = unramified_field(2, 2)
    y = UnramifiedElement(Q4, [4, 6], 10)
    document = serialization.scalar_to_json(y)
    assert document["val"] == 1 and document["unit"] == ["2", "3"]
    assert document["h"] == list(Q4.modulus)
    assert validators.scalar_from_json(document).equals_at_precision(y)

    z = CyclotomicElement(cyclotomic_field(3, 1), [3, 9], 8)
    document = serialization.scalar_to_json(z)
    assert document["level"] == 1 and document["unit"] == ["1", "3"]
    assert validators.scalar_from_json(document).equals_at_precision(z)

    with pytest.raises(InputError):
        validators.scalar_from_json({"p": 3, "val": 0, "unit": "6", "prec": 5})
    with pytest.raises(InputError):
        validators.scalar_from_json({"p": 2, "val": 0, "unit": ["1", "0"], "prec": 5, "h": [1, 1, 1], "level": 1})
    with pytest.raises(InputError):
        validators.scalar_from_json({"p": 2, "val": 0, "unit": "one", "prec": 5})
    print("[TEST] Scalar documents passed.")


def test_scalar_documents_as_matrix_entries():
    p_scalar = serialization.scalar_to_json(PadicScalar.from_rational(3, 3, 10))
    D = validators.build_isocrystal({"p": 3, "phi": [[0, p_scalar], [1, 0]]}, 8)
    assert D.newton_slopes() == [Fraction(1, 2), Fraction(1, 2)]

    y = serialization.scalar_to_json(UnramifiedElement(unramified_field(2, 2), [0, 1], 10))
    D4 = validators.build_isocrystal({"p": 2, "s": 2, "phi": [[y, 0], [0, 2]]}, 10)
    assert D4.phi[0][0].coeffs == (0, 1)

    with pytest.raises(InputError):
        validators.build_isocrystal({"p": 2, "phi": [[p_scalar]]}, 10)
    assert validators.build_element({"p": 2, "val": 1, "unit": "3", "prec": 10}, 2) == Fraction(6)
    print("[TEST] Scalar matrix entries passed.")


def test_invalid_documents():
    with pytest.raises(InputError):
        validators.build_isocrystal({"p": 4, "phi": [[1]]}, 10)
    with pytest.raises(InputError):
        validators.build_isocrystal({"p": 2, "phi": [[1, 0]]}, 10)
    with pytest.raises(InputError):
        validators.build_isocrystal({"p": 2, "phi": [[1]], "colour": "red"}, 10)
    with pytest.raises(InputError):
        validators.build_isocrystal({"p": 2, "phi": [["1/0"]]}, 10)
    with pytest.raises(InputError):
        validators.build_element(True, 2)
    with pytest.raises(InputError):
        validators.build_witt({"p": 2, "len": 3, "components": [1, 0]})
    print("[TEST] Invalid documents passed.")


def test_filtered_documents():
    FD = validators.build_filtered_document(
        {"isocrystal": {"p": 2, "phi": [[1, 0], [0, 2]]},
         "filtration": {"jumps": [0, 1], "flags": {"1": [[1], [0]]}}},
        10,
    )
    assert FD.t_H() == 1
    D = validators.preset_isocrystal("ord2", 2, 1, 10)
    same = validators.build_filtered(D, {"hodge": [0, 1], "flags": {"1": [[1], [0]]}})
    assert same.hodge_tate_weights() == [0, 1]
    with pytest.raises(InputError):
        validators.preset_filtered("ord3-generic", 2, 1, 10)
    print("[TEST] Filtered documents passed.")


def test_evaluator_documents_invert_to_json():
    for point in (sn.PadicAbsolute(3), sn.CombPoint(2, Fraction(1, 3)), sn.XAdicPoint(2, 2),
                  sn.GaussNorm(sn.PadicAbsolute(5)), sn.WittPoint(2, "x_to_p")):
        assert validators.build_evaluator(point.to_json()).to_json() == point.to_json()
    with pytest.raises(InputError):
        validators.build_evaluator({"kind": "comb", "p": 2})
    print("[TEST] Evaluator documents passed.")


def test_element_documents():
    assert validators.build_element("3/4", 2) == Fraction(3, 4)
    assert validators.build_element({"poly": [1, "1/2"]}, 2) == [1, Fraction(1, 2)]
    x = validators.build_element({"terms": [{"num": 1, "den_pow": 1}]}, 2)
    assert sn.XAdicPoint(2).evaluate(x).neg_log == Fraction(1, 2)
    w = validators.build_element({"p": 2, "len": 2, "components": [{"terms": [{"num": 1}]}, {"terms": []}]}, 2)
    assert isinstance(w, WittVector) and w.length == 2
    print("[TEST] Element documents passed.")


def test_svg_keeps_exact_vertices(tmp_path):
    hodge = hodge_polygon([0, 1])
    newton = NewtonPolygon.from_slopes([Fraction(1, 2), Fraction(1, 2)])
    svg = render_svg({"newton": newton, "hodge": hodge}, title="ss2 <line>")
    assert svg.index('class="hodge"') < svg.index('class="newton"')
    assert "<title>ss2 &lt;line&gt;</title>" in svg
    data = re.search(r'class="newton"[^>]*data-vertices="([^"]*)"', svg).group(1)
    assert json.loads(data.replace("&quot;", '"')) == [[0, "0"], [2, "1"]]
    path = write_svg({"hodge": hodge}, str(tmp_path / "out" / "hodge.svg"))
    with open(path, encoding="utf-8") as f:
        assert f.read().startswith("<?xml")
    with pytest.raises(InputError):
        render_svg({})
    print("[TEST] SVG polygons passed.")


def test_structure_cache_store_load_clear(tmp_path):
    cache = StructurePolynomialCache(str(tmp_path / "cache"))
    families = {"sum": [[((1, 0), 1), ((0, 1), 1)]], "product": [[((1, 1), 1)]], "difference": [[((1, 0), 1), ((0, 1), -1)]]}
    assert cache.load(2, 1) is None
    assert cache.store(2, 1, families).endswith("witt_p2_n1.json")
    assert cache.load(2, 1) == families
    assert cache.load(3, 1) is None

    with open(cache._path(2, 1), "w", encoding="utf-8") as f:
        f.write("{broken")
    assert cache.load(2, 1) is None
    assert cache.clear() == 1
    assert cache.clear() == 0
    print("[TEST] Structure polynomial cache passed.")


if __name__ == "__main__":
    test_rationals_are_written_exactly()
    test_csv_text_layout()
    test_isocrystal_document_round_trip()
    test_scalar_documents_round_trip()
    test_scalar_documents_as_matrix_entries()
    test_invalid_documents()
    test_filtered_documents()
    test_evaluator_documents_invert_to_json()
    test_element_documents()
    test_structure_cache_store_load_clear()
