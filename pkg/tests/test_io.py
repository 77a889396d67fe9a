import json

import pytest

from floerloop import io
from floerloop.comparison import ComparisonData, validate_b
from floerloop.complex import assemble
from floerloop.library import (
    builtin_coalgebras,
    builtin_systems,
    product_system,
    product_to_tensor_morphism,
    s2xs2_cobar_variant,
    sphere_height,
)
from floerloop.spectral import compute_pages


@pytest.mark.parametrize("name", sorted(builtin_systems(10)))
def test_export_reimport_gives_identical_pages(name):
    sys = builtin_systems(10)[name]
    text = io.dump(io.system_to_json(sys))
    again = io.system_from_json(json.loads(text), 10)
    a = compute_pages(assemble(sys, 10))
    b = compute_pages(assemble(again, 10))
    assert io.dump(a.to_json()) == io.dump(b.to_json())
    assert io.system_to_json(again) == io.system_to_json(sys)


@pytest.mark.parametrize("name", sorted(builtin_coalgebras()))
def test_coalgebra_roundtrip(name):
    c = builtin_coalgebras()[name]
    assert io.coalgebra_from_json(json.loads(io.dump(io.coalgebra_to_json(c)))) == c


def test_pages_roundtrip_and_kind():
    pages = compute_pages(assemble(sphere_height(2, 6), 6))
    data = json.loads(io.dump(pages.to_json()))
    assert io.detect_kind(data) == "pages"
    assert io.pages_from_json(data) == pages
    assert io.detect_kind(io.system_to_json(sphere_height(2, 6))) == "system"
    assert io.detect_kind(io.coalgebra_to_json(builtin_coalgebras()["point"])) == "coalgebra"
    with pytest.raises(io.InputError):
        io.detect_kind([1, 2])


def test_invalid_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "ring": ,\n}\n')
    with pytest.raises(io.InputError, match="line 2, column 11"):
        io.read_json(p)
    with pytest.raises(io.InputError, match="cannot read"):
        io.read_json(tmp_path / "missing.json")


def test_schema_errors_name_the_field():
    data = io.system_to_json(sphere_height(2, 6))
    data["generators"][1]["mu"] = "two"
    with pytest.raises(io.InputError, match="generators/1/mu"):
        io.system_from_json(data)
    data = io.system_to_json(sphere_height(2, 6))
    data["ring"]["coalgebra"]["basis"][0]["degree"] = -1
    with pytest.raises(io.InputError, match="ring"):
        io.system_from_json(data)
    with pytest.raises(io.InputError, match="basis"):
        io.coalgebra_from_json({"coproduct": {}})


def test_semantic_errors_become_input_errors():
    data = io.system_to_json(sphere_height(2, 6))
    data["A"] = {"T|Q": [["sx"]]}
    with pytest.raises(io.InputError, match="unknown generator"):
        io.system_from_json(data)
    data["A"] = {"TB": [[]]}
    with pytest.raises(io.InputError, match="x\\|y"):
        io.system_from_json(data)
    data["A"] = {"T|B": [["sx"]]}  # correct degree
    io.system_from_json(data)
    data["A"] = {"T|B": [["sx", "sx"]]}
    with pytest.raises(io.InputError):
        io.system_from_json(data)
    bad_coalgebra = {"basis": [{"name": "1", "degree": 0}, {"name": "e", "degree": 1}]}
    with pytest.raises(io.InputError):
        io.coalgebra_from_json(bad_coalgebra)


def test_ring_cache_shares_equal_rings():
    rings = io.RingCache()
    data = io.system_to_json(sphere_height(3, 8))
    a = io.system_from_json(data, 8, rings)
    b = io.system_from_json(json.loads(json.dumps(data)), 8, rings)
    assert a.ring is b.ring
    c = io.system_from_json(data, 8)
    assert c.ring is not a.ring


def test_missing_ring_cap_follows_complex_cap():
    data = io.system_to_json(sphere_height(2, 6))
    assert "cap" not in data["ring"]
    sys = io.system_from_json(data, 9)
    assemble(sys, 9)
    shifted = dict(data, generators=[{"name": "B", "mu": -2}, {"name": "T", "mu": 0}])
    assemble(io.system_from_json(shifted, 9), 9)


def test_tensor_ring_roundtrip():
    pr = product_system(sphere_height(2, 8), sphere_height(2, 8))
    data = io.system_to_json(pr)
    assert data["ring"]["type"] == "tensor"
    again = io.system_from_json(data, 8)
    assert again.ring.dim(2) == pr.ring.dim(2)


def test_comparison_roundtrip():
    rings = io.RingCache()
    cv = io.system_from_json(io.system_to_json(s2xs2_cobar_variant(8)), 8, rings)
    pr = io.system_from_json(io.system_to_json(product_system(sphere_height(2, 8), sphere_height(2, 8))), 8, rings)
    f = product_to_tensor_morphism(cv.ring, pr.ring)
    cd = ComparisonData(cv, pr, {(g, g): pr.ring.one() for g in cv.names}, ring_map=f)
    data = json.loads(io.dump(io.comparison_to_json(cd)))
    assert data["ring_map"] is not None
    again = io.comparison_from_json(data, cv, pr)
    assert validate_b(again).ok
    assert io.comparison_to_json(again) == data

    ident = ComparisonData.identity(cv)
    data = io.comparison_to_json(ident)
    assert data["ring_map"] is None and data["degree"] == 0
    assert io.comparison_from_json(data, cv, cv).entries == ident.entries


def test_comparison_errors():
    rings = io.RingCache()
    s2 = io.system_from_json(io.system_to_json(sphere_height(2, 8)), 8, rings)
    with pytest.raises(io.InputError, match="B"):
        io.comparison_from_json({"B": {"B|Z": [[]]}}, s2, s2)
    with pytest.raises(io.InputError, match="degree"):
        io.comparison_from_json({"B": {}, "degree": "x"}, s2, s2)
    other = io.system_from_json(io.system_to_json(s2xs2_cobar_variant(8)), 8, rings)
    with pytest.raises(io.InputError):
        io.comparison_from_json({"B": {}}, other, s2)
