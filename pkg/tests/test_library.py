import pytest

from floerloop.complex import Generator, GeneratorSystem, assemble, change_coefficients, translate, validate_mc
from floerloop.dga import TableDGA, cobar, point_coalgebra
from floerloop.library import (
    builtin_coalgebras,
    builtin_systems,
    collapse_to_s4,
    point_system,
    product_system,
    s2xs2_cobar_variant,
    sphere_height,
)
from floerloop.serre import serre_pages
from floerloop.spectral import compare_up_to_translation, compute_pages


def test_sphere_height_shape():
    s = sphere_height(4)
    assert [(g.name, g.mu, g.action) for g in s.generators] == [("B", 0, 0), ("T", 4, 4)]
    assert s.entries["T", "B"] == s.ring.gen("sx")
    with pytest.raises(ValueError):
        sphere_height(1)


def test_product_shape():
    p = product_system(sphere_height(2, 8), sphere_height(2, 8))
    assert sorted(g.mu for g in p.generators) == [0, 2, 2, 4]
    assert validate_mc(p).ok
    assert len(p.entries) == 4 and ("T_T", "B_B") not in p.entries


def test_product_with_point():
    s = sphere_height(3, 8)
    p = product_system(s, point_system(8))
    assert [(g.name, g.mu) for g in p.generators] == [("B_p", 0), ("T_p", 3)]
    a = compute_pages(assemble(s, 8))
    b = compute_pages(assemble(p, 8))
    assert compare_up_to_translation(a, b, r_min=1) == 0


def test_product_rejects_mixed_rings():
    table = GeneratorSystem(TableDGA([("1", 0)]), [Generator("p", 0)])
    with pytest.raises(ValueError):
        product_system(sphere_height(2, 6), table)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_spheres_match_oracle(n):
    cap = 10
    morse = compute_pages(assemble(sphere_height(n, cap), cap))
    oracle = serre_pages(builtin_coalgebras()[f"sphere{n}"], cap)
    assert compare_up_to_translation(morse, oracle) == 0


def test_translated_sphere_matches_oracle_with_shift():
    cap = 10
    moved = compute_pages(assemble(translate(sphere_height(3, 17), 7), cap + 7))
    oracle = serre_pages(builtin_coalgebras()["sphere3"], cap)
    assert compare_up_to_translation(moved, oracle) == 7


def test_s2xs2_realizations_match_oracle():
    cap = 9
    oracle = serre_pages(builtin_coalgebras()["s2xs2"], cap)
    for name in ("s2xs2_product", "s2xs2_cobar"):
        pages = compute_pages(assemble(builtin_systems(cap)[name], cap))
        assert compare_up_to_translation(pages, oracle) == 0, name


def test_collapse_gives_transgression():
    cap = 10
    cv = s2xs2_cobar_variant(cap)
    pushed = change_coefficients(cv, collapse_to_s4(cv.ring))
    pages = compute_pages(assemble(pushed, cap))
    assert {r for r, *_ in pages.nonzero_differentials()} == {4}
    assert all(rk == 1 for *_, rk in pages.nonzero_differentials())


def test_point_system():
    p = point_system(6)
    assert p.ring.generators == () and p.entries == {}
    assert cobar(point_coalgebra(), 6).dim(3) == 0
