import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floerloop.complex import (
    Generator,
    GeneratorSystem,
    MaurerCartanError,
    StructureError,
    assemble,
    change_coefficients,
    check_action_order,
    diagnose,
    nilpotency_index,
    normalized,
    translate,
    validate_mc,
)
from floerloop.dga import DGAMorphism, cobar, homology_dims, sphere_coalgebra
from floerloop.library import (
    broken_variants,
    builtin_systems,
    collapse_to_s4,
    point_system,
    random_system,
    s2xs2_cobar_variant,
    sphere_height,
    to_trivial_ring,
)

S2_RING = cobar(sphere_coalgebra(2), 8)


def test_mc_examples():
    assert validate_mc(sphere_height(3)).ok
    broken = s2xs2_cobar_variant(8, with_top_entry=False)
    report = validate_mc(broken)
    assert not report.ok
    [f] = report.failures
    ring = broken.ring
    assert (f.source, f.target) == ("T_T", "B_B")
    assert f.residual == ring.gen("sa") * ring.gen("sb") + ring.gen("sb") * ring.gen("sa")
    assert validate_mc(s2xs2_cobar_variant(8)).ok


def test_structure_errors():
    s2 = sphere_height(2, 8)
    with pytest.raises(StructureError):
        GeneratorSystem(s2.ring, s2.generators, {("T", "B"): s2.ring.one()})
    with pytest.raises(StructureError):
        GeneratorSystem(s2.ring, s2.generators, {("B", "T"): s2.ring.gen("sx")})
    with pytest.raises(StructureError):
        GeneratorSystem(s2.ring, [Generator("B", 0), Generator("B", 2)])
    bad = s2.with_entries({("T", "B"): s2.ring.one()}, check=False)
    with pytest.raises(StructureError):
        validate_mc(bad)


def test_broken_variants_fail_exactly_their_check():
    for v in broken_variants(8):
        stage, _ = diagnose(v.system)
        assert stage == v.expected, v.name
    for name, sys in builtin_systems(8).items():
        assert diagnose(sys)[0] is None, name


def test_action_order():
    s2 = sphere_height(2, 8)
    assert check_action_order(s2).ok
    flipped = GeneratorSystem(s2.ring, [Generator("B", 0, 3), Generator("T", 2, 3)], s2.entries)
    assert check_action_order(flipped).violations == [("T", "B")]
    unlabelled = GeneratorSystem(s2.ring, [Generator("B", 0), Generator("T", 2)], s2.entries)
    assert check_action_order(unlabelled).ok


def test_assemble_s2():
    fc = assemble(sphere_height(2, 6), 6)
    assert [fc.dim(n) for n in range(0, 7)] == [1, 1, 2, 2, 2, 2, 2]
    t = fc.vector(2, [((), "T")])
    assert fc.boundary[2].apply(t) == fc.vector(1, [((0,), "B")])
    assert fc.d_squared_failures() == []
    assert fc.filtration_violations() == []
    assert fc.homology_dims() == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0}


def test_trivial_system_is_the_ring():
    for mu in (0, 3):
        sys = GeneratorSystem(S2_RING, [Generator("p", mu)])
        fc = assemble(sys, mu + 6)
        assert [fc.dim(n) for n in range(mu, mu + 7)] == [S2_RING.dim(q) for q in range(7)]
        h = fc.homology_dims()
        assert [h[n] for n in range(mu, mu + 6)] == [d for _, d in homology_dims(S2_RING, 6)]


def test_assemble_errors():
    s2 = sphere_height(2, 6)
    with pytest.raises(StructureError):
        assemble(translate(s2, 3), 2)
    with pytest.raises(StructureError):
        assemble(s2, 7)
    with pytest.raises(MaurerCartanError):
        assemble(s2xs2_cobar_variant(8, with_top_entry=False), 6)


def test_builtins_are_complexes():
    for name, sys in builtin_systems(8).items():
        fc = assemble(sys, 8)
        assert fc.d_squared_failures() == [], name
        assert fc.filtration_violations() == [], name


def _corrupt(sys, rng):
    """Flip one basis word in one admissible entry position."""
    gens = sys.generators
    spots = [(x, y) for x in gens for y in gens if x.mu - y.mu >= 1 and sys.ring.dim(x.mu - y.mu - 1)]
    x, y = rng.choice(spots)
    deg = x.mu - y.mu - 1
    word = rng.choice(sys.ring.basis(deg))
    entries = dict(sys.entries)
    flip = sys.ring.element([word], deg)
    entries[x.name, y.name] = entries[x.name, y.name] + flip if (x.name, y.name) in entries else flip
    return sys.with_entries(entries)


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_mc_iff_d_squared(rnd):
    sys = random_system(rnd, S2_RING, max_generators=5, max_mu=6, density=0.4)
    mc = validate_mc(sys).ok
    fc = assemble(sys, 8, check=False)
    assert mc == (fc.d_squared_failures() == [])
    assert fc.filtration_violations() == []


def test_single_corruption_flips_both():
    rng = random.Random(7)
    for sys in (sphere_height(2, 8), builtin_systems(8)["s2xs2_cobar"]):
        for _ in range(10):
            bad = _corrupt(sys, rng)
            if bad.entries == sys.entries:
                continue
            mc = validate_mc(bad).ok
            d2 = assemble(bad, 8, check=False).d_squared_failures() == []
            assert mc == d2


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_nilpotence(rnd):
    sys = random_system(rnd, S2_RING, max_generators=5, max_mu=6)
    assert nilpotency_index(sys) <= len(sys.mu_values)


def test_translate():
    s2 = sphere_height(2, 8)
    assert translate(s2, 0).generators == s2.generators
    t = translate(s2, 3)
    assert [g.mu for g in t.generators] == [3, 5]
    assert translate(t, -3).generators == s2.generators
    assert normalized(t).generators == s2.generators
    assert [g.mu for g in translate(s2, -3).generators] == [-3, -1]


def test_change_coefficients():
    s2 = sphere_height(2, 8)
    same = change_coefficients(s2, DGAMorphism.identity(s2.ring))
    assert same.entries == s2.entries
    cv = s2xs2_cobar_variant(8)
    f = collapse_to_s4(cv.ring)
    pushed = change_coefficients(cv, f)
    assert list(pushed.entries) == [("T_T", "B_B")]
    assert pushed.entries["T_T", "B_B"] == f.target.gen("sy")
    triv = change_coefficients(cv, to_trivial_ring(cv.ring))
    assert triv.entries == {}
    assert validate_mc(point_system(8)).ok


def test_change_coefficients_commutes_with_assemble():
    # the collapse induces a chain map between the assembled complexes:
    # pushing boundaries forward agrees with taking boundaries after pushing
    cv = s2xs2_cobar_variant(8)
    f = collapse_to_s4(cv.ring)
    pushed = change_coefficients(cv, f)
    src, tgt = assemble(cv, 8), assemble(pushed, 8)

    def push(n, v):
        out = 0
        for j in range(src.dim(n)):
            if v >> j & 1:
                w, x = src.labels[n][j]
                for k in f.apply_key(w).terms:
                    out ^= 1 << tgt.index[n][k, x]
        return out

    for n in range(1, 9):
        for j in range(src.dim(n)):
            v = 1 << j
            assert push(n - 1, src.boundary[n].apply(v)) == tgt.boundary[n].apply(push(n, v))


def test_change_coefficients_rejects_foreign_morphism():
    s2 = sphere_height(2, 8)
    other = cobar(sphere_coalgebra(2), 8)
    with pytest.raises(StructureError):
        change_coefficients(s2, DGAMorphism.identity(other))
