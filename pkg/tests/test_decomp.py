import itertools
import random

import pytest

from equidim import (
    AffineCell,
    DecompConfig,
    DecompTrace,
    GCache,
    PolyRing,
    PrimeField,
    buchberger,
    cell_points,
    enumerate_points,
    equidim,
    groebner_of,
    ideal_member,
    order_input,
    radical_member,
    remove,
    remove_prime,
    saturate_seq,
    split,
)
from equidim.cells import make_witness


@pytest.fixture
def R4():
    return PolyRing(PrimeField(65521), ("x", "y", "z", "w"))


@pytest.fixture
def R3():
    return PolyRing(PrimeField(65521), ("x", "y", "z"))


def gb_cell(ring, F, G=()):
    return AffineCell(ring, "gb", groebner_of(ring, list(F)), tuple(G))


def wit_cell(ring, F, G, d, rng):
    W, forms = make_witness(ring, tuple(F), tuple(G), d, rng)
    return AffineCell(ring, "witness", tuple(F), tuple(G), W, d, forms)


def cells_signature(cells):
    return sorted(
        (tuple(sorted(str(g) for g in c.basis().gens)),
         tuple(sorted(str(g) for g in c.G)))
        for c in cells
    )


def assert_disjoint(cells, ring):
    for a, b in itertools.combinations(cells, 2):
        merged = groebner_of(ring, list(a.basis().gens) + list(b.basis().gens))
        merged = saturate_seq(merged, a.G + b.G)
        assert merged.is_unit, f"cells overlap: {a} vs {b}"


# -- split goldens ------------------------------------------------------------

def test_split_golden_two_quadric_monomials(R4):
    x, y, z, w = R4.gens()
    for backend in ("gb", "witness"):
        rng = random.Random(7)
        if backend == "gb":
            X = gb_cell(R4, [x * y, z * w])
        else:
            X = wit_cell(R4, [x * y, z * w], [], 2, rng)
        cells = split(X, x * z, rng=rng)
        assert cells_signature(cells) == [
            (("x", "z*w"), ()),
            (("y", "z"), ("x",)),
        ], backend


def test_split_golden_single_quadric(R3):
    x, y, z = R3.gens()
    for backend in ("gb", "witness"):
        rng = random.Random(11)
        if backend == "gb":
            X = gb_cell(R3, [x * y])
        else:
            X = wit_cell(R3, [x * y], [], 2, rng)
        cells = split(X, x * z, rng=rng)
        assert cells_signature(cells) == [
            (("x",), ()),
            (("y", "z"), ("x",)),
        ], backend


def test_split_proper_hyperplane(R3):
    x, _, _ = R3.gens()
    X = AffineCell.full_space(R3, "gb")
    cells = split(X, x, rng=random.Random(0))
    assert cells_signature(cells) == [(("x",), ())]


def test_split_f_in_ideal_returns_cell(R3):
    x, _, _ = R3.gens()
    X = gb_cell(R3, [x])
    cells = split(X, x, rng=random.Random(0))
    assert cells_signature(cells) == [(("x",), ())]


def test_split_empty_cell_gives_nothing(R3):
    X = gb_cell(R3, [R3.one()])
    assert split(X, R3.var(0), rng=random.Random(0)) == []


def test_split_partition_properties(R4):
    """Disjointness, covering over a tiny field, and ideal growth."""
    ring = PolyRing(PrimeField(5), ("x", "y", "z"))
    x, y, z = ring.gens()
    X = gb_cell(ring, [x * y])
    f = x * z
    cells = split(X, f, rng=random.Random(1))
    assert_disjoint(cells, ring)
    target = enumerate_points(ring, [x * y, x * z])
    seen = set()
    for c in cells:
        pts = cell_points(c).points
        assert not (seen & pts)
        seen |= pts
    assert seen == target.points
    for c in cells:
        for g in X.basis():
            assert ideal_member(g, c.basis())
        assert radical_member(f, c.basis())


# -- remove / remove_prime ------------------------------------------------------

def test_remove_empty_H(R3):
    X = AffineCell.full_space(R3, "gb")
    assert remove(X, []) == []
    assert remove_prime(X, []) == []


def test_remove_single_hypersurface(R3):
    x, _, _ = R3.gens()
    X = AffineCell.full_space(R3, "gb")
    out = remove(X, [x])
    assert len(out) == 1
    assert out[0].basis().is_zero_ideal
    assert out[0].G == (x,)
    out2 = remove_prime(X, [x])
    assert cells_signature(out) == cells_signature(out2)


def test_remove_two_hyperplanes_golden():
    ring = PolyRing(PrimeField(65521), ("x", "y"))
    x, y = ring.gens()
    X = AffineCell.full_space(ring, "gb")
    out = remove(X, [x, y])
    assert cells_signature(out) == [((), ("x",)), (("x",), ("y",))]


def test_remove_prime_partitions_complement():
    ring = PolyRing(PrimeField(5), ("x", "y"))
    x, y = ring.gens()
    X = AffineCell.full_space(ring, "gb")
    for variant in (remove, remove_prime):
        out = variant(X, [x, y], rng=random.Random(3))
        assert_disjoint(out, ring)
        target = enumerate_points(ring, [], [])  # all points
        hole = enumerate_points(ring, [x, y])
        covered = set()
        for c in out:
            covered |= cell_points(c).points
        assert covered == target.points - hole.points


def test_remove_variants_agree_setwise():
    ring = PolyRing(PrimeField(7), ("x", "y", "z"))
    x, y, z = ring.gens()
    X = gb_cell(ring, [x * y * z])
    H = [x - 1, y]
    pts = set()
    for variant in (remove, remove_prime):
        covered = set()
        out = variant(X, H, rng=random.Random(5))
        assert_disjoint(out, ring)
        for c in out:
            covered |= cell_points(c).points
        pts.add(frozenset(covered))
    assert len(pts) == 1


# -- order_input -------------------------------------------------------------------

def test_order_input_examples(R3):
    x, y, z = R3.gens()
    ordered, perm = order_input([x**2 + y, x], "degree")
    assert ordered == [x, x**2 + y] and perm == (1, 0)
    ordered, perm = order_input([x + y + z, x * y], "support")
    assert ordered == [x * y, x + y + z] and perm == (1, 0)
    F = [x * y, x, y + z]
    ordered, perm = order_input(F, "asis")
    assert ordered == F and perm == (0, 1, 2)


def test_order_input_stable(R3):
    x, y, z = R3.gens()
    F = [x, y, z]  # all degree 1: stability keeps the original order
    ordered, perm = order_input(F, "degree")
    assert ordered == F and perm == (0, 1, 2)


# -- equidim -----------------------------------------------------------------------

def test_equidim_empty_system(R3):
    out = equidim([], R3, DecompConfig(backend="gb"))
    assert len(out) == 1
    assert out.annotations == ((3, 1),)


def test_equidim_single_hypersurface(R4):
    x, y, _, _ = R4.gens()
    out = equidim([x * y], R4, DecompConfig(backend="witness", seed=2))
    assert len(out) == 1
    assert out.annotations == ((3, 2),)


def test_equidim_example_system_both_backends(R4):
    x, y, z, w = R4.gens()
    F = [x * y, z * w, x * z]
    for backend in ("gb", "witness"):
        out = equidim(F, R4, DecompConfig(backend=backend, seed=3))
        assert len(out) == 2
        assert out.annotations == ((2, 2), (2, 1))
        assert out.backend == backend
        sig = cells_signature(out.cells)
        assert sig == [(("x", "z*w"), ()), (("y", "z"), ("x",))]


def test_equidim_monomial_dimensions(R4):
    # minimal primes of <xy, zw, xz>: dimension 2 with total degree 3
    x, y, z, w = R4.gens()
    out = equidim([x * y, z * w, x * z], R4, DecompConfig(backend="gb", seed=1))
    assert out.degrees_by_dimension() == {2: 3}


def test_equidim_every_input_vanishes_on_cells(R4):
    x, y, z, w = R4.gens()
    F = [x * y - z * w, x * z]
    out = equidim(F, R4, DecompConfig(backend="witness", seed=9))
    for cell in out:
        for f in F:
            assert radical_member(f, cell.basis())


def test_equidim_deterministic(R4):
    x, y, z, w = R4.gens()
    F = [x * y, z * w, x * z]
    a = equidim(F, R4, DecompConfig(backend="witness", seed=5))
    b = equidim(F, R4, DecompConfig(backend="witness", seed=5))
    assert cells_signature(a.cells) == cells_signature(b.cells)
    assert a.annotations == b.annotations
    assert [c.witness_forms for c in a.cells] == [c.witness_forms for c in b.cells]


def test_equidim_classic_remove_agrees(R4):
    x, y, z, w = R4.gens()
    F = [x * y, z * w, x * z]
    fast = equidim(F, R4, DecompConfig(backend="gb", seed=1))
    classic = equidim(F, R4, DecompConfig(backend="gb", seed=1, use_classic_remove=True))
    # same variety, both partitions; compare per-dimension degrees
    assert fast.degrees_by_dimension() == classic.degrees_by_dimension()


def test_equidim_nonreduced_input(R3):
    x, y, z = R3.gens()
    out = equidim([x**2], R3, DecompConfig(backend="gb", seed=1))
    assert len(out) == 1
    assert out.annotations == ((2, 2),)  # scheme-theoretic degree of the double plane


def test_equidim_inconsistent_system(R3):
    out = equidim([R3.one()], R3, DecompConfig(backend="gb"))
    assert len(out) == 0


def test_trace_events_dimension_law(R4):
    """Proper cuts drop the dimension by exactly one (witness tags)."""
    x, y, z, w = R4.gens()
    trace = DecompTrace()
    equidim([x * y, z * w, x * z], R4,
            DecompConfig(backend="witness", seed=3), trace=trace)
    assert trace.proper, "expected at least one proper branch"
    for parent, child, f in trace.proper:
        if child is not None:
            assert child.d == parent.d - 1
    assert trace.improper, "expected at least one improper branch"
    for parent, g, pretend in trace.improper:
        assert not parent.rad_member(g)


def test_gcache_snapshot_semantics(R3):
    x, y, z = R3.gens()
    base = GCache()
    ext = base.extended([x, y])
    assert base.candidates() == []
    assert [str(f) for f in ext.candidates()] == ["x", "y"]
    ext2 = ext.extended([z])
    assert [str(f) for f in ext.candidates()] == ["x", "y"]
    assert len(ext2.candidates()) == 3


def test_gcache_selection_order(R3):
    x, y, z = R3.gens()
    cache = GCache().extended([x * y + z, x, z**2])
    cands = cache.candidates()
    # smallest degree first, then fewer terms, then insertion position
    assert [str(f) for f in cands] == ["x", "z^2", "x*y + z"]
