"""Obstruction theory for central crossed-module extensions: the boundary
map theta against an independent cochain-lifting (Bockstein) oracle, lift
independence, exactness of the six-term tail, and the numeric scalar-defect
classifier for unitary families."""

import numpy as np
import pytest

from xmodcoh.cohomology import Cochain, bar_differential, cohomology, \
    is_cocycle
from xmodcoh.coefficients import finite_abelian, rational_circle
from xmodcoh.crossed import (Cocycle1, abelian_shift, compute_H1,
                             trivial_cocycle)
from xmodcoh.errors import ResourceLimit
from xmodcoh.groups import (make_cyclic, make_product, make_symmetric,
                            trivial_group)
from xmodcoh.obstruction import (CentralXModExtension, canonical_lift,
                                 conj_action, induced_module,
                                 matrix_kernel_obstruction,
                                 obstruction_cocycle, sum_over_conjugacy,
                                 theta, theta_lift_sweep, verify_exactness)


def central_ext(inv=False):
    """Z/2 -> Z/4 -> Z/2 with base group 1, or Z/2 acting by inversion on
    the cover (and so trivially on both the kernel and the quotient)."""
    c4, c2 = make_cyclic(4), make_cyclic(2)
    if inv:
        g = c2
        action0 = ((0, 1, 2, 3), (0, 3, 2, 1))
        action1 = ((0, 1), (0, 1))
    else:
        g = trivial_group()
        action0 = (tuple(c4.elements()),)
        action1 = (tuple(c2.elements()),)
    return CentralXModExtension(
        g, c4, c2, (0, 1, 0, 1), (0,) * 4, (0,) * 2, action0, action1,
        label="C2-C4-C2" + ("-inv" if inv else ""))


BASE_GROUPS = {
    "C2": make_cyclic(2),
    "C4": make_cyclic(4),
    "V4": make_product(make_cyclic(2), make_cyclic(2)),
}


# ---------------------------------------------------------------------------
# extension axioms
# ---------------------------------------------------------------------------

def test_extension_constructions_are_valid():
    for inv in (False, True):
        ext = central_ext(inv)
        assert ext.violations() == []
        assert ext.kernel_elements() == (0, 2)
        assert ext.fibers() == {0: [0, 2], 1: [1, 3]}
        ext.morphism()  # must construct without raising


def test_extension_axioms_are_checked():
    c4, c2, one = make_cyclic(4), make_cyclic(2), trivial_group()
    triv4 = (tuple(c4.elements()),)
    triv2 = (tuple(c2.elements()),)
    with pytest.raises(ValueError, match="surjective"):
        CentralXModExtension(one, c4, c2, (0, 0, 0, 0), (0,) * 4, (0,) * 2,
                             triv4, triv2)
    with pytest.raises(ValueError, match="phi0"):
        CentralXModExtension(one, c4, c2, (0, 1, 1, 0), (0,) * 4, (0,) * 2,
                             triv4, triv2)
    # an identity cover over S3: the kernel of the zero map is all of S3,
    # which is neither central nor killed by the boundary
    s3 = make_symmetric(3)
    conj = tuple(tuple(s3.conj(a, x) for x in s3.elements())
                 for a in s3.elements())
    with pytest.raises(ValueError, match="not central"):
        CentralXModExtension(s3, s3, one, (0,) * 6,
                             tuple(s3.elements()), (0,), conj, ((0,),) * 6)


# ---------------------------------------------------------------------------
# theta against the cochain-lifting oracle
# ---------------------------------------------------------------------------

def bockstein_oracle_coords(ext, group, c, h3):
    """Independent route to theta: lift the u-table pointwise to {0, 1}
    inside Z/4, take the (possibly twisted) coboundary with plain mod-4
    arithmetic, check it lands in 2Z/4, halve, classify mod 2."""
    n = group.order
    act = ext.action0

    def lifted(g, h):
        v = c.u[g * n + h]
        assert ext.phi0[v % 2] == v
        return v  # {0,1} already sits inside Z/4 over phi0 = mod 2

    values = []
    for g in group.elements():
        for h in group.elements():
            for k in group.elements():
                gh, hk = group.mul[g][h], group.mul[h][k]
                d = (act[c.alpha[g]][lifted(h, k)] + lifted(g, hk)
                     - lifted(gh, k) - lifted(g, h)) % 4
                assert d in (0, 2), "coboundary of the lift must be 2-torsion"
                values.append((d // 2,))
    e = group.identity
    normalized = all(values[(g * n + h) * n + k] == (0,)
                     for g in group.elements() for h in group.elements()
                     for k in group.elements() if e in (g, h, k))
    return h3.classify(Cochain(3, tuple(values), normalized))


@pytest.mark.parametrize("gname", ["C2", "C4", "V4"])
@pytest.mark.parametrize("inv", [False, True])
def test_theta_matches_the_bockstein_oracle(gname, inv):
    group = BASE_GROUPS[gname]
    ext = central_ext(inv)
    h1 = compute_H1(group, ext.xmod1())
    h3 = cohomology(group, finite_abelian(group, (2,)), 3)
    for cls in h1.classes:
        ob = theta(ext, group, cls.representative, check_second_lift=True,
                   rng_seed=11)
        got = h3.classify(Cochain(3, ob.cocycle.values,
                                  ob.cocycle.normalized))
        want = bockstein_oracle_coords(ext, group, cls.representative, h3)
        assert got == want


def test_theta_class_data_is_consistent():
    group = make_cyclic(2)
    ext = central_ext()
    h1 = compute_H1(group, ext.xmod1())
    for cls in h1.classes:
        ob = theta(ext, group, cls.representative)
        assert is_cocycle(group, ob.induced.module, ob.cocycle)
        assert ob.coordinates == ob.h3.classify(ob.cocycle)
        if ob.is_zero:
            lam = ob.witness()
            assert lam is not None
            diff = bar_differential(group, ob.induced.module, lam)
            assert diff.values == ob.cocycle.values
        else:
            assert ob.witness() is None


def test_induced_module_basis_roundtrip():
    group = make_cyclic(2)
    ext = central_ext()
    ind = induced_module(ext, group, trivial_cocycle(group, ext.xmod1()))
    assert ind.module.factors == (2,)
    assert ind.to_vector(0) == (0,)
    assert ind.to_vector(2) == (1,)
    assert ind.from_vector((1,)) == 2
    with pytest.raises(ValueError, match="base cocycle invalid"):
        induced_module(ext, group, Cocycle1((1, 0), (0, 0, 0, 0)))


def test_theta_is_independent_of_the_lift():
    ext = central_ext()
    for gname in ("C2", "C4"):
        group = BASE_GROUPS[gname]
        h1 = compute_H1(group, ext.xmod1())
        for cls in h1.classes:
            sweep = theta_lift_sweep(ext, group, cls.representative)
            ob = theta(ext, group, cls.representative)
            assert sweep == [ob.coordinates]


def test_lift_sweep_budget_guard():
    ext = central_ext()
    group = BASE_GROUPS["V4"]
    c = trivial_cocycle(group, ext.xmod1())
    with pytest.raises(ResourceLimit):
        theta_lift_sweep(ext, group, c, budget=10)


def test_lift_validation():
    ext = central_ext()
    group = make_cyclic(2)
    c = trivial_cocycle(group, ext.xmod1())
    good = canonical_lift(ext, group, c)
    assert good == (0, 0, 0, 0)
    with pytest.raises(ValueError, match="wrong size"):
        theta(ext, group, c, lift=(0,))
    with pytest.raises(ValueError, match="does not cover"):
        theta(ext, group, c, lift=(0, 0, 0, 1))
    with pytest.raises(ValueError, match="normalized"):
        theta(ext, group, c, lift=(2, 0, 0, 0))
    # a non-canonical but valid lift gives the same class
    ob = theta(ext, group, c, lift=(0, 0, 0, 2))
    assert ob.coordinates == theta(ext, group, c).coordinates


# ---------------------------------------------------------------------------
# exactness
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("gname", ["C2", "C4", "V4"])
@pytest.mark.parametrize("inv", [False, True])
def test_obstruction_sequence_is_exact(gname, inv):
    group = BASE_GROUPS[gname]
    rep = verify_exactness(central_ext(inv), group)
    assert rep.exact
    assert rep.middle_counterexamples == ()
    assert rep.cover_counterexamples == ()
    assert set(rep.image_classes) == set(rep.zero_classes)
    assert set(rep.h2_image_classes) == set(rep.basepoint_preimage)


def test_exactness_report_matches_the_abelian_shift_sizes():
    group = BASE_GROUPS["V4"]
    rep = verify_exactness(central_ext(), group)
    shift = abelian_shift(group, central_ext().xmod1())
    assert rep.h1_quotient.size() == shift.h2.order
    assert rep.h2_order == cohomology(
        group, finite_abelian(group, (2,)), 2).order


# ---------------------------------------------------------------------------
# conjugation transport
# ---------------------------------------------------------------------------

def test_conjugation_preserves_obstruction_coordinates():
    ext = central_ext(inv=True)
    group = make_cyclic(2)
    h1 = compute_H1(group, ext.xmod1())
    for cls in h1.classes:
        ob = theta(ext, group, cls.representative)
        for gamma in ext.ggroup.elements():
            moved, ob2 = conj_action(ext, group, gamma,
                                     cls.representative, ob)
            assert h1.class_of(moved) == h1.class_of(cls.representative)
            assert ob2.coordinates == ob.coordinates


def test_conjugacy_sum_buckets_every_class_once():
    ext = central_ext(inv=True)
    group = make_cyclic(2)
    h1 = compute_H1(group, ext.xmod1())
    summary = sum_over_conjugacy(ext, group)
    seen = [i for bucket in summary.classes_by_label for i in bucket]
    assert sorted(seen) == list(range(h1.size()))
    # inversion is trivial on the kernel, so one module structure
    assert len(summary.labels) == 1
    assert summary.orbits == ((0,),)


# ---------------------------------------------------------------------------
# scalar-defect classifier for unitary families
# ---------------------------------------------------------------------------

def pauli_family():
    """The XZ projective family over Z/2 x Z/2 (index a*2 + b -> Z^a X^b)."""
    z = np.diag([1.0 + 0j, -1.0])
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    group = make_product(make_cyclic(2), make_cyclic(2))
    mats = [np.linalg.matrix_power(z, a) @ np.linalg.matrix_power(x, b)
            for a in range(2) for b in range(2)]
    return group, mats


def test_pauli_family_has_zero_class_with_witness():
    group, mats = pauli_family()
    rep = matrix_kernel_obstruction(group, mats)
    assert rep.dimension == 2
    assert rep.denominator == 8
    assert rep.is_zero
    assert rep.invariant_factors == (2, 2, 2)  # H^3(V4, Q/Z)
    assert rep.witness is not None
    assert rep.max_scalar_residual < 1e-12
    assert rep.max_snap_residual < 1e-12
    # matrix associativity forces the defect table to be an exact cocycle,
    # so the obstruction coboundary vanishes identically
    assert all(v == 0 for v in rep.omega.values)
    assert any(p != 0 for p in rep.defect_phases)
    qz = rational_circle(group)
    assert is_cocycle(group, qz, rep.omega)
    assert bar_differential(group, qz, rep.witness).values \
        == rep.omega.values


def test_honest_representation_has_no_defects():
    s3 = make_symmetric(3)
    mats = []
    for a in s3.elements():
        m = np.zeros((6, 6))
        for b in s3.elements():
            m[s3.mul[a][b], b] = 1.0
        mats.append(m)
    rep = matrix_kernel_obstruction(s3, mats)
    assert rep.is_zero
    assert rep.defect_phases == (0.0,) * 36
    assert all(v == 0 for v in rep.omega.values)


def test_scalar_perturbations_do_not_move_the_class():
    group, mats = pauli_family()
    base = matrix_kernel_obstruction(group, mats)
    rng = np.random.default_rng(5)
    for _ in range(5):
        phases = np.exp(2j * np.pi * rng.random(group.order))
        moved = [p * m for p, m in zip(phases, mats)]
        rep = matrix_kernel_obstruction(group, moved)
        assert rep.coordinates == base.coordinates
        assert rep.invariant_factors == base.invariant_factors
        assert rep.omega.values == base.omega.values


def test_identity_scalar_normalization_is_accepted():
    group, mats = pauli_family()
    mats = [m.copy() for m in mats]
    mats[group.identity] = 1j * mats[group.identity]
    rep = matrix_kernel_obstruction(group, mats)
    assert rep.is_zero


def test_snap_denominator_override():
    group, mats = pauli_family()
    rep = matrix_kernel_obstruction(group, mats, snap_denominator=4)
    assert rep.denominator == 4
    assert rep.is_zero


def test_matrix_family_validation():
    group, mats = pauli_family()
    with pytest.raises(ValueError, match="one matrix per group element"):
        matrix_kernel_obstruction(group, mats[:3])
    bad = [m.copy() for m in mats]
    bad[1] = np.array([[1, 1], [0, 1]], dtype=complex)
    with pytest.raises(ValueError, match="not unitary"):
        matrix_kernel_obstruction(group, bad)
    notscalar = [m.copy() for m in mats]
    notscalar[group.identity] = np.array([[0, 1], [1, 0]], dtype=complex)
    with pytest.raises(ValueError, match="identity matrix must be scalar"):
        matrix_kernel_obstruction(group, notscalar)
    c2 = make_cyclic(2)
    w = np.exp(2j * np.pi / 3)
    with pytest.raises(ValueError, match="deviate from scalars"):
        matrix_kernel_obstruction(
            c2, [np.eye(2, dtype=complex), np.diag([1.0 + 0j, w])])
