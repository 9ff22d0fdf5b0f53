"""Lifting obstructions for central extensions of crossed modules.

A central extension here is a surjection phi0: H0 ->> H1 of crossed modules
over the same group G (identity on G), whose kernel K is central in H0 and
killed by the boundary.  A 1-cocycle (alpha, u) on the quotient crossed
module acquires a degree-3 obstruction: choose a set-level lift v of u
through phi0 and measure its failure to satisfy the cocycle relation,

    omega(g,h,k) = alpha_g.v(h,k) * v(g,hk) * v(gh,k)^-1 * v(g,h)^-1 in K,

a 3-cocycle for the K-module structure induced by alpha.  Its class theta is
independent of the lift and of the representative; it vanishes exactly on
the image of H^1 of the covering crossed module.

The numeric variant extracts the same kind of class from a family of unitary
matrices indexed by the group whose products agree up to scalars.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .coefficients import AbelianCoefficients, finite_abelian, rational_circle
from .cohomology import (Cochain, CohomologyGroup, bar_differential,
                         cohomology, is_cocycle, zero_cochain)
from .crossed import (Cocycle1, CrossedModule, H1PointedSet, Witness1,
                      XModMorphism, cocycle_violations, compute_H1,
                      pushforward, transform_cocycle, trivial_cocycle)
from .errors import ResourceLimit
from .groups import FiniteGroup, abelian_basis


@lru_cache(maxsize=64)
def _h_cached(group, module, degree, denominator=None):
    """Reuse classification machinery across repeated identical targets."""
    return cohomology(group, module, degree, denominator=denominator)


# ---------------------------------------------------------------------------
# central extensions of crossed modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CentralXModExtension:
    """phi0: (H0 -> G) ->> (H1 -> G) with central kernel killed by boundary0."""

    ggroup: FiniteGroup
    h0group: FiniteGroup
    h1group: FiniteGroup
    phi0: tuple[int, ...]
    boundary0: tuple[int, ...]
    boundary1: tuple[int, ...]
    action0: tuple[tuple[int, ...], ...]
    action1: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self):
        problems = self.violations()
        if problems:
            raise ValueError("not a central crossed-module extension: "
                             + "; ".join(problems))

    def violations(self) -> list[str]:
        from .crossed import xmod_violations
        from .groups import hom_violations
        problems = []
        problems += [f"covering module: {p}" for p in xmod_violations(
            self.h0group, self.ggroup, self.boundary0, self.action0)]
        problems += [f"quotient module: {p}" for p in xmod_violations(
            self.h1group, self.ggroup, self.boundary1, self.action1)]
        problems += [f"phi0: {p}" for p in hom_violations(
            self.h0group, self.h1group, self.phi0)]
        if problems:
            return problems
        if len(set(self.phi0)) != self.h1group.order:
            problems.append("phi0 must be surjective")
        for a in self.h0group.elements():
            if self.boundary0[a] != self.boundary1[self.phi0[a]]:
                problems.append(f"boundary0 != boundary1 o phi0 at {a}")
        for g in self.ggroup.elements():
            for a in self.h0group.elements():
                if self.phi0[self.action0[g][a]] != \
                        self.action1[g][self.phi0[a]]:
                    problems.append(f"phi0 is not equivariant at ({g}, {a})")
        e1 = self.h1group.identity
        kernel = [a for a in self.h0group.elements() if self.phi0[a] == e1]
        for k in kernel:
            for a in self.h0group.elements():
                if self.h0group.mul[k][a] != self.h0group.mul[a][k]:
                    problems.append(f"kernel element {k} is not central")
                    break
        eg = self.ggroup.identity
        for k in kernel:
            if self.boundary0[k] != eg:
                problems.append(f"kernel element {k} survives boundary0")
        return problems

    def xmod0(self) -> CrossedModule:
        return CrossedModule(self.h0group, self.ggroup, self.boundary0,
                             self.action0, (self.label or "ext") + ".cover")

    def xmod1(self) -> CrossedModule:
        return CrossedModule(self.h1group, self.ggroup, self.boundary1,
                             self.action1, (self.label or "ext") + ".quot")

    def morphism(self) -> XModMorphism:
        return XModMorphism(self.xmod0(), self.xmod1(), self.phi0,
                            tuple(self.ggroup.elements()))

    def kernel_elements(self) -> tuple[int, ...]:
        e1 = self.h1group.identity
        return tuple(a for a in self.h0group.elements()
                     if self.phi0[a] == e1)

    def fibers(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {b: [] for b in self.h1group.elements()}
        for a in self.h0group.elements():
            out[self.phi0[a]].append(a)
        return out


@dataclass(frozen=True)
class InducedModule:
    """The kernel of phi0 as a module over the base group via a 1-cocycle.

    The action of a base-group element g is action0 of alpha_g restricted to
    the kernel, written in an invariant-factor basis.  ``module_label`` is
    the canonical key: the tuple of action matrices.
    """

    extension: CentralXModExtension
    base_cocycle: Cocycle1
    module: AbelianCoefficients
    basis: object  # AbelianBasis of the kernel inside h0group

    def to_vector(self, k_elem: int) -> tuple[int, ...]:
        return self.basis.vector_of(k_elem)

    def from_vector(self, vec) -> int:
        return self.basis.element_of(vec)

    @property
    def module_label(self) -> tuple:
        return self.module.action


def induced_module(ext: CentralXModExtension, group: FiniteGroup,
                   c: Cocycle1) -> InducedModule:
    problems = cocycle_violations(group, ext.xmod1(), c)
    if problems:
        raise ValueError("base cocycle invalid: " + "; ".join(problems))
    kernel = ext.kernel_elements()
    basis = abelian_basis(ext.h0group, kernel)
    kset = set(kernel)
    k = len(basis.orders)
    mats = []
    for g in group.elements():
        a = c.alpha[g]
        cols = []
        for gen in basis.gens:
            img = ext.action0[a][gen]
            if img not in kset:
                raise ValueError(
                    f"action of alpha_{g} does not preserve the kernel")
            cols.append(basis.vector_of(img))
        mats.append(tuple(tuple(cols[j][i] for j in range(k))
                          for i in range(k)))
    module = finite_abelian(group, basis.orders, tuple(mats),
                            label="ker(phi0)")
    return InducedModule(ext, c, module, basis)


# ---------------------------------------------------------------------------
# the boundary map theta
# ---------------------------------------------------------------------------

@dataclass
class ObstructionClass:
    """theta of a 1-cocycle: a classified degree-3 class over the kernel."""

    induced: InducedModule
    h3: CohomologyGroup
    cocycle: Cochain
    coordinates: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def witness(self) -> Cochain | None:
        return self.h3.coboundary_witness(self.cocycle)


def canonical_lift(ext: CentralXModExtension, group: FiniteGroup,
                   c: Cocycle1) -> tuple[int, ...]:
    """Least-preimage set-level lift of the u-table, normalized."""
    n = group.order
    fibers = ext.fibers()
    e = group.identity
    e0 = ext.h0group.identity
    out = []
    for g in group.elements():
        for h in group.elements():
            if g == e or h == e:
                out.append(e0)
            else:
                out.append(min(fibers[c.u[g * n + h]]))
    return tuple(out)


def _check_lift(ext: CentralXModExtension, group: FiniteGroup,
                c: Cocycle1, lift) -> None:
    n = group.order
    e = group.identity
    e0 = ext.h0group.identity
    if len(lift) != n * n:
        raise ValueError("lift table has the wrong size")
    for g in group.elements():
        for h in group.elements():
            v = lift[g * n + h]
            if ext.phi0[v] != c.u[g * n + h]:
                raise ValueError(f"lift does not cover u at ({g}, {h})")
            if (g == e or h == e) and v != e0:
                raise ValueError("lift must be normalized")


def obstruction_cocycle(ext: CentralXModExtension, group: FiniteGroup,
                        c: Cocycle1, lift, induced: InducedModule) -> Cochain:
    """omega(g,h,k) as a degree-3 cochain over the induced kernel module."""
    n = group.order
    h0 = ext.h0group
    kset = set(ext.kernel_elements())
    values = []
    for g in group.elements():
        for h in group.elements():
            for k in group.elements():
                hk = group.mul[h][k]
                gh = group.mul[g][h]
                w = h0.mul[ext.action0[c.alpha[g]][lift[h * n + k]]][
                    lift[g * n + hk]]
                w = h0.mul[w][h0.inv[lift[gh * n + k]]]
                w = h0.mul[w][h0.inv[lift[g * n + h]]]
                if w not in kset:
                    raise RuntimeError(
                        f"obstruction value escapes the kernel at "
                        f"({g}, {h}, {k})")
                values.append(induced.to_vector(w))
    values = tuple(values)
    normalized = all(
        not any(values[(g * n + h) * n + k])
        for g in group.elements() for h in group.elements()
        for k in group.elements() if group.identity in (g, h, k))
    return Cochain(3, values, normalized)


def theta(ext: CentralXModExtension, group: FiniteGroup, c: Cocycle1,
          lift=None, check_second_lift: bool = False,
          rng_seed: int = 0) -> ObstructionClass:
    """The obstruction class of a 1-cocycle on the quotient crossed module.

    ``lift`` overrides the canonical least-preimage lift.  With
    ``check_second_lift`` a pseudorandom second lift is used to recompute the
    class, and a mismatch raises (the class must not depend on the lift).
    """
    induced = induced_module(ext, group, c)
    if lift is None:
        lift = canonical_lift(ext, group, c)
    _check_lift(ext, group, c, lift)
    omega = obstruction_cocycle(ext, group, c, lift, induced)
    if not is_cocycle(group, induced.module, omega):
        raise RuntimeError("obstruction cochain is not a 3-cocycle")
    h3 = _h_cached(group, induced.module, 3)
    coords = h3.classify(omega)
    if check_second_lift:
        rng = np.random.default_rng(rng_seed)
        fibers = ext.fibers()
        n = group.order
        e = group.identity
        e0 = ext.h0group.identity
        other = []
        for g in group.elements():
            for h in group.elements():
                if g == e or h == e:
                    other.append(e0)
                else:
                    fiber = fibers[c.u[g * n + h]]
                    other.append(fiber[int(rng.integers(len(fiber)))])
        omega2 = obstruction_cocycle(ext, group, c, tuple(other), induced)
        if h3.classify(omega2) != coords:
            raise RuntimeError("theta depends on the chosen lift")
    return ObstructionClass(induced, h3, omega, coords)


def theta_lift_sweep(ext: CentralXModExtension, group: FiniteGroup,
                     c: Cocycle1, budget: int = 1_000_000) -> list[tuple]:
    """Classes of omega over every normalized lift (should be a singleton)."""
    induced = induced_module(ext, group, c)
    h3 = _h_cached(group, induced.module, 3)
    n = group.order
    e = group.identity
    e0 = ext.h0group.identity
    fibers = ext.fibers()
    free = [(g, h) for g in group.elements() for h in group.elements()
            if g != e and h != e]
    total = 1
    for g, h in free:
        total *= len(fibers[c.u[g * n + h]])
        if total > budget:
            raise ResourceLimit("lift sweep size", total, budget)
    seen = set()
    for choice in itertools.product(
            *[fibers[c.u[g * n + h]] for (g, h) in free]):
        lift = [e0] * (n * n)
        for (g, h), v in zip(free, choice):
            lift[g * n + h] = v
        omega = obstruction_cocycle(ext, group, c, tuple(lift), induced)
        seen.add(h3.classify(omega))
    return sorted(seen)


def conj_action(ext: CentralXModExtension, group: FiniteGroup, gamma: int,
                c: Cocycle1, o: ObstructionClass | None = None
                ) -> tuple[Cocycle1, ObstructionClass]:
    """Transport a cocycle and its obstruction class along gamma in G.

    The transported cocycle is (gamma alpha gamma^-1, gamma.u); the
    obstruction cocycle transports valuewise by the action of gamma on the
    kernel, classified in the transported module.
    """
    x1 = ext.xmod1()
    w_triv = (x1.hgroup.identity,) * group.order
    c2 = transform_cocycle(group, x1, c, gamma, w_triv)
    if o is None:
        o = theta(ext, group, c)
    ind2 = induced_module(ext, group, c2)
    h3_2 = _h_cached(group, ind2.module, 3)
    n = group.order
    vals = []
    for idx in range(n ** 3):
        vec = o.cocycle.values[idx]
        k_elem = o.induced.from_vector(vec)
        vals.append(ind2.to_vector(ext.action0[gamma][k_elem]))
    moved = Cochain(3, tuple(vals), o.cocycle.normalized)
    coords = h3_2.classify(moved)
    return c2, ObstructionClass(ind2, h3_2, moved, coords)


# ---------------------------------------------------------------------------
# exactness of   H^2(G, K) -> H^1(cover) -> H^1(quotient) --theta--> H^3
# ---------------------------------------------------------------------------

@dataclass
class ExactnessReport:
    h1_cover: H1PointedSet
    h1_quotient: H1PointedSet
    push_map: tuple[int, ...]
    theta_zero: tuple[bool, ...]
    image_classes: tuple[int, ...]
    zero_classes: tuple[int, ...]
    exact_at_quotient: bool
    middle_counterexamples: tuple
    h2_order: int
    h2_image_classes: tuple[int, ...]
    basepoint_preimage: tuple[int, ...]
    exact_at_cover: bool
    cover_counterexamples: tuple

    @property
    def exact(self) -> bool:
        return self.exact_at_quotient and self.exact_at_cover


def verify_exactness(ext: CentralXModExtension, group: FiniteGroup,
                     strict: bool = False,
                     budget: int = 100_000_000) -> ExactnessReport:
    """Check both exactness statements of the obstruction sequence.

    At H^1 of the quotient: the pushforward image must equal theta^-1(0).
    At H^1 of the cover: the classes arriving from H^2(group, kernel)
    (trivial action, embedded via alpha = 1) must be exactly the classes
    pushing to the basepoint.
    """
    morphism = ext.morphism()
    h1_cover = compute_H1(group, ext.xmod0(), strict=strict, budget=budget)
    h1_quot = compute_H1(group, ext.xmod1(), strict=strict, budget=budget)
    push_map = tuple(
        h1_quot.class_of(pushforward(morphism, group, cls.representative))
        for cls in h1_cover.classes)
    theta_zero = tuple(
        theta(ext, group, cls.representative).is_zero
        for cls in h1_quot.classes)
    image = tuple(sorted(set(push_map)))
    zero = tuple(i for i, z in enumerate(theta_zero) if z)
    mid_bad = []
    for i in image:
        if not theta_zero[i]:
            mid_bad.append(("image class has nonzero theta", i))
    for i in zero:
        if i not in image:
            mid_bad.append(("theta-zero class misses the image", i))

    kernel = ext.kernel_elements()
    basis = abelian_basis(ext.h0group, kernel)
    module2 = finite_abelian(group, basis.orders)
    h2 = _h_cached(group, module2, 2)
    n = group.order
    h2_image = set()
    for coords in h2.all_classes():
        z = h2.representative_of(coords)
        u = tuple(basis.element_of(z.values[g * n + h])
                  for g in group.elements() for h in group.elements())
        cocycle = Cocycle1((ext.ggroup.identity,) * n, u)
        problems = cocycle_violations(group, ext.xmod0(), cocycle)
        if problems:
            raise RuntimeError("kernel class embeds badly: "
                               + "; ".join(problems))
        h2_image.add(h1_cover.class_of(cocycle))
    base_pre = tuple(i for i, j in enumerate(push_map)
                     if j == h1_quot.basepoint)
    cover_bad = []
    for i in sorted(h2_image):
        if i not in base_pre:
            cover_bad.append(("kernel-class image pushes forward "
                              "nontrivially", i))
    for i in base_pre:
        if i not in h2_image:
            cover_bad.append(("basepoint preimage misses the kernel image",
                              i))
    return ExactnessReport(
        h1_cover=h1_cover, h1_quotient=h1_quot, push_map=push_map,
        theta_zero=theta_zero, image_classes=image, zero_classes=zero,
        exact_at_quotient=not mid_bad,
        middle_counterexamples=tuple(mid_bad),
        h2_order=h2.order, h2_image_classes=tuple(sorted(h2_image)),
        basepoint_preimage=base_pre, exact_at_cover=not cover_bad,
        cover_counterexamples=tuple(cover_bad))


@dataclass
class ConjugacySum:
    """H^1 of the quotient, bucketed by induced kernel-module structure."""

    labels: tuple            # distinct module labels (action-matrix tuples)
    classes_by_label: tuple  # tuple of class-index tuples, parallel to labels
    orbits: tuple            # tuples of label indices identified by G


def sum_over_conjugacy(ext: CentralXModExtension, group: FiniteGroup,
                       strict: bool = False,
                       budget: int = 100_000_000) -> ConjugacySum:
    """Bucket H^1 classes of the quotient by their induced module structure.

    Module structures are treated as equal only when their action tables are
    equal; the G-orbit identifications among the labels are reported
    alongside.
    """
    h1 = compute_H1(group, ext.xmod1(), strict=strict, budget=budget)
    labels: list = []
    label_index: dict = {}
    buckets: dict[int, list[int]] = {}
    for i, cls in enumerate(h1.classes):
        ind = induced_module(ext, group, cls.representative)
        key = ind.module_label
        if key not in label_index:
            label_index[key] = len(labels)
            labels.append(key)
            buckets[label_index[key]] = []
        buckets[label_index[key]].append(i)
    # G-orbits on labels: gamma moves the cocycle, hence the module
    parent = list(range(len(labels)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    x1 = ext.xmod1()
    w_triv = (x1.hgroup.identity,) * group.order
    for i, cls in enumerate(h1.classes):
        key0 = label_index[induced_module(
            ext, group, cls.representative).module_label]
        for gamma in ext.ggroup.elements():
            moved = transform_cocycle(group, x1, cls.representative,
                                      gamma, w_triv)
            key1 = label_index.get(
                induced_module(ext, group, moved).module_label)
            if key1 is None:
                continue
            a, b = find(key0), find(key1)
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbit_map: dict[int, list[int]] = {}
    for i in range(len(labels)):
        orbit_map.setdefault(find(i), []).append(i)
    orbits = tuple(tuple(v) for _, v in sorted(orbit_map.items()))
    return ConjugacySum(tuple(labels),
                        tuple(tuple(buckets[i]) for i in range(len(labels))),
                        orbits)


# ---------------------------------------------------------------------------
# numeric kernel obstruction from unitary families
# ---------------------------------------------------------------------------

@dataclass
class KernelObstructionReport:
    """Result of extracting the scalar-defect class of a matrix family."""

    dimension: int
    denominator: int
    module_label: str
    invariant_factors: tuple[int, ...]
    coordinates: tuple[int, ...]
    is_zero: bool
    max_scalar_residual: float
    max_snap_residual: float
    defect_phases: tuple        # raw scalar-defect phases in [0, 1), floats
    omega: Cochain              # snapped degree-3 obstruction cocycle
    h3: CohomologyGroup
    witness: Cochain | None     # lambda with d(lambda) = omega, if zero

    def representative(self) -> Cochain:
        return self.h3.representative_of(self.coordinates)


def matrix_kernel_obstruction(group: FiniteGroup, mats, tol: float = 1e-8,
                              snap_denominator: int | None = None
                              ) -> KernelObstructionReport:
    """Classify the scalar defect of a projective unitary family.

    ``mats`` assigns each group element a unitary matrix; products must agree
    with the group law up to scalars.  The scalar defects form a phase table
    whose coboundary is the obstruction 3-cocycle over Q/Z (with trivial
    induced action, since conjugation is trivial on scalars); the cocycle's
    phases are snapped to ``snap_denominator`` (default dim * |group|, which
    bounds the scalar orders of finite projective families) and the class is
    computed exactly.
    """
    mats = [np.asarray(m, dtype=complex) for m in mats]
    if len(mats) != group.order:
        raise ValueError("need one matrix per group element")
    n_dim = mats[0].shape[0]
    for i, m in enumerate(mats):
        if m.shape != (n_dim, n_dim):
            raise ValueError(f"matrix {i} has shape {m.shape}")
        if np.linalg.norm(m @ m.conj().T - np.eye(n_dim), 2) > 1e-10:
            raise ValueError(f"matrix {i} is not unitary within 1e-10")
    e = group.identity
    ce = np.trace(mats[e]) / n_dim
    if abs(abs(ce) - 1) > tol or \
            np.linalg.norm(mats[e] - ce * np.eye(n_dim), 2) > tol:
        raise ValueError("identity matrix must be scalar")
    mats = [m / ce if i == e else m for i, m in enumerate(mats)]

    n = group.order
    denom = snap_denominator if snap_denominator else n_dim * n
    u_float = [0.0] * (n * n)
    max_scalar = 0.0
    for g in group.elements():
        for h in group.elements():
            gh = group.mul[g][h]
            defect = mats[g] @ mats[h] @ mats[gh].conj().T
            c = np.trace(defect) / n_dim
            resid = max(abs(abs(c) - 1),
                        np.linalg.norm(defect - c * np.eye(n_dim), 2))
            max_scalar = max(max_scalar, float(resid))
            if resid > tol:
                raise ValueError(
                    f"products deviate from scalars at ({g}, {h}): "
                    f"residual {resid:.3e} > {tol:.1e}")
            u_float[g * n + h] = float(np.angle(c)) / (2 * np.pi) % 1.0

    # the obstruction is the coboundary of the defect phases; the defects
    # themselves shift by an exact coboundary under scalar re-lifting, so
    # only omega (never the raw table) is guaranteed to sit on the grid
    module = rational_circle(group)
    omega_float = []
    for g in group.elements():
        for h in group.elements():
            for k in group.elements():
                omega_float.append(
                    (u_float[h * n + k]
                     + u_float[g * n + group.mul[h][k]]
                     - u_float[group.mul[g][h] * n + k]
                     - u_float[g * n + h]) % 1.0)
    max_snap = 0.0
    phases = []
    for idx, x in enumerate(omega_float):
        r = round(x * denom)
        snapped = Fraction(r, denom) % 1
        dist = abs(x - r / denom)
        dist = min(dist, 1 - dist) * 2 * np.pi
        max_snap = max(max_snap, float(dist))
        if dist > tol:
            g, rest = divmod(idx, n * n)
            h, k = divmod(rest, n)
            raise ValueError(
                f"obstruction phase {x} at ({g}, {h}, {k}) is {dist:.3e} "
                f"away from the 1/{denom} grid; this points to numeric "
                "precision loss")
        phases.append(snapped)
    omega = Cochain(3, tuple(phases),
                    all(phases[(g * n + h) * n + k] == 0
                        for g in group.elements() for h in group.elements()
                        for k in group.elements() if e in (g, h, k)))
    h3, coords, witness = _classify_circle_cocycle(group, denom, omega)
    return KernelObstructionReport(
        dimension=n_dim, denominator=denom, module_label="Q/Z",
        invariant_factors=h3.invariant_factors, coordinates=coords,
        is_zero=not any(coords), max_scalar_residual=max_scalar,
        max_snap_residual=max_snap, defect_phases=tuple(u_float),
        omega=omega, h3=h3, witness=witness)


@lru_cache(maxsize=256)
def _classify_circle_cocycle(group: FiniteGroup, denom: int,
                             omega: Cochain):
    """Classify an exact circle-valued 3-cocycle (cached: scalar-perturbed
    lifts of one kernel all produce the identical snapped cocycle)."""
    module = rational_circle(group)
    if not is_cocycle(group, module, omega):
        raise RuntimeError("scalar-defect coboundary is not a cocycle")
    h3 = _h_cached(group, module, 3, denominator=lcm(group.order, denom))
    return h3, h3.classify(omega), h3.coboundary_witness(omega)
