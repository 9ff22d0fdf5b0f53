"""Cohomology of a finite group with abelian coefficients (degrees 0..4).

Cochains are full tables on tuples of group elements; cohomology is computed
on the normalized subcomplex (cochains vanishing when any argument is the
identity, which computes the same groups) by exact integer lattice algebra:
the cocycle lattice K and coboundary lattice L are extracted with Smith
normal forms and the quotient K/L is read off a third Smith form, which also
yields generator representatives, classification of arbitrary cocycles, and
coboundary witnesses.

Rational-circle (Q/Z) coefficients reduce to the finite model (1/m)Z/Z at a
working denominator m.  Because every class in H^n(G, Q/Z) is |G|-torsion,
the image of H^n at denominator m in H^n at denominator m*|G| is already the
exact answer for m a multiple of |G| (one saturation step computes the full
kernel of the map to the colimit); the implementation reports that image.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from . import intlinalg as il
from . import modsnf
from .coefficients import CIRCLE, FINITE, AbelianCoefficients
from .errors import ResourceLimit
from .groups import FiniteGroup


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cochain:
    """A map (group)^degree -> coefficients, stored as a flat table.

    The table is indexed in base ``order`` with the first argument most
    significant.  A degree-0 cochain has a single entry.
    """

    degree: int
    values: tuple
    normalized: bool


def tuple_index(order: int, args) -> int:
    idx = 0
    for a in args:
        idx = idx * order + a
    return idx


def index_to_tuple(order: int, degree: int, idx: int) -> tuple[int, ...]:
    out = []
    for _ in range(degree):
        idx, r = divmod(idx, order)
        out.append(r)
    return tuple(reversed(out))


def evaluate(group: FiniteGroup, c: Cochain, args) -> object:
    return c.values[tuple_index(group.order, args)]


def _check_normalized(group: FiniteGroup, module: AbelianCoefficients,
                      degree: int, values) -> bool:
    e = group.identity
    order = group.order
    for idx, v in enumerate(values):
        if e in index_to_tuple(order, degree, idx) and not module.is_zero(v):
            return False
    return True


def cochain_from_function(group: FiniteGroup, module: AbelianCoefficients,
                          degree: int, fn) -> Cochain:
    order = group.order
    values = tuple(
        module.reduce(fn(*index_to_tuple(order, degree, idx)))
        for idx in range(order ** degree))
    return Cochain(degree, values,
                   _check_normalized(group, module, degree, values))


def zero_cochain(group: FiniteGroup, module: AbelianCoefficients,
                 degree: int) -> Cochain:
    return Cochain(degree, (module.zero(),) * (group.order ** degree), True)


def add_cochains(group: FiniteGroup, module: AbelianCoefficients,
                 a: Cochain, b: Cochain) -> Cochain:
    if a.degree != b.degree:
        raise ValueError("cochain degrees differ")
    values = tuple(module.add(x, y) for x, y in zip(a.values, b.values))
    return Cochain(a.degree, values,
                   _check_normalized(group, module, a.degree, values))


def scale_cochain(group: FiniteGroup, module: AbelianCoefficients,
                  k: int, a: Cochain) -> Cochain:
    values = tuple(module.scale(k, x) for x in a.values)
    return Cochain(a.degree, values,
                   _check_normalized(group, module, a.degree, values))


def sub_cochains(group: FiniteGroup, module: AbelianCoefficients,
                 a: Cochain, b: Cochain) -> Cochain:
    return add_cochains(group, module, a, scale_cochain(group, module, -1, b))


def bar_differential(group: FiniteGroup, module: AbelianCoefficients,
                     c: Cochain) -> Cochain:
    """The inhomogeneous-bar coboundary of ``c``.

    (dc)(g1,...,g_{n+1}) = g1.c(g2,...,g_{n+1})
      + sum_i (-1)^i c(g1,...,g_i g_{i+1},...,g_{n+1})
      + (-1)^{n+1} c(g1,...,g_n)
    """
    n = c.degree
    order = group.order
    out = []
    for idx in range(order ** (n + 1)):
        args = index_to_tuple(order, n + 1, idx)
        acc = module.act(args[0], evaluate(group, c, args[1:]))
        sign = 1
        for i in range(1, n + 1):
            sign = -sign
            merged = args[:i - 1] + (group.mul[args[i - 1]][args[i]],) \
                + args[i + 1:]
            acc = module.add(acc,
                             module.scale(sign, evaluate(group, c, merged)))
        acc = module.add(acc,
                         module.scale(-sign, evaluate(group, c, args[:-1])))
        out.append(acc)
    values = tuple(out)
    return Cochain(n + 1, values,
                   _check_normalized(group, module, n + 1, values))


def is_cocycle(group: FiniteGroup, module: AbelianCoefficients,
               c: Cochain) -> bool:
    return all(module.is_zero(v)
               for v in bar_differential(group, module, c).values)


def normalize_cocycle(group: FiniteGroup, module: AbelianCoefficients,
                      c: Cochain) -> tuple[Cochain, Cochain | None]:
    """A normalized cocycle in the same class, plus the shift used.

    Returns (c', shift) with c' = c - d(shift) normalized; shift is None when
    c is already normalized.  Raises ValueError if no shift exists (the input
    was not a cocycle).
    """
    if c.normalized:
        return c, None
    if c.degree == 0:
        return c, None
    n = c.degree
    order = group.order
    if module.kind == CIRCLE:
        denom = lcm(group.order,
                    *[Fraction(v).denominator for v in c.values])
    else:
        denom = None
    factors, mats = module.lattice_data(denom)
    k = len(factors)
    full = _FullTable(group, factors, mats)
    dmat = full.diff_matrix(n - 1)
    bad_rows: list[int] = []
    e = group.identity
    for idx in range(order ** n):
        if e in index_to_tuple(order, n, idx):
            bad_rows.extend(idx * k + j for j in range(k))
    a = [dmat[r] for r in bad_rows]
    b = []
    for r in bad_rows:
        pos, j = divmod(r, k)
        vec = module.to_vector(c.values[pos], denom)
        b.append(vec[j])
    moduli = [factors[r % k] for r in bad_rows]
    sol = il.solve_mod(a, b, moduli)
    if sol is None:
        raise ValueError("cochain admits no normalizing shift; "
                         "is it a cocycle?")
    shift_vals = tuple(
        module.from_vector(sol[idx * k:(idx + 1) * k], denom)
        for idx in range(order ** (n - 1)))
    shift = Cochain(n - 1, shift_vals,
                    _check_normalized(group, module, n - 1, shift_vals))
    fixed = sub_cochains(group, module, c,
                         bar_differential(group, module, shift))
    if not fixed.normalized:
        raise ValueError("normalizing shift failed to normalize the cocycle")
    return fixed, shift


# ---------------------------------------------------------------------------
# integer-lattice complexes
# ---------------------------------------------------------------------------

class _FullTable:
    """Bar differential as an integer matrix over full (unnormalized) tuples."""

    def __init__(self, group: FiniteGroup, factors, mats):
        self.group = group
        self.factors = list(factors)
        self.mats = mats
        self.k = len(factors)

    def dim(self, n: int) -> int:
        return (self.group.order ** n) * self.k

    def diff_matrix(self, n: int) -> list[list[int]]:
        group, k = self.group, self.k
        order = group.order
        rows = self.dim(n + 1)
        cols = self.dim(n)
        out = [[0] * cols for _ in range(rows)]
        for tidx in range(order ** (n + 1)):
            args = index_to_tuple(order, n + 1, tidx)
            r0 = tidx * k
            mat = self.mats[args[0]]
            c0 = tuple_index(order, args[1:]) * k
            for i in range(k):
                row = out[r0 + i]
                for j in range(k):
                    row[c0 + j] += mat[i][j]
            sign = 1
            for i in range(1, n + 1):
                sign = -sign
                merged = args[:i - 1] + (group.mul[args[i - 1]][args[i]],) \
                    + args[i + 1:]
                c0 = tuple_index(order, merged) * k
                for j in range(k):
                    out[r0 + j][c0 + j] += sign
            c0 = tuple_index(order, args[:-1]) * k
            for j in range(k):
                out[r0 + j][c0 + j] += -sign
        return out


class _NormalizedComplex:
    """The normalized cochain complex as integer matrices.

    Basis positions in degree n are tuples of non-identity elements, each
    carrying ``k`` integer coordinates with moduli given by the factors.
    """

    def __init__(self, group: FiniteGroup, factors, mats):
        self.group = group
        self.factors = list(factors)
        self.mats = mats
        self.k = len(factors)
        self.nz = [g for g in group.elements() if g != group.identity]
        self._nz_index = {g: i for i, g in enumerate(self.nz)}
        self._diff_cache: dict[int, list[list[int]]] = {}
        self._diff_np_cache: dict[int, object] = {}

    def positions(self, n: int) -> int:
        return len(self.nz) ** n

    def dim(self, n: int) -> int:
        return self.positions(n) * self.k

    def moduli(self, n: int) -> list[int]:
        return self.factors * self.positions(n)

    def tuple_at(self, n: int, pos: int) -> tuple[int, ...]:
        out = []
        base = len(self.nz)
        for _ in range(n):
            pos, r = divmod(pos, base)
            out.append(self.nz[r])
        return tuple(reversed(out))

    def position_of(self, args) -> int:
        pos = 0
        for a in args:
            pos = pos * len(self.nz) + self._nz_index[a]
        return pos

    def _diff_triples(self, n: int):
        """Yield (row, col, increment) entries of the degree-n differential."""
        group, k = self.group, self.k
        e = group.identity
        for tpos in range(self.positions(n + 1)):
            args = self.tuple_at(n + 1, tpos)
            r0 = tpos * k
            mat = self.mats[args[0]]
            c0 = self.position_of(args[1:]) * k
            for i in range(k):
                for j in range(k):
                    if mat[i][j]:
                        yield r0 + i, c0 + j, mat[i][j]
            sign = 1
            for i in range(1, n + 1):
                sign = -sign
                prod = group.mul[args[i - 1]][args[i]]
                if prod == e:
                    continue
                merged = args[:i - 1] + (prod,) + args[i + 1:]
                c0 = self.position_of(merged) * k
                for j in range(k):
                    yield r0 + j, c0 + j, sign
            c0 = self.position_of(args[:-1]) * k
            for j in range(k):
                yield r0 + j, c0 + j, -sign

    def diff_matrix(self, n: int) -> list[list[int]]:
        if n in self._diff_cache:
            return self._diff_cache[n]
        out = [[0] * self.dim(n) for _ in range(self.dim(n + 1))]
        for r, c, v in self._diff_triples(n):
            out[r][c] += v
        self._diff_cache[n] = out
        return out

    def diff_matrix_np(self, n: int):
        """The degree-n differential as an int64 array (cached)."""
        if n in self._diff_np_cache:
            return self._diff_np_cache[n]
        out = np.zeros((self.dim(n + 1), self.dim(n)), dtype=np.int64)
        for r, c, v in self._diff_triples(n):
            out[r, c] += v
        self._diff_np_cache[n] = out
        return out

    def vector(self, module: AbelianCoefficients, c: Cochain,
               denominator: int | None) -> list[int]:
        order = self.group.order
        out: list[int] = []
        for pos in range(self.positions(c.degree)):
            args = self.tuple_at(c.degree, pos)
            out.extend(module.to_vector(c.values[tuple_index(order, args)],
                                        denominator))
        return out

    def cochain(self, module: AbelianCoefficients, degree: int, vec,
                denominator: int | None) -> Cochain:
        order = self.group.order
        k = self.k
        values = [module.zero()] * (order ** degree)
        for pos in range(self.positions(degree)):
            args = self.tuple_at(degree, pos)
            values[tuple_index(order, args)] = module.from_vector(
                vec[pos * k:(pos + 1) * k], denominator)
        return Cochain(degree, tuple(values), True)


class _LatticeQuotient:
    """Invariant factors, representatives and membership for K/L in Z^a.

    K is given by a spanning set of columns, L likewise; L must sit inside K
    and K must have full rank a (both hold for cocycles-mod-coboundaries once
    the coordinate moduli are included in the generating sets).
    """

    def __init__(self, dim: int, k_span: list[list[int]],
                 l_span: list[list[int]]):
        self.dim = dim
        if dim == 0:
            self.factors_all: list[int] = []
            return
        basis_cols = il.lattice_basis(il.mat_from_columns(k_span))
        if len(basis_cols) != dim:
            raise RuntimeError("cocycle lattice is not full rank")
        self.basis = il.mat_from_columns(basis_cols)
        self._basis_form = il.smith_normal_form(self.basis, transforms=True)
        w_cols = []
        for col in l_span:
            sol = il.solve_integer(self.basis, col, form=self._basis_form)
            if sol is None:
                raise RuntimeError("boundary lattice escapes cocycle lattice")
            w_cols.append(sol)
        w = il.mat_from_columns(w_cols)
        self._w_form = il.smith_normal_form(w, transforms=True)
        if self._w_form.rank != dim:
            raise RuntimeError("quotient is not finite")
        self.factors_all = list(self._w_form.diag[:dim])

    @property
    def nontrivial(self) -> list[int]:
        return [i for i, s in enumerate(self.factors_all) if s > 1]

    def factors(self) -> tuple[int, ...]:
        return tuple(self.factors_all[i] for i in self.nontrivial)

    def order(self) -> int:
        out = 1
        for s in self.factors_all:
            out *= s
        return out

    def generator_vector(self, i: int) -> list[int]:
        col = [row[i] for row in self._w_form.row_t_inv]
        return il.mat_vec(self.basis, col)

    def coordinates(self, vec) -> tuple[int, ...]:
        if self.dim == 0:
            return ()
        x = il.solve_integer(self.basis, list(vec), form=self._basis_form)
        if x is None:
            raise ValueError("vector is not in the cocycle lattice")
        y = il.mat_vec(self._w_form.row_t, x)
        return tuple(y[i] % self.factors_all[i] for i in self.nontrivial)


class _LatticeCohomology:
    """H^n of the normalized complex for one finite lattice module."""

    def __init__(self, group: FiniteGroup, factors, mats, degree: int):
        self.group = group
        self.degree = degree
        self.cx = _NormalizedComplex(group, factors, mats)
        n = degree
        a_n = self.cx.dim(n)
        self.a_n = a_n
        if a_n == 0:
            self.quot = _LatticeQuotient(0, [], [])
            self._wit_stack = None
            self._wit_form = None
            return
        d_n = self.cx.diff_matrix(n)
        stacked = il.stack_mod_matrix(d_n, self.cx.moduli(n + 1))
        k_span = [col[:a_n] for col in il.kernel_basis(stacked)]
        mod_cols = []
        moduli_n = self.cx.moduli(n)
        for i, m in enumerate(moduli_n):
            col = [0] * a_n
            col[i] = m
            mod_cols.append(col)
        if n >= 1:
            d_prev = self.cx.diff_matrix(n - 1)
            l_span = il.matrix_columns(d_prev) + mod_cols
            self._wit_stack = il.stack_mod_matrix(d_prev, moduli_n)
        else:
            l_span = mod_cols
            self._wit_stack = None
        self.quot = _LatticeQuotient(a_n, k_span + mod_cols, l_span)
        self._wit_form = None

    def is_cocycle_vec(self, vec) -> bool:
        if self.a_n == 0:
            return True
        img = il.mat_vec(self.cx.diff_matrix(self.degree), list(vec))
        return all(x % m == 0
                   for x, m in zip(img, self.cx.moduli(self.degree + 1)))

    def witness_vec(self, vec) -> list[int] | None:
        """w with d(w) = vec (mod moduli), or None."""
        if self.degree == 0:
            return None
        if self.a_n == 0:
            return []
        if self._wit_form is None:
            self._wit_form = il.smith_normal_form(self._wit_stack,
                                                  transforms=True)
        sol = il.solve_integer(self._wit_stack, list(vec),
                               form=self._wit_form)
        if sol is None:
            return None
        return sol[:self.cx.dim(self.degree - 1)]


class _ModQuotient:
    """ker/im structure over a uniform modulus, mirroring _LatticeQuotient.

    Generators of the kernel (with their orders) come from the mod-m Smith
    form of the outgoing differential; the incoming image is rewritten in
    those generators and quotiented out.
    """

    def __init__(self, m: int, gens, orders, l_cols):
        self.m = m
        self.gens = gens
        r = gens.shape[1]
        self._solver = modsnf.ModSolver(gens, m)
        rel_cols = []
        for j in range(l_cols.shape[1]):
            y = self._solver.solve(l_cols[:, j])
            if y is None:
                raise RuntimeError("boundary escapes the cocycle kernel")
            rel_cols.append(y)
        rel = np.zeros((r, len(rel_cols) + r), dtype=np.int64)
        for j, y in enumerate(rel_cols):
            rel[:, j] = y
        for i, o in enumerate(orders):
            rel[i, len(rel_cols) + i] = o
        self._form = modsnf.mod_smith(rel, m, want_u=True, want_uinv=True) \
            if r else None
        self.factors_all = list(self._form.diag) if r else []

    @property
    def nontrivial(self) -> list[int]:
        return [i for i, s in enumerate(self.factors_all) if s > 1]

    def factors(self) -> tuple[int, ...]:
        return tuple(self.factors_all[i] for i in self.nontrivial)

    def order(self) -> int:
        out = 1
        for s in self.factors_all:
            out *= s
        return out

    def generator_vector(self, i: int) -> list[int]:
        y = self._form.u_inv[:, i].astype(np.int64)
        return [int(x) for x in (self.gens.astype(np.int64) @ y) % self.m]

    def coordinates(self, vec) -> tuple[int, ...]:
        if not self.factors_all:
            y = self._solver.solve(np.asarray(vec))
            if y is None:
                raise ValueError("vector is not in the cocycle lattice")
            return ()
        y = self._solver.solve(np.asarray(vec))
        if y is None:
            raise ValueError("vector is not in the cocycle lattice")
        w = (self._form.u.astype(np.int64) @ y) % self.m
        return tuple(int(w[i]) % self.factors_all[i] for i in self.nontrivial)


class _ModCohomology:
    """H^n over a uniform modulus, numpy-backed (so bigger complexes fit).

    Interchangeable with _LatticeCohomology when every coordinate modulus is
    the same; used for the rational-circle complexes once the codomain
    dimension makes exact integer reduction too slow.
    """

    def __init__(self, group: FiniteGroup, factors, mats, degree: int):
        self.group = group
        self.degree = degree
        self.cx = _NormalizedComplex(group, factors, mats)
        if len(set(factors)) != 1:
            raise ValueError("modular engine needs a uniform modulus")
        self.m = factors[0]
        n = degree
        self.a_n = self.cx.dim(n)
        if self.a_n == 0:
            self.quot = _LatticeQuotient(0, [], [])
            return
        self._dn = self.cx.diff_matrix_np(n) % self.m
        if n >= 1:
            d_prev = self.cx.diff_matrix_np(n - 1) % self.m
        else:
            d_prev = np.zeros((self.a_n, 0), dtype=np.int64)
        self._dprev = d_prev
        self._wit_solver = None
        constraints = np.unique(self._dn, axis=0)
        constraints = constraints[np.any(constraints, axis=1)]
        gens, orders = modsnf.mod_kernel(constraints, self.m)
        self.quot = _ModQuotient(self.m, gens, orders, d_prev)

    def is_cocycle_vec(self, vec) -> bool:
        if self.a_n == 0:
            return True
        img = (self._dn @ (np.asarray(vec, dtype=np.int64) % self.m)) % self.m
        return not img.any()

    def witness_vec(self, vec) -> list[int] | None:
        if self.degree == 0:
            return None
        if self.a_n == 0:
            return []
        if self._wit_solver is None:
            self._wit_solver = modsnf.ModSolver(self._dprev, self.m)
        sol = self._wit_solver.solve(np.asarray(vec, dtype=np.int64) % self.m)
        if sol is None:
            return None
        return [int(x) for x in sol]


# beyond this codomain dimension the circle complexes switch to _ModCohomology
_MODULAR_CUTOFF = 400


# ---------------------------------------------------------------------------
# public cohomology object
# ---------------------------------------------------------------------------

@dataclass
class CohomologyGroup:
    """H^degree(group, module) with classification machinery.

    ``invariant_factors`` lists the cyclic factors > 1 (ascending chain);
    ``representatives`` holds one normalized cocycle per factor.  For
    rational-circle coefficients ``denominator`` records the working
    denominator m and ``stable`` whether H at m already injects at m*|group|
    (the reported factors are the exact Q/Z answer either way).
    """

    group: FiniteGroup
    module: AbelianCoefficients
    degree: int
    invariant_factors: tuple[int, ...]
    representatives: tuple[Cochain, ...]
    order: int
    denominator: int | None = None
    stable: bool | None = None
    _impl: object = field(default=None, repr=False)

    def classify(self, c: Cochain) -> tuple[int, ...]:
        """Coordinates of [c] over the invariant factors."""
        return self._impl.classify(c)

    def coboundary_witness(self, c: Cochain) -> Cochain | None:
        return self._impl.witness(c)

    def representative_of(self, coords) -> Cochain:
        if len(coords) != len(self.invariant_factors):
            raise ValueError("coordinate length mismatch")
        out = zero_cochain(self.group, self.module, self.degree)
        for k, rep in zip(coords, self.representatives):
            out = add_cochains(self.group, self.module, out,
                               scale_cochain(self.group, self.module, k, rep))
        return out

    def all_classes(self):
        """All coordinate tuples, basepoint first."""
        from itertools import product
        return list(product(*[range(f) for f in self.invariant_factors]))


class _FiniteImpl:
    def __init__(self, group, module, degree):
        factors, mats = module.lattice_data()
        self.group, self.module, self.degree = group, module, degree
        self.lat = _LatticeCohomology(group, factors, mats, degree)

    def _vec(self, c: Cochain):
        c = _ingest(self.group, self.module, self.degree, c)
        vec = self.lat.cx.vector(self.module, c, None)
        if not self.lat.is_cocycle_vec(vec):
            raise ValueError("not a cocycle")
        return vec

    def classify(self, c):
        return self.lat.quot.coordinates(self._vec(c))

    def witness(self, c):
        w = self.lat.witness_vec(self._vec(c))
        if w is None:
            return None
        return self.lat.cx.cochain(self.module, self.degree - 1, w, None)

    def result(self):
        reps = tuple(
            self.lat.cx.cochain(self.module, self.degree,
                                [x % m for x, m in
                                 zip(self.lat.quot.generator_vector(i),
                                     self.lat.cx.moduli(self.degree))],
                                None)
            for i in self.lat.quot.nontrivial)
        return CohomologyGroup(
            self.group, self.module, self.degree,
            self.lat.quot.factors(), reps, self.lat.quot.order(),
            _impl=self)


class _CircleImpl:
    """Q/Z cohomology: the image of H^n at denominator m in H^n at m*|G|."""

    def __init__(self, group, module, degree, denominator):
        self.group, self.module, self.degree = group, module, degree
        self.m0 = denominator if denominator else group.order
        self.m0 = lcm(self.m0, group.order)
        self.m1 = self.m0 * group.order
        f0, a0 = module.lattice_data(self.m0)
        f1, a1 = module.lattice_data(self.m1)
        dim_next = (group.order - 1) ** (degree + 1) * len(f0)
        engine = _ModCohomology if dim_next > _MODULAR_CUTOFF \
            else _LatticeCohomology
        self.base = engine(group, f0, a0, degree)
        self.big = engine(group, f1, a1, degree)
        scale = self.m1 // self.m0
        self.base_reps_vec = [self.base.quot.generator_vector(i)
                              for i in self.base.quot.nontrivial]
        img_coords = [
            list(self.big.quot.coordinates([x * scale for x in v]))
            for v in self.base_reps_vec]
        self.map_matrix = il.mat_from_columns(img_coords) \
            if img_coords else []
        big_factors = list(self.big.quot.factors())
        r = len(big_factors)
        mod_cols = []
        for i, m in enumerate(big_factors):
            col = [0] * r
            col[i] = m
            mod_cols.append(col)
        if r == 0 or not img_coords:
            self.image = _LatticeQuotient(0, [], [])
            self.factors: tuple[int, ...] = ()
            self.gen_pullbacks: list[list[int]] = []
        else:
            self.image = _LatticeQuotient(
                r, img_coords + mod_cols, mod_cols)
            self.factors = self.image.factors()
            self.gen_pullbacks = []
            for i in self.image.nontrivial:
                gen = self.image.generator_vector(i)
                pull = il.solve_mod(self.map_matrix, gen, big_factors)
                if pull is None:
                    raise RuntimeError("image generator has no pullback")
                self.gen_pullbacks.append(pull)
        self.stable = (self.image.order() == self.base.quot.order())

    def _vec(self, c: Cochain, denominator: int):
        c = _ingest(self.group, self.module, self.degree, c)
        for v in c.values:
            if denominator % Fraction(v).denominator:
                raise ValueError(
                    f"cocycle needs denominator {Fraction(v).denominator}; "
                    f"rebuild the cohomology with a finer denominator "
                    f"(working denominator is {self.m0})")
        vec = self.base.cx.vector(self.module, c, denominator)
        return vec

    def classify(self, c):
        vec0 = self._vec(c, self.m0)
        if not self.base.is_cocycle_vec(vec0):
            raise ValueError("not a cocycle")
        scale = self.m1 // self.m0
        coords_big = self.big.quot.coordinates([x * scale for x in vec0])
        if self.image.dim == 0:
            if any(coords_big):
                raise RuntimeError("class outside the stable image")
            return ()
        try:
            return self.image.coordinates(list(coords_big))
        except ValueError:
            raise RuntimeError("class outside the stable image") from None

    def witness(self, c):
        vec0 = self._vec(c, self.m0)
        if not self.base.is_cocycle_vec(vec0):
            raise ValueError("not a cocycle")
        scale = self.m1 // self.m0
        w = self.big.witness_vec([x * scale for x in vec0])
        if w is None:
            return None
        return self.big.cx.cochain(self.module, self.degree - 1, w, self.m1)

    def result(self):
        reps = []
        for pull in self.gen_pullbacks:
            vec = [0] * self.base.a_n
            for coeff, gvec in zip(pull, self.base_reps_vec):
                for i, x in enumerate(gvec):
                    vec[i] += coeff * x
            reps.append(self.base.cx.cochain(self.module, self.degree,
                                             vec, self.m0))
        return CohomologyGroup(
            self.group, self.module, self.degree, self.factors,
            tuple(reps), self.image.order(),
            denominator=self.m0, stable=self.stable, _impl=self)


def _ingest(group, module, degree, c: Cochain) -> Cochain:
    if c.degree != degree:
        raise ValueError(f"expected a degree-{degree} cochain, got {c.degree}")
    if len(c.values) != group.order ** degree:
        raise ValueError("cochain table has the wrong size")
    if not c.normalized:
        c, _ = normalize_cocycle(group, module, c)
    return c


def cohomology(group: FiniteGroup, module: AbelianCoefficients, degree: int,
               denominator: int | None = None,
               max_positions: int = 2_000_000) -> CohomologyGroup:
    """H^degree(group, module).  Degrees 0..4 are supported."""
    if module.group != group:
        raise ValueError("module is not over this group")
    if not 0 <= degree <= 4:
        raise ValueError("degree must be between 0 and 4")
    if (group.order - 1) ** (degree + 1) > max_positions:
        raise ResourceLimit("cochain-table positions",
                            (group.order - 1) ** (degree + 1), max_positions)
    if module.kind == FINITE:
        return _FiniteImpl(group, module, degree).result()
    return _CircleImpl(group, module, degree, denominator).result()


def is_coboundary(group: FiniteGroup, module: AbelianCoefficients,
                  c: Cochain, denominator: int | None = None
                  ) -> Cochain | None:
    """A cochain w with d(w) = c, or None if the class is nonzero.

    For rational-circle coefficients the witness is exact for Q/Z: it is
    searched at one saturation step above the values' denominators, which is
    sufficient for coboundaries over Q/Z.
    """
    if c.degree < 1:
        raise ValueError("degree must be at least 1 for coboundary checks")
    if module.kind == CIRCLE and denominator is None:
        denominator = lcm(group.order,
                          *[Fraction(v).denominator for v in c.values])
    h = cohomology(group, module, c.degree, denominator)
    return h.coboundary_witness(c)
