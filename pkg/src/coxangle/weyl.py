"""Weyl-group computations on a realization: orbit enumeration, group order,
longest elements, the opposition involution, and element orders.

Orbit enumeration is the only hot path. Orbit vectors are scaled to integer
tuples (weights always admit a common denominator) so the BFS runs on plain
int arithmetic with set-of-tuples deduplication; a Fraction fallback covers
seeds outside the weight lattice. The default safety budget of 10^7 vectors
clears the largest fundamental-weight orbit in rank 8 (483 840) with margin.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import diagram as diag
from . import geometry as geom
from .diagram import CoxeterDiagram, Permutation
from .errors import (
    DimensionMismatch,
    NotSpherical,
    OrbitBudgetExceeded,
    OrderBudgetExceeded,
    UnknownNode,
)
from .geometry import Realization, Vector

DEFAULT_ORBIT_BUDGET = 10_000_000
ORBIT_BUDGET_ENV = "COXANGLE_ORBIT_BUDGET"

_budget_override: Optional[int] = None


def orbit_budget() -> int:
    """Effective orbit cap: explicit override, else environment, else default."""
    if _budget_override is not None:
        return _budget_override
    env = os.environ.get(ORBIT_BUDGET_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_ORBIT_BUDGET


def set_orbit_budget(n: Optional[int]) -> None:
    """Set (or with None, clear) the process-wide orbit budget override."""
    global _budget_override
    _budget_override = n


Matrix = tuple[tuple[Fraction, ...], ...]


def _identity_matrix(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if r == c else zero for c in range(n)) for r in range(n))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


@dataclass(frozen=True)
class OrthogonalElement:
    """A Weyl-group element in its ambient matrix form.

    word, when present, lists simple-reflection indices whose matrices multiply
    (left to right) to `matrix`.
    """

    matrix: Matrix
    word: Optional[tuple[int, ...]] = None

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def apply(self, v: Vector) -> Vector:
        return _mat_vec(self.matrix, v)

    def times(self, other: "OrthogonalElement") -> "OrthogonalElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return OrthogonalElement(_mat_mul(self.matrix, other.matrix), word)

    @property
    def is_identity(self) -> bool:
        return self.matrix == _identity_matrix(self.dim)

    @staticmethod
    def identity(dim: int) -> "OrthogonalElement":
        return OrthogonalElement(_identity_matrix(dim), ())


def reflection_element(r: Realization, i: int) -> OrthogonalElement:
    """The simple reflection s_i as an ambient matrix."""
    if i not in r.simple_roots:
        raise UnknownNode(f"node {i} not in realization")
    alpha, beta = r.simple_roots[i], r.coroots[i]
    n = r.ambient_dim
    one, zero = Fraction(1), Fraction(0)
    mat = tuple(
        tuple((one if r_ == c else zero) - alpha[r_] * beta[c] for c in range(n))
        for r_ in range(n)
    )
    return OrthogonalElement(mat, (i,))


def group_order(d: CoxeterDiagram) -> int:
    """|W| as the product of classical component orders."""
    order = 1
    for ct in diag.classify(d):
        fam, n = ct.family, ct.rank
        if fam == "A":
            order *= math.factorial(n + 1)
        elif fam == "B":
            order *= (1 << n) * math.factorial(n)
        elif fam == "D":
            order *= (1 << (n - 1)) * math.factorial(n)
        elif fam == "E":
            order *= {6: 51840, 7: 2903040, 8: 696729600}[n]
        elif fam == "F":
            order *= 1152
        elif fam == "G":
            order *= 12
        elif fam == "H":
            order *= {3: 120, 4: 14400}[n]
        elif fam == "I2":
            order *= 2 * ct.m
        else:
            raise NotSpherical(f"unknown component type {ct.name}")
    return order


def _orbit_ints(
    seed: tuple[int, ...],
    gens: Sequence[tuple[tuple[int, ...], tuple[int, ...], int]],
    budget: int,
) -> Optional[set[tuple[int, ...]]]:
    """Integer orbit BFS; None signals a non-integral reflection coefficient."""
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for u in frontier:
            for support, avals, dd in gens:
                c = 0
                for k in range(len(support)):
                    c += u[support[k]] * avals[k]
                c += c
                if c == 0:
                    continue
                q, rem = divmod(c, dd)
                if rem:
                    return None
                v = list(u)
                for k in range(len(support)):
                    v[support[k]] -= q * avals[k]
                tv = tuple(v)
                if tv not in seen:
                    if len(seen) >= budget:
                        raise OrbitBudgetExceeded(
                            f"orbit exceeded the safety budget of {budget} vectors"
                        )
                    seen.add(tv)
                    nxt.append(tv)
        frontier = nxt
    return seen


def _orbit_fractions(r: Realization, v: Vector, budget: int) -> set[Vector]:
    seen = {v}
    frontier = [v]
    nodes = tuple(r.simple_roots)
    while frontier:
        nxt = []
        for u in frontier:
            for i in nodes:
                w = geom.reflect(r, i, u)
                if w not in seen:
                    if len(seen) >= budget:
                        raise OrbitBudgetExceeded(
                            f"orbit exceeded the safety budget of {budget} vectors"
                        )
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def _integer_gens(
    r: Realization,
) -> tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]:
    gens = []
    for i in r.simple_roots:
        alpha = r.simple_roots[i]
        scale = math.lcm(*(c.denominator for c in alpha))
        avals_full = [int(c * scale) for c in alpha]
        support = tuple(k for k, a in enumerate(avals_full) if a)
        avals = tuple(avals_full[k] for k in support)
        dd = sum(a * a for a in avals)
        gens.append((support, avals, dd))
    return tuple(gens)


def _orbit_scaled(
    r: Realization, v: Vector, budget: Optional[int] = None
) -> tuple[int, Optional[set[tuple[int, ...]]]]:
    """Integer-path orbit of v: returns (scale, orbit of scale*v), or (scale,
    None) when some reflection coefficient fails to stay integral.

    The scale clears the denominators of v and of every simple root: the
    orbit lives in v plus the root lattice, so this keeps the whole orbit
    integral whenever v pairs integrally with the coroots (any weight-lattice
    vector does).
    """
    if budget is None:
        budget = orbit_budget()
    denoms = [c.denominator for c in v]
    for alpha in r.simple_roots.values():
        denoms.extend(c.denominator for c in alpha)
    scale = math.lcm(*denoms)
    seed = tuple(int(c * scale) for c in v)
    orbit = _orbit_ints(seed, _integer_gens(r), budget)
    return scale, orbit


def weyl_orbit(r: Realization, v: Vector, budget: Optional[int] = None) -> frozenset[Vector]:
    """The full W-orbit {w·v}, closed under the simple reflections.

    Vectors are deduplicated exactly. Raises OrbitBudgetExceeded beyond the
    safety cap (default 10^7 vectors, see orbit_budget()).
    """
    if len(v) != r.ambient_dim:
        raise DimensionMismatch(
            f"vector has dimension {len(v)}, ambient is {r.ambient_dim}"
        )
    if budget is None:
        budget = orbit_budget()
    v = geom.as_vector(v)
    scale, orbit = _orbit_scaled(r, v, budget)
    if orbit is not None:
        inv = Fraction(1, scale)
        return frozenset(tuple(inv * c for c in u) for u in orbit)
    return frozenset(_orbit_fractions(r, v, budget))


def longest_element(r: Realization, nodes: Optional[Iterable[int]] = None) -> OrthogonalElement:
    """w_0 of the standard parabolic W_J (default: the whole group).

    Greedy descent from the J-dominant vector sum of the fundamental weights:
    while some coroot pairing is positive, reflect it away. The recorded word
    is reduced; its length is the number of positive roots of W_J.
    """
    J = tuple(r.simple_roots) if nodes is None else tuple(sorted(set(nodes)))
    for i in J:
        if i not in r.simple_roots:
            raise UnknownNode(f"node {i} not in realization")
    if not J:
        return OrthogonalElement.identity(r.ambient_dim)
    v = tuple(
        sum((r.fundamental_weights[i][c] for i in J), Fraction(0))
        for c in range(r.ambient_dim)
    )
    refl = {i: reflection_element(r, i) for i in J}
    mat = _identity_matrix(r.ambient_dim)
    word_rev: list[int] = []
    while True:
        moved = False
        for i in J:
            if geom.dot(v, r.coroots[i]) > 0:
                v = geom.reflect(r, i, v)
                mat = _mat_mul(refl[i].matrix, mat)
                word_rev.append(i)
                moved = True
        if not moved:
            break
    return OrthogonalElement(mat, tuple(reversed(word_rev)))


def element_order(g: OrthogonalElement, cap: int = 1000) -> int:
    """Least k >= 1 with g^k = identity; raises past the safety cap."""
    ident = _identity_matrix(g.dim)
    power = g.matrix
    for k in range(1, cap + 1):
        if power == ident:
            return k
        power = _mat_mul(power, g.matrix)
    raise OrderBudgetExceeded(f"element order exceeds the cap of {cap}")


def _component_opposition(ct: diag.ComponentType, comp: CoxeterDiagram) -> dict[int, int]:
    if ct.family == "I2":
        a, b = comp.nodes
        if ct.m % 2 == 0:
            return {a: a, b: b}
        return {a: b, b: a}
    if ct.family == "H":
        # -1 lies in W(H_3) and W(H_4), so w_0 acts as -id and sigma is trivial
        return {i: i for i in comp.nodes}
    r = geom.realize(comp)
    w0 = longest_element(r)
    out = {}
    negated = {geom.vscale(Fraction(-1), a): i for i, a in r.simple_roots.items()}
    for i, alpha in r.simple_roots.items():
        image = w0.apply(alpha)
        try:
            out[i] = negated[image]
        except KeyError:
            raise AssertionError("w_0 did not permute the negated simple roots") from None
    return out


def opposition(d: CoxeterDiagram) -> Permutation:
    """The involution sigma with w_0(alpha_i) = -alpha_sigma(i), componentwise.

    Crystallographic components read sigma off the realized longest element;
    I_2(m) uses the parity rule (identity for even m, the swap for odd m) and
    H types are identity, no realization needed.
    """
    mapping: dict[int, int] = {}
    for comp in diag.connected_components(d):
        ct = diag._classify_component(comp)
        mapping.update(_component_opposition(ct, comp))
    return Permutation.from_dict(mapping)
