"""Tits diagrams (M, Gamma, A): validity, relative rank, rank-one
subdiagrams, angular distance, minimal angle, and the pi/3 trichotomy.

The angular distance at a node only depends on its connected component (the
Weyl group acts componentwise and the fundamental weight lies in the
component's root span), so everything reduces to a classified component and
a canonical node position; results are cached on that key. Rank-1 and
rank-2 components have closed forms (pi and 2pi/m); higher rank goes
through the realized weight orbit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import diagram as diag
from . import geometry as geom
from . import weyl
from .fold import fold_tits
from .angle import PI, Angle, Verdict, verdict_against_pi_over_3
from .diagram import AutGroup, CoxeterDiagram
from .errors import (
    InvalidEntry,
    InvalidTitsDiagram,
    NonCrystallographic,
    NontrivialGamma,
    UnknownNode,
    ZeroRelativeRank,
)


@dataclass(frozen=True)
class TitsDiagram:
    """Diagram M with a symmetry group Gamma and anisotropic node set A."""

    diagram: CoxeterDiagram
    gamma: AutGroup
    anisotropic: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "anisotropic", frozenset(self.anisotropic))
        for a in self.anisotropic:
            if a not in self.diagram.node_set:
                raise UnknownNode(f"anisotropic node {a} is not in the diagram")
        if tuple(self.gamma.domain) != self.diagram.nodes:
            raise InvalidEntry("gamma is defined on a different node set")

    @property
    def isotropic(self) -> tuple[int, ...]:
        return tuple(i for i in self.diagram.nodes if i not in self.anisotropic)


def tits_diagram(
    d: CoxeterDiagram,
    gamma: Optional[AutGroup] = None,
    anisotropic: Iterable[int] = (),
) -> TitsDiagram:
    if gamma is None:
        gamma = AutGroup.trivial(d.nodes)
    return TitsDiagram(d, gamma, frozenset(anisotropic))


@dataclass(frozen=True)
class Violation:
    clause: str
    orbit: Optional[tuple[int, ...]]
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(t: TitsDiagram) -> ValidationReport:
    """Check the three structural conditions; violations are data, not errors."""
    violations = []
    for p in t.gamma.generators:
        if not diag.is_automorphism(t.diagram, p):
            violations.append(
                Violation(
                    "gamma-not-automorphism",
                    None,
                    f"{p.cycle_string()} is not an automorphism of the diagram",
                )
            )
    if violations:
        return ValidationReport(tuple(violations))
    aniso = t.anisotropic
    for orbit in diag.orbits(t.diagram, t.gamma):
        inside = aniso.intersection(orbit)
        if inside and len(inside) < len(orbit):
            violations.append(
                Violation(
                    "A-not-invariant",
                    orbit,
                    f"orbit {set(orbit)} meets the anisotropic set without being contained in it",
                )
            )
        elif not inside:
            sub = diag.restrict(t.diagram, aniso.union(orbit))
            sigma = weyl.opposition(sub)
            image = frozenset(sigma(i) for i in orbit)
            if image != frozenset(orbit):
                violations.append(
                    Violation(
                        "opposition-violated",
                        orbit,
                        f"opposition maps orbit {set(orbit)} to {set(image)} "
                        f"in the restriction to {sorted(aniso.union(orbit))}",
                    )
                )
    return ValidationReport(tuple(violations))


def ensure_valid(t: TitsDiagram) -> None:
    report = validate(t)
    if not report.ok:
        raise InvalidTitsDiagram(report.violations)


def isotropic_orbits(t: TitsDiagram) -> list[tuple[int, ...]]:
    """Gamma-orbits not contained in A, in smallest-member order."""
    return [
        orbit
        for orbit in diag.orbits(t.diagram, t.gamma)
        if not t.anisotropic.issuperset(orbit)
    ]


def relative_rank(t: TitsDiagram) -> int:
    ensure_valid(t)
    return len(isotropic_orbits(t))


def rank_one_subdiagrams(t: TitsDiagram) -> list[TitsDiagram]:
    """One Tits diagram per isotropic node: restrict to A plus that node.

    Callers fold first; a nontrivial gamma is refused rather than folded
    implicitly.
    """
    ensure_valid(t)
    if not t.gamma.is_trivial:
        raise NontrivialGamma("rank-one extraction needs a trivial symmetry group")
    out = []
    for i in t.isotropic:
        sub = diag.restrict(t.diagram, t.anisotropic.union((i,)))
        out.append(TitsDiagram(sub, AutGroup.trivial(sub.nodes), t.anisotropic))
    return out


_angle_cache: dict[tuple, Fraction] = {}


def clear_angle_cache() -> None:
    _angle_cache.clear()


def _orbit_max_cos(comp: CoxeterDiagram, i: int) -> Fraction:
    r = geom.realize(comp)
    w = r.fundamental_weights[i]
    scale, orbit = weyl._orbit_scaled(r, w)
    if orbit is not None:
        seed = tuple(int(c * scale) for c in w)
        norm = sum(c * c for c in seed)
        best = None
        for x in orbit:
            if x == seed:
                continue
            dd = sum(a * b for a, b in zip(seed, x))
            if best is None or dd > best:
                best = dd
        return Fraction(best, norm)
    orb = weyl._orbit_fractions(r, w, weyl.orbit_budget())
    norm_f = geom.dot(w, w)
    best_f = max(geom.dot(w, x) for x in orb if x != w)
    return best_f / norm_f


def angular_distance(d: CoxeterDiagram, i: int) -> Angle:
    """Minimal angle between distinct vertices of type i on the sphere.

    Reduces to the connected component of i: rank 1 gives pi, rank 2 with
    label m gives 2pi/m, and higher crystallographic rank realizes the
    component and takes the best cosine over the weight orbit.
    """
    comp = diag.component_of(d, i)
    ct = diag.classify(comp)[0]
    if ct.rank == 1:
        return PI
    if ct.rank == 2:
        a, b = comp.nodes
        return Angle.rational_pi(2, comp.m(a, b))
    if not ct.crystallographic:
        raise NonCrystallographic(
            f"no rational realization for a component of type {ct.name}"
        )
    key = (ct.family, ct.rank, ct.m, ct.position_of[i])
    cos = _angle_cache.get(key)
    if cos is None:
        cos = _orbit_max_cos(comp, i)
        _angle_cache[key] = cos
    return Angle.exact_cos(cos)


def minimal_angle_report(t: TitsDiagram) -> tuple[Angle, list[tuple[int, ...]]]:
    """Minimal angle plus the isotropic orbits achieving it (tie diagnostics)."""
    result, folded_a = fold_tits(t)
    folded = TitsDiagram(
        result.folded, AutGroup.trivial(result.folded.nodes), folded_a
    )
    subs = rank_one_subdiagrams(folded)
    if not subs:
        raise ZeroRelativeRank(
            "every node is anisotropic; the minimal angle is undefined"
        )
    best: Optional[Angle] = None
    achieving: list[tuple[int, ...]] = []
    for sub in subs:
        (node,) = set(sub.diagram.nodes) - sub.anisotropic
        angle = angular_distance(sub.diagram, node)
        orbit = tuple(sorted(o for o, f in result.node_map.items() if f == node))
        if best is None or angle < best:
            best, achieving = angle, [orbit]
        elif angle == best:
            achieving.append(orbit)
    return best, achieving


def minimal_angle(t: TitsDiagram) -> Angle:
    """Fold, then minimize the angular distance over rank-one subdiagrams."""
    return minimal_angle_report(t)[0]


def admissibility(t: TitsDiagram) -> Verdict:
    """Exact trichotomy of the minimal angle against pi/3."""
    return verdict_against_pi_over_3(minimal_angle(t))


def enumerate_indices(
    d: CoxeterDiagram, g: AutGroup, rel_rank: Optional[int] = None
) -> list[tuple[TitsDiagram, Angle, Verdict]]:
    """All valid anisotropic kernels A (unions of Gamma-orbits, A != I), each
    with its exact minimal angle and verdict.

    Validity here is the combinatorial condition only; no claim is made that
    an algebraic group with that index exists over some field. Deterministic
    order: sorted A, lexicographically.
    """
    diag.check_automorphisms(d, g)
    orbits = diag.orbits(d, g)
    results = []
    for take in range(len(orbits)):
        if rel_rank is not None and len(orbits) - take != rel_rank:
            continue
        for combo in itertools.combinations(orbits, take):
            kernel = frozenset(i for orbit in combo for i in orbit)
            t = TitsDiagram(d, g, kernel)
            if not validate(t).ok:
                continue
            angle = minimal_angle(t)
            results.append((t, angle, verdict_against_pi_over_3(angle)))
    results.sort(key=lambda row: tuple(sorted(row[0].anisotropic)))
    return results


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    tits: TitsDiagram
    expected: Angle


def _catalog_tits(type_name, gamma_cycles, aniso) -> TitsDiagram:
    d = diag.builtin(type_name)
    if gamma_cycles:
        g = AutGroup.generated_by(
            [diag.Permutation.from_cycles(gamma_cycles, d.nodes)], d.nodes
        )
    else:
        g = AutGroup.trivial(d.nodes)
    return TitsDiagram(d, g, frozenset(aniso))


def reference_catalog() -> list[CatalogEntry]:
    """Worked reference indices with their known minimal angles.

    Every entry's expected value is reproduced by minimal_angle; all of them
    sit strictly above pi/3.
    """
    third = Angle.exact_cos(Fraction(1, 3))
    half_pi = Angle.rational_pi(1, 2)
    rows = [
        ("I24-swap-quasisplit", "I2(4)", [(1, 2)], (), PI),
        ("A5-flip-aniso-234", "A5", [(1, 5), (2, 4)], (2, 3, 4), half_pi),
        ("A7-aniso-1357", "A7", None, (1, 3, 5, 7), half_pi),
        ("B4-aniso-234", "B4", None, (2, 3, 4), half_pi),
        ("D5-aniso-2345", "D5", None, (2, 3, 4, 5), half_pi),
        ("A3-aniso-13", "A3", None, (1, 3), half_pi),
        ("A5-aniso-1245", "A5", None, (1, 2, 4, 5), third),
        ("E7-aniso-123456", "E7", None, (1, 2, 3, 4, 5, 6), third),
        ("B3-aniso-12", "B3", None, (1, 2), third),
        ("A5-flip-aniso-1245", "A5", [(1, 5), (2, 4)], (1, 2, 4, 5), third),
        ("E7-aniso-2345", "E7", None, (2, 3, 4, 5), half_pi),
        ("E6-aniso-2345", "E6", None, (2, 3, 4, 5), half_pi),
        ("F4-aniso-23", "F4", None, (2, 3), half_pi),
        ("E6-flip-aniso-345", "E6", [(1, 6), (3, 5)], (3, 4, 5), half_pi),
        ("E6-flip-aniso-1356", "E6", [(1, 6), (3, 5)], (1, 3, 5, 6), third),
        ("E6-aniso-1356", "E6", None, (1, 3, 5, 6), third),
        ("E8-aniso-123456", "E8", None, (1, 2, 3, 4, 5, 6), third),
    ]
    return [
        CatalogEntry(name, _catalog_tits(type_name, cycles, aniso), expected)
        for name, type_name, cycles, aniso, expected in rows
    ]
