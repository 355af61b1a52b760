"""Diagram folding under an automorphism group.

The folded diagram has one node per orbit J, generated by w_J, the longest
element of the parabolic on J. Edge labels are computed, not tabulated: the
order of w_J·w_K in the ambient matrix representation. This covers reducible
diagrams and component-swapping groups with no special cases. Orbits spanning
swapped components need no extra path either: the parabolic is a product and
the greedy descent already yields the product of the component longest
elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import diagram as diag
from . import geometry as geom
from . import weyl
from .diagram import AutGroup, CoxeterDiagram
from .errors import NonCrystallographic
from .weyl import OrthogonalElement


@dataclass
class FoldResult:
    """Folded diagram, the orbit projection, and the orbit generators.

    Folded nodes are labeled by the smallest member of their orbit.
    generators is None on paths with no rational realization (trivial folds
    of non-crystallographic diagrams, and the analytic I_2(m) fold).
    """

    folded: CoxeterDiagram
    node_map: dict[int, int]
    generators: Optional[dict[int, OrthogonalElement]]


def _trivial_fold(d: CoxeterDiagram) -> FoldResult:
    generators = None
    if all(ct.crystallographic for ct in diag.classify(d)):
        r = geom.realize(d)
        generators = {i: weyl.reflection_element(r, i) for i in d.nodes}
    return FoldResult(d, {i: i for i in d.nodes}, generators)


def fold(d: CoxeterDiagram, g: AutGroup) -> FoldResult:
    """Fold d by g; see FoldResult. Trivial g returns d unchanged."""
    diag.check_automorphisms(d, g)
    if g.is_trivial:
        return _trivial_fold(d)
    orbits = diag.orbits(d, g)
    node_map = {i: min(orbit) for orbit in orbits for i in orbit}
    if not all(ct.crystallographic for ct in diag.classify(d)):
        if d.rank == 2 and len(orbits) == 1:
            # I_2(m) swapped onto itself: W_gamma is generated by the single
            # involution w_0, so the fold is A_1; no rational matrices exist
            label = min(d.nodes)
            folded = diag.new_diagram([label], [])
            return FoldResult(folded, node_map, None)
        raise NonCrystallographic(
            "folding with nontrivial symmetry needs a crystallographic diagram "
            "(or a single rank-2 diagram)"
        )
    r = geom.realize(d)
    labels = sorted(min(orbit) for orbit in orbits)
    gens = {min(orbit): weyl.longest_element(r, orbit) for orbit in orbits}
    entries: list[tuple[int, int, int]] = []
    for idx, a in enumerate(labels):
        for b in labels[idx + 1 :]:
            m = weyl.element_order(gens[a].times(gens[b]))
            if m >= 3:
                entries.append((a, b, m))
    folded = diag.new_diagram(labels, entries)
    return FoldResult(folded, node_map, gens)


def fold_tits(t) -> tuple[FoldResult, frozenset[int]]:
    """Fold a Tits diagram's (M, Gamma) and push A forward to orbit labels."""
    from .tits import ensure_valid

    ensure_valid(t)
    result = fold(t.diagram, t.gamma)
    folded_a = frozenset(result.node_map[a] for a in t.anisotropic)
    return result, folded_a
