"""Shared brute-force oracles for the test suite.

These deliberately avoid the library's orbit/longest-element machinery:
the full group is enumerated as ambient matrices by closure, so tests can
compare the production algorithms against an independent computation.
"""

from __future__ import annotations

from fractions import Fraction

from coxangle import diagram as diag
from coxangle import geometry as geom
from coxangle import weyl
from coxangle.diagram import AutGroup, CoxeterDiagram, Permutation


def full_group_matrices(r: geom.Realization) -> frozenset:
    """Every element of W as an ambient matrix, by right-multiplication closure."""
    gens = [weyl.reflection_element(r, i).matrix for i in r.simple_roots]
    ident = weyl._identity_matrix(r.ambient_dim)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = weyl._mat_mul(m, g)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return frozenset(seen)


def brute_orbit(r: geom.Realization, v) -> frozenset:
    return frozenset(weyl._mat_vec(m, v) for m in full_group_matrices(r))


def brute_max_cos(r: geom.Realization, i: int) -> Fraction:
    w = r.fundamental_weights[i]
    orbit = brute_orbit(r, w)
    norm = geom.dot(w, w)
    return max(geom.dot(w, x) for x in orbit if x != w) / norm


def brute_longest(r: geom.Realization):
    """w_0 as the unique element sending every simple root to a negative root."""
    for m in full_group_matrices(r):
        if all(
            all(c <= 0 for c in geom.root_coefficients(r, weyl._mat_vec(m, alpha)).values())
            for alpha in r.simple_roots.values()
        ):
            return m
    raise AssertionError("no longest element found")


def brute_opposition(r: geom.Realization) -> dict[int, int]:
    w0 = brute_longest(r)
    out = {}
    neg = {geom.vscale(Fraction(-1), a): i for i, a in r.simple_roots.items()}
    for i, alpha in r.simple_roots.items():
        out[i] = neg[weyl._mat_vec(w0, alpha)]
    return out


def dihedral_opposition(m: int) -> bool:
    """True if the I_2(m) opposition swaps the two nodes.

    Roots are direction indices 0..2m-1 on the circle (step pi/m); the
    generator for the root at index a reflects across the perpendicular
    hyperplane, sending z to 2a + m - z. Simple roots sit at indices 0
    and m-1; index z + m is the negative of z. The longest element is
    the unique group element sending every positive index 0..m-1 to a
    negative one.
    """
    n = 2 * m
    s0 = tuple((m - z) % n for z in range(n))
    s1 = tuple((3 * m - 2 - z) % n for z in range(n))
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in (s0, s1):
                q = tuple(s[p[z]] for z in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    assert len(seen) == n
    longest = [p for p in seen if all(m <= p[z] < n for z in range(m))]
    assert len(longest) == 1
    w0 = longest[0]
    if w0[0] == m:
        return False  # fixes the first simple root up to sign
    assert w0[0] == (m - 1) + m
    return True


def gen_group(d: CoxeterDiagram, cycles) -> AutGroup:
    p = Permutation.from_cycles(cycles, d.nodes)
    return AutGroup.generated_by([p], d.nodes)


def tits(d_name, cycles, aniso):
    from coxangle.tits import TitsDiagram

    d = diag.builtin(d_name)
    g = gen_group(d, cycles) if cycles else AutGroup.trivial(d.nodes)
    return TitsDiagram(d, g, frozenset(aniso))
