"""Spherical Coxeter diagrams: construction, builtin families, components,
restriction, and diagram automorphisms.

A diagram is stored as its sorted node-label tuple plus the set of labeled
edges (i, j, m) with i < j and m >= 3; absent pairs mean m = 2. Labels are
arbitrary positive integers so that restriction and folding can preserve the
identity of surviving nodes.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import (
    DuplicateLabel,
    InvalidEntry,
    NotAnAutomorphism,
    NotSpherical,
    RankOutOfRange,
    UnknownNode,
    UnknownType,
)


@dataclass(frozen=True)
class CoxeterDiagram:
    nodes: tuple[int, ...]
    edges: frozenset[tuple[int, int, int]]

    @property
    def rank(self) -> int:
        return len(self.nodes)

    def m(self, i: int, j: int) -> int:
        """Coxeter matrix entry m_ij (1 on the diagonal, 2 when unjoined)."""
        if i not in self.node_set or j not in self.node_set:
            raise UnknownNode(f"node {i if i not in self.node_set else j} not in diagram")
        if i == j:
            return 1
        a, b = (i, j) if i < j else (j, i)
        return self._edge_map.get((a, b), 2)

    @cached_property
    def node_set(self) -> frozenset[int]:
        return frozenset(self.nodes)

    @cached_property
    def _edge_map(self) -> dict[tuple[int, int], int]:
        return {(i, j): m for i, j, m in self.edges}

    def neighbors(self, i: int) -> tuple[int, ...]:
        """Nodes joined to i by an edge (m >= 3), ascending."""
        if i not in self.node_set:
            raise UnknownNode(f"node {i} not in diagram")
        out = [b if a == i else a for a, b, _ in self.edges if i in (a, b)]
        return tuple(sorted(out))

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))

    def __str__(self) -> str:
        return type_name(self)


@dataclass(frozen=True)
class Permutation:
    """A permutation of a finite set of node labels, stored as a total map."""

    mapping: tuple[tuple[int, int], ...]

    @staticmethod
    def from_dict(d: dict[int, int]) -> "Permutation":
        if sorted(d.keys()) != sorted(d.values()):
            raise InvalidEntry(f"not a permutation: {d}")
        return Permutation(tuple(sorted(d.items())))

    @staticmethod
    def identity(domain: Iterable[int]) -> "Permutation":
        return Permutation(tuple((i, i) for i in sorted(domain)))

    @staticmethod
    def from_cycles(cycles: Sequence[Sequence[int]], domain: Iterable[int]) -> "Permutation":
        out = {i: i for i in domain}
        for cyc in cycles:
            for x in cyc:
                if x not in out:
                    raise UnknownNode(f"cycle entry {x} not in domain")
            for k, x in enumerate(cyc):
                out[x] = cyc[(k + 1) % len(cyc)]
        return Permutation.from_dict(out)

    @property
    def _map(self) -> dict[int, int]:
        return dict(self.mapping)

    def of(self, i: int) -> int:
        try:
            return self._map[i]
        except KeyError:
            raise UnknownNode(f"node {i} not in permutation domain") from None

    def __call__(self, i: int) -> int:
        return self.of(i)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.mapping)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(i) = self(other(i))."""
        return Permutation(tuple(sorted((i, self.of(other.of(i))) for i in other.domain)))

    def inverse(self) -> "Permutation":
        return Permutation(tuple(sorted((j, i) for i, j in self.mapping)))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in self.mapping)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, each rotated to start at its smallest member."""
        seen: set[int] = set()
        out = []
        for start, _ in self.mapping:
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.of(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.of(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return tuple(sorted(out))

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "id"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)

    def restricted(self, keep: Iterable[int]) -> "Permutation":
        keep_set = set(keep)
        sub = {i: self.of(i) for i in keep_set}
        return Permutation.from_dict(sub)


@dataclass(frozen=True)
class AutGroup:
    """A group of diagram automorphisms given by generating permutations."""

    domain: tuple[int, ...]
    generators: tuple[Permutation, ...]

    @staticmethod
    def trivial(domain: Iterable[int]) -> "AutGroup":
        return AutGroup(tuple(sorted(domain)), ())

    @staticmethod
    def generated_by(gens: Sequence[Permutation], domain: Iterable[int]) -> "AutGroup":
        dom = tuple(sorted(domain))
        for g in gens:
            if g.domain != frozenset(dom):
                raise UnknownNode("generator domain does not match the node set")
        return AutGroup(dom, tuple(g for g in gens if not g.is_identity))

    @property
    def is_trivial(self) -> bool:
        return all(g.is_identity for g in self.generators)

    def elements(self) -> frozenset[Permutation]:
        """Closure of the generators (always contains the identity)."""
        ident = Permutation.identity(self.domain)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for e in frontier:
                for g in self.generators:
                    h = g.compose(e)
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return frozenset(seen)

    def order(self) -> int:
        return len(self.elements())


@dataclass(frozen=True)
class ComponentType:
    """Recognized finite type of one connected component.

    family is one of A, B, D, E, F, G, H, I2 (B covers C; rank-2 diagrams
    with m = 3, 4, 6 are reported as A2, B2, G2). canonical maps each node
    label to its conventional position 1..rank within the family.
    """

    family: str
    rank: int
    canonical: tuple[tuple[int, int], ...]
    m: Optional[int] = None

    @property
    def name(self) -> str:
        if self.family == "I2":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"

    @property
    def position_of(self) -> dict[int, int]:
        return dict(self.canonical)

    @property
    def label_at(self) -> dict[int, int]:
        return {pos: lab for lab, pos in self.canonical}

    @property
    def crystallographic(self) -> bool:
        if self.family in ("A", "B", "D", "E", "F", "G"):
            return True
        return False

    @property
    def key(self) -> tuple:
        """Cache key identifying the abstract Coxeter type."""
        return (self.family, self.rank, self.m)


def new_diagram(nodes: Iterable[int], entries: Iterable[tuple[int, int, int]]) -> CoxeterDiagram:
    """Build and validate a spherical Coxeter diagram.

    entries lists off-diagonal matrix values (i, j, m); omitted pairs get
    m = 2. Rejects duplicate labels, malformed entries, and any diagram with
    a component outside the finite-type classification.
    """
    node_list = list(nodes)
    for n in node_list:
        if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
            raise InvalidEntry(f"node labels must be positive integers, got {n!r}")
    if len(set(node_list)) != len(node_list):
        dupes = sorted({n for n in node_list if node_list.count(n) > 1})
        raise DuplicateLabel(f"duplicate node labels: {dupes}")
    node_set = set(node_list)
    edge_map: dict[tuple[int, int], int] = {}
    for i, j, m in entries:
        if i == j:
            raise InvalidEntry(f"diagonal entry ({i},{j}) not allowed")
        if not isinstance(m, int) or m < 2:
            raise InvalidEntry(f"edge label m must be an integer >= 2, got {m!r}")
        if i not in node_set or j not in node_set:
            raise UnknownNode(f"edge ({i},{j}) references a missing node")
        a, b = (i, j) if i < j else (j, i)
        if (a, b) in edge_map and edge_map[(a, b)] != m:
            raise InvalidEntry(f"conflicting labels for pair ({a},{b})")
        edge_map[(a, b)] = m
    edges = frozenset((a, b, m) for (a, b), m in edge_map.items() if m >= 3)
    d = CoxeterDiagram(tuple(sorted(node_list)), edges)
    classify(d)  # raises NotSpherical on any bad component
    return d


_BUILTIN_RE = re.compile(r"^([A-I])(\d+)$")
_I2_RE = re.compile(r"^I2\((\d+)\)$")


def _builtin_single(name: str) -> tuple[list[int], list[tuple[int, int, int]]]:
    m_i2 = _I2_RE.match(name)
    if m_i2:
        m = int(m_i2.group(1))
        if m < 2:
            raise RankOutOfRange(f"I2(m) needs m >= 2, got {m}")
        return [1, 2], ([(1, 2, m)] if m >= 3 else [])
    mo = _BUILTIN_RE.match(name)
    if not mo:
        raise UnknownType(f"unrecognized builtin diagram name {name!r}")
    fam, n = mo.group(1), int(mo.group(2))
    if fam == "A":
        if n < 1:
            raise RankOutOfRange("A_n needs n >= 1")
        return list(range(1, n + 1)), [(i, i + 1, 3) for i in range(1, n)]
    if fam in ("B", "C"):
        if n < 2:
            raise RankOutOfRange("B_n/C_n needs n >= 2")
        edges = [(i, i + 1, 3) for i in range(1, n - 1)] + [(n - 1, n, 4)]
        return list(range(1, n + 1)), edges
    if fam == "D":
        if n < 4:
            raise RankOutOfRange("D_n needs n >= 4")
        edges = [(i, i + 1, 3) for i in range(1, n - 2)] + [(n - 2, n - 1, 3), (n - 2, n, 3)]
        return list(range(1, n + 1)), edges
    if fam == "E":
        if n not in (6, 7, 8):
            raise RankOutOfRange("E_n needs n in {6, 7, 8}")
        row = [1] + list(range(3, n + 1))
        edges = [(row[k], row[k + 1], 3) for k in range(len(row) - 1)] + [(2, 4, 3)]
        return list(range(1, n + 1)), sorted((min(a, b), max(a, b), m) for a, b, m in edges)
    if fam == "F":
        if n != 4:
            raise RankOutOfRange("F_n exists only for n = 4")
        return [1, 2, 3, 4], [(1, 2, 3), (2, 3, 4), (3, 4, 3)]
    if fam == "G":
        if n != 2:
            raise RankOutOfRange("G_n exists only for n = 2")
        return [1, 2], [(1, 2, 6)]
    if fam == "H":
        if n not in (3, 4):
            raise RankOutOfRange("H_n needs n in {3, 4}")
        return list(range(1, n + 1)), [(1, 2, 5)] + [(i, i + 1, 3) for i in range(2, n)]
    raise UnknownType(f"unrecognized builtin diagram name {name!r}")


def builtin(name: str) -> CoxeterDiagram:
    """Builtin diagram by conventional name; direct sums join with '+'.

    Families: A<n> (n>=1), B<n>/C<n> (n>=2, identical diagrams), D<n> (n>=4),
    E6/E7/E8, F4, G2, H3, H4, I2(<m>) (m>=2). For sums the second summand's
    labels are shifted past the first's, e.g. "A2+A2" has nodes 1..4.
    """
    parts = [p.strip() for p in name.split("+")]
    if any(not p for p in parts):
        raise UnknownType(f"malformed builtin name {name!r}")
    nodes: list[int] = []
    entries: list[tuple[int, int, int]] = []
    shift = 0
    for part in parts:
        part_nodes, part_edges = _builtin_single(part)
        nodes.extend(n + shift for n in part_nodes)
        entries.extend((i + shift, j + shift, m) for i, j, m in part_edges)
        shift += len(part_nodes)
    return new_diagram(nodes, entries)


def restrict(d: CoxeterDiagram, keep: Iterable[int]) -> CoxeterDiagram:
    """Induced subdiagram on `keep`, original labels preserved."""
    keep_set = set(keep)
    missing = keep_set - set(d.nodes)
    if missing:
        raise UnknownNode(f"nodes {sorted(missing)} not in diagram")
    edges = frozenset((a, b, m) for a, b, m in d.edges if a in keep_set and b in keep_set)
    return CoxeterDiagram(tuple(sorted(keep_set)), edges)


def connected_components(d: CoxeterDiagram) -> list[CoxeterDiagram]:
    """Maximal connected subdiagrams, ordered by smallest label."""
    remaining = set(d.nodes)
    comps = []
    while remaining:
        start = min(remaining)
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for y in d.neighbors(x):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        comps.append(restrict(d, seen))
        remaining -= seen
    return comps


def component_of(d: CoxeterDiagram, i: int) -> CoxeterDiagram:
    """The connected component containing node i."""
    if i not in d.node_set:
        raise UnknownNode(f"node {i} not in diagram")
    for comp in connected_components(d):
        if i in comp.node_set:
            return comp
    raise AssertionError("unreachable")


def _classify_component(d: CoxeterDiagram) -> ComponentType:
    """Recognize one connected diagram against the finite-type list."""
    n = d.rank
    nodes = d.nodes
    if n == 1:
        return ComponentType("A", 1, ((nodes[0], 1),))
    if n == 2:
        m = d.m(nodes[0], nodes[1])
        canon = ((nodes[0], 1), (nodes[1], 2))
        if m == 2:
            raise AssertionError("disconnected pair passed as a component")
        if m == 3:
            return ComponentType("A", 2, canon)
        if m == 4:
            return ComponentType("B", 2, canon)
        if m == 6:
            return ComponentType("G", 2, canon)
        return ComponentType("I2", 2, canon, m=m)

    if len(d.edges) != n - 1:
        raise NotSpherical(f"component on {list(nodes)} contains a circuit")
    degrees = {i: d.degree(i) for i in nodes}
    if any(deg > 3 for deg in degrees.values()):
        raise NotSpherical(f"component on {list(nodes)} has a node of degree > 3")
    branch = [i for i in nodes if degrees[i] == 3]
    big = sorted(m for _, _, m in d.edges if m > 3)
    if len(branch) > 1:
        raise NotSpherical(f"component on {list(nodes)} has two branch nodes")

    if branch:
        if big:
            raise NotSpherical(f"branched component on {list(nodes)} with edge label > 3")
        b = branch[0]
        arms = []
        for first in d.neighbors(b):
            arm = [first]
            prev, cur = b, first
            while True:
                nxt = [x for x in d.neighbors(cur) if x != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                arm.append(cur)
            arms.append(arm)
        arms.sort(key=lambda a: (len(a), a[-1]))
        lens = tuple(len(a) for a in arms)
        if lens[0] == 1 and lens[1] == 1:
            # D_n: two short arms become the fork, long arm runs to position 1
            rank = n
            canon = {b: rank - 2}
            short_sorted = sorted((arms[0][0], arms[1][0]))
            canon[short_sorted[0]] = rank - 1
            canon[short_sorted[1]] = rank
            for k, lab in enumerate(arms[2]):
                canon[lab] = rank - 3 - k
            return ComponentType("D", rank, tuple(sorted(canon.items())))
        if lens == (1, 2, 2) or lens == (1, 2, 3) or lens == (1, 2, 4):
            rank = n
            canon = {b: 4, arms[0][0]: 2}
            # the length-2 arm holds positions 3 (inner) and 1 (leaf);
            # for E_6 the tie between the two length-2 arms is broken by leaf label
            canon[arms[1][0]] = 3
            canon[arms[1][1]] = 1
            for k, lab in enumerate(arms[2]):
                canon[lab] = 5 + k
            return ComponentType("E", rank, tuple(sorted(canon.items())))
        raise NotSpherical(f"component on {list(nodes)}: branched shape {lens} is not finite")

    # path case
    ends = [i for i in nodes if degrees[i] == 1]
    start = min(ends)
    path = [start]
    prev, cur = None, start
    while len(path) < n:
        nxt = [x for x in d.neighbors(cur) if x != prev]
        prev, cur = cur, nxt[0]
        path.append(cur)
    labels = [d.m(path[k], path[k + 1]) for k in range(n - 1)]
    if len(big) > 1 or (big and big[-1] > 6) or (big and big[-1] == 6):
        raise NotSpherical(f"path component on {list(nodes)} with labels {labels} is not finite")
    if not big:
        return ComponentType("A", n, tuple((lab, k + 1) for k, lab in enumerate(path)))
    (special,) = big
    pos = labels.index(special)
    if special == 4:
        if pos == n - 2:
            ordered = path
        elif pos == 0:
            ordered = path[::-1]
        elif n == 4 and pos == 1:
            return ComponentType("F", 4, tuple((lab, k + 1) for k, lab in enumerate(path)))
        else:
            raise NotSpherical(
                f"path component on {list(nodes)} with interior double edge is not finite"
            )
        return ComponentType("B", n, tuple((lab, k + 1) for k, lab in enumerate(ordered)))
    if special == 5:
        if n not in (3, 4):
            raise NotSpherical(f"path component on {list(nodes)} with a 5-edge and rank {n}")
        if pos == 0:
            ordered = path
        elif pos == n - 2:
            ordered = path[::-1]
        else:
            raise NotSpherical(f"path component on {list(nodes)} with interior 5-edge")
        return ComponentType("H", n, tuple((lab, k + 1) for k, lab in enumerate(ordered)))
    raise AssertionError("unreachable")


def classify(d: CoxeterDiagram) -> tuple[ComponentType, ...]:
    """Recognized types of all components, ordered by smallest label."""
    return tuple(_classify_component(c) for c in connected_components(d))


def type_name(d: CoxeterDiagram) -> str:
    """Human-readable type, e.g. 'A5', 'B3+A1', 'I2(7)'."""
    if not d.nodes:
        return "empty"
    return "+".join(t.name for t in classify(d))


def is_automorphism(d: CoxeterDiagram, p: Permutation) -> bool:
    if p.domain != d.node_set:
        return False
    return all(d.m(p.of(i), p.of(j)) == d.m(i, j) for i, j, _ in d.edges) and all(
        d.m(p.of(i), p.of(j)) == 2
        for i, j in itertools.combinations(d.nodes, 2)
        if d.m(i, j) == 2
    )


def check_automorphisms(d: CoxeterDiagram, g: AutGroup) -> None:
    """Raise NotAnAutomorphism unless every generator preserves the matrix."""
    if set(g.domain) != set(d.nodes):
        raise NotAnAutomorphism("automorphism group domain differs from the node set")
    for p in g.generators:
        if not is_automorphism(d, p):
            raise NotAnAutomorphism(f"{p.cycle_string()} does not preserve the Coxeter matrix")


def diagram_automorphisms(d: CoxeterDiagram) -> AutGroup:
    """The full automorphism group as an explicit element list.

    Backtracking over label assignments, pruned by the multiset of incident
    edge labels; diagram ranks in scope are small, so this is plenty fast.
    """
    nodes = list(d.nodes)
    sig = {i: tuple(sorted(d.m(i, j) for j in d.neighbors(i))) for i in nodes}
    found: list[Permutation] = []

    def extend(assignment: dict[int, int], used: set[int], k: int) -> None:
        if k == len(nodes):
            found.append(Permutation.from_dict(dict(assignment)))
            return
        i = nodes[k]
        for cand in nodes:
            if cand in used or sig[cand] != sig[i]:
                continue
            ok = True
            for j, img in assignment.items():
                if d.m(i, j) != d.m(cand, img):
                    ok = False
                    break
            if ok:
                assignment[i] = cand
                used.add(cand)
                extend(assignment, used, k + 1)
                del assignment[i]
                used.remove(cand)

    extend({}, set(), 0)
    gens = tuple(p for p in found if not p.is_identity)
    return AutGroup(tuple(nodes), gens)


def orbits(d: CoxeterDiagram, g: AutGroup) -> tuple[tuple[int, ...], ...]:
    """Orbit partition of the node set, orbits ordered by smallest member."""
    check_automorphisms(d, g)
    remaining = set(d.nodes)
    out = []
    while remaining:
        start = min(remaining)
        orb = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for p in g.generators:
                    y = p.of(x)
                    if y not in orb:
                        orb.add(y)
                        nxt.append(y)
            frontier = nxt
        out.append(tuple(sorted(orb)))
        remaining -= orb
    return tuple(out)
