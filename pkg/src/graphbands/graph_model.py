"""Fundamental-cell description of a periodic metric graph and its
reduction to a compact magnetic graph.

A periodic graph is described by one translational cell: a finite metric
graph together with a list of vertex identifications, one per lattice
generator, telling which boundary vertex is glued to which translate.
Quasi-periodic boundary conditions are traded for magnetic fluxes on the
compact quotient graph: every edge ending at an identified "plus" vertex
picks up one unit of flux for that generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np


class GraphError(ValueError):
    """Structurally invalid cell or magnetic graph.

    Carries the full list of violations in ``violations`` so callers can
    report all problems at once rather than the first one found.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Edge:
    """Directed metric edge.

    ``length`` is None while the edge is an unbound slot (topology fixed,
    metric not yet chosen).  ``flux`` holds one integer winding number per
    lattice generator; cell edges keep it empty and acquire flux during
    reduction.
    """

    id: int
    tail: int
    head: int
    length: float | None = None
    flux: tuple[int, ...] = ()

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def reversed(self) -> "Edge":
        return replace(self, tail=self.head, head=self.tail,
                       flux=tuple(-f for f in self.flux))


@dataclass(frozen=True)
class Identification:
    """Gluing instruction: vertex ``plus`` is the translate of ``minus``
    under lattice generator ``generator`` (1-based)."""

    generator: int
    plus: int
    minus: int


@dataclass(frozen=True)
class FundamentalCell:
    """One translational cell of a periodic metric graph.

    Not validated on construction; run :func:`validate_cell` to get a
    report, or :func:`bloch_reduce` which raises on an invalid cell.
    """

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    identifications: tuple[Identification, ...]
    generators: int
    name: str = ""


def _connected(vertices, adjacency_pairs) -> bool:
    """True if the graph on ``vertices`` with the given undirected pairs
    is connected (single component)."""
    verts = list(vertices)
    if not verts:
        return False
    index = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in adjacency_pairs:
        ia, ib = find(index[a]), find(index[b])
        if ia != ib:
            parent[ia] = ib
    root = find(0)
    return all(find(i) == root for i in range(len(verts)))


def validate_cell(cell: FundamentalCell) -> list[str]:
    """Check a fundamental cell against its structural invariants.

    Returns a list of human-readable violation strings, empty when the
    cell is valid.  Checks: vertex set nonempty and duplicate-free,
    edge endpoints and identification vertices exist, edge ids unique,
    bound lengths strictly positive and finite, generator indices in
    1..J, identifications glue two distinct vertices, and the graph is
    connected after all identifications are applied.
    """
    report = []
    if cell.generators < 0:
        report.append("generator count %d is negative" % cell.generators)
    if not cell.vertices:
        report.append("vertex set is empty")
    if len(set(cell.vertices)) != len(cell.vertices):
        report.append("duplicate vertex ids")
    vset = set(cell.vertices)

    seen_ids = set()
    for e in cell.edges:
        if e.id in seen_ids:
            report.append("duplicate edge id %r" % (e.id,))
        seen_ids.add(e.id)
        for v in (e.tail, e.head):
            if v not in vset:
                report.append("edge %r references unknown vertex %r" % (e.id, v))
        if e.length is not None:
            if not np.isfinite(e.length):
                report.append("edge %r has non-finite length" % (e.id,))
            elif e.length <= 0:
                report.append("edge %r has nonpositive length" % (e.id,))
        if e.flux and any(f != 0 for f in e.flux):
            report.append("cell edge %r carries flux; flux belongs to the "
                          "reduced graph" % (e.id,))

    for ident in cell.identifications:
        if not 1 <= ident.generator <= cell.generators:
            report.append("identification generator %d outside 1..%d"
                          % (ident.generator, cell.generators))
        if ident.plus == ident.minus:
            report.append("identification of vertex %r with itself" % (ident.plus,))
        for v in (ident.plus, ident.minus):
            if v not in vset:
                report.append("identification references unknown vertex %r" % (v,))

    if not report:
        pairs = [(e.tail, e.head) for e in cell.edges]
        pairs += [(i.plus, i.minus) for i in cell.identifications]
        if not _connected(cell.vertices, pairs):
            report.append("graph is disconnected after identification")
    return report


@dataclass(frozen=True)
class MagneticGraph:
    """Compact metric graph with integer magnetic flux per edge.

    Validated on construction; raises :class:`GraphError` listing every
    violation.  Self-loops are allowed.  Lengths may be None (unbound
    slots); bind them with :func:`bind_lengths` or
    :func:`with_random_lengths` before doing spectral work.
    """

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    generators: int
    name: str = ""

    def __post_init__(self):
        report = self._violations()
        if report:
            raise GraphError(report)

    def _violations(self) -> list[str]:
        report = []
        if self.generators < 0:
            report.append("generator count %d is negative" % self.generators)
        if not self.vertices:
            report.append("vertex set is empty")
        if len(set(self.vertices)) != len(self.vertices):
            report.append("duplicate vertex ids")
        vset = set(self.vertices)
        seen_ids = set()
        for e in self.edges:
            if e.id in seen_ids:
                report.append("duplicate edge id %r" % (e.id,))
            seen_ids.add(e.id)
            for v in (e.tail, e.head):
                if v not in vset:
                    report.append("edge %r references unknown vertex %r"
                                  % (e.id, v))
            if e.length is not None:
                if not np.isfinite(e.length):
                    report.append("edge %r has non-finite length" % (e.id,))
                elif e.length <= 0:
                    report.append("edge %r has nonpositive length" % (e.id,))
            if len(e.flux) != self.generators:
                report.append("edge %r flux vector has length %d, expected %d"
                              % (e.id, len(e.flux), self.generators))
            elif any(f != int(f) for f in e.flux):
                report.append("edge %r has non-integer flux" % (e.id,))
        if not report:
            if not _connected(self.vertices, [(e.tail, e.head) for e in self.edges]):
                report.append("graph is disconnected")
        return report

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def is_bound(self) -> bool:
        """True when every edge has a numeric length."""
        return all(e.length is not None for e in self.edges)

    @property
    def lengths(self) -> np.ndarray:
        """Edge lengths as an array; raises on unbound slots."""
        if not self.is_bound:
            raise GraphError("graph has unbound length slots")
        return np.array([e.length for e in self.edges], dtype=float)

    @property
    def total_length(self) -> float:
        return float(self.lengths.sum())

    def degrees(self) -> dict[int, int]:
        """Vertex degrees; a self-loop contributes 2 to its vertex."""
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            deg[e.tail] += 1
            deg[e.head] += 1
        return deg


def bloch_reduce(cell: FundamentalCell) -> MagneticGraph:
    """Collapse a fundamental cell to its compact magnetic quotient graph.

    Each identification merges ``plus`` into ``minus``; an edge whose head
    sat at ``plus`` gains flux +1 for that generator, an edge whose tail
    sat there gains -1 (quasi-momentum enters as a phase where the wave
    crosses into the next cell).  Edges whose endpoints merge into the
    same vertex would become self-loops; they are split at an artificial
    midpoint into two half-length edges, the first keeping the full flux,
    so downstream code may assume identification-created loops carry a
    marker vertex.  Total metric length is preserved.

    Raises :class:`GraphError` with the full violation report when the
    cell is invalid.
    """
    report = validate_cell(cell)
    if report:
        raise GraphError(report)

    # flux picked up at the plus vertex of each identification
    flux = {e.id: [0] * cell.generators for e in cell.edges}
    for ident in cell.identifications:
        j = ident.generator - 1
        for e in cell.edges:
            if e.head == ident.plus:
                flux[e.id][j] += 1
            if e.tail == ident.plus:
                flux[e.id][j] -= 1

    # merge plus into minus, resolving chains of identifications
    target = {v: v for v in cell.vertices}

    def resolve(v):
        while target[v] != v:
            target[v] = target[target[v]]
            v = target[v]
        return v

    for ident in cell.identifications:
        a, b = resolve(ident.plus), resolve(ident.minus)
        if a != b:
            target[a] = b

    new_vertices = sorted({resolve(v) for v in cell.vertices})
    next_vertex = max(cell.vertices) + 1
    next_edge_id = max((e.id for e in cell.edges), default=0) + 1

    new_edges = []
    for e in cell.edges:
        tail, head = resolve(e.tail), resolve(e.head)
        f = tuple(flux[e.id])
        if tail == head and e.tail != e.head:
            # identification-created loop: split at a marker midpoint
            half = e.length / 2 if e.length is not None else None
            mid = next_vertex
            next_vertex += 1
            new_vertices.append(mid)
            new_edges.append(Edge(e.id, tail, mid, half, f))
            new_edges.append(Edge(next_edge_id, mid, head, half,
                                  (0,) * cell.generators))
            next_edge_id += 1
        else:
            new_edges.append(Edge(e.id, tail, head, e.length, f))

    return MagneticGraph(vertices=tuple(new_vertices),
                         edges=tuple(new_edges),
                         generators=cell.generators,
                         name=cell.name)


def bind_lengths(g: MagneticGraph, values) -> MagneticGraph:
    """Assign numeric lengths to the edges of ``g`` in edge order.

    ``values`` must have one strictly positive finite entry per edge.
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (g.edge_count,):
        raise GraphError("expected %d lengths, got shape %r"
                         % (g.edge_count, values.shape))
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        raise GraphError("lengths must be strictly positive and finite")
    edges = tuple(replace(e, length=float(l)) for e, l in zip(g.edges, values))
    return replace(g, edges=edges)


def with_random_lengths(g: MagneticGraph, seed: int) -> MagneticGraph:
    """Bind lengths drawn uniformly from [1, 2], reproducibly by seed.

    A generic draw is rationally independent with probability 1, which is
    the regime where torus-volume and band-density computations agree.
    """
    rng = np.random.default_rng(seed)
    return bind_lengths(g, rng.uniform(1.0, 2.0, size=g.edge_count))


# ---------------------------------------------------------------------------
# built-in examples
# ---------------------------------------------------------------------------

def build_example(name: str) -> MagneticGraph:
    """Construct a named example graph with unbound length slots.

    ``lasso``
        Single loop with one pendant edge, already in reduced magnetic
        form: the loop carries flux +1, the pendant none.  Two edges.
    ``loop_pendant`` (alias ``fig1b``)
        Same periodic graph described as a cell: a backbone edge whose
        endpoints are identified by the one generator, plus a pendant.
        Reduction splits the backbone loop, giving three edges.
    ``loop_path2`` (alias ``fig1c``)
        As above with the pendant subdivided into a two-edge path.  Four
        edges.
    ``loop_triangle`` (alias ``fig1d``)
        Loop with a triangle decoration hanging off a connector edge.
        Six edges after reduction.

    All four are single-generator graphs in the same universality class:
    for generic lengths their band densities coincide.
    """
    key = name.lower()
    if key == "lasso":
        return MagneticGraph(
            vertices=(0, 1),
            edges=(Edge(1, 0, 0, None, (1,)),
                   Edge(2, 1, 0, None, (0,))),
            generators=1,
            name="lasso",
        )
    if key in ("loop_pendant", "fig1b"):
        cell = FundamentalCell(
            vertices=(0, 1, 2),
            edges=(Edge(1, 0, 1),
                   Edge(2, 2, 0)),
            identifications=(Identification(1, plus=1, minus=0),),
            generators=1,
            name="loop_pendant",
        )
        return bloch_reduce(cell)
    if key in ("loop_path2", "fig1c"):
        cell = FundamentalCell(
            vertices=(0, 1, 2, 3),
            edges=(Edge(1, 0, 1),
                   Edge(2, 2, 0),
                   Edge(3, 3, 2)),
            identifications=(Identification(1, plus=1, minus=0),),
            generators=1,
            name="loop_path2",
        )
        return bloch_reduce(cell)
    if key in ("loop_triangle", "fig1d"):
        cell = FundamentalCell(
            vertices=(0, 1, 2, 3, 4),
            edges=(Edge(1, 0, 1),
                   Edge(2, 2, 0),
                   Edge(3, 2, 3),
                   Edge(4, 3, 4),
                   Edge(5, 4, 2)),
            identifications=(Identification(1, plus=1, minus=0),),
            generators=1,
            name="loop_triangle",
        )
        return bloch_reduce(cell)
    raise GraphError("unknown example %r" % (name,))


EXAMPLE_NAMES = ("lasso", "loop_pendant", "loop_path2", "loop_triangle")


# ---------------------------------------------------------------------------
# file interface
# ---------------------------------------------------------------------------

def from_payload(payload: dict) -> FundamentalCell | MagneticGraph:
    """Build a cell or magnetic graph from a parsed JSON payload.

    The payload must carry ``generators``, ``vertices`` and ``edges``
    (each edge an object with ``id``, ``from``, ``to``, ``length`` and
    optional ``flux``).  When a nonempty ``identifications`` list is
    present the result is a :class:`FundamentalCell` and explicit edge
    flux is rejected: flux is derived by reduction, never supplied.
    Otherwise the result is a validated :class:`MagneticGraph`.
    """
    try:
        generators = int(payload["generators"])
        vertices = tuple(int(v) for v in payload["vertices"])
        raw_edges = payload["edges"]
        idents = payload.get("identifications", [])
        graph_name = str(payload.get("name", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError("malformed graph payload: %s" % exc) from None

    def parse_edge(obj, with_flux):
        length = obj.get("length")
        flux = tuple(int(f) for f in obj.get("flux", ()))
        if not with_flux and any(flux):
            raise GraphError("edge %r: nonzero flux together with "
                             "identifications is not allowed" % (obj.get("id"),))
        if not with_flux:
            flux = ()
        elif not flux:
            flux = (0,) * generators
        return Edge(id=int(obj["id"]), tail=int(obj["from"]),
                    head=int(obj["to"]),
                    length=None if length is None else float(length),
                    flux=flux)

    try:
        if idents:
            edges = tuple(parse_edge(o, with_flux=False) for o in raw_edges)
            identifications = tuple(
                Identification(generator=int(i["generator"]),
                               plus=int(i["plus"]), minus=int(i["minus"]))
                for i in idents)
            return FundamentalCell(vertices=vertices, edges=edges,
                                   identifications=identifications,
                                   generators=generators, name=graph_name)
        edges = tuple(parse_edge(o, with_flux=True) for o in raw_edges)
        return MagneticGraph(vertices=vertices, edges=edges,
                             generators=generators, name=graph_name)
    except GraphError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError("malformed graph payload: %s" % exc) from None


def to_payload(obj: FundamentalCell | MagneticGraph) -> dict:
    """Inverse of :func:`from_payload`."""
    payload = {
        "name": obj.name,
        "generators": obj.generators,
        "vertices": list(obj.vertices),
        "edges": [],
    }
    for e in obj.edges:
        entry = {"id": e.id, "from": e.tail, "to": e.head, "length": e.length}
        if isinstance(obj, MagneticGraph):
            entry["flux"] = list(e.flux)
        payload["edges"].append(entry)
    if isinstance(obj, FundamentalCell):
        payload["identifications"] = [
            {"generator": i.generator, "plus": i.plus, "minus": i.minus}
            for i in obj.identifications]
    return payload


def load_graph(path) -> FundamentalCell | MagneticGraph:
    """Read a cell or magnetic graph from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError("malformed JSON in %s: %s" % (path, exc)) from None
    if not isinstance(payload, dict):
        raise GraphError("malformed graph file %s: expected an object" % path)
    return from_payload(payload)


def save_graph(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_payload(obj), fh, indent=2)
        fh.write("\n")


def as_magnetic(obj: FundamentalCell | MagneticGraph) -> MagneticGraph:
    """Reduce if given a cell, pass through if already magnetic."""
    if isinstance(obj, FundamentalCell):
        return bloch_reduce(obj)
    return obj
