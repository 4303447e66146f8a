"""Vessel networks as validated directed acyclic graphs.

A network is a set of cylindrical pipes (directed edges) between nodes.
Flow enters at a single inlet node and leaves at a single outlet node;
interior nodes are bifurcations (one pipe in, several out), junctions
(several in, one out) or plain series connections (one in, one out).
"""

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import NetworkError

DEFAULT_PATH_LIMIT = 10_000


class NodeKind(Enum):
    INLET = "inlet"
    OUTLET = "outlet"
    BIFURCATION = "bifurcation"
    JUNCTION = "junction"
    SERIES = "series"


def classify_node(in_degree: int, out_degree: int) -> NodeKind:
    """Node kind as a pure function of in/out degree.

    Nodes that both merge and split flow are rejected: express them as a
    junction followed by a short series pipe and a bifurcation instead.
    """
    if in_degree == 0 and out_degree == 1:
        return NodeKind.INLET
    if in_degree == 1 and out_degree == 0:
        return NodeKind.OUTLET
    if in_degree == 1 and out_degree == 1:
        return NodeKind.SERIES
    if in_degree == 1 and out_degree >= 2:
        return NodeKind.BIFURCATION
    if in_degree >= 2 and out_degree == 1:
        return NodeKind.JUNCTION
    raise NetworkError(
        f"unsupported node degrees (in={in_degree}, out={out_degree}); "
        "merge-and-split nodes must be modelled as junction + pipe + bifurcation"
    )


@dataclass(frozen=True)
class Pipe:
    """Cylindrical segment of length `length` and radius `radius` (meters)."""

    id: int
    start: int
    end: int
    length: float
    radius: float

    def __post_init__(self):
        if self.length <= 0:
            raise NetworkError(f"pipe {self.id}: length must be > 0, got {self.length}")
        if self.radius <= 0:
            raise NetworkError(f"pipe {self.id}: radius must be > 0, got {self.radius}")
        if self.start == self.end:
            raise NetworkError(f"pipe {self.id}: start and end node coincide ({self.start})")

    @property
    def area(self) -> float:
        return math.pi * self.radius**2


@dataclass(frozen=True)
class Node:
    id: int
    kind: NodeKind
    inflows: tuple[int, ...]   # pipe ids, sorted
    outflows: tuple[int, ...]  # pipe ids, sorted


@dataclass(frozen=True)
class JunctionHop:
    """A junction traversed by a path, entered through `via_pipe`."""

    junction: int
    via_pipe: int


@dataclass(frozen=True)
class Path:
    """Directed pipe sequence between two nodes.

    `pipes` is ordered along the flow; `junctions` lists every junction
    node crossed together with the inflow pipe used to enter it.
    """

    pipes: tuple[int, ...]
    nodes: tuple[int, ...]
    junctions: tuple[JunctionHop, ...]


@dataclass(frozen=True)
class Network:
    pipes: tuple[Pipe, ...]
    nodes: tuple[Node, ...]
    label: str = ""
    _pipe_index: dict = field(default_factory=dict, repr=False, compare=False)
    _node_index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._pipe_index.update({p.id: p for p in self.pipes})
        self._node_index.update({n.id: n for n in self.nodes})

    def pipe(self, pipe_id: int) -> Pipe:
        return self._pipe_index[pipe_id]

    def node(self, node_id: int) -> Node:
        return self._node_index[node_id]

    @property
    def inlet(self) -> Node:
        return next(n for n in self.nodes if n.kind is NodeKind.INLET)

    @property
    def outlet(self) -> Node:
        return next(n for n in self.nodes if n.kind is NodeKind.OUTLET)

    @property
    def junctions(self) -> tuple[Node, ...]:
        return tuple(n for n in self.nodes if n.kind is NodeKind.JUNCTION)

    @property
    def pipe_count(self) -> int:
        return len(self.pipes)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def junction_count(self) -> int:
        return len(self.junctions)


def build_network(
    pipes: list[tuple[int, int, int, float, float]] | list[Pipe],
    label: str = "",
    extra_nodes: list[int] | None = None,
) -> Network:
    """Validate a pipe list and assemble a `Network`.

    `pipes` holds either `Pipe` objects or `(id, start, end, length, radius)`
    tuples. Node and pipe ordering is deterministic (ascending id).
    Raises `NetworkError` on duplicate ids, cycles, multiple inlets or
    outlets, dangling nodes, unsupported node degrees, or bad geometry.
    """
    pipe_objs = [p if isinstance(p, Pipe) else Pipe(*p) for p in pipes]
    if not pipe_objs:
        raise NetworkError("network has no pipes")

    seen_ids = set()
    for p in pipe_objs:
        if p.id in seen_ids:
            raise NetworkError(f"duplicate pipe id {p.id}")
        seen_ids.add(p.id)
    pipe_objs.sort(key=lambda p: p.id)

    node_ids = sorted(
        {p.start for p in pipe_objs}
        | {p.end for p in pipe_objs}
        | set(extra_nodes or ())
    )
    inflows = {v: [] for v in node_ids}
    outflows = {v: [] for v in node_ids}
    for p in pipe_objs:
        outflows[p.start].append(p.id)
        inflows[p.end].append(p.id)

    nodes = []
    for v in node_ids:
        if not inflows[v] and not outflows[v]:
            raise NetworkError(f"node {v} is not connected to any pipe")
        kind = classify_node(len(inflows[v]), len(outflows[v]))
        nodes.append(Node(v, kind, tuple(sorted(inflows[v])), tuple(sorted(outflows[v]))))

    inlets = [n for n in nodes if n.kind is NodeKind.INLET]
    outlets = [n for n in nodes if n.kind is NodeKind.OUTLET]
    if len(inlets) != 1:
        raise NetworkError(f"expected exactly one inlet, found {len(inlets)}: "
                           f"{[n.id for n in inlets]}")
    if len(outlets) != 1:
        raise NetworkError(f"expected exactly one outlet, found {len(outlets)}: "
                           f"{[n.id for n in outlets]}")

    net = Network(tuple(pipe_objs), tuple(nodes), label)
    _check_acyclic(net)
    _check_all_on_inlet_outlet_path(net)
    return net


def _check_acyclic(net: Network) -> None:
    # Kahn's algorithm; leftover nodes imply a directed cycle.
    remaining_in = {n.id: len(n.inflows) for n in net.nodes}
    queue = [n.id for n in net.nodes if remaining_in[n.id] == 0]
    visited = 0
    while queue:
        v = queue.pop()
        visited += 1
        for pid in net.node(v).outflows:
            w = net.pipe(pid).end
            remaining_in[w] -= 1
            if remaining_in[w] == 0:
                queue.append(w)
    if visited != net.node_count:
        cyclic = sorted(v for v, d in remaining_in.items() if d > 0)
        raise NetworkError(f"cycle detected involving nodes {cyclic}")


def _reachable(net: Network, start: int, forward: bool) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        node = net.node(v)
        pids = node.outflows if forward else node.inflows
        for pid in pids:
            p = net.pipe(pid)
            w = p.end if forward else p.start
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _check_all_on_inlet_outlet_path(net: Network) -> None:
    from_inlet = _reachable(net, net.inlet.id, forward=True)
    to_outlet = _reachable(net, net.outlet.id, forward=False)
    off_path = sorted(n.id for n in net.nodes
                      if n.id not in from_inlet or n.id not in to_outlet)
    if off_path:
        raise NetworkError(
            f"nodes {off_path} do not lie on any inlet-to-outlet path"
        )


def topological_nodes(net: Network) -> list[int]:
    """Node ids in a deterministic topological order (ties by id)."""
    remaining_in = {n.id: len(n.inflows) for n in net.nodes}
    ready = sorted(v for v, d in remaining_in.items() if d == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        inserted = False
        for pid in net.node(v).outflows:
            w = net.pipe(pid).end
            remaining_in[w] -= 1
            if remaining_in[w] == 0:
                ready.append(w)
                inserted = True
        if inserted:
            ready.sort()
    return order


def enumerate_paths(
    net: Network,
    source: int | None = None,
    target: int | None = None,
    max_paths: int = DEFAULT_PATH_LIMIT,
) -> list[Path]:
    """All directed paths from `source` to `target`.

    Defaults to inlet -> outlet. Paths are returned in lexicographic
    order of their pipe-id sequences. An unreachable target yields an
    empty list. More than `max_paths` paths raises `NetworkError`.
    """
    source = net.inlet.id if source is None else source
    target = net.outlet.id if target is None else target
    if source not in net._node_index or target not in net._node_index:
        raise NetworkError(f"unknown node in path query ({source}, {target})")
    if source == target:
        return []

    paths: list[Path] = []
    pipe_stack: list[int] = []
    node_stack: list[int] = [source]

    def visit(v: int) -> None:
        if v == target:
            junctions = tuple(
                JunctionHop(node, via)
                for node, via in zip(node_stack[1:-1], pipe_stack[:-1])
                if net.node(node).kind is NodeKind.JUNCTION
            )
            paths.append(Path(tuple(pipe_stack), tuple(node_stack), junctions))
            if len(paths) > max_paths:
                raise NetworkError(
                    f"more than {max_paths} paths between nodes {source} and "
                    f"{target}; raise max_paths to enumerate anyway"
                )
            return
        for pid in net.node(v).outflows:  # sorted -> lexicographic output
            pipe_stack.append(pid)
            node_stack.append(net.pipe(pid).end)
            visit(net.pipe(pid).end)
            pipe_stack.pop()
            node_stack.pop()

    visit(source)
    return paths


def inflow_set(net: Network, junction_id: int) -> set[int]:
    """Pipe ids flowing into junction `junction_id`."""
    node = net.node(junction_id)
    if node.kind is not NodeKind.JUNCTION:
        raise NetworkError(f"node {junction_id} is a {node.kind.value}, not a junction")
    return set(node.inflows)
