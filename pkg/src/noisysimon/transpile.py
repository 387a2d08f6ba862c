"""Topology-aware compilation: routing, peephole rewriting, and placement search.

The cost model weighs a two-qubit gate like ten one-qubit gates, so the
optimizer's job is almost entirely about avoiding swaps and shaving
Hadamards. Rewriting happens in a deterministic pass loop:

  R1  adjacent identical CNOT pairs cancel
  R2  adjacent H-H pairs cancel
  R3  per target wire, speculatively rewrite every CNOT onto a reversed
      control through the H-conjugation identity; keep the rewrite only if
      cancellation strictly lowers the circuit norm
  R4  gates with no causal path to a measured wire are dropped
  R5  wires left without gates (and unmeasured) are removed

R3 is the "control bit change": H(a) H(b) CNOT(a->b) H(a) H(b) equals
CNOT(b->a). Applying it jointly to all CNOTs sharing a target is what lets
the input-register Hadamards collapse into a single Hadamard on the shared
target wire.
"""

from __future__ import annotations

import importlib.resources
import itertools
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .circuits import CNOT, Circuit, Gate, H, build_simon_circuit, simon_wire_labels
from .simon import SimonFunction
from .statevector import CapacityError


class RoutingError(ValueError):
    """Required qubits are not connected on the device graph."""


# ---------------------------------------------------------------------------
# Topology


@dataclass(frozen=True)
class TopologyGraph:
    n: int
    edges: FrozenSet[Tuple[int, int]]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) outside vertex range")

    @classmethod
    def from_edges(cls, n: int, edges) -> "TopologyGraph":
        return cls(n, frozenset((min(u, v), max(u, v)) for u, v in edges))

    @classmethod
    def from_json(cls, path: str | Path) -> "TopologyGraph":
        d = json.loads(Path(path).read_text())
        return cls.from_edges(d["vertices"], d["edges"])

    def to_json(self, path: str | Path | None = None) -> str:
        text = json.dumps({"vertices": self.n, "edges": sorted(map(list, self.edges))})
        if path is not None:
            Path(path).write_text(text + "\n")
        return text

    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {v: [] for v in range(self.n)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def are_adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def shortest_path(self, u: int, v: int) -> List[int]:
        """Lexicographically smallest shortest path from u to v."""
        adj = self.adjacency()
        dist = {v: 0}
        frontier = [v]
        while frontier:
            nxt = []
            for w in frontier:
                for x in adj[w]:
                    if x not in dist:
                        dist[x] = dist[w] + 1
                        nxt.append(x)
            frontier = nxt
        if u not in dist:
            raise RoutingError(f"vertices {u} and {v} are disconnected")
        path = [u]
        cur = u
        while cur != v:
            cur = min(x for x in adj[cur] if dist.get(x, -1) == dist[cur] - 1)
            path.append(cur)
        return path


def melbourne_topology() -> TopologyGraph:
    """The 15-qubit two-row device graph used by all shipped experiments."""
    ref = importlib.resources.files("noisysimon.data") / "melbourne.json"
    d = json.loads(ref.read_text())
    return TopologyGraph.from_edges(d["vertices"], d["edges"])


# ---------------------------------------------------------------------------
# Circuit norm


@dataclass(frozen=True)
class CircuitNorm:
    g1: int
    g2: int

    @property
    def value(self) -> int:
        return self.g1 + 10 * self.g2

    def __int__(self) -> int:
        return self.value


def circuit_norm(circuit: Circuit) -> CircuitNorm:
    g1, g2 = circuit.gate_counts()
    return CircuitNorm(g1, g2)


def _norm_of(gates: Sequence[Gate]) -> int:
    g2 = sum(1 for g in gates if g.arity == 2)
    return (len(gates) - g2) + 10 * g2


# ---------------------------------------------------------------------------
# Configuration


def _label_key(label) -> Tuple[str, int, str]:
    text = str(label)
    head, tail = text[:1], text[1:]
    if tail.isdigit():
        return (head, int(tail), "")
    return (head, -1, text)


@dataclass(frozen=True)
class Configuration:
    """Injective assignment of logical wire labels to physical vertices."""

    items: Tuple[Tuple[str, int], ...]

    def __post_init__(self) -> None:
        vertices = [v for _, v in self.items]
        if len(set(vertices)) != len(vertices):
            raise ValueError("configuration must be injective")

    @classmethod
    def from_dict(cls, assign: Dict[str, int]) -> "Configuration":
        return cls(tuple(sorted(assign.items(), key=lambda kv: _label_key(kv[0]))))

    @classmethod
    def naive(cls, n: int) -> "Configuration":
        """x_j on vertex j, y_j on vertex n+j."""
        labels = simon_wire_labels(n)
        return cls.from_dict({lab: i for i, lab in enumerate(labels)})

    def as_dict(self) -> Dict[str, int]:
        return dict(self.items)

    def vertex_of(self, label: str) -> int:
        return self.as_dict()[label]

    def vertices(self) -> Tuple[int, ...]:
        return tuple(v for _, v in self.items)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @classmethod
    def from_json(cls, text: str) -> "Configuration":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# Routing


def _swap_gates(a: int, b: int) -> List[Gate]:
    return [Gate(CNOT, b, control=a), Gate(CNOT, a, control=b), Gate(CNOT, b, control=a)]


def route(circuit: Circuit, graph: TopologyGraph, config: Configuration) -> Circuit:
    """Map wires onto the device and insert swap chains for non-adjacent CNOTs.

    Each swap costs three CNOTs and moves the target wire one step along the
    lexicographically smallest shortest path toward the control. The mapping
    evolves as swaps execute; the measured list reports the final physical
    home of each logical measured wire, so the outcome semantics are
    unchanged.
    """
    assign = config.as_dict()
    pos: Dict[object, int] = {}
    occ: Dict[int, object] = {}
    for w in range(circuit.width):
        lab = circuit.label_of(w)
        if lab not in assign:
            raise ValueError(f"configuration is missing wire {lab!r}")
        v = assign[lab]
        if not 0 <= v < graph.n:
            raise ValueError(f"vertex {v} outside the device")
        if v in occ:
            raise ValueError(f"vertex {v} assigned twice")
        pos[lab] = v
        occ[v] = lab

    out: List[Gate] = []
    for g in circuit.gates:
        if g.arity == 1:
            out.append(Gate(g.kind, pos[circuit.label_of(g.target)]))
            continue
        c_lab = circuit.label_of(g.control)
        t_lab = circuit.label_of(g.target)
        pc, pt = pos[c_lab], pos[t_lab]
        if not graph.are_adjacent(pc, pt):
            path = graph.shortest_path(pc, pt)
            for k in range(len(path) - 1, 1, -1):
                a, b = path[k - 1], path[k]
                out.extend(_swap_gates(a, b))
                la, lb = occ.get(a), occ.get(b)
                if la is not None:
                    pos[la] = b
                if lb is not None:
                    pos[lb] = a
                occ[a], occ[b] = lb, la
                if occ[a] is None:
                    del occ[a]
                if occ[b] is None:
                    del occ[b]
            pc, pt = pos[c_lab], pos[t_lab]
        out.append(Gate(CNOT, pt, control=pc))

    measured = tuple(pos[circuit.label_of(m)] for m in circuit.measured)
    return Circuit(graph.n, tuple(out), measured, labels=tuple(range(graph.n)))


# ---------------------------------------------------------------------------
# Peephole rewriting


def _cancel_adjacent(gates: List[Gate]) -> List[Gate]:
    """R1 + R2 to fixpoint: drop pairs of identical CNOTs or H gates that are
    adjacent on every wire they touch."""
    changed = True
    while changed:
        changed = False
        removed = [False] * len(gates)
        for i, g in enumerate(gates):
            if removed[i] or g.kind not in (CNOT, H):
                continue
            qs = set(g.qubits)
            for j in range(i + 1, len(gates)):
                if removed[j] or not (qs & set(gates[j].qubits)):
                    continue
                if gates[j] == g:
                    removed[i] = removed[j] = True
                    changed = True
                break
        if changed:
            gates = [g for k, g in enumerate(gates) if not removed[k]]
    return gates


def _expand_control_change(gates: Sequence[Gate], group: set) -> List[Gate]:
    out: List[Gate] = []
    for k, g in enumerate(gates):
        if k in group:
            c, t = g.control, g.target
            out += [Gate(H, c), Gate(H, t), Gate(CNOT, c, control=t), Gate(H, c), Gate(H, t)]
        else:
            out.append(g)
    return out


def _control_change(gates: List[Gate], width: int) -> List[Gate]:
    """R3: per target wire, flip all CNOTs onto the shared wire as control if
    the Hadamard bookkeeping strictly pays off."""
    for t in range(width):
        group = {k for k, g in enumerate(gates) if g.kind == CNOT and g.target == t}
        if not group:
            continue
        candidate = _cancel_adjacent(_expand_control_change(gates, group))
        if _norm_of(candidate) < _norm_of(gates):
            gates = candidate
    return gates


def _live_sweep(gates: List[Gate], measured: Tuple[int, ...]) -> List[Gate]:
    """R4: keep only gates with a causal path to a measured wire."""
    live = set(measured)
    kept: List[Gate] = []
    for g in reversed(gates):
        qs = set(g.qubits)
        if qs & live:
            live |= qs
            kept.append(g)
    kept.reverse()
    return kept


def _compact(circuit: Circuit) -> Circuit:
    """R5: drop wires that carry no gates and are not measured."""
    used = set(circuit.measured)
    for g in circuit.gates:
        used.update(g.qubits)
    if len(used) == circuit.width:
        return circuit
    order = sorted(used)
    remap = {old: new for new, old in enumerate(order)}
    gates = tuple(
        Gate(g.kind, remap[g.target], None if g.control is None else remap[g.control])
        for g in circuit.gates
    )
    measured = tuple(remap[m] for m in circuit.measured)
    labels = None
    if circuit.labels is not None:
        labels = tuple(circuit.labels[old] for old in order)
    return Circuit(len(order), gates, measured, labels)


def peephole_optimize(circuit: Circuit) -> Circuit:
    """Run R1..R4 to fixpoint, then remove empty wires."""
    gates = list(circuit.gates)
    while True:
        before = list(gates)
        gates = _cancel_adjacent(gates)
        gates = _control_change(gates, circuit.width)
        gates = _live_sweep(gates, circuit.measured)
        if gates == before:
            break
    return _compact(replace(circuit, gates=tuple(gates)))


# ---------------------------------------------------------------------------
# Configuration search


def _interaction_edges(circuit: Circuit) -> FrozenSet[Tuple[str, str]]:
    edges = set()
    for g in circuit.gates:
        if g.arity == 2:
            a, b = circuit.label_of(g.control), circuit.label_of(g.target)
            edges.add((min(a, b, key=_label_key), max(a, b, key=_label_key)))
    return frozenset(edges)


def _embeddings(
    nodes: List[str],
    edges: FrozenSet[Tuple[str, str]],
    graph: TopologyGraph,
) -> Iterator[Dict[str, int]]:
    """All injective node->vertex maps sending every edge to a device edge,
    enumerated lexicographically in the fixed node order."""
    adj = graph.adjacency()
    neighbors_of = {
        node: [other for e in edges for other in e if node in e and other != node]
        for node in nodes
    }
    assign: Dict[str, int] = {}
    used: set = set()

    def backtrack(k: int) -> Iterator[Dict[str, int]]:
        if k == len(nodes):
            yield dict(assign)
            return
        node = nodes[k]
        placed = [assign[m] for m in neighbors_of[node] if m in assign]
        if placed:
            cands = set(adj[placed[0]])
            for p in placed[1:]:
                cands &= set(adj[p])
            candidates = sorted(cands - used)
        else:
            candidates = [v for v in range(graph.n) if v not in used]
        for v in candidates:
            assign[node] = v
            used.add(v)
            yield from backtrack(k + 1)
            used.discard(v)
            del assign[node]

    yield from backtrack(0)


def _fill_free_vertices(
    partial: Dict[str, int], all_labels: Sequence[str], graph: TopologyGraph
) -> Configuration:
    used = set(partial.values())
    free = [v for v in range(graph.n) if v not in used]
    assign = dict(partial)
    for lab in sorted(all_labels, key=_label_key):
        if lab not in assign:
            assign[lab] = free.pop(0)
    return Configuration.from_dict(assign)


def compile_simon_circuit(
    f: SimonFunction, graph: TopologyGraph, config: Configuration
) -> Circuit:
    """Build, optimize, place+route, and re-optimize the period-finding circuit.

    Optimizing before layout keeps the router away from wires the rewriter
    is about to delete anyway (the redundant copy of the control wire).
    """
    logical = peephole_optimize(build_simon_circuit(f))
    return peephole_optimize(route(logical, graph, config))


def _search(
    f: SimonFunction, graph: TopologyGraph, limit: Optional[int]
) -> Tuple[List[Configuration], CircuitNorm]:
    if 2 * f.n > graph.n:
        raise CapacityError(f"need {2 * f.n} wires but the device has {graph.n}")
    logical = peephole_optimize(build_simon_circuit(f))
    nodes = sorted((logical.label_of(w) for w in range(logical.width)), key=_label_key)
    edges = _interaction_edges(logical)
    all_labels = simon_wire_labels(f.n)

    configs: List[Configuration] = []
    seen = set()
    for emb in _embeddings(nodes, edges, graph):
        cfg = _fill_free_vertices(emb, all_labels, graph)
        if cfg.items in seen:
            continue
        seen.add(cfg.items)
        configs.append(cfg)
        if limit is not None and len(configs) >= limit:
            break

    if configs:
        best = compile_simon_circuit(f, graph, configs[0])
        return configs, circuit_norm(best)

    # No swap-free placement exists: fall back to exhaustive routed search.
    k = len(nodes)
    count = 1
    for i in range(k):
        count *= graph.n - i
    if count > 500_000:
        raise CapacityError("no swap-free placement and exhaustive search is infeasible")
    best_cfg = None
    best_cn = None
    for placement in itertools.permutations(range(graph.n), k):
        cfg = _fill_free_vertices(dict(zip(nodes, placement)), all_labels, graph)
        cn = circuit_norm(compile_simon_circuit(f, graph, cfg))
        if best_cn is None or cn.value < best_cn.value:
            best_cfg, best_cn = cfg, cn
    return [best_cfg], best_cn


def search_min_configuration(
    f: SimonFunction, graph: TopologyGraph
) -> Tuple[Configuration, CircuitNorm]:
    """A configuration whose routed+optimized circuit attains the minimum norm."""
    configs, cn = _search(f, graph, limit=1)
    return configs[0], cn


def enumerate_min_configurations(
    f: SimonFunction, graph: TopologyGraph, limit: int
) -> List[Configuration]:
    """Up to `limit` distinct configurations attaining the minimal norm."""
    configs, _ = _search(f, graph, limit=limit)
    return configs
