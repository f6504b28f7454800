"""Digraphs of states-and-cliques, SCC condensation, and execution counting.

Nodes of the plain graph are (state, clique) pairs with the clique enabled
at the state; the augmented graph unfolds each node into a chain of
(state, clique, i) triples, one per letter, so that path length counts
letters instead of cliques.  Path counts use Python big integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TraceSysError
from .monoid import Clique
from .system import ConcurrentSystem

Adjacency = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------- condensation

@dataclass(frozen=True)
class Condensation:
    """SCC structure of a digraph: components numbered by smallest node index."""

    comp_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    succ: tuple[tuple[int, ...], ...]  # DAG arcs between distinct components
    terminal: tuple[bool, ...]

    def reaches(self, i: int, j: int) -> bool:
        """Reflexive-transitive reachability between components."""
        seen = {i}
        queue = [i]
        while queue:
            u = queue.pop()
            if u == j:
                return True
            for v in self.succ[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return j in seen


def tarjan_sccs(succ: Adjacency) -> list[list[int]]:
    """Strongly connected components, iteratively (no recursion limit)."""
    n = len(succ)
    index = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    comps: list[list[int]] = []

    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for k in range(pi, len(succ[v])):
                w = succ[v][k]
                if index[w] < 0:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                u = work[-1][0]
                lowlink[u] = min(lowlink[u], lowlink[v])
    return comps


def condense(succ: Adjacency) -> Condensation:
    comps = sorted(tarjan_sccs(succ), key=min)
    comp_of = [0] * len(succ)
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    out_arcs = [set() for _ in comps]
    for v in range(len(succ)):
        for w in succ[v]:
            if comp_of[v] != comp_of[w]:
                out_arcs[comp_of[v]].add(comp_of[w])
    return Condensation(
        comp_of=tuple(comp_of),
        components=tuple(tuple(c) for c in comps),
        succ=tuple(tuple(sorted(a)) for a in out_arcs),
        terminal=tuple(not a for a in out_arcs),
    )


def is_acyclic(succ: Adjacency) -> bool:
    """True iff the adjacency is nilpotent: every SCC is a loopless singleton."""
    for comp in tarjan_sccs(succ):
        if len(comp) > 1:
            return False
        v = comp[0]
        if v in succ[v]:
            return False
    return True


# ---------------------------------------------------------------- states-and-cliques

@dataclass
class StateCliqueGraph:
    """Plain ("dsc") or augmented ("adsc") digraph of states-and-cliques.

    ``labels`` holds the positive flags once :func:`classify_nodes` ran;
    kinds ending in "+" denote the induced positive subgraph.
    """

    kind: str
    system: ConcurrentSystem
    nodes: tuple[tuple, ...]
    succ: Adjacency
    labels: tuple[bool, ...] | None = None

    def __post_init__(self):
        self.index = {node: i for i, node in enumerate(self.nodes)}
        self._cond: Condensation | None = None

    def __len__(self) -> int:
        return len(self.nodes)

    def condensation(self) -> Condensation:
        if self._cond is None:
            self._cond = condense(self.succ)
        return self._cond

    def positive_subgraph(self) -> "StateCliqueGraph":
        """Induced subgraph on the positive nodes."""
        if self.labels is None:
            classify_nodes(self)
        keep = [i for i, pos in enumerate(self.labels) if pos]
        remap = {old: new for new, old in enumerate(keep)}
        succ = tuple(
            tuple(remap[w] for w in self.succ[v] if w in remap) for v in keep
        )
        return StateCliqueGraph(
            kind=self.kind + "+",
            system=self.system,
            nodes=tuple(self.nodes[i] for i in keep),
            succ=succ,
            labels=(True,) * len(keep),
        )

    def node_str(self, i: int) -> str:
        node = self.nodes[i]
        if len(node) == 2:
            return f"({node[0]},{node[1]})"
        return f"({node[0]},{node[1]},{node[2]})"


def build_dsc(system: ConcurrentSystem) -> StateCliqueGraph:
    """Nodes (state, clique) for enabled non-empty cliques; arcs follow the
    action and the clique normality relation."""
    nodes: list[tuple[str, Clique]] = []
    for s in system.states:
        for c in system.enabled_cliques(s):
            nodes.append((s, c))
    index = {node: i for i, node in enumerate(nodes)}
    succ = []
    for s, c in nodes:
        t = system.clique_target(s, c)
        out = [
            index[(t, d)]
            for d in system.enabled_cliques(t)
            if system.monoid.normal_step(c, d)
        ]
        succ.append(tuple(out))
    return StateCliqueGraph("dsc", system, tuple(nodes), tuple(succ))


def build_adsc(system: ConcurrentSystem) -> StateCliqueGraph:
    """Unfold every (state, clique) node into a chain of |clique| triples."""
    dsc = build_dsc(system)
    nodes: list[tuple[str, Clique, int]] = []
    first = {}
    last = {}
    for s, c in dsc.nodes:
        first[(s, c)] = len(nodes)
        for i in range(1, c.size + 1):
            nodes.append((s, c, i))
        last[(s, c)] = len(nodes) - 1
    succ: list[tuple[int, ...]] = []
    for s, c in dsc.nodes:
        for i in range(1, c.size):
            succ.append((first[(s, c)] + i,))
        succ.append(tuple(first[dsc.nodes[w]] for w in dsc.succ[dsc.index[(s, c)]]))
    return StateCliqueGraph("adsc", system, tuple(nodes), tuple(succ))


def classify_nodes(graph: StateCliqueGraph) -> tuple[bool, ...]:
    """Positive/null labels by exact reachability.

    A node is positive iff it reaches, reflexively, a node whose clique is
    maximal (for inclusion) among the enabled cliques at its state.
    """
    system = graph.system
    maximal: dict[str, set[int]] = {}
    for s in system.states:
        enabled = system.enabled_cliques(s)
        maximal[s] = {
            c.mask
            for c in enabled
            if not any(d.mask != c.mask and d.mask & c.mask == c.mask for d in enabled)
        }
    targets = [
        i for i, node in enumerate(graph.nodes) if node[1].mask in maximal[node[0]]
    ]
    pred = [[] for _ in graph.nodes]
    for v, out in enumerate(graph.succ):
        for w in out:
            pred[w].append(v)
    positive = [False] * len(graph.nodes)
    queue = list(targets)
    for v in targets:
        positive[v] = True
    while queue:
        w = queue.pop()
        for v in pred[w]:
            if not positive[v]:
                positive[v] = True
                queue.append(v)
    graph.labels = tuple(positive)
    return graph.labels


# ---------------------------------------------------------------- path counting

def _check_adsc(adsc: StateCliqueGraph) -> None:
    if not adsc.kind.startswith("adsc"):
        raise TraceSysError("path counting requires the augmented graph")


def count_paths_table(
    adsc: StateCliqueGraph, origin: str, max_len: int
) -> list[dict[str, int]]:
    """Execution counts from ``origin``: one {target: count} dict per length.

    Entry ``n`` maps each reachable target state to the number of
    executions of length exactly ``n`` ending there (absent = 0).  Exact
    big-integer dynamic programming over the augmented graph.
    """
    _check_adsc(adsc)
    system = adsc.system
    system.state_index(origin)
    end_target = {
        i: system.clique_target(s, c)
        for i, (s, c, k) in enumerate(adsc.nodes)
        if k == c.size
    }
    vec = [0] * len(adsc.nodes)
    for i, (s, c, k) in enumerate(adsc.nodes):
        if s == origin and k == 1:
            vec[i] = 1
    table: list[dict[str, int]] = [{origin: 1}]
    for _ in range(max_len):
        counts: dict[str, int] = {}
        for i, t in end_target.items():
            if vec[i]:
                counts[t] = counts.get(t, 0) + vec[i]
        table.append({s: counts[s] for s in system.states if s in counts})
        nxt = [0] * len(adsc.nodes)
        for v, x in enumerate(vec):
            if x:
                for w in adsc.succ[v]:
                    nxt[w] += x
        vec = nxt
    return table


def count_paths(
    adsc: StateCliqueGraph, origin: str, target: str | None, n: int
) -> int:
    """Number of executions of length ``n`` from ``origin`` (to ``target``)."""
    if n < 0:
        raise TraceSysError("length must be non-negative")
    if target is not None:
        adsc.system.state_index(target)
    table = count_paths_table(adsc, origin, n)
    counts = table[n]
    if target is None:
        return sum(counts.values())
    return counts.get(target, 0)
