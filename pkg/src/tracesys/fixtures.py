"""Reference systems used by the test suite and handy for demos."""

from __future__ import annotations

from .monoid import TraceMonoid
from .system import ConcurrentSystem


def smallest_irreducible_monoid() -> TraceMonoid:
    """Three letters with a single commuting pair: the smallest alphabet
    whose dependence graph is connected but not complete."""
    return TraceMonoid("abc", [("a", "b")])


def two_state_system() -> ConcurrentSystem:
    """Two states, four letters, one commuting letter shared by both states.

    The smallest system whose states-and-cliques digraph has a null node:
    (s0, d) loops on itself and loses all other letters.
    """
    monoid = TraceMonoid("abcd", [("a", "d"), ("b", "d")])
    action = {
        ("s0", "a"): "s0",
        ("s0", "b"): "s1",
        ("s0", "d"): "s0",
        ("s1", "c"): "s0",
        ("s1", "d"): "s1",
    }
    return ConcurrentSystem(monoid, ["s0", "s1"], action)


def aztec_system() -> ConcurrentSystem:
    """Rotation dynamics on the 8 domino tilings of the order-2 Aztec diamond.

    Each letter rotates one 2x2 block of dominoes; rotations of disjoint
    blocks commute.  Primed states are written with a trailing ``p``.
    """
    monoid = TraceMonoid("abcde", [("a", "b"), ("d", "e")])
    states = ["0", "1", "2", "3", "0p", "1p", "2p", "3p"]
    edges = [
        ("0", "a", "1"),
        ("0", "b", "2"),
        ("1", "b", "3"),
        ("2", "a", "3"),
        ("3", "c", "3p"),
        ("3p", "d", "1p"),
        ("3p", "e", "2p"),
        ("1p", "e", "0p"),
        ("2p", "d", "0p"),
    ]
    action = {}
    for s, a, t in edges:
        action[(s, a)] = t
        action[(t, a)] = s
    return ConcurrentSystem(monoid, states, action)


def two_terminal_system() -> ConcurrentSystem:
    """Twelve states, six letters; irreducible, yet the positive part of its
    states-and-cliques digraph has two terminal strongly connected
    components (two disjoint 3-cycles of 2-cliques)."""
    monoid = TraceMonoid(
        "abcdef",
        [("a", "b"), ("a", "d"), ("b", "f"), ("c", "d"), ("c", "e"), ("e", "f")],
    )
    states = [str(i) for i in range(12)]
    action = {
        ("0", "a"): "3",
        ("0", "b"): "1",
        ("1", "a"): "4",
        ("1", "d"): "2",
        ("2", "a"): "5",
        ("3", "b"): "4",
        ("4", "c"): "7",
        ("4", "d"): "5",
        ("5", "c"): "8",
        ("5", "e"): "6",
        ("6", "c"): "9",
        ("7", "d"): "8",
        ("8", "e"): "9",
        ("8", "f"): "11",
        ("9", "b"): "10",
        ("9", "f"): "0",
        ("10", "f"): "1",
        ("11", "e"): "0",
    }
    return ConcurrentSystem(monoid, states, action)


ALL_SYSTEMS = {
    "two_state": two_state_system,
    "canonical_abc": lambda: ConcurrentSystem.canonical(smallest_irreducible_monoid()),
    "aztec": aztec_system,
    "two_terminal": two_terminal_system,
}
