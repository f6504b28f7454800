"""Line-oriented input format for concurrent systems, and its renderer.

    # comment
    [alphabet] a b c d
    [independence] a d ; b d
    [states] s0 s1
    [base] s0            (optional)
    [action]
    s0 a s0
    s1 c BOT

Sections may continue on following lines; ``BOT`` denotes the sink.
The parser reports line-anchored diagnostics and delegates semantic
validation to the system constructor.
"""

from __future__ import annotations

from .errors import ParseError
from .monoid import TraceMonoid
from .system import ConcurrentSystem

SECTIONS = ("alphabet", "independence", "states", "base", "action")
BOT = "BOT"


def _tokenize(text: str):
    """Yield (line_no, section, tokens) with comments and blanks stripped."""
    section = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            end = line.find("]")
            if end < 0:
                raise ParseError(line_no, "unterminated section header")
            name = line[1:end].strip()
            if name not in SECTIONS:
                raise ParseError(line_no, f"unknown section [{name}]")
            section = name
            rest = line[end + 1 :].strip()
            if rest:
                yield line_no, section, rest.split()
            continue
        if section is None:
            raise ParseError(line_no, "content before any section header")
        yield line_no, section, line.split()


def parse_system(text: str) -> ConcurrentSystem:
    alphabet: list[str] = []
    indep_tokens: list[str] = []
    states: list[str] = []
    base: list[tuple[int, str]] = []
    triples: list[tuple[int, list[str]]] = []
    seen: set[str] = set()

    for line_no, section, tokens in _tokenize(text):
        seen.add(section)
        if section == "alphabet":
            alphabet.extend(tokens)
        elif section == "independence":
            indep_tokens.extend(tokens)
        elif section == "states":
            states.extend(tokens)
        elif section == "base":
            base.extend((line_no, t) for t in tokens)
        elif section == "action":
            triples.append((line_no, tokens))

    for required in ("alphabet", "states", "action"):
        if required not in seen:
            raise ParseError(0, f"missing [{required}] section")

    pairs = []
    segment: list[str] = []
    stream = " ".join(indep_tokens).replace(";", " ; ").split()
    for tok in stream + [";"]:
        if tok == ";":
            if segment:
                if len(segment) != 2:
                    raise ParseError(
                        0, f"independence pair {' '.join(segment)!r} is not two letters"
                    )
                pairs.append((segment[0], segment[1]))
            segment = []
        else:
            segment.append(tok)

    if len(base) > 1:
        raise ParseError(base[1][0], "more than one base state")
    if base and base[0][1] not in states:
        raise ParseError(base[0][0], f"base state {base[0][1]!r} is not declared")
    for name in states:
        if name == BOT:
            raise ParseError(0, f"{BOT!r} is reserved for the sink and cannot name a state")

    state_set, letter_set = set(states), set(alphabet)
    action: dict[tuple[str, str], str | None] = {}
    for line_no, tokens in triples:
        if len(tokens) != 3:
            raise ParseError(line_no, "action entry must be 'state letter state|BOT'")
        s, a, t = tokens
        if s not in state_set:
            raise ParseError(line_no, f"unknown state {s!r}")
        if a not in letter_set:
            raise ParseError(line_no, f"unknown letter {a!r}")
        if t != BOT and t not in state_set:
            raise ParseError(line_no, f"unknown target state {t!r}")
        if (s, a) in action:
            raise ParseError(line_no, f"duplicate action entry for ({s}, {a})")
        action[(s, a)] = None if t == BOT else t

    monoid = TraceMonoid(alphabet, pairs)
    return ConcurrentSystem(
        monoid, states, action, base_state=base[0][1] if base else None
    )


def render_system(system: ConcurrentSystem) -> str:
    """Spec text whose parse is an identical system (round-trip)."""
    lines = [
        "[alphabet] " + " ".join(system.monoid.letters),
        "[independence] "
        + " ; ".join(f"{a} {b}" for a, b in system.monoid.independent_pairs),
        "[states] " + " ".join(system.states),
        "[base] " + system.base_state,
        "[action]",
    ]
    for s, a, t in system.letter_arcs():
        lines.append(f"{s} {a} {t}")
    return "\n".join(lines) + "\n"
