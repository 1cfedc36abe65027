"""Independent oracles and small builders used across the test suite.

Everything here recomputes results from first principles (brute force,
exhaustive path enumeration, literal substitution rules) without touching
the library's rewriting engine, so agreement is a real cross-check.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from outangles import (
    BraidGenerator,
    Crossing,
    Diagram,
    UoInterval,
    VirtualBraidWord,
    parse_vpb,
)


def oracle_renumber(d: Diagram) -> Diagram:
    """Sort-and-renumber tidy, written directly from the field definitions."""
    new_over: dict[int, tuple[int, int]] = {}
    new_under: dict[int, tuple[int, int]] = {}
    eos = []
    k = 1
    for a in range(1, d.n + 1):
        on_strand = []
        for idx, c in enumerate(d.crossings):
            if c.over[0] == a:
                on_strand.append((c.over[1], "o", idx))
            if c.under[0] == a:
                on_strand.append((c.under[1], "u", idx))
        on_strand.sort(key=lambda item: item[0])
        for _, role, idx in on_strand:
            if role == "o":
                new_over[idx] = (a, k)
            else:
                new_under[idx] = (a, k)
            k += 1
        eos.append(k)
        k += 1
    crossings = sorted(
        (Crossing(c.sign, new_over[idx], new_under[idx]) for idx, c in enumerate(d.crossings)),
        key=lambda c: c.over[1],
    )
    return Diagram(d.n, tuple(crossings), tuple(eos))


def cascade_edges(d: Diagram) -> tuple[list[tuple[int, object]], list[tuple[object, object]]]:
    """Mark nodes and cascade edges (strand successors plus over-to-under
    drops), built straight from the keys."""
    nodes = []
    for idx, c in enumerate(d.crossings):
        nodes.append((c.over[0], c.over[1], "o", idx))
        nodes.append((c.under[0], c.under[1], "u", idx))
    edges = []
    for a in range(1, d.n + 1):
        on_strand = sorted(nd for nd in nodes if nd[0] == a)
        for u, v in zip(on_strand, on_strand[1:]):
            edges.append((u, v))
    for idx, c in enumerate(d.crossings):
        edges.append(
            ((c.over[0], c.over[1], "o", idx), (c.under[0], c.under[1], "u", idx))
        )
    return nodes, edges


def oracle_is_acyclic(d: Diagram) -> bool:
    """Exhaustive cascade-path search: follow every path, fail on a repeat."""
    nodes, edges = cascade_edges(d)
    succ: dict[object, list[object]] = {nd: [] for nd in nodes}
    for u, v in edges:
        succ[u].append(v)

    def explore(node, on_path):
        for nxt in succ[node]:
            if nxt in on_path:
                return False
            if not explore(nxt, on_path | {nxt}):
                return False
        return True

    return all(explore(nd, frozenset([nd])) for nd in nodes)


def oracle_is_ou(d: Diagram) -> bool:
    for a in range(1, d.n + 1):
        marks = []
        for c in d.crossings:
            if c.over[0] == a:
                marks.append((c.over[1], True))
            if c.under[0] == a:
                marks.append((c.under[1], False))
        marks.sort()
        roles = [over for _, over in marks]
        if roles != sorted(roles, reverse=True):
            return False
    return True


def oracle_glide(d: Diagram, iv: UoInterval) -> Diagram:
    """Literal substitution rule with rational one-third offsets (pre-tidy)."""
    a = d.crossings[iv.under_crossing]
    b = d.crossings[iv.over_crossing]
    s1, s2 = a.sign, b.sign
    i1, j1, i2, j2 = a.over, a.under, b.over, b.under
    rest = [
        c
        for idx, c in enumerate(d.crossings)
        if idx not in (iv.under_crossing, iv.over_crossing)
    ]
    rest.append(Crossing(s2, j1, j2))
    rest.append(Crossing(s1, i1, i2))
    rest.append(
        Crossing(
            s1 * s2,
            (i1[0], i1[1] - Fraction(s1, 3)),
            (j2[0], j2[1] + Fraction(s2, 3)),
        )
    )
    rest.append(
        Crossing(
            -s1 * s2,
            (i1[0], i1[1] + Fraction(s1, 3)),
            (j2[0], j2[1] - Fraction(s2, 3)),
        )
    )
    return Diagram(d.n, tuple(rest), d.eos_keys)


def word_is_proud(word, kind: str) -> bool:
    """Two-letter pride predicate applied along the word."""
    for g, h in zip(word, word[1:]):
        if kind == "virtual":
            if h == g.inverse():
                return False
            if not ({g.i, g.j} & {h.i, h.j}) and h.sort_key() < g.sort_key():
                return False
        else:
            if h == -g:
                return False
            gk = (abs(g), 0 if g > 0 else 1)
            hk = (abs(h), 0 if h > 0 else 1)
            if abs(abs(g) - abs(h)) >= 2 and hk < gk:
                return False
    return True


def twist_word(k: int) -> VirtualBraidWord:
    """The k-twist two-strand braid."""
    if k % 2 == 0:
        toks = ["s1,2", "s2,1"] * (k // 2)
    else:
        toks = ["s2,1"] + ["s1,2", "s2,1"] * ((k - 1) // 2)
    return parse_vpb("vpb 2: " + " ".join(toks))


def all_two_crossing_diagrams_two_strands():
    """Every Gauss diagram with exactly two crossings on two strands.

    Enumerates all strand assignments of the four marks, all interleavings
    on each strand, and both sign choices.
    """
    marks = [("o", 0), ("u", 0), ("o", 1), ("u", 1)]
    for strands in itertools.product((1, 2), repeat=4):
        groups: dict[int, list[tuple[str, int]]] = {1: [], 2: []}
        for mk, a in zip(marks, strands):
            groups[a].append(mk)
        orders1 = itertools.permutations(groups[1])
        for o1 in orders1:
            for o2 in itertools.permutations(groups[2]):
                key_of: dict[tuple[str, int], tuple[int, int]] = {}
                k = 1
                for a, seq in ((1, o1), (2, o2)):
                    for mk in seq:
                        key_of[mk] = (a, k)
                        k += 1
                    k += 1  # reserve an end-of-strand key
                eos = (len(o1) + 1, len(o1) + len(o2) + 2)
                for s0, s1 in itertools.product((1, -1), repeat=2):
                    yield Diagram(
                        2,
                        (
                            Crossing(s0, key_of[("o", 0)], key_of[("u", 0)]),
                            Crossing(s1, key_of[("o", 1)], key_of[("u", 1)]),
                        ),
                        eos,
                    )


def all_path_words(graph) -> list[tuple[BraidGenerator, ...]]:
    """Every source-to-sink label sequence of an extraction graph."""
    succ: dict[bytes, list[tuple[BraidGenerator, bytes]]] = {}
    for src, g, dst in graph.edges:
        succ.setdefault(src, []).append((g, dst))
    out = []

    def walk(key, acc):
        if key == graph.sink and key not in succ:
            out.append(tuple(acc))
            return
        for g, dst in succ.get(key, []):
            walk(dst, acc + [g])

    walk(graph.source, [])
    return out


def is_bipartite_undirected(graph) -> bool:
    adj: dict[bytes, set[bytes]] = {k: set() for k in graph.nodes}
    for src, _, dst in graph.edges:
        adj[src].add(dst)
        adj[dst].add(src)
    color: dict[bytes, int] = {}
    for start in graph.nodes:
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in adj[v]:
                if w not in color:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def random_vpb_word(rng: random.Random, n: int, length: int) -> VirtualBraidWord:
    letters = []
    for _ in range(length):
        i = rng.randrange(1, n + 1)
        j = rng.randrange(1, n + 1)
        while j == i:
            j = rng.randrange(1, n + 1)
        letters.append(BraidGenerator(i, j, rng.choice((1, -1))))
    return VirtualBraidWord(n, tuple(letters))
