"""Virtual pure braid words, classical braid words, and their OU invariants.

A virtual pure braid word is a sequence of generators ``s(i,j)^±``, read
"strand i crosses over strand j".  Words include into diagrams one crossing
per letter (``iota``); the reduced OU form of that diagram (``ch``) is a
complete invariant: two words are equal in the virtual pure braid group iff
their ``ch`` diagrams have equal canonical keys.

Classical braid words use the usual signed position notation: letter ``+k``
crosses the strand in position ``k`` over the strand in position ``k + 1``,
``-k`` is its inverse.  They convert to virtual words by tracking which
strand currently occupies each position; non-pure words additionally carry
their end permutation, which joins the canonical key for identity tests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagram import Crossing, Diagram, canonical_key, compose, identity_diagram
from .errors import ParseError, StrandCountMismatch
from .rewrite import DEFAULT_MAX_ITERS, ou_normal_form

Permutation = tuple[int, ...]  # image array: position -> strand occupying it


@dataclass(frozen=True)
class BraidGenerator:
    """The generator in which strand ``i`` crosses over strand ``j``."""

    i: int
    j: int
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if self.i == self.j or self.i < 1 or self.j < 1:
            raise ValueError(f"invalid strand pair ({self.i}, {self.j})")

    def inverse(self) -> "BraidGenerator":
        return BraidGenerator(self.i, self.j, -self.sign)

    def sort_key(self) -> tuple[int, int, int]:
        # lexicographic (i, j, sign) with + before -
        return (self.i, self.j, 0 if self.sign > 0 else 1)

    def token(self) -> str:
        return f"s{self.i},{self.j}" + ("" if self.sign > 0 else "'")


def vpb_generators(n: int) -> list[BraidGenerator]:
    """All ``2n(n-1)`` generators on ``n`` strands, in sort-key order."""
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                out.append(BraidGenerator(i, j, 1))
                out.append(BraidGenerator(i, j, -1))
    return out


@dataclass(frozen=True)
class VirtualBraidWord:
    n: int
    letters: tuple[BraidGenerator, ...]

    def __post_init__(self) -> None:
        for g in self.letters:
            if g.i > self.n or g.j > self.n:
                raise ValueError(f"generator {g.token()} out of range for {self.n} strands")

    def __mul__(self, other: "VirtualBraidWord") -> "VirtualBraidWord":
        if self.n != other.n:
            raise StrandCountMismatch("cannot concatenate words on different strand counts")
        return VirtualBraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "VirtualBraidWord":
        return VirtualBraidWord(self.n, tuple(g.inverse() for g in reversed(self.letters)))

    def text(self) -> str:
        return f"vpb {self.n}:" + "".join(" " + g.token() for g in self.letters)


@dataclass(frozen=True)
class ClassicalBraidWord:
    n: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        for k in self.letters:
            if not isinstance(k, int) or k == 0 or abs(k) > self.n - 1:
                raise ValueError(f"letter {k!r} out of range for {self.n} strands")

    def text(self) -> str:
        return f"br {self.n}:" + "".join(f" {k}" for k in self.letters)


def generator_diagram(n: int, g: BraidGenerator) -> Diagram:
    """The one-crossing diagram of a generator, tidied."""
    keys: dict[int, int] = {}
    eos = []
    k = 1
    for a in range(1, n + 1):
        if a == g.i or a == g.j:
            keys[a] = k
            k += 1
        eos.append(k)
        k += 1
    crossing = Crossing(g.sign, (g.i, keys[g.i]), (g.j, keys[g.j]))
    return Diagram(n, (crossing,), tuple(eos))


def iota(w: VirtualBraidWord) -> Diagram:
    """Include a word into diagrams: one crossing per letter, stacked."""
    d = identity_diagram(w.n)
    for g in w.letters:
        d = compose(d, generator_diagram(w.n, g))
    return d


def ch(w: VirtualBraidWord, max_iters: int = DEFAULT_MAX_ITERS) -> Diagram:
    """Reduced OU form of the word's diagram; a complete invariant.

    Never raises :class:`CyclicDiagram`: braid diagrams are acyclic.
    """
    return ou_normal_form(iota(w), max_iters)


def braids_equal(w1: VirtualBraidWord, w2: VirtualBraidWord, max_iters: int = DEFAULT_MAX_ITERS) -> bool:
    """Word equality in the virtual pure braid group."""
    if w1.n != w2.n:
        raise StrandCountMismatch(f"words on {w1.n} and {w2.n} strands")
    return canonical_key(ch(w1, max_iters)) == canonical_key(ch(w2, max_iters))


def classical_to_vpb(b: ClassicalBraidWord) -> tuple[VirtualBraidWord, Permutation]:
    """Convert a classical word by walking its position permutation.

    ``perm[p]`` is the strand currently in position ``p + 1``.  Letter ``+k``
    becomes the strand in position ``k`` crossing over the strand in position
    ``k + 1``; ``-k`` the inverse crossing; both then swap the two positions.
    """
    perm = list(range(1, b.n + 1))
    letters = []
    for k in b.letters:
        p = abs(k) - 1
        if k > 0:
            letters.append(BraidGenerator(perm[p], perm[p + 1], 1))
        else:
            letters.append(BraidGenerator(perm[p + 1], perm[p], -1))
        perm[p], perm[p + 1] = perm[p + 1], perm[p]
    return VirtualBraidWord(b.n, tuple(letters)), tuple(perm)


def classical_key(b: ClassicalBraidWord, max_iters: int = DEFAULT_MAX_ITERS) -> bytes:
    """Identity key of a classical braid: end permutation plus canonical key."""
    w, perm = classical_to_vpb(b)
    return permuted_key(perm, canonical_key(ch(w, max_iters)))


def permuted_key(perm: Permutation, key: bytes) -> bytes:
    return ("perm " + " ".join(str(p) for p in perm) + "\n").encode("ascii") + key


def classical_braids_equal(b1: ClassicalBraidWord, b2: ClassicalBraidWord) -> bool:
    if b1.n != b2.n:
        raise StrandCountMismatch(f"words on {b1.n} and {b2.n} strands")
    return classical_key(b1) == classical_key(b2)


_VPB_TOKEN = re.compile(r"^s(\d+),(\d+)('?)$")


def parse_vpb(text: str) -> VirtualBraidWord:
    """Parse ``vpb <n>: s<i>,<j> s<i>,<j>' ...`` (tokens optional)."""
    m = re.match(r"^\s*vpb\s+(\d+)\s*:\s*(.*?)\s*$", text, re.S)
    if not m:
        raise ParseError("expected 'vpb <n>: <tokens>'")
    n = int(m.group(1))
    letters = []
    for idx, tok in enumerate(m.group(2).split()):
        tm = _VPB_TOKEN.match(tok)
        if not tm:
            raise ParseError(f"bad generator token {tok!r} (token {idx + 1})")
        try:
            g = BraidGenerator(int(tm.group(1)), int(tm.group(2)), -1 if tm.group(3) else 1)
        except ValueError as exc:
            raise ParseError(f"bad generator token {tok!r} (token {idx + 1})") from exc
        if g.i > n or g.j > n:
            raise ParseError(f"token {tok!r} out of range for {n} strands (token {idx + 1})")
        letters.append(g)
    try:
        return VirtualBraidWord(n, tuple(letters))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_classical(text: str) -> ClassicalBraidWord:
    """Parse ``br <n>: 1 -2 1 ...``."""
    m = re.match(r"^\s*br\s+(\d+)\s*:\s*(.*?)\s*$", text, re.S)
    if not m:
        raise ParseError("expected 'br <n>: <letters>'")
    n = int(m.group(1))
    letters = []
    for idx, tok in enumerate(m.group(2).split()):
        try:
            k = int(tok)
        except ValueError:
            raise ParseError(f"bad letter {tok!r} (token {idx + 1})") from None
        if k == 0 or abs(k) > n - 1:
            raise ParseError(f"letter {tok!r} out of range for {n} strands (token {idx + 1})")
        letters.append(k)
    return ClassicalBraidWord(n, tuple(letters))
