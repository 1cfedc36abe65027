"""Gauss-diagram model of virtual tangle diagrams.

A diagram on ``n`` ordered, oriented interval strands records each signed
crossing by the positions ("mark keys") of its over pass and its under pass
along the strands, plus one end-of-strand key per strand.  Virtual crossings
are drawing artifacts, not data, and are never represented.  Closed
components do not exist in this model: every strand is an interval.

Mark keys are exact rationals (``int`` or ``fractions.Fraction``); floats are
rejected because the rewriting rules rely on exact order comparisons.  Only
the per-strand order of keys carries meaning.  A *tidied* diagram has keys
exactly ``1 .. 2c + n``, assigned by walking strand 1's marks in order, then
its end-of-strand, then strand 2, and so on; its crossings are listed in
increasing order of their over-mark.  Tidied diagrams serialize to a
canonical text form whose exact bytes serve as an equality key.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidDiagram, ParseError, StrandCountMismatch

Key = int | Fraction


def _check_key(value: Key, what: str) -> None:
    # bool is an int subclass; reject it along with floats and the rest
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise InvalidDiagram(f"{what} must be an exact rational, got {value!r}")


@dataclass(frozen=True)
class Crossing:
    """One signed crossing: ``over`` and ``under`` are ``(strand, key)`` pairs."""

    sign: int
    over: tuple[int, Key]
    under: tuple[int, Key]

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise InvalidDiagram(f"crossing sign must be +1 or -1, got {self.sign!r}")
        for role, (strand, key) in (("over", self.over), ("under", self.under)):
            if not isinstance(strand, int) or strand < 1:
                raise InvalidDiagram(f"{role} strand must be a positive integer, got {strand!r}")
            _check_key(key, f"{role} mark key")
        if self.over[0] == self.under[0] and self.over[1] == self.under[1]:
            raise InvalidDiagram("over and under marks of a crossing coincide")


@dataclass(frozen=True)
class Diagram:
    """A virtual tangle diagram on ``n`` strands.

    Immutable; all operations return new diagrams.  Construction validates
    the two structural invariants: mark keys on one strand are pairwise
    distinct, and each strand's end-of-strand key is strictly the largest
    key on that strand.
    """

    n: int
    crossings: tuple[Crossing, ...]
    eos_keys: tuple[Key, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidDiagram(f"strand count must be a positive integer, got {self.n!r}")
        if len(self.eos_keys) != self.n:
            raise InvalidDiagram(
                f"expected {self.n} end-of-strand keys, got {len(self.eos_keys)}"
            )
        for k in self.eos_keys:
            _check_key(k, "end-of-strand key")
        per_strand: list[list[Key]] = [[] for _ in range(self.n)]
        for c in self.crossings:
            for strand, key in (c.over, c.under):
                if strand > self.n:
                    raise InvalidDiagram(f"strand {strand} out of range 1..{self.n}")
                per_strand[strand - 1].append(key)
        for a, keys in enumerate(per_strand, start=1):
            eos = self.eos_keys[a - 1]
            seen: set[Key] = set()
            for k in keys:
                if k in seen:
                    raise InvalidDiagram(f"duplicate mark key {k} on strand {a}")
                seen.add(k)
                if k >= eos:
                    raise InvalidDiagram(
                        f"end-of-strand key of strand {a} is not strictly maximal"
                    )


def identity_diagram(n: int) -> Diagram:
    """The crossingless diagram on ``n`` strands (tidied)."""
    return Diagram(n, (), tuple(range(1, n + 1)))


def crossing_number(d: Diagram) -> int:
    """Number of crossings of ``d`` (virtual intersections are not crossings)."""
    return len(d.crossings)


def _strand_sequences(d: Diagram) -> list[list[tuple[int, bool]]]:
    """Per-strand mark sequences in key order, as ``(crossing index, is_over)``."""
    buckets: list[list[tuple[Key, int, bool]]] = [[] for _ in range(d.n)]
    for cid, c in enumerate(d.crossings):
        buckets[c.over[0] - 1].append((c.over[1], cid, True))
        buckets[c.under[0] - 1].append((c.under[1], cid, False))
    out: list[list[tuple[int, bool]]] = []
    for bucket in buckets:
        bucket.sort(key=lambda item: item[0])
        out.append([(cid, over) for _, cid, over in bucket])
    return out


def _assemble(n: int, signs: list[int], strands: list[list[tuple[int, bool]]]) -> Diagram:
    """Build the tidied diagram with the given per-strand mark orders."""
    over_key: dict[int, tuple[int, int]] = {}
    under_key: dict[int, tuple[int, int]] = {}
    eos: list[int] = []
    k = 1
    for a, seq in enumerate(strands, start=1):
        for cid, over in seq:
            (over_key if over else under_key)[cid] = (a, k)
            k += 1
        eos.append(k)
        k += 1
    crossings = [Crossing(signs[cid], over_key[cid], under_key[cid]) for cid in over_key]
    crossings.sort(key=lambda c: c.over[1])
    return Diagram(n, tuple(crossings), tuple(eos))


def _is_tidy(d: Diagram) -> bool:
    k = 1
    seqs = _strand_sequences(d)
    for a, seq in enumerate(seqs, start=1):
        for cid, over in seq:
            key = d.crossings[cid].over[1] if over else d.crossings[cid].under[1]
            if key != k:
                return False
            k += 1
        if d.eos_keys[a - 1] != k:
            return False
        k += 1
    overs = [c.over[1] for c in d.crossings]
    return all(overs[i] < overs[i + 1] for i in range(len(overs) - 1))


def tidy(d: Diagram) -> Diagram:
    """Renumber marks to the canonical ``1 .. 2c + n`` scheme.

    Preserves the per-strand order of marks and all (sign, over-strand,
    under-strand) data.  Idempotent; returns ``d`` itself when it is already
    tidy.
    """
    if _is_tidy(d):
        return d
    return _assemble(d.n, [c.sign for c in d.crossings], _strand_sequences(d))


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    """Stack ``d2`` after ``d1``, strand by strand.

    Equivalent to rescaling each strand of ``d2`` into the gap between the
    last crossing mark of the matching strand of ``d1`` and its end-of-strand
    mark, then tidying.  Crossing counts add.
    """
    if d1.n != d2.n:
        raise StrandCountMismatch(f"cannot compose diagrams on {d1.n} and {d2.n} strands")
    offset = len(d1.crossings)
    seq1 = _strand_sequences(d1)
    seq2 = _strand_sequences(d2)
    merged = [seq1[a] + [(cid + offset, over) for cid, over in seq2[a]] for a in range(d1.n)]
    signs = [c.sign for c in d1.crossings] + [c.sign for c in d2.crossings]
    return _assemble(d1.n, signs, merged)


def _format_canonical(n: int, rows: list[tuple[int, int, int]], eos: tuple[int, ...]) -> str:
    """Shared canonical text emitter.

    ``rows`` holds ``(sign, over key, under key)`` already sorted by over key.
    """
    lines = [f"vd {n}"]
    for sign, o, u in rows:
        lines.append(f"x {'+' if sign > 0 else '-'} {o} {u}")
    lines.append("eos " + " ".join(str(k) for k in eos))
    return "\n".join(lines) + "\n"


def serialize(d: Diagram) -> str:
    """Canonical text form of ``d`` (the diagram is tidied first)."""
    t = tidy(d)
    rows = [(c.sign, c.over[1], c.under[1]) for c in t.crossings]
    return _format_canonical(t.n, rows, t.eos_keys)


def canonical_key(d: Diagram) -> bytes:
    """Exact bytes of the canonical serialization.

    Two diagrams have equal keys iff they are the same Gauss diagram (same
    strand count, same signed arrow configuration); this is the equality
    used everywhere downstream.
    """
    return serialize(d).encode("ascii")


def key_hash(key: bytes) -> str:
    """Short stable fingerprint of a canonical key, for compact reports."""
    return hashlib.sha256(key).hexdigest()[:12]


_KEY_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def _parse_key(token: str, line: int, column: int) -> Key:
    m = _KEY_RE.match(token)
    if not m:
        raise ParseError(f"expected integer or p/q rational, got {token!r}", line, column)
    if m.group(2) is None:
        return int(m.group(1))
    value = Fraction(int(m.group(1)), int(m.group(2)))
    return int(value) if value.denominator == 1 else value


def _tokens_with_columns(text_line: str) -> list[tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", text_line)]


def parse(text: str) -> Diagram:
    """Parse diagram text.

    Grammar (one record per line, blank lines ignored)::

        vd <n>
        x <+|-> <over-mark> <under-mark>     (zero or more)
        eos <k1> <k2> ... <kn>

    Marks are integers, or ``p/q`` rationals on input only.  Strand
    membership of a mark is positional: end-of-strand keys must increase
    left to right, and a crossing mark belongs to the strand whose segment
    of the key line contains it.
    """
    rows = [
        (idx + 1, _tokens_with_columns(raw))
        for idx, raw in enumerate(text.splitlines())
        if raw.strip()
    ]
    if not rows:
        raise ParseError("empty input", 1, 1)
    line, toks = rows[0]
    if toks[0][0] != "vd":
        raise ParseError(f"expected 'vd <n>' header, got {toks[0][0]!r}", line, toks[0][1])
    if len(toks) != 2 or not toks[1][0].isdigit():
        raise ParseError("expected 'vd <n>' header", line, toks[0][1])
    n = int(toks[1][0])
    if n < 1:
        raise InvalidDiagram("strand count must be at least 1")

    x_rows: list[tuple[int, int, Key, Key]] = []  # (line, sign, over key, under key)
    eos: list[Key] | None = None
    for line, toks in rows[1:]:
        word = toks[0][0]
        if word == "x":
            if eos is not None:
                raise ParseError("crossing line after 'eos' line", line, toks[0][1])
            if len(toks) != 4:
                raise ParseError("expected 'x <+|-> <o> <u>'", line, toks[0][1])
            if toks[1][0] not in ("+", "-"):
                raise ParseError(f"expected '+' or '-', got {toks[1][0]!r}", line, toks[1][1])
            sign = 1 if toks[1][0] == "+" else -1
            o = _parse_key(toks[2][0], line, toks[2][1])
            u = _parse_key(toks[3][0], line, toks[3][1])
            x_rows.append((line, sign, o, u))
        elif word == "eos":
            if eos is not None:
                raise ParseError("duplicate 'eos' line", line, toks[0][1])
            if len(toks) != n + 1:
                raise ParseError(f"expected {n} end-of-strand keys", line, toks[0][1])
            eos = [_parse_key(t, line, col) for t, col in toks[1:]]
        else:
            raise ParseError(f"unexpected record {word!r}", line, toks[0][1])
    if eos is None:
        raise ParseError("missing 'eos' line", rows[-1][0], 1)
    for a in range(n - 1):
        if eos[a] >= eos[a + 1]:
            raise InvalidDiagram(
                f"end-of-strand keys must increase (strand {a + 1} vs {a + 2})"
            )

    def strand_of(key: Key, line: int) -> int:
        for a in range(n):
            if key < eos[a]:
                return a + 1
        raise InvalidDiagram(f"mark {key} on line {line} does not fall inside any strand")

    crossings = []
    for line, sign, o, u in x_rows:
        if o in eos or u in eos:
            raise InvalidDiagram(f"mark on line {line} collides with an end-of-strand key")
        crossings.append(Crossing(sign, (strand_of(o, line), o), (strand_of(u, line), u)))
    return Diagram(n, tuple(crossings), tuple(eos))
