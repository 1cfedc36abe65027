"""Proud-word enumeration and braid tabulation.

Braids with at most ``m`` crossings are enumerated as "proud" words: no
letter is immediately followed by its inverse, and adjacent commuting
letters (disjoint strand support, or positions at distance two or more in
the classical case) must appear in generator order.  Pride only prunes
redundant words; every braid keeps a representative of its minimal length.
Distinct braids are then counted by deduplicating on the canonical key of
the reduced OU form (joined with the end permutation for classical words,
which need not be pure).
"""

from __future__ import annotations

import concurrent.futures
import os
from dataclasses import dataclass

from .braid import (
    BraidGenerator,
    ClassicalBraidWord,
    VirtualBraidWord,
    permuted_key,
    vpb_generators,
)
from .diagram import key_hash
from .errors import ParseError, ResourceLimit
from .rewrite import DEFAULT_MAX_ITERS, OuAccumulator

KINDS = ("virtual", "classical")


def generators(n: int, kind: str = "virtual") -> list[BraidGenerator] | list[int]:
    """Generator alphabet, in the fixed enumeration order.

    Virtual: all ``s(i,j)^±`` sorted by ``(i, j, sign)`` with + before -.
    Classical: ``+1, -1, +2, -2, ...`` up to position ``n - 1``.
    """
    _check_kind(kind)
    if n < 2:
        raise ValueError("need at least 2 strands")
    if kind == "virtual":
        return vpb_generators(n)
    out: list[int] = []
    for k in range(1, n):
        out.extend((k, -k))
    return out


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


def _vkey(g: BraidGenerator) -> tuple[int, int, int]:
    return g.sort_key()


def _ckey(k: int) -> tuple[int, int]:
    return (abs(k), 0 if k > 0 else 1)


def _commute_virtual(g: BraidGenerator, h: BraidGenerator) -> bool:
    return not ({g.i, g.j} & {h.i, h.j})


def proud_followers(g, n: int, kind: str = "virtual"):
    """Generators that may follow ``g`` without ruining a word's pride:
    everything except ``g``'s inverse and commuting generators that sort
    before ``g``."""
    _check_kind(kind)
    if kind == "virtual":
        return [
            h
            for h in vpb_generators(n)
            if h != g.inverse() and not (_commute_virtual(g, h) and _vkey(h) < _vkey(g))
        ]
    return [
        h
        for h in generators(n, "classical")
        if h != -g and not (abs(abs(h) - abs(g)) >= 2 and _ckey(h) < _ckey(g))
    ]


def proud_words(n: int, m: int, kind: str = "virtual"):
    """Yield all proud words of length exactly ``m``, in lexicographic order."""
    _check_kind(kind)
    gens = generators(n, kind)
    if m == 0:
        yield ()
        return

    def rec(prefix):
        if len(prefix) == m:
            yield prefix
            return
        for h in proud_followers(prefix[-1], n, kind):
            yield from rec(prefix + (h,))

    for g in gens:
        yield from rec((g,))


@dataclass(frozen=True)
class TabulationReport:
    """Exact braid counts per crossing number, plus where the
    representatives were written (one representative word per braid)."""

    n: int
    m: int
    kind: str
    count_exactly: tuple[int, ...]
    representatives_path: str | None = None

    def cumulative(self) -> tuple[int, ...]:
        total = 0
        out = []
        for c in self.count_exactly:
            total += c
            out.append(total)
        return tuple(out)

    def table_text(self) -> str:
        rows = [("m", "exact", "cumulative")]
        for m, (exact, cum) in enumerate(zip(self.count_exactly, self.cumulative())):
            rows.append((str(m), str(exact), str(cum)))
        widths = [max(len(r[c]) for r in rows) for c in range(3)]
        return "\n".join(
            "  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row)) for row in rows
        ) + "\n"

    def structured_lines(self) -> str:
        return "".join(
            f"{self.n} {m} {self.kind} {count}\n"
            for m, count in enumerate(self.count_exactly)
        )


def _word_sort_key(word: tuple, kind: str) -> tuple:
    if kind == "virtual":
        return tuple((i, j, 0 if s > 0 else 1) for i, j, s in word)
    return tuple(_ckey(k) for k in word)


def _prefer(new: tuple, old: tuple, kind: str) -> bool:
    """Length-then-lex: does word ``new`` beat ``old`` as a representative?"""
    if len(new) != len(old):
        return len(new) < len(old)
    return _word_sort_key(new, kind) < _word_sort_key(old, kind)


def _record(index: dict, key: bytes, word: tuple, kind: str, max_keys: int | None) -> None:
    old = index.get(key)
    if old is None:
        if max_keys is not None and len(index) >= max_keys:
            raise ResourceLimit(f"more than {max_keys} stored keys")
        index[key] = word
    elif _prefer(word, old, kind):
        index[key] = word


def _replay(n: int, kind: str, word: tuple, max_iters: int):
    """Accumulator state (and position permutation) after a word."""
    acc = OuAccumulator(n, max_iters)
    perm = list(range(1, n + 1))
    for letter in word:
        _push_letter(acc, perm, letter, kind)
    return acc, perm


def _push_letter(acc: OuAccumulator, perm: list[int], letter, kind: str) -> None:
    if kind == "virtual":
        i, j, sign = letter
        acc.push(i, j, sign)
    else:
        p = abs(letter) - 1
        if letter > 0:
            acc.push(perm[p], perm[p + 1], 1)
        else:
            acc.push(perm[p + 1], perm[p], -1)
        perm[p], perm[p + 1] = perm[p + 1], perm[p]


def _state_key(acc: OuAccumulator, perm: list[int], kind: str) -> bytes:
    key = acc.canonical_text().encode("ascii")
    if kind == "classical":
        return permuted_key(tuple(perm), key)
    return key


def _raw_generators(n: int, kind: str) -> list:
    if kind == "virtual":
        return [(g.i, g.j, g.sign) for g in vpb_generators(n)]
    return generators(n, "classical")


def _raw_followers(n: int, kind: str) -> dict:
    if kind == "virtual":
        return {
            (g.i, g.j, g.sign): [
                (h.i, h.j, h.sign) for h in proud_followers(g, n, "virtual")
            ]
            for g in vpb_generators(n)
        }
    return {g: proud_followers(g, n, "classical") for g in generators(n, "classical")}


def _walk(n, m, kind, acc, perm, word, followers, index, max_iters, max_keys):
    if len(word) == m:
        return
    for h in followers[word[-1]] if word else _raw_generators(n, kind):
        child = acc.copy()
        child_perm = list(perm)
        _push_letter(child, child_perm, h, kind)
        child_word = word + (h,)
        _record(index, _state_key(child, child_perm, kind), child_word, kind, max_keys)
        _walk(n, m, kind, child, child_perm, child_word, followers, index, max_iters, max_keys)


def _subtree_index(args):
    n, m, kind, prefix, max_iters, max_keys = args
    acc, perm = _replay(n, kind, prefix, max_iters)
    followers = _raw_followers(n, kind)
    index: dict = {}
    _walk(n, m, kind, acc, perm, prefix, followers, index, max_iters, max_keys)
    return index


def _merge(target: dict, source: dict, kind: str, max_keys: int | None) -> None:
    for key, word in source.items():
        old = target.get(key)
        if old is None:
            if max_keys is not None and len(target) >= max_keys:
                raise ResourceLimit(f"more than {max_keys} stored keys")
            target[key] = word
        elif _prefer(word, old, kind):
            target[key] = word


def tabulate(
    n: int,
    m: int,
    kind: str = "virtual",
    workers: int = 1,
    representatives_path: str | os.PathLike | None = None,
    max_keys: int | None = None,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> TabulationReport:
    """Count braids with exactly ``0 .. m`` crossings on ``n`` strands.

    Enumerates proud words depth-first, deduplicates on canonical keys, and
    counts each braid at the length where it first appears.  ``workers > 1``
    partitions the word tree by prefix across processes; counts are
    independent of the partitioning because merging keeps the minimal
    (length, word) entry per key.
    """
    _check_kind(kind)
    if n < 2 or m < 0:
        raise ValueError("need n >= 2 and m >= 0")
    index: dict = {}
    root, root_perm = _replay(n, kind, (), max_iters)
    _record(index, _state_key(root, root_perm, kind), (), kind, max_keys)

    split = min(m, 2)
    prefixes: list[tuple] = []
    if split > 0:
        # enumerate words up to the split depth here; subtrees go to workers
        followers = _raw_followers(n, kind)

        def grow(word, acc, perm, depth):
            for h in followers[word[-1]] if word else _raw_generators(n, kind):
                child = acc.copy()
                child_perm = list(perm)
                _push_letter(child, child_perm, h, kind)
                child_word = word + (h,)
                _record(index, _state_key(child, child_perm, kind), child_word, kind, max_keys)
                if depth + 1 == split:
                    prefixes.append(child_word)
                else:
                    grow(child_word, child, child_perm, depth + 1)

        grow((), root, root_perm, 0)

    if m > split:
        tasks = [(n, m, kind, p, max_iters, max_keys) for p in prefixes]
        if workers > 1 and len(tasks) > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
                chunk = max(1, len(tasks) // (workers * 4))
                for sub in pool.map(_subtree_index, tasks, chunksize=chunk):
                    _merge(index, sub, kind, max_keys)
        else:
            for task in tasks:
                _merge(index, _subtree_index(task), kind, max_keys)

    counts = [0] * (m + 1)
    for word in index.values():
        counts[len(word)] += 1

    path_str: str | None = None
    if representatives_path is not None:
        path_str = os.fspath(representatives_path)
        _write_representatives(path_str, n, kind, index)
    return TabulationReport(n, m, kind, tuple(counts), path_str)


def _tokens(word: tuple, kind: str) -> list[str]:
    if kind == "virtual":
        return [BraidGenerator(*g).token() for g in word]
    return [str(k) for k in word]


def _write_representatives(path: str, n: int, kind: str, index: dict) -> None:
    entries = sorted(
        index.items(), key=lambda item: (len(item[1]), _word_sort_key(item[1], kind))
    )
    with open(path, "w", encoding="ascii") as fh:
        for key, word in entries:
            parts = [kind, str(n), str(len(word)), *_tokens(word, kind), key_hash(key)]
            fh.write(" ".join(parts) + "\n")


def read_representatives(path: str | os.PathLike):
    """Parse a representatives file back into words.

    Yields ``(word, first_length, key_hash)`` where ``word`` is a
    :class:`VirtualBraidWord` or :class:`ClassicalBraidWord`.
    """
    from .braid import parse_classical, parse_vpb

    with open(path, encoding="ascii") as fh:
        for line_no, line in enumerate(fh, start=1):
            parts = line.split()
            if len(parts) < 4:
                raise ParseError("short representative line", line_no)
            kind, n, length = parts[0], int(parts[1]), int(parts[2])
            tokens, digest = parts[3:-1], parts[-1]
            _check_kind(kind)
            if kind == "virtual":
                word = parse_vpb(f"vpb {n}: " + " ".join(tokens))
            else:
                word = parse_classical(f"br {n}: " + " ".join(tokens))
            yield word, length, digest


def fibonacci_check(m_max: int, counts: tuple[int, ...] | None = None) -> bool:
    """Whether classical 3-strand counts match ``6*2^m - 2*F(m+3) - 2``.

    ``counts`` may supply precomputed exact-m counts (index = m); otherwise
    the table is tabulated here.
    """
    if m_max < 1:
        raise ValueError("need m_max >= 1")
    if counts is None:
        counts = tabulate(3, m_max, "classical").count_exactly
    fib = [0, 1, 1]
    while len(fib) <= m_max + 3:
        fib.append(fib[-1] + fib[-2])
    return all(
        counts[m] == 6 * 2**m - 2 * fib[m + 3] - 2 for m in range(1, m_max + 1)
    )


def worst_braid(
    n: int,
    m: int,
    kind: str = "virtual",
    max_iters: int = DEFAULT_MAX_ITERS,
) -> tuple[VirtualBraidWord | ClassicalBraidWord, int]:
    """A proud word of length ``m`` maximizing the reduced crossing number.

    Ties break to the lexicographically first word, so the result is
    deterministic.
    """
    _check_kind(kind)
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    followers = _raw_followers(n, kind)
    best: tuple[int, tuple] | None = None

    def rec(word, acc, perm):
        nonlocal best
        if len(word) == m:
            value = acc.crossing_count()
            if best is None or value > best[0]:
                best = (value, word)
            return
        for h in followers[word[-1]] if word else _raw_generators(n, kind):
            child = acc.copy()
            child_perm = list(perm)
            _push_letter(child, child_perm, h, kind)
            rec(word + (h,), child, child_perm)

    root, root_perm = _replay(n, kind, (), max_iters)
    rec((), root, root_perm)
    assert best is not None
    value, word = best
    if kind == "virtual":
        return VirtualBraidWord(n, tuple(BraidGenerator(*g) for g in word)), value
    return ClassicalBraidWord(n, word), value
