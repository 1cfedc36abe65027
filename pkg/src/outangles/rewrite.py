"""Rewriting of virtual tangle diagrams to reduced over-then-under form.

The pipeline: remove every available kink (R1) and cancelling pair (R2);
check once that the diagram has no closed cascade path; then repeatedly fix
the first under-then-over interval with a glide move, re-reducing after each
glide.  For cascade-acyclic diagrams this terminates in the unique reduced
OU representative of the diagram's equivalence class, independently of the
order in which intervals are fixed.

A glide replaces the two crossings ``a = X_{s1}[i1, j1]`` and
``b = X_{s2}[i2, j2]`` around a under-then-over interval ``(j1, i2)`` with::

    X_{s2}[j1, j2]   X_{s1}[i1, i2]
    X_{s1*s2}[i1 - s1/3, j2 + s2/3]   X_{-s1*s2}[i1 + s1/3, j2 - s2/3]

so the interval flips to over-then-under at the cost of two new crossings
between the other two arcs.  Internally the offsets are realized as list
insertions next to the anchor marks, which is exactly the rational rule
followed by tidying.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import Diagram, _assemble, _format_canonical, _strand_sequences
from .errors import CapExceeded, CyclicDiagram, InvalidDiagram, SameCrossing

DEFAULT_MAX_ITERS = 1 << 24


@dataclass(frozen=True)
class UoInterval:
    """An under-mark immediately followed by an over-mark on one strand.

    Crossings are identified by their index in ``diagram.crossings``.
    """

    strand: int
    under_crossing: int
    over_crossing: int


class _Scratch:
    """Mutable working copy of a diagram used by the rewriting loop.

    ``strands[s]`` lists the marks of strand ``s`` in order; a mark is the
    integer ``cid * 2 + 1`` for the over mark of crossing ``cid`` and
    ``cid * 2`` for its under mark.  Only the order matters, so all moves
    are list surgery.
    """

    __slots__ = ("n", "signs", "strands", "_next")

    def __init__(self, n: int, signs: dict[int, int], strands: list[list[int]], nxt: int):
        self.n = n
        self.signs = signs
        self.strands = strands
        self._next = nxt

    @classmethod
    def from_diagram(cls, d: Diagram) -> "_Scratch":
        seqs = _strand_sequences(d)
        strands = [[(cid << 1) | (1 if over else 0) for cid, over in seq] for seq in seqs]
        signs = {cid: c.sign for cid, c in enumerate(d.crossings)}
        return cls(d.n, signs, strands, len(d.crossings))

    @classmethod
    def identity(cls, n: int) -> "_Scratch":
        return cls(n, {}, [[] for _ in range(n)], 0)

    def copy(self) -> "_Scratch":
        return _Scratch(self.n, dict(self.signs), [list(s) for s in self.strands], self._next)

    def crossing_count(self) -> int:
        return len(self.signs)

    def append_crossing(self, i: int, j: int, sign: int) -> None:
        """Add one crossing at the tails of strands ``i`` and ``j`` (1-based)."""
        cid = self._next
        self._next += 1
        self.signs[cid] = sign
        self.strands[i - 1].append((cid << 1) | 1)
        self.strands[j - 1].append(cid << 1)

    # -- pattern scans ----------------------------------------------------

    def _find_r12(self) -> tuple[tuple[int, int], int, tuple[int, ...]] | None:
        """Least removable pattern, keyed by its smallest participating mark.

        Returns ``(mark, kind, cids)`` with kind 0 for R1 and 1 for R2, or
        ``None`` at the fixpoint.  One sweep over adjacent mark pairs finds
        everything: an R1 is an adjacent pair of one crossing, and an R2's
        four marks are exactly its two adjacency sites.
        """
        signs = self.signs
        best: tuple[tuple[int, int], int, tuple[int, ...]] | None = None
        over_adj: dict[tuple[int, int], tuple[int, int]] = {}
        under_adj: dict[tuple[int, int], tuple[int, int]] = {}
        for s, lst in enumerate(self.strands):
            for i in range(len(lst) - 1):
                x, y = lst[i], lst[i + 1]
                a, b = x >> 1, y >> 1
                if a == b:
                    cand = ((s, i), 0, (a,))
                    if best is None or cand < best:
                        best = cand
                elif signs[a] == -signs[b]:
                    if (x & 1) and (y & 1):
                        over_adj[(a, b) if a < b else (b, a)] = (s, i)
                    elif not (x & 1) and not (y & 1):
                        under_adj[(a, b) if a < b else (b, a)] = (s, i)
        if over_adj and under_adj:
            for pair, spot in over_adj.items():
                other = under_adj.get(pair)
                if other is not None:
                    cand = (min(spot, other), 1, pair)
                    if best is None or cand < best:
                        best = cand
        return best

    def _remove(self, cids: tuple[int, ...]) -> None:
        dead = set(cids)
        for s, lst in enumerate(self.strands):
            if any((mk >> 1) in dead for mk in lst):
                self.strands[s] = [mk for mk in lst if (mk >> 1) not in dead]
        for cid in dead:
            del self.signs[cid]

    def r12_fixpoint(self) -> None:
        while True:
            found = self._find_r12()
            if found is None:
                return
            self._remove(found[2])

    def is_reduced(self) -> bool:
        return self._find_r12() is None

    def uo_slots(self) -> list[tuple[int, int]]:
        out = []
        for s, lst in enumerate(self.strands):
            for i in range(len(lst) - 1):
                if not (lst[i] & 1) and (lst[i + 1] & 1):
                    out.append((s, i))
        return out

    def is_ou(self) -> bool:
        for lst in self.strands:
            seen_under = False
            for mk in lst:
                if mk & 1:
                    if seen_under:
                        return False
                else:
                    seen_under = True
        return True

    def is_acyclic(self) -> bool:
        """No closed cascade path: strand-successor edges plus the drop edge
        from each over mark to its under mark form an acyclic digraph."""
        base = []
        total = 0
        for lst in self.strands:
            base.append(total)
            total += len(lst)
        indeg = [0] * total
        adj: list[list[int]] = [[] for _ in range(total)]
        over_at: dict[int, int] = {}
        under_at: dict[int, int] = {}
        for s, lst in enumerate(self.strands):
            for i, mk in enumerate(lst):
                nid = base[s] + i
                if i + 1 < len(lst):
                    adj[nid].append(nid + 1)
                    indeg[nid + 1] += 1
                if mk & 1:
                    over_at[mk >> 1] = nid
                else:
                    under_at[mk >> 1] = nid
        for cid, o in over_at.items():
            u = under_at[cid]
            adj[o].append(u)
            indeg[u] += 1
        stack = [v for v in range(total) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for w in adj[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return seen == total

    # -- the glide move ----------------------------------------------------

    def glide(self, s: int, i: int) -> None:
        """Fix the under-then-over interval at marks ``i``, ``i + 1`` of
        strand ``s`` (0-based)."""
        lst = self.strands[s]
        x, y = lst[i], lst[i + 1]
        a, b = x >> 1, y >> 1
        if a == b:
            raise SameCrossing(
                "under and over marks of the interval belong to one crossing"
            )
        s1, s2 = self.signs[a], self.signs[b]
        a_over = (a << 1) | 1
        b_under = b << 1
        sa = ia = sb = jb = -1
        for st, marks in enumerate(self.strands):
            for idx, mk in enumerate(marks):
                if mk == a_over:
                    sa, ia = st, idx
                elif mk == b_under:
                    sb, jb = st, idx

        c_new = self._next
        d_new = self._next + 1
        self._next += 2
        self.signs[c_new] = s1 * s2
        self.signs[d_new] = -s1 * s2

        # b's over mark slides back to the old under slot, a's under mark
        # slides forward to the old over slot: the interval becomes OU
        lst[i] = (b << 1) | 1
        lst[i + 1] = a << 1

        co, do = (c_new << 1) | 1, (d_new << 1) | 1
        cu, du = c_new << 1, d_new << 1
        inserts: dict[int, dict[int, tuple[list[int], list[int]]]] = {}
        if s1 > 0:
            inserts.setdefault(sa, {})[ia] = ([co], [do])
        else:
            inserts.setdefault(sa, {})[ia] = ([do], [co])
        if s2 > 0:
            inserts.setdefault(sb, {})[jb] = ([du], [cu])
        else:
            inserts.setdefault(sb, {})[jb] = ([cu], [du])
        for st, spots in inserts.items():
            old = self.strands[st]
            new: list[int] = []
            for idx, mk in enumerate(old):
                spot = spots.get(idx)
                if spot is None:
                    new.append(mk)
                else:
                    new.extend(spot[0])
                    new.append(mk)
                    new.extend(spot[1])
            self.strands[st] = new

    # -- full normalization -------------------------------------------------

    def normalize(self, max_iters: int = DEFAULT_MAX_ITERS, rng: random.Random | None = None) -> None:
        self.r12_fixpoint()
        slots = self.uo_slots()
        if not slots:
            return
        if not self.is_acyclic():
            raise CyclicDiagram("cyclic")
        glides = 0
        while slots:
            if glides >= max_iters:
                raise CapExceeded(f"no OU form after {max_iters} glide moves")
            s, i = slots[0] if rng is None else rng.choice(slots)
            self.glide(s, i)
            glides += 1
            self.r12_fixpoint()
            slots = self.uo_slots()

    # -- export --------------------------------------------------------------

    def _canonical_rows(self) -> tuple[list[tuple[int, int, int]], tuple[int, ...]]:
        over_key: dict[int, int] = {}
        under_key: dict[int, int] = {}
        eos: list[int] = []
        k = 1
        for lst in self.strands:
            for mk in lst:
                (over_key if mk & 1 else under_key)[mk >> 1] = k
                k += 1
            eos.append(k)
            k += 1
        rows = [(self.signs[cid], ok, under_key[cid]) for cid, ok in over_key.items()]
        rows.sort(key=lambda r: r[1])
        return rows, tuple(eos)

    def canonical_text(self) -> str:
        rows, eos = self._canonical_rows()
        return _format_canonical(self.n, rows, eos)

    def to_diagram(self) -> Diagram:
        order: dict[int, int] = {}
        signs: list[int] = []
        strands: list[list[tuple[int, bool]]] = []
        for lst in self.strands:
            seq = []
            for mk in lst:
                cid = mk >> 1
                if cid not in order:
                    order[cid] = len(signs)
                    signs.append(self.signs[cid])
                seq.append((order[cid], bool(mk & 1)))
            strands.append(seq)
        return _assemble(self.n, signs, strands)


class OuAccumulator:
    """Reduced OU form of a growing product of braid generators.

    Appending a generator and re-normalizing realizes the right action of
    braids on reduced OU diagrams; enumeration walks word trees by pushing
    one letter per node.
    """

    __slots__ = ("_scratch", "max_iters")

    def __init__(self, n: int, max_iters: int = DEFAULT_MAX_ITERS):
        self._scratch = _Scratch.identity(n)
        self.max_iters = max_iters

    def copy(self) -> "OuAccumulator":
        dup = OuAccumulator.__new__(OuAccumulator)
        dup._scratch = self._scratch.copy()
        dup.max_iters = self.max_iters
        return dup

    def push(self, i: int, j: int, sign: int) -> None:
        self._scratch.append_crossing(i, j, sign)
        self._scratch.normalize(self.max_iters)

    def crossing_count(self) -> int:
        return self._scratch.crossing_count()

    def canonical_text(self) -> str:
        return self._scratch.canonical_text()

    def to_diagram(self) -> Diagram:
        return self._scratch.to_diagram()


def is_ou(d: Diagram) -> bool:
    """True iff on every strand all over marks precede all under marks."""
    return _Scratch.from_diagram(d).is_ou()


def is_acyclic(d: Diagram) -> bool:
    """True iff the diagram admits no closed cascade path."""
    return _Scratch.from_diagram(d).is_acyclic()


def cascade_graph(d: Diagram) -> tuple[list[tuple[int, int, bool]], list[tuple[int, int]]]:
    """The digraph walked by cascade paths.

    Nodes are the marks of ``d`` in traversal order, as ``(strand, crossing
    index, is_over)``; edges (index pairs) run from each mark to its strand
    successor and from each over mark down to its under mark.  ``d`` is
    acyclic exactly when this digraph has no directed cycle.
    """
    scratch = _Scratch.from_diagram(d)
    nodes: list[tuple[int, int, bool]] = []
    index: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for s, lst in enumerate(scratch.strands):
        for i, mk in enumerate(lst):
            index[mk] = len(nodes)
            nodes.append((s + 1, mk >> 1, bool(mk & 1)))
            if i > 0:
                edges.append((len(nodes) - 2, len(nodes) - 1))
    for cid in range(len(d.crossings)):
        edges.append((index[(cid << 1) | 1], index[cid << 1]))
    return nodes, edges


def is_reduced(d: Diagram) -> bool:
    """True iff no R1 kink and no R2 cancelling pair is present."""
    return _Scratch.from_diagram(d).is_reduced()


def uo_intervals(d: Diagram) -> list[UoInterval]:
    """All under-then-over intervals of ``d``, in mark order."""
    scratch = _Scratch.from_diagram(d)
    out = []
    for s, i in scratch.uo_slots():
        lst = scratch.strands[s]
        out.append(UoInterval(s + 1, lst[i] >> 1, lst[i + 1] >> 1))
    return out


def reduce_r12(d: Diagram) -> Diagram:
    """Remove R1 and R2 patterns until none remain; result is tidied.

    Deterministic: at each step the pattern whose smallest participating
    mark comes first is removed.
    """
    scratch = _Scratch.from_diagram(d)
    scratch.r12_fixpoint()
    return scratch.to_diagram()


def glide_once(d: Diagram, iv: UoInterval) -> Diagram:
    """Apply one glide move at ``iv``; result is tidied.

    Raises :class:`SameCrossing` when the interval's two marks belong to a
    single crossing, where the move is undefined.
    """
    if iv.under_crossing == iv.over_crossing:
        raise SameCrossing(
            "under and over marks of the interval belong to one crossing"
        )
    scratch = _Scratch.from_diagram(d)
    for s, i in scratch.uo_slots():
        lst = scratch.strands[s]
        if (
            s + 1 == iv.strand
            and lst[i] >> 1 == iv.under_crossing
            and lst[i + 1] >> 1 == iv.over_crossing
        ):
            scratch.glide(s, i)
            return scratch.to_diagram()
    raise InvalidDiagram("not an under-then-over interval of this diagram")


def ou_normal_form(
    d: Diagram,
    max_iters: int = DEFAULT_MAX_ITERS,
    rng: random.Random | None = None,
) -> Diagram:
    """The unique reduced OU representative of an acyclic diagram.

    Alternates R1/R2 fixpoints with single glide moves.  With ``rng`` the
    interval fixed at each step is chosen at random instead of first in mark
    order; the result does not depend on that choice.

    Raises :class:`CyclicDiagram` for diagrams with a closed cascade path
    and :class:`CapExceeded` after ``max_iters`` glides.
    """
    scratch = _Scratch.from_diagram(d)
    scratch.normalize(max_iters, rng)
    return scratch.to_diagram()


def xi(d: Diagram, max_iters: int = DEFAULT_MAX_ITERS) -> int:
    """Crossing number of the reduced OU form of ``d``."""
    scratch = _Scratch.from_diagram(d)
    scratch.normalize(max_iters)
    return scratch.crossing_count()
