"""Davenport-Schinzel sequence algebra.

A DS sequence of order s over n symbols has no two equal adjacent elements
and no alternation a..b..a..b.. of two distinct symbols of length s+2.
This module provides validation, restriction to symbol subsets, active
symbol profiles, exhaustive maximum-length search for tiny parameters,
the delimiter block decomposition, the greedy bounded-active partition,
and a pinned inverse-Ackermann function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional, Sequence

Symbol = Hashable


class BudgetExceeded(RuntimeError):
    """Exhaustive search exceeded its declared parameter or node budget."""


@dataclass(frozen=True)
class SymbolSequence:
    elements: tuple
    circular: bool = False

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def symbols(self) -> set:
        return set(self.elements)


def seq(items: Iterable[Symbol], circular: bool = False) -> SymbolSequence:
    return SymbolSequence(tuple(items), circular)


@dataclass(frozen=True)
class Partition:
    classes: tuple  # tuple of frozensets

    def __post_init__(self):
        seen: set = set()
        for cls in self.classes:
            if seen & cls:
                raise ValueError("partition classes are not disjoint")
            seen |= cls

    def covers(self, symbols: set) -> bool:
        union: set = set()
        for cls in self.classes:
            union |= cls
        return symbols <= union


def partition(*classes: Iterable[Symbol]) -> Partition:
    return Partition(tuple(frozenset(c) for c in classes))


@dataclass(frozen=True)
class Violation:
    kind: str  # "adjacent" | "alternation"
    positions: tuple  # 0-based positions in the sequence


def _alternation_positions(elements: Sequence[Symbol], a: Symbol, b: Symbol,
                           circular: bool) -> list[int]:
    """Longest alternating subsequence positions of the pair {a, b}.

    For circular sequences the alternation may wrap; the best rotation is
    found by doubling.
    """
    occ = [(i, x) for i, x in enumerate(elements) if x == a or x == b]
    if not occ:
        return []

    def collapse(run: list[tuple]) -> list[int]:
        out = []
        last = None
        for i, x in run:
            if x != last:
                out.append(i)
                last = x
        return out

    if not circular:
        return collapse(occ)
    doubled = occ + [(i, x) for i, x in occ]
    best: list[int] = []
    n = len(occ)
    for start in range(n):
        cand = collapse(doubled[start : start + n])
        if len(cand) > len(best):
            best = cand
    return best


def is_ds(sequence: SymbolSequence, s: int):
    """Check sequence validity of order s.

    Returns "valid" or a Violation locating an adjacent equal pair or an
    alternation of length s+2.
    """
    if s < 1:
        raise ValueError("order s must be >= 1")
    el = sequence.elements
    n = len(el)
    for i in range(n - 1):
        if el[i] == el[i + 1]:
            return Violation("adjacent", (i, i + 1))
    if sequence.circular and n > 1 and el[-1] == el[0]:
        return Violation("adjacent", (n - 1, 0))
    symbols = sorted(set(el), key=lambda x: (x.__class__.__name__, str(x)))
    for i in range(len(symbols)):
        for j in range(i + 1, len(symbols)):
            pos = _alternation_positions(el, symbols[i], symbols[j], sequence.circular)
            if len(pos) >= s + 2:
                return Violation("alternation", tuple(pos[: s + 2]))
    return "valid"


def restrict(sequence: SymbolSequence, allowed: Iterable[Symbol]) -> SymbolSequence:
    """Subsequence over `allowed` with maximal equal runs collapsed."""
    allowed = set(allowed)
    kept = [x for x in sequence.elements if x in allowed]
    out: list = []
    for x in kept:
        if not out or out[-1] != x:
            out.append(x)
    if sequence.circular and len(out) > 1 and out[-1] == out[0]:
        out.pop()
    return SymbolSequence(tuple(out), sequence.circular)


def active_profile(sequence: SymbolSequence) -> list[int]:
    """v(j): symbols with an occurrence at or before j and another after j."""
    if sequence.circular:
        raise ValueError("active profile is defined for linear sequences")
    el = sequence.elements
    first: dict = {}
    last: dict = {}
    for i, x in enumerate(el):
        first.setdefault(x, i)
        last[x] = i
    return [
        sum(1 for x in first if first[x] <= j < last[x])
        for j in range(len(el))
    ]


def max_active(sequence: SymbolSequence) -> int:
    prof = active_profile(sequence)
    return max(prof) if prof else 0


def lambda_brute(n: int, s: int, node_budget: int = 30_000_000) -> int:
    """Exact maximum length of a DS(n, s) sequence by exhaustive search.

    Only tiny parameters are allowed (n <= 5, s <= 3); the search walks all
    canonical sequences (symbols first appear in increasing order) with
    incremental alternation tracking.
    """
    if n < 0 or s < 1:
        raise ValueError("need n >= 0 and s >= 1")
    if n > 5 or s > 3:
        raise BudgetExceeded(f"lambda_brute budget is n <= 5, s <= 3 (got n={n}, s={s})")
    if n == 0:
        return 0

    best = 0
    nodes = 0
    # alternation length per unordered symbol pair, plus which of the pair
    # occurred last; appending x extends alternations (x, y) for every y.
    alt_len = [[0] * n for _ in range(n)]
    alt_last = [[-1] * n for _ in range(n)]
    seq_stack: list[int] = []

    def extend(opened: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded("lambda_brute node budget exceeded")
        if len(seq_stack) > best:
            best = len(seq_stack)
        last = seq_stack[-1] if seq_stack else -1
        limit = min(opened + 1, n)
        for x in range(limit):
            if x == last:
                continue
            updates = []
            ok = True
            for y in range(opened):
                if y == x:
                    continue
                if alt_last[x][y] == -1:
                    # first contact of the pair: y already occurred, so the
                    # {x, y} restriction becomes y x
                    new_len = 2
                elif alt_last[x][y] == x:
                    continue
                else:
                    new_len = alt_len[x][y] + 1
                if new_len >= s + 2:
                    ok = False
                    break
                updates.append((y, new_len))
            if not ok:
                continue
            saved = [(y, alt_len[x][y], alt_last[x][y]) for y, _ in updates]
            for y, new_len in updates:
                alt_len[x][y] = alt_len[y][x] = new_len
                alt_last[x][y] = alt_last[y][x] = x
            seq_stack.append(x)
            extend(opened + 1 if x == opened else opened)
            seq_stack.pop()
            for y, ln, lst in saved:
                alt_len[x][y] = alt_len[y][x] = ln
                alt_last[x][y] = alt_last[y][x] = lst

    extend(0)
    return best


@dataclass
class BlockDecomposition:
    delimiter_positions: list[int]  # delimiter after this 0-based position
    subsequences: list[tuple]
    blocks: list[tuple]
    restriction_lengths: list[int]  # |S_{T_i}| over nonempty classes
    num_classes: int  # k' = number of nonempty restrictions

    @property
    def total_restricted(self) -> int:
        return sum(self.restriction_lengths)


def block_decompose(sequence: SymbolSequence, part: Partition) -> BlockDecomposition:
    """Delimiter decomposition of a run-free linear sequence.

    A delimiter is placed after the last original position mapping to each
    non-final element of every nonempty restricted sequence; the maximal
    delimiter-free pieces are then grouped into blocks of k' pieces each
    (the final block absorbs the remainder, up to 2k'-1 pieces).
    """
    if sequence.circular:
        raise ValueError("decompose a linearized sequence")
    el = sequence.elements
    for i in range(len(el) - 1):
        if el[i] == el[i + 1]:
            raise ValueError("sequence must have no equal adjacent elements")
    if not part.covers(set(el)):
        raise ValueError("partition does not cover the sequence symbols")

    class_of: dict = {}
    for ci, cls in enumerate(part.classes):
        for x in cls:
            class_of[x] = ci

    # Per class: run structure of the restriction and, per run, the last
    # original position mapping into it.
    runs_last: dict = {}
    run_symbol: dict = {}
    for pos, x in enumerate(el):
        ci = class_of[x]
        runs = runs_last.setdefault(ci, [])
        syms = run_symbol.setdefault(ci, [])
        if syms and syms[-1] == x:
            runs[-1] = pos
        else:
            syms.append(x)
            runs.append(pos)

    nonempty = sorted(runs_last)
    restriction_lengths = [len(runs_last[ci]) for ci in nonempty]
    delimiters = sorted(
        pos for ci in nonempty for pos in runs_last[ci][:-1]
    )

    subsequences: list[tuple] = []
    start = 0
    for d in delimiters:
        subsequences.append(tuple(el[start : d + 1]))
        start = d + 1
    subsequences.append(tuple(el[start:]))

    kprime = len(nonempty)
    blocks: list[tuple] = []

    def concat(pieces: list[tuple]) -> tuple:
        return tuple(x for piece in pieces for x in piece)

    if kprime == 0:
        blocks = []
    else:
        m = len(subsequences)
        if m <= kprime:
            blocks = [concat(subsequences)]
        else:
            nblocks = m // kprime
            for b in range(nblocks - 1):
                blocks.append(concat(subsequences[b * kprime : (b + 1) * kprime]))
            blocks.append(concat(subsequences[(nblocks - 1) * kprime :]))
    return BlockDecomposition(
        delimiter_positions=delimiters,
        subsequences=subsequences,
        blocks=blocks,
        restriction_lengths=restriction_lengths,
        num_classes=kprime,
    )


def dsa_partition(sequence: SymbolSequence, k: int) -> Partition:
    """Greedy left-to-right partition into at most k classes.

    Classes are reused once every symbol stored in them has made its final
    appearance, so each restricted sequence carries every one of its symbols
    exactly once.  Raises when more than k symbols are simultaneously
    active.  Symbols occurring exactly once are appended round-robin (their
    spans are points and never collide).
    """
    if sequence.circular:
        raise ValueError("partition a linear sequence")
    if k < 1:
        raise ValueError("need k >= 1")
    el = sequence.elements
    first: dict = {}
    last: dict = {}
    for i, x in enumerate(el):
        first.setdefault(x, i)
        last[x] = i

    classes: list[set] = [set() for _ in range(k)]
    free: list[int] = list(range(k - 1, -1, -1))  # stack; lowest index on top
    holder: dict = {}
    singles: list = []
    seen: set = set()
    for i, x in enumerate(el):
        if x in seen:
            pass
        else:
            seen.add(x)
            if first[x] == last[x]:
                singles.append(x)
                continue
            if not free:
                raise ValueError(
                    f"more than {k} active symbols at position {i}; cannot partition"
                )
            ci = free.pop()
            classes[ci].add(x)
            holder[x] = ci
        if i == last[x] and x in holder:
            free.append(holder[x])
            free.sort(reverse=True)
    for j, x in enumerate(singles):
        classes[j % k].add(x)
    return Partition(tuple(frozenset(c) for c in classes if c))


_ACK_CAP_MEMO: dict = {}


def _ackermann_capped(i: int, j: int, cap: int) -> int:
    """A(i, j) truncated at cap; the pinned variant is
    A(1, j) = 2^j,  A(i, 1) = A(i-1, 2),  A(i, j) = A(i-1, A(i, j-1)).
    """
    key = (i, j, cap)
    hit = _ACK_CAP_MEMO.get(key)
    if hit is not None:
        return hit
    if i == 1:
        val = cap if j >= cap.bit_length() else min(2**j, cap)
    elif j == 1:
        val = _ackermann_capped(i - 1, 2, cap)
    else:
        inner = _ackermann_capped(i, j - 1, cap)
        val = cap if inner >= cap else _ackermann_capped(i - 1, inner, cap)
    val = min(val, cap)
    _ACK_CAP_MEMO[key] = val
    return val


def inverse_ackermann(n: int) -> int:
    """alpha(n): least k >= 1 with A(k, k) >= n under the pinned variant."""
    if n < 1:
        raise ValueError("need n >= 1")
    k = 1
    while True:
        if _ackermann_capped(k, k, max(n, 2)) >= n:
            return k
        k += 1


def lambda3_hat(n: int) -> int:
    """Surrogate for the maximum DS order-3 length: n * alpha(n)."""
    if n <= 0:
        return 0
    return n * inverse_ackermann(n)
