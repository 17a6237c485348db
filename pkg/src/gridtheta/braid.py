"""Braid-word algebra for transverse links.

A word on n strands is a finite sequence of nonzero integers: the letter e
stands for the Artin generator sigma_|e| when e > 0 and its inverse when
e < 0. Strand positions and generator indices are 1-based throughout, the
empty word is the trivial braid I_n. Words are immutable; equality is literal
sequence equality (no free reduction), which keeps move semantics exact.

All operations here are pure and cheap (word length, never grid size), so
they are safe to share across threads and to run on words far too large for
the homology engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class BraidWord:
    """A braid word: strand count and a tuple of signed generator letters."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError(f"strand count must be >= 1, got {self.strands}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for e in self.letters:
            if e == 0 or not (1 <= abs(e) <= self.strands - 1):
                raise ValueError(
                    f"letter {e} out of range for {self.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("cannot concatenate words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-e for e in reversed(self.letters)))

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class ComponentPartition:
    """Orbits of the closed-braid permutation, canonically ordered.

    Cycles are sorted by least strand index; component labels are 1..l in
    that order, so labels are deterministic across runs.
    """

    cycles: tuple[frozenset[int], ...]

    @property
    def component_count(self) -> int:
        return len(self.cycles)

    def label_of_strand(self, strand: int) -> int:
        for i, cyc in enumerate(self.cycles, start=1):
            if strand in cyc:
                return i
        raise ValueError(f"strand {strand} not in partition")

    def strands_of(self, labels: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for lbl in labels:
            if not (1 <= lbl <= len(self.cycles)):
                raise ValueError(f"no component labeled {lbl}")
            out |= self.cycles[lbl - 1]
        return frozenset(out)


@dataclass(frozen=True)
class SelfLinkingData:
    """Self-linking numbers of every nonempty sublink, keyed by label subsets."""

    component_count: int
    entries: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        expected = 2 ** self.component_count - 1
        if len(self.entries) != expected:
            raise ValueError(
                f"need {expected} subset entries, got {len(self.entries)}"
            )

    def full(self) -> int:
        return self.entries[tuple(range(1, self.component_count + 1))]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SelfLinkingData):
            return NotImplemented
        return (self.component_count == other.component_count
                and dict(self.entries) == dict(other.entries))


# --- parsing ---------------------------------------------------------------

def parse_word(text: str) -> BraidWord:
    """Parse the text format ``n: e1 e2 ... ek`` (empty letter list allowed)."""
    from .errors import InputError

    if ":" not in text:
        raise InputError(f"braid word must look like 'n: e1 e2 ...', got {text!r}")
    head, _, tail = text.partition(":")
    try:
        n = int(head.strip())
        letters = tuple(int(tok) for tok in tail.split())
        return BraidWord(n, letters)
    except ValueError as exc:
        raise InputError(f"bad braid word {text!r}: {exc}") from exc


def format_word(w: BraidWord) -> str:
    return f"{w.strands}:" + ("" if not w.letters else " " + " ".join(map(str, w.letters)))


# --- invariants ------------------------------------------------------------

def algebraic_length(w: BraidWord) -> int:
    """Signed letter count: positives minus negatives."""
    return sum(1 if e > 0 else -1 for e in w.letters)


def self_linking(w: BraidWord) -> int:
    """Self-linking number of the closure: algebraic length minus strands."""
    return algebraic_length(w) - w.strands


def braid_permutation(w: BraidWord) -> tuple[int, ...]:
    """perm[p-1] is the top position of the strand entering at bottom position p."""
    pos = list(range(1, w.strands + 1))  # pos[i] = strand currently at position i+1
    for e in w.letters:
        i = abs(e) - 1
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    perm = [0] * w.strands
    for position, strand in enumerate(pos, start=1):
        perm[strand - 1] = position
    return tuple(perm)


def component_partition(w: BraidWord) -> ComponentPartition:
    """Components of the closure: cycles of the underlying permutation."""
    perm = braid_permutation(w)
    seen = [False] * w.strands
    cycles = []
    for start in range(1, w.strands + 1):
        if seen[start - 1]:
            continue
        cyc = []
        s = start
        while not seen[s - 1]:
            seen[s - 1] = True
            cyc.append(s)
            s = perm[s - 1]
        cycles.append(frozenset(cyc))
    cycles.sort(key=min)
    return ComponentPartition(tuple(cycles))


# --- strand surgery --------------------------------------------------------

def restrict_to_strands(w: BraidWord, keep: Iterable[int]) -> BraidWord:
    """Delete all strands outside ``keep`` (a union of closure components).

    A letter survives, re-indexed order-preservingly, iff both strands it
    crosses are kept.
    """
    from .errors import InputError

    keep_set = frozenset(keep)
    if not keep_set or not keep_set <= set(range(1, w.strands + 1)):
        raise InputError(f"keep must be a nonempty subset of 1..{w.strands}")
    part = component_partition(w)
    for cyc in part.cycles:
        inter = cyc & keep_set
        if inter and inter != cyc:
            raise InputError(
                f"keep splits a component: {sorted(cyc)} only partially kept"
            )

    # kept[i] says whether the strand currently at position i+1 is kept.
    kept = [strand in keep_set for strand in range(1, w.strands + 1)]
    letters: list[int] = []
    for e in w.letters:
        i = abs(e) - 1
        if kept[i] and kept[i + 1]:
            new_index = sum(kept[:i]) + 1
            letters.append(new_index if e > 0 else -new_index)
        kept[i], kept[i + 1] = kept[i + 1], kept[i]
    return BraidWord(len(keep_set), tuple(letters))


def self_linking_data(w: BraidWord) -> SelfLinkingData:
    """sl of every nonempty sublink, with canonical component labels."""
    part = component_partition(w)
    labels = range(1, part.component_count + 1)
    entries: dict[tuple[int, ...], int] = {}
    for size in range(1, part.component_count + 1):
        for subset in combinations(labels, size):
            sub = restrict_to_strands(w, part.strands_of(subset))
            entries[subset] = self_linking(sub)
    return SelfLinkingData(part.component_count, entries)


# --- moves -----------------------------------------------------------------

def conjugate(w: BraidWord, u: BraidWord) -> BraidWord:
    """u * w * u^-1 on a shared strand count."""
    if w.strands != u.strands:
        raise ValueError("conjugating word must share the strand count")
    return u * w * u.inverse()


def stabilize(w: BraidWord, sign: int) -> BraidWord:
    """Append sigma_n^(+-1) on n+1 strands; positive keeps the transverse type."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = w.strands
    return BraidWord(n + 1, w.letters + (sign * n,))


def destabilize(w: BraidWord) -> BraidWord:
    """Undo a stabilization: last letter must be the unique occurrence of sigma_{n-1}."""
    from .errors import InputError

    n = w.strands
    if n < 2 or not w.letters:
        raise InputError("word is not in destabilizable form (too short)")
    if abs(w.letters[-1]) != n - 1:
        raise InputError(
            f"last letter must involve index {n - 1}, got {w.letters[-1]}"
        )
    if sum(1 for e in w.letters if abs(e) == n - 1) != 1:
        raise InputError(f"index {n - 1} occurs more than once; cannot destabilize")
    return BraidWord(n - 1, w.letters[:-1])


def _check_fragment(frag: BraidWord, who: str) -> None:
    from .errors import InputError

    if any(abs(e) == 1 for e in frag.letters):
        raise InputError(f"fragment {who} may only use sigma_2..sigma_(n-1)")


def exchange_move(a: BraidWord, b: BraidWord, c: BraidWord,
                  direction: int = 1) -> tuple[BraidWord, BraidWord]:
    """The pair (a s1 b s1^-1 c, a s1^-1 b s1 c); closures are transversely isotopic.

    ``direction=-1`` returns the pair in the opposite order (useful when the
    second form is the starting word).
    """
    if not (a.strands == b.strands == c.strands):
        raise ValueError("fragments must share the strand count")
    for frag, who in ((a, "a"), (b, "b"), (c, "c")):
        _check_fragment(frag, who)
    n = a.strands
    s1 = BraidWord(n, (1,))
    w1 = a * s1 * b * s1.inverse() * c
    w2 = a * s1.inverse() * b * s1 * c
    return (w1, w2) if direction == 1 else (w2, w1)


@dataclass(frozen=True)
class FlypePair:
    """A negative-flype pair a s1^m b s1^-1 c <-> a s1^-1 b s1^m c.

    ``sl_data_guaranteed`` flags whether equality of self-linking data is
    automatic: m odd, or m even with both s1-strands on one closure component.
    """

    w1: BraidWord
    w2: BraidWord
    m: int
    sl_data_guaranteed: bool


def negative_flype_pair(a: BraidWord, b: BraidWord, c: BraidWord, m: int) -> FlypePair:
    if not (a.strands == b.strands == c.strands):
        raise ValueError("fragments must share the strand count")
    if m < 1:
        raise ValueError("m must be >= 1")
    for frag, who in ((a, "a"), (b, "b"), (c, "c")):
        _check_fragment(frag, who)
    n = a.strands
    block = BraidWord(n, (1,) * m)
    s1 = BraidWord(n, (1,))
    w1 = a * block * b * s1.inverse() * c
    w2 = a * s1.inverse() * b * block * c

    if m % 2 == 1:
        guaranteed = True
    else:
        # Strands sitting at positions 1 and 2 when the s1^m block starts.
        pos = list(range(1, n + 1))
        for e in a.letters:
            i = abs(e) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        part = component_partition(w1)
        guaranteed = part.label_of_strand(pos[0]) == part.label_of_strand(pos[1])
    return FlypePair(w1, w2, m, guaranteed)


def translate_psi(g: BraidWord, j: int, k: int, l: int) -> BraidWord:
    """Embed B_j into B_k shifting every generator index by l."""
    from .errors import InputError

    if g.strands != j:
        raise InputError(f"word has {g.strands} strands, expected j={j}")
    if not (1 <= j <= k) or not (0 <= l <= k - j):
        raise InputError(f"need 1 <= j <= k and 0 <= l <= k-j, got j={j} k={k} l={l}")
    return BraidWord(k, tuple(e + l if e > 0 else e - l for e in g.letters))


def connected_sum_word(g: BraidWord, h: BraidWord) -> BraidWord:
    """Word on n+m-1 strands whose closure is the connected sum of the closures."""
    n, m = g.strands, h.strands
    return translate_psi(g, n, n + m - 1, 0) * translate_psi(h, m, n + m - 1, n - 1)


def quasipositive_witness(factors: Sequence[tuple[BraidWord, int]],
                          strands: int | None = None) -> BraidWord:
    """Concatenate conjugated generators u sigma_i u^-1; quasipositive by construction."""
    from .errors import InputError

    if not factors and strands is None:
        raise InputError("need at least one factor or an explicit strand count")
    n = strands if strands is not None else factors[0][0].strands
    out = BraidWord(n)
    for u, i in factors:
        if u.strands != n:
            raise InputError("all conjugating words must share the strand count")
        if not (1 <= i <= n - 1):
            raise InputError(f"generator index {i} out of range for {n} strands")
        out = out * u * BraidWord(n, (i,)) * u.inverse()
    return out


def resolve_positive_letter(w: BraidWord, position: int) -> BraidWord:
    """Delete the positive letter at the given 1-based position."""
    from .errors import InputError

    if not (1 <= position <= len(w.letters)):
        raise InputError(f"position {position} out of range 1..{len(w.letters)}")
    if w.letters[position - 1] < 0:
        raise InputError(f"letter at position {position} is negative")
    return BraidWord(w.strands, w.letters[:position - 1] + w.letters[position:])


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent e, -e pairs until none remain (diagnostic helper)."""
    stack: list[int] = []
    for e in w.letters:
        if stack and stack[-1] == -e:
            stack.pop()
        else:
            stack.append(e)
    return BraidWord(w.strands, tuple(stack))
