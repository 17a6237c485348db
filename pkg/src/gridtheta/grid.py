"""Toroidal grid diagrams and conversion to and from braid words.

Coordinates: columns left to right and rows bottom to top, both 0-indexed,
all arithmetic mod k. ``x_rows[c]`` / ``o_rows[c]`` give the row of the X / O
marking in column c; markings live in squares, grid lines are the k vertical
and k horizontal circles, and the square (c, r) has its upper-right corner on
lines ((c+1) mod k, (r+1) mod k).

The braid reading follows the convention that every vertical segment runs
upward from an X to the O in its column (wrapping through the top when the X
sits above the O), each row's horizontal segment runs from the O to the X of
that row, and horizontal segments pass over vertical ones. The word is read
row by row from the bottom; the strand count is the number of wrapping
columns. Homology computed downstream is an invariant of the mirror of the
closure; no un-mirroring is attempted anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import BraidWord
from .errors import InputError, InternalInvariantError


@dataclass(frozen=True)
class GridDiagram:
    """A k x k toroidal grid with one X and one O in every row and column."""

    x_rows: tuple[int, ...]
    o_rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x_rows", tuple(self.x_rows))
        object.__setattr__(self, "o_rows", tuple(self.o_rows))
        validate(self)

    @property
    def size(self) -> int:
        return len(self.x_rows)

    def x_col_of_row(self) -> tuple[int, ...]:
        cols = [0] * self.size
        for c, r in enumerate(self.x_rows):
            cols[r] = c
        return tuple(cols)

    def o_col_of_row(self) -> tuple[int, ...]:
        cols = [0] * self.size
        for c, r in enumerate(self.o_rows):
            cols[r] = c
        return tuple(cols)

    def __str__(self) -> str:
        return format_grid(self)


@dataclass(frozen=True)
class GridState:
    """A generator of the grid complex: on vertical line v it uses the point
    (v, rows[v]); rows is a permutation of 0..k-1."""

    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        k = len(self.rows)
        if sorted(self.rows) != list(range(k)):
            raise InputError(f"state {self.rows} is not a permutation of 0..{k - 1}")

    @property
    def size(self) -> int:
        return len(self.rows)


def validate(g: GridDiagram) -> None:
    """Check the two grid invariants, reporting the first violation."""
    k = len(g.x_rows)
    if k < 2:
        raise InputError("grid size must be at least 2")
    if len(g.o_rows) != k:
        raise InputError("x_rows and o_rows must have equal length")
    if sorted(g.x_rows) != list(range(k)):
        raise InputError("x_rows is not a bijection on 0..k-1")
    if sorted(g.o_rows) != list(range(k)):
        raise InputError("o_rows is not a bijection on 0..k-1")
    for c in range(k):
        if g.x_rows[c] == g.o_rows[c]:
            raise InputError(f"shared square in column {c}")


# --- text format -----------------------------------------------------------

def parse_grid(text: str) -> GridDiagram:
    """Parse the three-line format ``k=<int>`` / ``X: ...`` / ``O: ...``."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 3 or not lines[0].startswith("k="):
        raise InputError("grid text must be: 'k=<int>', 'X: ...', 'O: ...'")
    try:
        k = int(lines[0][2:])
    except ValueError as exc:
        raise InputError(f"bad grid size in {lines[0]!r}") from exc

    def row_list(line: str, tag: str) -> tuple[int, ...]:
        if not line.startswith(tag + ":"):
            raise InputError(f"expected line starting with '{tag}:', got {line!r}")
        try:
            vals = tuple(int(tok) for tok in line[len(tag) + 1:].split())
        except ValueError as exc:
            raise InputError(f"bad integers in {line!r}") from exc
        if len(vals) != k:
            raise InputError(f"{tag} line must list {k} rows, got {len(vals)}")
        return vals

    return GridDiagram(row_list(lines[1], "X"), row_list(lines[2], "O"))


def format_grid(g: GridDiagram) -> str:
    return "k={}\nX: {}\nO: {}".format(
        g.size, " ".join(map(str, g.x_rows)), " ".join(map(str, g.o_rows)))


def ascii_art(g: GridDiagram) -> str:
    """Rows printed top to bottom so the bottom row of the torus is last."""
    k = g.size
    out = []
    for r in reversed(range(k)):
        cells = []
        for c in range(k):
            cells.append("X" if g.x_rows[c] == r else "O" if g.o_rows[c] == r else ".")
        out.append(" ".join(cells))
    return "\n".join(out)


# --- distinguished cycle ---------------------------------------------------

def z_plus(g: GridDiagram) -> GridState:
    """The state at the upper-right corners of the X squares."""
    k = g.size
    rows = [0] * k
    for c in range(k):
        rows[(c + 1) % k] = (g.x_rows[c] + 1) % k
    return GridState(tuple(rows))


# --- link components on the grid -------------------------------------------

def grid_components(g: GridDiagram) -> tuple[tuple[int, ...], ...]:
    """Orbits of columns under 'follow the link', canonically ordered.

    Successor of column c: the X of the row holding c's O. Each orbit is one
    link component; orbits are sorted by least column, matching the canonical
    component labels used for Alexander gradings.
    """
    x_col = g.x_col_of_row()
    seen = [False] * g.size
    orbits = []
    for start in range(g.size):
        if seen[start]:
            continue
        orbit = []
        c = start
        while not seen[c]:
            seen[c] = True
            orbit.append(c)
            c = x_col[g.o_rows[c]]
        orbits.append(tuple(sorted(orbit)))
    orbits.sort(key=lambda orb: orb[0])
    return tuple(orbits)


# --- grid -> braid ----------------------------------------------------------

def grid_to_braid(g: GridDiagram) -> tuple[BraidWord, int]:
    """Read the braid word of the diagram, bottom row up.

    Active strands at any height are the columns whose vertical segment
    crosses it; row r moves the strand from the O column to the X column of
    that row, crossing over every strand strictly between. Horizontal
    segments stay inside the fundamental square (they never wrap), so the
    crossed strands are those between the two columns in the linear order.
    """
    k = g.size
    x_col = g.x_col_of_row()
    o_col = g.o_col_of_row()

    active = {c for c in range(k) if g.x_rows[c] > g.o_rows[c]}
    n = len(active)
    if n == 0:
        raise InternalInvariantError("valid grid with no wrapping column")

    letters: list[int] = []
    for r in range(k):
        src, dst = o_col[r], x_col[r]
        after = (active - {src}) | {dst}
        crossed = sorted(c for c in active & after
                         if min(src, dst) < c < max(src, dst))
        if crossed:
            pos = sorted(active).index(src) + 1
            if dst > src:
                letters.extend(range(pos, pos + len(crossed)))
            else:
                letters.extend(-(pos - 1 - i) for i in range(len(crossed)))
        active = after
    return BraidWord(n, tuple(letters)), n


# --- braid -> grid ----------------------------------------------------------

class _Piece:
    """One vertical segment: a column of the grid under construction."""

    __slots__ = ("x_row", "o_row", "is_wrap")

    def __init__(self, is_wrap: bool):
        self.x_row = None
        self.o_row = None
        self.is_wrap = is_wrap


class GridBuilder:
    """Incremental grid construction shared by the plain converter and the
    resolution builder.

    Columns are kept as an ordered list of pieces inserted next to existing
    ones; integer indices are assigned from the final order. Rows are emitted
    in processing order, bottom to top: one row per letter, then closure
    rows. Strand positions always agree with the left-to-right order of the
    active columns.
    """

    def __init__(self, n: int):
        self.n = n
        self.order: list[_Piece] = []
        self.rows: list[tuple[_Piece, _Piece]] = []  # (o_piece, x_piece)
        self.wraps = [_Piece(True) for _ in range(n)]
        self.order.extend(self.wraps)
        # pos2piece[i] = current piece of the strand at position i+1
        self.pos2piece: list[_Piece] = list(self.wraps)
        self.letter_rows: list[int] = []

    # -- geometry helpers --

    def _idx(self, piece: _Piece) -> int:
        return self.order.index(piece)

    def _active_pieces(self) -> set[_Piece]:
        act = set(self.pos2piece)
        act.update(p for p in self.wraps if p.x_row is not None)
        return act

    def _actives_between(self, a: _Piece, b: _Piece) -> list[_Piece]:
        ia, ib = self._idx(a), self._idx(b)
        lo, hi = min(ia, ib), max(ia, ib)
        act = self._active_pieces()
        return [p for p in self.order[lo + 1:hi] if p in act]

    def _emit(self, o_piece: _Piece, x_piece: _Piece) -> int:
        r = len(self.rows)
        if o_piece.o_row is not None or x_piece.x_row is not None:
            raise InternalInvariantError("marking placed twice")
        o_piece.o_row = r
        x_piece.x_row = r
        self.rows.append((o_piece, x_piece))
        return r

    # -- construction steps --

    def apply_letter(self, e: int) -> int:
        """One crossing row; returns the row index. Positive letters move the
        position-i strand right over its neighbor, negative letters move the
        position-(i+1) strand left, so the mover's segment always crosses on
        top, matching the reading convention."""
        i = abs(e) - 1
        if not (0 <= i < self.n - 1):
            raise InputError(f"letter {e} out of range for {self.n} strands")
        if e > 0:
            mover, other = self.pos2piece[i], self.pos2piece[i + 1]
            new = _Piece(False)
            self.order.insert(self._idx(other) + 1, new)
        else:
            mover, other = self.pos2piece[i + 1], self.pos2piece[i]
            new = _Piece(False)
            self.order.insert(self._idx(other), new)
        r = self._emit(mover, new)
        self.pos2piece[i], self.pos2piece[i + 1] = (
            (other, new) if e > 0 else (new, other))
        self.letter_rows.append(r)
        return r

    def slide(self, position: int, side: int) -> tuple[int, _Piece, _Piece]:
        """Move the strand at 1-based ``position`` to a fresh adjacent column
        (side=-1: immediately left, +1: immediately right). Crossing-free."""
        cur = self.pos2piece[position - 1]
        new = _Piece(False)
        at = self._idx(cur) + (1 if side > 0 else 0)
        self.order.insert(at, new)
        r = self._emit(cur, new)
        self.pos2piece[position - 1] = new
        return r, cur, new

    def close(self) -> None:
        """Send every strand into its wrap column without creating crossings.

        Strand at top position j must enter wraps[j-1] so that the closure
        identifies top and bottom positions. A close is scheduled only when
        (a) no active column lies strictly between, (b) the wrap's lower
        occupant has already left (else the wrap loses X-above-O), and
        (c) no pending strand still has to sweep across that wrap column.
        Strands stuck in their own wrap first step aside to a fresh column.
        """
        unclosed = dict(enumerate(self.pos2piece, start=1))  # top position -> piece
        while unclosed:
            progressed = False
            for j in sorted(unclosed):
                piece = unclosed[j]
                target = self.wraps[j - 1]
                if piece is target:
                    continue  # needs a side-step first
                if target.o_row is None and target in self.pos2piece:
                    continue  # occupant still parked in the wrap
                if self._actives_between(piece, target):
                    continue
                blocked = False
                it = self._idx(target)
                for l, lp in unclosed.items():
                    if l == j:
                        continue
                    il, iw = self._idx(lp), self._idx(self.wraps[l - 1])
                    if min(il, iw) < it < max(il, iw):
                        blocked = True
                        break
                if blocked:
                    continue
                self._emit(piece, target)
                for idx, p in enumerate(self.pos2piece):
                    if p is piece:
                        self.pos2piece[idx] = target
                del unclosed[j]
                progressed = True
                break
            if progressed:
                continue
            sleepy = [j for j, piece in sorted(unclosed.items()) if piece.is_wrap]
            if not sleepy:
                raise InternalInvariantError("closure deadlock")
            j = sleepy[0]
            _, _, new = self.slide(j, +1)
            unclosed[j] = new

    def finish(self) -> GridDiagram:
        k = len(self.order)
        if len(self.rows) != k:
            raise InternalInvariantError(
                f"{k} columns but {len(self.rows)} rows at finish")
        x_rows, o_rows = [], []
        for piece in self.order:
            if piece.x_row is None or piece.o_row is None:
                raise InternalInvariantError("unfinished piece at finish")
            x_rows.append(piece.x_row)
            o_rows.append(piece.o_row)
        return GridDiagram(tuple(x_rows), tuple(o_rows))

    def column_index(self, piece: _Piece) -> int:
        return self._idx(piece)


def braid_to_grid(w: BraidWord) -> GridDiagram:
    """Canonical grid of the closure; reading it back returns (w, n) exactly.

    Grid size is n + length(w) + (one extra column per strand that never
    moves before the closure and re-enters its own wrap column). The minimum
    for the trivial braid I_n is 2n, so no construction can stay within
    n + length + 1 once several strands carry no letters.
    """
    builder = GridBuilder(w.strands)
    for e in w.letters:
        builder.apply_letter(e)
    builder.close()
    g = builder.finish()
    word, n = grid_to_braid(g)
    if word != w or n != w.strands:
        raise InternalInvariantError(
            f"round trip failed: built grid of {w} reads back {word}")
    return g


# --- named examples ---------------------------------------------------------

_MM_A = (4, 3, 5, 6, 4, 5, 5, 6, 4, 5, 7, 6, -5, -4, -3, 2, 3, 3, 4, 5, -4, -3, -2)
_MM_B = (5, 6, 7, -6, -5, -4, -6, -5, -4, 3, 4, 5, 2, 3, 4, 4, 5, 6, -5, -4, -3, -2)
_MM_C = (-7, -6, -5)


def _mm_flype_word(block: tuple[int, ...], other: tuple[int, ...],
                   first_positive: bool) -> BraidWord:
    mid = block if first_positive else other
    mid2 = other if first_positive else block
    return BraidWord(8, _MM_A + mid + _MM_B + mid2 + _MM_C)


def named_examples() -> dict[str, object]:
    """Registry of small benchmark diagrams and the 8-strand flype family."""
    reg: dict[str, object] = {
        "unknot2": GridDiagram((0, 1), (1, 0)),
        "trefoil_b2": BraidWord(2, (1, 1, 1)),
        "trefoil_b3": BraidWord(3, (1, 2, 1, 2)),
        "mm_a": BraidWord(8, _MM_A),
        "mm_b": BraidWord(8, _MM_B),
        "mm_c": BraidWord(8, _MM_C),
        "mm_w1": _mm_flype_word((1, 1), (-1,), True),
        "mm_w2": _mm_flype_word((1, 1), (-1,), False),
        "mm_h": BraidWord(8, (6, 5, 6, 4, 5, 6)),
    }
    for n in range(1, 5):
        reg[f"trivial_I{n}"] = BraidWord(n)
    return reg


def lookup_example(name: str):
    reg = named_examples()
    if name not in reg:
        raise InputError(f"unknown example {name!r}; known: {', '.join(sorted(reg))}")
    return reg[name]
