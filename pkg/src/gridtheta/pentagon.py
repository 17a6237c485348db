"""Resolving a positive crossing by a curve swap, and the pentagon chain map.

A positive letter of a braid word is laid out in a dedicated two-row band of
the grid: the crossing row itself and, directly above it, a crossing-free
slide of the strand that was crossed over. The two diagrams of a resolution
share every marking; they differ only in one horizontal curve. The straight
circle between the band rows is beta; gamma is its companion that climbs
above the slide's X and dips below the crossing's X, meeting beta in exactly
two points. Reading the diagram with gamma in place of beta erases the
crossing, so the gamma diagram presents the word with that letter deleted
(plus crossing-free slides).

Pentagons between the two diagrams are enumerated on a refined grid whose
columns are subdivided at the curve jumps: a candidate boundary (five arcs on
beta, gamma, one horizontal and two vertical circles, cornered at the
right-most beta-gamma intersection) is integrated to a 2-chain, and a
pentagon is kept when that chain is a genuinely embedded disk. Counting the
pentagons that avoid the X markings, the interior of the source state and
(for the tilde flavor) the O markings gives a chain map between the tilde
complexes; its stage-by-stage composition realizes the comultiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .braid import BraidWord, connected_sum_word
from .config import RunConfig, sizing_estimate
from .errors import InputError, InternalInvariantError, ResourceCapError
from .gf2 import SparseBitMatrix
from .grid import GridDiagram, GridState, GridBuilder, grid_to_braid, z_plus
from .homology import (CooMap, all_states_array, differential_coo, perm_rank,
                       transposition_map)


@dataclass(frozen=True)
class Band:
    """Final-grid coordinates of one resolvable crossing.

    Row ``t`` holds a crossing-free slide of the strand about to be crossed
    over (from ``col_c`` to the fresh ``col_s``); row t+1 holds the crossing
    itself (the mover leaves ``col_a``, passes over ``col_s``, lands in the
    fresh ``col_b``). beta is the circle t+1 between the two rows; gamma
    dips below beta over [col_s, col_b) and pops just above it inside
    ``col_b``, meeting beta in exactly two points.
    """

    t: int
    col_a: int
    col_s: int
    col_b: int
    col_c: int
    letter_index: int  # 1-based position of the resolved letter in the word

    def __post_init__(self):
        if not (self.col_a < self.col_s < self.col_b < self.col_c):
            raise InternalInvariantError(
                f"band columns out of order: {self}")


def swap_band(g: GridDiagram, band: Band) -> GridDiagram:
    """Reslice along gamma: the X markings of the two band rows trade rows."""
    x_rows = list(g.x_rows)
    if x_rows[band.col_s] != band.t or x_rows[band.col_b] != band.t + 1:
        raise InternalInvariantError("band does not match grid")
    x_rows[band.col_s] = band.t + 1
    x_rows[band.col_b] = band.t
    return GridDiagram(tuple(x_rows), g.o_rows)


@dataclass(frozen=True)
class ResolutionPair:
    """The two grids of one resolved crossing plus the curve data.

    ``g_beta`` reads the full word; ``g_gamma`` (in straightened form) reads
    the word with the banded letter deleted. ``intersections`` holds the two
    beta-gamma crossing points in quarter-coordinates, right-most last; the
    right-most one is the distinguished pentagon corner.
    """

    g_beta: GridDiagram
    g_gamma: GridDiagram
    band: Band
    beta_word: BraidWord
    gamma_word: BraidWord

    @property
    def special_circle(self) -> int:
        return self.band.t + 1

    @property
    def intersections(self) -> tuple[tuple[int, int], tuple[int, int]]:
        t = self.band.t
        return ((4 * self.band.col_s + 1, 4 * (t + 1)),
                (4 * self.band.col_b + 1, 4 * (t + 1)))

    def to_json(self) -> dict:
        return {
            "k": self.g_beta.size,
            "beta_word": str(self.beta_word),
            "gamma_word": str(self.gamma_word),
            "special_circle": self.special_circle,
            "band": {"t": self.band.t, "a": self.band.col_a,
                     "s": self.band.col_s, "b": self.band.col_b,
                     "c": self.band.col_c,
                     "letter_index": self.band.letter_index},
            "g_beta": {"x_rows": list(self.g_beta.x_rows),
                       "o_rows": list(self.g_beta.o_rows)},
            "g_gamma": {"x_rows": list(self.g_gamma.x_rows),
                        "o_rows": list(self.g_gamma.o_rows)},
        }


@dataclass(frozen=True)
class Pentagon:
    """One embedded pentagon: corner data plus its refined-cell support."""

    source: tuple[int, ...]
    target: tuple[int, ...]
    corner_beta: tuple[int, int]      # component of the source on beta
    corner_b: tuple[int, int]         # right-most beta-gamma intersection
    corner_gamma: tuple[int, int]     # component of the target on gamma
    corner_shared_x: tuple[int, int]
    corner_shared_y: tuple[int, int]
    cells: frozenset[tuple[int, int]]


# --- building the grids -------------------------------------------------------


def _build_with_bands(word: BraidWord, positions: list[int]):
    """Grid of ``word`` with a two-row band at each listed letter (1-based)."""
    pos_set = set(positions)
    if len(pos_set) != len(positions):
        raise InputError("duplicate resolution positions")
    for p in positions:
        if not (1 <= p <= len(word.letters)):
            raise InputError(f"letter position {p} out of range")
        if word.letters[p - 1] < 0:
            raise InputError(
                f"letter at position {p} is negative; only positive letters resolve")

    builder = GridBuilder(word.strands)
    band_pieces: dict[int, tuple] = {}
    for idx, e in enumerate(word.letters, start=1):
        if idx in pos_set:
            i = e  # positive
            a_piece = builder.pos2piece[i - 1]
            # slide the strand about to be crossed, then cross over it
            row_t, c_piece, s_piece = builder.slide(i + 1, -1)
            builder.apply_letter(e)
            b_piece = builder.pos2piece[i]
            band_pieces[idx] = (row_t, a_piece, s_piece, b_piece, c_piece)
        else:
            builder.apply_letter(e)
    builder.close()
    base = builder.finish()
    bands = {
        idx: Band(t=row_t,
                  col_a=builder.column_index(a_piece),
                  col_s=builder.column_index(s_piece),
                  col_b=builder.column_index(b_piece),
                  col_c=builder.column_index(c_piece),
                  letter_index=idx)
        for idx, (row_t, a_piece, s_piece, b_piece, c_piece)
        in band_pieces.items()
    }
    return base, bands


def build_resolution(w: BraidWord, i: int | None = None,
                     config: RunConfig | None = None) -> ResolutionPair:
    """Resolution of the trailing positive letter of w * sigma_i.

    With ``i`` omitted the word's own last letter (which must be positive)
    is resolved instead.
    """
    config = config or RunConfig()
    if i is not None:
        if not (1 <= i <= w.strands - 1):
            raise InputError(f"generator index {i} out of range")
        full = BraidWord(w.strands, w.letters + (i,))
    else:
        if not w.letters:
            raise InputError("empty word has no letter to resolve")
        if w.letters[-1] < 0:
            raise InputError("final letter is not a positive generator")
        full = w
    pos = len(full.letters)
    base, bands = _build_with_bands(full, [pos])
    return _make_pair(base, bands[pos], config)


def _make_pair(g_beta: GridDiagram, band: Band,
               config: RunConfig) -> ResolutionPair:
    if g_beta.size > config.max_k_full:
        raise ResourceCapError(
            f"resolution pair refused: {sizing_estimate(g_beta.size)}",
            grid_size=g_beta.size,
            estimated_states=math.factorial(g_beta.size),
            cap=config.max_k_full)
    g_gamma = swap_band(g_beta, band)
    beta_word, _ = grid_to_braid(g_beta)
    gamma_word, _ = grid_to_braid(g_gamma)
    return ResolutionPair(g_beta, g_gamma, band, beta_word, gamma_word)


# --- pentagon enumeration -------------------------------------------------------


class _Cycle:
    """A directed cyclic edge path on the refined grid; supports arcs."""

    def __init__(self, vertices: list[tuple[int, int]],
                 edges: list[tuple[tuple, int]]):
        self.vertices = vertices
        self.edges = edges  # edges[i] runs vertices[i] -> vertices[i+1]
        self.index = {v: i for i, v in enumerate(vertices)}
        if len(vertices) != len(edges):
            raise InternalInvariantError("cycle vertex/edge mismatch")

    def arc(self, p: tuple[int, int], q: tuple[int, int], forward: bool):
        ip, iq = self.index[p], self.index[q]
        n = len(self.edges)
        out = []
        if forward:
            i = ip
            while i != iq:
                out.append(self.edges[i])
                i = (i + 1) % n
        else:
            i = ip
            while i != iq:
                i = (i - 1) % n
                key, sign = self.edges[i]
                out.append((key, -sign))
        return out


class PentagonCalculator:
    """Pentagon counts between the beta and gamma slicings of one band.

    Works on the refined grid whose vertical lines include the gamma jump
    positions; all coordinates are quartered so everything stays integral.
    """

    def __init__(self, pair: ResolutionPair):
        self.pair = pair
        g = pair.g_beta
        band = pair.band
        k = self.k = g.size
        t = band.t

        self.vx = sorted([4 * v for v in range(k)]
                         + [4 * band.col_s + 1, 4 * band.col_b + 1,
                            4 * band.col_b + 3])
        h_lo, h_md, h_hi = 4 * t + 1, 4 * t + 5, 4 * t + 7
        self.h_levels = (h_lo, h_md, h_hi)
        self.vy = sorted([4 * h for h in range(k)] + [h_lo, h_md, h_hi])
        self.W, self.H = len(self.vx), len(self.vy)
        self.xi = {x: i for i, x in enumerate(self.vx)}
        self.yi = {y: j for j, y in enumerate(self.vy)}
        self.beta_j = self.yi[4 * (t + 1)]

        # gamma plateau per strip (index into vy)
        def gamma_height_at(x: int) -> int:
            if 4 * band.col_s + 1 <= x < 4 * band.col_b + 1:
                return h_lo
            if 4 * band.col_b + 1 <= x < 4 * band.col_b + 3:
                return h_hi
            return h_md

        self.gamma_level = [self.yi[gamma_height_at(x)] for x in self.vx]

        # gamma height on each original vertical line (for state points)
        self.gamma_line_height = {
            v: gamma_height_at(4 * v) for v in range(k)}

        # marking cells
        def cell_of(xq: int, yq: int) -> tuple[int, int]:
            i = np.searchsorted(self.vx, xq, side="right") - 1
            j = np.searchsorted(self.vy, yq, side="right") - 1
            return int(i), int(j)

        self.x_cells = [cell_of(4 * c + 2, 4 * g.x_rows[c] + 2) for c in range(k)]
        self.o_cells = [cell_of(4 * c + 2, 4 * g.o_rows[c] + 2) for c in range(k)]

        self._beta_cycle = self._circle_cycle(self.beta_j)
        self._gamma_cycle = self._build_gamma_cycle()
        self._hline_cycles = {h: self._circle_cycle(self.yi[4 * h])
                              for h in range(k) if h != t + 1}
        self._vline_cycles = {v: self._vline_cycle(self.xi[4 * v])
                              for v in range(k)}
        self.corner_b = (self.xi[4 * band.col_b + 1], self.beta_j)
        self._shape_cache: dict[tuple[int, int, int], list] = {}

    # -- cycles --

    def _circle_cycle(self, j: int) -> _Cycle:
        verts = [(i, j) for i in range(self.W)]
        edges = [(("H", i, j), 1) for i in range(self.W)]
        return _Cycle(verts, edges)

    def _vline_cycle(self, i: int) -> _Cycle:
        verts = [(i, j) for j in range(self.H)]
        edges = [(("V", i, j), 1) for j in range(self.H)]
        return _Cycle(verts, edges)

    def _build_gamma_cycle(self) -> _Cycle:
        verts: list[tuple[int, int]] = []
        edges: list[tuple[tuple, int]] = []
        W = self.W
        for i in range(W):
            lvl = self.gamma_level[i]
            verts.append((i, lvl))
            edges.append((("H", i, lvl), 1))
            nxt = self.gamma_level[(i + 1) % W]
            jpos = (i + 1) % W
            j = lvl
            while j != nxt:
                if nxt > j:
                    verts.append((jpos, j))
                    edges.append((("V", jpos, j), 1))
                    j += 1
                else:
                    verts.append((jpos, j))
                    edges.append((("V", jpos, j - 1), -1))
                    j -= 1
        return _Cycle(verts, edges)

    # -- shape enumeration --

    def shapes(self, u_prime: int, u: int, h1: int) -> list[dict]:
        """Embedded pentagon regions for the corner data (u', u, h1)."""
        key = (u_prime, u, h1)
        if key in self._shape_cache:
            return self._shape_cache[key]

        a_pt = (self.xi[4 * u_prime], self.beta_j)
        c_pt = (self.xi[4 * u], self.yi[self.gamma_line_height[u]])
        qx_pt = (self.xi[4 * u], self.yi[4 * h1])
        qy_pt = (self.xi[4 * u_prime], self.yi[4 * h1])
        b_pt = self.corner_b

        beta_arcs = [self._beta_cycle.arc(a_pt, b_pt, f) for f in (True, False)]
        gamma_arcs = [self._gamma_cycle.arc(b_pt, c_pt, f) for f in (True, False)]
        down_arcs = [self._vline_cycles[u].arc(c_pt, qx_pt, f) for f in (True, False)]
        horiz_arcs = [self._hline_cycles[h1].arc(qx_pt, qy_pt, f) for f in (True, False)]
        up_arcs = [self._vline_cycles[u_prime].arc(qy_pt, a_pt, f) for f in (True, False)]

        seen: set[frozenset] = set()
        regions: list[dict] = []
        for ba in beta_arcs:
            for ga in gamma_arcs:
                for da in down_arcs:
                    for ha in horiz_arcs:
                        for ua in up_arcs:
                            support = self._integrate(ba + ga + da + ha + ua)
                            if support is None or support in seen:
                                continue
                            seen.add(support)
                            if not self._is_disk(support):
                                continue
                            regions.append(self._region_data(support))
        self._shape_cache[key] = regions
        return regions

    def _integrate(self, arc_edges) -> frozenset | None:
        W, H = self.W, self.H
        fh = np.zeros((W, H), dtype=np.int32)
        fv = np.zeros((W, H), dtype=np.int32)
        for (kind, i, j), sign in arc_edges:
            if kind == "H":
                fh[i, j] += sign
            else:
                fv[i, j] += sign
        c = np.zeros((W, H), dtype=np.int32)
        c[1:, 0] = -np.cumsum(fv[1:, 0])
        c[:, 1:] = c[:, [0]] + np.cumsum(fh[:, 1:], axis=1)
        # full consistency, both wraps included
        if not np.array_equal(c - np.roll(c, 1, axis=1), fh):
            return None
        if not np.array_equal(np.roll(c, 1, axis=0) - c, fv):
            return None
        lo, hi = int(c.min()), int(c.max())
        if hi - lo != 1:
            return None
        cells = np.argwhere(c == hi)
        return frozenset((int(i), int(j)) for i, j in cells)

    def _is_disk(self, support: frozenset) -> bool:
        W, H = self.W, self.H
        verts: set[tuple[int, int]] = set()
        edges: set[tuple] = set()
        for (i, j) in support:
            verts.update({(i, j), ((i + 1) % W, j), (i, (j + 1) % H),
                          ((i + 1) % W, (j + 1) % H)})
            edges.update({("H", i, j), ("H", i, (j + 1) % H),
                          ("V", i, j), ("V", (i + 1) % W, j)})
        if len(verts) - len(edges) + len(support) != 1:
            return False
        for (i, j) in verts:
            around = [((i - 1) % W, (j - 1) % H) in support,
                      (i, (j - 1) % H) in support,
                      ((i - 1) % W, j) in support,
                      (i, j) in support]
            if around == [True, False, False, True] or around == [False, True, True, False]:
                return False  # pinched corner
        return True

    def _region_data(self, support: frozenset) -> dict:
        k = self.k
        has_x = any(self.x_cells[c] in support for c in range(k))
        has_o = any(self.o_cells[c] in support for c in range(k))
        interior: set[tuple[int, int]] = set()
        W, H = self.W, self.H
        for v in range(k):
            i = self.xi[4 * v]
            for h in range(k):
                j = self.yi[4 * h]
                if (((i - 1) % W, (j - 1) % H) in support
                        and (i, (j - 1) % H) in support
                        and ((i - 1) % W, j) in support
                        and (i, j) in support):
                    interior.add((v, h))
        return {"support": support, "has_x": has_x, "has_o": has_o,
                "interior": interior}

    # -- counting --

    def pentagons_from(self, x: tuple[int, ...], forbid_o: bool):
        """Yield (target row tuple, region) over pentagons leaving x."""
        t1 = self.pair.band.t + 1
        u_prime = x.index(t1)
        for u in range(self.k):
            if u == u_prime:
                continue
            h1 = x[u]
            for region in self.shapes(u_prime, u, h1):
                if region["has_x"]:
                    continue
                if forbid_o and region["has_o"]:
                    continue
                if any((v, x[v]) in region["interior"] for v in range(self.k)):
                    continue
                y = list(x)
                y[u], y[u_prime] = y[u_prime], y[u]
                yield tuple(y), region

    def pentagon_objects(self, x: GridState, y: GridState,
                         forbid_o: bool) -> list[Pentagon]:
        t1 = self.pair.band.t + 1
        out = []
        for target, region in self.pentagons_from(tuple(x.rows), forbid_o):
            if target != tuple(y.rows):
                continue
            u_prime = x.rows.index(t1)
            u = next(v for v in range(self.k)
                     if v != u_prime and x.rows[v] != y.rows[v])
            out.append(Pentagon(
                source=tuple(x.rows), target=tuple(y.rows),
                corner_beta=(4 * u_prime, 4 * t1),
                corner_b=self.pair.intersections[1],
                corner_gamma=(4 * u, self.gamma_line_height[u]),
                corner_shared_x=(4 * u, 4 * x.rows[u]),
                corner_shared_y=(4 * u_prime, 4 * x.rows[u]),
                cells=region["support"]))
        return out

    def phi_coo(self, forbid_o: bool = True) -> CooMap:
        """The full pentagon-counting map as parity-reduced COO."""
        k = self.k
        states = all_states_array(k)
        n = len(states)
        t1 = self.pair.band.t + 1
        srcs: list[np.ndarray] = []
        dsts: list[np.ndarray] = []
        cols = np.argmax(states == t1, axis=1)  # u' per state
        for u_prime in range(k):
            sel = np.nonzero(cols == u_prime)[0]
            if not len(sel):
                continue
            sub = states[sel]
            for u in range(k):
                if u == u_prime:
                    continue
                tmap = transposition_map(k, min(u, u_prime), max(u, u_prime))
                h1s = sub[:, u]
                for h1 in range(k):
                    if h1 == t1:
                        continue
                    regions = [r for r in self.shapes(u_prime, u, h1)
                               if not r["has_x"] and not (forbid_o and r["has_o"])]
                    if not regions:
                        continue
                    pick = sel[h1s == h1]
                    if not len(pick):
                        continue
                    rows = states[pick]
                    for region in regions:
                        mask = np.ones(len(pick), dtype=bool)
                        for (v, h) in region["interior"]:
                            mask &= rows[:, v] != h
                        hit = pick[mask]
                        if len(hit):
                            srcs.append(hit)
                            dsts.append(tmap[hit])
        if srcs:
            src = np.concatenate(srcs)
            dst = np.concatenate(dsts)
        else:
            src = dst = np.empty(0, dtype=np.int64)
        return CooMap(n, n, src, dst)


# --- public operations ----------------------------------------------------------


def pentagons(pair: ResolutionPair, x: GridState, y: GridState,
              forbid_o: bool = True) -> list[Pentagon]:
    return PentagonCalculator(pair).pentagon_objects(x, y, forbid_o)


def phi_tilde(pair: ResolutionPair, config: RunConfig | None = None) -> SparseBitMatrix:
    """Pentagon chain map as a sparse bit matrix (entry (y, x)); k <= 7."""
    if pair.g_beta.size > 7:
        raise ResourceCapError("bitset matrix form capped at k <= 7; use phi_coo",
                               grid_size=pair.g_beta.size, cap=7)
    return PentagonCalculator(pair).phi_coo(forbid_o=True).to_sparse()


@dataclass(frozen=True)
class ThetaPentagonReport:
    pair: ResolutionPair
    count_to_target: int
    stray_targets: int
    maps_z_plus: bool
    chain_map_ok: bool

    @property
    def passed(self) -> bool:
        return (self.count_to_target == 1 and self.stray_targets == 0
                and self.maps_z_plus and self.chain_map_ok)

    def to_json(self) -> dict:
        return {"pair": self.pair.to_json(),
                "pentagons_z_to_z": self.count_to_target,
                "pentagons_z_to_other": self.stray_targets,
                "phi_sends_theta_to_theta": self.maps_z_plus,
                "chain_map_identity": self.chain_map_ok,
                "passed": self.passed}


def verify_theta_pentagon(pair: ResolutionPair,
                          config: RunConfig | None = None,
                          check_chain_map: bool = True) -> ThetaPentagonReport:
    """The two correctness gates of a resolution layout.

    From z+ of the beta grid there must be exactly one empty pentagon, it
    must land on z+ of the gamma grid, and the pentagon count must commute
    with the two tilde differentials.
    """
    config = config or RunConfig()
    calc = PentagonCalculator(pair)
    z_beta = tuple(z_plus(pair.g_beta).rows)
    z_gamma = tuple(z_plus(pair.g_gamma).rows)
    hits: dict[tuple, int] = {}
    for target, _region in calc.pentagons_from(z_beta, forbid_o=True):
        hits[target] = hits.get(target, 0) + 1
    count_target = hits.get(z_gamma, 0)
    stray = sum(v for key, v in hits.items() if key != z_gamma)
    maps_z = count_target % 2 == 1 and stray == 0

    chain_ok = True
    if check_chain_map:
        phi = calc.phi_coo(forbid_o=True)
        d_beta = differential_coo(pair.g_beta, config=config)
        d_gamma = differential_coo(pair.g_gamma, config=config)
        chain_ok = d_gamma.compose(phi) == phi.compose(d_beta)
    return ThetaPentagonReport(pair, count_target, stray, maps_z, chain_ok)


@dataclass(frozen=True)
class CompositionResult:
    start_word: BraidWord
    final_word: BraidWord
    stages: tuple[ResolutionPair, ...]
    composite: CooMap
    theta_image_ok: bool

    def to_json(self) -> dict:
        return {"start_word": str(self.start_word),
                "final_word": str(self.final_word),
                "stages": [p.to_json() for p in self.stages],
                "composite_entries": self.composite.entry_count,
                "theta_image_ok": self.theta_image_ok}


def compose_resolutions(w: BraidWord, positions: list[int],
                        config: RunConfig | None = None) -> CompositionResult:
    """Resolve the listed positive letters in order; compose the stage maps.

    All stages live on one marking set (each resolved letter gets its own
    band), so the stage maps compose as honest matrices. The composite is a
    chain map sending theta of the start diagram to theta of the final one;
    that image statement is checked at chain level and reported.
    """
    config = config or RunConfig()
    base, bands = _build_with_bands(w, positions)
    if base.size > config.max_k_full:
        raise ResourceCapError(
            f"composition refused: {sizing_estimate(base.size)}",
            grid_size=base.size, estimated_states=math.factorial(base.size),
            cap=config.max_k_full)
    n_states = math.factorial(base.size)
    composite = CooMap(n_states, n_states,
                       np.arange(n_states), np.arange(n_states))
    grid = base
    stages = []
    for pos in positions:
        pair = _make_pair(grid, bands[pos], config)
        calc = PentagonCalculator(pair)
        composite = calc.phi_coo(forbid_o=True).compose(composite)
        stages.append(pair)
        grid = pair.g_gamma

    start_z = perm_rank(z_plus(base).rows)
    final_z = perm_rank(z_plus(grid).rows)
    image = composite.apply_set({start_z})
    theta_ok = image == {final_z}
    final_word, _ = grid_to_braid(grid)
    return CompositionResult(w, final_word, tuple(stages), composite, theta_ok)


@dataclass(frozen=True)
class ComultiplicationReport:
    g_word: BraidWord
    h_word: BraidWord
    hg_cert: object
    sum_cert: object

    @property
    def implication_holds(self) -> bool:
        # nonzero theta of the connected sum forces nonzero theta of hg
        return self.sum_cert.vanishes or not self.hg_cert.vanishes

    def to_json(self) -> dict:
        return {"g": str(self.g_word), "h": str(self.h_word),
                "theta_hg": self.hg_cert.to_json(),
                "theta_connected_sum": self.sum_cert.to_json(),
                "implication_holds": self.implication_holds}


def comultiplication_check(g: BraidWord, h: BraidWord,
                           config: RunConfig | None = None) -> ComultiplicationReport:
    """Behavioral test of the comultiplication: a nonvanishing theta of the
    connected sum of the closures forces a nonvanishing theta of hg."""
    from .transverse import theta

    if g.strands != h.strands:
        raise InputError("comultiplication check needs one strand count")
    config = config or RunConfig()
    hg = h * g
    report = ComultiplicationReport(
        g, h, theta(hg, config), theta(connected_sum_word(g, h), config))
    if not report.implication_holds:
        raise InternalInvariantError(
            f"comultiplication implication failed for g={g}, h={h}")
    return report
