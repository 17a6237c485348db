"""Exhaustive small-scale search over negative-flype families.

Enumerates fragment triples (a, b, c) in the generators sigma_2..sigma_(n-1)
up to a length bound, forms the flype pair, and computes both theta
certificates when the grids fit under the caps. Pairs where exactly one
theta vanishes are the interesting output: together with equal self-linking
data they witness transverse non-simplicity of the underlying link type.

Candidates are indexed deterministically; the optional worker pool fans them
out by index and results are merged back in order.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .braid import BraidWord, negative_flype_pair, self_linking_data
from .config import RunConfig
from .errors import ResourceCapError
from .grid import braid_to_grid
from .transverse import theta


@dataclass(frozen=True)
class FlypeRow:
    w1: BraidWord
    w2: BraidWord
    sl_data_guaranteed: bool
    sl_data_equal: bool
    theta_w1_vanishes: bool | None
    theta_w2_vanishes: bool | None
    skipped: str | None

    @property
    def split(self) -> bool | None:
        if self.theta_w1_vanishes is None or self.theta_w2_vanishes is None:
            return None
        return self.theta_w1_vanishes != self.theta_w2_vanishes

    def to_json(self) -> dict:
        return {"w1": str(self.w1), "w2": str(self.w2),
                "sl_data_guaranteed": self.sl_data_guaranteed,
                "sl_data_equal": self.sl_data_equal,
                "theta_w1_vanishes": self.theta_w1_vanishes,
                "theta_w2_vanishes": self.theta_w2_vanishes,
                "split": self.split, "skipped": self.skipped}


def fragment_triples(strands: int, max_fragment_length: int):
    gens = [e for i in range(2, strands) for e in (i, -i)]
    frags = [()]
    for length in range(1, max_fragment_length + 1):
        frags.extend(itertools.product(gens, repeat=length))
    yield from itertools.product(frags, frags, frags)


def _examine(args) -> FlypeRow:
    strands, a_l, b_l, c_l, m, cfg_tuple = args
    config = RunConfig(*cfg_tuple)
    a = BraidWord(strands, a_l)
    b = BraidWord(strands, b_l)
    c = BraidWord(strands, c_l)
    pair = negative_flype_pair(a, b, c, m)
    sl_equal = self_linking_data(pair.w1) == self_linking_data(pair.w2)
    v1 = v2 = None
    skipped = None
    try:
        g1 = braid_to_grid(pair.w1)
        g2 = braid_to_grid(pair.w2)
        if max(g1.size, g2.size) > config.max_k_full:
            raise ResourceCapError(
                f"grid size {max(g1.size, g2.size)} over cap {config.max_k_full}",
                grid_size=max(g1.size, g2.size), cap=config.max_k_full)
        v1 = theta(pair.w1, config, grid=g1).vanishes
        v2 = theta(pair.w2, config, grid=g2).vanishes
    except ResourceCapError as exc:
        skipped = str(exc)
    return FlypeRow(pair.w1, pair.w2, pair.sl_data_guaranteed, sl_equal,
                    v1, v2, skipped)


def flype_search(strands: int, max_fragment_length: int, m: int,
                 config: RunConfig | None = None,
                 limit: int | None = None) -> list[FlypeRow]:
    config = config or RunConfig()
    cfg_tuple = (config.max_k_full, config.max_k_bucket,
                 config.max_bucket_states, 1, config.output_format, config.seed)
    tasks = []
    for a_l, b_l, c_l in fragment_triples(strands, max_fragment_length):
        tasks.append((strands, tuple(a_l), tuple(b_l), tuple(c_l), m, cfg_tuple))
        if limit is not None and len(tasks) >= limit:
            break
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(_examine, tasks, chunksize=4))
    else:
        rows = [_examine(t) for t in tasks]
    return rows
