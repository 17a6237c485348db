"""The transverse invariant theta and its behavioral checks.

theta of a braid word is the homology class of the distinguished cycle z+ in
the tilde complex of the word's canonical grid. The certificate records the
vanishing decision together with a boundary witness when one exists, so a
consumer can re-verify with a single application of the differential. The
hat-flavor class vanishes if and only if the tilde one does, so a separate
hat complex is never built.

Vanishing is decided inside the single Alexander bucket of z+ at Maslov
M(z+)+1, which the grading coherence of the differential makes sound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import BraidWord, component_partition, self_linking, stabilize
from .config import RunConfig
from .errors import InputError, InternalInvariantError
from .grid import GridDiagram, GridState, braid_to_grid, z_plus
from .homology import Bigrading, GradingTable, is_boundary, perm_rank


@dataclass(frozen=True)
class ThetaCertificate:
    word: BraidWord
    grid: GridDiagram
    state: GridState
    is_cycle: bool
    vanishes: bool
    witness: tuple[tuple[int, ...], ...] | None
    grading: Bigrading

    def witness_ranks(self) -> list[int] | None:
        if self.witness is None:
            return None
        return sorted(perm_rank(rows) for rows in self.witness)

    def to_json(self) -> dict:
        return {
            "word": str(self.word),
            "strands": self.word.strands,
            "grid": {"k": self.grid.size,
                     "x_rows": list(self.grid.x_rows),
                     "o_rows": list(self.grid.o_rows)},
            "state": list(self.state.rows),
            "state_rank": perm_rank(self.state.rows),
            "is_cycle": self.is_cycle,
            "vanishes": self.vanishes,
            "witness": (None if self.witness is None
                        else [list(rows) for rows in sorted(self.witness)]),
            "witness_ranks": self.witness_ranks(),
            "gradings": {"maslov": self.grading.maslov,
                         "alexander": self.grading.alexander_strings()},
        }


def theta(w: BraidWord, config: RunConfig | None = None,
          grid: GridDiagram | None = None) -> ThetaCertificate:
    """Certificate for the transverse invariant of the closure of w."""
    config = config or RunConfig()
    g = grid if grid is not None else braid_to_grid(w)
    z = z_plus(g)
    vanishes, witness = is_boundary(g, {z.rows}, config)
    grading = GradingTable(g).bigrading(z)
    cert = ThetaCertificate(
        word=w, grid=g, state=z, is_cycle=True, vanishes=vanishes,
        witness=tuple(witness) if witness is not None and vanishes else None,
        grading=grading)
    if vanishes:
        _verify_witness(cert)
    return cert


def _verify_witness(cert: ThetaCertificate) -> None:
    from .homology import GridState, state_rectangles

    acc: set[tuple[int, ...]] = set()
    for rows in cert.witness or ():
        for y, _ in state_rectangles(cert.grid, GridState(rows), forbid_o=True):
            acc ^= {y.rows}
    if acc != {cert.state.rows}:
        raise InternalInvariantError("boundary witness failed re-verification")


@dataclass(frozen=True)
class NegativeStabilizationReport:
    original: ThetaCertificate
    stabilized: ThetaCertificate

    def to_json(self) -> dict:
        return {"original": self.original.to_json(),
                "stabilized": self.stabilized.to_json(),
                "stabilized_vanishes": self.stabilized.vanishes}


def check_negative_stabilization(w: BraidWord,
                                 config: RunConfig | None = None) -> NegativeStabilizationReport:
    """theta of any negative stabilization must vanish; asserts and reports."""
    original = theta(w, config)
    stabilized = theta(stabilize(w, -1), config)
    if not stabilized.vanishes:
        raise InternalInvariantError(
            f"theta survived a negative stabilization of {w}")
    return NegativeStabilizationReport(original, stabilized)


@dataclass(frozen=True)
class PropagationReport:
    g_cert: ThetaCertificate
    h_cert: ThetaCertificate
    hg_cert: ThetaCertificate

    @property
    def hypothesis(self) -> bool:
        return not self.g_cert.vanishes and not self.h_cert.vanishes

    def to_json(self) -> dict:
        return {"g": self.g_cert.to_json(), "h": self.h_cert.to_json(),
                "hg": self.hg_cert.to_json(),
                "hypothesis_nonzero_pair": self.hypothesis,
                "conclusion_nonzero_product": not self.hg_cert.vanishes}


def check_nonzero_propagation(g: BraidWord, h: BraidWord,
                              config: RunConfig | None = None) -> PropagationReport:
    """If theta(g) and theta(h) are nonzero then theta(hg) must be too."""
    if g.strands != h.strands:
        raise InputError("propagation check needs words on one strand count")
    report = PropagationReport(theta(g, config), theta(h, config),
                               theta(h * g, config))
    if report.hypothesis and report.hg_cert.vanishes:
        raise InternalInvariantError(
            f"nonzero propagation failed for g={g}, h={h}")
    return report


@dataclass(frozen=True)
class AlexanderConsistencyReport:
    cert: ThetaCertificate
    self_linking: int

    @property
    def consistent(self) -> bool:
        return self.cert.grading.alexander2 == (self.self_linking + 1,)

    def to_json(self) -> dict:
        return {"theta": self.cert.to_json(), "sl": self.self_linking,
                "expected_alexander": f"{self.self_linking + 1}/2",
                "consistent": self.consistent}


def theta_alexander_consistency(w: BraidWord,
                                config: RunConfig | None = None) -> AlexanderConsistencyReport:
    """On knots, the Alexander grading of z+ equals (sl+1)/2."""
    if component_partition(w).component_count != 1:
        raise InputError("Alexander consistency check needs a knot (one component)")
    report = AlexanderConsistencyReport(theta(w, config), self_linking(w))
    if not report.consistent:
        raise InternalInvariantError(
            f"Alexander grading of theta disagrees with (sl+1)/2 for {w}")
    return report
