# Copyright (c) 2026 The meanking developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""Random measurement scans and local search over measurement bases.

A scan draws ``trials`` Haar-random bases and evaluates each with the
optimal decision table. Trial ``t`` always uses the basis seeded by
``derive_seed(master_seed, t)``, so the records do not depend on the number
of workers or the order in which trials finish.
"""
import csv
import functools
import logging
import math
import multiprocessing
import typing
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .bounds import CERTIFICATE_TOLERANCE, theorem_bound
from .game import (
    DensityOperator,
    aravind_bound,
    optimal_decision,
    success_probability,
)
from .linalg import (
    Basis,
    ConfigurationError,
    DimensionError,
    derive_seed,
    haar_random_basis,
)
from .mub import MubFamily
from .serialization import report_to_json, write_json

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 1000
DEFAULT_SEED = 0
CSV_HEADER = ("trial", "seed", "probability", "exceeds")
# A pure state counts as a MUB vector when its fidelity with one is this close
# to 1.
MUB_STATE_TOLERANCE = 1e-10


class ScanConfig(typing.NamedTuple):
    d: int
    state: DensityOperator
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    out: Optional[Path] = None
    workers: int = 1


class ScanRecord(typing.NamedTuple):
    trial: int
    seed: int
    probability: float
    exceeds: bool


class ScanSummary(typing.NamedTuple):
    trials: int
    maximum: float
    mean: float
    exceed_count: int
    best_trial: int
    bound: float
    theorem_violations: int
    distribution: str = "haar"
    seed_scheme: str = "numpy.SeedSequence"
    master_seed: int = DEFAULT_SEED


class HillClimbConfig(typing.NamedTuple):
    max_iterations: int = 5000
    # Largest rotation angle in radians; shrinks by ``decay`` on rejection.
    initial_angle: float = 0.5
    decay: float = 0.999
    stall_limit: int = 1000
    seed: int = DEFAULT_SEED


class HillClimbResult(typing.NamedTuple):
    basis: Basis
    probability: float
    # Probabilities of the starting basis and of every accepted move.
    accepted: Tuple[float, ...]


def _optimal_probability(rho: DensityOperator, chi: Basis, mubs: MubFamily
                         ) -> float:
    decision = optimal_decision(rho, chi, mubs)
    return success_probability(rho, chi, decision, mubs).total


def is_mub_state(rho: DensityOperator, mubs: MubFamily,
                 tol: float = MUB_STATE_TOLERANCE) -> bool:
    """Whether ``rho`` is the projector onto one of the family's vectors."""
    if rho.witness is None:
        return False
    fidelities = np.abs(mubs.vectors.conj() @ rho.witness.amplitudes) ** 2
    return bool(np.any(fidelities >= 1.0 - tol))


def _run_trial(trial: int, *, rho: DensityOperator, mubs: MubFamily,
               master_seed: int, bound: float) -> ScanRecord:
    seed = derive_seed(master_seed, trial)
    chi = haar_random_basis(mubs.dim, seed)
    probability = _optimal_probability(rho, chi, mubs)
    return ScanRecord(trial, seed, probability, probability > bound)


def summarize(records: Sequence[ScanRecord], bound: float, *,
              theorem_violations: int = 0,
              master_seed: int = DEFAULT_SEED) -> ScanSummary:
    probabilities = np.array([record.probability for record in records])
    best = int(np.argmax(probabilities))
    return ScanSummary(
        trials=len(records),
        maximum=float(probabilities[best]),
        mean=float(probabilities.mean()),
        exceed_count=sum(record.exceeds for record in records),
        best_trial=records[best].trial,
        bound=bound,
        theorem_violations=theorem_violations,
        master_seed=master_seed,
    )


def scan(cfg: ScanConfig, mubs: MubFamily
         ) -> Tuple[List[ScanRecord], ScanSummary]:
    """Evaluate ``cfg.trials`` Haar-random measurement bases.

    When the input state is a vector of ``mubs`` every probability is also
    checked against ``theorem_bound``; violations are counted and logged.
    With ``cfg.out`` set the records and the summary are written with
    :func:`write_scan_csv` and :func:`write_scan_summary`.
    """
    if cfg.trials < 1:
        raise ConfigurationError(f"Trial count must be at least 1, got {cfg.trials}.")
    if cfg.workers < 1:
        raise ConfigurationError(f"Worker count must be at least 1, got {cfg.workers}.")
    if not cfg.d == cfg.state.dim == mubs.dim:
        raise DimensionError(
            f"Dimension mismatch: scan is for d={cfg.d}, the state is "
            f"{cfg.state.dim}, the MUB family is {mubs.dim}.")
    bound = aravind_bound(cfg.d)
    run_trial = functools.partial(_run_trial, rho=cfg.state, mubs=mubs,
                                  master_seed=cfg.seed, bound=bound)
    logger.info(f"Scanning {cfg.trials} Haar-random bases for d={cfg.d} "
                f"with master seed {cfg.seed} on {cfg.workers} worker(s).")
    if cfg.workers == 1:
        records = [run_trial(trial) for trial in range(cfg.trials)]
    else:
        chunksize = max(1, cfg.trials // (4 * cfg.workers))
        with multiprocessing.Pool(cfg.workers) as pool:
            # imap yields in trial order whatever order the workers finish in.
            records = list(pool.imap(run_trial, range(cfg.trials), chunksize))

    violations = 0
    if is_mub_state(cfg.state, mubs):
        ceiling = theorem_bound(cfg.d) + CERTIFICATE_TOLERANCE
        for record in records:
            if record.probability > ceiling:
                violations += 1
                logger.warning(
                    f"Trial {record.trial} (seed {record.seed}) has "
                    f"probability {record.probability!r} above the MUB-input "
                    f"bound {ceiling!r}.")
    summary = summarize(records, bound, theorem_violations=violations,
                        master_seed=cfg.seed)
    logger.info(f"Scan done: maximum {summary.maximum:.6f}, mean "
                f"{summary.mean:.6f}, {summary.exceed_count} of "
                f"{summary.trials} above {bound:.6f}.")
    if cfg.out is not None:
        write_scan_csv(records, cfg.out)
        write_scan_summary(summary, summary_path(cfg.out))
    return records, summary


def summary_path(csv_path: Union[str, Path]) -> Path:
    """``scan.csv`` -> ``scan.summary.json``."""
    path = Path(csv_path)
    return path.with_name(f"{path.stem}.summary.json")


def dump_scan_csv(records: Iterable[ScanRecord], csv_file: typing.TextIO):
    writer = csv.writer(csv_file, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow([record.trial, record.seed,
                         f"{record.probability:.17g}",
                         "true" if record.exceeds else "false"])


def write_scan_csv(records: Iterable[ScanRecord], path: Union[str, Path]):
    with open(path, "wt", encoding="utf-8", newline="") as csv_file:
        dump_scan_csv(records, csv_file)


def read_scan_csv(path: Union[str, Path]) -> List[ScanRecord]:
    with open(path, "rt", encoding="utf-8", newline="") as csv_file:
        reader = csv.DictReader(csv_file)
        return [ScanRecord(int(row["trial"]), int(row["seed"]),
                           float(row["probability"]), row["exceeds"] == "true")
                for row in reader]


def write_scan_summary(summary: ScanSummary, path: Union[str, Path]):
    write_json(report_to_json(summary), path)


def _givens_step(vectors: np.ndarray, rng: np.random.Generator, angle: float
                 ) -> np.ndarray:
    """Mix two random basis vectors by a unitary rotation of up to ``angle``."""
    d = vectors.shape[0]
    p, q = rng.choice(d, size=2, replace=False)
    theta = rng.uniform(-angle, angle)
    phase = np.exp(1j * rng.uniform(0.0, 2 * math.pi))
    c, s = math.cos(theta), math.sin(theta)
    rotated = vectors.copy()
    rotated[p] = c * vectors[p] + s * phase * vectors[q]
    rotated[q] = -s * np.conj(phase) * vectors[p] + c * vectors[q]
    return rotated


def hill_climb(rho: DensityOperator, chi0: Basis, mubs: MubFamily,
               cfg: HillClimbConfig = HillClimbConfig()) -> HillClimbResult:
    """Greedy search for a measurement basis with a higher success probability.

    Each step rotates two vectors of the current basis into each other and is
    accepted only if ``P(rho, chi, s_max)`` strictly increases. A rejection
    shrinks the angle by ``cfg.decay``; ``cfg.stall_limit`` rejections in a
    row end the search early.
    """
    if cfg.max_iterations < 1 or cfg.stall_limit < 1:
        raise ConfigurationError("max_iterations and stall_limit must be positive.")
    if cfg.initial_angle <= 0 or not 0 < cfg.decay <= 1:
        raise ConfigurationError(
            f"Need initial_angle > 0 and 0 < decay <= 1, got "
            f"{cfg.initial_angle} and {cfg.decay}.")
    if not rho.dim == chi0.dim == mubs.dim:
        raise DimensionError(
            f"Dimension mismatch: rho is {rho.dim}, chi is {chi0.dim}, the "
            f"MUB family is {mubs.dim}.")
    rng = np.random.default_rng(cfg.seed)
    best = chi0
    best_probability = _optimal_probability(rho, chi0, mubs)
    accepted = [best_probability]
    angle = cfg.initial_angle
    stalled = 0
    for iteration in range(cfg.max_iterations):
        candidate = Basis(_givens_step(best.vectors, rng, angle))
        probability = _optimal_probability(rho, candidate, mubs)
        if probability > best_probability:
            best, best_probability = candidate, probability
            accepted.append(probability)
            stalled = 0
            logger.debug(f"Iteration {iteration}: accepted {probability!r} "
                         f"at angle {angle:.3g}.")
        else:
            angle *= cfg.decay
            stalled += 1
            if stalled >= cfg.stall_limit:
                logger.info(f"Stopping after {iteration + 1} iterations: "
                            f"{stalled} rejections in a row.")
                break
    logger.info(f"Hill climb reached {best_probability!r} from "
                f"{accepted[0]!r} with {len(accepted) - 1} accepted moves.")
    return HillClimbResult(best, best_probability, tuple(accepted))


def improve_best(records: Sequence[ScanRecord], rho: DensityOperator,
                 mubs: MubFamily, cfg: HillClimbConfig = HillClimbConfig()
                 ) -> HillClimbResult:
    """Hill-climb from the basis of the best scan trial."""
    if not records:
        raise ConfigurationError("No scan records to improve on.")
    best = max(records, key=lambda record: record.probability)
    chi = haar_random_basis(mubs.dim, best.seed)
    return hill_climb(rho, chi, mubs, cfg)
