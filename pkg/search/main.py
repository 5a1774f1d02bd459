"""
Main Experiment Module for the Linear Code Distance Search

This module orchestrates an experiment: it loads a generator matrix, runs the
configured engine once per seed, re-verifies every reported witness, and
combines the runs into a single JSON report with aggregate statistics.
"""

import json
import logging
import os
import tempfile
import time
from dataclasses import dataclass, field, replace
from datetime import datetime
from typing import Callable, Dict, List, Optional

import pandas as pd

from codes.linear_code import DistanceBound, LinearCode, brute_force_distance, enumeration_size
from codes.matrix_file import parse_matrix_file, verify_against
from search.base_search import ConfigError, SearchParams, SearchProblem, SearchReport
from search.chc import run_chc
from search.gga import run_gga
from search.random_search import run_random_search
from search.representation import ORDER, REPRESENTATIONS

logger = logging.getLogger("search.main")

ARTIFACT_VERSION = "1.0.0"

BRUTE = "brute"
ENGINES: Dict[str, Callable[[SearchProblem, SearchParams], SearchReport]] = {
    "gga": run_gga,
    "chc": run_chc,
    "random": run_random_search,
}
ALGORITHMS = tuple(ENGINES) + (BRUTE,)


class ReportIntegrityError(ValueError):
    pass


@dataclass
class RunConfig:
    """Everything one experiment needs"""

    matrix_path: str
    algorithm: str = "gga"
    representation: Optional[str] = None
    params: SearchParams = field(default_factory=SearchParams)
    runs: int = 1
    output_path: Optional[str] = None
    emit_diversity: bool = False
    summary_csv: Optional[str] = None

    def resolved_representation(self) -> Optional[str]:
        if self.algorithm == BRUTE:
            return None
        return self.representation or ORDER

    def validate(self):
        """
        Check the configuration

        Raises:
            ConfigError: On an unknown algorithm or representation, a
                representation given for brute force, or runs < 1
        """
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}, expected one of {ALGORITHMS}")
        if self.algorithm == BRUTE and self.representation is not None:
            raise ConfigError("brute force takes no representation")
        if self.algorithm != BRUTE and self.resolved_representation() not in REPRESENTATIONS:
            raise ConfigError(f"unknown representation {self.representation!r}, expected one of {REPRESENTATIONS}")
        if self.runs < 1:
            raise ConfigError(f"runs must be at least 1, got {self.runs}")
        if self.algorithm != BRUTE:
            self.params.validate()

    def to_dict(self) -> dict:
        return {
            "matrix_path": self.matrix_path,
            "algorithm": self.algorithm,
            "representation": self.resolved_representation(),
            "params": self.params.to_dict(),
            "runs": self.runs,
            "emit_diversity": self.emit_diversity,
        }


def default_output_path(config: RunConfig) -> str:
    """Timestamped report name under REPORT_DIR"""
    report_dir = os.environ.get("REPORT_DIR", "results")
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    label = config.algorithm if config.algorithm == BRUTE else f"{config.algorithm}_{config.resolved_representation()}"
    return os.path.join(report_dir, f"{label}_{timestamp}.json")


def search_backend(algorithm: str, representation: str = ORDER, params: Optional[SearchParams] = None):
    """
    Distance backend for the decoder built on a search engine

    Args:
        algorithm (str): gga, chc or random
        representation (str): discrete or order
        params (SearchParams, optional): Engine parameters

    Returns:
        callable: Maps a LinearCode to the DistanceBound the engine reports
    """
    if algorithm not in ENGINES:
        raise ConfigError(f"no search engine named {algorithm!r}")
    engine = ENGINES[algorithm]
    params = params or SearchParams()

    def backend(code: LinearCode) -> DistanceBound:
        return engine(SearchProblem(code, representation), params).best

    return backend


def verify_bound(code: LinearCode, bound: DistanceBound):
    """
    Re-check a reported witness before it is written out

    Raises:
        ReportIntegrityError: When the witness is not a codeword of the
            reported weight
    """
    check = verify_against(code.generator, bound.witness.as_array())
    if not check["member"] or check["weight"] != bound.d or bound.d < 1:
        raise ReportIntegrityError(
            f"witness of reported weight {bound.d} fails verification "
            f"(member={check['member']}, weight={check['weight']})"
        )


def run_once(config: RunConfig, code: LinearCode, index: int) -> dict:
    seed = config.params.seed + index
    started = time.perf_counter()
    if config.algorithm == BRUTE:
        bound = brute_force_distance(code)
        record = {
            "best_weight": bound.d,
            "exact": True,
            "witness": list(bound.witness.entries),
            "best_genes": None,
            "evals_used": enumeration_size(code),
            "generations": 0,
            "stop_reason": "exhausted",
            "seed": seed,
            "hit_generation": 0,
            "restart_generations": [],
            "diversity_trace": [],
        }
    else:
        params = replace(config.params, seed=seed, track_diversity=config.emit_diversity)
        problem = SearchProblem(code, config.resolved_representation())
        report = ENGINES[config.algorithm](problem, params)
        bound = report.best
        record = report.to_dict()
    verify_bound(code, bound)
    return {"run": index, **record, "wall_time": time.perf_counter() - started}


def aggregate_runs(runs: List[dict]) -> Optional[dict]:
    """
    Best, worst and mean weight over the runs, with the number of runs hitting the best

    Returns:
        dict: Aggregate statistics, or None when no run completed
    """
    if not runs:
        return None
    frame = pd.DataFrame(runs, columns=["best_weight", "wall_time", "evals_used"])
    best = int(frame["best_weight"].min())
    return {
        "best": best,
        "worst": int(frame["best_weight"].max()),
        "mean": float(frame["best_weight"].mean()),
        "hits_at_best": int((frame["best_weight"] == best).sum()),
        "mean_wall_time": float(frame["wall_time"].mean()),
        "mean_evals": float(frame["evals_used"].mean()),
    }


def write_report(report: dict, path: str) -> str:
    """Write the report as JSON through a temporary file in the same directory"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with tempfile.NamedTemporaryFile("w", dir=directory, suffix=".tmp", delete=False, encoding="utf-8") as f:
        json.dump(report, f, indent=2)
        temporary = f.name
    os.replace(temporary, path)
    logger.info(f"Saved report with {len(report['runs'])} runs to {path}")
    return path


def write_summary_csv(report: dict, path: str) -> str:
    row = {
        "algorithm": report["config"]["algorithm"],
        "representation": report["config"]["representation"],
        "q": report["code"]["q"],
        "n": report["code"]["n"],
        "k": report["code"]["k"],
        "runs": len(report["runs"]),
        **(report["aggregate"] or {}),
    }
    pd.DataFrame([row]).to_csv(path, index=False)
    logger.info(f"Saved summary row to {path}")
    return path


def run_experiment(config: RunConfig) -> dict:
    """
    Run every seed of an experiment and write the report

    Runs use seeds seed, seed + 1, ... in order. An interrupt stops the loop
    and the runs completed so far are written with "complete" set to false.

    Args:
        config (RunConfig): Experiment configuration

    Returns:
        dict: The report as written
    """
    config.validate()
    generator = parse_matrix_file(config.matrix_path)
    code = LinearCode(generator)
    logger.info(f"Starting {config.runs} run(s) of {config.algorithm} on {code}")

    runs: List[dict] = []
    complete = True
    try:
        for index in range(config.runs):
            record = run_once(config, code, index)
            runs.append(record)
            logger.info(
                f"Run {index} (seed {record['seed']}): weight {record['best_weight']} "
                f"after {record['evals_used']} evaluations"
            )
    except KeyboardInterrupt:
        complete = False
        logger.warning(f"Interrupted after {len(runs)} completed run(s), writing partial report")

    report = {
        "artifact_version": ARTIFACT_VERSION,
        "generated_at": datetime.now().isoformat(),
        "complete": complete,
        "config": config.to_dict(),
        "code": {"q": code.q, "n": code.n, "k": code.k, "modulus": code.field.modulus},
        "runs": runs,
        "aggregate": aggregate_runs(runs),
    }
    write_report(report, config.output_path or default_output_path(config))
    if config.summary_csv:
        write_summary_csv(report, config.summary_csv)
    return report
