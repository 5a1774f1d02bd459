"""
Base Search Module for the Linear Code Distance Search

This module provides a base class for all distance search engines to inherit
from, together with the parameter, individual and report records they share,
so that evaluation counting, best tracking and stopping work the same way in
every engine.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from codes.linear_code import Codeword, DistanceBound, LinearCode
from search.operators import population_diversity, uniform_crossover, ax_crossover
from search.representation import DISCRETE, ORDER, REPRESENTATIONS, make_representation

# Fitness given to a zero discrete child; it is not an evaluation.
INVALID_FITNESS = math.inf

STOP_BUDGET = "budget"
STOP_TARGET = "target_reached"


class ConfigError(ValueError):
    pass


@dataclass
class SearchParams:
    """Parameters of one search run"""

    population_size: int = 400
    crossover_prob: Optional[float] = None
    mutation_prob: float = 0.01
    tau: float = 0.1
    max_evals: int = 500000
    max_reinit: int = 100000
    target_weight: Optional[int] = None
    seed: int = 0
    ax_m: int = 2
    chc_literal: bool = False
    track_diversity: bool = False

    def crossover_probability(self, representation: str) -> float:
        """Configured p_c, or 0.7 for discrete and 0.8 for order"""
        if self.crossover_prob is not None:
            return self.crossover_prob
        return 0.7 if representation == DISCRETE else 0.8

    def validate(self):
        """
        Check the parameter ranges

        Raises:
            ConfigError: When a parameter is out of range
        """
        if self.population_size < 2 or self.population_size % 2:
            raise ConfigError(f"population size must be even and at least 2, got {self.population_size}")
        for name in ("crossover_prob", "mutation_prob", "tau"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {value}")
        if self.max_evals < 1 or self.max_reinit < 1:
            raise ConfigError("evaluation budgets must be at least 1")
        if self.ax_m < 2:
            raise ConfigError(f"ax_m must be at least 2, got {self.ax_m}")
        if self.target_weight is not None and self.target_weight < 1:
            raise ConfigError(f"target weight must be at least 1, got {self.target_weight}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SearchProblem:
    code: LinearCode
    representation: str = ORDER


@dataclass(eq=False)
class Individual:
    genes: np.ndarray
    fitness: float
    witness: Optional[Codeword] = None


@dataclass
class SearchReport:
    """Outcome of one search run"""

    best: DistanceBound
    best_genes: List[int]
    evals_used: int
    generations: int
    stop_reason: str
    seed: int
    diversity_trace: List[Tuple[int, float]] = field(default_factory=list)
    restart_generations: List[int] = field(default_factory=list)
    hit_generation: int = 0

    def to_dict(self) -> dict:
        return {
            "best_weight": self.best.d,
            "exact": self.best.exact,
            "witness": list(self.best.witness.entries),
            "best_genes": self.best_genes,
            "evals_used": self.evals_used,
            "generations": self.generations,
            "stop_reason": self.stop_reason,
            "seed": self.seed,
            "hit_generation": self.hit_generation,
            "restart_generations": self.restart_generations,
            "diversity_trace": [[generation, value] for generation, value in self.diversity_trace],
        }


class BaseSearch(ABC):
    """Base class for all distance search engines"""

    name = "base"
    representations: Sequence[str] = REPRESENTATIONS

    def __init__(self, problem: SearchProblem, params: SearchParams):
        """
        Initialize the engine

        Args:
            problem (SearchProblem): Code and representation to search
            params (SearchParams): Run parameters, including the seed
        """
        params.validate()
        if problem.representation not in self.representations:
            raise ConfigError(f"{self.name} does not support the {problem.representation!r} representation")
        self.problem = problem
        self.params = params
        self.code = problem.code
        self.representation = make_representation(problem.representation, problem.code)
        self.logger = logging.getLogger(f"search.{self.name}")
        self.rng = np.random.default_rng(params.seed)

        self.evals = 0
        self.generation = 0
        self.best: Optional[Individual] = None
        self.hit_generation = 0
        self.diversity_trace: List[Tuple[int, float]] = []
        self.restart_generations: List[int] = []

    @abstractmethod
    def run(self) -> SearchReport:
        """
        Main search loop
        This method must be implemented by all subclasses
        Returns:
            SearchReport: Best bound found and run statistics
        """
        pass

    def evaluate(self, genes) -> Individual:
        """Evaluate a chromosome, charging one evaluation unless it is invalid"""
        if not self.representation.is_valid(genes):
            return Individual(genes, INVALID_FITNESS)
        weight, witness = self.representation.fitness(genes)
        self.evals += 1
        individual = Individual(np.asarray(genes), weight, witness)
        if self.best is None or individual.fitness < self.best.fitness:
            self.best = individual
            self.hit_generation = self.generation
            self.logger.debug(f"New best weight {weight} at evaluation {self.evals}")
        return individual

    def admit(self, genes) -> Individual:
        """Evaluate an offspring chromosome"""
        return self.evaluate(genes)

    def random_individual(self) -> Individual:
        return self.evaluate(self.representation.random_genes(self.rng))

    def random_population(self, size: int) -> List[Individual]:
        return [self.random_individual() for _ in range(size)]

    def recombine(self, parents: List[Individual]) -> List[Individual]:
        """Uniform crossover for messages, algebraic crossover for permutations"""
        if self.problem.representation == ORDER:
            return ax_crossover([parent.genes for parent in parents], self.evaluate)
        children = []
        for first, second in zip(parents[0::2], parents[1::2]):
            children.extend(self.admit(genes) for genes in uniform_crossover(first.genes, second.genes, self.rng))
        return children

    def target_reached(self) -> bool:
        target = self.params.target_weight
        return target is not None and self.best is not None and self.best.fitness <= target

    def should_stop(self) -> bool:
        return self.evals >= self.params.max_evals or self.target_reached()

    def record_diversity(self, population: List[Individual]):
        if self.params.track_diversity:
            value = population_diversity([individual.genes for individual in population])
            self.diversity_trace.append((self.generation, value))

    def restart(self, elite: Individual) -> List[Individual]:
        """Keep the elite and refill the population with random individuals"""
        self.restart_generations.append(self.generation)
        self.logger.info(f"Restart at generation {self.generation}, best weight {self.best.fitness}")
        return [elite] + self.random_population(self.params.population_size - 1)

    def build_report(self) -> SearchReport:
        stop_reason = STOP_TARGET if self.target_reached() else STOP_BUDGET
        best = DistanceBound(int(self.best.fitness), self.best.witness, exact=False)
        self.logger.info(
            f"{self.name} finished after {self.evals} evaluations and {self.generation} generations: "
            f"weight {best.d} ({stop_reason})"
        )
        return SearchReport(
            best=best,
            best_genes=[int(gene) for gene in self.best.genes],
            evals_used=self.evals,
            generations=self.generation,
            stop_reason=stop_reason,
            seed=self.params.seed,
            diversity_trace=list(self.diversity_trace),
            restart_generations=list(self.restart_generations),
            hit_generation=self.hit_generation,
        )
