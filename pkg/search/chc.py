"""
CHC Module for the Linear Code Distance Search

Elitist survivor selection over parents and children, crossover gated by an
incest-prevention distance threshold, and a cataclysmic restart once the
threshold decays to zero. There is no mutation operator.
"""

from typing import Iterable, List, Optional

import numpy as np

from search.base_search import BaseSearch, ConfigError, Individual, SearchParams, SearchProblem, SearchReport
from search.operators import hamming_distance, max_pairwise_distance, population_diversity


class CHCSearch(BaseSearch):
    name = "chc"

    def __init__(self, problem: SearchProblem, params: SearchParams, initial_genes: Optional[Iterable] = None):
        """
        Initialize the engine

        Args:
            problem (SearchProblem): Code and representation to search
            params (SearchParams): Run parameters
            initial_genes (iterable, optional): Chromosomes of the initial
                population instead of random ones
        """
        super().__init__(problem, params)
        if params.ax_m != 2:
            raise ConfigError("CHC recombines pairs only, ax_m must be 2")
        if params.tau <= 0:
            raise ConfigError("CHC needs tau > 0 for the threshold to decay")
        self.initial_genes = None if initial_genes is None else [np.asarray(genes) for genes in initial_genes]
        if self.initial_genes is not None and len(self.initial_genes) != params.population_size:
            raise ConfigError(
                f"initial population has {len(self.initial_genes)} members, expected {params.population_size}"
            )
        self.threshold = 0.0
        self.decrement = 0.0

    def reset_threshold(self, population: List[Individual]):
        genes = [individual.genes for individual in population]
        self.threshold = population_diversity(genes)
        self.decrement = self.params.tau * max_pairwise_distance(genes)
        self.logger.debug(f"Threshold {self.threshold:.3f}, decrement {self.decrement:.3f}")

    def mates(self, first: Individual, second: Individual) -> bool:
        distance = hamming_distance(first.genes, second.genes)
        if self.params.chc_literal:
            return distance < self.threshold
        # Identical parents never mate, even once the threshold has fallen to zero.
        return distance > 0 and distance >= self.threshold

    def survivors(self, population: List[Individual], children: List[Individual]) -> List[Individual]:
        # Stable sort keeps incumbents ahead of children at equal fitness.
        ranked = sorted(population + children, key=lambda individual: individual.fitness)
        return ranked[:self.params.population_size]

    @staticmethod
    def same_population(first: List[Individual], second: List[Individual]) -> bool:
        return sorted(tuple(ind.genes.tolist()) for ind in first) == sorted(tuple(ind.genes.tolist()) for ind in second)

    def next_generation(self, population: List[Individual]) -> List[Individual]:
        shuffled = [population[i] for i in self.rng.permutation(len(population))]
        children: List[Individual] = []
        for first, second in zip(shuffled[0::2], shuffled[1::2]):
            if self.mates(first, second):
                children.extend(self.recombine([first, second]))
        return self.survivors(population, children)

    def run(self) -> SearchReport:
        self.logger.info(
            f"Starting {self.name}-{self.problem.representation} on {self.code} "
            f"with N={self.params.population_size}, seed {self.params.seed}"
        )
        if self.initial_genes is None:
            population = self.random_population(self.params.population_size)
        else:
            population = [self.evaluate(genes) for genes in self.initial_genes]
        self.reset_threshold(population)
        self.record_diversity(population)

        while not self.should_stop():
            self.generation += 1
            best_before = self.best.fitness
            survivors = self.next_generation(population)
            if self.best.fitness < best_before:
                self.logger.info(f"Generation {self.generation}: best weight {self.best.fitness}")
            if self.same_population(population, survivors):
                self.threshold -= self.decrement
                if self.threshold <= 0 and not self.should_stop():
                    survivors = self.restart(survivors[0])
                    self.reset_threshold(survivors)
            population = survivors
            self.record_diversity(population)

        return self.build_report()


def run_chc(problem: SearchProblem, params: SearchParams, initial_genes: Optional[Iterable] = None) -> SearchReport:
    return CHCSearch(problem, params, initial_genes).run()
