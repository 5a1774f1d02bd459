"""
Generational Genetic Algorithm Module for the Linear Code Distance Search

Binary tournament selection, crossover with probability p_c or mutation of
every selected parent otherwise, elitism when no child matches the previous
best, and a restart after max_reinit evaluations without a strict improvement.
"""

from typing import List

from search.base_search import BaseSearch, ConfigError, Individual, SearchParams, SearchProblem, SearchReport
from search.operators import binary_tournament
from search.representation import ORDER


class GGASearch(BaseSearch):
    name = "gga"

    def __init__(self, problem: SearchProblem, params: SearchParams):
        super().__init__(problem, params)
        if problem.representation == ORDER:
            self.group_size = params.ax_m
            if self.code.k == self.code.n:
                raise ConfigError("the order representation needs k < n")
        else:
            self.group_size = 2
        if params.population_size % self.group_size:
            raise ConfigError(
                f"population size {params.population_size} is not a multiple of the group size {self.group_size}"
            )
        self.crossover_prob = params.crossover_probability(problem.representation)

    def admit(self, genes) -> Individual:
        # A zero message is replaced by a random valid one.
        if not self.representation.is_valid(genes):
            genes = self.representation.random_genes(self.rng)
        return self.evaluate(genes)

    def next_generation(self, population: List[Individual]) -> List[Individual]:
        size = self.params.population_size
        fitnesses = [individual.fitness for individual in population]
        parents = [population[binary_tournament(fitnesses, self.rng)] for _ in range(size)]
        children: List[Individual] = []
        for start in range(0, size, self.group_size):
            group = parents[start:start + self.group_size]
            if self.should_stop():
                # Budget spent: the rest of the parents pass through unevaluated.
                children.extend(group)
                continue
            if self.rng.random() < self.crossover_prob:
                children.extend(self.recombine(group))
            else:
                children.extend(
                    self.admit(self.representation.mutate(parent.genes, self.rng, self.params.mutation_prob))
                    for parent in group
                )

        return self.apply_elitism(population, children)

    @staticmethod
    def apply_elitism(population: List[Individual], children: List[Individual]) -> List[Individual]:
        """Put the best parent in place of the worst child unless some child is as good"""
        previous_best = min(population, key=lambda individual: individual.fitness)
        if all(child.fitness > previous_best.fitness for child in children):
            children = list(children)
            worst = max(range(len(children)), key=lambda i: children[i].fitness)
            children[worst] = previous_best
        return children

    def run(self) -> SearchReport:
        """
        Run the generational loop until the budget or the target weight is reached

        Returns:
            SearchReport: Best bound found and run statistics
        """
        self.logger.info(
            f"Starting {self.name}-{self.problem.representation} on {self.code} "
            f"with N={self.params.population_size}, seed {self.params.seed}"
        )
        population = self.random_population(self.params.population_size)
        self.record_diversity(population)
        best_fitness = self.best.fitness
        last_improvement = self.evals

        while not self.should_stop():
            self.generation += 1
            population = self.next_generation(population)
            if self.best.fitness < best_fitness:
                best_fitness = self.best.fitness
                last_improvement = self.evals
                self.logger.info(f"Generation {self.generation}: best weight {best_fitness}")
            elif self.evals - last_improvement >= self.params.max_reinit and not self.should_stop():
                elite = min(population, key=lambda individual: individual.fitness)
                population = self.restart(elite)
                last_improvement = self.evals
            self.record_diversity(population)

        return self.build_report()


def run_gga(problem: SearchProblem, params: SearchParams) -> SearchReport:
    return GGASearch(problem, params).run()
