"""
Representation Module for the Linear Code Distance Search

A representation turns a chromosome into a codeword bound. The discrete
representation uses nonzero messages m in F_q^k with fitness w(mG); the order
representation uses column permutations x of length n with fitness equal to
the minimum row weight of the RREF of G permuted by x.
"""

from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np

from codes.linear_code import Codeword, LinearCode, fitness_discrete, fitness_order
from search.operators import random_mutation_discrete, swap_mutation

DISCRETE = "discrete"
ORDER = "order"
REPRESENTATIONS = (DISCRETE, ORDER)


class Representation(ABC):
    """Chromosome handling for one encoding of the search space"""

    name = ""

    def __init__(self, code: LinearCode):
        self.code = code

    @property
    @abstractmethod
    def gene_length(self) -> int:
        pass

    @abstractmethod
    def random_genes(self, rng: np.random.Generator) -> np.ndarray:
        pass

    @abstractmethod
    def fitness(self, genes) -> Tuple[int, Codeword]:
        pass

    @abstractmethod
    def mutate(self, genes, rng: np.random.Generator, mutation_prob: float) -> np.ndarray:
        pass

    def is_valid(self, genes) -> bool:
        return True


class DiscreteRepresentation(Representation):
    name = DISCRETE

    @property
    def gene_length(self) -> int:
        return self.code.k

    def random_genes(self, rng: np.random.Generator) -> np.ndarray:
        # Uniform over F_q^k without the zero message.
        while True:
            genes = rng.integers(0, self.code.q, size=self.code.k)
            if genes.any():
                return genes

    def fitness(self, genes) -> Tuple[int, Codeword]:
        return fitness_discrete(self.code, genes)

    def mutate(self, genes, rng: np.random.Generator, mutation_prob: float) -> np.ndarray:
        return random_mutation_discrete(genes, mutation_prob, self.code.q, rng)

    def is_valid(self, genes) -> bool:
        return bool(np.any(genes))


class OrderRepresentation(Representation):
    name = ORDER

    @property
    def gene_length(self) -> int:
        return self.code.n

    def random_genes(self, rng: np.random.Generator) -> np.ndarray:
        return rng.permutation(self.code.n)

    def fitness(self, genes) -> Tuple[int, Codeword]:
        return fitness_order(self.code, genes)

    def mutate(self, genes, rng: np.random.Generator, mutation_prob: float) -> np.ndarray:
        return swap_mutation(genes, self.code.k, rng)


def make_representation(name: str, code: LinearCode) -> Representation:
    if name == DISCRETE:
        return DiscreteRepresentation(code)
    if name == ORDER:
        return OrderRepresentation(code)
    raise ValueError(f"unknown representation {name!r}, expected one of {REPRESENTATIONS}")
