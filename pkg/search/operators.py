"""
Genetic Operators Module for the Linear Code Distance Search

Selection, recombination, mutation and diversity measures shared by the
search engines. Every operator draws randomness only from the numpy Generator
it is given.
"""

import itertools
from functools import reduce
from math import comb
from typing import Callable, List, Sequence, Tuple

import numpy as np

from algebra.matrix import compose, swap_positions
from codes.linear_code import DegenerateDimensionsError


class TooSmallError(ValueError):
    pass


def binary_tournament(fitnesses: Sequence[float], rng: np.random.Generator) -> int:
    """
    Binary tournament selection

    Draws two indices uniformly with replacement and keeps the fitter one.
    Ties go to the first index drawn.

    Args:
        fitnesses (sequence): Fitness per individual, lower is better
        rng (np.random.Generator): Source of randomness

    Returns:
        int: Index of the selected individual
    """
    first, second = (int(i) for i in rng.integers(0, len(fitnesses), size=2))
    return second if fitnesses[second] < fitnesses[first] else first


def uniform_crossover(a, b, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Per position, children keep or swap the parent genes with probability 1/2"""
    a = np.asarray(a)
    b = np.asarray(b)
    keep = rng.random(a.size) < 0.5
    return np.where(keep, a, b), np.where(keep, b, a)


def random_mutation_discrete(genes, p_m: float, q: int, rng: np.random.Generator) -> np.ndarray:
    """
    Random mutation by gene

    Each gene is replaced with probability p_m by a uniform element of F_q
    other than its current value.
    """
    genes = np.asarray(genes, dtype=np.int64)
    hit = rng.random(genes.size) < p_m
    shift = rng.integers(1, q, size=genes.size) if q > 1 else np.zeros(genes.size, dtype=np.int64)
    return np.where(hit, (genes + shift) % q, genes)


def ax_crossover(parents: Sequence, evaluate: Callable) -> List:
    """
    Algebraic crossover AX_m

    Composes the m parents in each of the m! orders (lexicographic order of the
    parent indices), evaluates every composition and keeps the m best. Ties
    keep enumeration order.

    Args:
        parents (sequence): m permutations of equal length
        evaluate (callable): Maps a permutation to an object with a fitness
            attribute; called once per composition

    Returns:
        list: The m best evaluated compositions
    """
    if len(parents) < 2:
        raise TooSmallError("algebraic crossover needs at least two parents")
    candidates = []
    for order in itertools.permutations(range(len(parents))):
        genes = reduce(compose, (parents[i] for i in order))
        candidates.append(evaluate(genes))
    return sorted(candidates, key=lambda candidate: candidate.fitness)[:len(parents)]


def swap_mutation(x, k: int, rng: np.random.Generator) -> np.ndarray:
    """
    2-swap mutation straddling the pivot region

    Swaps one position in [0, k) with one in [k, n), i.e. exchanges a column of
    the first k columns of the permuted generator with one of the rest.

    Raises:
        DegenerateDimensionsError: When k equals n
    """
    n = len(x)
    if not 0 < k < n:
        raise DegenerateDimensionsError(f"swap mutation needs 0 < k < n, got k={k}, n={n}")
    i = int(rng.integers(0, k))
    j = int(rng.integers(k, n))
    return swap_positions(x, i, j)


def hamming_distance(a, b) -> int:
    return int(np.count_nonzero(np.asarray(a) != np.asarray(b)))


def population_diversity(genes: Sequence) -> float:
    """
    Mean pairwise positional Hamming distance

    Counted column by column from value multiplicities, so the cost is linear
    in the population size.

    Raises:
        TooSmallError: With fewer than two individuals
    """
    matrix = np.asarray([np.asarray(g) for g in genes])
    if matrix.ndim != 2 or matrix.shape[0] < 2:
        raise TooSmallError("diversity needs at least two individuals")
    size, length = matrix.shape
    pairs = size * (size - 1) // 2
    equal_pairs = 0
    for column in matrix.T:
        _, counts = np.unique(column, return_counts=True)
        equal_pairs += int((counts * (counts - 1) // 2).sum())
    return (length * pairs - equal_pairs) / pairs


def max_pairwise_distance(genes: Sequence) -> int:
    matrix = np.asarray([np.asarray(g) for g in genes])
    best = 0
    for i in range(len(matrix) - 1):
        distances = np.count_nonzero(matrix[i + 1:] != matrix[i], axis=1)
        best = max(best, int(distances.max()))
    return best


def hit_probability_lower_bound(n: int, d: int) -> float:
    """
    Chance that a uniform permutation reaches a given minimum-weight word

    It is reached whenever the whole support lands in the last d positions, so
    1 / C(n, d) bounds the per-draw hit rate of random search from below.
    """
    return 1.0 / comb(n, d)
