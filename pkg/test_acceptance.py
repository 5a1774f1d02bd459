#!/usr/bin/env python3
"""
Long-running checks at desk scale: exactness of the permutation fitness over
all orderings, soundness of every reported bound, search effectiveness, the
diversity contrast between representations, the random search hit rate and
the cost of one evaluation.

Deselect with: pytest -m "not slow"
"""

import itertools
import math
import statistics
import time

import numpy as np
import pytest

from algebra.finite_field import GaloisField
from codes.linear_code import brute_force_distance, fitness_discrete, fitness_order, hamming_weight, random_code
from search.base_search import SearchParams, SearchProblem
from search.chc import run_chc
from search.gga import run_gga
from search.operators import hit_probability_lower_bound
from search.random_search import run_random_search

pytestmark = pytest.mark.slow

FIELDS = [GaloisField(2, 1), GaloisField(2, 2), GaloisField(2, 3)]


def _random_code(field, k, n, seed):
    return random_code(field, k, n, np.random.default_rng(seed))


def test_best_permutation_reaches_the_distance(make_code):
    for seed in range(50):
        field = FIELDS[seed % 3]
        n = 4 + seed % 5
        k = min(1 + seed % 4, n - 1)
        code = make_code(field, k, n, seed)
        best = min(fitness_order(code, x)[0] for x in itertools.permutations(range(n)))
        assert best == brute_force_distance(code).d, f"seed {seed}: [{n}, {k}]_{field.q}"


def test_every_reported_weight_is_a_sound_upper_bound(make_code):
    engines = [run_gga, run_chc]
    rng = np.random.default_rng(99)
    for seed in range(500):
        field = FIELDS[seed % 3]
        k = 1 + seed % 7
        n = k + 1 + (seed // 7) % (14 - k)
        code = make_code(field, k, n, seed)
        d = brute_force_distance(code).d

        for _ in range(3):
            weight, witness = fitness_order(code, rng.permutation(n))
            assert weight >= d and witness.weight == weight and code.contains(witness.as_array())
            message = rng.integers(0, field.q, size=k)
            if message.any():
                weight, witness = fitness_discrete(code, message)
                assert weight >= d and code.contains(witness.as_array())

        params = SearchParams(population_size=10, max_evals=200, max_reinit=50, seed=seed)
        report = engines[seed % 2](SearchProblem(code, ("order", "discrete")[(seed // 2) % 2]), params)
        random_report = run_random_search(SearchProblem(code, "order"), params)
        for bound in (report.best, random_report.best):
            assert bound.d >= d
            assert bound.witness.weight == bound.d
            assert code.contains(bound.witness.as_array())


@pytest.mark.parametrize("engine", [run_gga, run_chc])
def test_order_search_finds_exact_distance(engine):
    field = GaloisField(2, 3)
    hits = 0
    for seed in range(100):
        # k stays at 7 or below so the exhaustive distance remains affordable.
        k = 3 + seed % 5
        n = max(k + 3, 10 + seed % 11)
        code = _random_code(field, k, n, seed)
        d = brute_force_distance(code).d
        params = SearchParams(population_size=50, max_evals=20000, target_weight=d, seed=seed)
        hits += engine(SearchProblem(code, "order"), params).best.d == d
    assert hits >= 95


def test_discrete_population_collapses_while_order_stays_diverse():
    code = _random_code(GaloisField(2, 3), 10, 20, 7)
    budget = 50000
    common = dict(population_size=100, max_evals=budget, max_reinit=budget + 1, seed=7, track_diversity=True)

    discrete = run_gga(SearchProblem(code, "discrete"), SearchParams(**common))
    assert not discrete.restart_generations
    values = [value for _, value in discrete.diversity_trace]
    assert min(values) < 0.1 * values[0]

    order = run_gga(SearchProblem(code, "order"), SearchParams(**common))
    values = [value for _, value in order.diversity_trace]
    assert min(values) >= 0.5 * values[0]


def unique_minimum_word_code(field, k, n):
    """First seeded code with d >= 2 whose minimum-weight word is unique up to a scalar"""
    for seed in range(1000):
        code = _random_code(field, k, n, seed)
        d = brute_force_distance(code).d
        weights = [hamming_weight(code.encode(m)) for m in itertools.product(range(field.q), repeat=k) if any(m)]
        if d >= 2 and weights.count(d) == field.q - 1:
            return code, d
    raise AssertionError("no code with a unique minimum-weight word")


def test_random_search_hit_rate():
    code, d = unique_minimum_word_code(GaloisField(2, 1), 3, 6)
    n = code.n
    assert d >= 2
    exact = statistics.mean(fitness_order(code, x)[0] == d for x in itertools.permutations(range(n)))
    assert exact >= hit_probability_lower_bound(n, d)

    draws = 100000
    rng = np.random.default_rng(2024)
    hits = sum(fitness_order(code, rng.permutation(n))[0] == d for _ in range(draws))
    sigma = math.sqrt(exact * (1 - exact) / draws)
    assert abs(hits / draws - exact) <= 3 * sigma + 1e-12


def test_order_evaluation_cost():
    code = _random_code(GaloisField(2, 3), 95, 130, 1)
    rng = np.random.default_rng(1)
    permutations = [rng.permutation(130) for _ in range(60)]
    fitness_order(code, permutations[0])

    timings = []
    for x in permutations[1:]:
        started = time.perf_counter()
        fitness_order(code, x)
        timings.append(time.perf_counter() - started)
    assert statistics.median(timings) <= 0.002


if __name__ == "__main__":
    pytest.main([__file__])
