"""
Random Search Module for the Linear Code Distance Search

Independent uniform permutations evaluated with the order fitness, keeping the
running minimum. Serves as the baseline the genetic engines are compared with.
"""

from search.base_search import BaseSearch, SearchParams, SearchProblem, SearchReport
from search.representation import ORDER


class RandomSearch(BaseSearch):
    name = "random"
    representations = (ORDER,)

    def run(self) -> SearchReport:
        self.logger.info(f"Starting random search on {self.code}, seed {self.params.seed}")
        while not self.should_stop():
            self.generation += 1
            self.random_individual()
        return self.build_report()


def run_random_search(problem: SearchProblem, params: SearchParams) -> SearchReport:
    return RandomSearch(problem, params).run()
