"""Population-based search over word substitutions.

Fitness of a candidate text is the victim's probability of the class
opposite the original prediction. Each generation keeps the best
individual unchanged (elitism), draws parents fitness-proportionally,
crosses them token-wise, and mutates one random position per child.
The population default is 40.
"""

from __future__ import annotations

from ..providers import SubstituteProvider
from ..tokenizer import detokenize
from ..types import Edit, EditKind, TokenizedText
from ..victims import predicted_label
from .base import (DEFAULT_QUERY_BUDGET, Attack, SearchResult, flips,
                   prob_opposite)

DEFAULT_POPULATION = 40
DEFAULT_GENERATIONS = 20
DEFAULT_NEIGHBORS = 8


class GeneticAttack(Attack):
    """Evolutionary substitution search; bit-reproducible under a fixed seed."""

    method_name = "genetic"

    def __init__(self, provider: SubstituteProvider,
                 population_size: int = DEFAULT_POPULATION,
                 generations: int = DEFAULT_GENERATIONS,
                 substitute_k: int = DEFAULT_NEIGHBORS,
                 query_budget: int = DEFAULT_QUERY_BUDGET, seed: int = 0):
        self.provider = provider
        self.population_size = population_size
        self.generations = generations
        self.substitute_k = substitute_k
        self.query_budget = query_budget
        self.seed = seed

    def _wrap(self, individual: list[str], template: TokenizedText) -> TokenizedText:
        return TokenizedText(tuple(individual), template.part_boundary,
                             template.source)

    def _edits(self, individual: list[str], template: TokenizedText,
               generation: int) -> list[Edit]:
        return [Edit(EditKind.REPLACE, i, before, after, generation)
                for i, (before, after) in enumerate(zip(template.tokens, individual))
                if before != after]

    def _search(self, victim, tokens, original, rng):
        pred = predicted_label(original)
        pools = [self.provider.candidates(tokens.tokens, i, self.substitute_k)
                 for i in range(len(tokens))]
        editable = [i for i, pool in enumerate(pools) if pool]
        if not editable:
            return SearchResult(tokens, [], False)

        def mutate(individual: list[str]) -> list[str]:
            position = rng.choice(editable)
            child = list(individual)
            child[position] = rng.choice(pools[position]).token
            return child

        population = [mutate(list(tokens.tokens))
                      for _ in range(self.population_size)]
        history: list[float] = []
        result = SearchResult(tokens, [], False)
        for generation in range(self.generations + 1):
            scored = victim.classify(
                [detokenize(self._wrap(ind, tokens)) for ind in population])
            fitness = [prob_opposite(s, pred) for s in scored]
            best = max(range(len(fitness)), key=fitness.__getitem__)
            history.append(fitness[best])
            if flips(scored[best], pred):
                winner = population[best]
                result = SearchResult(self._wrap(winner, tokens),
                                      self._edits(winner, tokens, generation),
                                      True, scored[best])
                break
            if generation == self.generations:
                break
            weights = fitness if max(fitness) > 0 else None
            children = [list(population[best])]
            while len(children) < self.population_size:
                parent_a = rng.choices(population, weights=weights)[0]
                parent_b = rng.choices(population, weights=weights)[0]
                child = [a if rng.random() < 0.5 else b
                         for a, b in zip(parent_a, parent_b)]
                children.append(mutate(child))
            population = children
        self.history_ = history
        return result
