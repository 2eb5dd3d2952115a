from credattack.attacks import GeneticAttack

from conftest import FunctionVictim, MappingProvider, instance


FLIP_PROVIDER = MappingProvider({"good": [("bad", 0.9)],
                                 "day": [("night", 0.9)]})


def flip_on_bad():
    return FunctionVictim(lambda t: 0.9 if "bad" in t.split() else 0.1)


def never_flip():
    # Fitness varies with the share of 'bad' tokens but stays under 0.5.
    return FunctionVictim(
        lambda t: 0.1 + 0.3 * t.split().count("bad") / max(len(t.split()), 1))


def test_population_default_is_forty():
    assert GeneticAttack(FLIP_PROVIDER).get_params()["population_size"] == 40


def test_single_swap_fixture_flips_within_two_generations():
    for seed in range(100):
        attack = GeneticAttack(FLIP_PROVIDER, seed=seed)
        outcome = attack.run(flip_on_bad(), instance("good day"))
        assert outcome.success
        assert all(e.iteration <= 2 for e in outcome.edit_trace)


def test_elitism_keeps_best_fitness_non_decreasing():
    provider = MappingProvider(
        {f"w{i}": [("bad", 0.9), ("meh", 0.5)] for i in range(6)})
    text = instance(" ".join(f"w{i}" for i in range(6)))
    for seed in range(100):
        attack = GeneticAttack(provider, population_size=8, generations=5,
                               seed=seed)
        attack.run(never_flip(), text)
        history = attack.history_
        assert len(history) == 6
        assert all(a <= b + 1e-12 for a, b in zip(history, history[1:]))


def test_same_seed_reproduces_identical_output():
    first = GeneticAttack(FLIP_PROVIDER, seed=1234).run(
        flip_on_bad(), instance("good day today"))
    second = GeneticAttack(FLIP_PROVIDER, seed=1234).run(
        flip_on_bad(), instance("good day today"))
    assert first.adversarial_text == second.adversarial_text
    assert first.queries_used == second.queries_used
    assert first.edit_trace == second.edit_trace


def test_different_seeds_may_differ_but_all_succeed():
    outcomes = {GeneticAttack(FLIP_PROVIDER, seed=s).run(
        flip_on_bad(), instance("good day")).adversarial_text for s in range(10)}
    assert outcomes  # all runs completed; texts may or may not coincide


def test_query_accounting_for_initial_generation():
    victim = never_flip()
    attack = GeneticAttack(MappingProvider({"good": [("bad", 0.9)]}),
                           population_size=40, generations=0)
    outcome = attack.run(victim, instance("good day"))
    assert not outcome.success
    assert outcome.queries_used == 1 + 40
    assert victim.query_count == 41


def test_no_candidates_anywhere_fails_cleanly():
    outcome = GeneticAttack(MappingProvider({})).run(flip_on_bad(),
                                                     instance("good day"))
    assert not outcome.success
    assert outcome.queries_used == 1
