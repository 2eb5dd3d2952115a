import numpy as np

from credattack.attacks import GswseAttack
from credattack.providers import EmbeddingTable

from conftest import FunctionVictim, instance


def paired_table():
    """good<->bad and day<->night are mutual nearest neighbors."""
    tokens = ["good", "bad", "day", "night", "the", "of"]
    matrix = np.array([
        [1.00, 0.00, 0.0],
        [0.99, 0.14, 0.0],
        [0.00, 1.00, 0.0],
        [0.14, 0.99, 0.0],
        [0.00, 0.00, 1.0],
        [0.10, 0.00, 0.99],
    ])
    return EmbeddingTable(tokens, matrix)


def stepped_victim():
    """bad adds 0.3, night adds 0.2; both together flip."""

    def fn(text):
        tokens = text.split()
        p = 0.1
        if "bad" in tokens:
            p += 0.3
        if "night" in tokens:
            p += 0.2
        if "bad" in tokens and "night" in tokens:
            p = 0.9
        return p

    return FunctionVictim(fn)


def test_stopword_only_text_is_never_edited():
    victim = FunctionVictim(lambda t: 0.9 if "bad" in t else 0.2)
    outcome = GswseAttack(paired_table()).run(victim, instance("the of the"))
    assert not outcome.success
    assert outcome.edit_trace == ()
    assert outcome.adversarial_text == outcome.original_text
    assert outcome.queries_used == 1  # nothing to try after the original


def test_two_swaps_applied_in_descending_gain_order():
    outcome = GswseAttack(paired_table()).run(stepped_victim(),
                                              instance("good day"))
    assert outcome.success
    assert [e.after for e in outcome.edit_trace] == ["bad", "night"]
    assert [e.before for e in outcome.edit_trace] == ["good", "day"]


def test_greedy_order_matches_exhaustive_check():
    """First applied swap must be the single swap with the best gap."""
    table = paired_table()
    victim = stepped_victim()
    # exhaustive single-swap evaluation on the original text
    gains = {}
    for position, token in enumerate(["good", "day"]):
        for cand in table.neighbors(token, 5):
            text = ["good", "day"]
            text[position] = cand.token
            gains[(position, cand.token)] = victim.fn(" ".join(text))
    best_move = max(sorted(gains), key=lambda k: gains[k])
    outcome = GswseAttack(table).run(victim, instance("good day"))
    assert (outcome.edit_trace[0].position,
            outcome.edit_trace[0].after) == best_move


def test_positions_are_never_edited_twice():
    outcome = GswseAttack(paired_table()).run(stepped_victim(),
                                              instance("good day good day"))
    positions = [e.position for e in outcome.edit_trace]
    assert len(positions) == len(set(positions))


def test_no_improving_move_means_failure():
    flat = FunctionVictim(lambda t: 0.2)
    outcome = GswseAttack(paired_table()).run(flat, instance("good day"))
    assert not outcome.success
    assert outcome.adversarial_text == outcome.original_text


def test_stopwords_untouched_even_with_vectors_available():
    # 'the' has a vector and a neighbor, but the position constraint wins.
    victim = FunctionVictim(lambda t: 0.9 if "of" in t.split() else 0.2)
    outcome = GswseAttack(paired_table()).run(victim, instance("the good day"))
    assert all(e.before != "the" for e in outcome.edit_trace)
