import pytest

from ordinal import ONE, OMEGA, from_int, parse_ordinal
from tree import RootedTree, parse_tree, permuted
from family import EmbedMode, EmbeddingWitness, ball
from embed import (
    DecisionStatus, EmbeddingError, TreeMinorSolver,
    rooted_minor, free_minor, mutually_embeddable, brute_force_minor,
    validate_witness, horizon_family_minor, FamilyMinorSearch,
)
from conftest import path_tree


class TestRootedMinor:
    def test_cherry_is_not_a_minor_of_a_path(self, cherry, path3):
        assert rooted_minor(cherry, path3).status is DecisionStatus.NOT_EMBEDDABLE

    def test_path_into_family_ball(self, path3):
        decision = rooted_minor(path3, ball(from_int(2), 4))
        assert decision.embeds
        assert validate_witness(path3, ball(from_int(2), 4), decision.witness)

    def test_tree_embeds_into_itself(self, cherry):
        decision = rooted_minor(cherry, cherry)
        assert decision.embeds
        assert validate_witness(cherry, cherry, decision.witness)

    def test_subdivision_is_allowed(self):
        guest = parse_tree('(()())')
        host = parse_tree('((())((())))')
        assert rooted_minor(guest, host).embeds

    def test_guest_root_may_land_below_host_root(self):
        assert rooted_minor(parse_tree('(()())'), parse_tree('((()()))')).embeds
        assert not rooted_minor(parse_tree('(()(()))'), parse_tree('((()()))')).embeds

    def test_agrees_with_brute_force_on_all_small_trees(self, trees_up_to_7):
        assert len(trees_up_to_7) == 85
        disagreements = []
        for host in trees_up_to_7:
            solver = TreeMinorSolver(host)
            for guest in trees_up_to_7:
                decision = solver.rooted(guest)
                if decision.embeds != brute_force_minor(guest, host):
                    disagreements.append((guest, host))
                if decision.embeds:
                    assert validate_witness(guest, host, decision.witness)
        assert disagreements == []

    def test_independent_of_child_order(self, trees_up_to_7):
        import random
        rng = random.Random(7)
        for guest in trees_up_to_7[::5]:
            for host in trees_up_to_7[::7]:
                shuffled_guest, _ = permuted(guest, rng)
                shuffled_host, _ = permuted(host, rng)
                assert rooted_minor(guest, host).embeds == rooted_minor(shuffled_guest, shuffled_host).embeds

    def test_transitive_on_sampled_triples(self, trees_up_to_7):
        import random
        rng = random.Random(11)
        n = len(trees_up_to_7)
        relation = [[False] * n for _ in range(n)]
        for j, host in enumerate(trees_up_to_7):
            solver = TreeMinorSolver(host)
            for i, guest in enumerate(trees_up_to_7):
                relation[i][j] = solver.rooted(guest).embeds

        checked = 0
        while checked < 500:
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if relation[a][b] and relation[b][c]:
                assert relation[a][c], (a, b, c)
                checked += 1

    def test_larger_family_balls(self):
        small, large = ball(from_int(3), 8), ball(from_int(4), 8)
        assert large.n == 255
        decision = rooted_minor(small, large)
        assert decision.embeds
        assert validate_witness(small, large, decision.witness)
        assert not rooted_minor(large, small).embeds


class TestFreeMinor:
    def test_free_mode_ignores_roots(self, cherry, path3):
        assert not rooted_minor(cherry, path3).embeds
        decision = free_minor(cherry, path3)
        assert decision.embeds
        assert validate_witness(cherry, path3, decision.witness)

    def test_agrees_with_brute_force_on_small_trees(self, trees_up_to_6):
        disagreements = []
        for host in trees_up_to_6:
            solver = TreeMinorSolver(host)
            for guest in trees_up_to_6:
                decision = solver.free(guest)
                if decision.embeds != brute_force_minor(guest, host, EmbedMode.FREE):
                    disagreements.append((guest, host))
                if decision.embeds:
                    assert decision.witness.mode is EmbedMode.FREE
                    assert validate_witness(guest, host, decision.witness)
        assert disagreements == []

    def test_degree_three_vertex_blocks_embedding_into_t2(self):
        guest = ball(from_int(3), 4)
        for radius in range(0, 21):
            assert not free_minor(guest, ball(from_int(2), radius)).embeds

    def test_small_t3_ball_free_embeds_into_t2(self):
        guest, host = ball(from_int(3), 2), ball(from_int(2), 8)
        decision = free_minor(guest, host)
        assert decision.embeds
        assert validate_witness(guest, host, decision.witness)


class TestTopologicalTypes:
    def test_subdivided_path_is_equivalent(self):
        assert mutually_embeddable(path_tree(2), path_tree(2))
        assert not mutually_embeddable(path_tree(2), path_tree(5))

    def test_free_equivalence_ignores_rooting(self):
        a = parse_tree('((())())')
        b = parse_tree('(((())()))')
        assert not mutually_embeddable(a, b)
        assert mutually_embeddable(path_tree(3), parse_tree('(()())'), EmbedMode.FREE)


class TestWitnessValidation:
    def test_rejects_non_injective_map(self, cherry):
        witness = EmbeddingWitness(EmbedMode.ROOTED, {0: 0, 1: 1, 2: 1})
        assert not validate_witness(cherry, cherry, witness)

    def test_rejects_broken_order(self, cherry, path3):
        witness = EmbeddingWitness(EmbedMode.ROOTED, {0: 0, 1: 1, 2: 2})
        assert not validate_witness(cherry, path3, witness)

    def test_rejects_partial_or_out_of_range_maps(self, cherry):
        with pytest.raises(EmbeddingError):
            validate_witness(cherry, cherry, EmbeddingWitness(EmbedMode.ROOTED, {0: 0, 1: 1}))
        with pytest.raises(EmbeddingError):
            validate_witness(cherry, cherry, EmbeddingWitness(EmbedMode.ROOTED, {0: 0, 1: 1, 2: 9}))

    def test_symbolic_host_addresses(self, cherry):
        good = EmbeddingWitness(EmbedMode.ROOTED, {0: (1,), 1: (2,), 2: (1, 1)})
        assert validate_witness(cherry, from_int(2), good)
        with pytest.raises(EmbeddingError):
            validate_witness(cherry, ONE, good)

    def test_meets_must_be_preserved(self):
        # images of the two leaves meet at 1, not at the image of the guest root
        guest = parse_tree('(()())')
        host = parse_tree('((()()))')
        witness = EmbeddingWitness(EmbedMode.ROOTED, {0: 0, 1: 2, 2: 3})
        assert not validate_witness(guest, host, witness)


class TestBruteForce:
    def test_size_guard(self):
        with pytest.raises(EmbeddingError):
            brute_force_minor(path_tree(9), path_tree(9))


class TestHorizonSearch:
    def test_finds_family_ball_in_larger_family_tree(self):
        guest = ball(from_int(3), 3)
        decision = horizon_family_minor(guest, parse_ordinal('w+1'), 6)
        assert decision.embeds
        assert validate_witness(guest, parse_ordinal('w+1'), decision.witness)

    def test_successor_ball_found_in_limit_family(self):
        guest = ball(parse_ordinal('w+1'), 3)
        decision = horizon_family_minor(guest, OMEGA, 32)
        assert decision.status is DecisionStatus.EMBEDS
        assert validate_witness(guest, OMEGA, decision.witness)

    def test_cherry_never_fits_the_ray(self, cherry):
        decision = horizon_family_minor(cherry, ONE, 16)
        assert decision.status is DecisionStatus.NOT_FOUND_UP_TO
        assert decision.horizon == 16
        assert decision.to_dict() == {'result': 'not_found_up_to', 'horizon': 16}

    def test_more_horizon_never_loses_an_embedding(self):
        guests = [ball(from_int(2), 3), ball(from_int(3), 2), path_tree(6), parse_tree('((()())(()()))')]
        for guest in guests:
            found = False
            for horizon in range(1, 8):
                embeds = horizon_family_minor(guest, OMEGA, horizon).embeds
                assert embeds or not found
                found = embeds
            assert found

    def test_path_needs_horizon_or_branches(self):
        assert not horizon_family_minor(path_tree(5), ONE, 3).embeds
        assert horizon_family_minor(path_tree(5), ONE, 5).embeds

    def test_invalid_arguments(self, cherry):
        with pytest.raises(EmbeddingError):
            FamilyMinorSearch(from_int(0), 4)
        with pytest.raises(EmbeddingError):
            FamilyMinorSearch(OMEGA, 0)
