import random

import pytest

from treelat.permcore import (
    PermGroup,
    Permutation,
    alternating_group,
    cyclic_group,
    perm_group,
    symmetric_group,
    trivial_group,
)

SUITE_SEED = 20260808


def named_groups() -> list[PermGroup]:
    """Fixed, deterministic members of the engine-oracle suite."""
    c = Permutation.from_cycles
    psl27 = perm_group(
        [c(8, [(0, 1, 2, 3, 4, 5, 6)]), c(8, [(0, 7), (1, 6), (2, 3), (4, 5)])],
        name="PSL(2,7) on the projective line")
    return [
        trivial_group(4),
        perm_group([c(2, [(0, 1)])], name="C2"),
        cyclic_group(4),
        cyclic_group(6),
        perm_group([c(4, [(0, 1)]), c(4, [(2, 3)])], name="C2xC2"),
        perm_group([c(4, [(0, 1), (2, 3)]), c(4, [(0, 2), (1, 3)])], name="V4 regular"),
        symmetric_group(3),
        symmetric_group(4),
        alternating_group(4),
        perm_group([c(4, [(0, 1, 2, 3)]), c(4, [(0, 2)])], name="D4"),
        symmetric_group(5),
        alternating_group(5),
        perm_group([c(6, [(0, 1, 2, 3, 4, 5)]), c(6, [(0, 5), (1, 4), (2, 3)])], name="D6"),
        perm_group([c(6, [(0, 1)]), c(6, [(2, 3, 4, 5)])], name="C2xC4"),
        perm_group([c(6, [(0, 1, 2)]), c(6, [(0, 1)]), c(6, [(3, 4, 5)]), c(6, [(3, 4)])],
                   name="S3xS3"),
        alternating_group(6),
        psl27,
        cyclic_group(8),
        perm_group([c(6, [(0, 1, 2)]), c(6, [(3, 4, 5)])], name="C3xC3"),
    ]


def random_groups(count: int = 11, seed: int = SUITE_SEED) -> list[PermGroup]:
    """Seeded random generator sets, degrees 5..7 so brute-force closure
    stays within 5040 elements."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        degree = rng.choice([5, 6, 7])
        n_gens = rng.choice([1, 2, 2, 3])
        gens = []
        for _ in range(n_gens):
            images = list(range(degree))
            rng.shuffle(images)
            gens.append(Permutation(tuple(images)))
        out.append(perm_group(gens, degree=degree, name=f"random#{i}"))
    return out


def engine_suite() -> list[PermGroup]:
    suite = named_groups() + random_groups()
    assert len(suite) == 30
    return suite


@pytest.fixture(scope="session")
def suite():
    return engine_suite()
