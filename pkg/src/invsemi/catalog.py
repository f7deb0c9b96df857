"""Built-in structures used by the CLI, the test oracles, and the docs.

Semigroup indices always put the zero at 0; the remaining order fixes the
canonical element order everywhere downstream.
"""

import random

from .semigroup import PartialBijection, generate_from_partial_bijections, validate_table


def brandt_b2():
    """The 5-element combinatorial Brandt semigroup: 2x2 matrix units and 0."""
    # 0, e11, e12, e21, e22 with eij * ekl = eil when j = k, else 0
    names = ["0", "e11", "e12", "e21", "e22"]
    pairs = {1: (1, 1), 2: (1, 2), 3: (2, 1), 4: (2, 2)}
    n = 5
    mul = [[0] * n for _ in range(n)]
    for s, (i, j) in pairs.items():
        for t, (k, l) in pairs.items():
            if j == k:
                mul[s][t] = {v: key for key, v in pairs.items()}[(i, l)]
    star = [0, 1, 3, 2, 4]
    return validate_table(mul, star, names)


def group_with_adjoined_meet_zero():
    """C2 = {1, a} with an idempotent z glued below every nonzero element.

    gz = z = zg and z^2 = z, so z is the meet of everything nonzero; the
    result is quasi-fundamental but not fundamental.
    """
    names = ["0", "1", "a", "z"]
    n = 4
    mul = [[0] * n for _ in range(n)]
    mul[1][1] = 1
    mul[1][2] = mul[2][1] = 2
    mul[2][2] = 1
    for g in (1, 2, 3):
        mul[g][3] = mul[3][g] = 3
    star = [0, 1, 2, 3]
    return validate_table(mul, star, names)


def boolean_semilattice():
    """{0, x, y, 1} with xy = 0: the four-element Boolean algebra."""
    names = ["0", "x", "y", "1"]
    n = 4
    mul = [[0] * n for _ in range(n)]
    mul[1][1] = 1
    mul[2][2] = 2
    mul[3][3] = 3
    mul[1][3] = mul[3][1] = 1
    mul[2][3] = mul[3][2] = 2
    star = [0, 1, 2, 3]
    return validate_table(mul, star, names)


def two_element_semilattice():
    names = ["0", "1"]
    mul = [[0, 0], [0, 1]]
    return validate_table(mul, [0, 1], names)


def chain_semilattice(height):
    """0 < c1 < c2 < ... of the given height above zero."""
    n = height + 1
    names = ["0"] + [f"c{i}" for i in range(1, n)]
    mul = [[min(i, j) for j in range(n)] for i in range(n)]
    return validate_table(mul, list(range(n)), names)


def rook_monoid_2():
    """The symmetric inverse monoid on 2 points (7 elements incl. zero)."""
    swap = PartialBijection({0: 1, 1: 0})
    e1 = PartialBijection({0: 0})
    S = generate_from_partial_bijections([swap, e1], ["s", "e"])
    assert S.size == 7
    return S


def random_partial_bijection_semigroup(seed, ground=3, n_gens=2, cap=200):
    """A small deterministic pseudo-random closure of partial injections."""
    rng = random.Random(seed)
    while True:
        gens = []
        for _ in range(n_gens):
            points = list(range(ground))
            dom = rng.sample(points, rng.randint(1, ground))
            img = rng.sample(points, len(dom))
            gens.append(PartialBijection(dict(zip(dom, img))))
        try:
            S = generate_from_partial_bijections(gens, cap=cap)
        except Exception:
            continue
        if S.size >= 3:
            return S


BUILTIN_SEMIGROUPS = {
    "b2": brandt_b2,
    "q_c2z": group_with_adjoined_meet_zero,
    "bool2": boolean_semilattice,
    "two": two_element_semilattice,
    "chain3": lambda: chain_semilattice(3),
    "rook2": rook_monoid_2,
}


def builtin_semigroups():
    """Name -> table for every built-in, in a fixed order."""
    return {name: make() for name, make in BUILTIN_SEMIGROUPS.items()}


GRIGORCHUK_SPEC = {
    "kind": "automaton",
    "alphabet": ["0", "1"],
    "output": {
        "a": {"0": "1", "1": "0"},
        "b": {"0": "0", "1": "1"},
        "c": {"0": "0", "1": "1"},
        "d": {"0": "0", "1": "1"},
        "e": {"0": "0", "1": "1"},
    },
    "transition": {
        "a": {"0": "e", "1": "e"},
        "b": {"0": "a", "1": "c"},
        "c": {"0": "a", "1": "d"},
        "d": {"0": "e", "1": "b"},
        "e": {"0": "e", "1": "e"},
    },
    "identity_state": "e",
    "self_inverse": True,
}

GRIGORCHUK_BRANCH_SPEC = {
    "kind": "branch-shape",
    "base": GRIGORCHUK_SPEC,
    "psi_g1": [[], ["b"]],
    "psi_g2": [["b"], []],
}


def grigorchuk_action():
    from .selfsimilar import AutomatonAction

    spec = GRIGORCHUK_SPEC
    return AutomatonAction(
        spec["alphabet"],
        spec["output"],
        spec["transition"],
        spec["identity_state"],
        spec["self_inverse"],
    )


def builtin_actions():
    from .selfsimilar import XZAction, build_countable_inflation, build_prime_construction

    return {
        "prime2": build_prime_construction([2]),
        "prime23": build_prime_construction([2, 3]),
        "xz": XZAction(),
        "grig-inflation": build_countable_inflation(grigorchuk_action()),
    }
