"""Hand-built Frobenius calculi used by the checker tests."""

import random

from khoveq.frobenius import MINUS, PLUS, FrobeniusCalculus, SignCombo, lee_calculus, universal_calculus
from khoveq.polyring import ONE, S, T, Poly


def broken_unit():
    """m(-,-) = (+) instead of (-)."""
    u = universal_calculus()
    return FrobeniusCalculus({**u.merge, (MINUS, MINUS): SignCombo.single(PLUS)}, u.split, "broken_unit")


def delta_minus_missing():
    """Δ(-) loses its (-,+) term."""
    u = universal_calculus()
    split = {PLUS: u.split[PLUS], MINUS: SignCombo({(PLUS, MINUS): ONE, (MINUS, MINUS): -S})}
    return FrobeniusCalculus(u.merge, split, "delta_minus_missing")


def reparametrized():
    """s -> 2s, t -> 3t + 1: still a valid universal-type calculus."""
    return universal_calculus().specialized(2 * S, 3 * T + 1, "reparam")


def perturbed(seed):
    """Universal calculus with one random extra term."""
    u = universal_calculus()
    rng = random.Random(seed)
    merge, split = dict(u.merge), dict(u.split)
    key = rng.choice(list(merge) + list(split))
    c = Poly.const(rng.choice([1, -1, 2]))
    if key in merge:
        merge[key] = merge[key] + SignCombo.single(rng.choice(SIGNS_), coeff=c)
    else:
        split[key] = split[key] + SignCombo.single(rng.choice(SIGNS_), rng.choice(SIGNS_), coeff=c)
    return FrobeniusCalculus(merge, split, f"perturbed{seed}")


SIGNS_ = (PLUS, MINUS)


def negated_delta():
    """Δ -> -Δ: passes δ² and gives invariant homology, but fails the sufficient conditions."""
    u = universal_calculus()
    return FrobeniusCalculus(u.merge, {k: -v for k, v in u.split.items()}, "neg_delta")


def doubled_delta():
    """Δ -> 2Δ: keeps the unit laws only."""
    u = universal_calculus()
    return FrobeniusCalculus(u.merge, {k: v.scale(Poly.const(2)) for k, v in u.split.items()}, "double_delta")


def tested_calculi():
    return [
        universal_calculus(),
        lee_calculus(),
        broken_unit(),
        delta_minus_missing(),
        reparametrized(),
        perturbed(0),
        perturbed(1),
        perturbed(2),
    ]
