"""Built-in example boxes used throughout the docs and tests."""

import numpy as np

from .box import Box


def pr_box() -> Box:
    """The two-party binary nonlocal box: a1 xor a2 = x1 and x2, outputs uniform."""
    t = np.zeros((2, 2, 2, 2))
    for x1 in range(2):
        for x2 in range(2):
            for a1 in range(2):
                for a2 in range(2):
                    if (a1 + a2) % 2 == (x1 & x2):
                        t[x1, x2, a1, a2] = 0.5
    return Box(2, 2, 2, t.reshape(-1))


def q_box() -> Box:
    """Product box with a uniformly random first bit and second bit always 1."""
    t = np.zeros((2, 2, 2, 2))
    for x1 in range(2):
        for x2 in range(2):
            for a1 in range(2):
                t[x1, x2, a1, 1] = 0.5
    return Box(2, 2, 2, t.reshape(-1))


def signalling_example() -> Box:
    """Deterministic two-party box a1 = x2, a2 = x1; each party learns the
    other's input, so it violates no-signalling maximally."""
    t = np.zeros((2, 2, 2, 2))
    for x1 in range(2):
        for x2 in range(2):
            t[x1, x2, x2, x1] = 1.0
    return Box(2, 2, 2, t.reshape(-1))
