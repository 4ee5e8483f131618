"""Shared helpers: random box generators backed by polytope-vertex pools."""

import numpy as np

from nsbox import Box, mix, product, random_ns_vertex, symmetrize

_POOLS = {}


def vertex_pool(parties, inputs, outputs, size, seed=20240901):
    """Cached pool of no-signalling polytope vertices for one shape."""
    key = (parties, inputs, outputs, size, seed)
    if key not in _POOLS:
        rng = np.random.default_rng(seed)
        _POOLS[key] = [random_ns_vertex(parties, inputs, outputs, rng) for _ in range(size)]
    return _POOLS[key]


def random_valid_box(parties, inputs, outputs, rng) -> Box:
    """Random box with normalized nonnegative blocks (not necessarily NS)."""
    blocks = rng.dirichlet(np.ones(outputs**parties), size=inputs**parties)
    return Box(parties, inputs, outputs, blocks.reshape(-1))


def random_single_party_box(inputs, outputs, rng) -> Box:
    return random_valid_box(1, inputs, outputs, rng)


def random_ns_mixture(parties, inputs, outputs, rng, pool_size=8, n_components=3) -> Box:
    """Dirichlet mixture drawn from a cached vertex pool (fast NS sampler)."""
    pool = vertex_pool(parties, inputs, outputs, pool_size)
    idx = rng.choice(len(pool), size=n_components, replace=True)
    weights = rng.dirichlet(np.ones(n_components))
    return mix(list(zip(weights, [pool[i] for i in idx])))


def random_symmetric_ns_box(n, inputs, outputs, rng, nonlocal_parts=True) -> Box:
    """Symmetrized mixture of sampled NS boxes on n parties.

    Uses genuine n-party vertices when the polytope LP is small enough,
    otherwise products of smaller sampled vertices; always mixes in a
    product of random single-party boxes for spread.
    """
    components = []
    if nonlocal_parts and (inputs * outputs) ** n <= 300:
        components.append(random_ns_mixture(n, inputs, outputs, rng))
    elif nonlocal_parts and n % 2 == 0 and (inputs * outputs) ** 2 <= 300:
        pool = vertex_pool(2, inputs, outputs, 8)
        factors = [pool[i] for i in rng.choice(len(pool), size=n // 2)]
        components.append(product(factors))
    components.append(product([random_single_party_box(inputs, outputs, rng) for _ in range(n)]))
    weights = rng.dirichlet(np.ones(len(components)))
    return symmetrize(mix(list(zip(weights, components))))
