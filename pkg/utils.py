import numpy as np

# Subflujos con nombre; el índice forma parte de la semilla
STREAMS = ("vendors", "markups", "arrivals", "bundles", "durations", "waits", "weights")


def make_rng(seed, stream, episode_index=0):
    """
    Independent generator for one named substream of a scenario seed, so that
    changing what consumes one stream never perturbs the others.
    """
    return np.random.default_rng(np.random.SeedSequence([seed, STREAMS.index(stream), episode_index]))


def episode_streams(seed, episode_index):
    return {name: make_rng(seed, name, episode_index) for name in STREAMS}


def sample_uniform(rng, dist, size=None):
    return rng.uniform(dist.low, dist.high, size)


def sample_units(rng, dist, size=None):
    # Cantidades enteras: la contabilidad de capacidad es exacta
    low, high = int(np.ceil(dist.low)), int(np.floor(dist.high))
    return rng.integers(low, high, size, endpoint=True).astype(float)


def sample_weights(rng, kind="simplex"):
    if kind == "equal":
        return (1.0, 1.0, 1.0)
    return tuple(float(w) for w in rng.dirichlet(np.ones(3)))


def parse_int_list(text, name="value"):
    """Parse `4,6,8,12` or a range `1..20` into a list of ints."""
    values = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            start, end = part.split("..", 1)
            start, end = int(start), int(end)
            if end < start:
                raise ValueError(f"{name}: empty range {part}")
            values.extend(range(start, end + 1))
        else:
            values.append(int(part))
    if not values:
        raise ValueError(f"{name}: no values given")
    return values
