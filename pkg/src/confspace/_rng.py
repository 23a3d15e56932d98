import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF


def derive_seed(*keys):
    """Deterministic 63-bit seed from a parent seed and any number of integer keys."""
    ss = np.random.SeedSequence([int(k) & _MASK for k in keys])
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def make_rng(seed):
    # PCG64 seeded through SeedSequence: stable across platforms and numpy versions
    return np.random.default_rng(np.random.SeedSequence(int(seed) & _MASK))
