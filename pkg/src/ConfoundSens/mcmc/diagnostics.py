import numpy as np


def split_rhat(values: np.ndarray, chain: np.ndarray) -> float:
    """Split chain potential scale reduction factor.

    Every chain is cut in two halves which are treated as separate chains.
    Chains of unequal length are truncated to the shortest one.
    """
    values = np.asarray(values, dtype=float)
    chain = np.asarray(chain)

    groups = [values[chain == c] for c in np.unique(chain)]
    length = min(len(g) for g in groups) // 2
    if length < 2:
        return float('nan')

    halves = []
    for g in groups:
        halves.append(g[:length])
        halves.append(g[length:2 * length])
    halves = np.array(halves)

    within = halves.var(axis=1, ddof=1).mean()
    between = length * halves.mean(axis=1).var(ddof=1)
    if within <= 0:
        return 1.0 if between <= 0 else float('inf')

    var_plus = (length - 1) / length * within + between / length
    return float(np.sqrt(var_plus / within))
