"""Central finite-difference oracle for the network gradients.

Finite differences are meaningless across the kinks of rectified-linear
units and the L1 loss, so every perturbed pair of evaluations also reports
its activation/sign pattern and coordinates whose pattern differs between
the two sides are skipped rather than compared.
"""

import numpy as np

from facause.nn import forward_masked, l1_loss


def relative_error(a, b):
    return abs(a - b) / max(abs(a) + abs(b), 1e-8)


def l1_objective(params, states, b, targets):
    """Mean per-record L1 error plus the kink signature of the evaluation."""
    out, cache = forward_masked(params, states, b)
    err, _ = l1_loss(out, targets)
    signature = [np.signbit(out - targets).tobytes()]
    for layer in (cache.conv1_cache, cache.conv2_cache, cache.head_cache):
        for act in layer[1:-1]:
            signature.append((act > 0).tobytes())
    return err.mean(), b"".join(signature)


def fd_check_coordinates(objective, array, analytic, rng, n_coords=20, h=1e-5):
    """Max relative error of analytic vs central differences on sampled
    coordinates, skipping perturbations that cross a kink.  Returns
    (worst_error, n_compared)."""
    flat = array.reshape(-1)
    gflat = np.asarray(analytic).reshape(-1)
    idx = rng.choice(flat.size, size=min(n_coords, flat.size), replace=False)
    worst = 0.0
    compared = 0
    for i in idx:
        old = flat[i]
        flat[i] = old + h
        up, sig_up = objective()
        flat[i] = old - h
        down, sig_down = objective()
        flat[i] = old
        if sig_up != sig_down:
            continue  # the perturbation crossed a relu or L1 kink
        compared += 1
        worst = max(worst, relative_error(gflat[i], (up - down) / (2 * h)))
    return worst, compared
