import numpy as np
import pytest
from gradcheck import fd_check_coordinates, l1_objective, relative_error

from facause.nn import (
    Adam,
    BinaryModelParams,
    CheckpointError,
    ForwardModelParams,
    NnError,
    binary_backward,
    binary_forward,
    forward_masked,
    forward_masked_backward,
    l1_loss,
    load_checkpoint,
    mix,
    save_checkpoint,
)


def small_forward(seed=0, dtype=np.float64):
    return ForwardModelParams.init(3, 2, 2, hidden=8, embed=12, seed=seed, dtype=dtype)


def small_binary(seed=0, dtype=np.float64):
    return BinaryModelParams.init(3, 2, hidden=8, embed=12, seed=seed, dtype=dtype)


# -- masking ------------------------------------------------------------------


def test_all_zero_mask_output_independent_of_inputs():
    p = small_forward()
    rng = np.random.default_rng(1)
    b = np.zeros((4, 3))
    out1, _ = forward_masked(p, rng.uniform(-1, 1, (4, 3, 2)), b)
    out2, _ = forward_masked(p, rng.uniform(-9, 9, (4, 3, 2)), b)
    assert np.array_equal(out1, out2)


def test_masked_variable_perturbation_is_exactly_invisible():
    p = small_forward()
    rng = np.random.default_rng(2)
    states = rng.uniform(-1, 1, (64, 3, 2))
    b = rng.integers(0, 2, (64, 3)).astype(np.float64)
    out1, _ = forward_masked(p, states, b)
    perturbed = states.copy()
    zeros = b == 0
    perturbed[zeros] = rng.uniform(-50, 50, (int(zeros.sum()), 2))
    out2, _ = forward_masked(p, perturbed, b)
    assert np.array_equal(out1, out2)


def test_input_gradient_of_masked_variable_is_zero():
    p = small_forward()
    rng = np.random.default_rng(3)
    states = rng.uniform(-1, 1, (8, 3, 2))
    b = np.ones((8, 3))
    b[:, 1] = 0.0
    y = rng.uniform(-1, 1, (8, 2))
    out, cache = forward_masked(p, states, b)
    _, dpred = l1_loss(out, y)
    grads = forward_masked_backward(p, cache, dpred, need_input_grads=True)
    assert np.all(grads.d_states[:, 1, :] == 0.0)
    assert np.any(grads.d_states[:, 0, :] != 0.0)


def test_shape_mismatch_raises():
    p = small_forward()
    with pytest.raises(NnError):
        forward_masked(p, np.zeros((2, 4, 2)), np.ones((2, 4)))
    with pytest.raises(NnError):
        forward_masked(p, np.zeros((2, 3, 2)), np.ones((3, 3)))


# -- gradients ----------------------------------------------------------------


@pytest.mark.parametrize("seed", range(4))
def test_forward_gradients_match_finite_differences(seed):
    rng = np.random.default_rng(seed)
    p = small_forward(seed)
    states = rng.uniform(-1, 1, (4, 3, 2))
    b = rng.uniform(0.1, 1.0, (4, 3))
    y = rng.uniform(-1, 1, (4, 2))
    out, cache = forward_masked(p, states, b)
    _, dpred = l1_loss(out, y)
    grads = forward_masked_backward(p, cache, dpred / 4, need_input_grads=True)

    def objective():
        return l1_objective(p, states, b, y)

    worst = 0.0
    for arr, g in zip(p.arrays(), grads.arrays()):
        w, _ = fd_check_coordinates(objective, arr, g, rng)
        worst = max(worst, w)
    w, _ = fd_check_coordinates(objective, states, grads.d_states, rng, n_coords=24)
    worst = max(worst, w)
    w, _ = fd_check_coordinates(objective, b, grads.d_b, rng, n_coords=12)
    worst = max(worst, w)
    assert worst < 1e-4


@pytest.mark.parametrize("seed", range(4))
def test_binary_gradients_match_finite_differences(seed):
    rng = np.random.default_rng(seed + 100)
    p = small_binary(seed)
    states = rng.uniform(-1, 1, (4, 3, 2))
    readout = rng.uniform(-1, 1, (4, 3))

    def objective():
        b_hat, cache = binary_forward(p, states)
        sig = [b""]
        for layer in (cache.conv1_cache, cache.conv2_cache):
            for act in layer[1:-1]:
                sig.append((act > 0).tobytes())
        return (b_hat * readout).sum(), b"".join(sig)

    b_hat, cache = binary_forward(p, states)
    grads = binary_backward(p, cache, readout)
    worst = 0.0
    for arr, g in zip(p.arrays(), grads.arrays()):
        w, _ = fd_check_coordinates(objective, arr, g, rng)
        worst = max(worst, w)
    assert worst < 1e-4


def test_zero_loss_zero_parameter_gradients():
    p = small_forward()
    rng = np.random.default_rng(4)
    states = rng.uniform(-1, 1, (4, 3, 2))
    b = np.ones((4, 3))
    out, cache = forward_masked(p, states, b)
    _, dpred = l1_loss(out, out.copy())  # exact fit: sign(0) = 0
    grads = forward_masked_backward(p, cache, dpred)
    assert all(np.all(np.asarray(g) == 0) for g in grads.arrays())


# -- binary network -----------------------------------------------------------


def test_binary_outputs_in_unit_interval():
    p = small_binary()
    rng = np.random.default_rng(5)
    b_hat, _ = binary_forward(p, rng.uniform(-9, 9, (16, 3, 2)))
    assert np.all(b_hat >= 0) and np.all(b_hat <= 1)


def test_binary_deterministic():
    p = small_binary()
    s = np.random.default_rng(6).uniform(-1, 1, (4, 3, 2))
    a, _ = binary_forward(p, s)
    b, _ = binary_forward(p, s)
    assert np.array_equal(a, b)


def test_weight_sharing_symmetry():
    # identical variable values produce identical per-variable outputs
    p = small_binary()
    s = np.zeros((1, 3, 2))
    s[0, :, :] = [0.3, -0.4]
    b_hat, _ = binary_forward(p, s)
    assert b_hat[0, 0] == pytest.approx(b_hat[0, 1])
    assert b_hat[0, 1] == pytest.approx(b_hat[0, 2])


def test_conv_permutation_equivariance():
    p = small_forward()
    rng = np.random.default_rng(7)
    states = rng.uniform(-1, 1, (4, 3, 2))
    b = rng.uniform(0, 1, (4, 3))
    perm = [2, 0, 1]
    out1, _ = forward_masked(p, states, b)
    out2, _ = forward_masked(p, states[:, perm], b[:, perm])
    assert np.allclose(out1, out2, atol=1e-12)


# -- mixing -------------------------------------------------------------------


def test_mix_extremes():
    rng = np.random.default_rng(8)
    ones = np.ones((1000, 3))
    assert np.array_equal(mix(ones, rng), ones)
    zeros = np.zeros((1000, 3))
    assert np.array_equal(mix(zeros, rng), zeros)


def test_mix_entries_are_zero_or_b_hat():
    rng = np.random.default_rng(9)
    b_hat = rng.uniform(0, 1, (100, 4))
    mixed = mix(b_hat, rng)
    assert np.all((mixed == 0) | (mixed == b_hat))


def test_mix_second_moment():
    rng = np.random.default_rng(10)
    b_hat = np.full((100_000, 1), 0.6)
    mixed = mix(b_hat, rng)
    mean = mixed.mean()
    # E[b] = b_hat^2; 3 sigma of the Bernoulli-scaled mean
    sigma = 0.6 * np.sqrt(0.6 * 0.4 / 100_000)
    assert abs(mean - 0.36) < 3 * sigma


# -- optimizer ----------------------------------------------------------------


def test_adam_zero_gradient_is_noop():
    arr = np.array([1.0, 2.0])
    opt = Adam(lr=0.1)
    opt.step([arr], [np.zeros(2)])
    assert np.array_equal(arr, [1.0, 2.0])


def test_adam_minimizes_quadratic():
    x = np.array([5.0])
    opt = Adam(lr=0.01)
    for _ in range(2000):
        opt.step([x], [2 * x])
    assert abs(x[0]) < 1e-3


def test_adam_deterministic():
    def run():
        x = np.array([1.0, -2.0])
        opt = Adam(lr=0.05)
        for t in range(50):
            opt.step([x], [np.sin(x) + t / 50])
        return x.copy()

    assert np.array_equal(run(), run())


# -- checkpoints --------------------------------------------------------------


def test_checkpoint_round_trip(tmp_path):
    phi = ForwardModelParams.init(3, 2, 2, hidden=8, embed=12, seed=1, dtype=np.float32)
    theta = BinaryModelParams.init(3, 2, hidden=8, embed=12, seed=2, dtype=np.float32)
    path = tmp_path / "model.facw"
    save_checkpoint(path, {"phi": phi, "theta": theta}, meta={"note": 1})
    phi2 = ForwardModelParams.init(3, 2, 2, hidden=8, embed=12, seed=9, dtype=np.float32)
    theta2 = BinaryModelParams.init(3, 2, hidden=8, embed=12, seed=9, dtype=np.float32)
    meta = load_checkpoint(path, {"phi": phi2, "theta": theta2})
    assert meta == {"note": 1}
    for a, b in zip(phi.arrays(), phi2.arrays()):
        assert np.array_equal(a, b)
    for a, b in zip(theta.arrays(), theta2.arrays()):
        assert np.array_equal(a, b)


def test_checkpoint_write_is_deterministic(tmp_path):
    phi = ForwardModelParams.init(2, 4, 4, hidden=8, embed=12, seed=1, dtype=np.float32)
    a, b = tmp_path / "a.facw", tmp_path / "b.facw"
    save_checkpoint(a, {"phi": phi})
    save_checkpoint(b, {"phi": phi})
    assert a.read_bytes() == b.read_bytes()


def test_checkpoint_bad_magic(tmp_path):
    path = tmp_path / "bad.facw"
    path.write_bytes(b"WHAT" + b"\x00" * 16)
    phi = ForwardModelParams.init(2, 4, 4, hidden=8, embed=12, seed=1)
    with pytest.raises(CheckpointError, match="magic"):
        load_checkpoint(path, {"phi": phi})


def test_checkpoint_shape_mismatch(tmp_path):
    phi = ForwardModelParams.init(2, 4, 4, hidden=8, embed=12, seed=1, dtype=np.float32)
    path = tmp_path / "m.facw"
    save_checkpoint(path, {"phi": phi})
    other = ForwardModelParams.init(2, 4, 4, hidden=16, embed=12, seed=1, dtype=np.float32)
    with pytest.raises(CheckpointError, match="shape"):
        load_checkpoint(path, {"phi": other})
