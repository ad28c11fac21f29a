import numpy as np
import pytest

from facause.datasets import (
    DatasetFormatError,
    TransitionDataset,
    read_dataset,
    write_dataset,
)


def small_dataset(n=10, n_vars=3, dim=4, seed=0):
    rng = np.random.default_rng(seed)
    return TransitionDataset(
        variables=tuple(f"v{i}" for i in range(n_vars)),
        dim=dim,
        outcome_dim=dim,
        env="test",
        seed=seed,
        states=rng.uniform(-1, 1, (n, n_vars * dim)),
        outcomes=rng.uniform(-1, 1, (n, dim)),
        labels=rng.integers(0, 2, (n, n_vars)),
        splits=(np.arange(n) >= int(0.9 * n)).astype(np.uint8),
    )


def test_round_trip_bytes_identical(tmp_path):
    ds = small_dataset()
    p1, p2 = tmp_path / "a.facd", tmp_path / "b.facd"
    write_dataset(p1, ds)
    write_dataset(p2, read_dataset(p1))
    assert p1.read_bytes() == p2.read_bytes()


def test_round_trip_preserves_arrays(tmp_path):
    ds = small_dataset(n=33)
    path = tmp_path / "x.facd"
    write_dataset(path, ds)
    back = read_dataset(path)
    assert np.array_equal(back.states, ds.states)
    assert np.array_equal(back.outcomes, ds.outcomes)
    assert np.array_equal(back.labels, ds.labels)
    assert np.array_equal(back.splits, ds.splits)
    assert back.variables == ds.variables


def test_wrong_magic_rejected(tmp_path):
    path = tmp_path / "bad.facd"
    path.write_bytes(b"NOPE" + b"\x00" * 32)
    with pytest.raises(DatasetFormatError, match="offset 0"):
        read_dataset(path)


def test_truncated_body_reports_offset(tmp_path):
    ds = small_dataset()
    path = tmp_path / "trunc.facd"
    write_dataset(path, ds)
    raw = path.read_bytes()
    path.write_bytes(raw[:-7])
    with pytest.raises(DatasetFormatError, match="offset"):
        read_dataset(path)


def test_file_size_is_header_plus_records(tmp_path):
    ds = small_dataset(n=100, n_vars=7, dim=3)
    path = tmp_path / "sz.facd"
    write_dataset(path, ds)
    raw = path.read_bytes()
    meta_len = int(np.frombuffer(raw, "<u4", count=1, offset=8)[0])
    assert len(raw) == 12 + meta_len + 100 * ds.record_size()


def test_split_views():
    ds = small_dataset(n=20)
    assert len(ds.train_indices()) == 18
    assert len(ds.test_indices()) == 2
    sub = ds.subset(ds.test_indices())
    assert len(sub) == 2
    assert ds.states_by_variable().shape == (20, 3, 4)


def test_shape_validation():
    with pytest.raises(DatasetFormatError):
        TransitionDataset(
            variables=("a", "b"),
            dim=4,
            outcome_dim=4,
            env="t",
            seed=0,
            states=np.zeros((5, 4)),  # wrong width
            outcomes=np.zeros((5, 4)),
            labels=np.zeros((5, 2)),
            splits=np.zeros(5),
        )
