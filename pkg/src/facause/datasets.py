"""Binary on-disk format for transition datasets.

Layout: magic ``FACD``, little-endian u32 version, u32 metadata length, a
canonical JSON metadata blob, then fixed-size records.  Each record is the
state vector and outcome vector as little-endian float32, one byte per
ground-truth label bit, and one split-flag byte (0 train, 1 test).  The
record count in the metadata must match the body size exactly, and writing
is canonical so that read/write round-trips are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import BinaryIO

import numpy as np

MAGIC = b"FACD"
VERSION = 1


class DatasetFormatError(Exception):
    """Corrupt or mismatched dataset file; the message names a byte offset."""


@dataclass
class TransitionDataset:
    """In-memory transition records with per-variable layout metadata.

    ``states`` is (n, n_vars * dim) with each variable's components
    contiguous; ``labels`` carries one ground-truth cause bit per variable.
    """

    variables: tuple[str, ...]
    dim: int
    outcome_dim: int
    env: str
    seed: int
    states: np.ndarray
    outcomes: np.ndarray
    labels: np.ndarray
    splits: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.states)
        self.states = np.ascontiguousarray(self.states, dtype=np.float32)
        self.outcomes = np.ascontiguousarray(self.outcomes, dtype=np.float32)
        self.labels = np.ascontiguousarray(self.labels, dtype=np.uint8)
        self.splits = np.ascontiguousarray(self.splits, dtype=np.uint8)
        expected_state = len(self.variables) * self.dim
        if self.states.shape != (n, expected_state):
            raise DatasetFormatError(
                f"states shape {self.states.shape} != ({n}, {expected_state})"
            )
        if self.outcomes.shape != (n, self.outcome_dim):
            raise DatasetFormatError("outcomes shape mismatch")
        if self.labels.shape != (n, len(self.variables)):
            raise DatasetFormatError("labels shape mismatch")
        if self.splits.shape != (n,):
            raise DatasetFormatError("splits shape mismatch")

    # -- views ---------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.states)

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    def states_by_variable(self) -> np.ndarray:
        """(n, n_vars, dim) view of the state matrix."""
        return self.states.reshape(len(self), self.n_vars, self.dim)

    def train_indices(self) -> np.ndarray:
        return np.nonzero(self.splits == 0)[0]

    def test_indices(self) -> np.ndarray:
        return np.nonzero(self.splits == 1)[0]

    def subset(self, indices: np.ndarray) -> "TransitionDataset":
        return TransitionDataset(
            self.variables,
            self.dim,
            self.outcome_dim,
            self.env,
            self.seed,
            self.states[indices],
            self.outcomes[indices],
            self.labels[indices],
            self.splits[indices],
        )

    def record_size(self) -> int:
        return 4 * (self.states.shape[1] + self.outcome_dim) + self.n_vars + 1

    def metadata(self) -> dict:
        return {
            "variables": list(self.variables),
            "dim": self.dim,
            "outcome_dim": self.outcome_dim,
            "env": self.env,
            "seed": self.seed,
            "n_records": len(self),
            "n_train": int((self.splits == 0).sum()),
            "n_test": int((self.splits == 1).sum()),
        }


def write_dataset(path: str, ds: TransitionDataset) -> None:
    with open(path, "wb") as fh:
        _write(fh, ds)


def _record_dtype(state_dim: int, outcome_dim: int, n_vars: int) -> np.dtype:
    return np.dtype(
        [
            ("state", "<f4", (state_dim,)),
            ("outcome", "<f4", (outcome_dim,)),
            ("label", "u1", (n_vars,)),
            ("split", "u1"),
        ]
    )


def _write(fh: BinaryIO, ds: TransitionDataset) -> None:
    meta = json.dumps(ds.metadata(), sort_keys=True, separators=(",", ":")).encode()
    fh.write(MAGIC)
    fh.write(np.uint32(VERSION).tobytes())
    fh.write(np.uint32(len(meta)).tobytes())
    fh.write(meta)
    records = np.empty(len(ds), dtype=_record_dtype(ds.states.shape[1], ds.outcome_dim, ds.n_vars))
    records["state"] = ds.states
    records["outcome"] = ds.outcomes
    records["label"] = ds.labels
    records["split"] = ds.splits
    fh.write(records.tobytes())


def read_dataset(path: str) -> TransitionDataset:
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw[:4] != MAGIC:
        raise DatasetFormatError(f"bad magic at offset 0: {raw[:4]!r}")
    version = int(np.frombuffer(raw, "<u4", count=1, offset=4)[0])
    if version != VERSION:
        raise DatasetFormatError(f"unsupported version {version} at offset 4")
    meta_len = int(np.frombuffer(raw, "<u4", count=1, offset=8)[0])
    body_off = 12 + meta_len
    if len(raw) < body_off:
        raise DatasetFormatError(f"truncated metadata at offset {len(raw)}")
    try:
        meta = json.loads(raw[12:body_off].decode())
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"bad metadata JSON at offset 12: {exc}") from exc
    n = meta["n_records"]
    n_vars = len(meta["variables"])
    state_dim = n_vars * meta["dim"]
    dtype = _record_dtype(state_dim, meta["outcome_dim"], n_vars)
    if len(raw) - body_off != n * dtype.itemsize:
        raise DatasetFormatError(
            f"body has {len(raw) - body_off} bytes at offset {body_off}, "
            f"expected {n * dtype.itemsize}"
        )
    records = np.frombuffer(raw, dtype=dtype, count=n, offset=body_off)
    return TransitionDataset(
        tuple(meta["variables"]),
        meta["dim"],
        meta["outcome_dim"],
        meta["env"],
        meta["seed"],
        records["state"].copy(),
        records["outcome"].copy(),
        records["label"].copy(),
        records["split"].copy(),
    )
