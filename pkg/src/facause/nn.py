"""Minimal differentiable substrate for the masked forward model and the
state-to-binary network.

Both networks share the same skeleton: a per-variable MLP (the same weights
applied to every variable's vector) embeds each input, the embeddings are
summed into a global context, and a second per-variable MLP reads each
embedding concatenated with that context.  The forward model masks each
embedding by its binary coefficient before aggregation, which keeps a
variable with a zero mask bit exactly out of the computation, and finishes
with an output head on the summed second-stage embeddings.  The binary
network instead ends the second stage in a single sigmoid unit per variable.

Everything is plain numpy with hand-written reverse-mode gradients, including
gradients with respect to the inputs (for saliency-style baselines) and the
mask (for training the binary network through the forward model).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import BinaryIO, Iterator, Sequence

import numpy as np

HIDDEN_WIDTH = 256
EMBED_WIDTH = 512


class NnError(Exception):
    pass


@dataclass
class Mlp:
    """Dense stack with rectified-linear hidden layers and a linear output."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]

    @classmethod
    def init(cls, sizes: Sequence[int], rng: np.random.Generator, dtype=np.float32) -> "Mlp":
        weights, biases = [], []
        for fan_in, fan_out in zip(sizes, sizes[1:]):
            bound = 1.0 / np.sqrt(fan_in)
            weights.append(rng.uniform(-bound, bound, (fan_in, fan_out)).astype(dtype))
            biases.append(rng.uniform(-bound, bound, fan_out).astype(dtype))
        return cls(weights, biases)

    def forward(self, x: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
        """Returns the output and the cached layer inputs for backprop."""
        cache = [x]
        h = x
        last = len(self.weights) - 1
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            h = h @ w + b
            if i < last:
                np.maximum(h, 0, out=h)
            cache.append(h)
        return h, cache

    def backward(
        self, cache: list[np.ndarray], dout: np.ndarray, need_input_grad: bool = True
    ) -> tuple["MlpGrads", np.ndarray | None]:
        dws = [None] * len(self.weights)
        dbs = [None] * len(self.biases)
        grad = dout
        last = len(self.weights) - 1
        for i in range(last, -1, -1):
            if i < last:
                grad = grad * (cache[i + 1] > 0)
            dws[i] = cache[i].T @ grad
            dbs[i] = grad.sum(axis=0)
            if i > 0 or need_input_grad:
                grad = grad @ self.weights[i].T
        return MlpGrads(dws, dbs), (grad if need_input_grad else None)

    def arrays(self) -> Iterator[np.ndarray]:
        for w, b in zip(self.weights, self.biases):
            yield w
            yield b


@dataclass
class MlpGrads:
    weights: list[np.ndarray]
    biases: list[np.ndarray]

    def arrays(self) -> Iterator[np.ndarray]:
        for w, b in zip(self.weights, self.biases):
            yield w
            yield b


@dataclass
class ForwardModelParams:
    """Masked forward model: per-variable conv stages plus an output head."""

    conv1: Mlp
    conv2: Mlp
    head: Mlp
    n_vars: int
    d_in: int
    d_out: int

    @classmethod
    def init(
        cls,
        n_vars: int,
        d_in: int,
        d_out: int,
        hidden: int = HIDDEN_WIDTH,
        embed: int = EMBED_WIDTH,
        seed: int = 0,
        dtype=np.float32,
    ) -> "ForwardModelParams":
        rng = np.random.default_rng(seed)
        return cls(
            conv1=Mlp.init((d_in, hidden, hidden, hidden, embed), rng, dtype),
            conv2=Mlp.init((2 * embed, hidden, hidden, hidden, embed), rng, dtype),
            head=Mlp.init((embed, hidden, d_out), rng, dtype),
            n_vars=n_vars,
            d_in=d_in,
            d_out=d_out,
        )

    def arrays(self) -> Iterator[np.ndarray]:
        yield from self.conv1.arrays()
        yield from self.conv2.arrays()
        yield from self.head.arrays()


@dataclass
class BinaryModelParams:
    """State-to-binary network: shared conv stages ending in one logit."""

    conv1: Mlp
    conv2: Mlp
    n_vars: int
    d_in: int

    @classmethod
    def init(
        cls,
        n_vars: int,
        d_in: int,
        hidden: int = HIDDEN_WIDTH,
        embed: int = EMBED_WIDTH,
        seed: int = 0,
        dtype=np.float32,
    ) -> "BinaryModelParams":
        rng = np.random.default_rng(seed)
        return cls(
            conv1=Mlp.init((d_in, hidden, hidden, hidden, embed), rng, dtype),
            conv2=Mlp.init((2 * embed, hidden, hidden, hidden, 1), rng, dtype),
            n_vars=n_vars,
            d_in=d_in,
        )

    def arrays(self) -> Iterator[np.ndarray]:
        yield from self.conv1.arrays()
        yield from self.conv2.arrays()


@dataclass
class ForwardCache:
    states: np.ndarray
    b: np.ndarray
    emb: np.ndarray
    conv1_cache: list[np.ndarray]
    conv2_cache: list[np.ndarray]
    head_cache: list[np.ndarray]


def forward_masked(
    params: ForwardModelParams, states: np.ndarray, b: np.ndarray
) -> tuple[np.ndarray, ForwardCache]:
    """Masked prediction of the outcome vector.

    ``states`` is (batch, n_vars, d_in) and ``b`` is (batch, n_vars) with
    entries in [0, 1].  Masking happens at the embedding, so a zero bit
    removes the variable's influence exactly regardless of its value.
    """
    B, K, D = states.shape
    if (K, D) != (params.n_vars, params.d_in):
        raise NnError(f"state shape {states.shape} does not match the network")
    if b.shape != (B, K):
        raise NnError(f"mask shape {b.shape} != {(B, K)}")
    rows = states.reshape(B * K, D)
    emb_rows, conv1_cache = params.conv1.forward(rows)
    E = emb_rows.shape[1]
    emb_raw = emb_rows.reshape(B, K, E)
    emb_masked = emb_raw * b[:, :, None]
    agg = emb_masked.sum(axis=1)
    conv2_in = np.concatenate(
        [emb_masked.reshape(B * K, E), np.repeat(agg, K, axis=0)], axis=1
    )
    z_rows, conv2_cache = params.conv2.forward(conv2_in)
    z = z_rows.reshape(B, K, E).sum(axis=1)
    out, head_cache = params.head.forward(z)
    return out, ForwardCache(states, b, emb_raw, conv1_cache, conv2_cache, head_cache)


@dataclass
class ForwardGrads:
    conv1: MlpGrads
    conv2: MlpGrads
    head: MlpGrads
    d_states: np.ndarray | None
    d_b: np.ndarray

    def arrays(self) -> Iterator[np.ndarray]:
        yield from self.conv1.arrays()
        yield from self.conv2.arrays()
        yield from self.head.arrays()


def forward_masked_backward(
    params: ForwardModelParams,
    cache: ForwardCache,
    dout: np.ndarray,
    need_input_grads: bool = False,
) -> ForwardGrads:
    """Reverse pass: parameter grads plus d(loss)/d(mask) and optionally
    d(loss)/d(states)."""
    B, K, D = cache.states.shape
    E = cache.emb.shape[2]
    head_grads, dz = params.head.backward(cache.head_cache, dout)
    dz_rows = np.repeat(dz, K, axis=0)
    conv2_grads, dconv2_in = params.conv2.backward(cache.conv2_cache, dz_rows)
    demb_direct = dconv2_in[:, :E].reshape(B, K, E)
    dagg = dconv2_in[:, E:].reshape(B, K, E).sum(axis=1)
    demb_masked = demb_direct + dagg[:, None, :]
    # emb_masked = emb * b, so the mask grad reads the unmasked embedding
    d_b = (demb_masked * cache.emb).sum(axis=2)
    demb_rows = (demb_masked * cache.b[:, :, None]).reshape(B * K, E)
    conv1_grads, drows = params.conv1.backward(
        cache.conv1_cache, demb_rows, need_input_grad=need_input_grads
    )
    d_states = drows.reshape(B, K, D) if need_input_grads else None
    if not np.isfinite(d_b).all():
        raise NnError("non-finite gradient in the mask path")
    return ForwardGrads(conv1_grads, conv2_grads, head_grads, d_states, d_b)


@dataclass
class BinaryCache:
    states: np.ndarray
    emb: np.ndarray
    logits: np.ndarray
    b_hat: np.ndarray
    conv1_cache: list[np.ndarray]
    conv2_cache: list[np.ndarray]


def binary_forward(
    params: BinaryModelParams, states: np.ndarray
) -> tuple[np.ndarray, BinaryCache]:
    """Per-variable probabilities in [0, 1] from the shared conv stages."""
    B, K, D = states.shape
    if (K, D) != (params.n_vars, params.d_in):
        raise NnError(f"state shape {states.shape} does not match the network")
    rows = states.reshape(B * K, D)
    emb_rows, conv1_cache = params.conv1.forward(rows)
    E = emb_rows.shape[1]
    emb = emb_rows.reshape(B, K, E)
    agg = emb.sum(axis=1)
    conv2_in = np.concatenate(
        [emb.reshape(B * K, E), np.repeat(agg, K, axis=0)], axis=1
    )
    logits, conv2_cache = params.conv2.forward(conv2_in)
    logits = logits.reshape(B, K)
    b_hat = 1.0 / (1.0 + np.exp(-logits))
    return b_hat, BinaryCache(states, emb, logits, b_hat, conv1_cache, conv2_cache)


@dataclass
class BinaryGrads:
    conv1: MlpGrads
    conv2: MlpGrads

    def arrays(self) -> Iterator[np.ndarray]:
        yield from self.conv1.arrays()
        yield from self.conv2.arrays()


def binary_backward(
    params: BinaryModelParams, cache: BinaryCache, d_b_hat: np.ndarray
) -> BinaryGrads:
    """Reverse pass through the sigmoid and both conv stages."""
    B, K, E = cache.emb.shape
    dlogits = d_b_hat * cache.b_hat * (1.0 - cache.b_hat)
    conv2_grads, dconv2_in = params.conv2.backward(
        cache.conv2_cache, dlogits.reshape(B * K, 1)
    )
    demb = dconv2_in[:, :E].reshape(B, K, E)
    dagg = dconv2_in[:, E:].reshape(B, K, E).sum(axis=1)
    demb = demb + dagg[:, None, :]
    conv1_grads, _ = params.conv1.backward(
        cache.conv1_cache, demb.reshape(B * K, E), need_input_grad=False
    )
    return BinaryGrads(conv1_grads, conv2_grads)


def mix(b_hat: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Bernoulli mixing: draw hard bits from b_hat and rescale by b_hat.

    Entries of the result are either 0 or the corresponding b_hat value, so
    the mask is binary in support while remaining differentiable through the
    b_hat factor.
    """
    hard = (rng.random(b_hat.shape) < b_hat).astype(b_hat.dtype)
    return hard * b_hat


def l1_loss(pred: np.ndarray, target: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-record L1 error and its gradient w.r.t. the prediction."""
    diff = pred - target
    return np.abs(diff).sum(axis=1), np.sign(diff)


# ---------------------------------------------------------------------------
# Optimizer
# ---------------------------------------------------------------------------


@dataclass
class Adam:
    """Adaptive-moment optimizer over a fixed list of parameter arrays."""

    lr: float
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    m: list[np.ndarray] = field(default_factory=list)
    v: list[np.ndarray] = field(default_factory=list)
    t: int = 0

    def step(self, arrays: Sequence[np.ndarray], grads: Sequence[np.ndarray]) -> None:
        if not self.m:
            self.m = [np.zeros_like(a) for a in arrays]
            self.v = [np.zeros_like(a) for a in arrays]
        self.t += 1
        b1t = 1.0 - self.beta1**self.t
        b2t = 1.0 - self.beta2**self.t
        for a, g, m, v in zip(arrays, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * np.square(g)
            a -= self.lr * (m / b1t) / (np.sqrt(v / b2t) + self.eps)


# ---------------------------------------------------------------------------
# Checkpoints
# ---------------------------------------------------------------------------

CHECKPOINT_MAGIC = b"FACW"
CHECKPOINT_VERSION = 1


class CheckpointError(Exception):
    pass


def _param_entries(name: str, params) -> list[tuple[str, np.ndarray]]:
    entries = []
    for i, arr in enumerate(params.arrays()):
        entries.append((f"{name}.{i}", arr))
    return entries


def save_checkpoint(path: str, groups: dict[str, object], meta: dict | None = None) -> None:
    """Write named parameter groups as little-endian float32 in layer order."""
    entries: list[tuple[str, np.ndarray]] = []
    shapes: dict[str, list[list[int]]] = {}
    for name, params in groups.items():
        group_entries = _param_entries(name, params)
        entries.extend(group_entries)
        shapes[name] = [list(arr.shape) for _, arr in group_entries]
    header = {
        "groups": {name: shapes[name] for name in groups},
        "meta": meta or {},
    }
    blob = json.dumps(header, sort_keys=True, separators=(",", ":")).encode()
    with open(path, "wb") as fh:
        fh.write(CHECKPOINT_MAGIC)
        fh.write(np.uint32(CHECKPOINT_VERSION).tobytes())
        fh.write(np.uint32(len(blob)).tobytes())
        fh.write(blob)
        for _, arr in entries:
            fh.write(np.ascontiguousarray(arr, dtype="<f4").tobytes())


def load_checkpoint(path: str, groups: dict[str, object]) -> dict:
    """Read parameters into the given (already shaped) groups; returns meta."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw[:4] != CHECKPOINT_MAGIC:
        raise CheckpointError(f"bad magic at offset 0: {raw[:4]!r}")
    version = int(np.frombuffer(raw, "<u4", count=1, offset=4)[0])
    if version != CHECKPOINT_VERSION:
        raise CheckpointError(f"unsupported version {version}")
    blob_len = int(np.frombuffer(raw, "<u4", count=1, offset=8)[0])
    header = json.loads(raw[12 : 12 + blob_len].decode())
    off = 12 + blob_len
    for name, params in groups.items():
        if name not in header["groups"]:
            raise CheckpointError(f"checkpoint lacks parameter group {name!r}")
        for (label, arr), shape in zip(_param_entries(name, params), header["groups"][name]):
            if list(arr.shape) != shape:
                raise CheckpointError(f"shape mismatch for {label}: {arr.shape} vs {shape}")
            count = int(np.prod(shape))
            flat = np.frombuffer(raw, "<f4", count=count, offset=off)
            arr[...] = flat.reshape(shape).astype(arr.dtype)
            off += 4 * count
    if off != len(raw):
        raise CheckpointError(f"trailing bytes after offset {off}")
    return header["meta"]
