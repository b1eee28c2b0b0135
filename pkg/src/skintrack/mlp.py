"""A fixed 3-3-1 multilayer perceptron for skin-colour classification.

The network maps a normalised RGB triple through one hidden layer of
three sigmoid units to a single sigmoid output; a region is called skin
when that output strictly exceeds a threshold ``rho``. Training is plain
online backpropagation on the per-sample squared error
``E = 0.5 * (target - output)^2`` with classical momentum: each parameter
update is ``delta = -lr * dE/dw + momentum * previous_delta``.

All arithmetic is scalar float64 with a fixed evaluation order, so equal
inputs produce bit-equal parameters on every run, and the scores computed
here are exactly the scores the detector reports.

Weight initialisation is reproducible across implementations: parameters
are drawn uniformly from [-0.5, 0.5) off a SplitMix64 stream (see
``rng``), filling w_ih row by row (w_ih[j][i] = weight from input i to
hidden unit j), then b_h[0..2], then w_ho[0..2], then b_o -- 16 draws.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import ConfigError, ModelFormatError
from .rng import SplitMix64

NORMALIZATION = "div255"


def _sigmoid(z: float) -> float:
    # branch form avoids exp overflow for large negative z
    if z >= 0.0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def _zeros_ih():
    return [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]


def _zeros3():
    return [0.0, 0.0, 0.0]


@dataclass
class SkinSample:
    """One training sample: an RGB triple and a binary target (1 = skin)."""

    rgb: tuple
    target: int

    def __post_init__(self):
        r, g, b = self.rgb
        if any(not (0 <= c <= 255) for c in (r, g, b)):
            raise ValueError(f"rgb {self.rgb!r} out of range")
        if self.target not in (0, 1):
            raise ValueError(f"target must be 0 or 1, got {self.target!r}")


@dataclass
class TrainConfig:
    """Training hyperparameters. The defaults are the reference
    configuration used throughout this package."""

    learning_rate: float = 0.6
    momentum: float = 0.7
    epochs: int = 200
    seed: int = 108  # weight-initialisation seed

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ConfigError(f"learning_rate must be positive, got {self.learning_rate!r}")
        if not 0 <= self.momentum < 1:
            raise ConfigError(f"momentum must be in [0, 1), got {self.momentum!r}")
        if not (isinstance(self.epochs, int) and self.epochs >= 1):
            raise ConfigError(f"epochs must be a positive integer, got {self.epochs!r}")


@dataclass
class Mlp:
    """Parameters of the 3-3-1 network plus its momentum buffers.

    ``m_*`` hold the previous update for every weight/bias; they are
    transient training state and are not serialised by save_model.
    """

    w_ih: list  # 3x3, w_ih[j][i]: input i -> hidden j
    b_h: list
    w_ho: list
    b_o: float
    m_ih: list = field(default_factory=_zeros_ih)
    m_bh: list = field(default_factory=_zeros3)
    m_ho: list = field(default_factory=_zeros3)
    m_bo: float = 0.0

    def copy(self) -> "Mlp":
        return Mlp(
            w_ih=[row[:] for row in self.w_ih],
            b_h=self.b_h[:],
            w_ho=self.w_ho[:],
            b_o=self.b_o,
            m_ih=[row[:] for row in self.m_ih],
            m_bh=self.m_bh[:],
            m_ho=self.m_ho[:],
            m_bo=self.m_bo,
        )

    def parameters(self) -> list:
        """All 16 weights/biases as a flat list (w_ih rows, b_h, w_ho, b_o)."""
        return [v for row in self.w_ih for v in row] + self.b_h + self.w_ho + [self.b_o]


@dataclass
class Gradients:
    """Parameter-shaped gradients of E = 0.5 * (target - output)^2."""

    w_ih: list
    b_h: list
    w_ho: list
    b_o: float


def init_mlp(seed: int) -> Mlp:
    """A fresh network with weights uniform in [-0.5, 0.5) drawn from
    SplitMix64(seed) in the documented order; momentum buffers zeroed."""
    rng = SplitMix64(seed)
    w_ih = [[rng.next_weight() for _ in range(3)] for _ in range(3)]
    b_h = [rng.next_weight() for _ in range(3)]
    w_ho = [rng.next_weight() for _ in range(3)]
    b_o = rng.next_weight()
    return Mlp(w_ih=w_ih, b_h=b_h, w_ho=w_ho, b_o=b_o)


def _forward_parts(net: Mlp, rgb):
    """Normalised inputs, hidden activations and output for one triple."""
    x = (rgb[0] / 255.0, rgb[1] / 255.0, rgb[2] / 255.0)
    w = net.w_ih
    b = net.b_h
    h = [
        _sigmoid(w[j][0] * x[0] + w[j][1] * x[1] + w[j][2] * x[2] + b[j])
        for j in range(3)
    ]
    v = net.w_ho
    y = _sigmoid(v[0] * h[0] + v[1] * h[1] + v[2] * h[2] + net.b_o)
    return x, h, y


def forward(net: Mlp, rgb) -> float:
    """Network activation in (0, 1) for an RGB triple (channels in [0, 255],
    integer or real; they are divided by 255 and never rounded)."""
    return _forward_parts(net, rgb)[2]


def gradient(net: Mlp, sample: SkinSample) -> Gradients:
    """Analytic backpropagation gradients of the squared error at ``net``."""
    x, h, y = _forward_parts(net, sample.rgb)
    t = float(sample.target)
    d_o = (y - t) * y * (1.0 - y)
    d_h = [d_o * net.w_ho[j] * h[j] * (1.0 - h[j]) for j in range(3)]
    return Gradients(
        w_ih=[[d_h[j] * x[i] for i in range(3)] for j in range(3)],
        b_h=list(d_h),
        w_ho=[d_o * h[j] for j in range(3)],
        b_o=d_o,
    )


def _run_epochs(net: Mlp, samples, cfg: TrainConfig) -> list:
    """Run cfg.epochs full passes of online momentum updates over
    ``samples`` in order, mutating ``net``. Returns per-epoch MSE (mean of
    (target - output)^2 at the pre-update forward pass of each sample)."""
    lr = cfg.learning_rate
    mom = cfg.momentum
    history = []
    for _ in range(cfg.epochs):
        sq_sum = 0.0
        for sample in samples:
            x, h, y = _forward_parts(net, sample.rgb)
            t = float(sample.target)
            sq_sum += (t - y) ** 2
            d_o = (y - t) * y * (1.0 - y)
            d_h = [d_o * net.w_ho[j] * h[j] * (1.0 - h[j]) for j in range(3)]
            for j in range(3):
                row = net.w_ih[j]
                mrow = net.m_ih[j]
                for i in range(3):
                    mrow[i] = (-lr) * (d_h[j] * x[i]) + mom * mrow[i]
                    row[i] += mrow[i]
                net.m_bh[j] = (-lr) * d_h[j] + mom * net.m_bh[j]
                net.b_h[j] += net.m_bh[j]
                net.m_ho[j] = (-lr) * (d_o * h[j]) + mom * net.m_ho[j]
                net.w_ho[j] += net.m_ho[j]
            net.m_bo = (-lr) * d_o + mom * net.m_bo
            net.b_o += net.m_bo
        history.append(sq_sum / len(samples))
    return history


def train(net: Mlp, samples, cfg: TrainConfig):
    """Train a copy of ``net`` on ``samples`` and return
    (trained network, per-epoch MSE history).

    Samples are visited in list order within every epoch; momentum buffers
    carry over from ``net`` (zero for freshly initialised networks).
    The sample list must contain both classes: a single-class set drives
    the lone sigmoid output into saturation instead of a decision boundary.
    """
    samples = list(samples)
    if not samples:
        raise ConfigError("sample list is empty")
    targets = {s.target for s in samples}
    if targets != {0, 1}:
        raise ConfigError(
            "training requires both skin and non-skin samples "
            f"(got only target={targets.pop()}); add negatives, e.g. via "
            "generate_negatives()"
        )
    trained = net.copy()
    history = _run_epochs(trained, samples, cfg)
    return trained, history


def classify(net: Mlp, mean_rgb, rho: float) -> bool:
    """True (skin) iff the network output strictly exceeds ``rho``."""
    return forward(net, mean_rgb) > rho


@dataclass
class ModelFile:
    """A deserialised model document: network, threshold, metadata."""

    net: Mlp
    rho: float
    meta: dict


def save_model(net: Mlp, rho: float = 0.5, meta: dict | None = None) -> bytes:
    """Serialise network parameters and threshold as JSON.

    Floats use shortest round-trip decimal form, so loading restores the
    exact parameter values. Output is byte-stable for equal inputs.
    """
    doc = {
        "w_ih": [list(row) for row in net.w_ih],
        "b_h": list(net.b_h),
        "w_ho": list(net.w_ho),
        "b_o": net.b_o,
        "rho": rho,
        "normalization": NORMALIZATION,
    }
    if meta is not None:
        doc["meta"] = meta
    return (json.dumps(doc, indent=2) + "\n").encode("ascii")


def _require(doc: dict, name: str):
    if name not in doc:
        raise ModelFormatError(f"missing field '{name}'")
    return doc[name]


def _check_number(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ModelFormatError(f"field '{name}' must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ModelFormatError(f"non-finite value in field '{name}'")
    return value


def _check_vector(value, name: str) -> list:
    if not isinstance(value, list) or len(value) != 3:
        raise ModelFormatError(f"field '{name}' must be a 3-vector")
    return [_check_number(v, name) for v in value]


def load_model(data) -> ModelFile:
    """Parse a model document produced by save_model.

    Raises ModelFormatError naming the offending field for missing fields,
    wrong shapes, or non-finite values. Momentum buffers start zeroed.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")

    raw_w_ih = _require(doc, "w_ih")
    if not isinstance(raw_w_ih, list) or len(raw_w_ih) != 3:
        raise ModelFormatError("field 'w_ih' must be a 3x3 array")
    w_ih = []
    for j, row in enumerate(raw_w_ih):
        if not isinstance(row, list) or len(row) != 3:
            raise ModelFormatError("field 'w_ih' must be a 3x3 array")
        w_ih.append([_check_number(v, f"w_ih[{j}]") for v in row])

    b_h = _check_vector(_require(doc, "b_h"), "b_h")
    w_ho = _check_vector(_require(doc, "w_ho"), "w_ho")
    b_o = _check_number(_require(doc, "b_o"), "b_o")
    rho = _check_number(_require(doc, "rho"), "rho")
    if not 0 < rho < 1:
        raise ModelFormatError(f"field 'rho' must lie in (0, 1), got {rho}")
    norm = _require(doc, "normalization")
    if norm != NORMALIZATION:
        raise ModelFormatError(
            f"field 'normalization' must be '{NORMALIZATION}', got {norm!r}"
        )
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise ModelFormatError("field 'meta' must be an object")

    return ModelFile(net=Mlp(w_ih=w_ih, b_h=b_h, w_ho=w_ho, b_o=b_o), rho=rho, meta=meta)
