"""Forward pass of higher-order message passing layers.

A layer is a list of arrows, each pushing the feature block of one rank to
another rank through a structural operator and a weight matrix::

    H'_t = act( merge_{a: src(a) -> t} G_a @ H_{src(a)} @ W_a )

Several arrows into one target rank form a merge; several arrows out of one
source rank form a split.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import scipy.sparse as sp

from .complexes import CellId, Complex
from .errors import ParseError, ShapeError, UnsupportedRank
from .operators import (
    adjacency_matrix,
    coadjacency_matrix,
    down_laplacian_matrix,
    incidence_matrix,
    up_laplacian_matrix,
)

__all__ = [
    "Operator",
    "Aggregation",
    "Merge",
    "Activation",
    "WeightInit",
    "Arrow",
    "HompLayerSpec",
    "FeatureMatrix",
    "structural_operator",
    "homp_forward",
    "scconv_reference_layer",
    "init_weights",
]


class Operator(str, enum.Enum):
    INCIDENCE = "incidence"
    INCIDENCE_TRANSPOSE = "incidence_transpose"
    ADJACENCY = "adjacency"
    COADJACENCY = "coadjacency"
    UP_LAPLACIAN = "up_laplacian"
    DOWN_LAPLACIAN = "down_laplacian"
    IDENTITY = "identity"


class Aggregation(str, enum.Enum):
    SUM = "sum"
    MEAN = "mean"


class Merge(str, enum.Enum):
    SUM = "sum"
    MEAN = "mean"
    CONCAT = "concat"


class Activation(str, enum.Enum):
    IDENTITY = "identity"
    RELU = "relu"
    TANH = "tanh"
    SIGMOID = "sigmoid"

    def __call__(self, x: np.ndarray) -> np.ndarray:
        if self is Activation.RELU:
            return np.maximum(x, 0.0)
        if self is Activation.TANH:
            return np.tanh(x)
        if self is Activation.SIGMOID:
            return 0.5 * (1.0 + np.tanh(0.5 * x))
        return x


class WeightInit(str, enum.Enum):
    ZEROS = "zeros"
    GLOROT_UNIFORM = "glorot_uniform"


def init_weights(shape: tuple[int, int], scheme: WeightInit | str = WeightInit.GLOROT_UNIFORM, seed: int = 0) -> np.ndarray:
    """Weight matrix of ``shape``; Glorot-uniform entries lie in ``+-sqrt(6 / (fan_in + fan_out))``."""
    fan_in, fan_out = shape
    if fan_in < 1 or fan_out < 1:
        raise ValueError(f"weight dimensions must be positive, got {shape}")
    scheme = WeightInit(scheme)
    if scheme is WeightInit.ZEROS:
        return np.zeros(shape)
    bound = np.sqrt(6.0 / (fan_in + fan_out))
    return np.random.default_rng(seed).uniform(-bound, bound, size=shape)


@dataclass
class Arrow:
    source: int
    target: int
    operator: Operator
    weight: np.ndarray

    def __post_init__(self) -> None:
        self.operator = Operator(self.operator)
        self.weight = np.atleast_2d(np.asarray(self.weight, dtype=float))

    def __str__(self) -> str:
        return f"{self.source}->{self.target} {self.operator.value}"


@dataclass
class HompLayerSpec:
    arrows: list[Arrow]
    within_agg: Aggregation = Aggregation.SUM
    merge: Merge = Merge.SUM
    activation: Activation = Activation.IDENTITY
    signed_incidence: bool = False

    def __post_init__(self) -> None:
        self.within_agg = Aggregation(self.within_agg)
        self.merge = Merge(self.merge)
        self.activation = Activation(self.activation)

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> HompLayerSpec:
        """Parse the JSON layer description used by the command line.

        A weight is either a nested list or
        ``{"init": "glorot_uniform" | "zeros", "shape": [in, out], "seed": s}``.
        """
        if not isinstance(doc, Mapping):
            raise ParseError("layer spec must be an object")
        allowed = {"arrows", "within_agg", "merge", "activation", "signed_incidence"}
        extra = sorted(set(doc) - allowed)
        if extra:
            raise ParseError(f"unknown field {extra[0]!r}")
        raw = doc.get("arrows")
        if not isinstance(raw, list) or not raw:
            raise ParseError("arrows must be a non-empty list")
        arrows = []
        for i, a in enumerate(raw):
            where = f"arrows[{i}]"
            if not isinstance(a, Mapping):
                raise ParseError(f"{where} must be an object")
            extra = sorted(set(a) - {"source", "target", "operator", "weight"})
            if extra:
                raise ParseError(f"unknown field {where}.{extra[0]}")
            try:
                src, tgt = int(a["source"]), int(a["target"])
                op = Operator(a["operator"])
                w = a["weight"]
            except KeyError as e:
                raise ParseError(f"{where}.{e.args[0]} is required") from None
            except (TypeError, ValueError) as e:
                raise ParseError(f"{where}: {e}") from None
            if isinstance(w, Mapping):
                try:
                    shape = tuple(int(x) for x in w["shape"])
                    w = init_weights(shape, w.get("init", "glorot_uniform"), int(w.get("seed", 0)))
                except (KeyError, TypeError, ValueError) as e:
                    raise ParseError(f"{where}.weight: {e}") from None
            else:
                try:
                    w = np.asarray(w, dtype=float)
                except (TypeError, ValueError):
                    raise ParseError(f"{where}.weight must be a matrix") from None
                if w.ndim != 2:
                    raise ParseError(f"{where}.weight must be a matrix")
            arrows.append(Arrow(src, tgt, op, w))
        try:
            return cls(
                arrows,
                Aggregation(doc.get("within_agg", "sum")),
                Merge(doc.get("merge", "sum")),
                Activation(doc.get("activation", "identity")),
                bool(doc.get("signed_incidence", False)),
            )
        except ValueError as e:
            raise ParseError(str(e)) from None

    def to_dict(self) -> dict[str, Any]:
        return {
            "arrows": [
                {"source": a.source, "target": a.target, "operator": a.operator.value, "weight": a.weight.tolist()}
                for a in self.arrows
            ],
            "within_agg": self.within_agg.value,
            "merge": self.merge.value,
            "activation": self.activation.value,
            "signed_incidence": self.signed_incidence,
        }


@dataclass
class FeatureMatrix:
    rank: int
    rows: Sequence[CellId]
    data: np.ndarray = field(repr=False)

    @property
    def channels(self) -> int:
        return self.data.shape[1]


def structural_operator(cx: Complex, op: Operator | str, source: int, target: int, signed: bool = False) -> sp.csr_matrix:
    """Sparse ``|target| x |source|`` matrix moving rank-``source`` features to rank ``target``."""
    op = Operator(op)
    if op is Operator.INCIDENCE:
        if target != source - 1:
            raise ShapeError(f"incidence maps rank k to k-1, got {source}->{target}")
        return incidence_matrix(cx, source, signed=signed).csr
    if op is Operator.INCIDENCE_TRANSPOSE:
        if target != source + 1:
            raise ShapeError(f"incidence transpose maps rank k to k+1, got {source}->{target}")
        return incidence_matrix(cx, target, signed=signed).csr.T.tocsr()
    if source != target:
        raise ShapeError(f"{op.value} keeps the rank, got {source}->{target}")
    if op is Operator.ADJACENCY:
        return adjacency_matrix(cx, source).csr
    if op is Operator.COADJACENCY:
        return coadjacency_matrix(cx, source).csr
    if op is Operator.UP_LAPLACIAN:
        return up_laplacian_matrix(cx, source).csr
    if op is Operator.DOWN_LAPLACIAN:
        return down_laplacian_matrix(cx, source).csr
    return sp.identity(cx.size(source), format="csr")


def _row_mean(g: sp.csr_matrix) -> sp.csr_matrix:
    counts = np.diff(g.indptr).astype(float)
    inv = np.zeros_like(counts)
    np.divide(1.0, counts, out=inv, where=counts > 0)
    return (sp.diags(inv) @ g).tocsr()


def _block(cx: Complex, rank: int, value: FeatureMatrix | np.ndarray) -> np.ndarray:
    if isinstance(value, FeatureMatrix):
        if value.rank != rank:
            raise ShapeError(f"feature block keyed {rank} carries rank {value.rank}")
        if list(value.rows) != cx.skeleton(rank):
            raise ShapeError(f"feature rows of rank {rank} do not match the skeleton")
        data = value.data
    else:
        data = value
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        data = data[:, None]
    if data.ndim != 2 or data.shape[0] != cx.size(rank):
        raise ShapeError(f"rank {rank} features need {cx.size(rank)} rows, got shape {data.shape}")
    if not np.all(np.isfinite(data)):
        raise ShapeError(f"rank {rank} features contain non-finite values")
    return data


def homp_forward(
    cx: Complex,
    spec: HompLayerSpec,
    features: Mapping[int, FeatureMatrix | np.ndarray],
) -> dict[int, FeatureMatrix]:
    """Evaluate one layer; only ranks with an incoming arrow appear in the output.

    Arrows are evaluated and merged in list order, so results are
    reproducible to the bit.
    """
    top = cx.dim
    blocks = {r: _block(cx, r, v) for r, v in features.items()}
    messages: dict[int, list[np.ndarray]] = {}
    ops: dict[tuple[Operator, int, int], sp.csr_matrix] = {}
    for i, arrow in enumerate(spec.arrows):
        name = f"arrow {i} ({arrow})"
        for r in (arrow.source, arrow.target):
            if not 0 <= r <= top:
                raise UnsupportedRank(f"{name}: rank {r} outside 0..{top}")
        if arrow.source not in blocks:
            raise ShapeError(f"{name}: no features for rank {arrow.source}")
        h = blocks[arrow.source]
        if arrow.weight.shape[0] != h.shape[1]:
            raise ShapeError(
                f"{name}: weight has {arrow.weight.shape[0]} input channels, features have {h.shape[1]}"
            )
        key = (arrow.operator, arrow.source, arrow.target)
        g = ops.get(key)
        if g is None:
            try:
                g = structural_operator(cx, arrow.operator, arrow.source, arrow.target, spec.signed_incidence)
            except ShapeError as e:
                raise ShapeError(f"{name}: {e}") from None
            if spec.within_agg is Aggregation.MEAN:
                g = _row_mean(g)
            ops[key] = g
        messages.setdefault(arrow.target, []).append(np.asarray(g @ (h @ arrow.weight)))

    out = {}
    for rank in sorted(messages):
        parts = messages[rank]
        if spec.merge is Merge.CONCAT:
            merged = np.hstack(parts)
        else:
            widths = {p.shape[1] for p in parts}
            if len(widths) > 1:
                raise ShapeError(f"arrows into rank {rank} disagree on output channels {sorted(widths)}")
            merged = parts[0].copy()
            for p in parts[1:]:
                merged += p
            if spec.merge is Merge.MEAN:
                merged /= len(parts)
        out[rank] = FeatureMatrix(rank, cx.skeleton(rank), spec.activation(merged))
    return out


def scconv_reference_layer(
    cx: Complex,
    rank: int,
    features: FeatureMatrix | np.ndarray,
    w_down: np.ndarray,
    w_up: np.ndarray,
    w_id: np.ndarray,
    activation: Activation | str = Activation.IDENTITY,
) -> FeatureMatrix:
    """``act(L_down H W_down + L_up H W_up + H W_id)`` on one rank, as a three-arrow layer."""
    spec = HompLayerSpec(
        [
            Arrow(rank, rank, Operator.DOWN_LAPLACIAN, w_down),
            Arrow(rank, rank, Operator.UP_LAPLACIAN, w_up),
            Arrow(rank, rank, Operator.IDENTITY, w_id),
        ],
        activation=Activation(activation),
    )
    return homp_forward(cx, spec, {rank: features})[rank]
