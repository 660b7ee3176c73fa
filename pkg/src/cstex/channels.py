"""Assembly of feature-map components into named channel stacks.

Channel labels:

    BW      the input grayscale image
    RE(n)   real part of I_{2n,0}
    IM(n)   imaginary part of I_{2n,0}
    MAG(n)  magnitude of I_{2n,0}
    ANG(n)  angle of I_{2n,0} in degrees, [0, 360) (discontinuous at the wrap)
    I11(n)  the energy bound I_{n,n}

Presets cover the standard input combinations; within a preset, channels
are ordered BW, MAG, ANG, RE, IM, I11 (by component, then by order for
the multi-order presets).
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

import numpy as np

from .core import ChannelStack, CstFeatureMap, as_scalar_field, interior, interior_margin
from .errors import MissingOrder, ShapeMismatch, UnknownLabel

PRESETS: dict[str, tuple[str, ...]] = {
    # single-order component combinations (order 1)
    "bw": ("BW",),
    "row1": ("BW",),
    "row2": ("MAG(1)",),
    "row3": ("MAG(1)", "I11(1)"),
    "row4": ("MAG(1)", "ANG(1)", "I11(1)"),
    "row5": ("RE(1)", "IM(1)"),
    "row6": ("RE(1)", "IM(1)", "I11(1)"),
    "row7": ("MAG(1)", "RE(1)", "IM(1)", "I11(1)"),
    "row8": ("BW", "RE(1)", "IM(1)", "I11(1)"),
    "row9": ("BW", "MAG(1)", "RE(1)", "IM(1)", "I11(1)"),
    # derivative-order combinations, each order as (RE, IM, I11)
    "order1": ("RE(1)", "IM(1)", "I11(1)"),
    "order2": ("RE(2)", "IM(2)", "I11(2)"),
    "order3": ("RE(3)", "IM(3)", "I11(3)"),
    "order12": ("RE(1)", "IM(1)", "I11(1)", "RE(2)", "IM(2)", "I11(2)"),
    "order123": (
        "RE(1)", "IM(1)", "I11(1)",
        "RE(2)", "IM(2)", "I11(2)",
        "RE(3)", "IM(3)", "I11(3)",
    ),
}

DEFAULT_PRESET = "row7"

_LABEL_RE = re.compile(r"^(RE|IM|MAG|ANG|I11)\((\d+)\)$")


def parse_label(label: str) -> tuple[str, int | None]:
    """Split a channel label into (component, order); BW has order None."""
    if label == "BW":
        return "BW", None
    m = _LABEL_RE.match(label)
    if m is None:
        raise UnknownLabel(f"unknown channel label {label!r}")
    return m.group(1), int(m.group(2))


def resolve_labels(preset_or_labels) -> tuple[str, ...]:
    """Resolve a preset name or an explicit label sequence to label tuple."""
    if isinstance(preset_or_labels, str):
        try:
            return PRESETS[preset_or_labels]
        except KeyError:
            raise UnknownLabel(
                f"unknown preset {preset_or_labels!r}; known: {sorted(PRESETS)}"
            ) from None
    labels = tuple(preset_or_labels)
    for label in labels:
        parse_label(label)
    return labels


def _component(label: str, f: np.ndarray,
               by_order: dict[int, CstFeatureMap]) -> np.ndarray:
    comp, order = parse_label(label)
    if comp == "BW":
        return f
    if order not in by_order:
        raise MissingOrder(
            f"label {label} needs order {order}; computed orders: {sorted(by_order)}"
        )
    m = by_order[order]
    if comp == "RE":
        return m.i2n0.real
    if comp == "IM":
        return m.i2n0.imag
    if comp == "MAG":
        return np.abs(m.i2n0)
    if comp == "ANG":
        return np.degrees(np.angle(m.i2n0)) % 360.0
    return m.inn  # I11


def _normalize_channel(channel: np.ndarray, margin: int) -> np.ndarray:
    """Affine map sending the interior 1st..99th percentile onto [0, 1]."""
    inner = interior(channel, margin)
    lo, hi = np.percentile(inner, [1.0, 99.0])
    span = hi - lo
    if span <= 0:
        return np.zeros_like(channel)
    return (channel - lo) / span


def assemble(f, maps: Sequence[CstFeatureMap],
             preset: str | Iterable[str] = DEFAULT_PRESET,
             normalize: bool = False) -> ChannelStack:
    """Build a ChannelStack from a grayscale field and its feature maps.

    ``preset`` is either a preset name or an explicit sequence of labels.
    With ``normalize`` the interior 1st..99th percentile of every channel
    is affinely mapped onto [0, 1] (values outside may exceed that range);
    without it, raw values pass through untouched.
    """
    f = as_scalar_field(f)
    by_order: dict[int, CstFeatureMap] = {}
    for m in maps:
        by_order[m.order] = m
        if m.shape != f.shape:
            raise ShapeMismatch(
                f"feature map shape {m.shape} != image shape {f.shape}"
            )
    labels = resolve_labels(preset)

    channels = [
        np.asarray(_component(label, f, by_order), dtype=np.float64)
        for label in labels
    ]
    if normalize:
        margin = interior_margin(maps[0].params) if maps else 0
        channels = [_normalize_channel(c, margin) for c in channels]
    return ChannelStack(labels=labels, data=np.stack(channels, axis=0))
