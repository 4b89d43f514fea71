"""Hilbert space-filling curve ordering and the Hilbert distance.

Points are rescaled affinely into a box, quantized to ``2**bits`` cells per
axis, and ordered along the order-``bits`` Hilbert curve. The encoder is
Skilling's transpose algorithm (AIP Conf. Proc. 707, 2004), vectorized over
points. The index of a point is the interleaving of the transposed bits, most
significant level first and axis 0 first within a level.
"""

from __future__ import annotations

__all__: tuple[str, ...] = ()

from typing import TYPE_CHECKING, Any

import numpy as np

from wabc._cloud import CloudValidationError
from wabc.metric import GroundMetric, paired_costs
from wabc.setup_package import HILBERT_BITS, HILBERT_BOX_MARGIN, HILBERT_MAX_INDEX_BITS
from wabc.transport._base import Assignment, DistanceResult, coerce_pair, root

if TYPE_CHECKING:
    from wabc._cloud import PointCloud
    from wabc.typing import ArrayLike, FloatArray, IntArray

WORD_BITS = 64
MAX_AXIS_BITS = 52  # cells are computed in float64


def default_bits(d: int) -> int:
    """Bits per axis: 16, reduced so the index fits in 128 bits."""
    return max(1, min(HILBERT_BITS, HILBERT_MAX_INDEX_BITS // d))


def _check_bits(bits: int, d: int) -> None:
    if bits < 1:
        msg = f"bits must be >= 1, got {bits}"
        raise ValueError(msg)
    if bits > MAX_AXIS_BITS:
        msg = f"bits per axis must be <= {MAX_AXIS_BITS}, got {bits}"
        raise ValueError(msg)
    if bits * d > HILBERT_MAX_INDEX_BITS:
        msg = (
            f"bits * d = {bits * d} exceeds the {HILBERT_MAX_INDEX_BITS}-bit "
            "index budget"
        )
        raise ValueError(msg)


def joint_box(*clouds: FloatArray, margin: float = HILBERT_BOX_MARGIN) -> FloatArray:
    """Bounding box of the given point sets, widened by a relative margin.

    Returns
    -------
    (2, d) ndarray
        Lower ends in row 0, upper ends in row 1.
    """
    stacked = np.concatenate(clouds, axis=0)
    lo, hi = stacked.min(axis=0), stacked.max(axis=0)
    pad = margin * (hi - lo)
    return np.stack([lo - pad, hi + pad])


def quantize(points: FloatArray, box: FloatArray, bits: int) -> np.ndarray[Any, Any]:
    """Cell coordinates of ``points`` in a ``2**bits`` grid over ``box``.

    Points outside the box are clamped to the boundary cells. Axes with
    ``lo == hi`` map to the middle cell.
    """
    lo, hi = box[0], box[1]
    if np.any(lo > hi):
        msg = "box lower ends must not exceed upper ends"
        raise ValueError(msg)
    ncell = 1 << bits
    span = hi - lo
    degenerate = span <= 0
    u = (points - lo) / np.where(degenerate, 1.0, span)
    cells = np.clip(np.floor(u * ncell), 0, ncell - 1)
    cells[:, degenerate] = ncell >> 1
    return cells.astype(np.uint64)


def _axes_to_transpose(cells: np.ndarray[Any, Any], bits: int) -> np.ndarray[Any, Any]:
    """Skilling's AxesToTranspose, applied to every row of ``cells``."""
    x = cells.copy()
    d = x.shape[1]
    m = np.uint64(1) << np.uint64(bits - 1)

    # inverse undo
    q = m
    while q > 1:
        p = q - np.uint64(1)
        for i in range(d):
            hit = (x[:, i] & q) != 0
            t = np.where(hit, np.uint64(0), (x[:, 0] ^ x[:, i]) & p)
            x[:, 0] ^= np.where(hit, p, t)
            x[:, i] ^= t
        q >>= np.uint64(1)

    # Gray encode
    for i in range(1, d):
        x[:, i] ^= x[:, i - 1]
    t = np.zeros(x.shape[0], dtype=np.uint64)
    q = m
    while q > 1:
        t ^= np.where((x[:, d - 1] & q) != 0, q - np.uint64(1), np.uint64(0))
        q >>= np.uint64(1)
    x ^= t[:, None]
    return x


def hilbert_keys(
    points: FloatArray, box: FloatArray, bits: int
) -> np.ndarray[Any, Any]:
    """Hilbert indices as big-endian 64-bit words, left-aligned.

    Comparing rows lexicographically compares the Hilbert indices.

    Returns
    -------
    (n, W) uint64 ndarray
        ``W = ceil(bits * d / 64)``.
    """
    n, d = points.shape
    _check_bits(bits, d)
    cells = quantize(points, box, bits)
    trans = cells if d == 1 else _axes_to_transpose(cells, bits)

    nbits = bits * d
    nwords = -(-nbits // WORD_BITS)
    words = np.zeros((n, nwords), dtype=np.uint64)
    k = 0
    for level in range(bits - 1, -1, -1):
        for i in range(d):
            bit = (trans[:, i] >> np.uint64(level)) & np.uint64(1)
            w, s = divmod(k, WORD_BITS)
            words[:, w] |= bit << np.uint64(WORD_BITS - 1 - s)
            k += 1
    return words


def hilbert_index(
    point: ArrayLike, box: ArrayLike, bits: int = HILBERT_BITS
) -> int:
    """Index of ``point`` along the order-``bits`` Hilbert curve over ``box``.

    Parameters
    ----------
    point : (d,) array-like
    box : (d, 2) array-like
        One ``(lo, hi)`` pair per axis.
    bits : int, optional
        Bits per axis, ``bits * d <= 128``.

    Returns
    -------
    int
        In ``[0, 2**(bits * d))``.

    Examples
    --------
    >>> centers = [(0.25, 0.25), (0.25, 0.75), (0.75, 0.75), (0.75, 0.25)]
    >>> [hilbert_index(c, [(0, 1), (0, 1)], bits=1) for c in centers]
    [0, 1, 2, 3]
    """
    pt = np.atleast_1d(np.asarray(point, dtype=float))
    bx = np.asarray(box, dtype=float).T
    if bx.shape != (2, pt.shape[0]):
        msg = f"box shape {bx.shape} does not match point dimension {pt.shape[0]}"
        raise CloudValidationError("dimension", msg)
    if not np.all(np.isfinite(pt)):
        raise CloudValidationError("non-finite")

    words = hilbert_keys(pt[None, :], bx, bits)[0]
    index = 0
    for w in words:
        index = (index << WORD_BITS) | int(w)
    return index >> (len(words) * WORD_BITS - bits * pt.shape[0])


def hilbert_order(
    points: FloatArray, box: FloatArray, bits: int | None = None
) -> IntArray:
    """Row order of ``points`` along the Hilbert curve.

    Ties on the index are broken by lexicographic coordinate comparison, then
    by row number.
    """
    d = points.shape[1]
    bits = default_bits(d) if bits is None else bits
    words = hilbert_keys(points, box, bits)
    keys = (
        *(points[:, i] for i in range(d - 1, -1, -1)),
        *(words[:, w] for w in range(words.shape[1] - 1, -1, -1)),
    )
    return np.lexsort(keys)


def hilbert_distance(
    x: PointCloud | Any,
    y: PointCloud | Any,
    m: GroundMetric | None = None,
    *,
    bits: int | None = None,
    box: ArrayLike | None = None,
) -> DistanceResult:
    """Transport cost of the matching that pairs Hilbert-sorted points.

    Both clouds are sorted along the Hilbert curve over a shared box and the
    ``i``-th point of one is matched to the ``i``-th point of the other. The
    result upper-bounds the exact Wasserstein distance and costs
    ``O(n log n)``.

    Parameters
    ----------
    x, y : PointCloud
        Equal-size clouds.
    m : GroundMetric, optional
        Defaults to Euclidean with ``p = 1``.
    bits : int, optional keyword-only
        Bits per axis. Defaults to 16, fewer when ``d > 8``.
    box : (2, d) array-like, optional keyword-only
        Normalization box, lower ends in row 0 and upper ends in row 1 as
        returned by :func:`joint_box`. Defaults to the joint bounding box of ``x`` and
        ``y`` widened by a ``1e-9`` relative margin. Pass a shared box to
        compare several clouds on one curve.

    Returns
    -------
    DistanceResult
    """
    m = GroundMetric() if m is None else m
    cx, cy = coerce_pair(x, y)
    bx = (
        joint_box(cx.points, cy.points)
        if box is None
        else np.asarray(box, dtype=float).reshape(2, cx.d)
    )
    ox = hilbert_order(cx.points, bx, bits)
    oy = hilbert_order(cy.points, bx, bits)
    cost = paired_costs(cx.points[ox], cy.points[oy], m)

    sigma = np.empty_like(ox)
    sigma[ox] = oy
    return DistanceResult(
        root(cost.mean(), m.p), "hilbert", assignment=Assignment(sigma)
    )
