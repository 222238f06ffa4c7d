"""Render mode-trace CSV files into styled line figures.

Input is the four-column-pair schema written by the oscillator CLI's
``figures`` command: a ``t`` column followed by ``<mode>_re``/``<mode>_im``
pairs for exactly two modes.  Styling follows the fixed convention: real
parts solid, imaginary parts dotted; first mode red, second mode blue.

The renderer is strictly a presentation layer: it never smooths, resamples
or otherwise alters the data.  Singular mode pairs are handled with a
y-axis clip (the data itself is untouched; matplotlib clips visually), and
every render verifies a checksum of the plotted line arrays against a
checksum of the parsed CSV columns before writing the image.  Output files
are written atomically (temp file + rename), so a failed render leaves no
partial file behind.
"""

from __future__ import annotations

import csv
import hashlib
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

__all__ = ["SchemaError", "FigureSpec", "RenderResult", "load_figure_csv", "data_checksum", "render"]

FIGSIZE = (10.0, 6.0)
DPI = 150
COLORS = ("red", "blue")
REAL_STYLE = "-"
IMAG_STYLE = ":"


class SchemaError(ValueError):
    """CSV does not match the expected mode-trace schema."""


@dataclass(frozen=True)
class FigureSpec:
    """One figure: its input CSV, output path, and optional y-clip."""

    input_csv: Path
    output_path: Path
    clip: Optional[float] = None

    def __post_init__(self) -> None:
        if self.clip is not None and self.clip <= 0:
            raise ValueError("clip must be positive")


@dataclass(frozen=True)
class RenderResult:
    output_path: Path
    mode_labels: Tuple[str, str]
    checksum: str
    n_clipped_samples: int
    figure: object = field(repr=False, default=None)


def load_figure_csv(path: Path) -> Tuple[np.ndarray, Dict[str, np.ndarray]]:
    """Parse and validate a mode-trace CSV.

    Returns (times, ordered {label: complex array}).  Raises SchemaError on
    a missing/extra column, an empty table, or unparsable numbers.
    Trailing ``#`` comment lines (row-drop footers) are ignored.
    """
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise SchemaError(f"{path}: empty file")
    header, data = rows[0], rows[1:]
    if not data:
        raise SchemaError(f"{path}: no data rows")
    if len(header) != 5 or header[0] != "t":
        raise SchemaError(f"{path}: expected columns t,<A>_re,<A>_im,<B>_re,<B>_im, got {header}")
    labels: List[str] = []
    for i in (1, 3):
        re_col, im_col = header[i], header[i + 1]
        if not re_col.endswith("_re") or im_col != re_col[:-3] + "_im":
            raise SchemaError(f"{path}: column pair {re_col!r}/{im_col!r} is not a re/im pair")
        labels.append(re_col[:-3])
    try:
        table = np.array([[float(x) for x in row] for row in data], dtype=float)
    except (ValueError, IndexError) as exc:
        raise SchemaError(f"{path}: unparsable data row ({exc})") from exc
    if table.shape[1] != 5:
        raise SchemaError(f"{path}: ragged rows")
    times = table[:, 0]
    values = {
        labels[0]: table[:, 1] + 1j * table[:, 2],
        labels[1]: table[:, 3] + 1j * table[:, 4],
    }
    return times, values


def data_checksum(times: np.ndarray, values: Dict[str, np.ndarray]) -> str:
    """SHA-256 over the exact float64 bytes of every plotted array."""
    h = hashlib.sha256()
    for label in values:
        for component in (np.real(values[label]), np.imag(values[label])):
            h.update(np.ascontiguousarray(times, dtype=np.float64).tobytes())
            h.update(np.ascontiguousarray(component, dtype=np.float64).tobytes())
    return h.hexdigest()


def _lines_checksum(lines) -> str:
    h = hashlib.sha256()
    for line in lines:
        h.update(np.ascontiguousarray(line.get_xdata(), dtype=np.float64).tobytes())
        h.update(np.ascontiguousarray(line.get_ydata(), dtype=np.float64).tobytes())
    return h.hexdigest()


def render(spec: FigureSpec, keep_figure: bool = False) -> RenderResult:
    """Render one figure and write it atomically as PNG.

    Returns the result record with the verified data checksum and the count
    of samples beyond the clip (annotated on the figure).  With
    ``keep_figure`` the live matplotlib Figure is attached for inspection;
    the caller closes it.
    """
    times, values = load_figure_csv(spec.input_csv)
    labels = tuple(values)
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    try:
        data_lines = []
        for label, color in zip(labels, COLORS):
            ln_re, = ax.plot(
                times, np.real(values[label]), REAL_STYLE, color=color, lw=1.1,
                label=f"Re {label}",
            )
            ln_im, = ax.plot(
                times, np.imag(values[label]), IMAG_STYLE, color=color, lw=1.1,
                label=f"Im {label}",
            )
            data_lines += [ln_re, ln_im]

        n_clipped = 0
        if spec.clip is not None:
            over = np.zeros(times.shape, dtype=bool)
            for label in labels:
                over |= np.abs(np.real(values[label])) > spec.clip
                over |= np.abs(np.imag(values[label])) > spec.clip
            n_clipped = int(np.count_nonzero(over))
            ax.set_ylim(-spec.clip, spec.clip)
            # annotate spike positions: one marker per contiguous run
            idx = np.flatnonzero(over)
            if idx.size:
                starts = idx[np.flatnonzero(np.diff(idx, prepend=idx[0] - 2) > 1)]
                ends = idx[np.flatnonzero(np.diff(idx, append=idx[-1] + 2) > 1)]
                for a, b in zip(starts, ends):
                    ax.axvline(0.5 * (times[a] + times[b]), color="0.6", ls="--", lw=0.8)
                ax.annotate(
                    f"{n_clipped} samples beyond ±{spec.clip:g}",
                    xy=(0.99, 0.01), xycoords="axes fraction",
                    ha="right", va="bottom", fontsize=8, color="0.4",
                )

        ax.set_xlabel("t")
        ax.legend(loc="upper right", fontsize=9)
        ax.grid(True, alpha=0.25)
        fig.tight_layout()

        checksum = _lines_checksum(data_lines)
        expected = data_checksum(times, values)
        if checksum != expected:
            raise RuntimeError("plotted arrays differ from the CSV columns")

        out = Path(spec.output_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(suffix=".png", dir=str(out.parent))
        os.close(fd)
        try:
            fig.savefig(tmp_name, dpi=DPI)
            os.replace(tmp_name, out)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
        return RenderResult(out, (labels[0], labels[1]), checksum, n_clipped,
                            fig if keep_figure else None)
    finally:
        if not keep_figure:
            plt.close(fig)
