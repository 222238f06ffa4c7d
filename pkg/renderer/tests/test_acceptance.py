"""Renderer acceptance: four styled images from real CSV data, checksums intact.

Consumes the oscillator CLI strictly through its external surface (the
``figures`` subcommand and its CSV schema); skipped when that CLI is not on
PATH, since the renderer itself has no dependency on it.
"""

import shutil
import subprocess

import pytest
from PIL import Image

from figure_renderer import FigureSpec, data_checksum, load_figure_csv, render
from figure_renderer.cli import main as render_main
from figure_renderer.render import DPI, FIGSIZE

PRODUCER = shutil.which("riccati-chirp")


def _line(name, ok, detail=""):
    print(f"[criterion 12] {name:<28} {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


@pytest.mark.skipif(PRODUCER is None, reason="oscillator CLI not installed")
def test_criterion_12_render_pipeline(tmp_path, capsys):
    csv_dir = tmp_path / "csv"
    out_dir = tmp_path / "png"
    proc = subprocess.run(
        [PRODUCER, "figures", "--omega0", "1", "--out", str(csv_dir), "--points", "2000"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr

    code = render_main([str(csv_dir), str(out_dir)])
    assert code == 0

    ok = True
    for name in ("fig1", "fig2", "fig3", "fig4"):
        png = out_dir / f"{name}.png"
        ok = ok and png.exists()
        with Image.open(png) as img:
            ok = ok and img.size == (int(FIGSIZE[0] * DPI), int(FIGSIZE[1] * DPI))

    # styling and checksum audited on one U figure and one V figure
    import matplotlib.pyplot as plt

    for name, expect_clip in (("fig1", False), ("fig4", True)):
        src = csv_dir / f"{name}.csv"
        times, values = load_figure_csv(src)
        clip = 10.0 if expect_clip else None
        result = render(FigureSpec(src, out_dir / f"audit_{name}.png", clip), keep_figure=True)
        try:
            ax = result.figure.axes[0]
            lines = ax.lines[:4]
            ok = ok and [ln.get_color() for ln in lines] == ["red", "red", "blue", "blue"]
            ok = ok and [ln.get_linestyle() for ln in lines] == ["-", ":", "-", ":"]
            ok = ok and result.checksum == data_checksum(times, values)
            if expect_clip:
                ok = ok and result.n_clipped_samples > 0
        finally:
            plt.close(result.figure)

    assert _line("render pipeline", ok, "4 images, styling + checksum audited")
