import csv
import math

import pytest
from PIL import Image

from figure_renderer import (
    FigureSpec,
    SchemaError,
    data_checksum,
    load_figure_csv,
    render,
)
from figure_renderer.render import DPI, FIGSIZE


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(header)
        w.writerows(rows)


@pytest.fixture
def sample_csv(tmp_path):
    # two synthetic modes with a spike in the second one
    path = tmp_path / "fig1.csv"
    rows = []
    for i in range(200):
        t = -3.0 + i * 0.03
        a = complex(math.cos(t), math.sin(t))
        denom = math.cos(t) if abs(math.cos(t)) > 1e-3 else 1e-3
        b = complex(1.0 / denom, 0.3 * t)
        rows.append([f"{t!r}", f"{a.real!r}", f"{a.imag!r}", f"{b.real!r}", f"{b.imag!r}"])
    write_csv(path, ["t", "U1_re", "U1_im", "U2_re", "U2_im"], rows)
    return path


def test_load_schema_and_labels(sample_csv):
    times, values = load_figure_csv(sample_csv)
    assert list(values) == ["U1", "U2"]
    assert times.shape == (200,)
    assert values["U1"].dtype == complex


def test_render_styling_contract(sample_csv, tmp_path):
    spec = FigureSpec(sample_csv, tmp_path / "fig1.png")
    result = render(spec, keep_figure=True)
    try:
        ax = result.figure.axes[0]
        data_lines = ax.lines[:4]
        assert [ln.get_color() for ln in data_lines] == ["red", "red", "blue", "blue"]
        assert [ln.get_linestyle() for ln in data_lines] == ["-", ":", "-", ":"]
        assert [ln.get_label() for ln in data_lines] == ["Re U1", "Im U1", "Re U2", "Im U2"]
    finally:
        import matplotlib.pyplot as plt

        plt.close(result.figure)
    assert result.output_path.exists()


def test_checksum_invariant(sample_csv, tmp_path):
    # plotted arrays must hash identically to the parsed CSV columns
    times, values = load_figure_csv(sample_csv)
    expected = data_checksum(times, values)
    result = render(FigureSpec(sample_csv, tmp_path / "out.png"))
    assert result.checksum == expected


def test_clip_does_not_alter_data(sample_csv, tmp_path):
    times, values = load_figure_csv(sample_csv)
    expected = data_checksum(times, values)
    result = render(FigureSpec(sample_csv, tmp_path / "clipped.png", clip=5.0), keep_figure=True)
    try:
        assert result.checksum == expected  # checksum over the raw, unclipped arrays
        assert result.n_clipped_samples > 0
        ax = result.figure.axes[0]
        assert ax.get_ylim() == (-5.0, 5.0)
        # spike markers were annotated
        assert len(ax.lines) > 4
    finally:
        import matplotlib.pyplot as plt

        plt.close(result.figure)


def test_image_dimensions_snapshot(sample_csv, tmp_path):
    out = tmp_path / "dims.png"
    render(FigureSpec(sample_csv, out))
    with Image.open(out) as img:
        assert img.size == (int(FIGSIZE[0] * DPI), int(FIGSIZE[1] * DPI))


def test_missing_column_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    write_csv(path, ["t", "U1_re", "U1_im", "U2_re"], [["0", "1", "2", "3"]])
    with pytest.raises(SchemaError):
        load_figure_csv(path)


def test_mismatched_pair_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    write_csv(path, ["t", "U1_re", "U2_im", "U2_re", "U2_im"], [["0", "1", "2", "3", "4"]])
    with pytest.raises(SchemaError):
        load_figure_csv(path)


def test_empty_csv_rejected(tmp_path):
    path = tmp_path / "empty.csv"
    write_csv(path, ["t", "A_re", "A_im", "B_re", "B_im"], [])
    with pytest.raises(SchemaError):
        load_figure_csv(path)


def test_unparsable_row_rejected(tmp_path):
    path = tmp_path / "garbled.csv"
    write_csv(
        path,
        ["t", "A_re", "A_im", "B_re", "B_im"],
        [["0", "1", "2", "3", "4"], ["0.1", "x", "2", "3", "4"]],
    )
    with pytest.raises(SchemaError):
        load_figure_csv(path)


def test_footer_comment_ignored(tmp_path):
    path = tmp_path / "footer.csv"
    with open(path, "w", newline="") as fh:
        fh.write("t,A_re,A_im,B_re,B_im\r\n")
        fh.write("0.0,1.0,2.0,3.0,4.0\r\n")
        fh.write("# dropped_rows: 3\r\n")
    times, values = load_figure_csv(path)
    assert times.shape == (1,)


def test_malformed_csv_leaves_no_partial_file(tmp_path):
    path = tmp_path / "bad.csv"
    write_csv(path, ["t", "A_re", "A_im"], [["0", "1", "2"]])
    out_dir = tmp_path / "out"
    with pytest.raises(SchemaError):
        render(FigureSpec(path, out_dir / "bad.png"))
    assert not (out_dir / "bad.png").exists()
    assert not list(out_dir.glob("*.png")) if out_dir.exists() else True


def test_cli_batch(tmp_path, capsys):
    from figure_renderer.cli import main

    csv_dir = tmp_path / "csv"
    out_dir = tmp_path / "png"
    csv_dir.mkdir()
    rows = [["0.0", "1.0", "0.0", "2.0", "0.5"], ["0.5", "0.9", "0.1", "30.0", "0.4"]]
    write_csv(csv_dir / "fig1.csv", ["t", "U1_re", "U1_im", "U2_re", "U2_im"], rows)
    write_csv(csv_dir / "fig2.csv", ["t", "V1_re", "V1_im", "V2_re", "V2_im"], rows)
    code = main([str(csv_dir), str(out_dir)])
    out = capsys.readouterr().out
    assert code == 0
    assert (out_dir / "fig1.png").exists() and (out_dir / "fig2.png").exists()
    assert "clip" in out  # the V pair was clipped by default


def test_cli_error_exit(tmp_path, capsys):
    from figure_renderer.cli import main

    csv_dir = tmp_path / "csv"
    csv_dir.mkdir()
    write_csv(csv_dir / "fig1.csv", ["t", "bad"], [["0", "1"]])
    code = main([str(csv_dir), str(tmp_path / "png")])
    assert code == 1
    assert "error" in capsys.readouterr().err
    assert not (tmp_path / "png" / "fig1.png").exists()


def test_cli_no_inputs(tmp_path, capsys):
    from figure_renderer.cli import main

    empty = tmp_path / "none"
    empty.mkdir()
    assert main([str(empty), str(tmp_path / "out")]) == 1
