from .render import (
    FigureSpec,
    RenderResult,
    SchemaError,
    data_checksum,
    load_figure_csv,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "RenderResult",
    "SchemaError",
    "data_checksum",
    "load_figure_csv",
    "render",
    "__version__",
]
