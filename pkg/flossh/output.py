# 786
# Flossh source: output.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


from typing import List, Optional, Tuple, TextIO, Union
import datetime
import math

from .common import log, FlosshException
from .config import RunConfig, dump_config
from .sweep import SweepResult, SweepRow
from .version import __version__ as version


OUTPUT_COLS = ["g", "quasienergy", "population", "edge_weight", "state_index"]
"""Output column descriptions"""

FLOAT_FORMAT = "{:.12g}"
"""Decimal representation of real values (12 significant digits)."""


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else FLOAT_FORMAT.format(x)


def header_lines(
    result: SweepResult, config: Optional[RunConfig] = None, reproducible=False
) -> List[str]:
    """:returns: `#`-prefixed metadata lines describing the run."""

    lines = [f"flossh v{version}"]
    if not reproducible:
        lines.append(f"generated: {datetime.datetime.now().isoformat()}")
    for k, v in result.metadata.items():
        if k != "version":
            lines.append(f"{k}: {v}")
    if config is not None:
        lines.append("config:")
        lines += ["  " + ln for ln in dump_config(config).splitlines()]
        if config.defaults_applied:
            lines.append("defaults: " + ", ".join(config.defaults_applied))
    for g, err in result.failures.items():
        lines.append(f"failed: g={_fmt(g)}: {err}")
    return [f"# {ln}" for ln in lines]


def write_spectrum_csv(
    result: SweepResult,
    path: Union[str, TextIO],
    config: Optional[RunConfig] = None,
    reproducible: bool = False,
):
    """
    Write a sweep as CSV with metadata comment lines.

    :param result: Sweep result.
    :param path: Output file name or an open text stream.
    :param config: Run configuration echoed into the metadata.
    :param reproducible: Suppress the timestamp line.
    """

    def write(f):
        for ln in header_lines(result, config, reproducible):
            print(ln, file=f)
        print(",".join(OUTPUT_COLS), file=f)
        for r in result.rows:
            print(
                ",".join(
                    [
                        _fmt(r.g),
                        _fmt(r.quasienergy),
                        _fmt(r.population),
                        _fmt(r.edge_weight),
                        str(r.state_index),
                    ]
                ),
                file=f,
            )

    if isinstance(path, str):
        with open(path, "w") as f:
            write(f)
        log.debug("[output] wrote {} rows to {}", len(result.rows), path)
    else:
        write(path)


def read_spectrum_csv(path: str) -> Tuple[List[SweepRow], List[str]]:
    """
    Read a file written by :py:func:`write_spectrum_csv`.

    :returns: Data rows and the metadata comment lines (without `# `).
    """

    rows, comments = [], []
    with open(path) as f:
        header_seen = False
        for ln in f:
            ln = ln.rstrip("\n")
            if ln.startswith("#"):
                comments.append(ln[2:])
                continue
            if not header_seen:
                if ln.split(",") != OUTPUT_COLS:
                    raise FlosshException(f"{path} is not a spectrum file")
                header_seen = True
                continue
            if not ln:
                continue
            g, e, p, wt, i = ln.split(",")
            rows.append(SweepRow(float(g), float(e), float(p), float(wt), int(i)))
    return rows, comments


def write_field_csv(t, e, f: TextIO):
    """Write two-column `t,E` field samples."""
    print("t,E", file=f)
    for ti, ei in zip(t, e):
        print(f"{_fmt(ti)},{_fmt(ei)}", file=f)
