# 786
# Flossh source: config.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


from typing import Any, Dict, List, Optional
import os
import os.path
import numpy as np
import yaml

from .common import log, script_path, ConfigError, ContractError, FlosshException
from .lattice import ChainGeometry
from .drive import DriveSpec, DriveKind
from .specfun import QuadratureSettings
from .floquet import POPULATION_KINDS
from .sweep import SWEEP_METHODS


SECTIONS = {
    "geometry": ["n_dimers", "v", "w", "r"],
    "drive": ["kind", "omega", "c", "omega_env", "phase_offset", "window_offset"],
    "sweep": ["g_min", "g_max", "g_steps"],
    "floquet": [
        "m_max",
        "method",
        "samples",
        "rule",
        "population",
        "fold",
        "energy_window",
        "weight_threshold",
        "edge_cells",
    ],
    "output": ["path", "format"],
}
"""Configuration sections and their keys."""

OPTIONAL_FLOATS = ("c", "omega_env")
"""Keys without a default value."""


def _to_bool(v) -> bool:
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ValueError(v)


class RunConfig:
    """Run parameters of a Floquet computation (units: ``w = ħ = 1``)."""

    def __init__(self, **kwargs):
        # geometry
        self.n_dimers = 20
        """Number of dimers `N`. Default: 20"""

        self.v = 0.3
        """Intra-cell hopping. Default: 0.3 (static topological phase)"""

        self.w = 1.0
        """Inter-cell hopping (energy unit). Default: 1"""

        self.r = 0.0
        """Dimer separation ratio ``b/a``. Default: 0"""

        # drive
        self.kind = "monochromatic"
        """Drive protocol: `monochromatic`, `gaussian` or `beating`."""

        self.omega = 10.0
        """Carrier frequency ``ħΩ/w``. Default: 10 (off-resonant regime)"""

        self.c = None
        """Gaussian width ratio ``Ω/Γ``. Required for Gaussian pulses."""

        self.omega_env = None
        """Envelope frequency ``ħω/w``. Required for beating drives."""

        self.phase_offset = 0.0
        """Constant offset of the phase integral (gauge). Default: 0"""

        self.window_offset = 0.0
        """Gaussian quadrature window offset in periods. Default: 0"""

        # sweep
        self.g_min = 0.0
        """Smallest coupling. Default: 0"""

        self.g_max = 8.0
        """Largest coupling. Default: 8"""

        self.g_steps = 400
        """Number of grid intervals (the grid has `g_steps + 1` points). Default: 400"""

        # floquet
        self.m_max = 20
        """Replica cutoff `M`. Default: 20"""

        self.method = "analytic"
        """Assembly method: `analytic`, `numeric` or `effective`. Default: analytic"""

        self.samples = 1024
        """Quadrature samples per period. Default: 1024"""

        self.rule = "simpson"
        """Quadrature rule: `simpson` or `trapezoid`. Default: simpson"""

        self.population = "central"
        """Population definition: `central` (``p_{α,0}``) or `max`."""

        self.fold = True
        """Fold quasienergies into the first zone. Default: `True`"""

        self.energy_window = 0.05
        """Edge-state energy window (units of `w`). Default: 0.05"""

        self.weight_threshold = 0.6
        """Edge-state weight threshold. Default: 0.6"""

        self.edge_cells = 2
        """Unit cells per chain end counted as edge. Default: 2"""

        # output
        self.path = ""
        """Output CSV location (empty for standard output)."""

        self.format = "csv"
        """Output format. Only `csv` is supported."""

        self.defaults_applied: List[str] = []
        """Keys (as `section.key`) that kept their default value."""

        self.update(kwargs)

    def update(self, kwargs: Dict[str, Any]) -> Dict[str, Any]:
        """
        Set parameters from `kwargs` with type casting to the default's type.

        :raises: :py:class:`flossh.common.ConfigError` for unknown keys or values
            that cannot be cast.
        """
        params = {}
        for n, v in kwargs.items():
            if n not in self.__dict__ or n == "defaults_applied":
                raise ConfigError("unknown parameter", n)
            if v is None:
                continue
            try:
                if n in OPTIONAL_FLOATS:
                    self.__dict__[n] = float(v)
                elif isinstance(self.__dict__[n], bool):
                    self.__dict__[n] = _to_bool(v)
                else:
                    typ = type(self.__dict__[n])
                    if typ is int and float(v) != int(float(v)):
                        raise ValueError(v)
                    self.__dict__[n] = typ(float(v)) if typ is int else typ(v)
            except (ValueError, TypeError, OverflowError):
                raise ConfigError(f"invalid value {v!r}", n) from None
            params[n] = self.__dict__[n]
        ps = "; ".join(f"{n}={v}" for n, v in params.items())
        log.debug(f"[params] {ps}")
        return params

    def values(self) -> Dict[str, Dict[str, Any]]:
        """:returns: Sectioned parameter values."""
        return {s: {k: self.__dict__[k] for k in keys} for s, keys in SECTIONS.items()}

    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.values() == other.values()

    def __repr__(self):
        return f"RunConfig({self.values()})"

    def validate(self) -> "RunConfig":
        """
        Check every parameter against the invariants of the modules it feeds.

        :raises: :py:class:`flossh.common.ConfigError` naming the violated invariant.
        """
        if self.n_dimers < 2:
            raise ConfigError("N >= 2 required", "geometry.n_dimers")
        try:
            self.geometry()
        except ContractError as ex:
            key = str(ex).split(" ", 1)[0]
            if key not in SECTIONS["geometry"]:
                key = "n_dimers"
            raise ConfigError(str(ex), f"geometry.{key}") from None
        try:
            self.drive()
        except ContractError as ex:
            field = "drive"
            if "c > 0" in str(ex):
                field = "drive.c"
            elif "omega_env" in str(ex):
                field = "drive.omega_env"
            elif "kind" in str(ex):
                field = "drive.kind"
            elif "omega_drive" in str(ex):
                field = "drive.omega"
            raise ConfigError(str(ex), field) from None
        if not 0 <= self.g_min <= self.g_max:
            raise ConfigError("0 <= g_min <= g_max required", "sweep.g_min")
        if self.g_steps < 0:
            raise ConfigError("g_steps >= 0 required", "sweep.g_steps")
        if self.m_max < 0:
            raise ConfigError("m_max >= 0 required", "floquet.m_max")
        if self.method not in SWEEP_METHODS:
            raise ConfigError(
                f"expected one of {', '.join(SWEEP_METHODS)}", "floquet.method"
            )
        if self.population not in POPULATION_KINDS:
            raise ConfigError(
                f"expected one of {', '.join(POPULATION_KINDS)}", "floquet.population"
            )
        try:
            self.quadrature()
        except ContractError as ex:
            raise ConfigError(str(ex), "floquet.samples") from None
        if not self.energy_window > 0:
            raise ConfigError("energy_window > 0 required", "floquet.energy_window")
        if not 0 < self.weight_threshold < 1:
            raise ConfigError(
                "0 < weight_threshold < 1 required", "floquet.weight_threshold"
            )
        if not 1 <= self.edge_cells <= self.n_dimers / 2:
            raise ConfigError("1 <= edge_cells <= N/2 required", "floquet.edge_cells")
        if self.format != "csv":
            raise ConfigError("only csv output is supported", "output.format")
        return self

    def geometry(self) -> ChainGeometry:
        return ChainGeometry(self.n_dimers, self.v, self.w, self.r)

    def drive(self, g: float = 0.0) -> DriveSpec:
        try:
            kind = DriveKind(str(self.kind).lower())
        except ValueError:
            raise ContractError(f"Unknown drive kind {self.kind}") from None
        return DriveSpec(
            kind,
            g,
            self.omega,
            self.c if kind == DriveKind.GAUSSIAN else None,
            self.omega_env if kind == DriveKind.BEATING else None,
            self.phase_offset,
            self.window_offset,
        )

    def quadrature(self) -> QuadratureSettings:
        return QuadratureSettings(self.samples, self.rule)

    def g_grid(self) -> np.ndarray:
        """:returns: ``g_steps + 1`` equidistant couplings in ``[g_min, g_max]``."""
        return np.linspace(self.g_min, self.g_max, self.g_steps + 1)

    @staticmethod
    def load(config: Optional[str] = None, params: Optional[Dict] = None):
        """
        Load a configuration from a YAML file or a bundled preset and apply
        overrides.

        :param config: Path to a YAML file or a preset name (e.g. `trivial-r06`).
            `None` selects the defaults.
        :param params: Overrides in `section.key` (or bare `key`) form.
        """
        text = ""
        if config:
            if os.path.exists(config) and os.path.isfile(config):
                path = config
            else:
                name = os.path.splitext(os.path.basename(config))[0].lower()
                path = script_path(f"flossh.resources.configs/{name}.yml")
                if not os.path.exists(path):
                    raise ConfigError(f"cannot find configuration {config}")
            log.debug("[config] loading {}", path)
            with open(path) as f:
                text = f.read()
        return load_config(text, params)


def load_config(text: str, params: Optional[Dict] = None) -> RunConfig:
    """
    Parse and validate a sectioned YAML configuration.

    :param text: YAML document with sections `geometry`, `drive`, `sweep`,
        `floquet` and `output`. An empty document selects all defaults.
    :param params: Additional overrides (`section.key` or bare `key`).
    :raises: :py:class:`flossh.common.ConfigError` with line or field context.
    """

    try:
        doc = yaml.safe_load(text) if text and text.strip() else {}
    except yaml.YAMLError as ex:
        mark = getattr(ex, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(ex, "problem", None) or str(ex)
        raise ConfigError(f"cannot parse configuration: {problem}", line=line) from None
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a mapping of sections")

    flat: Dict[str, Any] = {}
    for section, items in doc.items():
        if section not in SECTIONS:
            raise ConfigError("unknown section", str(section))
        if items is None:
            continue
        if not isinstance(items, dict):
            raise ConfigError("section must be a mapping", str(section))
        for k, v in items.items():
            if k not in SECTIONS[section]:
                raise ConfigError("unknown key", f"{section}.{k}")
            flat[k] = v
    for k, v in (params or {}).items():
        section, _, key = k.rpartition(".")
        key = key.replace("-", "_")
        if section and (section not in SECTIONS or key not in SECTIONS[section]):
            raise ConfigError("unknown key", k)
        if not any(key in keys for keys in SECTIONS.values()):
            raise ConfigError("unknown key", k)
        flat[key] = v

    cfg = RunConfig()
    try:
        cfg.update(flat)
    except ConfigError as ex:
        field = next(f"{s}.{ex.field}" for s, ks in SECTIONS.items() if ex.field in ks)
        raise ConfigError(str(ex).split(": ", 1)[-1], field) from None
    cfg.defaults_applied = [
        f"{s}.{k}"
        for s, keys in SECTIONS.items()
        for k in keys
        if flat.get(k) is None and k not in OPTIONAL_FLOATS
    ]
    for key in cfg.defaults_applied:
        log.trace("[config] default {}= {}", key, cfg.__dict__[key.split(".")[1]])
    try:
        return cfg.validate()
    except FlosshException as ex:
        if isinstance(ex, ConfigError):
            raise
        raise ConfigError(str(ex)) from None


def dump_config(config: RunConfig) -> str:
    """:returns: YAML serialization accepted by :py:func:`load_config`."""
    return yaml.safe_dump(config.values(), default_flow_style=False, sort_keys=False)
