# 786
# Flossh source: common.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


from typing import Optional
import pkg_resources
import time
import logbook
import textwrap


log = logbook.Logger("Flossh")
"""Default console logger."""


HERMITIAN_TOLERANCE = 1e-12
"""Maximum entrywise defect ``|H - H^†|`` accepted by the eigensolver."""


NORM_TOLERANCE = 1e-10
"""Accepted deviation of the squared norm of a state from 1."""


class FlosshException(Exception):
    """Flossh exception class."""

    pass


class DomainError(FlosshException):
    """Argument lies outside the supported numeric domain of a routine."""

    pass


class ContractError(FlosshException):
    """Violated precondition or type invariant."""

    pass


class EvaluationError(FlosshException):
    """Non-finite value produced while sampling a function on a time grid."""

    def __init__(self, message: str, t: float):
        super().__init__(f"{message} (t= {t})")
        self.t = t
        """Time at which the evaluation failed."""


class NumericError(FlosshException):
    """Failure of a numerical kernel (e.g. eigensolver did not converge)."""

    pass


class AccuracyError(NumericError):
    """Numerical result is below the requested accuracy."""

    pass


class UnsupportedConfiguration(FlosshException):
    """Input is valid but not supported by the requested method."""

    pass


class ConfigError(FlosshException):
    """Invalid run configuration."""

    def __init__(self, message: str, field: Optional[str] = None, line=None):
        prefix = ""
        if field:
            prefix += f"{field}: "
        if line is not None:
            prefix = f"line {line}: " + prefix
        super().__init__(prefix + message)
        self.field = field
        self.line = line


def td(s: str) -> str:
    """
    Abbreviation for textwrap.dedent. Used for stripping indentation in multi-line
    docstrings.
    """
    return textwrap.dedent(s)


class Timing:
    """
    Context manager for timing code blocks. Prints the time spent in the function after
    it is completed.
    """

    def __init__(self, name="Block", fn=None):
        self.name = name
        self.fn = fn if fn else log.debug

    def __enter__(self):
        self.start = time.time()
        return self

    def __exit__(self, *_):
        self.end = time.time()
        self.fn(f"{self.name} took {self.end - self.start:.2f}s")


def script_path(key: str) -> str:
    """
    Obtain the full path of a resource.

    :param key: resource to be extracted in `path/file` format
        (e.g., `flossh.resources.configs/topological.yml`).
    :returns: Full path of the resource.
    :raises: :py:class:`flossh.common.FlosshException` if the resource name is
        invalid.
    """
    components = key.split("/")
    if len(components) < 2:
        raise FlosshException(f'"{key}"" is not valid resource name')
    return pkg_resources.resource_filename(components[0], "/".join(components[1:]))
