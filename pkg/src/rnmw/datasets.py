"""Bundled example data and plain-text lifetime file parsing."""
import importlib.resources

import numpy as np

from .errors import DomainError
from .inference import Dataset

__all__ = ["AARSET", "aarset", "aarset_path", "load_lifetimes"]

# lifetimes of 50 devices, a standard complete sample with a bathtub-shaped
# empirical hazard
AARSET = np.array([
    0.1, 0.2, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 3.0, 6.0,
    7.0, 11.0, 12.0, 18.0, 18.0, 18.0, 18.0, 18.0, 21.0, 32.0,
    36.0, 40.0, 45.0, 46.0, 47.0, 50.0, 55.0, 60.0, 63.0, 63.0,
    67.0, 67.0, 67.0, 67.0, 72.0, 75.0, 79.0, 82.0, 82.0, 83.0,
    84.0, 84.0, 84.0, 85.0, 85.0, 85.0, 85.0, 85.0, 86.0, 86.0,
])


def aarset():
    """The bundled device-lifetime sample as a complete dataset."""
    return Dataset.from_arrays(AARSET, name="aarset")


def aarset_path():
    """Filesystem path of the bundled CSV copy (for CLI examples)."""
    return str(importlib.resources.files("rnmw").joinpath("data/aarset.csv"))


def load_lifetimes(path, name=None):
    """Parse a delimited text file of lifetimes.

    One column: complete data.  Two columns: time and status, where status
    1 marks a failure and 0 a right-censored time.  A single header line is
    auto-detected; '#' lines and blank lines are skipped.  Values use dot
    decimals.  Malformed or empty files raise DomainError.
    """
    rows = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise DomainError("cannot read %s: %s" % (path, exc))
    for lineno, line in enumerate(lines, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        fields = [f.strip() for f in (text.split(",") if "," in text else text.split())]
        fields = [f for f in fields if f]
        if not fields:
            continue
        if not rows:
            # a first row that does not parse as numbers is a header
            try:
                [float(f) for f in fields]
            except ValueError:
                continue
        rows.append((lineno, fields))
    if not rows:
        raise DomainError("no data rows in %s" % (path,))
    width = len(rows[0][1])
    if width not in (1, 2):
        raise DomainError("%s line %d: expected 1 or 2 columns, found %d"
                          % (path, rows[0][0], width))
    times = []
    events = []
    for lineno, fields in rows:
        if len(fields) != width:
            raise DomainError("%s line %d: inconsistent column count" % (path, lineno))
        try:
            t = float(fields[0])
        except ValueError:
            raise DomainError("%s line %d: bad time value %r" % (path, lineno, fields[0]))
        times.append(t)
        if width == 2:
            try:
                s = int(float(fields[1]))
            except ValueError:
                raise DomainError("%s line %d: bad status value %r" % (path, lineno, fields[1]))
            if s not in (0, 1):
                raise DomainError("%s line %d: status must be 0 or 1, got %r"
                                  % (path, lineno, fields[1]))
            events.append(s)
    return Dataset.from_arrays(np.asarray(times), np.asarray(events) if events else None,
                               name=name if name is not None else str(path))
