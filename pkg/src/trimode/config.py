"""Flat key-value configuration files.

Two kinds of parameter files are understood, distinguished by their keys:

* bare-system files (``omega1 = 1.3`` ...), optionally with complex mean
  fields (``alpha1 = 2+0j``), which are linearized on load;
* linearized files (``Omega1 = 1.3`` ...) naming the effective parameters
  directly (the key for the optical-optical coupling is ``lambda``).

Lines may be blank or ``#`` comments; every key must match a known field
name exactly, and unknown keys are an error.
"""

from .errors import ConfigError
from .model import LinearizedParams, MeanFields, SystemParams, linearize

__all__ = [
    "parse_kv_text",
    "load_system_params",
    "load_linearized_params",
    "load_params_file",
]

_SYSTEM_REAL = {
    "omega1": None,
    "omega2": None,
    "omega_m": 1.0,
    "g1": 0.0,
    "g2": 0.0,
    "G_cross": 0.0,
    "gamma_c1": 0.0,
    "gamma_c2": 0.0,
    "gamma_m": 0.0,
    "T_dim": 0.0,
}
_SYSTEM_COMPLEX = {"alpha1": 0j, "alpha2": 0j, "beta_mf": 0j}

_LINEAR_REAL = {
    "Omega1": None,
    "Omega2": None,
    "omega_m": 1.0,
    "G1": 0.0,
    "G2": 0.0,
    "lambda": 0.0,
    "gamma_c1": 0.0,
    "gamma_c2": 0.0,
    "gamma_m": 0.0,
    "T_dim": 0.0,
}


def parse_kv_text(text: str) -> dict:
    """``key = value`` lines to a string dict; comments and blanks skipped."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"line {lineno}: empty key or value in {raw!r}")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def _take(kv, schema, kind, convert):
    values = {}
    for key, default in schema.items():
        if key in kv:
            try:
                values[key] = convert(kv.pop(key))
            except ValueError as exc:
                raise ConfigError(f"bad value for {key!r}: {exc}") from exc
        elif default is None:
            raise ConfigError(f"missing required key {key!r} for {kind} parameters")
        else:
            values[key] = default
    return values


def load_system_params(path) -> tuple[SystemParams, MeanFields]:
    """Bare-system parameter file, with optional mean-field entries."""
    with open(path, encoding="utf-8") as fh:
        kv = parse_kv_text(fh.read())
    reals = _take(kv, _SYSTEM_REAL, "bare-system", float)
    cplx = _take(kv, _SYSTEM_COMPLEX, "bare-system", complex)
    if kv:
        raise ConfigError(f"unknown keys in {path}: {sorted(kv)}")
    try:
        params = SystemParams(**reals)
        fields = MeanFields(**cplx)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return params, fields


def load_linearized_params(path) -> LinearizedParams:
    """Linearized parameter file (keys matching the effective field names)."""
    with open(path, encoding="utf-8") as fh:
        kv = parse_kv_text(fh.read())
    reals = _take(kv, _LINEAR_REAL, "linearized", float)
    if kv:
        raise ConfigError(f"unknown keys in {path}: {sorted(kv)}")
    reals["lam"] = reals.pop("lambda")
    try:
        return LinearizedParams(**reals)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_params_file(path) -> LinearizedParams:
    """Load either file kind, linearizing the bare-system form."""
    with open(path, encoding="utf-8") as fh:
        kv = parse_kv_text(fh.read())
    if "Omega1" in kv or "Omega2" in kv:
        return load_linearized_params(path)
    if "omega1" in kv or "omega2" in kv:
        params, fields = load_system_params(path)
        return linearize(params, fields)
    raise ConfigError(
        f"{path} names neither 'Omega1' (linearized) nor 'omega1' (bare system)"
    )
