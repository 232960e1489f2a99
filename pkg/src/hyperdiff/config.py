"""Plain-text ``key = value`` files for materials and cylinder geometry.

Example material file::

    # rat artery
    material = holzapfel
    c10 = 2.212e4
    d = 1e-6
    k1 = 206
    k2 = 1.465
    fiber_angle = 39.76

Blank lines and ``#`` comments are ignored. Keys are case-insensitive.
"""
from __future__ import annotations

from pathlib import Path

from .errors import ConfigError
from .materials import Holzapfel, NeoHookean, fiber_pair

_MATERIAL_KEYS = {
    "neo-hookean": {"c10", "d"},
    "holzapfel": {"c10", "d", "k1", "k2", "fiber_angle"},
}


def parse_key_values(text: str, source: str = "<string>") -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        out[key.lower()] = value
    return out


def read_key_values(path) -> dict[str, str]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return parse_key_values(text, str(path))


def _floats(values: dict[str, str], keys, source) -> dict[str, float]:
    out = {}
    for k in keys:
        if k in values:
            try:
                out[k] = float(values[k])
            except ValueError:
                raise ConfigError(f"{source}: {k} = {values[k]!r} is not a number") from None
    return out


def material_from_mapping(values: dict[str, str], source: str = "<material>"):
    kind = values.get("material", "neo-hookean").lower().replace("_", "-")
    if kind not in _MATERIAL_KEYS:
        raise ConfigError(f"{source}: unknown material {kind!r}")
    extra = set(values) - _MATERIAL_KEYS[kind] - {"material"}
    if extra:
        raise ConfigError(f"{source}: unknown keys for {kind}: {sorted(extra)}")
    nums = _floats(values, _MATERIAL_KEYS[kind], source)
    try:
        if kind == "neo-hookean":
            return NeoHookean(**nums)
        angle = nums.pop("fiber_angle", None)
        if angle is not None:
            nums["a0"], nums["g0"] = fiber_pair(angle)
        return Holzapfel(**nums)
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_material(path):
    return material_from_mapping(read_key_values(path), str(path))


def load_geometry(path):
    from .inflation import CylinderGeometry

    values = read_key_values(path)
    keys = {"inner_radius", "outer_radius", "axial_stretch"}
    extra = set(values) - keys
    if extra:
        raise ConfigError(f"{path}: unknown geometry keys {sorted(extra)}")
    try:
        return CylinderGeometry(**_floats(values, keys, str(path)))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
