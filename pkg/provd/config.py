# provd/config.py
import json
from importlib.resources import files


def load_defaults(section=None, **overrides):
    """
    Load the packaged defaults, optionally one section of them.

    Parameters:
        section (str, optional):
            Top-level key of ``defaults.json`` ("fuzz", "omega", "gllin",
            "hilbert"). If None, the whole mapping is returned.
        **overrides:
            Values replacing the packaged ones (only meaningful with a section).

    Returns:
        dict: A fresh copy of the requested defaults.
    """
    path = files("provd.templates").joinpath("defaults.json")
    with path.open("r", encoding="utf-8") as f:
        data = json.load(f)

    if section is None:
        return data
    if section not in data:
        raise KeyError(
            f"Unknown defaults section '{section}'. "
            f"Available: {', '.join(sorted(data))}"
        )
    values = dict(data[section])
    for key, value in overrides.items():
        if key not in values:
            raise KeyError(f"Unknown setting '{key}' in section '{section}'.")
        if value is not None:
            values[key] = value
    return values
