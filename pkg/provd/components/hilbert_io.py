# hilbert_io.py
"""
JSON codec for Hilbert proofs.

Schema::

    {"system": str,
     "lines": [{"formula": str, "just": "axiom", "scheme": str,
                "gamma": [str], "delta": [str], "subproof": {...}}
               | {"formula": str, "just": "mp", "from": int, "imp": int}
               | {"formula": str, "just": "nec", "from": int}]}

``gamma``, ``delta`` and ``subproof`` are optional on axiom lines.
"""

import json

from provd.errors import SerializationError
from provd.formula import parse_formula, print_formula
from provd.hilbert import MP, Axiom, HilbertLine, HilbertProof, Nec, Scheme, SystemId


def _line_to_dict(line):
    data = {"formula": print_formula(line.formula)}
    just = line.just
    if type(just) is MP:
        data.update({"just": "mp", "from": just.premise, "imp": just.imp})
    elif type(just) is Nec:
        data.update({"just": "nec", "from": just.premise})
    else:
        data.update({"just": "axiom", "scheme": just.scheme.value})
        if just.gamma is not None:
            data["gamma"] = [print_formula(f) for f in just.gamma]
        if just.delta is not None:
            data["delta"] = [print_formula(f) for f in just.delta]
        if just.subproof is not None:
            data["subproof"] = hilbert_to_dict(just.subproof)
    return data


def _line_from_dict(data, index):
    try:
        formula = parse_formula(data["formula"])
        kind = data["just"]
        if kind == "mp":
            just = MP(int(data["imp"]), int(data["from"]))
        elif kind == "nec":
            just = Nec(int(data["from"]))
        elif kind == "axiom":
            gamma = data.get("gamma")
            delta = data.get("delta")
            subproof = data.get("subproof")
            just = Axiom(
                Scheme(data["scheme"]),
                tuple(parse_formula(t) for t in gamma) if gamma is not None else None,
                tuple(parse_formula(t) for t in delta) if delta is not None else None,
                hilbert_from_dict(subproof) if subproof is not None else None,
            )
        else:
            raise SerializationError(f"Line {index}: unknown justification '{kind}'.")
    except KeyError as exc:
        raise SerializationError(f"Line {index} lacks {exc}.") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SerializationError):
            raise
        raise SerializationError(f"Line {index}: {exc}") from exc
    return HilbertLine(formula, just)


def hilbert_to_dict(p):
    return {"system": p.system.value, "lines": [_line_to_dict(line) for line in p.lines]}


def hilbert_from_dict(data, system=None):
    if not isinstance(data, dict) or "lines" not in data:
        raise SerializationError("A Hilbert proof needs 'lines'.")
    system = SystemId.coerce(system if system is not None else data.get("system", ""))
    lines = tuple(_line_from_dict(line, i) for i, line in enumerate(data["lines"]))
    return HilbertProof(system, lines)


def dump_hilbert(p, path):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(hilbert_to_dict(p), f, indent=2, ensure_ascii=False)
        f.write("\n")


def load_hilbert(path, system=None):
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise SerializationError(f"'{path}' is not valid JSON: {exc}") from exc
    return hilbert_from_dict(data, system)
