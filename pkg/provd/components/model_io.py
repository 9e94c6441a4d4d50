# model_io.py
"""
JSON codec for GL-models and their tail-limit extensions.

Schema::

    {"worlds": [str], "rel": [[str, str]], "val": {world: {var: bool}},
     "tail": {"attach": str, "prefix": [{var: bool}],
              "constant": {var: bool}, "limit": {var: bool}}}

``"tail"`` is optional. Countermodels add ``"world"``, the world at which
the sequent is refuted.
"""

import json

from provd.errors import SerializationError
from provd.kripke import Countermodel, KripkeModel, TailLimitModel, build_tail_limit, validate_model


def _valuation(v):
    return {name: bool(value) for name, value in sorted(v.items())}


def _base_to_dict(m):
    order = {w: i for i, w in enumerate(m.worlds)}
    rel = sorted(m.rel, key=lambda pair: (order[pair[0]], order[pair[1]]))
    return {
        "worlds": [str(w) for w in m.worlds],
        "rel": [[str(u), str(v)] for u, v in rel],
        "val": {str(w): _valuation(m.val[w]) for w in m.worlds},
    }


def model_to_dict(model):
    """Serialize a KripkeModel, TailLimitModel or Countermodel."""
    if isinstance(model, Countermodel):
        data = model_to_dict(model.model)
        data["world"] = model.world
        return data
    if isinstance(model, TailLimitModel):
        data = _base_to_dict(model.base)
        data["tail"] = {
            "attach": str(model.attach),
            "prefix": [_valuation(v) for v in model.tail_prefix],
            "constant": _valuation(model.tail_constant),
            "limit": _valuation(model.limit_val),
        }
        return data
    if isinstance(model, KripkeModel):
        return _base_to_dict(model)
    raise SerializationError(f"Cannot serialize {type(model).__name__} as a model.")


def model_from_dict(data):
    """
    Returns:
        KripkeModel or TailLimitModel: the relation is closed transitively
        and checked for irreflexivity.
    """
    try:
        worlds = list(data["worlds"])
        rel = [tuple(pair) for pair in data.get("rel", [])]
        val = data.get("val", {})
    except (KeyError, TypeError) as exc:
        raise SerializationError(f"A model needs 'worlds', 'rel' and 'val': {exc}") from exc
    if any(len(pair) != 2 for pair in rel):
        raise SerializationError("Every 'rel' entry must be a pair of worlds.")

    base = validate_model(worlds, rel, val)
    tail = data.get("tail")
    if tail is None:
        return base
    try:
        return build_tail_limit(
            base, tail["attach"], tail.get("prefix", []),
            tail.get("constant", {}), tail.get("limit", {}),
        )
    except KeyError as exc:
        raise SerializationError(f"The 'tail' object lacks {exc}.") from exc


def dump_model(model, path):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(model_to_dict(model), f, indent=2, ensure_ascii=False)
        f.write("\n")


def load_model(path):
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise SerializationError(f"'{path}' is not valid JSON: {exc}") from exc
    return model_from_dict(data)
