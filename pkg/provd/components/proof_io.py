# proof_io.py
"""
JSON codec for sequent proofs.

A proof file reads ``{"calculus": str, "root": node}`` where a node is
``{"seq": str, "rule": str, "ann": {...}, "premises": [node, ...]}``.
Sequents and formulas are stored in their parseable text form. An
optional ``"meta"`` object carries transformation metadata.
"""

import json

from provd.calculi import Annotation, Calculus, ProofTree, RuleName
from provd.errors import SerializationError
from provd.formula import formula_key, parse_formula, parse_sequent, print_formula, print_sequent


def _ann_to_dict(ann):
    if ann is None:
        return {}
    out = {}
    if ann.formula is not None:
        out["formula"] = print_formula(ann.formula)
    if ann.gamma is not None:
        out["gamma"] = [print_formula(f) for f in sorted(ann.gamma, key=formula_key)]
    if ann.delta is not None:
        out["delta"] = [print_formula(f) for f in sorted(ann.delta, key=formula_key)]
    if ann.phi is not None:
        out["phi"] = print_formula(ann.phi)
    return out


def _ann_from_dict(data):
    if not data:
        return None
    formula = data.get("formula")
    phi = data.get("phi")
    gamma = data.get("gamma")
    delta = data.get("delta")
    return Annotation(
        formula=parse_formula(formula) if formula is not None else None,
        gamma=frozenset(parse_formula(t) for t in gamma) if gamma is not None else None,
        delta=frozenset(parse_formula(t) for t in delta) if delta is not None else None,
        phi=parse_formula(phi) if phi is not None else None,
    )


def node_to_dict(node):
    return {
        "seq": print_sequent(node.conclusion),
        "rule": node.rule.value,
        "ann": _ann_to_dict(node.annotation),
        "premises": [node_to_dict(q) for q in node.premises],
    }


def node_from_dict(data):
    try:
        seq, rule = data["seq"], data["rule"]
    except (KeyError, TypeError) as exc:
        raise SerializationError(f"Proof node lacks 'seq' or 'rule': {data!r}") from exc
    try:
        rule = RuleName(rule)
    except ValueError:
        raise SerializationError(
            f"Unknown rule '{rule}'. Known rules: {', '.join(r.value for r in RuleName)}"
        ) from None
    premises = tuple(node_from_dict(q) for q in data.get("premises", []))
    return ProofTree(parse_sequent(seq), rule, premises, _ann_from_dict(data.get("ann")))


def proof_to_dict(p, calculus, meta=None):
    data = {"calculus": Calculus(calculus).value, "root": node_to_dict(p)}
    if meta:
        data["meta"] = meta
    return data


def proof_from_dict(data):
    """
    Returns:
        tuple: (ProofTree, Calculus, meta dict)
    """
    if not isinstance(data, dict) or "root" not in data:
        raise SerializationError("A proof file needs a 'root' node.")
    try:
        calculus = Calculus(data.get("calculus"))
    except ValueError:
        raise SerializationError(
            f"Unknown calculus '{data.get('calculus')}'. "
            f"Available: {', '.join(c.value for c in Calculus)}"
        ) from None
    return node_from_dict(data["root"]), calculus, data.get("meta", {})


def dump_proof(p, calculus, path, meta=None):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(proof_to_dict(p, calculus, meta), f, indent=2, ensure_ascii=False)
        f.write("\n")


def load_proof(path):
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise SerializationError(f"'{path}' is not valid JSON: {exc}") from exc
    return proof_from_dict(data)
