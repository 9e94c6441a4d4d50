# SPDX-License-Identifier: BSD-3-Clause
#
# This file is part of the provd project: decision procedures, proof
# checkers and countermodel extraction for the provability logics GL, S
# and D.
#
# Distributed under the terms of the BSD 3-Clause License.
# For full license text, see the LICENSE file in the project root.

"""
``provd`` command line.

Exit codes: 0 = provable / valid / check passed, 1 = unprovable / invalid /
check failed, 2 = usage or input error. Results go to stdout, diagnostics
(``[INFO] ...``) to stderr. Files are written only where a path flag asks
for it.
"""

import argparse
import json
import logging
import os
import sys

from provd.calculi import Calculus, CutPolicy, check_proof, render_proof
from provd.components import (
    dump_hilbert,
    dump_model,
    dump_proof,
    load_hilbert,
    load_model,
    load_proof,
    model_to_dict,
)
from provd.errors import InternalInvariantError, ProvdError
from provd.formula import parse_formula, parse_sequent
from provd.fuzz import fuzz_round
from provd.glin import gllin_valid, nat_model_as_kripke, omega_refute_search, s_gllin_valid
from provd.hilbert import SystemId, check_hilbert_proof, seq_proof_to_hilbert, translate_hilbert_d2_d
from provd.kripke import Countermodel, TailLimitModel
from provd.prover import prove
from provd.transforms import TransformLog, d2_to_d3, d3_to_d2, embed_gl_into_d, project_d_to_s
from provd.version import __version__

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2

_COLORS = {"green": "\033[32m", "red": "\033[31m"}


class UsageError(ProvdError, ValueError):
    pass


def _word(text, good):
    if os.environ.get("PROVD_COLOR") != "1":
        return text
    return f"{_COLORS['green' if good else 'red']}{text}\033[0m"


def _print_model(model, world):
    print(json.dumps(model_to_dict(Countermodel(model, world)), indent=2, ensure_ascii=False))


# ---------- Subcommands ----------
def cmd_prove(args):
    s = parse_sequent(args.sequent)
    calculus = Calculus(args.calculus)
    policy = CutPolicy(args.cuts)
    verdict = prove(s, calculus, policy, verbose=args.verbose)

    print(_word("provable" if verdict.provable else "unprovable", verdict.provable))
    if verdict.provable:
        print(render_proof(verdict.proof, sugar=args.sugar))
        if args.emit_proof:
            dump_proof(verdict.proof, calculus, args.emit_proof)
            logger.info("Proof written to %s", args.emit_proof)
        return EXIT_OK

    if verdict.certificate is None:
        print("note: cut-free dseq2 is incomplete for D; no countermodel is claimed "
              "(try --cuts semi or dseq3)")
        return EXIT_NO
    cm = verdict.countermodel()
    n = len(cm.model.base.worlds) if isinstance(cm.model, TailLimitModel) else len(cm.model.worlds)
    print(f"countermodel: refuted at '{cm.world}' ({n} base world(s))")
    if args.emit_countermodel:
        dump_model(cm, args.emit_countermodel)
        logger.info("Countermodel written to %s", args.emit_countermodel)
    return EXIT_NO


def cmd_check_proof(args):
    p, calculus, _ = load_proof(args.file)
    report = check_proof(p, calculus, CutPolicy(args.cuts))
    print(f"{_word('valid' if report.valid else 'invalid', report.valid)} "
          f"{calculus.value} proof of {report.end_sequent}")
    print(report.summary())
    for violation in report.violations:
        print(f"  {violation}")
    return EXIT_OK if report.valid else EXIT_NO


def cmd_model_check(args):
    model = load_model(args.model)
    f = parse_formula(args.formula)
    if args.eventually:
        if not isinstance(model, TailLimitModel):
            raise UsageError("--eventually needs a model with a 'tail'.")
        truth = model.evaluate(f).eventually_always
    elif isinstance(model, TailLimitModel):
        truth = model.truth_at(args.world, f)
    else:
        truth = model.evaluate(args.world, f)
    print(_word("true" if truth else "false", truth))
    return EXIT_OK if truth else EXIT_NO


_HILBERT_SOURCES = (SystemId.DH.value, SystemId.DH2.value)


def cmd_translate(args):
    source, target = args.source, args.target
    if source in _HILBERT_SOURCES:
        p = load_hilbert(args.file, source)
        out = translate_hilbert_d2_d(p, target, explicit=args.explicit)
        dump_hilbert(out, args.out)
        logger.info("%s proof written to %s", out.system.value, args.out)
        return EXIT_OK

    p, calculus, _ = load_proof(args.file)
    if calculus.value != source:
        raise UsageError(f"'{args.file}' holds a {calculus.value} proof, not {source}.")
    meta = None
    match source, target:
        case _, "hilbert":
            out = seq_proof_to_hilbert(p, calculus, explicit=args.explicit)
            dump_hilbert(out, args.out)
            logger.info("%s proof written to %s", out.system.value, args.out)
            return EXIT_OK
        case "glseq", "dseq2" | "dseq3":
            result = embed_gl_into_d(p, Calculus(target))
        case "dseq2" | "dseq3", "sseq":
            result = project_d_to_s(p)
        case "dseq3", "dseq2":
            result = d3_to_d2(p)
        case "dseq2", "dseq3":
            log = TransformLog()
            result = d2_to_d3(p, log)
            meta = log.to_dict()
        case _:
            raise UsageError(f"No translation from {source} to {target}.")
    dump_proof(result, Calculus(target), args.out, meta)
    logger.info("%s proof written to %s", target, args.out)
    return EXIT_OK


def cmd_hilbert_check(args):
    p = load_hilbert(args.file, args.system)
    report = check_hilbert_proof(p, require_subproofs=args.require_subproofs)
    print(_word(report.summary(), report.valid))
    for error in report.errors[1:]:
        print(f"  {error}")
    return EXIT_OK if report.valid else EXIT_NO


def cmd_gllin(args):
    f = parse_formula(args.formula)
    check = s_gllin_valid if args.gllin_command == "s-valid" else gllin_valid
    verdict = check(f, args.bound)
    print(f"{_word(verdict.status, verdict.valid)} (bound {verdict.bound})")
    if verdict.valid:
        return EXIT_OK
    witness = verdict.witness
    if isinstance(witness, TailLimitModel):
        _print_model(witness, verdict.world)
    else:
        _print_model(nat_model_as_kripke(witness), str(verdict.world))
    return EXIT_NO


def cmd_omega(args):
    f = parse_formula(args.formula)
    result = omega_refute_search(f, args.prefix_max, verbose=args.verbose)
    scope = "exhaustive" if result.exhaustive else "sampled"
    print(f"{_word(result.status, not result.refuted)} ({result.examined} model(s), {scope})")
    if not result.refuted:
        return EXIT_OK
    _print_model(result.model, "limit")
    return EXIT_NO


def cmd_fuzz(args):
    report = fuzz_round(args.seed, args.iters, args.size, args.vars, verbose=args.verbose)
    summary = report.summary
    print(" ".join(f"{key}={summary[key]}" for key in sorted(summary)))
    for index, anomaly in report.anomalies:
        print(f"  case {index}: {anomaly}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(report.to_json())
            f.write("\n")
        logger.info("Fuzz report written to %s", args.out)
    if args.csv:
        report.export_csv(args.csv)
    return EXIT_OK if report.ok else EXIT_NO


# ---------- Parser ----------
def build_parser():
    parser = argparse.ArgumentParser(
        prog="provd", description="Decision procedures and proof tools for GL, S and D."
    )
    parser.add_argument("--version", action="version", version=f"provd {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="More diagnostics on stderr (repeat for debug output).")
    sub = parser.add_subparsers(dest="command", required=True)

    calculi = [c.value for c in Calculus]

    p = sub.add_parser("prove", help="Decide a sequent.")
    p.add_argument("--calculus", choices=calculi, required=True)
    p.add_argument("--cuts", choices=["none", "semi"], default="none")
    p.add_argument("--emit-proof", metavar="PATH")
    p.add_argument("--emit-countermodel", metavar="PATH")
    p.add_argument("--sugar", action="store_true", help="Print the proof with ~, &, |.")
    p.add_argument("sequent", metavar="SEQUENT")
    p.set_defaults(handler=cmd_prove)

    p = sub.add_parser("check-proof", help="Check a proof file.")
    p.add_argument("--file", required=True, metavar="PATH")
    p.add_argument("--cuts", choices=[c.value for c in CutPolicy], default="any")
    p.set_defaults(handler=cmd_check_proof)

    p = sub.add_parser("model-check", help="Evaluate a formula in a model file.")
    p.add_argument("--model", required=True, metavar="PATH")
    p.add_argument("--world", required=True, metavar="NAME")
    p.add_argument("--formula", required=True, metavar="TEXT")
    p.add_argument("--eventually", action="store_true",
                   help="Eventually-always truth along the tail instead.")
    p.set_defaults(handler=cmd_model_check)

    p = sub.add_parser("translate", help="Translate a proof file.")
    p.add_argument("--from", dest="source", required=True,
                   choices=calculi + list(_HILBERT_SOURCES))
    p.add_argument("--to", dest="target", required=True,
                   choices=calculi + list(_HILBERT_SOURCES) + ["hilbert"])
    p.add_argument("--file", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--explicit", action="store_true",
                   help="Attach sub-proofs to theorem axioms and side conditions.")
    p.set_defaults(handler=cmd_translate)

    p = sub.add_parser("hilbert-check", help="Check a Hilbert proof file.")
    p.add_argument("--system", required=True, choices=[s.value for s in SystemId])
    p.add_argument("--file", required=True, metavar="PATH")
    p.add_argument("--require-subproofs", action="store_true")
    p.set_defaults(handler=cmd_hilbert_check)

    p = sub.add_parser("gllin", help="Validity over finite strict linear orders.")
    gsub = p.add_subparsers(dest="gllin_command", required=True)
    for name, text in (("valid", "GL_lin validity at a bound."),
                       ("s-valid", "Truth at the limit of strongly constant tails.")):
        g = gsub.add_parser(name, help=text)
        g.add_argument("--formula", required=True, metavar="TEXT")
        g.add_argument("--bound", type=int, default=None)
        g.set_defaults(handler=cmd_gllin)

    p = sub.add_parser("omega", help="Searches over omega-plus models.")
    osub = p.add_subparsers(dest="omega_command", required=True)
    o = osub.add_parser("refute", help="Refute a formula at the limit.")
    o.add_argument("--formula", required=True, metavar="TEXT")
    o.add_argument("--prefix-max", type=int, default=None)
    o.set_defaults(handler=cmd_omega)

    p = sub.add_parser("fuzz", help="Seeded cross-validation round.")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--size", type=int, default=10)
    p.add_argument("--vars", type=int, default=3)
    p.add_argument("--out", metavar="PATH", help="Write the JSON report.")
    p.add_argument("--csv", metavar="PATH", help="Write one CSV row per case and configuration.")
    p.set_defaults(handler=cmd_fuzz)
    return parser


def _configure_logging(verbose):
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="[%(levelname)s] %(message)s", stream=sys.stderr,
                        force=True)


def run_command(argv):
    """Run one ``provd`` invocation and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)

    try:
        return args.handler(args)
    except InternalInvariantError as exc:
        logger.error("internal error (please report): %s", exc)
        return EXIT_USAGE
    except (ProvdError, ValueError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
