"""Command-line interface.

Exit codes: 0 verified / true, 1 refuted / false, 2 error, 3 indeterminate.
"""
import argparse
import json
import logging
import sys

from . import __version__

EXIT_OK, EXIT_FALSE, EXIT_ERROR, EXIT_UNDECIDED = 0, 1, 2, 3


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit a JSON object instead of text")
    p.add_argument("--no-cache", action="store_true", help="bypass the on-disk result cache")
    return p


def build_parser():
    common = _common()
    ap = argparse.ArgumentParser(prog="chowring", description="Tautological relations on K3 powers, "
                                 "Hilbert schemes of K3 surfaces and Fano varieties of cubic fourfolds.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="BV normal form on S^m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--model")
    p.add_argument("expr")

    p = sub.add_parser("realize", parents=[common], help="realize in H*(S^m) of a tensor model")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--model", required=True)
    p.add_argument("expr")

    p = sub.add_parser("verify-vanishing", parents=[common], help="decide a relation on S^m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--model", required=True)
    p.add_argument("expr")

    h = sub.add_parser("hilbert", help="Hilbert scheme S^[n]").add_subparsers(dest="action", required=True)
    p = h.add_parser("pullback", parents=[common], help="E_mu pullback as a BV normal form")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--model")
    p.add_argument("expr")
    p = h.add_parser("chern-number", parents=[common], help="degree of a codim-2n class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("expr")
    p = h.add_parser("verify", parents=[common], help="decide a tautological relation on S^[n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--model")
    p.add_argument("expr")

    f = sub.add_parser("fano", help="Fano variety of lines").add_subparsers(dest="action", required=True)
    for name, desc in (("integrate", "degree of a codim-4 class in l, cc"),
                       ("normalize", "Chow-level normal form"),
                       ("verify", "decide a relation in CH(F)")):
        p = f.add_parser(name, parents=[common], help=desc)
        p.add_argument("expr")

    g = sub.add_parser("grass", help="Grassmannian G(2,6)").add_subparsers(dest="action", required=True)
    p = g.add_parser("integrate", parents=[common], help="degree of a Schubert polynomial")
    p.add_argument("expr")
    return ap


def _model(path):
    from .k3model import default_model, load_model
    return load_model(path) if path else default_model()


def _bv_for(model):
    from .bv import BVRing
    return BVRing.for_model(model) if model.full_rank else BVRing.matching(model)


def _check_indices(p, m):
    from .bv import _indices
    for g in p.gens():
        if g[0] in (0, 1, 2) and max(_indices(g)) > m:
            raise ValueError(f"index out of range for m={m}")


def _run(args):
    """Returns (exit code, text, json payload)."""
    from .expr import parse, print_canonical
    from .rational import fmt_q
    cmd = args.command
    action = getattr(args, "action", None)
    payload = {"command": cmd if action is None else f"{cmd} {action}"}

    if cmd in ("normalize", "realize", "verify-vanishing"):
        from .k3model import realize
        from .bv import BVRing, verify_vanishing, Verdict
        p = parse(args.expr, "bv")
        _check_indices(p, args.m)
        payload["input"] = print_canonical(p)
        payload["m"] = args.m
        if cmd == "normalize":
            ring = _bv_for(_model(args.model)) if args.model else BVRing()
            nf = ring.normalize(p)
            payload["normal_form"] = print_canonical(nf)
            return EXIT_OK, payload["normal_form"], payload
        model = _model(args.model)
        payload["model"] = model.fingerprint
        if cmd == "realize":
            t = realize(p, model, args.m)
            payload["tensor"] = str(t)
            return EXIT_OK, str(t), payload
        rep = verify_vanishing(p, model, args.m)
        payload.update(verdict=rep.verdict.value, normal_form=print_canonical(rep.normal_form),
                       hypothesis=rep.hypothesis)
        code = {Verdict.CHOW_ZERO: EXIT_OK, Verdict.COHOMOLOGICALLY_NONZERO: EXIT_FALSE,
                Verdict.INDETERMINATE: EXIT_UNDECIDED}[rep.verdict]
        return code, rep.verdict.value, payload

    if cmd == "hilbert":
        from .cache import ResultCache
        from .hilbert import EGL, SetPartition, verify_chow_zero_hilbert
        from .bv import BVRing, Verdict
        p = parse(args.expr, "hilbert")
        payload["input"] = print_canonical(p)
        payload["n"] = args.n
        cache = None if args.no_cache else ResultCache.from_env()
        if action == "pullback":
            mu = SetPartition.parse(args.partition, args.n)
            bv = BVRing.for_model(_model(args.model)) if args.model else BVRing()
            res = EGL(bv, cache).pullback(p, mu, args.l)
            payload.update(partition=mu.text(), l=args.l, normal_form=print_canonical(res))
            return EXIT_OK, payload["normal_form"], payload
        if action == "chern-number":
            val = EGL(BVRing(), cache).chern_number(p, args.n)
            payload["value"] = fmt_q(val)
            return EXIT_OK, payload["value"], payload
        model = _model(args.model)
        rep = verify_chow_zero_hilbert(p, args.n, model, EGL(BVRing.for_model(model), cache))
        payload.update(verdict=rep.verdict.value, model=model.fingerprint, partitions=[
            {"partition": c.partition, "normal_form": print_canonical(c.normal_form),
             "realized_zero": c.realized_zero, "hypothesis": c.hypothesis} for c in rep.certificates])
        code = {Verdict.CHOW_ZERO: EXIT_OK, Verdict.COHOMOLOGICALLY_NONZERO: EXIT_FALSE,
                Verdict.INDETERMINATE: EXIT_UNDECIDED}[rep.verdict]
        lines = [rep.verdict.value] + [f"{c.partition}: {print_canonical(c.normal_form)}"
                                       f"{' [' + c.hypothesis + ']' if c.hypothesis else ''}"
                                       for c in rep.certificates]
        return code, "\n".join(lines), payload

    if cmd == "fano":
        from .fano import fano_normalize, integrate_fano, verify_theocubic, _NORMALIZER
        from .bv import Verdict
        p = parse(args.expr, "fano")
        payload["input"] = print_canonical(p)
        if action == "integrate":
            val = integrate_fano(p)
            payload["value"] = fmt_q(val)
            return EXIT_OK, payload["value"], payload
        if action == "normalize":
            nf = fano_normalize(p)
            payload["normal_form"] = print_canonical(nf)
            return EXIT_OK, payload["normal_form"], payload
        verdict = verify_theocubic(p)
        payload["verdict"] = verdict.value
        payload["normal_form"] = print_canonical(fano_normalize(p))
        payload["rules_fired"] = dict(sorted(_NORMALIZER.fired.counts.items()))
        code = {Verdict.CHOW_ZERO: EXIT_OK, Verdict.COHOMOLOGICALLY_NONZERO: EXIT_FALSE,
                Verdict.INDETERMINATE: EXIT_UNDECIDED}[verdict]
        return code, verdict.value, payload

    from .schubert import integrate_grass
    e = parse(args.expr, "grass")
    payload["input"] = print_canonical(e)
    payload["value"] = fmt_q(integrate_grass(e))
    return EXIT_OK, payload["value"], payload


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    try:
        code, text, payload = _run(args)
    except (ValueError, KeyError, OSError, AssertionError, RuntimeError) as e:
        msg = str(e) or e.__class__.__name__
        if getattr(args, "json", False):
            print(json.dumps({"error": msg}, sort_keys=True))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
