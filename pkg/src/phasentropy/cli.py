"""Command-line interface.

::

    phasentropy fig3 [--steps N] [--out PATH] [--format csv|json]
    phasentropy entropy --states FILE [--format text|json]
    phasentropy trace --states FILE [--k K] [--shots N|exact] [--seed S]

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys

from . import __version__
from .ensemble import density_from_ensemble, load_state_file, overlap_Q, perimeter
from .entropy import entropy_closed_form, entropy_general_d, entropy_oracle
from .errors import InputError, NumericalError
from .figures import FIGURES, write_dataset
from .geometric_phase import triple_invariants
from .interferometer import Exact, Shots, estimate_trace_power

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL = 0, 2, 3
AGREEMENT_TOL = 1e-9
FIGURE_HELP = {
    "fig3": "qubit trine with phi1 swept over [0, 2pi]: S, Q, P, Q', P'",
    "fig4": "qubit entropy against perimeter, three states",
    "fig5": "zero-visibility qutrit family: P and S against zeta",
    "fig6": "fixed-P, fixed-V qutrit family: S against geometric phase",
}


def _shots(value: str):
    if value == "exact":
        return None
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer or 'exact'") from None
    if n < 1:
        raise argparse.ArgumentTypeError("shot count must be positive")
    return n


def _steps(value: str) -> int:
    n = int(value)
    if n < 2:
        raise argparse.ArgumentTypeError("steps must be at least 2")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--steps", type=_steps, default=200, help="sweep points (default 200)")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--shots", type=_shots, default=None, metavar="N|exact")

    parser = argparse.ArgumentParser(
        prog="phasentropy",
        description="Entropy, geometric phase and interferometric traces of pure-state ensembles.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in FIGURES:
        sub.add_parser(name, parents=[common], help=FIGURE_HELP[name])
    ent = sub.add_parser("entropy", parents=[common], help="entropy of an ensemble by every route")
    ent.add_argument("--states", required=True)
    tr = sub.add_parser("trace", parents=[common], help="Tr rho^k via the simulated interferometer")
    tr.add_argument("--states", required=True)
    tr.add_argument("--k", type=int, default=2)
    return parser


@contextlib.contextmanager
def _output(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _g(x) -> str:
    return "undefined" if x is None else format(x, ".12g")


def _entropy_report(args) -> tuple[dict, bool]:
    e = load_state_file(args.states)
    rho = density_from_ensemble(e)
    report: dict = {"dim": e.dim, "states": len(e)}
    closed = entropy_closed_form(e)
    s_recon = entropy_general_d(e)
    s_oracle, spectrum = entropy_oracle(rho)
    report["S_closed"] = None if closed is None else closed[1]
    report["closed_route"] = None if closed is None else closed[0]
    report["S_reconstruction"] = s_recon
    report["S_oracle"] = s_oracle
    report["eigenvalues"] = spectrum.eigenvalues.tolist()
    if len(e) >= 2:
        report["P"] = perimeter(e)
        report["Q"] = overlap_Q(e)
    report["triples"] = [
        {"ijk": list(ijk), "V": inv.visibility, "gamma": inv.phase}
        for ijk, inv in triple_invariants(e).items()
    ]
    values = [s_recon, s_oracle] + ([] if closed is None else [closed[1]])
    agree = max(values) - min(values) <= AGREEMENT_TOL
    report["agree"] = agree
    report["tolerance"] = AGREEMENT_TOL
    return report, agree


def _print_entropy(report: dict, fh) -> None:
    print(f"dim {report['dim']}  states {report['states']}", file=fh)
    if report["S_closed"] is None:
        print("S closed-form     n/a", file=fh)
    else:
        print(f"S closed-form     {_g(report['S_closed'])}  [{report['closed_route']}]", file=fh)
    print(f"S reconstruction  {_g(report['S_reconstruction'])}", file=fh)
    print(f"S oracle          {_g(report['S_oracle'])}", file=fh)
    print("eigenvalues       " + " ".join(_g(x) for x in report["eigenvalues"]), file=fh)
    if "P" in report:
        print(f"P                 {_g(report['P'])}", file=fh)
        print(f"Q                 {_g(report['Q'])}", file=fh)
    for t in report["triples"]:
        i, j, k = t["ijk"]
        print(f"triple ({i},{j},{k})     V {_g(t['V'])}  gamma {_g(t['gamma'])}", file=fh)
    status = "agree" if report["agree"] else "DISAGREE"
    print(f"routes {status} within {report['tolerance']:g}", file=fh)


def _trace_report(args) -> dict:
    e = load_state_file(args.states)
    rho = density_from_ensemble(e)
    mode = Exact() if args.shots is None else Shots(args.shots, args.seed)
    est = estimate_trace_power(rho, args.k, mode)
    return {
        "k": est.k,
        "estimate_re": est.value.real,
        "estimate_im": est.value.imag,
        "std_error": est.std_error,
        "shots": "exact" if est.exact else est.shots_used,
        "exact_trace": rho.trace_power(args.k),
    }


def _print_trace(report: dict, fh) -> None:
    print(f"k            {report['k']}", file=fh)
    print(f"estimate     {_g(report['estimate_re'])} {_g(report['estimate_im'])}i", file=fh)
    print(f"std_error    {_g(report['std_error'])}", file=fh)
    print(f"shots        {report['shots']}", file=fh)
    print(f"exact trace  {_g(report['exact_trace'])}", file=fh)


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_json_safe(v) for v in obj]
    return obj


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in FIGURES:
            ds = FIGURES[args.command](args.steps)
            with _output(args.out) as fh:
                write_dataset(ds, fh, args.format or "csv")
            return EXIT_OK
        if args.command == "entropy":
            report, agree = _entropy_report(args)
            with _output(args.out) as fh:
                if args.format == "json":
                    json.dump(_json_safe(report), fh, indent=1)
                    fh.write("\n")
                else:
                    _print_entropy(report, fh)
            return EXIT_OK if agree else EXIT_NUMERICAL
        report = _trace_report(args)
        with _output(args.out) as fh:
            if args.format == "json":
                json.dump(_json_safe(report), fh, indent=1)
                fh.write("\n")
            else:
                _print_trace(report, fh)
        return EXIT_OK
    except NumericalError as exc:
        print(f"phasentropy: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InputError, OSError) as exc:
        print(f"phasentropy: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
