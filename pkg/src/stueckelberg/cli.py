"""Command-line interface: verify suites, dump exact objects.

Flags override values from an optional key=value config file.  All
output is exact: matrices and vectors are emitted as num/den string
pairs, never floats.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .exact import GaussianRational, as_fraction
from .epsilon import SPACES, BasisIndex
from .epsilon import epsilon as eps_unit
from .fock import normalized_gram
from .projectors import (FourMomentum, IrrationalMomentumError,
                         RestFrameError, dyad_factorize, pure_state_projector)
from .report import EXIT_CONFIG, WORKERS_ENV, ConfigError, SuiteConfig, run
from .suites import ALL_SUITES
from .wave import wave_matrices
from . import em as em_mod


def _parse_fraction(text):
    try:
        return as_fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational {text!r}: {exc}") from None


def _parse_momentum(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError("momentum needs three comma-separated rationals")
    return tuple(_parse_fraction(p) for p in parts)


def _load_config_file(path):
    values = {}
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"config line without '=': {line!r}")
                key, _, val = line.partition("=")
                values[key.strip()] = val.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    return values


def _build_suite_config(args):
    file_vals = _load_config_file(args.config) if args.config else {}

    def pick(flag, key, default):
        if flag is not None:
            return flag
        if key in file_vals:
            return file_vals[key]
        return default

    suites = ALL_SUITES if args.suite == "all" else (args.suite,)
    if args.suite == "all" and "suites" in file_vals and args.config:
        suites = tuple(s.strip() for s in file_vals["suites"].split(",") if s.strip())
    workers = pick(args.workers, "workers", os.environ.get(WORKERS_ENV, "1"))
    try:
        workers = int(workers)
        truncation = int(pick(args.truncation, "truncation", 6))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return SuiteConfig(
        suites=suites,
        mass=_parse_fraction(str(pick(args.mass, "mass", "4"))),
        momentum=_parse_momentum(str(pick(args.momentum, "momentum", "0,0,3"))),
        k0=_parse_fraction(str(pick(args.k0, "k0", "5"))),
        truncation=truncation,
        scheme=str(pick(args.scheme, "scheme", "both")),
        timing=not args.no_timing,
        workers=workers,
    )


def _emit(text, args):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def cmd_verify(args):
    cfg = _build_suite_config(args)
    report = run(cfg)
    _emit(report.to_json() if args.json else report.to_text(), args)
    return report.exit_code


def cmd_dump_epsilon(args):
    space = SPACES.get(args.space)
    if space is None:
        raise ConfigError(f"unknown space {args.space!r}; choose from {', '.join(SPACES)}")
    try:
        a = BasisIndex.parse(args.a)
        b = BasisIndex.parse(args.b)
        m = eps_unit(a, b, space)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _emit(_json_dump(m.to_json_dict()), args)
    return 0


def cmd_dump_wave(args):
    w = wave_matrices()
    blocks = {
        "alpha": {str(nu): w.alpha[nu].to_json_dict() for nu in (1, 2, 3, 4)},
        "beta1": {str(nu): w.beta1[nu].to_json_dict() for nu in (1, 2, 3, 4)},
        "beta0": {str(nu): w.beta0[nu].to_json_dict() for nu in (1, 2, 3, 4)},
        "eta": w.eta.to_json_dict(),
        "eta1": w.eta1.to_json_dict(),
        "lorentz": {f"{mu}{nu}": j.to_json_dict() for (mu, nu), j in sorted(w.lorentz.items())},
    }
    if args.which:
        if args.which not in blocks:
            raise ConfigError(f"unknown matrix family {args.which!r}")
        blocks = {args.which: blocks[args.which]}
    _emit(_json_dump(blocks), args)
    return 0


def cmd_dump_solutions(args):
    try:
        p = FourMomentum.from_mass_and_momentum(_parse_fraction(args.mass),
                                                _parse_momentum(args.momentum))
    except (IrrationalMomentumError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    eps = {"+1": 1, "1": 1, "-1": -1}.get(args.energy_sign)
    if eps is None:
        raise ConfigError("energy sign must be +1 or -1")
    spin = int(args.spin)
    proj = int(args.projection)
    if (spin, proj) not in ((1, 1), (1, -1), (1, 0), (0, 0)):
        raise ConfigError(f"invalid spin/projection pair ({spin}, {proj})")
    try:
        delta = pure_state_projector(p, eps, spin, proj)
        dyad = dyad_factorize(delta, labels=(eps, spin, proj))
    except (RestFrameError, IrrationalMomentumError) as exc:
        raise ConfigError(str(exc)) from None
    out = {
        "psi": [list(c.as_strings()) for c in dyad.psi],
        "psi_bar": [list(c.as_strings()) for c in dyad.psi_bar],
        "norm_sign": dyad.norm_sign,
    }
    _emit(_json_dump(out), args)
    return 0


def cmd_dump_gram(args):
    truncation = int(args.truncation)
    scheme = int(args.scheme)
    if scheme not in (1, 2):
        raise ConfigError("scheme must be 1 or 2")
    if truncation < 0:
        raise ConfigError("truncation must be nonnegative")
    _, gram = normalized_gram(truncation, scheme)
    _emit(_json_dump(gram.to_json_dict()), args)
    return 0


def cmd_stokes(args):
    try:
        terms = json.loads(args.state)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"state is not valid JSON: {exc}") from None
    if not isinstance(terms, list) or not terms:
        raise ConfigError("state must be a nonempty JSON list of terms")
    coeffs = {}
    for term in terms:
        if not isinstance(term, list) or len(term) != 4:
            raise ConfigError("each term must be [n1, n2, re, im]")
        n1, n2, re, im = term
        coeffs[(int(n1), int(n2))] = GaussianRational(as_fraction(str(re)), as_fraction(str(im)))
    trunc = max(n1 + n2 for (n1, n2) in coeffs)
    try:
        state = em_mod.polarization_state(coeffs, truncation=max(trunc, 2))
        values = em_mod.stokes_expectations(state)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    labels = ("J0", "J1", "J2", "J3")
    if args.json:
        out = {lbl: f"{v.numerator}/{v.denominator}" for lbl, v in zip(labels, values)}
        _emit(_json_dump(out), args)
    else:
        lines = [f"{lbl} = {v.numerator}/{v.denominator}" for lbl, v in zip(labels, values)]
        _emit("\n".join(lines) + "\n", args)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="stueckelberg",
        description="Exact verification of the multi-spin 0,1 vector-field algebra")
    ap.add_argument("--output", help="write output to a file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity suites and report pass/fail")
    v.add_argument("suite", choices=("all",) + ALL_SUITES)
    v.add_argument("--mass", help="rational mass (default 4)")
    v.add_argument("--momentum", help="three comma-separated rationals (default 0,0,3)")
    v.add_argument("--k0", help="rational mode energy (default 5)")
    v.add_argument("--truncation", help="Fock degree bound (default 6)")
    v.add_argument("--scheme", choices=("1", "2", "both"), help="vacuum scheme (default both)")
    v.add_argument("--json", action="store_true", help="machine-readable report")
    v.add_argument("--no-timing", action="store_true", help="suppress elapsed fields")
    v.add_argument("--config", help="key=value config file; flags take precedence")
    v.add_argument("--workers", help=f"parallel suite workers (or ${WORKERS_ENV})")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dump", help="emit exact objects as JSON")
    dsub = d.add_subparsers(dest="what", required=True)

    de = dsub.add_parser("epsilon", help="one basis matrix unit")
    de.add_argument("--space", default="dim11")
    de.add_argument("--a", required=True, help="row label: 0, 1..4, or [12]")
    de.add_argument("--b", required=True, help="column label")
    de.set_defaults(func=cmd_dump_epsilon)

    dw = dsub.add_parser("wave-matrices", help="the wave-equation matrix families")
    dw.add_argument("--which", choices=("alpha", "beta1", "beta0", "eta", "eta1", "lorentz"))
    dw.set_defaults(func=cmd_dump_wave)

    ds = dsub.add_parser("solutions", help="a normalized solution dyad")
    ds.add_argument("--mass", required=True)
    ds.add_argument("--momentum", required=True)
    ds.add_argument("--energy-sign", default="+1")
    ds.add_argument("--spin", default="1")
    ds.add_argument("--projection", default="+1")
    ds.set_defaults(func=cmd_dump_solutions)

    dg = dsub.add_parser("gram", help="Gram matrix of the normalized Fock basis")
    dg.add_argument("--truncation", default="4")
    dg.add_argument("--scheme", default="2")
    dg.set_defaults(func=cmd_dump_gram)

    st = sub.add_parser("stokes", help="polarization expectations of a two-mode state")
    st.add_argument("--state", required=True,
                    help='JSON list of terms [n1, n2, re, im], e.g. [[1,0,"1","0"]]')
    st.add_argument("--json", action="store_true")
    st.set_defaults(func=cmd_stokes)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
