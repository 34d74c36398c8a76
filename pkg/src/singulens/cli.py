"""Command line front end.

Usage::

    singulens SESSION_FILE VERB [ARGS] [--json] [--seed N] ...
    singulens --inline "germ f = x^2 + y^3" invar ord f
    singulens SESSION_FILE --batch COMMANDS_FILE

Verbs::

    invar ord|loj0|lojJ|mult|colength|chain NAME [NAME]
    newton NAME [--svg PATH]
    closure NAME [--degree D] [--assume-nondegenerate]
    nondeg NAME
    certify ord-loj|closure|mult I J [--assume-equivalent] [--dims-equal]
    certify jac-closure|semihomog f
    certify euler|polar-m1 f g [--assume-equivalent]

Exit codes: 0 ok, 2 refused, 3 input error, 4 infeasible. The environment
variable ``SINGULENS_SEED`` overrides ``--seed``.
"""

import argparse
import json
import os
import shlex
import sys
from dataclasses import dataclass, field

from . import bilipschitz as bl
from .certificate import REFUSED
from .errors import InfiniteColength, InputError, IoError, SingulensError, UnknownBinding, UnknownVerb
from .germ import Germ
from .ideals import (
    DEFAULT_CLOSURE_DEGREE,
    Ideal,
    as_ideal,
    facet_string,
    integral_closure_monomials,
    is_nondegenerate,
    order,
)
from .invariants import check_chain, colength_monomial, lojJ, loj0, multiplicity_polyhedral
from .polyhedra import INFINITE, compact_faces
from .session import parse_session
from .svg import render_newton_svg

OK, REFUSED_STATUS, ERROR = "ok", "refused", "error"
SEED_ENV = "SINGULENS_SEED"


@dataclass
class Report:
    command: str
    status: str
    payload: dict = field(default_factory=dict)
    exit_code: int = 0
    text: str = ""

    def to_dict(self):
        return {
            "command": self.command,
            "status": self.status,
            "exit_code": self.exit_code,
            "payload": self.payload,
        }

    def render(self, as_json=False):
        if as_json:
            return json.dumps(self.to_dict(), indent=2)
        if self.text:
            return self.text
        return _aligned(self.payload)


def _aligned(payload):
    if not payload:
        return ""
    width = max(len(str(k)) for k in payload)
    lines = []
    for k, v in payload.items():
        shown = v if isinstance(v, str) else json.dumps(v)
        lines.append(f"{str(k).ljust(width)} : {shown}")
    return "\n".join(lines)


def _coord(x):
    return str(x)


def _point(v):
    return [_coord(c) for c in v]


# -- argument handling -----------------------------------------------------------


class _ArgError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def _command_parser():
    p = _Parser(prog="singulens", add_help=False)
    p.add_argument("words", nargs="*")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--svg")
    p.add_argument("--degree", type=int, default=DEFAULT_CLOSURE_DEGREE)
    p.add_argument("--assume-equivalent", action="store_true")
    p.add_argument("--assume-nondegenerate", action="store_true")
    p.add_argument("--dims-equal", action="store_true")
    return p


def _seed(opts):
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return opts.seed


def _lookup(session, name, kind):
    value = session[name]
    if kind == "ideal":
        if isinstance(value, (Germ, Ideal)):
            return as_ideal(value)
    elif kind == "germ":
        if isinstance(value, Germ):
            return value
    raise UnknownBinding(f"{name!r} is not a {kind}")


def _arity(words, n, usage):
    if len(words) != n:
        raise InputError(f"usage: {usage}")


# -- verbs -------------------------------------------------------------------------


def _invar(session, args, opts, seed):
    if not args:
        raise UnknownVerb("invar needs one of ord, loj0, lojJ, mult, colength, chain")
    what, names = args[0], args[1:]
    if what == "lojJ":
        _arity(names, 2, "invar lojJ I J")
        I, J = (_lookup(session, n, "ideal") for n in names)
        value = lojJ(I, J, seed)
        if value is INFINITE:
            raise InfiniteColength("L_J(I) is infinite: some vertex of Gamma+(J) never enters Gamma+(I)")
        return {"lojJ": str(value)}
    if what not in ("ord", "loj0", "mult", "colength", "chain"):
        raise UnknownVerb(f"unknown invariant {what!r}")
    _arity(names, 1, f"invar {what} NAME")
    value = session[names[0]]
    if what == "ord" and isinstance(value, Germ):
        return {"ord": order(value)}
    I = _lookup(session, names[0], "ideal")
    if what == "ord":
        return {"ord": order(I)}
    if what == "loj0":
        L = loj0(I, seed)
        if L is INFINITE:
            raise InfiniteColength("L0 is infinite: the ideal has infinite colength")
        return {"loj0": str(L)}
    if what == "mult":
        return {"mult": multiplicity_polyhedral(I, seed)}
    if what == "colength":
        return {"colength": colength_monomial(I)}
    return check_chain(I, seed).to_dict()


def _newton(session, args, opts, seed):
    _arity(args, 1, "newton NAME [--svg PATH]")
    P = _lookup(session, args[0], "ideal").newton
    payload = {
        "dim": P.dim,
        "vertices": [_point(v) for v in P.vertices],
        "rays": [list(r) for r in P.rays],
        "facets": [facet_string(f) for f in P.facets],
        "compact_faces": len(compact_faces(P)),
    }
    if opts.svg:
        render_newton_svg(P, opts.svg)
        payload["svg"] = opts.svg
    return payload


def _closure(session, args, opts, seed):
    _arity(args, 1, "closure NAME [--degree D]")
    I = _lookup(session, args[0], "ideal")
    mons = integral_closure_monomials(I, opts.degree, opts.assume_nondegenerate, seed)
    names = session.names_for(args[0])

    def show(k):
        return Germ({k: 1}, I.vars).format(names)

    return {
        "degree_bound": opts.degree,
        "monomials": [show(m.exponent) for m in mons],
        "minimal": [show(m.exponent) for m in mons if m.minimal],
    }


def _nondeg(session, args, opts, seed):
    _arity(args, 1, "nondeg NAME")
    I = _lookup(session, args[0], "ideal")
    return {"nondegenerate": str(is_nondegenerate(I, seed))}


_PAIR_IDEALS = {
    "ord-loj": lambda I, J, o, s: bl.certify_ord_loj(I, J, o.assume_equivalent, s),
    "closure": lambda I, J, o, s: bl.certify_closure_criterion(I, J, o.assume_equivalent, s),
    "mult": lambda I, J, o, s: bl.certify_multiplicity(I, J, o.dims_equal, o.assume_equivalent, s),
}
_SINGLE_GERM = {
    "jac-closure": lambda f, o, s: bl.certify_jacobian_closure(f, s),
    "semihomog": lambda f, o, s: bl.semihomogeneous_certificate(f, s),
}
_PAIR_GERMS = {
    "euler": lambda f, g, o, s: bl.certify_euler(f, g, o.assume_equivalent, s),
    "polar-m1": lambda f, g, o, s: bl.certify_polar_m1(f, g, o.assume_equivalent, s),
}


def _certify(session, args, opts, seed):
    if not args:
        raise UnknownVerb("certify needs a theorem name")
    which, names = args[0], args[1:]
    if which in _PAIR_IDEALS:
        _arity(names, 2, f"certify {which} I J")
        I, J = (_lookup(session, n, "ideal") for n in names)
        return _PAIR_IDEALS[which](I, J, opts, seed)
    if which in _SINGLE_GERM:
        _arity(names, 1, f"certify {which} f")
        return _SINGLE_GERM[which](_lookup(session, names[0], "germ"), opts, seed)
    if which in _PAIR_GERMS:
        _arity(names, 2, f"certify {which} f g")
        f, g = (_lookup(session, n, "germ") for n in names)
        return _PAIR_GERMS[which](f, g, opts, seed)
    raise UnknownVerb(f"unknown certificate {which!r}")


VERBS = {
    "invar": _invar,
    "newton": _newton,
    "closure": _closure,
    "nondeg": _nondeg,
    "certify": _certify,
}


def run_command(session, argv):
    """Run one command (verb, arguments and flags) against a parsed session."""
    command = " ".join(argv)
    try:
        opts = _command_parser().parse_intermixed_args(list(argv))
        if not opts.words:
            raise UnknownVerb("no command given")
        verb, args = opts.words[0], opts.words[1:]
        if verb not in VERBS:
            raise UnknownVerb(f"unknown verb {verb!r}; expected one of {', '.join(VERBS)}")
        result = VERBS[verb](session, args, opts, _seed(opts))
    except SingulensError as exc:
        status = REFUSED_STATUS if exc.exit_code == 2 else ERROR
        payload = {"error": type(exc).__name__, "message": str(exc)}
        return Report(command, status, payload, exc.exit_code, f"{type(exc).__name__}: {exc}")
    if isinstance(result, dict):
        return Report(command, OK, result, 0)
    cert = result
    if cert.verdict == REFUSED:
        return Report(command, REFUSED_STATUS, cert.to_dict(), 2, cert.summary())
    return Report(command, OK, cert.to_dict(), 0, cert.summary())


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    top = argparse.ArgumentParser(prog="singulens", description="Newton polyhedra, invariants and certificates.")
    top.add_argument("--inline", help="session text given on the command line")
    top.add_argument("--batch", help="file with one command per line")
    top_opts, rest = top.parse_known_args(argv)
    as_json = "--json" in rest
    try:
        if top_opts.inline is not None:
            session = parse_session(top_opts.inline.replace("\\n", "\n").replace(";", "\n"))
        else:
            if not rest or rest[0].startswith("-"):
                raise InputError("give a session file or --inline TEXT")
            path = rest.pop(0)
            session = parse_session(_read(path), source=path)
        if top_opts.batch is not None:
            commands = []
            for line in _read(top_opts.batch).splitlines():
                line = line.split("#", 1)[0].strip()
                if line:
                    commands.append(shlex.split(line) + rest)
        else:
            commands = [rest]
    except SingulensError as exc:
        report = Report(" ".join(argv), ERROR if exc.exit_code != 2 else REFUSED_STATUS,
                        {"error": type(exc).__name__, "message": str(exc)}, exc.exit_code,
                        f"{type(exc).__name__}: {exc}")
        print(report.render(as_json), file=sys.stderr if not as_json else sys.stdout)
        return report.exit_code
    code = 0
    for words in commands:
        report = run_command(session, words)
        out = report.render("--json" in words)
        if out:
            print(out)
        code = max(code, report.exit_code)
    return code


if __name__ == "__main__":
    sys.exit(main())
