"""Command-line front end.

Every command reads forms in the ``.alt`` format (see :mod:`altforms.fileformat`)
and writes deterministic text, or with ``--json`` a single JSON object::

    {"schema": "altforms/1", "command": ..., "field": "GF(2)", "result": ...}

On failure the object carries ``"error": {"type": ..., "message": ...}``
instead of ``"result"``.  Field elements appear as strings (``"3"``,
``"-1/2"``).  Exit codes: 0 success, 1 typed domain error, 2 usage or parse
error.
"""

from __future__ import annotations

import argparse
import io
import json
import re
import sys
from contextlib import redirect_stderr
from fractions import Fraction
from typing import NamedTuple

from . import exterior, forms, singular, twosingular
from .errors import AltFormsError, ParseError
from .exterior import Multivector
from .fileformat import parse_field, parse_formvector, serialize_form
from .rings import render_poly, render_scalar

SCHEMA = "altforms/1"


class UsageError(ValueError):
    pass


class RunResult(NamedTuple):
    code: int
    stdout: str
    stderr: str


# ---------------------------------------------------------------------------
# rendering


def _s(c) -> str:
    return render_scalar(c)


def _subspace_text(S) -> str:
    return "".join(" ".join(_s(x) for x in row) + "\n" for row in S.basis)


def _subspace_json(S) -> dict:
    return {"dim": S.dim, "rows": [[_s(x) for x in row] for row in S.basis]}


def _subspaces_out(spaces):
    text = "\n".join(_subspace_text(S) for S in spaces)
    return text, {"count": len(spaces), "subspaces": [_subspace_json(S) for S in spaces]}


def _form_json(omega) -> dict:
    if isinstance(omega, forms.AltForm):
        omega = omega.omega
    return {
        "dim": omega.n,
        "degree": omega.grade,
        "terms": [[_s(c), [i + 1 for i in idx]] for idx, c in omega.items()],
    }


def _form_out(omega):
    return serialize_form(omega), _form_json(omega)


def _scalar_out(c):
    return _s(c) + "\n", {"value": _s(c)}


def _matrix_out(M):
    rows = [[_s(x) for x in r] for r in M.rows]
    return "".join(" ".join(r) + "\n" for r in rows), {"rows": rows}


# ---------------------------------------------------------------------------
# input helpers


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _loadv(args, path):
    w = parse_formvector(_read(path), args.field)
    args.used_field = w.ring
    return w


def _load(args):
    w = _loadv(args, args.input)
    if w.grade < 2:
        raise ParseError(f"an alternating form needs degree >= 2, got {w.grade}")
    return forms.AltForm(w)


def _vector(text: str, form) -> list:
    parts = [p for p in re.split(r"[\s,]+", text.strip()) if p]
    if len(parts) != form.n:
        raise UsageError(f"vector {text!r} has {len(parts)} entries, expected {form.n}")
    try:
        return [form.field(Fraction(p)) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad vector {text!r}") from None


# ---------------------------------------------------------------------------
# commands; each returns (text, json_result)


def cmd_pair(args):
    form = _load(args)
    vecs = [Multivector.from_vector(form.field, _vector(v, form)) for v in args.vector]
    lam = exterior.wedge_all(vecs, form.n, form.field, Multivector)
    return _form_out(exterior.pair(lam, form.omega))


def cmd_wedge(args):
    if len(args.input) < 2:
        raise UsageError("wedge needs at least two --input files")
    parts = [_loadv(args, p) for p in args.input]
    if len({(w.n, w.ring) for w in parts}) != 1:
        raise UsageError("wedge inputs must share dimension and field")
    out = parts[0]
    for w in parts[1:]:
        out = exterior.wedge(out, w)
    return _form_out(out)


def cmd_divided_power(args):
    w = _loadv(args, args.input)
    return _form_out(exterior.divided_power(w, args.k))


def cmd_pfaffian(args):
    w = _loadv(args, args.input)
    return _scalar_out(exterior.pfaffian(w))


def cmd_radical(args):
    S = forms.radical(_load(args))
    return _subspace_text(S), _subspace_json(S)


def cmd_f_poly(args):
    f = singular.f_poly(_load(args))
    terms = [[_s(f.terms[e]), list(e)] for e in sorted(f.terms, reverse=True)]
    return render_poly(f) + "\n", {"nvars": f.ring.nvars, "degree": f.degree, "terms": terms}


def cmd_f_eval(args):
    form = _load(args)
    return _scalar_out(singular.f_eval(form, _vector(args.point, form)))


def cmd_singular_line(args):
    form = _load(args)
    u = _vector(args.through, form) if args.through else None
    cert = singular.find_singular_line(form, u=u, bound=args.bound)
    text, js = _subspace_text(cert.line), _subspace_json(cert.line)
    js["u"] = [_s(x) for x in cert.u]
    js["v"] = [_s(x) for x in cert.v]
    return text, js


def cmd_singular_space(args):
    S = singular.find_singular_space(_load(args), bound=args.bound)
    return _subspace_text(S), _subspace_json(S)


def cmd_singular_lines(args):
    return _subspaces_out(singular.enumerate_singular_lines(_load(args), budget=args.budget))


def cmd_two_singular(args):
    return _subspaces_out(twosingular.enumerate_2_singular(_load(args), args.dim, budget=args.budget))


def cmd_normalize(args):
    return _matrix_out(twosingular.normalize(_load(args), budget=args.budget))


def cmd_canonical_form(args):
    form, _ = twosingular.canonical_form(args.dim, args.field)
    return _form_out(form)


def cmd_random_form(args):
    return _form_out(forms.random_form(args.dim, args.degree, args.field, args.seed))


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _field_arg(text):
    try:
        return parse_field(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--field", type=_field_arg, default=None,
                        help="override the field: q, or gf <p> written gf7 / gf:7 / 7")
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")

    parser = _Parser(prog="altforms", description="Singular structure of alternating forms.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, input_=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if input_:
            p.add_argument("--input", required=True, help=".alt file, or - for stdin")
        p.set_defaults(func=func)
        return p

    p = add("pair", cmd_pair, "contract a form with the wedge of vectors")
    p.add_argument("--vector", action="append", default=[], help="e.g. '1,0,2'; repeatable")
    p = add("wedge", cmd_wedge, "wedge product of forms", input_=False)
    p.add_argument("--input", action="append", required=True, help="repeat for each factor")
    p = add("divided-power", cmd_divided_power, "kth divided power of an even-degree form")
    p.add_argument("--k", type=int, required=True)
    add("pfaffian", cmd_pfaffian, "Pfaffian of a 2-form on an even-dimensional space")
    add("radical", cmd_radical, "radical of a form, as RREF rows")
    add("f-poly", cmd_f_poly, "the polynomial f_omega of a trilinear form, n odd")
    p = add("f-eval", cmd_f_eval, "f_omega at a point")
    p.add_argument("--point", required=True)
    p = add("singular-line", cmd_singular_line, "find a singular line")
    p.add_argument("--through", default=None, help="only lines through this vector")
    p.add_argument("--bound", type=int, default=singular.QQ_SEARCH_BOUND,
                   help="coordinate bound of the search over QQ")
    p = add("singular-space", cmd_singular_space, "find a singular (e-1)-space")
    p.add_argument("--bound", type=int, default=singular.QQ_SEARCH_BOUND)
    p = add("singular-lines", cmd_singular_lines, "enumerate all singular lines (finite fields)")
    p.add_argument("--budget", type=int, default=singular.DEFAULT_BUDGET)
    p = add("two-singular", cmd_two_singular, "enumerate 2-singular subspaces of a dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--budget", type=int, default=singular.DEFAULT_BUDGET)
    p = add("normalize", cmd_normalize, "group element taking the form to its canonical form")
    p.add_argument("--budget", type=int, default=singular.DEFAULT_BUDGET)
    p = add("canonical-form", cmd_canonical_form, "the canonical form with a 2-singular subspace "
            "of minimal codimension", input_=False)
    p.add_argument("--dim", type=int, required=True)
    p = add("random-form", cmd_random_form, "uniformly random form", input_=False)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    return parser


_NEEDS_FIELD = {"canonical-form", "random-form"}


def run(argv) -> RunResult:
    """Execute one invocation, capturing its output; never raises on bad input."""
    argv = list(argv)
    out, err = io.StringIO(), io.StringIO()
    command = next((a for a in argv if not a.startswith("-")), None)
    want_json = "--json" in argv
    try:
        with redirect_stderr(err):
            try:
                args = build_parser().parse_args(argv)
            except SystemExit as exc:  # --help
                return RunResult(int(exc.code or 0), out.getvalue(), err.getvalue())
        if args.command in _NEEDS_FIELD and args.field is None:
            raise UsageError(f"{args.command} needs --field")
        text, result = args.func(args)
        field = getattr(args, "used_field", None) or args.field
        if want_json:
            obj = {"schema": SCHEMA, "command": args.command, "field": str(field) if field else None,
                   "result": result}
            out.write(json.dumps(obj, sort_keys=True) + "\n")
        else:
            out.write(text)
        return RunResult(0, out.getvalue(), err.getvalue())
    except AltFormsError as e:
        code, exc = 1, e
    except (UsageError, ParseError, ValueError) as e:
        code, exc = 2, e
    if want_json:
        obj = {"schema": SCHEMA, "command": command,
               "error": {"type": type(exc).__name__, "message": str(exc)}}
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    err.write(f"altforms: {type(exc).__name__}: {exc}\n")
    return RunResult(code, out.getvalue(), err.getvalue())


def main(argv=None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
